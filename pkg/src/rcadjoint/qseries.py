"""Exact truncated q-expansion arithmetic and classical constructors.

Coefficients are arbitrary-precision rationals (``fractions.Fraction``)
throughout; floating point never enters this module.  A series knows
exactly ``precision`` coefficients (of q^0 .. q^(precision-1)) and
arithmetic never reports coefficients beyond the minimum precision of
its inputs.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from typing import Optional, Sequence

from .kernels import convolve_exact

Rational = Fraction

# Below this many coefficient pairs a sparse product beats the dense kernels.
_SPARSE_COST_FACTOR = 16


class CharacterMod4(Enum):
    """Dirichlet characters mod 4: the trivial one and (-4/.)."""

    TRIVIAL = "trivial"
    CHI_MINUS4 = "chi_minus4"

    def __mul__(self, other: "CharacterMod4") -> "CharacterMod4":
        if self is other:
            return CharacterMod4.TRIVIAL
        if self is CharacterMod4.TRIVIAL:
            return other
        return self

    def value_at(self, d: int) -> int:
        if self is CharacterMod4.TRIVIAL:
            return 1
        if d % 2 == 0:
            return 0
        return 1 if d % 4 == 1 else -1


@dataclass(frozen=True)
class FormMeta:
    """Weight/level/character bookkeeping attached to a series.

    ``twice_weight`` stores 2k so half-integral weights are exact.
    Half-integral weight forces 4 | level (such forms live inside
    Gamma_0(4)).
    """

    twice_weight: int
    level: int
    character: CharacterMod4
    is_cusp_at_infinity: bool

    def __post_init__(self):
        if self.level <= 0:
            raise ValueError("level must be positive")
        if self.twice_weight % 2 != 0 and self.level % 4 != 0:
            raise ValueError("half-integral weight requires 4 | level")

    @property
    def weight(self) -> Fraction:
        return Fraction(self.twice_weight, 2)


def _as_fraction(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        return Fraction(x)
    raise TypeError(f"cannot interpret {x!r} as an exact rational")


class QSeries:
    """Truncated q-expansion with exact rational coefficients.

    Immutable; safe to share between threads.
    """

    __slots__ = ("coeffs", "meta")

    def __init__(self, coeffs: Sequence, meta: Optional[FormMeta] = None):
        cs = tuple(_as_fraction(c) for c in coeffs)
        if not cs:
            raise ValueError("a series must know at least one coefficient")
        object.__setattr__(self, "coeffs", cs)
        object.__setattr__(self, "meta", meta)

    def __setattr__(self, *args):
        raise AttributeError("QSeries is immutable")

    @property
    def precision(self) -> int:
        return len(self.coeffs)

    def coeff(self, n: int) -> Fraction:
        if not 0 <= n < len(self.coeffs):
            raise IndexError(
                f"coefficient of q^{n} unknown (precision {len(self.coeffs)})"
            )
        return self.coeffs[n]

    def truncate(self, precision: int) -> "QSeries":
        if not 1 <= precision <= len(self.coeffs):
            raise ValueError("cannot truncate beyond known precision")
        return QSeries(self.coeffs[:precision], self.meta)

    def is_zero(self) -> bool:
        return all(c == 0 for c in self.coeffs)

    def is_integral(self) -> bool:
        return all(c.denominator == 1 for c in self.coeffs)

    def with_meta(self, meta: Optional[FormMeta]) -> "QSeries":
        return QSeries(self.coeffs, meta)

    def __eq__(self, other):
        if not isinstance(other, QSeries):
            return NotImplemented
        return self.coeffs == other.coeffs and self.meta == other.meta

    def __hash__(self):
        return hash((self.coeffs, self.meta))

    def __repr__(self):
        head = ", ".join(str(c) for c in self.coeffs[:6])
        tail = ", ..." if len(self.coeffs) > 6 else ""
        return f"QSeries([{head}{tail}], precision={len(self.coeffs)})"

    def to_json_dict(self) -> dict:
        m = self.meta
        return {
            "twice_weight": m.twice_weight if m else None,
            "level": m.level if m else None,
            "character": m.character.value if m else None,
            "precision": len(self.coeffs),
            "coeffs": [f"{c.numerator}/{c.denominator}" for c in self.coeffs],
        }

    @classmethod
    def from_json_dict(cls, d: dict) -> "QSeries":
        coeffs = [Fraction(s) for s in d["coeffs"]]
        if d.get("precision") not in (None, len(coeffs)):
            raise ValueError("precision field disagrees with coefficient count")
        meta = None
        if d.get("twice_weight") is not None:
            meta = FormMeta(
                twice_weight=int(d["twice_weight"]),
                level=int(d["level"]),
                character=CharacterMod4(d["character"]),
                is_cusp_at_infinity=(coeffs[0] == 0),
            )
        return cls(coeffs, meta)


def zero_series(precision: int) -> QSeries:
    return QSeries([Fraction(0)] * precision)


def one_series(precision: int) -> QSeries:
    return QSeries([Fraction(1)] + [Fraction(0)] * (precision - 1))


def series_add(a: QSeries, b: QSeries, ca=Fraction(1), cb=Fraction(1)) -> QSeries:
    """Coefficient-wise ca*a + cb*b at the minimum of the two precisions."""
    ca = _as_fraction(ca)
    cb = _as_fraction(cb)
    prec = min(a.precision, b.precision)
    coeffs = [ca * a.coeffs[i] + cb * b.coeffs[i] for i in range(prec)]
    meta = None
    if (
        a.meta is not None
        and b.meta is not None
        and a.meta.twice_weight == b.meta.twice_weight
        and a.meta.level == b.meta.level
        and a.meta.character == b.meta.character
    ):
        meta = FormMeta(
            a.meta.twice_weight, a.meta.level, a.meta.character, coeffs[0] == 0
        )
    return QSeries(coeffs, meta)


def _mul_meta(a: QSeries, b: QSeries, constant_term: Fraction) -> Optional[FormMeta]:
    if a.meta is None or b.meta is None:
        return None
    return FormMeta(
        twice_weight=a.meta.twice_weight + b.meta.twice_weight,
        level=math.lcm(a.meta.level, b.meta.level),
        character=a.meta.character * b.meta.character,
        is_cusp_at_infinity=(constant_term == 0),
    )


def _mul_coeffs(ca: Sequence[Fraction], cb: Sequence[Fraction], prec: int):
    """Exact truncated Cauchy product of two coefficient tuples."""
    nza = [(i, c) for i, c in enumerate(ca[:prec]) if c != 0]
    nzb = [(i, c) for i, c in enumerate(cb[:prec]) if c != 0]
    if not nza or not nzb:
        return [Fraction(0)] * prec
    if len(nza) > len(nzb):
        nza, nzb = nzb, nza
    integral = all(c.denominator == 1 for _, c in nza) and all(
        c.denominator == 1 for _, c in nzb
    )
    if len(nza) * len(nzb) <= _SPARSE_COST_FACTOR * prec:
        if integral:
            out = [0] * prec
            for i, ci in ((i, c.numerator) for i, c in nza):
                for j, cj in nzb:
                    if i + j >= prec:
                        break
                    out[i + j] += ci * cj.numerator
            return [Fraction(v) for v in out]
        out = [Fraction(0)] * prec
        for i, ci in nza:
            for j, cj in nzb:
                if i + j >= prec:
                    break
                out[i + j] += ci * cj
        return out
    # Dense route: clear denominators, convolve integers, divide back.
    da = math.lcm(*(c.denominator for c in ca[:prec])) if not integral else 1
    db = math.lcm(*(c.denominator for c in cb[:prec])) if not integral else 1
    ia = [int(c * da) for c in ca[:prec]]
    ib = [int(c * db) for c in cb[:prec]]
    conv = convolve_exact(ia, ib, prec)
    scale = da * db
    if scale == 1:
        return [Fraction(v) for v in conv]
    return [Fraction(v, scale) for v in conv]


def series_mul(a: QSeries, b: QSeries) -> QSeries:
    """Cauchy product truncated to the minimum precision of the inputs."""
    prec = min(a.precision, b.precision)
    coeffs = _mul_coeffs(a.coeffs, b.coeffs, prec)
    return QSeries(coeffs, _mul_meta(a, b, coeffs[0]))


def apply_D(a: QSeries, r: int) -> QSeries:
    """The normalized derivative (2*pi*i)^-1 d/dz, applied r times.

    Multiplies the n-th coefficient by n^r.  Metadata is dropped: the
    derivative of a modular form is not modular.
    """
    if r < 0:
        raise ValueError("derivative order must be nonnegative")
    if r == 0:
        return QSeries(a.coeffs, None) if a.meta is not None else a
    return QSeries([c * n**r for n, c in enumerate(a.coeffs)])


def make_theta(precision: int) -> QSeries:
    """The classical weight-1/2 theta series on Gamma_0(4).

    Sum over all integers n of q^(n^2): constant term 1, coefficient 2
    at every positive perfect square.
    """
    if precision < 1:
        raise ValueError("precision must be >= 1")
    coeffs = [Fraction(0)] * precision
    coeffs[0] = Fraction(1)
    n = 1
    while n * n < precision:
        coeffs[n * n] = Fraction(2)
        n += 1
    return QSeries(coeffs, FormMeta(1, 4, CharacterMod4.TRIVIAL, False))


def _euler_factor(step: int, exponent: int, prec: int) -> list:
    """Integer coefficients of prod_{n>=1} (1 - q^(step*n))^exponent."""
    base = [0] * prec
    base[0] = 1
    # Pentagonal number theorem: prod (1-x^n) = sum_k (-1)^k x^(k(3k-1)/2).
    k = 1
    while True:
        hit = False
        for g in (k * (3 * k - 1) // 2, k * (3 * k + 1) // 2):
            idx = step * g
            if idx < prec:
                base[idx] = -1 if k % 2 else 1
                hit = True
        if not hit:
            break
        k += 1
    e = abs(exponent)
    result = [0] * prec
    result[0] = 1
    sq = base
    while e:
        if e & 1:
            result = convolve_exact(result, sq, prec)
        e >>= 1
        if e:
            sq = convolve_exact(sq, sq, prec)
    if exponent < 0:
        result = _invert_unit_int(result, prec)
    return result


def _invert_unit_int(a: list, prec: int) -> list:
    # Reciprocal of a series with constant term 1; integer coefficients.
    out = [0] * prec
    out[0] = 1
    for n in range(1, prec):
        out[n] = -sum(a[j] * out[n - j] for j in range(1, n + 1) if a[j])
    return out


def make_eta_product(
    factors: Sequence[tuple],
    precision: int,
    meta: Optional[FormMeta] = None,
) -> QSeries:
    """Expansion of prod_i eta(multiplier_i * z)^exponent_i.

    Each eta factor contributes a leading power q^(multiplier*exponent/24);
    the total leading power must be a nonnegative integer, otherwise the
    product is not a q-series and we refuse.
    """
    if precision < 1:
        raise ValueError("precision must be >= 1")
    order24 = 0
    for mult, expo in factors:
        if mult <= 0:
            raise ValueError("eta multiplier must be positive")
        order24 += mult * expo
    if order24 % 24 != 0 or order24 < 0:
        raise ValueError(
            f"non-integral order: leading q-power {order24}/24 is not a "
            "nonnegative integer"
        )
    shift = order24 // 24
    if shift >= precision:
        return QSeries([Fraction(0)] * precision, meta)
    inner = precision - shift
    prod = [0] * inner
    prod[0] = 1
    for mult, expo in factors:
        prod = convolve_exact(prod, _euler_factor(mult, expo, inner), inner)
    coeffs = [Fraction(0)] * shift + [Fraction(v) for v in prod]
    return QSeries(coeffs, meta)


def bernoulli_number(n: int) -> Fraction:
    """Exact Bernoulli number B_n (B_1 = -1/2 convention)."""
    if n < 0:
        raise ValueError("n must be nonnegative")
    b = [Fraction(0)] * (n + 1)
    b[0] = Fraction(1)
    for m in range(1, n + 1):
        acc = sum(math.comb(m + 1, j) * b[j] for j in range(m))
        b[m] = -acc / (m + 1)
    return b[n]


def make_eisenstein(weight_k: int, precision: int) -> QSeries:
    """Normalized Eisenstein series E_k = 1 - (2k/B_k) sum sigma_{k-1}(n) q^n."""
    if weight_k % 2 != 0 or weight_k < 4:
        raise ValueError("Eisenstein weight must be an even integer >= 4")
    if precision < 1:
        raise ValueError("precision must be >= 1")
    factor = Fraction(-2 * weight_k) / bernoulli_number(weight_k)
    sigma = [0] * precision
    for d in range(1, precision):
        dk = d ** (weight_k - 1)
        for mult in range(d, precision, d):
            sigma[mult] += dk
    coeffs = [Fraction(1)] + [factor * sigma[n] for n in range(1, precision)]
    return QSeries(
        coeffs, FormMeta(2 * weight_k, 1, CharacterMod4.TRIVIAL, False)
    )
