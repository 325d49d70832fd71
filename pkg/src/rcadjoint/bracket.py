"""The nu-th Rankin-Cohen bracket and its scalar coefficients.

Exact for integral and half-integral weights: every scalar here is a
``Fraction``, with gamma-function ratios evaluated as telescoping
products so no transcendental values appear.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .qseries import (
    CharacterMod4,
    FormMeta,
    QSeries,
    apply_D,
    series_add,
    series_mul,
    zero_series,
)


@dataclass(frozen=True, order=True)
class TwiceWeight:
    """A weight in (1/2)Z, stored exactly as twice its value."""

    w2: int

    @property
    def weight(self) -> Fraction:
        return Fraction(self.w2, 2)

    @property
    def is_integral(self) -> bool:
        return self.w2 % 2 == 0

    def __repr__(self):
        return f"TwiceWeight({self.w2})"


@dataclass(frozen=True)
class BracketParams:
    """The (k, l, nu) triple of a Rankin-Cohen bracket."""

    k: TwiceWeight
    l: TwiceWeight
    nu: int

    def __post_init__(self):
        if self.nu < 0:
            raise ValueError("bracket order nu must be nonnegative")


def gamma_ratio(x: TwiceWeight, hi: int, lo: int) -> Fraction:
    """Gamma(x+hi)/Gamma(x+lo) as the telescoping product of (x+j).

    Exact for any half-integral x; equals 1 when hi == lo.
    """
    if hi < lo:
        raise ValueError("gamma_ratio needs hi >= lo")
    w = x.weight
    out = Fraction(1)
    for j in range(lo, hi):
        out *= w + j
    return out


def rc_coefficient(p: BracketParams, r: int) -> Fraction:
    """The scalar weighting D^r f D^(nu-r) g inside the bracket."""
    if not 0 <= r <= p.nu:
        raise ValueError("need 0 <= r <= nu")
    sign = -1 if (p.nu - r) % 2 else 1
    return (
        sign
        * math.comb(p.nu, r)
        * gamma_ratio(p.k, p.nu, r)
        * gamma_ratio(p.l, p.nu, p.nu - r)
    )


def alpha_coeff(p: BracketParams, n: int, m: int) -> Fraction:
    """Combinatorial kernel of the adjoint-map Dirichlet series.

    Equals the q^(n+m) coefficient of the bracket of the monomials q^n
    and q^m; the two are cross-checked against each other in tests.
    """
    if n < 1 or m < 1:
        raise ValueError("indices must be positive")
    return sum(
        rc_coefficient(p, r) * n**r * m ** (p.nu - r) for r in range(p.nu + 1)
    )


def cohen_character(k2: int, l2: int) -> CharacterMod4:
    """The extra character picked up by a bracket of weights k2/2, l2/2.

    Trivial for two integral weights; a power of (-4/.) otherwise, with
    the exponent read off the integral part(s) of the weights.
    """
    k_int = k2 % 2 == 0
    l_int = l2 % 2 == 0
    if k_int and l_int:
        return CharacterMod4.TRIVIAL
    if k_int:
        exponent = k2 // 2
    elif l_int:
        exponent = l2 // 2
    else:
        exponent = (k2 + l2) // 2
    return CharacterMod4.CHI_MINUS4 if exponent % 2 else CharacterMod4.TRIVIAL


def rc_bracket(f: QSeries, g: QSeries, p: BracketParams) -> QSeries:
    """The nu-th Rankin-Cohen bracket of two truncated expansions.

    Output weight is k + l + 2*nu; for nu > 0 the result is a cusp form,
    for nu = 0 it is the plain product.
    """
    if f.meta is not None and f.meta.twice_weight != p.k.w2:
        raise ValueError(
            f"f has twice-weight {f.meta.twice_weight}, bracket expects {p.k.w2}"
        )
    if g.meta is not None and g.meta.twice_weight != p.l.w2:
        raise ValueError(
            f"g has twice-weight {g.meta.twice_weight}, bracket expects {p.l.w2}"
        )
    prec = min(f.precision, g.precision)
    acc = zero_series(prec)
    for r in range(p.nu + 1):
        term = series_mul(apply_D(f, r), apply_D(g, p.nu - r))
        acc = series_add(acc, term, Fraction(1), rc_coefficient(p, r))
    meta = None
    if f.meta is not None and g.meta is not None:
        meta = FormMeta(
            twice_weight=p.k.w2 + p.l.w2 + 4 * p.nu,
            level=math.lcm(f.meta.level, g.meta.level),
            character=f.meta.character
            * g.meta.character
            * cohen_character(p.k.w2, p.l.w2),
            is_cusp_at_infinity=(p.nu > 0 or acc.coeff(0) == 0),
        )
    return acc.with_meta(meta)
