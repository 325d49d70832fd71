"""Integer convolution kernels behind truncated series multiplication.

Three routes, fastest first:

* a numba ``@njit`` int64 kernel (the default when numba imports cleanly),
* a pure-numpy fallback (``np.convolve``), selected by setting the
  environment variable ``RC_KERNEL=numpy`` or when numba is unavailable,
* Kronecker substitution on Python big integers, used automatically
  whenever the int64 overflow certificate fails.

All routes are exact.  ``benchmarks/kernel_bench.py`` compares them.
"""

from __future__ import annotations

import os

import numpy as np

KERNEL_ENV = "RC_KERNEL"

# Largest value of len * max|a| * max|b| we allow through the int64 paths.
# One bit of headroom under 2**63 for the running sum.
_INT64_LIMIT = 1 << 62

try:
    from numba import njit

    HAS_NUMBA = True
except ImportError:  # pragma: no cover - numba is a declared dependency
    njit = None
    HAS_NUMBA = False


if HAS_NUMBA:

    @njit(cache=True)
    def _convolve_njit(a, b, prec):  # pragma: no cover - compiled
        out = np.zeros(prec, dtype=np.int64)
        na = len(a)
        for i in range(min(na, prec)):
            ai = a[i]
            if ai == 0:
                continue
            jmax = min(len(b), prec - i)
            for j in range(jmax):
                out[i + j] += ai * b[j]
        return out


def _convolve_numpy(a, b, prec):
    return np.convolve(a, b)[:prec]


def active_kernel() -> str:
    """Name of the int64 kernel currently selected: 'numba' or 'numpy'."""
    choice = os.environ.get(KERNEL_ENV, "").strip().lower()
    if choice == "numpy":
        return "numpy"
    if choice == "numba":
        if not HAS_NUMBA:
            raise RuntimeError("RC_KERNEL=numba but numba is not importable")
        return "numba"
    return "numba" if HAS_NUMBA else "numpy"


def int64_safe(max_a: int, max_b: int, length: int) -> bool:
    """True when a truncated convolution provably fits in int64."""
    return max_a * max_b * max(length, 1) < _INT64_LIMIT


def convolve_int64(a, b, prec):
    """Truncated convolution of int64 arrays; caller certifies no overflow."""
    a = np.asarray(a, dtype=np.int64)
    b = np.asarray(b, dtype=np.int64)
    if active_kernel() == "numba":
        return _convolve_njit(a, b, prec)
    return _convolve_numpy(a, b, prec)


def _pack(vals, width):
    buf = bytearray(width * len(vals))
    for i, v in enumerate(vals):
        if v:
            off = i * width
            buf[off : off + (v.bit_length() + 7) // 8] = v.to_bytes(
                (v.bit_length() + 7) // 8, "little"
            )
    return int.from_bytes(buf, "little")


def _kronecker_nonneg(a, b, prec, width):
    out_len = len(a) + len(b)
    c = _pack(a, width) * _pack(b, width)
    data = c.to_bytes(width * out_len, "little")
    return [
        int.from_bytes(data[i * width : (i + 1) * width], "little")
        for i in range(prec)
    ]


def convolve_bigint(a, b, prec):
    """Exact truncated convolution via Kronecker substitution.

    Signed inputs are split into positive/negative parts (four nonnegative
    products) so that packed slots never interact.
    """
    max_a = max((abs(v) for v in a), default=0)
    max_b = max((abs(v) for v in b), default=0)
    if max_a == 0 or max_b == 0:
        return [0] * prec
    bound = max_a * max_b * min(len(a), len(b))
    width = (bound.bit_length() + 8) // 8 + 1  # bytes per slot, with headroom
    ap = [v if v > 0 else 0 for v in a]
    an = [-v if v < 0 else 0 for v in a]
    bp = [v if v > 0 else 0 for v in b]
    bn = [-v if v < 0 else 0 for v in b]
    pp = _kronecker_nonneg(ap, bp, prec, width)
    nn = _kronecker_nonneg(an, bn, prec, width)
    pn = _kronecker_nonneg(ap, bn, prec, width)
    np_ = _kronecker_nonneg(an, bp, prec, width)
    return [pp[i] + nn[i] - pn[i] - np_[i] for i in range(prec)]


def convolve_exact(a, b, prec):
    """Exact truncated convolution of two lists of Python ints."""
    max_a = max((abs(v) for v in a), default=0)
    max_b = max((abs(v) for v in b), default=0)
    if max_a == 0 or max_b == 0:
        return [0] * prec
    if int64_safe(max_a, max_b, min(len(a), len(b))):
        return [int(v) for v in convolve_int64(a, b, prec)]
    return convolve_bigint(a, b, prec)
