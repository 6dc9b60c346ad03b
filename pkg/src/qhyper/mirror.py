"""Partition combinatorics and the generalized mirror transformation.

The real structure constant of weighted degree d is assembled from the
flat-frame correlators by the partition-weighted sum

    k L(d, n) = sum_{g=0}^{d-1} sum_{parts of g} (-1)^l S(parts)
                prod_i T(d_i, 1+(k-N)d_i)/d_i
                * w( e^(N-2-n), e^(n-1-(k-N)d), e,
                     e^(1+(k-N)d_1), ..., e^(1+(k-N)d_l) )_{d-g},

where S is the symmetry factor 1/prod (multiplicity!) of the exponential
generating function and l the number of parts.
"""

from __future__ import annotations

from fractions import Fraction
from math import factorial

from .constants import VirtualConstantTable
from .correlators import FlatCorrelators


def enumerate_partitions(d: int) -> list[tuple[int, ...]]:
    """All partitions of d as ascending part tuples, lexicographically.

    d = 0 yields exactly the empty partition of length 0.
    """
    if d < 0:
        raise ValueError("d must be nonnegative")

    def gen(rest: int, lo: int):
        if rest == 0:
            yield ()
            return
        for p in range(lo, rest + 1):
            for tail in gen(rest - p, p):
                yield (p,) + tail

    return sorted(gen(d, 1))


def s_factor(parts) -> Fraction:
    """Symmetry factor S = prod_j 1/(m_j!) over part multiplicities m_j."""
    parts = tuple(parts)
    out = Fraction(1)
    for p in set(parts):
        out /= factorial(parts.count(p))
    return out


def real_window(N: int, k: int, d: int) -> tuple[int, int]:
    """Index window [2+(k-N)d, N-3] outside which degree-d real constants
    vanish in the regime k > N."""
    return 2 + (k - N) * d, N - 3


def _base_insertions(N: int, k: int, d: int, n: int) -> tuple[int, int, int]:
    step = k - N
    return (N - 2 - n, n - 1 - step * d, 1)


def transform_sum(w: FlatCorrelators, d: int, n: int, extra=()) -> Fraction:
    """The partition-weighted sum of flat-frame correlators defining
    k L(d, n), with optional extra insertions appended to every term."""
    N, k = w.N, w.k
    step = k - N
    base = _base_insertions(N, k, d, n) + tuple(extra)
    total = Fraction(0)
    for g in range(0, d):
        for parts in enumerate_partitions(g):
            weight = s_factor(parts)
            if len(parts) % 2:
                weight = -weight
            for p in parts:
                weight *= Fraction(w.table.value(p, 1 + step * p), p)
            if weight == 0:
                continue
            ins = base + tuple(1 + step * p for p in parts)
            term = w.value(d - g, ins)
            if term != 0:
                total += weight * term
    return total


def real_structure_constant(
    N: int,
    k: int,
    d: int,
    n: int,
    w: FlatCorrelators | None = None,
    table: VirtualConstantTable | None = None,
) -> Fraction:
    """The degree-d real structure constant L(d, n) of M_N^k, k > N."""
    if d < 1:
        raise ValueError("degree must be at least 1")
    if w is None:
        w = FlatCorrelators(N, k, d, table=table)
    elif (w.N, w.k) != (N, k):
        raise ValueError("correlator engine was built for a different (N, k)")
    return transform_sum(w, d, n) / k


def verify_kahler_scaling(
    N: int,
    k: int,
    d: int,
    n: int,
    w: FlatCorrelators | None = None,
) -> bool:
    """Check that the transformation with an extra divisor insertion gives
    exactly d times the value without it (the standard divisor rule for the
    real constants).  A False return is a bug, not a property of (N, k)."""
    if w is None:
        w = FlatCorrelators(N, k, d)
    plain = transform_sum(w, d, n)
    lifted = transform_sum(w, d, n, extra=(1,))
    return lifted == d * plain
