"""Genus-0 correlator families reconstructed from three-point data.

Two families share one reduction engine:

* ``VirtualCorrelators`` (the v family) is seeded by differences of virtual
  structure constants and strips a divisor insertion with the plain rule
  v(O_e X)_d = d v(X)_d.
* ``FlatCorrelators`` (the w family) is seeded by the three-point data of
  the flat-coordinate connection and strips a divisor with the modified rule
  w(O_e X)_d = d w(X)_d - sum_f T(f, 1+(k-N)f) w(O_{e^{1+(k-N)f}} X)_{d-f}.

Keys with four or more insertions and no flat-unit/divisor factors reduce
through the associativity equation.  The engine always splits the smallest
exponent s as e * e^(s-1) and runs the quadruple (e, e^(s-1), b, c) with b,
c the two largest remaining insertions; the equation isolates the target
against the classical pairing <e, e^(s-1), e^(N-2-s)>.  Every other term
either lowers the degree, lowers the insertion count after a divisor strip,
or keeps (degree, count) while strictly spreading the exponent multiset (the
sum of binomial(a_j, 2) grows, bounded above), so the recursion terminates.

A permutation-invariant canonical key (sorted insertion tuple) backs the
memo store; values never depend on evaluation order.
"""

from __future__ import annotations

from fractions import Fraction
from math import comb

from .constants import VirtualConstantTable
from .errors import ReductionError, TruncationError
from .gaussmanin import FlatConnection, build_truncated_system, eliminate_to_flat, extract_w3


def _sub_multisets(items: tuple[int, ...]):
    """Yield (sub-multiset, multiplicity) pairs for splittings of a labelled
    multiset into two halves: multiplicity counts the label choices."""
    groups = sorted({v: items.count(v) for v in items}.items())
    subs = [((), 1)]
    for value, count in groups:
        extended = []
        for chosen, mult in subs:
            for take in range(count + 1):
                extended.append((chosen + (value,) * take, mult * comb(count, take)))
        subs = extended
    return subs


def _multiset_diff(items: tuple[int, ...], sub: tuple[int, ...]) -> tuple[int, ...]:
    out = list(items)
    for v in sub:
        out.remove(v)
    return tuple(out)


class _ReductionEngine:
    """Shared axioms: flat metric, selection rule, divisor stripping, and the
    associativity reduction.  Subclasses provide the degree >= 1 three-point
    seed and the divisor rule."""

    def __init__(self, N: int, k: int, table: VirtualConstantTable, trace: bool = False):
        if (table.N, table.k) != (N, k):
            raise ValueError("table was built for a different (N, k)")
        self.N = N
        self.k = k
        self.table = table
        self.trace = trace
        self._memo: dict[tuple[int, tuple[int, ...]], Fraction] = {}
        self._active: set[tuple[int, tuple[int, ...]]] = set()
        self._depth = 0

    # -- family hooks ------------------------------------------------------

    def _seed3(self, d: int, p: int, r: int) -> Fraction:
        raise NotImplementedError

    def _strip_divisor(self, d: int, rest: tuple[int, ...]) -> Fraction:
        raise NotImplementedError

    # -- public entry ------------------------------------------------------

    def selection_deficit(self, d: int, insertions) -> int:
        return sum(a - 1 for a in insertions) - ((self.N - 5) + (self.N - self.k) * d)

    def value(self, d: int, insertions) -> Fraction:
        """Correlator value for the insertion multiset at degree d."""
        ins = tuple(sorted(insertions))
        if d < 0 or any(a < 0 or a > self.N - 2 for a in ins):
            return Fraction(0)
        if self.selection_deficit(d, ins) != 0:
            return Fraction(0)
        key = (d, ins)
        cached = self._memo.get(key)
        if cached is not None:
            return cached
        if key in self._active:
            raise ReductionError(f"reduction revisited an in-progress key {key}")
        self._active.add(key)
        if self.trace:
            print("  " * self._depth + f"reduce d={d} {ins}")
        self._depth += 1
        try:
            val = self._reduce(d, ins)
        finally:
            self._depth -= 1
            self._active.discard(key)
        self._memo[key] = val
        return val

    # -- reduction ---------------------------------------------------------

    def _reduce(self, d: int, ins: tuple[int, ...]) -> Fraction:
        n = len(ins)
        if n < 3:
            return Fraction(0)
        if d == 0:
            if n == 3 and sum(ins) == self.N - 2:
                return Fraction(self.k)
            return Fraction(0)
        if ins[0] == 0:
            return Fraction(0)
        if ins[0] == 1:
            if n == 3:
                return self._seed3(d, ins[1], ins[2])
            return self._strip_divisor(d, ins[1:])
        return self._associativity(d, ins)

    def _pick_pair(self, rest: tuple[int, ...]) -> tuple[int, int]:
        """The two insertions named explicitly in the associativity quadruple.

        Any choice from ``rest`` is valid (every element exceeds s - 1, so
        the equation never degenerates); the default takes the two largest.
        Alternative choices are exercised by the well-definedness tests.
        """
        return rest[-1], rest[-2]

    def _associativity(self, d: int, ins: tuple[int, ...]) -> Fraction:
        s = ins[0]
        rest = ins[1:]
        beta, gamma = self._pick_pair(rest)
        extras = list(rest)
        extras.remove(beta)
        extras.remove(gamma)
        extras = tuple(extras)
        lhs_rest = self._pairing_sum(d, s - 1, beta, gamma, extras, include_classical_left=False)
        rhs = self._pairing_sum(d, beta, s - 1, gamma, extras, include_classical_left=True)
        return (rhs - lhs_rest) / self.k

    def _pairing_sum(
        self,
        d: int,
        x2: int,
        x3: int,
        x4: int,
        extras: tuple[int, ...],
        include_classical_left: bool,
    ) -> Fraction:
        """One side of the associativity equation for the quadruple
        (e, e^x2, e^x3, e^x4) with spectator insertions ``extras``:

            sum_{d1+d2=d} sum_{A+B=extras} sum_i
                <e, e^x2, A, e^i>_{d1} <e^{N-2-i}, B, e^x3, e^x4>_{d2}.

        The d1 = 0 slice collapses to the classical pairing and is skipped on
        the side where it reproduces the target being solved for.
        """
        N = self.N
        total = Fraction(0)
        if include_classical_left:
            total += self.k * self.value(d, (x2 + 1,) + extras + (x3, x4))
        if x3 + x4 <= N - 2:
            total += self.k * self.value(d, (1, x2) + extras + (x3 + x4,))
        for d1 in range(1, d):
            d2 = d - d1
            for sub, mult in _sub_multisets(extras):
                i = (N - 5) + (N - self.k) * d1 - (x2 - 1) - sum(a - 1 for a in sub) + 1
                if i < 0 or i > N - 2:
                    continue
                left = self.value(d1, (1, x2) + sub + (i,))
                if left == 0:
                    continue
                right = self.value(d2, (N - 2 - i,) + _multiset_diff(extras, sub) + (x3, x4))
                if right == 0:
                    continue
                total += mult * left * right
        return total


class VirtualCorrelators(_ReductionEngine):
    """The v family: three-point seeds are differences of virtual constants."""

    def _seed3(self, d: int, p: int, r: int) -> Fraction:
        n = self.N - 2 - p
        step = self.k - self.N
        return self.k * (self.table.value(d, n) - self.table.value(d, 1 + step * d))

    def _strip_divisor(self, d: int, rest: tuple[int, ...]) -> Fraction:
        return d * self.value(d, rest)


class FlatCorrelators(_ReductionEngine):
    """The w family: seeds come from the flat connection, divisors strip with
    lower-degree corrections weighted by T(f, 1+(k-N)f)."""

    def __init__(
        self,
        N: int,
        k: int,
        trunc: int,
        table: VirtualConstantTable | None = None,
        flat: FlatConnection | None = None,
        trace: bool = False,
    ):
        table = table if table is not None else VirtualConstantTable(N, k)
        super().__init__(N, k, table, trace=trace)
        if flat is None:
            flat = eliminate_to_flat(build_truncated_system(N, k, trunc, table))
        if flat.trunc < trunc:
            raise TruncationError(
                f"flat connection truncated at {flat.trunc}, need {trunc}"
            )
        self.flat = flat
        self.trunc = trunc

    def value(self, d: int, insertions) -> Fraction:
        if d > self.trunc:
            raise TruncationError(
                f"degree {d} exceeds the truncation {self.trunc} of the flat data"
            )
        return super().value(d, insertions)

    def _seed3(self, d: int, p: int, r: int) -> Fraction:
        return extract_w3(self.flat, d, self.N - 2 - p)

    def _strip_divisor(self, d: int, rest: tuple[int, ...]) -> Fraction:
        step = self.k - self.N
        total = d * self.value(d, rest)
        for f in range(1, d):
            coeff = self.table.value(f, 1 + step * f)
            if coeff != 0:
                total -= coeff * self.value(d - f, rest + (1 + step * f,))
        return total


def normalized_virtual(corr: _ReductionEngine, d: int, n: int, parts) -> Fraction:
    """Normalized correlator V_{d-m}(n; parts) at weighted degree d, where
    m = sum(parts): the correlator with insertions e^(N-2-n), e^(n-1-(k-N)d),
    e, and e^(1+(k-N)p) for each part p, at degree d-m, divided by
    k (d-m)^len(parts)."""
    parts = tuple(parts)
    dm = d - sum(parts)
    if dm < 1:
        raise ValueError("the correlator degree d - sum(parts) must be positive")
    step = corr.k - corr.N
    ins = (corr.N - 2 - n, n - 1 - step * d, 1) + tuple(1 + step * p for p in parts)
    return corr.value(dm, ins) / (corr.k * Fraction(dm) ** len(parts))


class RecursionOracle:
    """Independent evaluator of the normalized values for N = k - 1.

    Implements the closed recursion that peels the largest part of the
    partition, with the split over disjoint spectator subsets weighted by
    ((d-m-j)/(d-m))^p (j/(d-m))^(l-p-1).  Zero parts are dropped (a part 0
    is a divisor insertion already absorbed by the normalization).  Parts
    are accepted in any order.
    """

    def __init__(self, k: int, table: VirtualConstantTable | None = None):
        self.k = k
        self.N = k - 1
        self.table = table if table is not None else VirtualConstantTable(self.N, k)
        if (self.table.N, self.table.k) != (self.N, k):
            raise ValueError("oracle requires a table for (k-1, k)")
        self._memo: dict[tuple[int, int, tuple[int, ...]], Fraction] = {}

    def value(self, d: int, n: int, parts) -> Fraction:
        parts = tuple(sorted(p for p in parts if p != 0))
        if any(p < 0 for p in parts):
            raise ValueError("partition parts must be nonnegative")
        dm = d - sum(parts)
        if dm < 1:
            raise ValueError("the correlator degree d - sum(parts) must be positive")
        # out-of-range insertions empty the correlator before any recursion
        if not (0 <= self.N - 2 - n <= self.N - 2 and 0 <= n - 1 - d <= self.N - 2):
            return Fraction(0)
        if any(1 + p > self.N - 2 for p in parts):
            return Fraction(0)
        key = (d, n, parts)
        cached = self._memo.get(key)
        if cached is not None:
            return cached
        val = self._eval(d, n, parts, dm)
        self._memo[key] = val
        return val

    def _eval(self, d: int, n: int, parts: tuple[int, ...], dm: int) -> Fraction:
        N = self.N
        if not parts:
            if not (0 <= N - 2 - n <= N - 2) or not (0 <= n - 1 - d <= N - 2):
                return Fraction(0)
            return self.table.value(d, n) - self.table.value(d, 1 + d)
        m = sum(parts)
        last = parts[-1]
        rest = parts[:-1]
        total = self.value(d - 1, n, rest + (last - 1,))
        total += self.value(d - last, n - last, rest)
        total -= self.value(d - last, d + 1, rest)
        L = len(parts)
        for j in range(1, dm):
            for bits in range(1 << (L - 1)):
                A = tuple(rest[i] for i in range(L - 1) if bits >> i & 1)
                B = tuple(rest[i] for i in range(L - 1) if not bits >> i & 1)
                p, dA, dB = len(A), sum(A), sum(B)
                weight = Fraction(dm - j, dm) ** p * Fraction(j, dm) ** (L - 1 - p)
                first = self.value(dm - j + dA + last - 1, n, A + (last - 1,))
                if first != 0:
                    second = self.value(j + dB, n + j - d + m - dA - last, B)
                    if second != 0:
                        total += weight * first * second
                first = self.value(d, n, A + (m + j - dA,))
                if first != 0:
                    second = self.value(j + dB, m + 1 + j - dA, B)
                    if second != 0:
                        total -= weight * first * second
        return total


# ---------------------------------------------------------------------------
# named bilinear combinations and the vanishing quadratics (N = k - 1)
# ---------------------------------------------------------------------------

def _hi_block(L1, n: int, j: int) -> Fraction:
    window = L1(n) + L1(n - 1) + L1(n - 2) + L1(n - 3) + L1(n - 4)
    if j == 1:
        return L1(n) * L1(n - 4) - L1(3) * window + L1(2) * (L1(n - 1) + L1(n - 2) + L1(n - 3))
    if j == 2:
        return L1(n) * L1(n - 3) + L1(n - 1) * L1(n - 4) - L1(4) * window + L1(2) * L1(n - 2)
    if j == 3:
        return (
            L1(n) * L1(n - 2)
            + L1(n - 1) * L1(n - 3)
            + L1(n - 2) * L1(n - 4)
            - L1(5) * window
            - L1(2) * L1(n - 2)
        )
    if j == 4:
        return (
            L1(n - 1) * L1(n - 3)
            - L1(4) * (L1(n - 1) + L1(n - 2) + L1(n - 3))
            + L1(3) * L1(n - 2)
        )
    raise ValueError(f"no quadratic combination with index {j}")


def hi_combination(table: VirtualConstantTable, j: int, n: int) -> Fraction:
    """The degree-2 combination hi_j(n) of first-degree constants (N = k-1),
    normalized so that hi_j(6) = 0 identically; hi_j(7) = 0 holds as well."""
    if table.k - table.N != 1:
        raise ValueError("defined only for N = k - 1")

    def L1(m: int) -> Fraction:
        return table.value(1, m)

    return _hi_block(L1, n, j) - _hi_block(L1, 6, j)


def named_combination(ident: str, n: int, k: int, V=None, table=None) -> Fraction:
    """The auxiliary combinations A(n)..D(n) (bilinear in normalized values)
    and hi_1(n)..hi_4(n) (quadratic in degree-1 constants) for N = k - 1.

    ``V`` is a callable (d, n, parts) -> value; by default the recursion
    oracle is used.
    """
    ident = ident.replace("_", "").strip()
    if table is None:
        table = VirtualConstantTable(k - 1, k)
    if ident.startswith("hi"):
        return hi_combination(table, int(ident[2:]), n)
    if V is None:
        V = RecursionOracle(k, table).value
    if ident == "A":
        return (
            V(2, n, (1,)) * V(1, n - 3, ())
            + V(1, n, ()) * V(2, n - 2, (1,))
            - V(4, n, (1, 2)) * V(1, 3, ())
            - V(4, n, (3,)) * V(1, 4, ())
        )
    if ident == "B":
        return (
            V(3, n, (1,)) * V(1, n - 4, ())
            + V(1, n, ()) * V(3, n - 2, (1,))
            - (V(4, n, (2,)) + V(4, n - 1, (2,)) - V(2, 6, ())) * V(1, 3, ())
            - V(5, n, (4,)) * V(2, 5, ())
        )
    if ident == "C":
        return (
            V(2, n, (1,)) * V(2, n - 3, ())
            + V(2, n, ()) * V(2, n - 3, (1,))
            - V(5, n, (1, 3)) * V(2, 4, ())
            - V(5, n, (3,)) * V(1, 4, ())
        )
    if ident == "D":
        def block(nn: int) -> Fraction:
            return (
                V(2, nn, (1,)) * V(1, nn - 3, ())
                + V(1, nn, ()) * V(2, nn - 2, (1,))
                - V(4, nn, (1, 2)) * V(1, 3, ())
                - V(4, nn, (3,)) * V(1, 4, ())
            )

        return block(n) + block(n - 1)
    raise ValueError(f"unknown combination {ident!r}")
