import random
from fractions import Fraction

import pytest

from qhyper.constants import VirtualConstantTable
from qhyper.correlators import (
    FlatCorrelators,
    RecursionOracle,
    VirtualCorrelators,
    _multiset_diff,
    _sub_multisets,
    hi_combination,
    named_combination,
    normalized_virtual,
)
from qhyper.errors import TruncationError
from qhyper.verify import partition_identity_checks


def wdvv_residual(engine, d, quad, extras):
    """Difference of the two pairings of the associativity equation."""
    N = engine.N
    x1, x2, x3, x4 = quad

    def side(a, b, c, dd):
        total = Fraction(0)
        for d1 in range(0, d + 1):
            d2 = d - d1
            for sub, mult in _sub_multisets(extras):
                comp = _multiset_diff(extras, sub)
                for i in range(0, N - 1):
                    left = engine.value(d1, (a, b) + sub + (i,))
                    if left == 0:
                        continue
                    right = engine.value(d2, (N - 2 - i,) + comp + (c, dd))
                    if right == 0:
                        continue
                    total += mult * left * right
        return total

    return side(x1, x2, x3, x4) - side(x1, x3, x2, x4)


class TestVirtualFamily:
    def test_classical_three_point(self, ws1112):
        v = ws1112["v"]
        assert v.value(0, (2, 3, 4)) == 12
        assert v.value(0, (2, 3, 5)) == 0
        assert v.value(0, (0, 4, 5)) == 12  # flat metric slot

    def test_flat_unit_kills_positive_degree(self, ws1112):
        v = ws1112["v"]
        assert v.value(1, (0, 4, 2)) == 0
        assert v.value(2, (0, 3, 3, 2)) == 0

    def test_selection_rule(self, ws1112):
        v = ws1112["v"]
        assert v.selection_deficit(1, (4, 4, 2, 2)) != 0
        assert v.value(1, (4, 4, 2, 2)) == 0

    def test_divisor_strip(self, ws1112):
        v = ws1112["v"]
        assert v.value(2, (1, 2, 2, 3)) == 2 * v.value(2, (2, 2, 3))
        assert v.value(3, (1, 1, 2, 2, 2)) == 3 * v.value(3, (1, 2, 2, 2))

    def test_permutation_invariance(self, ws1112):
        v = ws1112["v"]
        rng = random.Random(9)
        key = [2, 3, 3, 4]
        base = v.value(2, tuple(key))
        for _ in range(5):
            rng.shuffle(key)
            assert v.value(2, tuple(key)) == base

    def test_three_point_seed_both_slots(self, ws1112):
        table, v = ws1112["table"], ws1112["v"]
        N, k = 11, 12
        for d in (1, 2, 3):
            for n in range(1 + d, N - 1):
                p, r = N - 2 - n, n - 1 - d
                want = k * (table.value(d, n) - table.value(d, 1 + d))
                assert v.value(d, (1, p, r)) == want
                assert v.value(d, (1, r, p)) == want

    def test_out_of_range_exponents(self, ws1112):
        v = ws1112["v"]
        assert v.value(1, (-1, 3, 4)) == 0
        assert v.value(1, (10, 3, 4)) == 0

    def test_wdvv_self_consistency(self, ws1012):
        v = ws1012["v"]
        rng = random.Random(17)
        checked = 0
        for _ in range(120):
            d = rng.randint(0, 3)
            n = rng.randint(4, 6)
            ins = tuple(sorted(rng.randint(0, 8) for _ in range(n)))
            quad = ins[:4]
            extras = ins[4:]
            if wdvv_residual(v, d, quad, extras) != 0:
                pytest.fail(f"associativity violated at d={d} {ins}")
            checked += 1
        assert checked == 120


class TestNormalizedValues:
    def test_degree_one_base(self, ws1012):
        table, v = ws1012["table"], ws1012["v"]
        for n in range(3, 9):
            want = table.value(1, n) - table.value(1, 3)
            assert normalized_virtual(v, 1, n, ()) == want

    def test_out_of_range_is_zero(self, ws1112):
        v = ws1112["v"]
        assert normalized_virtual(v, 2, 0, (1,)) == 0
        assert normalized_virtual(v, 2, 100, ()) == 0

    def test_degree_guard(self, ws1112):
        with pytest.raises(ValueError):
            normalized_virtual(ws1112["v"], 2, 5, (2,))


class TestRecursionOracle:
    def test_equals_engine_on_sweep(self, ws1112):
        table, v = ws1112["table"], ws1112["v"]
        oracle = RecursionOracle(12, table)
        from qhyper.mirror import enumerate_partitions

        for d in range(1, 6):
            for m in range(0, min(d - 1, 4) + 1):
                for parts in enumerate_partitions(m):
                    for n in range(0, 13):
                        assert normalized_virtual(v, d, n, parts) == oracle.value(d, n, parts), (
                            d, n, parts)

    def test_parts_order_irrelevant(self, ws1112):
        oracle = RecursionOracle(12, ws1112["table"])
        assert oracle.value(5, 8, (2, 1, 1)) == oracle.value(5, 8, (1, 1, 2))

    def test_requires_sibling_dimension(self):
        with pytest.raises(ValueError):
            RecursionOracle(12, VirtualConstantTable(10, 12))

    def test_published_partition_reductions(self, ws1112):
        for check in partition_identity_checks(12, ws1112["table"]):
            assert check.ok, f"{check.label}: {check.detail}"


class TestFlatFamily:
    def test_degree_one_matches_virtual(self, ws89, ws1112):
        # with a single divisor strip at degree 1 the two families coincide
        for ws, (N, k) in ((ws89, (8, 9)), (ws1112, (11, 12))):
            v, w = ws["v"], ws["w"]
            rng = random.Random(5)
            for _ in range(40):
                cnt = rng.randint(3, 6)
                ins = tuple(sorted(rng.randint(0, N - 2) for _ in range(cnt)))
                assert w.value(1, ins) == v.value(1, ins), ins

    def test_truncation_guard(self, ws89):
        with pytest.raises(TruncationError):
            ws89["w"].value(4, (1, 1, 2))

    def test_wdvv_self_consistency(self, ws1012):
        w = ws1012["w"]
        rng = random.Random(23)
        for _ in range(80):
            d = rng.randint(0, 3)
            n = rng.randint(4, 6)
            ins = tuple(sorted(rng.randint(0, 8) for _ in range(n)))
            assert wdvv_residual(w, d, ins[:4], ins[4:]) == 0, (d, ins)

    def test_modified_strip_example(self, ws1112):
        # w(e X)_d = d w(X)_d - sum_f T(f, 1+f) w(e^{1+f} X)_{d-f}
        table, w = ws1112["table"], ws1112["w"]
        rest = (2, 2, 3)
        d = 3
        want = d * w.value(d, rest)
        for f in range(1, d):
            want -= table.value(f, 1 + f) * w.value(d - f, rest + (1 + f,))
        assert w.value(d, (1,) + rest) == want

    def test_strategy_independence(self, ws1112):
        # the reduction picks the two largest partners by default; picking the
        # two smallest must give identical values (well-definedness)
        N, k = 11, 12
        table = ws1112["table"]

        class AltV(VirtualCorrelators):
            def _pick_pair(self, rest):
                return rest[0], rest[1]

        class AltW(FlatCorrelators):
            def _pick_pair(self, rest):
                return rest[0], rest[1]

        alt_v, ref_v = AltV(N, k, table), ws1112["v"]
        alt_w = AltW(N, k, 4, table=table, flat=ws1112["w"].flat)
        rng = random.Random(31)
        for _ in range(150):
            d = rng.randint(0, 4)
            cnt = rng.randint(3, 6)
            ins = tuple(sorted(rng.randint(0, N - 2) for _ in range(cnt)))
            assert ref_v.value(d, ins) == alt_v.value(d, ins), (d, ins)
            assert ws1112["w"].value(d, ins) == alt_w.value(d, ins), (d, ins)

    def test_trace_flag_prints_reduction_tree(self, ws1112, capsys):
        w = FlatCorrelators(11, 12, 2, table=ws1112["table"], flat=ws1112["w"].flat, trace=True)
        w.value(2, (2, 2, 2, 2))
        out = capsys.readouterr().out
        assert "reduce d=2 (2, 2, 2, 2)" in out


class TestNamedCombinations:
    def test_hi_vanishing(self):
        for k in range(10, 15):
            table = VirtualConstantTable(k - 1, k)
            for j in (1, 2, 3, 4):
                assert hi_combination(table, j, 6) == 0
                assert hi_combination(table, j, 7) == 0

    def test_hi_accepts_underscore(self, ws1112):
        assert named_combination("hi_1", 6, 12, table=ws1112["table"]) == 0

    def test_hi_sector_contributions(self, ws1112):
        # the three displayed sector sums over the in-range window
        table = ws1112["table"]
        oracle = RecursionOracle(12, table)
        V = oracle.value
        hi = lambda j, n: hi_combination(table, j, n)
        for n in range(6, 10):
            dhi = (V(3, n, (1, 1)) * V(1, n - 4, ()) + V(2, n, (1,)) * V(2, n - 3, (1,))
                   + V(1, n, ()) * V(3, n - 2, (1, 1))
                   - V(5, n, (1, 1, 2)) * V(1, 3, ()) - V(5, n, (1, 3)) * V(2, 4, (1,))
                   - V(5, n, (4,)) * V(3, 5, (1, 1)))
            assert dhi == 3 * hi(1, n) + 3 * hi(2, n) + hi(3, n)
            ghi = (V(3, n, (1, 1)) * V(1, n - 4, ()) + V(1, n, ()) * V(3, n - 2, (1, 1))
                   - V(5, n, (1, 1, 2)) * V(1, 3, ()) - V(5, n, (4,)) * V(3, 5, (1, 1)))
            assert ghi == 2 * hi(1, n) + 2 * hi(2, n) + hi(3, n) - hi(4, n)
            hhi = (V(3, n, (1, 1)) * V(1, n - 4, ()) + 2 * V(2, n, (1,)) * V(2, n - 3, (1,))
                   + V(1, n, ()) * V(3, n - 2, (1, 1))
                   - V(5, n, (1, 1, 2)) * V(1, 3, ()) - 2 * V(5, n, (1, 3)) * V(2, 4, (1,))
                   - V(5, n, (4,)) * V(3, 5, (1, 1)))
            assert hhi == 4 * hi(1, n) + 4 * hi(2, n) + hi(3, n) + hi(4, n)

    def test_unknown_identifier(self, ws1112):
        with pytest.raises(ValueError):
            named_combination("E", 7, 12, table=ws1112["table"])
