import random
from fractions import Fraction

import pytest

from qhyper.exact import QOperator, QSeries, format_rational, parse_rational


def mono(c, d, j, trunc):
    return QOperator.monomial(c, d, j, trunc)


def random_operator(rng, trunc, max_theta=3, nterms=5):
    terms = {}
    for _ in range(nterms):
        d = rng.randint(0, trunc)
        j = rng.randint(0, max_theta)
        terms[(d, j)] = terms.get((d, j), 0) + Fraction(rng.randint(-9, 9), rng.randint(1, 7))
    return QOperator(trunc, terms)


def random_series(rng, trunc):
    return QSeries(trunc, [Fraction(rng.randint(-9, 9), rng.randint(1, 5)) for _ in range(trunc + 1)])


class TestRational:
    def test_round_trip(self):
        rng = random.Random(1)
        for _ in range(200):
            x = Fraction(rng.randint(-10**12, 10**12), rng.randint(1, 10**9))
            assert parse_rational(format_rational(x)) == x

    def test_canonical_form(self):
        assert format_rational(Fraction(3)) == "3"
        assert format_rational(Fraction(-4, 6)) == "-2/3"
        assert parse_rational("7/3") == Fraction(7, 3)
        assert parse_rational("-5") == Fraction(-5)

    def test_rejects_garbage(self):
        with pytest.raises(ValueError):
            parse_rational("1/0")
        with pytest.raises(ValueError):
            parse_rational("one half")


class TestSeries:
    def test_min_truncation_rule(self):
        a = QSeries(5, [1, 2, 3, 4, 5, 6])
        b = QSeries(3, [1, 1, 1, 1])
        assert (a * b).trunc == 3
        assert (a + b).trunc == 3

    def test_ring_laws(self):
        rng = random.Random(2)
        for _ in range(50):
            a, b, c = (random_series(rng, 4) for _ in range(3))
            assert a * b == b * a
            assert (a * b) * c == a * (b * c)
            assert a * (b + c) == a * b + a * c

    def test_theta_derivative(self):
        s = QSeries(3, [5, 1, 2, 3])
        assert s.theta_deriv() == QSeries(3, [0, 1, 4, 9])


class TestOperatorAlgebra:
    def test_commutation_relation(self):
        D = 4
        th = QOperator.theta(D)
        q = mono(1, 1, 0, D)
        assert th * q == QOperator(D, {(1, 0): 1, (1, 1): 1})

    def test_q_theta_square(self):
        D = 4
        qt = mono(1, 1, 1, D)
        assert qt * qt == QOperator(D, {(2, 1): 1, (2, 2): 1})

    def test_shifted_commutation(self):
        a = mono(1, 2, 1, 5)
        b = mono(1, 3, 1, 5)
        assert a * b == QOperator(5, {(5, 1): 3, (5, 2): 1})
        # at a lower truncation the product degree 5 is dropped entirely
        assert (mono(1, 2, 1, 4) * mono(1, 3, 1, 4)).is_zero()

    def test_ring_laws(self):
        rng = random.Random(3)
        for _ in range(40):
            a, b, c = (random_operator(rng, 4) for _ in range(3))
            assert (a * b) * c == a * (b * c)
            assert a * (b + c) == a * b + a * c
            assert (a + b) * c == a * c + b * c

    def test_truncation_commutes_with_products(self):
        rng = random.Random(4)
        for _ in range(40):
            a = random_operator(rng, 6)
            b = random_operator(rng, 6)
            full = a * b
            low = QOperator(3, a.terms) * QOperator(3, b.terms)
            assert QOperator(3, full.terms) == low

    def test_normal_form_is_canonical(self):
        op = QOperator(4, {(1, 2): Fraction(3, 2), (0, 0): 1})
        assert QOperator(4, dict(op.terms)) == op
        assert (2, 0) not in QOperator(4, {(2, 0): 0}).terms

    def test_apply_to_series_is_a_representation(self):
        rng = random.Random(5)
        for _ in range(30):
            a = random_operator(rng, 4)
            b = random_operator(rng, 4)
            s = random_series(rng, 4)
            assert (a * b).apply_to_series(s) == a.apply_to_series(b.apply_to_series(s))


class TestInverse:
    def test_neumann_expansion(self):
        for alpha in (Fraction(2, 3), Fraction(5), Fraction(-7, 4)):
            a = QOperator.identity(2) + mono(alpha, 1, 1, 2)
            want = (
                QOperator.identity(2)
                - mono(alpha, 1, 1, 2)
                + QOperator(2, {(2, 2): alpha**2, (2, 1): alpha**2})
            )
            assert a.inverse() == want

    def test_identity_inverse(self):
        one = QOperator.identity(3)
        assert one.inverse() == one

    def test_two_sided_inverse(self):
        rng = random.Random(6)
        for _ in range(30):
            r = random_operator(rng, 4)
            r = QOperator(4, {(d, j): c for (d, j), c in r.terms.items() if d >= 1})
            a = QOperator.identity(4) + r
            inv = a.inverse()
            assert a * inv == QOperator.identity(4)
            assert inv * a == QOperator.identity(4)

    def test_rejects_bad_leading_part(self):
        with pytest.raises(ValueError):
            (2 * QOperator.identity(3)).inverse()
        with pytest.raises(ValueError):
            (QOperator.identity(3) + QOperator.theta(3)).inverse()
