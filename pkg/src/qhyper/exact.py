"""Exact scalars, truncated q-series, and the (q, theta) operator algebra.

Every number in the engine is an arbitrary-precision rational
(``fractions.Fraction``); there is no floating point anywhere.  Two compound
values live here:

* ``QSeries`` -- a power series in q = e^x truncated at an explicit degree D.
* ``QOperator`` -- a noncommutative polynomial in q and theta = d/dx kept in
  normal form (all q factors to the left of all theta factors), subject to
  the commutation rule theta * q^d = q^d * (theta + d).

Values are immutable after construction and all operations are pure, so they
are safe to share freely.
"""

from __future__ import annotations

from fractions import Fraction
from math import comb


def parse_rational(text: str) -> Fraction:
    """Parse the canonical "num/den" form (denominator omitted when 1)."""
    try:
        value = Fraction(text.strip())
    except (ValueError, ZeroDivisionError) as exc:
        raise ValueError(f"not a valid rational: {text!r}") from exc
    return value


def format_rational(value: Fraction) -> str:
    """Canonical text form: "num/den", or just "num" when den == 1."""
    return str(Fraction(value))


def _as_fraction(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    raise TypeError(f"expected an exact scalar, got {type(x).__name__}")


class QSeries:
    """Power series in q with rational coefficients, truncated at degree D.

    Operations between two series truncate to the smaller of the two
    truncation degrees, so a result never pretends to more precision than
    its inputs carry.
    """

    __slots__ = ("trunc", "coeffs")

    def __init__(self, trunc: int, coeffs=()):
        if trunc < 0:
            raise ValueError("truncation degree must be nonnegative")
        padded = [Fraction(0)] * (trunc + 1)
        for d, c in enumerate(coeffs):
            if d > trunc:
                break
            padded[d] = _as_fraction(c)
        object.__setattr__(self, "trunc", trunc)
        object.__setattr__(self, "coeffs", tuple(padded))

    def __setattr__(self, name, value):
        raise AttributeError("QSeries is immutable")

    @classmethod
    def zero(cls, trunc: int) -> "QSeries":
        return cls(trunc)

    @classmethod
    def one(cls, trunc: int) -> "QSeries":
        return cls(trunc, (1,))

    @classmethod
    def monomial(cls, coeff, degree: int, trunc: int) -> "QSeries":
        """The single term coeff * q^degree (zero if degree > trunc)."""
        if degree < 0:
            raise ValueError("q-exponent must be nonnegative")
        coeffs = [0] * (trunc + 1)
        if degree <= trunc:
            coeffs[degree] = _as_fraction(coeff)
        return cls(trunc, coeffs)

    def coeff(self, d: int) -> Fraction:
        if d < 0 or d > self.trunc:
            return Fraction(0)
        return self.coeffs[d]

    def is_zero(self) -> bool:
        return all(c == 0 for c in self.coeffs)

    def lowest_degree(self):
        """Smallest d with a nonzero coefficient, or None for the zero series."""
        for d, c in enumerate(self.coeffs):
            if c != 0:
                return d
        return None

    def theta_deriv(self) -> "QSeries":
        """Apply q d/dq, i.e. the action of d/dx on functions of q = e^x."""
        return QSeries(self.trunc, [d * c for d, c in enumerate(self.coeffs)])

    def __add__(self, other):
        if isinstance(other, (int, Fraction)):
            other = QSeries(self.trunc, (other,))
        if not isinstance(other, QSeries):
            return NotImplemented
        t = min(self.trunc, other.trunc)
        return QSeries(t, [self.coeffs[d] + other.coeffs[d] for d in range(t + 1)])

    __radd__ = __add__

    def __neg__(self):
        return QSeries(self.trunc, [-c for c in self.coeffs])

    def __sub__(self, other):
        if isinstance(other, (int, Fraction)):
            other = QSeries(self.trunc, (other,))
        if not isinstance(other, QSeries):
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            c = _as_fraction(other)
            return QSeries(self.trunc, [c * x for x in self.coeffs])
        if not isinstance(other, QSeries):
            return NotImplemented
        t = min(self.trunc, other.trunc)
        out = [Fraction(0)] * (t + 1)
        for d1, c1 in enumerate(self.coeffs):
            if c1 == 0 or d1 > t:
                continue
            for d2 in range(t - d1 + 1):
                c2 = other.coeffs[d2]
                if c2 != 0:
                    out[d1 + d2] += c1 * c2
        return QSeries(t, out)

    __rmul__ = __mul__

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = QSeries(self.trunc, (other,))
        if not isinstance(other, QSeries):
            return NotImplemented
        t = min(self.trunc, other.trunc)
        return self.coeffs[: t + 1] == other.coeffs[: t + 1]

    def __hash__(self):
        return hash((self.trunc, self.coeffs))

    def __repr__(self):
        terms = [
            f"{format_rational(c)}*q^{d}" for d, c in enumerate(self.coeffs) if c != 0
        ]
        body = " + ".join(terms) if terms else "0"
        return f"QSeries[D={self.trunc}]({body})"


class QOperator:
    """Normal-form polynomial in q and theta, truncated at q-degree D.

    Terms are stored as a map (q-exponent d, theta-exponent j) -> coefficient
    with every q factor to the left of every theta factor.  Multiplication
    uses theta^j * q^d = q^d * (theta + d)^j; q-exponents above the
    truncation degree are dropped.  Theta-degree is never truncated.
    """

    __slots__ = ("trunc", "terms")

    def __init__(self, trunc: int, terms=None):
        if trunc < 0:
            raise ValueError("truncation degree must be nonnegative")
        clean = {}
        for (d, j), c in (terms or {}).items():
            if d < 0 or j < 0:
                raise ValueError("exponents must be nonnegative")
            if d > trunc:
                continue
            c = _as_fraction(c)
            if c != 0:
                clean[(d, j)] = c
        object.__setattr__(self, "trunc", trunc)
        object.__setattr__(self, "terms", clean)

    def __setattr__(self, name, value):
        raise AttributeError("QOperator is immutable")

    @classmethod
    def zero(cls, trunc: int) -> "QOperator":
        return cls(trunc)

    @classmethod
    def identity(cls, trunc: int) -> "QOperator":
        return cls(trunc, {(0, 0): 1})

    @classmethod
    def theta(cls, trunc: int) -> "QOperator":
        return cls(trunc, {(0, 1): 1})

    @classmethod
    def monomial(cls, coeff, q_deg: int, theta_deg: int, trunc: int) -> "QOperator":
        return cls(trunc, {(q_deg, theta_deg): coeff})

    def coeff(self, q_deg: int, theta_deg: int) -> Fraction:
        return self.terms.get((q_deg, theta_deg), Fraction(0))

    def is_zero(self) -> bool:
        return not self.terms

    def max_theta(self) -> int:
        return max((j for (_, j) in self.terms), default=0)

    def q_part(self, d: int) -> dict:
        """Map theta-exponent -> coefficient for the q^d slice."""
        return {j: c for (dd, j), c in self.terms.items() if dd == d}

    def __add__(self, other):
        if isinstance(other, (int, Fraction)):
            other = QOperator(self.trunc, {(0, 0): other})
        if not isinstance(other, QOperator):
            return NotImplemented
        t = min(self.trunc, other.trunc)
        out = {}
        for src in (self.terms, other.terms):
            for key, c in src.items():
                if key[0] <= t:
                    out[key] = out.get(key, Fraction(0)) + c
        return QOperator(t, out)

    __radd__ = __add__

    def __neg__(self):
        return QOperator(self.trunc, {k: -c for k, c in self.terms.items()})

    def __sub__(self, other):
        if isinstance(other, (int, Fraction)):
            other = QOperator(self.trunc, {(0, 0): other})
        if not isinstance(other, QOperator):
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            c = _as_fraction(other)
            return QOperator(self.trunc, {k: c * v for k, v in self.terms.items()})
        if not isinstance(other, QOperator):
            return NotImplemented
        t = min(self.trunc, other.trunc)
        out = {}
        for (d1, j1), c1 in self.terms.items():
            if d1 > t:
                continue
            for (d2, j2), c2 in other.terms.items():
                d = d1 + d2
                if d > t:
                    continue
                c = c1 * c2
                if d2 == 0 or j1 == 0:
                    key = (d, j1 + j2)
                    out[key] = out.get(key, Fraction(0)) + c
                    continue
                # theta^j1 q^d2 = q^d2 (theta + d2)^j1, expanded binomially
                for i in range(j1 + 1):
                    key = (d, i + j2)
                    out[key] = out.get(key, Fraction(0)) + c * comb(j1, i) * d2 ** (j1 - i)
        return QOperator(t, out)

    def __rmul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self * other
        return NotImplemented

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = QOperator(self.trunc, {(0, 0): other})
        if not isinstance(other, QOperator):
            return NotImplemented
        t = min(self.trunc, other.trunc)
        a = {k: c for k, c in self.terms.items() if k[0] <= t}
        b = {k: c for k, c in other.terms.items() if k[0] <= t}
        return a == b

    def __hash__(self):
        return hash((self.trunc, frozenset(self.terms.items())))

    def inverse(self) -> "QOperator":
        """Invert 1 + R where R has q-valuation >= 1, via the Neumann series.

        The result G satisfies self * G = G * self = 1 modulo q^(D+1).
        Rejects operators whose q-degree-0 part is not the scalar 1.
        """
        zero_part = self.q_part(0)
        if zero_part != {0: Fraction(1)}:
            raise ValueError("inverse requires an operator of the form 1 + O(q)")
        minus_r = QOperator(self.trunc, {k: -c for k, c in self.terms.items() if k[0] >= 1})
        result = QOperator.identity(self.trunc)
        power = QOperator.identity(self.trunc)
        for _ in range(self.trunc):
            power = power * minus_r
            if power.is_zero():
                break
            result = result + power
        return result

    def apply_to_series(self, series: QSeries) -> QSeries:
        """Evaluate the operator on a function of x given as a q-series."""
        t = min(self.trunc, series.trunc)
        out = [Fraction(0)] * (t + 1)
        for (d, j), c in self.terms.items():
            if d > t:
                continue
            for e in range(t - d + 1):
                ce = series.coeffs[e]
                if ce != 0:
                    out[d + e] += c * ce * e**j
        return QSeries(t, out)

    def __repr__(self):
        if not self.terms:
            return f"QOperator[D={self.trunc}](0)"
        bits = []
        for (d, j) in sorted(self.terms):
            c = self.terms[(d, j)]
            piece = format_rational(c)
            if d:
                piece += f"*q^{d}"
            if j:
                piece += f"*th^{j}"
            bits.append(piece)
        return f"QOperator[D={self.trunc}](" + " + ".join(bits) + ")"
