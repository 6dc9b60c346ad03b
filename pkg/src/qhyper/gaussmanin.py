"""Truncated Gauss-Manin system, flat-coordinate elimination, and the
commuting multiparameter frame.

The connection acts on sections psi_0 .. psi_{N-2}.  Writing q = e^x and
theta = d/dx, the row for psi_{N-2-m} reads

    theta psi_{N-2-m} = psi_{N-1-m}
                        + sum_d T(d, m) q^d psi_{N-1-m+(k-N)d},

keeping exactly the constants with 1+(k-N)d <= m <= N-2 (equivalently the
terms whose target column stays inside the basis).  Bottom-up elimination
of the higher sections produces the operator F with psi_1 = F(q, theta)
psi_0; declaring d/dt := F defines the flat coordinate t and the whole
system is rewritten against d/dt.
"""

from __future__ import annotations

from fractions import Fraction

from .constants import VirtualConstantTable
from .errors import (
    EliminationError,
    IntegrationError,
    SectorError,
    TruncationError,
    UnsupportedRegimeError,
)
from .exact import QOperator, QSeries


# ---------------------------------------------------------------------------
# matrices of truncated q-series
# ---------------------------------------------------------------------------

def series_matrix_zero(n: int, trunc: int):
    return [[QSeries.zero(trunc) for _ in range(n)] for _ in range(n)]


def series_matrix_identity(n: int, trunc: int):
    mat = series_matrix_zero(n, trunc)
    for i in range(n):
        mat[i][i] = QSeries.one(trunc)
    return mat


def series_matrix_mul(a, b):
    n = len(a)
    out = []
    for r in range(n):
        row = []
        for c in range(n):
            acc = None
            for m in range(n):
                x = a[r][m]
                y = b[m][c]
                if x.is_zero() or y.is_zero():
                    continue
                term = x * y
                acc = term if acc is None else acc + term
            row.append(acc if acc is not None else QSeries.zero(a[r][0].trunc))
        out.append(row)
    return out


def series_matrix_add(a, b):
    return [[x + y for x, y in zip(ra, rb)] for ra, rb in zip(a, b)]


def series_matrix_sub(a, b):
    return [[x - y for x, y in zip(ra, rb)] for ra, rb in zip(a, b)]


def series_matrix_eq(a, b) -> bool:
    return all(x == y for ra, rb in zip(a, b) for x, y in zip(ra, rb))


def series_matrix_is_zero(a) -> bool:
    return all(x.is_zero() for row in a for x in row)


# ---------------------------------------------------------------------------
# the truncated system
# ---------------------------------------------------------------------------

class GMSystem:
    """Connection matrix of the truncated system at truncation degree D.

    ``matrix[r][c]`` is the coefficient series of psi_c in theta psi_r.
    """

    def __init__(self, N: int, k: int, trunc: int, matrix):
        self.N = N
        self.k = k
        self.trunc = trunc
        self.matrix = matrix

    @property
    def size(self) -> int:
        return self.N - 1


def build_truncated_system(N: int, k: int, trunc: int, table: VirtualConstantTable) -> GMSystem:
    """Populate the connection from the constant table (computing on demand)."""
    if k <= N:
        raise UnsupportedRegimeError(f"k must exceed N (got N={N}, k={k})")
    if trunc < 1:
        raise ValueError("truncation degree must be at least 1")
    if (table.N, table.k) != (N, k):
        raise ValueError("table was built for a different (N, k)")
    n = N - 1
    step = k - N
    mat = series_matrix_zero(n, trunc)
    for m in range(0, N - 1):
        r = N - 2 - m
        if m >= 1:
            mat[r][r + 1] = QSeries.one(trunc)
        d = 1
        while d <= trunc and r + 1 + step * d <= N - 2:
            mat[r][r + 1 + step * d] = QSeries.monomial(table.value(d, m), d, trunc)
            d += 1
    return GMSystem(N, k, trunc, mat)


# ---------------------------------------------------------------------------
# elimination to the flat derivative
# ---------------------------------------------------------------------------

class FlatConnection:
    """The flat derivative F (with d/dt = F(q, theta)) and the system
    rewritten against d/dt, over the same basis."""

    def __init__(self, N: int, k: int, trunc: int, flat_derivative: QOperator, t_matrix):
        self.N = N
        self.k = k
        self.trunc = trunc
        self.flat_derivative = flat_derivative
        self.t_matrix = t_matrix

    def entry_series(self, d: int, m: int) -> QSeries:
        """The series multiplying psi_{N-1-m+(k-N)d} in d/dt psi_{N-2-m}."""
        r = self.N - 2 - m
        c = self.N - 1 - m + (self.k - self.N) * d
        if not (0 <= r < self.N - 1 and 0 <= c < self.N - 1):
            return QSeries.zero(self.trunc)
        return self.t_matrix[r][c]


def eliminate_to_flat(system: GMSystem) -> FlatConnection:
    """Eliminate psi_{N-2}, psi_{N-3}, ... bottom-up and rewrite in d/dt.

    Working upward from the last row, each step inverts an operator of the
    form 1 + O(q); a q-degree-0 part different from the scalar 1 signals a
    malformed system and raises.
    """
    N, k, D = system.N, system.k, system.trunc
    n = system.size
    step = k - N
    # express[j]: operator with psi_j = express[j] psi_b for the current base b
    express: dict[int, QOperator] = {}
    theta = QOperator.theta(D)
    flat = None
    for b in range(n - 1, 0, -1):
        # row b-1: theta psi_{b-1} = psi_b + sum over columns c > b
        acc = QOperator.identity(D)
        for c in range(b + 1, n):
            series = system.matrix[b - 1][c]
            if series.is_zero():
                continue
            if (c - b) % step != 0:
                raise EliminationError(
                    f"row {b - 1} carries an entry at column {c} outside the degree grading"
                )
            op = QOperator(D, {(d, 0): coeff for d, coeff in enumerate(series.coeffs)})
            acc = acc + op * express[c]
        try:
            inv = acc.inverse()
        except ValueError as exc:
            raise EliminationError(f"pivot at row {b - 1} is not 1 + O(q): {exc}") from exc
        lift = inv * theta
        express = {j: op * lift for j, op in express.items()}
        express[b] = lift
        flat = lift
    if flat is None:
        raise EliminationError("system too small to eliminate")

    # rewrite every row against d/dt = flat:  theta^j acting on the section
    # vector is represented by matrices M_j with M_0 = I and
    # M_{j+1} = (q d/dq) M_j + M_j C, C the x-connection.
    powers = [series_matrix_identity(n, D)]
    for _ in range(flat.max_theta()):
        prev = powers[-1]
        nxt = series_matrix_add(
            [[entry.theta_deriv() for entry in row] for row in prev],
            series_matrix_mul(prev, system.matrix),
        )
        powers.append(nxt)
    t_matrix = series_matrix_zero(n, D)
    for (d, j), coeff in flat.terms.items():
        scaled = QSeries.monomial(coeff, d, D)
        t_matrix = series_matrix_add(
            t_matrix, [[scaled * entry for entry in row] for row in powers[j]]
        )

    conn = FlatConnection(N, k, D, flat, t_matrix)
    _check_flat_invariants(conn)
    return conn


def _check_flat_invariants(conn: FlatConnection) -> None:
    n = conn.N - 1
    for c in range(n):
        expect = QSeries.one(conn.trunc) if c == 1 else QSeries.zero(conn.trunc)
        if conn.t_matrix[0][c] != expect:
            raise EliminationError("first row of the flat system must be exactly psi_1")
    if not all(entry.is_zero() for entry in conn.t_matrix[n - 1]):
        raise EliminationError("last row of the flat system must vanish")


def operator_to_json(op: QOperator) -> list[dict]:
    """Serialize a normal-form operator as [{"q": d, "theta": j, "coeff": "num/den"}]."""
    from .exact import format_rational

    return [
        {"q": d, "theta": j, "coeff": format_rational(op.terms[(d, j)])}
        for (d, j) in sorted(op.terms)
    ]


def flat_debug_dump(conn: FlatConnection) -> dict:
    """Debug view of the flat derivative and the transformed connection."""
    from .exact import format_rational

    return {
        "N": conn.N,
        "k": conn.k,
        "truncation": conn.trunc,
        "flat_derivative": operator_to_json(conn.flat_derivative),
        "t_connection": [
            [[format_rational(c) for c in entry.coeffs] for entry in row]
            for row in conn.t_matrix
        ],
    }


def extract_w3(conn: FlatConnection, d: int, m: int) -> Fraction:
    """Three-point value at degree d: k times the q^d coefficient of the
    series multiplying psi_{N-1-m+(k-N)d} in d/dt psi_{N-2-m}.

    Returns 0 when the target column falls outside the basis.
    """
    if d < 1:
        raise ValueError("degree must be at least 1")
    if d > conn.trunc:
        raise TruncationError(
            f"degree {d} exceeds truncation {conn.trunc}; rebuild with D >= {d}"
        )
    return conn.k * conn.entry_series(d, m).coeff(d)


# ---------------------------------------------------------------------------
# the commuting multiparameter frame
# ---------------------------------------------------------------------------

class SectorMatrices:
    """Matrices for the deformation directions j = 1..N-2.

    The j = 1 matrix is the connection itself; higher ones carry a unit
    diagonal at column offset j and entries only at offsets j + (k-N)d,
    each a pure q^d monomial, and all pairs commute modulo q^(D+1).
    """

    def __init__(self, N: int, k: int, trunc: int, mats):
        self.N = N
        self.k = k
        self.trunc = trunc
        self.mats = mats  # dict j -> matrix

    def matrix(self, j: int):
        return self.mats[j]


def build_sector_matrices(system: GMSystem) -> SectorMatrices:
    """Construct the commuting family by the truncated multiplication rule

        C_{j} = C_1 C_{j-1} - sum_{d >= 1} T(d, N-1-j) q^d C_{j+(k-N)d},

    peeling the product of the connection with the previous direction into
    basis directions, then verify the defining conditions (unit offset-j
    diagonal, monomial grading, vanishing pairwise commutators) exhaustively.
    A violation raises SectorError, falsifying the uniqueness/consistency
    claim at this truncation.
    """
    N, k, D = system.N, system.k, system.trunc
    n = system.size
    step = k - N

    # reconstruct lookup from the connection itself: entry (r, r+1+step*d)
    # holds T(d, N-2-r) q^d, so T(d, m) is read off row N-2-m.
    def lookup(d: int, m: int) -> Fraction:
        r = N - 2 - m
        c = r + 1 + step * d
        if not (0 <= r < n and 0 <= c < n):
            return Fraction(0)
        return system.matrix[r][c].coeff(d)

    memo: dict[tuple[int, int], list] = {}

    def truncate(mat, t: int):
        return [[QSeries(t, entry.coeffs[: t + 1]) for entry in row] for row in mat]

    def build(j: int, t: int):
        if j == 1:
            return truncate(system.matrix, t)
        key = (j, t)
        if key in memo:
            return memo[key]
        prod = series_matrix_mul(build(1, t), build(j - 1, t))
        d = 1
        while d <= t and j + step * d <= N - 2:
            coeff = lookup(d, N - 1 - j)
            if coeff != 0:
                corr = build(j + step * d, t - d)
                lifted = [
                    [
                        QSeries(
                            t,
                            [Fraction(0)] * d + list(entry.coeffs[: t - d + 1]),
                        )
                        * coeff
                        for entry in row
                    ]
                    for row in corr
                ]
                prod = series_matrix_sub(prod, lifted)
            d += 1
        memo[key] = prod
        return prod

    mats = {1: truncate(system.matrix, D)}
    for j in range(2, N - 1):
        mats[j] = build(j, D)
    sector = SectorMatrices(N, k, D, mats)
    _verify_sector_conditions(sector)
    return sector


def _verify_sector_conditions(sector: SectorMatrices) -> None:
    N, k, D = sector.N, sector.k, sector.trunc
    n = N - 1
    step = k - N
    for j, mat in sector.mats.items():
        for r in range(n):
            for c in range(n):
                entry = mat[r][c]
                if c - r == j:
                    if entry != QSeries.one(D):
                        raise SectorError(
                            f"direction {j}: entry ({r},{c}) must be the constant 1, got {entry!r}"
                        )
                    continue
                if entry.is_zero():
                    continue
                offset = c - r - j
                if offset < 0 or offset % step != 0:
                    raise SectorError(
                        f"direction {j}: entry ({r},{c}) violates the column grading"
                    )
                d = offset // step
                if any(coeff != 0 for e, coeff in enumerate(entry.coeffs) if e != d):
                    raise SectorError(
                        f"direction {j}: entry ({r},{c}) is not a pure q^{d} monomial"
                    )
    items = sorted(sector.mats)
    for a in items:
        for b in items:
            if a >= b:
                continue
            ab = series_matrix_mul(sector.mats[a], sector.mats[b])
            ba = series_matrix_mul(sector.mats[b], sector.mats[a])
            if not series_matrix_eq(ab, ba):
                raise SectorError(f"directions {a} and {b} fail to commute mod q^{D + 1}")


def coordinate_change_map(sector: SectorMatrices) -> dict[int, dict[int, Fraction]]:
    """Integrate the top row of the connection along the one-parameter locus.

    Returns, for each target coordinate j >= 2, the exponential expansion
    {d: c_d} meaning sum_d c_d e^(d t).  A q-degree-0 term in a top-row
    entry would not integrate to an exponential and raises.
    """
    N, step = sector.N, sector.k - sector.N
    top = sector.mats[1][0]
    out: dict[int, dict[int, Fraction]] = {}
    for j in range(2, N - 1):
        entry = top[j]
        if entry.coeff(0) != 0:
            raise IntegrationError(
                f"top-row entry at column {j} has a constant term; not a total derivative"
            )
        expansion = {
            d: coeff / d for d, coeff in enumerate(entry.coeffs) if d >= 1 and coeff != 0
        }
        out[j] = expansion
    return out


def t_frame_matrix(sector: SectorMatrices):
    """The first-direction connection in the flat frame: invert the Jacobian
    J[i][j] = (top row of direction i at column j) and contract it against
    the direction matrices."""
    N, D = sector.N, sector.trunc
    dim = N - 2  # directions 1..N-2
    jac = [[sector.mats[i + 1][0][j + 1] for j in range(dim)] for i in range(dim)]
    ident = series_matrix_identity(dim, D)
    defect = series_matrix_sub(ident, jac)
    inv = series_matrix_identity(dim, D)
    power = ident
    for _ in range(dim * (D + 1)):
        power = series_matrix_mul(power, defect)
        if series_matrix_is_zero(power):
            break
        inv = series_matrix_add(inv, power)
    n = N - 1
    out = series_matrix_zero(n, D)
    for j in range(dim):
        weight = inv[0][j]
        if weight.is_zero():
            continue
        out = series_matrix_add(
            out, [[weight * entry for entry in row] for row in sector.mats[j + 1]]
        )
    return out
