"""Virtual structure constants of M_N^k and their disk cache.

The degree-1 row is the coefficient list of k * prod_{j=1}^{k-1} (j*w + (k-j)).
Every degree d >= 2 row is reconstructed from strictly lower rows by an
alternating sum over chains 0 = i_0 < i_1 < ... < i_l = d (l >= 2) and
weakly increasing exponent chains 0 <= j_1 <= ... <= j_l, each chain
contributing

    prod_{n=1}^{l} ((i_{n-1} + (d - i_{n-1}) z) / d)^(j_n - j_{n-1})
                   * T(i_n - i_{n-1}, j_n - (k-N) i_{n-1})

as a polynomial in z (with j_0 = 0), whose z^m coefficient is the degree-d
constant of index m.  The engine evaluates each chain family by a linear
recurrence over the exponent ladder instead of literal nested loops; the
literal transcription lives in the test suite as an independent oracle.
"""

from __future__ import annotations

import json
import os
from fractions import Fraction

from .errors import CacheFormatError, CacheVersionError, UnsupportedRegimeError
from .exact import format_rational, parse_rational

SCHEMA_VERSION = 1


def degree_one_row(k: int) -> list[Fraction]:
    """Coefficients in w of k * prod_{j=1}^{k-1} (j*w + (k-j)), m = 0..k-1."""
    if k < 1:
        raise ValueError("k must be a positive integer")
    poly = [Fraction(k)]
    for j in range(1, k):
        nxt = [Fraction(0)] * (len(poly) + 1)
        for m, c in enumerate(poly):
            nxt[m] += c * (k - j)
            nxt[m + 1] += c * j
        poly = nxt
    return poly


def _compositions(d: int):
    """All tuples of positive parts summing to d with at least two parts."""
    out = []

    def rec(remaining, acc):
        if remaining == 0:
            if len(acc) >= 2:
                out.append(tuple(acc))
            return
        for part in range(1, remaining + 1):
            rec(remaining - part, acc + [part])

    rec(d, [])
    return out


def _poly_mul(a: list[Fraction], b: list[Fraction], cap: int) -> list[Fraction]:
    out = [Fraction(0)] * (cap + 1)
    for i, ca in enumerate(a):
        if ca == 0 or i > cap:
            continue
        for j, cb in enumerate(b):
            if i + j > cap:
                break
            if cb != 0:
                out[i + j] += ca * cb
    return out


class VirtualConstantTable:
    """Memoized rows of virtual structure constants for a fixed (N, k), k > N.

    Lookups with m outside [0, N-1+(k-N)d] return exactly 0.  Rows are
    computed on demand, whole-row at a time, and never mutated afterwards.
    """

    def __init__(self, N: int, k: int):
        if N < 4:
            raise ValueError("N must be at least 4")
        if k <= N:
            raise UnsupportedRegimeError(
                f"k must exceed N (got N={N}, k={k}); the regimes k <= N are out of scope"
            )
        self.N = N
        self.k = k
        self._rows: dict[int, list[Fraction]] = {}

    def max_index(self, d: int) -> int:
        return self.N - 1 + (self.k - self.N) * d

    def row(self, d: int) -> list[Fraction]:
        """The full coefficient list for degree d, indices m = 0..max_index(d)."""
        if d < 1:
            raise ValueError("degree must be at least 1")
        if d not in self._rows:
            self._rows[d] = self._compute_row(d)
        return self._rows[d]

    def value(self, d: int, m: int) -> Fraction:
        if d < 1:
            raise ValueError("degree must be at least 1")
        if m < 0 or m > self.max_index(d):
            return Fraction(0)
        return self.row(d)[m]

    def known_degrees(self) -> list[int]:
        return sorted(self._rows)

    def seed_row(self, d: int, values: list[Fraction]) -> None:
        """Install a precomputed row; recomputation must match (cache load path)."""
        if len(values) != self.max_index(d) + 1:
            raise CacheFormatError(
                f"row for d={d} must carry {self.max_index(d) + 1} entries, got {len(values)}"
            )
        self._rows[d] = list(values)

    def _compute_row(self, d: int) -> list[Fraction]:
        if d == 1:
            row = degree_one_row(self.k)
            assert len(row) == self.max_index(1) + 1
            return row
        cap = self.max_index(d)
        total = [Fraction(0)] * (cap + 1)
        for parts in _compositions(d):
            l = len(parts)
            prefix = [0] * (l + 1)
            for n, p in enumerate(parts, start=1):
                prefix[n] = prefix[n - 1] + p
            # Linear factor ((i_{n-1} + (d - i_{n-1}) z) / d) for each chain slot,
            # and the lower-row lookup for slot n at ladder height j.
            bases = [
                [Fraction(prefix[n - 1], d), Fraction(d - prefix[n - 1], d)]
                for n in range(1, l + 1)
            ]
            lookups = [
                (parts[n - 1], (self.k - self.N) * prefix[n - 1])
                for n in range(1, l + 1)
            ]
            # tail[j] = sum over weakly increasing ladders starting at height j
            # of the product of base powers and lookups for slots n..l.
            tail = [[Fraction(1)] for _ in range(cap + 2)]
            for n in range(l, 0, -1):
                deg, shift = lookups[n - 1]
                base = bases[n - 1]
                new_tail: list[list[Fraction]] = [[] for _ in range(cap + 2)]
                new_tail[cap + 1] = [Fraction(0)]
                for j in range(cap, -1, -1):
                    acc = _poly_mul(base, new_tail[j + 1], cap)
                    c = self.value(deg, j - shift)
                    if c != 0:
                        for i, t in enumerate(tail[j]):
                            if t != 0:
                                acc[i] += c * t
                    new_tail[j] = acc
                tail = new_tail
            sign = 1 if l % 2 == 0 else -1
            for i, c in enumerate(tail[0]):
                if c != 0:
                    total[i] += sign * c
        return total


def default_cache_dir() -> str:
    return os.environ.get("GW_CACHE_DIR", os.path.join(".", "cache"))


def cache_path(N: int, k: int, directory: str | None = None) -> str:
    directory = directory if directory is not None else default_cache_dir()
    return os.path.join(directory, f"vsc_N{N}_k{k}.json")


def store_table(table: VirtualConstantTable, path: str) -> None:
    """Write all cached entries as the documented JSON schema (sorted keys)."""
    entries = []
    for d in table.known_degrees():
        for m, value in enumerate(table.row(d)):
            entries.append({"d": d, "m": m, "value": format_rational(value)})
    payload = {
        "schema": SCHEMA_VERSION,
        "N": table.N,
        "k": table.k,
        "entries": entries,
    }
    os.makedirs(os.path.dirname(path) or ".", exist_ok=True)
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(payload, fh, indent=1)
        fh.write("\n")


def load_table(path: str) -> VirtualConstantTable:
    """Load a cache file, validating the schema entry by entry."""
    with open(path, "r", encoding="utf-8") as fh:
        try:
            payload = json.load(fh)
        except json.JSONDecodeError as exc:
            raise CacheFormatError(f"{path}: not valid JSON ({exc})") from exc
    if not isinstance(payload, dict):
        raise CacheFormatError(f"{path}: top-level value must be an object")
    schema = payload.get("schema")
    if schema != SCHEMA_VERSION:
        raise CacheVersionError(
            f"{path}: schema version {schema!r} is not supported (expected {SCHEMA_VERSION})"
        )
    for field in ("N", "k"):
        if not isinstance(payload.get(field), int):
            raise CacheFormatError(f"{path}: field {field!r} must be an integer")
    table = VirtualConstantTable(payload["N"], payload["k"])
    entries = payload.get("entries")
    if not isinstance(entries, list):
        raise CacheFormatError(f"{path}: field 'entries' must be a list")
    rows: dict[int, dict[int, Fraction]] = {}
    for idx, entry in enumerate(entries):
        if not isinstance(entry, dict):
            raise CacheFormatError(f"{path}: entries[{idx}] must be an object")
        d, m, raw = entry.get("d"), entry.get("m"), entry.get("value")
        if not isinstance(d, int) or d < 1:
            raise CacheFormatError(f"{path}: entries[{idx}].d must be a positive integer")
        if not isinstance(m, int) or m < 0:
            raise CacheFormatError(f"{path}: entries[{idx}].m must be a nonnegative integer")
        if not isinstance(raw, str):
            raise CacheFormatError(f"{path}: entries[{idx}].value must be a string")
        try:
            value = parse_rational(raw)
        except ValueError as exc:
            raise CacheFormatError(f"{path}: entries[{idx}].value: {exc}") from exc
        if m > table.max_index(d):
            raise CacheFormatError(
                f"{path}: entries[{idx}] has m={m} beyond the degree-{d} support"
            )
        rows.setdefault(d, {})[m] = value
    for d, by_m in sorted(rows.items()):
        width = table.max_index(d) + 1
        if sorted(by_m) != list(range(width)):
            raise CacheFormatError(
                f"{path}: degree-{d} row is incomplete; cache stores whole rows"
            )
        table.seed_row(d, [by_m[m] for m in range(width)])
    return table
