"""Johnson association scheme combinatorics, exact throughout.

The distance-d relation on r-subsets of [m] (edge iff r - |S ∩ T| = d) has
adjacency eigenvalues given by an explicit alternating binomial sum indexed
by an eigenspace label x in 0..r.  Everything here is integer arithmetic;
floating point enters only when brute-force diagonalization cross-checks
the predicted spectra.
"""

from __future__ import annotations

import csv
import io
import itertools
import json
from dataclasses import dataclass, field
from fractions import Fraction
from math import comb

import numpy as np

from .kernel import CapacityError, DenseHermitian, InputError, eigh

__all__ = [
    "binom0",
    "dual_hahn",
    "HahnTable",
    "johnson_adjacency",
    "verify_scheme_spectrum",
    "SchemeReport",
]

MAX_SCHEME_VERTICES = 2000


def binom0(a: int, b: int) -> int:
    """Binomial coefficient that vanishes outside 0 <= b <= a (C(a, 0) = 1)."""
    if b < 0:
        return 0
    if b == 0:
        return 1
    if a < b:
        return 0
    return comb(a, b)


def dual_hahn(m: int, r: int, d: int, x: int) -> int:
    """Eigenvalue of the distance-d adjacency on eigenspace x, exactly.

    Computes sum_{j=0..d} (-1)^(d-j) C(r-j, d-j) C(r-x, j) C(m-r+j-x, j).
    """
    if not (0 <= d <= r <= m):
        raise InputError(f"require 0 <= d <= r <= m, got d={d} r={r} m={m}")
    if not (0 <= x <= r):
        raise InputError(f"eigenspace label x={x} outside 0..{r}")
    total = 0
    for j in range(d + 1):
        total += (-1) ** (d - j) * binom0(r - j, d - j) * binom0(r - x, j) * binom0(m - r + j - x, j)
    return total


@dataclass(frozen=True)
class HahnTable:
    """All eigenvalues of the scheme on [m] choose r, indexed [d][x]."""

    m: int
    r: int
    values: tuple[tuple[int, ...], ...] = field(init=False)

    def __post_init__(self):
        if not 0 <= self.r <= self.m:
            raise InputError("require 0 <= r <= m")
        vals = tuple(
            tuple(dual_hahn(self.m, self.r, d, x) for x in range(self.r + 1))
            for d in range(self.r + 1)
        )
        object.__setattr__(self, "values", vals)

    def __getitem__(self, dx: tuple[int, int]) -> int:
        d, x = dx
        return self.values[d][x]

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf)
        w.writerow(["d\\x"] + list(range(self.r + 1)))
        for d in range(self.r + 1):
            w.writerow([d] + list(self.values[d]))
        return buf.getvalue()


def johnson_adjacency(m: int, r: int, d: int) -> DenseHermitian:
    """0/1 adjacency of the distance-d relation on r-subsets in lex order."""
    if not (0 <= d <= r <= m):
        raise InputError(f"require 0 <= d <= r <= m, got d={d} r={r} m={m}")
    nverts = comb(m, r)
    if nverts > MAX_SCHEME_VERTICES:
        raise CapacityError(f"{nverts} vertices exceed the scheme cap {MAX_SCHEME_VERTICES}")
    subsets = [frozenset(s) for s in itertools.combinations(range(m), r)]
    A = np.zeros((nverts, nverts))
    for i in range(nverts):
        for j in range(nverts):
            if r - len(subsets[i] & subsets[j]) == d:
                A[i, j] = 1.0
    return DenseHermitian(A)


@dataclass
class SchemeReport:
    """Outcome of the brute-force spectrum check for one (m, r)."""

    m: int
    r: int
    ok: bool
    per_distance: list[dict]
    multiplicities: dict[int, int] | None
    notes: list[str]

    def to_json(self) -> str:
        return json.dumps(
            {
                "m": self.m,
                "r": self.r,
                "ok": self.ok,
                "per_distance": self.per_distance,
                "multiplicities": self.multiplicities,
                "notes": self.notes,
            }
        )


def _solve_multiplicities(rows: list[list[int]], rhs: list[int]) -> tuple[dict[int, int] | None, bool]:
    """Solve the integer counting system exactly; (solution or None, consistent)."""
    nvar = len(rows[0]) if rows else 0
    M = [[Fraction(v) for v in row] + [Fraction(b)] for row, b in zip(rows, rhs)]
    pivots: list[tuple[int, int]] = []
    rank = 0
    for col in range(nvar):
        piv = next((i for i in range(rank, len(M)) if M[i][col] != 0), None)
        if piv is None:
            continue
        M[rank], M[piv] = M[piv], M[rank]
        M[rank] = [v / M[rank][col] for v in M[rank]]
        for i in range(len(M)):
            if i != rank and M[i][col] != 0:
                f = M[i][col]
                M[i] = [a - f * b for a, b in zip(M[i], M[rank])]
        pivots.append((rank, col))
        rank += 1
    for i in range(rank, len(M)):
        if M[i][nvar] != 0:
            return None, False
    if rank < nvar:
        return None, True  # consistent but underdetermined
    sol = {}
    for row, col in pivots:
        v = M[row][nvar]
        if v.denominator != 1 or v < 0:
            return None, False
        sol[col] = int(v)
    return sol, True


def verify_scheme_spectrum(m: int, r: int, tol: float = 1e-8) -> SchemeReport:
    """Check that every distance relation has the predicted integer spectrum.

    For each d <= r the brute-force eigenvalues must round to values in the
    d-th row of the Hahn table, and one set of eigenspace multiplicities
    must account for the counts across all d simultaneously.  Mismatches
    produce a failing report, not an exception.
    """
    table = HahnTable(m, r)
    notes: list[str] = []
    per_distance: list[dict] = []
    rows: list[list[int]] = [[1] * (r + 1)]
    rhs: list[int] = [comb(m, r)]
    ok = True
    for d in range(r + 1):
        A = johnson_adjacency(m, r, d)
        w = eigh(A).eigenvalues
        scale = max(1.0, float(max(abs(v) for v in table.values[d])))
        rounded = np.rint(w).astype(int)
        if np.abs(w - rounded).max() > tol * scale:
            ok = False
            notes.append(f"d={d}: eigenvalues deviate from integers beyond tolerance")
        counts: dict[int, int] = {}
        for v in rounded.tolist():
            counts[v] = counts.get(v, 0) + 1
        predicted = set(table.values[d])
        stray = sorted(set(counts) - predicted)
        if stray:
            ok = False
            notes.append(f"d={d}: unpredicted eigenvalues {stray}")
        per_distance.append({"d": d, "spectrum": {str(k): v for k, v in sorted(counts.items())}})
        for v in sorted(predicted):
            rows.append([1 if table.values[d][x] == v else 0 for x in range(r + 1)])
            rhs.append(counts.get(v, 0))
    sol, consistent = _solve_multiplicities(rows, rhs)
    if not consistent:
        ok = False
        notes.append("no eigenspace multiplicity assignment fits all distance classes")
    elif sol is None:
        notes.append("multiplicities underdetermined by value coincidences; left unresolved")
    return SchemeReport(
        m=m,
        r=r,
        ok=ok,
        per_distance=per_distance,
        multiplicities=sol,
        notes=notes,
    )
