"""Exact rational simplex for small linear programs.

Solves  max c.y  subject to  A y <= b,  y >= 0  over Fractions with Bland's
anti-cycling rule.  Intended for problems with at most tens of variables
and constraints; the symmetry-reduced theta programs have q/2 free
variables and q constraints.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

__all__ = ["LPSolution", "solve_lp_max", "UnboundedProgram", "InfeasibleProgram"]


class UnboundedProgram(RuntimeError):
    pass


class InfeasibleProgram(RuntimeError):
    pass


@dataclass(frozen=True)
class LPSolution:
    value: Fraction
    point: tuple[Fraction, ...]


def solve_lp_max(c: Sequence, A: Sequence[Sequence], b: Sequence) -> LPSolution:
    """Maximize c.y over {A y <= b, y >= 0}.

    Requires b >= 0 so the slack basis is feasible (all callers here satisfy
    this); Bland's rule guarantees termination.
    """
    ncons, nvar = len(A), len(c)
    if any(Fraction(v) < 0 for v in b):
        raise InfeasibleProgram("slack basis infeasible: negative right-hand side")
    tableau = [
        [Fraction(A[i][j]) for j in range(nvar)]
        + [Fraction(1) if k == i else Fraction(0) for k in range(ncons)]
        + [Fraction(b[i])]
        for i in range(ncons)
    ]
    cost = [-Fraction(v) for v in c] + [Fraction(0)] * (ncons + 1)
    basis = [nvar + i for i in range(ncons)]
    while True:
        enter = next((j for j in range(nvar + ncons) if cost[j] < 0), None)
        if enter is None:
            break
        leave, best = None, None
        for i in range(ncons):
            if tableau[i][enter] > 0:
                ratio = tableau[i][-1] / tableau[i][enter]
                if best is None or ratio < best or (ratio == best and basis[i] < basis[leave]):
                    best, leave = ratio, i
        if leave is None:
            raise UnboundedProgram("objective unbounded above")
        piv = tableau[leave][enter]
        tableau[leave] = [v / piv for v in tableau[leave]]
        for i in range(ncons):
            if i != leave and tableau[i][enter] != 0:
                f = tableau[i][enter]
                tableau[i] = [a - f * p for a, p in zip(tableau[i], tableau[leave])]
        f = cost[enter]
        if f != 0:
            cost = [a - f * p for a, p in zip(cost, tableau[leave])]
        basis[leave] = enter
    point = [Fraction(0)] * (nvar + ncons)
    for i, var in enumerate(basis):
        point[var] = tableau[i][-1]
    return LPSolution(value=cost[-1], point=tuple(point[:nvar]))
