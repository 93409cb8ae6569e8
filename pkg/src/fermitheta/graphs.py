"""Commutation graphs and the structured operator families built on them.

A commutation graph has one vertex per operator and an edge between every
anticommuting pair.  Adjacency is stored as one Python-int bitset per
vertex, which keeps pairwise queries cheap for sets up to the 10^4-vertex
cap and converts to a dense 0/1 matrix on demand.
"""

from __future__ import annotations

import csv
import io
import itertools
import json
from dataclasses import dataclass
from math import comb

import numpy as np

from .algebra import (
    MajoranaMonomial,
    OperatorSet,
    PauliString,
    majorana_anticommutes,
    materialize,
    multiply_paulis,
    pauli_anticommutes,
)
from .kernel import CapacityError, InputError, RandomStream, random_state

__all__ = [
    "CommutationGraph",
    "commutation_graph",
    "commutation_degree",
    "commuting_majorana_family",
    "extended_hamming_family",
    "best_commuting_family",
    "ternary_tree_paulis",
    "stabilized_state",
    "joint_eigenstate",
    "DegeneracyError",
]

MAX_GRAPH_VERTICES = 10**4


class DegeneracyError(RuntimeError):
    """Projector construction annihilated every trial vector."""


@dataclass(frozen=True)
class CommutationGraph:
    """Anticommutation adjacency over an operator set."""

    operators: OperatorSet
    adjacency: tuple[int, ...]  # per-vertex bitsets

    def __len__(self):
        return len(self.adjacency)

    def has_edge(self, u: int, v: int) -> bool:
        return bool((self.adjacency[u] >> v) & 1)

    def degrees(self) -> list[int]:
        return [b.bit_count() for b in self.adjacency]

    @property
    def degree_stats(self) -> tuple[int, int, float]:
        degs = self.degrees()
        return (max(degs), min(degs), sum(degs) / len(degs)) if degs else (0, 0, 0.0)

    def edge_count(self) -> int:
        return sum(self.degrees()) // 2

    def adjacency_matrix(self) -> np.ndarray:
        m = len(self)
        A = np.zeros((m, m))
        for u, bits in enumerate(self.adjacency):
            v = bits
            while v:
                low = v & -v
                A[u, low.bit_length() - 1] = 1.0
                v ^= low
        return A

    def to_json(self) -> str:
        adj_lists = [
            [v for v in range(len(self)) if self.has_edge(u, v)]
            for u in range(len(self))
        ]
        return json.dumps(
            {
                "vertices": len(self),
                "kind": self.operators.kind,
                "labels": json.loads(self.operators.to_json())["members"],
                "adjacency": adj_lists,
            }
        )

    def to_edge_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf)
        w.writerow(["u", "v"])
        for u in range(len(self)):
            for v in range(u + 1, len(self)):
                if self.has_edge(u, v):
                    w.writerow([u, v])
        return buf.getvalue()


def commutation_graph(ops: OperatorSet) -> CommutationGraph:
    """Build the anticommutation graph of an operator set."""
    m = len(ops)
    if m > MAX_GRAPH_VERTICES:
        raise CapacityError(f"{m} vertices exceed the graph cap {MAX_GRAPH_VERTICES}")
    pred = pauli_anticommutes if ops.kind == "pauli" else majorana_anticommutes
    bits = [0] * m
    for u in range(m):
        for v in range(u + 1, m):
            if pred(ops.members[u], ops.members[v]):
                bits[u] |= 1 << v
                bits[v] |= 1 << u
    return CommutationGraph(operators=ops, adjacency=tuple(bits))


def commutation_degree(g: CommutationGraph) -> int:
    """Maximum vertex degree; equals the commutation degree for norm-1 terms."""
    if len(g) == 0:
        return 0
    return max(g.degrees())


def commuting_majorana_family(n: int, q: int) -> OperatorSet:
    """C(n/2, q/2) pairwise-commuting degree-q monomials.

    Takes all (q/2)-wise products of the disjoint quadratic monomials on
    consecutive generator pairs (1,2), (3,4), ..., (n-1,n).
    """
    if n % 2 != 0 or q % 2 != 0:
        raise InputError("n and q must both be even")
    if not 0 < q <= n:
        raise InputError("q must lie in 1..n")
    pairs = [(2 * i + 1, 2 * i + 2) for i in range(n // 2)]
    members = []
    for chosen in itertools.combinations(pairs, q // 2):
        support = tuple(sorted(j for pair in chosen for j in pair))
        members.append(MajoranaMonomial(n, support))
    family = OperatorSet("majorana", n, q, tuple(members), provenance="commuting-family")
    for a, b in itertools.combinations(family.members, 2):
        if majorana_anticommutes(a, b):
            raise RuntimeError("constructed family fails the commuting predicate")
    return family


def extended_hamming_family() -> OperatorSet:
    """The 14 pairwise-commuting degree-4 monomials on 8 modes.

    Supports are the weight-4 codewords of the extended [8,4,4] Hamming
    code (equivalently the planes of AG(3, 2)): any two distinct blocks
    meet in 0 or 2 points, so all pairs commute.  This beats the
    C(4, 2) = 6 pair-product family and matches theta of the degree-4
    commutation graph on 8 modes.
    """
    blocks = [
        s
        for s in itertools.combinations(range(8), 4)
        if s[0] ^ s[1] ^ s[2] ^ s[3] == 0
    ]
    members = tuple(MajoranaMonomial(8, tuple(i + 1 for i in s)) for s in blocks)
    family = OperatorSet("majorana", 8, 4, members, provenance="commuting-family")
    for a, b in itertools.combinations(family.members, 2):
        if majorana_anticommutes(a, b):
            raise RuntimeError("Hamming family fails the commuting predicate")
    return family


def best_commuting_family(n: int, q: int) -> OperatorSet:
    """Largest known explicit commuting subfamily of the degree-q monomials."""
    if (n, q) == (8, 4):
        return extended_hamming_family()
    return commuting_majorana_family(n, q)


def ternary_tree_paulis(k: int) -> OperatorSet:
    """3^k mutually anticommuting weight-k Paulis on (3^k - 1)/2 qubits.

    Qubits sit at the internal nodes of a complete ternary tree of depth k;
    the operator for a leaf multiplies one Pauli per internal node along its
    root path, the branch index choosing X, Y or Z.
    """
    if not 1 <= k <= 6:
        raise InputError("depth must lie in 1..6")
    n_qubits = (3**k - 1) // 2
    single = ((1, 0, 0), (1, 1, 1), (0, 1, 0))  # X, Y, Z
    members = []
    for path in itertools.product(range(3), repeat=k):
        node = 0  # breadth-first index of the current internal node
        x = z = p = 0
        for depth, branch in enumerate(path):
            xb, zb, pb = single[branch]
            x |= xb << node
            z |= zb << node
            p += pb
            node = 3 * node + 1 + branch
        members.append(PauliString(n_qubits, x, z, p % 4))
    fam = OperatorSet("pauli", n_qubits, k, tuple(members), provenance="ternary-tree")
    for a, b in itertools.combinations(fam.members, 2):
        if not pauli_anticommutes(a, b):
            raise RuntimeError("ternary tree construction fails pairwise anticommutation")
    return fam


def stabilized_state(
    family: OperatorSet,
    dim: int | None = None,
    seed: int = 2024,
    max_retries: int = 16,
) -> np.ndarray:
    """Unit vector in the simultaneous +1 eigenspace of a commuting family.

    Applies the projector (I + B)/2 of every Hermitized member to a seeded
    random trial vector and normalizes; retries with fresh trial vectors on
    numerical nullity.
    """
    mats = family.hermitized_matrices()
    d = mats[0].shape[0] if mats else (dim or 0)
    if dim is not None and dim != d:
        raise InputError(f"dim {dim} does not match the family's dimension {d}")
    pred = pauli_anticommutes if family.kind == "pauli" else majorana_anticommutes
    for a, b in itertools.combinations(family.members, 2):
        if pred(a, b):
            raise InputError("family is not pairwise commuting")
    eye = np.eye(d)
    for attempt in range(max_retries):
        psi = random_state(RandomStream(seed, attempt), d)
        for B in mats:
            psi = (eye + B) @ psi / 2
        norm = np.linalg.norm(psi)
        if norm > 1e-8:
            psi = psi / norm
            worst = max(abs(np.vdot(psi, B @ psi) - 1.0) for B in mats)
            if worst <= 1e-9:
                return psi
    raise DegeneracyError(
        f"projector annihilated all {max_retries} trial vectors"
    )


def joint_eigenstate(
    family: OperatorSet,
    seed: int = 2024,
    max_retries: int = 16,
) -> tuple[np.ndarray, tuple[int, ...]]:
    """Simultaneous eigenvector of a commuting family with adaptive signs.

    Unlike :func:`stabilized_state`, which demands the all-+1 sector, this
    projects onto (I + s_i B_i)/2 choosing each sign s_i so the projector
    survives.  Every member then has expectation s_i = +-1, so the mean
    squared expectation over the family is exactly 1.
    """
    mats = family.hermitized_matrices()
    pred = pauli_anticommutes if family.kind == "pauli" else majorana_anticommutes
    for a, b in itertools.combinations(family.members, 2):
        if pred(a, b):
            raise InputError("family is not pairwise commuting")
    d = mats[0].shape[0]
    eye = np.eye(d)
    for attempt in range(max_retries):
        psi = random_state(RandomStream(seed, attempt), d)
        signs = []
        ok = True
        for B in mats:
            for s in (1, -1):
                cand = (eye + s * B) @ psi / 2
                norm = np.linalg.norm(cand)
                if norm > 1e-8:
                    psi = cand / norm
                    signs.append(s)
                    break
            else:
                ok = False
                break
        if not ok:
            continue
        worst = max(
            abs(np.vdot(psi, B @ psi) - s) for B, s in zip(mats, signs)
        )
        if worst <= 1e-9:
            return psi, tuple(signs)
    raise DegeneracyError(f"no joint eigenvector found in {max_retries} attempts")
