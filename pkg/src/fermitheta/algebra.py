"""Pauli-string and Majorana-monomial algebra.

Encoding conventions
--------------------

An n-qubit Pauli operator is stored as two n-bit masks plus a quarter phase:

    matrix(P) = i**phase_power * kron_j( X**x_j * Z**z_j )

with bit j of ``x_mask``/``z_mask`` addressing qubit j; bit j of a basis
index is qubit j's state, so qubit 0 varies fastest.  A site with both
bits set contributes
``X @ Z = -i Y``, so the standard Hermitian Pauli with letter Y at s sites
carries ``phase_power = s (mod 4)``.

Anticommutation is the symplectic form: P and Q anticommute iff
``popcount(x_P & z_Q) + popcount(x_Q & z_P)`` is odd.

A Majorana monomial on n modes (n even) is a strictly increasing tuple of
1-based generator indices.  Generators map to qubits by the Jordan-Wigner
convention: generator 2t-1 acts as Z^(t-1) X I..., generator 2t as
Z^(t-1) Y I... on n/2 qubits.  Hermitization multiplies a degree-q monomial
(q even) by ``i**(q/2)`` so that the result squares to the identity.
Majorana indices are 1-based externally and converted at this boundary.
"""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass, field
from math import comb
from typing import Iterable, Sequence, Union

import numpy as np

from .kernel import CapacityError, DenseHermitian, InputError

__all__ = [
    "PauliString",
    "MajoranaMonomial",
    "OperatorSet",
    "pauli_anticommutes",
    "majorana_anticommutes",
    "multiply_paulis",
    "jordan_wigner_majorana",
    "majorana_to_pauli",
    "materialize",
    "enumerate_set",
]

DEFAULT_DENSE_DIM = 1 << 12
MAX_DENSE_DIM = 1 << 14
MAX_ENUMERATION = 10**6

_PHASES = (1, 1j, -1, -1j)


def _popcount(v: int) -> int:
    return v.bit_count()


@dataclass(frozen=True)
class PauliString:
    """n-qubit Pauli operator as (x_mask, z_mask, i**phase_power)."""

    n_qubits: int
    x_mask: int
    z_mask: int
    phase_power: int = 0

    def __post_init__(self):
        if self.n_qubits < 1:
            raise InputError("n_qubits must be positive")
        full = (1 << self.n_qubits) - 1
        if self.x_mask & ~full or self.z_mask & ~full:
            raise InputError("mask bits outside qubit range")
        object.__setattr__(self, "phase_power", self.phase_power % 4)

    @property
    def phase(self) -> complex:
        return _PHASES[self.phase_power]

    @property
    def weight(self) -> int:
        return _popcount(self.x_mask | self.z_mask)

    @property
    def is_hermitian(self) -> bool:
        # (i**p * kron XZ)^dag = i**(-p) (-1)^{|x&z|} kron XZ
        return (self.phase_power + _popcount(self.x_mask & self.z_mask)) % 2 == 0

    def label(self) -> str:
        letters = []
        for j in range(self.n_qubits):
            xb = (self.x_mask >> j) & 1
            zb = (self.z_mask >> j) & 1
            letters.append("IXZY"[xb + 2 * zb] if xb + 2 * zb != 3 else "Y")
        return "".join(letters)

    def label_phase(self) -> complex:
        """Scalar g such that matrix = g * kron of the label's I/X/Y/Z."""
        s = _popcount(self.x_mask & self.z_mask)
        return _PHASES[(self.phase_power - s) % 4]

    @classmethod
    def from_label(cls, label: str, phase: complex = 1) -> "PauliString":
        x = z = 0
        for j, ch in enumerate(label):
            if ch == "X":
                x |= 1 << j
            elif ch == "Z":
                z |= 1 << j
            elif ch == "Y":
                x |= 1 << j
                z |= 1 << j
            elif ch != "I":
                raise InputError(f"invalid Pauli letter {ch!r}")
        try:
            p = _PHASES.index(complex(phase))
        except ValueError:
            raise InputError("phase must be a power of i") from None
        s = _popcount(x & z)
        return cls(len(label), x, z, (p + s) % 4)

    def __str__(self):
        g = self.label_phase()
        pre = {1: "", 1j: "i*", -1: "-", -1j: "-i*"}[complex(g)]
        return pre + self.label()


@dataclass(frozen=True)
class MajoranaMonomial:
    """Product of distinct Majorana generators, indices strictly increasing."""

    n_modes: int
    support: tuple[int, ...]

    def __post_init__(self):
        if self.n_modes < 2 or self.n_modes % 2 != 0:
            raise InputError("n_modes must be a positive even integer")
        s = tuple(int(j) for j in self.support)
        if any(b <= a for a, b in zip(s, s[1:])):
            raise InputError("support indices must be strictly increasing")
        if s and (s[0] < 1 or s[-1] > self.n_modes):
            raise InputError("support index out of range")
        object.__setattr__(self, "support", s)

    @property
    def degree(self) -> int:
        return len(self.support)


Operator = Union[PauliString, MajoranaMonomial]


def pauli_anticommutes(P: PauliString, Q: PauliString) -> bool:
    """True iff P and Q anticommute (symplectic form is odd)."""
    if P.n_qubits != Q.n_qubits:
        raise InputError("Pauli strings act on different qubit counts")
    return (_popcount(P.x_mask & Q.z_mask) + _popcount(Q.x_mask & P.z_mask)) % 2 == 1


def majorana_anticommutes(S: MajoranaMonomial, T: MajoranaMonomial) -> bool:
    """True iff the monomials anticommute: q_S*q_T - |S & T| is odd."""
    if S.n_modes != T.n_modes:
        raise InputError("monomials act on different mode counts")
    shared = len(set(S.support) & set(T.support))
    return (S.degree * T.degree - shared) % 2 == 1


def multiply_paulis(P: PauliString, Q: PauliString) -> PauliString:
    """Product P @ Q with exact quarter-phase accumulation."""
    if P.n_qubits != Q.n_qubits:
        raise InputError("Pauli strings act on different qubit counts")
    # (XZ)(XZ) reorder: Z^{z1} X^{x2} = (-1)^{z1&x2} X^{x2} Z^{z1}
    sign = 2 * _popcount(P.z_mask & Q.x_mask)
    return PauliString(
        P.n_qubits,
        P.x_mask ^ Q.x_mask,
        P.z_mask ^ Q.z_mask,
        (P.phase_power + Q.phase_power + sign) % 4,
    )


def jordan_wigner_majorana(j: int, n: int) -> PauliString:
    """Image of generator j (1-based) on n/2 qubits under Jordan-Wigner."""
    if n < 2 or n % 2 != 0:
        raise InputError("mode count must be a positive even integer")
    if not 1 <= j <= n:
        raise InputError(f"mode index {j} out of range 1..{n}")
    t = (j + 1) // 2  # 1-based target qubit
    z = (1 << (t - 1)) - 1  # Z on qubits before the target
    x = 1 << (t - 1)
    if j % 2 == 1:
        return PauliString(n // 2, x, z)
    # even generator: Y at the target site, encoded as XZ with phase i
    return PauliString(n // 2, x, z | x, 1)


def majorana_to_pauli(op: MajoranaMonomial, hermitize: bool = True) -> PauliString:
    """Jordan-Wigner image of a monomial, optionally Hermitized by i**(q/2)."""
    q = op.degree
    if hermitize and q % 2 != 0:
        raise InputError("hermitization requires even degree")
    nq = op.n_modes // 2
    out = PauliString(nq, 0, 0, 0)
    for j in op.support:
        out = multiply_paulis(out, jordan_wigner_majorana(j, op.n_modes))
    if hermitize:
        out = PauliString(out.n_qubits, out.x_mask, out.z_mask, out.phase_power + q // 2)
    return out


def _popcount_array(v: np.ndarray) -> np.ndarray:
    v = v.astype(np.uint64)
    m1 = np.uint64(0x5555555555555555)
    m2 = np.uint64(0x3333333333333333)
    m4 = np.uint64(0x0F0F0F0F0F0F0F0F)
    v = v - ((v >> np.uint64(1)) & m1)
    v = (v & m2) + ((v >> np.uint64(2)) & m2)
    v = (v + (v >> np.uint64(4))) & m4
    return ((v * np.uint64(0x0101010101010101)) >> np.uint64(56)).astype(np.int64)


def pauli_matrix(P: PauliString) -> np.ndarray:
    """Dense matrix of a Pauli string (monomial structure, O(dim) nonzeros)."""
    dim = 1 << P.n_qubits
    cols = np.arange(dim)
    rows = cols ^ P.x_mask
    signs = 1 - 2 * (_popcount_array(cols & P.z_mask) % 2)
    M = np.zeros((dim, dim), dtype=complex)
    M[rows, cols] = P.phase * signs
    return M


def _check_dim(dim: int, max_dim: int):
    if dim > MAX_DENSE_DIM:
        raise CapacityError(f"dense dimension {dim} exceeds the hard cap {MAX_DENSE_DIM}")
    if dim > max_dim:
        raise CapacityError(f"dense dimension {dim} exceeds the requested cap {max_dim}")


def materialize(op: Operator, hermitize: bool = True, max_dim: int = DEFAULT_DENSE_DIM) -> DenseHermitian:
    """Dense Hermitian matrix of an operator.

    Pauli strings materialize as stored; Majorana monomials go through
    Jordan-Wigner with the even-degree Hermitizing phase when requested.
    """
    if isinstance(op, MajoranaMonomial):
        P = majorana_to_pauli(op, hermitize=hermitize)
    elif isinstance(op, PauliString):
        P = op
    else:
        raise InputError(f"cannot materialize {type(op).__name__}")
    _check_dim(1 << P.n_qubits, max_dim)
    M = pauli_matrix(P)
    if not P.is_hermitian:
        raise InputError("operator materializes to a non-Hermitian matrix")
    return DenseHermitian(M)


@dataclass(frozen=True)
class OperatorSet:
    """Homogeneous collection of Pauli strings or Majorana monomials."""

    kind: str
    n: int
    locality: int
    members: tuple[Operator, ...]
    provenance: str = "custom"

    def __post_init__(self):
        if self.kind not in ("pauli", "majorana"):
            raise InputError(f"unknown operator kind {self.kind!r}")
        object.__setattr__(self, "members", tuple(self.members))
        for m in self.members:
            if self.kind == "pauli":
                if not isinstance(m, PauliString) or m.n_qubits != self.n:
                    raise InputError("inhomogeneous Pauli set")
            else:
                if not isinstance(m, MajoranaMonomial) or m.n_modes != self.n:
                    raise InputError("inhomogeneous Majorana set")
        if len(set(self.members)) != len(self.members):
            raise InputError("duplicate members in operator set")

    def __len__(self):
        return len(self.members)

    @property
    def dim(self) -> int:
        return 1 << (self.n if self.kind == "pauli" else self.n // 2)

    def hermitized_matrices(self, max_dim: int = DEFAULT_DENSE_DIM) -> list[np.ndarray]:
        return [materialize(m, hermitize=True, max_dim=max_dim).entries for m in self.members]

    def to_json(self) -> str:
        if self.kind == "pauli":
            members = [
                {"label": m.label(), "phase": _phase_str(m.label_phase())}
                for m in self.members
            ]
        else:
            members = [list(m.support) for m in self.members]
        return json.dumps(
            {
                "kind": self.kind,
                "n": self.n,
                "locality": self.locality,
                "provenance": self.provenance,
                "members": members,
            }
        )

    @classmethod
    def from_json(cls, text: str) -> "OperatorSet":
        data = json.loads(text)
        if data["kind"] == "pauli":
            members = tuple(
                PauliString.from_label(m["label"], _phase_value(m["phase"]))
                for m in data["members"]
            )
        else:
            members = tuple(
                MajoranaMonomial(data["n"], tuple(s)) for s in data["members"]
            )
        return cls(data["kind"], data["n"], data["locality"], members, data.get("provenance", "custom"))


def _phase_str(g: complex) -> str:
    return {1: "+1", 1j: "+i", -1: "-1", -1j: "-i"}[complex(g)]


def _phase_value(s: str) -> complex:
    return {"+1": 1, "+i": 1j, "-1": -1, "-i": -1j}[s]


def enumerate_set(kind: str, n: int, locality: int) -> OperatorSet:
    """Complete lexicographic enumeration of S^n_q or P^n_k.

    Majorana: all C(n, q) degree-q monomials.  Pauli: all C(n, k)*3^k
    exactly-weight-k strings; sites ordered lexicographically and letters
    cycling X, Y, Z per site.
    """
    if kind == "majorana":
        if n % 2 != 0:
            raise InputError("majorana enumeration requires even mode count")
        if not 0 < locality <= n:
            raise InputError("locality must lie in 1..n")
        if comb(n, locality) > MAX_ENUMERATION:
            raise CapacityError(f"enumeration of {comb(n, locality)} members exceeds cap")
        members = tuple(
            MajoranaMonomial(n, s)
            for s in itertools.combinations(range(1, n + 1), locality)
        )
        return OperatorSet("majorana", n, locality, members, provenance="enumerated")
    if kind == "pauli":
        if not 0 < locality <= n:
            raise InputError("locality must lie in 1..n")
        count = comb(n, locality) * 3**locality
        if count > MAX_ENUMERATION:
            raise CapacityError(f"enumeration of {count} members exceeds cap")
        single = ((1, 0, 0), (1, 1, 1), (0, 1, 0))  # X, Y, Z as (x, z, phase)
        members = []
        for sites in itertools.combinations(range(n), locality):
            for letters in itertools.product(single, repeat=locality):
                x = z = p = 0
                for site, (xb, zb, pb) in zip(sites, letters):
                    x |= xb << site
                    z |= zb << site
                    p += pb
                members.append(PauliString(n, x, z, p % 4))
        return OperatorSet("pauli", n, locality, tuple(members), provenance="enumerated")
    raise InputError(f"unknown operator kind {kind!r}")
