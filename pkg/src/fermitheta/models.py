"""Random Hamiltonian ensembles and the associated bound calculators.

Every ensemble draws i.i.d. standard normal couplings over a fixed,
lexicographically enumerated term family and normalizes by the square root
of the term count, so the normalized trace of H^2 has unit expectation.
Terms are monomial matrices (one nonzero per column), which lets a whole
family be cached as index/value arrays and a sample be assembled by a
single scatter-add.
"""

from __future__ import annotations

import itertools
import json
import math
from dataclasses import dataclass
from functools import lru_cache
from math import comb, log

import numpy as np

from .algebra import (
    MajoranaMonomial,
    OperatorSet,
    PauliString,
    _popcount_array,
    enumerate_set,
    majorana_to_pauli,
)
from .graphs import commutation_degree, commutation_graph
from .kernel import CapacityError, InputError, RandomStream, eigh, gaussian_stream
from .theta import theta_johnson_lp

__all__ = [
    "DisorderSample",
    "ModelInstance",
    "ClassicalInstance",
    "TermBank",
    "term_bank",
    "sample_syk",
    "sample_spin_glass",
    "sample_classical_pspin",
    "h_comm_count",
    "lambda_max_lower_bound",
    "BoundsReport",
    "ansatz_bounds_report",
    "depolarized_energy_identity",
]

MAX_SYK_MODES = 24
MAX_SG_QUBITS = 12
MAX_CLASSICAL_SPINS = 22


@dataclass(frozen=True)
class DisorderSample:
    """Gaussian couplings for one disorder realization, order matching the
    lexicographic term enumeration."""

    kind: str
    n: int
    locality: int
    seed: int
    stream: int
    couplings: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "couplings", np.asarray(self.couplings, dtype=float))


class TermBank:
    """Monomial-structure cache for a term family.

    ``rows[i, c]`` and ``vals[i, c]`` give the single nonzero of term i in
    column c, so H = N^{-1/2} sum_i g_i A_i assembles by scatter-add.
    """

    def __init__(self, paulis: list[PauliString], dim: int):
        m = len(paulis)
        cols = np.arange(dim)
        self.dim = dim
        self.rows = np.empty((m, dim), dtype=np.int64)
        self.vals = np.empty((m, dim), dtype=complex)
        for i, p in enumerate(paulis):
            self.rows[i] = cols ^ p.x_mask
            signs = 1 - 2 * (_popcount_array(cols & p.z_mask) % 2)
            self.vals[i] = p.phase * signs

    def __len__(self):
        return self.rows.shape[0]

    def assemble(self, g: np.ndarray) -> np.ndarray:
        """Dense (1/sqrt(m)) sum_i g_i A_i."""
        m, dim = self.rows.shape
        H = np.zeros((dim, dim), dtype=complex)
        cols = np.broadcast_to(np.arange(dim), (m, dim))
        np.add.at(H, (self.rows, cols), g[:, None] * self.vals)
        return H / math.sqrt(m)

    def expectations(self, psi: np.ndarray) -> np.ndarray:
        """<psi|A_i|psi> for every term, exactly (real for Hermitian terms)."""
        bra = psi.conj()[self.rows]
        return np.real(np.einsum("mc,mc,c->m", bra, self.vals, psi))

    def matrix(self, i: int) -> np.ndarray:
        dim = self.rows.shape[1]
        M = np.zeros((dim, dim), dtype=complex)
        M[self.rows[i], np.arange(dim)] = self.vals[i]
        return M


@lru_cache(maxsize=16)
def term_bank(kind: str, n: int, locality: int) -> TermBank:
    """Cached hermitized term family for (kind, n, locality)."""
    ops = enumerate_set(kind, n, locality)
    if kind == "majorana":
        paulis = [majorana_to_pauli(m, hermitize=True) for m in ops.members]
        dim = 1 << (n // 2)
    else:
        paulis = list(ops.members)
        dim = 1 << n
    return TermBank(paulis, dim)


@dataclass
class ModelInstance:
    """One dense disorder realization with its lazily computed spectrum."""

    sample: DisorderSample
    H: np.ndarray
    _spectrum: np.ndarray | None = None

    @property
    def dim(self) -> int:
        return self.H.shape[0]

    @property
    def eigenvalues(self) -> np.ndarray:
        if self._spectrum is None:
            self._spectrum = eigh(self.H).eigenvalues
        return self._spectrum

    @property
    def lambda_max(self) -> float:
        return float(self.eigenvalues[-1])


@dataclass
class ClassicalInstance:
    """Classical p-spin realization as an energy table over all 2^n
    configurations, indexed by spin bitmask (bit set means sigma = -1)."""

    sample: DisorderSample
    energies: np.ndarray

    @property
    def n_spins(self) -> int:
        return self.sample.n

    def as_dense(self) -> np.ndarray:
        return np.diag(self.energies)


def _couplings(kind: str, n: int, locality: int, seed: int, stream: int, count: int) -> DisorderSample:
    g = gaussian_stream(RandomStream(seed, stream), count)
    return DisorderSample(kind, n, locality, seed, stream, g)


def sample_syk(n: int, q: int, seed: int, stream: int = 0) -> ModelInstance:
    """Degree-q Majorana ensemble on n modes, C(n,q)^(-1/2) normalization."""
    if n % 2 != 0 or q % 2 != 0:
        raise InputError("n and q must both be even")
    if not 0 < q <= n:
        raise InputError("q must lie in 1..n")
    if n > MAX_SYK_MODES:
        raise CapacityError(f"{n} modes exceed the dense budget of {MAX_SYK_MODES}")
    bank = term_bank("majorana", n, q)
    sample = _couplings("majorana", n, q, seed, stream, len(bank))
    return ModelInstance(sample=sample, H=bank.assemble(sample.couplings))


def sample_spin_glass(n: int, k: int, seed: int, stream: int = 0) -> ModelInstance:
    """k-local quantum spin glass on n qubits over all weight-k Paulis."""
    if not 0 < k <= n:
        raise InputError("k must lie in 1..n")
    if n > MAX_SG_QUBITS:
        raise CapacityError(f"{n} qubits exceed the dense budget of {MAX_SG_QUBITS}")
    bank = term_bank("pauli", n, k)
    sample = _couplings("pauli", n, k, seed, stream, len(bank))
    return ModelInstance(sample=sample, H=bank.assemble(sample.couplings))


def _walsh_hadamard(a: np.ndarray) -> np.ndarray:
    out = a.copy()
    h = 1
    size = len(out)
    while h < size:
        out = out.reshape(-1, 2, h)
        top = out[:, 0, :] + out[:, 1, :]
        bot = out[:, 0, :] - out[:, 1, :]
        out = np.stack([top, bot], axis=1).reshape(size)
        h *= 2
    return out


def sample_classical_pspin(n: int, p: int, seed: int, stream: int = 0) -> ClassicalInstance:
    """Classical p-spin energies for every configuration at once.

    The multilinear form evaluates over all sign patterns via a fast
    Walsh-Hadamard transform of the sparse coupling vector.
    """
    if not 0 < p <= n:
        raise InputError("p must lie in 1..n")
    if n > MAX_CLASSICAL_SPINS:
        raise CapacityError(f"{n} spins exceed the enumeration budget of {MAX_CLASSICAL_SPINS}")
    subsets = []
    mask_bits = []
    for T in itertools.combinations(range(n), p):
        subsets.append(T)
        mask_bits.append(sum(1 << i for i in T))
    m = len(subsets)
    sample = _couplings("classical", n, p, seed, stream, m)
    coef = np.zeros(1 << n)
    coef[np.array(mask_bits)] = sample.couplings / math.sqrt(m)
    return ClassicalInstance(sample=sample, energies=_walsh_hadamard(coef))


def h_comm_count(kind: str, n: int, locality: int) -> int:
    """Exact maximal number of family members anticommuting with any one term.

    Closed forms by vertex-transitivity; cross-checked against the
    brute-force graph degree whenever the family is small enough to build.
    """
    q = locality
    if kind == "majorana":
        if n % 2 != 0:
            raise InputError("majorana counting requires even n")
        val = sum(
            comb(q, s) * comb(n - q, q - s) for s in range(1, q + 1, 2)
        )
    elif kind == "pauli":
        val = 0
        for j in range(1, q + 1):
            odd_words = (3**j - (-1) ** j) // 2
            val += comb(q, j) * comb(n - q, q - j) * 3 ** (q - j) * odd_words
    else:
        raise InputError(f"unknown kind {kind!r}")
    family_size = comb(n, q) * (3**q if kind == "pauli" else 1)
    if family_size <= 600:
        deg = commutation_degree(commutation_graph(enumerate_set(kind, n, q)))
        if deg != val:
            raise RuntimeError(
                f"closed-form commutation degree {val} disagrees with graph degree {deg}"
            )
    return val


@dataclass(frozen=True)
class EigenvalueBound:
    bound: float
    beta_max: float
    vacuous: bool


def lambda_max_lower_bound(m: int, h_comm: int, delta_upper: float, c1: float = 1.0) -> EigenvalueBound:
    """Guaranteed expected maximal eigenvalue and the temperature realizing it.

    bound = sqrt(m) / (4 sqrt(c1 h_comm)) * (1 - 16 delta_upper), clamped at
    zero;  beta_max = sqrt(m / (c1 h_comm)).  The constant c1 is exposed as
    a knob with default 1 and no claim of rigor at the default.
    """
    if c1 <= 0:
        raise InputError("c1 must be positive")
    raw = math.sqrt(m) / (4 * math.sqrt(c1 * h_comm)) * (1 - 16 * delta_upper)
    return EigenvalueBound(
        bound=max(0.0, raw),
        beta_max=math.sqrt(m / (c1 * h_comm)),
        vacuous=raw <= 0,
    )


@dataclass(frozen=True)
class BoundsReport:
    """Ansatz-size thresholds implied by energy concentration plus counting."""

    n: int
    q: int
    t: float
    gate_set_size: int
    delta: float
    c1: float
    sigma_sq: float
    concentration_exponent: float
    circuit_gate_threshold: int
    mps_bond_threshold: int
    nn_weight_threshold: int
    gaussian_states_ruled_out: bool
    gaussian_net_exponent: float
    lambda_max_lower: float
    beta_max: float

    def to_json(self) -> str:
        return json.dumps(self.__dict__)


def ansatz_bounds_report(
    n: int,
    q: int,
    t: float,
    M: int,
    delta: float,
    sigma_sq: float | None = None,
    c1: float = 1.0,
) -> BoundsReport:
    """Largest ansatz sizes whose union bound stays below failure prob delta.

    A state family of cardinality exp(B) can only reach energy t*sqrt(n)
    with probability exp(B - E) where E = t^2 n / (2 sigma^2) and sigma^2
    is the (upper-bounded) commutation index.  Circuit counting uses
    (M * C(n,2))^G configurations, matrix product states exp(chi^2 + ln n),
    neural networks exp(W), and Gaussian states an n^2-scale net.
    """
    if t <= 0:
        raise InputError("t must be positive")
    if M < 2:
        raise InputError("gate set must contain at least 2 gates")
    if not 0 < delta < 1:
        raise InputError("delta must lie in (0, 1)")
    if sigma_sq is None:
        sigma_sq = float(theta_johnson_lp(n, q).value) / comb(n, q)
    exponent = t * t * n / (2 * sigma_sq)
    budget = exponent + log(delta)
    ln_circ = log(M * comb(n, 2))
    g_star = max(0, math.floor(budget / ln_circ))
    chi_star = max(0, math.floor(math.sqrt(max(0.0, budget - log(n)))))
    w_star = max(0, math.floor(budget))
    net_exp = float(n * n)
    eig = lambda_max_lower_bound(comb(n, q), h_comm_count("majorana", n, q), sigma_sq, c1)
    return BoundsReport(
        n=n,
        q=q,
        t=t,
        gate_set_size=M,
        delta=delta,
        c1=c1,
        sigma_sq=sigma_sq,
        concentration_exponent=exponent,
        circuit_gate_threshold=g_star,
        mps_bond_threshold=chi_star,
        nn_weight_threshold=w_star,
        gaussian_states_ruled_out=exponent > net_exp,
        gaussian_net_exponent=net_exp,
        lambda_max_lower=eig.bound,
        beta_max=eig.beta_max,
    )


def _depolarize_qubit(rho: np.ndarray, j: int, n: int, p: float) -> np.ndarray:
    """Single-qubit depolarizing channel on qubit j (index bit j)."""
    low = 1 << j
    high = 1 << (n - 1 - j)
    r = rho.reshape(high, 2, low, high, 2, low)
    traced = np.einsum("hilHiL->hlHL", r)
    out = p * r.copy()
    half = (1 - p) / 2
    out[:, 0, :, :, 0, :] += half * traced
    out[:, 1, :, :, 1, :] += half * traced
    return out.reshape(rho.shape)


def depolarized_energy_identity(terms, phi: np.ndarray) -> tuple[float, float]:
    """Check Tr(H E^(x n)(|phi><phi|)) = 3^(-k) <phi|H|phi> for exactly
    k-local H.

    ``terms`` is a sequence of (coefficient, PauliString) pairs whose
    strings all have the same weight k; coefficients must be real.  The
    left side applies the p = 1/3 depolarizing map qubit by qubit to the
    projector; the identity is asserted to 1e-12 and both sides returned.
    """
    terms = list(terms)
    if not terms:
        raise InputError("empty Hamiltonian")
    weights = {P.weight for _, P in terms}
    if len(weights) != 1:
        raise InputError(f"terms are not exactly k-local: weights {sorted(weights)}")
    k = weights.pop()
    if k == 0:
        raise InputError("terms must be traceless (nonzero weight)")
    nq = terms[0][1].n_qubits
    if any(P.n_qubits != nq for _, P in terms):
        raise InputError("terms act on different qubit counts")
    if 1 << nq > 1 << 10:
        raise CapacityError("dimension exceeds the 2^10 identity-check cap")
    phi = np.asarray(phi, dtype=complex)
    if phi.shape != (1 << nq,) or abs(np.vdot(phi, phi) - 1) > 1e-10:
        raise InputError("phi must be a normalized state of matching dimension")
    from .algebra import pauli_matrix

    H = np.zeros((1 << nq, 1 << nq), dtype=complex)
    for c, P in terms:
        if abs(complex(c).imag) > 0:
            raise InputError("coefficients must be real")
        if not P.is_hermitian:
            raise InputError("terms must be Hermitian Pauli strings")
        H += float(np.real(c)) * pauli_matrix(P)
    rho = np.outer(phi, phi.conj())
    for j in range(nq):
        rho = _depolarize_qubit(rho, j, nq, 1.0 / 3.0)
    lhs = float(np.real(np.trace(H @ rho)))
    rhs = float(np.real(np.vdot(phi, H @ phi))) / 3**k
    if abs(lhs - rhs) > 1e-12:
        raise RuntimeError(f"depolarizing identity violated: lhs={lhs!r} rhs={rhs!r}")
    return lhs, rhs
