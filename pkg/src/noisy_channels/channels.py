"""Kraus-channel machinery: states, channel application, exchange matrix and information rates.

All entropies are in bits. States are validated once, when a
:class:`DensityMatrix` is constructed; the functions below trust their inputs
beyond dimension checks.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from .errors import (
    BlochOutOfBallError,
    DimensionMismatchError,
    EnsembleInvalidError,
    InvalidStateError,
)
from .numerics import (
    I2,
    X,
    Y,
    Z,
    as_matrix,
    dagger,
    hermitian_eigenvalues,
    hermiticity_defect,
    partial_trace,
    von_neumann_entropy,
)

CPTP_TOL = 1e-10
STATE_HERMITIAN_TOL = 1e-12
STATE_TRACE_TOL = 1e-10
STATE_PSD_TOL = 1e-10


@dataclass(frozen=True)
class DensityMatrix:
    """A validated density operator (Hermitian, trace one, positive semidefinite)."""

    matrix: np.ndarray = field(repr=False)
    spectrum: np.ndarray = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        m = as_matrix(self.matrix).copy()
        if m.shape[0] != m.shape[1]:
            raise InvalidStateError(f"density matrix must be square, got {m.shape}")
        defect = hermiticity_defect(m)
        if defect > STATE_HERMITIAN_TOL:
            raise InvalidStateError(f"not Hermitian (defect {defect:.2e})")
        tr = np.trace(m).real
        if abs(tr - 1.0) > STATE_TRACE_TOL:
            raise InvalidStateError(f"trace {tr!r} differs from 1")
        spec = hermitian_eigenvalues(m, tol=STATE_HERMITIAN_TOL)
        if spec[-1] < -STATE_PSD_TOL:
            raise InvalidStateError(f"negative eigenvalue {spec[-1]:.3e}")
        m.setflags(write=False)
        object.__setattr__(self, "matrix", m)
        object.__setattr__(self, "spectrum", spec)

    @property
    def dimension(self) -> int:
        return self.matrix.shape[0]

    def entropy(self) -> float:
        return von_neumann_entropy(self.spectrum)


@dataclass(frozen=True)
class BlochVector:
    a1: float
    a2: float
    a3: float

    def __post_init__(self):
        if self.norm > 1.0 + 1e-10:
            raise BlochOutOfBallError(f"Bloch vector {self.as_tuple()} has norm {self.norm:.6f} > 1")

    @property
    def norm(self) -> float:
        return math.sqrt(self.a1**2 + self.a2**2 + self.a3**2)

    # the purity measure used for the figure inputs is simply the Bloch length
    purity = norm

    def as_tuple(self) -> tuple[float, float, float]:
        return (self.a1, self.a2, self.a3)

    def to_density(self) -> DensityMatrix:
        return DensityMatrix(0.5 * (I2 + self.a1 * X + self.a2 * Y + self.a3 * Z))

    @classmethod
    def from_density(cls, rho: DensityMatrix | np.ndarray) -> "BlochVector":
        m = rho.matrix if isinstance(rho, DensityMatrix) else as_matrix(rho)
        if m.shape != (2, 2):
            raise DimensionMismatchError("Bloch vectors describe qubits only")
        return cls(*(float(np.trace(m @ s).real) for s in (X, Y, Z)))


@dataclass(frozen=True)
class KrausChannel:
    """An ordered set of Kraus operators ``A_i`` (each ``n_out x n_in``).

    Zero operators are allowed and kept, so the exchange matrix has a fixed
    size across a parameter family.
    """

    operators: tuple[np.ndarray, ...] = field(repr=False)
    label: str = ""

    def __post_init__(self):
        ops = tuple(as_matrix(a).copy() for a in self.operators)
        if not ops:
            raise DimensionMismatchError("a channel needs at least one Kraus operator")
        shape = ops[0].shape
        if any(a.shape != shape for a in ops):
            raise DimensionMismatchError("Kraus operators have inconsistent shapes")
        for a in ops:
            a.setflags(write=False)
        object.__setattr__(self, "operators", ops)

    @property
    def input_dim(self) -> int:
        return self.operators[0].shape[1]

    @property
    def output_dim(self) -> int:
        return self.operators[0].shape[0]

    def __len__(self) -> int:
        return len(self.operators)


@dataclass(frozen=True)
class CPTPReport:
    deviation: float
    tol: float
    passed: bool
    label: str = ""


@dataclass(frozen=True)
class Ensemble:
    weights: tuple[float, ...]
    states: tuple[DensityMatrix, ...]

    def __post_init__(self):
        w = tuple(float(x) for x in self.weights)
        states = tuple(self.states)
        if len(w) != len(states) or not w:
            raise EnsembleInvalidError("weights and states must be non-empty and of equal length")
        if any(x < 0 for x in w) or abs(sum(w) - 1.0) > 1e-10:
            raise EnsembleInvalidError(f"weights {w} are not a probability vector")
        if len({s.dimension for s in states}) != 1:
            raise EnsembleInvalidError("ensemble states have different dimensions")
        object.__setattr__(self, "weights", w)
        object.__setattr__(self, "states", states)

    def average(self) -> DensityMatrix:
        return DensityMatrix(sum(w * s.matrix for w, s in zip(self.weights, self.states)))


@dataclass(frozen=True)
class ChannelMetrics:
    input_entropy: float
    output_entropy: float
    entropy_exchange: float
    coherent_information: float
    mutual_information: float


def _check_input(ch: KrausChannel, rho: DensityMatrix) -> None:
    if ch.input_dim != rho.dimension:
        raise DimensionMismatchError(f"channel input dimension {ch.input_dim} != state dimension {rho.dimension}")


def validate_cptp(ch: KrausChannel, tol: float = CPTP_TOL) -> CPTPReport:
    """Check the completeness relation ``sum A_i^dag A_i = I``."""
    total = sum(dagger(a) @ a for a in ch.operators)
    deviation = float(np.max(np.abs(total - np.eye(ch.input_dim))))
    return CPTPReport(deviation=deviation, tol=tol, passed=deviation <= tol, label=ch.label)


def apply_channel(ch: KrausChannel, rho: DensityMatrix) -> DensityMatrix:
    _check_input(ch, rho)
    out = sum(a @ rho.matrix @ dagger(a) for a in ch.operators)
    return DensityMatrix(0.5 * (out + dagger(out)))


def exchange_matrix(ch: KrausChannel, rho: DensityMatrix) -> np.ndarray:
    """``W_ij = Tr(A_i rho A_j^dag)``, a k x k matrix for k Kraus operators."""
    _check_input(ch, rho)
    k = len(ch)
    left = [a @ rho.matrix for a in ch.operators]
    w = np.empty((k, k), dtype=complex)
    for i in range(k):
        for j in range(k):
            # Tr(L_i A_j^dag) = sum(L_i * conj(A_j))
            w[i, j] = np.sum(left[i] * np.conj(ch.operators[j]))
    return w


def entropy_exchange(ch: KrausChannel, rho: DensityMatrix) -> float:
    return von_neumann_entropy(hermitian_eigenvalues(exchange_matrix(ch, rho), tol=1e-10))


def output_entropy(ch: KrausChannel, rho: DensityMatrix) -> float:
    return apply_channel(ch, rho).entropy()


def coherent_information(ch: KrausChannel, rho: DensityMatrix) -> float:
    return output_entropy(ch, rho) - entropy_exchange(ch, rho)


def mutual_information(ch: KrausChannel, rho: DensityMatrix) -> float:
    return rho.entropy() + output_entropy(ch, rho) - entropy_exchange(ch, rho)


def channel_metrics(ch: KrausChannel, rho: DensityMatrix) -> ChannelMetrics:
    s_in = rho.entropy()
    s_out = output_entropy(ch, rho)
    s_w = entropy_exchange(ch, rho)
    return ChannelMetrics(
        input_entropy=s_in,
        output_entropy=s_out,
        entropy_exchange=s_w,
        coherent_information=s_out - s_w,
        mutual_information=s_in + s_out - s_w,
    )


def holevo_chi(ch: KrausChannel, ens: Ensemble) -> float:
    """Holevo quantity of the channel outputs for the given input ensemble."""
    if ens.states[0].dimension != ch.input_dim:
        raise EnsembleInvalidError("ensemble dimension does not match channel input")
    outputs = [apply_channel(ch, s) for s in ens.states]
    avg = DensityMatrix(sum(w * o.matrix for w, o in zip(ens.weights, outputs)))
    return avg.entropy() - sum(w * o.entropy() for w, o in zip(ens.weights, outputs))


def stinespring_isometry(ch: KrausChannel) -> np.ndarray:
    """``V = sum_i A_i (x) |i>_E`` as an ``(n_out k) x n_in`` matrix, system factor first."""
    k = len(ch)
    # row index (s, e) -> s * k + e
    v = np.zeros((ch.output_dim * k, ch.input_dim), dtype=complex)
    for e, a in enumerate(ch.operators):
        v[e::k, :] = a
    return v


def stinespring_environment_state(ch: KrausChannel, rho: DensityMatrix) -> DensityMatrix:
    """Environment state after the dilated evolution, found by tracing out the system."""
    _check_input(ch, rho)
    v = stinespring_isometry(ch)
    joint = v @ rho.matrix @ dagger(v)
    env = partial_trace(joint, ch.output_dim, len(ch), keep="second")
    return DensityMatrix(0.5 * (env + dagger(env)))


def extend_with_identity(ch: KrausChannel, spectator_dim: int) -> KrausChannel:
    """Act with ``ch`` on the first factor and trivially on a spectator of the given size."""
    eye = np.eye(spectator_dim, dtype=complex)
    return KrausChannel(tuple(np.kron(a, eye) for a in ch.operators), label=f"{ch.label}(x)I{spectator_dim}")


def identity_channel(n: int) -> KrausChannel:
    return KrausChannel((np.eye(n, dtype=complex),), label=f"id{n}")


def random_kraus_channel(n: int, k: int, rng: np.random.Generator) -> KrausChannel:
    """Random channel from a column-orthonormalised ``(n k) x n`` complex Gaussian matrix."""
    g = rng.normal(size=(n * k, n)) + 1j * rng.normal(size=(n * k, n))
    v, _ = np.linalg.qr(g)
    # row index s * k + e matches stinespring_isometry
    ops = tuple(v[e::k, :] for e in range(k))
    return KrausChannel(ops, label=f"random(n={n},k={k})")


def random_density_matrix(n: int, rng: np.random.Generator, rank: int | None = None) -> DensityMatrix:
    """Random mixed state ``G G^dag / Tr`` with Ginibre ``G`` of the given rank."""
    r = n if rank is None else rank
    g = rng.normal(size=(n, r)) + 1j * rng.normal(size=(n, r))
    m = g @ dagger(g)
    m = m / np.trace(m).real
    return DensityMatrix(0.5 * (m + dagger(m)))


@dataclass(frozen=True)
class OracleReport:
    trials: int
    seed: int
    max_deviation: float
    tol: float
    passed: bool
    failures: tuple[int, ...] = ()


def oracle_check(trials: int = 200, seed: int = 42, tol: float = 1e-9,
                 dims: Sequence[int] = (2, 3, 4), kraus_counts: Sequence[int] = (2, 3, 4)) -> OracleReport:
    """Compare S(W) with the entropy of the Stinespring environment on random instances."""
    rng = np.random.default_rng(seed)
    worst = 0.0
    failures = []
    for t in range(trials):
        n = int(rng.choice(dims))
        k = int(rng.choice(kraus_counts))
        ch = random_kraus_channel(n, k, rng)
        rho = random_density_matrix(n, rng, rank=int(rng.integers(1, n + 1)))
        dev = abs(entropy_exchange(ch, rho) - stinespring_environment_state(ch, rho).entropy())
        worst = max(worst, dev)
        if dev > tol:
            failures.append(t)
    return OracleReport(trials, seed, worst, tol, not failures, tuple(failures))
