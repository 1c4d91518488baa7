"""The three noise scenarios: modified amplitude damping, modified bit flip and noisy dense coding.

Each scenario has a constructor that feeds the generic Kraus machinery in
:mod:`noisy_channels.channels` and a closed-form evaluator built from the
analytic Bloch vector, exchange matrix and output spectrum. The two paths are
cross-checked in the test suite.

Two literal printed expressions disagree with a direct evaluation of the
definitions; both are available behind a ``variant`` switch:

* amplitude damping ``W_12`` carries ``sqrt(p (1+p) (1-q))`` as printed,
  while ``Tr(A_1 rho A_2^dag)`` gives ``sqrt(p (1-q))`` (``w12_variant``);
* the dense-coding eigenvalues ``xi_{3,4}`` carry ``(1-q)^3`` under the root as
  printed, while diagonalising the output gives ``(1-q)^2`` (``xi_variant``).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Literal

import numpy as np

from .channels import (
    BlochVector,
    DensityMatrix,
    Ensemble,
    KrausChannel,
    apply_channel,
    exchange_matrix,
    extend_with_identity,
    holevo_chi,
)
from .errors import ParamOutOfRangeError
from .numerics import (
    CLAMP_TOL,
    I2,
    X,
    Y,
    Z,
    binary_entropy,
    entropy_real_part,
    hermitian_eigenvalues,
    partial_trace,
    von_neumann_entropy,
)

Family = Literal["ad", "bf"]
Variant = Literal["derived", "printed"]
FAMILIES = ("ad", "bf")
VARIANTS = ("derived", "printed")

SIGMA_PLUS = np.array([[0, 1], [0, 0]], dtype=complex)  # (X + iY)/2 = |0><1|
P0 = np.diag([1.0, 0.0]).astype(complex)  # (I + Z)/2
P1 = np.diag([0.0, 1.0]).astype(complex)  # (I - Z)/2

BELL_PSI_PLUS = np.array([1, 0, 0, 1], dtype=complex) / math.sqrt(2)
DENSE_CODING_ENCODINGS = (I2, X, Y, Z)


def _check_prob(**params: float) -> None:
    for name, v in params.items():
        if not (0.0 <= v <= 1.0) or math.isnan(v):
            raise ParamOutOfRangeError(f"{name}={v!r} outside [0, 1]")


def _check_variant(variant: str) -> None:
    if variant not in VARIANTS:
        raise ValueError(f"unknown variant {variant!r}; expected one of {VARIANTS}")


def make_amplitude_damping_pf(p: float, q: float) -> KrausChannel:
    """Amplitude damping mixed with phase flip; ``q=0`` is pure damping, ``q=1`` a phase flip."""
    _check_prob(p=p, q=q)
    return KrausChannel(
        (
            P0 + math.sqrt(1 - p) * P1,
            math.sqrt(p * (1 - q)) * SIGMA_PLUS,
            math.sqrt(p * q) * P1,
        ),
        label=f"ad(p={p!r},q={q!r})",
    )


def make_bit_flip_pf(p: float, q: float) -> KrausChannel:
    """Bit flip mixed with phase flip; ``q=0`` is pure bit flip, ``q=1`` a phase flip."""
    _check_prob(p=p, q=q)
    return KrausChannel(
        (
            math.sqrt(1 - p) * I2,
            math.sqrt(p * (1 - q)) * X,
            math.sqrt(p * q) * Z,
        ),
        label=f"bf(p={p!r},q={q!r})",
    )


def make_family(family: Family, p: float, q: float) -> KrausChannel:
    if family == "ad":
        return make_amplitude_damping_pf(p, q)
    if family == "bf":
        return make_bit_flip_pf(p, q)
    raise ValueError(f"unknown qubit family {family!r}")


def make_amplitude_damping(p: float) -> KrausChannel:
    _check_prob(p=p)
    return KrausChannel((P0 + math.sqrt(1 - p) * P1, math.sqrt(p) * SIGMA_PLUS), label=f"amp_damp(p={p!r})")


@dataclass(frozen=True)
class QubitEval:
    """Rates for a single-qubit family at one ``(a, p, q)`` point.

    ``theta`` is the output spectrum ``(1 +- |b|)/2``; ``w`` is the exchange matrix.
    """

    b: tuple[float, float, float]
    w: np.ndarray
    theta: np.ndarray
    entropy_exchange: float
    output_entropy: float
    coherent_information: float


def output_bloch(family: Family, a: BlochVector, p: float, q: float) -> tuple[float, float, float]:
    a1, a2, a3 = a.as_tuple()
    if family == "ad":
        r = math.sqrt(1 - p)
        return (a1 * r, a2 * r, p - p * q + a3 * (1 - p + p * q))
    if family == "bf":
        return (a1 * (1 - 2 * p * q), a2 * (1 - 2 * p), a3 * (1 - 2 * p + 2 * p * q))
    raise ValueError(f"unknown qubit family {family!r}")


def closed_form_exchange_matrix(family: Family, a: BlochVector, p: float, q: float,
                                w12_variant: Variant = "derived") -> np.ndarray:
    a1, a2, a3 = a.as_tuple()
    w = np.zeros((3, 3), dtype=complex)
    if family == "ad":
        f12 = p * (1 - q) if w12_variant == "derived" else p * (1 + p) * (1 - q)
        w[0, 0] = 0.5 * (2 - p + a3 * p)
        w[0, 1] = 0.5 * (a1 - 1j * a2) * math.sqrt(f12)
        w[0, 2] = 0.5 * (1 - a3) * math.sqrt(p * q * (1 - p))
        w[1, 1] = 0.5 * (1 - a3) * p * (1 - q)
        w[2, 2] = 0.5 * (1 - a3) * p * q
    elif family == "bf":
        w[0, 0] = 1 - p
        w[0, 1] = a1 * math.sqrt(p * (1 - p) * (1 - q))
        w[0, 2] = a3 * math.sqrt(p * q * (1 - p))
        w[1, 1] = p * (1 - q)
        w[1, 2] = 1j * a2 * math.sqrt(p * p * q * (1 - q))
        w[2, 2] = p * q
    else:
        raise ValueError(f"unknown qubit family {family!r}")
    for i in range(3):
        for j in range(i):
            w[i, j] = np.conj(w[j, i])
    return w


def closed_form_qubit_eval(family: Family, a: BlochVector, p: float, q: float,
                           w12_variant: Variant = "derived") -> QubitEval:
    """Evaluate the analytic Bloch vector, exchange matrix and output spectrum.

    With ``w12_variant="printed"`` the amplitude damping exchange matrix can be
    indefinite; its entropy is then the real part of ``-sum l log2 l``.
    """
    _check_prob(p=p, q=q)
    _check_variant(w12_variant)
    b = output_bloch(family, a, p, q)
    nb = min(1.0, math.sqrt(sum(x * x for x in b)))
    theta = np.array([0.5 * (1 + nb), 0.5 * (1 - nb)])
    w = closed_form_exchange_matrix(family, a, p, q, w12_variant)
    lam = hermitian_eigenvalues(w)
    if family == "ad" and w12_variant == "printed":
        s_w = entropy_real_part(lam)
    else:
        s_w = von_neumann_entropy(lam)
    s_out = binary_entropy(theta[1])
    return QubitEval(b=b, w=w, theta=theta, entropy_exchange=s_w, output_entropy=s_out,
                     coherent_information=s_out - s_w)


def generic_qubit_eval(family: Family, a: BlochVector, p: float, q: float) -> QubitEval:
    """Same quantities through Kraus application and numerical diagonalisation."""
    ch = make_family(family, p, q)
    rho = a.to_density()
    out = apply_channel(ch, rho)
    w = exchange_matrix(ch, rho)
    s_w = von_neumann_entropy(hermitian_eigenvalues(w, tol=1e-10))
    s_out = out.entropy()
    return QubitEval(b=BlochVector.from_density(out).as_tuple(), w=w, theta=out.spectrum,
                     entropy_exchange=s_w, output_entropy=s_out, coherent_information=s_out - s_w)


def bell_state() -> DensityMatrix:
    return DensityMatrix(np.outer(BELL_PSI_PLUS, BELL_PSI_PLUS.conj()))


def werner_state(q: float) -> DensityMatrix:
    """``(q/4) I + (1-q) |Psi+><Psi+|`` in the basis 00, 01, 10, 11."""
    _check_prob(q=q)
    return DensityMatrix(0.25 * q * np.eye(4) + (1 - q) * np.outer(BELL_PSI_PLUS, BELL_PSI_PLUS.conj()))


@dataclass(frozen=True)
class DenseCodingEval:
    xi: np.ndarray
    output_entropy: float
    entropy_exchange: float
    chi: float


def dense_coding_xi(p: float, q: float, xi_variant: Variant = "derived") -> np.ndarray:
    """Spectrum of the damped Werner state, descending."""
    _check_prob(p=p, q=q)
    _check_variant(xi_variant)
    power = 2 if xi_variant == "derived" else 3
    root = math.sqrt(p * p + 4 * (1 - p) * (1 - q) ** power)
    rest = 2 - p * (1 - q) - q
    xi = [q * (1 - p) / 4, (q + p * (2 - q)) / 4, (rest - root) / 4, (rest + root) / 4]
    # round-off at the corners can leave -1e-17 where the exact value is 0
    xi = [0.0 if -CLAMP_TOL <= x < 0.0 else x for x in xi]
    return np.array(sorted(xi, reverse=True))


def dense_coding_eval(p: float, q: float, xi_variant: Variant = "derived") -> DenseCodingEval:
    """Closed-form dense coding rate ``chi = 1 + S(rho_B) - S(xi)`` with ``S(rho_B) = 1``."""
    xi = dense_coding_xi(p, q, xi_variant)
    s_out = von_neumann_entropy(xi)
    return DenseCodingEval(xi=xi, output_entropy=s_out, entropy_exchange=binary_entropy(p / 2), chi=2.0 - s_out)


def damped_werner_state(p: float, q: float) -> DensityMatrix:
    return apply_channel(extend_with_identity(make_amplitude_damping(p), 2), werner_state(q))


def dense_coding_rate_generic(p: float, q: float) -> float:
    """``1 + S(rho_B) - S((N_A (x) I) rho_AB)`` evaluated numerically."""
    rho = werner_state(q)
    rho_b = DensityMatrix(partial_trace(rho.matrix, 2, 2, keep="second"))
    return 1.0 + rho_b.entropy() - damped_werner_state(p, q).entropy()


def dense_coding_ensemble(q: float) -> Ensemble:
    """The four Pauli-encoded states ``(U_i (x) I) rho_AB (U_i (x) I)^dag``, equally weighted."""
    rho = werner_state(q).matrix
    states = []
    for u in DENSE_CODING_ENCODINGS:
        uu = np.kron(u, I2)
        states.append(DensityMatrix(uu @ rho @ uu.conj().T))
    return Ensemble((0.25,) * 4, tuple(states))


def dense_coding_chi_direct(p: float, q: float) -> float:
    """Holevo quantity of the encoded ensemble sent through damping on Alice's qubit.

    Damping does not commute with the Pauli encodings, so this generally
    differs from :func:`dense_coding_eval`; both are reported side by side.
    """
    _check_prob(p=p, q=q)
    return holevo_chi(extend_with_identity(make_amplitude_damping(p), 2), dense_coding_ensemble(q))
