import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from noisy_channels.catalog import (
    closed_form_exchange_matrix,
    closed_form_qubit_eval,
    damped_werner_state,
    dense_coding_chi_direct,
    dense_coding_ensemble,
    dense_coding_eval,
    dense_coding_rate_generic,
    dense_coding_xi,
    generic_qubit_eval,
    make_amplitude_damping,
    make_amplitude_damping_pf,
    make_bit_flip_pf,
    werner_state,
)
from noisy_channels.channels import BlochVector, DensityMatrix, apply_channel, entropy_exchange, exchange_matrix, validate_cptp
from noisy_channels.errors import ParamOutOfRangeError
from noisy_channels.numerics import binary_entropy, hermitian_eigenvalues, partial_trace

H_025 = 0.8112781244591328
# frozen from a numpy.linalg.eigvalsh evaluation of the four encoded states (independent of the Jacobi path)
CHI_DC_HALF_HALF = 0.41508793872856575
CHI_DIRECT_HALF_HALF = 0.2263660631876987
CHI_DC_03_02 = 0.8444248915250998
CHI_DIRECT_03_02 = 0.7784929469005906

A_SAMPLE = BlochVector(0.3, -0.4, 0.5)
GRID = np.linspace(0, 1, 11)
bloch_vectors = st.tuples(*[st.floats(-1, 1)] * 3).map(
    lambda v: BlochVector(*(x / max(1.0, math.sqrt(sum(y * y for y in v))) for x in v)))


def test_identity_at_zero_noise():
    rho = A_SAMPLE.to_density()
    for ch in (make_amplitude_damping_pf(0, 0.3), make_bit_flip_pf(0, 0.7), make_amplitude_damping(0)):
        np.testing.assert_allclose(apply_channel(ch, rho).matrix, rho.matrix, atol=1e-15)


def test_ad_q0_is_standard_damping():
    p = 0.35
    ch = make_amplitude_damping_pf(p, 0)
    assert np.all(ch.operators[2] == 0)
    for a, b in zip(ch.operators[:2], make_amplitude_damping(p).operators):
        np.testing.assert_allclose(a, b, atol=0)


def test_ad_q1_is_phase_flip():
    p = 0.35
    ch = make_amplitude_damping_pf(p, 1)
    assert np.all(ch.operators[1] == 0)
    out = BlochVector.from_density(apply_channel(ch, A_SAMPLE.to_density()))
    r = math.sqrt(1 - p)
    np.testing.assert_allclose(out.as_tuple(), (0.3 * r, -0.4 * r, 0.5), atol=1e-15)


def test_bf_limits():
    a = A_SAMPLE
    out = BlochVector.from_density(apply_channel(make_bit_flip_pf(0.5, 0), a.to_density()))
    np.testing.assert_allclose(out.as_tuple(), (0.3, 0, 0), atol=1e-15)
    p = 0.2
    out = BlochVector.from_density(apply_channel(make_bit_flip_pf(p, 1), a.to_density()))
    np.testing.assert_allclose(out.as_tuple(), (0.3 * (1 - 2 * p), -0.4 * (1 - 2 * p), 0.5), atol=1e-15)


@pytest.mark.parametrize("make", [make_amplitude_damping_pf, make_bit_flip_pf])
@pytest.mark.parametrize("p, q", [(-0.1, 0.5), (1.1, 0.5), (0.5, -1e-3), (0.5, 2), (math.nan, 0.5)])
def test_param_range(make, p, q):
    with pytest.raises(ParamOutOfRangeError):
        make(p, q)


@pytest.mark.parametrize("p", [-0.5, 1.5])
def test_param_range_single(p):
    with pytest.raises(ParamOutOfRangeError):
        make_amplitude_damping(p)
    with pytest.raises(ParamOutOfRangeError):
        werner_state(p)


def test_families_complete_on_grid():
    for p in GRID:
        for q in GRID:
            assert validate_cptp(make_amplitude_damping_pf(p, q)).deviation <= 1e-15
            assert validate_cptp(make_bit_flip_pf(p, q)).deviation <= 1e-15


@pytest.mark.parametrize("p, q", [(0.2, 0.1), (0.7, 0.9), (1.0, 0.0)])
def test_closed_form_ground_state_fixed_point(p, q):
    ev = closed_form_qubit_eval("ad", BlochVector(0, 0, 1), p, q)
    np.testing.assert_allclose(ev.b, (0, 0, 1), atol=1e-15)
    assert ev.coherent_information == pytest.approx(0, abs=1e-12)
    assert ev.entropy_exchange == pytest.approx(0, abs=1e-12)


def test_closed_form_bit_flip_example():
    ev = closed_form_qubit_eval("bf", BlochVector(0, 0, 1), 0.5, 0.5)
    assert ev.entropy_exchange == pytest.approx(H_025, abs=1e-12)
    assert ev.coherent_information == pytest.approx(0, abs=1e-12)


@settings(max_examples=60, deadline=None)
@given(a=bloch_vectors, p=st.floats(0, 1), q=st.floats(0, 1), family=st.sampled_from(["ad", "bf"]))
def test_closed_form_matches_generic(a, p, q, family):
    c = closed_form_qubit_eval(family, a, p, q)
    g = generic_qubit_eval(family, a, p, q)
    assert np.max(np.abs(np.subtract(c.b, g.b))) <= 1e-12
    assert np.max(np.abs(c.w - g.w)) <= 1e-12
    np.testing.assert_allclose(c.theta, g.theta, atol=1e-12)
    assert abs(c.theta.sum() - 1) <= 1e-15
    assert abs(c.entropy_exchange - g.entropy_exchange) <= 1e-10
    assert abs(c.coherent_information - g.coherent_information) <= 1e-10


def test_w12_discrepancy_witness():
    a, p, q = BlochVector(0.8, 0.3, 0.3), 0.5, 0.5
    generic = exchange_matrix(make_amplitude_damping_pf(p, q), a.to_density())
    derived = closed_form_exchange_matrix("ad", a, p, q, "derived")
    printed = closed_form_exchange_matrix("ad", a, p, q, "printed")
    assert abs(derived[0, 1] - generic[0, 1]) <= 1e-12
    assert abs(printed[0, 1] - generic[0, 1]) > 1e-2
    # only the (0,1)/(1,0) entries differ
    mask = np.ones((3, 3), bool)
    mask[0, 1] = mask[1, 0] = False
    np.testing.assert_allclose(printed[mask], generic[mask], atol=1e-12)


def test_printed_w12_can_be_indefinite():
    w = closed_form_exchange_matrix("ad", BlochVector(0.8, 0.3, 0.3), 0.5, 0.5, "printed")
    assert hermitian_eigenvalues(w)[-1] < -1e-3
    ev = closed_form_qubit_eval("ad", BlochVector(0.8, 0.3, 0.3), 0.5, 0.5, "printed")
    assert math.isfinite(ev.entropy_exchange)


def test_make_amplitude_damping_entropy_exchange_on_mixed():
    rho = BlochVector(0, 0, 0).to_density()
    for p in GRID:
        assert entropy_exchange(make_amplitude_damping(p), rho) == pytest.approx(binary_entropy(p / 2), abs=1e-12)


def test_werner_examples():
    np.testing.assert_allclose(werner_state(0).spectrum, [1, 0, 0, 0], atol=1e-14)
    np.testing.assert_allclose(werner_state(1).matrix, np.eye(4) / 4, atol=1e-15)
    np.testing.assert_allclose(werner_state(0.5).spectrum, [0.625, 0.125, 0.125, 0.125], atol=1e-14)


@pytest.mark.parametrize("q", GRID)
def test_werner_marginal_is_maximally_mixed(q):
    rho_b = DensityMatrix(partial_trace(werner_state(q).matrix, 2, 2, keep="second"))
    np.testing.assert_allclose(rho_b.matrix, np.eye(2) / 2, atol=1e-15)
    assert rho_b.entropy() == pytest.approx(1.0, abs=1e-14)


@pytest.mark.parametrize("p, q, xi, chi", [
    (0, 0, [1, 0, 0, 0], 2.0),
    (0, 1, [0.25] * 4, 0.0),
    (1, 0, [0.5, 0.5, 0, 0], 1.0),
    (1, 0.5, [0.5, 0.5, 0, 0], 1.0),
    (1, 1, [0.5, 0.5, 0, 0], 1.0),
])
def test_dense_coding_examples(p, q, xi, chi):
    ev = dense_coding_eval(p, q)
    np.testing.assert_allclose(ev.xi, xi, atol=1e-15)
    assert ev.chi == pytest.approx(chi, abs=1e-12)


def test_dense_coding_xi_matches_numeric_on_grid():
    for p in GRID:
        for q in GRID:
            ev = dense_coding_eval(p, q)
            np.testing.assert_allclose(ev.xi, damped_werner_state(p, q).spectrum, atol=1e-10)
            assert abs(ev.xi.sum() - 1) <= 1e-10 and ev.xi.min() >= 0 and ev.xi.max() <= 1
            assert ev.chi == 1 + 1 - ev.output_entropy
            assert abs(ev.chi - dense_coding_rate_generic(p, q)) <= 1e-10


def test_printed_xi_exponent_disagrees_inside_the_square():
    numeric = damped_werner_state(0.4, 0.5).spectrum
    assert np.max(np.abs(dense_coding_xi(0.4, 0.5, "printed") - numeric)) > 1e-3
    # the two exponents coincide on the edges q = 0 and q = 1
    for q in (0.0, 1.0):
        np.testing.assert_allclose(dense_coding_xi(0.4, q, "printed"), damped_werner_state(0.4, q).spectrum, atol=1e-12)


def test_dense_coding_entropy_exchange_matches_generic():
    avg = dense_coding_ensemble(0.5).average()
    rho_a = DensityMatrix(partial_trace(avg.matrix, 2, 2, keep="first"))
    np.testing.assert_allclose(rho_a.matrix, np.eye(2) / 2, atol=1e-15)
    for p in GRID:
        assert abs(dense_coding_eval(p, 0.5).entropy_exchange - entropy_exchange(make_amplitude_damping(p), rho_a)) <= 1e-12


@pytest.mark.parametrize("p, q, expected", [
    (0, 0, 2.0),
    (0, 1, 0.0),
    (0.5, 0.5, CHI_DIRECT_HALF_HALF),
    (0.3, 0.2, CHI_DIRECT_03_02),
])
def test_dense_coding_direct_ensemble(p, q, expected):
    assert dense_coding_chi_direct(p, q) == pytest.approx(expected, abs=1e-10)


def test_direct_ensemble_gap_is_reported_not_zero():
    assert dense_coding_eval(0.5, 0.5).chi == pytest.approx(CHI_DC_HALF_HALF, abs=1e-12)
    assert dense_coding_eval(0.3, 0.2).chi == pytest.approx(CHI_DC_03_02, abs=1e-12)
    assert dense_coding_eval(0.5, 0.5).chi - dense_coding_chi_direct(0.5, 0.5) > 0.1
