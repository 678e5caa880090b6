import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from finite_radon.geometry import make_geometry
from finite_radon.phase_space import PointMarginals
from finite_radon.tomography import (
    InvalidStateError,
    MeasurementRecord,
    estimate_marginals,
    exact_marginals,
    fidelity,
    point_expansion,
    project_psd,
    random_density_matrix,
    random_pure_state,
    reconstruct_state,
    simulate_measurements,
    trace_distance,
)


def ket0(d):
    rho = np.zeros((d, d), dtype=complex)
    rho[0, 0] = 1
    return rho


def test_eigenstate_counts(g3):
    rec = simulate_measurements(ket0(3), 500, 1, g3)
    assert rec.counts[0].tolist() == [500, 0, 0]


def test_unbiased_basis_frequencies(g3):
    n = 1_000_000
    rec = simulate_measurements(ket0(3), n, 3, g3)
    # 5 sigma for a binomial with p = 1/3
    tol = 5 * np.sqrt(2 / 9 / n)
    for b in range(0, 3):
        assert np.abs(rec.counts[b + 1] / n - 1 / 3).max() < tol


def test_deterministic(g3, rng):
    rho = random_density_matrix(3, rng)
    r1 = simulate_measurements(rho, 100, 42, g3)
    r2 = simulate_measurements(rho, 100, 42, g3)
    r3 = simulate_measurements(rho, 100, 43, g3)
    assert np.array_equal(r1.counts, r2.counts)
    assert not np.array_equal(r1.counts, r3.counts)
    assert (r1.counts.sum(axis=1) == 100).all()


def test_invalid_inputs(g3):
    with pytest.raises(ValueError):
        simulate_measurements(ket0(3), 0, 0, g3)
    with pytest.raises(InvalidStateError, match="trace"):
        simulate_measurements(2 * ket0(3), 10, 0, g3)
    with pytest.raises(InvalidStateError, match="Hermitian"):
        simulate_measurements(ket0(3) + np.triu(np.ones((3, 3)), 1) * 0.1, 10, 0, g3)
    with pytest.raises(InvalidStateError, match="positive"):
        simulate_measurements(np.diag([1.5, -0.5, 0]).astype(complex), 10, 0, g3)


def test_record_validation():
    with pytest.raises(ValueError):
        MeasurementRecord(3, 10, np.array([[10, 0, 0]] * 3 + [[9, 0, 0]]))
    with pytest.raises(ValueError):
        MeasurementRecord(3, 10, np.zeros((3, 3)))


def test_estimate_marginals():
    rec = MeasurementRecord(3, 6, np.full((4, 3), 2))
    assert np.allclose(estimate_marginals(rec).values, 1 / 3)
    counts = np.full((4, 3), 2)
    counts[2] = [6, 0, 0]
    p = estimate_marginals(MeasurementRecord(3, 6, counts))
    assert p.column(1).tolist() == [1.0, 0.0, 0.0]
    for b in range(-1, 3):
        assert p.column(b).sum() == pytest.approx(1)


@pytest.mark.parametrize("d", [3, 5, 7])
def test_exact_reconstruction(geometries, rng, d):
    g = geometries[d]
    for _ in range(20):
        rho = random_density_matrix(d, rng)
        rep = reconstruct_state(exact_marginals(rho, g), g, true_rho=rho)
        assert np.abs(rep.rho_hat - rho).max() < 1e-12
        assert rep.fidelity == pytest.approx(1, abs=1e-9)
        assert rep.trace_distance < 1e-12


def test_mixed_marginals_give_mixed_state(g3):
    rep = reconstruct_state(PointMarginals(3, np.full(12, 1 / 3)), g3)
    assert np.abs(rep.rho_hat - np.eye(3) / 3).max() < 1e-12
    assert rep.fidelity is None and rep.trace_distance is None


def test_point_expansion_closed_form(geometries, rng):
    g = geometries[5]
    p = estimate_marginals(simulate_measurements(random_density_matrix(5, rng), 50, 0, g))
    rep = reconstruct_state(p, g)
    assert np.abs(rep.rho_hat - point_expansion(p, g)).max() < 1e-12


@settings(max_examples=30, deadline=None)
@given(st.sampled_from([3, 5]), st.integers(1, 2000), st.integers(0, 2**32))
def test_estimate_is_hermitian_unit_trace(d, shots, seed):
    g = make_geometry(d)
    psi = random_pure_state(d, np.random.default_rng(seed))
    rec = simulate_measurements(np.outer(psi, psi.conj()), shots, seed, g)
    rho_hat = reconstruct_state(estimate_marginals(rec), g).rho_hat
    assert np.abs(rho_hat - rho_hat.conj().T).max() < 1e-12
    assert abs(np.trace(rho_hat) - 1) < 1e-9


def test_project_psd(g3):
    rec = simulate_measurements(ket0(3), 20, 5, g3)
    raw = reconstruct_state(estimate_marginals(rec), g3, true_rho=ket0(3))
    proj = reconstruct_state(estimate_marginals(rec), g3, project_psd_flag=True, true_rho=ket0(3))
    assert raw.min_eigenvalue < 0
    assert proj.min_eigenvalue > -1e-12
    assert np.trace(proj.rho_hat).real == pytest.approx(1, abs=1e-12)
    assert proj.projected
    w = np.linalg.eigvalsh(project_psd(np.diag([0.7, 0.5, -0.2]).astype(complex)))
    assert np.allclose(sorted(w), [0, 0.5 / 1.2, 0.7 / 1.2])


def test_fidelity_and_trace_distance(rng):
    psi = random_pure_state(3, rng)
    rho = np.outer(psi, psi.conj())
    sigma = random_density_matrix(3, rng)
    # pure-state reduction
    assert fidelity(rho, sigma) == pytest.approx(np.vdot(psi, sigma @ psi).real, abs=1e-12)
    assert fidelity(sigma, sigma) == pytest.approx(1, abs=1e-9)
    # commuting states: classical fidelity and half L1 distance
    a, b = np.array([0.5, 0.3, 0.2]), np.array([0.1, 0.6, 0.3])
    assert fidelity(np.diag(a), np.diag(b)) == pytest.approx(np.sum(np.sqrt(a * b)) ** 2, abs=1e-12)
    assert trace_distance(np.diag(a), np.diag(b)) == pytest.approx(0.5 * np.abs(a - b).sum(), abs=1e-12)


def test_error_shrinks_with_shots(g3):
    med = []
    for n in (100, 10_000):
        tds = []
        for s in range(20):
            psi = random_pure_state(3, np.random.default_rng(s))
            rho = np.outer(psi, psi.conj())
            rep = reconstruct_state(estimate_marginals(simulate_measurements(rho, n, s, g3)), g3, true_rho=rho)
            tds.append(rep.trace_distance)
        med.append(np.median(tds))
    assert med[1] < med[0]
