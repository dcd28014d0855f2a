"""Acceptance suite: one test per release criterion, each printing a PASS/FAIL
line (run with `pytest -s tests/test_acceptance.py` to see them inline).

Criterion 2 asserts the stated reference envelope
e^{-(|a|^2-|a'|^2)/2}(|a|/|a'|)^k and the below-1e-7-by-k=40 threshold
literally; the exact mode-norm ratios provably satisfy only the wider envelope
e^{-(|a|^2-|a'|^2)}(|a|/|a'|)^k and cross 1e-7 at k=43, so those two sub-checks
fail by construction.  The companion facts are asserted in tests/test_u1.py.
"""

import math
import time

import numpy as np
import pytest

from asymmodes import (
    DegradationModel,
    SU2Representation,
    U1Representation,
    angular_momentum_monotone,
    apply_reduced,
    apply_superop,
    coherent_state,
    covariance_residual,
    degrade_trajectory,
    degrade_via_channel,
    distinguish_success_probability,
    haar_angles,
    missing_mode_family,
    mode_monotone,
    mode_monotone_table,
    orthonormality_residual,
    pure_mode_norm,
    random_covariant_channel,
    random_density_matrix,
    reduce_covariant,
    second_moment_monotone,
    tensor_basis_general,
    trace_norm,
    transition_bound,
)
from asymmodes.su2 import quadrature_mode_components


def report(num: int, ok: bool, detail: str):
    print(f"[acceptance] criterion {num}: {'PASS' if ok else 'FAIL'} - {detail}")


def test_criterion_1_psi_n_monotone_table():
    start = time.perf_counter()
    worst = 0.0
    for n in (2, 4, 8, 16, 64):
        rep = U1Representation(tuple(range(1, n + 1)))
        psi = np.full(n, 1 / np.sqrt(n), dtype=complex)
        rho = np.outer(psi, psi.conj())
        for k in range(-n, n + 1):
            worst = max(worst, abs(mode_monotone(rho, rep, k) - (1 - abs(k) / n)))
    elapsed = time.perf_counter() - start
    ok = worst <= 1e-12 and elapsed < 1.0
    report(1, ok, f"max |F_k - (1-|k|/N)| = {worst:.2e}, {elapsed:.2f}s")
    assert worst <= 1e-12
    assert elapsed < 1.0


def test_criterion_2_amplifier_infeasibility():
    start = time.perf_counter()
    src = coherent_state(1.0, 60)
    dst = coherent_state(1.5, 60)
    bound = transition_bound(src.density, dst.density, src.representation, tol=0.0)

    ratio_err = max(
        abs(bound.per_mode[k] - min(1.0, pure_mode_norm(src.amplitudes, k)
                                    / pure_mode_norm(dst.amplitudes, k)))
        for k in range(0, 56))
    envelope = {k: math.exp(-(1.0 - 1.5**2) / 2) * (1.0 / 1.5) ** k for k in range(0, 56)}
    envelope_excess = max(bound.per_mode[k] - envelope[k] for k in range(0, 56))
    at_k40 = bound.per_mode[40]
    elapsed = time.perf_counter() - start

    checks = []
    if ratio_err > 1e-12:
        checks.append(f"per-k bound differs from the amplitude-ratio formula by {ratio_err:.2e}")
    if envelope_excess > 1e-10:
        checks.append(f"bound exceeds e^(-(a^2-a'^2)/2)(a/a')^k by up to {envelope_excess:.2e}")
    if not at_k40 < 1e-7:
        checks.append(f"bound at k=40 is {at_k40:.3e}, not below 1e-7")
    ok = not checks and elapsed < 1.0
    report(2, ok, "; ".join(checks) if checks else f"all sub-checks hold, {elapsed:.2f}s")
    assert elapsed < 1.0
    if checks:
        pytest.fail("; ".join(checks))


def test_criterion_3_tensor_basis_covariance():
    start = time.perf_counter()
    reps = [SU2Representation.spin(tj / 2) for tj in range(1, 9)]
    reps += [
        SU2Representation(((0, 1), (1, 1), (2, 1))),
        SU2Representation(((1, 2), (3, 1))),
        SU2Representation(((0, 2), (2, 2), (4, 1))),
        SU2Representation(((4, 2), (3, 1), (2, 1), (0, 2))),   # dim 19
    ]
    angles = haar_angles(np.random.default_rng(12345), 100)
    worst_cov, worst_gram = 0.0, 0.0
    for rep in reps:
        assert rep.dim <= 20
        basis = tensor_basis_general(rep)
        worst_cov = max(worst_cov, covariance_residual(basis, rep, rep, angles))
        worst_gram = max(worst_gram, orthonormality_residual(basis))
    elapsed = time.perf_counter() - start
    ok = worst_cov < 1e-10 and worst_gram < 1e-12 and elapsed < 30
    report(3, ok, f"covariance {worst_cov:.2e}, Gram {worst_gram:.2e}, {elapsed:.1f}s")
    assert worst_cov < 1e-10
    assert worst_gram < 1e-12
    assert elapsed < 30


def test_criterion_4_dual_path_mode_projection():
    start = time.perf_counter()
    rng = np.random.default_rng(2024)
    reps = [SU2Representation.spin(tj / 2) for tj in range(1, 7)]
    reps += [SU2Representation(((1, 1), (2, 1))), SU2Representation(((0, 1), (2, 1), (4, 1)))]
    worst = 0.0
    for rep in reps:
        d = rep.dim
        xs = rng.normal(size=(50, d, d)) + 1j * rng.normal(size=(50, d, d))
        basis = tensor_basis_general(rep)
        modes = sorted({(tmu, tm) for (tmu, tm, a) in basis.ops})
        quad = quadrature_mode_components(xs, rep, modes)
        for (tmu, tm) in modes:
            masked = np.zeros_like(xs)
            for (u, m, a), t in basis.ops.items():
                if (u, m) == (tmu, tm):
                    masked += np.einsum("n,ad->nad", np.einsum("ad,nad->n", t.conj(), xs), t)
            worst = max(worst, float(np.abs(masked - quad[(tmu, tm)]).max()))
    elapsed = time.perf_counter() - start
    ok = worst < 1e-8 and elapsed < 30
    report(4, ok, f"max |basis - quadrature| = {worst:.2e}, {elapsed:.1f}s")
    assert worst < 1e-8
    assert elapsed < 30


def test_criterion_5_reduction_faithfulness():
    start = time.perf_counter()
    rng = np.random.default_rng(777)
    pairs = [
        (SU2Representation.spin(0.5), SU2Representation.spin(0.5)),
        (SU2Representation.spin(1), SU2Representation.spin(1)),
        (SU2Representation.spin(1.5), SU2Representation.spin(1.5)),
        (SU2Representation.spin(2), SU2Representation.spin(2)),
        (SU2Representation.spin(1), SU2Representation.spin(2)),
        (SU2Representation.spin(2), SU2Representation.spin(1)),
        (SU2Representation.spin(0.5), SU2Representation.spin(1.5)),
        (SU2Representation(((0, 1), (2, 1))), SU2Representation.spin(1)),
        (SU2Representation(((1, 2),)), SU2Representation(((1, 1), (3, 1)))),
        (SU2Representation(((2, 2),)), SU2Representation(((2, 2),))),
    ]
    worst = 0.0
    for i in range(100):
        in_rep, out_rep = pairs[i % len(pairs)]
        assert in_rep.dim <= 16 and out_rep.dim <= 16
        chan = random_covariant_channel(in_rep, out_rep, rng)
        in_basis = tensor_basis_general(in_rep)
        out_basis = tensor_basis_general(out_rep)
        coeffs, residual = reduce_covariant(chan, in_basis, out_basis)
        worst = max(worst, residual)
        for _ in range(2):
            x = rng.normal(size=(in_rep.dim,) * 2) + 1j * rng.normal(size=(in_rep.dim,) * 2)
            err = trace_norm(apply_reduced(coeffs, x) - apply_superop(chan, x))
            worst = max(worst, err)

    half = SU2Representation.spin(0.5)
    bhalf = tensor_basis_general(half)
    chan = random_covariant_channel(half, half, rng)
    coeffs, _ = reduce_covariant(chan, bhalf, bhalf)
    one_param = (coeffs.ranks() == [0, 2]
                 and abs(coeffs.coefficient(0) - 1.0) < 1e-9
                 and abs(coeffs.coefficient(1).imag) < 1e-9)
    elapsed = time.perf_counter() - start
    ok = worst <= 1e-9 and one_param and elapsed < 60
    report(5, ok, f"max reconstruction error {worst:.2e}, spin-1/2 free params = 1: {one_param}, {elapsed:.1f}s")
    assert worst <= 1e-9
    assert one_param
    assert elapsed < 60


def test_criterion_6_monotonicity_suite():
    start = time.perf_counter()
    rng = np.random.default_rng(999)
    js = [0.5, 1, 1.5, 2, 2.5, 3]
    worst_violation = -np.inf
    for i in range(200):
        j = js[i % len(js)]
        rep = SU2Representation.spin(j)
        chan = random_covariant_channel(rep, rep, rng)
        rho = random_density_matrix(rep.dim, rng)
        out = apply_superop(chan, rho)
        before = mode_monotone_table(rho, rep)
        after = mode_monotone_table(out, rep)
        for mode, v in after.entries.items():
            worst_violation = max(worst_violation, v - before.entries[mode])
        worst_violation = max(worst_violation,
                              angular_momentum_monotone(out, j) - angular_momentum_monotone(rho, j))
        worst_violation = max(worst_violation,
                              second_moment_monotone(out, j) - second_moment_monotone(rho, j))
    mixed_ok = True
    for j in js:
        rep = SU2Representation.spin(j)
        table = mode_monotone_table(np.eye(rep.dim, dtype=complex) / rep.dim, rep)
        mixed_ok = mixed_ok and table.nonzero(tol=1e-12) == {(0, 0)}
    elapsed = time.perf_counter() - start
    ok = worst_violation <= 1e-9 and mixed_ok and elapsed < 60
    report(6, ok, f"worst monotone increase {worst_violation:.2e}, mixed fixed point: {mixed_ok}, {elapsed:.1f}s")
    assert worst_violation <= 1e-9
    assert mixed_ok
    assert elapsed < 60


def test_criterion_7_psucc_formula_vs_twirl_oracle():
    start = time.perf_counter()
    rng = np.random.default_rng(4242)
    worst = 0.0
    for j in (0.5, 1, 1.5, 2):
        for _ in range(20):
            rho = random_density_matrix(int(2 * j) + 1, rng)
            res = distinguish_success_probability(rho, j, oracle=True)
            worst = max(worst, res.delta)
    up = np.diag([1.0, 0.0]).astype(complex)
    pure_val = distinguish_success_probability(up, 0.5, oracle=True)
    pure_ok = abs(pure_val.formula - 0.75) < 1e-12 and pure_val.delta < 1e-8
    elapsed = time.perf_counter() - start
    ok = worst < 1e-8 and pure_ok and elapsed < 60
    report(7, ok, f"max |formula - oracle| = {worst:.2e}, pure-frame 0.75: {pure_ok}, {elapsed:.1f}s")
    assert worst < 1e-8
    assert pure_ok
    assert elapsed < 60


def test_criterion_8_degradation_consistency():
    start = time.perf_counter()
    rng = np.random.default_rng(31337)
    worst = 0.0
    for j in (0.5, 1, 1.5):
        rep = SU2Representation.spin(j)
        chan = random_covariant_channel(rep, rep, rng)
        basis = tensor_basis_general(rep)
        coeffs, _ = reduce_covariant(chan, basis, basis)
        model = DegradationModel(int(2 * j),
                                 {tmu // 2: coeffs.mu_blocks[tmu][0, 0].real
                                  for tmu in coeffs.mu_blocks})
        rho0 = random_density_matrix(rep.dim, rng)
        closed = degrade_trajectory(rho0, model, 10)
        iterated = degrade_via_channel(rho0, chan, 10)
        for a, b in zip(closed.steps, iterated.steps):
            for key in a.tensor_expectations:
                worst = max(worst, abs(a.tensor_expectations[key] - b.tensor_expectations[key]))
            worst = max(worst, abs(a.lz2_mean - b.lz2_mean))

    j = 1.0
    sat = j * (j + 1) / 3
    model = DegradationModel(2, {1: 0.8, 2: 0.6})
    rho0 = np.diag([0.7, 0.2, 0.1]).astype(complex)
    traj = degrade_trajectory(rho0, model, 40)
    gaps = [abs(s.lz2_mean - sat) for s in traj.steps]
    saturating = all(b <= a + 1e-12 for a, b in zip(gaps, gaps[1:])) and gaps[-1] < 1e-8
    elapsed = time.perf_counter() - start
    ok = worst <= 1e-9 and saturating and elapsed < 10
    report(8, ok, f"max dual-path deviation {worst:.2e}, <Lz^2> saturates: {saturating}, {elapsed:.1f}s")
    assert worst <= 1e-9
    assert saturating
    assert elapsed < 10


def test_criterion_9_missing_mode_family():
    start = time.perf_counter()
    result = missing_mode_family(2)
    f1 = max(result.rank1_norms[2], result.rank1_norms[-2])
    elapsed = time.perf_counter() - start
    ok = f1 < 1e-12 and result.min_rotation_overlap < 0.99 and elapsed < 10
    report(9, ok, f"F_(1,+-1) = {f1:.2e}, min rotation overlap {result.min_rotation_overlap:.3f}, {elapsed:.1f}s")
    assert f1 < 1e-12
    assert result.min_rotation_overlap < 0.99
    assert elapsed < 10
