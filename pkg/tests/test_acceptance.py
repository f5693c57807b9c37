"""Acceptance suite: one test per criterion, printing a pass/fail line each.

Four clause-level checks (suffixed `_as_stated`) are known to fail for
verified physical or numerical reasons; each carries the measured value in
its assertion message and sits next to a companion test pinning the actual
behavior.  See the README's acceptance section.  Everything else must pass
at its stated tolerance.
"""

import numpy as np
import pytest
from scipy.stats import spearmanr

from pxp_ergotropy import (
    build_chain_basis,
    dense_eigh,
    entanglement_spectrum,
    entropy_of,
    ergotropy,
    half_chain_geometry,
    interpolate,
    pxp_hamiltonian,
    qfi_density,
    quench_series,
    rotated_state,
    steady_average,
    transfer_analytics,
)
from pxp_ergotropy.analytics import (
    analytic_energy_density,
    numeric_single_cut_spectrum,
    numeric_transfer_eigenvalues,
)
from pxp_ergotropy.dynamics import evolve_eigenbasis, evolve_krylov
from pxp_ergotropy.fits import extrapolate_ergotropy_density, fit_sq_over_q
from pxp_ergotropy.hilbert import (
    CutGeometry,
    inversion_permutation,
    translation_permutation,
)
from pxp_ergotropy.states import StateVector, z2_config
from oracles import full_pxp, legal_configs, partial_trace, rotated_projected

SWEEP_SIZES = (10, 12, 14, 16, 18)
SWEEP_LAMBDAS = tuple(np.round(np.linspace(0.0, 1.0, 21), 3))


def report(name, ok, details):
    print(f"[{'PASS' if ok else 'FAIL'}] {name}: {details}")


@pytest.fixture(scope="session")
def eigensweep(split_cache):
    """Ensemble means of (W, Q, S_vN, f_Q) per (L, lambda), figure convention."""
    table = {}
    for L in SWEEP_SIZES:
        _, _, split = split_cache(L)
        geometry = half_chain_geometry(L)
        for lam in SWEEP_LAMBDAS:
            Ws, Qs, Ss, Fs = [], [], [], []
            for thermal in split.thermal:
                state = interpolate(split.scar, thermal, 1.0 - lam)
                br = ergotropy(state, geometry)
                Ws.append(br.W)
                Qs.append(br.Q)
                Ss.append(entropy_of(state, geometry))
                Fs.append(qfi_density(state))
                if lam == 0.0:
                    break
            table[(L, lam)] = (np.mean(Ws), np.mean(Qs), np.mean(Ss), np.mean(Fs))
    return table


@pytest.fixture(scope="session")
def theta_sweep():
    """Steady-state summary over the default 9-angle grid at L = 16."""
    thetas = np.linspace(0.0, np.pi / 2, 9)
    out = []
    for theta in thetas:
        series = quench_series(16, theta, t_max=1000.0, dt=0.5)
        w, q, s = steady_average(series, (100.0, 1000.0))
        out.append((theta, w, q, s, series.W[0]))
    return np.array(out)


# --- criterion: basis correctness ------------------------------------------

def test_criterion_basis_correctness():
    fib = {1: 2, 2: 3}
    for L in range(3, 15):
        fib[L] = fib[L - 1] + fib[L - 2]
    ok = True
    for L in range(2, 15):
        per = build_chain_basis(L, "periodic")
        opn = build_chain_basis(L, "open")
        ok &= per.dimension == len(legal_configs(L, periodic=True))
        ok &= list(per.configs) == legal_configs(L, periodic=True)
        ok &= opn.dimension == fib[L]
    report("basis correctness (L=2..14 exact)", ok, "periodic=brute force, open=Fibonacci")
    assert ok


# --- criterion: spectral symmetry ------------------------------------------

def test_criterion_spectral_symmetry():
    worst = 0.0
    for L in (10, 12):
        vals = dense_eigh(pxp_hamiltonian(build_chain_basis(L, "periodic"))).eigenvalues
        worst = max(worst, float(np.abs(vals + vals[::-1]).max()))
    report("spectral +-E pairing at L=10,12", worst < 1e-9, f"max residual {worst:.2e}")
    assert worst < 1e-9


# --- criterion: brute-force oracle equivalence ------------------------------

def test_criterion_bruteforce_oracle(rng):
    worst_h = worst_rho = worst_rot = 0.0
    for L in (4, 6, 8, 10):
        basis = build_chain_basis(L, "periodic")
        configs = legal_configs(L, periodic=True)
        H = pxp_hamiltonian(basis).toarray()
        worst_h = max(worst_h, float(np.abs(H - full_pxp(L)[np.ix_(configs, configs)]).max()))

        v = rng.normal(size=basis.dimension) + 1j * rng.normal(size=basis.dimension)
        v /= np.linalg.norm(v)
        state = StateVector(basis, v)
        full = np.zeros(1 << L, dtype=complex)
        full[basis.configs] = v
        geometries = [half_chain_geometry(L)]
        if L >= 6:
            geometries.append(CutGeometry(L, ((0, 2), (L // 2, L // 2 + 2))))
        for geom in geometries:
            from pxp_ergotropy.entanglement import reduced_density

            rho = reduced_density(state, geom)
            oracle = partial_trace(full, L, list(geom.region_sites))
            rb = rho.basis
            words, offset = [0], 0
            for (a, b), piece in zip(rb.intervals, rb.bases):
                words = [w | (int(p) << offset) for w in words for p in piece.configs]
                offset += b - a
            words = np.array(words)
            lib = np.zeros_like(oracle)
            sw = words[np.argsort(rb.pack_indices(words))]
            lib[np.ix_(sw, sw)] = rho.matrix
            worst_rho = max(worst_rho, float(np.abs(lib - oracle).max()))

        for theta in (0.4, np.pi / 2):
            st, surv = rotated_state(basis, theta)
            amps, surv_o = rotated_projected(L, theta)
            worst_rot = max(worst_rot, float(np.abs(st.amplitudes.real - amps).max()), abs(surv - surv_o))
    ok = worst_h < 1e-12 and worst_rho < 1e-12 and worst_rot < 1e-12
    report(
        "brute-force oracle equivalence (L<=10)",
        ok,
        f"H dev {worst_h:.1e}, rho dev {worst_rho:.1e}, rotation dev {worst_rot:.1e}",
    )
    assert ok


# --- criterion: scar separation ---------------------------------------------

def _symmetry_residuals(basis, vec):
    out = []
    for perm in (translation_permutation(basis), inversion_permutation(basis)):
        gv = np.zeros_like(vec)
        gv[perm] = vec
        out.append((np.linalg.norm(gv - vec), np.linalg.norm(gv + vec)))
    return out


@pytest.mark.parametrize("L", [12, 14, 16])
def test_criterion_scar_separation_quality(split_cache, L):
    basis, _, split = split_cache(L)
    top = split.fsa_weights[0]
    z2_idx = basis.index(z2_config(L))
    scar_ov = abs(split.scar.amplitudes[z2_idx]) ** 2
    thermal_ov = max(abs(t.amplitudes[z2_idx]) ** 2 for t in split.thermal)
    ok = top > 0.9 and scar_ov >= 10 * thermal_ov
    report(
        f"scar separation quality L={L}",
        ok,
        f"top weight {top:.4f}, overlap ratio {scar_ov / thermal_ov:.0f}x",
    )
    assert top > 0.9
    assert scar_ov >= 10 * thermal_ov


@pytest.mark.parametrize("L", [12, 16])
def test_criterion_scar_symmetry_L4N(split_cache, L):
    basis, _, split = split_cache(L)
    res = _symmetry_residuals(basis, split.scar.amplitudes)
    worst = max(plus for plus, _ in res)
    report(f"scar T/I invariance L={L}", worst < 1e-6, f"max |g v - v| = {worst:.2e}")
    assert worst < 1e-6


def test_criterion_scar_symmetry_L14_as_stated(split_cache):
    # stated form: T|scar> = |scar> within 1e-6 at L = 14.  The L = 14
    # zero-energy tower member carries momentum pi (T eigenvalue exactly -1),
    # so this clause cannot hold; the companion test below pins the actual
    # eigenvalue.  Kept as stated, expected to fail.
    basis, _, split = split_cache(14)
    res = _symmetry_residuals(basis, split.scar.amplitudes)
    worst = max(plus for plus, _ in res)
    report("scar T/I invariance L=14 (as stated)", worst < 1e-6, f"max |g v - v| = {worst:.2e}")
    assert worst < 1e-6, (
        f"T/I +1 invariance fails at L=14: |T v - v| = {worst:.3e}; "
        "the separated scar is an exact eigenstate with eigenvalue -1 "
        "(momentum-pi tower member), see companion test"
    )


def test_scar_L14_is_momentum_pi_eigenstate(split_cache):
    basis, _, split = split_cache(14)
    res = _symmetry_residuals(basis, split.scar.amplitudes)
    worst_minus = max(minus for _, minus in res)
    report("scar L=14 is an exact -1 eigenstate of T and I", worst_minus < 1e-10,
           f"max |g v + v| = {worst_minus:.2e}")
    assert worst_minus < 1e-10


# --- criterion: ergotropy scaling crossover ---------------------------------

def test_criterion_ergotropy_crossover(eigensweep):
    quad = (10, 12, 14, 16)
    w0 = [eigensweep[(L, 0.0)][0] / L for L in quad]
    spread = (max(w0) - min(w0)) / max(w0)
    w1 = [eigensweep[(L, 1.0)][0] / L for L in quad]
    monotone = bool(np.all(np.diff(w1) < 0))

    # crossover location on the extrapolated ergotropy density curve
    winf = {}
    for lam in SWEEP_LAMBDAS:
        pairs = [(L, eigensweep[(L, lam)][0] / L) for L in SWEEP_SIZES]
        winf[lam] = extrapolate_ergotropy_density(pairs, "scar").extras["limit"]
    half = 0.5 * winf[0.0]
    crossing = next((lam for lam in SWEEP_LAMBDAS if winf[lam] < half), None)
    ok = spread < 0.25 and monotone and crossing is not None and 0.4 <= crossing <= 0.8
    report(
        "ergotropy scaling crossover",
        ok,
        f"W/L(0) spread {spread:.1%}, W/L(1) monotone {monotone}, "
        f"extrapolated half-crossing at lambda = {crossing}",
    )
    assert spread < 0.25
    assert monotone
    assert crossing is not None and 0.4 <= crossing <= 0.8


# --- criterion: S^2/Q linearity ----------------------------------------------

def test_criterion_sq_over_q_linearity(eigensweep):
    family = (10, 14, 18)      # one parity family avoids the L=4N vs 4N+2 zigzag
    slopes = []
    ok = True
    details = []
    for lam in (0.0, 0.2, 0.3, 1.0):
        pairs = [(L, eigensweep[(L, lam)][2] ** 2 / eigensweep[(L, lam)][1]) for L in family]
        fit = fit_sq_over_q(pairs)
        slopes.append(fit.params["m"])
        details.append(f"lam={lam:g}: m={fit.params['m']:.4f} R2={fit.r2:.5f}")
        ok &= fit.r2 > 0.99
    increasing = bool(np.all(np.diff(slopes) > 0))
    ok &= increasing
    report("S^2/Q linear in L with growing slope", ok, "; ".join(details))
    assert ok


# --- criterion: QFI crossover ------------------------------------------------

def test_criterion_qfi_crossover(eigensweep):
    quad = np.array([10, 12, 14, 16], dtype=float)
    f0 = np.array([eigensweep[(int(L), 0.0)][3] for L in quad])
    f1 = np.array([eigensweep[(int(L), 1.0)][3] for L in quad])
    slope0 = np.polyfit(quad, f0, 1)[0]
    slope1 = np.polyfit(quad, f1, 1)[0]
    ok = slope0 > 0 and abs(slope1) < 0.2 * slope0
    report("QFI density crossover", ok, f"scar slope {slope0:.3f}, thermal slope {slope1:.3f}")
    assert slope0 > 0
    assert abs(slope1) < 0.2 * slope0


# --- criterion: transfer-matrix equivalence ----------------------------------

def test_criterion_transfer_equivalence():
    worst_eig = worst_h = worst_sum = 0.0
    hmax = 2.0 / (15.0 + 5.0 * np.sqrt(5.0))
    bound_ok = True
    for theta in np.linspace(0.0, np.pi, 50):
        ta = transfer_analytics(theta)
        l1, l2 = numeric_transfer_eigenvalues(theta)
        worst_eig = max(worst_eig, abs(l1 - ta.lambda1), abs(l2 - ta.lambda2))
        spec = numeric_single_cut_spectrum(theta)
        worst_h = max(worst_h, abs(spec[0] * spec[1] - ta.h))
        worst_sum = max(worst_sum, abs(sum(ta.two_cut) - 1.0))
        bound_ok &= ta.h <= hmax + 1e-12
    eq_at_half_pi = abs(transfer_analytics(np.pi / 2).h - hmax) < 1e-14
    ok = worst_eig < 1e-12 and worst_h < 1e-12 and worst_sum < 1e-14 and bound_ok and eq_at_half_pi
    report(
        "transfer-matrix closed forms vs numerics",
        ok,
        f"eig dev {worst_eig:.1e}, h dev {worst_h:.1e}, two-cut sum dev {worst_sum:.1e}, "
        f"h bound saturated at pi/2 {eq_at_half_pi}",
    )
    assert ok


# --- criterion: analytic-numeric state checks --------------------------------

def test_criterion_analytic_energy_density():
    worst = 0.0
    grid = np.linspace(0.0, np.pi / 2, 21)
    for L in (12, 16, 20):
        basis = build_chain_basis(L, "periodic")
        H = pxp_hamiltonian(basis)
        for theta in grid:
            st, _ = rotated_state(basis, theta)
            numeric = float(np.vdot(st.amplitudes, H @ st.amplitudes).real) / L
            worst = max(worst, abs(analytic_energy_density(theta, L) - numeric))
    report("analytic energy density at L=12,16,20", worst < 1e-8, f"max dev {worst:.2e}")
    assert worst < 1e-8


def _half_chain_spectrum_deviation(L):
    ta = transfer_analytics(np.pi / 2)
    basis = build_chain_basis(L, "periodic")
    st, _ = rotated_state(basis, np.pi / 2)
    spec = entanglement_spectrum(st, half_chain_geometry(L))
    top4 = np.sort(spec[:4])[::-1]
    return float(np.abs(top4 - np.sort(np.array(ta.two_cut))[::-1]).max())


def test_criterion_analytic_spectrum_L24_as_stated():
    # stated form: half-chain spectrum matches the analytic two-cut set within
    # 1e-6 at L = 24, theta = pi/2.  The finite-size correction decays as
    # (lambda2/lambda1)^(L/4) because each transfer cell spans two sites, which
    # is 9.6e-6 at L = 24; the measured deviation ~3.9e-6 sits under that bound
    # but above the stated tolerance.  Kept as stated, expected to fail; the
    # companion test shows the same check passing from L = 28 on.
    dev = _half_chain_spectrum_deviation(24)
    report("analytic two-cut spectrum at L=24 (as stated)", dev < 1e-6, f"max dev {dev:.2e}")
    assert dev < 1e-6, (
        f"L=24 half-chain spectrum deviation {dev:.3e} exceeds 1e-6; the"
        " finite-size error scales as (lambda2/lambda1)^(L/4) ~ 9.6e-6 here,"
        " see companion test for the corrected scaling"
    )


def test_analytic_spectrum_converges_with_cell_count():
    ratio = transfer_analytics(np.pi / 2).lambda2 / transfer_analytics(np.pi / 2).lambda1
    devs = {L: _half_chain_spectrum_deviation(L) for L in (16, 20, 24, 28)}
    bounded = all(dev < ratio ** (L / 4) for L, dev in devs.items())
    ok = bounded and devs[28] < 1e-6
    report(
        "analytic two-cut spectrum, corrected finite-size scaling",
        ok,
        ", ".join(f"L={L}: {d:.1e}" for L, d in devs.items()) + f" (bound ratio^(L/4), pass at L=28)",
    )
    assert bounded
    assert devs[28] < 1e-6


# --- criterion: subsystem energy conservation ---------------------------------

def test_criterion_conservation():
    worst = 0.0
    for L in (12, 16):
        for theta in (0.0, np.pi / 8, np.pi / 4, 3 * np.pi / 8, np.pi / 2):
            series = quench_series(L, theta, t_max=100.0, dt=0.5)
            worst = max(worst, float(np.abs(series.E_A - series.E_A[0]).max()))
    report("subsystem energy conservation", worst < 1e-8, f"max |dE_A| = {worst:.2e}")
    assert worst < 1e-8


# --- criterion: dynamics phenomenology at L = 16 ------------------------------

def test_criterion_dynamics_revivals():
    series = quench_series(16, 0.0, t_max=1000.0, dt=0.5)
    w = series.W - series.W.mean()
    ac = np.correlate(w, w, mode="full")[len(w) - 1 :]
    ac /= ac[0]
    first_dip = int(np.argmax(ac < 0)) if (ac < 0).any() else 1
    peak = float(ac[first_dip:].max())
    report("scar quench revivals (theta=0)", peak > 0.3, f"autocorrelation secondary peak {peak:.3f}")
    assert peak > 0.3


def test_criterion_dynamics_thermal_decay_as_stated(theta_sweep):
    # stated form: steady W below 20% of W(0) for theta = pi/2 at L = 16.
    # The steady state retains the finite-size residual ergotropy of the
    # zero-shell thermal states (W/L ~ 0.15 at L = 16), so the measured ratio
    # sits near 0.55 and decreases only slowly with L (0.64, 0.55, 0.49, 0.45
    # at L = 12..24).  Kept as stated, expected to fail; the companion test
    # pins the actual relaxation level.
    row = theta_sweep[-1]
    ratio = row[1] / row[4]
    report("thermal quench decay below 20% (as stated)", ratio < 0.2, f"Wbar/W(0) = {ratio:.3f}")
    assert ratio < 0.2, (
        f"steady-to-initial ergotropy ratio {ratio:.3f} at theta=pi/2, L=16;"
        " the steady state keeps the finite-size thermal residual (W/L ~ 0.15)"
    )


def test_thermal_quench_relaxes_to_thermal_residual(theta_sweep, eigensweep):
    # the pi/2 quench relaxes to (slightly below) the zero-shell thermal
    # ensemble ergotropy, the correct finite-size benchmark
    row = theta_sweep[-1]
    thermal_w = eigensweep[(16, 1.0)][0]
    ok = row[1] < thermal_w * 1.05 and row[1] < 0.65 * row[4]
    report(
        "thermal quench relaxes toward the shell residual",
        ok,
        f"Wbar {row[1]:.3f} vs thermal-eigenstate W {thermal_w:.3f}, Wbar/W(0) {row[1]/row[4]:.3f}",
    )
    assert ok


def test_criterion_dynamics_rank_anticorrelation_as_stated(theta_sweep):
    # stated form: Spearman rank correlation of (Wbar, Sbar) over the 9-angle
    # grid is negative at L = 16.  Both curves dip together at intermediate
    # angles because the rotation lowers the injected energy density, so the
    # statistic is marginal and sign-flips with L (-0.10, +0.07, -0.03 at
    # L = 12, 16, 20).  Kept as stated, expected to fail; the companion test
    # shows the underlying anti-correlation mechanism.
    rho = float(spearmanr(theta_sweep[:, 1], theta_sweep[:, 3]).statistic)
    report("steady-state W-S rank anti-correlation (as stated)", rho < 0, f"spearman {rho:+.3f}")
    assert rho < 0, (
        f"spearman(Wbar, Sbar) = {rho:+.3f} at L=16: the injected energy falls"
        " with theta, dragging Wbar and Sbar down together at small angles"
    )


def test_bound_energy_tracks_entropy(theta_sweep):
    # at fixed subsystem energy the anti-correlation is exact: Qbar = E_A - Wbar
    # rank-matches Sbar, so W anti-correlates with entropy once the injected
    # energy trend is removed
    rho = float(spearmanr(theta_sweep[:, 2], theta_sweep[:, 3]).statistic)
    report("bound energy tracks entropy in the steady state", rho > 0.9, f"spearman(Qbar, Sbar) {rho:+.3f}")
    assert rho > 0.9


def test_steady_ergotropy_nonmonotonic(theta_sweep):
    w = theta_sweep[:, 1]
    amin = int(np.argmin(w))
    ok = 0 < amin < len(w) - 1
    report("steady ergotropy non-monotonic in theta", ok, f"minimum at grid point {amin} of 8")
    assert ok


# --- criterion: propagator cross-validation -----------------------------------

def test_criterion_krylov_cross_validation():
    basis = build_chain_basis(12, "periodic")
    H = pxp_hamiltonian(basis)
    dec = dense_eigh(H)
    st, _ = rotated_state(basis, np.pi / 4)
    times = np.arange(0.0, 50.5, 0.5)
    reference = evolve_eigenbasis(dec, st.amplitudes.astype(complex), times)
    cur = st.amplitudes.astype(complex)
    worst = 0.0
    for i in range(1, len(times)):
        cur = evolve_krylov(H, cur, 0.5)
        worst = max(worst, 1.0 - abs(np.vdot(cur, reference[i])))
    report("Krylov vs eigenbasis overlap (L=12, t<=50)", worst < 1e-8, f"max 1-|overlap| = {worst:.2e}")
    assert worst < 1e-8
