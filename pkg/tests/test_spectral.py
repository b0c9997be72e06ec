import math

import mpmath as mp
import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from reslab import partialwave as pw
from reslab import spectral_checks as sc
from reslab.detfm import fit_growth
from reslab.errors import DomainError, UnwrapError

D2 = pw.BallProblem.dirichlet()
N2 = pw.BallProblem.neumann()


@pytest.fixture(scope="module")
def eigs20():
    return sc.interior_eigenvalues(D2, 20.0)


# --- Weyl constant and phase -----------------------------------------------------------

def test_weyl_constant_disk():
    assert sc.weyl_constant(D2) == pytest.approx(0.25, rel=1e-15)


def test_weyl_constant_scaling():
    big = pw.BallProblem.dirichlet(R=2.0)
    assert sc.weyl_constant(big) == pytest.approx(4 * sc.weyl_constant(D2), rel=1e-15)
    # (2 pi)^-4 * (pi^2/2)^2
    assert sc.weyl_constant(pw.BallProblem.dirichlet(d=4)) == pytest.approx(1 / 64, rel=1e-14)


def test_unit_ball_volume():
    assert sc.unit_ball_volume(2) == pytest.approx(math.pi)
    assert sc.unit_ball_volume(4) == pytest.approx(math.pi ** 2 / 2)


def test_phase_small_r_vanishes():
    # logarithmic approach at d=2, driven by l=0
    vals = [abs(sc.scattering_phase(D2, r)) for r in (1e-2, 1e-6, 1e-12)]
    assert vals[0] > vals[1] > vals[2]
    with mp.workdps(30):
        s0 = -mp.hankel2(0, 1e-12) / mp.hankel1(0, 1e-12)
        ref = float(mp.arg(s0)) / (2 * math.pi)
    assert sc.scattering_phase(D2, 1e-12) == pytest.approx(ref, rel=1e-8)


def test_phase_at_20():
    phi = sc.scattering_phase(D2, 20.0)
    assert phi < 0
    assert abs(phi + 20.0 ** 2 / 4) <= 3 * 20


def test_phase_density_doubling():
    a = sc.scattering_phase(D2, 20.0)
    b = sc.scattering_phase(D2, 20.0, density=2.0)
    assert abs(a - b) < 1e-7


def test_phases_vectorised_consistent():
    grid = [4.0, 9.0, 15.0]
    vec = sc.scattering_phases(D2, grid)
    for r, v in zip(grid, vec):
        assert v == pytest.approx(sc.scattering_phase(D2, r), abs=1e-9)


def test_weyl_report_scaling_of_term():
    r = np.array([5.0, 7.0])
    a = sc.weyl_report(D2, r, fit_interior=False)
    b = sc.weyl_report(pw.BallProblem.dirichlet(R=2.0), r, fit_interior=False)
    assert np.allclose(b.weyl_term, 4 * a.weyl_term, rtol=1e-15)


def test_weyl_report_bounded_defect():
    rep = sc.weyl_report(D2, np.linspace(10, 40, 8))
    nd = np.abs(rep.normalized_defect)
    assert np.all(np.isfinite(nd))
    assert nd.max() < 10 * np.median(nd)
    assert abs(rep.fitted_constant / 0.25 - 1) < 0.05


# --- phase traces -------------------------------------------------------------------------

@given(st.sampled_from([D2, N2, pw.BallProblem.robin(1.0, d=4)]), st.integers(0, 8),
       st.floats(0.5, 25))
@settings(max_examples=30)
def test_unwrap_consistent_with_eigenphase(p, l, r):
    theta = sc.phase_trace(p, l, [r]).at([r])[0]
    principal = pw.eigenphase(p, l, r)
    diff = (theta - principal) / (2 * math.pi)
    assert abs(diff - round(diff)) * 2 * math.pi < 1e-9


def test_trace_steps_bounded():
    tr = sc.phase_trace(D2, 3, [12.0])
    assert np.all(np.abs(np.diff(tr.theta)) < math.pi / 2)
    assert abs(tr.theta[0]) < 1e-6


def test_unwrap_error(monkeypatch):
    real = pw.eigenphase

    def jumpy(p, l, r):
        r = np.asarray(r, dtype=float)
        return np.where(r > 1.0, 3.0, 0.0) + 0 * np.asarray(real(p, l, r))

    monkeypatch.setattr(pw, "eigenphase", jumpy)
    with pytest.raises(UnwrapError) as info:
        sc.phase_trace(D2, 0, [2.0])
    assert info.value.l == 0


def test_trace_domain():
    with pytest.raises(DomainError):
        sc.phase_trace(D2, 0, [0.0, 1.0])
    with pytest.raises(DomainError):
        sc.scattering_phase(D2, -1.0)


# --- phase-defect sum ----------------------------------------------------------------------

def test_defect_sum_linear_scale():
    vals = [sc.phase_defect_sum(D2, r) / r for r in (5.0, 10.0, 20.0, 40.0)]
    assert max(vals) / min(vals) < 4
    grid = np.geomspace(5, 40, 6)
    fit = fit_growth([(r, sc.phase_defect_sum(D2, r)) for r in grid])
    assert 0.7 <= fit.exponent <= 1.3


def test_defect_sum_vanishes_at_zero():
    vals = [sc.phase_defect_sum(D2, r) for r in (1e-1, 1e-3, 1e-6, 1e-12)]
    assert all(b < a for a, b in zip(vals, vals[1:]))
    assert vals[-1] < 0.15


def test_defect_sum_oracle_small_r():
    # l=0 dominates: |arg s_0| with s_0 = -H2_0/H1_0, from mpmath
    r = 0.3
    with mp.workdps(30):
        ref = 0.0
        for l in range(6):
            s = -mp.hankel2(l, r) / mp.hankel1(l, r)
            ref += pw.multiplicity(l, 2) * abs(float(mp.arg(s)))
    assert sc.phase_defect_sum(D2, r) == pytest.approx(ref, rel=1e-10)


# --- interior spectrum ------------------------------------------------------------------------

def test_first_zeros_l0(eigs20):
    z = [e[0] for e in eigs20 if e[1] == 0][:3]
    for got, ref in zip(z, (2.4048, 5.5201, 8.6537)):
        assert abs(got - ref) < 1e-3
    with mp.workdps(30):
        for k, got in enumerate(z, 1):
            assert abs(got - float(mp.besseljzero(0, k))) < 1e-12


def test_weyl_count_at_20(eigs20):
    n = sc.interior_count(eigs20, [20.0])[0]
    assert abs(n - 100) <= 15


def test_radius_scaling():
    a = sc.interior_eigenvalues(D2, 12.0)
    b = sc.interior_eigenvalues(pw.BallProblem.dirichlet(R=2.0), 6.0)
    assert len(a) == len(b)
    for (x, l1, m1), (y, l2, m2) in zip(a, b):
        assert (l1, m1) == (l2, m2)
        assert y == pytest.approx(x / 2, rel=1e-12)


def test_neumann_zeros_are_derivative_zeros():
    eigs = sc.interior_eigenvalues(N2, 8.0)
    z1 = [e[0] for e in eigs if e[1] == 1]
    with mp.workdps(30):
        assert z1[0] == pytest.approx(float(mp.besseljzero(1, 1, derivative=1)), abs=1e-12)


def test_multiplicities_attached(eigs20):
    for lam, l, mult in eigs20:
        assert mult == pw.multiplicity(l, 2)
        assert 0 < lam <= 20


def test_interior_count_fit():
    c, _ = sc.fit_interior_count(D2, 10.0, 40.0)
    assert abs(c / 0.25 - 1) < 0.05


# --- duality ------------------------------------------------------------------------------------

DELTAS = [0.1, 0.05, 0.01]


@pytest.mark.parametrize("l", [0, 1, 2])
@pytest.mark.parametrize("k", [1, 2, 3])
def test_duality_dirichlet(l, k):
    trace = sc.duality_probe(D2, l, k, DELTAS)
    dist = [abs(e - 1) for _, e in trace]
    assert all(e.imag > 0 for _, e in trace)
    assert dist[0] > dist[1] > dist[2]


@pytest.mark.parametrize("l", [0, 1, 2])
@pytest.mark.parametrize("k", [1, 2, 3])
def test_duality_neumann(l, k):
    trace = sc.duality_probe(N2, l, k, DELTAS)
    dist = [abs(e - 1) for _, e in trace]
    assert all(e.imag < 0 for _, e in trace)
    assert dist[0] > dist[1] > dist[2]


def test_duality_midpoint_contrast():
    z1, z2 = sc.interior_zero(D2, 0, 1), sc.interior_zero(D2, 0, 2)
    near = abs(sc.duality_probe(D2, 0, 1, [0.01])[0][1] - 1)
    far = abs(pw.s_coefficient(D2, 0, 0.5 * (z1 + z2)) - 1)
    assert far > near
    assert far > 1.0


def test_interior_zero_from_table(eigs20):
    assert sc.interior_zero(D2, 1, 2, eigs20) == sc.interior_zero(D2, 1, 2)


def test_duality_domain():
    with pytest.raises(DomainError):
        sc.duality_probe(D2, 0, 1, [0.1, -0.1])
    with pytest.raises(DomainError):
        sc.interior_zero(D2, 0, 0)


# --- low-frequency limit ----------------------------------------------------------------------

EPS = [1e-2, 1e-4, 1e-6]


def test_szero_decreasing():
    for p in (D2, pw.BallProblem.dirichlet(d=4)):
        dev = [d for _, d in sc.s_zero_limit(p, EPS)]
        assert dev[0] > dev[1] > dev[2]


def test_szero_faster_in_d4():
    d2 = sc.s_zero_limit(D2, EPS)
    d4 = sc.s_zero_limit(pw.BallProblem.dirichlet(d=4), EPS)
    assert all(b < a for (_, a), (_, b) in zip(d2, d4))


def test_szero_higher_waves_decouple():
    l0 = sc.s_zero_limit(D2, [1e-2], l_max=0)[0][1]
    l3 = abs(pw.s_minus_one(D2, 3, 1e-2).to_complex())
    assert l3 < 1e-6 * l0


def test_szero_oracle():
    # l=0 dominates at d=2: |2 J_0 / H1_0|
    with mp.workdps(30):
        ref = float(abs(2 * mp.besselj(0, 1e-4) / mp.hankel1(0, 1e-4)))
    assert sc.s_zero_limit(D2, [1e-4])[0][1] == pytest.approx(ref, rel=1e-12)


def test_szero_domain():
    with pytest.raises(DomainError):
        sc.s_zero_limit(D2, [1e-2, 0.0])
