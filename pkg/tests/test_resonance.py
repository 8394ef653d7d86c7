import numpy as np
import pytest

from giant_atom import (IllConditionedFitError, NoConvergenceError, ParameterError,
                        SystemParams, complete_reflection_detunings, fit_shift_amplitude, r2,
                        t1, valley_energies)
from giant_atom.resonance import (bisect, one_period_samples, reflection_residual,
                                  shift_period, sine_amplitude_lstsq, valley_residual)

from conftest import GAMMA, OMEGA_E, V_G


def test_frozen_root_at_unit_separation():
    roots = complete_reflection_detunings(SystemParams.two_level(x0=1.0))
    assert len(roots) == 1
    assert roots.values[0] == pytest.approx(-7829115.87505415, rel=1e-10)
    # Independent: the defining equation itself.
    d = roots.values[0]
    assert abs(d - GAMMA * np.sin((OMEGA_E + d) / V_G)) < 1e-9 * OMEGA_E


def test_small_atom_root_is_resonance():
    roots = complete_reflection_detunings(SystemParams.two_level(x0=0.0))
    assert roots.values == pytest.approx([0.0], abs=1e-12 * OMEGA_E)


def test_node_of_sine_is_a_root():
    roots = complete_reflection_detunings(SystemParams.two_level(x0=np.pi * V_G / OMEGA_E))
    assert np.min(np.abs(roots.values)) < 1e-12 * OMEGA_E


def test_uncoupled_atom_has_trivial_root():
    roots = complete_reflection_detunings(SystemParams.two_level(g=0.0, x0=1.0))
    assert roots.values.tolist() == [0.0]


@pytest.mark.parametrize("x0", np.linspace(0.05, 6.0, 17))
def test_roots_reflect_completely(x0):
    p = SystemParams.two_level(x0=x0)
    roots = complete_reflection_detunings(p)
    lo, hi = roots.bracket
    assert len(roots) >= 1
    assert np.all((roots.values >= lo) & (roots.values <= hi))
    assert np.all(roots.residuals < 1e-9 * OMEGA_E)
    assert np.all(np.diff(roots.values) > 0)
    assert np.all(abs(t1(p, OMEGA_E + roots.values)) ** 2 < 1e-10)


def test_many_roots_for_large_separation():
    p = SystemParams.two_level(g=0.1, x0=60.0)
    roots = complete_reflection_detunings(p, scan_points=100_000)
    assert len(roots) > 3
    assert np.all(np.abs(reflection_residual(p, roots.values)) < 1e-9 * OMEGA_E)


def test_approximate_periodicity():
    # The exact period is in k_r x0; shifting by 2 pi v_g / omega_e moves the phase
    # by 2 pi Delta_r / omega_e, bounded by 2 pi Gamma^2 / omega_e per unit slope.
    p = SystemParams.two_level()
    for x0 in (0.2, 0.5, 0.9):
        a = complete_reflection_detunings(p, x0).values
        b = complete_reflection_detunings(p, x0 + shift_period(p)).values
        assert a.shape == b.shape
        assert np.max(np.abs(a - b)) <= 2 * 2 * np.pi * GAMMA ** 2 / OMEGA_E


def test_bisect_vectorised():
    roots = bisect(lambda x: x ** 2 - np.array([2.0, 3.0]), [0.0, 0.0], [2.0, 2.0], 1e-14)
    assert roots == pytest.approx(np.sqrt([2.0, 3.0]), abs=1e-13)


def test_bisect_iteration_cap():
    with pytest.raises(NoConvergenceError):
        bisect(lambda x: x - 0.3, 0.0, 1.0, 0.0, max_iter=5)


def test_solvers_need_scalar_parameters():
    with pytest.raises(ParameterError):
        complete_reflection_detunings(SystemParams.two_level(x0=np.array([1.0, 2.0])))


# -- three-level valleys -----------------------------------------------------

def test_frozen_valley_energies(three_level):
    e_minus, e_plus = valley_energies(three_level)
    assert e_minus.values == pytest.approx([2.76652987e9], rel=1e-8)
    assert e_plus.values == pytest.approx([3.23803411e9], rel=1e-8)
    for roots in (e_minus, e_plus):
        assert np.all(roots.residuals < 1e-9 * OMEGA_E)
        assert np.all(abs(r2(three_level, roots.values)) ** 2 > 1 - 1e-10)


def test_valleys_tend_to_dressed_frequencies_when_uncoupled():
    p = SystemParams.three_level(g=0.0, x0=1.48)
    e_minus, e_plus = valley_energies(p)
    assert e_minus.values.tolist() == [pytest.approx(0.92 * OMEGA_E)]
    assert e_plus.values.tolist() == [pytest.approx(1.08 * OMEGA_E)]


@pytest.mark.parametrize("omega_d", [0.27, 0.33])
def test_detuned_valleys_reflect(omega_d):
    p = SystemParams.three_level(x0=3.98, omega_d=omega_d * OMEGA_E)
    for roots, branch in zip(valley_energies(p), (-1, 1)):
        assert len(roots) >= 1
        assert np.all(np.abs(valley_residual(p, roots.values, branch)) < 1e-9 * OMEGA_E)
        assert np.all(abs(r2(p, roots.values)) ** 2 > 1 - 1e-10)


def test_valleys_need_drive():
    with pytest.raises(ParameterError):
        valley_energies(SystemParams.three_level(eta=0.0))
    with pytest.raises(ParameterError):
        valley_energies(SystemParams.two_level())


# -- shift fit ------------------------------------------------------------------

def test_fit_recovers_synthetic_amplitude():
    x = np.linspace(0.0, 0.63, 40)
    S0 = 1.234e7
    S, rms = sine_amplitude_lstsq(x, S0 * np.sin(10.0 * x), 10.0)
    assert abs(S / S0 - 1) < 1e-12
    assert rms < 1e-12 * S0


def test_fit_on_nodes_is_ill_conditioned():
    x = np.arange(10) * np.pi / 10.0
    with pytest.raises(IllConditionedFitError):
        sine_amplitude_lstsq(x, np.ones(10), 10.0)


def test_shift_amplitude_at_defaults():
    p = SystemParams.two_level()
    fit = fit_shift_amplitude(p, one_period_samples(p))
    assert abs(fit.S / GAMMA - 1) < 0.02
    assert abs(fit.S) <= GAMMA * 1.01
    assert fit.S == pytest.approx(14999454.9, rel=1e-7)
    assert len(fit.samples) == 64
    assert fit.predict(shift_period(p) / 4) == pytest.approx(fit.S)


def test_uncoupled_shift_is_zero():
    p = SystemParams.two_level(g=0.0)
    assert fit_shift_amplitude(p, one_period_samples(p)).S == 0.0


def test_shift_is_quadratic_in_coupling():
    gs = np.array([0.01, 0.02, 0.03, 0.04, 0.05, 0.06, 0.07, 0.08])
    f2, S = [], []
    for g in gs:
        p = SystemParams.two_level(g=g)
        S.append(fit_shift_amplitude(p, one_period_samples(p, 32)).S)
        f2.append(p.f ** 2)
    coef = np.dot(f2, S) / np.dot(f2, f2)
    assert abs(coef * V_G / 2 - 1) < 0.02


def test_fit_sample_requirements():
    p = SystemParams.two_level()
    with pytest.raises(ParameterError):
        fit_shift_amplitude(p, np.linspace(0, shift_period(p), 5))
    with pytest.raises(ParameterError):
        fit_shift_amplitude(p, np.linspace(0, shift_period(p) / 2, 20))
