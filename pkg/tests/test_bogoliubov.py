import math

import numpy as np
import pytest

from cosmotele.background import BackgroundModel, ConformalDomain
from cosmotele.bogoliubov import (
    BogoliubovPair,
    DegeneratePairError,
    NotAsymptoticallyFlatError,
    ParticleSpectrum,
    SPECTRUM_CSV_HEADER,
    SpectrumSource,
    analytic_spectrum,
    beta_sq_de_sitter,
    beta_sq_matter,
    beta_sq_power_law,
    beta_sq_radiation,
    numerical_bogoliubov,
    spectrum_rows,
    thermal_weights,
    z_ratio,
)
from cosmotele.modes import ModeSolution, ModeSpec, Vacuum, evolve_mode, integrate_mode_equation, plane_wave_mode


def sech_sq_pulse(amplitude, width, center=0.0):
    def potential(eta):
        y = (eta - center) / width
        e = math.exp(-2.0 * abs(y))
        return amplitude * 4.0 * e / (1.0 + e) ** 2

    return potential


class TestPowerLawSpectrum:
    def test_flat_limit(self):
        assert beta_sq_power_law(1.0, 1e-8) < 1e-15

    def test_reference_value(self):
        # (pi^2/4) sech^2(pi/2), frozen from mpmath
        assert beta_sq_power_law(1.0, 1.0) == pytest.approx(0.39190124777049689, rel=1e-14)

    def test_large_k_suppression(self):
        assert beta_sq_power_law(10.0, 1.0) < 1e-12

    def test_decreasing_in_k(self):
        ks = np.linspace(0.2, 8.0, 60)
        vals = [beta_sq_power_law(float(k), 1.3) for k in ks]
        assert all(a > b for a, b in zip(vals, vals[1:]))

    def test_radiation_exponent_disagrees_with_radiation_era(self):
        # the two deliberately exposed code paths differ at alpha = 1/2
        assert beta_sq_power_law(1.0, 0.5) > 0.0
        assert beta_sq_radiation(1.0) == 0.0


class TestThermalSpectra:
    def test_log_two_point(self):
        H = 2.0 * math.pi / math.log(2.0)
        assert beta_sq_de_sitter(1.0, H) == pytest.approx(1.0, rel=1e-14)
        assert beta_sq_matter(1.0, H) == pytest.approx(1.0, rel=1e-14)

    def test_reference_value(self):
        assert beta_sq_de_sitter(1.0, 2.0 * math.pi) == pytest.approx(
            0.58197670686932642, rel=1e-14
        )

    def test_underflow_cutoff_exact_zero(self):
        k = 701.0 / (2.0 * math.pi)
        assert beta_sq_de_sitter(k, 1.0) == 0.0
        assert beta_sq_matter(k, 1.0) == 0.0

    def test_monotonic_in_k_and_H(self):
        ks = np.linspace(0.1, 5.0, 40)
        for f in (beta_sq_de_sitter, beta_sq_matter):
            vals = [f(float(k), 1.0) for k in ks]
            assert all(a > b for a, b in zip(vals, vals[1:]))
            hs = np.linspace(0.5, 5.0, 40)
            vals_h = [f(1.0, float(h)) for h in hs]
            assert all(a < b for a, b in zip(vals_h, vals_h[1:]))

    def test_domain(self):
        with pytest.raises(ValueError):
            beta_sq_de_sitter(0.0, 1.0)
        with pytest.raises(ValueError):
            beta_sq_matter(1.0, -1.0)
        with pytest.raises(ValueError):
            beta_sq_radiation(-1.0)


class TestPairAlgebra:
    def test_from_beta_sq_exact_normalization(self):
        pair = BogoliubovPair.from_beta_sq(0.37, k=1.0)
        assert pair.normalization_residual < 1e-15
        assert pair.alpha.imag == 0.0 and pair.beta.imag == 0.0
        assert pair.alpha.real > 0 and pair.beta.real >= 0

    def test_z_ratio_de_sitter_half(self):
        H = 2.0 * math.pi / math.log(2.0)
        pair = BogoliubovPair.from_beta_sq(beta_sq_de_sitter(1.0, H), k=1.0)
        assert z_ratio(pair) == pytest.approx(0.5, rel=1e-12)

    def test_z_zero_for_no_mixing(self):
        pair = BogoliubovPair.from_beta_sq(0.0, k=1.0)
        assert z_ratio(pair) == 0.0

    def test_z_identity(self):
        for b in (0.0, 0.3, 1.0, 7.5):
            pair = BogoliubovPair.from_beta_sq(b, k=1.0)
            assert z_ratio(pair) == pytest.approx(b / (1.0 + b), rel=1e-13)

    def test_degenerate(self):
        pair = BogoliubovPair(alpha=0.0, beta=1.0, k=1.0)
        with pytest.raises(DegeneratePairError):
            z_ratio(pair)


class TestThermalWeights:
    def test_vacuum(self):
        assert thermal_weights(0.0, 2).tolist() == [1.0, 0.0, 0.0]

    def test_geometric_half(self):
        assert thermal_weights(0.5, 2).tolist() == [0.5, 0.25, 0.125]

    def test_tail_mass(self):
        z, n_max = 0.73, 40
        w = thermal_weights(z, n_max)
        assert 1.0 - w.sum() == pytest.approx(z ** (n_max + 1), rel=1e-10)

    def test_domain(self):
        with pytest.raises(ValueError):
            thermal_weights(1.0, 3)
        with pytest.raises(ValueError):
            thermal_weights(-0.1, 3)
        with pytest.raises(ValueError):
            thermal_weights(0.5, -1)


class TestNumericalExtraction:
    def test_radiation_identity_transformation(self):
        model = BackgroundModel.radiation()
        spec = ModeSpec(k=1.0, model=model, vacuum=Vacuum.PLANE_WAVE_IN)
        sol = evolve_mode(spec, ConformalDomain(1.0, 40.0), tol=1e-11, n_points=40)
        pair = numerical_bogoliubov(sol, 40.0)
        assert abs(pair.alpha - 1.0) < 1e-8
        assert abs(pair.beta) < 1e-8
        assert pair.normalization_residual <= 1e-8

    def test_pulse_self_convergence(self):
        # brute-force reference at tol 1e-12 vs a coarser pass
        k, amplitude, width = 1.0, 2.0, 1.0
        grid = np.linspace(-14.0, 14.0, 81)
        chi0, dchi0 = plane_wave_mode(k, float(grid[0]))
        potential = sech_sq_pulse(amplitude, width)
        ref = numerical_bogoliubov(
            integrate_mode_equation(k, potential, grid, chi0, dchi0, tol=1e-12),
            14.0, k=k,
        )
        coarse = numerical_bogoliubov(
            integrate_mode_equation(k, potential, grid, chi0, dchi0, tol=1e-9),
            14.0, k=k,
        )
        assert abs(ref.beta) > 1.0  # the pulse genuinely mixes the mode
        assert abs(coarse.beta - ref.beta) / abs(ref.beta) < 1e-6
        assert ref.normalization_residual <= 1e-8

    @pytest.mark.parametrize("k,amplitude,width", [
        (1.0, 2.0, 1.0),
        (0.8, 1.5, 1.2),
        (1.7, 3.0, 0.7),
        (1.3, 0.12, 1.0),
    ])
    def test_pulse_matches_barrier_scattering_closed_form(self, k, amplitude, width):
        # fully independent oracle: the sech^2 pulse is the Eckart barrier,
        # whose transmission is known in closed form, and the mixing obeys
        # |beta|^2 = R/T = cosh^2((pi/2) sqrt(4 V0 w^2 - 1)) / sinh^2(pi k w)
        # (cos^2 of the same argument when 4 V0 w^2 < 1)
        disc = 4.0 * amplitude * width**2 - 1.0
        if disc > 0:
            numerator = math.cosh(0.5 * math.pi * math.sqrt(disc)) ** 2
        else:
            numerator = math.cos(0.5 * math.pi * math.sqrt(-disc)) ** 2
        expected = numerator / math.sinh(math.pi * k * width) ** 2

        span = 16.0 * max(width, 1.0)
        grid = np.linspace(-span, span, 101)
        chi0, dchi0 = plane_wave_mode(k, float(grid[0]))
        sol = integrate_mode_equation(k, sech_sq_pulse(amplitude, width),
                                      grid, chi0, dchi0, tol=1e-12)
        pair = numerical_bogoliubov(sol, float(grid[-1]), k=k)
        assert abs(pair.beta) ** 2 == pytest.approx(expected, rel=1e-9)

    def test_normalization_property_random_instances(self):
        rng = np.random.default_rng(7)
        for _ in range(25):
            k = float(rng.uniform(0.5, 3.0))
            amplitude = float(rng.uniform(0.2, 2.5))
            width = float(rng.uniform(0.6, 1.8))
            grid = np.linspace(-14.0 * width, 14.0 * width, 64)
            chi0, dchi0 = plane_wave_mode(k, float(grid[0]))
            sol = integrate_mode_equation(k, sech_sq_pulse(amplitude, width),
                                          grid, chi0, dchi0, tol=1e-11)
            pair = numerical_bogoliubov(sol, float(grid[-1]), k=k)
            assert pair.normalization_residual <= 1e-8

    def test_not_asymptotically_flat_gate(self):
        model = BackgroundModel.de_sitter(H=1.0)
        spec = ModeSpec(k=1.0, model=model, vacuum=Vacuum.BUNCH_DAVIES)
        grid = -np.geomspace(100.0, 5.0, 30)
        sol = evolve_mode(spec, ConformalDomain(-100.0, -5.0), tol=1e-11, eta_grid=grid)
        with pytest.raises(NotAsymptoticallyFlatError) as err:
            numerical_bogoliubov(sol, -5.0)
        assert err.value.potential_ratio == pytest.approx(2.0 / 25.0, rel=1e-12)

    def test_drift_gate(self):
        grid = np.linspace(1.0, 5.0, 10)
        chi = np.array([plane_wave_mode(1.0, e)[0] for e in grid]) * 1.01
        dchi = np.array([plane_wave_mode(1.0, e)[1] for e in grid]) * 1.01
        bad = ModeSolution(eta_grid=grid, chi=chi, dchi=dchi,
                           wronskian_drift=0.0201, potential=lambda e: 0.0)
        with pytest.raises(ValueError, match="drift"):
            numerical_bogoliubov(bad, 5.0, k=1.0)

    def test_eta_out_must_be_grid_point(self):
        model = BackgroundModel.radiation()
        spec = ModeSpec(k=1.0, model=model, vacuum=Vacuum.PLANE_WAVE_IN)
        sol = evolve_mode(spec, ConformalDomain(1.0, 2.0), tol=1e-11, n_points=11)
        with pytest.raises(ValueError, match="grid point"):
            numerical_bogoliubov(sol, 1.234567)


class TestSpectrum:
    def test_analytic_spectrum_entries(self):
        model = BackgroundModel.de_sitter(H=2.0 * math.pi)
        spec = analytic_spectrum(model, [2.0, 0.5, 1.0])
        assert spec.k.tolist() == [0.5, 1.0, 2.0]  # ascending regardless of input
        assert spec.source is SpectrumSource.ANALYTIC
        assert spec.beta_sq[1] == pytest.approx(1.0 / (math.e - 1.0), rel=1e-12)
        assert np.all(spec.z == spec.beta_sq / (1.0 + spec.beta_sq))

    def test_radiation_spectrum_zero(self):
        spec = analytic_spectrum(BackgroundModel.radiation(), [0.1, 1.0, 10.0])
        assert np.all(spec.beta_sq == 0.0)
        assert np.all(spec.z == 0.0)

    def test_rows_schema(self):
        spec = analytic_spectrum(BackgroundModel.matter(H0=1.0), [1.0, 2.0])
        rows = list(spectrum_rows(spec))
        assert len(rows) == 2
        assert len(rows[0]) == len(SPECTRUM_CSV_HEADER)
        assert rows[0][3] == "analytic" and rows[0][4] == "matter"

    def test_invariants_enforced(self):
        with pytest.raises(ValueError):
            ParticleSpectrum(k=np.array([1.0]), beta_sq=np.array([-0.1]),
                             z=np.array([0.0]), era=BackgroundModel.radiation().kind,
                             source=SpectrumSource.ANALYTIC)
        with pytest.raises(ValueError):
            ParticleSpectrum(k=np.array([1.0]), beta_sq=np.array([0.5]),
                             z=np.array([1.0]), era=BackgroundModel.radiation().kind,
                             source=SpectrumSource.ANALYTIC)

    def test_numerical_spectrum_from_extractions(self):
        from cosmotele.bogoliubov import spectrum_from_pairs

        model = BackgroundModel.radiation()
        pairs = []
        for k in (1.5, 0.5, 1.0):
            spec = ModeSpec(k=k, model=model, vacuum=Vacuum.PLANE_WAVE_IN)
            sol = evolve_mode(spec, ConformalDomain(1.0, 15.0), tol=1e-11, n_points=20)
            pairs.append(numerical_bogoliubov(sol, 15.0))
        spectrum = spectrum_from_pairs(pairs, model.kind)
        assert spectrum.source is SpectrumSource.NUMERICAL
        assert spectrum.k.tolist() == [0.5, 1.0, 1.5]
        assert np.all(spectrum.beta_sq < 1e-16)
