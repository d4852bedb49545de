import math

import numpy as np
import pytest

from cosmotele.background import (
    BackgroundModel,
    ConformalDomain,
    ModelKind,
    conformal_to_cosmic,
    cosmic_to_conformal,
    effective_potential,
    model_nu,
    nu_index,
    scale_factor,
    scale_factor_derivative,
)


class TestScaleFactor:
    def test_de_sitter_unit_point(self):
        model = BackgroundModel.de_sitter(H=1.0)
        assert scale_factor(model, -1.0) == 1.0

    def test_matter_unit_point(self):
        model = BackgroundModel.matter(H0=2.0)
        assert scale_factor(model, 1.0) == 1.0

    def test_power_law_half(self):
        # |eta|^(alpha/(1-alpha)) = |-4|^1 for alpha = 1/2
        model = BackgroundModel.power_law(0.5)
        assert scale_factor(model, -4.0) == pytest.approx(4.0, rel=1e-14)

    def test_minkowski_constant(self):
        model = BackgroundModel.minkowski(a_ref=2.5)
        for eta in (-3.0, 0.0, 7.0):
            assert scale_factor(model, eta) == 2.5

    def test_radiation_linear(self):
        model = BackgroundModel.radiation(a_ref=3.0)
        assert scale_factor(model, 2.0) == 6.0

    @pytest.mark.parametrize("model,etas", [
        (BackgroundModel.de_sitter(H=1.0), -np.geomspace(10.0, 0.1, 30)),
        (BackgroundModel.radiation(), np.linspace(0.5, 20.0, 30)),
        (BackgroundModel.matter(H0=1.0), np.linspace(0.5, 20.0, 30)),
        (BackgroundModel.power_law(2.0), -np.geomspace(10.0, 0.1, 30)),
        (BackgroundModel.power_law(3.0), -np.geomspace(10.0, 0.1, 30)),
    ])
    def test_expanding_positive_and_monotone(self, model, etas):
        etas = np.sort(np.asarray(etas))
        a = np.array([scale_factor(model, float(e)) for e in etas])
        assert np.all(a > 0)
        assert np.all(np.diff(a) > 0)

    def test_domain_errors(self):
        with pytest.raises(ValueError):
            scale_factor(BackgroundModel.de_sitter(H=1.0), 0.5)
        with pytest.raises(ValueError):
            scale_factor(BackgroundModel.radiation(), -1.0)
        with pytest.raises(ValueError):
            scale_factor(BackgroundModel.matter(H0=1.0), 0.0)


class TestEffectivePotential:
    def test_radiation_exactly_zero(self):
        model = BackgroundModel.radiation()
        for eta in (0.1, 3.0, 1e6):
            assert effective_potential(model, eta) == 0.0

    def test_minkowski_exactly_zero(self):
        model = BackgroundModel.minkowski()
        assert effective_potential(model, 12.3) == 0.0

    def test_de_sitter_value(self):
        model = BackgroundModel.de_sitter(H=1.0)
        assert effective_potential(model, -2.0) == 0.5

    def test_power_law_matter_like(self):
        # nu = 3/2 at alpha = 2/3, so (nu^2 - 1/4)/eta^2 = 2/eta^2
        model = BackgroundModel.power_law(2.0 / 3.0)
        assert effective_potential(model, -1.0) == pytest.approx(2.0, rel=1e-14)

    @pytest.mark.parametrize("model,eta", [
        (BackgroundModel.de_sitter(H=1.3), -2.7),
        (BackgroundModel.matter(H0=0.8), 3.1),
        (BackgroundModel.power_law(2.0 / 3.0), -1.9),
        (BackgroundModel.power_law(0.4), -0.7),
        (BackgroundModel.power_law(2.5), -4.2),
    ])
    def test_matches_second_difference(self, model, eta):
        # second-difference step eps^(1/4) balances truncation vs roundoff
        h = abs(eta) * 2.2e-16 ** 0.25
        a = scale_factor(model, eta)
        second = (scale_factor(model, eta + h) - 2.0 * a + scale_factor(model, eta - h)) / h**2
        assert effective_potential(model, eta) == pytest.approx(second / a, rel=1e-6)

    def test_eta_squared_times_potential_constant(self):
        for model in (BackgroundModel.de_sitter(H=2.0), BackgroundModel.matter(H0=3.0)):
            for eta in (0.5, 2.0, 40.0):
                eta = eta if model.kind is ModelKind.MATTER_DOMINATED else -eta
                assert eta**2 * effective_potential(model, eta) == pytest.approx(2.0, rel=1e-14)


class TestNuIndex:
    def test_matter_exponent(self):
        assert nu_index(2.0 / 3.0) == pytest.approx(1.5, rel=1e-14)

    def test_zero_order(self):
        assert nu_index(1.0 / 3.0) == pytest.approx(0.0, abs=1e-15)

    def test_flat_limit(self):
        assert nu_index(1e-12) == pytest.approx(0.5, rel=1e-10)

    def test_singular_alpha(self):
        with pytest.raises(ValueError):
            nu_index(1.0)
        with pytest.raises(ValueError):
            nu_index(0.0)

    def test_model_nu(self):
        assert model_nu(BackgroundModel.minkowski()) == 0.5
        assert model_nu(BackgroundModel.radiation()) == 0.5
        assert model_nu(BackgroundModel.de_sitter(H=1.0)) == 1.5
        assert model_nu(BackgroundModel.matter(H0=1.0)) == 1.5


class TestConformalTime:
    def test_de_sitter_reference_point(self):
        model = BackgroundModel.de_sitter(H=1.0)
        assert cosmic_to_conformal(model, 0.0) == -1.0

    def test_de_sitter_late_time_limit(self):
        model = BackgroundModel.de_sitter(H=1.0)
        eta = cosmic_to_conformal(model, 50.0)
        assert -1e-20 < eta < 0

    @pytest.mark.parametrize("model", [
        BackgroundModel.minkowski(a_ref=2.0),
        BackgroundModel.radiation(a_ref=1.5),
        BackgroundModel.matter(H0=2.0),
        BackgroundModel.de_sitter(H=0.7),
        BackgroundModel.power_law(2.0),
        BackgroundModel.power_law(3.5, a_ref=0.8),
    ])
    @pytest.mark.parametrize("t", [0.3, 1.0, 17.0])
    def test_round_trip(self, model, t):
        if model.kind is ModelKind.MINKOWSKI:
            t -= 1.0  # any real cosmic time is fine there
        eta = cosmic_to_conformal(model, t)
        assert conformal_to_cosmic(model, eta) == pytest.approx(t, rel=1e-12)

    def test_conformal_law_consistency(self):
        # a(t(eta)) computed through cosmic time equals the conformal law
        for model in (BackgroundModel.radiation(a_ref=1.5),
                      BackgroundModel.matter(H0=2.0),
                      BackgroundModel.power_law(2.0),
                      BackgroundModel.de_sitter(H=0.7)):
            eta = 3.0 if model.admits(3.0) else -3.0
            t = conformal_to_cosmic(model, eta)
            # derivative identity dt/deta = a(eta)
            h = 1e-6
            dt = (conformal_to_cosmic(model, eta + h) - conformal_to_cosmic(model, eta - h)) / (2 * h)
            assert dt == pytest.approx(scale_factor(model, eta), rel=1e-8)

    def test_decelerating_power_law_refused(self):
        model = BackgroundModel.power_law(0.5)
        with pytest.raises(ValueError, match="alpha > 1"):
            cosmic_to_conformal(model, 1.0)
        with pytest.raises(ValueError, match="alpha > 1"):
            conformal_to_cosmic(model, -1.0)


class TestScaleFactorDerivative:
    @pytest.mark.parametrize("model,eta", [
        (BackgroundModel.minkowski(), 1.0),
        (BackgroundModel.radiation(a_ref=2.0), 3.0),
        (BackgroundModel.matter(H0=1.5), 2.0),
        (BackgroundModel.de_sitter(H=1.2), -0.8),
        (BackgroundModel.power_law(0.5), -2.0),
        (BackgroundModel.power_law(2.0), -2.0),
    ])
    def test_matches_central_difference(self, model, eta):
        h = max(abs(eta), 1.0) * 6e-6  # eps^(1/3) step for first derivatives
        numeric = (scale_factor(model, eta + h) - scale_factor(model, eta - h)) / (2 * h)
        assert scale_factor_derivative(model, eta) == pytest.approx(numeric, abs=1e-9, rel=1e-9)


class TestValidation:
    def test_model_parameter_combinations(self):
        with pytest.raises(ValueError):
            BackgroundModel.power_law(1.0)
        with pytest.raises(ValueError):
            BackgroundModel.power_law(-0.5)
        with pytest.raises(ValueError):
            BackgroundModel.de_sitter(H=0.0)
        with pytest.raises(ValueError):
            BackgroundModel.matter(H0=-1.0)
        with pytest.raises(ValueError):
            BackgroundModel(ModelKind.RADIATION_DOMINATED, H=1.0)
        with pytest.raises(ValueError):
            BackgroundModel(ModelKind.DE_SITTER, H=1.0, alpha=0.5)
        with pytest.raises(ValueError):
            BackgroundModel.radiation(a_ref=0.0)

    def test_conformal_domain(self):
        with pytest.raises(ValueError):
            ConformalDomain(2.0, 1.0)
        with pytest.raises(ValueError):
            ConformalDomain(1.0, 2.0, orientation=-1)
        domain = ConformalDomain(-10.0, -1.0)
        domain.validate_for(BackgroundModel.de_sitter(H=1.0))
        with pytest.raises(ValueError):
            domain.validate_for(BackgroundModel.radiation())
