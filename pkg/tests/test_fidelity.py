import math

import numpy as np
import pytest

from cosmotele.bogoliubov import beta_sq_de_sitter, beta_sq_matter
from cosmotele.fidelity import (
    FLAG_SUB_CLASSICAL,
    FidelityModel,
    FidelityQuery,
    effective_squeezing,
    evaluate,
    fidelity_concurrence,
    fidelity_de_sitter_ratio,
    fidelity_de_sitter_squeezed,
    fidelity_effective,
    fidelity_matter,
    fidelity_power_law,
    fidelity_thermal,
    fidelity_tmsv,
    squeezing_from_ratio,
    sub_classical,
)


class TestTmsv:
    def test_classical_benchmark(self):
        assert fidelity_tmsv(0.0) == 0.5

    def test_unit_squeezing(self):
        assert fidelity_tmsv(1.0) == pytest.approx(0.8807970779778823, rel=1e-15)

    def test_perfect_limit(self):
        assert fidelity_tmsv(400.0) == 1.0

    def test_strictly_increasing(self):
        rs = np.linspace(0.0, 6.0, 50)
        vals = [fidelity_tmsv(float(r)) for r in rs]
        assert all(a < b for a, b in zip(vals, vals[1:]))

    def test_domain(self):
        with pytest.raises(ValueError):
            fidelity_tmsv(-0.1)


class TestEffectiveSqueezing:
    def test_no_degradation(self):
        assert effective_squeezing(1.0, 0.0, 1.0) == 1.0

    def test_linear_form(self):
        assert effective_squeezing(1.0, 0.5, 1.0) == 0.5

    def test_sub_classical_regime(self):
        r_eff = effective_squeezing(0.2, 0.5, 1.0)
        assert r_eff == pytest.approx(-0.3, rel=1e-15)
        assert sub_classical(r_eff)
        assert not sub_classical(0.0)


class TestEffectiveFidelity:
    def test_flat_reduction_is_exact(self):
        for r in np.linspace(0.0, 5.0, 11):
            assert fidelity_effective(float(r), 0.0, 1.0) == fidelity_tmsv(float(r))

    def test_reference_value(self):
        assert fidelity_effective(1.0, 0.5, 1.0) == pytest.approx(0.7310585786300049, rel=1e-15)

    def test_zero_everything(self):
        assert fidelity_effective(0.0, 0.0, 1.0) == 0.5

    def test_decreasing_in_beta_sq_and_gamma(self):
        bs = np.linspace(0.0, 2.0, 30)
        vals = [fidelity_effective(1.0, float(b), 1.0) for b in bs]
        assert all(a > b for a, b in zip(vals, vals[1:]))
        gs = np.linspace(0.0, 3.0, 30)
        vals_g = [fidelity_effective(1.0, 0.4, float(g)) for g in gs]
        assert all(a > b for a, b in zip(vals_g, vals_g[1:]))

    def test_sub_classical_value_below_half(self):
        assert fidelity_effective(0.2, 0.5, 1.0) < 0.5


class TestPowerLawFidelity:
    def test_flat_limit_alpha(self):
        assert fidelity_power_law(1.0, 1.0, 1e-8, 1.0) == pytest.approx(
            fidelity_tmsv(1.0), abs=1e-14
        )

    def test_flat_limit_large_k(self):
        assert fidelity_power_law(1.0, 50.0, 1.0, 1.0) == pytest.approx(
            fidelity_tmsv(1.0), abs=1e-14
        )

    def test_reference_value(self):
        # composition of the frozen |beta|^2 = 0.39190124777... with the
        # squeezed-channel formula, verified by direct mpmath evaluation
        assert fidelity_power_law(1.0, 1.0, 1.0, 1.0) == pytest.approx(
            0.77139368866512387, rel=1e-14
        )


class TestDeSitterSqueezed:
    def test_large_k_flat_limit(self):
        assert fidelity_de_sitter_squeezed(1.0, 200.0, 1.0, 1.0) == fidelity_tmsv(1.0)

    def test_cancellation_point(self):
        H = 2.0 * math.pi / math.log(2.0)  # beta_sq = 1 cancels r = 1
        assert fidelity_de_sitter_squeezed(1.0, 1.0, H, 1.0) == pytest.approx(0.5, rel=1e-14)

    def test_small_H_flat_baseline(self):
        # 2 pi k/H = 50: the squeezing shift is ~2e-22, far below 1e-20
        H = 2.0 * math.pi / 50.0
        assert beta_sq_de_sitter(1.0, H) < 1e-20
        assert fidelity_de_sitter_squeezed(1.0, 1.0, H, 1.0) == fidelity_tmsv(1.0)

    def test_monotonic(self):
        ks = np.linspace(0.05, 3.0, 40)
        vals = [fidelity_de_sitter_squeezed(1.0, float(k), 1.0, 1.0) for k in ks]
        assert all(a < b for a, b in zip(vals, vals[1:]))
        hs = np.linspace(0.5, 8.0, 40)
        vals_h = [fidelity_de_sitter_squeezed(1.0, 1.0, float(h), 1.0) for h in hs]
        assert all(a > b for a, b in zip(vals_h, vals_h[1:]))

    def test_small_k_divergence_saturates(self):
        assert fidelity_de_sitter_squeezed(1.0, 1e-8, 1.0, 1.0) == 0.0


class TestDeSitterRatio:
    def test_limits(self):
        assert fidelity_de_sitter_ratio(0.0, 1.0) == 1.0
        assert fidelity_de_sitter_ratio(800.0 / math.pi, 1.0) == 0.5

    def test_reference_value(self):
        assert fidelity_de_sitter_ratio(1.0, 1.0) == pytest.approx(0.52160695913188612, rel=1e-15)

    def test_monotonic_both_axes(self):
        ks = np.linspace(0.0, 5.0, 40)
        vals = [fidelity_de_sitter_ratio(float(k), 1.0) for k in ks]
        assert all(a > b for a, b in zip(vals, vals[1:]))
        hs = np.linspace(0.5, 8.0, 40)
        vals_h = [fidelity_de_sitter_ratio(1.0, float(h)) for h in hs]
        assert all(a < b for a, b in zip(vals_h, vals_h[1:]))

    def test_bounds(self):
        for k in np.geomspace(1e-3, 1e3, 30):
            F = fidelity_de_sitter_ratio(float(k), 1.0)
            assert 0.5 <= F <= 1.0


class TestMatter:
    def test_limits(self):
        assert fidelity_matter(0.0, 1.0) == 0.0
        assert fidelity_matter(1e4, 1.0) == 1.0

    def test_half_point_exact(self):
        k = math.log(2.0) / (2.0 * math.pi)
        assert abs(fidelity_matter(k, 1.0) - 0.5) < 1e-14

    def test_monotone_increasing(self):
        ks = np.linspace(0.0, 3.0, 50)
        vals = [fidelity_matter(float(k), 1.0) for k in ks]
        assert all(a < b for a, b in zip(vals, vals[1:]))


class TestThermalChannel:
    def test_values(self):
        assert fidelity_thermal(0.0) == 1.0
        assert fidelity_thermal(1.0) == 0.5

    def test_identity_with_matter(self):
        for arg in np.geomspace(1e-3, 30.0, 60):
            k = float(arg) / (2.0 * math.pi)
            lhs = fidelity_thermal(beta_sq_matter(k, 1.0))
            rhs = fidelity_matter(k, 1.0)
            assert lhs == pytest.approx(rhs, rel=1e-14)

    def test_domain(self):
        with pytest.raises(ValueError):
            fidelity_thermal(-0.5)


class TestConcurrence:
    def test_linear_values(self):
        assert fidelity_concurrence(0.0) == 0.5
        assert fidelity_concurrence(1.0) == 1.0
        assert fidelity_concurrence(0.5) == 0.75

    def test_domain(self):
        with pytest.raises(ValueError):
            fidelity_concurrence(1.2)
        with pytest.raises(ValueError):
            fidelity_concurrence(-0.1)


class TestSqueezingFromRatio:
    def test_zero(self):
        assert squeezing_from_ratio(0.0, 1.0) == 0.0

    def test_ratio_chain_reproduces_half_plus_ratio(self):
        ratio = math.exp(-math.pi)
        r = squeezing_from_ratio(ratio, 1.0)
        assert fidelity_tmsv(r) == pytest.approx((1.0 + ratio) / 2.0, rel=1e-14)

    def test_divergence_toward_unit_ratio(self):
        assert squeezing_from_ratio(1.0 - 1e-12, 1.0) > 13.0

    def test_degenerate(self):
        with pytest.raises(ValueError):
            squeezing_from_ratio(1.0, 1.0)
        with pytest.raises(ValueError):
            squeezing_from_ratio(2.0, 1.0)

    def test_logistic_artanh_identity(self):
        for x in np.linspace(0.0, 0.99, 50):
            r = squeezing_from_ratio(float(x), 1.0)
            lhs = 1.0 / (1.0 + math.exp(-2.0 * r))
            assert abs(lhs - 0.5 * (1.0 + float(x))) < 1e-12


class TestQueries:
    def test_each_model_matches_direct_function(self):
        cases = [
            (FidelityQuery(FidelityModel.MINKOWSKI, r=1.0), fidelity_tmsv(1.0)),
            (FidelityQuery(FidelityModel.EFFECTIVE_SQUEEZING, r=1.0, n=0.5),
             fidelity_effective(1.0, 0.5, 1.0)),
            (FidelityQuery(FidelityModel.POWER_LAW, r=1.0, k=1.0, alpha=1.0),
             fidelity_power_law(1.0, 1.0, 1.0, 1.0)),
            (FidelityQuery(FidelityModel.DE_SITTER_SQUEEZED, r=1.0, k=1.0, H=1.0),
             fidelity_de_sitter_squeezed(1.0, 1.0, 1.0, 1.0)),
            (FidelityQuery(FidelityModel.DE_SITTER_RATIO, k=1.0, H=1.0),
             fidelity_de_sitter_ratio(1.0, 1.0)),
            (FidelityQuery(FidelityModel.MATTER, k=1.0, H0=1.0), fidelity_matter(1.0, 1.0)),
            (FidelityQuery(FidelityModel.THERMAL_CHANNEL, n=0.7), fidelity_thermal(0.7)),
            (FidelityQuery(FidelityModel.CONCURRENCE, C=0.4), fidelity_concurrence(0.4)),
        ]
        for query, expected in cases:
            assert evaluate(query).fidelity == expected

    def test_missing_field_rejected(self):
        with pytest.raises(ValueError, match="missing"):
            FidelityQuery(FidelityModel.MATTER, k=1.0)

    def test_extra_field_rejected(self):
        with pytest.raises(ValueError, match="does not accept"):
            FidelityQuery(FidelityModel.MINKOWSKI, r=1.0, H=1.0)
        with pytest.raises(ValueError, match="does not accept"):
            FidelityQuery(FidelityModel.MATTER, k=1.0, H0=1.0, gamma=2.0)

    def test_sub_classical_flag_surfaces(self):
        res = evaluate(FidelityQuery(FidelityModel.EFFECTIVE_SQUEEZING, r=0.2, n=0.5))
        assert res.flags == (FLAG_SUB_CLASSICAL,)
        assert res.r_eff == pytest.approx(-0.3)
        assert res.fidelity < 0.5

    def test_gamma_defaults_to_one(self):
        res = evaluate(FidelityQuery(FidelityModel.POWER_LAW, r=1.0, k=1.0, alpha=1.0))
        assert res.fidelity == fidelity_power_law(1.0, 1.0, 1.0, 1.0)
        assert res.beta_sq == pytest.approx(0.39190124777049689, rel=1e-14)


class TestRangeInvariant:
    def test_all_models_within_unit_interval(self):
        rng = np.random.default_rng(3)
        for _ in range(200):
            r = float(rng.uniform(0, 3))
            k = float(rng.uniform(0.01, 20))
            H = float(rng.uniform(0.1, 10))
            values = [
                fidelity_tmsv(r),
                fidelity_effective(r, float(rng.uniform(0, 2)), float(rng.uniform(0, 2))),
                fidelity_power_law(r, k, float(rng.uniform(0.05, 3)), 1.0),
                fidelity_de_sitter_squeezed(r, k, H, 1.0),
                fidelity_de_sitter_ratio(k, H),
                fidelity_matter(k, H),
                fidelity_thermal(float(rng.uniform(0, 10))),
                fidelity_concurrence(float(rng.uniform(0, 1))),
            ]
            assert all(0.0 <= v <= 1.0 for v in values)
