"""Cross-module verification battery.

Each check pins one numeric guarantee of the library (limits, identities,
regressions against closed-form modes, conservation laws, determinism of
the data products) with an explicit tolerance.  The battery is what the
`verify` CLI subcommand runs and what the acceptance test suite asserts;
it uses fixed seeds only, so reports are stable across runs.
"""

from __future__ import annotations

import json
import math
import time
from dataclasses import dataclass

import numpy as np

from . import background, bogoliubov, fidelity, gaussian, modes, specfun, sweeps

try:
    from importlib.metadata import version as _pkg_version

    VERSION = _pkg_version("cosmotele")
except Exception:  # not installed; running from a source tree
    VERSION = "0.1.0"


@dataclass(frozen=True)
class CheckResult:
    name: str
    error: float
    tolerance: float
    wall_time: float

    @property
    def passed(self) -> bool:
        return self.error <= self.tolerance

    def to_dict(self) -> dict:
        return {
            "name": self.name,
            "error": self.error,
            "tolerance": self.tolerance,
            "pass": self.passed,
            "wall_time": self.wall_time,
        }


@dataclass(frozen=True)
class VerifyReport:
    checks: tuple[CheckResult, ...]
    meta: dict

    @property
    def all_passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def to_dict(self) -> dict:
        return {"checks": [c.to_dict() for c in self.checks], "meta": self.meta}

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2) + "\n"


def _timed(name: str, tolerance: float, compute) -> CheckResult:
    start = time.perf_counter()
    error = float(compute())
    return CheckResult(name, error, tolerance, time.perf_counter() - start)


def _bool_error(ok: bool) -> float:
    return 0.0 if ok else 1.0


# ---------------------------------------------------------------------------
# 1. de Sitter ratio-fidelity limits
# ---------------------------------------------------------------------------

def check_de_sitter_limits() -> list[CheckResult]:
    H = 1.0
    results = [
        _timed("ds_ratio_limit_k_zero", 0.0,
               lambda: abs(fidelity.fidelity_de_sitter_ratio(0.0, H) - 1.0)),
        _timed("ds_ratio_limit_large_k", 1e-6,
               lambda: abs(fidelity.fidelity_de_sitter_ratio(20.0 / math.pi, H) - 0.5)),
    ]

    def decreasing():
        # up to k = 10 the decrement stays representable at double precision
        ks = np.geomspace(1e-3, 10.0, 200)
        F = np.array([fidelity.fidelity_de_sitter_ratio(k, H) for k in ks])
        return _bool_error(bool(np.all(np.diff(F) < 0)))

    results.append(_timed("ds_ratio_strictly_decreasing", 0.0, decreasing))
    return results


# ---------------------------------------------------------------------------
# 2. Matter-era curve
# ---------------------------------------------------------------------------

def check_matter_curve() -> list[CheckResult]:
    H0 = 1.0
    k_half = math.log(2.0) * H0 / (2.0 * math.pi)
    k_sat = 20.0 * H0 / (2.0 * math.pi)
    results = [
        _timed("matter_zero_at_k_zero", 0.0,
               lambda: abs(fidelity.fidelity_matter(0.0, H0))),
        _timed("matter_half_at_log2", 1e-14,
               lambda: abs(fidelity.fidelity_matter(k_half, H0) - 0.5)),
        _timed("matter_saturation", 1e-8,
               lambda: abs(fidelity.fidelity_matter(k_sat, H0) - 1.0)),
    ]

    def increasing():
        ks = np.linspace(0.0, 4.0, 200)
        F = np.array([fidelity.fidelity_matter(k, H0) for k in ks])
        return _bool_error(bool(np.all(np.diff(F) > 0)))

    results.append(_timed("matter_monotone_increasing", 0.0, increasing))
    return results


# ---------------------------------------------------------------------------
# 3. Radiation-era ideality
# ---------------------------------------------------------------------------

def check_radiation_ideality() -> list[CheckResult]:
    results = []
    model = background.BackgroundModel.radiation()
    domain = background.ConformalDomain(1.0, 100.0)
    for k in (0.1, 1.0, 10.0):
        spec = modes.ModeSpec(k=k, model=model, vacuum=modes.Vacuum.PLANE_WAVE_IN)
        solution = modes.evolve_mode(spec, domain, tol=1e-12, n_points=256)
        target = 1.0 / math.sqrt(2.0 * k)

        def amplitude(sol=solution, tgt=target):
            return float(np.max(np.abs(np.abs(sol.chi) - tgt))) / tgt

        pair = bogoliubov.numerical_bogoliubov(solution, 100.0, k=k)

        def beta_mag(p=pair):
            return abs(p.beta)

        def fidelity_gap(p=pair):
            composed = fidelity.fidelity_effective(1.0, abs(p.beta) ** 2, 1.0)
            return abs(composed - fidelity.fidelity_tmsv(1.0))

        tag = sweeps.fmt_value(k)
        results.append(_timed(f"radiation_amplitude_constant_k={tag}", 1e-10, amplitude))
        results.append(_timed(f"radiation_beta_zero_k={tag}", 1e-8, beta_mag))
        results.append(_timed(f"radiation_fidelity_flat_k={tag}", 1e-8, fidelity_gap))
    return results


# ---------------------------------------------------------------------------
# 4. de Sitter exact-solution regression
# ---------------------------------------------------------------------------

def check_de_sitter_regression() -> list[CheckResult]:
    results = []
    model = background.BackgroundModel.de_sitter(H=1.0)
    for k in (0.5, 1.0, 2.0):
        # grid log-spaced in |eta| from k|eta| = 1e3 down to 1e-2
        x = np.geomspace(1e3, 1e-2, 400)
        eta_grid = -x / k
        domain = background.ConformalDomain(float(eta_grid[0]), float(eta_grid[-1]))
        spec = modes.ModeSpec(k=k, model=model, vacuum=modes.Vacuum.BUNCH_DAVIES)
        solution = modes.evolve_mode(spec, domain, tol=1e-11, eta_grid=eta_grid)
        exact = np.array([modes.bunch_davies_mode(k, e)[0] for e in eta_grid])

        def rel_err(sol=solution, ex=exact):
            return float(np.max(np.abs(sol.chi - ex) / np.abs(ex)))

        tag = sweeps.fmt_value(k)
        results.append(_timed(f"ds_regression_max_rel_err_k={tag}", 1e-6, rel_err))
        results.append(_timed(f"ds_regression_wronskian_drift_k={tag}", 1e-8,
                              lambda sol=solution: sol.wronskian_drift))
    return results


# ---------------------------------------------------------------------------
# 5. Bogoliubov normalization, property-tested
# ---------------------------------------------------------------------------

def _sech_sq_pulse(amplitude: float, width: float, center: float = 0.0):
    def potential(eta: float) -> float:
        y = (eta - center) / width
        e = math.exp(-2.0 * abs(y))
        return amplitude * 4.0 * e / (1.0 + e) ** 2

    return potential


def check_bogoliubov_normalization(instances: int = 120) -> list[CheckResult]:
    rng = np.random.default_rng(20240901)

    def worst_residual():
        worst = 0.0
        for i in range(instances):
            k = float(rng.uniform(0.4, 4.0))
            if i % 2 == 0:
                # radiation-era plane wave over a random span
                length = float(rng.uniform(5.0, 25.0))
                model = background.BackgroundModel.radiation()
                spec = modes.ModeSpec(k=k, model=model, vacuum=modes.Vacuum.PLANE_WAVE_IN)
                domain = background.ConformalDomain(1.0, 1.0 + length)
                solution = modes.evolve_mode(spec, domain, tol=1e-11, n_points=64)
                eta_out = float(solution.eta_grid[-1])
            else:
                # smooth sech^2 potential pulse between two flat regions
                amplitude = float(rng.uniform(0.2, 3.0))
                width = float(rng.uniform(0.5, 2.0))
                span = 14.0 * width
                grid = np.linspace(-span, span, 64)
                potential = _sech_sq_pulse(amplitude, width)
                chi0, dchi0 = modes.plane_wave_mode(k, float(grid[0]))
                solution = modes.integrate_mode_equation(
                    k, potential, grid, chi0, dchi0, tol=1e-11
                )
                eta_out = float(grid[-1])
            pair = bogoliubov.numerical_bogoliubov(solution, eta_out, k=k)
            worst = max(worst, pair.normalization_residual)
        return worst

    return [_timed("bogoliubov_normalization_residual", 1e-8, worst_residual)]


# ---------------------------------------------------------------------------
# 6. Fidelity identity suite
# ---------------------------------------------------------------------------

def check_fidelity_identities() -> list[CheckResult]:
    def ratio_identity():
        xs = np.linspace(0.0, 0.99, 50)
        worst = 0.0
        for x in xs:
            r = fidelity.squeezing_from_ratio(float(x), 1.0)
            worst = max(worst, abs(fidelity.fidelity_tmsv(r) - 0.5 * (1.0 + x)))
        return worst

    def thermal_matter_identity():
        worst = 0.0
        for arg in np.geomspace(1e-3, 30.0, 120):
            k = arg / (2.0 * math.pi)
            via_thermal = fidelity.fidelity_thermal(bogoliubov.beta_sq_matter(k, 1.0))
            direct = fidelity.fidelity_matter(k, 1.0)
            worst = max(worst, abs(via_thermal - direct) / direct)
        return worst

    def flat_reduction():
        worst = 0.0
        for r in np.linspace(0.0, 5.0, 21):
            worst = max(worst, abs(fidelity.fidelity_effective(float(r), 0.0, 1.0)
                                   - fidelity.fidelity_tmsv(float(r))))
        return worst

    return [
        _timed("fidelity_ratio_identity", 1e-12, ratio_identity),
        _timed("fidelity_thermal_matter_identity", 1e-14, thermal_matter_identity),
        _timed("fidelity_flat_reduction_exact", 0.0, flat_reduction),
    ]


# ---------------------------------------------------------------------------
# 7. Gaussian-formalism checks
# ---------------------------------------------------------------------------

def check_gaussian() -> list[CheckResult]:
    results = [
        _timed("gaussian_vacuum_two_mode_half", 0.0,
               lambda: abs(gaussian.fidelity_two_mode(gaussian.vacuum_two_mode()) - 0.5)),
        _timed("gaussian_vacuum_block_one", 0.0,
               lambda: abs(gaussian.fidelity_symmetric(gaussian.vacuum_block()) - 1.0)),
    ]

    def purity():
        worst = 0.0
        model = background.BackgroundModel.de_sitter(H=1.0)
        for x in np.geomspace(1e-2, 1e3, 61):
            k, eta = 1.0, -float(x)
            # plane wave in flat space
            chi, dchi = modes.plane_wave_mode(k, eta)
            block = gaussian.covariance_from_values(chi, dchi, 1.0)
            worst = max(worst, abs(block.det - 0.25))
            # Bunch-Davies on the de Sitter background
            chi, dchi = modes.bunch_davies_mode(k, eta)
            mode = modes.FieldMode.from_values(eta, chi, dchi, model)
            a = background.scale_factor(model, eta)
            block = gaussian.covariance_from_mode(mode, a, eta)
            worst = max(worst, abs(block.det - 0.25))
        return worst

    results.append(_timed("gaussian_mode_purity", 1e-8, purity))

    def slope(which: int, expected: float):
        xs = np.geomspace(1e-3, 0.1, 40)
        scales = gaussian.superhorizon_scaling(1.0, -0.05, 1.5)
        values = np.array([scales[which](x) for x in xs])
        fit = np.polyfit(np.log(xs), np.log(values), 1)[0]
        return abs(fit - expected) / abs(expected)

    results.append(_timed("gaussian_superhorizon_slope_qq", 0.02, lambda: slope(0, -3.0)))
    results.append(_timed("gaussian_superhorizon_slope_pp", 0.02, lambda: slope(1, -1.0)))
    return results


# ---------------------------------------------------------------------------
# 8. Special-function layer
# ---------------------------------------------------------------------------

_SPECFUN_ORDERS = (0.0, 0.5, 1.0, 1.5, 2.0, 2.5)


def check_specfun() -> list[CheckResult]:
    xs = np.geomspace(1e-3, 1e3, 60)

    def wronskian_identity():
        worst = 0.0
        for nu in _SPECFUN_ORDERS:
            for x in xs:
                j, y = specfun.bessel_jy(nu, float(x))
                jp, yp = specfun.bessel_jy_derivative(nu, float(x))
                target = 2.0 / (math.pi * float(x))
                worst = max(worst, abs(j * yp - jp * y - target) / target)
        return worst

    def recurrence():
        worst = 0.0
        for nu in (1.0, 1.5, 2.0, 2.5):
            for x in xs:
                x = float(x)
                jm, ym = specfun.bessel_jy(nu - 1.0, x)
                j0, y0 = specfun.bessel_jy(nu, x)
                jp, yp = specfun.bessel_jy(nu + 1.0, x)
                scale = max(abs(j0), abs(y0)) * 2.0 * nu / x
                worst = max(worst, abs(jm + jp - 2.0 * nu / x * j0) / scale)
                worst = max(worst, abs(ym + yp - 2.0 * nu / x * y0) / scale)
        return worst

    def half_integer():
        worst = 0.0
        for x in np.geomspace(0.1, 100.0, 40):
            x = float(x)
            amp = math.sqrt(2.0 / (math.pi * x))
            exact_j_half = amp * math.sin(x)
            exact_y_half = -amp * math.cos(x)
            exact_j_3half = amp * (math.sin(x) / x - math.cos(x))
            exact_y_3half = -amp * (math.cos(x) / x + math.sin(x))
            j, y = specfun.bessel_jy(0.5, x)
            j3, y3 = specfun.bessel_jy(1.5, x)
            for got, ref in ((j, exact_j_half), (y, exact_y_half),
                             (j3, exact_j_3half), (y3, exact_y_3half)):
                worst = max(worst, abs(got - ref) / max(abs(ref), amp * 1e-3))
        return worst

    def asymptotic_large():
        # modulus convergence; the complex value carries an O(1/x) phase error
        worst_at_threshold = 0.0
        for nu in (0.5, 1.0, 1.5):
            devs = []
            for x in (10.0, 20.0, 50.0):
                exact = specfun.hankel(nu, x, specfun.HankelKind.SECOND)
                approx = specfun.hankel2_asymptotic_large(nu, x)
                devs.append(abs(abs(approx) - abs(exact)) / abs(exact))
            if devs[2] > devs[0] + 1e-12:
                return 1.0  # should only improve with x (up to rounding noise)
            worst_at_threshold = max(worst_at_threshold, devs[0])
        return worst_at_threshold

    def asymptotic_small():
        devs = []
        for x in (0.01, 0.001):
            exact = specfun.hankel(1.5, x, specfun.HankelKind.SECOND)
            approx = specfun.hankel2_asymptotic_small(1.5, x)
            devs.append(abs(abs(approx) - abs(exact)) / abs(exact))
        if devs[1] > devs[0]:
            return 1.0  # should improve toward x -> 0
        return devs[0]

    return [
        _timed("bessel_wronskian_identity", 1e-8, wronskian_identity),
        _timed("bessel_recurrence", 1e-8, recurrence),
        _timed("bessel_half_integer_closed_forms", 1e-10, half_integer),
        _timed("hankel_asymptotic_large_regime", 1e-2, asymptotic_large),
        _timed("hankel_asymptotic_small_regime", 5e-2, asymptotic_small),
    ]


# ---------------------------------------------------------------------------
# 9. Figure and table regeneration
# ---------------------------------------------------------------------------

def check_figures_tables() -> list[CheckResult]:
    def fig1_shape():
        rows = list(sweeps.fig1_rows())
        by_H = {}
        for H, k, F in rows:
            by_H.setdefault(H, []).append((k, F))
        ok = True
        for H, curve in by_H.items():
            F = np.array([f for _, f in curve])
            ks = np.array([k for k, _ in curve])
            ok &= bool(np.all(np.diff(F) <= 0))  # tails saturate at exactly 1/2
            ok &= bool(np.all((F >= 0.5) & (F <= 1.0)))
            ok &= F[0] > 0.99  # smallest k is deep in the long-wavelength limit
            tail = F[math.pi * ks / H >= 20.0]
            ok &= tail.size > 0 if H <= 1.0 else True
            ok &= bool(np.all(np.abs(tail - 0.5) <= 1e-6))
        # doubling H at fixed k raises the fidelity
        Hs = sorted(by_H)
        for lo, hi in zip(Hs, Hs[1:]):
            F_lo = np.array([f for _, f in by_H[lo]])
            F_hi = np.array([f for _, f in by_H[hi]])
            ok &= bool(np.all(F_hi > F_lo))
        return _bool_error(ok)

    def fig2_shape():
        rows = list(sweeps.fig2_rows(H0=1.0))
        F = np.array([f for _, _, f in rows])
        ks = np.array([k for _, k, _ in rows])
        ok = F[0] == 0.0 and bool(np.all(np.diff(F) > 0))
        sat = F[2.0 * math.pi * ks >= 20.0]
        ok &= sat.size > 0 and bool(np.all(np.abs(sat - 1.0) < 1e-8))
        return _bool_error(ok)

    def table_structure():
        rows = list(sweeps.table_rows(r=1.0))
        by_era = {row[0]: row for row in rows}
        ok = abs(by_era["minkowski"][3] - 0.8807970779778823) < 1e-12
        ok &= by_era["radiation"][3:6] == by_era["minkowski"][3:6]
        matter_f = by_era["matter"][3:6]
        ds_f = by_era["de_sitter"][3:6]
        ok &= matter_f[0] < matter_f[1] < matter_f[2]
        ok &= ds_f[0] > ds_f[1] > ds_f[2]
        ok &= "increases with k" in by_era["matter"][-1]
        ok &= "decreases with k" in by_era["de_sitter"][-1]
        return _bool_error(ok)

    def deterministic():
        a = sweeps.rows_to_csv_bytes(sweeps.FIG1_HEADER, sweeps.fig1_rows())
        b = sweeps.rows_to_csv_bytes(sweeps.FIG1_HEADER, sweeps.fig1_rows())
        c = sweeps.rows_to_csv_bytes(sweeps.FIG2_HEADER, sweeps.fig2_rows())
        d = sweeps.rows_to_csv_bytes(sweeps.FIG2_HEADER, sweeps.fig2_rows())
        header = sweeps.table_header((0.5, 1.0, 2.0))
        e = sweeps.rows_to_csv_bytes(header, sweeps.table_rows(r=1.0))
        f = sweeps.rows_to_csv_bytes(header, sweeps.table_rows(r=1.0))
        return _bool_error(a == b and c == d and e == f)

    return [
        _timed("fig1_monotone_and_limits", 0.0, fig1_shape),
        _timed("fig2_monotone_and_saturation", 0.0, fig2_shape),
        _timed("table_era_structure", 0.0, table_structure),
        _timed("figure_table_determinism", 0.0, deterministic),
    ]


# ---------------------------------------------------------------------------
# 10. Sweep determinism
# ---------------------------------------------------------------------------

def _reference_sweep_config() -> sweeps.SweepConfig:
    return sweeps.SweepConfig(
        models=(
            fidelity.FidelityModel.MINKOWSKI,
            fidelity.FidelityModel.POWER_LAW,
            fidelity.FidelityModel.DE_SITTER_SQUEEZED,
            fidelity.FidelityModel.DE_SITTER_RATIO,
            fidelity.FidelityModel.MATTER,
            fidelity.FidelityModel.THERMAL_CHANNEL,
            fidelity.FidelityModel.CONCURRENCE,
        ),
        k_grid=sweeps.KGrid(0.1, 10.0, 7, "log"),
        r=(0.5, 1.0),
        gamma=(1.0,),
        H=(1.0, 2.0),
        H0=(1.0,),
        alpha=(0.5, 2.0),
        n=(0.5,),
        C=(0.5,),
    )


def check_determinism() -> list[CheckResult]:
    def sweep_threads():
        config = _reference_sweep_config()
        serial = sweeps.sweep_bytes(config, threads=1)
        auto = sweeps.sweep_bytes(config, threads=0)
        again = sweeps.sweep_bytes(config, threads=0)
        return _bool_error(serial == auto == again)

    return [_timed("sweep_byte_determinism", 0.0, sweep_threads)]


# ---------------------------------------------------------------------------
# The full battery
# ---------------------------------------------------------------------------

CHECK_GROUPS = (
    ("de_sitter_limits", check_de_sitter_limits),
    ("matter_curve", check_matter_curve),
    ("radiation_ideality", check_radiation_ideality),
    ("de_sitter_regression", check_de_sitter_regression),
    ("bogoliubov_normalization", check_bogoliubov_normalization),
    ("fidelity_identities", check_fidelity_identities),
    ("gaussian", check_gaussian),
    ("specfun", check_specfun),
    ("figures_tables", check_figures_tables),
    ("determinism", check_determinism),
)


def run_all() -> VerifyReport:
    """Run every check; individual failures never abort the battery."""
    checks: list[CheckResult] = []
    for group, fn in CHECK_GROUPS:
        try:
            checks.extend(fn())
        except Exception as exc:  # a crashed group is a failed check
            # finite sentinel keeps the report strict JSON
            checks.append(CheckResult(f"{group} (crashed: {exc})", 1e308, 0.0, 0.0))
    meta = {import_name: _module_version(import_name) for import_name in ("numpy", "scipy")}
    meta["version"] = VERSION
    return VerifyReport(checks=tuple(checks), meta=meta)


def _module_version(name: str) -> str:
    try:
        return _pkg_version(name)
    except Exception:
        return "unknown"
