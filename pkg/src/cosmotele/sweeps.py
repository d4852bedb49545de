"""Deterministic data products: figure curves, the era comparison table,
and cartesian fidelity sweeps.

Everything here is plain row generation; the CLI wraps it with argument
parsing and file I/O.  Floats are rendered with shortest round-trip
decimals (repr), CSV uses UTF-8 with LF line endings and a header row, so
repeated runs of the same configuration are byte-identical.
"""

from __future__ import annotations

import csv
import io
import json
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from .fidelity import (
    FidelityModel,
    FidelityQuery,
    evaluate,
    fidelity_de_sitter_ratio,
    fidelity_effective,
    fidelity_matter,
    fidelity_tmsv,
)

DEFAULT_FIG1_H_LIST = (0.5, 1.0, 2.0, 5.0)

ERA_REMARKS = {
    "minkowski": "ideal channel; no particle creation",
    "radiation": "matches Minkowski (conformally flat; up to mode mismatch)",
    "matter": "moderate degradation; fidelity increases with k",
    "de_sitter": "strongest degradation; fidelity decreases with k",
}

ERA_SCALE_LAWS = {
    "minkowski": "a = const",
    "radiation": "a(t) ~ t^(1/2), a(eta) ~ eta",
    "matter": "a(t) ~ t^(2/3), a(eta) ~ eta^2",
    "de_sitter": "a(t) ~ exp(H t), a(eta) = -1/(H eta)",
}

ERA_BETA_SQ_FORMULAS = {
    "minkowski": "0",
    "radiation": "0",
    "matter": "1/(exp(2 pi k/H0) - 1)",
    "de_sitter": "1/(exp(2 pi k/H) - 1)",
}


def fmt_value(value) -> str:
    """Shortest round-trip rendering; None becomes the empty string."""
    if value is None:
        return ""
    if isinstance(value, float):
        return repr(value)
    return str(value)


def rows_to_csv_bytes(header, rows) -> bytes:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(header)
    for row in rows:
        writer.writerow([fmt_value(v) for v in row])
    return buf.getvalue().encode("utf-8")


def rows_to_json_bytes(header, rows) -> bytes:
    payload = {"columns": list(header), "rows": [list(row) for row in rows]}
    return (json.dumps(payload, indent=2) + "\n").encode("utf-8")


def write_bytes(path: str, data: bytes) -> None:
    with open(path, "wb") as fh:
        fh.write(data)


# ---------------------------------------------------------------------------
# k grids
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class KGrid:
    """A wavenumber grid: points values from min to max, linear or log."""

    min: float
    max: float
    points: int
    spacing: str = "log"

    def __post_init__(self):
        if self.spacing not in ("linear", "log"):
            raise ValueError(f"k_grid.spacing must be 'linear' or 'log', got {self.spacing!r}")
        if self.spacing == "log" and self.min <= 0:
            raise ValueError(f"k_grid.min must be > 0 for log spacing, got {self.min}")
        if self.min < 0:
            raise ValueError(f"k_grid.min must be nonnegative, got {self.min}")
        if self.max <= self.min:
            raise ValueError(f"k_grid.max must exceed k_grid.min, got [{self.min}, {self.max}]")
        if self.points < 2:
            raise ValueError(f"k_grid.points must be >= 2, got {self.points}")

    def values(self) -> np.ndarray:
        if self.spacing == "log":
            return np.geomspace(self.min, self.max, self.points)
        return np.linspace(self.min, self.max, self.points)


# ---------------------------------------------------------------------------
# Figure curves and the era table
# ---------------------------------------------------------------------------

FIG1_HEADER = ("H", "k", "fidelity")


def fig1_rows(h_list=DEFAULT_FIG1_H_LIST, k_grid: KGrid | None = None):
    """de Sitter ratio-fidelity curves, ordered by (H asc, k asc)."""
    if k_grid is None:
        k_grid = KGrid(1e-3, 10.0, 100, "log")
    ks = k_grid.values()
    for H in sorted(h_list):
        if H <= 0:
            raise ValueError(f"H values must be positive, got {H}")
        for k in ks:
            yield (float(H), float(k), fidelity_de_sitter_ratio(float(k), float(H)))


FIG2_HEADER = ("H0", "k", "fidelity")


def fig2_rows(H0: float = 1.0, k_grid: KGrid | None = None):
    """Matter-era fidelity curve, rising from 0 at k = 0 and saturating at 1."""
    if H0 <= 0:
        raise ValueError(f"H0 must be positive, got {H0}")
    if k_grid is None:
        k_grid = KGrid(0.0, 4.0 * H0, 100, "linear")
    for k in k_grid.values():
        yield (float(H0), float(k), fidelity_matter(float(k), H0))


def table_header(k_samples) -> tuple:
    return ("era", "scale_factor_law", "beta_sq_formula",
            *[f"fidelity_at_k={fmt_value(float(k))}" for k in k_samples],
            "remark")


def table_rows(r: float, gamma: float = 1.0, k_samples=(0.5, 1.0, 2.0),
               H: float = 1.0, H0: float = 1.0):
    """One row per era, mirroring the fidelity comparison across backgrounds.

    Minkowski and radiation share the flat-channel value (the latter with
    an explicit zero particle number); matter uses the thermal-channel
    curve, de Sitter the ratio curve.
    """
    k_samples = [float(k) for k in k_samples]
    flat = [fidelity_tmsv(r)] * len(k_samples)
    radiation = [fidelity_effective(r, 0.0, gamma)] * len(k_samples)
    matter = [fidelity_matter(k, H0) for k in k_samples]
    de_sitter = [fidelity_de_sitter_ratio(k, H) for k in k_samples]
    for era, fids in (("minkowski", flat), ("radiation", radiation),
                      ("matter", matter), ("de_sitter", de_sitter)):
        yield (era, ERA_SCALE_LAWS[era], ERA_BETA_SQ_FORMULAS[era],
               *fids, ERA_REMARKS[era])


def table_text(r: float, gamma: float = 1.0, k_samples=(0.5, 1.0, 2.0),
               H: float = 1.0, H0: float = 1.0) -> str:
    """Aligned text rendering of the era table."""
    header = table_header(k_samples)
    rows = [tuple(fmt_value(v) for v in row)
            for row in table_rows(r, gamma, k_samples, H, H0)]
    widths = [max(len(header[i]), *(len(row[i]) for row in rows)) for i in range(len(header))]
    lines = ["  ".join(h.ljust(w) for h, w in zip(header, widths)).rstrip()]
    lines.append("  ".join("-" * w for w in widths))
    for row in rows:
        lines.append("  ".join(c.ljust(w) for c, w in zip(row, widths)).rstrip())
    return "\n".join(lines) + "\n"


# ---------------------------------------------------------------------------
# Cartesian fidelity sweeps
# ---------------------------------------------------------------------------

SWEEP_HEADER = ("model", "k", "H", "H0", "alpha", "r", "gamma",
                "beta_sq", "n", "fidelity", "flags")

# which parameter lists each model consumes
_MODEL_PARAMS = {
    FidelityModel.MINKOWSKI: ("r",),
    FidelityModel.EFFECTIVE_SQUEEZING: ("n", "r", "gamma"),
    FidelityModel.POWER_LAW: ("alpha", "r", "gamma", "k"),
    FidelityModel.DE_SITTER_SQUEEZED: ("H", "r", "gamma", "k"),
    FidelityModel.DE_SITTER_RATIO: ("H", "k"),
    FidelityModel.MATTER: ("H0", "k"),
    FidelityModel.THERMAL_CHANNEL: ("n",),
    FidelityModel.CONCURRENCE: ("C",),
}


class SweepConfigError(ValueError):
    """Invalid sweep configuration; message names the offending key."""


@dataclass(frozen=True)
class SweepConfig:
    """A cartesian sweep over fidelity queries.

    models picks the fidelity formulas; each model draws the parameter
    lists it needs (k from k_grid, the rest from the per-name lists).
    Row order is lexicographic over (model, era parameter, r, gamma, k),
    independent of threading.
    """

    models: tuple[FidelityModel, ...]
    k_grid: KGrid | None = None
    r: tuple[float, ...] = ()
    gamma: tuple[float, ...] = (1.0,)
    H: tuple[float, ...] = ()
    H0: tuple[float, ...] = ()
    alpha: tuple[float, ...] = ()
    n: tuple[float, ...] = ()
    C: tuple[float, ...] = ()
    out: str | None = None
    format: str = "csv"

    def __post_init__(self):
        if not self.models:
            raise SweepConfigError("models: at least one fidelity model is required")
        if self.format not in ("csv", "json"):
            raise SweepConfigError(f"format: must be 'csv' or 'json', got {self.format!r}")
        if self.k_grid is not None and self.k_grid.min <= 0:
            raise SweepConfigError("k_grid.min: must be > 0 in a fidelity sweep")
        for model in self.models:
            for name in _MODEL_PARAMS[model]:
                if name == "k":
                    if self.k_grid is None:
                        raise SweepConfigError(f"k_grid: required by model {model.value!r}")
                elif not getattr(self, name):
                    raise SweepConfigError(
                        f"{name}: non-empty list required by model {model.value!r}"
                    )

    @classmethod
    def from_dict(cls, raw: dict) -> "SweepConfig":
        known = {"models", "k_grid", "r", "gamma", "H", "H0", "alpha", "n", "C",
                 "out", "format"}
        unknown = set(raw) - known
        if unknown:
            raise SweepConfigError(f"unknown config keys: {sorted(unknown)}")
        if "models" not in raw:
            raise SweepConfigError("models: key is required")
        models = []
        for i, name in enumerate(raw["models"]):
            try:
                models.append(FidelityModel(name))
            except ValueError:
                valid = sorted(m.value for m in FidelityModel)
                raise SweepConfigError(f"models[{i}]: unknown model {name!r}; one of {valid}")
        k_grid = None
        if "k_grid" in raw:
            spec = raw["k_grid"]
            for key in ("min", "max", "points"):
                if key not in spec:
                    raise SweepConfigError(f"k_grid.{key}: key is required")
            try:
                k_grid = KGrid(float(spec["min"]), float(spec["max"]),
                               int(spec["points"]), spec.get("spacing", "log"))
            except ValueError as exc:
                raise SweepConfigError(str(exc))
        lists = {}
        for name in ("r", "gamma", "H", "H0", "alpha", "n", "C"):
            if name in raw:
                values = raw[name]
                if not isinstance(values, (list, tuple)):
                    raise SweepConfigError(f"{name}: must be a list of numbers")
                lists[name] = tuple(float(v) for v in values)
        return cls(models=tuple(models), k_grid=k_grid,
                   out=raw.get("out"), format=raw.get("format", "csv"), **lists)

    @classmethod
    def from_json_file(cls, path: str) -> "SweepConfig":
        with open(path, "r", encoding="utf-8") as fh:
            try:
                raw = json.load(fh)
            except json.JSONDecodeError as exc:
                raise SweepConfigError(f"{path}: invalid JSON at line {exc.lineno}: {exc.msg}")
        if not isinstance(raw, dict):
            raise SweepConfigError(f"{path}: top-level JSON value must be an object")
        return cls.from_dict(raw)


def _sweep_queries(config: SweepConfig):
    """Queries in output order: (model, era param, r, gamma, k) ascending."""
    ks = config.k_grid.values() if config.k_grid is not None else [None]
    for model in sorted(set(config.models), key=lambda m: m.value):
        params = _MODEL_PARAMS[model]
        era_name = next((p for p in params if p in ("H", "H0", "alpha", "n", "C")), None)
        era_values = sorted(getattr(config, era_name)) if era_name else [None]
        r_values = sorted(config.r) if "r" in params else [None]
        g_values = sorted(config.gamma) if "gamma" in params else [None]
        k_values = ks if "k" in params else [None]
        for era in era_values:
            for r in r_values:
                for gamma in g_values:
                    for k in k_values:
                        kwargs = {"model": model}
                        if era_name:
                            kwargs[era_name] = era
                        if r is not None:
                            kwargs["r"] = r
                        if gamma is not None:
                            kwargs["gamma"] = gamma
                        if k is not None:
                            kwargs["k"] = float(k)
                        yield FidelityQuery(**kwargs)


def _sweep_row(query: FidelityQuery) -> tuple:
    result = evaluate(query)
    return (
        query.model.value, query.k, query.H, query.H0, query.alpha,
        query.r, query.gamma, result.beta_sq, query.n,
        result.fidelity, ";".join(result.flags),
    )


def sweep_rows(config: SweepConfig, threads: int = 0) -> list[tuple]:
    """Evaluate the sweep; output order is independent of thread count."""
    queries = list(_sweep_queries(config))
    if threads == 1 or len(queries) < 2:
        return [_sweep_row(q) for q in queries]
    workers = threads if threads > 0 else min(32, os.cpu_count() or 1)
    with ThreadPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(_sweep_row, queries))


def sweep_bytes(config: SweepConfig, threads: int = 0) -> bytes:
    rows = sweep_rows(config, threads=threads)
    if config.format == "json":
        return rows_to_json_bytes(SWEEP_HEADER, rows)
    return rows_to_csv_bytes(SWEEP_HEADER, rows)
