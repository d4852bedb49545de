"""Command-line driver.

Subcommands
-----------
fig1    de Sitter fidelity curves F(k) for a list of Hubble rates
fig2    matter-era fidelity curve F(k)
table   era comparison table (CSV plus aligned text on stdout)
modes   numerically evolve one mode and dump chi(eta) as CSV
sweep   cartesian fidelity sweep driven by a JSON config file
verify  run the numerical verification battery, emit a JSON report

Exit codes: 0 success / all checks pass, 1 validation error,
2 numerical check failure, 3 I/O error.  All outputs are byte-stable
across reruns of the same invocation.
"""

from __future__ import annotations

import argparse
import sys

from . import sweeps, verify
from .background import BackgroundModel, ConformalDomain
from .modes import IntegrationError, ModeSpec, SOLUTION_CSV_HEADER, Vacuum, evolve_mode, solution_rows

EXIT_OK = 0
EXIT_VALIDATION = 1
EXIT_NUMERICAL = 2
EXIT_IO = 3

WRONSKIAN_GATE = 1e-8


class _CliError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    # argparse exits with status 2 by default; route through our own codes
    def error(self, message):
        raise _CliError(message)


def _emit(path: str, header, rows, fmt: str) -> None:
    if fmt == "json":
        data = sweeps.rows_to_json_bytes(header, rows)
    else:
        data = sweeps.rows_to_csv_bytes(header, rows)
    sweeps.write_bytes(path, data)


def _add_common(parser, default_out: str) -> None:
    parser.add_argument("--out", default=default_out, help="output path")
    parser.add_argument("--format", choices=("csv", "json"), default="csv")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="cosmotele", description=__doc__,
                     formatter_class=argparse.RawDescriptionHelpFormatter)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("fig1", help="de Sitter fidelity curves over k")
    p.add_argument("--h-list", type=float, nargs="+", default=list(sweeps.DEFAULT_FIG1_H_LIST),
                   help="Hubble rates, one curve each")
    p.add_argument("--k-min", type=float, default=1e-3)
    p.add_argument("--k-max", type=float, default=10.0)
    p.add_argument("--k-points", type=int, default=100)
    p.add_argument("--spacing", choices=("linear", "log"), default="log")
    _add_common(p, "fig1.csv")

    p = sub.add_parser("fig2", help="matter-era fidelity curve over k")
    p.add_argument("--h0", type=float, default=1.0)
    p.add_argument("--k-min", type=float, default=0.0)
    p.add_argument("--k-max", type=float, default=4.0)
    p.add_argument("--k-points", type=int, default=100)
    p.add_argument("--spacing", choices=("linear", "log"), default="linear")
    _add_common(p, "fig2.csv")

    p = sub.add_parser("table", help="era comparison table")
    p.add_argument("--r", type=float, default=1.0, help="squeezing parameter")
    p.add_argument("--gamma", type=float, default=1.0)
    p.add_argument("--hubble", type=float, default=1.0, help="de Sitter H")
    p.add_argument("--h0", type=float, default=1.0, help="matter-era H0")
    p.add_argument("--k-samples", type=float, nargs="+", default=[0.5, 1.0, 2.0])
    _add_common(p, "table.csv")

    p = sub.add_parser("modes", help="evolve one mode and dump chi(eta)")
    p.add_argument("--model", required=True,
                   choices=("minkowski", "power_law", "radiation", "matter", "de_sitter"))
    p.add_argument("--alpha", type=float, help="power-law exponent")
    p.add_argument("--hubble", type=float, help="de Sitter H")
    p.add_argument("--h0", type=float, help="matter-era H0")
    p.add_argument("--a-ref", type=float, default=1.0)
    p.add_argument("--k", type=float, required=True)
    p.add_argument("--eta-min", type=float, required=True)
    p.add_argument("--eta-max", type=float, required=True)
    p.add_argument("--points", type=int, default=200)
    p.add_argument("--vacuum", choices=("auto", "plane_wave", "bunch_davies", "hankel"),
                   default="auto")
    p.add_argument("--tol", type=float, default=1e-10)
    _add_common(p, "modes.csv")

    p = sub.add_parser("sweep", help="cartesian fidelity sweep from a JSON config")
    p.add_argument("--config", required=True, help="path to the sweep config (JSON)")
    p.add_argument("--out", default=None, help="output path (overrides config)")
    p.add_argument("--format", choices=("csv", "json"), default=None,
                   help="output format (overrides config)")
    p.add_argument("--threads", type=int, default=0, help="worker threads; 0 = auto")

    p = sub.add_parser("verify", help="run the verification battery")
    p.add_argument("--out", default=None, help="write the JSON report here (default stdout)")

    return parser


# ---------------------------------------------------------------------------
# Subcommands
# ---------------------------------------------------------------------------

def _cmd_fig1(args) -> int:
    grid = sweeps.KGrid(args.k_min, args.k_max, args.k_points, args.spacing)
    rows = list(sweeps.fig1_rows(args.h_list, grid))
    _emit(args.out, sweeps.FIG1_HEADER, rows, args.format)
    return EXIT_OK


def _cmd_fig2(args) -> int:
    grid = sweeps.KGrid(args.k_min, args.k_max, args.k_points, args.spacing)
    rows = list(sweeps.fig2_rows(args.h0, grid))
    _emit(args.out, sweeps.FIG2_HEADER, rows, args.format)
    return EXIT_OK


def _cmd_table(args) -> int:
    header = sweeps.table_header(args.k_samples)
    rows = list(sweeps.table_rows(args.r, args.gamma, args.k_samples, args.hubble, args.h0))
    _emit(args.out, header, rows, args.format)
    sys.stdout.write(sweeps.table_text(args.r, args.gamma, args.k_samples, args.hubble, args.h0))
    return EXIT_OK


def _build_model(args) -> BackgroundModel:
    if args.model == "minkowski":
        return BackgroundModel.minkowski(a_ref=args.a_ref)
    if args.model == "radiation":
        return BackgroundModel.radiation(a_ref=args.a_ref)
    if args.model == "power_law":
        if args.alpha is None:
            raise _CliError("--alpha is required for --model power_law")
        return BackgroundModel.power_law(args.alpha, a_ref=args.a_ref)
    if args.model == "matter":
        if args.h0 is None:
            raise _CliError("--h0 is required for --model matter")
        return BackgroundModel.matter(args.h0, a_ref=args.a_ref)
    if args.hubble is None:
        raise _CliError("--hubble is required for --model de_sitter")
    return BackgroundModel.de_sitter(args.hubble)


_AUTO_VACUUM = {
    "minkowski": Vacuum.PLANE_WAVE_IN,
    "radiation": Vacuum.PLANE_WAVE_IN,
    "power_law": Vacuum.HANKEL,
    "matter": Vacuum.BUNCH_DAVIES,
    "de_sitter": Vacuum.BUNCH_DAVIES,
}


def _cmd_modes(args) -> int:
    model = _build_model(args)
    if args.vacuum == "auto":
        vacuum = _AUTO_VACUUM[args.model]
    else:
        vacuum = Vacuum(args.vacuum)
    spec = ModeSpec(k=args.k, model=model, vacuum=vacuum)
    domain = ConformalDomain(args.eta_min, args.eta_max)
    try:
        solution = evolve_mode(spec, domain, tol=args.tol, n_points=args.points)
    except IntegrationError as exc:
        sys.stderr.write(f"cosmotele modes: integration failed at eta = {exc.eta}: {exc}\n")
        return EXIT_NUMERICAL
    _emit(args.out, SOLUTION_CSV_HEADER, list(solution_rows(solution)), args.format)
    if solution.wronskian_drift > WRONSKIAN_GATE:
        sys.stderr.write(
            f"cosmotele modes: Wronskian drift {solution.wronskian_drift:.3e} "
            f"exceeds {WRONSKIAN_GATE:.1e}\n"
        )
        return EXIT_NUMERICAL
    return EXIT_OK


def _cmd_sweep(args) -> int:
    config = sweeps.SweepConfig.from_json_file(args.config)
    fmt = args.format or config.format
    out = args.out or config.out
    if out is None:
        raise _CliError("no output path: pass --out or set 'out' in the config")
    rows = sweeps.sweep_rows(config, threads=args.threads)
    if fmt == "json":
        data = sweeps.rows_to_json_bytes(sweeps.SWEEP_HEADER, rows)
    else:
        data = sweeps.rows_to_csv_bytes(sweeps.SWEEP_HEADER, rows)
    sweeps.write_bytes(out, data)
    return EXIT_OK


def _cmd_verify(args) -> int:
    report = verify.run_all()
    text = report.to_json()
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    for check in report.checks:
        status = "pass" if check.passed else "FAIL"
        sys.stderr.write(f"{status}  {check.name}  error={check.error:.3e} "
                         f"tol={check.tolerance:.1e}\n")
    return EXIT_OK if report.all_passed else EXIT_NUMERICAL


_COMMANDS = {
    "fig1": _cmd_fig1,
    "fig2": _cmd_fig2,
    "table": _cmd_table,
    "modes": _cmd_modes,
    "sweep": _cmd_sweep,
    "verify": _cmd_verify,
}


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        return _COMMANDS[args.command](args)
    except (_CliError, sweeps.SweepConfigError, ValueError) as exc:
        sys.stderr.write(f"cosmotele: {exc}\n")
        return EXIT_VALIDATION
    except OSError as exc:
        sys.stderr.write(f"cosmotele: I/O error: {exc}\n")
        return EXIT_IO


if __name__ == "__main__":
    sys.exit(main())
