"""Command-line front end.

Seven subcommands cover the library surface: ``spectrum`` (per-block
eigenvalue table), ``metric`` (one block's metric operator), ``discriminate``
(the static discrimination report at sin(alpha) = cos(eps)), ``projectors``
(the projector matrices, both constructions), ``evolve`` (overlap trajectory
with the orthogonality-time footer), ``scan`` (the (eps, alpha) grid dataset
behind breakdown curves), and ``formula-audit`` output via ``eq-audit``
(residuals of the carried closed-form tabulations).

Conventions shared by every command:

* CSV is the primary format; ``--format json`` mirrors the same content as a
  JSON document validating against the schemas shipped under docs/schemas/.
* Floats print with 17 significant digits, lines end with "\\n", output is
  UTF-8; identical configurations produce byte-identical output.
* Exit codes: 0 success, 2 usage error (argparse validation), 3 domain error
  (a single-line diagnostic naming the violated condition goes to stderr).
* The environment variable PSEUDOHERM_SEED is reserved but unused: no core
  code path draws random numbers.
"""

from __future__ import annotations

import argparse
import dataclasses
import json
import math
import sys

import numpy as np

from . import __version__, blocks, evolution, fockspace, metric, states
from .params import ModelParams

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_DOMAIN = 3

#: Search window for orthogonality times, in beta-periods (scan and audits).
SCAN_PERIODS = 50.0
#: Relative tolerance for flagging a block as exactly exceptional.
EXCEPTIONAL_FLAG_RTOL = 1e-12


# ---------------------------------------------------------------- formatting


def _fmt(value) -> str:
    """Fixed CSV token formatting: 17 significant digits, true/false, text."""
    if isinstance(value, (bool, np.bool_)):
        return "true" if value else "false"
    if isinstance(value, (int, np.integer)):
        return str(int(value))
    if isinstance(value, str):
        return value
    return f"{float(value):.17g}"


def _csv_text(header: list[str], rows: list[list]) -> str:
    lines = [",".join(header)]
    lines.extend(",".join(_fmt(v) for v in row) for row in rows)
    return "\n".join(lines) + "\n"


def _jsonable(obj):
    """Recursively convert numpy scalars and map non-finite floats to null."""
    if isinstance(obj, dict):
        return {key: _jsonable(val) for key, val in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_jsonable(val) for val in obj]
    if isinstance(obj, (bool, np.bool_)):
        return bool(obj)
    if isinstance(obj, (int, np.integer)):
        return int(obj)
    if isinstance(obj, (float, np.floating)):
        val = float(obj)
        return val if math.isfinite(val) else None
    return obj


def _json_text(obj) -> str:
    return json.dumps(_jsonable(obj), indent=2, allow_nan=False) + "\n"


def _emit(text: str, out_path: str | None) -> None:
    if out_path is None:
        sys.stdout.write(text)
    else:
        with open(out_path, "w", encoding="utf-8", newline="") as handle:
            handle.write(text)


# ----------------------------------------------------------- flag validation


def _positive_float(text: str) -> float:
    value = float(text)
    if not (math.isfinite(value) and value > 0):
        raise argparse.ArgumentTypeError(f"must be a positive number, got {text!r}")
    return value


def _nonnegative_float(text: str) -> float:
    value = float(text)
    if not (math.isfinite(value) and value >= 0):
        raise argparse.ArgumentTypeError(
            f"must be a non-negative number, got {text!r}"
        )
    return value


def _finite_float(text: str) -> float:
    value = float(text)
    if not math.isfinite(value):
        raise argparse.ArgumentTypeError(f"must be finite, got {text!r}")
    return value


def _eps_state(text: str) -> float:
    value = float(text)
    if not 0 < value < math.pi / 2:
        raise argparse.ArgumentTypeError(
            f"state separation must lie in (0, pi/2), got {text!r}"
        )
    return value


def _eps_list(text: str) -> tuple[float, ...]:
    try:
        values = tuple(float(tok) for tok in text.split(",") if tok.strip())
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"bad separation list {text!r}") from exc
    if not values:
        raise argparse.ArgumentTypeError("separation list is empty")
    for value in values:
        if not 0 < value < math.pi / 2:
            raise argparse.ArgumentTypeError(
                f"every separation must lie in (0, pi/2), got {value}"
            )
    return values


def _positive_int(text: str) -> int:
    value = int(text)
    if value < 1:
        raise argparse.ArgumentTypeError(f"must be >= 1, got {text!r}")
    return value


def _nonnegative_int(text: str) -> int:
    value = int(text)
    if value < 0:
        raise argparse.ArgumentTypeError(f"must be >= 0, got {text!r}")
    return value


def _params_from(args) -> ModelParams:
    return ModelParams(
        hbar_omega=args.hbar_omega, eps_energy=args.eps_energy, rho=args.rho
    )


# --------------------------------------------------------------- subcommands


def cmd_spectrum(args) -> int:
    params = _params_from(args)
    rows = []
    for n in range(args.n_max):
        reality = blocks.reality_condition(n, params)
        boundary_gap = abs(params.detuning - 2.0 * params.rho * math.sqrt(n + 1))
        exceptional = reality and boundary_gap <= EXCEPTIONAL_FLAG_RTOL * max(
            params.detuning, 1.0
        )
        if reality:
            lam_plus, lam_minus = blocks.block_eigenvalues(n, params)
            alpha = blocks.alpha_of(n, params)
        else:
            lam_plus = lam_minus = alpha = math.nan
        rows.append([n, lam_plus, lam_minus, alpha, reality, exceptional])
    header = [
        "n",
        "lambda_plus",
        "lambda_minus",
        "alpha",
        "reality_flag",
        "exceptional_flag",
    ]
    if args.format == "json":
        doc = {
            "command": "spectrum",
            "config": {
                "hbar_omega": params.hbar_omega,
                "eps_energy": params.eps_energy,
                "rho": params.rho,
                "n_max": args.n_max,
            },
            "rows": [dict(zip(header, row)) for row in rows],
        }
        _emit(_json_text(doc), args.out)
    else:
        _emit(_csv_text(header, rows), args.out)
    return EXIT_OK


def cmd_metric(args) -> int:
    params = _params_from(args)
    alpha = blocks.alpha_of(args.n, params)
    eta = metric.metric_closed_form(alpha)
    eig_low, eig_high = metric.metric_eigenvalues(eta)
    residual = metric.quasi_hermiticity_residual(args.n, params)
    entries = eta.matrix.real
    header = [
        "n",
        "alpha",
        "eta_11",
        "eta_12",
        "eta_21",
        "eta_22",
        "eig_low",
        "eig_high",
        "positive_definite",
        "singular",
        "quasi_hermiticity_residual",
    ]
    row = [
        args.n,
        alpha,
        entries[0, 0],
        entries[0, 1],
        entries[1, 0],
        entries[1, 1],
        eig_low,
        eig_high,
        eta.is_positive_definite,
        eta.is_singular,
        residual,
    ]
    if args.format == "json":
        doc = {
            "command": "metric",
            "config": {
                "hbar_omega": params.hbar_omega,
                "eps_energy": params.eps_energy,
                "rho": params.rho,
                "n": args.n,
            },
            "alpha": alpha,
            "eta": [[entries[0, 0], entries[0, 1]], [entries[1, 0], entries[1, 1]]],
            "eigenvalues": [eig_low, eig_high],
            "positive_definite": eta.is_positive_definite,
            "singular": eta.is_singular,
            "quasi_hermiticity_residual": residual,
        }
        _emit(_json_text(doc), args.out)
    else:
        _emit(_csv_text(header, [row]), args.out)
    return EXIT_OK


def cmd_discriminate(args) -> int:
    eps = args.eps
    te = states.ThetaEps.standard(eps)
    alpha = states.discrimination_alpha(eps)
    eta = states.discrimination_metric(eps)
    psi1, psi2 = states.make_psi_pair_12(te)
    raw_12 = states.eta_overlap_12(te, eta)
    norm_12 = metric.eta_inner_normalized(psi1, psi2, eta)
    pair_34 = states.eta_overlap_34(te, eta)
    dirac_12 = complex(np.vdot(psi1, psi2))
    report = dataclasses.asdict(states.completeness_report(te))
    entries = eta.matrix.real

    quantities: list[tuple[str, float]] = [
        ("eps_state", eps),
        ("alpha", alpha),
        ("eta_11", entries[0, 0]),
        ("eta_12", entries[0, 1]),
        ("eta_21", entries[1, 0]),
        ("eta_22", entries[1, 1]),
        ("dirac_overlap_12", dirac_12.real),
        ("eta_overlap_12_raw_re", raw_12.real),
        ("eta_overlap_12_raw_im", raw_12.imag),
        ("eta_overlap_12_normalized_re", norm_12.real),
        ("eta_overlap_12_normalized_im", norm_12.imag),
        ("eta_overlap_34_raw_re", pair_34.raw.real),
        ("eta_overlap_34_raw_im", pair_34.raw.imag),
        ("eta_overlap_34_normalized_re", pair_34.normalized.real),
        ("eta_overlap_34_normalized_im", pair_34.normalized.imag),
    ]
    quantities.extend(sorted(report.items()))

    if args.format == "json":
        doc = {
            "command": "discriminate",
            "config": {"eps_state": eps},
            "alpha": alpha,
            "eta": [[entries[0, 0], entries[0, 1]], [entries[1, 0], entries[1, 1]]],
            "dirac_overlap_12": dirac_12.real,
            "pair_12": {
                "raw_re": raw_12.real,
                "raw_im": raw_12.imag,
                "normalized_re": norm_12.real,
                "normalized_im": norm_12.imag,
            },
            "pair_34": {
                "raw_re": pair_34.raw.real,
                "raw_im": pair_34.raw.imag,
                "normalized_re": pair_34.normalized.real,
                "normalized_im": pair_34.normalized.imag,
            },
            "completeness": report,
        }
        _emit(_json_text(doc), args.out)
    else:
        _emit(
            _csv_text(["quantity", "value"], [[k, v] for k, v in quantities]),
            args.out,
        )
    return EXIT_OK


def cmd_projectors(args) -> int:
    eps = args.eps
    te = states.ThetaEps.standard(eps)
    eta = states.discrimination_metric(eps)
    matrices: list[tuple[str, np.ndarray]] = []
    for i in (1, 2, 3, 4):
        matrices.append((f"family_p{i}", states.projector_coefficient_family(i, eps)))
    for i in (1, 2, 3, 4):
        matrices.append((f"generic_p{i}", states.projector(i, te, eta)))

    if args.format == "json":
        doc = {
            "command": "projectors",
            "config": {"eps_state": eps},
            "alpha": states.discrimination_alpha(eps),
            "matrices": [
                {
                    "name": name,
                    "entries_re": m.real.tolist(),
                    "entries_im": m.imag.tolist(),
                }
                for name, m in matrices
            ],
        }
        _emit(_json_text(doc), args.out)
    else:
        rows = []
        for name, m in matrices:
            for r in (0, 1):
                for c in (0, 1):
                    rows.append([name, r, c, m[r, c].real, m[r, c].imag])
        _emit(_csv_text(["matrix", "row", "col", "re", "im"], rows), args.out)
    return EXIT_OK


def cmd_evolve(args) -> int:
    params = _params_from(args)
    te = states.ThetaEps.standard(args.eps)
    times = np.linspace(0.0, args.t_max, args.t_points)
    trace = evolution.overlap_trajectory(te, params, times)
    header = ["t", "re_overlap", "im_overlap", "abs_overlap"]
    rows = [
        [t, ov.real, ov.imag, abs(ov)]
        for t, ov in zip(trace.times, trace.overlaps)
    ]
    if args.format == "json":
        doc = {
            "command": "evolve",
            "config": {
                "hbar_omega": params.hbar_omega,
                "eps_energy": params.eps_energy,
                "rho": params.rho,
                "eps_state": args.eps,
                "t_max": args.t_max,
                "t_points": args.t_points,
            },
            "alpha": trace.alpha,
            "beta": trace.beta,
            "rows": [dict(zip(header, row)) for row in rows],
            "t_star": trace.t_star,
            "abs_overlap_at_t_star": (
                None if trace.overlap_at_t_star is None else abs(trace.overlap_at_t_star)
            ),
            "divergent": trace.t_star is None,
        }
        _emit(_json_text(doc), args.out)
    else:
        text = _csv_text(header, rows)
        if trace.t_star is None:
            text += "t_star,divergent,,\n"
        else:
            text += (
                f"t_star,{_fmt(trace.t_star)},,"
                f"{_fmt(abs(trace.overlap_at_t_star))}\n"
            )
        _emit(text, args.out)
    return EXIT_OK


def cmd_scan(args) -> int:
    family = evolution.ParamsFamily(
        hbar_omega=args.hbar_omega, eps_energy=args.eps_energy
    )
    alphas = np.linspace(0.0, math.pi / 2, args.alpha_points)
    scan_rows = evolution.scan_alpha(
        args.eps_list, alphas, family, periods=SCAN_PERIODS
    )
    header = [
        "eps_state",
        "alpha",
        "t_star",
        "beta_t_star",
        "sin2_beta_t_star",
        "divergent_flag",
        "re_root_t",
        "re_root_sin2",
        "min_abs_overlap",
    ]
    rows = []
    for row in scan_rows:
        beta_t = row.beta * row.t_star
        rows.append(
            [
                row.eps_state,
                row.alpha,
                row.t_star,
                beta_t,
                math.sin(beta_t) ** 2 if math.isfinite(beta_t) else math.nan,
                row.divergent,
                row.re_root_t,
                row.re_root_sin2,
                row.min_abs_overlap,
            ]
        )
    if args.format == "json":
        doc = {
            "command": "scan",
            "config": {
                "hbar_omega": args.hbar_omega,
                "eps_energy": args.eps_energy,
                "eps_list": list(args.eps_list),
                "alpha_points": args.alpha_points,
                "periods": SCAN_PERIODS,
            },
            "rows": [dict(zip(header, row)) for row in rows],
        }
        _emit(_json_text(doc), args.out)
    else:
        _emit(_csv_text(header, rows), args.out)
    return EXIT_OK


def cmd_eq_audit(args) -> int:
    family = evolution.ParamsFamily(
        hbar_omega=args.hbar_omega, eps_energy=args.eps_energy
    )
    kernel_rows = []
    for alpha in (0.3, 0.9, 1.3):
        params = family.params_for(alpha)
        for t in (0.0, 0.5, 1.1, 1.7, 2.3):
            res = evolution.kernel_closed_form_residuals(t, params)
            kernel_rows.append(
                {
                    "alpha": alpha,
                    "t": t,
                    "diagonal_residual": res.diagonal,
                    "off_diagonal_residual": res.off_diagonal,
                }
            )

    eps = args.eps
    te = states.ThetaEps.standard(eps)
    formula_rows = []
    for alpha in np.linspace(0.1, 1.5, args.alpha_points):
        alpha = float(alpha)
        try:
            candidate = evolution.orthogonality_sin2_tabulated(alpha, eps)
            tab_re, tab_im = candidate.real, candidate.imag
            in_unit = abs(tab_im) <= 1e-12 and 0.0 <= tab_re <= 1.0
        except ValueError:
            tab_re = tab_im = math.nan
            in_unit = False
        params = family.params_for(alpha)
        eff = evolution.effective_hamiltonian(params)
        re_root = evolution.real_part_crossing_time(
            te, params, SCAN_PERIODS * eff.period
        )
        re_root_sin2 = (
            None if re_root is None else math.sin(eff.beta * re_root) ** 2
        )
        formula_rows.append(
            {
                "alpha": alpha,
                "tabulated_re": tab_re,
                "tabulated_im": tab_im,
                "in_unit_interval": in_unit,
                "re_root_sin2": re_root_sin2,
                "abs_difference": (
                    None
                    if (re_root_sin2 is None or not math.isfinite(tab_re))
                    else abs(tab_re - re_root_sin2)
                ),
            }
        )

    doc = {
        "report": "formula-audit",
        "config": {
            "hbar_omega": args.hbar_omega,
            "eps_energy": args.eps_energy,
            "eps_state": eps,
            "alpha_points": args.alpha_points,
        },
        "kernel": {
            "rows": kernel_rows,
            "max_diagonal_residual": max(r["diagonal_residual"] for r in kernel_rows),
            "max_off_diagonal_residual": max(
                r["off_diagonal_residual"] for r in kernel_rows
            ),
        },
        "orthogonality_candidate": {
            "strict_alpha": evolution.strict_orthogonality_alpha(eps),
            "rows": formula_rows,
        },
    }
    _emit(_json_text(doc), args.out)
    return EXIT_OK


# --------------------------------------------------------------------- wiring


def _add_model_flags(sub, default_rho: float = 0.25) -> None:
    sub.add_argument(
        "--hbar-omega",
        type=_positive_float,
        default=1.0,
        help="oscillator quantum (default 1.0)",
    )
    sub.add_argument(
        "--eps-energy",
        type=_finite_float,
        default=0.0,
        help="spin splitting energy (default 0.0)",
    )
    sub.add_argument(
        "--rho",
        type=_nonnegative_float,
        default=default_rho,
        help=f"anti-Hermitian coupling strength (default {default_rho})",
    )


def _add_output_flags(sub, formats=("csv", "json")) -> None:
    sub.add_argument(
        "--format",
        choices=formats,
        default=formats[0],
        help=f"output format (default {formats[0]})",
    )
    sub.add_argument(
        "--out",
        default=None,
        metavar="PATH",
        help="write to PATH instead of stdout (UTF-8)",
    )


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="pseudoherm",
        description=(
            "Metric-operator toolkit for a pseudo-Hermitian spin-oscillator "
            "model: block spectra, discrimination metrics, projectors, "
            "non-unitary evolution, and parameter scans."
        ),
    )
    parser.add_argument(
        "--version", action="version", version=f"%(prog)s {__version__}"
    )
    commands = parser.add_subparsers(dest="command", required=True)

    spectrum = commands.add_parser(
        "spectrum", help="per-block eigenvalue table with reality flags"
    )
    _add_model_flags(spectrum)
    spectrum.add_argument(
        "--n-max",
        type=_positive_int,
        default=fockspace.DEFAULT_N_MAX,
        help=f"number of blocks to tabulate (default {fockspace.DEFAULT_N_MAX})",
    )
    _add_output_flags(spectrum)
    spectrum.set_defaults(func=cmd_spectrum)

    metric_cmd = commands.add_parser(
        "metric", help="metric operator of one invariant block"
    )
    _add_model_flags(metric_cmd)
    metric_cmd.add_argument(
        "--n", type=_nonnegative_int, default=0, help="block index (default 0)"
    )
    _add_output_flags(metric_cmd)
    metric_cmd.set_defaults(func=cmd_metric)

    discriminate = commands.add_parser(
        "discriminate",
        help="static discrimination report at sin(alpha) = cos(eps)",
    )
    discriminate.add_argument(
        "--eps",
        type=_eps_state,
        required=True,
        help="angular separation of the candidate states, in (0, pi/2)",
    )
    _add_output_flags(discriminate)
    discriminate.set_defaults(func=cmd_discriminate)

    projectors = commands.add_parser(
        "projectors", help="projector matrices at the discrimination point"
    )
    projectors.add_argument(
        "--eps",
        type=_eps_state,
        required=True,
        help="angular separation of the candidate states, in (0, pi/2)",
    )
    _add_output_flags(projectors)
    projectors.set_defaults(func=cmd_projectors)

    evolve = commands.add_parser(
        "evolve", help="evolved-overlap trajectory with orthogonality footer"
    )
    _add_model_flags(evolve)
    evolve.add_argument(
        "--eps",
        type=_eps_state,
        default=0.1,
        help="angular separation of the candidate states (default 0.1)",
    )
    evolve.add_argument(
        "--t-max",
        type=_positive_float,
        default=50.0,
        help="end of the time grid (default 50.0)",
    )
    evolve.add_argument(
        "--t-points",
        type=_positive_int,
        default=1000,
        help="number of grid samples (default 1000)",
    )
    _add_output_flags(evolve)
    evolve.set_defaults(func=cmd_evolve)

    scan = commands.add_parser(
        "scan", help="orthogonality-time scan over an (eps, alpha) grid"
    )
    scan.add_argument(
        "--hbar-omega",
        type=_positive_float,
        default=1.0,
        help="oscillator quantum (default 1.0)",
    )
    scan.add_argument(
        "--eps-energy",
        type=_finite_float,
        default=0.0,
        help="spin splitting energy (default 0.0)",
    )
    scan.add_argument(
        "--eps-list",
        type=_eps_list,
        default=(0.1,),
        help="comma-separated separations (default 0.1)",
    )
    scan.add_argument(
        "--alpha-points",
        type=_positive_int,
        default=64,
        help="size of the alpha grid on [0, pi/2] (default 64)",
    )
    _add_output_flags(scan)
    scan.set_defaults(func=cmd_scan)

    audit = commands.add_parser(
        "eq-audit",
        help="JSON audit of the carried closed-form tabulations",
    )
    audit.add_argument(
        "--hbar-omega",
        type=_positive_float,
        default=1.0,
        help="oscillator quantum (default 1.0)",
    )
    audit.add_argument(
        "--eps-energy",
        type=_finite_float,
        default=0.0,
        help="spin splitting energy (default 0.0)",
    )
    audit.add_argument(
        "--eps",
        type=_eps_state,
        default=0.1,
        help="angular separation for the orthogonality table (default 0.1)",
    )
    audit.add_argument(
        "--alpha-points",
        type=_positive_int,
        default=8,
        help="rows in the orthogonality table (default 8)",
    )
    audit.add_argument(
        "--out", default=None, metavar="PATH", help="write to PATH (UTF-8)"
    )
    audit.set_defaults(func=cmd_eq_audit)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DOMAIN


if __name__ == "__main__":
    sys.exit(main())
