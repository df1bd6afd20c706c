"""Command-line front end: ``cvoml report | sweep | figure | validate``.

Exit codes: 0 success, 1 validation failure, 2 invalid arguments, 3 I/O error.
Every option may also come from a JSON file given with ``--config`` whose keys
mirror the long flag names (``alpha-prime`` or ``alpha_prime``); flags given on
the command line win.
"""

from __future__ import annotations

import argparse
import io
import json
import math
import os
import sys
from dataclasses import dataclass
from typing import Callable, Sequence

import numpy as np

from cvoml import __version__
from cvoml import criteria as cr
from cvoml import gaussian as gs
from cvoml import model
from cvoml import oracle
from cvoml.errors import AccuracyError, ParameterError

EXIT_OK, EXIT_FAIL, EXIT_ARGS, EXIT_IO = 0, 1, 2, 3

DEFAULT_R_MIN, DEFAULT_R_MAX, DEFAULT_SWEEP_STEPS = 0.0, 5.0, 500

# every option that can come from a config file, with its default
_OPTION_DEFAULTS = {
    "G": None, "Ga": None, "alpha": None, "alpha_prime": None, "regime": None,
    "n0": 0.0, "r": 1.0, "r_min": DEFAULT_R_MIN, "r_max": DEFAULT_R_MAX, "steps": None,
    "criteria": None, "gains": "symmetric", "format": None, "out": None,
}


class UsageError(Exception):
    """Bad combination of options (exit code 2)."""


# ---- parameter resolution ---------------------------------------------------

@dataclass(frozen=True)
class PointSpec:
    """Everything but r; ``at(r)`` gives the derived parameters of one grid point."""

    regime: model.Regime
    alpha: float | None = None
    G: float | None = None
    Ga: float | None = None
    n0: float = 0.0

    def at(self, r: float) -> model.DerivedParams:
        if self.alpha is not None:
            return model.DerivedParams.from_alpha(self.alpha, self.regime, self.n0, r)
        return model.derive(model.SystemParams(self.G, self.Ga, self.n0, r))

    def describe(self) -> str:
        if self.alpha is not None:
            name = "alpha" if self.regime is model.Regime.AMPLIFIER else "alpha_prime"
            return f"regime={self.regime.value} {name}={_fmt_short(self.alpha)} n0={_fmt_short(self.n0)}"
        return (f"regime={self.regime.value} G={_fmt_short(self.G)} Ga={_fmt_short(self.Ga)} "
                f"n0={_fmt_short(self.n0)}")


def resolve_point(opts: dict) -> PointSpec:
    alpha, alpha_p = opts["alpha"], opts["alpha_prime"]
    G, Ga, regime = opts["G"], opts["Ga"], opts["regime"]
    n0 = float(opts["n0"])
    if alpha is not None and alpha_p is not None:
        raise UsageError("give either --alpha or --alpha-prime, not both")
    if alpha is not None or alpha_p is not None:
        if G is not None or Ga is not None:
            raise UsageError("give the couplings either as --G/--Ga or as --alpha/--alpha-prime")
        implied = model.Regime.AMPLIFIER if alpha is not None else model.Regime.ATTENUATOR
        if regime is not None and model.Regime(regime) is not implied:
            raise UsageError(f"--regime {regime} contradicts the mixing coefficient given")
        spec = PointSpec(implied, alpha=float(alpha if alpha is not None else alpha_p), n0=n0)
    else:
        if Ga is None:
            raise UsageError("specify the couplings with --G/--Ga or --alpha/--alpha-prime")
        G = 1.0 if G is None else float(G)
        Ga = float(Ga)
        params = model.SystemParams(G, Ga, n0, 0.0)  # validates, incl. degeneracy
        implied = model.Regime.AMPLIFIER if params.G > params.Ga else model.Regime.ATTENUATOR
        if regime is not None and model.Regime(regime) is not implied:
            raise UsageError(f"--regime {regime} contradicts G={G:g}, Ga={Ga:g}")
        spec = PointSpec(implied, G=G, Ga=Ga, n0=n0)
    spec.at(0.0)  # surface invalid alpha / n0 early
    return spec


def parse_criteria(text) -> tuple[str, ...]:
    if text is None:
        return cr.DEFAULT_WITNESSES
    names = [t.strip() for t in (text.split(",") if isinstance(text, str) else text) if t.strip()]
    if not names:
        raise UsageError("--criteria is empty")
    for name in names:
        cr.validate_witness_name(name)
    return tuple(names)


def r_grid(r_min: float, r_max: float, steps: int) -> np.ndarray:
    """steps intervals, steps + 1 points including both ends."""
    r_min, r_max = float(r_min), float(r_max)
    if not (math.isfinite(r_min) and math.isfinite(r_max)) or not 0 <= r_min <= r_max:
        raise UsageError(f"need 0 <= r_min <= r_max, got [{r_min:g}, {r_max:g}]")
    if int(steps) != steps or steps < 1:
        raise UsageError(f"--steps must be a positive integer, got {steps}")
    return np.linspace(r_min, r_max, int(steps) + 1)


# ---- formatting ---------------------------------------------------------------

def _fmt(x: float) -> str:
    return format(float(x), ".17g")


def _fmt_short(x) -> str:
    return format(float(x), "g")


def _json_num(x):
    x = float(x)
    return x if math.isfinite(x) else None


def _columns(names: Sequence[str]) -> list[str]:
    cols = ["r"]
    for n in names:
        cols += [n, f"{n}_bound", f"{n}_violated"]
    return cols


def sweep_rows(spec: PointSpec, rs: np.ndarray, names: Sequence[str], gains: str) -> list[list]:
    rows = []
    for r in rs:
        d = spec.at(float(r))
        sigma = model.output_covariance(d)
        row = [float(r)]
        for name in names:
            res = cr.evaluate(name, sigma, d, gains)
            row += [res.value, res.bound, res.violated]
        rows.append(row)
    return rows


def render_csv(provenance: Sequence[str], columns: Sequence[str], rows: Sequence[Sequence]) -> str:
    buf = io.StringIO()
    for line in provenance:
        buf.write(f"# {line}\n")
    buf.write(",".join(columns) + "\n")
    for row in rows:
        buf.write(",".join(str(int(v)) if isinstance(v, (bool, np.bool_)) else _fmt(v) for v in row) + "\n")
    return buf.getvalue()


def render_json(provenance: Sequence[str], columns: Sequence[str], rows: Sequence[Sequence]) -> str:
    records = [
        {c: (bool(v) if isinstance(v, (bool, np.bool_)) else _json_num(v)) for c, v in zip(columns, row)}
        for row in rows
    ]
    return json.dumps({"provenance": list(provenance), "columns": list(columns), "rows": records},
                      indent=2, allow_nan=False) + "\n"


def write_output(text: str, out: str | None) -> None:
    if out is None or out == "-":
        sys.stdout.write(text)
        return
    with open(out, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(text)


# ---- report -------------------------------------------------------------------

def build_report(spec: PointSpec, r: float, gains: str, names: Sequence[str]) -> dict:
    d = spec.at(r)
    sigma = model.output_covariance(d)
    n_c, n_w = model.closed_form_photon_numbers(d)
    w = model.superposition_mode(d, "w")
    report = {
        "derived": {
            "regime": d.regime.value, "lambda": d.lam, "alpha": d.alpha, "beta": d.beta,
            "r": d.r, "r_eff": d.r_eff, "n0": d.n0, "s": d.s,
        },
        "photon_numbers": {
            "n_c_closed": n_c, "n_w_closed": n_w,
            "n_c_cov": gs.photon_number(sigma, "a"),
            "n_w_cov": gs.form_photon_number(sigma, w.x_form, w.p_form),
        },
        "eta": {"closed": model.cauchy_schwarz_eta(d), "cov": model.eta_from_cov(sigma, d)},
        "r0": model.entanglement_onset_r0(d) if d.amplifier else None,
        "witnesses": [],
    }
    for name in names:
        res = cr.evaluate(name, sigma, d, gains)
        report["witnesses"].append({
            "name": res.name, "value": res.value, "bound": res.bound,
            "violated": res.violated, "gains": dict(res.gains),
        })
    mono = cr.monogamy_report(sigma, d)
    report["monogamy"] = {
        "E_a|m": mono.e_a_m, "E_a|c": mono.e_a_c, "E_a|w": mono.e_a_w,
        "E_m|a": mono.e_m_a, "E_m|c": mono.e_m_c,
        "product_ok": mono.product_ok, "sum_ok": mono.sum_ok,
        "no_collusion": mono.no_collusion, "single_pair_ok": mono.single_pair_ok,
    }
    return report


def _jsonable(obj):
    if isinstance(obj, dict):
        return {k: _jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_jsonable(v) for v in obj]
    if isinstance(obj, (bool, np.bool_)):
        return bool(obj)
    if isinstance(obj, (int, float, np.floating)):
        return _json_num(obj)
    return obj


def render_report_text(report: dict) -> str:
    lines = []
    d = report["derived"]
    lines.append("derived parameters")
    for k, v in d.items():
        lines.append(f"  {k:<8} {v if isinstance(v, str) else _fmt_short(v)}")
    lines.append("photon numbers")
    for k, v in report["photon_numbers"].items():
        lines.append(f"  {k:<11} {_fmt(v)}")
    lines.append(f"eta  closed {_fmt(report['eta']['closed'])}  cov {_fmt(report['eta']['cov'])}")
    if report["r0"] is not None:
        lines.append(f"r0   {_fmt(report['r0'])}")
    lines.append("witnesses")
    width = max(len(w["name"]) for w in report["witnesses"])
    for w in report["witnesses"]:
        flag = "VIOLATED" if w["violated"] else "-"
        gains = " ".join(f"{k}={_fmt_short(v)}" for k, v in w["gains"].items())
        lines.append(f"  {w['name']:<{width}}  {_fmt(w['value']):>24}  bound {_fmt_short(w['bound']):<4} {flag}"
                     + (f"  [{gains}]" if gains else ""))
    lines.append("monogamy")
    for k, v in report["monogamy"].items():
        lines.append(f"  {k:<14} {v if isinstance(v, bool) else _fmt(v)}")
    return "\n".join(lines) + "\n"


def render_report_csv(report: dict) -> str:
    rows = [f"{k},{v}" if isinstance(v, str) else f"{k},{_fmt(v)}" for k, v in report["derived"].items()]
    rows += [f"{k},{_fmt(v)}" for k, v in report["photon_numbers"].items()]
    rows += [f"eta_{k},{_fmt(v)}" for k, v in report["eta"].items()]
    if report["r0"] is not None:
        rows.append(f"r0,{_fmt(report['r0'])}")
    for w in report["witnesses"]:
        rows += [f"{w['name']},{_fmt(w['value'])}", f"{w['name']}_bound,{_fmt(w['bound'])}",
                 f"{w['name']}_violated,{int(w['violated'])}"]
    for k, v in report["monogamy"].items():
        rows.append(f"monogamy_{k},{int(v)}" if isinstance(v, bool) else f"monogamy_{k},{_fmt(v)}")
    return "key,value\n" + "\n".join(rows) + "\n"


def cmd_report(opts: dict) -> int:
    spec = resolve_point(opts)
    names = parse_criteria(opts["criteria"])
    r = float(opts["r"])
    if not math.isfinite(r) or r < 0:
        raise UsageError(f"--r must be finite and >= 0, got {r}")
    report = build_report(spec, r, opts["gains"], names)
    fmt = opts["format"] or "text"
    if fmt == "json":
        text = json.dumps(_jsonable(report), indent=2, allow_nan=False) + "\n"
    elif fmt == "csv":
        text = render_report_csv(report)
    else:
        text = render_report_text(report)
    write_output(text, opts["out"])
    return EXIT_OK


# ---- sweep --------------------------------------------------------------------

def cmd_sweep(opts: dict) -> int:
    spec = resolve_point(opts)
    names = parse_criteria(opts["criteria"])
    steps = DEFAULT_SWEEP_STEPS if opts["steps"] is None else opts["steps"]
    rs = r_grid(opts["r_min"], opts["r_max"], steps)
    spec.at(float(rs[-1]))  # range check at the far end before any work
    rows = sweep_rows(spec, rs, names, opts["gains"])
    provenance = [
        f"cvoml {__version__} sweep",
        spec.describe(),
        f"r_min={_fmt_short(rs[0])} r_max={_fmt_short(rs[-1])} steps={int(steps)} gains={opts['gains']}",
    ]
    fmt = opts["format"] or "csv"
    render = render_json if fmt == "json" else render_csv
    write_output(render(provenance, _columns(names), rows), opts["out"])
    return EXIT_OK


# ---- figures ------------------------------------------------------------------

@dataclass(frozen=True)
class Curve:
    figure: str
    witness: str
    regime: model.Regime
    alpha: float
    n0: float = 0.0
    gains: str = "symmetric"
    note: str = ""

    @property
    def filename(self) -> str:
        key = "alpha" if self.regime is model.Regime.AMPLIFIER else "alphap"
        parts = [self.figure, self.witness, f"{key}{_fmt_short(self.alpha)}", f"n0-{_fmt_short(self.n0)}"]
        if self.witness.startswith(("tri_", "delta_sum")):
            parts.append(self.gains)
        return "_".join(parts) + ".csv"


AMP, ATT = model.Regime.AMPLIFIER, model.Regime.ATTENUATOR
_TRI = ("tri_prod_am", "tri_prod_ac", "tri_prod_mc", "delta_sum")


def _figure_table() -> dict[str, list[Curve]]:
    t: dict[str, list[Curve]] = {}
    t["fig2"] = [Curve("fig2", "dgcz_a_m", AMP, a) for a in (1, 2, 10)]
    t["fig3"] = [Curve("fig3", "dgcz_a_w", AMP, a, n0) for n0 in (0, 5) for a in (1, 1.5)]
    t["fig4"] = [Curve("fig4", "dgcz_a_m", ATT, a) for a in (1.2, 1.5, 5)]
    t["fig5"] = [Curve("fig5", "upsilon_m_c", ATT, a,
                       note="alpha_prime=1 is the G -> 0 limit" if a == 1 else "") for a in (1, 5, 10)]
    t["fig6"] = [Curve(f"fig6{panel}", w, reg, 2, n0)
                 for panel, reg in (("a", AMP), ("b", ATT))
                 for n0 in (0, 100) for w in ("dgcz_g_a_m", "upsilon_g_m_c")]
    t["fig7"] = [Curve(f"fig7{panel}", w, AMP, 2, 0, gains)
                 for panel, gains in (("a", "symmetric"), ("b", "optimal")) for w in _TRI]
    t["fig8"] = [Curve(f"fig8{panel}", w, ATT, 2, 0, gains)
                 for panel, gains in (("a", "symmetric"), ("b", "optimal")) for w in _TRI]
    t["fig9"] = [Curve("fig9", w, AMP, 2, note="Ga=0.75G") for w in (
        "steering_a_given_m", "steering_m_given_c", "steering_a_given_w",
        "steering_m_given_a", "steering_c_given_m", "steering_w_given_a")]
    t["fig10"] = [Curve("fig10", w, ATT, 2, note="Ga=4G/3") for w in (
        "steering_a_given_m", "steering_m_given_a", "steering_m_given_c", "steering_c_given_m")]
    return t


FIGURES = _figure_table()


def figure_datasets(fig: str, rs: np.ndarray) -> list[tuple[str, str]]:
    """(filename, csv text) per curve of a figure."""
    if fig not in FIGURES:
        raise UsageError(f"unknown figure {fig!r}; expected one of {', '.join(FIGURES)}")
    out = []
    for curve in FIGURES[fig]:
        spec = PointSpec(curve.regime, alpha=curve.alpha, n0=curve.n0)
        rows = sweep_rows(spec, rs, (curve.witness,), curve.gains)
        provenance = [
            f"cvoml {__version__} figure {fig} (caption parameter set)",
            f"curve={curve.figure}:{curve.witness} {spec.describe()} gains={curve.gains}"
            + (f" {curve.note}" if curve.note else ""),
            f"r_min={_fmt_short(rs[0])} r_max={_fmt_short(rs[-1])} steps={len(rs) - 1}",
        ]
        out.append((curve.filename, render_csv(provenance, _columns((curve.witness,)), rows)))
    return out


def cmd_figure(opts: dict) -> int:
    steps = DEFAULT_SWEEP_STEPS if opts["steps"] is None else opts["steps"]
    rs = r_grid(opts["r_min"], opts["r_max"], steps)
    datasets = figure_datasets(opts["figure"], rs)
    outdir = opts["out"] or "."
    os.makedirs(outdir, exist_ok=True)
    for name, text in datasets:
        write_output(text, os.path.join(outdir, name))
        print(os.path.join(outdir, name))
    return EXIT_OK


# ---- validate -----------------------------------------------------------------

VALIDATION_ALPHAS = (1.2, 2.0, 5.0)
VALIDATION_R = (0.1, 1.0, 3.0)
VALIDATION_N0 = (0.0, 5.0)


@dataclass(frozen=True)
class Check:
    name: str
    residual: float
    tol: float

    @property
    def passed(self) -> bool:
        return bool(self.residual < self.tol)


def _rel(a: float, b: float) -> float:
    return abs(a - b) / max(1.0, abs(b))


def point_checks(params: model.SystemParams, grid: oracle.QuadratureGrid) -> list[Check]:
    d = model.derive(params)
    T = model.transfer_matrix(d)
    sigma = model.output_covariance(d)
    dense = np.asarray(sigma)
    numeric = oracle.numeric_output_covariance(params, grid)
    fine = oracle.numeric_output_covariance(params, grid.refined())
    cmp_ = oracle.compare_covariances(dense, numeric)
    checks = [
        Check("oracle_rel", cmp_.max_rel, 1e-6),
        Check("oracle_drift", oracle.refinement_drift(numeric, fine), oracle.DRIFT_TOL),
        Check("symplectic", float(np.max(np.abs(T @ gs.OMEGA @ T.T - gs.OMEGA))), 1e-10),
        Check("physical", max(0.0, -gs.uncertainty_min_eigenvalue(dense)), 1e-10),
        Check("physical_oracle", max(0.0, -gs.uncertainty_min_eigenvalue(numeric)), 1e-10),
    ]
    u = model.superposition_mode(d, "u")
    sigma0 = gs.make_input_covariance(d.n0)
    u_res = max(
        abs(gs.covariance(s, f, g) - gs.covariance(sigma0, f, g)) / max(1.0, abs(gs.covariance(sigma0, f, g)))
        for s in (sigma, numeric) for f in (u.x_form, u.p_form) for g in (u.x_form, u.p_form)
    )
    checks.append(Check("u_invariance", u_res, 1e-10))
    n_c, n_w = model.closed_form_photon_numbers(d)
    w = model.superposition_mode(d, "w")
    checks.append(Check("photon_numbers", max(
        _rel(gs.photon_number(sigma, "a"), n_c),
        _rel(gs.form_photon_number(sigma, w.x_form, w.p_form), n_w)), 1e-9))
    checks.append(Check("eta", _rel(model.eta_from_cov(sigma, d), model.cauchy_schwarz_eta(d)), 1e-9))
    checks.append(Check("cross_correlations",
                        max(cr.cross_correlation_identities(dense).residuals.values()), 1e-10))
    return checks


def cmd_validate(opts: dict) -> int:
    steps = oracle.DEFAULT_STEPS if opts["steps"] is None else opts["steps"]
    try:
        grid = oracle.QuadratureGrid(int(steps))
    except AccuracyError as exc:
        print(f"FAIL quadrature_grid: {exc}")
        print("summary: 0 passed, 1 failed")
        return EXIT_FAIL
    regimes = (model.Regime.AMPLIFIER, model.Regime.ATTENUATOR)
    if opts["regime"] is not None:
        regimes = (model.Regime(opts["regime"]),)
    n0s = VALIDATION_N0 if opts.get("n0_given") is None else (float(opts["n0"]),)
    passed = failed = 0
    for regime in regimes:
        for alpha in VALIDATION_ALPHAS:
            for n0 in n0s:
                for r in VALIDATION_R:
                    params = model.SystemParams.from_alpha(alpha, regime, n0, r)
                    label = f"{regime.value} alpha={_fmt_short(alpha)} n0={_fmt_short(n0)} r={_fmt_short(r)}"
                    for check in point_checks(params, grid):
                        status = "PASS" if check.passed else "FAIL"
                        passed += check.passed
                        failed += not check.passed
                        print(f"{status} {check.name:<18} {label:<40} residual={check.residual:.3e} "
                              f"tol={check.tol:.0e}")
    print(f"summary: {passed} passed, {failed} failed")
    return EXIT_OK if failed == 0 else EXIT_FAIL


# ---- argument parsing -----------------------------------------------------------

def _add_point_args(p: argparse.ArgumentParser) -> None:
    p.add_argument("--G", type=float, help="mirror-cavity coupling rate (default 1 when --Ga is given)")
    p.add_argument("--Ga", type=float, help="atom-cavity coupling rate")
    p.add_argument("--alpha", type=float, help="amplifier mixing coefficient alpha >= 1")
    p.add_argument("--alpha-prime", dest="alpha_prime", type=float,
                   help="attenuator mixing coefficient alpha' >= 1")
    p.add_argument("--regime", choices=[r.value for r in model.Regime])
    p.add_argument("--n0", type=float, help="mirror thermal occupation (default 0)")


def _add_common(p: argparse.ArgumentParser) -> None:
    p.add_argument("--config", help="JSON file with option defaults")
    p.add_argument("--out", help="output path (directory for 'figure'); stdout if omitted")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="cvoml", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=f"cvoml {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    rep = sub.add_parser("report", help="all derived quantities and witnesses at one point")
    _add_point_args(rep)
    rep.add_argument("--r", type=float, help="pulse area r = G tau (default 1)")
    rep.add_argument("--criteria", help="comma-separated witness names (default: all)")
    rep.add_argument("--gains", choices=cr.GAIN_MODES)
    rep.add_argument("--format", choices=("text", "json", "csv"))
    _add_common(rep)

    sw = sub.add_parser("sweep", help="witnesses on a uniform r grid")
    _add_point_args(sw)
    sw.add_argument("--r-min", dest="r_min", type=float)
    sw.add_argument("--r-max", dest="r_max", type=float)
    sw.add_argument("--steps", type=int, help=f"number of intervals (default {DEFAULT_SWEEP_STEPS})")
    sw.add_argument("--criteria", help="comma-separated witness names (default: all)")
    sw.add_argument("--gains", choices=cr.GAIN_MODES)
    sw.add_argument("--format", choices=("csv", "json"))
    _add_common(sw)

    fig = sub.add_parser("figure", help="datasets for one figure, one CSV per curve")
    fig.add_argument("figure", help=f"one of {', '.join(FIGURES)}")
    fig.add_argument("--r-min", dest="r_min", type=float)
    fig.add_argument("--r-max", dest="r_max", type=float)
    fig.add_argument("--steps", type=int, help=f"number of intervals (default {DEFAULT_SWEEP_STEPS})")
    _add_common(fig)

    val = sub.add_parser("validate", help="oracle comparison and invariant checks")
    val.add_argument("--steps", type=int, help=f"quadrature steps (default {oracle.DEFAULT_STEPS})")
    val.add_argument("--regime", choices=[r.value for r in model.Regime])
    val.add_argument("--n0", type=float, help="restrict to a single n0")
    _add_common(val)
    return parser


def _load_config(path: str) -> dict:
    try:
        with open(path, encoding="utf-8") as fh:
            data = json.load(fh)
    except OSError as exc:
        raise UsageError(f"cannot read config {path}: {exc.strerror}") from None
    except json.JSONDecodeError as exc:
        raise UsageError(f"config {path} is not valid JSON: {exc}") from None
    if not isinstance(data, dict):
        raise UsageError("config file must hold a JSON object")
    out = {}
    for key, value in data.items():
        norm = key.lstrip("-").replace("-", "_")
        if norm not in _OPTION_DEFAULTS:
            raise UsageError(f"unknown config key {key!r}")
        out[norm] = value
    return out


def merge_options(args: argparse.Namespace) -> dict:
    """Command-line flags over config-file values over built-in defaults."""
    given = {k: v for k, v in vars(args).items() if v is not None}
    config = _load_config(args.config) if getattr(args, "config", None) else {}
    opts = dict(_OPTION_DEFAULTS)
    opts.update(config)
    opts.update(given)
    opts["n0_given"] = given.get("n0", config.get("n0"))
    if opts["gains"] not in cr.GAIN_MODES:
        raise UsageError(f"gains must be one of {', '.join(cr.GAIN_MODES)}, got {opts['gains']!r}")
    return opts


_COMMANDS: dict[str, Callable[[dict], int]] = {
    "report": cmd_report, "sweep": cmd_sweep, "figure": cmd_figure, "validate": cmd_validate,
}


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:  # argparse reports its own errors with code 2
        return int(exc.code or 0)
    try:
        opts = merge_options(args)
        return _COMMANDS[args.command](opts)
    except (UsageError, ParameterError) as exc:
        print(f"cvoml: error: {exc}", file=sys.stderr)
        return EXIT_ARGS
    except OSError as exc:
        print(f"cvoml: I/O error: {exc}", file=sys.stderr)
        return EXIT_IO


if __name__ == "__main__":
    sys.exit(main())
