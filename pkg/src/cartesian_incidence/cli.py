"""Command-line front end.

Exit status: 0 when every checked invariant holds, 1 on input errors, 2 when
an invariant is violated.
"""

from __future__ import annotations

import argparse
import json
import random
import re
import sys
from dataclasses import dataclass, field
from datetime import datetime, timezone
from fractions import Fraction
from pathlib import Path

from . import bounds as bounds_mod
from .applications import inversion_experiment, line_distance_set, sumset_expander
from .bounds import BoundReport, Term, bound_main, bound_real, decimal_text, scaled_root
from .errors import IncidenceError, InputError, InvariantViolation, ParseError
from .exact import gr
from .incidence import DEFAULT_KST_CAP, build_incidence_graph, verify_no_kst
from .instances import (
    GENERATORS,
    append_trend_rows,
    atomic_write_text,
    csv_text,
    factor_set,
    generate_instance,
    parse_instance,
)
from .partition import run_partition
from .poly import BivariatePoly, bezout_check

EXIT_OK, EXIT_INPUT, EXIT_VIOLATION = 0, 1, 2


@dataclass
class ExperimentConfig:
    """One pipeline run.  ``command`` is one of count, kst, partition,
    inversion, sumset, distance."""

    command: str
    n_values: list[int] = field(default_factory=list)
    seed: int = 0
    instance: str | None = None
    out: str | None = None
    trend: str | None = None
    extra_csv: str | None = None
    cap: int = DEFAULT_KST_CAP
    k: int = 2
    m: str = "1"
    s: int = 2
    t: int = 3
    r: str = "auto"
    set_kind: str = "arithmetic"
    timestamp: bool = True


@dataclass
class ExperimentResult:
    exit_code: int
    report: dict
    trend_rows: list[list] = field(default_factory=list)
    messages: list[str] = field(default_factory=list)


def parse_n_values(text: str) -> list[int]:
    """``"4,6,8"``, ``"4..8"`` or a mix; an empty result is an input error."""
    out: list[int] = []
    for part in filter(None, (p.strip() for p in text.split(","))):
        m = re.fullmatch(r"(\d+)\.\.(\d+)", part)
        if m:
            lo, hi = int(m.group(1)), int(m.group(2))
            out.extend(range(lo, hi + 1))
        elif part.isdigit():
            out.append(int(part))
        else:
            raise ParseError(f"bad n value {part!r}")
    if not out:
        raise InputError("empty range")
    return out


def _terms_cell(report: BoundReport) -> str:
    return ";".join(f"{t.name}={decimal_text(t.value)}" for t in report.terms)


def _single_term(name: str, value: Fraction, exact: bool, expression: str, params: dict) -> BoundReport:
    return BoundReport(name, params, (Term(name, value, exact, expression),))


def _trend_row(app: str, n: int, observed: int, report: BoundReport) -> list:
    rep = report.with_observed(observed)
    return [app, n, observed, _terms_cell(rep), decimal_text(rep.ratio)]


def _incidence_bound(instance, graph) -> BoundReport:
    d = max(instance.family.max_degree, 1)
    M = max(graph.max_pair_multiplicity(), 1)
    nP, nC = max(len(instance.points), 1), max(len(instance.family), 1)
    real = instance.points.is_real() and all(f.is_real() for _, f in instance.family)
    return (bound_real if real else bound_main)(d, M, nP, nC)


def _app_set(config: ExperimentConfig, n: int):
    if config.set_kind == "file":
        if not config.instance:
            raise InputError("--set file needs --in")
        return list(parse_instance(config.instance).points.A)
    return factor_set(config.set_kind, n, random.Random(config.seed))


def run_experiment(config: ExperimentConfig) -> ExperimentResult:
    """Run one configured pipeline, write its outputs, return the exit code.

    Library errors are caught and turned into exit codes here; the JSON
    report and trend rows are written only for runs that got that far.
    """
    try:
        result = _dispatch(config)
    except InvariantViolation as exc:
        return ExperimentResult(EXIT_VIOLATION, {"error": exc.code, "message": str(exc)}, messages=[f"{exc.code}: {exc}"])
    except (IncidenceError, ValueError) as exc:
        code = getattr(exc, "code", "core.InputError")
        return ExperimentResult(EXIT_INPUT, {"error": code, "message": str(exc)}, messages=[f"{code}: {exc}"])
    if config.timestamp:
        result.report["timestamp"] = datetime.now(timezone.utc).isoformat(timespec="seconds")
    if config.out:
        atomic_write_text(config.out, json.dumps(result.report, indent=2) + "\n")
    if config.trend and result.trend_rows:
        append_trend_rows(config.trend, result.trend_rows)
    return result


def _dispatch(config: ExperimentConfig) -> ExperimentResult:
    cmd = config.command
    if cmd in ("count", "kst", "partition"):
        if not config.instance:
            raise InputError(f"{cmd} needs an instance (--in)")
        instance = parse_instance(config.instance)
        return {"count": _run_count, "kst": _run_kst, "partition": _run_partition}[cmd](config, instance)
    if cmd in ("inversion", "sumset", "distance"):
        if not config.n_values:
            raise InputError("empty range")
        return {"inversion": _run_inversion, "sumset": _run_sumset, "distance": _run_distance}[cmd](config)
    raise InputError(f"unknown command {cmd!r}")


def _run_count(config, instance) -> ExperimentResult:
    graph = build_incidence_graph(instance.points, instance.family)
    bound = _incidence_bound(instance, graph).with_observed(len(graph))
    labels = instance.family.labels
    report = {
        "command": "incidence count",
        "instance": instance.name,
        "points": len(instance.points),
        "curves": len(instance.family),
        "incidences": len(graph),
        "per_curve": {labels[c]: len(graph.by_curve.get(c, ())) for c in range(len(labels))},
        "bound": bound.to_json(),
    }
    if config.extra_csv:
        atomic_write_text(config.extra_csv, csv_text(["label", "iA", "iB", "a", "b"], graph.rows()))
    n = len(instance.points.A)
    return ExperimentResult(EXIT_OK, report, [_trend_row("count", n, len(graph), bound)])


def _run_kst(config, instance) -> ExperimentResult:
    graph = build_incidence_graph(instance.points, instance.family)
    res = verify_no_kst(graph, config.s, config.t, cap=config.cap)
    report = {
        "command": "incidence kst",
        "s": config.s,
        "t": config.t,
        "passed": res.passed,
        "witness_points": [list(p) for p in res.witness_points],
        "witness_curves": list(res.witness_curves),
        "tests": res.tests,
    }
    return ExperimentResult(EXIT_OK if res.passed else EXIT_VIOLATION, report)


def _run_partition(config, instance) -> ExperimentResult:
    r = config.r if config.r == "auto" else int(config.r)
    run = run_partition(instance.points, instance.family, r)
    report = {
        "command": "partition run",
        "instance": instance.name,
        "r": run.grid.r,
        "cuts_x": [str(c) for c in run.grid.cuts_x],
        "cuts_y": [str(c) for c in run.grid.cuts_y],
        "decomposition": run.report.to_json(),
    }
    if run.r_choice is not None:
        report["r_raw"] = run.r_choice.raw
        report["r_lower_clamped"] = run.r_choice.lower_clamped
        report["r_upper_clamped"] = run.r_choice.upper_clamped
    cells_path = config.extra_csv or (str(Path(config.out).with_suffix(".cells.csv")) if config.out else None)
    if cells_path:
        rows = [(c.cell_x, c.cell_y, c.label, c.count) for c in run.cells]
        atomic_write_text(cells_path, csv_text(["cellX", "cellY", "curve_label", "count"], rows))
    return ExperimentResult(EXIT_OK, report)


def _run_inversion(config) -> ExperimentResult:
    reports, rows, failures = [], [], []
    for n in config.n_values:
        A = _app_set(config, n)
        rep = inversion_experiment(A, config.k, cap=config.cap)
        reports.append(rep.to_json())
        failures += rep.failures
        n_eff = len(A)
        bound = _single_term("n^4/k^3", Fraction(n_eff**4, config.k**3), True, "|A|^4/k^3", {"n": n_eff, "k": config.k})
        rows.append(_trend_row("inversion", n_eff, rep.count, bound))
    return _finish("app inversion", reports, rows, failures)


def _run_sumset(config) -> ExperimentResult:
    reports, rows, failures = [], [], []
    for n in config.n_values:
        rep = sumset_expander(range(1, n + 1), cap=config.cap)
        reports.append(rep.to_json())
        failures += rep.failures
        value, exact = scaled_root(Fraction(1), n**5, 4)
        rows.append(_trend_row("sumset", n, rep.mixed_size, _single_term("n^(5/4)", value, exact, "n^(5/4)", {"n": n})))
    return _finish("app sumset", reports, rows, failures)


def _run_distance(config) -> ExperimentResult:
    m = gr(config.m)
    reports, rows, failures = [], [], []
    for n in config.n_values:
        A = list(range(n))
        rep = line_distance_set(A, A, m, cap=config.cap, complex_ok=True)
        reports.append(rep.to_json())
        failures += rep.failures
        value, exact = scaled_root(Fraction(1), n**4, 3)
        rows.append(_trend_row("distance", n, rep.distinct, _single_term("n^(4/3)", value, exact, "n^(4/3)", {"n": n})))
    return _finish("app distance", reports, rows, failures)


def _finish(command: str, reports, rows, failures) -> ExperimentResult:
    report = {"command": command, "runs": reports, "passed": not failures}
    return ExperimentResult(EXIT_VIOLATION if failures else EXIT_OK, report, rows, failures)


# ---------------------------------------------------------------------------
# argparse
# ---------------------------------------------------------------------------


def _parse_params(text: str) -> dict:
    params = {}
    for part in filter(None, text.split(",")):
        key, sep, value = part.partition("=")
        if not sep:
            raise ParseError(f"bad parameter {part!r}, expected name=value")
        params[key.strip()] = int(value)
    return params


def _poly_arg(text: str) -> BivariatePoly:
    try:
        obj = json.loads(Path(text[1:]).read_text() if text.startswith("@") else text)
    except (OSError, json.JSONDecodeError) as exc:
        raise ParseError(f"cannot read polynomial: {exc}") from None
    return BivariatePoly.from_json(obj)


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="cartinc", description="Exact incidence experiments on Cartesian products.")
    sub = p.add_subparsers(dest="group", required=True)

    def common(sp, need_in=False):
        sp.add_argument("--in", dest="instance", required=need_in, help="instance JSON file")
        sp.add_argument("--out", help="JSON report path")
        sp.add_argument("--seed", type=int, default=0)
        sp.add_argument("--cap", type=int, default=DEFAULT_KST_CAP, help="K_{s,t} search cap")
        sp.add_argument("--trend", help="trend CSV to append to")
        sp.add_argument("--no-timestamp", action="store_true")

    inc = sub.add_parser("incidence").add_subparsers(dest="cmd", required=True)
    sp = inc.add_parser("count")
    common(sp, True)
    sp.add_argument("--csv", dest="extra_csv", help="graph export (label,iA,iB,a,b)")
    sp = inc.add_parser("kst")
    common(sp, True)
    sp.add_argument("--s", type=int, required=True)
    sp.add_argument("--t", type=int, required=True)

    sp = sub.add_parser("bezout")
    sp.add_argument("--f", required=True, help="polynomial JSON (or @file)")
    sp.add_argument("--g", required=True, help="polynomial JSON (or @file)")

    part = sub.add_parser("partition").add_subparsers(dest="cmd", required=True)
    sp = part.add_parser("run")
    common(sp, True)
    sp.add_argument("--r", default="auto", help="integer or 'auto'")
    sp.add_argument("--cells", dest="extra_csv", help="per-cell CSV path")

    bnd = sub.add_parser("bounds").add_subparsers(dest="cmd", required=True)
    sp = bnd.add_parser("eval")
    sp.add_argument("--formula", choices=sorted(bounds_mod.FORMULAS), required=True)
    sp.add_argument("--params", required=True, help="e.g. d=1,M=1,nP=64,nC=64")
    sp.add_argument("--observed", type=int)

    app = sub.add_parser("app").add_subparsers(dest="cmd", required=True)
    sp = app.add_parser("inversion")
    common(sp)
    sp.add_argument("--n", required=True)
    sp.add_argument("--k", type=int, default=2)
    sp.add_argument("--set", dest="set_kind", choices=[*GENERATORS, "file"], default="arithmetic")
    sp = app.add_parser("sumset")
    common(sp)
    sp.add_argument("--n", required=True)
    sp = app.add_parser("distance")
    common(sp)
    sp.add_argument("--n", required=True)
    sp.add_argument("--m", default="1")

    sp = sub.add_parser("gen")
    sp.add_argument("--kind", choices=GENERATORS, required=True)
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--out", help="instance path (stdout if omitted)")
    return p


def _emit(obj: dict) -> None:
    sys.stdout.write(json.dumps(obj, indent=2) + "\n")


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        if args.group == "bezout":
            summary = bezout_check(_poly_arg(args.f), _poly_arg(args.g))
            _emit({
                "common_component": summary.common_component,
                "distinct_x_bound": summary.distinct_x_bound,
                "resultant": None if summary.resultant is None else [str(c) for c in summary.resultant.coeffs],
            })
            return EXIT_OK
        if args.group == "bounds":
            report = bounds_mod.evaluate(args.formula, _parse_params(args.params))
            if args.observed is not None:
                report = report.with_observed(args.observed)
            _emit(report.to_json())
            return EXIT_OK
        if args.group == "gen":
            text = generate_instance(args.kind, args.n, args.seed).dumps()
            if args.out:
                atomic_write_text(args.out, text)
            else:
                sys.stdout.write(text)
            return EXIT_OK
        config = _config_from_args(args)
    except (IncidenceError, ValueError) as exc:
        print(f"error [{getattr(exc, 'code', 'core.InputError')}]: {exc}", file=sys.stderr)
        return EXIT_INPUT
    result = run_experiment(config)
    for msg in result.messages:
        print(msg, file=sys.stderr)
    if not config.out:
        _emit(result.report)
    return result.exit_code


def _config_from_args(args) -> ExperimentConfig:
    command = {
        ("incidence", "count"): "count",
        ("incidence", "kst"): "kst",
        ("partition", "run"): "partition",
    }.get((args.group, args.cmd), args.cmd)
    config = ExperimentConfig(
        command=command,
        seed=args.seed,
        instance=args.instance,
        out=args.out,
        trend=args.trend,
        cap=args.cap,
        timestamp=not args.no_timestamp,
    )
    for name in ("extra_csv", "k", "m", "s", "t", "r", "set_kind"):
        if hasattr(args, name) and getattr(args, name) is not None:
            setattr(config, name, getattr(args, name))
    if hasattr(args, "n"):
        config.n_values = parse_n_values(args.n)
    return config


if __name__ == "__main__":
    sys.exit(main())
