"""Command-line interface: catalog scans, reports, and proof verification."""
from __future__ import annotations

import argparse
import json
import sys
from concurrent.futures import ProcessPoolExecutor
from importlib import resources
from typing import Optional

from .algebra import GroupAlgebra
from .classify import (
    Condition,
    classify_theorem1,
    cross_check,
    lie_nilpotency_status,
    unit_group_class,
)
from .errors import (
    ChainVanished,
    LieNilError,
    NoWitness,
    ParseError,
    ScaleExceeded,
    StepMismatch,
)
from .groups import (
    DEFAULT_MAX_ORDER,
    Group,
    NotAbelian,
    Subgroup,
    abelian_type,
    is_prime,
    lower_central_series,
    nilpotency_class,
    parse_catalog,
)
from .series import series_report
from .verifier import find_witness_pair, verify_chain_p2, verify_chain_p3


def _bundled_catalog_text() -> str:
    return (resources.files("lienil") / "data" / "catalog.json").read_text()


def _load_specs(path: Optional[str]) -> list:
    if path is None:
        return parse_catalog(_bundled_catalog_text())
    with open(path, "r", encoding="utf-8") as fh:
        return parse_catalog(fh.read())


def _select_pairs(specs, group_name, prime, with_primes=True):
    if group_name is not None:
        specs = [s for s in specs if s.name == group_name]
        if not specs:
            raise ParseError(f"group {group_name!r} is not in the catalog")
    if not with_primes:
        return sorted(((s, None) for s in specs), key=lambda x: x[0].name)
    pairs = []
    for s in specs:
        primes = (prime,) if prime is not None else s.primes
        pairs.extend((s, p) for p in primes)
    return sorted(pairs, key=lambda x: (x[0].name, x[1]))


def _maybe_type(group: Group, sub: Subgroup) -> Optional[list]:
    try:
        return list(abelian_type(group, sub))
    except NotAbelian:
        return None


def _report_dict(group: Group, p: int) -> dict:
    rep = cross_check(group, p)
    series = lower_central_series(group)
    derived = series[1] if len(series) > 1 else series[-1]
    out = {
        "name": group.name,
        "p": p,
        "order": group.order,
        "class": nilpotency_class(group),
        "gamma_orders": [term.order for term in series],
        "derived_type": _maybe_type(group, derived),
        "status": rep.status.reason.value,
        "t_lower": None,
        "t_upper": None,
        "lower_dims": None,
        "upper_dims": None,
        "condition": None,
        "predicted": None,
        "checks": [
            {"name": c.name, "pass": c.passed, "detail": c.detail}
            for c in rep.checks
        ],
    }
    if rep.computed is not None:
        out["t_lower"] = rep.computed.t_lower
        out["t_upper"] = rep.computed.t_upper
        out["lower_dims"] = list(rep.computed.lower_dims)
        out["upper_dims"] = list(rep.computed.upper_dims)
    if rep.classification is not None:
        out["condition"] = rep.classification.condition.value
        out["predicted"] = {
            "kind": rep.classification.predicted.kind.value,
            "value": rep.classification.predicted.value,
        }
    return out


def _scan_pair(task) -> dict:
    spec, p, max_order = task
    return _report_dict(spec.build(max_order), p)


def _emit(rows: list, as_json: bool, columns: list) -> None:
    if as_json:
        for row in rows:
            print(json.dumps(row, sort_keys=True))
        return
    print("\t".join(columns))
    for row in rows:
        cells = []
        for col in columns:
            value = row.get(col)
            if isinstance(value, list):
                value = ",".join(str(v) for v in value)
            elif isinstance(value, dict):
                value = f"{value.get('kind')}={value.get('value')}"
            cells.append("-" if value is None else str(value))
        print("\t".join(cells))


def _cmd_analyze(args) -> int:
    specs = _load_specs(args.catalog)
    rows = []
    for spec, _ in _select_pairs(specs, args.group, None, with_primes=False):
        group = spec.build(args.max_order)
        series = lower_central_series(group)
        rows.append({
            "name": group.name,
            "order": group.order,
            "class": nilpotency_class(group),
            "gamma_orders": [term.order for term in series],
            "abelian_type": _maybe_type(group, Subgroup(tuple(range(group.order)))),
            "derived_type": _maybe_type(group, series[1] if len(series) > 1
                                        else series[-1]),
        })
    _emit(rows, args.json,
          ["name", "order", "class", "gamma_orders", "abelian_type", "derived_type"])
    return 0


def _cmd_indices(args) -> int:
    specs = _load_specs(args.catalog)
    rows = []
    reports = []
    for spec, p in _select_pairs(specs, args.group, args.prime):
        group = spec.build(args.max_order)
        status = lie_nilpotency_status(group, p)
        row = {"name": group.name, "p": p, "status": status.reason.value,
               "t_lower": None, "t_upper": None,
               "lower_dims": None, "upper_dims": None}
        if status.lie_nilpotent:
            rep = series_report(GroupAlgebra(group, p))
            reports.append(rep)
            row.update(t_lower=rep.t_lower, t_upper=rep.t_upper,
                       lower_dims=list(rep.lower_dims),
                       upper_dims=list(rep.upper_dims))
        rows.append(row)
    _emit(rows, args.json,
          ["name", "p", "status", "t_lower", "t_upper", "lower_dims", "upper_dims"])
    if args.plot_dir:
        from .plots import figure_path, save_series_figure

        for rep in reports:
            path = save_series_figure(rep, figure_path(args.plot_dir, rep.group_name, rep.p))
            print(f"wrote {path}", file=sys.stderr)
    return 0


def _cmd_classify(args) -> int:
    specs = _load_specs(args.catalog)
    rows = []
    for spec, p in _select_pairs(specs, args.group, args.prime):
        group = spec.build(args.max_order)
        status = lie_nilpotency_status(group, p)
        row = {"name": group.name, "p": p, "status": status.reason.value,
               "condition": None, "predicted": None}
        if status.lie_nilpotent:
            cls = classify_theorem1(group, p)
            row["condition"] = cls.condition.value
            row["predicted"] = {"kind": cls.predicted.kind.value,
                                "value": cls.predicted.value}
        rows.append(row)
    _emit(rows, args.json, ["name", "p", "status", "condition", "predicted"])
    return 0


def _cmd_scan(args) -> int:
    specs = _load_specs(args.catalog)
    pairs = _select_pairs(specs, args.group, args.prime)
    tasks = [(spec, p, args.max_order) for spec, p in pairs]
    if args.jobs > 1:
        with ProcessPoolExecutor(max_workers=args.jobs) as pool:
            rows = list(pool.map(_scan_pair, tasks))
    else:
        rows = [_scan_pair(task) for task in tasks]
    rows.sort(key=lambda r: (r["name"], r["p"]))
    _emit(rows, args.json,
          ["name", "p", "order", "class", "t_lower", "t_upper",
           "condition", "predicted", "status"])
    if args.plot_dir:
        import os

        from .plots import figure_path, save_scan_figure, save_series_figure
        from .series import SeriesReport

        os.makedirs(args.plot_dir, exist_ok=True)
        for row in rows:
            if row["t_lower"] is None:
                continue
            rep = SeriesReport(row["p"], row["name"],
                               tuple(row["lower_dims"]), tuple(row["upper_dims"]),
                               row["t_lower"], row["t_upper"])
            path = save_series_figure(rep, figure_path(args.plot_dir, row["name"], row["p"]))
            print(f"wrote {path}", file=sys.stderr)
        summary = save_scan_figure(rows, os.path.join(args.plot_dir, "scan_summary.png"))
        print(f"wrote {summary}", file=sys.stderr)
    failed = any(not c["pass"] for row in rows for c in row["checks"])
    return 1 if failed else 0


def _cmd_verify_proof(args) -> int:
    specs = _load_specs(args.catalog)
    rows = []
    failed = False
    for spec, p in _select_pairs(specs, args.group, args.prime):
        group = spec.build(args.max_order)
        if not lie_nilpotency_status(group, p).lie_nilpotent:
            continue
        cls = classify_theorem1(group, p)
        cond = cls.condition
        if cond is Condition.NONE:
            continue
        row = {"name": group.name, "p": p, "condition": cond.value,
               "case": None, "final_form": None,
               "implied_lower_bound": None, "steps": None, "pass": False}
        if cond is Condition.I:
            rep = series_report(GroupAlgebra(group, p))
            row["case"] = "series"
            row["final_form"] = f"t_lower={rep.t_lower}"
            row["implied_lower_bound"] = rep.t_lower
            row["steps"] = []
            row["pass"] = rep.t_lower == cls.predicted.value
        else:
            try:
                witness = find_witness_pair(group, cond)
                ctx = GroupAlgebra(group, p)
                verify = verify_chain_p3 if p == 3 else verify_chain_p2
                chain = verify(ctx, witness)
                row["case"] = witness.case_tag.value
                row["final_form"] = chain.final_form
                row["implied_lower_bound"] = chain.implied_lower_bound
                row["steps"] = [
                    {"word": ",".join(step.word), "matched": step.matched}
                    for step in chain.steps
                ]
                row["pass"] = chain.final_nonzero
            except (NoWitness, ChainVanished, StepMismatch) as exc:
                row["final_form"] = f"{type(exc).__name__}: {exc}"
        failed = failed or not row["pass"]
        rows.append(row)
    _emit(rows, args.json,
          ["name", "p", "condition", "case", "final_form",
           "implied_lower_bound", "pass"])
    return 1 if failed else 0


def _cmd_units_class(args) -> int:
    specs = _load_specs(args.catalog)
    rows = []
    for spec, p in _select_pairs(specs, args.group, args.prime):
        group = spec.build(args.max_order)
        row = {"name": group.name, "p": p, "units_class": None, "note": None}
        try:
            row["units_class"] = unit_group_class(GroupAlgebra(group, p))
        except ValueError:
            row["note"] = "not a p-group for this prime"
        except ScaleExceeded as exc:
            row["note"] = str(exc)
        rows.append(row)
    _emit(rows, args.json, ["name", "p", "units_class", "note"])
    return 0


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="lienil",
        description="Lie nilpotency indices of modular group algebras over GF(p).")
    sub = parser.add_subparsers(dest="command", required=True)
    for name, fn, has_plots in (
            ("analyze", _cmd_analyze, False),
            ("indices", _cmd_indices, True),
            ("classify", _cmd_classify, False),
            ("scan", _cmd_scan, True),
            ("verify-proof", _cmd_verify_proof, False),
            ("units-class", _cmd_units_class, False)):
        cmd = sub.add_parser(name)
        cmd.set_defaults(fn=fn)
        cmd.add_argument("--catalog", default=None,
                         help="catalog JSON path (default: bundled)")
        cmd.add_argument("--group", default=None, help="restrict to one group")
        cmd.add_argument("-p", "--prime", type=int, default=None,
                         help="override the primes declared in the catalog")
        cmd.add_argument("--max-order", type=int, default=DEFAULT_MAX_ORDER)
        cmd.add_argument("--json", action="store_true",
                         help="one JSON object per line instead of a table")
        if name == "scan":
            cmd.add_argument("--jobs", type=int, default=1,
                             help="parallel workers for the scan")
        if has_plots:
            cmd.add_argument("--plot-dir", default=None,
                             help="write series/summary figures to this directory")
    return parser


def main(argv=None) -> int:
    args = _build_parser().parse_args(argv)
    if args.prime is not None and not is_prime(args.prime):
        print(f"error: {args.prime} is not prime", file=sys.stderr)
        return 2
    if args.max_order < 1:
        print("error: --max-order must be at least 1", file=sys.stderr)
        return 2
    if getattr(args, "jobs", 1) < 1:
        print("error: --jobs must be at least 1", file=sys.stderr)
        return 2
    if getattr(args, "plot_dir", None):
        import os

        os.makedirs(args.plot_dir, exist_ok=True)
    try:
        return args.fn(args)
    except (ParseError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except LieNilError as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
