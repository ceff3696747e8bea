"""Command-line front end.

Subcommands: analyze, thresholds, enumerate, regions, verify, witness.
Exit codes: 0 success, 1 verification failure (a finding), 2 usage or parse
error, 3 resource-guard refusal.  Identical invocations produce byte-identical
output regardless of --jobs; rationals are rendered as "num/den" strings plus
a string decimal approximation, never bare floats.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from fractions import Fraction

from . import __version__
from .analysis import (
    PRED_ALL_INFORMANTS,
    PRED_MAX_RATE,
    Check,
    CountReport,
    RegionTable,
    ThresholdSet,
    classify,
    count_at_cardinality,
    find_witness,
    formula_thresholds,
    oracle_thresholds,
    region_table,
    verify_counts,
    verify_invariants,
    verify_lemmas,
    verify_proposition_suite,
)
from .errors import WccompError
from .oracle import DEFAULT_STATE_CAP, TargetFunction, strategy_to_json
from .supports import (
    DEFAULT_CELL_CAP,
    DEFAULT_ENUM_GUARD,
    SupportSet,
    make_space,
    parse_support,
    serialize_support,
)

_PREDICATE_FLAGS = {
    "max-rate-bits": PRED_MAX_RATE,
    "all-informants": PRED_ALL_INFORMANTS,
    "beta-one": "beta_one",
}

_REGION_CSV_COLUMNS = [
    "cardinality",
    "exists_incompressible",
    "all_incompressible",
    "label",
    "count",
    "total",
]


def _parse_space_arg(text: str) -> tuple[int, int]:
    try:
        q_str, n_str = text.lower().split("x")
        return int(q_str), int(n_str)
    except ValueError:
        raise argparse.ArgumentTypeError(
            f"space must look like '5x2', got {text!r}"
        ) from None


def _fraction_field(value: Fraction) -> dict:
    return {
        "fraction": f"{value.numerator}/{value.denominator}",
        "approx": format(float(value), ".12g"),
    }


def _emit(text: str, output: str | None) -> None:
    if output:
        with open(output, "w", newline="") as handle:
            handle.write(text)
    else:
        sys.stdout.write(text)


def _json_text(payload: dict) -> str:
    return json.dumps(payload, indent=2) + "\n"


def _csv_text(rows: list[dict]) -> str:
    buf = io.StringIO()
    writer = csv.DictWriter(buf, fieldnames=_REGION_CSV_COLUMNS, lineterminator="\n")
    writer.writeheader()
    for row in rows:
        writer.writerow(row)
    return buf.getvalue()


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="wccomp",
        description="Exact worst-case compressibility lab for finite support sets.",
    )
    parser.add_argument("--version", action="version", version=f"wccomp {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    def add_guards(p):
        p.add_argument("--cell-cap", type=int, default=DEFAULT_CELL_CAP)
        p.add_argument("--enum-guard", type=int, default=DEFAULT_ENUM_GUARD)
        p.add_argument(
            "--allow-large",
            action="store_true",
            help="acknowledge guard overrides above the defaults",
        )

    def add_common(p, predicate=False, function=True, jobs=False):
        p.add_argument("--output", help="write the report here instead of stdout")
        if function:
            p.add_argument(
                "--function", choices=["identity", "bitor"], default="identity"
            )
        if predicate:
            p.add_argument(
                "--predicate",
                choices=sorted(_PREDICATE_FLAGS),
                default="max-rate-bits",
            )
        if jobs:
            p.add_argument("--jobs", type=int, default=1)

    p = sub.add_parser("analyze", help="full cost report for one support set")
    p.add_argument("--input", required=True, help="support-set file (JSON or grid)")
    p.add_argument("--input-format", choices=["auto", "json", "grid"], default="auto")
    p.add_argument("--space", type=_parse_space_arg, help="optional QxN cross-check")
    p.add_argument(
        "--model", choices=["block-serial", "bit-adaptive"], default="block-serial"
    )
    p.add_argument("--state-cap", type=int, default=DEFAULT_STATE_CAP,
                   help="memo limit for the bit-adaptive oracle")
    p.add_argument("--include-strategy", action="store_true")
    add_common(p)
    add_guards(p)

    p = sub.add_parser("thresholds", help="region thresholds, formula or exhaustive")
    p.add_argument("--space", type=_parse_space_arg, required=True)
    p.add_argument("--mode", choices=["formula", "oracle"], default="formula")
    p.add_argument("--format", choices=["json", "text"], default="json")
    add_common(p)
    add_guards(p)

    p = sub.add_parser("enumerate", help="exact incompressible count at one cardinality")
    p.add_argument("--space", type=_parse_space_arg, required=True)
    p.add_argument("--cardinality", type=int, required=True)
    p.add_argument("--format", choices=["json", "csv"], default="json")
    add_common(p, predicate=True, jobs=True)
    add_guards(p)

    p = sub.add_parser("regions", help="per-cardinality compressibility bands")
    p.add_argument("--space", type=_parse_space_arg, required=True)
    p.add_argument("--kind", choices=["bits", "informants"], default="bits")
    p.add_argument("--mode", choices=["oracle", "formula"], default="oracle")
    p.add_argument("--counts", action="store_true", help="also count every cardinality")
    p.add_argument("--format", choices=["csv", "json"], default="csv")
    p.add_argument("--figure", help="also render the bands to this image file")
    add_common(p, jobs=True)
    add_guards(p)

    p = sub.add_parser("verify", help="cross-check the closed forms against the oracle")
    p.add_argument(
        "--suite",
        choices=["lemmas", "counts", "proposition", "invariants"],
        required=True,
    )
    p.add_argument("--space", type=_parse_space_arg)
    p.add_argument("--range-min", type=int, default=3, help="proposition grid lower bound")
    p.add_argument("--range-max", type=int, default=10, help="proposition grid upper bound")
    p.add_argument("--samples", type=int, default=500)
    p.add_argument("--seed", type=int, default=0)
    add_common(p, predicate=True, jobs=True)
    add_guards(p)

    p = sub.add_parser("witness", help="first set matching a predicate at a cardinality")
    p.add_argument("--space", type=_parse_space_arg, required=True)
    p.add_argument("--cardinality", type=int, required=True)
    p.add_argument("--negate", action="store_true", help="search for a violating set")
    p.add_argument("--format", choices=["grid", "json"], default=None)
    p.add_argument("--figure", help="also render the witness grid to this image file")
    add_common(p, predicate=True)
    add_guards(p)
    return parser


def _check_guards(args) -> None:
    over = []
    if getattr(args, "cell_cap", DEFAULT_CELL_CAP) > DEFAULT_CELL_CAP:
        over.append(f"--cell-cap {args.cell_cap}")
    if getattr(args, "enum_guard", DEFAULT_ENUM_GUARD) > DEFAULT_ENUM_GUARD:
        over.append(f"--enum-guard {args.enum_guard}")
    if getattr(args, "state_cap", DEFAULT_STATE_CAP) > DEFAULT_STATE_CAP:
        over.append(f"--state-cap {args.state_cap}")
    if over and not args.allow_large:
        raise _UsageError(
            f"raising guards ({', '.join(over)}) requires --allow-large"
        )


class _UsageError(Exception):
    pass


def _function_of(args) -> TargetFunction:
    return TargetFunction.from_name(getattr(args, "function", "identity"))


def _space_of(args, required=True):
    pair = getattr(args, "space", None)
    if pair is None:
        if required:
            raise _UsageError("--space is required for this command")
        return None
    q, n = pair
    return make_space(q, n, cell_cap=args.cell_cap)


def _report_payload(report, include_strategy: bool) -> dict:
    measures = report.measures
    payload = {
        "version": __version__,
        "model": report.model,
        "function": report.function_kind,
        "space": {
            "alphabet_size": report.space.alphabet_size,
            "num_informants": report.space.num_informants,
        },
        "ambiguity": measures.ambiguity,
        "marginal_ambiguities": list(measures.marginal_ambiguities),
        "sparsity": _fraction_field(measures.sparsity),
        "naive_bit_budget": measures.naive_bit_budget,
        "min_bits_bound": measures.min_bits_bound,
        "bits_worst": report.bits_worst,
        "informants_worst": report.informants_worst,
        "beta": _fraction_field(report.beta),
        "beta_degenerate": report.beta_degenerate,
        "eta": _fraction_field(report.eta),
        "eta_degenerate": report.eta_degenerate,
        "bit_compressible": report.bit_compressible,
        "informant_compressible": report.informant_compressible,
        "max_rate": report.max_rate,
        "all_informants": report.all_informants,
        "degenerate": report.degenerate,
    }
    if include_strategy:
        payload["strategies"] = {
            "bits": strategy_to_json(report.bits_strategy)
            if report.bits_strategy
            else None,
            "informants": strategy_to_json(report.informants_strategy)
            if report.informants_strategy
            else None,
        }
    return payload


def _cmd_analyze(args) -> int:
    with open(args.input, "rb") as handle:
        raw = handle.read()
    fmt = args.input_format
    if fmt == "auto":
        fmt = "json" if raw.lstrip()[:1] == b"{" else "grid"
    support = parse_support(raw, fmt)
    if args.space is not None:
        q, n = args.space
        actual = support.space
        if (actual.alphabet_size, actual.num_informants) != (q, n):
            raise _UsageError(
                f"--space {q}x{n} does not match the input's space {actual}"
            )
    report = classify(
        support,
        _function_of(args),
        model=args.model,
        include_strategies=args.include_strategy,
        state_cap=args.state_cap,
    )
    _emit(_json_text(_report_payload(report, args.include_strategy)), args.output)
    return 0


def _cmd_thresholds(args) -> int:
    q, n = args.space
    function = _function_of(args)
    mode = "dsc" if function.kind == "identity" else "bitwise_or"
    if args.mode == "formula":
        result = formula_thresholds(q, n, mode)
    else:
        space = make_space(q, n, cell_cap=args.cell_cap)
        bits = oracle_thresholds(space, function, PRED_MAX_RATE, guard=args.enum_guard)
        informants = oracle_thresholds(
            space, function, PRED_ALL_INFORMANTS, guard=args.enum_guard
        )
        result = ThresholdSet(
            mode=mode,
            source="oracle",
            m1=bits.m1,
            m2=bits.m2,
            m3=informants.m3,
            m4=informants.m4,
        )
    if args.format == "text":
        values = [result.m1, result.m2, result.m3, result.m4]
        text = ",".join("-" if v is None else str(v) for v in values) + "\n"
    else:
        text = _json_text(
            {
                "version": __version__,
                "model": "block-serial",
                "space": f"{q}x{n}",
                "mode": result.mode,
                "source": result.source,
                "m1": result.m1,
                "m2": result.m2,
                "m3": result.m3,
                "m4": result.m4,
            }
        )
    _emit(text, args.output)
    return 0


def _count_row(report: CountReport) -> dict:
    exists = report.incompressible_count > 0
    all_inc = report.incompressible_count == report.total_sets
    label = (
        "all_incompressible"
        if all_inc
        else ("mixed" if exists else "all_compressible")
    )
    return {
        "cardinality": report.cardinality,
        "exists_incompressible": exists,
        "all_incompressible": all_inc,
        "label": label,
        "count": report.incompressible_count,
        "total": report.total_sets,
    }


def _cmd_enumerate(args) -> int:
    space = _space_of(args)
    predicate = _PREDICATE_FLAGS[args.predicate]
    report = count_at_cardinality(
        space,
        args.cardinality,
        predicate,
        _function_of(args),
        guard=args.enum_guard,
        jobs=args.jobs,
    )
    if args.format == "csv":
        text = _csv_text([_count_row(report)])
    else:
        text = _json_text(
            {
                "version": __version__,
                "model": "block-serial",
                "space": str(space),
                "function": report.function_kind,
                "predicate": report.predicate,
                "cardinality": report.cardinality,
                "count": report.incompressible_count,
                "total": report.total_sets,
                "fraction": _fraction_field(report.fraction),
            }
        )
    _emit(text, args.output)
    return 0


def _region_rows(table: RegionTable) -> list[dict]:
    rows = []
    for row in table.rows:
        rows.append(
            {
                "cardinality": row.cardinality,
                "exists_incompressible": row.exists_incompressible,
                "all_incompressible": row.all_incompressible,
                "label": row.label,
                "count": "" if row.count is None else row.count,
                "total": "" if row.total is None else row.total,
            }
        )
    return rows


def _cmd_regions(args) -> int:
    space = _space_of(args)
    table = region_table(
        space,
        _function_of(args),
        kind=args.kind,
        mode=args.mode,
        guard=args.enum_guard,
        jobs=args.jobs,
        with_counts=args.counts,
    )
    if args.format == "json":
        rows = []
        for row in table.rows:
            rows.append(
                {
                    "cardinality": row.cardinality,
                    "exists_incompressible": row.exists_incompressible,
                    "all_incompressible": row.all_incompressible,
                    "label": row.label,
                    "count": row.count,
                    "total": row.total,
                }
            )
        text = _json_text(
            {
                "version": __version__,
                "model": "block-serial",
                "space": str(space),
                "function": table.function_kind,
                "kind": table.kind,
                "mode": table.mode,
                "rows": rows,
            }
        )
    else:
        text = _csv_text(_region_rows(table))
    _emit(text, args.output)
    if args.figure:
        from .plotting import render_region_bands

        render_region_bands(table, args.figure)
    return 0


def _checks_payload(suite: str, checks: list[Check]) -> tuple[str, bool]:
    passed = all(c.passed for c in checks)
    payload = {
        "version": __version__,
        "model": "block-serial",
        "suite": suite,
        "passed": passed,
        "checks": [
            {
                "name": c.name,
                "passed": c.passed,
                "expected": c.expected,
                "actual": c.actual,
                "counterexample": c.counterexample,
            }
            for c in checks
        ],
    }
    return _json_text(payload), passed


def _cmd_verify(args) -> int:
    suite = args.suite
    if suite == "proposition":
        checks = verify_proposition_suite(
            range(args.range_min, args.range_max + 1),
            range(args.range_min, args.range_max + 1),
        )
    elif suite == "lemmas":
        checks = verify_lemmas(_space_of(args), _function_of(args), guard=args.enum_guard)
    elif suite == "counts":
        checks = verify_counts(
            _space_of(args),
            _PREDICATE_FLAGS[args.predicate],
            guard=args.enum_guard,
            jobs=args.jobs,
        )
    else:
        checks = verify_invariants(_space_of(args), samples=args.samples, seed=args.seed)
    text, passed = _checks_payload(suite, checks)
    _emit(text, args.output)
    return 0 if passed else 1


def _cmd_witness(args) -> int:
    space = _space_of(args)
    predicate = _PREDICATE_FLAGS[args.predicate]
    witness = find_witness(
        space,
        args.cardinality,
        predicate,
        _function_of(args),
        negate=args.negate,
        guard=args.enum_guard,
    )
    fmt = args.format
    if fmt is None:
        fmt = "grid" if space.num_informants == 2 else "json"
    if witness is None:
        text = _json_text(
            {
                "version": __version__,
                "model": "block-serial",
                "space": str(space),
                "cardinality": args.cardinality,
                "predicate": predicate,
                "negate": args.negate,
                "witness": None,
            }
        )
    elif fmt == "grid":
        text = serialize_support(witness, "grid")
    else:
        text = _json_text(
            {
                "version": __version__,
                "model": "block-serial",
                "space": str(space),
                "cardinality": args.cardinality,
                "predicate": predicate,
                "negate": args.negate,
                "witness": json.loads(serialize_support(witness, "json")),
            }
        )
    _emit(text, args.output)
    if args.figure and witness is not None:
        from .plotting import render_support_grid

        render_support_grid(witness, args.figure)
    return 0


_COMMANDS = {
    "analyze": _cmd_analyze,
    "thresholds": _cmd_thresholds,
    "enumerate": _cmd_enumerate,
    "regions": _cmd_regions,
    "verify": _cmd_verify,
    "witness": _cmd_witness,
}


def main(argv: list[str] | None = None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        _check_guards(args)
        return _COMMANDS[args.command](args)
    except _UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except FileNotFoundError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except WccompError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3 if exc.guard else 2


if __name__ == "__main__":
    sys.exit(main())
