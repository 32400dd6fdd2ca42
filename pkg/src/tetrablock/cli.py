"""Command-line entry point.

One executable, ``tetra``, with a subcommand per tool.  Every command
prints a single JSON document (or flat text with ``--format text``)
and returns an exit code with a fixed meaning:

* 0: the computation succeeded and the verdict, if any, is affirmative.
* 1: the computation succeeded but the verdict is negative
  (Violation, Obstructed, Inconclusive, or a failing selftest).
* 2: usage or input error.

The distinction lets shell scripts separate "the math said no" from
"the tool could not run".  Randomized commands echo the seed they
used; repeating a command with the same seed and flags reproduces the
output byte for byte.  ``TETRA_SEED`` overrides the config seed, and
an explicit ``--seed`` flag overrides both.
"""

from __future__ import annotations

import argparse
import json
import os
import sys

import numpy as np

from .config import DEFAULT_CONFIG, ToolConfig
from .contractions import (
    check_obstruction_hypotheses,
    check_tetra_isometry,
    check_tetra_unitary,
    dilation_obstruction,
    extract_fundamental,
    falsify_spectral_set,
    triple_from_json,
    triple_to_json,
)
from .counterexample import (
    SCHEMA_ID,
    pipeline_report_to_json,
    run_pipeline,
)
from .errors import TetrablockError
from .geometry import classify_point, sup_on_closure
from .linalg import matrix_from_json, matrix_to_json, op_norm
from .models import (
    build_circulant_model,
    build_hardy_model,
    interior_identity_report,
    validate_symbol_pair,
)
from .poly3 import cf_empirical_inf, cf_matrix_norm, poly_from_json

__all__ = ["main"]


def _parse_complex(text: str) -> complex:
    try:
        return complex(text.strip().replace(" ", ""))
    except ValueError:
        raise ValueError(f"cannot parse {text!r} as a complex number")


def _parse_point(text: str) -> tuple[complex, complex, complex]:
    """Accept '(a,b,c)' tuple syntax or the JSON point object."""
    text = text.strip()
    if text.startswith("{"):
        from .geometry import point_from_json

        return point_from_json(json.loads(text))
    inner = text.strip("()[] ")
    parts = inner.split(",")
    if len(parts) != 3:
        raise ValueError(
            f"expected three comma-separated components, got {text!r}"
        )
    return tuple(_parse_complex(p) for p in parts)


def _load_json_file(path: str):
    with open(path, "r", encoding="utf-8") as fh:
        return json.load(fh)


def _resolve_seed(args, config: ToolConfig) -> int:
    if getattr(args, "seed", None) is not None:
        return args.seed
    env = os.environ.get("TETRA_SEED")
    if env is not None:
        try:
            return int(env)
        except ValueError:
            raise ValueError(f"TETRA_SEED must be an integer, got {env!r}")
    return config.seed


def _flatten(doc, prefix="") -> list:
    lines = []
    if isinstance(doc, dict):
        for key in sorted(doc):
            lines.extend(_flatten(doc[key], f"{prefix}{key}."))
    elif isinstance(doc, (list, tuple)):
        lines.append(f"{prefix[:-1]}: {json.dumps(doc)}")
    else:
        lines.append(f"{prefix[:-1]}: {doc}")
    return lines


def _emit(doc: dict, args, config: ToolConfig) -> None:
    fmt = getattr(args, "format", None) or config.output_format
    if fmt == "text":
        print("\n".join(_flatten(doc)))
    else:
        print(json.dumps(doc, indent=2, sort_keys=True))


def _complex_json(value: complex) -> list:
    return [float(value.real), float(value.imag)]


def _cmd_classify(args, config: ToolConfig) -> int:
    x1, x2, x3 = _parse_point(args.point)
    rep = classify_point(x1, x2, x3, tol=config.tol_algebraic)
    doc = {
        "schema": SCHEMA_ID,
        "tool": "classify",
        "point": {
            "x1": _complex_json(x1),
            "x2": _complex_json(x2),
            "x3": _complex_json(x3),
        },
        "in_closure": rep.in_closure,
        "distinguished_boundary": rep.distinguished,
        "x3_abs": rep.x3_abs,
        "beta": None
        if rep.beta is None
        else [_complex_json(rep.beta[0]), _complex_json(rep.beta[1])],
        "beta_sum": rep.beta_sum,
        "residual": rep.residual,
        "verdict": "InClosure" if rep.in_closure else "Outside",
    }
    _emit(doc, args, config)
    return 0


def _cmd_sup(args, config: ToolConfig) -> int:
    poly = poly_from_json(_load_json_file(args.poly))
    seed = _resolve_seed(args, config)
    samples = args.samples if args.samples is not None else config.sup_samples
    value = sup_on_closure(poly, n_samples=samples, seed=seed)
    doc = {
        "schema": SCHEMA_ID,
        "tool": "sup",
        "seed": seed,
        "samples": samples,
        "estimate": value,
        "verdict": "Estimated",
    }
    _emit(doc, args, config)
    return 0


def _cmd_cf(args, config: ToolConfig) -> int:
    b0 = _parse_complex(args.b0)
    b1 = _parse_complex(args.b1)
    seed = _resolve_seed(args, config)
    mu = cf_matrix_norm(b0, b1)
    value = cf_empirical_inf(
        b0, b1, args.degree, grid=config.cf_grid, seed=seed
    )
    doc = {
        "schema": SCHEMA_ID,
        "tool": "cf",
        "seed": seed,
        "b0": _complex_json(b0),
        "b1": _complex_json(b1),
        "degree": args.degree,
        "matrix_norm": mu,
        "empirical_inf": value,
        "ratio": value / mu if mu > 0 else None,
        "verdict": "Estimated",
    }
    _emit(doc, args, config)
    return 0


def _cmd_fundamental(args, config: ToolConfig) -> int:
    triple = triple_from_json(_load_json_file(args.triple))
    pair = extract_fundamental(
        triple, rank_tol=config.rank_tol, tol_solve=config.tol_solve
    )
    doc = {
        "schema": SCHEMA_ID,
        "tool": "fundamental",
        "rank": pair.rank,
        "residual_1": pair.residual_1,
        "residual_2": pair.residual_2,
        "a1": matrix_to_json(pair.a1),
        "a2": matrix_to_json(pair.a2),
        "a1_norm": float(op_norm(pair.a1)),
        "a2_norm": float(op_norm(pair.a2)),
        "verdict": "Extracted",
    }
    _emit(doc, args, config)
    return 0


def _cmd_falsify(args, config: ToolConfig) -> int:
    triple = triple_from_json(_load_json_file(args.triple))
    seed = _resolve_seed(args, config)
    trials = args.trials if args.trials is not None else config.falsify_trials
    rep = falsify_spectral_set(
        triple, trials=trials, degree=args.degree, seed=seed, config=config
    )
    doc = {
        "schema": SCHEMA_ID,
        "tool": "falsify",
        "seed": seed,
        "trials": trials,
        "degree": args.degree,
        "outcome": rep.outcome,
        "worst_ratio": rep.worst_ratio,
        "commutation_defect": rep.commutation_defect,
        "verdict": rep.outcome,
    }
    cert = rep.certificate
    if cert is not None and cert.violates:
        from .poly3 import poly_to_json

        doc["certificate"] = {
            "poly": poly_to_json(cert.poly),
            "lhs": cert.lhs,
            "sup_first": cert.sup_first,
            "sup_refined": cert.sup_refined,
            "margin": cert.margin,
        }
    _emit(doc, args, config)
    return 1 if rep.outcome == "Violation" else 0


def _cmd_obstruction(args, config: ToolConfig) -> int:
    triple = triple_from_json(_load_json_file(args.triple))
    pair = extract_fundamental(
        triple, rank_tol=config.rank_tol, tol_solve=config.tol_solve
    )
    obstruction = dilation_obstruction(
        pair.a1, pair.a2, tol=config.tol_algebraic
    )
    hypotheses = check_obstruction_hypotheses(
        triple, args.split, tol=config.tol_algebraic, rank_tol=config.rank_tol
    )
    doc = {
        "schema": SCHEMA_ID,
        "tool": "obstruction",
        "split": args.split,
        "rank": pair.rank,
        "c1": obstruction.c1,
        "c2": obstruction.c2,
        "tol": obstruction.tol,
        "hypotheses": {
            "mode": hypotheses.mode,
            "defect_kernel": hypotheses.defect_kernel,
            "defect_range": hypotheses.defect_range,
            "shift_kills_range": hypotheses.shift_kills_range,
            "shift_maps_kernel": hypotheses.shift_maps_kernel,
            "passed": hypotheses.passed,
        },
        "verdict": "Obstructed" if obstruction.obstructed else "Unobstructed",
    }
    _emit(doc, args, config)
    return 1 if obstruction.obstructed else 0


def _cmd_model(args, config: ToolConfig) -> int:
    a1 = matrix_from_json(_load_json_file(args.a1))
    a2 = matrix_from_json(_load_json_file(args.a2))
    symbol = validate_symbol_pair(
        a1, a2, tol=config.tol_algebraic, z_samples=config.z_samples
    )
    builders = {
        "hardy": build_hardy_model,
        "l2": build_circulant_model,
        "circulant": build_circulant_model,
    }
    model = builders[args.flavor](
        a1,
        a2,
        args.blocks,
        tol=config.tol_algebraic,
        z_samples=config.z_samples,
    )
    triple = model.as_triple()
    doc = {
        "schema": SCHEMA_ID,
        "tool": "model",
        "flavor": model.flavor,
        "blocks": args.blocks,
        "dim": model.dim,
        "symbol": {
            "commutator": symbol.commutator,
            "balance": symbol.balance,
            "max_pencil_norm": symbol.max_pencil_norm,
            "valid": symbol.valid,
        },
        "verdict": "Built",
    }
    if model.flavor == "hardy":
        interior = interior_identity_report(model)
        isometry = check_tetra_isometry(triple)
        doc["interior"] = {
            "interior_dim": interior.interior_dim,
            "defect_isometry": interior.defect_isometry,
            "defect_relation_1": interior.defect_relation_1,
            "defect_relation_2": interior.defect_relation_2,
            "passed": interior.passed,
        }
        doc["commutation"] = isometry.commutation
    else:
        unitary = check_tetra_unitary(triple)
        doc["boundary_triple"] = {
            "commutation": unitary.commutation,
            "unitary_defect": unitary.unitary_defect,
            "relation_1": unitary.relation_1,
            "relation_2": unitary.relation_2,
            "passed": unitary.passed,
        }
    if args.emit:
        with open(args.emit, "w", encoding="utf-8") as fh:
            json.dump(triple_to_json(triple), fh, indent=2, sort_keys=True)
        doc["emitted"] = args.emit
    _emit(doc, args, config)
    return 0


def _cmd_counterexample(args, config: ToolConfig) -> int:
    seed = _resolve_seed(args, config)
    report = run_pipeline(
        args.blocks,
        config=config,
        trials=args.trials,
        degree=args.degree,
        seed=seed,
    )
    doc = pipeline_report_to_json(report)
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            json.dump(doc, fh, indent=2, sort_keys=True)
    _emit(doc, args, config)
    return 1 if report.verdict in ("Obstructed", "Inconclusive") else 0


def _cmd_selftest(args, config: ToolConfig) -> int:
    from .selftest import format_result, run_all

    results = run_all()
    for result in results:
        print(format_result(result))
    failed = [r.key for r in results if not r.passed]
    total = sum(r.elapsed for r in results)
    if failed:
        print(f"FAILED criteria: {', '.join(failed)} ({total:.1f}s total)")
        return 1
    print(f"All {len(results)} criteria passed ({total:.1f}s total)")
    return 0


def _add_common(sub: argparse.ArgumentParser) -> None:
    sub.add_argument(
        "--config", help="path to a ToolConfig JSON file", default=None
    )
    sub.add_argument(
        "--format",
        choices=("json", "text"),
        default=None,
        help="report rendering (default from config)",
    )
    sub.add_argument(
        "--seed", type=int, default=None, help="master seed override"
    )


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="tetra",
        description="Constructions around dilation failure on the tetrablock.",
    )
    subs = parser.add_subparsers(dest="command", required=True)

    p = subs.add_parser("classify", help="membership of a point in the closed domain")
    p.add_argument("--point", required=True, help="'(a,b,c)' or JSON point")
    _add_common(p)

    p = subs.add_parser("sup", help="sup of |p| over the closed domain")
    p.add_argument("--poly", required=True, help="polynomial JSON file")
    p.add_argument("--samples", type=int, default=None)
    _add_common(p)

    p = subs.add_parser("cf", help="minimal circle sup completing b0 + b1 z")
    p.add_argument("--b0", required=True)
    p.add_argument("--b1", required=True)
    p.add_argument("--degree", type=int, default=8)
    _add_common(p)

    p = subs.add_parser("fundamental", help="extract the fundamental pair")
    p.add_argument("--triple", required=True, help="triple JSON file")
    _add_common(p)

    p = subs.add_parser("falsify", help="random search for a sup-norm violation")
    p.add_argument("--triple", required=True, help="triple JSON file")
    p.add_argument("--trials", type=int, default=None)
    p.add_argument("--degree", type=int, default=3)
    _add_common(p)

    p = subs.add_parser("obstruction", help="dilation obstruction invariants")
    p.add_argument("--triple", required=True, help="triple JSON file")
    p.add_argument("--split", type=int, required=True, help="half dimension")
    _add_common(p)

    p = subs.add_parser("model", help="build a functional model from symbols")
    p.add_argument("--a1", required=True, help="matrix JSON file")
    p.add_argument("--a2", required=True, help="matrix JSON file")
    p.add_argument("--blocks", type=int, required=True)
    p.add_argument("--flavor", choices=("hardy", "l2", "circulant"), default="hardy")
    p.add_argument("--emit", default=None, help="write the triple JSON here")
    _add_common(p)

    p = subs.add_parser("counterexample", help="run the full witness pipeline")
    p.add_argument("--blocks", type=int, default=4)
    p.add_argument("--trials", type=int, default=None)
    p.add_argument("--degree", type=int, default=3)
    p.add_argument("--out", default=None, help="also write the verdict JSON here")
    _add_common(p)

    p = subs.add_parser("selftest", help="run the acceptance suite")
    _add_common(p)

    return parser


_DISPATCH = {
    "classify": _cmd_classify,
    "sup": _cmd_sup,
    "cf": _cmd_cf,
    "fundamental": _cmd_fundamental,
    "falsify": _cmd_falsify,
    "obstruction": _cmd_obstruction,
    "model": _cmd_model,
    "counterexample": _cmd_counterexample,
    "selftest": _cmd_selftest,
}


def main(argv=None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else 2
    try:
        config = (
            ToolConfig.from_json(args.config) if args.config else DEFAULT_CONFIG
        )
        return _DISPATCH[args.command](args, config)
    except TetrablockError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (OSError, ValueError, KeyError, json.JSONDecodeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
