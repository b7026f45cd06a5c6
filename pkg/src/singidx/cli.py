"""Batch front-end: ``singidx <command> -i problem.json``.

Reads a JSON problem file, dispatches to :mod:`singidx.indices`, writes a
JSON report (sorted keys) to stdout or ``--json-out`` and a one-line
summary to stderr.  Exit codes: 0 success, 2 non-isolated / not an ICIS,
3 parse or validation failure, 4 internal disagreement.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from dataclasses import dataclass
from fractions import Fraction
from typing import Any, Dict, List, Optional, Sequence, Tuple

from . import __version__
from . import indices as ix
from .diffforms import CollectionSpec, GermSpec, KForm
from .errors import (CompositionNonzero, Disagreement, NonIsolated, NotICIS, ParseError,
                     SamplingExhausted, ValidationError)
from .homalg import (build_collection_complex, cohomology_dims, eagon_northcott,
                     euler_characteristic, verify_d_squared)
from .localalg import INFINITE, colength
from .polyring import LOCAL, RingContext

COMMANDS = ("gsv", "hom", "invariant", "torsion", "en", "conserve", "check")

EXIT_OK, EXIT_NONISOLATED, EXIT_INPUT, EXIT_DISAGREE = 0, 2, 3, 4

EN_NOTE = ("Eagon-Northcott differential uses the standard formula: the l-th removed "
           "basis vector is paired with row t of the matrix, where u_t is the variable "
           "being differentiated")
TENSOR_NOTE = ("collection of several blocks on a singular germ: the complex is a tensor "
               "product of non-free modules and its Euler characteristic need not equal "
               "the GSV index")


@dataclass
class Problem:
    ctx: RingContext
    germ: GermSpec
    collection: Optional[CollectionSpec]
    partition: Optional[tuple]
    options: Dict[str, Any]


def _require(raw: Dict[str, Any], key: str, kind):
    if key not in raw:
        raise ValidationError(f"problem file is missing '{key}'")
    value = raw[key]
    if not isinstance(value, kind):
        raise ValidationError(f"'{key}' has the wrong type")
    return value


def parse_forms(ctx: RingContext, blocks: Sequence, label: str = "forms") -> List[tuple]:
    if not isinstance(blocks, list):
        raise ValidationError(f"'{label}' must be a list of blocks")
    out = []
    for i, block in enumerate(blocks, 1):
        if not isinstance(block, list):
            raise ValidationError(f"{label} block {i} must be a list of 1-forms")
        forms = []
        for j, coeffs in enumerate(block, 1):
            if not isinstance(coeffs, list) or len(coeffs) != ctx.nvars:
                raise ValidationError(f"{label}[{i}][{j}] needs {ctx.nvars} coefficient strings")
            forms.append(KForm.one_form(ctx, [ctx.parse(str(c)) for c in coeffs]))
        out.append(tuple(forms))
    return out


def load_problem(raw: Dict[str, Any]) -> Problem:
    if not isinstance(raw, dict):
        raise ValidationError("problem file must hold a JSON object")
    variables = _require(raw, "variables", list)
    if not variables or not all(isinstance(v, str) for v in variables):
        raise ValidationError("'variables' must be a non-empty list of names")
    ctx = RingContext(tuple(variables), LOCAL)
    ideal = [ctx.parse(str(g)) for g in raw.get("ideal", [])]
    n = _require(raw, "dimension", int)
    germ = GermSpec(ctx, tuple(ideal), n)
    partition = raw.get("partition")
    if partition is not None:
        if not isinstance(partition, list) or not all(isinstance(k, int) for k in partition):
            raise ValidationError("'partition' must be a list of integers")
        partition = tuple(partition)
    collection = None
    if raw.get("forms") is not None:
        if partition is None:
            raise ValidationError("'forms' given without 'partition'")
        collection = CollectionSpec(partition, tuple(parse_forms(ctx, raw["forms"])))
        collection.check_against(germ)
    options = raw.get("options") or {}
    if not isinstance(options, dict):
        raise ValidationError("'options' must be an object")
    return Problem(ctx, germ, collection, partition, options)


def _need_collection(p: Problem) -> CollectionSpec:
    if p.collection is None:
        raise ValidationError("this command needs 'partition' and 'forms'")
    return p.collection


def _jsonable(value):
    if isinstance(value, float) and value == INFINITE:
        return "INFINITE"
    if isinstance(value, Fraction):
        return str(value)
    if isinstance(value, (list, tuple)):
        return [_jsonable(v) for v in value]
    if isinstance(value, dict):
        return {str(k): _jsonable(v) for k, v in value.items()}
    return value


def _index_entry(r: ix.IndexReport) -> Dict[str, Any]:
    return {"value": r.value, "method": r.method, "witnesses": r.witnesses}


# -- commands --------------------------------------------------------------------

def cmd_gsv(p: Problem, args) -> Dict[str, Any]:
    c = _need_collection(p)
    r = ix.gsv_index_minors(p.germ, c)
    out = {"result": {"value": r.value, "method": r.method}, "details": {r.method: _index_entry(r)}}
    if args.cross_check:
        f = ix.gsv_index_forms(p.germ, c)
        out["details"][f.method] = _index_entry(f)
        out["result"]["values"] = {"gsv-minors": r.value, "gsv-forms": f.value}
        out["result"]["equal"] = r.value == f.value
        if r.value != f.value:
            raise Disagreement(f"GSV routes disagree: minors {r.value}, forms {f.value}", out)
    return out


def cmd_hom(p: Problem, args) -> Dict[str, Any]:
    c = _need_collection(p)
    r = ix.hom_index(p.germ, c)
    out = {"result": {"value": r.value, "method": r.method},
           "profiles": {"collection_complex": list(r.cohomology_profile)},
           "details": {r.method: _index_entry(r)}}
    warnings = []
    if len(c.partition) > 1 and p.germ.ideal_gens:
        warnings.append(TENSOR_NOTE)
    if args.cross_check:
        g = ix.gsv_index_minors(p.germ, c)
        out["details"][g.method] = _index_entry(g)
        out["result"]["values"] = {"hom": r.value, "gsv": g.value}
        out["result"]["equal"] = r.value == g.value
        if r.value != g.value:
            out["warnings"] = warnings
            raise Disagreement(f"homological index {r.value} differs from GSV index {g.value}", out)
    out["warnings"] = warnings
    return out


def _option(args_value, options: Dict[str, Any], key: str, default):
    return args_value if args_value is not None else options.get(key, default)


def cmd_invariant(p: Problem, args) -> Dict[str, Any]:
    if p.partition is None:
        raise ValidationError("'invariant' needs a 'partition'")
    samples = int(_option(args.samples, p.options, "samples", 5))
    seed = int(_option(args.seed, p.options, "seed", 0))
    if samples < 1:
        raise ValidationError("--samples must be positive")
    r = ix.singularity_invariant(p.germ, p.partition, samples, seed)
    return {"result": {"value": r.invariant, "values": r.values, "samples": r.samples,
                       "seed": r.seed, "partition": list(r.partition), "agree": r.agree},
            "note": r.note}


def cmd_torsion(p: Problem, args) -> Dict[str, Any]:
    profile = ix.torsion_profile(p.germ)
    t, t2 = ix.torsion_dims(p.germ)
    return {"result": {"T": t, "T_prime": t2, "equal": t == t2},
            "profiles": {"eagon_northcott_df": list(profile)},
            "warnings": [EN_NOTE]}


def cmd_en(p: Problem, args) -> Dict[str, Any]:
    rows = p.options.get("matrix")
    if not isinstance(rows, list) or not rows or not all(isinstance(r, list) for r in rows):
        raise ValidationError("'en' needs options.matrix as a non-empty list of rows")
    width = len(rows[0])
    if any(len(r) != width for r in rows):
        raise ValidationError("options.matrix rows have different lengths")
    M = tuple(tuple(p.ctx.parse(str(e)) for e in row) for row in rows)
    E = eagon_northcott(M, p.germ.ideal, ncols=width)
    ok = verify_d_squared(E)
    if not ok:
        raise Disagreement("Eagon-Northcott differentials do not square to zero")
    dims = cohomology_dims(E)
    return {"result": {"ranks": list(E.ranks()), "d_squared_zero": ok,
                       "euler_characteristic": euler_characteristic(E, dims)},
            "profiles": {"eagon_northcott": list(dims)},
            "warnings": [EN_NOTE]}


def cmd_conserve(p: Problem, args) -> Dict[str, Any]:
    c = _need_collection(p)
    raw = p.options.get("perturbation")
    if raw is None:
        raise ValidationError("'conserve' needs options.perturbation")
    pert = CollectionSpec(c.partition, tuple(parse_forms(p.ctx, raw, "perturbation")))
    t = _option(args.t, p.options, "t", None)
    if t is None:
        raise ValidationError("'conserve' needs --t or options.t")
    try:
        t = Fraction(str(t))
    except (ValueError, ZeroDivisionError) as exc:
        raise ValidationError(f"bad rational t: {t}") from exc
    r = ix.conservation_probe(p.germ, c, pert, t)
    return {"result": {"local": r.local, "global": r.global_, "difference": r.difference,
                       "t": str(r.t), "equal": r.difference == 0}}


def cmd_check(p: Problem, args) -> Dict[str, Any]:
    X = p.germ
    checks: Dict[str, bool] = {}
    diagnostics: Dict[str, Any] = {"is_ici": X.is_ici}
    if p.collection is not None:
        c = p.collection
        for i, (k, block) in enumerate(zip(c.partition, c.forms), 1):
            checks[f"collection_block_{i}"] = verify_d_squared(build_collection_complex(X, k, block))
        checks["collection_complex"] = verify_d_squared(ix.collection_complex(X, c))
        if X.is_ici:
            checks["ctilde_complex"] = verify_d_squared(ix.ctilde_complex(X, c))
            bad = ix.offending_blocks(X, c)
            diagnostics["offending_blocks"] = bad
            diagnostics["gsv_colength"] = colength(ix.gsv_ideal(X, c))
    if X.is_ici and X.ideal_gens:
        checks["eagon_northcott_df"] = verify_d_squared(
            eagon_northcott(X.jacobian_rows(), X.ideal, ncols=X.N))
    out = {"result": {"d_squared_zero": checks, "all_pass": all(checks.values())},
           "diagnostics": diagnostics}
    if not all(checks.values()):
        failed = sorted(k for k, v in checks.items() if not v)
        raise Disagreement(f"d^2 != 0 for {failed}", out)
    if diagnostics.get("offending_blocks") or diagnostics.get("gsv_colength") == INFINITE:
        raise NonIsolated("special point is not isolated",
                          diagnostics.get("offending_blocks") or (), out)
    return out


HANDLERS = {"gsv": cmd_gsv, "hom": cmd_hom, "invariant": cmd_invariant, "torsion": cmd_torsion,
            "en": cmd_en, "conserve": cmd_conserve, "check": cmd_check}


# -- driver ----------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="singidx", description="GSV and homological indices of 1-forms")
    ap.add_argument("command", choices=COMMANDS)
    ap.add_argument("-i", "--input", required=True, help="JSON problem file")
    ap.add_argument("--cross-check", action="store_true", help="also run the independent route")
    ap.add_argument("--samples", type=int, default=None)
    ap.add_argument("--seed", type=int, default=None)
    ap.add_argument("--t", default=None, help="deformation parameter (rational, e.g. -1/4)")
    ap.add_argument("--json-out", default=None, help="write the report here instead of stdout")
    return ap


def execute(command: str, raw: Dict[str, Any], args) -> Tuple[int, Dict[str, Any]]:
    """Run one command on a parsed JSON object; returns (exit code, report)."""
    report: Dict[str, Any] = {"command": command, "engine_version": __version__, "warnings": []}
    try:
        problem = load_problem(raw)
        body = HANDLERS[command](problem, args)
        code = EXIT_OK
    except (NonIsolated, NotICIS, SamplingExhausted) as exc:
        body = dict(getattr(exc, "report", None) or {})
        body["error"] = _error(exc)
        code = EXIT_NONISOLATED
    except (ParseError, ValidationError, ValueError) as exc:
        body, code = {"error": _error(exc)}, EXIT_INPUT
    except (Disagreement, CompositionNonzero) as exc:
        partial = exc.values if isinstance(getattr(exc, "values", None), dict) else {}
        body = dict(partial)
        body["error"] = _error(exc)
        code = EXIT_DISAGREE
    warnings = body.pop("warnings", [])
    report.update(body)
    report["warnings"] = warnings
    report["status"] = "ok" if code == EXIT_OK else "error"
    return code, report


def _error(exc: Exception) -> Dict[str, Any]:
    err = {"type": type(exc).__name__, "message": str(exc)}
    if isinstance(exc, NonIsolated) and exc.blocks:
        err["blocks"] = list(exc.blocks)
    if isinstance(exc, ParseError):
        err["position"] = exc.position
    return err


def render(report: Dict[str, Any]) -> str:
    return json.dumps(_jsonable(report), sort_keys=True, indent=2) + "\n"


def summary(report: Dict[str, Any]) -> str:
    cmd = report["command"]
    if report["status"] != "ok":
        err = report["error"]
        return f"singidx {cmd}: {err['type']}: {err['message']}"
    result = report.get("result", {})
    if "value" in result:
        return f"singidx {cmd}: value {_jsonable(result['value'])}"
    return f"singidx {cmd}: " + ", ".join(f"{k}={_jsonable(v)}" for k, v in sorted(result.items()))


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        with open(args.input, encoding="utf-8") as fh:
            raw = json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        code, report = EXIT_INPUT, {"command": args.command, "engine_version": __version__,
                                    "warnings": [], "status": "error",
                                    "error": {"type": type(exc).__name__, "message": str(exc)}}
    else:
        start = time.perf_counter()
        code, report = execute(args.command, raw, args)
        report["timing"] = {"seconds": round(time.perf_counter() - start, 6)}
    report["input"] = args.input
    text = render(report)
    if args.json_out:
        with open(args.json_out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    print(summary(report), file=sys.stderr)
    return code


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
