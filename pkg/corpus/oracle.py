"""Regenerate the ``*.expected.json`` sidecars from independent oracles.

Local colengths come from the jet-truncation oracle (plain linear algebra,
no standard bases).  Global colengths of the conservation cases are
products of degrees: every curated deformed ideal is generated by
univariate polynomials in distinct variables.  Values with no independent
oracle are frozen engine output and are labelled as such.

Run from the repository root:  python corpus/oracle.py
"""

from __future__ import annotations

import json
import random
import sys
from fractions import Fraction
from pathlib import Path

from singidx.cli import load_problem, parse_forms
from singidx.diffforms import CollectionSpec, KForm, minors
from singidx.jets import jet_colength
from singidx.polyring import GLOBAL

HERE = Path(__file__).resolve().parent

# Frozen engine values: (1,1) collections of differentials of linear
# functions on the A_k surfaces.  No independent oracle exists for the
# full cohomology of a tensor product of non-free modules; the degree-0
# homology of the a1_pair entry is checked by the jet oracle in the tests.
ENGINE_INVARIANTS = {"a1_dz": {"1,1": 5}, "a2_dz": {"1,1": 9}, "a3_dz": {"1,1": 13}}
ENGINE_HOM = {"a1_pair": 5}


def gsv_generators(X, c):
    gens = list(X.ideal_gens)
    for block in c.forms:
        rows = list(X.jacobian_rows()) + [w.coefficients() for w in block]
        gens += [m for m in minors(rows, len(rows), X.ctx) if not m.is_zero()]
    return gens


def oracle_gsv(X, c):
    return jet_colength(gsv_generators(X, c), X.ctx)


def oracle_torsion(X):
    rows = X.jacobian_rows()
    gens = list(X.ideal_gens) + [m for m in minors(rows, len(rows), X.ctx) if not m.is_zero()]
    return jet_colength(gens, X.ctx)


def generic_dl(X, partition, salt="oracle"):
    rng = random.Random(salt)
    n, ctx = X.dim_n, X.ctx
    blocks = []
    for k in partition:
        blocks.append(tuple(KForm.one_form(ctx, [ctx.const(rng.randint(-9, 9)) for _ in range(X.N)])
                            for _ in range(n - k + 1)))
    return CollectionSpec(tuple(partition), tuple(blocks))


def univariate_global_colength(gens):
    """dim P/I for generators that are univariate in pairwise distinct variables."""
    used, total = set(), 1
    for g in gens:
        support = {i for _, e in g.terms for i, a in enumerate(e) if a}
        if len(support) != 1 or support & used:
            raise ValueError(f"{g} is not univariate in a fresh variable")
        used |= support
        total *= g.degree()
    if len(used) != gens[0].ctx.nvars:
        raise ValueError("some variable is unconstrained")
    return total


def expected_for(name, raw):
    p = load_problem(raw)
    X, c = p.germ, p.collection
    out = {"provenance": {}}
    if name == "cusp_nonisolated":
        out["gsv_exit"] = 2
        out["offending_blocks"] = [1]
        out["provenance"]["gsv_exit"] = "non-isolated by construction: the z-axis is singular"
        return out
    if c is not None and X.is_ici:
        out["gsv"] = oracle_gsv(X, c)
        out["provenance"]["gsv"] = "jet oracle"
        smooth = not X.ideal_gens
        if len(c.partition) == 1 or smooth:
            out["hom"] = out["gsv"]
            out["provenance"]["hom"] = "equal to GSV (single block, or free modules on a smooth germ)"
    if name in ENGINE_HOM:
        out["hom"] = ENGINE_HOM[name]
        out["provenance"]["hom"] = "frozen engine output"
    if X.is_ici and X.ideal_gens:
        t = oracle_torsion(X)
        out["torsion"] = [t, t]
        out["provenance"]["torsion"] = "jet oracle for dim T; dim T' = dim T"
    if c is not None and len(c.partition) == 1 and name.startswith(("a", "icis")):
        n = X.dim_n
        out["invariant"] = {str(n): oracle_gsv(X, generic_dl(X, (n,)))}
        out["provenance"]["invariant"] = "jet oracle: GSV colength of a generic dl"
    if name in ENGINE_INVARIANTS:
        out["invariant"].update(ENGINE_INVARIANTS[name])
        out["provenance"]["invariant"] += "; partition (1,1) frozen engine output"
    if name == "smooth_plane":
        out["invariant"] = {"2": oracle_gsv(X, generic_dl(X, (2,))),
                            "1,1": oracle_gsv(X, generic_dl(X, (1, 1)))}
        out["provenance"]["invariant"] = "jet oracle: generic dl never degenerates"
    if "perturbation" in p.options:
        pert = CollectionSpec(c.partition, tuple(parse_forms(p.ctx, p.options["perturbation"])))
        t = Fraction(str(p.options["t"]))
        moved = []
        for b, pb in zip(c.forms, pert.forms):
            moved.append(tuple(w + KForm(w.ctx, 1, {I: q.scale(t) for I, q in v.components.items()})
                               for w, v in zip(b, pb)))
        gctx = X.ctx.with_ordering(GLOBAL)
        gens = [g.in_context(gctx) for g in gsv_generators(X, CollectionSpec(c.partition, tuple(moved)))]
        out["conservation"] = {"local": out["gsv"], "global": univariate_global_colength(gens)}
        out["provenance"]["conservation"] = "jet oracle (local); product of univariate degrees (global)"
    if "matrix" in p.options:
        out["en_profile_tail_zero_from"] = 2
        out["provenance"]["en_profile_tail_zero_from"] = "expected-codimension minors: higher cohomology vanishes"
        rows = [[p.ctx.parse(e) for e in r] for r in p.options["matrix"]]
        gens = list(X.ideal_gens) + [m for m in minors(rows, len(rows), X.ctx) if not m.is_zero()]
        out["en_h0"] = jet_colength(gens, X.ctx)
        out["provenance"]["en_h0"] = "jet oracle: colength of the maximal-minor ideal"
    return out


def main(argv=None):
    names = sorted(q.stem for q in HERE.glob("*.json") if not q.name.endswith(".expected.json"))
    for name in names:
        raw = json.loads((HERE / f"{name}.json").read_text())
        exp = expected_for(name, raw)
        (HERE / f"{name}.expected.json").write_text(json.dumps(exp, indent=2, sort_keys=True) + "\n")
        print(name, {k: v for k, v in exp.items() if k != "provenance"}, file=sys.stderr)


if __name__ == "__main__":
    main()
