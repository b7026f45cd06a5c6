"""GSV and homological indices of collections of 1-forms, and related invariants."""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple

from .diffforms import (CollectionSpec, GermSpec, KForm, basis, minors, omega_presentation,
                        wedge, wedge_matrix)
from .errors import Disagreement, NonIsolated, NotICIS, SamplingExhausted, ValidationError
from .homalg import (ChainComplex, build_collection_complex, cohomology_dims, eagon_northcott,
                     euler_characteristic, tensor_all)
from .localalg import INFINITE, Ideal, colength, columns, global_colength
from .polyring import GLOBAL, Polynomial

GSV_MINORS = "gsv-minors"
GSV_FORMS = "gsv-forms"
HOMOLOGICAL = "homological"

COEFF_RANGE = 9
MAX_RETRIES = 20


@dataclass
class IndexReport:
    value: int
    method: str
    cohomology_profile: Optional[Tuple[int, ...]] = None
    witnesses: Dict[str, object] = field(default_factory=dict)

    def __post_init__(self):
        if self.cohomology_profile is not None:
            chi = sum((-1) ** t * d for t, d in enumerate(self.cohomology_profile))
            if chi != self.value:
                raise Disagreement(f"value {self.value} does not match profile {self.cohomology_profile}")


@dataclass
class InvariantReport:
    partition: Tuple[int, ...]
    samples: int
    values: List[int]
    invariant: Optional[int]
    seed: int = 0
    agree: bool = True
    note: str = ("homological index of generic collections (differentials of random linear "
                 "functions); the Chern obstruction vanishes for such collections and is not computed")


@dataclass
class ConservationReport:
    local: object
    global_: object
    t: Fraction

    @property
    def difference(self):
        if self.local == INFINITE or self.global_ == INFINITE:
            return None
        return self.global_ - self.local


def _require_ici(X: GermSpec) -> None:
    if not X.is_ici:
        raise NotICIS(f"{len(X.ideal_gens)} equations do not cut out a complete intersection "
                      f"of dimension {X.dim_n} in C^{X.N}")


def block_matrix(X: GermSpec, forms: Sequence[KForm]) -> Tuple[Tuple[Polynomial, ...], ...]:
    """Rows: coefficient vectors of df_1..df_{N-n}, then of the block's forms."""
    rows = list(X.jacobian_rows())
    rows += [w.coefficients() for w in forms]
    return tuple(tuple(r) for r in rows)


def block_minor_ideal(X: GermSpec, k: int, forms: Sequence[KForm]) -> List[Polynomial]:
    """Maximal minors of the N x (N - k + 1) matrix (df_1, ..., df_{N-n}, w_1, ..., w_m)."""
    M = block_matrix(X, forms)
    return [p for p in minors(M, len(M), X.ctx) if not p.is_zero()] if len(M) else [X.ctx.one()]


def _generic_linear_forms(X: GermSpec, count: int, salt: str) -> List[Polynomial]:
    rng = random.Random(f"hyperplanes:{salt}")
    out = []
    for _ in range(count):
        p = X.ctx.zero()
        for v in range(X.N):
            p = p + X.ctx.var(v).scale(rng.randint(-COEFF_RANGE, COEFF_RANGE))
        out.append(p)
    return out


def offending_blocks(X: GermSpec, c: CollectionSpec) -> List[int]:
    """1-based blocks whose degeneracy locus exceeds its expected dimension n - k_i."""
    bad = []
    for i, (k, block) in enumerate(zip(c.partition, c.forms), 1):
        cut = _generic_linear_forms(X, X.dim_n - k, f"{i}")
        gens = list(X.ideal_gens) + block_minor_ideal(X, k, block) + cut
        if colength(Ideal(tuple(gens), X.ctx)) == INFINITE:
            bad.append(i)
    return bad


def _non_isolated(X: GermSpec, c: CollectionSpec, what: str) -> NonIsolated:
    blocks = offending_blocks(X, c)
    where = f"; degenerate block(s) {blocks}" if blocks else ""
    return NonIsolated(f"{what} is infinite: the special point is not isolated{where}",
                       blocks or range(1, len(c.partition) + 1))


def gsv_ideal(X: GermSpec, c: CollectionSpec) -> Ideal:
    gens = list(X.ideal_gens)
    for k, block in zip(c.partition, c.forms):
        gens += block_minor_ideal(X, k, block)
    return Ideal(tuple(gens), X.ctx)


def gsv_index_minors(X: GermSpec, c: CollectionSpec) -> IndexReport:
    """Colength of the ideal of the f_r and the maximal minors of every block matrix."""
    _require_ici(X)
    c.check_against(X)
    I = gsv_ideal(X, c)
    value = colength(I)
    if value == INFINITE:
        raise _non_isolated(X, c, "the GSV ideal colength")
    return IndexReport(value, GSV_MINORS, None,
                       {"ideal_generators": len(I.generators),
                        "standard_basis_size": len(I.standard_basis())})


def gsv_quotient_module(X: GermSpec, c: CollectionSpec):
    """Omega^n_X modulo sum_i (w^(i)_1 ^ ... ^ w^(i)_m) ^ Omega^{k_i - 1}_X."""
    ctx, N, n = X.ctx, X.N, X.dim_n
    base = omega_presentation(X, n)
    extra = []
    for k, block in zip(c.partition, c.forms):
        top = wedge(list(block))
        W = wedge_matrix(ctx, top, k - 1)
        extra += columns(W, len(basis(N, k - 1)))
    return base.with_relations(extra)


def gsv_index_forms(X: GermSpec, c: CollectionSpec) -> IndexReport:
    _require_ici(X)
    c.check_against(X)
    Q = gsv_quotient_module(X, c)
    value = Q.dimension()
    if value == INFINITE:
        raise _non_isolated(X, c, "the quotient of Omega^n")
    return IndexReport(value, GSV_FORMS, None,
                       {"omega_n_rank": Q.rank, "relations": len(Q.relations)})


def collection_complex(X: GermSpec, c: CollectionSpec) -> ChainComplex:
    """C = ⊗_i C^(i) over O_X."""
    c.check_against(X)
    return tensor_all([build_collection_complex(X, k, block)
                       for k, block in zip(c.partition, c.forms)])


def hom_index(X: GermSpec, c: CollectionSpec) -> IndexReport:
    """Euler characteristic sum_t (-1)^t dim H_t of the collection complex."""
    C = collection_complex(X, c)
    dims = cohomology_dims(C)
    if any(d == INFINITE for d in dims):
        raise NonIsolated(f"cohomology profile {_show(dims)} is not finite: "
                          "the special point is not isolated",
                          offending_blocks(X, c) if X.is_ici else range(1, len(c.partition) + 1))
    value = euler_characteristic(C, dims)
    witnesses = {"ranks": list(C.ranks())}
    if len(c.partition) == 1:
        n = X.dim_n
        by_form_degree = [dims[n - i] for i in range(n + 1)]
        alt = sum((-1) ** (n - i) * h for i, h in enumerate(by_form_degree))
        if alt != value:
            raise Disagreement(f"single-form index conventions disagree: {alt} vs {value}")
        witnesses["form_degree_profile"] = by_form_degree
        witnesses["single_form_value"] = alt
    return IndexReport(value, HOMOLOGICAL, tuple(dims), witnesses)


def ctilde_complex(X: GermSpec, c: CollectionSpec) -> ChainComplex:
    """Tensor over the blocks of the Eagon-Northcott complexes of (df, w^(i))."""
    _require_ici(X)
    c.check_against(X)
    parts = [eagon_northcott(block_matrix(X, block), X.ideal, ncols=X.N) for block in c.forms]
    return tensor_all(parts)


def torsion_profile(X: GermSpec) -> Tuple:
    _require_ici(X)
    E = eagon_northcott(X.jacobian_rows(), X.ideal, ncols=X.N)
    return cohomology_dims(E)


def torsion_dims(X: GermSpec) -> Tuple[int, int]:
    """(dim T, dim T') = (dim H_0, dim H_1) of the Eagon-Northcott complex of the df_r."""
    dims = torsion_profile(X)
    if any(d == INFINITE for d in dims):
        raise NonIsolated(f"Eagon-Northcott profile {_show(dims)} is not finite: "
                          "the germ has a non-isolated singularity")
    if any(d != 0 for d in dims[2:]):
        raise Disagreement(f"higher cohomology of E(f) should vanish, got {list(dims)}", list(dims))
    return dims[0], dims[1]


# -- sampling -----------------------------------------------------------------

def generic_collection(X: GermSpec, partition: Sequence[int], rng: random.Random) -> CollectionSpec:
    """Differentials of random linear functions with integer coefficients in [-9, 9]."""
    ctx, n = X.ctx, X.dim_n
    blocks = []
    for k in partition:
        block = []
        for _ in range(n - k + 1):
            coeffs = [ctx.const(rng.randint(-COEFF_RANGE, COEFF_RANGE)) for _ in range(X.N)]
            block.append(KForm.one_form(ctx, coeffs))
        blocks.append(tuple(block))
    return CollectionSpec(tuple(partition), tuple(blocks))


def _linear_block_collection(X: GermSpec, partition: Sequence[int], rng: random.Random) -> CollectionSpec:
    ctx, n = X.ctx, X.dim_n
    blocks = []
    for k in partition:
        block = []
        for _ in range(n - k):
            block.append(KForm.one_form(ctx, [ctx.const(rng.randint(-COEFF_RANGE, COEFF_RANGE))
                                              for _ in range(X.N)]))
        lin = []
        for _ in range(X.N):
            p = ctx.zero()
            for v in range(X.N):
                p = p + ctx.var(v).scale(rng.randint(-COEFF_RANGE, COEFF_RANGE))
            lin.append(p)
        block.append(KForm.one_form(ctx, lin))
        blocks.append(tuple(block))
    return CollectionSpec(tuple(partition), tuple(blocks))


def nondegenerate_collection(X: GermSpec, partition: Sequence[int], rng: random.Random) -> CollectionSpec:
    """Per block: n - k constant forms plus one form with linear coefficients.

    Each block then degenerates along a linear subspace of codimension k.
    Draws are repeated until the special point at the origin is
    nondegenerate, i.e. the GSV ideal is the maximal ideal (possible only
    on a smooth germ).
    """
    for _ in range(MAX_RETRIES):
        c = _linear_block_collection(X, partition, rng)
        if colength(gsv_ideal(X, c)) == 1:
            return c
    raise SamplingExhausted(f"no nondegenerate collection after {MAX_RETRIES} attempts")


def _isolated(X: GermSpec, c: CollectionSpec) -> bool:
    if X.is_ici:
        return colength(gsv_ideal(X, c)) != INFINITE
    return True


def singularity_invariant(X: GermSpec, partition: Sequence[int], samples: int = 5,
                          seed: int = 0) -> InvariantReport:
    """Homological index of generic collections, sampled ``samples`` times.

    Sample ``i`` draws from a generator seeded by (seed, i, attempt), so the
    result is reproducible and independent of evaluation order.
    """
    partition = tuple(int(k) for k in partition)
    if sum(partition) != X.dim_n:
        raise ValidationError(f"partition {partition} does not sum to dimension {X.dim_n}")
    values = []
    for i in range(samples):
        for attempt in range(MAX_RETRIES):
            rng = random.Random(f"{seed}:{i}:{attempt}")
            c = generic_collection(X, partition, rng)
            if not _isolated(X, c):
                continue
            try:
                values.append(hom_index(X, c).value)
            except NonIsolated:
                continue
            break
        else:
            raise SamplingExhausted(f"sample {i}: no collection with an isolated special point "
                                    f"after {MAX_RETRIES} attempts")
    agree = len(set(values)) <= 1
    report = InvariantReport(partition, samples, values, values[0] if agree and values else None,
                             seed, agree)
    if not agree:
        raise Disagreement(f"generic collections gave different indices {values}", values)
    return report


# -- conservation of number ----------------------------------------------------

def perturb(c: CollectionSpec, perturbation: CollectionSpec, t) -> CollectionSpec:
    if perturbation.partition != c.partition:
        raise ValidationError("perturbation must have the same partition as the collection")
    t = Fraction(t)
    blocks = []
    for b, pb in zip(c.forms, perturbation.forms):
        blocks.append(tuple(w + KForm(w.ctx, 1, {I: p.scale(t) for I, p in v.components.items()})
                            for w, v in zip(b, pb)))
    return CollectionSpec(c.partition, tuple(blocks))


def conservation_probe(X: GermSpec, c: CollectionSpec, perturbation: CollectionSpec, t) -> ConservationReport:
    """Local GSV colength at 0 versus the global colength of the deformed ideal.

    The global count includes every zero of the deformed system, so it is
    only a faithful split-point count on curated inputs whose deformed
    zeros all come from the origin.
    """
    local = gsv_index_minors(X, c).value
    moved = perturb(c, perturbation, t)
    I = gsv_ideal(X, moved)
    glob = global_colength(Ideal(I.generators, X.ctx.with_ordering(GLOBAL)))
    if glob == INFINITE:
        raise NonIsolated("the deformed degeneracy locus is positive-dimensional")
    return ConservationReport(local, glob, Fraction(t))


def _show(dims) -> str:
    return "(" + ", ".join("INFINITE" if d == INFINITE else str(d) for d in dims) + ")"
