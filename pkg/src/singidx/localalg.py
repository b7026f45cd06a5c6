"""Ideals and finitely presented modules over the local ring at the origin.

All dimensions the indices need are of the form dim_C of a finite-length
module over O = Q[z]_(z) / J.  They are computed from local standard bases:
the dimension is the number of module monomials outside the leading module.

Modules are presented as ``R^rank / <relations>`` with ``R = P / ambient``;
relation columns are kept as tuples of :class:`Polynomial` of length
``rank``.  Maps between them carry a ``target.rank x source.rank`` matrix
stored row-wise.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import cached_property
from typing import List, Optional, Sequence, Tuple

from . import _stdbasis as sb
from .errors import CompositionNonzero, ContextMismatch, ValidationError
from .polyring import GLOBAL, Polynomial, RingContext

INFINITE = math.inf

Column = Tuple[Polynomial, ...]
Matrix = Tuple[Tuple[Polynomial, ...], ...]


def _sign(ctx: RingContext) -> int:
    return -1 if ctx.is_local else 1


def _dim(n: Optional[int]):
    return INFINITE if n is None else n


@dataclass(frozen=True)
class Ideal:
    generators: Tuple[Polynomial, ...]
    ctx: RingContext

    def __post_init__(self):
        gens = tuple(g for g in self.generators if not g.is_zero())
        for g in gens:
            if g.ctx.variables != self.ctx.variables:
                raise ContextMismatch("ideal generator from another ring")
        object.__setattr__(self, "generators", tuple(g.in_context(self.ctx) for g in gens))

    @classmethod
    def of(cls, ctx: RingContext, *gens: Polynomial) -> "Ideal":
        return cls(tuple(gens), ctx)

    def __add__(self, other: "Ideal") -> "Ideal":
        return Ideal(self.generators + other.generators, self.ctx)

    @cached_property
    def _sb(self) -> sb.Basis:
        s = _sign(self.ctx)
        gens = [sb.poly_to_vec(g.as_dict(), 0, s) for g in self.generators]
        return sb.standard_basis(gens, s, product_criterion=True)

    def standard_basis(self) -> Tuple[Polynomial, ...]:
        return tuple(_vec_to_poly(e.vec, self.ctx) for e in self._sb)

    def contains(self, f: Polynomial) -> bool:
        s = _sign(self.ctx)
        return sb.contains(self._sb, sb.poly_to_vec(f.as_dict(), 0, s), s)

    def colength(self):
        return _dim(sb.colength_of(self._sb, 1, self.ctx.nvars))

    def seed_for_rank(self, rank: int) -> sb.Basis:
        """Standard basis of J*P^rank: the ideal's basis copied to every component."""
        return sb.Basis.concat([self._sb.shifted(c) for c in range(rank)])


def _vec_to_poly(vec, ctx: RingContext) -> Polynomial:
    return Polynomial.from_dict(ctx, {e: sb.to_fraction(c) for (_, _, e), c in vec.items()})


def _col_dicts(col: Sequence[Polynomial]):
    return [p.as_dict() for p in col]


def _cols_to_polys(vecs, rank: int, ctx: RingContext, comp_offset: int = 0) -> Tuple[Column, ...]:
    out = []
    for v in vecs:
        col = sb.vec_to_column(v, rank, comp_offset)
        out.append(tuple(Polynomial.from_dict(ctx, d) for d in col))
    return tuple(out)


# -- single-polynomial operations --------------------------------------------

def mora_normal_form(f: Polynomial, G: Sequence[Polynomial], ctx: RingContext) -> Polynomial:
    """Weak normal form of ``f`` with respect to ``G`` (Mora's algorithm).

    In the local ordering the result ``r`` satisfies ``u*f - r`` in <G> for
    a unit ``u``; ``r`` is zero iff ``f`` lies in <G> when ``G`` is a
    standard basis.
    """
    s = _sign(ctx)
    basis = [sb.Elem(sb.poly_to_vec(g.in_context(ctx).as_dict(), 0, s)) for g in G if not g.is_zero()]
    h = sb.nf_mora(sb.poly_to_vec(f.as_dict(), 0, s), basis)
    return ctx.zero() if h is None else _vec_to_poly(h.vec, ctx)


def standard_basis(I: Ideal) -> Tuple[Polynomial, ...]:
    return I.standard_basis()


def colength(I: Ideal):
    """dim_C O/I for a local context, INFINITE if the zero set is not isolated."""
    if not I.ctx.is_local:
        raise ValueError("colength expects a local ring context; use global_colength")
    return I.colength()


def global_colength(I: Ideal):
    """dim_C P/I over the polynomial ring (all zeros, with multiplicity)."""
    ctx = I.ctx if not I.ctx.is_local else I.ctx.with_ordering(GLOBAL)
    return Ideal(I.generators, ctx).colength()


# -- modules -----------------------------------------------------------------

@dataclass(frozen=True)
class FPModule:
    """The module R^rank / <relations> over R = P / ambient."""

    ambient: Ideal
    rank: int
    relations: Tuple[Column, ...] = ()

    def __post_init__(self):
        rels = tuple(tuple(col) for col in self.relations)
        for col in rels:
            if len(col) != self.rank:
                raise ValidationError(f"relation column of length {len(col)} in a rank-{self.rank} module")
        object.__setattr__(self, "relations", rels)

    @property
    def ctx(self) -> RingContext:
        return self.ambient.ctx

    @classmethod
    def free(cls, ambient: Ideal, rank: int) -> "FPModule":
        return cls(ambient, rank, ())

    @cached_property
    def relation_sb(self) -> sb.Basis:
        """Standard basis of relations + ambient*R^rank inside P^rank."""
        s = _sign(self.ctx)
        seed = self.ambient.seed_for_rank(self.rank)
        vecs = [sb.column_to_vec(_col_dicts(col), s) for col in self.relations]
        vecs = [v for v in vecs if v]
        if not vecs:
            return seed
        return sb.standard_basis(vecs, s, seed=seed)

    def dimension(self):
        """dim_C of the module (INFINITE if not of finite length)."""
        return _dim(sb.colength_of(self.relation_sb, self.rank, self.ctx.nvars))

    def is_zero_element(self, col: Sequence[Polynomial]) -> bool:
        s = _sign(self.ctx)
        v = sb.column_to_vec(_col_dicts(col), s)
        return sb.contains(self.relation_sb, v, s)

    def with_relations(self, extra: Sequence[Column]) -> "FPModule":
        return FPModule(self.ambient, self.rank, self.relations + tuple(tuple(c) for c in extra))


def zero_matrix(ctx: RingContext, rows: int, cols: int) -> Matrix:
    z = ctx.zero()
    return tuple(tuple(z for _ in range(cols)) for _ in range(rows))


def identity_matrix(ctx: RingContext, n: int) -> Matrix:
    z, o = ctx.zero(), ctx.one()
    return tuple(tuple(o if i == j else z for j in range(n)) for i in range(n))


def matmul(A: Matrix, B: Matrix, ctx: RingContext, inner: Optional[int] = None) -> Matrix:
    if inner is None:
        inner = len(B)
    rows = len(A)
    cols = len(B[0]) if B else 0
    out = []
    for i in range(rows):
        row = []
        for j in range(cols):
            acc = {}
            for k in range(inner):
                a, b = A[i][k], B[k][j]
                if a.terms and b.terms:
                    for c1, e1 in a.terms:
                        for c2, e2 in b.terms:
                            e = tuple(x + y for x, y in zip(e1, e2))
                            acc[e] = acc.get(e, 0) + c1 * c2
            row.append(Polynomial.from_dict(ctx, acc))
        out.append(tuple(row))
    return tuple(out)


def columns(M: Matrix, ncols: int) -> List[Column]:
    return [tuple(row[j] for row in M) for j in range(ncols)]


@dataclass(frozen=True)
class ModuleMap:
    source: FPModule
    target: FPModule
    matrix: Matrix

    def __post_init__(self):
        m = tuple(tuple(r) for r in self.matrix)
        if len(m) != self.target.rank or any(len(r) != self.source.rank for r in m):
            raise ValidationError(
                f"map matrix must be {self.target.rank}x{self.source.rank}")
        object.__setattr__(self, "matrix", m)

    @classmethod
    def zero(cls, source: FPModule, target: FPModule) -> "ModuleMap":
        return cls(source, target, zero_matrix(source.ctx, target.rank, source.rank))

    def columns(self) -> List[Column]:
        return columns(self.matrix, self.source.rank)

    def is_zero(self) -> bool:
        return all(p.is_zero() for row in self.matrix for p in row)

    def compose(self, first: "ModuleMap") -> "ModuleMap":
        """self o first."""
        return ModuleMap(first.source, self.target,
                         matmul(self.matrix, first.matrix, self.source.ctx, inner=self.source.rank))

    def is_zero_map(self) -> bool:
        """True iff every column is zero in the target module."""
        return all(self.target.is_zero_element(c) for c in self.columns())

    def is_well_defined(self) -> bool:
        """Relations of the source land in the relation module of the target."""
        ctx = self.source.ctx
        for col in self.source.relations:
            img = matmul(self.matrix, tuple((p,) for p in col), ctx, inner=self.source.rank)
            if not self.target.is_zero_element(tuple(r[0] for r in img)):
                return False
        return True


# -- syzygies and subquotients ------------------------------------------------

def syzygies(M: Matrix, ambient: Ideal) -> Tuple[Column, ...]:
    """Generators of the syzygy module of the columns of ``M`` over P/ambient.

    ``M`` is given row-wise; each returned column has one entry per column
    of ``M``.
    """
    ctx = ambient.ctx
    rows = len(M)
    ncols = len(M[0]) if rows else 0
    s = _sign(ctx)
    if ncols == 0:
        return ()
    cols = [sb.column_to_vec(_col_dicts(c), s) for c in columns(M, ncols)]
    res = _modulo_full(cols, rows, ambient.seed_for_rank(rows), s, ctx.nvars)
    return _cols_to_polys([e.vec for e in res], ncols, ctx)


def _modulo_full(cols, target_rank, seed, sign, nvars) -> List[sb.Elem]:
    """Standard basis of {a : sum a_k cols[k] in <seed>}, in components 0..len(cols)-1.

    Elimination: each column is extended by its own unit vector in a block
    of components ranked below the target block (position over term).
    """
    z = (0,) * nvars
    gens = []
    for k, v in enumerate(cols):
        w = dict(v)
        w[(-(target_rank + k), 0, z)] = sb.ONE
        gens.append(w)
    if not gens:
        return []
    G = sb.standard_basis(gens, sign, seed=seed)
    return [sb.Elem(sb.shift_components(g.vec, -target_rank)) for g in G if -g.lt[0] >= target_rank]


def kernel_generators(g: ModuleMap) -> List[sb.Vec]:
    """Vectors of P^source.rank generating ker(g) (modulo source relations)."""
    src, tgt = g.source, g.target
    s = _sign(src.ctx)
    if g.is_zero() or tgt.rank == 0:
        z = (0,) * src.ctx.nvars
        return [{(-k, 0, z): sb.ONE} for k in range(src.rank)]
    cols = [sb.column_to_vec(_col_dicts(c), s) for c in g.columns()]
    return [e.vec for e in _modulo_full(cols, tgt.rank, tgt.relation_sb, s, src.ctx.nvars)]


def kernel(g: ModuleMap) -> Tuple[Column, ...]:
    return _cols_to_polys(kernel_generators(g), g.source.rank, g.source.ctx)


def check_composable(f: ModuleMap, g: ModuleMap) -> None:
    if f.target.rank != g.source.rank:
        raise ValidationError("maps are not composable")
    if not g.compose(f).is_zero_map():
        raise CompositionNonzero("g o f is not zero")


def subquotient_dim(f: ModuleMap, g: ModuleMap, check: bool = True):
    """dim_C ker(g) / im(f) for f: A -> B, g: B -> C with g o f = 0.

    Returns INFINITE when the subquotient is not of finite length, i.e. the
    degeneracy locus is not isolated.
    """
    if check:
        check_composable(f, g)
    B = f.target
    if B.rank == 0:
        return 0
    ctx = B.ctx
    s = _sign(ctx)
    K = kernel_generators(g)
    image_cols = [sb.column_to_vec(_col_dicts(c), s) for c in f.columns()]
    image_cols = [v for v in image_cols if v]
    if image_cols:
        im_sb = sb.standard_basis(image_cols, s, seed=B.relation_sb)
    else:
        im_sb = B.relation_sb
    rel = _modulo_full(K, B.rank, im_sb, s, ctx.nvars)
    return _dim(sb.colength_of(rel, len(K), ctx.nvars))


def cokernel_dim(f: ModuleMap):
    """dim_C of target / im(f)."""
    return f.target.with_relations(f.columns()).dimension()
