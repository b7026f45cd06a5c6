"""Differential forms at the origin of C^N and presentations of Omega^j_X.

A j-form is stored on the basis dz_I with I a strictly increasing index
tuple.  Every sign is the sign of the permutation sorting the
concatenated index tuples.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass, field
from itertools import combinations
from typing import Dict, List, Mapping, Sequence, Tuple

from .errors import ValidationError
from .localalg import Column, FPModule, Ideal, Matrix
from .polyring import Polynomial, RingContext

Index = Tuple[int, ...]


class DegreeOverflowWarning(UserWarning):
    """A wedge product exceeded the top degree and was clamped to zero."""


def basis(N: int, j: int) -> List[Index]:
    """Increasing index tuples of size j, in lexicographic order."""
    return list(combinations(range(N), j))


def merge_sign(I: Index, J: Index) -> Tuple[int, Index]:
    """Sign and sorted union of dz_I ^ dz_J (sign 0 if they overlap)."""
    if set(I) & set(J):
        return 0, ()
    inv = sum(1 for a in I for b in J if a > b)
    return (-1 if inv % 2 else 1), tuple(sorted(I + J))


@dataclass(frozen=True)
class KForm:
    ctx: RingContext
    degree: int
    components: Mapping[Index, Polynomial] = field(default_factory=dict)

    def __post_init__(self):
        N = self.ctx.nvars
        if not 0 <= self.degree <= N:
            raise ValidationError(f"form degree {self.degree} outside 0..{N}")
        comps = {}
        for I, p in self.components.items():
            I = tuple(I)
            if len(I) != self.degree or list(I) != sorted(set(I)) or (I and I[-1] >= N):
                raise ValidationError(f"bad index tuple {I} for a {self.degree}-form")
            if not p.is_zero():
                comps[I] = p
        object.__setattr__(self, "components", dict(sorted(comps.items())))

    @classmethod
    def one_form(cls, ctx: RingContext, coeffs: Sequence[Polynomial]) -> "KForm":
        if len(coeffs) != ctx.nvars:
            raise ValidationError(f"1-form needs {ctx.nvars} coefficients, got {len(coeffs)}")
        return cls(ctx, 1, {(i,): c for i, c in enumerate(coeffs)})

    @classmethod
    def function(cls, f: Polynomial) -> "KForm":
        return cls(f.ctx, 0, {(): f})

    @classmethod
    def basis_form(cls, ctx: RingContext, I: Index) -> "KForm":
        return cls(ctx, len(I), {tuple(I): ctx.one()})

    def coefficient(self, I: Index) -> Polynomial:
        return self.components.get(tuple(I), self.ctx.zero())

    def coefficients(self) -> Tuple[Polynomial, ...]:
        """Coefficients on the full basis of this degree."""
        return tuple(self.coefficient(I) for I in basis(self.ctx.nvars, self.degree))

    def is_zero(self) -> bool:
        return not self.components

    def __add__(self, other: "KForm") -> "KForm":
        if other.degree != self.degree:
            raise ValidationError("adding forms of different degree")
        comps = dict(self.components)
        for I, p in other.components.items():
            comps[I] = comps[I] + p if I in comps else p
        return KForm(self.ctx, self.degree, comps)

    def scale(self, p: Polynomial) -> "KForm":
        return KForm(self.ctx, self.degree, {I: q * p for I, q in self.components.items()})

    def __xor__(self, other: "KForm") -> "KForm":
        return wedge([self, other])

    def __eq__(self, other):
        if not isinstance(other, KForm):
            return NotImplemented
        return self.degree == other.degree and self.components == other.components

    def __hash__(self):
        return hash((self.degree, tuple(self.components.items())))

    def __str__(self):
        if not self.components:
            return "0"
        names = self.ctx.variables
        parts = []
        for I, p in self.components.items():
            dz = "^".join("d" + names[i] for i in I)
            parts.append(f"({p})" + (f"*{dz}" if dz else ""))
        return " + ".join(parts)


def exterior_derivative(f: Polynomial) -> KForm:
    """df = sum_i (df/dz_i) dz_i."""
    ctx = f.ctx
    return KForm(ctx, 1, {(i,): f.diff(i) for i in range(ctx.nvars)})


def _wedge2(a: KForm, b: KForm) -> KForm:
    N = a.ctx.nvars
    deg = a.degree + b.degree
    if deg > N:
        warnings.warn(f"wedge of degree {deg} exceeds {N}; result clamped to the zero {N}-form",
                      DegreeOverflowWarning, stacklevel=3)
        return KForm(a.ctx, N, {})
    acc: Dict[Index, Polynomial] = {}
    for I, p in a.components.items():
        for J, q in b.components.items():
            sgn, K = merge_sign(I, J)
            if sgn == 0:
                continue
            t = p * q
            if sgn < 0:
                t = -t
            acc[K] = acc[K] + t if K in acc else t
    return KForm(a.ctx, deg, acc)


def wedge(forms: Sequence[KForm]) -> KForm:
    """Exterior product of the forms, left to right."""
    if not forms:
        raise ValidationError("wedge of an empty sequence")
    out = forms[0]
    for f in forms[1:]:
        out = _wedge2(out, f)
    return out


def determinant(M: Sequence[Sequence[Polynomial]], ctx: RingContext) -> Polynomial:
    """Determinant by cofactor expansion along the first row (fine for small sizes)."""
    n = len(M)
    if n == 0:
        return ctx.one()
    if n == 1:
        return M[0][0]
    if n == 2:
        return M[0][0] * M[1][1] - M[0][1] * M[1][0]
    total = ctx.zero()
    for j in range(n):
        if M[0][j].is_zero():
            continue
        sub = [row[:j] + row[j + 1:] for row in M[1:]]
        term = M[0][j] * determinant(sub, ctx)
        total = total + term if j % 2 == 0 else total - term
    return total


def minors(M: Sequence[Sequence[Polynomial]], t: int, ctx: RingContext = None) -> List[Polynomial]:
    """All t x t minors, ordered lexicographically by (row tuple, column tuple)."""
    rows = len(M)
    cols = len(M[0]) if rows else 0
    if ctx is None:
        ctx = M[0][0].ctx
    if t > min(rows, cols):
        raise ValidationError(f"minor size {t} exceeds matrix shape {rows}x{cols}")
    out = []
    for R in combinations(range(rows), t):
        for C in combinations(range(cols), t):
            out.append(determinant([[M[r][c] for c in C] for r in R], ctx))
    return out


@dataclass(frozen=True)
class GermSpec:
    """A germ (X,0) in (C^N,0) cut out by ``ideal_gens``, of pure dimension ``dim_n``."""

    ctx: RingContext
    ideal_gens: Tuple[Polynomial, ...]
    dim_n: int
    is_ici: bool = None

    def __post_init__(self):
        gens = tuple(g.in_context(self.ctx) for g in self.ideal_gens)
        object.__setattr__(self, "ideal_gens", gens)
        N = self.ctx.nvars
        if not self.ctx.is_local:
            raise ValidationError("germ computations need a local ring context")
        if not 0 < self.dim_n <= N:
            raise ValidationError(f"dimension {self.dim_n} outside 1..{N}")
        for g in gens:
            if g.constant_term() != 0:
                raise ValidationError(f"generator {g} does not vanish at the origin")
        if self.is_ici is None:
            object.__setattr__(self, "is_ici", len(gens) == N - self.dim_n)
        elif self.is_ici and len(gens) != N - self.dim_n:
            raise ValidationError(
                f"complete intersection of dimension {self.dim_n} in C^{N} needs {N - self.dim_n} equations")

    @property
    def N(self) -> int:
        return self.ctx.nvars

    @property
    def codim(self) -> int:
        return self.N - self.dim_n

    @property
    def ideal(self) -> Ideal:
        return Ideal(self.ideal_gens, self.ctx)

    def differentials(self) -> List[KForm]:
        return [exterior_derivative(g) for g in self.ideal_gens]

    def jacobian_rows(self) -> Tuple[Tuple[Polynomial, ...], ...]:
        """(N-n) x N matrix whose rows are the coefficient vectors of the df_r."""
        return tuple(tuple(g.diff(i) for i in range(self.N)) for g in self.ideal_gens)

    @classmethod
    def smooth(cls, ctx: RingContext) -> "GermSpec":
        return cls(ctx, (), ctx.nvars, True)


@dataclass(frozen=True)
class CollectionSpec:
    """Blocks of 1-forms; block i has n - k_i + 1 forms."""

    partition: Tuple[int, ...]
    forms: Tuple[Tuple[KForm, ...], ...]

    def __post_init__(self):
        part = tuple(int(k) for k in self.partition)
        forms = tuple(tuple(b) for b in self.forms)
        object.__setattr__(self, "partition", part)
        object.__setattr__(self, "forms", forms)
        if any(k <= 0 for k in part):
            raise ValidationError(f"partition entries must be positive: {part}")
        if len(forms) != len(part):
            raise ValidationError(f"{len(part)} blocks in the partition but {len(forms)} form blocks")
        n = sum(part)
        for i, (k, block) in enumerate(zip(part, forms), 1):
            if len(block) != n - k + 1:
                raise ValidationError(f"block {i} needs {n - k + 1} forms, got {len(block)}")
            for w in block:
                if w.degree != 1:
                    raise ValidationError(f"block {i} contains a {w.degree}-form")

    @property
    def n(self) -> int:
        return sum(self.partition)

    def check_against(self, X: GermSpec) -> None:
        if self.n != X.dim_n:
            raise ValidationError(f"partition sums to {self.n}, germ has dimension {X.dim_n}")
        for block in self.forms:
            for w in block:
                if w.ctx.variables != X.ctx.variables:
                    raise ValidationError("collection forms live in another ring")

    @classmethod
    def single(cls, form: KForm, n: int) -> "CollectionSpec":
        return cls((n,), ((form,),))


def omega_presentation(X: GermSpec, j: int) -> FPModule:
    """Finite presentation of Omega^j_{X,0} over R = P / <ideal_gens>.

    Free cover: basis j-forms dz_I (lexicographic).  Relation columns:
    g_r * dz_I for each generator and each I, then dg_r ^ dz_J for each
    generator and each basis (j-1)-form J.
    """
    ctx, N = X.ctx, X.N
    if not 0 <= j <= N:
        raise ValidationError(f"form degree {j} outside 0..{N}")
    B = basis(N, j)
    z = ctx.zero()
    rels: List[Column] = []
    for g in X.ideal_gens:
        for idx in range(len(B)):
            rels.append(tuple(g if k == idx else z for k in range(len(B))))
    if j >= 1:
        for dg in X.differentials():
            for J in basis(N, j - 1):
                w = wedge([dg, KForm.basis_form(ctx, J)])
                rels.append(w.coefficients())
    return FPModule(X.ideal, len(B), tuple(rels))


def wedge_matrix(ctx: RingContext, form: KForm, j: int) -> Matrix:
    """Matrix of beta -> beta ^ form from basis j-forms to (j + deg form)-forms."""
    N = ctx.nvars
    src = basis(N, j)
    tgt = basis(N, j + form.degree)
    pos = {I: i for i, I in enumerate(tgt)}
    z = ctx.zero()
    rows = [[z] * len(src) for _ in tgt]
    for c, I in enumerate(src):
        w = wedge([KForm.basis_form(ctx, I), form])
        for K, p in w.components.items():
            rows[pos[K]][c] = p
    return tuple(tuple(r) for r in rows)
