"""Finite chain complexes of presented modules.

Homological degree t runs 0..L; ``differentials[t-1]`` is d_t from
``terms[t]`` to ``terms[t-1]``.  Generators of a term built from a tensor
``Lambda ⊗ S`` are indexed symmetric-monomial-major: ``mono * rank + form``.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations_with_replacement
from typing import List, Optional, Sequence, Tuple

from .diffforms import (GermSpec, KForm, basis, merge_sign, minors, omega_presentation,
                        wedge, wedge_matrix)
from .errors import ValidationError
from .localalg import INFINITE, FPModule, Ideal, Matrix, ModuleMap, subquotient_dim
from .polyring import Polynomial, RingContext


@dataclass(frozen=True)
class ChainComplex:
    ambient: Ideal
    terms: Tuple[FPModule, ...]
    differentials: Tuple[ModuleMap, ...]

    def __post_init__(self):
        terms, diffs = tuple(self.terms), tuple(self.differentials)
        object.__setattr__(self, "terms", terms)
        object.__setattr__(self, "differentials", diffs)
        if len(diffs) != max(len(terms) - 1, 0):
            raise ValidationError(f"{len(terms)} terms need {len(terms) - 1} differentials")
        for t, d in enumerate(diffs, 1):
            if d.source.rank != terms[t].rank or d.target.rank != terms[t - 1].rank:
                raise ValidationError(f"d_{t} has the wrong shape")

    @property
    def length(self) -> int:
        return len(self.terms) - 1

    @property
    def ctx(self) -> RingContext:
        return self.ambient.ctx

    def d(self, t: int) -> ModuleMap:
        """d_t : terms[t] -> terms[t-1], with zero maps off the ends."""
        if 1 <= t <= self.length:
            return self.differentials[t - 1]
        zero = FPModule.free(self.ambient, 0)
        if t <= 0:
            return ModuleMap.zero(self.terms[0], zero)
        return ModuleMap.zero(zero, self.terms[-1])

    def ranks(self) -> Tuple[int, ...]:
        return tuple(m.rank for m in self.terms)

    def replace_differential(self, t: int, d: ModuleMap) -> "ChainComplex":
        diffs = list(self.differentials)
        diffs[t - 1] = d
        return ChainComplex(self.ambient, self.terms, tuple(diffs))


def unit_complex(ambient: Ideal) -> ChainComplex:
    """The one-term complex [R]."""
    return ChainComplex(ambient, (FPModule.free(ambient, 1),), ())


def sym_monomials(m: int, d: int) -> List[Tuple[int, ...]]:
    """Exponent vectors of degree-d monomials in m variables, lexicographically descending."""
    if d < 0:
        return []
    out = []
    for combo in combinations_with_replacement(range(m), d):
        e = [0] * m
        for v in combo:
            e[v] += 1
        out.append(tuple(e))
    out.sort(reverse=True)
    return out


def direct_sum_copies(M: FPModule, copies: int) -> FPModule:
    """M^copies with block-diagonal relations."""
    z = M.ctx.zero()
    r = M.rank
    rels = []
    for c in range(copies):
        for col in M.relations:
            full = [z] * (r * copies)
            full[c * r:(c + 1) * r] = col
            rels.append(tuple(full))
    return FPModule(M.ambient, r * copies, tuple(rels))


def _mat(rows: int, cols: int, ctx: RingContext) -> List[List[Polynomial]]:
    z = ctx.zero()
    return [[z] * cols for _ in range(rows)]


def _freeze(M: List[List[Polynomial]]) -> Matrix:
    return tuple(tuple(r) for r in M)


# -- the complex attached to one block of a collection ------------------------

def build_collection_complex(X: GermSpec, k: int, forms: Sequence[KForm]) -> ChainComplex:
    """The complex C = C(omega_1, ..., omega_m) of one block, m = n - k + 1.

    C_0 = Omega^n_X and C_t = Omega^{k-t}_X ⊗ S^{t-1}W for 1 <= t <= k, with
    d_1(b) = b ^ w_1 ^ ... ^ w_m and
    d_t(b ⊗ phi) = sum_l (b ^ w_l) ⊗ d phi / d u_l.
    """
    n, N, ctx = X.dim_n, X.N, X.ctx
    m = n - k + 1
    if k < 1 or k > n:
        raise ValidationError(f"block size k={k} outside 1..{n}")
    if len(forms) != m:
        raise ValidationError(f"block with k={k} needs {m} forms, got {len(forms)}")
    omegas = [omega_presentation(X, j) for j in range(n + 1)]
    terms = [omegas[n]]
    for t in range(1, k + 1):
        terms.append(direct_sum_copies(omegas[k - t], len(sym_monomials(m, t - 1))))
    top = wedge(list(forms))
    diffs = [ModuleMap(terms[1], terms[0], wedge_matrix(ctx, top, k - 1))]
    for t in range(2, k + 1):
        j = k - t                     # source form degree
        src_monos = sym_monomials(m, t - 1)
        tgt_monos = sym_monomials(m, t - 2)
        tpos = {a: i for i, a in enumerate(tgt_monos)}
        rs, rt = len(basis(N, j)), len(basis(N, j + 1))
        D = _mat(len(tgt_monos) * rt, len(src_monos) * rs, ctx)
        per_form = [wedge_matrix(ctx, w, j) for w in forms]
        for si, a in enumerate(src_monos):
            for l in range(m):
                if a[l] == 0:
                    continue
                b = a[:l] + (a[l] - 1,) + a[l + 1:]
                ti = tpos[b]
                W = per_form[l]
                for r in range(rt):
                    for c in range(rs):
                        p = W[r][c]
                        if p.terms:
                            D[ti * rt + r][si * rs + c] = D[ti * rt + r][si * rs + c] + p.scale(a[l])
        diffs.append(ModuleMap(terms[t], terms[t - 1], _freeze(D)))
    return ChainComplex(X.ideal, tuple(terms), tuple(diffs))


# -- exterior powers of a two-term complex ------------------------------------

def exterior_power_two_term(A_rank: int, B_rank: int, phi: Matrix, k: int,
                            ambient: Ideal) -> ChainComplex:
    """Lambda^k [A <- B] = [Lambda^k A <- Lambda^{k-1}A ⊗ B <- ... <- S^k B].

    ``phi`` is the A_rank x B_rank matrix of the map B -> A.  Term t is
    Lambda^{k-t}A ⊗ S^t B; the differential sends e_I ⊗ u^a to
    sum_l a_l (e_I ^ phi(b_l)) ⊗ u^{a - e_l}.  All terms are free over
    R = P / ambient.
    """
    if k < 1:
        raise ValidationError("exterior power needs k >= 1")
    ctx = ambient.ctx
    if len(phi) != A_rank or any(len(r) != B_rank for r in phi):
        raise ValidationError(f"map must be {A_rank}x{B_rank}")
    lam = [basis(A_rank, j) if j <= A_rank else [] for j in range(k + 1)]
    terms, shapes = [], []
    for t in range(k + 1):
        monos = sym_monomials(B_rank, t)
        shapes.append((lam[k - t], monos))
        terms.append(FPModule.free(ambient, len(lam[k - t]) * len(monos)))
    diffs = []
    for t in range(1, k + 1):
        src_I, src_m = shapes[t]
        tgt_I, tgt_m = shapes[t - 1]
        Ipos = {I: i for i, I in enumerate(tgt_I)}
        mpos = {a: i for i, a in enumerate(tgt_m)}
        rs, rt = len(src_I), len(tgt_I)
        D = _mat(terms[t - 1].rank, terms[t].rank, ctx)
        for si, a in enumerate(src_m):
            for ii, I in enumerate(src_I):
                col = si * rs + ii
                for l in range(B_rank):
                    if a[l] == 0:
                        continue
                    b = a[:l] + (a[l] - 1,) + a[l + 1:]
                    ti = mpos[b]
                    for i in range(A_rank):
                        p = phi[i][l]
                        if p.is_zero():
                            continue
                        sgn, K = merge_sign(I, (i,))
                        if sgn == 0:
                            continue
                        row = ti * rt + Ipos[K]
                        D[row][col] = D[row][col] + p.scale(sgn * a[l])
        diffs.append(ModuleMap(terms[t], terms[t - 1], _freeze(D)))
    return ChainComplex(ambient, tuple(terms), tuple(diffs))


# -- Eagon-Northcott ----------------------------------------------------------

def eagon_northcott(M: Matrix, ambient: Ideal, ncols: Optional[int] = None) -> ChainComplex:
    """Eagon-Northcott complex of an s x r matrix (s <= r) over P / ambient.

    E_0 = R and E_j = Lambda^{s+j-1} V ⊗ S^{j-1} W for 1 <= j <= r-s+1.
    d_1 sends e_I to the maximal minor on columns I; for j > 1
    d_j(e_I ⊗ phi) = sum_l sum_t (-1)^{l-1} M[t][i_l] e_{I - i_l} ⊗ d phi / d u_t,
    i.e. row t of M is paired with the symmetric variable u_t.
    """
    ctx = ambient.ctx
    M = tuple(tuple(r) for r in M)
    s = len(M)
    r = len(M[0]) if s else (ncols if ncols is not None else ctx.nvars)
    if any(len(row) != r for row in M):
        raise ValidationError("ragged matrix")
    if s > r:
        raise ValidationError(f"Eagon-Northcott needs s <= r, got {s}x{r}")
    L = r - s + 1
    shapes = [([()], [()])]
    terms = [FPModule.free(ambient, 1)]
    for j in range(1, L + 1):
        Is = basis(r, s + j - 1)
        monos = sym_monomials(s, j - 1)
        shapes.append((Is, monos))
        terms.append(FPModule.free(ambient, len(Is) * len(monos)))
    diffs = []
    # d_1: maximal minors
    Is = shapes[1][0]
    row = []
    for I in Is:
        sub = [[M[t][c] for c in I] for t in range(s)]
        row.append(minors(sub, s, ctx)[0] if s else ctx.one())
    diffs.append(ModuleMap(terms[1], terms[0], (tuple(row),)))
    for j in range(2, L + 1):
        src_I, src_m = shapes[j]
        tgt_I, tgt_m = shapes[j - 1]
        Ipos = {I: i for i, I in enumerate(tgt_I)}
        mpos = {a: i for i, a in enumerate(tgt_m)}
        rs, rt = len(src_I), len(tgt_I)
        D = _mat(terms[j - 1].rank, terms[j].rank, ctx)
        for si, a in enumerate(src_m):
            for ii, I in enumerate(src_I):
                col = si * rs + ii
                for t in range(s):
                    if a[t] == 0:
                        continue
                    b = a[:t] + (a[t] - 1,) + a[t + 1:]
                    ti = mpos[b]
                    for l, il in enumerate(I):
                        p = M[t][il]
                        if p.is_zero():
                            continue
                        K = I[:l] + I[l + 1:]
                        rowi = ti * rt + Ipos[K]
                        D[rowi][col] = D[rowi][col] + p.scale((-1) ** l * a[t])
        diffs.append(ModuleMap(terms[j], terms[j - 1], _freeze(D)))
    return ChainComplex(ambient, tuple(terms), tuple(diffs))


# -- tensor products ----------------------------------------------------------

def tensor_modules(M: FPModule, N: FPModule) -> FPModule:
    """M ⊗_R N presented on generator pairs (i, j) -> i * N.rank + j."""
    if M.ambient != N.ambient:
        raise ValidationError("tensor of modules over different rings")
    z = M.ctx.zero()
    a, b = M.rank, N.rank
    rels = []
    for col in M.relations:
        for j in range(b):
            full = [z] * (a * b)
            for i in range(a):
                full[i * b + j] = col[i]
            rels.append(tuple(full))
    for col in N.relations:
        for i in range(a):
            full = [z] * (a * b)
            full[i * b:(i + 1) * b] = col
            rels.append(tuple(full))
    return FPModule(M.ambient, a * b, tuple(rels))


def tensor(C: ChainComplex, D: ChainComplex) -> ChainComplex:
    """Total complex of C ⊗ D with d(c ⊗ e) = dc ⊗ e + (-1)^p c ⊗ de."""
    if C.ambient != D.ambient:
        raise ValidationError("tensor of complexes over different rings")
    ctx = C.ctx
    L = C.length + D.length
    blocks: List[List[Tuple[int, int, int]]] = []   # per degree: (p, q, offset)
    terms = []
    for t in range(L + 1):
        parts, off, mods = [], 0, []
        for p in range(max(0, t - D.length), min(t, C.length) + 1):
            q = t - p
            Mpq = tensor_modules(C.terms[p], D.terms[q])
            parts.append((p, q, off))
            mods.append(Mpq)
            off += Mpq.rank
        blocks.append(parts)
        terms.append(_direct_sum(mods, C.ambient))
    diffs = []
    for t in range(1, L + 1):
        Dm = _mat(terms[t - 1].rank, terms[t].rank, ctx)
        tgt_off = {(p, q): off for p, q, off in blocks[t - 1]}
        for p, q, off in blocks[t]:
            a, b = C.terms[p].rank, D.terms[q].rank
            if p >= 1:
                dC = C.differentials[p - 1].matrix
                a2 = C.terms[p - 1].rank
                toff = tgt_off[(p - 1, q)]
                for i2 in range(a2):
                    for i in range(a):
                        e = dC[i2][i]
                        if e.is_zero():
                            continue
                        for j in range(b):
                            Dm[toff + i2 * b + j][off + i * b + j] = e
            if q >= 1:
                dD = D.differentials[q - 1].matrix
                b2 = D.terms[q - 1].rank
                toff = tgt_off[(p, q - 1)]
                sgn = -1 if p % 2 else 1
                for j2 in range(b2):
                    for j in range(b):
                        e = dD[j2][j]
                        if e.is_zero():
                            continue
                        e = e if sgn > 0 else -e
                        for i in range(a):
                            Dm[toff + i * b2 + j2][off + i * b + j] = e
        diffs.append(ModuleMap(terms[t], terms[t - 1], _freeze(Dm)))
    return ChainComplex(C.ambient, tuple(terms), tuple(diffs))


def _direct_sum(mods: Sequence[FPModule], ambient: Ideal) -> FPModule:
    z = ambient.ctx.zero()
    total = sum(m.rank for m in mods)
    rels, off = [], 0
    for m in mods:
        for col in m.relations:
            full = [z] * total
            full[off:off + m.rank] = col
            rels.append(tuple(full))
        off += m.rank
    return FPModule(ambient, total, tuple(rels))


def tensor_all(complexes: Sequence[ChainComplex]) -> ChainComplex:
    out = complexes[0]
    for C in complexes[1:]:
        out = tensor(out, C)
    return out


# -- verification and invariants ----------------------------------------------

def verify_d_squared(C: ChainComplex) -> bool:
    """True iff every d_{t-1} o d_t vanishes as a map of presented modules."""
    for t in range(2, C.length + 1):
        if not C.differentials[t - 2].compose(C.differentials[t - 1]).is_zero_map():
            return False
    return True


def cohomology_dims(C: ChainComplex) -> Tuple:
    """dim H_t = dim ker d_t / im d_{t+1} for t = 0..L (INFINITE where not finite)."""
    return tuple(subquotient_dim(C.d(t + 1), C.d(t), check=False) for t in range(C.length + 1))


def euler_characteristic(C: ChainComplex, dims: Optional[Sequence] = None):
    """sum_t (-1)^t dim H_t; INFINITE if any slot is infinite."""
    if dims is None:
        dims = cohomology_dims(C)
    if any(d == INFINITE for d in dims):
        return INFINITE
    return sum((-1) ** t * d for t, d in enumerate(dims))
