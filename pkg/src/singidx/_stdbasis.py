"""Sparse module vectors and standard bases (Mora / Buchberger).

Internal kernel shared by :mod:`singidx.localalg`.  A vector of the free
module P^r is a dict mapping *term keys* to nonzero rationals.  A term key
is the tuple ``(-component, signed_degree, exponents)`` where
``signed_degree`` is ``-deg`` for the local ordering and ``+deg`` for the
global one.  With this encoding plain tuple comparison *is* the module
ordering (position over term, component 0 highest; inside a component
degree first, lexicographic tie-break), so the leading term of a vector is
simply ``max(vec)``.

The normal form is Mora's ecart-controlled weak normal form; for a
degree-compatible global ordering every ecart is zero and it degenerates to
ordinary leading-term reduction, so one routine serves both cases.

Inside the kernel coefficients are gmpy2 rationals when available (much
faster than Fraction); the conversion helpers translate at the boundary.
"""

from __future__ import annotations

import heapq
from fractions import Fraction
from operator import add as _add, itemgetter
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

try:
    from gmpy2 import mpq as _coeff
except ImportError:  # pragma: no cover
    _coeff = Fraction

ONE = _coeff(1)

Key = Tuple[int, int, Tuple[int, ...]]
Vec = Dict[Key, object]


_signed_degree = itemgetter(1)


class Elem:
    __slots__ = ("vec", "lt", "lc", "ecart")

    def __init__(self, vec: Vec):
        self.vec = vec
        lt = max(vec)
        self.lt = lt
        self.lc = vec[lt]
        # negative signed degrees occur only for the local ordering; for the
        # degree-first global ordering the leading term has top degree
        low = min(map(_signed_degree, vec))
        self.ecart = lt[1] - low if low < 0 else 0

    def __repr__(self):
        return f"Elem(lt={self.lt}, terms={len(self.vec)}, ecart={self.ecart})"


def divides(a: Key, b: Key) -> bool:
    """Leading-term divisibility: same component, exponentwise <=."""
    if a[0] != b[0]:
        return False
    for x, y in zip(a[2], b[2]):
        if x > y:
            return False
    return True


def lcm_key(a: Key, b: Key, sign: int) -> Key:
    e = tuple(x if x > y else y for x, y in zip(a[2], b[2]))
    return (a[0], sign * sum(e), e)


def _sub_multiple(target: Vec, q, shift_sd: int, shift_e: Tuple[int, ...], g: Vec,
                  in_place: bool = False) -> Vec:
    """Return target - q * x^shift * g (a new dict unless ``in_place``)."""
    out = target if in_place else dict(target)
    get = out.get
    if any(shift_e):
        for (tn, tsd, te), c in g.items():
            k = (tn, tsd + shift_sd, tuple(map(_add, te, shift_e)))
            v = get(k, 0) - q * c
            if v:
                out[k] = v
            else:
                del out[k]
    else:
        for k, c in g.items():
            v = get(k, 0) - q * c
            if v:
                out[k] = v
            else:
                del out[k]
    return out


def reduce_by(h: Elem, g: Elem, in_place: bool = False) -> Vec:
    """One reduction step of h's leading term by g (g.lt must divide h.lt)."""
    hl, gl = h.lt, g.lt
    shift_e = tuple(x - y for x, y in zip(hl[2], gl[2]))
    return _sub_multiple(h.vec, h.lc / g.lc, hl[1] - gl[1], shift_e, g.vec, in_place)


def spoly(a: Elem, b: Elem, sign: int) -> Vec:
    L = lcm_key(a.lt, b.lt, sign)
    sa = tuple(x - y for x, y in zip(L[2], a.lt[2]))
    sb = tuple(x - y for x, y in zip(L[2], b.lt[2]))
    scaled = {}
    if any(sa):
        sd = L[1] - a.lt[1]
        for (tn, tsd, te), c in a.vec.items():
            scaled[(tn, tsd + sd, tuple(map(_add, te, sa)))] = c / a.lc
    else:
        inv = 1 / a.lc
        scaled = {k: c * inv for k, c in a.vec.items()}
    return _sub_multiple(scaled, 1 / b.lc, L[1] - b.lt[1], sb, b.vec)


def nf_mora(vec: Vec, basis: Sequence[Elem]) -> Optional[Elem]:
    """Mora's weak normal form of ``vec`` with respect to ``basis``.

    Returns None when the result is zero, else an :class:`Elem` whose
    leading term is divisible by no leading term of ``basis``.  The result
    ``h`` satisfies ``u*vec - h`` in the submodule generated by ``basis``
    for a unit ``u`` of the local ring (``u = 1`` for global orderings).
    """
    if not vec:
        return None
    T: Dict[int, List[Elem]] = {}
    for g in basis:
        T.setdefault(g.lt[0], []).append(g)
    h = Elem(dict(vec))
    owned = True
    while True:
        hl = h.lt
        best = None
        for g in T.get(hl[0], ()):
            if divides(g.lt, hl) and (best is None or g.ecart < best.ecart):
                best = g
                if g.ecart == 0:
                    break
        if best is None:
            return h
        if best.ecart > h.ecart:
            T[hl[0]].append(h)
            owned = False
        v = reduce_by(h, best, in_place=owned)
        if not v:
            return None
        h = Elem(v)
        owned = True


class Basis(list):
    """A standard basis (list of :class:`Elem`) plus, for local orderings,
    the homogeneous Groebner basis it was dehomogenized from.

    Passing a Basis back in as a seed lets the homogeneous computation skip
    all pairs inside the seed.
    """

    def __init__(self, elems: Iterable[Elem] = (), homogeneous: Optional[List[Elem]] = None):
        super().__init__(elems)
        self.homogeneous = homogeneous

    def shifted(self, delta: int) -> "Basis":
        """The same basis moved from component c to c + delta."""
        if delta == 0:
            return self
        loc = [Elem(shift_components(e.vec, delta)) for e in self]
        hom = None
        if self.homogeneous is not None:
            hom = [Elem(shift_components(e.vec, delta)) for e in self.homogeneous]
        return Basis(loc, hom)

    @staticmethod
    def concat(parts: Sequence["Basis"]) -> "Basis":
        loc = [e for p in parts for e in p]
        if all(p.homogeneous is not None for p in parts):
            return Basis(loc, [e for p in parts for e in p.homogeneous])
        return Basis(loc)


def homogenize(vec: Vec) -> Vec:
    """Local-ordering vector -> homogeneous global vector with t as variable 0.

    Under the global key (degree, then exponents with t first) the leading
    term of the result is the local leading term of ``vec`` times a power of t.
    """
    top = max(-k[1] for k in vec)
    return {(nc, top, (top + sd,) + e): c for (nc, sd, e), c in vec.items()}


def dehomogenize(vec: Vec) -> Vec:
    return {(nc, -(D - e[0]), e[1:]): c for (nc, D, e), c in vec.items()}


def standard_basis(gens: Iterable[Vec], sign: int, seed: Sequence[Elem] = (),
                   product_criterion: bool = False) -> Basis:
    """Standard basis of the submodule generated by ``seed`` and ``gens``.

    ``seed`` must already be a standard basis.  For the global ordering the
    computation is Buchberger's algorithm directly.  For the local ordering
    it is Lazard's method: homogenize with an extra variable, compute a
    Groebner basis for the degree ordering that breaks ties by the local
    ordering, and dehomogenize.  This avoids the coefficient growth of
    Mora's normal form on long reductions.
    """
    gens = [v for v in gens if v]
    if sign > 0:
        return Basis(minimalize(_buchberger(gens, sign, list(seed), product_criterion)))
    hseed = getattr(seed, "homogeneous", None)
    if hseed is None:
        gens = [e.vec for e in seed] + gens
        hseed = []
    H = _buchberger([homogenize(v) for v in gens], 1, list(hseed), product_criterion)
    return Basis(minimalize([Elem(dehomogenize(h.vec)) for h in H]), H)


def contains(basis: Basis, vec: Vec, sign: int) -> bool:
    """Whether ``vec`` lies in the submodule with standard basis ``basis``.

    Decided by leading terms: adding ``vec`` leaves the leading module
    unchanged exactly when it is already contained (in the localization,
    for the local ordering).
    """
    if not vec:
        return True
    if sign > 0:
        return nf_mora(vec, basis) is None
    bigger = standard_basis([vec], sign, seed=basis)
    return all(any(divides(g.lt, h.lt) for g in basis) for h in bigger)


def _buchberger(gens: Sequence[Vec], sign: int, seed: List[Elem],
                product_criterion: bool) -> List[Elem]:
    """Buchberger's algorithm with Gebauer-Moeller pair pruning (unminimalized).

    Pairs inside ``seed`` are skipped.  Pairs are processed lowest lcm
    degree first with ties broken by the module ordering and then by
    insertion index, so the output is deterministic.  The product
    criterion is only valid for ideals and must be requested explicitly.
    """
    G: List[Elem] = list(seed)
    heap: list = []
    live: Dict[Tuple[int, int], Key] = {}

    def push(i: int, j: int, L: Key) -> None:
        live[(i, j)] = L
        heapq.heappush(heap, (abs(L[1]), _neg_key(L), i, j))

    def insert(h: Elem) -> None:
        k = len(G)
        hl = h.lt
        for (i, j), L in list(live.items()):
            if L[0] == hl[0] and divides(hl, L):
                if lcm_key(G[i].lt, hl, sign) != L and lcm_key(G[j].lt, hl, sign) != L:
                    del live[(i, j)]
        groups: Dict[Key, List[int]] = {}
        coprime: Dict[Key, bool] = {}
        for i, g in enumerate(G):
            if g.lt[0] != hl[0]:
                continue
            L = lcm_key(g.lt, hl, sign)
            groups.setdefault(L, []).append(i)
            if product_criterion and all(x == 0 or y == 0 for x, y in zip(g.lt[2], hl[2])):
                coprime[L] = True
        lcms = list(groups)
        for L in lcms:
            if any(M != L and divides(M, L) for M in lcms):
                continue
            if coprime.get(L):
                continue
            push(groups[L][0], k, L)
        G.append(h)

    for v in gens:
        h = nf_mora(v, G)
        if h is not None:
            insert(h)

    while heap:
        _, _, i, j = heapq.heappop(heap)
        if live.pop((i, j), None) is None:
            continue
        h = nf_mora(spoly(G[i], G[j], sign), G)
        if h is not None:
            insert(h)
    return G


def _neg_key(L: Key):
    # heap pops the smallest; among equal degrees take the greatest term first
    return (-L[0], -L[1], tuple(-x for x in L[2]))


def minimalize(G: Sequence[Elem]) -> List[Elem]:
    """Drop elements whose leading term is divisible by another's."""
    out: List[Elem] = []
    for idx, g in enumerate(G):
        redundant = False
        for jdx, h in enumerate(G):
            if jdx == idx:
                continue
            if divides(h.lt, g.lt) and (h.lt != g.lt or jdx < idx):
                redundant = True
                break
        if not redundant:
            out.append(g)
    return out


# -- leading-module bookkeeping ------------------------------------------------

def count_standard_monomials(mons: Sequence[Tuple[int, ...]], nvars: int) -> Optional[int]:
    """Number of monomials not divisible by any of ``mons``; None if infinite."""
    if any(not any(m) for m in mons):
        return 0
    if nvars == 0:
        return 1
    for v in range(nvars):
        if not any(m[v] > 0 and all(m[w] == 0 for w in range(nvars) if w != v) for m in mons):
            return None
    return _count(tuple(mons), nvars)


def _count(mons: Tuple[Tuple[int, ...], ...], nvars: int) -> int:
    if any(not any(m) for m in mons):
        return 0
    if nvars == 1:
        return min(m[0] for m in mons)
    bound = min(m[0] for m in mons if not any(m[1:]))
    total = 0
    for a in range(bound):
        sub = tuple(m[1:] for m in mons if m[0] <= a)
        total += _count(sub, nvars - 1)
    return total


def colength_of(G: Sequence[Elem], rank: int, nvars: int, comp_offset: int = 0) -> Optional[int]:
    """dim of P^rank / <G> from leading terms; components offset by ``comp_offset``."""
    total = 0
    for c in range(rank):
        nc = -(c + comp_offset)
        mons = [g.lt[2] for g in G if g.lt[0] == nc]
        n = count_standard_monomials(mons, nvars)
        if n is None:
            return None
        total += n
    return total


# -- conversions -------------------------------------------------------------

def poly_to_vec(d: Dict[Tuple[int, ...], object], comp: int, sign: int) -> Vec:
    return {(-comp, sign * sum(e), e): _coeff(c) for e, c in d.items()}


def column_to_vec(col: Sequence[Dict[Tuple[int, ...], object]], sign: int, comp_offset: int = 0) -> Vec:
    out: Vec = {}
    for i, d in enumerate(col):
        c = -(i + comp_offset)
        for e, v in d.items():
            out[(c, sign * sum(e), e)] = _coeff(v)
    return out


def vec_to_column(vec: Vec, rank: int, comp_offset: int = 0) -> List[Dict[Tuple[int, ...], object]]:
    col: List[Dict[Tuple[int, ...], object]] = [dict() for _ in range(rank)]
    for (nc, _, e), c in vec.items():
        col[-nc - comp_offset][e] = to_fraction(c)
    return col


def to_fraction(c) -> Fraction:
    return Fraction(int(c.numerator), int(c.denominator))


def shift_components(vec: Vec, delta: int) -> Vec:
    """Move every term from component c to c + delta."""
    return {(nc - delta, sd, e): c for (nc, sd, e), c in vec.items()}
