"""Brute-force colengths by linear algebra in jet spaces.

Independent of the standard-basis engine: for a submodule U of P^r,
dim (P/m^d)^r / U_d is computed by exact row reduction of the truncated
products monomial * generator.  The sequence is nondecreasing in d; once
two consecutive values agree, m^d Q = m^{d+1} Q for Q = P^r/U localized,
so m^d Q = 0 by Nakayama and the value is dim Q itself.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import combinations_with_replacement
from typing import Dict, List, Sequence, Tuple

from .localalg import INFINITE
from .polyring import Polynomial, RingContext


def monomials_below(nvars: int, d: int) -> List[Tuple[int, ...]]:
    out = []
    for deg in range(d):
        for combo in combinations_with_replacement(range(nvars), deg):
            e = [0] * nvars
            for v in combo:
                e[v] += 1
            out.append(tuple(e))
    return out


class _Echelon:
    def __init__(self):
        self.pivots: Dict[int, Dict[int, Fraction]] = {}

    def insert(self, v: Dict[int, Fraction]) -> bool:
        v = {k: Fraction(c) for k, c in v.items() if c}
        while v:
            c = min(v)
            p = self.pivots.get(c)
            if p is None:
                self.pivots[c] = v
                return True
            f = v[c] / p[c]
            for k, a in p.items():
                nv = v.get(k, 0) - f * a
                if nv:
                    v[k] = nv
                else:
                    v.pop(k, None)
        return False

    @property
    def rank(self) -> int:
        return len(self.pivots)


def truncated_quotient_dim(columns: Sequence[Sequence[Polynomial]], rank: int,
                           ctx: RingContext, d: int) -> int:
    """dim of (P/m^d)^rank modulo the span of all monomial multiples of ``columns``."""
    n = ctx.nvars
    monos = monomials_below(n, d)
    index = {}
    for comp in range(rank):
        for e in monos:
            index[(comp, e)] = len(index)
    ech = _Echelon()
    for col in columns:
        order = min((p.order() for p in col if not p.is_zero()), default=None)
        if order is None:
            continue
        for m in monos:
            if sum(m) + order >= d:
                continue
            v: Dict[int, Fraction] = {}
            for comp, p in enumerate(col):
                for c, e in p.terms:
                    e2 = tuple(a + b for a, b in zip(e, m))
                    if sum(e2) < d:
                        k = index[(comp, e2)]
                        v[k] = v.get(k, 0) + c
            ech.insert(v)
    return len(index) - ech.rank


def jet_module_colength(columns: Sequence[Sequence[Polynomial]], rank: int,
                        ctx: RingContext, max_degree: int = 40):
    """dim_C of O^rank / <columns> by jet stabilization; INFINITE past ``max_degree``."""
    prev = None
    for d in range(1, max_degree + 1):
        cur = truncated_quotient_dim(columns, rank, ctx, d)
        if prev is not None and cur == prev:
            return cur
        prev = cur
    return INFINITE


def jet_colength(generators: Sequence[Polynomial], ctx: RingContext, max_degree: int = 40):
    """dim_C O/<generators> at the origin, computed without standard bases."""
    return jet_module_colength([(g,) for g in generators], 1, ctx, max_degree)
