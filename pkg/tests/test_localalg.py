import pytest
from hypothesis import given, settings, strategies as st

from singidx.errors import CompositionNonzero
from singidx.jets import jet_colength, jet_module_colength
from singidx.localalg import (INFINITE, FPModule, Ideal, ModuleMap, colength, global_colength,
                              identity_matrix, kernel, matmul, mora_normal_form, standard_basis,
                              subquotient_dim, syzygies)
from singidx.polyring import GLOBAL, RingContext

from conftest import polynomials

R1 = RingContext(("x",))
R2 = RingContext(("x", "y"))
R3 = RingContext(("x", "y", "z"))


def ideal(ctx, *texts):
    return Ideal(tuple(ctx.parse(t) for t in texts), ctx)


@pytest.mark.parametrize("f, G, expected", [
    ("x", ["x - x^2"], "0"),
    ("y", ["x"], "y"),
    ("x^2 + y", ["x^2", "y"], "0"),
])
def test_mora_normal_form(f, G, expected):
    assert mora_normal_form(R2.parse(f), [R2.parse(g) for g in G], R2) == R2.parse(expected)


def test_mora_normal_form_leading_term_not_divisible():
    G = [R2.parse("x^2 + y^3"), R2.parse("y^2")]
    r = mora_normal_form(R2.parse("x*y + x^3"), G, R2)
    for g in G:
        assert not all(a >= b for a, b in zip(r.leading_monomial, g.leading_monomial))


def test_standard_basis_single_generator():
    I = ideal(R1, "x + x^2")
    assert [g.leading_monomial for g in standard_basis(I)] == [(1,)]


def test_standard_basis_coprime_leads():
    G = standard_basis(ideal(R2, "x^2", "y"))
    assert sorted(g.leading_monomial for g in G) == [(0, 1), (2, 0)]


def test_standard_basis_leading_ideal():
    G = standard_basis(ideal(R2, "x^2 + y^3", "y"))
    assert sorted(g.leading_monomial for g in G) == [(0, 1), (2, 0)]


def test_standard_basis_is_deterministic():
    I1, I2 = ideal(R3, "x^2 + y^2 + z^3", "x*y", "z^2 - x^3"), ideal(R3, "x^2 + y^2 + z^3", "x*y", "z^2 - x^3")
    assert standard_basis(I1) == standard_basis(I2)


@pytest.mark.parametrize("ctx, gens, expected", [
    (R2, ["x", "y"], 1),
    (R3, ["x", "y", "z^2"], 2),
    (R2, ["x"], INFINITE),
    (R1, ["x + x^2"], 1),
    (R3, ["x", "y"], INFINITE),
    (R2, ["x^2 + y^2", "x*y"], 4),
    (R2, ["1 + x"], 0),
    (R3, ["x^2 + y^2 + z^2", "2*x", "2*y"], 2),
])
def test_colength(ctx, gens, expected):
    assert colength(ideal(ctx, *gens)) == expected


@pytest.mark.parametrize("gens, expected", [
    (["3*x^2 - 1"], 2),
])
def test_global_colength_one_var(gens, expected):
    assert global_colength(ideal(R1.with_ordering(GLOBAL), *gens)) == expected


@pytest.mark.parametrize("gens, expected", [
    (["x^2", "y"], 2),
    (["x*y"], INFINITE),
    (["x^2 - 1/4", "y"], 2),
    (["x^2 - x", "y^2 - y"], 4),
])
def test_global_colength(gens, expected):
    assert global_colength(ideal(R2.with_ordering(GLOBAL), *gens)) == expected


def test_global_versus_local_count_split_points():
    # x^2 - x has roots 0 and 1: only one lies at the origin
    assert colength(ideal(R1, "x^2 - x")) == 1
    assert global_colength(ideal(R1, "x^2 - x")) == 2


@pytest.mark.parametrize("ctx, gens", [
    (R2, ["x^3 + y^2", "x*y"]),
    (R2, ["4*x^3", "3*y^2"]),
    (R2, ["x^2 + y^3", "x*y^2 + x^4"]),
    (R3, ["x^2 + y^2 + z^2", "x*y", "y*z"]),
    (R3, ["x + y^2", "y + z^3", "z + x^2 - x*y"]),
    (R3, ["x^4 + y^2 + z^2", "4*x^3", "2*y"]),
    (R3, ["x*y*z", "x^2 + y^2 - z^2"]),
])
def test_colength_matches_jet_oracle(ctx, gens):
    I = ideal(ctx, *gens)
    assert colength(I) == jet_colength(I.generators, ctx, max_degree=20)


SMALL = polynomials(R2, max_terms=3, max_exp=2)


@given(st.lists(SMALL, min_size=2, max_size=2))
@settings(max_examples=40, deadline=None)
def test_membership_of_combinations(coeffs):
    I = ideal(R2, "x^2 + y^3", "x*y")
    f = coeffs[0] * I.generators[0] + coeffs[1] * I.generators[1]
    assert mora_normal_form(f, standard_basis(I), R2).is_zero()
    assert I.contains(f)
    assert not I.contains(R2.one())


@given(SMALL)
@settings(max_examples=40, deadline=None)
def test_non_membership_of_units(p):
    I = ideal(R2, "x^2", "y^2")
    unit = R2.one() + p * R2.parse("x")
    assert not I.contains(unit)


@pytest.mark.parametrize("rows", [
    [["x", "y"]],
    [["x", "y", "z"]],
    [["x", "y^2", "x*y"], ["y", "0", "x^2"]],
    [["x^2 + y", "x*y", "z"]],
])
def test_syzygies_compose_to_zero(rows):
    M = tuple(tuple(R3.parse(e) for e in r) for r in rows)
    S = syzygies(M, Ideal((), R3))
    assert S
    cols = tuple(tuple(col[j] for col in S) for j in range(len(M[0])))
    prod = matmul(M, cols, R3)
    assert all(p.is_zero() for row in prod for p in row)


def test_koszul_syzygy():
    S = syzygies(((R2.parse("x"), R2.parse("y")),), Ideal((), R2))
    assert len(S) == 1
    a, b = S[0]
    assert a * R2.parse("x") + b * R2.parse("y") == R2.zero()
    assert {a.leading_monomial, b.leading_monomial} == {(0, 1), (1, 0)}


def test_syzygy_over_quotient_ring():
    S = syzygies(((R1.parse("x"),),), ideal(R1, "x"))
    assert len(S) == 1 and S[0][0].constant_term() != 0


def test_identity_has_no_syzygies():
    assert syzygies(identity_matrix(R2, 2), Ideal((), R2)) == ()


def _free(ctx, gens=(), rank=1):
    return FPModule.free(Ideal(tuple(ctx.parse(g) for g in gens), ctx), rank)


def test_subquotient_cokernel_of_multiplication():
    A = _free(R1)
    f = ModuleMap(A, A, ((R1.parse("x"),),))
    assert subquotient_dim(f, ModuleMap.zero(A, _free(R1, rank=0))) == 1


def test_subquotient_exact_identity():
    A = _free(R1)
    f = ModuleMap(A, A, identity_matrix(R1, 1))
    assert subquotient_dim(f, ModuleMap.zero(A, _free(R1, rank=0))) == 0


def test_subquotient_koszul_middle():
    x, y = R2.gens()
    R, R2f = _free(R2), _free(R2, rank=2)
    d2 = ModuleMap(R, R2f, ((y,), (-x,)))
    d1 = ModuleMap(R2f, R, ((x, y),))
    assert subquotient_dim(d2, d1) == 0
    assert subquotient_dim(d1, ModuleMap.zero(R, _free(R2, rank=0))) == 1
    assert subquotient_dim(ModuleMap.zero(_free(R2, rank=0), R), d2) == 0


def test_subquotient_requires_composition_zero():
    x, y = R2.gens()
    R, R2f = _free(R2), _free(R2, rank=2)
    with pytest.raises(CompositionNonzero):
        subquotient_dim(ModuleMap(R, R2f, ((x,), (y,))), ModuleMap(R2f, R, ((x, y),)))


def test_subquotient_invariant_under_redundant_generators():
    # B = R / (x^2, y^2) presented once plainly and once with a redundant
    # extra generator e2 = x*e1 (relation e2 - x*e1)
    x, y = R2.gens()
    z0 = R2.zero()
    plain = FPModule(Ideal((), R2), 1, ((x ** 2,), (y ** 2,)))
    padded = FPModule(Ideal((), R2), 2, ((x ** 2, z0), (y ** 2, z0), (-x, R2.one())))
    zero = _free(R2, rank=0)
    assert plain.dimension() == padded.dimension() == 4
    f1 = ModuleMap(_free(R2), plain, ((x * y,),))
    f2 = ModuleMap(_free(R2), padded, ((z0,), (y,)))
    assert subquotient_dim(f1, ModuleMap.zero(plain, zero)) == 3
    assert subquotient_dim(f2, ModuleMap.zero(padded, zero)) == 3


def test_kernel_of_zero_map_is_everything():
    A = _free(R2, rank=2)
    K = kernel(ModuleMap.zero(A, _free(R2)))
    assert len(K) == 2


@pytest.mark.parametrize("rows, ambient", [
    ([["x", "y"]], []),
    ([["x", "y", "0"], ["0", "x", "y"]], []),
    ([["x^2", "y^2"]], ["x*y"]),
])
def test_module_colength_matches_jet_oracle(rows, ambient):
    cols = [tuple(R2.parse(r[j]) if j < len(r) else R2.zero() for r in rows) for j in range(len(rows[0]))]
    amb = Ideal(tuple(R2.parse(a) for a in ambient), R2)
    rank = len(rows)
    extra = [tuple(g if i == c else R2.zero() for i in range(rank)) for g in amb.generators for c in range(rank)]
    M = FPModule(amb, rank, tuple(cols))
    assert M.dimension() == jet_module_colength(cols + extra, rank, R2, max_degree=15)
