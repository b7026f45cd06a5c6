import random

import pytest
from hypothesis import given, settings, strategies as st

from singidx.diffforms import GermSpec, KForm
from singidx.errors import ValidationError
from singidx.homalg import (ChainComplex, build_collection_complex, cohomology_dims, eagon_northcott,
                            euler_characteristic, exterior_power_two_term, tensor, unit_complex,
                            verify_d_squared)
from singidx.localalg import INFINITE, FPModule, Ideal, ModuleMap
from singidx.polyring import RingContext

R2 = RingContext(("x", "y"))
R3 = RingContext(("x", "y", "z"))
P2, P3 = Ideal((), R2), Ideal((), R3)
SMOOTH2 = GermSpec.smooth(R2)
A1 = GermSpec(R3, (R3.parse("x^2 + y^2 + z^2"),), 2)


def form(ctx, *coeffs):
    return KForm.one_form(ctx, [ctx.parse(c) for c in coeffs])


def principal(ctx, g):
    R = FPModule.free(Ideal((), ctx), 1)
    return ChainComplex(Ideal((), ctx), (R, R), (ModuleMap(R, R, ((ctx.parse(g),),)),))


def test_collection_complex_single_form_on_plane():
    C = build_collection_complex(SMOOTH2, 2, [form(R2, "3*x^2", "2*y")])
    assert C.ranks() == (1, 2, 1)
    assert verify_d_squared(C)
    assert cohomology_dims(C) == (2, 0, 0)
    assert euler_characteristic(C) == 2


def test_collection_complex_two_forms_is_multiplication():
    C = build_collection_complex(SMOOTH2, 1, [form(R2, "1", "0"), form(R2, "0", "x")])
    assert C.ranks() == (1, 1)
    assert C.differentials[0].matrix == ((R2.parse("x"),),)
    assert cohomology_dims(C) == (INFINITE, 0)


def test_collection_complex_shape_on_a1():
    C = build_collection_complex(A1, 2, [form(R3, "0", "0", "1")])
    assert C.ranks() == (3, 3, 1)
    assert [m.relations for m in C.terms][2] == (A1.ideal_gens,)
    assert verify_d_squared(C)
    assert cohomology_dims(C) == (2, 0, 0)


def test_collection_complex_block_checks():
    with pytest.raises(ValidationError):
        build_collection_complex(SMOOTH2, 3, [form(R2, "1", "0")])
    with pytest.raises(ValidationError):
        build_collection_complex(SMOOTH2, 1, [form(R2, "1", "0")])


@pytest.mark.parametrize("rA, rB, k, ranks", [
    (1, 1, 1, (1, 1)),
    (1, 1, 2, (0, 1, 1)),
    (2, 1, 2, (1, 2, 1)),
    (3, 2, 2, (3, 6, 3)),
])
def test_exterior_power_ranks(rA, rB, k, ranks):
    rng = random.Random(f"{rA}{rB}{k}")
    phi = tuple(tuple(R2.const(rng.randint(-3, 3)) + R2.parse("x") for _ in range(rB)) for _ in range(rA))
    C = exterior_power_two_term(rA, rB, phi, k, P2)
    assert C.ranks() == ranks
    assert verify_d_squared(C)


def test_exterior_power_first_is_the_map():
    phi = ((R2.parse("x"),), (R2.parse("y"),))
    C = exterior_power_two_term(2, 1, phi, 1, P2)
    assert C.differentials[0].matrix == phi
    with pytest.raises(ValidationError):
        exterior_power_two_term(2, 1, phi, 0, P2)


def test_eagon_northcott_principal():
    C = eagon_northcott(((R2.parse("x^2 + y^3"),),), P2)
    assert C.ranks() == (1, 1)
    assert cohomology_dims(C) == (INFINITE, 0)


def test_eagon_northcott_koszul():
    C = eagon_northcott(((R2.parse("x"), R2.parse("y")),), P2)
    assert C.ranks() == (1, 2, 1)
    assert verify_d_squared(C)
    assert cohomology_dims(C) == (1, 0, 0)
    assert euler_characteristic(C) == 1


def test_eagon_northcott_of_a1_differential():
    C = eagon_northcott(A1.jacobian_rows(), A1.ideal)
    assert verify_d_squared(C)
    assert cohomology_dims(C)[:2] == (1, 1)
    assert all(h == 0 for h in cohomology_dims(C)[2:])


def test_eagon_northcott_shape():
    with pytest.raises(ValidationError):
        eagon_northcott(((R2.one(),), (R2.one(),)), P2)


def test_tensor_of_principal_complexes_is_koszul():
    C = tensor(principal(R2, "x"), principal(R2, "y"))
    assert C.ranks() == (1, 2, 1)
    assert verify_d_squared(C)
    assert cohomology_dims(C) == (1, 0, 0)


def test_tensor_unit_law():
    C = build_collection_complex(A1, 2, [form(R3, "0", "0", "1")])
    T = tensor(C, unit_complex(A1.ideal))
    assert T.ranks() == C.ranks()
    assert cohomology_dims(T) == cohomology_dims(C)


def test_tensor_ambient_mismatch():
    with pytest.raises(ValidationError):
        tensor(unit_complex(P2), unit_complex(A1.ideal))


def test_corrupted_sign_is_detected():
    C = eagon_northcott(((R3.parse("x"), R3.parse("y"), R3.parse("z")),), P3)
    d2 = C.differentials[1]
    M = [list(r) for r in d2.matrix]
    M[0][0] = -M[0][0]
    bad = C.replace_differential(2, ModuleMap(d2.source, d2.target, tuple(tuple(r) for r in M)))
    assert verify_d_squared(C)
    assert not verify_d_squared(bad)


def test_exact_complex_has_zero_characteristic():
    R = FPModule.free(P2, 1)
    C = ChainComplex(P2, (R, R), (ModuleMap(R, R, ((R2.one(),),)),))
    assert cohomology_dims(C) == (0, 0)
    assert euler_characteristic(C) == 0


def _rand_poly(ctx, rng, degree=1):
    p = ctx.const(rng.randint(-3, 3))
    for v in range(ctx.nvars):
        p = p + ctx.var(v).scale(rng.randint(-3, 3))
        if degree > 1:
            p = p + (ctx.var(v) * ctx.var(rng.randrange(ctx.nvars))).scale(rng.randint(-2, 2))
    return p


def _rand_form(ctx, rng):
    return KForm.one_form(ctx, [_rand_poly(ctx, rng, 2) for _ in range(ctx.nvars)])


@pytest.mark.parametrize("seed", range(100))
def test_d_squared_random(seed):
    rng = random.Random(seed)
    kind = seed % 4
    if kind == 0:
        X = [SMOOTH2, A1, GermSpec.smooth(R3)][rng.randrange(3)]
        k = rng.randint(1, X.dim_n)
        C = build_collection_complex(X, k, [_rand_form(X.ctx, rng) for _ in range(X.dim_n - k + 1)])
    elif kind == 1:
        s, r = rng.randint(1, 2), 3
        C = eagon_northcott(tuple(tuple(_rand_poly(R3, rng) for _ in range(r)) for _ in range(s)), P3)
    elif kind == 2:
        rA, rB = rng.randint(1, 3), rng.randint(1, 2)
        phi = tuple(tuple(_rand_poly(R2, rng) for _ in range(rB)) for _ in range(rA))
        C = exterior_power_two_term(rA, rB, phi, rng.randint(1, 3), P2)
    else:
        C = tensor(build_collection_complex(SMOOTH2, 1, [_rand_form(R2, rng), _rand_form(R2, rng)]),
                   build_collection_complex(SMOOTH2, 1, [_rand_form(R2, rng), _rand_form(R2, rng)]))
    assert verify_d_squared(C)


@pytest.mark.parametrize("forms", [
    [("3*x^2", "2*y")],
    [("y", "x")],
    [("x - y^2", "y + x^3")],
])
def test_single_form_matches_form_degree_grading(forms):
    # the collection complex with k = n is (Omega^., ^w) read with t = n - i
    w = form(R2, *forms[0])
    C = build_collection_complex(SMOOTH2, 2, [w])
    dims = cohomology_dims(C)
    by_form_degree = [dims[2 - i] for i in range(3)]
    assert by_form_degree[:2] == [0, 0]
    assert sum((-1) ** (2 - i) * h for i, h in enumerate(by_form_degree)) == euler_characteristic(C)


@pytest.mark.parametrize("X, k, forms", [
    (SMOOTH2, 1, [("1", "0"), ("x", "y")]),
    (SMOOTH2, 2, [("x", "y^2")]),
    (GermSpec.smooth(R3), 2, [("1", "2", "0"), ("x", "y", "z")]),
    (GermSpec.smooth(R3), 1, [("1", "0", "0"), ("0", "1", "0"), ("x", "y", "z^2")]),
])
def test_collection_complex_matches_eagon_northcott_on_smooth(X, k, forms):
    ws = [form(X.ctx, *f) for f in forms]
    C = build_collection_complex(X, k, ws)
    E = eagon_northcott(tuple(w.coefficients() for w in ws), X.ideal)
    assert cohomology_dims(C) == cohomology_dims(E)


@given(st.integers(0, 10 ** 6))
@settings(max_examples=15, deadline=None)
def test_tensor_symmetric_and_exact_factor(seed):
    rng = random.Random(seed)
    C = build_collection_complex(SMOOTH2, 1, [_rand_form(R2, rng), _rand_form(R2, rng)])
    D = principal(R2, str(_rand_poly(R2, rng)))
    assert cohomology_dims(tensor(C, D)) == cohomology_dims(tensor(D, C))
    R = FPModule.free(P2, 1)
    exact = ChainComplex(P2, (R, R), (ModuleMap(R, R, ((R2.const(rng.randint(1, 5)),),)),))
    T = tensor(C, exact)
    dims = cohomology_dims(T)
    if all(d != INFINITE for d in dims):
        assert euler_characteristic(T, dims) == 0
