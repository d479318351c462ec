import random

import pytest

from homconf.polyring import ZERO, ONE
from homconf.module import TensorElement, FreeConformalModule
from homconf.engine import StructureTable, HomConformalAlgebra, check_left_symmetry
from homconf.bialgebra import (
    CoalgebraData, RTensor, TwistFixpointViolated, check_coalgebra, dual_algebra_from_coalgebra,
    dual_coalgebra_from_algebra, check_cocycle, check_bialgebra, coboundary_cobracket, compute_double_bracket,
    compute_J_delta, check_coboundary_obstruction, check_bialgebra_transport, bialgebra_double,
    canonical_pairing_form, apply_coproduct,
)
from homconf.oracle import (oracle_coalgebra, oracle_cocycle, oracle_J_delta, oracle_tensor_equal,
                            numeric_double_bracket, numeric_J_delta, numeric_coboundary)
from homconf.corpus import generate_corpus, base_library, random_fixed_tensor, dual_pair_instances

from conftest import L, Dv, D1, D2, D3, lambda_product, unit1, make_alg

CORPUS = [i.algebra for i in generate_corpus(40, seed=11) if i.certified] + base_library()


def ee(alg, i=0, j=0):
    return TensorElement.pure([alg.gen(i), alg.gen(j)])


# -- coalgebras and duals -----------------------------------------------------------

def test_zero_coalgebra_passes():
    E = unit1().module
    assert check_coalgebra(CoalgebraData.zero(E)).passed


def test_dual_coalgebra_of_unit_product():
    c = dual_coalgebra_from_algebra(unit1())
    assert c.module.basis == ("e'",)
    assert c.delta[0] == TensorElement.pure([c.module.gen(0), c.module.gen(0)])
    assert check_coalgebra(c).passed


def test_dual_coalgebra_of_lambda_product():
    c = dual_coalgebra_from_algebra(lambda_product())
    a, b = c.module.gen(0), c.module.gen(1)
    assert c.delta[0] == TensorElement.zero((c.module, c.module))
    assert c.delta[1] == TensorElement.pure([a, b]).scale(D1)


def test_dual_algebra_of_dual_coalgebra_table():
    c = dual_coalgebra_from_algebra(lambda_product())
    back = dual_algebra_from_coalgebra(c)
    assert back.module.basis == ("a", "b")
    assert back.product.entry(0, 1) == (ZERO, L)


def test_round_trip_on_corpus():
    for alg in CORPUS:
        if alg.rank <= 3:
            back = dual_algebra_from_coalgebra(dual_coalgebra_from_algebra(alg))
            assert back.product == alg.product
            assert back.alpha == alg.alpha


def test_coalgebra_verdict_tracks_dual_algebra():
    for alg in CORPUS[:20]:
        c = dual_coalgebra_from_algebra(alg)
        # coassociativity of the dual coproduct is left-symmetry of the product
        assert check_coalgebra(c).passed == check_left_symmetry(alg).passed


def test_apply_coproduct_derivation_rule():
    c = dual_coalgebra_from_algebra(unit1())
    x = c.module.gen(0).scale(Dv)
    assert apply_coproduct(c, x) == c.delta[0].scale(D1 + D2)


def test_coalgebra_rejects_foreign_variables():
    E = unit1().module
    with pytest.raises(ValueError):
        CoalgebraData(E, unit1().alpha, (TensorElement.pure([E.gen(0), E.gen(0)]).scale(D3),))


def test_coalgebra_oracle_agrees():
    for alg in CORPUS[:25]:
        c = dual_coalgebra_from_algebra(alg)
        assert oracle_coalgebra(c, samples=30, seed=1).passed == check_coalgebra(c).passed


# -- coboundaries ----------------------------------------------------------------------

def test_coboundary_of_constant_r():
    U = unit1()
    assert coboundary_cobracket(U, ee(U)).delta[0] == ee(U)


def test_coboundary_of_d1_r():
    U = unit1()
    assert coboundary_cobracket(U, RTensor(ee(U).scale(D1))).delta[0] == ee(U).scale(-D2)


def test_coboundary_requires_fixed_r():
    A = make_alg(["a", "b"], {(0, 1): (ZERO, L)}, alpha=[1, 3])
    with pytest.raises(TwistFixpointViolated):
        coboundary_cobracket(A, ee(A, 1, 1))
    assert not RTensor(ee(A, 1, 1)).is_twist_fixed(A.alpha)
    assert RTensor(ee(A, 0, 0)).is_twist_fixed(A.alpha)


def test_coboundaries_are_cocycles():
    rng = random.Random(7)
    for _ in range(25):
        A = rng.choice(CORPUS)
        c = coboundary_cobracket(A, random_fixed_tensor(rng, A, 1))
        assert check_cocycle(A, c).passed


def test_cocycle_oracle_agrees():
    rng = random.Random(8)
    for _ in range(15):
        A = rng.choice(CORPUS)
        c = coboundary_cobracket(A, random_fixed_tensor(rng, A, 1))
        assert oracle_cocycle(A, c, samples=20, seed=2).passed == check_cocycle(A, c).passed
        assert oracle_coalgebra(c, samples=20, seed=2).passed == check_coalgebra(c).passed


def test_numeric_coboundary_matches_symbolic():
    rng = random.Random(9)
    for _ in range(10):
        A = rng.choice(CORPUS)
        r = random_fixed_tensor(rng, A, 1)
        sym = coboundary_cobracket(A, r)
        num = numeric_coboundary(A, r)
        for i in range(A.rank):
            assert oracle_tensor_equal(sym.delta[i], num.delta[i], seed=i)


# -- obstruction ----------------------------------------------------------------------

def test_double_bracket_matches_numeric_expansion():
    rng = random.Random(10)
    for _ in range(15):
        A = rng.choice(CORPUS)
        r = random_fixed_tensor(rng, A, 1)
        assert oracle_tensor_equal(compute_double_bracket(A, r), numeric_double_bracket(A, r), seed=3)


def test_J_delta_matches_numeric_expansion():
    rng = random.Random(11)
    for _ in range(15):
        A = rng.choice(CORPUS)
        r = random_fixed_tensor(rng, A, 1)
        for a in range(A.rank):
            assert oracle_tensor_equal(compute_J_delta(A, r, a), numeric_J_delta(A, r, a), seed=a)


def test_J_delta_by_label():
    U = unit1()
    r = ee(U).scale(D1)
    assert compute_J_delta(U, r, "e") == compute_J_delta(U, r, 0)


def test_symmetric_r_obstruction_is_coalgebra_residual():
    rng = random.Random(12)
    for _ in range(20):
        A = rng.choice(CORPUS)
        r = random_fixed_tensor(rng, A, 1)
        r = r + r.swap12()
        cmp = check_coboundary_obstruction(A, r)
        for c1, c2 in zip(cmp.coalgebra.checks, cmp.obstruction.checks):
            assert (c1.residual + c2.residual).is_zero()
        assert cmp.agree


def test_obstruction_counterexample():
    # e_λe = e, α = id, r = ∂e⊗e: the coboundary is a coalgebra but J_δ does not vanish
    U = unit1()
    r = ee(U).scale(D1)
    cmp = check_coboundary_obstruction(U, r)
    assert cmp.coalgebra.passed
    J = compute_J_delta(U, r, 0)
    e3 = TensorElement.pure([U.gen(0)] * 3)
    assert J == e3.scale(-8 * D3 * (D1 - D2))
    assert not oracle_J_delta(U, r, samples=10, seed=1).passed
    assert not cmp.agree
    assert cmp.report().checks[0].tuple == ("coalgebra", "J!=0")


def test_double_bracket_of_counterexample():
    U = unit1()
    w = compute_double_bracket(U, ee(U).scale(D1))
    assert w == TensorElement.pure([U.gen(0)] * 3).scale(D3 * (D2 - D1))


def test_zero_r_has_zero_obstruction():
    for A in base_library():
        z = TensorElement.zero((A.module, A.module))
        cmp = check_coboundary_obstruction(A, z)
        assert cmp.coalgebra.passed and cmp.obstruction.passed


# -- bialgebras ------------------------------------------------------------------------

def test_bialgebra_with_zero_dual():
    A = unit1()
    md = A.module.dual()
    Z = HomConformalAlgebra(md, StructureTable.zero(md), A.alpha.dual(md), "left-symmetric", "Z")
    assert check_bialgebra(A, Z).passed
    tr = check_bialgebra_transport(A, Z)
    assert tr.agree and all(tr.verdicts.values())


def test_canonical_form_shape():
    m = FreeConformalModule(("a", "b", "a'", "b'"))
    w = canonical_pairing_form(m, 2)
    assert w.matrix[0][2] == ONE and w.matrix[2][0] == -ONE
    assert w.matrix[0][1] == ZERO and w.matrix[0][3] == ZERO


def test_double_is_lie_and_split():
    A, B = dual_pair_instances()[0]
    double, split, omega = bialgebra_double(A, B)
    assert double.rank == 2 * A.rank
    assert list(split[0]) == list(A.basis)


def test_transport_agrees_for_involutive_twists():
    for A, B in dual_pair_instances():
        if A.alpha.compose(A.alpha).is_identity():
            assert check_bialgebra_transport(A, B).agree, (A.name, B.name)


def test_transport_split_for_non_involutive_twist():
    pairs = {(a.name, b.name): (a, b) for a, b in dual_pair_instances()}
    v = check_bialgebra_transport(*pairs[("lamt", "lam'")]).verdicts
    assert v == {"bialgebra": False, "lie-pair": True, "lsc-pair": False, "parakahler": True}
