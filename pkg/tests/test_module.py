import random

import pytest
from hypothesis import given, settings, strategies as st

from homconf.polyring import var, ZERO, ONE, random_poly
from homconf.module import (FreeConformalModule, ModuleElement, TensorElement, Endomorphism,
                            ConformalBilinearForm, apply_endo, tensor_apply_endo_leg, eliminate_lambda,
                            check_form_skew, check_form_nondegenerate, ModuleMismatch)

L, Dv, D1, D2, D3, M = var("L"), var("D"), var("D1"), var("D2"), var("D3"), var("M")
E1 = FreeConformalModule(("e",))
LE = FreeConformalModule(("L", "E"))
AB = FreeConformalModule(("e1", "e2"))


def test_module_invariants():
    with pytest.raises(ValueError):
        FreeConformalModule(("a", "a"))
    assert LE.rank == 2 and LE.index("E") == 1
    assert LE.dual().basis == ("L'", "E'")


def test_element_rank_must_match():
    with pytest.raises(Exception):
        ModuleElement(LE, (ONE,))


def test_apply_identity():
    x = LE.element([Dv, L + 1])
    assert apply_endo(Endomorphism.identity(LE), x) == x


def test_apply_polynomial_twist():
    alpha = Endomorphism.diagonal(LE, [2 * Dv, ONE])
    assert apply_endo(alpha, LE.gen("L")) == LE.element([2 * Dv, ZERO])


def test_apply_permutation():
    swap = Endomorphism(AB, ((ZERO, ONE), (ONE, ZERO)))
    assert apply_endo(swap, AB.gen(0)) == AB.gen(1)


def test_apply_rank_mismatch():
    with pytest.raises(ModuleMismatch):
        apply_endo(Endomorphism.identity(E1), LE.gen(0))


def test_tensor_leg_examples():
    ee = TensorElement.pure([E1.gen(0), E1.gen(0)])
    assert tensor_apply_endo_leg(Endomorphism.identity(E1), ee, 1) == ee
    assert tensor_apply_endo_leg(Endomorphism(E1, ((Dv,),)), ee, 1) == ee.scale(D2)
    w = TensorElement.pure([AB.gen(1), AB.gen(0)])
    assert tensor_apply_endo_leg(Endomorphism.diagonal(AB, [ONE, Dv]), w, 0) == w.scale(D1)


def test_tensor_leg_out_of_range():
    ee = TensorElement.pure([E1.gen(0), E1.gen(0)])
    with pytest.raises(IndexError):
        tensor_apply_endo_leg(Endomorphism.identity(E1), ee, 2)


def test_eliminate_lambda_examples():
    ee = TensorElement.pure([E1.gen(0), E1.gen(0)])
    assert eliminate_lambda(ee.scale(L), "L", -D1 - D2) == ee.scale(-D1 - D2)
    assert eliminate_lambda(ee.scale(L + D1), "L", -D1 - D2) == ee.scale(-D2)
    eee = TensorElement.pure([E1.gen(0)] * 3)
    assert eliminate_lambda(eee.scale(M ** 2), "M", -D1 - D2 - D3) == eee.scale((D1 + D2 + D3) ** 2)


def test_eliminate_unknown_parameter():
    with pytest.raises(KeyError):
        eliminate_lambda(TensorElement.zero((E1, E1)), "D1", ONE)


def test_swap_of_tensor():
    w = TensorElement.pure([AB.gen(0), AB.gen(1)]).scale(D1)
    assert w.swap12() == TensorElement.pure([AB.gen(1), AB.gen(0)]).scale(D2)


def test_form_skew_examples():
    assert check_form_skew(ConformalBilinearForm.zero(LE)).passed
    assert check_form_skew(ConformalBilinearForm(LE, ((ZERO, ONE), (-ONE, ZERO)))).passed
    rep = check_form_skew(ConformalBilinearForm(LE, ((ZERO, L), (-L, ZERO))))
    assert not rep.passed
    assert {c.tuple: c.residual for c in rep.failures()} == {("L", "E"): 2 * L, ("E", "L"): -2 * L}


def test_form_with_equal_lambda_entries_is_skew():
    # ω(L,E)_λ = ω(E,L)_λ = λ satisfies ω(v,w)_λ = -ω(w,v)_{-λ}
    assert check_form_skew(ConformalBilinearForm(LE, ((ZERO, L), (L, ZERO)))).passed


def test_form_nondegenerate_examples():
    rep = check_form_nondegenerate(ConformalBilinearForm(LE, ((ZERO, ONE), (-ONE, ZERO))))
    assert rep.passed and rep.checks[0].residual == ONE
    assert not check_form_nondegenerate(ConformalBilinearForm.zero(LE)).passed
    rank1 = check_form_nondegenerate(ConformalBilinearForm(E1, ((L,),)))
    assert not rank1.passed and rank1.checks[0].residual == -Dv


def _random_endo(rng, m):
    return Endomorphism(m, tuple(tuple(random_poly(rng, ("D",), 2, 0.6, 2) for _ in range(m.rank))
                                 for _ in range(m.rank)))


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 10 ** 6))
def test_composition_matches_sequential_application(seed):
    rng = random.Random(seed)
    e, f = _random_endo(rng, AB), _random_endo(rng, AB)
    x = AB.element([random_poly(rng, ("D", "L"), 2, 0.6, 2) for _ in range(2)])
    assert apply_endo(e.compose(f), x) == apply_endo(e, apply_endo(f, x))


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 10 ** 6))
def test_distinct_legs_commute(seed):
    rng = random.Random(seed)
    e, f = _random_endo(rng, AB), _random_endo(rng, AB)
    w = TensorElement((AB, AB, AB), {(i, j, k): random_poly(rng, ("D1", "D2", "D3"), 1, 0.5, 2)
                                     for i in range(2) for j in range(2) for k in range(2)})
    a = tensor_apply_endo_leg(f, tensor_apply_endo_leg(e, w, 0), 2)
    b = tensor_apply_endo_leg(e, tensor_apply_endo_leg(f, w, 2), 0)
    assert a == b


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 10 ** 6))
def test_elimination_commutes_with_spectator_leg(seed):
    rng = random.Random(seed)
    e = _random_endo(rng, AB)
    w = TensorElement((AB, AB, AB), {(i, j, k): random_poly(rng, ("D1", "D2", "D3", "L"), 2, 0.4, 2)
                                     for i in range(2) for j in range(2) for k in range(2)})
    a = eliminate_lambda(tensor_apply_endo_leg(e, w, 2), "L", -D1 - D2)
    b = tensor_apply_endo_leg(e, eliminate_lambda(w, "L", -D1 - D2), 2)
    assert a == b


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 10 ** 6))
def test_form_skew_involution(seed):
    rng = random.Random(seed)
    mat = tuple(tuple(random_poly(rng, ("L",), 2, 0.6, 2) for _ in range(2)) for _ in range(2))
    omega = ConformalBilinearForm(AB, mat)
    assert check_form_skew(omega).passed == check_form_skew(omega.flipped()).passed
