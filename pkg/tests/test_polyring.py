from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from homconf.polyring import (Poly, var, const, ZERO, ONE, poly_add, poly_mul, poly_neg, poly_equal,
                              substitute, Substitution, eval_at, solve_square_system, determinant,
                              format_poly, MissingAssignment, NoPolynomialSolution, SingularMatrix)

L, M, Dv, D1, D2 = var("L"), var("M"), var("D"), var("D1"), var("D2")
NAMES = ("L", "M", "D", "D1")


@st.composite
def polys(draw, names=NAMES, max_terms=4, max_deg=4):
    terms = []
    for _ in range(draw(st.integers(0, max_terms))):
        exps = {}
        budget = draw(st.integers(0, max_deg))
        for n in names:
            e = draw(st.integers(0, budget))
            budget -= e
            if e:
                exps[n] = e
        c = draw(st.fractions(min_value=-5, max_value=5, max_denominator=4))
        terms.append((exps, c))
    return Poly.from_terms(terms)


points = st.fixed_dictionaries({n: st.fractions(min_value=-3, max_value=3, max_denominator=5) for n in NAMES})


def test_arithmetic_examples():
    assert poly_add(L + Dv, -L) == Dv
    assert poly_mul(Dv + 2 * L, ONE) == Dv + 2 * L
    assert poly_mul(L, L + Dv) == L ** 2 + L * Dv
    assert poly_neg(L) == -L


def test_expansion_matches_sampling():
    p = poly_mul(L, L + Dv)
    for l, d in [(1, 2), (Fraction(1, 3), -4), (0, 7), (-2, Fraction(5, 2))]:
        assert eval_at(p, {"L": l, "D": d}) == l * l + l * d


def test_substitution_examples():
    assert substitute(L + Dv, Substitution("L", -M - Dv)) == -M
    assert substitute(Dv + 2 * L, Substitution("L", M - Dv)) == 2 * M - Dv
    assert substitute(L ** 2, Substitution("L", -D1 - D2)) == D1 ** 2 + 2 * D1 * D2 + D2 ** 2


def test_substitution_of_absent_variable_is_identity():
    assert substitute(Dv + 1, Substitution("L", M)) == Dv + 1


def test_simultaneous_substitution_allows_swap():
    assert (L - M).subs({"L": M, "M": L}) == M - L
    assert (L * Dv).subs({"L": -L - Dv}) == -L * Dv - Dv ** 2


def test_equality_examples():
    assert poly_equal(L + Dv, Dv + L)
    assert not poly_equal(L, -L)
    assert poly_equal((L + Dv) ** 2, L ** 2 + 2 * L * Dv + Dv ** 2)


def test_eval_examples():
    assert eval_at(Dv + 2 * L, {"D": 1, "L": 3}) == 7
    assert eval_at(ZERO, {"L": 5}) == 0
    assert eval_at((L + Dv) ** 2, {"L": Fraction(1, 2), "D": Fraction(1, 2)}) == 1


def test_eval_missing_assignment():
    with pytest.raises(MissingAssignment):
        eval_at(L + Dv, {"L": 1})


def test_canonical_form_has_no_zero_terms():
    p = (L + 1) - L
    assert p == ONE
    assert all(c != 0 for _, c in p.items())


def test_degree_query():
    p = L ** 3 * Dv + Dv ** 2
    assert p.degree("L") == 3
    assert p.degree("D") == 2
    assert p.degree() == 4


def test_solve_identity_system():
    assert solve_square_system([[ONE]], [Dv + 2 * L]) == [Dv + 2 * L]


def test_solve_symplectic_matrix():
    p, q = L + Dv, 3 * Dv ** 2
    assert solve_square_system([[ZERO, ONE], [-ONE, ZERO]], [p, q]) == [-q, p]


def test_solve_needs_polynomial_solution():
    with pytest.raises(NoPolynomialSolution):
        solve_square_system([[Dv]], [ONE])


def test_solve_singular():
    with pytest.raises(SingularMatrix):
        solve_square_system([[Dv, Dv], [ONE, ONE]], [ONE, ONE])


def test_determinant_small():
    assert determinant([[ZERO, ONE], [-ONE, ZERO]]) == ONE
    assert determinant([[Dv, L], [ONE, ONE]]) == Dv - L


def test_format_examples():
    assert format_poly(ZERO) == "0"
    assert format_poly(-L + const(Fraction(3, 4))) == "-L + 3/4"
    assert format_poly(2 * L ** 2 * Dv - Fraction(3, 4) * M + 1) == "2*L^2*D - 3/4*M + 1"


@settings(max_examples=1000, deadline=None)
@given(polys(), polys(), polys())
def test_ring_laws(p, q, r):
    assert poly_equal((p + q) + r, p + (q + r))
    assert poly_equal(p + q, q + p)
    assert poly_equal((p * q) * r, p * (q * r))
    assert poly_equal(p * q, q * p)
    assert poly_equal(p * (q + r), p * q + p * r)
    assert poly_equal(p - p, ZERO)


@settings(max_examples=200, deadline=None)
@given(polys(), polys(), points)
def test_evaluation_is_multiplicative(p, q, v):
    assert eval_at(p * q, v) == eval_at(p, v) * eval_at(q, v)


@settings(max_examples=200, deadline=None)
@given(polys(), polys(names=("M", "D"), max_deg=2), points)
def test_substitute_then_eval(p, repl, v):
    lhs = eval_at(substitute(p, Substitution("L", repl)), v)
    composed = dict(v)
    composed["L"] = eval_at(repl, v)
    assert lhs == eval_at(p, composed)


@settings(max_examples=60, deadline=None)
@given(st.lists(polys(names=("D",), max_deg=2), min_size=4, max_size=4),
       st.lists(polys(names=("D", "L"), max_deg=2), min_size=2, max_size=2))
def test_solutions_satisfy_the_system(entries, b):
    Mx = [entries[:2], entries[2:]]
    try:
        x = solve_square_system(Mx, b)
    except (SingularMatrix, NoPolynomialSolution):
        return
    for row, rhs in zip(Mx, b):
        assert row[0] * x[0] + row[1] * x[1] == rhs
