import random

import pytest
from hypothesis import given, settings, strategies as st

from homconf.polyring import ZERO, random_poly
from homconf.module import FreeConformalModule, TensorElement, ConformalBilinearForm
from homconf.engine import StructureTable
from homconf.constructions import regular_module, sub_adjacent, FiniteHomAlgebra
from homconf.bialgebra import RTensor, dual_coalgebra_from_algebra
from homconf.surface import (
    SurfaceError, Task, DefinitionFile, parse_poly, print_poly, parse_element, print_element, parse_tensor,
    print_tensor, parse_definition, print_definition, load_definition,
)
from homconf.corpus import generate_corpus, random_lsc_pair, random_lie_pair, random_fixed_tensor

from conftest import FIXTURES, L, M, Dv, D1, D2

VARS = ("L", "M", "N", "D", "D1", "D2", "D3")


def test_parse_poly_examples():
    assert parse_poly("D + 2*L") == Dv + 2 * L
    assert parse_poly("0") == ZERO
    assert parse_poly("(L + D)^2 - L^2 - 2*L*D") == Dv ** 2


def test_parse_poly_precedence_and_rationals():
    assert parse_poly("2*L^2") == 2 * L ** 2
    assert parse_poly("-3/4*M + 1") == parse_poly("1 - 3/4*M")
    assert print_poly(parse_poly("-3/4*M + 1")) == "-3/4*M + 1"
    assert parse_poly("  L*  M ") == L * M
    assert parse_poly("-(L - D)") == Dv - L


def test_parse_poly_unicode_aliases():
    assert parse_poly("∂ + 2*λ") == Dv + 2 * L
    assert parse_poly("μ*∂₁") == M * D1


def test_print_poly_format():
    assert print_poly(2 * L ** 2 * Dv - M + 1) == "2*L^2*D - M + 1"
    assert print_poly(ZERO) == "0"


@pytest.mark.parametrize("src, fragment", [
    ("L +", "column"),
    ("2*X", "unknown variable"),
    ("(L", "column"),
    ("L^-1", "column"),
])
def test_parse_poly_errors(src, fragment):
    with pytest.raises(SurfaceError, match=fragment):
        parse_poly(src, line=1)


@settings(max_examples=300, deadline=None)
@given(st.integers(0, 10 ** 9), st.integers(0, 4))
def test_poly_round_trip(seed, degree):
    rng = random.Random(seed)
    names = tuple(rng.sample(VARS, rng.randint(1, 3)))
    p = random_poly(rng, names, degree, 0.5, 5)
    assert parse_poly(print_poly(p)) == p


def test_element_round_trip():
    m = FreeConformalModule(("L", "E"))
    x = m.element([Dv + 2 * L, -L])
    s = print_element(x)
    assert parse_element(s, m) == x
    assert parse_element("0", m).is_zero()


def test_element_undeclared_label():
    m = FreeConformalModule(("a", "b"))
    with pytest.raises(SurfaceError, match="undeclared basis label 'c'"):
        parse_element("L*a + c", m)


def test_tensor_round_trip():
    m = FreeConformalModule(("a", "b"))
    w = TensorElement.pure([m.gen(0), m.gen(1)]).scale(D1 - D2) + TensorElement.pure([m.gen(1), m.gen(1)])
    assert parse_tensor(print_tensor(w), (m, m)) == w


# -- definition files ---------------------------------------------------------------------

def test_fixture_with_bracket_parses():
    d = load_definition(FIXTURES / "rank2_symplectic.def")
    R = d.algebras["R"]
    assert R.kind == "lie"
    assert R.product.entry(0, 0) == (ZERO, Dv + 2 * L)
    assert d.forms["w"][0] == "R"
    assert [t.verb for t in d.tasks] == ["check", "check-symplectic"]
    assert d.tasks[0].axioms == ("skew", "jacobi", "multiplicative")


def test_empty_algebra_is_abelian():
    d = parse_definition("[algebra X]\nrank 1\nbasis e\n")
    X = d.algebras["X"]
    assert X.rank == 1 and X.product.is_zero() and X.alpha.is_identity()


def test_undeclared_label_error_has_location():
    src = "[algebra G]\nkind lie\nbasis e1 e2\n[e1, e2] = e3\n"
    with pytest.raises(SurfaceError) as exc:
        parse_definition(src)
    assert "e3" in str(exc.value)
    assert exc.value.line == 4


def test_duplicate_product_line():
    src = "[algebra A]\nbasis e\ne . e = e\ne . e = 2*e\n"
    with pytest.raises(SurfaceError, match="duplicate"):
        parse_definition(src)


def test_rank_mismatch():
    with pytest.raises(SurfaceError, match="rank"):
        parse_definition("[algebra A]\nrank 2\nbasis e\n")


def test_unknown_reference_in_tasks():
    with pytest.raises(SurfaceError):
        parse_definition("[algebra A]\nbasis e\n[tasks]\ncheck B\n")


def test_fixtures_round_trip():
    for path in sorted(FIXTURES.glob("*.def")):
        d = load_definition(path)
        text = print_definition(d)
        again = parse_definition(text)
        assert again == d, path.name
        assert print_definition(again) == text


def rich_definition(seed: int) -> DefinitionFile:
    """Every declaration kind, built from corpus algebras."""
    rng = random.Random(seed)
    d = DefinitionFile()
    algs = [i.algebra for i in generate_corpus(12, seed=seed, max_rank=3)]
    for A in algs:
        d.algebras[A.name] = A
        d.tasks.append(Task("check", (A.name,)))
    A, B = algs[0], algs[1]
    d.reps[f"{A.name}_reg"] = regular_module(A, name=f"{A.name}_reg")
    c = dual_coalgebra_from_algebra(B, name=f"{B.name}_co")
    d.coalgebras[c.name] = c
    d.tensors["r"] = (A.name, RTensor(random_fixed_tensor(rng, A, 2)))
    d.pairs["p"] = random_lsc_pair(rng, A, B)
    gA, gB = sub_adjacent(A, certify=False, name="gA"), sub_adjacent(B, certify=False, name="gB")
    d.algebras["gA"], d.algebras["gB"] = gA, gB
    d.pairs["q"] = random_lie_pair(rng, gA, gB)
    n = A.rank
    d.forms["w"] = (A.name, ConformalBilinearForm(A.module, tuple(
        tuple(random_poly(rng, ("L",), 2, 0.5, 3) for _ in range(n)) for _ in range(n))))
    d.finite["F"] = FiniteHomAlgebra(("x", "y"), {(0, 0): (1, 0), (1, 0): (0, -2)}, ((1, 0), (0, 3)))
    d.splits["s"] = (tuple(A.basis[:1]), tuple(A.basis[1:]))
    d.tasks.append(Task("check-pair", ("p",)))
    d.tasks.append(Task("check-finite", ("F",)))
    return d


@pytest.mark.parametrize("seed", [1, 2, 3, 20240611])
def test_rich_definition_round_trip(seed):
    d = rich_definition(seed)
    text = print_definition(d)
    again = parse_definition(text)
    assert again == d
    assert print_definition(again) == text


def test_corpus_round_trip():
    for inst in generate_corpus(60, seed=4):
        d = DefinitionFile()
        d.algebras[inst.name] = inst.algebra
        again = parse_definition(print_definition(d))
        assert again.algebras[inst.name] == inst.algebra
        assert again.algebras[inst.name].product == inst.algebra.product


def test_task_str():
    assert str(Task("check", ("A",), ("skew", "jacobi"))) == "check A axioms skew,jacobi"


def test_omitted_products_are_zero():
    d = parse_definition("[algebra A]\nbasis a b\na . b = L*b\n")
    t = d.algebras["A"].product
    assert t.entry(1, 0) is None and t.entry(0, 1) == (ZERO, L)
    assert isinstance(t, StructureTable)
