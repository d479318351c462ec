import random
from pathlib import Path

import pytest

from homconf.polyring import var, ZERO, ONE
from homconf.module import FreeConformalModule, Endomorphism, ConformalBilinearForm
from homconf.engine import StructureTable, HomConformalAlgebra

FIXTURES = Path(__file__).parent / "fixtures"

L, M, Dv = var("L"), var("M"), var("D")
D1, D2, D3 = var("D1"), var("D2"), var("D3")


def make_alg(labels, entries, alpha=None, kind="left-symmetric", name="A"):
    m = FreeConformalModule(tuple(labels))
    if alpha is None:
        a = Endomorphism.identity(m)
    elif isinstance(alpha, Endomorphism):
        a = alpha
    else:
        a = Endomorphism.diagonal(m, alpha)
    return HomConformalAlgebra(m, StructureTable(m, m, m, entries), a, kind, name)


def lambda_product(c=1):
    """a_λ b = λ b on basis (a, b), α = diag(c, 1)."""
    return make_alg(["a", "b"], {(0, 1): (ZERO, L)}, alpha=[c, 1], name="Alam")


def lambda_bracket():
    return make_alg(["a", "b"], {(0, 1): (ZERO, L), (1, 0): (ZERO, L + Dv)}, kind="lie", name="Glam")


def virasoro_like(f=ONE, g=ONE):
    """[L_λ L] = (∂+2λ)E with α(L) = f L, α(E) = g E."""
    m = FreeConformalModule(("L", "E"))
    alpha = Endomorphism(m, ((f, ZERO), (ZERO, g)))
    return HomConformalAlgebra(m, StructureTable(m, m, m, {(0, 0): (ZERO, Dv + 2 * L)}), alpha, "lie", "R")


def standard_form(module):
    return ConformalBilinearForm(module, ((ZERO, ONE), (-ONE, ZERO)))


def unit1(alpha=1):
    return make_alg(["e"], {(0, 0): (ONE,)}, alpha=[alpha], name="U")


@pytest.fixture
def rng():
    return random.Random(20240611)


ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
