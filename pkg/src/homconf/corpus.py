"""Randomized instance generation for the property suites and the ``corpus`` command.

Certified instances are produced from a small library of known left-symmetric
conformal algebras by operations that preserve the axioms: direct sums, twisting
by automorphisms, and unimodular changes of basis over C[∂].  Broken instances
perturb one structure polynomial of a certified one.  Every instance is
re-certified, so a label never depends on the generator being right.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Sequence

from .polyring import Poly, var, ZERO, ONE, random_poly
from .module import FreeConformalModule, ModuleElement, TensorElement, Endomorphism
from .engine import StructureTable, HomConformalAlgebra, lambda_apply, certified
from .constructions import (RepresentationData, MatchedPairData, FiniteHomAlgebra, current_algebra,
                            direct_sum, regular_module)

__all__ = [
    "CorpusInstance", "base_library", "table_degree", "alg_degree", "change_basis", "twist_by",
    "perturb", "generate_corpus", "random_table", "random_rep", "random_lie_pair",
    "random_lsc_pair", "random_fixed_tensor", "abelian",
]

L, Dv = var("L"), var("D")


@dataclass(frozen=True)
class CorpusInstance:
    name: str
    algebra: HomConformalAlgebra
    certified: bool
    origin: str


def table_degree(t: StructureTable) -> int:
    deg = 0
    for vec in t.entries.values():
        for p in vec:
            if p:
                deg = max(deg, max(sum(e.values()) for e, _ in p.items()))
    return deg


def alg_degree(alg: HomConformalAlgebra) -> int:
    deg = table_degree(alg.product)
    for row in alg.alpha.matrix:
        for p in row:
            if p:
                deg = max(deg, max(sum(e.values()) for e, _ in p.items()))
    return deg


def abelian(labels: Sequence[str], kind: str = "left-symmetric", name: str = "Ab") -> HomConformalAlgebra:
    m = FreeConformalModule(tuple(labels))
    return HomConformalAlgebra(m, StructureTable.zero(m), Endomorphism.identity(m), kind, name)


def _alg(labels, entries, alpha=None, name="A", kind="left-symmetric"):
    m = FreeConformalModule(tuple(labels))
    a = Endomorphism.identity(m) if alpha is None else Endomorphism.diagonal(m, alpha)
    return HomConformalAlgebra(m, StructureTable(m, m, m, entries), a, kind, name)


def _finite(basis, mult, twist_diag, kind="left-symmetric"):
    n = len(basis)
    twist = [[twist_diag[i] if i == j else 0 for j in range(n)] for i in range(n)]
    return FiniteHomAlgebra(tuple(basis), mult, twist, kind)


def base_library() -> list[HomConformalAlgebra]:
    """Hand-picked left-symmetric conformal algebras; each is certified on use."""
    lib = [
        _alg(["e"], {}, name="ab1"),
        _alg(["e"], {(0, 0): (ONE,)}, name="unit1"),
        _alg(["e"], {(0, 0): (L + Dv,)}, name="vir1"),
        _alg(["a", "b"], {(0, 1): (ZERO, L)}, name="lam"),
        _alg(["a", "b"], {(0, 1): (ZERO, L * L - 1)}, name="lamq"),
        _alg(["a", "b"], {(0, 1): (ZERO, L)}, alpha=[1, 3], name="lamt"),
        _alg(["a", "b"], {(0, 0): (L + Dv, ZERO), (0, 1): (ZERO, L + Dv)}, name="virmod"),
    ]
    fins = [
        ("e11", _finite(["e1", "e2"], {(0, 0): [1, 0]}, [1, 1])),
        ("e11t", _finite(["e1", "e2"], {(0, 0): [1, 0]}, [1, 2])),
        ("unit2", _finite(["e1", "e2"], {(0, 0): [1, 0], (0, 1): [0, 1]}, [1, 1])),
        ("runit2", _finite(["e1", "e2"], {(0, 0): [1, 0], (1, 0): [0, 1]}, [1, 1])),
        ("nil3", _finite(["e1", "e2", "e3"], {(0, 1): [0, 0, 1]}, [1, 1, 1])),
    ]
    for name, fin in fins:
        if not fin.axiom_failures():
            lib.append(current_algebra(fin, name=name, check=False))
    return [a for a in lib if certified(a)]


def _elementary(m: FreeConformalModule, i: int, j: int, q: Poly) -> tuple[Endomorphism, Endomorphism]:
    """e_i += q(∂) e_j as a column operation, with its inverse."""
    n = m.rank

    def mat(sign):
        rows = [[ONE if r == c else ZERO for c in range(n)] for r in range(n)]
        rows[j][i] = q * sign
        return Endomorphism(m, tuple(tuple(r) for r in rows))
    return mat(1), mat(-1)


def change_basis(alg: HomConformalAlgebra, P: Endomorphism, Pinv: Endomorphism, name: str | None = None):
    """The same algebra written in the basis f_j = P(e_j)."""
    n = alg.rank
    entries = {}
    f = [P.image(j) for j in range(n)]
    for i in range(n):
        for j in range(n):
            prod = lambda_apply(alg.product, f[i], f[j], "L")
            img = _apply(Pinv, prod)
            if not img.is_zero():
                entries[(i, j)] = img.coeffs
    alpha = Pinv.compose(alg.alpha).compose(P)
    return alg.with_(product=StructureTable(alg.module, alg.module, alg.module, entries),
                     alpha=alpha, name=name or alg.name)


def _apply(e: Endomorphism, x: ModuleElement) -> ModuleElement:
    out = x.module.zero()
    for j, c in x.nonzero():
        out = out + e.image(j).scale(c)
    return out


def twist_by(alg: HomConformalAlgebra, beta: Endomorphism, name: str | None = None) -> HomConformalAlgebra:
    """Yau twist: product β(a_λb) and twist β∘α, for β an automorphism commuting with α."""
    entries = {k: _apply(beta, ModuleElement(alg.module, v)).coeffs for k, v in alg.product.entries.items()}
    return alg.with_(product=StructureTable(alg.module, alg.module, alg.module, entries),
                     alpha=beta.compose(alg.alpha), name=name or alg.name)


def perturb(alg: HomConformalAlgebra, rng: random.Random, degree: int = 1) -> HomConformalAlgebra:
    """Add a random nonzero polynomial to one structure coefficient."""
    n = alg.rank
    i, j, k = rng.randrange(n), rng.randrange(n), rng.randrange(n)
    bump = ZERO
    while not bump:
        bump = random_poly(rng, ("L", "D"), degree, 0.7, 2)
    vec = list(alg.product.entries.get((i, j), (ZERO,) * n))
    vec[k] = vec[k] + bump
    entries = dict(alg.product.entries)
    entries[(i, j)] = tuple(vec)
    return alg.with_(product=StructureTable(alg.module, alg.module, alg.module, entries))


def _relabel(alg: HomConformalAlgebra, labels: Sequence[str], name: str) -> HomConformalAlgebra:
    m = FreeConformalModule(tuple(labels))
    t = StructureTable(m, m, m, alg.product.entries)
    return HomConformalAlgebra(m, t, Endomorphism(m, alg.alpha.matrix), alg.kind, name)


def _random_unimodular(rng, m: FreeConformalModule, steps: int, degree: int):
    P, Pinv = Endomorphism.identity(m), Endomorphism.identity(m)
    if m.rank < 2:
        return P, Pinv
    for _ in range(steps):
        i, j = rng.sample(range(m.rank), 2)
        q = random_poly(rng, ("D",), degree, 0.7, 2) or ONE
        E, Einv = _elementary(m, i, j, q)
        P, Pinv = P.compose(E), Einv.compose(Pinv)
    return P, Pinv


def _candidate(rng: random.Random, lib: list[HomConformalAlgebra], max_rank: int, degree: int):
    small = [a for a in lib if a.rank <= max_rank]
    alg = rng.choice(small)
    origin = alg.name
    if alg.rank < max_rank and rng.random() < 0.35:
        other = rng.choice([a for a in small if a.rank <= max_rank - alg.rank])
        alg = direct_sum(alg, other, name=f"{alg.name}+{other.name}")
        origin = alg.name
    if alg.alpha.is_identity() and rng.random() < 0.3:
        c = rng.choice([2, -1, 3])
        beta = Endomorphism.diagonal(alg.module, [c] * alg.rank)
        cand = twist_by(alg, beta)
        if certified(cand):
            alg, origin = cand, origin + f"~twist{c}"
    if alg.rank >= 2 and rng.random() < 0.7:
        P, Pinv = _random_unimodular(rng, alg.module, rng.randint(1, 2), 1)
        cand = change_basis(alg, P, Pinv)
        if alg_degree(cand) <= degree:
            alg, origin = cand, origin + "~basis"
    return alg, origin


def generate_corpus(count: int, seed: int, max_rank: int = 3, degree: int = 2,
                    broken_fraction: float = 0.3) -> list[CorpusInstance]:
    """``count`` instances of rank ≤ max_rank and coefficient degree ≤ degree.

    Roughly ``broken_fraction`` of them are perturbations; the ``certified`` flag
    records the engine verdict, not the intent.
    """
    rng = random.Random(seed)
    lib = [a for a in base_library() if alg_degree(a) <= degree]
    out = []
    k = 0
    while len(out) < count:
        alg, origin = _candidate(rng, lib, max_rank, degree)
        if rng.random() < broken_fraction:
            alg, origin = perturb(alg, rng, min(degree, 1)), origin + "~perturbed"
        labels = [f"e{i + 1}" for i in range(alg.rank)]
        name = f"c{k:03d}"
        alg = _relabel(alg, labels, name)
        k += 1
        out.append(CorpusInstance(name, alg, certified(alg), origin))
    return out


# -- random auxiliary data ---------------------------------------------------

def random_table(rng: random.Random, left, right, out, degree: int = 1, zero_prob: float = 0.5) -> StructureTable:
    entries = {}
    for i in range(left.rank):
        for j in range(right.rank):
            if rng.random() < zero_prob:
                continue
            entries[(i, j)] = tuple(random_poly(rng, ("L", "D"), degree, 0.6, 2) for _ in range(out.rank))
    return StructureTable(left, right, out, entries)


def random_rep(rng: random.Random, alg: HomConformalAlgebra, degree: int = 1) -> RepresentationData:
    """Either the regular module, a scaled copy, or random tables (usually not a module)."""
    roll = rng.random()
    if roll < 0.35:
        return regular_module(alg)
    m = FreeConformalModule(tuple(f"m{i + 1}" for i in range(rng.randint(1, 2))))
    if roll < 0.55:
        return RepresentationData(alg, m, Endomorphism.identity(m), StructureTable.zero(alg.module, m, m),
                                  StructureTable.zero(alg.module, m, m), "Z")
    left = random_table(rng, alg.module, m, m, degree)
    right = random_table(rng, alg.module, m, m, degree) if rng.random() < 0.5 else None
    return RepresentationData(alg, m, Endomorphism.identity(m), left, right, "M")


def random_lie_pair(rng: random.Random, A: HomConformalAlgebra, B: HomConformalAlgebra,
                    degree: int = 1) -> MatchedPairData:
    rho = random_table(rng, A.module, B.module, B.module, degree, 0.6) if rng.random() < 0.6 else None
    sigma = random_table(rng, B.module, A.module, A.module, degree, 0.6) if rng.random() < 0.6 else None
    return MatchedPairData(A, B, "lie", rho=rho, sigma=sigma)


def random_lsc_pair(rng: random.Random, A: HomConformalAlgebra, B: HomConformalAlgebra,
                    degree: int = 1) -> MatchedPairData:
    def maybe(src, dst):
        return random_table(rng, src.module, dst.module, dst.module, degree, 0.6) if rng.random() < 0.4 else None
    return MatchedPairData(A, B, "left-symmetric", lA=maybe(A, B), rA=maybe(A, B), lB=maybe(B, A), rB=maybe(B, A))


def random_fixed_tensor(rng: random.Random, alg: HomConformalAlgebra, degree: int = 1,
                        density: float = 0.6) -> TensorElement:
    """A random r in A⊗A supported on basis pairs where α⊗α acts as the identity.

    Only diagonal twists are handled; other twists give r = 0.
    """
    n = alg.rank
    mods = (alg.module, alg.module)
    diag = []
    for i in range(n):
        row = alg.alpha.matrix[i]
        if any(row[j] for j in range(n) if j != i) or not row[i].is_constant():
            return TensorElement.zero(mods)
        diag.append(row[i].constant_value())
    coeffs = {}
    for i in range(n):
        for j in range(n):
            if diag[i] * diag[j] == 1 and rng.random() < density:
                p = random_poly(rng, ("D1", "D2"), degree, 0.6, 2)
                if p:
                    coeffs[(i, j)] = p
    return TensorElement(mods, coeffs)


def dual_partners(alg: HomConformalAlgebra, pool: Sequence[HomConformalAlgebra]) -> list[HomConformalAlgebra]:
    """Certified products on the conformal dual of ``alg`` with twist α*.

    Each pool member of the same rank donates its table; only those that
    certify against the transpose twist are kept.
    """
    md = alg.module.dual()
    out = []
    for b in pool:
        if b.rank != alg.rank:
            continue
        cand = HomConformalAlgebra(md, StructureTable(md, md, md, b.product.entries),
                                   alg.alpha.dual(md), "left-symmetric", b.name + "'")
        if certified(cand):
            out.append(cand)
    return out


def dual_pair_instances(max_rank: int = 2) -> list[tuple[HomConformalAlgebra, HomConformalAlgebra]]:
    """Every (A, A*) pair drawn from the base library up to ``max_rank``."""
    lib = [a for a in base_library() if a.rank <= max_rank]
    return [(a, b) for a in lib for b in dual_partners(a, lib)]
