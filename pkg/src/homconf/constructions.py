"""Builders and condition checkers on top of the λ-product engine.

Actions are stored as ordinary structure tables: a left action of A on M is a
table ``A × M → M``; a right action ``m_μ a`` is stored as ``r(a)_λ m`` (also
``A × M → M``) with ``m_μ a = r(a)_{-μ-∂} m``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping, Sequence

from .polyring import (var, const, ZERO, solve_square_system,
                       NoPolynomialSolution, SingularMatrix)
from .module import (D, FreeConformalModule, ModuleElement, Endomorphism, ConformalBilinearForm,
                     ModuleMismatch, apply_endo, direct_sum_modules, check_form_skew,
                     check_form_nondegenerate)
from .engine import (StructureTable, HomConformalAlgebra, _apply, check_axioms, check_skew,
                     check_hom_jacobi, check_left_symmetry, check_multiplicative)
from .report import Report

__all__ = [
    "ConstructionError", "NotCertified", "NotInducible", "ConstructionInconsistent",
    "SideConditionsFail", "InputAxiomFailure",
    "FiniteHomAlgebra", "current_algebra",
    "swap_table", "sub_adjacent_table", "sub_adjacent",
    "check_symplectic", "check_symplectic_compatibility", "lsc_from_symplectic",
    "check_parakahler",
    "RepresentationData", "regular_module", "check_lie_module", "check_lie_module_twist",
    "semidirect_lie", "check_lsc_module", "semidirect_lsc", "derived_reps",
    "dual_action_table", "dual_module", "check_dual_side_conditions",
    "MatchedPairData", "check_matched_pair_lie", "bicrossed_lie",
    "check_matched_pair_lsc", "bicrossed_lsc", "dual_actions", "DualPairComparison",
    "check_dual_pair_equivalence",
    "direct_sum",
]

L, M, N = var("L"), var("M"), var("N")
_D = var(D)


class ConstructionError(Exception):
    pass


class NotCertified(ConstructionError):
    def __init__(self, message, report: Report | None = None):
        super().__init__(message)
        self.report = report


class NotInducible(ConstructionError):
    pass


class ConstructionInconsistent(ConstructionError):
    def __init__(self, message, report: Report | None = None):
        super().__init__(message)
        self.report = report


class SideConditionsFail(ConstructionError):
    def __init__(self, message, report: Report | None = None):
        super().__init__(message)
        self.report = report


class InputAxiomFailure(ConstructionError):
    pass


# -- finite-dimensional inputs ---------------------------------------------------

@dataclass
class FiniteHomAlgebra:
    """Finite-dimensional Hom-algebra given by structure constants.

    ``mult[(i, j)]`` is the coefficient vector of e_i e_j; ``twist[k][j]`` the
    coefficient of e_k in α(e_j).
    """

    basis: tuple[str, ...]
    mult: Mapping[tuple[int, int], Sequence]
    twist: Sequence[Sequence]
    kind: str = "left-symmetric"

    def __post_init__(self):
        self.basis = tuple(self.basis)
        self.mult = {k: tuple(Fraction(c) for c in v) for k, v in self.mult.items()}
        self.twist = tuple(tuple(Fraction(c) for c in row) for row in self.twist)

    @property
    def n(self) -> int:
        return len(self.basis)

    def product(self, x: Sequence, y: Sequence) -> list:
        out = [Fraction(0)] * self.n
        for (i, j), vec in self.mult.items():
            c = x[i] * y[j]
            if c:
                for k in range(self.n):
                    out[k] += c * Fraction(vec[k])
        return out

    def apply_twist(self, x: Sequence) -> list:
        return [sum(Fraction(self.twist[k][j]) * x[j] for j in range(self.n)) for k in range(self.n)]

    def unit(self, i: int) -> list:
        return [Fraction(int(k == i)) for k in range(self.n)]

    def axiom_failures(self) -> list[str]:
        """Brute-force check over basis triples; returns descriptions of failures."""
        n, e, p, a = self.n, self.unit, self.product, self.apply_twist
        bad = []
        for i in range(n):
            for j in range(n):
                if a(p(e(i), e(j))) != p(a(e(i)), a(e(j))) and self.kind != "lie":
                    bad.append(f"multiplicative {self.basis[i]},{self.basis[j]}")
                if self.kind == "lie" and p(e(i), e(j)) != [-c for c in p(e(j), e(i))]:
                    bad.append(f"skew {self.basis[i]},{self.basis[j]}")
                for k in range(n):
                    x, y, z = e(i), e(j), e(k)
                    if self.kind == "lie":
                        lhs = p(a(x), p(y, z))
                        rhs = [u + v for u, v in zip(p(p(x, y), a(z)), p(a(y), p(x, z)))]
                    else:
                        lhs = [u - v for u, v in zip(p(p(x, y), a(z)), p(a(x), p(y, z)))]
                        rhs = [u - v for u, v in zip(p(p(y, x), a(z)), p(a(y), p(x, z)))]
                    if lhs != rhs:
                        bad.append(f"{self.kind} {self.basis[i]},{self.basis[j]},{self.basis[k]}")
        return bad


def current_algebra(fin: FiniteHomAlgebra, name: str = "Cur", check: bool = True) -> HomConformalAlgebra:
    """Constant table a_λ b = ab on C[∂] ⊗ A with the scalar twist."""
    if check:
        bad = fin.axiom_failures()
        if bad:
            raise InputAxiomFailure("finite-dimensional input fails: " + "; ".join(bad[:5]))
    module = FreeConformalModule(tuple(fin.basis))
    table = StructureTable(module, module, module,
                           {k: tuple(const(Fraction(c)) for c in v) for k, v in fin.mult.items()})
    alpha = Endomorphism(module, tuple(tuple(const(Fraction(c)) for c in row) for row in fin.twist))
    return HomConformalAlgebra(module, table, alpha, fin.kind, name)


# -- table helpers ---------------------------------------------------------------

def swap_table(t: StructureTable) -> StructureTable:
    """Table of (m, a) ↦ T(a)_{-λ-∂} m from a table of (a, m) ↦ T(a)_λ m."""
    flip = {"L": -L - _D}
    return StructureTable(t.right, t.left, t.out,
                          {(j, i): tuple(c.subs(flip) for c in v) for (i, j), v in t.entries.items()})


def sub_adjacent_table(t: StructureTable) -> StructureTable:
    """[a_λ b] = a_λ b - b_{-λ-∂} a."""
    return t - swap_table(t)


def sub_adjacent(alg: HomConformalAlgebra, certify: bool = True, name: str | None = None) -> HomConformalAlgebra:
    if certify:
        rep = check_axioms(alg.with_(kind="left-symmetric"))
        if not rep.passed:
            raise NotCertified(f"{alg.name} is not a certified left-symmetric algebra", rep)
    return HomConformalAlgebra(alg.module, sub_adjacent_table(alg.product), alg.alpha, "lie",
                               name or f"g({alg.name})")


def _embed(acc: dict, t: StructureTable, li: int, ri: int, oi: int, n_out: int, sign: int = 1):
    for (i, j), vec in t.entries.items():
        cur = acc.setdefault((i + li, j + ri), [ZERO] * n_out)
        for k, c in enumerate(vec):
            if c:
                cur[k + oi] = cur[k + oi] + (c if sign > 0 else -c)


def direct_sum(a: HomConformalAlgebra, b: HomConformalAlgebra, name: str | None = None) -> HomConformalAlgebra:
    module = direct_sum_modules(a.module, b.module)
    n = a.rank
    acc: dict = {}
    _embed(acc, a.product, 0, 0, 0, module.rank)
    _embed(acc, b.product, n, n, n, module.rank)
    return HomConformalAlgebra(module, StructureTable(module, module, module, acc),
                               a.alpha.direct_sum(b.alpha, module), a.kind, name or f"{a.name}+{b.name}")


# -- symplectic structures -------------------------------------------------------

def check_symplectic(alg: HomConformalAlgebra, omega: ConformalBilinearForm) -> Report:
    """Skew and nondegenerate form on a multiplicative Hom-Lie algebra, and the
    cyclic identity

    ω([a_λ b], α(c))_μ + ω([b_{μ-∂} c], α(a))_{-λ} + ω([c_{-μ} a], α(b))_{λ-μ} = 0.
    """
    rep = Report(alg.name)
    rep.extend(check_form_skew(omega, alg.name))
    rep.extend(check_form_nondegenerate(omega, alg.name))
    rep.extend(check_skew(alg))
    rep.extend(check_hom_jacobi(alg))
    rep.extend(check_multiplicative(alg))
    e = [alg.gen(i) for i in range(alg.rank)]
    ae = [alg.twist(x) for x in e]
    for a in range(alg.rank):
        for b in range(alg.rank):
            for c in range(alg.rank):
                t1 = omega.pair(alg.prod(e[a], e[b], L), ae[c], M)
                t2 = omega.pair(alg.prod(e[b], e[c], M - _D), ae[a], -L)
                t3 = omega.pair(alg.prod(e[c], e[a], -M), ae[b], L - M)
                rep.add("symplectic-cyclic", (alg.basis[a], alg.basis[b], alg.basis[c]), t1 + t2 + t3)
    return rep


def check_symplectic_compatibility(product: HomConformalAlgebra, lie: HomConformalAlgebra,
                                   omega: ConformalBilinearForm) -> Report:
    """ω(a_λ b, α(c))_μ + ω(α(b), [a_λ c])_{μ-λ} over basis triples."""
    rep = Report(product.name)
    e = [product.gen(i) for i in range(product.rank)]
    ae = [product.twist(x) for x in e]
    for a in range(product.rank):
        for b in range(product.rank):
            for c in range(product.rank):
                lhs = omega.pair(product.prod(e[a], e[b], L), ae[c], M)
                rhs = omega.pair(ae[b], lie.prod(e[a], e[c], L), M - L)
                rep.add("form-compatibility", tuple(product.basis[i] for i in (a, b, c)), lhs + rhs)
    return rep


def lsc_from_symplectic(alg: HomConformalAlgebra, omega: ConformalBilinearForm,
                        name: str | None = None, require_symplectic: bool = True) -> HomConformalAlgebra:
    """Solve ω(a_λ b, α(c))_μ = -ω(α(b), [a_λ c])_{μ-λ} for the product table.

    For each pair (a, b) the unknown coefficients Y_k(λ, μ) = P_k^{ab}(λ, -μ)
    satisfy Σ_k ω(e_k, α(e_c))_μ Y_k = rhs_c for every c; the system is solved
    over C(μ) with λ as a parameter and mapped back through μ = -∂.
    """
    if require_symplectic:
        rep = check_symplectic(alg, omega)
        if not rep.passed:
            raise NotCertified(f"{alg.name} with the given form is not symplectic", rep)
    n = alg.rank
    e = [alg.gen(i) for i in range(n)]
    ae = [alg.twist(x) for x in e]
    W = [[omega.pair(e[k], ae[c], M) for k in range(n)] for c in range(n)]
    entries = {}
    for a in range(n):
        for b in range(n):
            rhs = [-omega.pair(ae[b], alg.prod(e[a], e[c], L), M - L) for c in range(n)]
            if all(r.is_zero() for r in rhs):
                continue
            try:
                Y = solve_square_system(W, rhs)
            except (NoPolynomialSolution, SingularMatrix) as exc:
                raise NotInducible(f"no polynomial product for ({alg.basis[a]}, {alg.basis[b]}): {exc}")
            entries[(a, b)] = tuple(y.subs({"M": -_D}) for y in Y)
    table = StructureTable(alg.module, alg.module, alg.module, entries)
    out = HomConformalAlgebra(alg.module, table, alg.alpha, "left-symmetric", name or f"lsc({alg.name})")
    cert = check_left_symmetry(out)
    cert.extend(check_symplectic_compatibility(out, alg, omega))
    sub = sub_adjacent_table(table)
    cert.add("sub-adjacent-match", (), const(0 if sub == alg.product else 1))
    if not cert.passed:
        raise ConstructionInconsistent("induced product fails certification", cert)
    return out


def check_parakahler(alg: HomConformalAlgebra, split: tuple[Sequence[str], Sequence[str]],
                     omega: ConformalBilinearForm) -> Report:
    """Two bracket-closed summands, symplectic form, both summands isotropic."""
    parts = [[alg.module.index(x) for x in part] for part in split]
    if sorted(parts[0] + parts[1]) != list(range(alg.rank)):
        raise ValueError("split must partition the basis")
    rep = Report(alg.name)
    for p, part in enumerate(parts):
        inside = set(part)
        for a in part:
            for b in part:
                br = alg.prod(alg.gen(a), alg.gen(b), L)
                leak = ModuleElement(alg.module, tuple(ZERO if k in inside else c
                                                       for k, c in enumerate(br.coeffs)))
                rep.add(f"subalgebra-{p}", (alg.basis[a], alg.basis[b]), leak)
    rep.extend(check_symplectic(alg, omega))
    for p, part in enumerate(parts):
        for a in part:
            for b in part:
                rep.add(f"isotropic-{p}", (alg.basis[a], alg.basis[b]), omega.matrix[a][b])
    return rep


# -- representations -------------------------------------------------------------

@dataclass
class RepresentationData:
    algebra: HomConformalAlgebra
    space: FreeConformalModule
    beta: Endomorphism
    left: StructureTable
    right: StructureTable | None = None
    name: str = "M"

    def __post_init__(self):
        A = self.algebra.module
        for t in (self.left, self.right):
            if t is not None and (t.left != A or t.right != self.space or t.out != self.space):
                raise ModuleMismatch("action table does not map A × M → M")
        if self.beta.module != self.space:
            raise ModuleMismatch("β acts on a different module")

    @property
    def right_table(self) -> StructureTable:
        return self.right if self.right is not None else StructureTable.zero(self.algebra.module, self.space)

    def act(self, t: StructureTable, a: ModuleElement, m: ModuleElement, lam) -> ModuleElement:
        return _apply(t, a, m, lam)

    def __eq__(self, other):
        if not isinstance(other, RepresentationData):
            return NotImplemented
        return (self.algebra == other.algebra and self.space == other.space and self.beta == other.beta
                and self.left == other.left and self.right_table == other.right_table)


def regular_module(alg: HomConformalAlgebra, name: str | None = None) -> RepresentationData:
    """M = A with l = left multiplication and r(a)_λ m = m_{-λ-∂} a."""
    return RepresentationData(alg, alg.module, alg.alpha, alg.product, swap_table(alg.product),
                              name or f"reg({alg.name})")


def _twist_compat(rep: Report, axiom: str, t: StructureTable, alg: HomConformalAlgebra,
                  space: FreeConformalModule, beta: Endomorphism):
    for a in range(alg.rank):
        ea = alg.gen(a)
        aa = alg.twist(ea)
        for m in range(space.rank):
            em = space.gen(m)
            lhs = apply_endo(beta, _apply(t, ea, em, L))
            rhs = _apply(t, aa, apply_endo(beta, em), L)
            rep.add(axiom, (alg.basis[a], space.basis[m]), lhs - rhs)


def check_lie_module(rep: RepresentationData) -> Report:
    """ρ([a_λ b])_{λ+μ} β(v) - ρ(α(a))_λ(ρ(b)_μ v) + ρ(α(b))_μ(ρ(a)_λ v)."""
    alg, t = rep.algebra, rep.left
    out = Report(rep.name)
    e = [alg.gen(i) for i in range(alg.rank)]
    ae = [alg.twist(x) for x in e]
    for a in range(alg.rank):
        for b in range(alg.rank):
            br = alg.prod(e[a], e[b], L)
            for v in range(rep.space.rank):
                ev = rep.space.gen(v)
                bv = apply_endo(rep.beta, ev)
                t1 = _apply(t, br, bv, L + M)
                t2 = _apply(t, ae[a], _apply(t, e[b], ev, M), L)
                t3 = _apply(t, ae[b], _apply(t, e[a], ev, L), M)
                out.add("lie-module", (alg.basis[a], alg.basis[b], rep.space.basis[v]), t1 - t2 + t3)
    return out


def check_lie_module_twist(rep: RepresentationData) -> Report:
    """β(ρ(a)_λ v) = ρ(α(a))_λ β(v), reported separately from the module identity."""
    out = Report(rep.name)
    _twist_compat(out, "module-twist", rep.left, rep.algebra, rep.space, rep.beta)
    return out


def check_lsc_module(rep: RepresentationData) -> Report:
    """Module axioms for a left-symmetric algebra: twist compatibility of l and r,
    the left-left identity and the left-right identity."""
    alg, l, r = rep.algebra, rep.left, rep.right_table
    out = Report(rep.name)
    _twist_compat(out, "module-twist-left", l, alg, rep.space, rep.beta)
    _twist_compat(out, "module-twist-right", r, alg, rep.space, rep.beta)
    e = [alg.gen(i) for i in range(alg.rank)]
    ae = [alg.twist(x) for x in e]
    prods = {(a, b, lam): alg.prod(e[a], e[b], lam) for a in range(alg.rank)
             for b in range(alg.rank) for lam in (L, M)}
    for a in range(alg.rank):
        for b in range(alg.rank):
            for v in range(rep.space.rank):
                ev = rep.space.gen(v)
                bv = apply_endo(rep.beta, ev)
                lab = (alg.basis[a], alg.basis[b], rep.space.basis[v])
                res = (_apply(l, prods[(a, b, L)], bv, L + M)
                       - _apply(l, ae[a], _apply(l, e[b], ev, M), L)
                       - _apply(l, prods[(b, a, M)], bv, L + M)
                       + _apply(l, ae[b], _apply(l, e[a], ev, L), M))
                out.add("module-left", lab, res)
                outer = -L - M - _D
                res = (_apply(r, ae[b], _apply(l, e[a], ev, L), outer)
                       - _apply(l, ae[a], _apply(r, e[b], ev, -M - _D), L)
                       - _apply(r, ae[b], _apply(r, e[a], ev, L), outer)
                       + _apply(r, prods[(a, b, L)], bv, -M - _D))
                out.add("module-mixed", lab, res)
    return out


def _sum_algebra(A: HomConformalAlgebra, B: HomConformalAlgebra | None, Bmodule: FreeConformalModule,
                 Bbeta: Endomorphism, blocks, kind: str, name: str) -> HomConformalAlgebra:
    module = direct_sum_modules(A.module, Bmodule)
    n, size = A.rank, module.rank
    acc: dict = {}
    _embed(acc, A.product, 0, 0, 0, size)
    if B is not None:
        _embed(acc, B.product, n, n, n, size)
    for t, li, ri, oi, sign in blocks:
        _embed(acc, t, li, ri, oi, size, sign)
    return HomConformalAlgebra(module, StructureTable(module, module, module, acc),
                               A.alpha.direct_sum(Bbeta, module), kind, name)


def semidirect_lie(alg: HomConformalAlgebra, rep: RepresentationData, name: str | None = None) -> HomConformalAlgebra:
    """[(a+u)_λ(b+v)] = [a_λ b] + a_λ v - b_{-λ-∂} u on A ⊕ M."""
    n = alg.rank
    blocks = [(rep.left, 0, n, n, 1), (swap_table(rep.left), n, 0, n, -1)]
    return _sum_algebra(alg, None, rep.space, rep.beta, blocks, "lie", name or f"{alg.name}x{rep.name}")


def semidirect_lsc(alg: HomConformalAlgebra, rep: RepresentationData, name: str | None = None) -> HomConformalAlgebra:
    """(a+u)_λ(b+v) = a_λ b + l(a)_λ v + r(b)_{-λ-∂} u on A ⊕ M."""
    n = alg.rank
    blocks = [(rep.left, 0, n, n, 1), (swap_table(rep.right_table), n, 0, n, 1)]
    return _sum_algebra(alg, None, rep.space, rep.beta, blocks, "left-symmetric",
                        name or f"{alg.name}x{rep.name}")


def derived_reps(alg: HomConformalAlgebra, rep: RepresentationData,
                 sigma: StructureTable | None = None) -> tuple[Report, Report, Report]:
    """Representations of the sub-adjacent algebra built from a module.

    (1) l as a Lie representation, (2) l - r as a Lie representation,
    (3) (M, σ, 0) as a module of the left-symmetric algebra, σ defaulting to l - r.
    """
    g = sub_adjacent(alg, certify=False)
    r = rep.right_table
    rho = rep.left - r
    r1 = check_lie_module(RepresentationData(g, rep.space, rep.beta, rep.left, None, f"{rep.name}:l"))
    r2 = check_lie_module(RepresentationData(g, rep.space, rep.beta, rho, None, f"{rep.name}:l-r"))
    sig = rho if sigma is None else sigma
    r3 = check_lsc_module(RepresentationData(alg, rep.space, rep.beta, sig,
                                             StructureTable.zero(alg.module, rep.space), f"{rep.name}:s,0"))
    return r1, r2, r3


# -- conformal duals -------------------------------------------------------------

def dual_action_table(t: StructureTable, out: FreeConformalModule | None = None) -> StructureTable:
    """Dual action on M*: (T*(a)_λ f)_μ u = -f_{μ-λ}(T(a)_λ u).

    On dual bases: T*(e_i)_λ m*_j = -Σ_k T_j^{ik}(λ, -λ-∂) m*_k.
    """
    dual = out or t.right.dual()
    if dual.rank != t.right.rank:
        raise ModuleMismatch("dual module has the wrong rank")
    flip = {D: -L - _D}
    n = t.right.rank
    entries: dict = {}
    for (i, k), vec in t.entries.items():
        for j, c in enumerate(vec):
            if c:
                cur = entries.setdefault((i, j), [ZERO] * n)
                cur[k] = cur[k] - c.subs(flip)
    return StructureTable(t.left, dual, dual, entries)


def check_dual_side_conditions(rep: RepresentationData) -> Report:
    """Hypotheses for the dual module with the twist placed as printed:

    β(l(α(a))_λ m) = l(a)_λ β(m), β(r(α(a))_λ m) = r(a)_λ β(m),
    β(l(a_λ b)_{λ+μ} v) - l(a)_λ(l(α(b))_μ v) = β(l(b_μ a)_{λ+μ} v) - l(b)_μ(l(α(a))_λ v),
    r(b)_{-λ-μ-∂}(l(α(a))_λ v) - l(a)_λ(r(α(b))_{-μ-∂} v)
        = r(b)_{-λ-μ-∂}(r(α(a))_λ v) - β(r(a_λ b)_{-μ-∂} v).
    """
    alg, l, r, beta = rep.algebra, rep.left, rep.right_table, rep.beta
    out = Report(rep.name)
    e = [alg.gen(i) for i in range(alg.rank)]
    ae = [alg.twist(x) for x in e]
    B = lambda x: apply_endo(beta, x)
    for a in range(alg.rank):
        for m in range(rep.space.rank):
            em = rep.space.gen(m)
            lab = (alg.basis[a], rep.space.basis[m])
            out.add("side-twist-left", lab, B(_apply(l, ae[a], em, L)) - _apply(l, e[a], B(em), L))
            out.add("side-twist-right", lab, B(_apply(r, ae[a], em, L)) - _apply(r, e[a], B(em), L))
    for a in range(alg.rank):
        for b in range(alg.rank):
            ab = alg.prod(e[a], e[b], L)
            ba = alg.prod(e[b], e[a], M)
            for v in range(rep.space.rank):
                ev = rep.space.gen(v)
                lab = (alg.basis[a], alg.basis[b], rep.space.basis[v])
                res = (B(_apply(l, ab, ev, L + M)) - _apply(l, e[a], _apply(l, ae[b], ev, M), L)
                       - B(_apply(l, ba, ev, L + M)) + _apply(l, e[b], _apply(l, ae[a], ev, L), M))
                out.add("side-left", lab, res)
                outer = -L - M - _D
                res = (_apply(r, e[b], _apply(l, ae[a], ev, L), outer)
                       - _apply(l, e[a], _apply(r, ae[b], ev, -M - _D), L)
                       - _apply(r, e[b], _apply(r, ae[a], ev, L), outer)
                       + B(_apply(r, ab, ev, -M - _D)))
                out.add("side-mixed", lab, res)
    return out


def dual_module(rep: RepresentationData, side_conditions: str = "printed",
                certify: bool = True, name: str | None = None) -> RepresentationData:
    """(M*, l* - r*, -r*, β*) from a module (M, l, r, β).

    ``side_conditions`` selects the admission test: ``"printed"`` uses the
    hypotheses with the twist placement of the original statement,
    ``"module"`` uses the module axioms themselves, ``"none"`` skips the test.
    The result is checked against the module axioms when ``certify`` is set.
    """
    if side_conditions == "printed":
        pre = check_dual_side_conditions(rep)
    elif side_conditions == "module":
        pre = check_lsc_module(rep)
    elif side_conditions == "none":
        pre = Report(rep.name)
    else:
        raise ValueError(f"unknown side-condition variant {side_conditions!r}")
    if not pre.passed:
        raise SideConditionsFail(f"side conditions fail for {rep.name}", pre)
    dual = rep.space.dual()
    lstar = dual_action_table(rep.left, dual)
    rstar = dual_action_table(rep.right_table, dual)
    out = RepresentationData(rep.algebra, dual, rep.beta.dual(dual), lstar - rstar, -rstar,
                             name or f"{rep.name}*")
    if certify:
        cert = check_lsc_module(out)
        if not cert.passed:
            raise ConstructionInconsistent(f"dual of {rep.name} is not a module", cert)
    return out


# -- matched pairs ---------------------------------------------------------------

@dataclass
class MatchedPairData:
    """Two algebras acting on each other.

    Lie kind: ``rho`` (first × second → second), ``sigma`` (second × first → first).
    Left-symmetric kind: ``lA``, ``rA`` (first × second → second) and
    ``lB``, ``rB`` (second × first → first); right actions in the r(a)_λ m form.
    """

    first: HomConformalAlgebra
    second: HomConformalAlgebra
    kind: str = "lie"
    rho: StructureTable | None = None
    sigma: StructureTable | None = None
    lA: StructureTable | None = None
    rA: StructureTable | None = None
    lB: StructureTable | None = None
    rB: StructureTable | None = None
    name: str = "pair"

    def __post_init__(self):
        A, B = self.first.module, self.second.module
        z_ab = StructureTable.zero(A, B, B)
        z_ba = StructureTable.zero(B, A, A)
        if self.kind == "lie":
            self.rho = self.rho or z_ab
            self.sigma = self.sigma or z_ba
            tabs = [(self.rho, A, B), (self.sigma, B, A)]
        elif self.kind == "left-symmetric":
            self.lA = self.lA or z_ab
            self.rA = self.rA or z_ab
            self.lB = self.lB or z_ba
            self.rB = self.rB or z_ba
            tabs = [(self.lA, A, B), (self.rA, A, B), (self.lB, B, A), (self.rB, B, A)]
        else:
            raise ValueError(f"unknown matched pair kind {self.kind!r}")
        for t, x, y in tabs:
            if (t.left, t.right, t.out) != (x, y, y):
                raise ModuleMismatch("action table has the wrong domains")


def _prefixed(rep: Report, prefix: str) -> Report:
    out = Report(rep.subject)
    for c in rep.checks:
        out.add(f"{prefix}{c.axiom}", c.tuple, c.residual, c.verdict)
    return out


def check_matched_pair_lie(data: MatchedPairData) -> Report:
    """Both algebras multiplicative Hom-Lie, ρ and σ representations (including
    the twist compatibility β∘ρ(a) = ρ(α(a))∘β), and the two compatibility
    identities, for x, y in the first algebra and a, b in the second:

    ρ(α(x))_λ[a_μ b] - [(ρ(x)_λ a)_{λ+μ} α'(b)] - [α'(a)_μ(ρ(x)_λ b)]
        + ρ(σ(a)_{-λ-∂} x)_{λ+μ} α'(b) - ρ(σ(b)_{-λ-∂} x)_{-μ-∂} α'(a) = 0,
    σ(α'(a))_{-λ-μ-∂}[x_λ y] - [α(x)_λ(σ(a)_{-μ-∂} y)] + [α(y)_μ(σ(a)_{-λ-∂} x)]
        + σ(ρ(x)_λ a)_{-μ-∂} α(y) - σ(ρ(y)_μ a)_{-λ-∂} α(x) = 0.
    """
    R, S = data.first, data.second
    rho, sigma = data.rho, data.sigma
    out = Report(data.name)
    out.extend(_prefixed(check_axioms(R), "first-"))
    out.extend(_prefixed(check_axioms(S), "second-"))
    for tag, rep in (("rho-", RepresentationData(R, S.module, S.alpha, rho, None, data.name)),
                     ("sigma-", RepresentationData(S, R.module, R.alpha, sigma, None, data.name))):
        out.extend(_prefixed(check_lie_module(rep), tag))
        out.extend(_prefixed(check_lie_module_twist(rep), tag))
    x_ = [R.gen(i) for i in range(R.rank)]
    ax = [R.twist(v) for v in x_]
    a_ = [S.gen(i) for i in range(S.rank)]
    aa = [S.twist(v) for v in a_]
    for x in range(R.rank):
        for a in range(S.rank):
            for b in range(S.rank):
                t1 = _apply(rho, ax[x], S.prod(a_[a], a_[b], M), L)
                t2 = S.prod(_apply(rho, x_[x], a_[a], L), aa[b], L + M)
                t3 = S.prod(aa[a], _apply(rho, x_[x], a_[b], L), M)
                t4 = _apply(rho, _apply(sigma, a_[a], x_[x], -L - _D), aa[b], L + M)
                t5 = _apply(rho, _apply(sigma, a_[b], x_[x], -L - _D), aa[a], -M - _D)
                out.add("pair-rho", (R.basis[x], S.basis[a], S.basis[b]), t1 - t2 - t3 + t4 - t5)
    for x in range(R.rank):
        for y in range(R.rank):
            for a in range(S.rank):
                t1 = _apply(sigma, aa[a], R.prod(x_[x], x_[y], L), -L - M - _D)
                t2 = R.prod(ax[x], _apply(sigma, a_[a], x_[y], -M - _D), L)
                t3 = R.prod(ax[y], _apply(sigma, a_[a], x_[x], -L - _D), M)
                t4 = _apply(sigma, _apply(rho, x_[x], a_[a], L), ax[y], -M - _D)
                t5 = _apply(sigma, _apply(rho, x_[y], a_[a], M), ax[x], -L - _D)
                out.add("pair-sigma", (R.basis[x], R.basis[y], S.basis[a]), t1 - t2 + t3 + t4 - t5)
    return out


def bicrossed_lie(data: MatchedPairData, name: str | None = None) -> HomConformalAlgebra:
    """[(x+a)_λ(y+b)] = [x_λ y] + σ(a)_λ y - σ(b)_{-λ-∂} x + [a_λ b] + ρ(x)_λ b - ρ(y)_{-λ-∂} a."""
    R, S = data.first, data.second
    n = R.rank
    blocks = [
        (data.sigma, n, 0, 0, 1),
        (swap_table(data.sigma), 0, n, 0, -1),
        (data.rho, 0, n, n, 1),
        (swap_table(data.rho), n, 0, n, -1),
    ]
    return _sum_algebra(R, S, S.module, S.alpha, blocks, "lie", name or f"{R.name}|><|{S.name}")


def bicrossed_lsc(data: MatchedPairData, name: str | None = None) -> HomConformalAlgebra:
    """(x+a)_λ(y+b) = x_λ y + l_B(a)_λ y + r_B(b)_{-λ-∂} x + a_λ b + l_A(x)_λ b + r_A(y)_{-λ-∂} a."""
    A, B = data.first, data.second
    n = A.rank
    blocks = [
        (data.lB, n, 0, 0, 1),
        (swap_table(data.rB), 0, n, 0, 1),
        (data.lA, 0, n, n, 1),
        (swap_table(data.rA), n, 0, n, 1),
    ]
    return _sum_algebra(A, B, B.module, B.alpha, blocks, "left-symmetric", name or f"{A.name}|><|{B.name}")


def _lsc_pair_conditions(out: Report, A, B, lA, rA, lB, rB, tag: str, literal: bool):
    """The two compatibility identities with A acting through (lA, rA) on B.

    For x in A and a, b in B:
    r_A(α(x))_{-λ-μ-∂}(a_λ b - b_μ a) = r_A(l_B(b)_μ x)_{-λ-∂} γ(a) - r_A(l_B(a)_λ x)_{-μ-∂} γ(b)
        + γ(a)_λ(r_A(x)_{-μ-∂} b) - γ(b)_μ(r_A(x)_{-λ-∂} a)
    l_A(α(x))_λ(a_μ b) = -l_A(l_B(a)_μ x - r_B(a)_{-λ-∂} x)_{λ+μ} γ(b)
        + (l_A(x)_λ a - r_A(x)_{-μ-∂} a)_{λ+μ} γ(b) + r_A(r_B(b)_{-λ-∂} x)_{-μ-∂} γ(a) + γ(a)_μ(l_A(x)_λ b)

    With ``literal`` the first identity omits the ``- b_μ a`` term.
    """
    x_ = [A.gen(i) for i in range(A.rank)]
    ax = [A.twist(v) for v in x_]
    a_ = [B.gen(i) for i in range(B.rank)]
    aa = [B.twist(v) for v in a_]
    for x in range(A.rank):
        for a in range(B.rank):
            for b in range(B.rank):
                lab = (A.basis[x], B.basis[a], B.basis[b])
                inner = B.prod(a_[a], a_[b], L)
                if not literal:
                    inner = inner - B.prod(a_[b], a_[a], M)
                lhs = _apply(rA, ax[x], inner, -L - M - _D)
                rhs = (_apply(rA, _apply(lB, a_[b], x_[x], M), aa[a], -L - _D)
                       - _apply(rA, _apply(lB, a_[a], x_[x], L), aa[b], -M - _D)
                       + B.prod(aa[a], _apply(rA, x_[x], a_[b], -M - _D), L)
                       - B.prod(aa[b], _apply(rA, x_[x], a_[a], -L - _D), M))
                out.add(f"pair-right-{tag}", (lab[1], lab[2], lab[0]), lhs - rhs)

                lhs = _apply(lA, ax[x], B.prod(a_[a], a_[b], M), L)
                inner = _apply(lB, a_[a], x_[x], M) - _apply(rB, a_[a], x_[x], -L - _D)
                inner2 = _apply(lA, x_[x], a_[a], L) - _apply(rA, x_[x], a_[a], -M - _D)
                rhs = (-_apply(lA, inner, aa[b], L + M)
                       + B.prod(inner2, aa[b], L + M)
                       + _apply(rA, _apply(rB, a_[b], x_[x], -L - _D), aa[a], -M - _D)
                       + B.prod(aa[a], _apply(lA, x_[x], a_[b], L), M))
                out.add(f"pair-left-{tag}", lab, lhs - rhs)


def check_matched_pair_lsc(data: MatchedPairData, literal: bool = False) -> Report:
    """Both algebras certified, each a module over the other, and the four
    compatibility identities (two for each direction)."""
    A, B = data.first, data.second
    out = Report(data.name)
    out.extend(_prefixed(check_axioms(A.with_(kind="left-symmetric")), "first-"))
    out.extend(_prefixed(check_axioms(B.with_(kind="left-symmetric")), "second-"))
    out.extend(_prefixed(check_lsc_module(RepresentationData(A, B.module, B.alpha, data.lA, data.rA)),
                         "first-on-second-"))
    out.extend(_prefixed(check_lsc_module(RepresentationData(B, A.module, A.alpha, data.lB, data.rB)),
                         "second-on-first-"))
    _lsc_pair_conditions(out, A, B, data.lA, data.rA, data.lB, data.rB, "first", literal)
    _lsc_pair_conditions(out, B, A, data.lB, data.rB, data.lA, data.rA, "second", literal)
    return out


def dual_actions(alg: HomConformalAlgebra, dual_alg: HomConformalAlgebra) -> dict[str, StructureTable]:
    """Coregular actions between A and a product on its conformal dual.

    Keys: ``L*``, ``R*`` (A on A*) and ``L*dual``, ``R*dual`` (A* on A).
    """
    A, B = alg.module, dual_alg.module
    if B.rank != A.rank:
        raise ModuleMismatch("dual algebra has the wrong rank")
    return {
        "L*": dual_action_table(alg.product, B),
        "R*": dual_action_table(swap_table(alg.product), B),
        "L*dual": dual_action_table(dual_alg.product, A),
        "R*dual": dual_action_table(swap_table(dual_alg.product), A),
    }


@dataclass
class DualPairComparison:
    """Verdicts of the Lie and left-symmetric matched pairs built on A ⊕ A*."""

    lie: Report
    lsc: Report

    @property
    def agree(self) -> bool:
        return self.lie.passed == self.lsc.passed

    def report(self, subject: str = "dual-pair") -> Report:
        out = Report(subject)
        out.add("equivalence", ("lie" if self.lie.passed else "not-lie",
                                "lsc" if self.lsc.passed else "not-lsc"),
                const(0 if self.agree else 1))
        return out


def check_dual_pair_equivalence(alg: HomConformalAlgebra, dual_alg: HomConformalAlgebra) -> DualPairComparison:
    """Compare the Lie matched pair (g(A), g(A*), L*_A, L*_{A*}) with the
    left-symmetric matched pair (A, A*, ad*_A, -R*_A, ad*_{A*}, -R*_{A*})."""
    acts = dual_actions(alg, dual_alg)
    gA = sub_adjacent(alg, certify=False)
    gB = sub_adjacent(dual_alg, certify=False)
    lie = MatchedPairData(gA, gB, "lie", rho=acts["L*"], sigma=acts["L*dual"], name="lie-pair")
    lsc = MatchedPairData(alg, dual_alg, "left-symmetric",
                          lA=acts["L*"] - acts["R*"], rA=-acts["R*"],
                          lB=acts["L*dual"] - acts["R*dual"], rB=-acts["R*dual"], name="lsc-pair")
    return DualPairComparison(check_matched_pair_lie(lie), check_matched_pair_lsc(lsc))
