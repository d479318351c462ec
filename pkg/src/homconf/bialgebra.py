"""Coalgebras, 1-cocycles, bialgebras and coboundary cobrackets.

A coproduct Δ is stored by its values on generators as arity-2 tensors whose
coefficients are polynomials in D1, D2; it extends by Δ(p(∂)a) = p(D1+D2)Δ(a).
"""

from __future__ import annotations

from dataclasses import dataclass
from .polyring import Poly, var, const, ZERO, ONE
from .module import (D, LEG, FreeConformalModule, ModuleElement, TensorElement, Endomorphism,
                     ConformalBilinearForm, ModuleMismatch, apply_endo,
                     tensor_apply_endo_leg, tensor_apply_endos)
from .engine import StructureTable, HomConformalAlgebra, _apply, act_on_leg
from .constructions import (sub_adjacent_table, sub_adjacent, check_parakahler, DualPairComparison,
                            check_dual_pair_equivalence, MatchedPairData, bicrossed_lie, dual_actions)
from .report import Report

__all__ = [
    "TwistFixpointViolated", "CoalgebraData", "RTensor",
    "apply_coproduct", "coproduct_on_leg", "check_coalgebra",
    "dual_algebra_from_coalgebra", "dual_coalgebra_from_algebra",
    "check_cocycle", "check_bialgebra", "coboundary_cobracket",
    "decompose", "compute_double_bracket", "compute_J_delta",
    "ObstructionComparison", "check_coboundary_obstruction",
    "canonical_pairing_form", "bialgebra_double", "BialgebraTransport", "check_bialgebra_transport",
]

L, M, N = var("L"), var("M"), var("N")
_D = var(D)
D1, D2, D3 = (var(x) for x in LEG[:3])


class TwistFixpointViolated(ValueError):
    pass


@dataclass
class CoalgebraData:
    module: FreeConformalModule
    twist: Endomorphism
    delta: tuple[TensorElement, ...]
    name: str = "C"

    def __post_init__(self):
        self.delta = tuple(self.delta)
        if len(self.delta) != self.module.rank:
            raise ModuleMismatch("one coproduct value per generator is required")
        for w in self.delta:
            if w.modules != (self.module, self.module):
                raise ModuleMismatch("coproduct values must lie in M ⊗ M")
            extra = w.variables() - {"D1", "D2"}
            if extra:
                raise ValueError(f"coproduct coefficients may only use D1, D2, found {sorted(extra)}")
        if self.twist.module != self.module:
            raise ModuleMismatch("twist acts on a different module")

    @classmethod
    def zero(cls, module: FreeConformalModule, twist: Endomorphism | None = None, name: str = "C"):
        z = TensorElement.zero((module, module))
        return cls(module, twist or Endomorphism.identity(module), tuple(z for _ in module.basis), name)

    def __eq__(self, other):
        if not isinstance(other, CoalgebraData):
            return NotImplemented
        return (self.module == other.module and self.twist == other.twist and self.delta == other.delta)


@dataclass(frozen=True)
class RTensor:
    value: TensorElement

    def __post_init__(self):
        if self.value.arity != 2:
            raise ModuleMismatch("r must be an arity-2 tensor")

    def is_twist_fixed(self, alpha: Endomorphism) -> bool:
        return tensor_apply_endos([alpha, alpha], self.value) == self.value


def _value(r) -> TensorElement:
    return r.value if isinstance(r, RTensor) else r


def apply_coproduct(c: CoalgebraData, x: ModuleElement) -> TensorElement:
    """Δ(Σ p_i(∂) e_i) = Σ p_i(D1+D2) Δ(e_i)."""
    total = D1 + D2
    out = TensorElement.zero((c.module, c.module))
    for i, p in x.nonzero():
        out = out + c.delta[i].scale(p.subs({D: total}))
    return out


def coproduct_on_leg(c: CoalgebraData, w: TensorElement, leg: int) -> TensorElement:
    """Apply Δ on one leg (0-based) of w, which splits into two adjacent legs."""
    m = w.arity
    if m + 1 > len(LEG):
        raise ValueError("tensor arity exceeds the available leg variables")
    if w.modules[leg] != c.module:
        raise ModuleMismatch("coproduct does not act on this leg")
    ren = {}
    for k in range(m):
        if k < leg:
            continue
        if k == leg:
            ren[LEG[k]] = var(LEG[k]) + var(LEG[k + 1])
        else:
            ren[LEG[k]] = var(LEG[k + 1])
    place = {"D1": var(LEG[leg]), "D2": var(LEG[leg + 1])}
    pieces = [{idx: p.subs(place) for idx, p in d.coeffs.items()} for d in c.delta]
    modules = w.modules[:leg] + (c.module, c.module) + w.modules[leg + 1:]
    out: dict = {}
    for idx, g in w.coeffs.items():
        gs = g.subs(ren)
        for (a, b), p in pieces[idx[leg]].items():
            new = idx[:leg] + (a, b) + idx[leg + 1:]
            out[new] = out.get(new, ZERO) + gs * p
    return TensorElement(modules, out)


def _coalgebra_residual(c: CoalgebraData, k: int) -> TensorElement:
    d = c.delta[k]
    left = tensor_apply_endo_leg(c.twist, coproduct_on_leg(c, d, 1), 0)
    right = tensor_apply_endo_leg(c.twist, coproduct_on_leg(c, d, 0), 2)
    return left - left.swap12() - right + right.swap12()


def check_coalgebra(c: CoalgebraData) -> Report:
    """(α⊗Δ)Δ - τ12(α⊗Δ)Δ - (Δ⊗α)Δ + τ12(Δ⊗α)Δ on each generator."""
    rep = Report(c.name)
    for k in range(c.module.rank):
        rep.add("coalgebra", (c.module.basis[k],), _coalgebra_residual(c, k))
    return rep


def dual_algebra_from_coalgebra(c: CoalgebraData, name: str | None = None,
                                kind: str = "left-symmetric") -> HomConformalAlgebra:
    """Product on the dual: (f_μ g)_λ(r) = Σ f_μ(r1) g_{λ-μ}(r2).

    With Δ(e_k) = Σ Q_k^{ij}(D1, D2) e_i⊗e_j this gives
    e*_i λ e*_j = Σ_k Q_k^{ij}(λ, -λ-∂) e*_k.
    """
    dual = c.module.dual()
    n = c.module.rank
    sub = {"D1": L, "D2": -L - _D}
    entries: dict = {}
    for k, d in enumerate(c.delta):
        for (i, j), q in d.coeffs.items():
            vec = entries.setdefault((i, j), [ZERO] * n)
            vec[k] = vec[k] + q.subs(sub)
    return HomConformalAlgebra(dual, StructureTable(dual, dual, dual, entries), c.twist.dual(dual), kind,
                               name or f"{c.name}*")


def dual_coalgebra_from_algebra(alg: HomConformalAlgebra, name: str | None = None) -> CoalgebraData:
    """δ(e*_k) = Σ P_k^{ij}(D1, -D1-D2) e*_i⊗e*_j on the dual module."""
    dual = alg.module.dual()
    sub = {"L": D1, D: -D1 - D2}
    coeffs: list[dict] = [dict() for _ in range(alg.rank)]
    for (i, j), vec in alg.product.entries.items():
        for k, p in enumerate(vec):
            if p:
                coeffs[k][(i, j)] = p.subs(sub)
    delta = tuple(TensorElement((dual, dual), cf) for cf in coeffs)
    return CoalgebraData(dual, alg.alpha.dual(dual), delta, name or f"{alg.name}*")


def _phi_action(Lt: StructureTable, adt: StructureTable, alpha: Endomorphism,
                x: ModuleElement, w: TensorElement, param) -> TensorElement:
    """(L(x)_λ ⊗ α + α ⊗ ad(x)_λ) w."""
    t1 = act_on_leg(Lt, x, tensor_apply_endo_leg(alpha, w, 1), 0, param)
    t2 = act_on_leg(adt, x, tensor_apply_endo_leg(alpha, w, 0), 1, param)
    return t1 + t2


def check_cocycle(alg: HomConformalAlgebra, c: CoalgebraData) -> Report:
    """δ(α([a_λ b])) - φ(a)_λ δ(b) + φ(b)_{-λ-∂} δ(a) with φ = L⊗α + α⊗ad
    and ∂ = D1 + D2 on A⊗A."""
    if c.module != alg.module:
        raise ModuleMismatch("coproduct and algebra live on different modules")
    Lt = alg.product
    adt = sub_adjacent_table(Lt)
    rep = Report(alg.name)
    e = [alg.gen(i) for i in range(alg.rank)]
    back = {"N": -L - D1 - D2}
    for a in range(alg.rank):
        for b in range(alg.rank):
            br = _apply(adt, e[a], e[b], L)
            lhs = apply_coproduct(c, alg.twist(br))
            t1 = _phi_action(Lt, adt, alg.alpha, e[a], c.delta[b], L)
            t2 = _phi_action(Lt, adt, alg.alpha, e[b], c.delta[a], N).subs(back)
            rep.add("cocycle", (alg.basis[a], alg.basis[b]), lhs - t1 + t2)
    return rep


def check_bialgebra(alg: HomConformalAlgebra, algstar: HomConformalAlgebra) -> Report:
    """Both coproducts are coalgebras and both are 1-cocycles.

    φ on A comes from the product of A*, ψ on A* from the product of A.
    """
    if algstar.module != alg.module.dual():
        raise ModuleMismatch("second algebra must live on the dual module")
    phi = dual_coalgebra_from_algebra(algstar, name=f"phi({algstar.name})")
    psi = dual_coalgebra_from_algebra(alg, name=f"psi({alg.name})")
    rep = Report(f"{alg.name}/{algstar.name}")
    for tag, coal, base in (("phi", phi, alg), ("psi", psi, algstar)):
        for ch in check_coalgebra(coal).checks:
            rep.add(f"{tag}-coalgebra", ch.tuple, ch.residual)
        for ch in check_cocycle(base, coal).checks:
            rep.add(f"{tag}-cocycle", ch.tuple, ch.residual)
    return rep


def _require_fixed(alg: HomConformalAlgebra, r: TensorElement):
    if r.modules != (alg.module, alg.module):
        raise ModuleMismatch("r must lie in A ⊗ A")
    if tensor_apply_endos([alg.alpha, alg.alpha], r) != r:
        raise TwistFixpointViolated("r is not fixed by α⊗α")


def coboundary_cobracket(alg: HomConformalAlgebra, r, name: str | None = None) -> CoalgebraData:
    """φ(a) = (L(a)_λ ⊗ α + α ⊗ ad(a)_λ) r at λ = -D1-D2."""
    r = _value(r)
    _require_fixed(alg, r)
    Lt = alg.product
    adt = sub_adjacent_table(Lt)
    elim = {"L": -D1 - D2}
    delta = tuple(_phi_action(Lt, adt, alg.alpha, alg.gen(a), r, L).subs(elim) for a in range(alg.rank))
    return CoalgebraData(alg.module, alg.alpha, delta, name or f"cob({alg.name})")


def decompose(r) -> list[tuple[ModuleElement, ModuleElement]]:
    """Write r as a sum of pure tensors r_i ⊗ l_i, one per monomial.

    A monomial c·D1^p·D2^q on e_a⊗e_b gives r_i = ∂^p e_a and l_i = c ∂^q e_b.
    """
    r = _value(r)
    A, B = r.modules
    out = []
    for (a, b), coeff in sorted(r.coeffs.items()):
        for exps, c in coeff.items():
            p = exps.pop("D1", 0)
            q = exps.pop("D2", 0)
            rest = Poly.from_terms([(exps, c)])
            left = [ZERO] * A.rank
            left[a] = _D ** p
            right = [ZERO] * B.rank
            right[b] = rest * _D ** q
            out.append((ModuleElement(A, tuple(left)), ModuleElement(B, tuple(right))))
    return out


def compute_double_bracket(alg: HomConformalAlgebra, r) -> TensorElement:
    """[[r, r]] as a sum of five double sums over the pure-tensor pieces of r.

    Σ r_i μ r_j ⊗ α(l_j) ⊗ α(l_i) |μ=D3 - Σ α(l_j) ⊗ r_i μ r_j ⊗ α(l_i) |μ=D3
    - Σ α(r_j) ⊗ [l_j μ r_i] ⊗ α(l_i) |μ=D1 + Σ [l_j μ r_i] ⊗ α(r_j) ⊗ α(l_i) |μ=D2
    - Σ α(r_i) ⊗ α(r_j) ⊗ [l_i μ l_j] |μ=D1
    """
    r = _value(r)
    if r.modules != (alg.module, alg.module):
        raise ModuleMismatch("r must lie in A ⊗ A")
    Lt = alg.product
    adt = sub_adjacent_table(Lt)
    pieces = decompose(r)
    tw = alg.twist
    out = TensorElement.zero((alg.module,) * 3)
    pure = TensorElement.pure
    for ri, li in pieces:
        for rj, lj in pieces:
            out = out + pure([_apply(Lt, ri, rj, D3), tw(lj), tw(li)])
            out = out - pure([tw(lj), _apply(Lt, ri, rj, D3), tw(li)])
            out = out - pure([tw(rj), _apply(adt, lj, ri, D1), tw(li)])
            out = out + pure([_apply(adt, lj, ri, D2), tw(rj), tw(li)])
            out = out - pure([tw(ri), tw(rj), _apply(adt, li, lj, D1)])
    return out


def _extend(w: TensorElement, x: ModuleElement) -> TensorElement:
    """w ⊗ x with x's ∂ read as the new last leg."""
    leg = var(LEG[w.arity])
    out = {}
    for idx, c in w.coeffs.items():
        for i, f in x.nonzero():
            out[idx + (i,)] = c * f.subs({D: leg})
    return TensorElement(w.modules + (x.module,), out)


def _P_action(Lt: StructureTable, alpha: Endomorphism, x: ModuleElement, w: TensorElement, param) -> TensorElement:
    """(L(x)_λ ⊗ α + α ⊗ L(x)_λ) w."""
    t1 = act_on_leg(Lt, x, tensor_apply_endo_leg(alpha, w, 1), 0, param)
    t2 = act_on_leg(Lt, x, tensor_apply_endo_leg(alpha, w, 0), 1, param)
    return t1 + t2


def compute_J_delta(alg: HomConformalAlgebra, r, a: int | str) -> TensorElement:
    """J_δ(a) = α⊗α⊗α(Q(a)_λ [[r, r]] at λ = -D1-D2-D3) + M(a), where

    Q(x)_λ = L(x)_λ⊗α⊗α + α⊗L(x)_λ⊗α + α⊗α⊗ad(x)_λ,
    M(a) = Σ_j P(a_λ r_j)_μ (r12 - r21) ⊗ α²(l_j) at λ = -D1-D2-D3, μ = -D1-D2
         - Σ_j P(α(a))_λ (P(r_j)_μ (r12 - r21)) ⊗ α²(l_j) at λ = -D1-D2-D3, μ = -D3,
    with P(x)_λ = L(x)_λ⊗α + α⊗L(x)_λ.
    """
    r = _value(r)
    _require_fixed(alg, r)
    if isinstance(a, str):
        a = alg.module.index(a)
    Lt = alg.product
    adt = sub_adjacent_table(Lt)
    al = alg.alpha
    x = alg.gen(a)
    rr = compute_double_bracket(alg, r)
    q = (act_on_leg(Lt, x, tensor_apply_endos([None, al, al], rr), 0, L)
         + act_on_leg(Lt, x, tensor_apply_endos([al, None, al], rr), 1, L)
         + act_on_leg(adt, x, tensor_apply_endos([al, al, None], rr), 2, L))
    q = tensor_apply_endos([al, al, al], q.subs({"L": -D1 - D2 - D3}))

    skew = r - r.swap12()
    al2 = al.power(2)
    m1 = TensorElement.zero((alg.module,) * 3)
    m2 = TensorElement.zero((alg.module,) * 3)
    for rj, lj in decompose(r):
        tail = apply_endo(al2, lj)
        arj = _apply(Lt, x, rj, L)
        m1 = m1 + _extend(_P_action(Lt, al, arj, skew, M), tail)
        inner = _P_action(Lt, al, rj, skew, M)
        m2 = m2 + _extend(_P_action(Lt, al, alg.twist(x), inner, L), tail)
    m1 = m1.subs({"L": -D1 - D2 - D3, "M": -D1 - D2})
    m2 = m2.subs({"L": -D1 - D2 - D3, "M": -D3})
    return q + m1 - m2


@dataclass
class ObstructionComparison:
    """Coalgebra verdict of a coboundary against the vanishing of J_δ."""

    coalgebra: Report
    obstruction: Report

    @property
    def agree(self) -> bool:
        return self.coalgebra.passed == self.obstruction.passed

    def identity_report(self) -> Report:
        """Generator-wise difference between J_δ and the coalgebra residual."""
        out = Report(self.coalgebra.subject)
        for c1, c2 in zip(self.coalgebra.checks, self.obstruction.checks):
            out.add("obstruction-identity", c1.tuple, c2.residual - c1.residual)
        return out

    def report(self, subject: str = "coboundary") -> Report:
        out = Report(subject)
        out.add("obstruction-equivalence",
                ("coalgebra" if self.coalgebra.passed else "not-coalgebra",
                 "J=0" if self.obstruction.passed else "J!=0"),
                const(0 if self.agree else 1))
        return out


def check_coboundary_obstruction(alg: HomConformalAlgebra, r) -> ObstructionComparison:
    """Compare 'the coboundary of r is a coalgebra' with 'J_δ(a) = 0 for every generator'."""
    r = _value(r)
    cob = coboundary_cobracket(alg, r)
    coal = check_coalgebra(cob)
    obs = Report(alg.name)
    for a in range(alg.rank):
        obs.add("obstruction", (alg.basis[a],), compute_J_delta(alg, r, a))
    return ObstructionComparison(coal, obs)


# -- transport between the equivalent descriptions -------------------------------

def canonical_pairing_form(module: FreeConformalModule, n: int) -> ConformalBilinearForm:
    """ω(x + a, y + b)_λ = b_{-λ}(x) - a_λ(y) on A ⊕ A* (first n labels from A)."""
    size = module.rank
    rows = []
    for i in range(size):
        row = []
        for j in range(size):
            if i < n and j == i + n:
                row.append(ONE)
            elif i >= n and j == i - n:
                row.append(-ONE)
            else:
                row.append(ZERO)
        rows.append(tuple(row))
    return ConformalBilinearForm(module, tuple(rows))


def bialgebra_double(alg: HomConformalAlgebra, algstar: HomConformalAlgebra):
    """Bicrossed Lie algebra g(A) ⋈ g(A*) with its split and canonical form."""
    acts = dual_actions(alg, algstar)
    gA = sub_adjacent(alg, certify=False)
    gB = sub_adjacent(algstar, certify=False)
    data = MatchedPairData(gA, gB, "lie", rho=acts["L*"], sigma=acts["L*dual"], name="double")
    double = bicrossed_lie(data, name=f"{alg.name}><{algstar.name}")
    n = alg.rank
    split = (double.basis[:n], double.basis[n:])
    return double, split, canonical_pairing_form(double.module, n)


@dataclass
class BialgebraTransport:
    """Verdicts of the four equivalent descriptions of a bialgebra."""

    bialgebra: Report
    pairs: DualPairComparison
    parakahler: Report

    @property
    def verdicts(self) -> dict[str, bool]:
        return {
            "bialgebra": self.bialgebra.passed,
            "lie-pair": self.pairs.lie.passed,
            "lsc-pair": self.pairs.lsc.passed,
            "parakahler": self.parakahler.passed,
        }

    @property
    def agree(self) -> bool:
        return len(set(self.verdicts.values())) == 1


def check_bialgebra_transport(alg: HomConformalAlgebra, algstar: HomConformalAlgebra) -> BialgebraTransport:
    double, split, omega = bialgebra_double(alg, algstar)
    return BialgebraTransport(check_bialgebra(alg, algstar),
                              check_dual_pair_equivalence(alg, algstar),
                              check_parakahler(double, split, omega))
