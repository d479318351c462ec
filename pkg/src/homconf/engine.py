"""Sesquilinear λ-products on structure tables and the algebra axiom checkers.

A table stores ``e_i λ e_j = Σ_k P_k^{ij}(L, D) e_k``.  Products of arbitrary
elements are expanded by sesquilinearity:

    (Σ f_i(∂) e_i)_λ (Σ g_j(∂) e_j) = Σ f_i(-λ) g_j(λ+∂) P_k^{ij}(λ, ∂) e_k

and ``λ`` may be any polynomial, including ones that mention the result's
own ``∂`` (so ``x_{-μ-∂} y`` is a single call).  Because substitution is
simultaneous, this equals expanding with a fresh parameter and substituting
afterwards.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Iterable, Mapping, Sequence

from .polyring import Poly, var, const, ZERO
from .module import (D, LEG, FreeConformalModule, ModuleElement, TensorElement, Endomorphism,
                     ModuleMismatch, apply_endo)
from .report import Report

__all__ = [
    "StructureTable",
    "HomConformalAlgebra",
    "KINDS",
    "lambda_apply",
    "act_on_leg",
    "check_skew",
    "check_hom_jacobi",
    "check_left_symmetry",
    "check_novikov",
    "check_multiplicative",
    "check_shift_identities",
    "check_axioms",
    "AXIOM_CHECKS",
    "default_axioms",
    "ParamCollision",
    "certified",
]

L, M, N = var("L"), var("M"), var("N")
_D = var(D)
KINDS = ("lie", "left-symmetric", "novikov")


class ParamCollision(ValueError):
    pass


def _poly(p) -> Poly:
    if isinstance(p, Poly):
        return p
    if isinstance(p, str):
        return var(p)
    return const(p)


class StructureTable:
    """λ-product data ``left × right → out`` keyed by basis index pairs."""

    def __init__(self, left: FreeConformalModule, right: FreeConformalModule,
                 out: FreeConformalModule, entries: Mapping[tuple[int, int], Sequence] | None = None):
        self.left, self.right, self.out = left, right, out
        clean: dict[tuple[int, int], tuple[Poly, ...]] = {}
        for (i, j), vec in (entries or {}).items():
            if not (0 <= i < left.rank and 0 <= j < right.rank):
                raise IndexError(f"table index {(i, j)} out of range")
            vec = tuple(_poly(c) for c in vec)
            if len(vec) != out.rank:
                raise ModuleMismatch("table entry length differs from codomain rank")
            for c in vec:
                extra = c.variables() - {"L", D}
                if extra:
                    raise ValueError(f"table entries may only use L and D, found {sorted(extra)}")
            if any(vec):
                clean[(i, j)] = vec
        self.entries = clean
        self._cache: dict = {}

    @classmethod
    def zero(cls, left, right=None, out=None) -> "StructureTable":
        right = right or left
        out = out or right
        return cls(left, right, out, {})

    @classmethod
    def from_elements(cls, left, right, out, images: Mapping[tuple[int, int], ModuleElement]):
        return cls(left, right, out, {k: v.coeffs for k, v in images.items()})

    def entry(self, i: int, j: int) -> tuple[Poly, ...] | None:
        return self.entries.get((i, j))

    def element(self, i: int, j: int) -> ModuleElement:
        vec = self.entries.get((i, j))
        return ModuleElement(self.out, vec if vec else (ZERO,) * self.out.rank)

    def at(self, i: int, j: int, lam: Poly):
        """Entry (i, j) with L replaced by ``lam``; memoised."""
        vec = self.entries.get((i, j))
        if vec is None:
            return None
        key = (i, j, lam)
        hit = self._cache.get(key)
        if hit is None:
            sub = {"L": lam}
            hit = tuple(c.subs(sub) if c else c for c in vec)
            self._cache[key] = hit
        return hit

    def is_zero(self) -> bool:
        return not self.entries

    def map_entries(self, fn: Callable[[Poly], Poly]) -> "StructureTable":
        return StructureTable(self.left, self.right, self.out,
                              {k: tuple(fn(c) for c in v) for k, v in self.entries.items()})

    def __add__(self, other: "StructureTable") -> "StructureTable":
        self._same(other)
        out = {k: list(v) for k, v in self.entries.items()}
        for k, v in other.entries.items():
            cur = out.setdefault(k, [ZERO] * self.out.rank)
            for i, c in enumerate(v):
                cur[i] = cur[i] + c
        return StructureTable(self.left, self.right, self.out, out)

    def __neg__(self) -> "StructureTable":
        return self.map_entries(lambda c: -c)

    def __sub__(self, other: "StructureTable") -> "StructureTable":
        return self + (-other)

    def _same(self, other):
        if (self.left, self.right, self.out) != (other.left, other.right, other.out):
            raise ModuleMismatch("tables over different modules")

    def __eq__(self, other):
        if not isinstance(other, StructureTable):
            return NotImplemented
        return ((self.left, self.right, self.out) == (other.left, other.right, other.out)
                and self.entries == other.entries)

    def __hash__(self):
        return hash((self.left, self.right, self.out, frozenset(self.entries.items())))

    def max_degree(self) -> int:
        return max((c.degree() for v in self.entries.values() for c in v), default=-1)

    def __repr__(self):
        rows = []
        for (i, j), vec in sorted(self.entries.items()):
            rows.append(f"{self.left.basis[i]}.{self.right.basis[j]} = "
                        f"{ModuleElement(self.out, vec)}")
        return "StructureTable(" + "; ".join(rows) + ")"


def _apply(t: StructureTable, x: ModuleElement, y: ModuleElement, lam: Poly) -> ModuleElement:
    xs = x.nonzero()
    ys = y.nonzero()
    n = t.out.rank
    if not xs or not ys or not t.entries:
        return ModuleElement(t.out, (ZERO,) * n)
    neg = {D: -lam}
    shift = {D: lam + _D}
    xs = [(i, f.subs(neg)) for i, f in xs]
    ys = [(j, g.subs(shift)) for j, g in ys]
    acc = [ZERO] * n
    for i, fi in xs:
        for j, gj in ys:
            vec = t.at(i, j, lam)
            if vec is None:
                continue
            c = fi * gj
            for k, p in enumerate(vec):
                if p:
                    acc[k] = acc[k] + c * p
    return ModuleElement(t.out, tuple(acc))


def lambda_apply(t: StructureTable, x: ModuleElement, y: ModuleElement, param) -> ModuleElement:
    """x_param y for the table t.

    ``param`` is either a variable name (which must not already occur in x or y)
    or an arbitrary polynomial in parameters and ``D``.
    """
    if x.module != t.left or y.module != t.right:
        raise ModuleMismatch("elements do not match the table domains")
    if isinstance(param, str):
        if param == D or param in x.variables() or param in y.variables():
            raise ParamCollision(f"parameter {param!r} already occurs in the operands")
    return _apply(t, x, y, _poly(param))


def act_on_leg(t: StructureTable, x: ModuleElement, w: TensorElement, leg: int, param) -> TensorElement:
    """λ-action of x on one leg (0-based) of a tensor.

    The leg's coefficient ``g(D_leg)`` becomes ``g(λ + D_leg)`` and the table's
    ``D`` is read as ``D_leg``.
    """
    if not 0 <= leg < w.arity:
        raise IndexError(f"leg {leg} out of range for arity {w.arity}")
    if x.module != t.left or w.modules[leg] != t.right:
        raise ModuleMismatch("operands do not match the table domains")
    lam = _poly(param)
    dl = var(LEG[leg])
    modules = w.modules[:leg] + (t.out,) + w.modules[leg + 1:]
    xs = [(i, f.subs({D: -lam})) for i, f in x.nonzero()]
    if not xs or not w.coeffs or not t.entries:
        return TensorElement(modules, {})
    shift = {LEG[leg]: lam + dl}
    to_leg = {D: dl}
    table_cache: dict[tuple[int, int], tuple] = {}
    out: dict[tuple[int, ...], Poly] = {}
    for idx, g in w.coeffs.items():
        j = idx[leg]
        gs = g.subs(shift)
        for i, fi in xs:
            key = (i, j)
            if key not in table_cache:
                vec = t.at(i, j, lam)
                table_cache[key] = None if vec is None else tuple(p.subs(to_leg) for p in vec)
            vec = table_cache[key]
            if vec is None:
                continue
            c = fi * gs
            for k, p in enumerate(vec):
                if p:
                    new = idx[:leg] + (k,) + idx[leg + 1:]
                    out[new] = out.get(new, ZERO) + c * p
    return TensorElement(modules, out)


@dataclass
class HomConformalAlgebra:
    module: FreeConformalModule
    product: StructureTable
    alpha: Endomorphism
    kind: str = "left-symmetric"
    name: str = "A"

    def __post_init__(self):
        if self.kind not in KINDS:
            raise ValueError(f"unknown algebra kind {self.kind!r}")
        t = self.product
        if not (t.left == t.right == t.out == self.module):
            raise ModuleMismatch("product table must be square over the algebra module")
        if self.alpha.module != self.module:
            raise ModuleMismatch("twist acts on a different module")

    @property
    def rank(self) -> int:
        return self.module.rank

    @property
    def basis(self) -> tuple[str, ...]:
        return self.module.basis

    def gen(self, i) -> ModuleElement:
        return self.module.gen(i)

    def prod(self, x: ModuleElement, y: ModuleElement, lam) -> ModuleElement:
        return _apply(self.product, x, y, _poly(lam))

    def twist(self, x: ModuleElement) -> ModuleElement:
        return apply_endo(self.alpha, x)

    def with_(self, **changes) -> "HomConformalAlgebra":
        data = dict(module=self.module, product=self.product, alpha=self.alpha,
                    kind=self.kind, name=self.name)
        data.update(changes)
        return HomConformalAlgebra(**data)

    def __eq__(self, other):
        if not isinstance(other, HomConformalAlgebra):
            return NotImplemented
        return (self.module == other.module and self.product == other.product
                and self.alpha == other.alpha and self.kind == other.kind)


class _Ctx:
    """Per-check memo of generators, twisted generators and basis products."""

    def __init__(self, alg: HomConformalAlgebra):
        self.alg = alg
        self.e = [alg.gen(i) for i in range(alg.rank)]
        self.ae = [alg.twist(x) for x in self.e]
        self.memo: dict = {}

    def p(self, a: int, b: int, lam: Poly) -> ModuleElement:
        key = (a, b, lam)
        hit = self.memo.get(key)
        if hit is None:
            hit = self.alg.prod(self.e[a], self.e[b], lam)
            self.memo[key] = hit
        return hit

    def labels(self, *idx):
        return tuple(self.alg.basis[i] for i in idx)


def _triples(n):
    for a in range(n):
        for b in range(n):
            for c in range(n):
                yield a, b, c


def check_skew(alg: HomConformalAlgebra) -> Report:
    """[a_λ b] + [b_μ a]|_{μ=-λ-∂} for every basis pair."""
    cx = _Ctx(alg)
    rep = Report(alg.name)
    flip = -L - _D
    for a in range(alg.rank):
        for b in range(alg.rank):
            rep.add("skew", cx.labels(a, b), cx.p(a, b, L) + cx.p(b, a, flip))
    return rep


def check_hom_jacobi(alg: HomConformalAlgebra) -> Report:
    """[α(a)_λ[b_μ c]] - [[a_λ b]_{λ+μ} α(c)] - [α(b)_μ [a_λ c]]."""
    cx = _Ctx(alg)
    rep = Report(alg.name)
    for a, b, c in _triples(alg.rank):
        t1 = alg.prod(cx.ae[a], cx.p(b, c, M), L)
        t2 = alg.prod(cx.p(a, b, L), cx.ae[c], L + M)
        t3 = alg.prod(cx.ae[b], cx.p(a, c, L), M)
        rep.add("jacobi", cx.labels(a, b, c), t1 - t2 - t3)
    return rep


def _ls_residual(alg, cx, a, b, c) -> ModuleElement:
    t1 = alg.prod(cx.p(a, b, L), cx.ae[c], L + M)
    t2 = alg.prod(cx.ae[a], cx.p(b, c, M), L)
    t3 = alg.prod(cx.p(b, a, M), cx.ae[c], L + M)
    t4 = alg.prod(cx.ae[b], cx.p(a, c, L), M)
    return t1 - t2 - t3 + t4


def check_left_symmetry(alg: HomConformalAlgebra) -> Report:
    """(a_λ b)_{λ+μ} α(c) - α(a)_λ(b_μ c) - (b_μ a)_{λ+μ} α(c) + α(b)_μ(a_λ c)."""
    cx = _Ctx(alg)
    rep = Report(alg.name)
    for a, b, c in _triples(alg.rank):
        rep.add("left-symmetry", cx.labels(a, b, c), _ls_residual(alg, cx, a, b, c))
    return rep


def check_novikov(alg: HomConformalAlgebra) -> Report:
    """(a_λ b)_{λ+μ} α(c) - (a_λ c)_{-μ-∂} α(b)."""
    cx = _Ctx(alg)
    rep = Report(alg.name)
    for a, b, c in _triples(alg.rank):
        t1 = alg.prod(cx.p(a, b, L), cx.ae[c], L + M)
        t2 = alg.prod(cx.p(a, c, L), cx.ae[b], -M - _D)
        rep.add("novikov", cx.labels(a, b, c), t1 - t2)
    return rep


def check_multiplicative(alg: HomConformalAlgebra) -> Report:
    """α(a_λ b) - α(a)_λ α(b)."""
    cx = _Ctx(alg)
    rep = Report(alg.name)
    for a in range(alg.rank):
        for b in range(alg.rank):
            lhs = alg.twist(cx.p(a, b, L))
            rhs = alg.prod(cx.ae[a], cx.ae[b], L)
            rep.add("multiplicative", cx.labels(a, b), lhs - rhs)
    return rep


def check_shift_identities(alg: HomConformalAlgebra) -> Report:
    """Identities that hold for every table by sesquilinearity alone.

    shift-outer:  (a_{-λ-∂} b)_{λ+μ} α(c) = (a_μ b)_{λ+μ} α(c)
    shift-inner:  α(a)_μ (b_{-λ-∂} c) = α(a)_μ (b_ν c)|_{ν=-λ-∂-μ}
    shift-mixed:  the rewritten left-symmetry residual
                  (a_λ b)_{-μ-∂} α(c) - α(a)_λ(b_{-μ-∂} c)
                  - (b_{-λ-∂} a)_{-μ-∂} α(c) + α(b)_{-μ-∂-λ}(a_λ c)
                  minus the left-symmetry residual with μ ↦ -λ-μ-∂.
    """
    cx = _Ctx(alg)
    rep = Report(alg.name)
    n = alg.rank
    for a, b, c in _triples(n):
        lab = cx.labels(a, b, c)
        lhs = alg.prod(cx.p(a, b, -L - _D), cx.ae[c], L + M)
        rhs = alg.prod(cx.p(a, b, M), cx.ae[c], L + M)
        rep.add("shift-outer", lab, lhs - rhs)

        lhs = alg.prod(cx.ae[a], cx.p(b, c, -L - _D), M)
        rhs = alg.prod(cx.ae[a], cx.p(b, c, N), M).subs({"N": -L - _D - M})
        rep.add("shift-inner", lab, lhs - rhs)

        outer = -M - _D
        mixed = (alg.prod(cx.p(a, b, L), cx.ae[c], outer)
                 - alg.prod(cx.ae[a], cx.p(b, c, outer), L)
                 - alg.prod(cx.p(b, a, -L - _D), cx.ae[c], outer)
                 + alg.prod(cx.ae[b], cx.p(a, c, L), -M - _D - L))
        ls = _ls_residual(alg, cx, a, b, c).subs({"M": -L - M - _D})
        rep.add("shift-mixed", lab, mixed - ls)
    return rep


AXIOM_CHECKS: dict[str, Callable[[HomConformalAlgebra], Report]] = {
    "skew": check_skew,
    "jacobi": check_hom_jacobi,
    "left-symmetry": check_left_symmetry,
    "novikov": check_novikov,
    "multiplicative": check_multiplicative,
    "shift": check_shift_identities,
}


def default_axioms(kind: str) -> list[str]:
    """Axioms certifying an algebra of the given kind."""
    if kind == "lie":
        return ["skew", "jacobi", "multiplicative"]
    if kind == "left-symmetric":
        return ["left-symmetry", "multiplicative"]
    if kind == "novikov":
        return ["left-symmetry", "multiplicative", "novikov"]
    raise ValueError(f"unknown kind {kind!r}")


def check_axioms(alg: HomConformalAlgebra, axioms: Iterable[str] | None = None) -> Report:
    names = list(axioms) if axioms is not None else default_axioms(alg.kind)
    rep = Report(alg.name)
    for name in names:
        try:
            fn = AXIOM_CHECKS[name]
        except KeyError:
            raise KeyError(f"unknown axiom {name!r}; known: {sorted(AXIOM_CHECKS)}") from None
        rep.extend(fn(alg))
    return rep


def certified(alg: HomConformalAlgebra) -> bool:
    return check_axioms(alg).passed
