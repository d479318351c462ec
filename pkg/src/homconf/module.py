"""Finite free C[∂]-modules, their elements, twists, tensor powers and forms.

An element of a rank-n module is a vector of polynomials in the derivation
variable ``D``.  A tensor of arity m carries one derivation variable per leg,
``D1`` ... ``Dm``; coefficient ``c(D1, D2)`` on ``e_i ⊗ e_j`` stands for
``c(∂⊗1, 1⊗∂) (e_i ⊗ e_j)``.  Lambda-parameters may appear in either kind of
coefficient while an expression is being built.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Mapping, Sequence

from .polyring import Poly, var, const, ZERO, ONE, determinant

__all__ = [
    "D",
    "LEG",
    "FreeConformalModule",
    "ModuleElement",
    "TensorElement",
    "Endomorphism",
    "ConformalBilinearForm",
    "ModuleMismatch",
    "apply_endo",
    "tensor_apply_endo_leg",
    "eliminate_lambda",
    "leg_sum",
    "direct_sum_modules",
    "tensor_apply_endos",
    "check_form_skew",
    "check_form_nondegenerate",
]

D = "D"
LEG = ("D1", "D2", "D3", "D4")
_D = var(D)


class ModuleMismatch(ValueError):
    pass


def leg_sum(m: int, sign: int = 1) -> Poly:
    """``D1 + ... + Dm`` (times ``sign``); the total derivation on an arity-m tensor."""
    total = ZERO
    for k in range(m):
        total = total + var(LEG[k])
    return total if sign > 0 else -total


@dataclass(frozen=True)
class FreeConformalModule:
    basis: tuple[str, ...]

    def __post_init__(self):
        object.__setattr__(self, "basis", tuple(self.basis))
        if not self.basis:
            raise ValueError("a free module needs at least one basis label")
        if len(set(self.basis)) != len(self.basis):
            raise ValueError(f"duplicate basis labels in {self.basis}")

    @property
    def rank(self) -> int:
        return len(self.basis)

    def index(self, label: str) -> int:
        try:
            return self.basis.index(label)
        except ValueError:
            raise KeyError(f"unknown basis label {label!r}") from None

    def gen(self, i: int | str) -> "ModuleElement":
        if isinstance(i, str):
            i = self.index(i)
        return ModuleElement(self, tuple(ONE if k == i else ZERO for k in range(self.rank)))

    def zero(self) -> "ModuleElement":
        return ModuleElement(self, (ZERO,) * self.rank)

    def element(self, coeffs: Mapping[str, Poly] | Sequence[Poly]) -> "ModuleElement":
        if isinstance(coeffs, Mapping):
            vec = [ZERO] * self.rank
            for label, c in coeffs.items():
                vec[self.index(label)] = _as_poly(c)
            return ModuleElement(self, tuple(vec))
        return ModuleElement(self, tuple(_as_poly(c) for c in coeffs))

    def dual(self) -> "FreeConformalModule":
        """Module of the conformal dual; a primed label is un-primed, others get a prime."""
        labels = [b[:-1] if b.endswith("'") else b + "'" for b in self.basis]
        if len(set(labels)) != len(labels):
            labels = [b + "'" for b in self.basis]
        return FreeConformalModule(tuple(labels))


def direct_sum_modules(a: FreeConformalModule, b: FreeConformalModule) -> FreeConformalModule:
    labels = list(a.basis)
    taken = set(labels)
    for lab in b.basis:
        new = lab
        while new in taken:
            new = new + "_m"
        labels.append(new)
        taken.add(new)
    return FreeConformalModule(tuple(labels))


def _as_poly(c) -> Poly:
    return c if isinstance(c, Poly) else const(c)


@dataclass(frozen=True)
class ModuleElement:
    module: FreeConformalModule
    coeffs: tuple[Poly, ...]

    def __post_init__(self):
        if len(self.coeffs) != self.module.rank:
            raise ModuleMismatch("coefficient vector length differs from rank")

    def _check(self, other: "ModuleElement"):
        if other.module != self.module:
            raise ModuleMismatch("elements of different modules")

    def __add__(self, other: "ModuleElement") -> "ModuleElement":
        self._check(other)
        return ModuleElement(self.module, tuple(a + b for a, b in zip(self.coeffs, other.coeffs)))

    def __sub__(self, other: "ModuleElement") -> "ModuleElement":
        self._check(other)
        return ModuleElement(self.module, tuple(a - b for a, b in zip(self.coeffs, other.coeffs)))

    def __neg__(self) -> "ModuleElement":
        return ModuleElement(self.module, tuple(-a for a in self.coeffs))

    def scale(self, p) -> "ModuleElement":
        p = _as_poly(p)
        return ModuleElement(self.module, tuple(a * p for a in self.coeffs))

    def derive(self) -> "ModuleElement":
        """The element ∂x."""
        return self.scale(_D)

    def is_zero(self) -> bool:
        return all(c.is_zero() for c in self.coeffs)

    def subs(self, mapping) -> "ModuleElement":
        return ModuleElement(self.module, tuple(c.subs(mapping) for c in self.coeffs))

    def nonzero(self):
        return [(i, c) for i, c in enumerate(self.coeffs) if c]

    def variables(self) -> set[str]:
        out: set[str] = set()
        for c in self.coeffs:
            out |= c.variables()
        return out

    def __str__(self):
        parts = [f"({c})*{self.module.basis[i]}" for i, c in self.nonzero()]
        return " + ".join(parts) if parts else "0"


@dataclass(frozen=True)
class TensorElement:
    """Element of M1 ⊗ ... ⊗ Mm with coefficients in D1..Dm (and parameters)."""

    modules: tuple[FreeConformalModule, ...]
    coeffs: Mapping[tuple[int, ...], Poly] = field(default_factory=dict)

    def __post_init__(self):
        object.__setattr__(self, "modules", tuple(self.modules))
        clean = {}
        for idx, c in dict(self.coeffs).items():
            idx = tuple(idx)
            if len(idx) != len(self.modules):
                raise ModuleMismatch("multi-index arity differs from tensor arity")
            for leg, i in enumerate(idx):
                if not 0 <= i < self.modules[leg].rank:
                    raise IndexError(f"index {i} out of range on leg {leg + 1}")
            c = _as_poly(c)
            if c:
                clean[idx] = c
        object.__setattr__(self, "coeffs", clean)

    @property
    def arity(self) -> int:
        return len(self.modules)

    @classmethod
    def zero(cls, modules) -> "TensorElement":
        return cls(tuple(modules), {})

    @classmethod
    def pure(cls, elements: Sequence[ModuleElement]) -> "TensorElement":
        """x1 ⊗ ... ⊗ xm, reading the ∂ of factor k as ``Dk``."""
        acc: dict[tuple[int, ...], Poly] = {(): ONE}
        for leg, x in enumerate(elements):
            nxt = {}
            for idx, c in acc.items():
                for i, f in x.nonzero():
                    nxt[idx + (i,)] = c * f.subs({D: var(LEG[leg])})
            acc = nxt
        return cls(tuple(x.module for x in elements), acc)

    def _check(self, other: "TensorElement"):
        if other.modules != self.modules:
            raise ModuleMismatch("tensors over different modules")

    def __add__(self, other: "TensorElement") -> "TensorElement":
        self._check(other)
        out = dict(self.coeffs)
        for idx, c in other.coeffs.items():
            out[idx] = out.get(idx, ZERO) + c
        return TensorElement(self.modules, out)

    def __neg__(self) -> "TensorElement":
        return TensorElement(self.modules, {i: -c for i, c in self.coeffs.items()})

    def __sub__(self, other: "TensorElement") -> "TensorElement":
        return self + (-other)

    def scale(self, p) -> "TensorElement":
        p = _as_poly(p)
        return TensorElement(self.modules, {i: c * p for i, c in self.coeffs.items()})

    def is_zero(self) -> bool:
        return not self.coeffs

    def subs(self, mapping) -> "TensorElement":
        return TensorElement(self.modules, {i: c.subs(mapping) for i, c in self.coeffs.items()})

    def swap12(self) -> "TensorElement":
        """τ12: exchange the first two legs together with their ∂ variables."""
        if self.arity < 2 or self.modules[0] != self.modules[1]:
            raise ModuleMismatch("τ12 needs two legs over the same module")
        ren = {LEG[0]: var(LEG[1]), LEG[1]: var(LEG[0])}
        out = {}
        for idx, c in self.coeffs.items():
            out[(idx[1], idx[0]) + idx[2:]] = c.subs(ren)
        return TensorElement(self.modules, out)

    def variables(self) -> set[str]:
        out: set[str] = set()
        for c in self.coeffs.values():
            out |= c.variables()
        return out

    def __eq__(self, other):
        if not isinstance(other, TensorElement):
            return NotImplemented
        return self.modules == other.modules and self.coeffs == other.coeffs

    def __hash__(self):
        return hash((self.modules, frozenset(self.coeffs.items())))

    def __str__(self):
        if not self.coeffs:
            return "0"
        parts = []
        for idx in sorted(self.coeffs):
            labels = "|".join(self.modules[k].basis[i] for k, i in enumerate(idx))
            parts.append(f"({self.coeffs[idx]})*{labels}")
        return " + ".join(parts)


@dataclass(frozen=True)
class Endomorphism:
    """C[∂]-linear map; ``matrix[k][j]`` is the coefficient of e_k in the image of e_j."""

    module: FreeConformalModule
    matrix: tuple[tuple[Poly, ...], ...]

    def __post_init__(self):
        n = self.module.rank
        m = tuple(tuple(_as_poly(c) for c in row) for row in self.matrix)
        if len(m) != n or any(len(r) != n for r in m):
            raise ModuleMismatch("endomorphism matrix does not match module rank")
        for row in m:
            for c in row:
                if c.variables() - {D}:
                    raise ValueError("endomorphism entries must be polynomials in D only")
        object.__setattr__(self, "matrix", m)

    @classmethod
    def identity(cls, module: FreeConformalModule) -> "Endomorphism":
        n = module.rank
        return cls(module, tuple(tuple(ONE if i == j else ZERO for j in range(n)) for i in range(n)))

    @classmethod
    def diagonal(cls, module: FreeConformalModule, entries: Sequence) -> "Endomorphism":
        n = module.rank
        return cls(module, tuple(tuple(_as_poly(entries[i]) if i == j else ZERO
                                       for j in range(n)) for i in range(n)))

    @classmethod
    def from_images(cls, module: FreeConformalModule, images: Sequence[ModuleElement]) -> "Endomorphism":
        n = module.rank
        return cls(module, tuple(tuple(images[j].coeffs[k] for j in range(n)) for k in range(n)))

    def image(self, j: int) -> ModuleElement:
        return ModuleElement(self.module, tuple(self.matrix[k][j] for k in range(self.module.rank)))

    def is_identity(self) -> bool:
        return self == Endomorphism.identity(self.module)

    def compose(self, other: "Endomorphism") -> "Endomorphism":
        """self ∘ other."""
        if other.module != self.module:
            raise ModuleMismatch("composition across modules")
        n = self.module.rank
        rows = []
        for i in range(n):
            row = []
            for j in range(n):
                acc = ZERO
                for k in range(n):
                    if self.matrix[i][k] and other.matrix[k][j]:
                        acc = acc + self.matrix[i][k] * other.matrix[k][j]
                row.append(acc)
            rows.append(tuple(row))
        return Endomorphism(self.module, tuple(rows))

    def power(self, k: int) -> "Endomorphism":
        out = Endomorphism.identity(self.module)
        for _ in range(k):
            out = out.compose(self)
        return out

    def dual(self, module: FreeConformalModule | None = None) -> "Endomorphism":
        """Twist on the conformal dual: transpose and ∂ ↦ -∂."""
        module = module or self.module.dual()
        n = self.module.rank
        neg = {D: -_D}
        return Endomorphism(module, tuple(tuple(self.matrix[j][i].subs(neg) for j in range(n))
                                          for i in range(n)))

    def direct_sum(self, other: "Endomorphism", module: FreeConformalModule) -> "Endomorphism":
        n, m = self.module.rank, other.module.rank
        rows = []
        for i in range(n + m):
            row = []
            for j in range(n + m):
                if i < n and j < n:
                    row.append(self.matrix[i][j])
                elif i >= n and j >= n:
                    row.append(other.matrix[i - n][j - n])
                else:
                    row.append(ZERO)
            rows.append(tuple(row))
        return Endomorphism(module, tuple(rows))


def apply_endo(e: Endomorphism, x: ModuleElement) -> ModuleElement:
    if x.module != e.module:
        raise ModuleMismatch("endomorphism and element live on different modules")
    n = e.module.rank
    out = [ZERO] * n
    for j, c in x.nonzero():
        for k in range(n):
            m = e.matrix[k][j]
            if m:
                out[k] = out[k] + m * c
    return ModuleElement(e.module, tuple(out))


def tensor_apply_endo_leg(e: Endomorphism, w: TensorElement, leg: int) -> TensorElement:
    """Apply e on one leg (0-based), reading the matrix ∂ as that leg's variable."""
    if not 0 <= leg < w.arity:
        raise IndexError(f"leg {leg} out of range for arity {w.arity}")
    if w.modules[leg] != e.module:
        raise ModuleMismatch("endomorphism does not act on this leg")
    ren = {D: var(LEG[leg])}
    n = e.module.rank
    cols = [[(k, e.matrix[k][j].subs(ren)) for k in range(n) if e.matrix[k][j]] for j in range(n)]
    out: dict[tuple[int, ...], Poly] = {}
    for idx, c in w.coeffs.items():
        for k, m in cols[idx[leg]]:
            new = idx[:leg] + (k,) + idx[leg + 1:]
            out[new] = out.get(new, ZERO) + m * c
    return TensorElement(w.modules, out)


def tensor_apply_endos(endos: Sequence[Endomorphism | None], w: TensorElement) -> TensorElement:
    for leg, e in enumerate(endos):
        if e is not None and not e.is_identity():
            w = tensor_apply_endo_leg(e, w, leg)
    return w


def eliminate_lambda(w, param: str, combo: Poly):
    """Substitute a lambda-parameter by an affine combination such as -D1-D2."""
    from .polyring import DEFAULT_ALPHABET
    if param not in DEFAULT_ALPHABET.lambda_params:
        raise KeyError(f"{param!r} is not a lambda-parameter")
    return w.subs({param: combo})


@dataclass(frozen=True)
class ConformalBilinearForm:
    """``matrix[i][j]`` is ω(e_i, e_j)_λ, a polynomial in L."""

    module: FreeConformalModule
    matrix: tuple[tuple[Poly, ...], ...]

    def __post_init__(self):
        n = self.module.rank
        m = tuple(tuple(_as_poly(c) for c in row) for row in self.matrix)
        if len(m) != n or any(len(r) != n for r in m):
            raise ModuleMismatch("form matrix does not match module rank")
        for row in m:
            for c in row:
                if c.variables() - {"L"}:
                    raise ValueError("form entries must be polynomials in L only")
        object.__setattr__(self, "matrix", m)

    @classmethod
    def zero(cls, module: FreeConformalModule) -> "ConformalBilinearForm":
        n = module.rank
        return cls(module, tuple((ZERO,) * n for _ in range(n)))

    def pair(self, x: ModuleElement, y: ModuleElement, lam: Poly) -> Poly:
        """ω(x, y)_lam for elements; ω(p(∂)a, q(∂)b)_λ = p(-λ) q(λ) ω(a, b)_λ."""
        if x.module != self.module or y.module != self.module:
            raise ModuleMismatch("form evaluated on foreign elements")
        total = ZERO
        ys = [(j, g.subs({D: lam})) for j, g in y.nonzero()]
        for i, f in x.nonzero():
            fi = f.subs({D: -lam})
            for j, gj in ys:
                w = self.matrix[i][j]
                if w:
                    total = total + fi * gj * w.subs({"L": lam})
        return total

    def flipped(self) -> "ConformalBilinearForm":
        """The form (v, w) ↦ -ω(w, v)_{-λ}; fixed exactly when ω is skew."""
        n = self.module.rank
        neg = {"L": -var("L")}
        return ConformalBilinearForm(self.module, tuple(tuple(-self.matrix[j][i].subs(neg)
                                                              for j in range(n)) for i in range(n)))

    def operator_matrix(self) -> list[list[Poly]]:
        """Matrix of v ↦ ω(v, ·) in the dual basis, as polynomials in D."""
        sub = {"L": -_D}
        return [[c.subs(sub) for c in row] for row in self.matrix]

    def determinant(self) -> Poly:
        return determinant(self.operator_matrix())


def check_form_skew(omega: ConformalBilinearForm, subject: str = "form"):
    """Entrywise residual ω(e_i, e_j)_λ + ω(e_j, e_i)_{-λ}."""
    from .report import Report
    rep = Report(subject)
    neg = {"L": -var("L")}
    b = omega.module.basis
    n = omega.module.rank
    for i in range(n):
        for j in range(n):
            rep.add("form-skew", (b[i], b[j]), omega.matrix[i][j] + omega.matrix[j][i].subs(neg))
    return rep


def check_form_nondegenerate(omega: ConformalBilinearForm, subject: str = "form"):
    """Passes iff the determinant of the induced map to the dual is a nonzero constant."""
    from .report import Report
    rep = Report(subject)
    det = omega.determinant()
    ok = det.is_constant() and not det.is_zero()
    rep.add("form-nondegenerate", (), det, verdict=ok)
    return rep
