"""Numeric cross-check of the axioms at random rational points.

This path never calls the symbolic product or substitution code.  An element
is a function ``d ↦ coefficient vector`` giving its value when ∂ acts as the
scalar ``d``; a λ-product of two such functions is

    (x_ν y)(d) = Σ x(-ν)_i · y(ν + d)_j · P_k^{ij}(ν, d)

with ν itself allowed to depend on ``d``.  Table entries are evaluated from
their raw term lists.  A symbolic residual vanishes iff (with overwhelming
probability) all sampled values vanish.
"""

from __future__ import annotations

import os
import random
from fractions import Fraction
from typing import Callable, Sequence

from .polyring import Poly, const
from .engine import HomConformalAlgebra, StructureTable, AXIOM_CHECKS
from .module import Endomorphism, TensorElement, LEG
from .report import Report

__all__ = ["oracle_check", "NumericAlgebra", "compile_poly", "random_point", "default_seed",
           "ORACLE_AXIOMS", "verdicts_agree", "NumericCoalgebra", "numeric_coboundary",
           "oracle_coalgebra", "oracle_cocycle", "numeric_double_bracket", "numeric_J_delta",
           "oracle_J_delta", "oracle_tensor_equal"]

Vec = list
Elem = Callable[[Fraction], Vec]


def default_seed() -> int:
    return int(os.environ.get("HOMCONF_SEED", "20240611"))


def compile_poly(p: Poly, names: Sequence[str]) -> Callable[..., Fraction]:
    """Evaluator for p taking positional values for ``names``."""
    terms = []
    for exps, c in p.items():
        extra = set(exps) - set(names)
        if extra:
            raise ValueError(f"unexpected variables {sorted(extra)}")
        terms.append((c, tuple(exps.get(n, 0) for n in names)))

    def ev(*vals):
        total = 0
        for c, es in terms:
            t = c
            for v, e in zip(vals, es):
                if e:
                    t = t * v ** e
            total += t
        return total

    return ev


def random_point(rng: random.Random) -> Fraction:
    return Fraction(rng.randint(-40, 40), rng.randint(1, 9))


class NumericTable:
    def __init__(self, t: StructureTable):
        self.n_out = t.out.rank
        self.cells = {}
        for (i, j), vec in t.entries.items():
            self.cells[(i, j)] = [(k, compile_poly(p, ("L", "D"))) for k, p in enumerate(vec) if p]
        self.by_left: dict[int, list] = {}
        for (i, j) in self.cells:
            self.by_left.setdefault(i, []).append(j)

    def apply(self, x: Elem, y: Elem, lamf: Callable[[Fraction], Fraction]) -> Elem:
        cells, n = self.cells, self.n_out

        def value(d):
            nu = lamf(d)
            xv = x(-nu)
            yv = y(nu + d)
            out = [0] * n
            for (i, j), entries in cells.items():
                xi, yj = xv[i], yv[j]
                if xi == 0 or yj == 0:
                    continue
                c = xi * yj
                for k, ev in entries:
                    out[k] += c * ev(nu, d)
            return out

        return value


class NumericEndo:
    def __init__(self, e: Endomorphism):
        n = e.module.rank
        self.n = n
        self.cells = [(k, j, compile_poly(e.matrix[k][j], ("D",)))
                      for k in range(n) for j in range(n) if e.matrix[k][j]]

    def apply(self, x: Elem) -> Elem:
        cells, n = self.cells, self.n

        def value(d):
            xv = x(d)
            out = [0] * n
            for k, j, ev in cells:
                if xv[j]:
                    out[k] += ev(d) * xv[j]
            return out

        return value


def unit(n: int, i: int) -> Elem:
    vec = [0] * n
    vec[i] = 1
    return lambda d: vec


def const_lam(v):
    return lambda d: v


def sub_elems(x: Elem, y: Elem) -> Elem:
    return lambda d: [a - b for a, b in zip(x(d), y(d))]


class NumericAlgebra:
    def __init__(self, alg: HomConformalAlgebra):
        self.n = alg.rank
        self.table = NumericTable(alg.product)
        self.alpha = NumericEndo(alg.alpha)
        self.e = [unit(self.n, i) for i in range(self.n)]
        self.ae = [self.alpha.apply(x) for x in self.e]

    def prod(self, x, y, lamf):
        return self.table.apply(x, y, lamf)


def _combine(*pairs):
    def value(d):
        out = None
        for sign, f in pairs:
            v = f(d)
            if out is None:
                out = [sign * c for c in v]
            else:
                out = [o + sign * c for o, c in zip(out, v)]
        return out
    return value


def _residual_skew(na, a, b, l, m, d):
    x = na.prod(na.e[a], na.e[b], const_lam(l))
    y = na.prod(na.e[b], na.e[a], lambda dd: -l - dd)
    return [p + q for p, q in zip(x(d), y(d))]


def _residual_jacobi(na, a, b, c, l, m, d):
    t1 = na.prod(na.ae[a], na.prod(na.e[b], na.e[c], const_lam(m)), const_lam(l))
    t2 = na.prod(na.prod(na.e[a], na.e[b], const_lam(l)), na.ae[c], const_lam(l + m))
    t3 = na.prod(na.ae[b], na.prod(na.e[a], na.e[c], const_lam(l)), const_lam(m))
    return _combine((1, t1), (-1, t2), (-1, t3))(d)


def _ls(na, a, b, c, l, m):
    t1 = na.prod(na.prod(na.e[a], na.e[b], const_lam(l)), na.ae[c], const_lam(l + m))
    t2 = na.prod(na.ae[a], na.prod(na.e[b], na.e[c], const_lam(m)), const_lam(l))
    t3 = na.prod(na.prod(na.e[b], na.e[a], const_lam(m)), na.ae[c], const_lam(l + m))
    t4 = na.prod(na.ae[b], na.prod(na.e[a], na.e[c], const_lam(l)), const_lam(m))
    return _combine((1, t1), (-1, t2), (-1, t3), (1, t4))


def _residual_ls(na, a, b, c, l, m, d):
    return _ls(na, a, b, c, l, m)(d)


def _residual_novikov(na, a, b, c, l, m, d):
    t1 = na.prod(na.prod(na.e[a], na.e[b], const_lam(l)), na.ae[c], const_lam(l + m))
    t2 = na.prod(na.prod(na.e[a], na.e[c], const_lam(l)), na.ae[b], lambda dd: -m - dd)
    return _combine((1, t1), (-1, t2))(d)


def _residual_mult(na, a, b, l, m, d):
    lhs = na.alpha.apply(na.prod(na.e[a], na.e[b], const_lam(l)))
    rhs = na.prod(na.ae[a], na.ae[b], const_lam(l))
    return _combine((1, lhs), (-1, rhs))(d)


def _residual_shift(na, a, b, c, l, m, d):
    # three identities stacked into one vector
    lhs = na.prod(na.prod(na.e[a], na.e[b], lambda dd: -l - dd), na.ae[c], const_lam(l + m))
    rhs = na.prod(na.prod(na.e[a], na.e[b], const_lam(m)), na.ae[c], const_lam(l + m))
    v1 = _combine((1, lhs), (-1, rhs))(d)
    lhs = na.prod(na.ae[a], na.prod(na.e[b], na.e[c], lambda dd: -l - dd), const_lam(m))
    nu = -l - d - m
    rhs = na.prod(na.ae[a], na.prod(na.e[b], na.e[c], const_lam(nu)), const_lam(m))
    v2 = _combine((1, lhs), (-1, rhs))(d)
    outer = lambda dd: -m - dd
    mixed = _combine(
        (1, na.prod(na.prod(na.e[a], na.e[b], const_lam(l)), na.ae[c], outer)),
        (-1, na.prod(na.ae[a], na.prod(na.e[b], na.e[c], outer), const_lam(l))),
        (-1, na.prod(na.prod(na.e[b], na.e[a], lambda dd: -l - dd), na.ae[c], outer)),
        (1, na.prod(na.ae[b], na.prod(na.e[a], na.e[c], const_lam(l)), lambda dd: -m - dd - l)),
    )(d)
    ls = _ls(na, a, b, c, l, -l - m - d)(d)
    v3 = [p - q for p, q in zip(mixed, ls)]
    return v1 + v2 + v3


_PAIR = {"skew": _residual_skew, "multiplicative": _residual_mult}
_TRIPLE = {"jacobi": _residual_jacobi, "left-symmetry": _residual_ls,
           "novikov": _residual_novikov, "shift": _residual_shift}
ORACLE_AXIOMS = tuple(_PAIR) + tuple(_TRIPLE)


def oracle_check(alg: HomConformalAlgebra, axiom: str, samples: int = 100,
                 seed: int | None = None) -> Report:
    """Evaluate an axiom residual at random rational (λ, μ, ∂) points.

    One check per basis tuple; the residual is the first nonzero sampled
    value (as a constant) or zero.
    """
    if axiom not in ORACLE_AXIOMS:
        raise KeyError(f"oracle does not cover axiom {axiom!r}")
    rng = random.Random(default_seed() if seed is None else seed)
    points = [(random_point(rng), random_point(rng), random_point(rng)) for _ in range(samples)]
    na = NumericAlgebra(alg)
    rep = Report(alg.name)
    n = alg.rank
    if axiom in _PAIR:
        fn = _PAIR[axiom]
        tuples = [(a, b) for a in range(n) for b in range(n)]
    else:
        fn = _TRIPLE[axiom]
        tuples = [(a, b, c) for a in range(n) for b in range(n) for c in range(n)]
    for tup in tuples:
        witness = 0
        for l, m, d in points:
            vals = fn(na, *tup, l, m, d)
            bad = next((v for v in vals if v != 0), None)
            if bad is not None:
                witness = bad
                break
        rep.add(axiom, tuple(alg.basis[i] for i in tup), const(witness))
    return rep


def verdicts_agree(alg: HomConformalAlgebra, axiom: str, samples: int = 100,
                   seed: int | None = None) -> tuple[bool, bool, bool]:
    """(symbolic verdict, numeric verdict, agreement) for one axiom."""
    sym = AXIOM_CHECKS[axiom](alg).passed
    num = oracle_check(alg, axiom, samples, seed).passed
    return sym, num, sym == num


# -- tensors ----------------------------------------------------------------------
#
# A numeric tensor is a function ds ↦ {multi-index: value}, ds holding the
# scalar values of D1, ..., Dm.

Tens = Callable[[tuple], dict]


def compile_tensor(w: TensorElement) -> Tens:
    names = LEG[:w.arity]
    cells = [(idx, compile_poly(c, names)) for idx, c in w.coeffs.items()]

    def value(ds):
        return {idx: ev(*ds) for idx, ev in cells}

    return value


def t_combine(*pairs) -> Tens:
    def value(ds):
        out: dict = {}
        for sign, f in pairs:
            for idx, v in f(ds).items():
                out[idx] = out.get(idx, 0) + sign * v
        return out
    return value


def t_pure(factors) -> Tens:
    """Pure tensor of leg factors; factor k maps ds to the vector of leg k."""
    def value(ds):
        acc = {(): 1}
        for k, f in enumerate(factors):
            vec = f(ds)
            acc = {idx + (i,): c * v for idx, c in acc.items() for i, v in enumerate(vec) if v}
        return acc
    return value


def t_extend(w: Tens, x: Elem) -> Tens:
    """w ⊗ x with x on a new last leg."""
    def value(ds):
        vec = x(ds[-1])
        return {idx + (i,): c * v for idx, c in w(ds[:-1]).items() for i, v in enumerate(vec) if v}
    return value


def t_endo(e: NumericEndo, w: Tens, leg: int) -> Tens:
    def value(ds):
        out: dict = {}
        d = ds[leg]
        for idx, c in w(ds).items():
            for k, j, ev in e.cells:
                if j == idx[leg]:
                    new = idx[:leg] + (k,) + idx[leg + 1:]
                    out[new] = out.get(new, 0) + ev(d) * c
        return out
    return value


def t_act(t: NumericTable, x: Callable, w: Tens, leg: int, nuf: Callable[[tuple], Fraction]) -> Tens:
    """x_ν acting on one leg; ``x`` maps (d, ds) to a vector so it may depend on ds."""
    def value(ds):
        nu = nuf(ds)
        xv = x(-nu, ds)
        shifted = ds[:leg] + (ds[leg] + nu,) + ds[leg + 1:]
        d = ds[leg]
        out: dict = {}
        for idx, c in w(shifted).items():
            j = idx[leg]
            for i, xi in enumerate(xv):
                if not xi:
                    continue
                for k, ev in t.cells.get((i, j), ()):
                    new = idx[:leg] + (k,) + idx[leg + 1:]
                    out[new] = out.get(new, 0) + xi * c * ev(nu, d)
        return out
    return value


class NumericCoalgebra:
    """Δ given numerically on generators: delta[i](d1, d2) ↦ {(a, b): value}."""

    def __init__(self, twist: Endomorphism, delta: Sequence[Callable]):
        self.alpha = NumericEndo(twist)
        self.delta = list(delta)

    @classmethod
    def from_data(cls, c) -> "NumericCoalgebra":
        return cls(c.twist, [compile_tensor(w) for w in c.delta])

    def on_leg(self, w: Tens, leg: int) -> Tens:
        def value(ds):
            merged = ds[:leg] + (ds[leg] + ds[leg + 1],) + ds[leg + 2:]
            pieces = [f((ds[leg], ds[leg + 1])) for f in self.delta]
            out: dict = {}
            for idx, c in w(merged).items():
                for (a, b), v in pieces[idx[leg]].items():
                    new = idx[:leg] + (a, b) + idx[leg + 1:]
                    out[new] = out.get(new, 0) + c * v
            return out
        return value

    def residual(self, k: int) -> Tens:
        base = self.delta[k]
        left = t_endo(self.alpha, self.on_leg(base, 1), 0)
        right = t_endo(self.alpha, self.on_leg(base, 0), 2)

        def swap(f):
            def value(ds):
                return {(i[1], i[0]) + i[2:]: v for i, v in f((ds[1], ds[0]) + ds[2:]).items()}
            return value

        return t_combine((1, left), (-1, swap(left)), (-1, right), (1, swap(right)))


def _elem_fn(x) -> Elem:
    cells = [(i, compile_poly(p, ("D",))) for i, p in enumerate(x.coeffs) if p]
    n = x.module.rank

    def value(d):
        out = [0] * n
        for i, ev in cells:
            out[i] = ev(d)
        return out

    return value


def _sub_adjacent_numeric(na: NumericAlgebra):
    """Numeric bracket [x_ν y] = x_ν y - y_{-ν-∂} x."""
    def br(x, y, nu):
        return sub_elems(na.prod(x, y, const_lam(nu)), na.prod(y, x, lambda d: -nu - d))
    return br


def _bracket_table(alg) -> NumericTable:
    from .constructions import sub_adjacent_table
    return NumericTable(sub_adjacent_table(alg.product))


def numeric_coboundary(alg, r: TensorElement) -> NumericCoalgebra:
    """δ(a) = (L(a)_ν ⊗ α + α ⊗ ad(a)_ν) r at ν = -d1-d2, evaluated pointwise."""
    na = NumericAlgebra(alg)
    adt = _bracket_table(alg)
    rf = compile_tensor(r)
    nu = lambda ds: -ds[0] - ds[1]
    deltas = []
    for a in range(alg.rank):
        x = (lambda a: lambda d, ds: na.e[a](d))(a)
        t1 = t_act(na.table, x, t_endo(na.alpha, rf, 1), 0, nu)
        t2 = t_act(adt, x, t_endo(na.alpha, rf, 0), 1, nu)
        deltas.append(t_combine((1, t1), (1, t2)))
    return NumericCoalgebra(alg.alpha, deltas)


def _points(rng, samples, m):
    return [tuple(random_point(rng) for _ in range(m)) for _ in range(samples)]


def _tensor_report(name, axiom, labels, fns, samples, seed, m, extra=0):
    rng = random.Random(default_seed() if seed is None else seed)
    pts = _points(rng, samples, m + extra)
    rep = Report(name)
    for lab, f in zip(labels, fns):
        witness = 0
        for p in pts:
            bad = next((v for v in f(p).values() if v != 0), None)
            if bad is not None:
                witness = bad
                break
        rep.add(axiom, lab, const(witness))
    return rep


def oracle_coalgebra(c, samples: int = 100, seed: int | None = None, numeric: NumericCoalgebra | None = None) -> Report:
    nc = numeric or NumericCoalgebra.from_data(c)
    labels = [(b,) for b in c.module.basis]
    return _tensor_report(c.name, "coalgebra", labels,
                          [nc.residual(k) for k in range(c.module.rank)], samples, seed, 3)


def oracle_cocycle(alg, c, samples: int = 100, seed: int | None = None) -> Report:
    """δ(α([a_λ b])) - φ(a)_λ δ(b) + φ(b)_{-λ-∂} δ(a) at random (d1, d2, λ)."""
    na = NumericAlgebra(alg)
    adt = _bracket_table(alg)
    br = _sub_adjacent_numeric(na)
    nc = NumericCoalgebra.from_data(c)
    n = alg.rank
    fns, labels = [], []
    for a in range(n):
        for b in range(n):
            def f(p, a=a, b=b):
                d1, d2, lam = p
                ds = (d1, d2)
                x = na.alpha.apply(br(na.e[a], na.e[b], lam))
                xv = x(d1 + d2)
                lhs: dict = {}
                for i, v in enumerate(xv):
                    if v:
                        for idx, w in nc.delta[i](ds).items():
                            lhs[idx] = lhs.get(idx, 0) + v * w

                def phi(g, w, nuf):
                    xg = lambda d, ds_: na.e[g](d)
                    return t_combine((1, t_act(na.table, xg, t_endo(na.alpha, w, 1), 0, nuf)),
                                     (1, t_act(adt, xg, t_endo(na.alpha, w, 0), 1, nuf)))

                t1 = phi(a, nc.delta[b], lambda ds_: lam)(ds)
                t2 = phi(b, nc.delta[a], lambda ds_: -lam - ds_[0] - ds_[1])(ds)
                out = dict(lhs)
                for idx, v in t1.items():
                    out[idx] = out.get(idx, 0) - v
                for idx, v in t2.items():
                    out[idx] = out.get(idx, 0) + v
                return out
            fns.append(f)
            labels.append((alg.basis[a], alg.basis[b]))
    return _tensor_report(alg.name, "cocycle", labels, fns, samples, seed, 3)


def _pieces(r: TensorElement):
    """Pure pieces (r_i, l_i) as numeric elements, one per monomial."""
    A, B = r.modules
    out = []
    for (a, b), coeff in sorted(r.coeffs.items()):
        for exps, c in coeff.items():
            p = exps.get("D1", 0)
            q = exps.get("D2", 0)
            rest = {k: v for k, v in exps.items() if k not in ("D1", "D2")}
            if rest:
                raise ValueError("numeric pieces need r with coefficients in D1, D2 only")

            def left(d, a=a, p=p):
                v = [0] * A.rank
                v[a] = d ** p
                return v

            def right(d, b=b, q=q, c=c):
                v = [0] * B.rank
                v[b] = c * d ** q
                return v

            out.append((left, right))
    return out


def numeric_double_bracket(alg, r: TensorElement) -> Tens:
    na = NumericAlgebra(alg)
    br = _sub_adjacent_numeric(na)
    al = na.alpha.apply
    terms = []
    pieces = _pieces(r)
    for ri, li in pieces:
        for rj, lj in pieces:
            terms += [
                (1, t_pure([lambda ds, ri=ri, rj=rj: na.prod(ri, rj, const_lam(ds[2]))(ds[0]),
                            lambda ds, lj=lj: al(lj)(ds[1]), lambda ds, li=li: al(li)(ds[2])])),
                (-1, t_pure([lambda ds, lj=lj: al(lj)(ds[0]),
                             lambda ds, ri=ri, rj=rj: na.prod(ri, rj, const_lam(ds[2]))(ds[1]),
                             lambda ds, li=li: al(li)(ds[2])])),
                (-1, t_pure([lambda ds, rj=rj: al(rj)(ds[0]),
                             lambda ds, lj=lj, ri=ri: br(lj, ri, ds[0])(ds[1]),
                             lambda ds, li=li: al(li)(ds[2])])),
                (1, t_pure([lambda ds, lj=lj, ri=ri: br(lj, ri, ds[1])(ds[0]),
                            lambda ds, rj=rj: al(rj)(ds[1]), lambda ds, li=li: al(li)(ds[2])])),
                (-1, t_pure([lambda ds, ri=ri: al(ri)(ds[0]), lambda ds, rj=rj: al(rj)(ds[1]),
                             lambda ds, li=li, lj=lj: br(li, lj, ds[0])(ds[2])])),
            ]
    return t_combine(*terms)



def numeric_J_delta(alg, r: TensorElement, a: int) -> Tens:
    """Pointwise evaluation of the obstruction J_δ(a) with the same term list
    as the symbolic version."""
    na = NumericAlgebra(alg)
    adt = _bracket_table(alg)
    alpha = na.alpha
    rr = numeric_double_bracket(alg, r)
    x = lambda d, ds: na.e[a](d)
    lam = lambda ds: -ds[0] - ds[1] - ds[2]

    def tw(w, legs):
        for leg in legs:
            w = t_endo(alpha, w, leg)
        return w

    q = t_combine((1, t_act(na.table, x, tw(rr, (1, 2)), 0, lam)),
                  (1, t_act(na.table, x, tw(rr, (0, 2)), 1, lam)),
                  (1, t_act(adt, x, tw(rr, (0, 1)), 2, lam)))
    q = tw(q, (0, 1, 2))

    rf = compile_tensor(r)

    def swap(f):
        return lambda ds: {(i[1], i[0]): v for i, v in f((ds[1], ds[0])).items()}

    skew = t_combine((1, rf), (-1, swap(rf)))
    al2 = lambda f: alpha.apply(alpha.apply(f))

    def P(xf, w, nuf):
        return t_combine((1, t_act(na.table, xf, t_endo(alpha, w, 1), 0, nuf)),
                         (1, t_act(na.table, xf, t_endo(alpha, w, 0), 1, nuf)))

    terms = [(1, q)]
    for rj, lj in _pieces(r):
        tail = al2(lj)

        def m1(ds, rj=rj, tail=tail):
            l = lam(ds)
            mu = -ds[0] - ds[1]
            arj = lambda d, ds_: na.prod(na.e[a], rj, const_lam(l))(d)
            inner = P(arj, skew, lambda ds_: mu)
            return t_extend(inner, tail)(ds)

        def m2(ds, rj=rj, tail=tail):
            l = lam(ds)
            mu = -ds[2]
            inner = P(lambda d, ds_: rj(d), skew, lambda ds_: mu)
            outer = P(lambda d, ds_: na.ae[a](d), inner, lambda ds_: l)
            return t_extend(outer, tail)(ds)

        terms += [(1, m1), (-1, m2)]
    return t_combine(*terms)


def oracle_J_delta(alg, r: TensorElement, samples: int = 100, seed: int | None = None) -> Report:
    labels = [(b,) for b in alg.basis]
    return _tensor_report(alg.name, "obstruction", labels,
                          [numeric_J_delta(alg, r, a) for a in range(alg.rank)], samples, seed, 3)


def oracle_tensor_equal(w: TensorElement, f: Tens, samples: int = 20, seed: int | None = None) -> bool:
    """Compare a symbolic tensor (coefficients in D-legs only) with a numeric one."""
    rng = random.Random(default_seed() if seed is None else seed)
    g = compile_tensor(w)
    for p in _points(rng, samples, w.arity):
        a, b = g(p), f(p)
        keys = set(a) | set(b)
        if any(a.get(k, 0) != b.get(k, 0) for k in keys):
            return False
    return True
