"""Exact sparse multivariate polynomials over the rationals.

A :class:`Poly` is an immutable map from monomials to nonzero rational
coefficients.  Monomials are packed into a single integer, one fixed-width
exponent field per variable of the ambient :class:`Alphabet`, with the first
declared variable in the most significant field.  Integer comparison of packed
monomials is therefore lexicographic order over the declared alphabet, and
multiplying monomials is integer addition.

Coefficients are kept as ``int`` whenever they are integral and as
:class:`fractions.Fraction` otherwise.
"""

from __future__ import annotations

import random
from fractions import Fraction
from typing import Iterable, Mapping, Sequence, Union

__all__ = [
    "Alphabet",
    "DEFAULT_ALPHABET",
    "Poly",
    "Substitution",
    "PolyError",
    "AlphabetMismatch",
    "MissingAssignment",
    "SingularMatrix",
    "NoPolynomialSolution",
    "poly_add",
    "poly_mul",
    "poly_neg",
    "poly_equal",
    "substitute",
    "eval_at",
    "solve_square_system",
    "determinant",
    "var",
    "const",
    "ZERO",
    "ONE",
    "random_poly",
    "format_poly",
]

Rational = Union[int, Fraction]

_BITS = 12
_MASK = (1 << _BITS) - 1


class PolyError(Exception):
    """Base class for polynomial ring errors."""


class AlphabetMismatch(PolyError):
    pass


class MissingAssignment(PolyError):
    pass


class SingularMatrix(PolyError):
    pass


class NoPolynomialSolution(PolyError):
    pass


def _norm(c):
    if type(c) is Fraction and c.denominator == 1:
        return c.numerator
    return c


def to_rational(c) -> Rational:
    if isinstance(c, bool):
        raise TypeError("bool is not a rational coefficient")
    if isinstance(c, int):
        return c
    if isinstance(c, Fraction):
        return _norm(c)
    if isinstance(c, str):
        return _norm(Fraction(c))
    raise TypeError(f"cannot use {type(c).__name__} as an exact coefficient")


class Alphabet:
    """Ordered set of variable names.

    Lambda-parameters, per-leg ``D`` variables and scalar parameters all live
    in one alphabet; the declaration order is the monomial order.
    """

    def __init__(self, names: Sequence[str], lambda_params: Iterable[str] = (),
                 derivations: Iterable[str] = ()):
        names = list(names)
        if len(set(names)) != len(names):
            raise ValueError("duplicate variable in alphabet")
        self.names = tuple(names)
        self.index = {n: i for i, n in enumerate(names)}
        self.lambda_params = frozenset(lambda_params)
        self.derivations = frozenset(derivations)
        if self.lambda_params & self.derivations:
            raise ValueError("lambda-parameters and derivation variables must be disjoint")
        n = len(names)
        self.shift = {name: (n - 1 - i) * _BITS for i, name in enumerate(names)}

    def __len__(self):
        return len(self.names)

    def __contains__(self, name):
        return name in self.index

    def __repr__(self):
        return f"Alphabet({list(self.names)!r})"

    def unit(self, name: str) -> int:
        try:
            return 1 << self.shift[name]
        except KeyError:
            raise AlphabetMismatch(f"variable {name!r} is not declared in {self!r}") from None

    def exponents(self, mono: int) -> dict[str, int]:
        out = {}
        for name in self.names:
            e = (mono >> self.shift[name]) & _MASK
            if e:
                out[name] = e
        return out

    def exponent(self, mono: int, name: str) -> int:
        return (mono >> self.shift[name]) & _MASK

    def pack(self, exps: Mapping[str, int]) -> int:
        mono = 0
        for name, e in exps.items():
            if e < 0 or e > _MASK:
                raise ValueError(f"exponent {e} out of range")
            if e:
                mono |= e << self.shift[name]
        return mono


LAMBDA_NAMES = ("L", "M", "N", "H", "T", "W", "K", "U")
DERIVATION_NAMES = ("D", "D1", "D2", "D3", "D4")
PARAMETER_NAMES = ("c1", "c2", "c3", "c4")

DEFAULT_ALPHABET = Alphabet(LAMBDA_NAMES + DERIVATION_NAMES + PARAMETER_NAMES,
                            lambda_params=LAMBDA_NAMES,
                            derivations=DERIVATION_NAMES)


class Poly:
    """Immutable polynomial; equal polynomials have identical term maps."""

    __slots__ = ("terms", "alphabet", "_hash")

    def __init__(self, terms: Mapping[int, Rational] | None = None,
                 alphabet: Alphabet = DEFAULT_ALPHABET):
        self.alphabet = alphabet
        self.terms = {m: c for m, c in (terms or {}).items() if c != 0}
        self._hash = None

    @classmethod
    def _raw(cls, terms: dict, alphabet: Alphabet) -> "Poly":
        p = object.__new__(cls)
        p.terms = terms
        p.alphabet = alphabet
        p._hash = None
        return p

    # -- constructors -------------------------------------------------------
    @classmethod
    def const(cls, c, alphabet: Alphabet = DEFAULT_ALPHABET) -> "Poly":
        c = to_rational(c)
        return cls._raw({0: c} if c else {}, alphabet)

    @classmethod
    def var(cls, name: str, alphabet: Alphabet = DEFAULT_ALPHABET) -> "Poly":
        return cls._raw({alphabet.unit(name): 1}, alphabet)

    @classmethod
    def from_terms(cls, items: Iterable[tuple[Mapping[str, int], Rational]],
                   alphabet: Alphabet = DEFAULT_ALPHABET) -> "Poly":
        acc: dict[int, Rational] = {}
        for exps, c in items:
            m = alphabet.pack(exps)
            acc[m] = _norm(acc.get(m, 0) + to_rational(c))
        return cls._raw({m: c for m, c in acc.items() if c}, alphabet)

    # -- predicates ---------------------------------------------------------
    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def is_constant(self) -> bool:
        return not self.terms or (len(self.terms) == 1 and 0 in self.terms)

    def constant_value(self) -> Rational:
        if not self.is_constant():
            raise ValueError(f"{self} is not constant")
        return self.terms.get(0, 0)

    def variables(self) -> set[str]:
        used = 0
        for m in self.terms:
            used |= m
        return {n for n in self.alphabet.names if (used >> self.alphabet.shift[n]) & _MASK}

    def degree(self, name: str | None = None) -> int:
        """Degree in ``name``, or total degree; -1 for the zero polynomial."""
        if not self.terms:
            return -1
        if name is None:
            return max(sum(self.alphabet.exponents(m).values()) for m in self.terms)
        sh = self.alphabet.shift[name]
        return max((m >> sh) & _MASK for m in self.terms)

    def coefficients(self) -> list[Rational]:
        return [self.terms[m] for m in sorted(self.terms, reverse=True)]

    def items(self) -> list[tuple[dict[str, int], Rational]]:
        """Terms as ``(exponent map, coefficient)`` in descending lex order."""
        return [(self.alphabet.exponents(m), self.terms[m])
                for m in sorted(self.terms, reverse=True)]

    # -- arithmetic ---------------------------------------------------------
    def _coerce(self, other) -> "Poly":
        if isinstance(other, Poly):
            if other.alphabet is not self.alphabet:
                raise AlphabetMismatch("operands use different alphabets")
            return other
        return Poly.const(other, self.alphabet)

    def __add__(self, other):
        other = self._coerce(other)
        if not other.terms:
            return self
        if not self.terms:
            return other
        out = dict(self.terms)
        for m, c in other.terms.items():
            v = out.get(m)
            if v is None:
                out[m] = c
            else:
                v = _norm(v + c)
                if v:
                    out[m] = v
                else:
                    del out[m]
        return Poly._raw(out, self.alphabet)

    __radd__ = __add__

    def __neg__(self):
        return Poly._raw({m: -c for m, c in self.terms.items()}, self.alphabet)

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        if not isinstance(other, Poly):
            c = to_rational(other)
            if c == 0:
                return Poly._raw({}, self.alphabet)
            return Poly._raw({m: _norm(v * c) for m, v in self.terms.items()}, self.alphabet)
        other = self._coerce(other)
        a, b = self.terms, other.terms
        if not a or not b:
            return Poly._raw({}, self.alphabet)
        if len(a) < len(b):
            a, b = b, a
        out: dict[int, Rational] = {}
        get = out.get
        for mb, cb in b.items():
            for ma, ca in a.items():
                m = ma + mb
                out[m] = get(m, 0) + ca * cb
        return Poly._raw({m: _norm(c) for m, c in out.items() if c}, self.alphabet)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if not isinstance(n, int) or n < 0:
            raise ValueError("exponent must be a nonnegative integer")
        result = Poly.const(1, self.alphabet)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __eq__(self, other):
        if isinstance(other, Poly):
            return self.alphabet is other.alphabet and self.terms == other.terms
        try:
            return self.terms == Poly.const(other, self.alphabet).terms
        except TypeError:
            return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(self.terms.items()))
        return self._hash

    # -- substitution and evaluation ----------------------------------------
    def subs(self, mapping: Mapping[str, "Poly | Rational"]) -> "Poly":
        """Simultaneous single-pass substitution of several variables."""
        if not self.terms or not mapping:
            return self
        al = self.alphabet
        reps = []
        clear = 0
        for name, rep in mapping.items():
            sh = al.shift.get(name)
            if sh is None:
                raise AlphabetMismatch(f"variable {name!r} is not declared")
            reps.append((sh, self._coerce(rep)))
            clear |= _MASK << sh
        keep = ~clear
        groups: dict[tuple, dict[int, Rational]] = {}
        for m, c in self.terms.items():
            key = tuple((m >> sh) & _MASK for sh, _ in reps)
            g = groups.setdefault(key, {})
            g[m & keep] = c
        powers = [{0: Poly.const(1, al)} for _ in reps]
        result: dict[int, Rational] = {}
        for key, rest in groups.items():
            factor = None
            for idx, e in enumerate(key):
                if e == 0:
                    continue
                cache = powers[idx]
                if e not in cache:
                    cache[e] = reps[idx][1] ** e
                factor = cache[e] if factor is None else factor * cache[e]
            if factor is None:
                for m, c in rest.items():
                    v = _norm(result.get(m, 0) + c)
                    result[m] = v
                continue
            for mf, cf in factor.terms.items():
                for m, c in rest.items():
                    mm = m + mf
                    result[mm] = result.get(mm, 0) + c * cf
        return Poly._raw({m: _norm(c) for m, c in result.items() if c}, al)

    def rename(self, mapping: Mapping[str, str]) -> "Poly":
        return self.subs({a: Poly.var(b, self.alphabet) for a, b in mapping.items()})

    def eval_at(self, assignment: Mapping[str, Rational]) -> Rational:
        if not self.terms:
            return 0
        al = self.alphabet
        needed = self.variables()
        missing = needed - set(assignment)
        if missing:
            raise MissingAssignment(f"no value for {sorted(missing)}")
        vals = [(al.shift[n], to_rational(assignment[n])) for n in needed]
        total: Rational = 0
        for m, c in self.terms.items():
            t = c
            for sh, v in vals:
                e = (m >> sh) & _MASK
                if e:
                    t = t * v ** e
            total += t
        return _norm(Fraction(total)) if not isinstance(total, int) else total

    # -- univariate helpers -------------------------------------------------
    def coeff_in(self, name: str) -> dict[int, "Poly"]:
        """Split into ``{k: c_k}`` with ``self = sum c_k * name^k``."""
        sh = self.alphabet.shift[name]
        out: dict[int, dict[int, Rational]] = {}
        for m, c in self.terms.items():
            e = (m >> sh) & _MASK
            out.setdefault(e, {})[m - (e << sh)] = c
        return {e: Poly._raw(t, self.alphabet) for e, t in out.items()}

    def divmod_by(self, divisor: "Poly", name: str) -> tuple["Poly", "Poly"]:
        """Long division in ``name`` by a divisor whose only variable is ``name``."""
        divisor = self._coerce(divisor)
        if divisor.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        if divisor.variables() - {name}:
            raise ValueError("divisor must be univariate in the division variable")
        dd = divisor.degree(name) if not divisor.is_constant() else 0
        dcoef = divisor.coeff_in(name)
        lead = dcoef[dd].constant_value()
        x = Poly.var(name, self.alphabet)
        q = Poly._raw({}, self.alphabet)
        r = self
        while not r.is_zero():
            rd = r.degree(name)
            if rd < dd:
                break
            lc = r.coeff_in(name)[rd] * Fraction(1, 1) * (Fraction(1) / lead)
            t = lc * x ** (rd - dd)
            q = q + t
            r = r - t * divisor
        return q, r

    # -- printing -----------------------------------------------------------
    def __str__(self):
        return format_poly(self)

    def __repr__(self):
        return f"Poly({str(self)!r})"


def _format_coeff(c: Rational) -> str:
    if isinstance(c, Fraction):
        return f"{c.numerator}/{c.denominator}"
    return str(c)


def format_poly(p: Poly) -> str:
    """Surface syntax: ``2*L^2*D - 3/4*M + 1``, descending lex order."""
    if not p.terms:
        return "0"
    parts = []
    for mono in sorted(p.terms, reverse=True):
        c = p.terms[mono]
        exps = p.alphabet.exponents(mono)
        factors = [n if e == 1 else f"{n}^{e}" for n, e in exps.items()]
        neg = c < 0
        a = -c if neg else c
        if not factors:
            body = _format_coeff(a)
        elif a == 1:
            body = "*".join(factors)
        else:
            body = "*".join([_format_coeff(a)] + factors)
        if not parts:
            parts.append(("-" if neg else "") + body)
        else:
            parts.append(("- " if neg else "+ ") + body)
    return " ".join(parts)


def var(name: str, alphabet: Alphabet = DEFAULT_ALPHABET) -> Poly:
    return Poly.var(name, alphabet)


def const(c, alphabet: Alphabet = DEFAULT_ALPHABET) -> Poly:
    return Poly.const(c, alphabet)


ZERO = Poly.const(0)
ONE = Poly.const(1)


class Substitution:
    """Replace one variable by a polynomial in a single pass."""

    __slots__ = ("target", "replacement")

    def __init__(self, target: str, replacement: Poly | Rational):
        self.target = target
        self.replacement = replacement

    def __repr__(self):
        return f"Substitution({self.target!r} -> {self.replacement})"


def poly_add(p: Poly, q: Poly) -> Poly:
    return p + q


def poly_mul(p: Poly, q: Poly) -> Poly:
    return p * q


def poly_neg(p: Poly) -> Poly:
    return -p


def poly_equal(p: Poly, q: Poly) -> bool:
    if p.alphabet is not q.alphabet:
        raise AlphabetMismatch("operands use different alphabets")
    return p.terms == q.terms


def substitute(p: Poly, s: Substitution) -> Poly:
    return p.subs({s.target: s.replacement})


def eval_at(p: Poly, assignment: Mapping[str, Rational]) -> Rational:
    return p.eval_at(assignment)


def determinant(matrix: Sequence[Sequence[Poly]]) -> Poly:
    """Determinant by Laplace expansion memoised over column subsets."""
    n = len(matrix)
    if n == 0:
        return ONE
    if any(len(row) != n for row in matrix):
        raise ValueError("matrix is not square")
    memo: dict[int, Poly] = {}

    def minor(row: int, cols: int) -> Poly:
        # determinant of rows row..n-1 restricted to the column bitmask ``cols``
        if row == n:
            return matrix[0][0] * 0 + 1
        if cols in memo:
            return memo[cols]
        total = None
        sign = 1
        for c in range(n):
            if not (cols >> c) & 1:
                continue
            entry = matrix[row][c]
            if entry:
                term = entry * minor(row + 1, cols & ~(1 << c))
                term = term if sign > 0 else -term
                total = term if total is None else total + term
            sign = -sign
        result = total if total is not None else matrix[0][0] * 0
        memo[cols] = result
        return result

    return minor(0, (1 << n) - 1)


def solve_square_system(M: Sequence[Sequence[Poly]], b: Sequence[Poly]) -> list[Poly]:
    """Solve ``M x = b`` over the fraction field, requiring a polynomial answer.

    ``M`` must have entries in at most one variable; ``b`` may involve others,
    which are carried as parameters.  Raises :class:`SingularMatrix` when
    ``det M`` vanishes and :class:`NoPolynomialSolution` when some entry of
    the solution does not clear denominators.
    """
    n = len(M)
    if any(len(row) != n for row in M) or len(b) != n:
        raise ValueError("system must be square")
    mvars: set[str] = set()
    for row in M:
        for e in row:
            mvars |= e.variables()
    if len(mvars) > 1:
        raise ValueError(f"matrix entries must be univariate, found {sorted(mvars)}")
    det = determinant(M)
    if det.is_zero():
        raise SingularMatrix("determinant is the zero polynomial")
    name = next(iter(mvars)) if mvars else None
    x = []
    for col in range(n):
        Mi = [[(b[r] if c == col else M[r][c]) for c in range(n)] for r in range(n)]
        num = _cramer_numerator(Mi, col)
        if name is None:
            x.append(num * (Fraction(1) / det.constant_value()))
            continue
        q, r = num.divmod_by(det, name)
        if not r.is_zero():
            raise NoPolynomialSolution(f"component {col} is not a polynomial")
        x.append(q)
    return x


def _cramer_numerator(Mi, col):
    # expand along the replaced column so b's extra variables never enter the memo
    n = len(Mi)
    total = Mi[0][0] * 0
    for r in range(n):
        entry = Mi[r][col]
        if not entry:
            continue
        sub = [[Mi[rr][cc] for cc in range(n) if cc != col] for rr in range(n) if rr != r]
        sign = -1 if (r + col) % 2 else 1
        total = total + entry * determinant(sub) * sign
    return total


def random_poly(rng: random.Random, names: Sequence[str], degree: int,
                density: float = 0.6, coeff_range: int = 3,
                alphabet: Alphabet = DEFAULT_ALPHABET) -> Poly:
    """Random polynomial of total degree at most ``degree`` with small integer coefficients."""
    items = []

    def rec(i, left, exps):
        if i == len(names):
            if rng.random() < density:
                c = rng.randint(-coeff_range, coeff_range)
                if c:
                    items.append((dict(exps), c))
            return
        for e in range(left + 1):
            exps[names[i]] = e
            rec(i + 1, left - e, exps)
        exps.pop(names[i], None)

    rec(0, degree, {})
    return Poly.from_terms(items, alphabet)
