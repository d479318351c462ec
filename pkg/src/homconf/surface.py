"""Text syntax for polynomials, elements and definition files.

Polynomials use ``L M N ...`` for λ-parameters, ``D`` for ∂ and ``D1 ... D4``
for tensor legs; ``λ μ ν ∂ ∂₁ ...`` are accepted as aliases.  Precedence is
``^`` over ``*`` over ``+ -``; numeric literals may be fractions ``3/4``.

In an element expression each term ends with a basis label (``(D+2*L)*E``);
everything before the label is the scalar, so a label may share its name with
a variable.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .polyring import Poly, var, const, ZERO, ONE, DEFAULT_ALPHABET, format_poly
from .module import (FreeConformalModule, ModuleElement, TensorElement, Endomorphism,
                     ConformalBilinearForm)
from .engine import StructureTable, HomConformalAlgebra, KINDS
from .constructions import RepresentationData, MatchedPairData, FiniteHomAlgebra
from .bialgebra import CoalgebraData, RTensor

__all__ = [
    "SurfaceError", "parse_poly", "print_poly", "parse_element", "print_element",
    "parse_tensor", "print_tensor", "Task", "DefinitionFile", "parse_definition",
    "print_definition", "load_definition",
]

ALIASES = {"λ": "L", "μ": "M", "ν": "N", "∂": "D", "∂₁": "D1", "∂₂": "D2", "∂₃": "D3", "∂₄": "D4"}

_TOKEN = re.compile(r"""
    (?P<ws>[ \t]+)
  | (?P<num>\d+)
  | (?P<ident>∂[₁₂₃₄]?|[λμν]|[A-Za-z_][A-Za-z0-9_']*)
  | (?P<op>[-+*^/()|])
""", re.VERBOSE)


class SurfaceError(ValueError):
    def __init__(self, message: str, line: int | None = None, col: int | None = None):
        loc = ""
        if line is not None:
            loc = f"line {line}" + (f", column {col}" if col is not None else "") + ": "
        super().__init__(loc + message)
        self.line, self.col = line, col


@dataclass(frozen=True)
class _Tok:
    kind: str
    text: str
    col: int


def _tokenize(src: str, line: int | None, col0: int) -> list[_Tok]:
    out = []
    pos = 0
    while pos < len(src):
        m = _TOKEN.match(src, pos)
        if not m:
            raise SurfaceError(f"unexpected character {src[pos]!r}", line, col0 + pos)
        kind = m.lastgroup
        if kind != "ws":
            out.append(_Tok(kind, m.group(), col0 + pos))
        pos = m.end()
    out.append(_Tok("end", "", col0 + len(src)))
    return out


class _Parser:
    def __init__(self, src: str, line: int | None = None, col0: int = 1):
        self.toks = _tokenize(src, line, col0)
        self.i = 0
        self.line = line

    def peek(self, k: int = 0) -> _Tok:
        return self.toks[min(self.i + k, len(self.toks) - 1)]

    def take(self) -> _Tok:
        t = self.toks[self.i]
        self.i += 1
        return t

    def error(self, msg: str, tok: _Tok | None = None):
        tok = tok or self.peek()
        raise SurfaceError(msg, self.line, tok.col)

    def expect(self, text: str) -> _Tok:
        t = self.peek()
        if t.text != text:
            self.error(f"expected {text!r}, found {t.text or 'end of input'!r}")
        return self.take()

    def at_end(self) -> bool:
        return self.peek().kind == "end"

    # poly := term (('+'|'-') term)*
    def poly(self) -> Poly:
        acc = self.term()
        while self.peek().text in ("+", "-"):
            op = self.take().text
            rhs = self.term()
            acc = acc + rhs if op == "+" else acc - rhs
        return acc

    def term(self) -> Poly:
        acc = self.unary()
        while self.peek().text == "*":
            self.take()
            acc = acc * self.unary()
        return acc

    def unary(self) -> Poly:
        if self.peek().text == "-":
            self.take()
            return -self.unary()
        if self.peek().text == "+":
            self.take()
            return self.unary()
        return self.power()

    def power(self) -> Poly:
        base = self.atom()
        if self.peek().text == "^":
            self.take()
            t = self.peek()
            if t.kind != "num":
                self.error("exponent must be a non-negative integer")
            self.take()
            return base ** int(t.text)
        return base

    def atom(self) -> Poly:
        t = self.peek()
        if t.kind == "num":
            self.take()
            value = Fraction(int(t.text))
            if self.peek().text == "/" and self.peek(1).kind == "num":
                self.take()
                den = int(self.take().text)
                if den == 0:
                    self.error("division by zero in literal", t)
                value = value / den
            return const(value)
        if t.kind == "ident":
            self.take()
            name = ALIASES.get(t.text, t.text)
            if name not in DEFAULT_ALPHABET:
                self.error(f"unknown variable {t.text!r}", t)
            return var(name)
        if t.text == "(":
            self.take()
            inner = self.poly()
            self.expect(")")
            return inner
        self.error(f"unexpected {t.text or 'end of input'!r}")

    # element := eterm (('+'|'-') eterm)*, each eterm ends with its labels
    def combination(self, label_sets: Sequence[Sequence[str]]):
        terms = []
        sign = 1
        if self.peek().text in ("+", "-"):
            sign = -1 if self.take().text == "-" else 1
        if self.peek().text == "0" and self.peek(1).kind == "end":
            self.take()
            return terms
        while True:
            coeff, labels = self._eterm(label_sets)
            terms.append((coeff if sign > 0 else -coeff, labels))
            if self.peek().text not in ("+", "-"):
                break
            sign = -1 if self.take().text == "-" else 1
        return terms

    def _label_here(self, label_sets) -> bool:
        t = self.peek()
        if t.kind != "ident" or t.text not in label_sets[0]:
            return False
        nxt = self.peek(1).text
        if len(label_sets) == 1:
            return nxt in ("+", "-", "") and self.peek(1).kind in ("op", "end") and nxt != "^"
        return nxt == "|"

    def _eterm(self, label_sets):
        coeff = ONE
        while not self._label_here(label_sets):
            if self.peek().text == "-":
                self.take()
                coeff = -coeff
                continue
            t = self.peek()
            if (t.kind == "ident" and ALIASES.get(t.text, t.text) not in DEFAULT_ALPHABET
                    and self.peek(1).text in ("+", "-", "|", "")):
                self.error(f"undeclared basis label {t.text!r}", t)
            coeff = coeff * self.power()
            if self._label_here(label_sets):
                self.error("missing '*' before basis label")
            if self.peek().text != "*":
                self.error("each term must end with a basis label")
            self.take()
        labels = []
        for k, allowed in enumerate(label_sets):
            t = self.peek()
            if t.kind != "ident":
                self.error("expected a basis label")
            if t.text not in allowed:
                self.error(f"undeclared basis label {t.text!r}", t)
            self.take()
            labels.append(t.text)
            if k + 1 < len(label_sets):
                self.expect("|")
        return coeff, tuple(labels)


def parse_poly(src: str, line: int | None = None, col0: int = 1) -> Poly:
    if not src.strip():
        raise SurfaceError("empty polynomial", line, col0)
    p = _Parser(src, line, col0)
    out = p.poly()
    if not p.at_end():
        p.error(f"unexpected {p.peek().text!r}")
    return out


def print_poly(p: Poly) -> str:
    return format_poly(p)


def parse_element(src: str, module: FreeConformalModule, line: int | None = None, col0: int = 1) -> ModuleElement:
    p = _Parser(src, line, col0)
    vec = [ZERO] * module.rank
    for c, (lab,) in p.combination([module.basis]):
        k = module.index(lab)
        vec[k] = vec[k] + c
    if not p.at_end():
        p.error(f"unexpected {p.peek().text!r}")
    return ModuleElement(module, tuple(vec))


def _term(c: Poly, labels: str) -> str:
    if c == ONE:
        return labels
    if c == -ONE:
        return "-" + labels
    return f"({format_poly(c)})*{labels}"


def _join(terms: list[str]) -> str:
    if not terms:
        return "0"
    out = terms[0]
    for t in terms[1:]:
        out += " - " + t[1:] if t.startswith("-") else " + " + t
    return out


def print_element(x: ModuleElement) -> str:
    return _join([_term(c, x.module.basis[i]) for i, c in x.nonzero()])


def parse_tensor(src: str, modules: Sequence[FreeConformalModule], line: int | None = None,
                 col0: int = 1) -> TensorElement:
    p = _Parser(src, line, col0)
    coeffs: dict = {}
    for c, labels in p.combination([m.basis for m in modules]):
        idx = tuple(m.index(lab) for m, lab in zip(modules, labels))
        coeffs[idx] = coeffs.get(idx, ZERO) + c
    if not p.at_end():
        p.error(f"unexpected {p.peek().text!r}")
    return TensorElement(tuple(modules), coeffs)


def print_tensor(w: TensorElement) -> str:
    terms = []
    for idx in sorted(w.coeffs):
        labels = " | ".join(w.modules[k].basis[i] for k, i in enumerate(idx))
        terms.append(_term(w.coeffs[idx], labels))
    return _join(terms)


# -- definition files ------------------------------------------------------------

@dataclass(frozen=True)
class Task:
    verb: str
    args: tuple[str, ...] = ()
    axioms: tuple[str, ...] = ()

    def __str__(self):
        s = " ".join((self.verb,) + self.args)
        if self.axioms:
            s += " axioms " + ",".join(self.axioms)
        return s


TASK_VERBS = {
    "check": 1, "check-module": 1, "check-lie-module": 1, "check-symplectic": 2,
    "check-parakahler": 3, "check-pair": 1, "check-coalgebra": 1, "check-cocycle": 2,
    "check-bialgebra": 2, "check-obstruction": 2, "check-dual-pairs": 2, "check-finite": 1,
}


@dataclass
class DefinitionFile:
    algebras: dict[str, HomConformalAlgebra] = field(default_factory=dict)
    forms: dict[str, tuple[str, ConformalBilinearForm]] = field(default_factory=dict)
    reps: dict[str, RepresentationData] = field(default_factory=dict)
    tensors: dict[str, tuple[str, RTensor]] = field(default_factory=dict)
    coalgebras: dict[str, CoalgebraData] = field(default_factory=dict)
    pairs: dict[str, MatchedPairData] = field(default_factory=dict)
    finite: dict[str, FiniteHomAlgebra] = field(default_factory=dict)
    splits: dict[str, tuple[tuple[str, ...], tuple[str, ...]]] = field(default_factory=dict)
    tasks: list[Task] = field(default_factory=list)

    def names(self) -> set[str]:
        out: set[str] = set()
        for d in (self.algebras, self.forms, self.reps, self.tensors, self.coalgebras, self.pairs,
                  self.finite):
            out |= set(d)
        return out

    def __eq__(self, other):
        if not isinstance(other, DefinitionFile):
            return NotImplemented
        return (self.algebras == other.algebras and self.forms == other.forms
                and self.reps == other.reps and self.tensors == other.tensors
                and self.coalgebras == other.coalgebras and self.finite == other.finite
                and self.splits == other.splits and self.tasks == other.tasks
                and set(self.pairs) == set(other.pairs)
                and all(_pair_key(self.pairs[k]) == _pair_key(other.pairs[k]) for k in self.pairs))


def _pair_key(p: MatchedPairData):
    return (p.first, p.second, p.kind, p.rho, p.sigma, p.lA, p.rA, p.lB, p.rB)


_SECTION = re.compile(r"^\[(\w[\w-]*)(?:\s+([^\]\s]+))?\]\s*$")
_PRODUCT = re.compile(r"^(\S+)\s*\.\s*(\S+)\s*=\s*(.*)$")
_BRACKET = re.compile(r"^\[\s*([^,\s]+)\s*,\s*([^\]\s]+)\s*\]\s*=\s*(.*)$")
_PAIRING = re.compile(r"^\(\s*([^,\s]+)\s*,\s*([^)\s]+)\s*\)\s*=\s*(.*)$")


@dataclass
class _Line:
    no: int
    text: str
    rhs_col: int = 1


class _Section:
    def __init__(self, kind: str, name: str | None, line: int):
        self.kind, self.name, self.line = kind, name, line
        self.lines: list[_Line] = []


def _split_sections(src: str) -> list[_Section]:
    sections: list[_Section] = []
    for no, raw in enumerate(src.splitlines(), 1):
        text = raw.split("#", 1)[0].rstrip()
        if not text.strip():
            continue
        m = _SECTION.match(text.strip())
        if m:
            sections.append(_Section(m.group(1), m.group(2), no))
            continue
        if not sections:
            raise SurfaceError("content before the first section header", no, 1)
        sections[-1].lines.append(_Line(no, text))
    return sections


def _rhs(line: _Line, text_rhs: str) -> tuple[str, int]:
    col = line.text.index(text_rhs) + 1 if text_rhs else len(line.text) + 1
    return text_rhs, col


def _keyword(line: _Line) -> tuple[str, str]:
    parts = line.text.strip().split(None, 1)
    return parts[0], (parts[1] if len(parts) > 1 else "")


class _Reader:
    def __init__(self):
        self.out = DefinitionFile()

    def fail(self, msg, line=None, col=None):
        raise SurfaceError(msg, line, col)

    def lookup(self, table: dict, name: str, what: str, line: int):
        if name not in table:
            self.fail(f"{what} {name!r} is not declared", line)
        return table[name]

    def declare(self, name: str | None, sec: _Section):
        if not name:
            self.fail(f"section [{sec.kind}] needs a name", sec.line)
        if name in self.out.names():
            self.fail(f"duplicate declaration {name!r}", sec.line)

    def module_lines(self, sec: _Section, take: set[str]):
        """Collect 'kind', 'rank', 'basis' header lines; returns (header, rest)."""
        header: dict[str, tuple[str, _Line]] = {}
        rest = []
        for ln in sec.lines:
            key, val = _keyword(ln)
            if key in take and key not in header and not rest:
                header[key] = (val, ln)
            elif key in take and key in header:
                self.fail(f"repeated '{key}' line", ln.no)
            else:
                rest.append(ln)
        return header, rest

    def basis(self, header, sec, key="basis") -> FreeConformalModule:
        if key not in header:
            self.fail(f"[{sec.kind} {sec.name}] needs a '{key}' line", sec.line)
        labels, ln = header[key]
        labels = tuple(labels.split())
        if not labels:
            self.fail("empty basis", ln.no)
        try:
            module = FreeConformalModule(labels)
        except ValueError as exc:
            self.fail(str(exc), ln.no)
        if "rank" in header:
            rank, rl = header["rank"]
            if not rank.isdigit() or int(rank) != module.rank:
                self.fail(f"rank {rank} does not match {module.rank} basis labels", rl.no)
        return module

    def element(self, src: str, module, ln: _Line) -> ModuleElement:
        col = ln.text.index(src) + 1 if src else 1
        return parse_element(src, module, ln.no, col)

    def table(self, left, right, out, lines, pattern, seen_msg):
        entries: dict = {}
        for ln, a, b, rhs in lines:
            if a not in left.basis:
                self.fail(f"undeclared basis label {a!r}", ln.no)
            if b not in right.basis:
                self.fail(f"undeclared basis label {b!r}", ln.no)
            key = (left.index(a), right.index(b))
            if key in entries:
                self.fail(f"duplicate {seen_msg} line for ({a}, {b})", ln.no)
            entries[key] = self.element(rhs, out, ln).coeffs
        return StructureTable(left, right, out, entries)

    def twist_lines(self, module, lines, keyword):
        images = {}
        for ln in lines:
            key, val = _keyword(ln)
            m = re.match(r"^(\S+)\s*=\s*(.*)$", val)
            if not m:
                self.fail(f"malformed {keyword} line", ln.no)
            lab, rhs = m.groups()
            if lab not in module.basis:
                self.fail(f"undeclared basis label {lab!r}", ln.no)
            if lab in images:
                self.fail(f"duplicate {keyword} line for {lab}", ln.no)
            images[lab] = self.element(rhs, module, ln)
        cols = [images.get(b, module.gen(b)) for b in module.basis]
        return Endomorphism.from_images(module, cols)

    # sections -------------------------------------------------------------

    def algebra(self, sec: _Section):
        self.declare(sec.name, sec)
        header, rest = self.module_lines(sec, {"kind", "rank", "basis"})
        kind = header.get("kind", ("left-symmetric", None))[0]
        if kind not in KINDS:
            self.fail(f"unknown algebra kind {kind!r}", header["kind"][1].no)
        module = self.basis(header, sec)
        prods, twists = [], []
        for ln in rest:
            s = ln.text.strip()
            if s.startswith("alpha "):
                twists.append(ln)
                continue
            m = _BRACKET.match(s) or _PRODUCT.match(s)
            if not m:
                self.fail(f"unrecognised line in [algebra {sec.name}]: {s!r}", ln.no)
            prods.append((ln, *m.groups()))
        table = self.table(module, module, module, prods, None, "product")
        alpha = self.twist_lines(module, twists, "alpha")
        self.out.algebras[sec.name] = HomConformalAlgebra(module, table, alpha, kind, sec.name)

    def finite(self, sec: _Section):
        self.declare(sec.name, sec)
        header, rest = self.module_lines(sec, {"kind", "rank", "basis"})
        kind = header.get("kind", ("left-symmetric", None))[0]
        module = self.basis(header, sec)
        mult = {}
        twist = [[Fraction(int(i == j)) for j in range(module.rank)] for i in range(module.rank)]
        for ln in rest:
            s = ln.text.strip()
            if s.startswith("alpha "):
                m = re.match(r"^alpha\s+(\S+)\s*=\s*(.*)$", s)
                el = self.element(m.group(2), module, ln) if m else None
                if el is None or m.group(1) not in module.basis or el.variables():
                    self.fail("malformed constant alpha line", ln.no)
                j = module.index(m.group(1))
                for k in range(module.rank):
                    twist[k][j] = Fraction(el.coeffs[k].constant_value())
                continue
            m = _BRACKET.match(s) or _PRODUCT.match(s)
            if not m:
                self.fail(f"unrecognised line in [finite {sec.name}]: {s!r}", ln.no)
            a, b, rhs = m.groups()
            for lab in (a, b):
                if lab not in module.basis:
                    self.fail(f"undeclared basis label {lab!r}", ln.no)
            el = self.element(rhs, module, ln)
            if el.variables():
                self.fail("finite-dimensional structure constants must be numbers", ln.no)
            key = (module.index(a), module.index(b))
            if key in mult:
                self.fail(f"duplicate product line for ({a}, {b})", ln.no)
            mult[key] = [Fraction(c.constant_value()) for c in el.coeffs]
        self.out.finite[sec.name] = FiniteHomAlgebra(module.basis, mult, twist, kind)

    def form(self, sec: _Section):
        self.declare(sec.name, sec)
        header, rest = self.module_lines(sec, {"algebra"})
        if "algebra" not in header:
            self.fail(f"[form {sec.name}] needs an 'algebra' line", sec.line)
        alg = self.lookup(self.out.algebras, header["algebra"][0], "algebra", header["algebra"][1].no)
        n = alg.rank
        mat = [[ZERO] * n for _ in range(n)]
        seen = set()
        for ln in rest:
            m = _PAIRING.match(ln.text.strip())
            if not m:
                self.fail(f"unrecognised line in [form {sec.name}]", ln.no)
            a, b, rhs = m.groups()
            for lab in (a, b):
                if lab not in alg.basis:
                    self.fail(f"undeclared basis label {lab!r}", ln.no)
            key = (alg.module.index(a), alg.module.index(b))
            if key in seen:
                self.fail(f"duplicate pairing line for ({a}, {b})", ln.no)
            seen.add(key)
            p = parse_poly(rhs, ln.no, ln.text.index(rhs) + 1)
            if p.variables() - {"L"}:
                self.fail("form entries must be polynomials in L", ln.no)
            mat[key[0]][key[1]] = p
        self.out.forms[sec.name] = (alg.name, ConformalBilinearForm(alg.module, tuple(map(tuple, mat))))

    def rep(self, sec: _Section):
        self.declare(sec.name, sec)
        header, rest = self.module_lines(sec, {"algebra", "basis", "rank"})
        if "algebra" not in header:
            self.fail(f"[rep {sec.name}] needs an 'algebra' line", sec.line)
        alg = self.lookup(self.out.algebras, header["algebra"][0], "algebra", header["algebra"][1].no)
        space = self.basis(header, sec)
        left, right, beta = [], [], []
        for ln in rest:
            key, val = _keyword(ln)
            if key == "beta":
                beta.append(ln)
                continue
            m = _PRODUCT.match(val)
            if key not in ("left", "right") or not m:
                self.fail(f"unrecognised line in [rep {sec.name}]", ln.no)
            (left if key == "left" else right).append((ln, *m.groups()))
        lt = self.table(alg.module, space, space, left, None, "left action")
        rt = self.table(alg.module, space, space, right, None, "right action")
        b = self.twist_lines(space, beta, "beta")
        self.out.reps[sec.name] = RepresentationData(alg, space, b, lt, rt, sec.name)

    def tensor(self, sec: _Section):
        self.declare(sec.name, sec)
        header, rest = self.module_lines(sec, {"algebra"})
        if "algebra" not in header:
            self.fail(f"[tensor {sec.name}] needs an 'algebra' line", sec.line)
        alg = self.lookup(self.out.algebras, header["algebra"][0], "algebra", header["algebra"][1].no)
        total = TensorElement.zero((alg.module, alg.module))
        for ln in rest:
            s = ln.text.strip()
            w = parse_tensor(s, (alg.module, alg.module), ln.no, ln.text.index(s) + 1)
            total = total + w
        extra = total.variables() - {"D1", "D2"}
        if extra:
            self.fail(f"tensor coefficients may only use D1, D2, found {sorted(extra)}", sec.line)
        self.out.tensors[sec.name] = (alg.name, RTensor(total))

    def coalgebra(self, sec: _Section):
        self.declare(sec.name, sec)
        header, rest = self.module_lines(sec, {"basis", "rank"})
        module = self.basis(header, sec)
        deltas: dict[str, TensorElement] = {}
        twists = []
        for ln in rest:
            s = ln.text.strip()
            if s.startswith("alpha "):
                twists.append(ln)
                continue
            m = re.match(r"^(\S+)\s*->\s*(.*)$", s)
            if not m:
                self.fail(f"unrecognised line in [coalgebra {sec.name}]", ln.no)
            lab, rhs = m.groups()
            if lab not in module.basis:
                self.fail(f"undeclared basis label {lab!r}", ln.no)
            if lab in deltas:
                self.fail(f"duplicate coproduct line for {lab}", ln.no)
            deltas[lab] = parse_tensor(rhs, (module, module), ln.no, ln.text.index(rhs) + 1)
        zero = TensorElement.zero((module, module))
        alpha = self.twist_lines(module, twists, "alpha")
        try:
            self.out.coalgebras[sec.name] = CoalgebraData(
                module, alpha, tuple(deltas.get(b, zero) for b in module.basis), sec.name)
        except ValueError as exc:
            self.fail(str(exc), sec.line)

    def pair(self, sec: _Section):
        self.declare(sec.name, sec)
        header, rest = self.module_lines(sec, {"kind", "first", "second"})
        for k in ("first", "second"):
            if k not in header:
                self.fail(f"[pair {sec.name}] needs a '{k}' line", sec.line)
        kind = header.get("kind", ("lie", None))[0]
        A = self.lookup(self.out.algebras, header["first"][0], "algebra", header["first"][1].no)
        B = self.lookup(self.out.algebras, header["second"][0], "algebra", header["second"][1].no)
        names = ("rho", "sigma") if kind == "lie" else ("lA", "rA", "lB", "rB")
        lines: dict[str, list] = {n: [] for n in names}
        for ln in rest:
            key, val = _keyword(ln)
            m = _PRODUCT.match(val)
            if key not in lines or not m:
                self.fail(f"unrecognised line in [pair {sec.name}]", ln.no)
            lines[key].append((ln, *m.groups()))
        tabs = {}
        for n in names:
            src, dst = (A, B) if n in ("rho", "lA", "rA") else (B, A)
            tabs[n] = self.table(src.module, dst.module, dst.module, lines[n], None, n)
        try:
            self.out.pairs[sec.name] = MatchedPairData(A, B, kind, name=sec.name, **tabs)
        except ValueError as exc:
            self.fail(str(exc), sec.line)

    def split(self, sec: _Section):
        self.declare(sec.name, sec)
        parts = []
        for ln in sec.lines:
            key, val = _keyword(ln)
            if key != "part":
                self.fail("split sections hold 'part' lines", ln.no)
            parts.append(tuple(val.split()))
        if len(parts) != 2:
            self.fail("a split needs exactly two 'part' lines", sec.line)
        self.out.splits[sec.name] = (parts[0], parts[1])

    def tasks(self, sec: _Section):
        for ln in sec.lines:
            words = ln.text.split()
            verb, args = words[0], words[1:]
            axioms: tuple[str, ...] = ()
            if "axioms" in args:
                k = args.index("axioms")
                if k + 1 >= len(args):
                    self.fail("'axioms' needs a comma-separated list", ln.no)
                axioms = tuple(a for a in args[k + 1].split(",") if a)
                args = args[:k] + args[k + 2:]
            if verb not in TASK_VERBS:
                self.fail(f"unknown task {verb!r}", ln.no)
            if len(args) < TASK_VERBS[verb]:
                self.fail(f"task {verb!r} needs {TASK_VERBS[verb]} names", ln.no)
            for a in args:
                if a not in self.out.names() and a not in self.out.splits:
                    self.fail(f"task refers to undeclared name {a!r}", ln.no)
            self.out.tasks.append(Task(verb, tuple(args), axioms))


def parse_definition(src: str) -> DefinitionFile:
    reader = _Reader()
    handlers = {"algebra": reader.algebra, "form": reader.form, "rep": reader.rep,
                "tensor": reader.tensor, "coalgebra": reader.coalgebra, "pair": reader.pair,
                "finite": reader.finite, "split": reader.split}
    for sec in _split_sections(src):
        if sec.kind == "tasks":
            reader.tasks(sec)
        elif sec.kind in handlers:
            handlers[sec.kind](sec)
        else:
            raise SurfaceError(f"unknown section [{sec.kind}]", sec.line, 1)
    return reader.out


def load_definition(path) -> DefinitionFile:
    with open(path, encoding="utf-8") as fh:
        return parse_definition(fh.read())


# -- printing --------------------------------------------------------------------

def _table_lines(t: StructureTable, fmt: str) -> list[str]:
    lines = []
    for (i, j), vec in sorted(t.entries.items()):
        rhs = print_element(ModuleElement(t.out, vec))
        lines.append(fmt.format(a=t.left.basis[i], b=t.right.basis[j], rhs=rhs))
    return lines


def _twist_lines(e: Endomorphism, keyword: str) -> list[str]:
    return [f"{keyword} {e.module.basis[j]} = {print_element(e.image(j))}" for j in range(e.module.rank)]


def _print_algebra(alg: HomConformalAlgebra) -> list[str]:
    out = [f"[algebra {alg.name}]", f"kind {alg.kind}", f"rank {alg.rank}",
           "basis " + " ".join(alg.basis)]
    fmt = "[{a}, {b}] = {rhs}" if alg.kind == "lie" else "{a} . {b} = {rhs}"
    out += _table_lines(alg.product, fmt)
    out += _twist_lines(alg.alpha, "alpha")
    return out


def _fmt_frac(c) -> str:
    c = Fraction(c)
    return str(c.numerator) if c.denominator == 1 else f"{c.numerator}/{c.denominator}"


def print_definition(d: DefinitionFile) -> str:
    blocks: list[list[str]] = []
    for name, fin in d.finite.items():
        mod = FreeConformalModule(fin.basis)
        lines = [f"[finite {name}]", f"kind {fin.kind}", "basis " + " ".join(fin.basis)]
        fmt = "[{a}, {b}] = {rhs}" if fin.kind == "lie" else "{a} . {b} = {rhs}"
        for (i, j), vec in sorted(fin.mult.items()):
            el = ModuleElement(mod, tuple(const(Fraction(c)) for c in vec))
            lines.append(fmt.format(a=fin.basis[i], b=fin.basis[j], rhs=print_element(el)))
        for j in range(len(fin.basis)):
            el = ModuleElement(mod, tuple(const(Fraction(fin.twist[k][j])) for k in range(len(fin.basis))))
            lines.append(f"alpha {fin.basis[j]} = {print_element(el)}")
        blocks.append(lines)
    for alg in d.algebras.values():
        blocks.append(_print_algebra(alg))
    for name, (alg_name, form) in d.forms.items():
        lines = [f"[form {name}]", f"algebra {alg_name}"]
        b = form.module.basis
        for i in range(form.module.rank):
            for j in range(form.module.rank):
                if form.matrix[i][j]:
                    lines.append(f"({b[i]}, {b[j]}) = {format_poly(form.matrix[i][j])}")
        blocks.append(lines)
    for name, rep in d.reps.items():
        lines = [f"[rep {name}]", f"algebra {rep.algebra.name}", "basis " + " ".join(rep.space.basis)]
        lines += _table_lines(rep.left, "left {a} . {b} = {rhs}")
        lines += _table_lines(rep.right_table, "right {a} . {b} = {rhs}")
        lines += _twist_lines(rep.beta, "beta")
        blocks.append(lines)
    for name, (alg_name, r) in d.tensors.items():
        body = print_tensor(r.value)
        blocks.append([f"[tensor {name}]", f"algebra {alg_name}", body])
    for name, c in d.coalgebras.items():
        lines = [f"[coalgebra {name}]", "basis " + " ".join(c.module.basis)]
        for lab, w in zip(c.module.basis, c.delta):
            if not w.is_zero():
                lines.append(f"{lab} -> {print_tensor(w)}")
        lines += _twist_lines(c.twist, "alpha")
        blocks.append(lines)
    for name, p in d.pairs.items():
        lines = [f"[pair {name}]", f"kind {p.kind}", f"first {p.first.name}", f"second {p.second.name}"]
        names = ("rho", "sigma") if p.kind == "lie" else ("lA", "rA", "lB", "rB")
        for n in names:
            lines += _table_lines(getattr(p, n), n + " {a} . {b} = {rhs}")
        blocks.append(lines)
    for name, (p0, p1) in d.splits.items():
        blocks.append([f"[split {name}]", "part " + " ".join(p0), "part " + " ".join(p1)])
    if d.tasks:
        blocks.append(["[tasks]"] + [str(t) for t in d.tasks])
    return "\n\n".join("\n".join(b) for b in blocks) + "\n"
