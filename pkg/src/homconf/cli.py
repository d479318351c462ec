"""Command-line interface: ``homconf check | construct | oracle | corpus``."""

from __future__ import annotations

import argparse
import os
import sys
from pathlib import Path
from typing import Sequence

from .engine import AXIOM_CHECKS, check_axioms, default_axioms
from .report import Report
from .constructions import (ConstructionError, check_symplectic, check_parakahler, check_lie_module,
                            check_lie_module_twist,
                            check_lsc_module, check_matched_pair_lie, check_matched_pair_lsc,
                            check_dual_pair_equivalence, current_algebra, sub_adjacent, semidirect_lie,
                            semidirect_lsc, bicrossed_lie, bicrossed_lsc, dual_module,
                            lsc_from_symplectic)
from .bialgebra import (TwistFixpointViolated, check_coalgebra, check_cocycle, check_bialgebra,
                        check_coboundary_obstruction, coboundary_cobracket, dual_algebra_from_coalgebra,
                        dual_coalgebra_from_algebra)
from .polyring import const
from .surface import DefinitionFile, SurfaceError, Task, load_definition, print_definition
from . import oracle as _oracle
from .corpus import generate_corpus

DEFAULT_SEED = 20240611

EXIT_OK, EXIT_FAIL, EXIT_INPUT = 0, 1, 2


def env_seed() -> int:
    raw = os.environ.get("HOMCONF_SEED")
    return int(raw) if raw else DEFAULT_SEED


# -- check -------------------------------------------------------------------

def _finite_report(name, fin) -> Report:
    rep = Report(name)
    bad = fin.axiom_failures()
    rep.add("finite-axioms", (), const(len(bad)))
    return rep


def run_task(d: DefinitionFile, task: Task, axioms: Sequence[str] | None = None) -> list[Report]:
    a = task.args
    v = task.verb
    if v == "check":
        alg = d.algebras[a[0]]
        return [check_axioms(alg, axioms or task.axioms or None)]
    if v == "check-module":
        return [check_lsc_module(d.reps[a[0]])]
    if v == "check-lie-module":
        rep = d.reps[a[0]]
        return [check_lie_module(rep).extend(check_lie_module_twist(rep))]
    if v == "check-symplectic":
        return [check_symplectic(d.algebras[a[0]], d.forms[a[1]][1])]
    if v == "check-parakahler":
        return [check_parakahler(d.algebras[a[0]], d.splits[a[2]], d.forms[a[1]][1])]
    if v == "check-pair":
        p = d.pairs[a[0]]
        rep = check_matched_pair_lie(p) if p.kind == "lie" else check_matched_pair_lsc(p)
        rep.subject = a[0]
        return [rep]
    if v == "check-coalgebra":
        return [check_coalgebra(d.coalgebras[a[0]])]
    if v == "check-cocycle":
        return [check_cocycle(d.algebras[a[0]], d.coalgebras[a[1]])]
    if v == "check-bialgebra":
        return [check_bialgebra(d.algebras[a[0]], d.algebras[a[1]])]
    if v == "check-obstruction":
        return [check_coboundary_obstruction(d.algebras[a[0]], d.tensors[a[1]][1]).report(f"{a[0]}/{a[1]}")]
    if v == "check-dual-pairs":
        return [check_dual_pair_equivalence(d.algebras[a[0]], d.algebras[a[1]]).report(f"{a[0]}/{a[1]}")]
    if v == "check-finite":
        return [_finite_report(a[0], d.finite[a[0]])]
    raise ValueError(f"unknown task {v!r}")


def run_checks(d: DefinitionFile, axioms: Sequence[str] | None = None) -> list[Report]:
    tasks = d.tasks or [Task("check", (name,)) for name in d.algebras]
    out: list[Report] = []
    for t in tasks:
        out.extend(r.sorted() for r in run_task(d, t, axioms))
    return out


def render(reports: Sequence[Report], fmt: str) -> str:
    if fmt == "json":
        return "".join(r.to_json_lines() for r in reports)
    return "".join(r.to_text() for r in reports)


def cmd_check(args) -> int:
    d = load_definition(args.file)
    axioms = None
    if args.axioms:
        axioms = [a.strip() for a in args.axioms.split(",") if a.strip()]
        unknown = [a for a in axioms if a not in AXIOM_CHECKS]
        if unknown:
            print(f"error: unknown axioms {', '.join(unknown)}", file=sys.stderr)
            return EXIT_INPUT
    reports = run_checks(d, axioms)
    sys.stdout.write(render(reports, args.format))
    if args.figure:
        from .figures import save_heatmap
        save_heatmap(reports, args.figure)
    return EXIT_OK if all(r.passed for r in reports) else EXIT_FAIL


# -- construct ---------------------------------------------------------------

def _pick(table: dict, names: list[str], what: str, pred=lambda x: True):
    if names:
        name = names.pop(0)
        if name not in table:
            raise SurfaceError(f"no {what} named {name!r}")
        return name, table[name]
    for name, obj in table.items():
        if pred(obj):
            return name, obj
    raise SurfaceError(f"the file declares no suitable {what}")


def _alg_pred(kind):
    return lambda a: a.kind == kind


def construct(d: DefinitionFile, what: str, names: list[str]) -> DefinitionFile:
    """Build one object from ``d``; the result holds it plus whatever it refers to."""
    out = DefinitionFile()
    names = list(names)
    if what == "sub-adjacent":
        name, alg = _pick(d.algebras, names, "left-symmetric algebra", lambda a: a.kind != "lie")
        lie = sub_adjacent(alg, name=f"{name}_lie")
        out.algebras[lie.name] = lie
        out.tasks.append(Task("check", (lie.name,)))
    elif what == "current":
        name, fin = _pick(d.finite, names, "finite algebra")
        cur = current_algebra(fin, name=f"Cur_{name}")
        out.algebras[cur.name] = cur
        out.tasks.append(Task("check", (cur.name,)))
    elif what == "semidirect":
        name, rep = _pick(d.reps, names, "representation")
        alg = rep.algebra
        build = semidirect_lie if alg.kind == "lie" else semidirect_lsc
        sd = build(alg, rep, name=f"{alg.name}_x_{name}")
        out.algebras[sd.name] = sd
        out.tasks.append(Task("check", (sd.name,)))
    elif what == "bicrossed":
        name, pair = _pick(d.pairs, names, "matched pair")
        build = bicrossed_lie if pair.kind == "lie" else bicrossed_lsc
        bc = build(pair, name=f"{name}_sum")
        out.algebras[bc.name] = bc
        out.tasks.append(Task("check", (bc.name,)))
    elif what == "dual":
        if names and names[0] in d.coalgebras or (not names and d.coalgebras and not d.reps):
            name, c = _pick(d.coalgebras, names, "coalgebra")
            alg = dual_algebra_from_coalgebra(c, name=f"{name}_dual")
            out.algebras[alg.name] = alg
            out.tasks.append(Task("check", (alg.name,)))
        else:
            name, rep = _pick(d.reps, names, "representation")
            dual = dual_module(rep, name=f"{name}_dual")
            out.algebras[rep.algebra.name] = rep.algebra
            out.reps[dual.name] = dual
            out.tasks.append(Task("check-module", (dual.name,)))
    elif what == "dual-coalgebra":
        name, alg = _pick(d.algebras, names, "algebra", lambda a: a.kind != "lie")
        c = dual_coalgebra_from_algebra(alg, name=f"{name}_co")
        out.coalgebras[c.name] = c
        out.tasks.append(Task("check-coalgebra", (c.name,)))
    elif what == "from-symplectic":
        name, alg = _pick(d.algebras, names, "Lie algebra", _alg_pred("lie"))
        fname, (owner, form) = _pick(d.forms, names, "form", lambda f: f[0] == name)
        lsc = lsc_from_symplectic(alg, form, name=f"{name}_ls")
        out.algebras[lsc.name] = lsc
        out.tasks.append(Task("check", (lsc.name,)))
    elif what == "coboundary":
        name, alg = _pick(d.algebras, names, "algebra", lambda a: a.kind != "lie")
        tname, (owner, r) = _pick(d.tensors, names, "tensor", lambda t: t[0] == name)
        c = coboundary_cobracket(alg, r, name=f"{name}_{tname}_cob")
        out.algebras[name] = alg
        out.coalgebras[c.name] = c
        out.tasks += [Task("check-coalgebra", (c.name,)), Task("check-cocycle", (name, c.name))]
    else:
        raise ValueError(f"unknown construction {what!r}")
    return out


def cmd_construct(args) -> int:
    d = load_definition(args.file)
    try:
        out = construct(d, args.what, args.names)
    except (ConstructionError, TwistFixpointViolated) as exc:
        print(f"error: {exc}", file=sys.stderr)
        report = getattr(exc, "report", None)
        if report is not None:
            sys.stderr.write(Report(report.subject, report.failures()).to_text())
        return EXIT_FAIL
    text = print_definition(out)
    if args.out:
        Path(args.out).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)
    return EXIT_OK


# -- oracle ------------------------------------------------------------------

def oracle_reports(d: DefinitionFile, samples: int, seed: int) -> list[Report]:
    """One record per (object, axiom): passes iff symbolic and numeric verdicts agree."""
    out = []
    for name, alg in d.algebras.items():
        rep = Report(name)
        for axiom in default_axioms(alg.kind) + ["shift"]:
            if axiom not in _oracle.ORACLE_AXIOMS:
                continue
            sym = AXIOM_CHECKS[axiom](alg).passed
            num = _oracle.oracle_check(alg, axiom, samples, seed).passed
            rep.add(f"oracle-{axiom}", (_verdict(sym), _verdict(num)), const(0 if sym == num else 1))
        out.append(rep)
    for name, c in d.coalgebras.items():
        rep = Report(name)
        sym = check_coalgebra(c).passed
        num = _oracle.oracle_coalgebra(c, samples, seed).passed
        rep.add("oracle-coalgebra", (_verdict(sym), _verdict(num)), const(0 if sym == num else 1))
        out.append(rep)
    return out


def _verdict(ok: bool) -> str:
    return "pass" if ok else "fail"


def cmd_oracle(args) -> int:
    d = load_definition(args.file)
    seed = env_seed() if args.seed is None else args.seed
    reports = oracle_reports(d, args.samples, seed)
    sys.stdout.write(render(reports, args.format))
    return EXIT_OK if all(r.passed for r in reports) else EXIT_FAIL


# -- corpus ------------------------------------------------------------------

def cmd_corpus(args) -> int:
    seed = env_seed() if args.seed is None else args.seed
    outdir = Path(args.out)
    outdir.mkdir(parents=True, exist_ok=True)
    index = ["name\tcertified\trank\torigin"]
    for inst in generate_corpus(args.count, seed, max_rank=args.rank, degree=args.degree):
        d = DefinitionFile()
        d.algebras[inst.name] = inst.algebra
        d.tasks.append(Task("check", (inst.name,)))
        (outdir / f"{inst.name}.def").write_text(print_definition(d), encoding="utf-8")
        index.append(f"{inst.name}\t{str(inst.certified).lower()}\t{inst.algebra.rank}\t{inst.origin}")
    (outdir / "index.tsv").write_text("\n".join(index) + "\n", encoding="utf-8")
    print(f"wrote {args.count} instances to {outdir}")
    return EXIT_OK


# -- entry point -------------------------------------------------------------

CONSTRUCTIONS = ("sub-adjacent", "current", "semidirect", "bicrossed", "dual", "dual-coalgebra",
                 "from-symplectic", "coboundary")


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="homconf", description=__doc__)
    sub = p.add_subparsers(dest="command", required=True)

    c = sub.add_parser("check", help="run the file's tasks, or the default axioms of every algebra")
    c.add_argument("file")
    c.add_argument("--axioms", help="comma-separated axiom names: " + ",".join(AXIOM_CHECKS))
    c.add_argument("--format", choices=("text", "json"), default="text")
    c.add_argument("--figure", metavar="PATH", help="write a pass/fail heatmap (needs matplotlib)")
    c.set_defaults(func=cmd_check)

    k = sub.add_parser("construct", help="build a new object and print it as a definition file")
    k.add_argument("what", choices=CONSTRUCTIONS)
    k.add_argument("file")
    k.add_argument("names", nargs="*", help="names of the inputs (default: first suitable)")
    k.add_argument("--out", help="output path (default: stdout)")
    k.set_defaults(func=cmd_construct)

    o = sub.add_parser("oracle", help="compare symbolic verdicts with numeric sampling")
    o.add_argument("file")
    o.add_argument("--samples", type=int, default=100)
    o.add_argument("--seed", type=int, default=None, help="default: $HOMCONF_SEED or %d" % DEFAULT_SEED)
    o.add_argument("--format", choices=("text", "json"), default="text")
    o.set_defaults(func=cmd_oracle)

    g = sub.add_parser("corpus", help="write randomized instances")
    g.add_argument("--rank", type=int, default=3)
    g.add_argument("--degree", type=int, default=2)
    g.add_argument("--count", type=int, default=50)
    g.add_argument("--seed", type=int, default=None)
    g.add_argument("--out", required=True)
    g.set_defaults(func=cmd_corpus)
    return p


def main(argv: Sequence[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except SurfaceError as exc:
        print(f"error: {args.file if hasattr(args, 'file') else ''}: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
