"""
Command-line front end.

    qschubert roots   --type G2
    qschubert weyl    --type A3 --w0
    qschubert cauchon --type B2 --word "1 2 1 2" [--y "2"]
    qschubert strata  --type A2 --word "1 2 1" [--format table|machine|dot] [--jobs 4]
    qschubert torus   --type A2 --w0 [--cocycle twist.json]
    qschubert check   --type A3 --w0

All output is deterministic: elements are listed by (length, reduced word),
and reduced words are the lexicographically smallest ones. The identity is
written ``e``.

Cocycle files are JSON objects::

    {"type": "A2", "word": "1 2 1", "params": ["p"],
     "r_table": [[[0, 0], [0, 1]], [[0, -1], [0, 0]]],     # over the support
     "support": [1, 2],                                    # optional
     "relations": [[0, 2]]}                                # optional

``r_table[a][b]`` is the exponent vector (q first, then params) of
r(alpha_{support[a]}, alpha_{support[b]}). ``dump_cocycle`` writes the
canonical form: sorted keys, two-space indent, trailing newline.

Machine report format (``--format machine``) for ``strata``::

    # qschubert 0.1.0 strata type=A2 word=1 2 1
    # y<TAB>D<TAB>dim<TAB>height<TAB>gkcodim<TAB>closure
    e<TAB>D=[]<TAB>1<TAB>0<TAB>3<TAB>e
    ...

where ``closure`` lists W^{<= y} as reduced words joined by ``;``.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass
from typing import Optional, Sequence

from . import __version__
from .cauchon import (
    cauchon_diagram_for, format_diagram, parse_diagram, qyw_lattice, qyw_lattice_from_betas,
)
from .qtorus import build_torus, center_lattice
from .rootsys import RootSystem, build_root_system, parse_lie_type
from .strata import (
    StrataContext, StratumReport, catenarity_failures, sandwich_lattice, stratification_report,
    stratum_dimension, stratum_lattice, uniparameter_dimension,
)
from .twist import Bicharacter, RelationsLattice
from .weyl import (
    WeylElt, bruhat_covers, bruhat_leq, format_word, from_word, is_reduced, longest_element,
    lower_interval, parse_word, support,
)


class ConfigError(ValueError):
    pass


# ---------------------------------------------------------------- cocycles

@dataclass(frozen=True)
class CocycleConfig:
    lie_type: str
    word: tuple[int, ...]
    params: tuple[str, ...]
    support: tuple[int, ...]
    r_table: tuple[tuple[tuple[int, ...], ...], ...]
    relations: tuple[tuple[int, ...], ...] = ()

    def bicharacter(self) -> Bicharacter:
        return Bicharacter(self.support, self.params, self.r_table)

    def relations_lattice(self) -> RelationsLattice:
        return RelationsLattice.from_vectors(self.relations, 1 + len(self.params))


_COCYCLE_FIELDS = {"type", "word", "params", "support", "r_table", "relations"}


def _int_vector(value, where: str) -> tuple[int, ...]:
    if not isinstance(value, list) or not all(isinstance(x, int) and not isinstance(x, bool) for x in value):
        raise ConfigError(f"{where}: expected a list of integers, got {value!r}")
    return tuple(value)


def load_cocycle(text: str) -> CocycleConfig:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ConfigError(f"cocycle file, line {exc.lineno} column {exc.colno}: {exc.msg}") from None
    if not isinstance(doc, dict):
        raise ConfigError("cocycle file: top level must be an object")
    unknown = set(doc) - _COCYCLE_FIELDS
    if unknown:
        raise ConfigError(f"cocycle file: unknown field(s) {sorted(unknown)}")
    for key in ("type", "word", "params", "r_table"):
        if key not in doc:
            raise ConfigError(f"cocycle file: missing field {key!r}")
    try:
        lie_type = str(parse_lie_type(str(doc["type"])))
    except ValueError as exc:
        raise ConfigError(f"field 'type': {exc}") from None
    word_field = doc["word"]
    try:
        word = parse_word(word_field) if isinstance(word_field, str) else _int_vector(word_field, "field 'word'")
    except ValueError as exc:
        raise ConfigError(f"field 'word': {exc}") from None
    params = doc["params"]
    if not isinstance(params, list) or not all(isinstance(p, str) for p in params):
        raise ConfigError("field 'params': expected a list of names")
    if "q" in params:
        raise ConfigError("field 'params': q is implicit and must not be listed")
    m = 1 + len(params)
    rs = build_root_system(lie_type)
    if not is_reduced(rs, word):
        raise ConfigError(f"field 'word': {format_word(word)} is not reduced in {lie_type}")
    sup_w = sorted(support(from_word(rs, word)))
    sup = _int_vector(doc["support"], "field 'support'") if "support" in doc else tuple(sup_w)
    if not set(sup) <= set(sup_w):
        raise ConfigError(f"field 'support': {list(sup)} is not contained in S(w) = {sup_w}")
    table = doc["r_table"]
    if not isinstance(table, list) or len(table) != len(sup):
        raise ConfigError(f"field 'r_table': expected {len(sup)} rows")
    rows = []
    for a, row in enumerate(table):
        if not isinstance(row, list) or len(row) != len(sup):
            raise ConfigError(f"field 'r_table' row {a}: expected {len(sup)} entries")
        entries = []
        for b, e in enumerate(row):
            vec = _int_vector(e, f"field 'r_table'[{a}][{b}]")
            if len(vec) != m:
                raise ConfigError(f"field 'r_table'[{a}][{b}]: expected {m} exponents, got {len(vec)}")
            entries.append(vec)
        rows.append(tuple(entries))
    rels = []
    for k, v in enumerate(doc.get("relations", [])):
        vec = _int_vector(v, f"field 'relations'[{k}]")
        if len(vec) != m:
            raise ConfigError(f"field 'relations'[{k}]: expected {m} exponents, got {len(vec)}")
        rels.append(vec)
    cfg = CocycleConfig(lie_type, tuple(word), tuple(params), tuple(sup), tuple(rows), tuple(rels))
    try:
        cfg.bicharacter()
        cfg.relations_lattice()
    except ValueError as exc:
        raise ConfigError(f"cocycle file: {exc}") from None
    return cfg


def dump_cocycle(cfg: CocycleConfig) -> str:
    doc = {
        "type": cfg.lie_type,
        "word": format_word(cfg.word),
        "params": list(cfg.params),
        "support": list(cfg.support),
        "r_table": [[list(e) for e in row] for row in cfg.r_table],
        "relations": [list(v) for v in cfg.relations],
    }
    return json.dumps(doc, sort_keys=True, indent=2) + "\n"


# ---------------------------------------------------------------- reports

def _fmt_closure(words: Sequence[Sequence[int]]) -> str:
    return ";".join(format_word(w) for w in words)


def format_machine(reports: Sequence[StratumReport], lie_type: str, word: Sequence[int]) -> str:
    lines = [
        f"# qschubert {__version__} strata type={lie_type} word={format_word(word)}",
        "# y\tD\tdim\theight\tgkcodim\tclosure",
    ]
    for rep in reports:
        lines.append("\t".join([
            format_word(rep.y_word), format_diagram(rep.diagram), str(rep.dim),
            str(rep.height), str(rep.gk_codim), _fmt_closure(rep.closure_down),
        ]))
    return "\n".join(lines) + "\n"


def parse_machine(text: str) -> list[StratumReport]:
    out = []
    for lineno, line in enumerate(text.splitlines(), start=1):
        if not line or line.startswith("#"):
            continue
        fields = line.split("\t")
        if len(fields) != 6:
            raise ConfigError(f"line {lineno}: expected 6 tab-separated fields, got {len(fields)}")
        try:
            out.append(StratumReport(
                y_word=parse_word(fields[0]),
                diagram=tuple(sorted(parse_diagram(fields[1]))),
                dim=int(fields[2]),
                height=int(fields[3]),
                gk_codim=int(fields[4]),
                closure_down=tuple(parse_word(w) for w in fields[5].split(";")),
            ))
        except ValueError as exc:
            raise ConfigError(f"line {lineno}: {exc}") from None
    return out


def format_table(reports: Sequence[StratumReport]) -> str:
    header = ("y", "D", "dim", "height", "gkcodim", "#closure")
    rows = [(format_word(r.y_word), format_diagram(r.diagram), str(r.dim), str(r.height),
             str(r.gk_codim), str(len(r.closure_down))) for r in reports]
    return _table(header, rows)


def format_dot(rs: RootSystem, reports: Sequence[StratumReport]) -> str:
    """Hasse diagram of the reported primes; edge y' -> y when y' is covered by y."""
    elts = [from_word(rs, r.y_word) for r in reports]
    lines = ["digraph strata {"]
    for rep in reports:
        name = format_word(rep.y_word)
        lines.append(f'  "{name}" [label="{name}\\ndim {rep.dim}"];')
    for a, b in bruhat_covers(elts):
        lines.append(f'  "{format_word(reports[a].y_word)}" -> "{format_word(reports[b].y_word)}";')
    lines.append("}")
    return "\n".join(lines) + "\n"


def _table(header, rows) -> str:
    widths = [max(len(str(x)) for x in col) for col in zip(header, *rows)]
    lines = ["  ".join(str(x).ljust(wd) for x, wd in zip(row, widths)).rstrip()
             for row in [header, *rows]]
    return "\n".join(lines) + "\n"


# ---------------------------------------------------------------- commands

@dataclass
class RunConfig:
    rs: RootSystem
    word: tuple[int, ...]
    w: WeylElt
    r: Optional[Bicharacter]
    rel: Optional[RelationsLattice]
    fmt: str
    ys: Optional[list[WeylElt]]
    jobs: int


def _resolve(args) -> RunConfig:
    cfg = None
    if getattr(args, "cocycle", None):
        try:
            with open(args.cocycle, encoding="utf-8") as fh:
                cfg = load_cocycle(fh.read())
        except OSError as exc:
            raise ConfigError(f"cannot read cocycle file: {exc}") from None
    type_text = args.type or (cfg.lie_type if cfg else None)
    if type_text is None:
        raise ConfigError("--type is required (or give a cocycle file)")
    rs = build_root_system(parse_lie_type(type_text))
    if cfg and cfg.lie_type != str(rs.lie_type):
        raise ConfigError(f"cocycle file is for {cfg.lie_type}, not {rs.lie_type}")
    if args.w0:
        word = longest_element(rs).reduced_word
    elif args.word is not None:
        word = parse_word(args.word)
    elif cfg:
        word = cfg.word
    else:
        raise ConfigError("give --word or --w0")
    if not is_reduced(rs, word):
        raise ConfigError(f"word {format_word(word)} is not reduced in {rs.lie_type}")
    w = from_word(rs, word)
    r = rel = None
    if cfg:
        if from_word(rs, cfg.word) != w:
            raise ConfigError(f"cocycle file is for w = {format_word(cfg.word)}, not {format_word(word)}")
        r, rel = cfg.bicharacter(), cfg.relations_lattice()
    ys = None
    if getattr(args, "y", None) is not None:
        y = from_word(rs, parse_word(args.y))
        if not bruhat_leq(y, w):
            raise ConfigError(f"y = {args.y} is not below w = {format_word(word)} in Bruhat order")
        ys = [y]
    return RunConfig(rs, tuple(word), w, r, rel, getattr(args, "format", "table"), ys,
                     getattr(args, "jobs", 1))


def cmd_roots(args) -> str:
    rs = build_root_system(parse_lie_type(args.type))
    lines = [f"type {rs.lie_type}", "cartan:"]
    lines += ["  " + " ".join(f"{x:2d}" for x in row) for row in rs.cartan]
    lines.append("symmetrizers: " + " ".join(map(str, rs.symmetrizers)))
    lines.append(f"positive roots ({len(rs.positive_roots)}):")
    ordered = sorted(rs.positive_roots, key=lambda a: (sum(a), tuple(-x for x in a)))
    lines += ["  " + " ".join(map(str, a)) for a in ordered]
    return "\n".join(lines) + "\n"


def cmd_weyl(args) -> str:
    run = _resolve(args)
    elts = run.ys or lower_interval(run.w)
    header = ("y", "length", "support", "fixed")
    rows = []
    for y in elts:
        fixed = [i for i in range(1, run.rs.rank + 1) if i not in support(y)]
        rows.append((format_word(y.reduced_word), str(y.length),
                     ",".join(map(str, sorted(support(y)))) or "-", ",".join(map(str, fixed)) or "-"))
    if run.fmt == "machine":
        return "\n".join([f"# qschubert {__version__} weyl type={run.rs.lie_type} word={format_word(run.word)}",
                          "# " + "\t".join(header)] + ["\t".join(r) for r in rows]) + "\n"
    return _table(header, rows)


def cmd_cauchon(args) -> str:
    run = _resolve(args)
    elts = run.ys or lower_interval(run.w)
    header = ("y", "D", "Qyw basis")
    rows = []
    for y in elts:
        d = cauchon_diagram_for(run.rs, run.word, y)
        basis = ";".join(" ".join(map(str, b)) for b in qyw_lattice(run.rs, d).basis) or "0"
        rows.append((format_word(y.reduced_word), str(d), basis))
    if run.fmt == "machine":
        return "\n".join([f"# qschubert {__version__} cauchon type={run.rs.lie_type} word={format_word(run.word)}",
                          "# " + "\t".join(header)] + ["\t".join(r) for r in rows]) + "\n"
    return _table(header, rows)


def cmd_strata(args) -> str:
    run = _resolve(args)
    reports = stratification_report(run.rs, run.w, run.r, run.rel, word=run.word, ys=run.ys, jobs=run.jobs)
    if run.fmt == "machine":
        return format_machine(reports, str(run.rs.lie_type), run.word)
    if run.fmt == "dot":
        return format_dot(run.rs, reports)
    return format_table(reports)


def cmd_torus(args) -> str:
    run = _resolve(args)
    ctx = StrataContext(run.rs, run.w, run.r, run.rel, run.word)
    params = ctx.r.params
    out = []
    if run.fmt == "machine":
        out.append(f"# qschubert {__version__} torus type={run.rs.lie_type} word={format_word(run.word)}")
        out.append("# y\tD\tcenter_rank\tcenter_basis")
    for y in run.ys or lower_interval(run.w):
        t = build_torus(run.rs, ctx.diagram(y), ctx.r, ctx.rel)
        center = center_lattice(t)
        zero = " ".join(["0"] * t.m)
        if run.fmt == "machine":
            basis = ";".join(f"{zero} | " + " ".join(map(str, v)) for v in center.basis)
            out.append("\t".join([format_word(y.reduced_word), format_diagram(ctx.diagram(y).positions),
                                  str(center.rank), basis]))
            continue
        out.append(f"y = {format_word(y.reduced_word)}  {ctx.diagram(y)}  generators at {list(t.positions)}")
        for row in t.comm:
            out.append("  " + "  ".join(c.format(params).rjust(8) for c in row))
        out.append(f"  center rank {center.rank}: " + (
            "; ".join("(" + ",".join(map(str, v)) + ")" for v in center.basis) or "0"))
    return "\n".join(out) + "\n"


def _is_twisted(r: Optional[Bicharacter]) -> bool:
    return r is not None and any(any(e) for row in r.table for e in row)


def check_names(r: Optional[Bicharacter]) -> list[str]:
    """Invariants run by ``check``; the closed formula only applies when r is trivial."""
    names = ["qyw-generators", "center-rank", "sandwich", "catenarity"]
    return names if _is_twisted(r) else ["formula-agreement"] + names


def run_checks(rs: RootSystem, w: WeylElt, r=None, rel=None, word=None) -> list[str]:
    """Failure lines, each naming the invariant and the (y, w) witness."""
    ctx = StrataContext(rs, w, r, rel, word)
    wname = format_word(ctx.word)
    failures = []
    twisted = _is_twisted(ctx.r)
    for y in lower_interval(w):
        yname = format_word(y.reduced_word)
        d = ctx.diagram(y)
        if qyw_lattice(rs, d) != qyw_lattice_from_betas(rs, d):
            failures.append(f"qyw-generators: y={yname} w={wname}: generator sets span different lattices")
        dim = stratum_dimension(rs, w, y, ctx=ctx)
        if not twisted and dim != uniparameter_dimension(w, y):
            failures.append(f"formula-agreement: y={yname} w={wname}: lattice rank {dim} "
                            f"!= dim ker(w+y) {uniparameter_dimension(w, y)}")
        crank = center_lattice(build_torus(rs, d, ctx.r, ctx.rel)).rank
        if crank != dim:
            failures.append(f"center-rank: y={yname} w={wname}: torus center rank {crank} "
                            f"!= lattice rank {dim}")
        lp = sandwich_lattice(rs, w, y, ctx=ctx)
        lat = stratum_lattice(rs, w, y, ctx=ctx)
        if not lat.issubset(lp) or lat.rank != lp.rank:
            failures.append(f"sandwich: y={yname} w={wname}: rank L = {lat.rank}, rank L' = {lp.rank}")
    for msg in catenarity_failures(rs, w, ctx.r, ctx.rel):
        failures.append(f"catenarity: w={wname}: {msg}")
    return failures


def cmd_check(args) -> tuple[str, int]:
    run = _resolve(args)
    failures = run_checks(run.rs, run.w, run.r, run.rel, run.word)
    if failures:
        return "\n".join(f"FAIL {f}" for f in failures) + "\n", 1
    return "".join(f"ok   {n}: w={format_word(run.word)}\n" for n in check_names(run.r)), 0


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="qschubert", description=__doc__.split("\n\n")[0].strip())
    p.add_argument("--version", action="version", version=f"qschubert {__version__}")
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp, formats=("table", "machine")):
        sp.add_argument("--type", help="Lie type such as A2, B3, G2")
        g = sp.add_mutually_exclusive_group()
        g.add_argument("--word", help='reduced word of w, e.g. "1 2 1"')
        g.add_argument("--w0", action="store_true", help="use the longest element")
        sp.add_argument("--cocycle", help="JSON file with the bicharacter r and relations")
        sp.add_argument("--y", help="restrict to a single y (reduced word, 'e' for the identity)")
        sp.add_argument("--format", choices=formats, default="table")
        sp.add_argument("--out", help="write output to this file instead of stdout")

    sp = sub.add_parser("roots", help="Cartan matrix and positive roots")
    sp.add_argument("--type", required=True)
    sp.add_argument("--out")
    common(sub.add_parser("weyl", help="the interval below w with lengths and supports"))
    common(sub.add_parser("cauchon", help="Cauchon diagram and Q_{y,w} for each y"))
    sp = sub.add_parser("strata", help="dimension, height and closure of each torus-invariant prime")
    common(sp, ("table", "machine", "dot"))
    sp.add_argument("--jobs", type=int, default=1, help="worker processes")
    common(sub.add_parser("torus", help="commutation matrix and center rank of each Cauchon torus"))
    sp = sub.add_parser("check", help="run the invariant suite for w")
    common(sp)
    return p


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    handlers = {"roots": cmd_roots, "weyl": cmd_weyl, "cauchon": cmd_cauchon,
                "strata": cmd_strata, "torus": cmd_torus}
    status = 0
    try:
        if args.command == "check":
            text, status = cmd_check(args)
        else:
            text = handlers[args.command](args)
    except ValueError as exc:
        print(f"qschubert: error: {exc}", file=sys.stderr)
        return 2
    if getattr(args, "out", None):
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return status
