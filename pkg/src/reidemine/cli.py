"""
Command-line interface.

    reidemine validate FILE
    reidemine reduce FILE
    reidemine confluence FILE [--runs N] [--seed S] [--oracle-guard G]
    reidemine explore FILE [--surplus K] [--radius R]
    reidemine corpus DIR
    reidemine builtin DIR        write the built-in diagrams as PD files

``--out PATH`` sends the main text artifact (PD text for reduce, DOT for
explore, the table for corpus) to PATH; the JSON report still goes to
stdout.  ``REIDEMINE_SEED`` overrides ``--seed``.
"""

import argparse
import os
import sys
from dataclasses import dataclass
from pathlib import Path
from typing import Optional

from . import codec
from .classes import MAX_SURPLUS, explore, verify_r_equals_p
from .mapcore import DiagramError, euler_ok, strand_count
from .reduction import (ConfluenceReport, TooLarge, confluence_check,
                        exhaustive_confluence, reduce)

SEED_ENV = "REIDEMINE_SEED"

EXIT_OK = 0
EXIT_INVALID = 1
EXIT_MISMATCH = 2
EXIT_TOO_LARGE = 3


@dataclass(frozen=True)
class Config:
    seed: int = 0
    runs: int = 32
    surplus: int = 2
    oracle_guard: int = 10
    radius: int = 1
    output: Optional[str] = None


def _bounded(lo, hi, name):
    def conv(text):
        try:
            v = int(text, 0)
        except ValueError:
            raise argparse.ArgumentTypeError("%s must be an integer" % name)
        if not lo <= v <= hi:
            raise argparse.ArgumentTypeError("%s must be in %d..%d" % (name, lo, hi))
        return v
    return conv


_seed = _bounded(-(1 << 63), (1 << 64) - 1, "seed")


def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--seed", type=_seed, default=0)
    common.add_argument("--runs", type=_bounded(1, 1 << 20, "runs"), default=32)
    common.add_argument("--surplus", type=_bounded(0, MAX_SURPLUS, "surplus"), default=2)
    common.add_argument("--oracle-guard", type=_bounded(0, 1000, "oracle guard"), default=10)
    common.add_argument("--radius", type=_bounded(0, 10, "radius"), default=1)
    common.add_argument("--out", default=None)

    p = argparse.ArgumentParser(prog="reidemine",
                                description="Reidemeister-move diagram rewriting.")
    sub = p.add_subparsers(dest="command", required=True)
    for name in ("validate", "reduce", "confluence", "explore"):
        sp = sub.add_parser(name, parents=[common])
        sp.add_argument("input")
    sp = sub.add_parser("corpus", parents=[common])
    sp.add_argument("directory")
    sp = sub.add_parser("builtin", parents=[common])
    sp.add_argument("directory")
    return p


def config_from(args, environ=None):
    environ = os.environ if environ is None else environ
    seed = args.seed
    if environ.get(SEED_ENV):
        seed = _seed(environ[SEED_ENV])
    return Config(seed, args.runs, args.surplus, args.oracle_guard, args.radius,
                  args.out)


def _read(path):
    with open(path, encoding="utf-8") as fh:
        return fh.read()


def _artifact(cfg, text, out):
    """Write ``text`` to --out if given, else to ``out``."""
    if cfg.output:
        Path(cfg.output).write_text(text + "\n", encoding="utf-8")
    else:
        out.write(text + "\n")


def _diagnostic(d):
    if not euler_ok(d):
        raise DiagramError("Euler relation fails")
    if d.n == 0:
        return "crossings=0 loops=%d ok" % len(d.loops)
    parts = ["crossings=%d" % d.n, "arcs=%d" % (2 * d.n),
             "faces=%d" % len(d.face_darts), "components=%d" % strand_count(d)]
    if d.loops:
        parts.append("loops=%d" % len(d.loops))
    return " ".join(parts) + " ok"


def cmd_validate(path, cfg, out, err):
    try:
        d = codec.parse(_read(path))
        out.write(_diagnostic(d) + "\n")
    except (OSError, DiagramError) as e:
        err.write("%s: %s: %s\n" % (path, type(e).__name__, e))
        return EXIT_INVALID
    return EXIT_OK


def _reduce_report(d):
    tr = reduce(d)
    rep = codec.report(tr.final)
    rep["loop_flag"] = bool(tr.final.loops)
    rep["steps"] = len(tr.steps)
    return tr, rep


def cmd_reduce(path, cfg, out, err):
    d = codec.parse(_read(path))
    tr, rep = _reduce_report(d)
    _artifact(cfg, codec.emit(tr.final), out)
    out.write(codec.dumps(rep) + "\n")
    return EXIT_OK


def _confluence(d, cfg, err):
    rep = confluence_check(d, cfg.runs, cfg.seed)
    exhaustive = True
    try:
        ex = exhaustive_confluence(d, cfg.oracle_guard)
    except TooLarge as e:
        err.write("warning: %s; sampled runs only\n" % e)
        exhaustive = False
    else:
        merged = ConfluenceReport()
        for f in list(rep.finals.values()) + list(ex.finals.values()):
            merged.add(f)
        rep = merged
    body = rep.as_dict()
    body["confluent"] = rep.confluent
    body["exhaustive"] = exhaustive
    body["runs"] = cfg.runs
    body["seed"] = cfg.seed
    return rep, body


def cmd_confluence(path, cfg, out, err):
    d = codec.parse(_read(path))
    rep, body = _confluence(d, cfg, err)
    out.write(codec.dumps(body) + "\n")
    return EXIT_OK if rep.confluent else EXIT_MISMATCH


def cmd_explore(path, cfg, out, err):
    d = codec.parse(_read(path))
    tr = reduce(d)
    m = tr.final
    body = {"reduced_first": bool(tr.steps), "radius": cfg.radius,
            "surplus": cfg.surplus}
    try:
        g = explore(m, cfg.radius, cfg.surplus, cfg.oracle_guard)
        if m.loops:
            body["r_subset_p"] = None
            body["violations"] = []
            err.write("note: diagram has free circles; R = P check skipped\n")
        else:
            rp = verify_r_equals_p(m, cfg.surplus, cfg.oracle_guard)
            body["r_subset_p"] = rp.r_subset_p
            body["violations"] = [v.code.hex() for v in rp.violations]
    except TooLarge as e:
        err.write("error: %s\n" % e)
        return EXIT_TOO_LARGE
    if tr.steps:
        err.write("note: input was not minimal; reduced in %d steps\n" % len(tr.steps))
    body["nodes"] = len(g.nodes)
    body["edges"] = len(g.edges)
    _artifact(cfg, codec.export_dot(g), out)
    out.write(codec.dumps(body) + "\n")
    return EXIT_OK


def cmd_corpus(directory, cfg, out, err):
    files = sorted(p for p in Path(directory).iterdir()
                   if p.is_file() and not p.name.startswith("."))
    rows = []
    failed = 0
    sink = _Null()
    for p in files:
        try:
            d = codec.parse(_read(p))
            _diagnostic(d)
            tr, _ = _reduce_report(d)
            rep, _ = _confluence(d, cfg, sink)
            ok = rep.confluent
            rows.append("%s %s crossings=%d minimal=%d codes=%d"
                        % (p.name, "pass" if ok else "FAIL", d.n, tr.final.n,
                           len(rep.distinct_canonical_codes)))
        except (OSError, DiagramError) as e:
            ok = False
            rows.append("%s FAIL %s" % (p.name, type(e).__name__))
        failed += not ok
    rows.append("total=%d failed=%d" % (len(files), failed))
    _artifact(cfg, "\n".join(rows), out)
    return EXIT_INVALID if failed else EXIT_OK


def cmd_builtin(directory, cfg, out, err):
    Path(directory).mkdir(parents=True, exist_ok=True)
    items = builtin_corpus()
    for name, d in items.items():
        (Path(directory) / (name + ".pd")).write_text(codec.emit(d) + "\n",
                                                      encoding="utf-8")
    out.write("wrote %d files\n" % len(items))
    return EXIT_OK


def builtin_corpus():
    from . import corpus
    items = {}
    for name, d in corpus.knots().items():
        items["knot_" + name] = d
    for name, d in corpus.clasp_diagrams().items():
        items["clasp_" + name.replace("+clasp", "")] = d
    items["poke"] = corpus.poke()
    items["double_poke"] = corpus.double_poke()
    items["hopf"] = corpus.hopf()
    items["unknot_minimal"] = corpus.minimal_unknot()[0]
    return items


class _Null:
    def write(self, s):
        pass


COMMANDS = {
    "validate": cmd_validate,
    "reduce": cmd_reduce,
    "confluence": cmd_confluence,
    "explore": cmd_explore,
    "corpus": cmd_corpus,
    "builtin": cmd_builtin,
}


def main(argv=None, out=None, err=None, environ=None):
    out = out or sys.stdout
    err = err or sys.stderr
    args = build_parser().parse_args(argv)
    try:
        cfg = config_from(args, environ)
    except argparse.ArgumentTypeError as e:
        err.write("error: %s: %s\n" % (SEED_ENV, e))
        return EXIT_INVALID
    target = getattr(args, "input", None) or args.directory
    try:
        return COMMANDS[args.command](target, cfg, out, err)
    except (OSError, DiagramError) as e:
        err.write("%s: %s: %s\n" % (target, type(e).__name__, e))
        return EXIT_INVALID


if __name__ == "__main__":
    sys.exit(main())
