"""
Text formats.

PD text, one record per line (``#`` starts a comment)::

    X a b c d       crossing; arc labels counterclockwise, starting at an
                    under-strand dart
    O f             crossingless circle in face f (face order of
                    ``mapcore.faces``; with no crossings the sphere is face 0)
    O p:j           circle inside circle j (an earlier O record)
    S g f | S g p:j the map piece owning face g sits in face f / circle j;
                    g is that piece's face towards its host

Map pieces not containing the first crossing and lacking an S record are
placed in face 0.
"""

import json
from collections import Counter

from .canon import canonical_diagram, canonicalize
from .mapcore import (DiagramError, LoopRecord, SplitRecord, build_diagram,
                      faces, map_components, trace_faces, _check_map)


class CodecError(DiagramError):
    pass


class PdSyntaxError(CodecError):
    def __init__(self, msg, line, column):
        super().__init__("line %d, column %d: %s" % (line, column, msg))
        self.line = line
        self.column = column


class BadArcMultiplicity(CodecError):
    pass


class BadFaceIndex(CodecError):
    pass


def _tokens(line):
    out = []
    i = 0
    while i < len(line):
        if line[i].isspace():
            i += 1
            continue
        j = i
        while j < len(line) and not line[j].isspace():
            j += 1
        out.append((line[i:j], i + 1))
        i = j
    return out


def _host(tok, col, lineno):
    if tok.startswith("p:"):
        try:
            return None, int(tok[2:])
        except ValueError:
            raise PdSyntaxError("bad loop reference %r" % tok, lineno, col)
    try:
        return int(tok), None
    except ValueError:
        raise PdSyntaxError("bad face index %r" % tok, lineno, col)


def parse(text):
    xs, os_, ss = [], [], []
    for lineno, raw in enumerate(text.split("\n"), 1):
        line = raw.split("#", 1)[0].rstrip("\r")
        toks = _tokens(line)
        if not toks:
            continue
        head, col = toks[0]
        args = toks[1:]
        if head == "X":
            if len(args) != 4:
                raise PdSyntaxError("X needs 4 labels", lineno,
                                    args[-1][1] if args else col)
            labels = []
            for tok, c in args:
                try:
                    labels.append(int(tok))
                except ValueError:
                    raise PdSyntaxError("bad arc label %r" % tok, lineno, c)
            xs.append(labels)
        elif head == "O":
            if len(args) != 1:
                raise PdSyntaxError("O needs 1 argument", lineno, col)
            os_.append((_host(*args[0], lineno), lineno))
        elif head == "S":
            if len(args) != 2:
                raise PdSyntaxError("S needs 2 arguments", lineno, col)
            tok, c = args[0]
            try:
                g = int(tok)
            except ValueError:
                raise PdSyntaxError("bad face index %r" % tok, lineno, c)
            ss.append((g, _host(*args[1], lineno), lineno))
        else:
            raise PdSyntaxError("unknown record %r" % head, lineno, col)

    counts = Counter(l for x in xs for l in x)
    bad = sorted(l for l, c in counts.items() if c != 2)
    if bad:
        raise BadArcMultiplicity("arc labels not used exactly twice: %s"
                                 % ", ".join(map(str, bad)))
    where = {}
    for k, x in enumerate(xs):
        for p, l in enumerate(x):
            where.setdefault(l, []).append(4 * k + p)
    alpha = [0] * (4 * len(xs))
    for a, b in where.values():
        alpha[a], alpha[b] = b, a
    over = [1] * len(xs)
    _check_map(over, alpha)
    faces_, _ = trace_faces(alpha)
    nfaces = len(faces_) if xs else 1

    def check_host(h, lineno, nloops_before):
        f, p = h
        if p is not None:
            if not 0 <= p < nloops_before:
                raise BadFaceIndex("line %d: no earlier loop %d" % (lineno, p))
        elif not 0 <= f < nfaces:
            raise BadFaceIndex("line %d: no face %d" % (lineno, f))

    loops = []
    for i, (h, lineno) in enumerate(os_):
        check_host(h, lineno, i)
        loops.append(LoopRecord(*h))
    splits = []
    for g, h, lineno in ss:
        if not 0 <= g < len(faces_):
            raise BadFaceIndex("line %d: no face %d" % (lineno, g))
        check_host(h, lineno, len(loops))
        splits.append(SplitRecord(g, *h))
    comps, comp = map_components(alpha)
    placed = {comp[faces_[s.outer_face][0] >> 2] for s in splits}
    for ci in range(1, len(comps)):
        if ci not in placed:
            first = min(fi for fi, f in enumerate(faces_) if comp[f[0] >> 2] == ci)
            splits.append(SplitRecord(first, 0, None))
    return build_diagram(over, alpha, loops, splits)


def _host_str(f, p):
    return "p:%d" % p if p is not None else str(f)


def emit(d):
    """Canonical PD text (no trailing newline)."""
    cd = canonical_diagram(d)
    label = {}
    lines = []
    for k in range(cd.n):
        row = []
        for p in range(4):
            x = 4 * k + p
            arc = min(x, cd.alpha[x])
            if arc not in label:
                label[arc] = len(label) + 1
            row.append(str(label[arc]))
        lines.append("X " + " ".join(row))
    for s in cd.splits:
        lines.append("S %d %s" % (s.outer_face, _host_str(s.host_face, s.nesting_parent)))
    for l in cd.loops:
        lines.append("O " + _host_str(l.host_face, l.nesting_parent))
    return "\n".join(lines)


def report(d):
    """JSON-ready summary with the fixed key set."""
    from .reduction import is_minimal
    return {
        "canonical": canonicalize(d).hex(),
        "crossings": d.n,
        "faces": [f.degree for f in faces(d)],
        "minimal": is_minimal(d),
    }


def dumps(obj):
    return json.dumps(obj, sort_keys=True, indent=2)


def export_dot(g):
    """DOT text for a class graph; nodes ordered by canonical code."""
    nodes = sorted(g.nodes, key=lambda cid: cid.code)
    name = {cid: "n%d" % i for i, cid in enumerate(nodes)}
    lines = ["digraph classes {"]
    for cid in nodes:
        tag = "*" if cid.loop_flag else ""
        lines.append('  %s [label="c=%d %s%s"];'
                     % (name[cid], g.nodes[cid], cid.code.short(), tag))
    index = {cid: i for i, cid in enumerate(nodes)}
    for a, b, lab in sorted(g.edges, key=lambda e: (index[e[0]], index[e[1]], str(e[2]))):
        lines.append('  %s -> %s [label="%s"];' % (name[a], name[b], lab))
    lines.append("}")
    return "\n".join(lines)
