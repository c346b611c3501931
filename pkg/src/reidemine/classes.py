"""
RI-II equivalence classes and their adjacency through single RIII/RIII*
moves.

A class is named by the canonical code of the minimal diagram reached by
deterministic reduction.  When that diagram has crossingless circles the
minimal diagram need not be unique, so such ids carry ``loop_flag`` and
only their crossing count is meaningful.
"""

import enum
from dataclasses import dataclass, field
from functools import lru_cache
from typing import NamedTuple

from .canon import CanonicalCode, canonicalize
from .moves import TRIANGLE, Kind, MoveSite, _check, apply, detect_sites
from .reduction import TooLarge, is_minimal, reduce, reducing_sites

MAX_SURPLUS = 4


class NotMinimal(ValueError):
    pass


@dataclass(frozen=True, order=True)
class ClassId:
    code: CanonicalCode
    loop_flag: bool = False


class AdjacencyKind(str, enum.Enum):
    CLASS_PRESERVING = "ClassPreserving"
    MINUS = "Minus"
    PLUS = "Plus"
    EQUAL = "Equal"

    def __str__(self):
        return self.value

    def inverse(self):
        return {AdjacencyKind.MINUS: AdjacencyKind.PLUS,
                AdjacencyKind.PLUS: AdjacencyKind.MINUS}.get(self, self)


class ClassInfo(NamedTuple):
    id: ClassId
    c: int
    minimal: object


@dataclass
class ClassGraph:
    nodes: dict = field(default_factory=dict)     # ClassId -> c
    edges: set = field(default_factory=set)       # (ClassId, ClassId, Kind)

    def add_node(self, cid, c):
        self.nodes.setdefault(cid, c)

    def add_edge(self, a, b, label):
        if a not in self.nodes or b not in self.nodes:
            raise KeyError("edge endpoint is not a node")
        self.edges.add((a, b, Kind(label)))


@lru_cache(maxsize=1 << 16)
def class_info(d):
    final = reduce(d).final
    return ClassInfo(ClassId(canonicalize(final), bool(final.loops)), final.n, final)


def class_of(d):
    return class_info(d).id


def _adjacency(src, tgt):
    if src.id == tgt.id:
        return AdjacencyKind.CLASS_PRESERVING
    if tgt.c < src.c:
        return AdjacencyKind.MINUS
    if tgt.c > src.c:
        return AdjacencyKind.PLUS
    return AdjacencyKind.EQUAL


def _require_minimal(m):
    if not is_minimal(m):
        raise NotMinimal("diagram has RI-/RII- sites")


def riii_neighbors(m):
    """(site, ClassId, AdjacencyKind) for every RIII/RIII* site of a minimal
    diagram."""
    _require_minimal(m)
    if m.loops:
        raise ValueError("riii_neighbors needs a diagram without free circles")
    src = class_info(m)
    out = []
    for s in detect_sites(m, TRIANGLE):
        tgt = class_info(apply(m, s))
        out.append((s, tgt.id, _adjacency(src, tgt)))
    return out


def _shift_site(site, removed):
    """Carry a triangle site through deletion of the crossings ``removed``."""
    gone = sorted(removed)

    def img(x):
        k = x >> 2
        return 4 * (k - sum(1 for g in gone if g < k)) + (x & 3)

    return MoveSite(site.kind, tuple(img(x) for x in site.locus))


def special_riii(d1, t, with_site=False):
    """Reduce both sides of the triangle move ``t`` in lockstep, using only
    RI-/RII- sites away from the triangle's three crossings.

    RIII keeps crossing numbers, and a reducing site avoiding the triangle
    has the same darts on both sides, so the same site is applied to both.
    Returns ``(d1', d2')``, plus the triangle site on d1' if ``with_site``.
    """
    _check(d1, t)
    d2 = apply(d1, t)
    tri = {x >> 2 for x in t.locus}
    while True:
        for s in reducing_sites(d1):
            if not {x >> 2 for x in s.locus} & tri:
                break
        else:
            break
        removed = {x >> 2 for x in s.locus}
        d1 = apply(d1, s)
        d2 = apply(d2, s)
        t = _shift_site(t, removed)
        tri = {x >> 2 for x in t.locus}
    t = MoveSite(t.kind, t.locus, d1.face_of[t.locus[0]])
    if with_site:
        return d1, d2, t
    return d1, d2


def classify_riii_instance(d1, t):
    _check(d1, t)
    return _adjacency(class_info(d1), class_info(apply(d1, t)))


def padded_candidates(m, surplus):
    """Diagrams reachable from ``m`` by RI+/RII+ moves adding at most
    ``surplus`` crossings (``m`` included), one per isomorphism class, in a
    deterministic order."""
    if not 0 <= surplus <= MAX_SURPLUS:
        raise TooLarge("surplus %d outside 0..%d" % (surplus, MAX_SURPLUS))
    seen = {canonicalize(m)}
    out = [m]
    layer = [m]
    base = m.n
    while layer:
        nxt = []
        for d in layer:
            added = d.n - base
            kinds = set()
            if added + 1 <= surplus:
                kinds.add(Kind.RI_PLUS)
            if added + 2 <= surplus:
                kinds.add(Kind.RII_PLUS)
            if not kinds:
                continue
            for s in detect_sites(d, kinds):
                e = apply(d, s)
                c = canonicalize(e)
                if c not in seen:
                    seen.add(c)
                    out.append(e)
                    nxt.append(e)
        layer = nxt
    return out


def explore(seed_diagram, radius, surplus, guard=None):
    """Breadth-first search over classes joined by one RIII/RIII* move on
    some diagram of the class with at most ``surplus`` extra crossings.
    With ``guard`` set, raises TooLarge before padding a class whose
    diagrams could exceed that many crossings."""
    if not 0 <= surplus <= MAX_SURPLUS:
        raise TooLarge("surplus %d outside 0..%d" % (surplus, MAX_SURPLUS))
    g = ClassGraph()
    start = class_info(seed_diagram)
    g.add_node(start.id, start.c)
    rep = {start.id: start.minimal}
    frontier = [start.id]
    for _ in range(radius):
        nxt = []
        for cid in frontier:
            if guard is not None and g.nodes[cid] + surplus > guard:
                raise TooLarge("%d + %d crossings exceeds the guard %d"
                               % (g.nodes[cid], surplus, guard))
            done = set()
            for cand in padded_candidates(rep[cid], surplus):
                for s in detect_sites(cand, TRIANGLE):
                    e = apply(cand, s)
                    key = (canonicalize(e), s.kind)
                    if key in done:
                        continue
                    done.add(key)
                    tgt = class_info(e)
                    if tgt.id not in g.nodes:
                        g.add_node(tgt.id, tgt.c)
                        rep[tgt.id] = tgt.minimal
                        nxt.append(tgt.id)
                    if tgt.id != cid:
                        g.add_edge(cid, tgt.id, s.kind)
        frontier = nxt
    return g


@dataclass
class RPReport:
    source: ClassId
    c: int
    surplus: int
    p: set
    r_hat: set
    violations: list

    @property
    def r_subset_p(self):
        return not self.violations

    def as_dict(self):
        return {
            "c": self.c,
            "p": sorted(x.code.hex() for x in self.p),
            "r_hat": sorted(x.code.hex() for x in self.r_hat),
            "r_subset_p": self.r_subset_p,
            "surplus": self.surplus,
            "violations": [x.code.hex() for x in self.violations],
        }


def verify_r_equals_p(m, surplus=2, guard=None):
    """Compare the classes met by one RIII/RIII* on the minimal diagram
    itself (P) with those reachable at no greater minimal crossing number
    from any diagram of the class within the surplus (R-hat).  The source
    class is left out of both; classes with free circles are left out of
    R-hat."""
    _require_minimal(m)
    if m.loops:
        raise ValueError("verify_r_equals_p needs a diagram without free circles")
    src = class_info(m)
    p = {cid for _, cid, kind in riii_neighbors(m)
         if kind is not AdjacencyKind.PLUS and cid != src.id}
    g = explore(m, 1, surplus, guard)
    r_hat = {b for a, b, _ in g.edges
             if a == src.id and g.nodes[b] <= src.c and not b.loop_flag}
    violations = sorted(r_hat - p)
    return RPReport(src.id, src.c, surplus, p, r_hat, violations)
