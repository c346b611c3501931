"""
Reduction to RI-/RII- minimal diagrams and confluence checks.
"""

import random
from dataclasses import dataclass, field

from .canon import canonicalize
from .mapcore import build_diagram
from .moves import REDUCING, Kind, apply, detect_sites


class TooLarge(ValueError):
    pass


DEFAULT_GUARD = 10


@dataclass(frozen=True)
class Deterministic:
    """Always take the first site: RII- before RI-, then smallest locus dart."""


@dataclass(frozen=True)
class Seeded:
    seed: int


@dataclass(frozen=True)
class ReductionTrace:
    steps: tuple        # (kind, locus) pairs
    final: object


@dataclass
class ConfluenceReport:
    distinct_canonical_codes: set = field(default_factory=set)
    distinct_crossing_counts: set = field(default_factory=set)
    loop_flag: bool = False
    finals: dict = field(default_factory=dict, repr=False)  # code -> diagram

    def add(self, d):
        c = canonicalize(d)
        self.distinct_canonical_codes.add(c)
        self.distinct_crossing_counts.add(d.n)
        self.finals.setdefault(c, d)
        if d.loops:
            self.loop_flag = True

    @property
    def confluent(self):
        """Codes unique, or (when a circle was freed) crossing counts unique."""
        if self.loop_flag:
            return len(self.distinct_crossing_counts) == 1
        return len(self.distinct_canonical_codes) == 1

    def as_dict(self):
        return {
            "distinct_canonical_codes": sorted(c.hex() for c in self.distinct_canonical_codes),
            "distinct_crossing_counts": sorted(self.distinct_crossing_counts),
            "loop_flag": self.loop_flag,
        }


_RANK = {Kind.RII_MINUS: 0, Kind.RI_MINUS: 1}


def reducing_sites(d):
    sites = detect_sites(d, REDUCING)
    sites.sort(key=lambda s: (_RANK[s.kind], min(s.locus)))
    return sites


def is_minimal(d):
    return not detect_sites(d, REDUCING)


def reduce(d, strat=None):
    strat = strat or Deterministic()
    rng = random.Random(strat.seed) if isinstance(strat, Seeded) else None
    steps = []
    while True:
        sites = reducing_sites(d)
        if not sites:
            return ReductionTrace(tuple(steps), d)
        s = sites[0] if rng is None else rng.choice(sites)
        steps.append((s.kind, s.locus))
        d = apply(d, s)


def confluence_check(d, n_runs=32, base_seed=0):
    if n_runs < 1:
        raise ValueError("n_runs must be positive")
    rep = ConfluenceReport()
    rep.add(reduce(d, Deterministic()).final)
    for i in range(n_runs):
        rep.add(reduce(d, Seeded(base_seed + i)).final)
    return rep


def exhaustive_confluence(d, guard=DEFAULT_GUARD):
    """Every maximal RI-/RII- sequence, explored depth first.  Diagrams are
    memoized by canonical code, which is sound because the set of reachable
    finals depends only on the isomorphism class."""
    if d.n > guard:
        raise TooLarge("%d crossings exceeds the oracle guard %d" % (d.n, guard))
    rep = ConfluenceReport()
    seen = set()
    stack = [d]
    while stack:
        x = stack.pop()
        c = canonicalize(x)
        if c in seen:
            continue
        seen.add(c)
        sites = detect_sites(x, REDUCING)
        if not sites:
            rep.add(x)
            continue
        for s in sites:
            stack.append(apply(x, s))
    return rep


def connected_sum(d1, d2, arc1=0, arc2=0):
    """Splice the arc leaving dart ``arc1`` of d1 with the arc leaving dart
    ``arc2`` of d2.  Both diagrams must be single map pieces without
    circles."""
    for d in (d1, d2):
        if d.loops or d.splits or d.n == 0:
            raise ValueError("connected_sum needs connected crossing-bearing diagrams")
    off = 4 * d1.n
    alpha = list(d1.alpha) + [x + off for x in d2.alpha]
    a, a2 = arc1, d1.alpha[arc1]
    b, b2 = arc2 + off, d2.alpha[arc2] + off
    alpha[a], alpha[b2] = b2, a
    alpha[b], alpha[a2] = a2, b
    return build_diagram(list(d1.over) + list(d2.over), alpha)
