"""
Reidemeister move sites and their application.

Loci use darts of the host diagram:

* RI-    ``(d,)`` with ``alpha(d) == sigma(d)``: the monogon face holding d.
* RII-   ``(d1, d2)``: the two darts of a bigon face.
* RIII / RIII*  ``(d1, d2, d3)``: the three darts of a triangle face.
* RI+    ``(d, over_axis)``: a kink on the left of the arc leaving d.
* RII+   ``(a, b, a_over)``: push the arc leaving a across the arc leaving
  b inside their common face; a's strand is over iff ``a_over``.  Anything
  else placed in that face stays on a's side of the new finger.

RIII vs RIII*: walk a small circle around the triangle counterclockwise;
the three strands are met in the order (top, middle, bottom) for RIII and
(top, bottom, middle) for RIII*.  Both sides of a move get the same label.
"""

import enum
from dataclasses import dataclass
from typing import Optional

from .mapcore import partner, rebuild, sigma


class Kind(str, enum.Enum):
    RI_MINUS = "RI-"
    RII_MINUS = "RII-"
    RIII = "RIII"
    RIII_STAR = "RIII*"
    RI_PLUS = "RI+"
    RII_PLUS = "RII+"

    def __str__(self):
        return self.value


REDUCING = frozenset({Kind.RI_MINUS, Kind.RII_MINUS})
TRIANGLE = frozenset({Kind.RIII, Kind.RIII_STAR})
ALL_KINDS = frozenset(Kind)


class StaleSite(ValueError):
    pass


class NotTriangle(ValueError):
    pass


@dataclass(frozen=True)
class MoveSite:
    kind: Kind
    locus: tuple
    face: Optional[int] = None


@dataclass(frozen=True)
class TriangleLayering:
    """Strand order at a triangle.  Strands are named by side index (side i
    is the arc leaving the i-th face dart); ``order`` is (top, middle,
    bottom), or None when the over relations are cyclic."""

    order: Optional[tuple]

    @property
    def cyclic(self):
        return self.order is None


# ---------------------------------------------------------------------------
# predicates


def _monogon(d, fi):
    f = d.face_darts[fi]
    return len(f) == 1


def _special_bigon(d, fi):
    f = d.face_darts[fi]
    if len(f) != 2:
        return False
    d1, d2 = f
    if (d1 >> 2) == (d2 >> 2):
        return False
    a1 = d.alpha[d1]
    # arc {d1, a1} over at both of its ends, or arc {d2, alpha(d2)}
    if d.is_over(d1) and d.is_over(a1):
        return True
    a2 = d.alpha[d2]
    return d.is_over(d2) and d.is_over(a2)


def layering(d, triangle):
    """Layering of a triangle given as a Face, face index or dart triple."""
    darts = _tri_darts(d, triangle)
    # side i is line i; the crossing after side i is where line i meets i+1
    above = []
    for i in range(3):
        above.append(d.is_over(d.alpha[darts[i]]))  # line i over line i+1
    if above[0] == above[1] == above[2]:
        return TriangleLayering(None)
    wins = [0, 0, 0]
    for i in range(3):
        if above[i]:
            wins[i] += 1
        else:
            wins[(i + 1) % 3] += 1
    order = tuple(sorted(range(3), key=lambda i: -wins[i]))
    return TriangleLayering(order)


def _tri_darts(d, triangle):
    if isinstance(triangle, int):
        darts = d.face_darts[triangle]
    elif hasattr(triangle, "darts"):
        darts = triangle.darts
    else:
        darts = tuple(triangle)
    if len(darts) != 3 or len({x >> 2 for x in darts}) != 3:
        raise NotTriangle("face of degree %d / not three crossings" % len(darts))
    return tuple(darts)


def triangle_kind(d, darts):
    lay = layering(d, darts)
    if lay.cyclic:
        return None
    top, mid, bot = lay.order
    # boundary circle meets the sides in the order 0, 2, 1
    ring = (0, 2, 1)
    i = ring.index(top)
    if (ring[(i + 1) % 3], ring[(i + 2) % 3]) == (mid, bot):
        return Kind.RIII
    return Kind.RIII_STAR


# ---------------------------------------------------------------------------
# detection


def detect_sites(d, kinds=None):
    """All sites of the requested kinds, in a fixed order."""
    kinds = ALL_KINDS if kinds is None else frozenset(Kind(k) for k in kinds)
    out = []
    fd = d.face_darts
    if Kind.RII_MINUS in kinds:
        for fi, f in enumerate(fd):
            if _special_bigon(d, fi):
                out.append(MoveSite(Kind.RII_MINUS, f, fi))
    if Kind.RI_MINUS in kinds:
        for fi, f in enumerate(fd):
            if len(f) == 1:
                out.append(MoveSite(Kind.RI_MINUS, f, fi))
    if kinds & TRIANGLE:
        for fi, f in enumerate(fd):
            if len(f) == 3 and len({x >> 2 for x in f}) == 3:
                k = triangle_kind(d, f)
                if k is not None and k in kinds:
                    out.append(MoveSite(k, f, fi))
    if Kind.RI_PLUS in kinds:
        for x in range(len(d.alpha)):
            for ov in (0, 1):
                out.append(MoveSite(Kind.RI_PLUS, (x, ov), d.face_of[x]))
    if Kind.RII_PLUS in kinds:
        for fi, f in enumerate(fd):
            for a in f:
                for b in f:
                    if a == b or d.alpha[a] == b:
                        continue
                    for ov in (1, 0):
                        out.append(MoveSite(Kind.RII_PLUS, (a, b, ov), fi))
    return out


def _check(d, s):
    k = s.kind
    try:
        if k is Kind.RI_MINUS:
            (x,) = s.locus
            ok = d.alpha[x] == sigma(x)
        elif k is Kind.RII_MINUS:
            fi = d.face_of[s.locus[0]]
            ok = tuple(d.face_darts[fi]) == tuple(s.locus) and _special_bigon(d, fi)
        elif k in TRIANGLE:
            fi = d.face_of[s.locus[0]]
            ok = (tuple(d.face_darts[fi]) == tuple(s.locus)
                  and triangle_kind(d, s.locus) is k)
        elif k is Kind.RI_PLUS:
            x, ov = s.locus
            ok = 0 <= x < len(d.alpha) and ov in (0, 1)
        else:
            a, b, ov = s.locus
            ok = (a != b and d.alpha[a] != b and d.face_of[a] == d.face_of[b]
                  and ov in (0, 1))
    except (IndexError, ValueError, TypeError, NotTriangle):
        ok = False
    if not ok:
        raise StaleSite("%s site %r does not apply" % (k, s.locus))


# ---------------------------------------------------------------------------
# application


def apply(d, s):
    _check(d, s)
    k = s.kind
    if k is Kind.RI_MINUS:
        return _apply_ri_minus(d, s.locus[0])
    if k is Kind.RII_MINUS:
        return _apply_rii_minus(d, s.locus)
    if k in TRIANGLE:
        return _apply_riii(d, s.locus)
    if k is Kind.RI_PLUS:
        return _apply_ri_plus(d, *s.locus)
    return _apply_rii_plus(d, *s.locus)


def _remove(d, removed, collapsing, merges):
    """Delete the crossings in ``removed``; the arcs in ``collapsing``
    (pairs of darts) bound the vanishing face."""
    n = d.n
    gone = set(removed)
    keep_cross = [k for k in range(n) if k not in gone]
    newk = {k: i for i, k in enumerate(keep_cross)}

    def img(x):
        return 4 * newk[x >> 2] + (x & 3)

    alpha = [0] * (4 * len(keep_cross))
    for k in keep_cross:
        for p in range(4):
            x = 4 * k + p
            y = d.alpha[x]
            while (y >> 2) in gone:
                y = d.alpha[partner(y)]
            alpha[img(x)] = img(y)

    # strands living only on removed crossings become circles
    collapse = {frozenset(a) for a in collapsing}
    seen = set()
    new_loops = []
    arr = d.arrangement
    for k in removed:
        for p in range(4):
            start = 4 * k + p
            if start in seen:
                continue
            # walk forward along the strand
            x = start
            cyc = []
            closed = True
            while x not in seen:
                seen.add(x)
                y = d.alpha[x]
                if (y >> 2) not in gone:
                    closed = False
                    break
                seen.add(y)
                cyc.append(x)
                x = partner(y)
            if not closed or x != start:
                # not a circle; mark the backward direction visited too
                continue
            left = []
            right = []
            for x in cyc:
                if frozenset((x, d.alpha[x])) in collapse:
                    continue
                left.append(arr.face_region[d.face_of[x]])
                right.append(arr.face_region[d.face_of[d.alpha[x]]])
            new_loops.append((left, right))
            for x in cyc:
                seen.add(partner(x))
                seen.add(d.alpha[x])
    over = [d.over[k] for k in keep_cross]
    keep = {img(x): x for k in keep_cross for x in range(4 * k, 4 * k + 4)}
    return rebuild(d, over, alpha, keep, merges=merges, new_loops=new_loops)


def _apply_ri_minus(d, x):
    reg = d.arrangement.face_region
    m = reg[d.face_of[x]]
    outside = reg[d.face_of[sigma(x)]]
    return _remove(d, [x >> 2], [(x, d.alpha[x])], [(m, outside)])


def _apply_rii_minus(d, locus):
    d1, d2 = locus
    reg = d.arrangement.face_region
    bg = reg[d.face_of[d1]]
    u = reg[d.face_of[partner(d1)]]
    v = reg[d.face_of[partner(d2)]]
    return _remove(d, sorted({d1 >> 2, d2 >> 2}),
                   [(d1, d.alpha[d1]), (d2, d.alpha[d2])], [(bg, u), (bg, v)])


def _apply_riii(d, darts):
    alpha = list(d.alpha)
    pi = {}
    side = set()
    for x in darts:
        y = d.alpha[x]
        side.add(x)
        side.add(y)
        pi[partner(x)] = y
        pi[partner(y)] = x
    new = list(alpha)
    for x in darts:
        y = d.alpha[x]
        new[partner(x)] = partner(y)
        new[partner(y)] = partner(x)
    keep = {}
    for u in range(len(alpha)):
        if u in side:
            continue
        v = alpha[u]
        pu, pv = pi.get(u, u), pi.get(v, v)
        new[pu] = pv
        keep[pu] = u
    reg = d.arrangement.face_region
    tri = reg[d.face_of[darts[0]]]
    assign = {partner(x): tri for x in darts}
    return rebuild(d, d.over, new, keep, assign=assign)


def _apply_ri_plus(d, x, ov):
    n = d.n
    y = d.alpha[x]
    base = 4 * n
    alpha = list(d.alpha) + [0, 0, 0, 0]
    # enter at position 0, loop from 2 to 3 on the left, leave from 1
    alpha[x], alpha[base] = base, x
    alpha[base + 2], alpha[base + 3] = base + 3, base + 2
    alpha[base + 1], alpha[y] = y, base + 1
    over = list(d.over) + [ov]
    keep = {i: i for i in range(4 * n)}
    return rebuild(d, over, alpha, keep, fresh=[base + 2])


def _apply_rii_plus(d, a, b, a_over):
    n = d.n
    a2, b2 = d.alpha[a], d.alpha[b]
    X, Y = 4 * n, 4 * n + 4
    S, E, N, W = 0, 1, 2, 3
    alpha = list(d.alpha) + [0] * 8

    def link(p, q):
        alpha[p], alpha[q] = q, p

    link(a, X + S)
    link(X + N, Y + N)
    link(Y + S, a2)
    link(b, Y + E)
    link(Y + W, X + E)
    link(X + W, b2)
    ax = 0 if a_over else 1
    over = list(d.over) + [ax, ax]
    keep = {i: i for i in range(4 * n)}
    return rebuild(d, over, alpha, keep, fresh=[X + E, b])


def created_site(before, site, after):
    """The site on ``after`` that undoes ``site`` (an RI+, RII+ or triangle
    move applied to ``before``)."""
    n = before.n
    if site.kind is Kind.RI_PLUS:
        x = 4 * n + 2
        return MoveSite(Kind.RI_MINUS, (x,), after.face_of[x])
    if site.kind is Kind.RII_PLUS:
        fi = after.face_of[4 * n + 1]
        return MoveSite(Kind.RII_MINUS, after.face_darts[fi], fi)
    if site.kind in TRIANGLE:
        fi = after.face_of[partner(site.locus[0])]
        return MoveSite(triangle_kind(after, after.face_darts[fi]),
                        after.face_darts[fi], fi)
    raise ValueError("no created site for %s" % site.kind)
