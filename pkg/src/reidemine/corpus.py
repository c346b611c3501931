"""
Built-in diagrams: prime knots up to seven crossings, padding with random
crossing-increasing moves, circles clasped onto an arc, and a minimal
diagram of the unknot.
"""

import itertools
import random

from .mapcore import build_diagram, rebuild
from .moves import Kind, apply, detect_sites

# Dowker-Thistlethwaite codes of the alternating knot table.
DT_CODES = {
    "3_1": (4, 6, 2),
    "4_1": (4, 6, 8, 2),
    "5_1": (6, 8, 10, 2, 4),
    "5_2": (4, 8, 10, 2, 6),
    "6_1": (4, 8, 12, 10, 2, 6),
    "6_2": (4, 8, 10, 12, 2, 6),
    "6_3": (4, 8, 10, 2, 12, 6),
    "7_1": (8, 10, 12, 14, 2, 4, 6),
    "7_2": (4, 10, 14, 12, 2, 8, 6),
    "7_3": (6, 10, 12, 14, 2, 4, 8),
    "7_4": (6, 10, 12, 14, 4, 2, 8),
    "7_5": (4, 10, 12, 14, 2, 8, 6),
    "7_6": (4, 8, 12, 2, 14, 6, 10),
    "7_7": (4, 8, 10, 12, 2, 14, 6),
}


def dt_to_diagram(code):
    """Alternating diagram realizing a DT code on the sphere.

    Tries both rotation orders at every crossing and keeps the first
    spherical one; for a prime alternating code the two survivors are
    mirror images.
    """
    n = len(code)
    m = 2 * n
    cross_of = {}
    for k, e in enumerate(code):
        cross_of[2 * k + 1] = k
        cross_of[abs(e)] = k
    # visits[k] = (first position, second position)
    visits = {}
    for t in range(1, m + 1):
        visits.setdefault(cross_of[t], []).append(t)
    for flips in itertools.product((0, 1), repeat=n):
        dart_in = {}
        dart_out = {}
        over = []
        for k in range(n):
            t1, t2 = visits[k]
            dart_in[t1], dart_out[t1] = 4 * k, 4 * k + 2
            if flips[k]:
                dart_in[t2], dart_out[t2] = 4 * k + 1, 4 * k + 3
            else:
                dart_in[t2], dart_out[t2] = 4 * k + 3, 4 * k + 1
            over.append(0 if t1 % 2 else 1)
        alpha = [0] * (4 * n)
        for t in range(1, m + 1):
            nxt = t % m + 1
            a, b = dart_out[t], dart_in[nxt]
            alpha[a], alpha[b] = b, a
        try:
            return build_diagram(over, alpha)
        except ValueError:
            continue
    raise ValueError("DT code %r has no spherical realization" % (code,))


def knot(name):
    return dt_to_diagram(DT_CODES[name])


def knots(max_crossings=7):
    return {k: knot(k) for k in DT_CODES if int(k.split("_")[0]) <= max_crossings}


def braid_closure_pd(word, strands):
    """PD text of a braid closure; generator ``i`` (1-based) is a positive
    crossing of strands i, i+1 and ``-i`` its inverse."""
    cur = list(range(1, strands + 1))
    nxt = strands + 1
    rows = []
    for g in word:
        i = abs(g) - 1
        a, b = cur[i], cur[i + 1]
        c, d = nxt, nxt + 1
        nxt += 2
        if g > 0:
            rows.append([a, b, d, c])
        else:
            rows.append([b, d, c, a])
        cur[i], cur[i + 1] = c, d
    final = dict(zip(cur, range(1, strands + 1)))
    rows = [[final.get(x, x) for x in r] for r in rows]
    return "\n".join("X " + " ".join(map(str, r)) for r in rows)


def pad(d, moves, seed, max_crossings=None):
    """Apply ``moves`` random RI+/RII+ moves chosen with ``seed``.  Moves
    that would exceed ``max_crossings`` fall back to RI+ or are skipped."""
    rng = random.Random(seed)
    for _ in range(moves):
        kinds = [Kind.RI_PLUS, Kind.RII_PLUS]
        if max_crossings is not None and d.n + 2 > max_crossings:
            kinds = [Kind.RI_PLUS]
        if max_crossings is not None and d.n + 1 > max_crossings:
            break
        kind = rng.choice(kinds)
        sites = detect_sites(d, {kind})
        if not sites:
            continue
        d = apply(d, rng.choice(sites))
    return d


def padded_knots(seeds=range(10), max_crossings=10):
    """Each table knot padded with 1-4 random RI+/RII+ moves per seed."""
    out = {}
    for name, k in knots().items():
        for seed in seeds:
            out["%s/pad%d" % (name, seed)] = pad(k, 1 + seed % 4, seed, max_crossings)
    return out


def clasp_circle(d, dart, circle_over=True):
    """Add a small circle straddling the arc leaving ``dart`` and crossing
    it twice; the circle is over at both crossings iff ``circle_over``.
    Either inner bigon can then be removed by RII-, leaving the circle on
    one side of the arc or the other."""
    n = d.n
    a, a2 = dart, d.alpha[dart]
    X, Y = 4 * n, 4 * n + 4
    E, N, W, S = 0, 1, 2, 3
    alpha = list(d.alpha) + [0] * 8

    def link(p, q):
        alpha[p], alpha[q] = q, p

    link(a, X + W)
    link(X + E, Y + W)
    link(Y + E, a2)
    link(X + N, Y + N)
    link(X + S, Y + S)
    ax = 1 if circle_over else 0
    over = list(d.over) + [ax, ax]
    keep = {i: i for i in range(4 * n)}
    return rebuild(d, over, alpha, keep, fresh=[X + E, Y + W])


def clasp_diagrams():
    """Diagrams whose RI-/RII- reductions can leave a crossingless circle in
    different faces."""
    t = knot("3_1")
    f8 = knot("4_1")
    k52 = knot("5_2")
    return {
        "3_1+clasp": clasp_circle(t, 0, True),
        "3_1+clasp_under": clasp_circle(t, 1, False),
        "4_1+clasp": clasp_circle(f8, 0, True),
        "5_2+clasp": clasp_circle(k52, 2, True),
    }


def poke():
    """Two circles, one pushed across the other (over at both crossings)."""
    return build_diagram([0, 0], [6, 5, 4, 7, 2, 1, 0, 3])


def hopf():
    """Two circles linked once (alternating, 2 crossings)."""
    return build_diagram([0, 1], [6, 5, 4, 7, 2, 1, 0, 3])


def double_poke():
    """Unlinked pair of circles crossing four times: the poke diagram with a
    second finger of the other circle pushed across the first."""
    p = poke()
    for s in detect_sites(p, {Kind.RII_PLUS}):
        a, b, a_over = s.locus
        # finger of the under circle pushed over the over circle
        if a_over and not p.is_over(a):
            return apply(p, s)
    raise AssertionError("no suitable RII+ site on the poke diagram")


KINK_PD = "X 1 1 2 2"
UNKNOT_SEARCH_SEED = 2474


def minimal_unknot(seed=UNKNOT_SEARCH_SEED, max_steps=60, max_crossings=11,
                   sample=30):
    """Search for a minimal diagram of the unknot.

    Starts from the one-crossing kink and applies RI+, RII+, RIII and RIII*
    moves, greedily keeping the sampled successor with the fewest RI-/RII-
    sites.  Every step is a Reidemeister move, so the result is the unknot.
    Returns ``(diagram, moves)`` or None when this seed finds nothing.
    """
    from .codec import parse
    from .moves import REDUCING
    rng = random.Random(seed)
    d = parse(KINK_PD)
    script = []
    for _ in range(max_steps):
        kinds = [Kind.RIII, Kind.RIII_STAR]
        if d.n + 2 <= max_crossings - 1:
            kinds.append(Kind.RII_PLUS)
        if d.n + 1 <= max_crossings:
            kinds.append(Kind.RI_PLUS)
        sites = detect_sites(d, kinds)
        if not sites:
            return None
        best = None
        for s in rng.sample(sites, min(sample, len(sites))):
            e = apply(d, s)
            key = (len(detect_sites(e, REDUCING)), e.n)
            if best is None or key < best[0]:
                best = (key, e, s)
        (score, _), d, s = best
        script.append(s)
        if score == 0 and d.n > 0:
            return d, script
    return None
