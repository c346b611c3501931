"""
Link diagrams on the oriented sphere as combinatorial maps.

Crossing ``k`` owns the four darts ``4k .. 4k+3``; dart ``4k+p`` sits at
position ``p`` and positions run counterclockwise.  Opposite positions
(``p`` and ``p+2``) belong to the same strand.  ``alpha`` pairs the two
darts joined by an arc.

Faces are orbits of ``d -> sigma^-1(alpha(d))``: walking along an arc and
turning clockwise at the next crossing keeps the face on the left, so a
face lists its darts counterclockwise around its interior.  The face
holding dart ``d`` is the region to the left of the arc leaving ``d``.

Pieces that carry no crossing (crossingless circles) and extra connected
pieces of the map are placed with records that name a host region.
Internally the placement is an *arrangement*: every face of every map
component and both sides of every circle are assigned a region id, and
components plus regions form a tree.
"""

from collections import deque
from dataclasses import dataclass, field
from functools import cached_property
from typing import NamedTuple, Optional


class DiagramError(ValueError):
    """Base class for invalid diagram input."""


class NonInvolution(DiagramError):
    pass


class NonSpherical(DiagramError):
    pass


class DanglingLoop(DiagramError):
    pass


class Crossing(NamedTuple):
    index: int
    over_axis: int  # 0: positions {0,2} are over, 1: positions {1,3}


@dataclass(frozen=True)
class LoopRecord:
    """A crossingless circle.

    Exactly one of ``host_face`` (a face index in :func:`faces` order) and
    ``nesting_parent`` (index of an earlier loop, meaning "inside it") is
    set.  The side of the circle facing its host is its outside.
    """

    host_face: Optional[int] = 0
    nesting_parent: Optional[int] = None


@dataclass(frozen=True)
class SplitRecord:
    """Placement of a crossing-bearing piece not containing dart 0.

    ``outer_face`` is the piece's own face that faces the host region.
    """

    outer_face: int
    host_face: Optional[int] = 0
    nesting_parent: Optional[int] = None


@dataclass(frozen=True)
class Face:
    index: int
    darts: tuple

    @property
    def degree(self):
        return len(self.darts)


def sigma(d):
    return (d & ~3) | ((d + 1) & 3)


def sigma_inv(d):
    return (d & ~3) | ((d - 1) & 3)


def partner(d):
    """The dart across the crossing on the same strand."""
    return d ^ 2


def trace_faces(alpha):
    """Return ``(faces, face_of)``; faces are ordered by their minimal dart
    and each cycle starts at that dart."""
    n = len(alpha)
    face_of = [-1] * n
    faces = []
    for d in range(n):
        if face_of[d] >= 0:
            continue
        idx = len(faces)
        cyc = []
        e = d
        while face_of[e] < 0:
            face_of[e] = idx
            cyc.append(e)
            e = sigma_inv(alpha[e])
        faces.append(tuple(cyc))
    return faces, face_of


def map_components(alpha):
    """Connected components of the crossing graph, as a list of crossing
    lists ordered by minimal crossing, plus the component of each crossing."""
    ncross = len(alpha) // 4
    comp = [-1] * ncross
    comps = []
    for start in range(ncross):
        if comp[start] >= 0:
            continue
        ci = len(comps)
        comp[start] = ci
        members = [start]
        stack = [start]
        while stack:
            k = stack.pop()
            for p in range(4):
                j = alpha[4 * k + p] >> 2
                if comp[j] < 0:
                    comp[j] = ci
                    members.append(j)
                    stack.append(j)
        comps.append(sorted(members))
    return comps, comp


@dataclass(frozen=True)
class Diagram:
    """Immutable link diagram.  Build through :func:`build_diagram` or
    :func:`from_arrangement`; the raw constructor does not validate."""

    over: tuple
    alpha: tuple
    loops: tuple = ()
    splits: tuple = ()

    @property
    def n(self):
        return len(self.over)

    @property
    def crossings(self):
        return [Crossing(k, a) for k, a in enumerate(self.over)]

    def is_over(self, d):
        return (d & 1) == self.over[d >> 2]

    @cached_property
    def _faces(self):
        return trace_faces(self.alpha)

    @property
    def face_darts(self):
        return self._faces[0]

    @property
    def face_of(self):
        return self._faces[1]

    @cached_property
    def _components(self):
        return map_components(self.alpha)

    @cached_property
    def arrangement(self):
        return _arrangement_of(self)

    def __repr__(self):
        return "Diagram(n=%d, loops=%d, splits=%d)" % (
            self.n, len(self.loops), len(self.splits))


def _check_map(over, alpha):
    n = len(alpha)
    if n != 4 * len(over):
        raise NonInvolution("alpha has %d darts, expected %d" % (n, 4 * len(over)))
    for d, e in enumerate(alpha):
        if not isinstance(e, int) or not 0 <= e < n:
            raise NonInvolution("alpha(%d) = %r out of range" % (d, e))
        if e == d:
            raise NonInvolution("alpha has fixed point %d" % d)
        if alpha[e] != d:
            raise NonInvolution("alpha is not an involution at %d" % d)
    for a in over:
        if a not in (0, 1):
            raise NonSpherical("over_axis must be 0 or 1, got %r" % (a,))
    faces, face_of = trace_faces(alpha)
    comps, comp = map_components(alpha)
    nfaces = [0] * len(comps)
    for f in faces:
        nfaces[comp[f[0] >> 2]] += 1
    for ci, members in enumerate(comps):
        v = len(members)
        if v - 2 * v + nfaces[ci] != 2:
            raise NonSpherical(
                "component %d: V-E+F = %d, not 2" % (ci, nfaces[ci] - v))


def build_diagram(crossings, alpha, loops=(), splits=()):
    """Validate and return a :class:`Diagram`.

    ``crossings`` is a sequence of :class:`Crossing` (or bare over_axis
    flags) in index order.
    """
    over = tuple(c.over_axis if isinstance(c, Crossing) else int(c)
                 for c in crossings)
    alpha = tuple(alpha)
    _check_map(over, alpha)
    d = Diagram(over, alpha, tuple(loops), tuple(splits))
    d.arrangement  # raises DanglingLoop on bad placement
    return d


def faces(d):
    return [Face(i, f) for i, f in enumerate(d.face_darts)]


# ---------------------------------------------------------------------------
# arrangement


@dataclass
class Arrangement:
    face_region: list          # region id per face index
    loop_sides: list           # (outer region, inner region) per loop
    nregions: int
    root: int = 0              # region holding face 0 (or the virtual root)
    extra: dict = field(default_factory=dict)


def _arrangement_of(d):
    faces_, face_of = d._faces
    comps, comp = d._components
    comp_of_face = [comp[f[0] >> 2] for f in faces_]
    face_region = [None] * len(faces_)
    loop_sides = [None] * len(d.loops)
    nreg = 1
    if d.n:
        for fi, c in enumerate(comp_of_face):
            if c == 0:
                if fi == 0:
                    face_region[fi] = 0
                else:
                    face_region[fi] = nreg
                    nreg += 1

    placed = {}
    for s in d.splits:
        if not isinstance(s.outer_face, int) or not 0 <= s.outer_face < len(faces_):
            raise DanglingLoop("split outer face %r does not exist" % (s.outer_face,))
        c = comp_of_face[s.outer_face]
        if c == 0 or c in placed:
            raise DanglingLoop("bad split record for face %d" % s.outer_face)
        placed[c] = s
    if len(placed) != max(len(comps) - 1, 0):
        raise DanglingLoop("every map component but the first needs a split record")

    def host(rec):
        if rec.nesting_parent is not None:
            p = rec.nesting_parent
            if not isinstance(p, int) or not 0 <= p < len(d.loops):
                raise DanglingLoop("nesting parent %r does not exist" % (p,))
            return None if loop_sides[p] is None else loop_sides[p][1]
        f = rec.host_face
        if d.n == 0:
            if f != 0:
                raise DanglingLoop("host face %r does not exist" % (f,))
            return 0
        if not isinstance(f, int) or not 0 <= f < len(faces_):
            raise DanglingLoop("host face %r does not exist" % (f,))
        return face_region[f]

    todo_s = dict(placed)
    todo_l = set(range(len(d.loops)))
    while todo_s or todo_l:
        progress = False
        for c, s in list(todo_s.items()):
            r = host(s)
            if r is None:
                continue
            for fi, cc in enumerate(comp_of_face):
                if cc == c:
                    if fi == s.outer_face:
                        face_region[fi] = r
                    else:
                        face_region[fi] = nreg
                        nreg += 1
            del todo_s[c]
            progress = True
        for j in sorted(todo_l):
            r = host(d.loops[j])
            if r is None:
                continue
            loop_sides[j] = (r, nreg)
            nreg += 1
            todo_l.discard(j)
            progress = True
        if not progress:
            raise DanglingLoop("placement records form a cycle")
    return Arrangement(face_region, loop_sides, nreg)


class _UF:
    def __init__(self, n=0):
        self.p = list(range(n))

    def add(self):
        self.p.append(len(self.p))
        return len(self.p) - 1

    def find(self, x):
        p = self.p
        while p[x] != x:
            p[x] = p[p[x]]
            x = p[x]
        return x

    def union(self, a, b):
        a, b = self.find(a), self.find(b)
        if a != b:
            self.p[max(a, b)] = min(a, b)
        return min(a, b)


def region_tree(face_of_comp, face_region, loop_sides):
    """Adjacency of the component/region tree.

    Returns ``{region: [(kind, id, slot)]}`` where kind is ``'K'`` (map
    component, slot = face index) or ``'L'`` (loop, slot = side 0/1).
    """
    adj = {}
    for fi, r in enumerate(face_region):
        adj.setdefault(r, []).append(("K", face_of_comp[fi], fi))
    for j, (a, b) in enumerate(loop_sides):
        adj.setdefault(a, []).append(("L", j, 0))
        adj.setdefault(b, []).append(("L", j, 1))
    return adj


def from_arrangement(over, alpha, face_region, loop_sides, root_region=None,
                     order_key=None):
    """Build a normalized :class:`Diagram` from a map plus region data.

    ``face_region`` gives a region id per face (in :func:`trace_faces`
    order), ``loop_sides`` a pair of region ids per circle.  The result is
    rooted at the region of face 0; with no crossings at ``root_region``
    (default: the outside of the first circle).  ``order_key(region,
    attachment)`` orders the children met at each region.
    """
    over = tuple(over)
    alpha = tuple(alpha)
    faces_, face_of = trace_faces(alpha)
    comps, comp = map_components(alpha)
    comp_of_face = [comp[f[0] >> 2] for f in faces_]
    if len(face_region) != len(faces_):
        raise ValueError("face_region has wrong length")
    adj = region_tree(comp_of_face, face_region, loop_sides)

    # tree check: nodes = regions + components, edges = attachments
    seen_slots = set()
    for fi, r in enumerate(face_region):
        key = (comp_of_face[fi], r)
        if key in seen_slots:
            raise NonSpherical("a map component meets one region twice")
        seen_slots.add(key)
    for a, b in loop_sides:
        if a == b:
            raise NonSpherical("a loop has the same region on both sides")
    nnodes = len(adj) + len(comps) + len(loop_sides)
    nedges = len(face_region) + 2 * len(loop_sides)
    if nnodes and nedges != nnodes - 1:
        raise NonSpherical("placement is not a tree")

    if not adj:
        return Diagram(over, alpha, (), ())
    if over:
        root = face_region[0]
    elif root_region is not None:
        root = root_region
    else:
        root = loop_sides[0][0]

    ref = {root: (0, None)}
    loops = []
    splits = []
    done_k = {0} if over else set()
    done_l = set()
    queue = deque([root])
    visited = {root}
    while queue:
        r = queue.popleft()
        atts = [a for a in adj[r]
                if not ((a[0] == "K" and a[1] in done_k) or
                        (a[0] == "L" and a[1] in done_l))]
        if order_key is not None:
            atts.sort(key=lambda a: order_key(r, a))
        for kind, ident, slot in atts:
            if kind == "K":
                if ident in done_k:
                    continue
                done_k.add(ident)
                hf, hp = ref[r]
                splits.append(SplitRecord(slot, hf, hp))
                for fi, c in enumerate(comp_of_face):
                    if c == ident and fi != slot:
                        ref[face_region[fi]] = (fi, None)
                        visited.add(face_region[fi])
                        queue.append(face_region[fi])
            else:
                if ident in done_l:
                    continue
                done_l.add(ident)
                hf, hp = ref[r]
                j = len(loops)
                loops.append(LoopRecord(hf, hp))
                other = loop_sides[ident][1 - slot]
                ref[other] = (None, j)
                visited.add(other)
                queue.append(other)
        if r == root and over:
            for fi, c in enumerate(comp_of_face):
                if c == 0 and fi != 0 and face_region[fi] not in visited:
                    ref[face_region[fi]] = (fi, None)
                    visited.add(face_region[fi])
                    queue.append(face_region[fi])
    if len(done_k) != len(comps) or len(done_l) != len(loop_sides):
        raise NonSpherical("placement is not connected")
    splits.sort(key=lambda s: s.outer_face)
    return Diagram(over, alpha, tuple(loops), tuple(splits))


def rebuild(d, over, alpha, keep, fresh=(), assign=None, merges=(),
            new_loops=()):
    """Carry the placement of ``d`` over to a modified map.

    ``keep`` maps new darts to old darts whose left-hand region is
    unchanged by the edit.  Faces holding a dart in ``fresh`` become new
    empty regions; ``assign`` maps a new dart to an old region id for its
    face.  ``merges`` lists old region ids to identify.  ``new_loops``
    gives (side, side) pairs where each side is a list of old region ids
    (unioned) or ``None`` for a fresh region.
    """
    arr = d.arrangement
    uf = _UF(arr.nregions)
    for a, b in merges:
        uf.union(a, b)
    for sides in new_loops:
        for side in sides:
            if side:
                for r in side[1:]:
                    uf.union(side[0], r)
    faces_, _ = trace_faces(alpha)
    fresh = set(fresh)
    assign = assign or {}
    face_region = []
    for f in faces_:
        r = None
        for x in f:
            if x in fresh:
                r = uf.add()
                break
        if r is None:
            for x in f:
                if x in assign:
                    r = uf.find(assign[x])
                    break
        if r is None:
            regs = {uf.find(arr.face_region[d.face_of[keep[x]]])
                    for x in f if x in keep}
            if not regs:
                raise AssertionError("face %r has no region" % (f,))
            if len(regs) > 1:
                raise AssertionError("face %r spans regions %r" % (f, regs))
            r = regs.pop()
        face_region.append(r)
    loop_sides = [(uf.find(a), uf.find(b)) for a, b in arr.loop_sides]
    for sides in new_loops:
        pair = []
        for side in sides:
            pair.append(uf.find(side[0]) if side else uf.add())
        loop_sides.append(tuple(pair))
    face_region = [uf.find(r) for r in face_region]
    root = None
    if not over and loop_sides:
        root = loop_sides[0][0]
    return from_arrangement(over, alpha, face_region, loop_sides, root)


# ---------------------------------------------------------------------------
# structure


@dataclass(frozen=True)
class ComponentInfo:
    kind: str          # "graph" or "loop"
    crossings: int
    strands: int


def strand_cycles(d):
    """Closed strands of the crossing-bearing part, each as a dart list."""
    seen = [False] * len(d.alpha)
    out = []
    for start in range(len(d.alpha)):
        if seen[start]:
            continue
        cyc = []
        x = start
        while not seen[x]:
            seen[x] = True
            y = d.alpha[x]
            seen[y] = True
            cyc.append(x)
            x = partner(y)
        out.append(cyc)
    return out


def strand_count(d):
    return len(strand_cycles(d)) + len(d.loops)


def components(d):
    comps, comp = d._components
    strands = [0] * len(comps)
    for cyc in strand_cycles(d):
        strands[comp[cyc[0] >> 2]] += 1
    out = [ComponentInfo("graph", len(m), s) for m, s in zip(comps, strands)]
    out += [ComponentInfo("loop", 0, 1) for _ in d.loops]
    return out


def euler_ok(d):
    """Whole-diagram Euler check with sphere regions: V - E + F = 1 + C."""
    comps, _ = d._components
    v = d.n
    if not comps:
        return True
    regions = len(d.face_darts) - (len(comps) - 1)
    return v - 2 * v + regions == 1 + len(comps)


def relabel(d, perm, rotations=None):
    """Renumber crossing ``k`` as ``perm[k]`` and rotate its positions by
    ``rotations[k]``; placement is carried along."""
    n = d.n
    rotations = rotations or [0] * n
    newd = [0] * (4 * n)
    for k in range(n):
        for p in range(4):
            newd[4 * k + p] = 4 * perm[k] + (p - rotations[k]) % 4
    alpha = [0] * (4 * n)
    for x in range(4 * n):
        alpha[newd[x]] = newd[d.alpha[x]]
    over = [0] * n
    for k in range(n):
        over[perm[k]] = (d.over[k] - rotations[k]) % 2
    keep = {newd[x]: x for x in range(4 * n)}
    return rebuild(d, over, alpha, keep)


def mirror(d):
    """Reflect the sphere (over/under kept).  Loop-free, split-free only."""
    if d.loops or d.splits:
        raise ValueError("mirror supports single-component loop-free diagrams")
    n = d.n
    img = [4 * (x >> 2) + (-(x & 3)) % 4 for x in range(4 * n)]
    alpha = [0] * (4 * n)
    for x in range(4 * n):
        alpha[img[x]] = img[d.alpha[x]]
    over = list(d.over)  # position parity is preserved by p -> -p
    return build_diagram(over, alpha)
