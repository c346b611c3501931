"""
Canonical codes for diagrams up to orientation-preserving homeomorphism
of the sphere.

A map component is encoded by breadth-first traversal from a root dart
(neighbours visited in the order ``sigma``, ``alpha``), recording each
dart's rotation successor, arc partner and over flag.  The component code
is the minimum over roots.  Placement is handled by encoding the
component/region tree from its centre, where each map component also
records which of its faces (numbered in traversal order) leads to each
neighbouring region.
"""

import hashlib
from dataclasses import dataclass
from functools import total_ordering

from .mapcore import (from_arrangement, region_tree, sigma, trace_faces,
                      map_components)


@total_ordering
@dataclass(frozen=True)
class CanonicalCode:
    data: bytes

    def __lt__(self, other):
        return self.data < other.data

    def hex(self):
        return self.data.hex()

    def short(self, n=8):
        return hashlib.sha256(self.data).hexdigest()[:n]

    def __repr__(self):
        return "CanonicalCode(%s)" % self.short()


def _bfs_code(alpha, over, root, ndarts_hint):
    lab = {root: 0}
    order = [root]
    i = 0
    while i < len(order):
        x = order[i]
        i += 1
        for y in (sigma(x), alpha[x]):
            if y not in lab:
                lab[y] = len(order)
                order.append(y)
    code = []
    for x in order:
        code.append(lab[sigma(x)])
        code.append(lab[alpha[x]])
        code.append(1 if (x & 1) == over[x >> 2] else 0)
    return tuple(code), lab


def _serialize(obj, out):
    if isinstance(obj, tuple):
        out.append(0xF0)
        for x in obj:
            _serialize(x, out)
        out.append(0xF1)
    elif isinstance(obj, str):
        out.append(0xF2)
        out.extend(obj.encode())
    elif 0 <= obj < 0xE0:
        out.append(obj)
    else:
        out.append(0xF3)
        out.extend(int(obj).to_bytes(4, "big", signed=True))


class _Canon:
    def __init__(self, d):
        self.d = d
        arr = d.arrangement
        self.face_region = arr.face_region
        self.loop_sides = arr.loop_sides
        faces_, face_of = d._faces
        comps, comp = d._components
        self.faces = faces_
        self.comps = comps
        self.comp_of_face = [comp[f[0] >> 2] for f in faces_]
        self.kfaces = [[] for _ in comps]
        for fi, c in enumerate(self.comp_of_face):
            self.kfaces[c].append(fi)
        self.adj = region_tree(self.comp_of_face, self.face_region,
                               self.loop_sides)
        self._kcanon = {}
        self.memo = {}
        self.choice = {}

    # -- map components ----------------------------------------------------

    def kcanon(self, ci):
        if ci in self._kcanon:
            return self._kcanon[ci]
        d = self.d
        face_of = d.face_of
        deg = [len(f) for f in self.faces]
        darts = [4 * k + p for k in self.comps[ci] for p in range(4)]

        def sig(x):
            return (deg[face_of[x]], deg[face_of[d.alpha[x]]],
                    1 if d.is_over(x) else 0)

        smin = min(sig(x) for x in darts)
        best = None
        roots = []
        for r in darts:
            if sig(r) != smin:
                continue
            code, lab = _bfs_code(d.alpha, d.over, r, len(darts))
            if best is None or code < best:
                best, roots = code, [(r, lab)]
            elif code == best:
                roots.append((r, lab))
        entries = []
        for r, lab in roots:
            forder = sorted(self.kfaces[ci],
                            key=lambda fi: min(lab[x] for x in self.faces[fi]))
            pos = {fi: i for i, fi in enumerate(forder)}
            entries.append((r, lab, forder, pos))
        self._kcanon[ci] = (best, entries)
        return self._kcanon[ci]

    # -- tree encoding -----------------------------------------------------

    def enc_region(self, r, parent):
        key = ("R", r, parent)
        if key in self.memo:
            return self.memo[key]
        kids = []
        for kind, ident, _slot in self.adj.get(r, ()):
            if (kind, ident) == parent:
                continue
            kids.append(self.enc_node(kind, ident, r))
        out = ("R", tuple(sorted(kids)))
        self.memo[key] = out
        return out

    def enc_node(self, kind, ident, parent_region):
        key = (kind, ident, parent_region)
        if key in self.memo:
            return self.memo[key]
        if kind == "L":
            a, b = self.loop_sides[ident]
            if parent_region is None:
                out = ("L", tuple(sorted([self.enc_region(a, ("L", ident)),
                                          self.enc_region(b, ("L", ident))])))
            else:
                other = b if a == parent_region else a
                out = ("L", self.enc_region(other, ("L", ident)))
        else:
            code, entries = self.kcanon(ident)
            pf = None
            if parent_region is not None:
                for fi in self.kfaces[ident]:
                    if self.face_region[fi] == parent_region:
                        pf = fi
            child = {fi: self.enc_region(self.face_region[fi], ("K", ident))
                     for fi in self.kfaces[ident] if fi != pf}
            best = None
            best_root = None
            for r, lab, forder, pos in entries:
                k = (pos[pf] if pf is not None else -1,
                     tuple(child[fi] for fi in forder if fi != pf))
                if best is None or k < best:
                    best, best_root = k, r
            self.choice[(ident, parent_region)] = best_root
            out = ("K", code) + best
        self.memo[key] = out
        return out

    def enc_root(self, node):
        if node[0] == "R":
            return self.enc_region(node[1], None)
        return self.enc_node(node[0], node[1], None)

    # -- centre ------------------------------------------------------------

    def nodes_and_edges(self):
        nbr = {}
        for r, atts in self.adj.items():
            nbr.setdefault(("R", r), [])
            for kind, ident, _ in atts:
                nbr[("R", r)].append((kind, ident))
                nbr.setdefault((kind, ident), []).append(("R", r))
        return nbr

    def centres(self):
        nbr = self.nodes_and_edges()
        if not nbr:
            return []
        deg = {v: len(ns) for v, ns in nbr.items()}
        remaining = set(nbr)
        layer = [v for v in nbr if deg[v] <= 1]
        while len(remaining) > 2:
            nxt = []
            for v in layer:
                remaining.discard(v)
                for w in nbr[v]:
                    if w in remaining:
                        deg[w] -= 1
                        if deg[w] == 1:
                            nxt.append(w)
            layer = nxt
        return sorted(remaining, key=repr)

    def code(self):
        cs = self.centres()
        if not cs:
            return (), None
        best = None
        for c in cs:
            e = self.enc_root(c)
            if best is None or e < best[0]:
                best = (e, c)
        return best


def _code_of(d):
    c = _Canon(d)
    enc, _root = c.code()
    out = bytearray()
    _serialize(("D", enc), out)
    return CanonicalCode(bytes(out)), c, _root


def canonicalize(d):
    cache = d.__dict__.get("_canonical_code")
    if cache is None:
        cache = _code_of(d)[0]
        d.__dict__["_canonical_code"] = cache
    return cache


def isomorphic(d1, d2):
    return canonicalize(d1) == canonicalize(d2)


def canonical_diagram(d):
    """Relabel ``d`` so that equal canonical codes give identical values.

    Crossings are numbered in traversal order of the canonical encoding;
    position 0 of every crossing is its under-strand dart with the smaller
    traversal label.
    """
    code, cn, root = _code_of(d)
    if d.n == 0:
        if not d.loops:
            return d
        leaves = [r for r, atts in cn.adj.items() if len(atts) == 1]
        root_region = min(leaves, key=lambda r: cn.enc_region(r, None))

        def key0(r, att):
            return cn.enc_node(att[0], att[1], r)

        return from_arrangement((), (), [], cn.loop_sides, root_region, key0)

    # depth-first walk of the canonical rooting to order the map components
    korder = []
    kparent = {}

    def walk(node, parent):
        if node[0] == "R":
            r = node[1]
            kids = []
            for kind, ident, _ in cn.adj.get(r, ()):
                if (kind, ident) == parent:
                    continue
                kids.append((cn.enc_node(kind, ident, r), (kind, ident)))
            kids.sort(key=lambda t: t[0])
            for _, child in kids:
                walk(child, r)
        elif node[0] == "K":
            korder.append(node[1])
            kparent[node[1]] = parent
            cn.enc_node("K", node[1], parent)
            for fi in cn.kfaces[node[1]]:
                rr = cn.face_region[fi]
                if rr != parent:
                    walk(("R", rr), ("K", node[1]))
        else:
            a, b = cn.loop_sides[node[1]]
            for rr in (a, b):
                if rr != parent:
                    walk(("R", rr), ("L", node[1]))

    walk(root, None)

    newcross = {}
    rot = {}
    for ci in korder:
        r0 = cn.choice[(ci, kparent[ci])]
        lab = _bfs_code(d.alpha, d.over, r0, 0)[1]
        bydart = sorted(lab, key=lab.get)
        for x in bydart:
            k = x >> 2
            if k in newcross:
                continue
            newcross[k] = len(newcross)
            unders = [4 * k + p for p in range(4) if not d.is_over(4 * k + p)]
            u = min(unders, key=lab.get)
            rot[k] = u & 3
    n = d.n
    img = [0] * (4 * n)
    for k in range(n):
        for p in range(4):
            img[4 * k + p] = 4 * newcross[k] + (p - rot[k]) % 4
    alpha = [0] * (4 * n)
    for x in range(4 * n):
        alpha[img[x]] = img[d.alpha[x]]
    over = [1] * n
    faces_, face_of = trace_faces(alpha)
    inv = [0] * (4 * n)
    for x in range(4 * n):
        inv[img[x]] = x
    face_region = [cn.face_region[d.face_of[inv[f[0]]]] for f in faces_]
    _, newcomp = map_components(alpha)
    old_of_new = {}
    for k in range(n):
        old_of_new[newcomp[newcross[k]]] = d._components[1][k]

    def key(r, att):
        kind, ident, _ = att
        if kind == "K":
            return cn.enc_node("K", old_of_new[ident], r)
        return cn.enc_node("L", ident, r)

    return from_arrangement(over, alpha, face_region, cn.loop_sides, None, key)
