"""Independent brute-force checks used by the tests."""

from fractions import Fraction


def faces_by_orbits(alpha):
    """Faces as sets of darts, computed from explicit permutation tables."""
    n = len(alpha)
    rot_back = {d: 4 * (d // 4) + (d % 4 + 3) % 4 for d in range(n)}
    step = {d: rot_back[alpha[d]] for d in range(n)}
    left = set(range(n))
    out = []
    while left:
        d = min(left)
        orb = []
        while d in left:
            left.remove(d)
            orb.append(d)
            d = step[d]
        out.append(orb)
    return out


def iso_search(d1, d2):
    """Orientation-preserving isomorphism between connected circle-free
    diagrams, by trying every image of dart 0 and propagating."""
    if d1.n != d2.n or d1.loops or d2.loops:
        return False
    if d1.n == 0:
        return True
    m = 4 * d1.n
    for target in range(m):
        f = {0: target}
        stack = [0]
        ok = True
        while stack and ok:
            x = stack.pop()
            y = f[x]
            pairs = [(4 * (x // 4) + (x + 1) % 4, 4 * (y // 4) + (y + 1) % 4),
                     (d1.alpha[x], d2.alpha[y])]
            for a, b in pairs:
                if a in f:
                    if f[a] != b:
                        ok = False
                        break
                else:
                    f[a] = b
                    stack.append(a)
        if not ok or len(f) != m or len(set(f.values())) != m:
            continue
        if all(d1.is_over(x) == d2.is_over(f[x]) for x in range(m)):
            return True
    return False


def determinant(d):
    """Knot determinant from the colouring matrix (over-arcs as generators)."""
    n = d.n
    parent = list(range(4 * n))

    def find(x):
        while parent[x] != x:
            x = parent[x]
        return x

    for x in range(4 * n):
        parent[find(x)] = find(d.alpha[x])
        if d.is_over(x):
            parent[find(x)] = find(x ^ 2)
    arcs = sorted({find(x) for x in range(4 * n)})
    col = {a: i for i, a in enumerate(arcs)}
    rows = []
    for k in range(n):
        row = [Fraction(0)] * len(arcs)
        for p in range(4):
            x = 4 * k + p
            row[col[find(x)]] += 1 if d.is_over(x) else -1
        rows.append(row)
    mat = [r[1:] for r in rows[1:]]
    det = Fraction(1)
    size = len(mat)
    for i in range(size):
        piv = next((r for r in range(i, size) if mat[r][i] != 0), None)
        if piv is None:
            return 0
        if piv != i:
            mat[i], mat[piv] = mat[piv], mat[i]
            det = -det
        det *= mat[i][i]
        for r in range(i + 1, size):
            f = mat[r][i] / mat[i][i]
            for c in range(i, size):
                mat[r][c] -= f * mat[i][c]
    return abs(det)


def all_finals(d, apply, sites):
    """Finals of every maximal reducing sequence, without memoization."""
    s = sites(d)
    if not s:
        return [d]
    out = []
    for site in s:
        out.extend(all_finals(apply(d, site), apply, sites))
    return out
