"""Independent brute-force oracles used by the test suite.

Nothing here imports from ``palaut``.  Words are plain lists of signed
integers (``3`` is a3, ``-3`` is a3^-1); automorphisms are applied one
generator at a time by letter substitution with a free reduction after every
letter.  No run-length blocks, no symbolic exponents.
"""

from collections import deque
from itertools import product


def reduce_letters(word):
    out = []
    for x in word:
        if out and out[-1] == -x:
            out.pop()
        else:
            out.append(x)
    return out


def inverse_letters(word):
    return [-x for x in reversed(word)]


def generator_images(kind, n, i=None, j=None, perm=None, sign=1):
    """Letter images of one elementary generator (or its inverse when sign=-1)."""
    im = {g: [g] for g in range(1, n + 1)}
    if kind == "A":
        im[i] = [j * sign, i, j * sign]
    elif kind == "lambda":
        im[i] = [j * sign, i]
    elif kind == "rho":
        im[i] = [i, j * sign]
    elif kind == "sigma":
        im[i] = [-i]
    elif kind == "perm":
        if sign == 1:
            for g in range(1, n + 1):
                im[g] = [perm[g - 1]]
        else:
            for g in range(1, n + 1):
                im[perm[g - 1]] = [g]
    else:
        raise ValueError(kind)
    return im


def apply_images(im, word):
    out = []
    for x in word:
        piece = im[x] if x > 0 else inverse_letters(im[-x])
        for y in piece:
            if out and out[-1] == -y:
                out.pop()
            else:
                out.append(y)
    return out


def unroll(factors, n):
    """factors: list of (kind, i, j, perm, exponent) with integer exponents."""
    seq = []
    for kind, i, j, perm, e in factors:
        for _ in range(abs(e)):
            seq.append(generator_images(kind, n, i, j, perm, 1 if e > 0 else -1))
    return seq


def naive_images(factors, n, convention):
    """Images of a1..an under the composite, one letter-level step at a time."""
    seq = unroll(factors, n)
    if convention == "RL":
        seq = seq[::-1]
    result = []
    for x in range(1, n + 1):
        w = [x]
        for im in seq:
            w = apply_images(im, w)
        result.append(w)
    return result


def wp_factors(i, j, k, p):
    exps = [-p, -p, p, 1, p, -p, -p, -1]
    pairs = [(i, j), (k, j), (i, j), (k, i), (i, j), (k, j), (i, j), (k, i)]
    return [("A", a, b, None, e) for (a, b), e in zip(pairs, exps) if e != 0]


# --- van Kampen area -------------------------------------------------------

def commutator_power_word(m):
    """[a^m, b^m] over a=1, b=2."""
    return [1] * m + [2] * m + [-1] * m + [-2] * m


def z2_tiling_certificate(m):
    """m*m cells of the square grid filling [a^m, b^m] in <a,b | a b a^-1 b^-1>.

    Returns (conjugator letters, relator index 0, sign) triples.  The cell at
    column s, row t is the relator conjugated by a^s b^t; the boundary of the
    big square is the ordered product over rows (bottom to top) and, within a
    row, right to left.
    """
    cert = []
    for s in range(m - 1, -1, -1):
        for t in range(m):
            cert.append(([1] * s + [2] * t, 0, 1))
    return cert


def product_of_conjugates(cert, relators):
    out = []
    for g, idx, sign in cert:
        r = relators[idx] if sign == 1 else inverse_letters(relators[idx])
        out = reduce_letters(out + g + r + inverse_letters(g))
    return out


# --- finite groups ----------------------------------------------------------

def closure_by_words(table, gens, identity):
    """Subgroup generated by ``gens`` via breadth-first search in the Cayley graph."""
    seen = {identity}
    queue = deque([identity])
    while queue:
        x = queue.popleft()
        for g in gens:
            y = table[x][g]
            if y not in seen:
                seen.add(y)
                queue.append(y)
    return seen


def brute_generating_tuples(table, k, identity):
    m = len(table)
    return [t for t in product(range(m), repeat=k)
            if len(closure_by_words(table, t, identity)) == m]


def bfs_components_and_diameters(vertices, adjacency):
    seen = set()
    diameters = []
    for v in vertices:
        if v in seen:
            continue
        comp = []
        queue = deque([v])
        seen.add(v)
        while queue:
            x = queue.popleft()
            comp.append(x)
            for y in adjacency[x]:
                if y not in seen:
                    seen.add(y)
                    queue.append(y)
        diam = 0
        for s in comp:
            dist = {s: 0}
            queue = deque([s])
            while queue:
                x = queue.popleft()
                for y in adjacency[x]:
                    if y not in dist:
                        dist[y] = dist[x] + 1
                        queue.append(y)
            diam = max(diam, max(dist.values()))
        diameters.append(diam)
    return len(diameters), diameters


def table_from_elements(gens, mul):
    """Close ``gens`` under ``mul`` and return (elements, table) with the identity first."""
    elems = []
    seen = set()
    queue = deque()
    for g in gens:
        if g not in seen:
            seen.add(g)
            queue.append(g)
    while queue:
        x = queue.popleft()
        elems.append(x)
        for g in gens:
            y = mul(x, g)
            if y not in seen:
                seen.add(y)
                queue.append(y)
    ident = [x for x in elems if all(mul(x, y) == y for y in elems)][0]
    elems.remove(ident)
    elems.insert(0, ident)
    pos = {x: i for i, x in enumerate(elems)}
    return elems, [[pos[mul(x, y)] for y in elems] for x in elems]


def _perm_mul(p, q):
    return tuple(p[q[i]] for i in range(len(p)))


def _quat_mul(x, y):
    # 2x2 Gaussian-integer matrices as nested tuples of (re, im) pairs
    def cm(a, b):
        return (a[0] * b[0] - a[1] * b[1], a[0] * b[1] + a[1] * b[0])

    def ca(a, b):
        return (a[0] + b[0], a[1] + b[1])
    return tuple(tuple(ca(cm(x[r][0], y[0][c]), cm(x[r][1], y[1][c])) for c in range(2)) for r in range(2))


def small_groups():
    """Every group of order <= 8 up to isomorphism, as name -> multiplication table."""
    groups = {}
    for m in range(1, 9):
        groups[f"Z{m}"] = [[(x + y) % m for y in range(m)] for x in range(m)]

    def add_mod(mods):
        return lambda x, y: tuple((a + b) % n for a, b, n in zip(x, y, mods))
    for name, mods in (("Z2xZ2", (2, 2)), ("Z2xZ4", (2, 4)), ("Z2xZ2xZ2", (2, 2, 2))):
        unit = [tuple(1 if i == q else 0 for i in range(len(mods))) for q in range(len(mods))]
        groups[name] = table_from_elements(unit, add_mod(mods))[1]
    groups["S3"] = table_from_elements([(1, 0, 2), (1, 2, 0)], _perm_mul)[1]
    groups["D4"] = table_from_elements([(1, 2, 3, 0), (0, 3, 2, 1)], _perm_mul)[1]
    qi = (((0, 1), (0, 0)), ((0, 0), (0, -1)))
    qj = (((0, 0), (1, 0)), ((-1, 0), (0, 0)))
    groups["Q8"] = table_from_elements([qi, qj], _quat_mul)[1]
    return groups
