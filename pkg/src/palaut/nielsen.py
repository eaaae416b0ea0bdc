"""Nielsen graphs of finite groups given by multiplication tables.

Vertices of ``N_k(G)`` are ordered k-tuples of elements that generate G.  Two
tuples are joined when one is obtained from the other by a single move:

* ``N1(i)``: replace ``s_i`` by its inverse;
* ``N2(i,k)``: replace ``s_i`` by ``s_i s_k`` for some ``k != i``.

The graph is undirected.  A move that fixes the tuple (inverting an element
of order <= 2) would be a loop and is dropped; when several moves join the
same pair their labels are merged onto one edge.
"""

from __future__ import annotations

import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from itertools import product
from typing import NamedTuple

import numpy as np
from scipy.sparse import coo_matrix
from scipy.sparse.csgraph import connected_components, shortest_path

__all__ = [
    "FiniteGroup", "FiniteGroupError", "EnumerationCapError", "NielsenGraph", "GraphStats",
    "load_cayley", "dump_cayley", "cyclic_group", "direct_product",
    "generates", "nielsen_moves", "labeled_moves", "delete_identity",
    "nielsen_graph", "graph_stats", "to_dot",
]

DEFAULT_CAP = 10**6


class FiniteGroupError(ValueError):
    pass


class EnumerationCapError(ValueError):
    pass


@dataclass(frozen=True, eq=False)
class FiniteGroup:
    names: tuple
    table: np.ndarray
    identity: int = field(init=False)
    inverse: np.ndarray = field(init=False)

    def __post_init__(self):
        t = np.asarray(self.table, dtype=np.int64)
        m = len(self.names)
        if t.shape != (m, m):
            raise FiniteGroupError(f"table must be {m}x{m}, got {t.shape}")
        if m == 0:
            raise FiniteGroupError("empty group")
        if len(set(self.names)) != m:
            raise FiniteGroupError("duplicate element names")
        if t.min() < 0 or t.max() >= m:
            raise FiniteGroupError("table entry out of range")
        idx = np.arange(m)
        ids = [e for e in range(m) if (t[e] == idx).all() and (t[:, e] == idx).all()]
        if not ids:
            raise FiniteGroupError("no two-sided identity")
        e = ids[0]
        # (xy)z == x(yz) for all triples
        left = t[t]
        right = t[idx[:, None, None], t[None, :, :]]
        bad = np.argwhere(left != right)
        if len(bad):
            x, y, z = bad[0]
            raise FiniteGroupError(
                f"not associative: ({self.names[x]}{self.names[y]}){self.names[z]} "
                f"!= {self.names[x]}({self.names[y]}{self.names[z]})")
        inv = np.full(m, -1)
        for x in range(m):
            ys = np.flatnonzero((t[x] == e) & (t[:, x] == e))
            if len(ys) == 0:
                raise FiniteGroupError(f"{self.names[x]} has no inverse")
            inv[x] = ys[0]
        t.setflags(write=False)
        inv.setflags(write=False)
        object.__setattr__(self, "table", t)
        object.__setattr__(self, "identity", e)
        object.__setattr__(self, "inverse", inv)

    @property
    def order(self) -> int:
        return len(self.names)

    def mul(self, x: int, y: int) -> int:
        return int(self.table[x, y])

    def format_tuple(self, t) -> str:
        return "(" + ", ".join(self.names[x] for x in t) + ")"


def cyclic_group(m: int) -> FiniteGroup:
    idx = np.arange(m)
    return FiniteGroup(tuple(str(x) for x in range(m)), (idx[:, None] + idx[None, :]) % m)


def direct_product(g: FiniteGroup, h: FiniteGroup) -> FiniteGroup:
    """Pairs ordered with the second coordinate varying fastest."""
    a, b = g.order, h.order
    x = np.arange(a * b)
    gi, hi = x // b, x % b
    table = g.table[gi[:, None], gi[None, :]] * b + h.table[hi[:, None], hi[None, :]]
    names = tuple(f"{u}{v}" if len(u) == len(v) == 1 else f"{u}.{v}"
                  for u in g.names for v in h.names)
    return FiniteGroup(names, table)


def load_cayley(text: str) -> FiniteGroup:
    """``order: m``, ``names: x0 .. x(m-1)`` and then m rows of m product indices."""
    order = names = None
    rows = []
    for lineno, line in enumerate(text.splitlines(), start=1):
        s = line.strip()
        if not s or s.startswith("#"):
            continue
        if s.startswith("order:"):
            try:
                order = int(s[6:])
            except ValueError:
                raise FiniteGroupError(f"line {lineno}: bad order") from None
        elif s.startswith("names:"):
            names = tuple(s[6:].split())
        else:
            try:
                rows.append([int(x) for x in s.split()])
            except ValueError:
                raise FiniteGroupError(f"line {lineno}: expected integer indices") from None
    if order is None or names is None:
        raise FiniteGroupError("missing 'order:' or 'names:' line")
    if len(names) != order:
        raise FiniteGroupError(f"{len(names)} names for order {order}")
    if len(rows) != order or any(len(r) != order for r in rows):
        raise FiniteGroupError(f"expected {order} rows of {order} entries")
    return FiniteGroup(names, np.array(rows))


def dump_cayley(g: FiniteGroup) -> str:
    lines = [f"order: {g.order}", "names: " + " ".join(g.names)]
    lines += [" ".join(str(int(x)) for x in row) for row in g.table]
    return "\n".join(lines) + "\n"


def generates(g: FiniteGroup, t) -> bool:
    """Whether the entries of ``t`` generate all of ``g``."""
    seen = np.zeros(g.order, dtype=bool)
    seen[g.identity] = True
    frontier = np.array([g.identity])
    gens = np.unique(np.asarray(t, dtype=np.int64))
    if len(gens) and (gens.min() < 0 or gens.max() >= g.order):
        raise IndexError("element index out of range")
    while len(frontier) and len(gens):
        nxt = np.unique(g.table[frontier[:, None], gens[None, :]])
        nxt = nxt[~seen[nxt]]
        seen[nxt] = True
        frontier = nxt
    return bool(seen.all())


def labeled_moves(g: FiniteGroup, t) -> list:
    """All single N1/N2 moves from ``t`` as ``(label, tuple)``, loops included."""
    t = tuple(int(x) for x in t)
    out = []
    for i in range(len(t)):
        s = list(t)
        s[i] = int(g.inverse[t[i]])
        out.append((f"N1({i + 1})", tuple(s)))
    for i in range(len(t)):
        for k in range(len(t)):
            if i != k:
                s = list(t)
                s[i] = g.mul(t[i], t[k])
                out.append((f"N2({i + 1},{k + 1})", tuple(s)))
    return out


def nielsen_moves(g: FiniteGroup, t) -> set:
    return {s for _, s in labeled_moves(g, t)}


def delete_identity(g: FiniteGroup, t, i: int) -> tuple:
    """The N3 move: drop position ``i`` (1-based) when it holds the identity."""
    if t[i - 1] != g.identity:
        raise ValueError(f"position {i} is not the identity")
    return tuple(t[:i - 1]) + tuple(t[i:])


@dataclass
class NielsenGraph:
    group: FiniteGroup
    k: int
    vertices: list
    edges: list   # (u, v, labels) with u < v vertex positions

    def neighbors(self) -> dict:
        adj = {v: set() for v in range(len(self.vertices))}
        for u, v, _ in self.edges:
            adj[u].add(v)
            adj[v].add(u)
        return adj


def _vertex_chunk(args):
    g, candidates = args
    return [t for t in candidates if generates(g, t)]


def nielsen_graph(g: FiniteGroup, k: int, cap: int = DEFAULT_CAP, threads: int = 1) -> NielsenGraph:
    if k < 0:
        raise ValueError("k must be >= 0")
    if g.order ** k > cap:
        raise EnumerationCapError(f"{g.order}^{k} candidate tuples exceed the cap {cap}")
    candidates = list(product(range(g.order), repeat=k))
    if threads > 1 and len(candidates) > 1:
        size = math.ceil(len(candidates) / threads)
        chunks = [(g, candidates[q:q + size]) for q in range(0, len(candidates), size)]
        with ProcessPoolExecutor(max_workers=threads) as ex:
            vertices = [t for part in ex.map(_vertex_chunk, chunks) for t in part]
    else:
        vertices = _vertex_chunk((g, candidates))
    pos = {t: q for q, t in enumerate(vertices)}
    labels: dict = {}
    for t in vertices:
        u = pos[t]
        for label, s in labeled_moves(g, t):
            v = pos[s]   # moves preserve the generated subgroup
            if u != v:
                labels.setdefault((min(u, v), max(u, v)), set()).add(label)
    edges = [(u, v, tuple(sorted(ls))) for (u, v), ls in sorted(labels.items())]
    return NielsenGraph(g, k, vertices, edges)


class GraphStats(NamedTuple):
    vertex_count: int
    edge_count: int
    component_count: int
    diameters: tuple

    def __str__(self):
        d = " ".join(map(str, self.diameters)) or "-"
        return (f"vertices={self.vertex_count} edges={self.edge_count} "
                f"components={self.component_count} diameters={d}")


def graph_stats(ng: NielsenGraph) -> GraphStats:
    """Counts plus the diameter of each component, components ordered by least vertex."""
    nv = len(ng.vertices)
    if nv == 0:
        return GraphStats(0, 0, 0, ())
    rows = [u for u, _, _ in ng.edges]
    cols = [v for _, v, _ in ng.edges]
    adj = coo_matrix((np.ones(len(rows)), (rows, cols)), shape=(nv, nv)).tocsr()
    ncomp, comp = connected_components(adj, directed=False)
    dist = shortest_path(adj, directed=False, unweighted=True)
    diameters = []
    for c in range(ncomp):
        members = np.flatnonzero(comp == c)
        diameters.append(int(dist[np.ix_(members, members)].max()))
    return GraphStats(nv, len(ng.edges), int(ncomp), tuple(diameters))


def to_dot(ng: NielsenGraph) -> str:
    g = ng.group
    lines = [f"graph nielsen_{ng.k} {{"]
    for q, t in enumerate(ng.vertices):
        lines.append(f'  v{q} [label="{g.format_tuple(t)}"];')
    for u, v, ls in ng.edges:
        lines.append(f'  v{u} -- v{v} [label="{",".join(ls)}"];')
    lines.append("}")
    return "\n".join(lines) + "\n"
