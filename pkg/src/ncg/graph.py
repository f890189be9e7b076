"""Non-commuting graphs: construction, clique number, isomorphism.

The non-commuting graph of a non-abelian group has the non-central elements
as vertices, with an edge between ``x`` and ``y`` whenever ``xy != yx``.
Vertices are stored densely in increasing element order; ``vertices[i]`` is
the group element at graph position ``i``.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property

import numpy as np

from .errors import AbelianGroup, InvalidIso, SizeLimitExceeded
from .group import FiniteGroup
from .structure import center, centralizer_orders

CLIQUE_CAP = 200
ISO_CAP = 2000


@dataclass(frozen=True, eq=False)
class NCGraph:
    source: str
    vertices: tuple[int, ...]
    adjacency: np.ndarray

    @property
    def n(self) -> int:
        return len(self.vertices)

    @cached_property
    def degree(self) -> np.ndarray:
        return self.adjacency.sum(axis=1)

    @cached_property
    def bits(self) -> list[int]:
        """Neighbourhoods as Python-int bitsets over graph positions."""
        weights = [1 << i for i in range(self.n)]
        return [sum(weights[j] for j in np.flatnonzero(row)) for row in self.adjacency]

    @cached_property
    def position(self) -> dict[int, int]:
        return {v: i for i, v in enumerate(self.vertices)}

    @property
    def edge_count(self) -> int:
        return int(self.adjacency.sum()) // 2

    def edges(self) -> list[tuple[int, int]]:
        """Edges as sorted pairs of element indices."""
        iu, ju = np.nonzero(np.triu(self.adjacency, 1))
        v = self.vertices
        return [(v[i], v[j]) for i, j in zip(iu.tolist(), ju.tolist())]

    def to_dot(self) -> str:
        lines = [f'graph "{self.source}" {{']
        lines += [f"  {v};" for v in self.vertices]
        lines += [f"  {u} -- {v};" for u, v in self.edges()]
        lines.append("}")
        return "\n".join(lines) + "\n"

    def to_json(self) -> dict:
        return {
            "source": self.source,
            "vertices": list(self.vertices),
            "degree": [int(d) for d in self.degree],
            "edges": [list(e) for e in self.edges()],
        }

    @classmethod
    def from_json(cls, data: dict) -> "NCGraph":
        vertices = tuple(int(v) for v in data["vertices"])
        pos = {v: i for i, v in enumerate(vertices)}
        adj = np.zeros((len(vertices), len(vertices)), dtype=bool)
        for u, v in data["edges"]:
            adj[pos[u], pos[v]] = adj[pos[v], pos[u]] = True
        adj.setflags(write=False)
        return cls(data["source"], vertices, adj)

    @classmethod
    def from_adjacency(cls, adjacency, source: str = "", vertices=None) -> "NCGraph":
        adj = np.array(adjacency, dtype=bool)
        assert (adj == adj.T).all() and not adj.diagonal().any()
        adj.setflags(write=False)
        vertices = tuple(range(len(adj))) if vertices is None else tuple(vertices)
        return cls(source, vertices, adj)


@dataclass(frozen=True)
class IsoMap:
    """A verified vertex bijection, as graph positions of ``g1`` -> ``g2``."""

    g1: NCGraph
    g2: NCGraph
    forward: tuple[int, ...]

    def element_map(self) -> dict[int, int]:
        v1, v2 = self.g1.vertices, self.g2.vertices
        return {v1[i]: v2[j] for i, j in enumerate(self.forward)}

    def inverse(self) -> "IsoMap":
        back = np.empty(len(self.forward), dtype=np.int64)
        back[list(self.forward)] = np.arange(len(self.forward))
        return IsoMap(self.g2, self.g1, tuple(int(i) for i in back))

    def then(self, other: "IsoMap") -> "IsoMap":
        """Composition: apply self, then other."""
        return IsoMap(self.g1, other.g2, tuple(other.forward[j] for j in self.forward))


@dataclass(frozen=True)
class Fingerprint:
    vertex_count: int
    degrees: tuple[int, ...]
    parts: tuple[int, ...] | None
    edge_count: int
    triangle_count: int

    def to_dict(self) -> dict:
        return {
            "vertex_count": self.vertex_count,
            "degrees": list(self.degrees),
            "parts": None if self.parts is None else list(self.parts),
            "edge_count": self.edge_count,
            "triangle_count": self.triangle_count,
        }

    @classmethod
    def from_dict(cls, d: dict) -> "Fingerprint":
        parts = d.get("parts")
        return cls(
            int(d["vertex_count"]),
            tuple(d["degrees"]),
            None if parts is None else tuple(parts),
            int(d["edge_count"]),
            int(d["triangle_count"]),
        )


def noncommuting_graph(G: FiniteGroup) -> NCGraph:
    def compute():
        if G.is_abelian():
            raise AbelianGroup(f"{G.name} is abelian")
        Z = center(G)
        verts = np.flatnonzero(~Z.mask)
        adj = ~G.commuting_matrix()[np.ix_(verts, verts)]
        adj.setflags(write=False)
        g = NCGraph(G.name, tuple(int(v) for v in verts), adj)
        assert (g.degree == G.order - centralizer_orders(G)[verts]).all()
        return g

    return G.memo("ncgraph", compute)


def _part_labels(g: NCGraph):
    """Part label per vertex if g is complete multipartite, else None."""
    if g.n == 0:
        return np.zeros(0, dtype=np.int64)
    same = ~g.adjacency  # "non-adjacent or equal"
    _, labels = np.unique(same, axis=0, return_inverse=True)
    labels = np.asarray(labels).ravel()
    if not (same == (labels[:, None] == labels[None, :])).all():
        return None
    return labels


def multipartite_parts(g: NCGraph) -> list[int] | None:
    labels = _part_labels(g)
    if labels is None:
        return None
    return sorted(np.bincount(labels).tolist()) if labels.size else []


def maximum_clique(g: NCGraph, *, cap: int = CLIQUE_CAP) -> list[int]:
    """A maximum clique (as element indices), by branch and bound.

    The bound at each node is the number of colours in a greedy colouring of
    the candidate set, processed in descending colour order.
    """
    if g.n > cap:
        raise SizeLimitExceeded(g.n, cap)
    if g.n == 0:
        return []
    # relabel so that high-degree vertices get low bit positions
    order = sorted(range(g.n), key=lambda v: (-int(g.degree[v]), v))
    rank = {v: i for i, v in enumerate(order)}
    nbrs = [0] * g.n
    for v in range(g.n):
        for u in np.flatnonzero(g.adjacency[v]):
            nbrs[rank[v]] |= 1 << rank[int(u)]

    best: list[int] = []

    def color_sort(P):
        verts, bounds = [], []
        color, uncolored = 0, P
        while uncolored:
            color += 1
            Q = uncolored
            while Q:
                low = Q & -Q
                v = low.bit_length() - 1
                Q &= ~nbrs[v] & ~low
                uncolored &= ~low
                verts.append(v)
                bounds.append(color)
        return verts, bounds

    def expand(clique, P):
        nonlocal best
        verts, bounds = color_sort(P)
        for i in range(len(verts) - 1, -1, -1):
            if len(clique) + bounds[i] <= len(best):
                return
            v = verts[i]
            newP = P & nbrs[v]
            if newP:
                expand(clique + [v], newP)
            elif len(clique) + 1 > len(best):
                best = clique + [v]
            P &= ~(1 << v)

    expand([], (1 << g.n) - 1)
    return sorted(g.vertices[order[v]] for v in best)


def max_clique(g: NCGraph, *, cap: int = CLIQUE_CAP) -> int:
    return len(maximum_clique(g, cap=cap))


def fingerprint(g: NCGraph) -> Fingerprint:
    a = g.adjacency.astype(np.float64)
    triangles = int(round(((a @ a) * a).sum())) // 6
    parts = multipartite_parts(g)
    return Fingerprint(
        g.n,
        tuple(sorted(int(d) for d in g.degree)),
        None if parts is None else tuple(parts),
        g.edge_count,
        triangles,
    )


def verify_iso(g1: NCGraph, g2: NCGraph, forward) -> bool:
    """Exhaustive certificate check: bijective and adjacency-preserving both ways."""
    perm = np.asarray(forward, dtype=np.int64)
    if g1.n != g2.n or perm.shape != (g1.n,):
        return False
    if g1.n and (np.sort(perm) != np.arange(g1.n)).any():
        return False
    return bool((g2.adjacency[np.ix_(perm, perm)] == g1.adjacency).all())


def _refine(adj: np.ndarray, colors: np.ndarray) -> np.ndarray:
    """1-dimensional colour refinement to a fixpoint; colours stay canonical."""
    n = len(colors)
    while True:
        k = int(colors.max()) + 1
        onehot = np.zeros((n, k), dtype=np.float32)
        onehot[np.arange(n), colors] = 1.0
        counts = adj @ onehot
        sig = np.column_stack([colors, counts.astype(np.int64)])
        _, new = np.unique(sig, axis=0, return_inverse=True)
        new = np.asarray(new).ravel()
        if new.max() == colors.max():
            return new
        colors = new


def _search_iso(g1: NCGraph, g2: NCGraph):
    n = g1.n
    union = np.zeros((2 * n, 2 * n), dtype=np.float32)
    union[:n, :n] = g1.adjacency
    union[n:, n:] = g2.adjacency
    start = np.zeros(2 * n, dtype=np.int64)

    def search(colors):
        colors = _refine(union, colors)
        k = int(colors.max()) + 1
        c1, c2 = colors[:n], colors[n:]
        h1, h2 = np.bincount(c1, minlength=k), np.bincount(c2, minlength=k)
        if (h1 != h2).any():
            return None
        if (h1 <= 1).all():
            forward = np.empty(n, dtype=np.int64)
            forward[np.argsort(c1)] = np.argsort(c2)
            return forward if verify_iso(g1, g2, forward) else None
        # individualize in the smallest non-trivial cell
        cells = np.flatnonzero(h1 > 1)
        cell = cells[np.argmin(h1[cells])]
        v = int(np.flatnonzero(c1 == cell)[0])
        for w in np.flatnonzero(c2 == cell):
            nxt = colors.copy()
            nxt[v] = nxt[n + w] = k
            found = search(nxt)
            if found is not None:
                return found
        return None

    return search(start)


def are_isomorphic(g1: NCGraph, g2: NCGraph, *, cap: int = ISO_CAP) -> IsoMap | None:
    if g1.n != g2.n or sorted(g1.degree.tolist()) != sorted(g2.degree.tolist()):
        return None
    l1, l2 = _part_labels(g1), _part_labels(g2)
    if l1 is not None and l2 is not None:
        forward = _multipartite_map(l1, l2)
        if forward is None:
            return None
    else:
        if (l1 is None) != (l2 is None):
            return None
        if g1.n > cap:
            raise SizeLimitExceeded(g1.n, cap)
        forward = _search_iso(g1, g2)
        if forward is None:
            return None
    forward = tuple(int(i) for i in forward)
    if not verify_iso(g1, g2, forward):
        raise InvalidIso(f"certificate for {g1.source} -> {g2.source} failed verification")
    return IsoMap(g1, g2, forward)


def _multipartite_map(l1, l2):
    def parts(labels):
        groups = [np.flatnonzero(labels == k) for k in range(int(labels.max()) + 1)] if labels.size else []
        return sorted(groups, key=lambda p: (len(p), int(p[0])))

    p1, p2 = parts(l1), parts(l2)
    if [len(p) for p in p1] != [len(p) for p in p2]:
        return None
    forward = np.empty(len(l1), dtype=np.int64)
    for a, b in zip(p1, p2):
        forward[a] = b
    return forward
