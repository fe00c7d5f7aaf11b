"""Directed graphs on packed bitset rows: SCCs, BFS distances, diameters, DOT.

Adjacency is stored as one packed bit row per vertex (``bits[i]`` has bit
``j`` set iff ``i -> j``), little-endian within each byte.  Self-loops are
never stored.

A graph may carry ``orbit_rep``: for each vertex the index of a
representative of its orbit under some group of graph automorphisms.
Eccentricities are then computed only at representatives and copied to the
rest of each orbit.
"""

from __future__ import annotations

import math
import re
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

import numpy as np

INFINITE = math.inf
MAX_VERTICES = 100_000
_CHUNK = 2048


def pack_rows(adj: np.ndarray) -> np.ndarray:
    adj = np.asarray(adj, dtype=bool)
    if adj.shape[0] == 0:
        return np.zeros((0, 0), dtype=np.uint8)
    return np.packbits(adj, axis=1, bitorder="little")


_POPCOUNT = np.array([bin(i).count("1") for i in range(256)], dtype=np.uint8)


def transpose_bits(bits: np.ndarray, n: int, block: int = 1024) -> np.ndarray:
    """Transpose an ``n x n`` packed bit matrix, ``block`` rows at a time."""
    out = np.zeros_like(bits)
    for lo in range(0, n, block):
        hi = min(lo + block, n)
        rows = np.unpackbits(bits[lo:hi], axis=1, count=n, bitorder="little")
        out[:, lo >> 3:(hi + 7) >> 3] = np.packbits(rows.T, axis=1, bitorder="little")
    return out


@dataclass
class Digraph:
    vertex_ids: np.ndarray
    bits: np.ndarray
    kind: str = "digraph"
    orbit_rep: np.ndarray | None = None
    symmetric: bool = False
    meta: dict = field(default_factory=dict)

    def __post_init__(self):
        self.vertex_ids = np.asarray(self.vertex_ids, dtype=np.int64)
        n = len(self.vertex_ids)
        if n > MAX_VERTICES:
            raise ValueError(f"{n} vertices exceeds the cap of {MAX_VERTICES}")
        if self.bits.shape != (n, (n + 7) // 8):
            raise ValueError("bit rows do not match the vertex count")
        if n and self.bits.dtype != np.uint8:
            raise ValueError("bit rows must be uint8")

    @classmethod
    def from_dense(cls, vertex_ids, adj, kind="digraph", orbit_rep=None, symmetric=False) -> Digraph:
        adj = np.array(adj, dtype=bool)
        np.fill_diagonal(adj, False)
        if symmetric and not (adj == adj.T).all():
            raise ValueError(f"{kind} adjacency is not symmetric")
        return cls(np.asarray(vertex_ids), pack_rows(adj), kind, orbit_rep, symmetric)

    @classmethod
    def from_arcs(cls, n: int, arcs, kind="digraph", symmetric=False) -> Digraph:
        adj = np.zeros((n, n), dtype=bool)
        for a, b in arcs:
            adj[a, b] = True
            if symmetric:
                adj[b, a] = True
        return cls.from_dense(np.arange(n), adj, kind, symmetric=symmetric)

    def __len__(self) -> int:
        return len(self.vertex_ids)

    @property
    def degenerate(self) -> bool:
        return len(self) <= 1

    def row(self, i: int) -> np.ndarray:
        return np.unpackbits(self.bits[i], count=len(self), bitorder="little").astype(bool)

    def out_neighbors(self, i: int) -> np.ndarray:
        return np.flatnonzero(self.row(i))

    def has_arc(self, i: int, j: int) -> bool:
        return bool(self.bits[i, j >> 3] >> (j & 7) & 1)

    def dense(self) -> np.ndarray:
        n = len(self)
        if n == 0:
            return np.zeros((0, 0), dtype=bool)
        return np.unpackbits(self.bits, axis=1, count=n, bitorder="little").astype(bool)

    def arc_count(self) -> int:
        total = 0
        for lo in range(0, len(self), 4096):
            total += int(_POPCOUNT[self.bits[lo:lo + 4096]].sum(dtype=np.int64))
        return total

    def arcs(self) -> list[tuple[int, int]]:
        """Arcs as (source index, target index), sorted."""
        out = []
        for i in range(len(self)):
            out.extend((i, int(j)) for j in self.out_neighbors(i))
        return out

    def index_of(self, element_id: int) -> int:
        k = int(np.searchsorted(self.vertex_ids, element_id))
        if k == len(self) or self.vertex_ids[k] != element_id:
            raise KeyError(element_id)
        return k

    def reps(self) -> np.ndarray:
        if self.orbit_rep is None:
            return np.arange(len(self))
        return np.unique(self.orbit_rep)


# -- BFS -----------------------------------------------------------------------


def _expand(bits: np.ndarray, frontier: np.ndarray) -> np.ndarray:
    reach = np.zeros(bits.shape[1], dtype=np.uint8)
    for k in range(0, len(frontier), _CHUNK):
        reach |= np.bitwise_or.reduce(bits[frontier[k : k + _CHUNK]], axis=0)
    return reach


def bfs_distances(D: Digraph, source: int) -> np.ndarray:
    """Directed distances from ``source``; ``-1`` marks unreachable vertices."""
    n = len(D)
    dist = np.full(n, -1, dtype=np.int32)
    dist[source] = 0
    visited = np.zeros(D.bits.shape[1], dtype=np.uint8)
    visited[source >> 3] |= np.uint8(1 << (source & 7))
    frontier = np.array([source])
    d = 0
    while len(frontier):
        d += 1
        new = _expand(D.bits, frontier) & ~visited
        visited |= new
        frontier = np.flatnonzero(np.unpackbits(new, count=n, bitorder="little"))
        dist[frontier] = d
    return dist


# -- strongly connected components ------------------------------------------


@dataclass(frozen=True)
class SccResult:
    component_id: np.ndarray
    component_count: int
    is_strongly_connected: bool
    degenerate: bool


def _tarjan(D: Digraph) -> np.ndarray:
    n = len(D)
    index = np.full(n, -1, dtype=np.int64)
    low = np.zeros(n, dtype=np.int64)
    on_stack = np.zeros(n, dtype=bool)
    comp = np.full(n, -1, dtype=np.int64)
    stack: list[int] = []
    counter = 0
    ncomp = 0
    for root in range(n):
        if index[root] >= 0:
            continue
        work = [(root, D.out_neighbors(root), 0)]
        index[root] = low[root] = counter
        counter += 1
        stack.append(root)
        on_stack[root] = True
        while work:
            v, nbrs, pos = work[-1]
            if pos < len(nbrs):
                work[-1] = (v, nbrs, pos + 1)
                w = int(nbrs[pos])
                if index[w] < 0:
                    index[w] = low[w] = counter
                    counter += 1
                    stack.append(w)
                    on_stack[w] = True
                    work.append((w, D.out_neighbors(w), 0))
                elif on_stack[w]:
                    low[v] = min(low[v], index[w])
                continue
            work.pop()
            if work:
                u = work[-1][0]
                low[u] = min(low[u], low[v])
            if low[v] == index[v]:
                while True:
                    w = stack.pop()
                    on_stack[w] = False
                    comp[w] = ncomp
                    if w == v:
                        break
                ncomp += 1
    return comp


def _canonical(comp: np.ndarray) -> np.ndarray:
    """Renumber components in order of their smallest vertex."""
    _, first = np.unique(comp, return_index=True)
    order = np.argsort(first)
    relabel = np.empty(len(order), dtype=np.int64)
    relabel[order] = np.arange(len(order))
    return relabel[np.searchsorted(np.unique(comp), comp)]


def scc(D: Digraph) -> SccResult:
    """Strongly connected components (iterative Tarjan), numbered by first vertex."""
    n = len(D)
    if n == 0:
        return SccResult(np.zeros(0, dtype=np.int64), 0, True, True)
    if D.orbit_rep is not None and all((bfs_distances(D, int(r)) >= 0).all() for r in D.reps()):
        # every orbit representative reaches everything, hence so does every vertex
        return SccResult(np.zeros(n, dtype=np.int64), 1, True, D.degenerate)
    comp = _canonical(_tarjan(D))
    count = int(comp.max()) + 1
    return SccResult(comp, count, count <= 1, D.degenerate)


# -- eccentricities and diameter -------------------------------------------------


@dataclass(frozen=True)
class DiameterResult:
    diameter: float | int
    witness_pair: tuple[int, int] | None
    eccentricities: np.ndarray  # -1 where some vertex is unreachable
    degenerate: bool

    @property
    def finite(self) -> bool:
        return self.diameter != INFINITE


def _rep_distances(D: Digraph, jobs: int = 1) -> dict[int, np.ndarray]:
    reps = [int(r) for r in D.reps()]
    if jobs > 1 and len(reps) > 1:
        with ThreadPoolExecutor(max_workers=jobs) as pool:
            dists = list(pool.map(lambda r: bfs_distances(D, r), reps))
    else:
        dists = [bfs_distances(D, r) for r in reps]
    return dict(zip(reps, dists))


def _spread(D: Digraph, per_rep: dict[int, int]) -> np.ndarray:
    if D.orbit_rep is None:
        return np.array([per_rep[i] for i in range(len(D))], dtype=np.int64)
    lut = np.zeros(len(D), dtype=np.int64)
    for r, v in per_rep.items():
        lut[r] = v
    return lut[D.orbit_rep]


def diameter(D: Digraph, jobs: int = 1) -> DiameterResult:
    """Exact directed diameter over ordered pairs of distinct vertices.

    Not strongly connected gives ``INFINITE``; graphs with at most one vertex
    have diameter 0 and are flagged degenerate.
    """
    n = len(D)
    if n <= 1:
        return DiameterResult(0, None, np.zeros(n, dtype=np.int64), True)
    dists = _rep_distances(D, jobs)
    ecc = _spread(D, {r: (-1 if (d < 0).any() else int(d.max())) for r, d in dists.items()})
    if (ecc < 0).any():
        return DiameterResult(INFINITE, None, ecc, False)
    best = int(ecc.max())
    src = int(np.flatnonzero(ecc == best)[0])
    if src not in dists:
        src = int(D.orbit_rep[src])
    tgt = int(np.flatnonzero(dists[src] == best)[0])
    return DiameterResult(best, (src, tgt), ecc, False)


def eccentricities_within_components(D: Digraph, jobs: int = 1) -> np.ndarray:
    """Largest finite distance from each vertex (its eccentricity inside its component
    when ``D`` is symmetric)."""
    dists = _rep_distances(D, jobs)
    return _spread(D, {r: int(d.max()) for r, d in dists.items()})


# -- undirected views -----------------------------------------------------------


def _require_symmetric(D: Digraph):
    if not D.symmetric:
        dense = D.dense()
        if not (dense == dense.T).all():
            raise ValueError("undirected analysis needs a symmetric graph")


def undirected_components(D: Digraph) -> list[np.ndarray]:
    """Connected components of a symmetric graph (vertex indices, ordered by first vertex)."""
    _require_symmetric(D)
    n = len(D)
    seen = np.zeros(n, dtype=bool)
    comps = []
    for v in range(n):
        if seen[v]:
            continue
        members = np.flatnonzero(bfs_distances(D, v) >= 0)
        seen[members] = True
        comps.append(members)
    return comps


def component_diameter(D: Digraph, comp, ecc: np.ndarray | None = None) -> int:
    """Diameter of one connected component of a symmetric graph."""
    _require_symmetric(D)
    comp = np.asarray(comp)
    if ecc is None:
        return max((int(bfs_distances(D, int(v))[comp].max()) for v in comp), default=0)
    return int(ecc[comp].max()) if len(comp) else 0


# -- DOT ---------------------------------------------------------------------------


def export_dot(D: Digraph, labels=None, name: str = "G") -> str:
    """Deterministic DOT text.  ``labels`` maps a vertex index to its label."""
    sym = D.symmetric
    head = "graph" if sym else "digraph"
    op = "--" if sym else "->"
    lines = [f'{head} "{name}" {{']
    for i, vid in enumerate(D.vertex_ids.tolist()):
        label = labels(i) if labels else str(vid)
        lines.append(f'  {vid} [label="{label}"];')
    for i, j in D.arcs():
        if sym and j < i:
            continue
        lines.append(f"  {D.vertex_ids[i]} {op} {D.vertex_ids[j]};")
    lines.append("}")
    return "\n".join(lines) + "\n"


_NODE = re.compile(r'^\s*(\d+)\s*\[label="([^"]*)"\];\s*$')
_EDGE = re.compile(r"^\s*(\d+)\s*(->|--)\s*(\d+);\s*$")


def parse_dot(text: str) -> tuple[dict[int, str], set[tuple[int, int]], bool]:
    """Read back what :func:`export_dot` writes: (labels, arcs, symmetric)."""
    lines = text.strip().splitlines()
    if not lines or not re.match(r'^(di)?graph "[^"]*" \{$', lines[0]) or lines[-1] != "}":
        raise ValueError("not a DOT document produced by export_dot")
    symmetric = lines[0].startswith("graph")
    nodes: dict[int, str] = {}
    arcs: set[tuple[int, int]] = set()
    for ln in lines[1:-1]:
        if m := _NODE.match(ln):
            nodes[int(m[1])] = m[2]
        elif m := _EDGE.match(ln):
            a, b = int(m[1]), int(m[3])
            arcs.add((a, b))
            if symmetric:
                arcs.add((b, a))
        else:
            raise ValueError(f"unrecognised DOT line: {ln!r}")
    return nodes, arcs, symmetric
