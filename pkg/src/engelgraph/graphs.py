"""Engel graphs, commuting graphs and prime graphs of enumerated groups.

Arc ``x -> y`` means ``[x,_n y] = 1`` for some ``n >= 1``.  Every vertex set
used here is a union of conjugacy classes and every relation is invariant
under simultaneous conjugation, so graphs carry class representatives as
orbit representatives (see :mod:`engelgraph.digraph`).
"""

from __future__ import annotations

import os
import weakref
from dataclasses import dataclass

import numpy as np
from sympy.utilities.iterables import partitions

from .digraph import Digraph, bfs_distances, pack_rows, scc, transpose_bits
from .group import Group, centralizer, p_part, prime_factors
from .perm import Permutation, commutator
from .structure import center, hypercenter
from .words import NO_ARC, commuting_matrix, depth_matrix, depths_into

DEFAULT_BUDGET = 20_000_000
GAMMA_N_CAP = 10
DENSE_LIMIT = 12_000


class BudgetError(RuntimeError):
    def __init__(self, kind: str, required: int, budget: int):
        super().__init__(f"{kind} needs {required} arc tests but the budget is {budget} "
                         f"(raise it with --budget or ENGELGRAPH_BUDGET)")
        self.required = required
        self.budget = budget


def default_budget() -> int:
    raw = os.environ.get("ENGELGRAPH_BUDGET")
    if raw is None:
        return DEFAULT_BUDGET
    try:
        value = int(raw)
    except ValueError:
        raise ValueError(f"ENGELGRAPH_BUDGET must be an integer, got {raw!r}") from None
    if value < 0:
        raise ValueError("ENGELGRAPH_BUDGET must be non-negative")
    return value


# -- cached relations ------------------------------------------------------------

_depth_cache: "weakref.WeakKeyDictionary[Group, np.ndarray]" = weakref.WeakKeyDictionary()
_comm_cache: "weakref.WeakKeyDictionary[Group, np.ndarray]" = weakref.WeakKeyDictionary()


def engel_depths(G: Group) -> np.ndarray:
    """``D[x, y]``: least ``n`` with ``[x,_n y] = 1``, or ``-1`` (cached per group)."""
    if len(G) > DENSE_LIMIT:
        raise MemoryError(f"{G.name}: a full depth table of order {len(G)} is too large")
    if G not in _depth_cache:
        D = depth_matrix(G)
        D.setflags(write=False)
        _depth_cache[G] = D
    return _depth_cache[G]


def commutes(G: Group) -> np.ndarray:
    if G not in _comm_cache:
        C = commuting_matrix(G)
        C.setflags(write=False)
        _comm_cache[G] = C
    return _comm_cache[G]


def _conjugation_forest(G: Group, roots) -> tuple[np.ndarray, np.ndarray]:
    """Spanning forest of the generator-conjugation action: ``parent[z]`` and
    the generator index with ``z = conj_maps[k][parent[z]]``."""
    n = len(G)
    parent = np.full(n, -1, dtype=np.int64)
    via = np.full(n, -1, dtype=np.int64)
    done = np.zeros(n, dtype=bool)
    frontier = np.asarray(roots, dtype=np.int64)
    done[frontier] = True
    while len(frontier):
        nxt = []
        for k, cmap in enumerate(G.conj_maps):
            z = cmap[frontier]
            fresh = ~done[z]
            z, src = z[fresh], frontier[fresh]
            z, first = np.unique(z, return_index=True)
            done[z] = True
            parent[z], via[z] = src[first], k
            nxt.append(z)
        frontier = np.concatenate(nxt) if nxt else np.zeros(0, dtype=np.int64)
    return parent, via


def _arc_rows_packed(G: Group, keep: np.ndarray) -> np.ndarray:
    """Packed out-rows of the Engel relation restricted to ``keep``, built from
    class representatives without a full depth table.

    In-columns are cheap (one evaluation of ``x -> [x, y]`` plus a backwards
    walk), so the reversed relation is assembled first and then transposed.
    ``col(y^g)[z] = col(y)[z^(g^-1)]``; columns are pushed down a spanning
    forest depth-first so only a path's worth of full columns is alive at once.
    """
    n = len(G)
    pos = np.full(n, -1, dtype=np.int64)
    pos[keep] = np.arange(len(keep))
    out = np.zeros((len(keep), (len(keep) + 7) // 8), dtype=np.uint8)
    inverse_maps = [np.argsort(c) for c in G.conj_maps]
    roots = [int(r) for r in G.class_reps if pos[r] >= 0]
    parent, via = _conjugation_forest(G, roots)
    order = np.argsort(parent, kind="stable")
    starts = np.searchsorted(parent[order], np.arange(n))
    ends = np.searchsorted(parent[order], np.arange(n), side="right")
    for r in roots:
        stack = [(r, depths_into(G, r) != NO_ARC)]
        while stack:
            x, row = stack.pop()
            out[pos[x]] = np.packbits(row[keep], bitorder="little")
            for z in order[starts[x]:ends[x]]:
                stack.append((int(z), row[inverse_maps[via[z]]]))
    out = transpose_bits(out, len(keep))
    for i in range(len(keep)):  # no self-loops
        out[i, i >> 3] &= np.uint8(~(1 << (i & 7)) & 0xFF)
    return out


def _orbit_reps(G: Group, keep: np.ndarray) -> np.ndarray:
    reps = G.class_reps[G.class_of[keep]]
    return np.searchsorted(keep, reps)


def _check_budget(kind: str, nv: int, budget: int | None):
    budget = default_budget() if budget is None else budget
    if nv * nv > budget:
        raise BudgetError(kind, nv * nv, budget)


def _engel_graph(G: Group, keep_mask: np.ndarray, kind: str, budget, max_depth=None) -> Digraph:
    keep = np.flatnonzero(keep_mask)
    _check_budget(kind, len(keep), budget)
    orbit = _orbit_reps(G, keep)
    if len(G) > DENSE_LIMIT:
        if max_depth is not None:
            raise MemoryError(f"{kind} on a group of order {len(G)} is not supported")
        bits = _arc_rows_packed(G, keep)
        return Digraph(keep, bits, kind, orbit)
    D = engel_depths(G)[np.ix_(keep, keep)]
    adj = D != NO_ARC if max_depth is None else (D != NO_ARC) & (D <= max_depth)
    return Digraph.from_dense(keep, adj, kind, orbit)


# -- vertex sets -----------------------------------------------------------------


def engel_class_In(G: Group, n: int) -> np.ndarray:
    """Ids of ``x`` with ``[x,_n y] = [y,_n x] = 1`` for every ``y``."""
    if n < 1:
        raise ValueError("n must be at least 1")
    D = engel_depths(G)
    ok = (D != NO_ARC) & (D <= n)
    return np.flatnonzero(ok.all(axis=1) & ok.all(axis=0))


def _complement_mask(n: int, ids) -> np.ndarray:
    mask = np.ones(n, dtype=bool)
    mask[np.asarray(ids, dtype=np.intp)] = False
    return mask


# -- builders -------------------------------------------------------------------


def build_lambda(G: Group, budget: int | None = None) -> Digraph:
    return _engel_graph(G, np.ones(len(G), dtype=bool), "Lambda", budget)


def build_delta(G: Group, budget: int | None = None) -> Digraph:
    return _engel_graph(G, _complement_mask(len(G), [0]), "Delta", budget)


def build_gamma(G: Group, budget: int | None = None) -> Digraph:
    """Engel graph on the non-hypercentral elements."""
    return _engel_graph(G, _complement_mask(len(G), hypercenter(G).members), "Gamma", budget)


def build_gamma_n(G: Group, n: int, budget: int | None = None) -> Digraph:
    if not 1 <= n <= GAMMA_N_CAP:
        raise ValueError(f"n must lie in 1..{GAMMA_N_CAP}")
    mask = _complement_mask(len(G), engel_class_In(G, n))
    return _engel_graph(G, mask, f"GammaN({n})", budget, max_depth=n)


def build_commuting(G: Group, budget: int | None = None) -> Digraph:
    keep = np.flatnonzero(_complement_mask(len(G), center(G).members))
    _check_budget("Commuting", len(keep), budget)
    adj = commutes(G)[np.ix_(keep, keep)]
    return Digraph.from_dense(keep, adj, "Commuting", _orbit_reps(G, keep), symmetric=True)


BUILDERS = {
    "gamma": build_gamma,
    "delta": build_delta,
    "lambda": build_lambda,
    "commuting": build_commuting,
}


def build_kind(G: Group, kind: str, budget: int | None = None) -> Digraph:
    """Builder by CLI name: gamma, delta, lambda, commuting or gamma_n:<n>."""
    if kind.startswith("gamma_n:"):
        try:
            n = int(kind.split(":", 1)[1])
        except ValueError:
            raise ValueError(f"bad graph kind {kind!r}") from None
        return build_gamma_n(G, n, budget)
    if kind not in BUILDERS:
        raise ValueError(f"unknown graph kind {kind!r}")
    return BUILDERS[kind](G, budget)


def class_graph(G: Group, keep_mask: np.ndarray | None = None) -> Digraph:
    """Engel relation between conjugacy classes: ``A -> B`` when some member
    of ``A`` has an arc to the representative of ``B`` (equivalently, by
    conjugation, to some member of ``B``).

    A vertex can only reach elements whose classes it reaches here, so a
    class graph that is not strongly connected certifies the same for the
    element graph.  Costs one column per class.
    """
    if keep_mask is None:
        keep_mask = _complement_mask(len(G), hypercenter(G).members)
    reps = [int(r) for r in G.class_reps if keep_mask[r]]
    index = {int(G.class_of[r]): i for i, r in enumerate(reps)}
    adj = np.zeros((len(reps), len(reps)), dtype=bool)
    for j, r in enumerate(reps):
        col = (depths_into(G, r) != NO_ARC) & keep_mask
        col[r] = False
        for cls in np.unique(G.class_of[col]):
            adj[index[int(cls)], j] = True
    np.fill_diagonal(adj, False)
    return Digraph(np.array(reps), pack_rows(adj), "ClassGraph")


@dataclass(frozen=True)
class DisconnectionCertificate:
    source_class_rep: int
    unreachable_class_rep: int
    class_count: int


def disconnection_certificate(G: Group) -> DisconnectionCertificate | None:
    """Two classes with no directed path between them in :func:`class_graph`, or ``None``."""
    C = class_graph(G)
    for i in range(len(C)):
        dist = bfs_distances(C, i)
        missing = np.flatnonzero(dist < 0)
        if len(missing):
            return DisconnectionCertificate(int(C.vertex_ids[i]), int(C.vertex_ids[missing[0]]), len(C))
    return None


def class_graph_strongly_connected(G: Group) -> bool:
    return scc(class_graph(G)).is_strongly_connected


# -- prime graph ------------------------------------------------------------------


@dataclass(frozen=True)
class PrimeGraph:
    primes: tuple[int, ...]
    edges: tuple[tuple[int, int], ...]
    components: tuple[tuple[int, ...], ...]

    @property
    def pi1(self) -> tuple[int, ...]:
        """The component containing 2 (empty for odd order)."""
        return next((c for c in self.components if 2 in c), ())

    def component_of(self, p: int) -> tuple[int, ...]:
        return next(c for c in self.components if p in c)


def prime_graph_from_orders(group_order: int, element_orders) -> PrimeGraph:
    primes = prime_factors(group_order)
    parent = {p: p for p in primes}

    def find(p):
        while parent[p] != p:
            parent[p] = parent[parent[p]]
            p = parent[p]
        return p

    edges = set()
    for o in sorted(set(int(o) for o in element_orders)):
        ps = prime_factors(o)
        for i, r in enumerate(ps):
            for s in ps[i + 1 :]:
                edges.add((r, s))
                parent[find(r)] = find(s)
    groups: dict[int, list[int]] = {}
    for p in primes:
        groups.setdefault(find(p), []).append(p)
    comps = tuple(sorted(tuple(sorted(c)) for c in groups.values()))
    return PrimeGraph(tuple(primes), tuple(sorted(edges)), comps)


def build_prime_graph(G: Group) -> PrimeGraph:
    return prime_graph_from_orders(len(G), np.unique(G.element_orders))


def alternating_element_orders(n: int) -> set[int]:
    """Orders of even permutations of degree ``n``, from cycle types."""
    from math import lcm

    orders = set()
    for part in partitions(n):
        even_cycles = sum(m for k, m in part.items() if k % 2 == 0)
        if even_cycles % 2 == 0:
            orders.add(lcm(*part.keys()))
    return orders


def alternating_prime_graph(n: int) -> PrimeGraph:
    from math import factorial

    return prime_graph_from_orders(factorial(n) // 2, alternating_element_orders(n))


# -- commuting components and Hall subgroups ---------------------------------------


@dataclass(frozen=True)
class OddComponent:
    """A commuting-graph component without elements of even order."""

    members: tuple[int, ...]
    primes: tuple[int, ...]
    is_clique: bool
    closes_to_subgroup: bool
    is_abelian: bool
    is_hall: bool
    prime_component: bool

    @property
    def isolated_hall_clique(self) -> bool:
        return self.is_clique and self.closes_to_subgroup and self.is_abelian and self.is_hall and self.prime_component


def odd_commuting_components(G: Group, comps: list[np.ndarray] | None = None,
                             D: Digraph | None = None) -> list[OddComponent]:
    from .digraph import undirected_components

    if D is None:
        D = build_commuting(G)
    if comps is None:
        comps = undirected_components(D)
    pg = build_prime_graph(G)
    C = commutes(G)
    out = []
    for comp in comps:
        ids = D.vertex_ids[comp]
        orders = G.element_orders[ids]
        if (orders % 2 == 0).any():
            continue
        primes = tuple(sorted({p for o in np.unique(orders) for p in prime_factors(int(o))}))
        with_one = np.concatenate([[0], ids])
        sub = C[np.ix_(ids, ids)]
        closed = np.isin(np.asarray(G.mul(with_one[:, None], with_one[None, :])), with_one).all()
        hall = 1
        for p in primes:
            hall *= p_part(len(G), p)
        out.append(OddComponent(
            members=tuple(int(i) for i in ids),
            primes=primes,
            is_clique=bool(sub.all()),
            closes_to_subgroup=bool(closed),
            is_abelian=bool(sub.all()),
            is_hall=len(with_one) == hall,
            prime_component=primes in pg.components,
        ))
    return out


def hall_clique_check(G: Group, p: int) -> OddComponent:
    """Targeted version for large groups: the commuting component of an element
    of odd prime order ``p``, grown through centralizers."""
    start = int(np.flatnonzero(G.element_orders == p)[0])
    comp = {start}
    frontier = [start]
    while frontier:
        x = frontier.pop()
        for y in centralizer(G, [x]).members[1:]:
            y = int(y)
            if y not in comp:
                comp.add(y)
                frontier.append(y)
    ids = np.array(sorted(comp))
    if (G.element_orders[ids] % 2 == 0).any():
        raise ValueError(f"the component of an element of order {p} contains involutions")
    primes = tuple(sorted({q for o in np.unique(G.element_orders[ids]) for q in prime_factors(int(o))}))
    with_one = np.concatenate([[0], ids])
    prod = np.asarray(G.mul(with_one[:, None], with_one[None, :]))
    abelian = bool((prod == prod.T).all())
    hall = 1
    for q in primes:
        hall *= p_part(len(G), q)
    return OddComponent(tuple(int(i) for i in ids), primes, abelian, bool(np.isin(prod, with_one).all()),
                        abelian, len(with_one) == hall, primes in build_prime_graph(G).components)


# -- the alternating commutator identity ------------------------------------------


@dataclass(frozen=True)
class AltIdentityResult:
    p: int
    commutator: str
    expected: str
    identity_holds: bool
    second_engel_is_identity: bool

    @property
    def holds(self) -> bool:
        return self.identity_holds and self.second_engel_is_identity


def alt_identity_check(p: int) -> AltIdentityResult:
    """``[(1,3,5), (1,...,p)] = (1,5,3)(2,4,6)`` and ``[x,_2 (1,3,5)] = 1`` for the p-cycle x."""
    if p < 7 or p > 23 or prime_factors(p) != [p]:
        raise ValueError("p must be a prime with 7 <= p <= 23")
    a = Permutation.from_cycles("(1,3,5)", p)
    x = Permutation.from_cycles("(" + ",".join(str(i) for i in range(1, p + 1)) + ")", p)
    c = commutator(a, x)
    expected = Permutation.from_cycles("(1,5,3)(2,4,6)", p)
    w = commutator(x, a)
    second = commutator(w, a)
    return AltIdentityResult(p, c.to_cycles(), expected.to_cycles(), c == expected, second.is_identity())
