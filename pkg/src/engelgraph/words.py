"""Engel words ``[x,_n y]`` evaluated on group ids.

``[x,_0 y] = x`` and ``[x,_{k+1} y] = [[x,_k y], y]``.  The *depth* of a pair
is the least ``n >= 1`` with ``[x,_n y] = 1``; pairs that never reach the
identity have depth ``-1``.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

import numpy as np

from .group import Group

NO_ARC = -1


@dataclass(frozen=True)
class EngelTrace:
    source: int
    target: int
    sequence: tuple[int, ...]
    reaches_identity: bool
    depth: int | None = None
    cycle_start: int | None = None
    cycle_length: int | None = None


def engel_trace(G: Group, x: int, y: int) -> EngelTrace:
    """Iterate ``a -> [a, y]`` from ``x`` until the identity or a repeat."""
    x, y = int(x), int(y)
    seq = [x]
    seen = {x: 0}
    a = x
    while True:
        a = int(G.comm(a, y))
        if a == 0:
            seq.append(a)
            return EngelTrace(x, y, tuple(seq), True, depth=max(1, len(seq) - 1))
        if a in seen:
            start = seen[a]
            return EngelTrace(x, y, tuple(seq), False, cycle_start=start, cycle_length=len(seq) - start)
        seen[a] = len(seq)
        seq.append(a)


def arc_depth(G: Group, x: int, y: int) -> int | None:
    return engel_trace(G, x, y).depth


def is_arc(G: Group, x: int, y: int) -> bool:
    return engel_trace(G, x, y).reaches_identity


def engel_step_map(G: Group, y: int) -> np.ndarray:
    """The map ``x -> [x, y]`` on all ids."""
    xs = np.arange(len(G))
    return np.asarray(G.comm(xs, y), dtype=np.intp)


def depths_into(G: Group, y: int) -> np.ndarray:
    """Depth of ``x -> y`` for every source ``x``.

    Walks the functional graph of ``x -> [x, y]`` backwards from the identity.
    """
    f = engel_step_map(G, y)
    depth = np.full(len(G), NO_ARC, dtype=np.int32)
    level = f == 0
    depth[level] = 1
    k = 1
    while level.any():
        k += 1
        level = level[f] & (depth == NO_ARC)
        depth[level] = k
    return depth


def pair_depths(G: Group, xs, ys) -> np.ndarray:
    """Depth for each pair ``(xs[i], ys[i])``, iterating all pairs together.

    Cycles are detected per pair with Brent's method, so no bound on the
    depth is assumed.
    """
    xs, ys = np.broadcast_arrays(np.asarray(xs, dtype=np.intp), np.asarray(ys, dtype=np.intp))
    shape = xs.shape
    xs, ys = xs.ravel().copy(), ys.ravel().copy()
    depth = np.full(len(xs), NO_ARC, dtype=np.int32)
    depth[xs == 0] = 1
    active = np.flatnonzero(xs != 0)
    cur = xs[active]
    yv = ys[active]
    tortoise = cur.copy()
    power = np.ones(len(active), dtype=np.int64)
    lam = np.zeros(len(active), dtype=np.int64)
    step = 0
    while len(active):
        cur = np.asarray(G.comm(cur, yv), dtype=np.intp)
        step += 1
        lam += 1
        hit = cur == 0
        depth[active[hit]] = step
        stop = hit | (cur == tortoise)
        reset = ~stop & (lam == power)
        tortoise[reset] = cur[reset]
        power[reset] *= 2
        lam[reset] = 0
        keep = ~stop
        active, cur, yv = active[keep], cur[keep], yv[keep]
        tortoise, power, lam = tortoise[keep], power[keep], lam[keep]
    return depth.reshape(shape)


def depths_from(G: Group, x: int) -> np.ndarray:
    """Depth of ``x -> y`` for every target ``y``."""
    return pair_depths(G, np.full(len(G), int(x)), np.arange(len(G)))


def class_relation_matrix(G: Group, column: Callable[[int], np.ndarray], dtype) -> np.ndarray:
    """``R[y, x] = column(y)[x]`` for a conjugation-invariant relation.

    Columns are evaluated only at class representatives; the others follow
    from ``R[g^-1 y g, x] = R[y, g x g^-1]``.
    """
    n = len(G)
    out = np.empty((n, n), dtype=dtype)
    done = np.zeros(n, dtype=bool)
    inverse_maps = [np.argsort(c) for c in G.conj_maps]
    queue: list[int] = []
    for r in G.class_reps:
        r = int(r)
        out[r] = column(r)
        done[r] = True
        queue.append(r)
    head = 0
    while head < len(queue):
        y = queue[head]
        head += 1
        for cmap, cinv in zip(G.conj_maps, inverse_maps):
            z = int(cmap[y])
            if not done[z]:
                out[z] = out[y][cinv]
                done[z] = True
                queue.append(z)
    return out


def depth_matrix(G: Group, use_classes: bool = True) -> np.ndarray:
    """``D[x, y]`` = depth of the pair ``(x, y)`` for all of ``G``, ``-1`` if none."""
    dtype = np.int16 if len(G) < 2**15 else np.int32
    if use_classes:
        return class_relation_matrix(G, lambda y: depths_into(G, y), dtype).T
    return np.stack([depths_into(G, y) for y in range(len(G))]).astype(dtype).T


def commuting_matrix(G: Group) -> np.ndarray:
    all_ids = np.arange(len(G))

    def column(y: int) -> np.ndarray:
        return np.asarray(G.mul(all_ids, y)) == np.asarray(G.mul(y, all_ids))

    return class_relation_matrix(G, column, bool)


def left_engel_mask(G: Group) -> np.ndarray:
    """Elements ``y`` with ``x -> y`` for every ``x`` (evaluated per class)."""
    rep_ok = np.array([bool((depths_into(G, int(r)) != NO_ARC).all()) for r in G.class_reps])
    return rep_ok[G.class_of]


def right_engel_mask(G: Group) -> np.ndarray:
    """Elements ``x`` with ``x -> y`` for every ``y`` (evaluated per class)."""
    rep_ok = np.array([bool((depths_from(G, int(r)) != NO_ARC).all()) for r in G.class_reps])
    return rep_ok[G.class_of]
