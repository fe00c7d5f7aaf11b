"""Finite permutation groups held as a fully enumerated element table.

Every element gets an integer id (id 0 is the identity).  All group
computations in the package work on ids; products of ids go through a
Cayley table when the group is small and through a base-image index
otherwise.
"""

from __future__ import annotations

from functools import cached_property
from typing import Iterable, Sequence

import numpy as np
from scipy.sparse import coo_matrix
from scipy.sparse.csgraph import connected_components

from .perm import Permutation, order as perm_order

DEFAULT_CLOSURE_LIMIT = 200_000
TABLE_LIMIT = 4096


class ClosureLimitError(ValueError):
    pass


def _perm_dtype(degree: int):
    return np.int16 if degree < 2**15 else np.int32


def _id_dtype(n: int):
    return np.int16 if n < 2**15 else np.int32


class Group:
    """A permutation group with every element enumerated.

    ``perms`` is an ``(order, degree)`` array of image rows; row 0 is the
    identity.  The constructor trusts that the rows form a group; use
    :func:`enumerate_group` to build one from generators.
    """

    def __init__(self, perms: np.ndarray, generators: Sequence[Permutation], name: str = "G",
                 table_limit: int = TABLE_LIMIT):
        perms = np.ascontiguousarray(perms, dtype=_perm_dtype(perms.shape[1]))
        if not np.array_equal(perms[0], np.arange(perms.shape[1])):
            raise ValueError("row 0 must be the identity")
        self.perms = perms
        self.perms.setflags(write=False)
        self.generators = list(generators)
        self.name = name
        self.degree = int(perms.shape[1])
        self._build_index()
        self.table = self._build_table() if len(self) <= table_limit else None
        self.inv = self._lookup(np.argsort(perms, axis=1)[:, self._base])
        self.inv.setflags(write=False)

    def __len__(self) -> int:
        return self.perms.shape[0]

    @property
    def order(self) -> int:
        return len(self)

    def __repr__(self) -> str:
        return f"Group({self.name!r}, order={len(self)}, degree={self.degree})"

    # -- element index -------------------------------------------------

    def _build_index(self) -> None:
        n, deg = self.perms.shape
        base: list[int] = []
        keys = np.zeros(n, dtype=np.int64)
        distinct = 1
        for pt in range(deg):
            if distinct == n:
                break
            if deg ** (len(base) + 1) >= 2**62:
                raise ValueError(f"cannot index group {self.name}: base keys overflow")
            trial = keys * deg + self.perms[:, pt]
            count = len(np.unique(trial))
            if count > distinct:
                base.append(pt)
                keys, distinct = trial, count
        if distinct != n:
            raise ValueError(f"duplicate elements in group table of {self.name}")
        self._base = np.array(base, dtype=np.intp)
        self._radix = (deg ** np.arange(len(base))[::-1]).astype(np.int64)
        order = np.argsort(keys, kind="stable")
        self._sorted_keys = keys[order]
        self._key_order = order.astype(_id_dtype(n))

    def _lookup(self, base_images: np.ndarray) -> np.ndarray:
        """Ids of the elements whose images on the base are ``base_images``."""
        keys = base_images.astype(np.int64) @ self._radix
        pos = np.searchsorted(self._sorted_keys, keys)
        pos = np.minimum(pos, len(self._sorted_keys) - 1)
        if not np.array_equal(self._sorted_keys[pos], keys):
            raise KeyError("permutation not in group")
        return self._key_order[pos]

    def _mul_slow(self, a: np.ndarray, b: np.ndarray) -> np.ndarray:
        pa = self.perms[a][:, self._base]
        pb = self.perms[b]
        return self._lookup(np.take_along_axis(pb, pa.astype(np.intp), axis=1))

    def _build_table(self) -> np.ndarray:
        n = len(self)
        table = np.empty((n, n), dtype=_id_dtype(n))
        all_ids = np.arange(n)
        for i in range(n):
            table[i] = self._mul_slow(np.full(n, i), all_ids)
        table.setflags(write=False)
        return table

    def index(self, p: Permutation | Sequence[int]) -> int:
        images = np.asarray(p.images if isinstance(p, Permutation) else p)
        if images.shape != (self.degree,):
            raise ValueError("degree mismatch")
        idx = int(self._lookup(images[self._base][None, :])[0])
        if not np.array_equal(self.perms[idx], images):
            raise KeyError("permutation not in group")
        return idx

    def element(self, i: int) -> Permutation:
        return Permutation.from_images(self.perms[i].tolist())

    def label(self, i: int) -> str:
        return self.element(i).to_cycles()

    # -- arithmetic on ids ----------------------------------------------

    def mul(self, a, b):
        """Id of the product ``a*b`` (``a`` applied first); broadcasts over arrays."""
        if self.table is not None:
            return self.table[a, b]
        a_arr, b_arr = np.broadcast_arrays(np.asarray(a), np.asarray(b))
        shape = a_arr.shape
        out = self._mul_slow(a_arr.ravel(), b_arr.ravel()).reshape(shape)
        return out if shape else out[()]

    def conj(self, x, g):
        """``g^-1 x g``."""
        return self.mul(self.mul(self.inv[g], x), g)

    def comm(self, a, b):
        """``a^-1 b^-1 a b``."""
        return self.mul(self.mul(self.inv[a], self.inv[b]), self.mul(a, b))

    def power(self, x: int, k: int) -> int:
        if k < 0:
            x, k = int(self.inv[x]), -k
        result, base = 0, x
        while k:
            if k & 1:
                result = int(self.mul(result, base))
            base = int(self.mul(base, base))
            k >>= 1
        return result

    # -- cached structure -------------------------------------------------

    @cached_property
    def gen_ids(self) -> np.ndarray:
        return np.array(sorted({self.index(g) for g in self.generators}), dtype=np.intp)

    @cached_property
    def conj_maps(self) -> list[np.ndarray]:
        """For each generator ``g``, the id map ``x -> g^-1 x g``."""
        all_ids = np.arange(len(self))
        return [np.asarray(self.conj(all_ids, g)) for g in self.gen_ids]

    @cached_property
    def class_of(self) -> np.ndarray:
        """Conjugacy class index per element; classes numbered by smallest member id."""
        n = len(self)
        if len(self.gen_ids) == 0:
            return np.zeros(n, dtype=np.intp)
        rows = np.concatenate([np.arange(n)] * len(self.conj_maps))
        cols = np.concatenate(self.conj_maps)
        graph = coo_matrix((np.ones(len(rows), dtype=np.int8), (rows, cols)), shape=(n, n))
        _, labels = connected_components(graph, directed=True, connection="weak")
        first = np.full(labels.max() + 1, n, dtype=np.intp)
        np.minimum.at(first, labels, np.arange(n))
        rank = np.empty_like(first)
        rank[np.argsort(first)] = np.arange(len(first))
        return rank[labels]

    @cached_property
    def class_reps(self) -> np.ndarray:
        """Smallest id in each conjugacy class, in class order."""
        reps = np.full(self.class_of.max() + 1, len(self), dtype=np.intp)
        np.minimum.at(reps, self.class_of, np.arange(len(self)))
        return reps

    @cached_property
    def element_orders(self) -> np.ndarray:
        rep_orders = np.array([perm_order(self.element(int(r))) for r in self.class_reps])
        return rep_orders[self.class_of]

    def is_abelian(self) -> bool:
        gens = self.gen_ids
        return all(int(self.comm(a, b)) == 0 for a in gens for b in gens)


# ---------------------------------------------------------------------------
# construction


def enumerate_group(gens: Sequence[Permutation], name: str = "G",
                    limit: int = DEFAULT_CLOSURE_LIMIT, table_limit: int = TABLE_LIMIT) -> Group:
    """Breadth-first closure of ``gens`` under right multiplication."""
    if not gens:
        raise ValueError("empty generator list")
    degree = gens[0].degree
    if any(g.degree != degree for g in gens):
        raise ValueError("generators have different degrees")
    dtype = _perm_dtype(degree)
    gen_arrays = [np.array(g.images, dtype=dtype) for g in gens]
    ident = np.arange(degree, dtype=dtype)
    seen = {ident.tobytes()}
    rows = [ident[None, :]]
    frontier = ident[None, :]
    total = 1
    while len(frontier):
        fresh = []
        for g in gen_arrays:
            for row in g[frontier]:
                key = row.tobytes()
                if key not in seen:
                    seen.add(key)
                    fresh.append(row)
        total += len(fresh)
        if total > limit:
            raise ClosureLimitError(f"closure limit exceeded ({limit}) while enumerating {name}")
        if not fresh:
            break
        frontier = np.array(fresh, dtype=dtype)
        rows.append(frontier)
    return Group(np.concatenate(rows), gens, name=name, table_limit=table_limit)


def group_from_ids(G: Group, ids: Iterable[int], name: str | None = None) -> tuple[Group, np.ndarray]:
    """A subgroup of ``G`` as a standalone :class:`Group`.

    Returns the group and the array mapping its ids to ids of ``G``.
    """
    members = np.unique(np.asarray(list(ids) if not isinstance(ids, np.ndarray) else ids))
    if members[0] != 0:
        raise ValueError("subgroup must contain the identity")
    gens = [G.element(int(g)) for g in Subgroup(G, members).gens]
    if not gens:
        gens = [G.element(0)]
    H = Group(G.perms[members], gens, name=name or f"sub({G.name})")
    return H, members


# ---------------------------------------------------------------------------
# subgroups


class Subgroup:
    """A subgroup of ``parent`` given by its sorted member ids."""

    def __init__(self, parent: Group, members):
        self.parent = parent
        self.members = np.unique(np.asarray(members, dtype=np.intp))
        self.members.setflags(write=False)

    @classmethod
    def from_mask(cls, parent: Group, mask: np.ndarray) -> Subgroup:
        return cls(parent, np.flatnonzero(mask))

    def __len__(self) -> int:
        return len(self.members)

    @property
    def order(self) -> int:
        return len(self.members)

    def __contains__(self, x) -> bool:
        return bool(self.mask[int(x)])

    def __eq__(self, other) -> bool:
        if not isinstance(other, Subgroup):
            return NotImplemented
        return other.parent is self.parent and np.array_equal(self.members, other.members)

    def __hash__(self):
        return hash((id(self.parent), self.members.tobytes()))

    def __repr__(self) -> str:
        return f"Subgroup(order={len(self)} in {self.parent.name})"

    @cached_property
    def mask(self) -> np.ndarray:
        m = np.zeros(len(self.parent), dtype=bool)
        m[self.members] = True
        m.setflags(write=False)
        return m

    def issubset(self, other: Subgroup) -> bool:
        return bool(other.mask[self.members].all())

    def is_trivial(self) -> bool:
        return len(self.members) == 1

    @cached_property
    def gens(self) -> np.ndarray:
        """A small generating set, chosen greedily by increasing id."""
        G = self.parent
        mask = np.zeros(len(G), dtype=bool)
        mask[0] = True
        gens: list[int] = []
        while True:
            missing = self.members[~mask[self.members]]
            if len(missing) == 0:
                return np.array(gens, dtype=np.intp)
            gens.append(int(missing[0]))
            _extend_closure(G, mask, np.array(gens, dtype=np.intp))

    def is_normal(self) -> bool:
        G = self.parent
        for g in G.gen_ids:
            if not self.mask[G.conj(self.gens, g)].all():
                return False
        return True


def _extend_closure(G: Group, mask: np.ndarray, gens: np.ndarray) -> None:
    """Grow ``mask`` (already a subgroup) to the subgroup generated with ``gens``."""
    if len(gens) == 0:
        return
    frontier = np.flatnonzero(mask)
    while len(frontier):
        prods = np.asarray(G.mul(frontier[:, None], gens[None, :])).ravel()
        fresh = np.unique(prods[~mask[prods]])
        mask[fresh] = True
        frontier = fresh


def generate(G: Group, ids) -> Subgroup:
    """The subgroup generated by ``ids``."""
    ids = np.unique(np.asarray(list(ids) if not isinstance(ids, np.ndarray) else ids, dtype=np.intp))
    mask = np.zeros(len(G), dtype=bool)
    mask[0] = True
    gens: list[int] = []
    while True:
        missing = ids[~mask[ids]]
        if len(missing) == 0:
            return Subgroup.from_mask(G, mask)
        gens.append(int(missing[0]))
        _extend_closure(G, mask, np.array(gens, dtype=np.intp))


def cyclic_subgroup(G: Group, x: int) -> Subgroup:
    members = [0]
    y = int(x)
    while y != 0:
        members.append(y)
        y = int(G.mul(y, x))
    return Subgroup(G, members)


def whole(G: Group) -> Subgroup:
    return Subgroup(G, np.arange(len(G)))


def trivial(G: Group) -> Subgroup:
    return Subgroup(G, [0])


def _as_ids(G: Group, S) -> np.ndarray:
    if isinstance(S, Subgroup):
        return S.gens
    ids = np.asarray(list(S) if not isinstance(S, np.ndarray) else S, dtype=np.intp).ravel()
    if len(ids) and (ids.min() < 0 or ids.max() >= len(G)):
        raise IndexError("element id out of range")
    return ids


def centralizer(G: Group, S) -> Subgroup:
    """Elements commuting with every element of ``S`` (ids or a subgroup)."""
    ids = _as_ids(G, S)
    all_ids = np.arange(len(G))
    mask = np.ones(len(G), dtype=bool)
    for s in ids:
        mask &= np.asarray(G.mul(all_ids, s)) == np.asarray(G.mul(s, all_ids))
    return Subgroup.from_mask(G, mask)


def normalizer(G: Group, H: Subgroup) -> Subgroup:
    """``{g : H^g = H}``, tested on the generators of ``H``."""
    if H.parent is not G:
        raise ValueError("subgroup belongs to a different group")
    all_ids = np.arange(len(G))
    mask = np.ones(len(G), dtype=bool)
    for h in H.gens:
        mask &= H.mask[np.asarray(G.conj(h, all_ids))]
    return Subgroup.from_mask(G, mask)


def conjugacy_classes(G: Group) -> list[tuple[int, np.ndarray]]:
    order = np.argsort(G.class_of, kind="stable")
    bounds = np.flatnonzero(np.diff(G.class_of[order])) + 1
    return [(int(G.class_reps[k]), part) for k, part in enumerate(np.split(order, bounds))]


def normal_closure(G: Group, S) -> Subgroup:
    """Smallest normal subgroup containing ``S``: generated by the classes of ``S``."""
    ids = _as_ids(G, S)
    if len(ids) == 0:
        return trivial(G)
    wanted = np.isin(G.class_of, G.class_of[ids])
    return generate(G, np.flatnonzero(wanted))


def quotient_map(G: Group, N: Subgroup, name: str | None = None) -> tuple[Group, np.ndarray]:
    """``G/N`` as the action of ``G`` on right cosets of ``N``, plus the projection."""
    if N.parent is not G:
        raise ValueError("subgroup belongs to a different group")
    if not N.is_normal():
        raise ValueError("subgroup is not normal")
    n = len(G)
    label = np.full(n, n, dtype=np.intp)
    all_ids = np.arange(n)
    for start in range(0, len(N), 64):
        block = N.members[start:start + 64]
        label = np.minimum(label, np.asarray(G.mul(block[:, None], all_ids[None, :])).min(axis=0))
    coset_reps = np.unique(label)
    coset_index = np.searchsorted(coset_reps, label)
    k = len(coset_reps)
    qname = name or f"{G.name}/N{len(N)}"
    if k == 1:
        Q = Group(np.zeros((1, 1), dtype=np.int16), [Permutation((0,))], name=qname)
        return Q, np.zeros(n, dtype=np.intp)
    action = np.empty((n, k), dtype=_perm_dtype(k))
    for start in range(0, n, 256):
        block = all_ids[start:start + 256]
        action[start:start + 256] = coset_index[np.asarray(G.mul(coset_reps[None, :], block[:, None]))]
    gens = [Permutation.from_images(action[g].tolist()) for g in G.gen_ids]
    Q = enumerate_group(gens, name=qname)
    projection = Q._lookup(action[:, Q._base]).astype(np.intp)
    return Q, projection


def quotient(G: Group, N: Subgroup) -> Group:
    return quotient_map(G, N)[0]


def preimage(G: Group, projection: np.ndarray, H: Subgroup) -> Subgroup:
    return Subgroup.from_mask(G, H.mask[projection])


def prime_factors(n: int) -> list[int]:
    out = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        out.append(n)
    return out


def p_part(n: int, p: int) -> int:
    out = 1
    while n % p == 0:
        n //= p
        out *= p
    return out


def _is_p_power(k: np.ndarray, p: int) -> np.ndarray:
    k = k.copy()
    while True:
        div = (k % p == 0) & (k > 1)
        if not div.any():
            return k == 1
        k[div] //= p


def sylow(G: Group, p: int) -> Subgroup:
    """A Sylow ``p``-subgroup, grown one normalizing ``p``-element at a time."""
    target = p_part(len(G), p)
    if target == 1 or p not in prime_factors(len(G)):
        raise ValueError(f"{p} does not divide |G| = {len(G)}")
    p_elements = _is_p_power(G.element_orders, p) & (np.arange(len(G)) != 0)
    first = int(np.flatnonzero(p_elements & (G.element_orders == p))[0])
    P = cyclic_subgroup(G, first)
    while len(P) < target:
        N = normalizer(G, P)
        cand = N.members[p_elements[N.members] & ~P.mask[N.members]]
        if len(cand) == 0:
            raise RuntimeError("no p-element normalizes P outside P")
        P = generate(G, np.concatenate([P.gens, cand[:1]]))
    if len(P) != target:
        raise RuntimeError(f"sylow construction overshot: {len(P)} != {target}")
    return P

