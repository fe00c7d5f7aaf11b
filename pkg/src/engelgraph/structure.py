"""Structural subgroups and predicates of enumerated groups."""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

import numpy as np
import sympy

from .group import (
    Group,
    Subgroup,
    centralizer,
    cyclic_subgroup,
    generate,
    group_from_ids,
    normal_closure,
    normalizer,
    prime_factors,
    preimage,
    quotient_map,
    sylow,
    trivial,
    whole,
)
from .words import left_engel_mask, right_engel_mask


@dataclass(frozen=True)
class CentralSeries:
    terms: tuple[Subgroup, ...]
    stabilized: bool = True

    @property
    def last(self) -> Subgroup:
        return self.terms[-1]


@dataclass(frozen=True)
class FrobeniusWitness:
    kernel: Subgroup
    complement_order: int


@dataclass(frozen=True)
class SylowReport:
    p: int
    sylow: Subgroup
    normalizer_order: int
    centralizer_order: int
    automizer: int
    automizer_odd: bool


def as_group(H: Subgroup, name: str | None = None) -> Group:
    return group_from_ids(H.parent, H.members, name=name)[0]


# -- centre and hypercentre -------------------------------------------------


def center(G: Group) -> Subgroup:
    return centralizer(G, G.gen_ids)


def upper_central_series(G: Group) -> CentralSeries:
    """``Z_{i+1} = {x : [x, g] in Z_i for every generator g}``, up to stabilization."""
    all_ids = np.arange(len(G))
    terms = [trivial(G)]
    while True:
        mask = np.ones(len(G), dtype=bool)
        for g in G.gen_ids:
            mask &= terms[-1].mask[np.asarray(G.comm(all_ids, g))]
        nxt = Subgroup.from_mask(G, mask)
        if nxt == terms[-1]:
            return CentralSeries(tuple(terms + [nxt]))
        terms.append(nxt)


def hypercenter(G: Group) -> Subgroup:
    return upper_central_series(G).last


def hypercenter_engel_oracle(G: Group) -> Subgroup:
    """Elements that are both left and right Engel against every element."""
    return Subgroup.from_mask(G, left_engel_mask(G) & right_engel_mask(G))


# -- series and nilpotency ------------------------------------------------


def _commutator_subgroup(G: Group, A: Subgroup, B: Subgroup) -> Subgroup:
    """``[A, B]`` for ``A`` and ``B`` normal in ``G``."""
    comms = np.asarray(G.comm(A.gens[:, None], B.gens[None, :])).ravel()
    return normal_closure(G, comms[comms != 0])


def lower_central_series(G: Group) -> list[Subgroup]:
    G_all = whole(G)
    terms = [G_all]
    while True:
        nxt = _commutator_subgroup(G, terms[-1], G_all)
        if nxt == terms[-1]:
            return terms
        terms.append(nxt)


def derived_series(G: Group) -> list[Subgroup]:
    terms = [whole(G)]
    while True:
        nxt = _commutator_subgroup(G, terms[-1], terms[-1])
        if nxt == terms[-1]:
            return terms
        terms.append(nxt)


def is_nilpotent(G: Group) -> bool:
    return lower_central_series(G)[-1].is_trivial()


def is_soluble(G: Group) -> bool:
    return derived_series(G)[-1].is_trivial()


# -- Fitting subgroup ---------------------------------------------------------


def fitting(G: Group) -> Subgroup:
    """The set of left Engel elements, checked to be a nilpotent normal subgroup."""
    F = Subgroup.from_mask(G, left_engel_mask(G))
    if generate(G, F.members) != F or not F.is_normal():
        raise RuntimeError(f"left Engel elements of {G.name} do not form a normal subgroup")
    if not is_nilpotent(as_group(F)):
        raise RuntimeError(f"left Engel elements of {G.name} do not form a nilpotent subgroup")
    return F


def fitting_class_oracle(G: Group) -> Subgroup:
    """Largest nilpotent normal subgroup, found from the classes.

    A class lies in the Fitting subgroup exactly when its normal closure is
    nilpotent, so the Fitting subgroup is generated by those classes.
    """
    keep = []
    for rep in G.class_reps[1:]:
        if is_nilpotent(as_group(normal_closure(G, [int(rep)]))):
            keep.append(int(rep))
    return normal_closure(G, keep)


def fstar_equals_fitting(G: Group) -> bool:
    """``F*(G) = F(G)``, decided as ``C_G(F(G)) <= F(G)``."""
    F = fitting(G)
    return centralizer(G, F).issubset(F)


# -- simplicity -------------------------------------------------------------


def is_cyclic_of_prime_order(G: Group) -> bool:
    return prime_factors(len(G)) == [len(G)]


def is_simple(G: Group) -> bool:
    """Nonabelian simplicity; abelian simple groups report ``False``."""
    if len(G) == 1 or G.is_abelian():
        return False
    return all(len(normal_closure(G, [int(r)])) == len(G) for r in G.class_reps[1:])


def class_closures(G: Group) -> list[Subgroup]:
    """Distinct normal closures of single non-identity classes."""
    out: list[Subgroup] = []
    for r in G.class_reps[1:]:
        N = normal_closure(G, [int(r)])
        if N not in out:
            out.append(N)
    return out


def minimal_class_closures(G: Group) -> list[Subgroup]:
    closures = class_closures(G)
    return [N for N in closures if not any(M != N and M.issubset(N) for M in closures)]


def normal_subgroups(G: Group) -> list[Subgroup]:
    """Every normal subgroup, as joins of class closures; sorted by order."""
    found = [trivial(G)] + class_closures(G)
    seen = set(found)
    i = 0
    while i < len(found):
        for j in range(i):
            join = generate(G, np.concatenate([found[i].gens, found[j].gens]))
            if join not in seen:
                seen.add(join)
                found.append(join)
        i += 1
    return sorted(found, key=lambda H: (len(H), H.members.tolist()))


def is_almost_simple(G: Group) -> bool:
    if len(G) == 1 or not fitting(G).is_trivial():
        return False
    minimal = minimal_class_closures(G)
    if len(minimal) != 1:
        return False
    socle = minimal[0]
    return is_simple(as_group(socle)) and centralizer(G, socle).is_trivial()


def socle_if_almost_simple(G: Group) -> Subgroup | None:
    if not is_almost_simple(G):
        return None
    return minimal_class_closures(G)[0]


# -- Frobenius groups -------------------------------------------------------


def is_frobenius_with_kernel(G: Group, M: Subgroup, K: Subgroup) -> bool:
    """Whether ``M`` is a Frobenius group with kernel ``K`` (both subgroups of ``G``)."""
    if K.is_trivial() or len(K) >= len(M) or not K.issubset(M):
        return False
    for g in M.gens:
        if not K.mask[np.asarray(G.conj(K.gens, g))].all():
            return False
    m_ids = M.members
    for f in K.members[1:]:
        commutes = np.asarray(G.mul(m_ids, f)) == np.asarray(G.mul(f, m_ids))
        if not K.mask[m_ids[commutes]].all():
            return False
    return True


def is_frobenius(G: Group) -> FrobeniusWitness | None:
    """Frobenius test with the Fitting subgroup as the only kernel candidate."""
    K = fitting(G)
    if K.is_trivial() or len(K) == len(G):
        return None
    kernel_reps = [int(r) for r in G.class_reps[1:] if K.mask[r]]
    if not all(centralizer(G, [r]).issubset(K) for r in kernel_reps):
        return None
    return FrobeniusWitness(K, len(G) // len(K))


# -- J and J* ---------------------------------------------------------------


def compute_J(G: Group) -> Subgroup:
    """Preimage of ``F(G/F(G))``."""
    F = fitting(G)
    Q, proj = quotient_map(G, F, name=f"{G.name}/F")
    return preimage(G, proj, fitting(Q))


def j_equals_jstar(G: Group) -> bool:
    """``J = J*``, i.e. ``F*(G/F(G)) = F(G/F(G))``."""
    Q, _ = quotient_map(G, fitting(G), name=f"{G.name}/F")
    return fstar_equals_fitting(Q)


# -- Sylow automizers -------------------------------------------------------


def sylow_automizer(G: Group, p: int) -> SylowReport:
    P = sylow(G, p)
    N = normalizer(G, P)
    C = centralizer(G, P)
    if len(N) % len(C):
        raise RuntimeError("centralizer order does not divide normalizer order")
    aut = len(N) // len(C)
    return SylowReport(p, P, len(N), len(C), aut, aut % 2 == 1)


def odd_automizer_chain_length(G: Group, odd_primes_only: bool = False) -> int:
    """Longest chain of primes ``p_1 | p_2 - 1 | ...`` of ``|G|``, all with odd Sylow automizer."""
    if not is_simple(G):
        raise ValueError(f"{G.name} is not nonabelian simple")
    primes = [p for p in prime_factors(len(G))
              if not (odd_primes_only and p == 2) and sylow_automizer(G, p).automizer_odd]
    best: dict[int, int] = {}
    for p in sorted(primes):
        best[p] = 1 + max((best[q] for q in best if (p - 1) % q == 0), default=0)
    return max(best.values(), default=0)


# -- number theory ----------------------------------------------------------


@lru_cache(maxsize=None)
def _factor_primes(n: int) -> frozenset[int]:
    return frozenset(sympy.factorint(n)) if n > 1 else frozenset()


def primitive_prime_divisors(q: int, t: int) -> set[int]:
    """Primes dividing ``q^t - 1`` but no ``q^i - 1`` with ``1 <= i < t``."""
    if q < 2 or t < 1:
        raise ValueError("need q >= 2 and t >= 1")
    if q**t - 1 >= 2**64:
        raise OverflowError(f"{q}^{t} exceeds 64 bits")
    candidates = _factor_primes(q**t - 1)
    return {p for p in candidates if all((q**i - 1) % p for i in range(1, t))}


# -- metacyclicity -------------------------------------------------------------


def is_metacyclic(G: Group) -> bool:
    """Some cyclic normal subgroup has cyclic quotient (exhaustive search)."""
    n = len(G)
    all_ids = np.arange(n)
    tried: set[bytes] = set()
    for c in range(n):
        C = cyclic_subgroup(G, c)
        key = C.members.tobytes()
        if key in tried:
            continue
        tried.add(key)
        if not C.is_normal():
            continue
        index = n // len(C)
        if index == 1:
            return True
        # order of g modulo C, for all g at once
        cur = all_ids.copy()
        first = np.zeros(n, dtype=np.int64)
        for k in range(1, index + 1):
            hit = C.mask[cur] & (first == 0)
            first[hit] = k
            cur = np.asarray(G.mul(cur, all_ids))
        if (first == index).any():
            return True
    return False


# -- the normalizer map modulo the Fitting subgroup ---------------------------


def check_theta_isomorphism(G: Group, x: int) -> bool | None:
    """Compare ``|N_G(<x>) : C_G(x)|`` with the same index in ``G/F(G)``.

    Returns ``None`` when ``N_G(<x>) F(G)`` is not a Frobenius group with
    kernel ``F(G)`` and complement ``N_G(<x>)``.
    """
    x = int(x)
    if x == 0:
        raise ValueError("x must be a non-identity element")
    if prime_factors(int(G.element_orders[x])) != [int(G.element_orders[x])]:
        raise ValueError("x must have prime order")
    F = fitting(G)
    N = normalizer(G, cyclic_subgroup(G, x))
    M = generate(G, np.concatenate([N.gens, F.gens]))
    complement_ok = len(M) == len(N) * len(F) and not (N.mask & F.mask)[1:].any()
    if not complement_ok or not is_frobenius_with_kernel(G, M, F):
        return None
    C = centralizer(G, [x])
    Q, proj = quotient_map(G, F, name=f"{G.name}/F")
    xq = int(proj[x])
    Nq = normalizer(Q, cyclic_subgroup(Q, xq))
    Cq = centralizer(Q, [xq])
    return len(N) // len(C) == len(Nq) // len(Cq)
