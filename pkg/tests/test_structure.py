import numpy as np
import pytest
from hypothesis import given, settings, strategies as st
from sympy.ntheory import n_order

from engelgraph import catalog
from engelgraph.group import centralizer, generate, normal_closure, prime_factors
from engelgraph.perm import compose
from engelgraph.structure import (as_group, center, check_theta_isomorphism, compute_J, fitting, fitting_class_oracle,
                                  fstar_equals_fitting, hypercenter, hypercenter_engel_oracle,
                                  is_almost_simple, is_cyclic_of_prime_order, is_frobenius, is_metacyclic,
                                  is_nilpotent, is_simple, is_soluble, normal_subgroups,
                                  odd_automizer_chain_length, primitive_prime_divisors, sylow_automizer,
                                  upper_central_series)
from conftest import SMALL_GROUPS

FAST_NAMES = [s.name for s in catalog.catalog_tier("fast")]


def brute_center(G):
    els = [G.element(i) for i in range(len(G))]
    return {i for i, x in enumerate(els) if all(compose(x, y) == compose(y, x) for y in els)}


@pytest.mark.parametrize("name,size", [("S3", 1), ("C6", 6), ("D8", 2), ("Q8", 2), ("C2xS4", 2)])
def test_center_examples(name, size):
    G = catalog.build(name)
    Z = center(G)
    assert len(Z) == size
    assert set(Z.members.tolist()) == brute_center(G)


def test_upper_central_series_examples():
    assert [len(t) for t in upper_central_series(catalog.build("S4")).terms] == [1, 1]
    D8 = catalog.build("D8")
    assert len(upper_central_series(D8).last) == 8
    assert len(hypercenter(D8)) == 8
    assert len(hypercenter(catalog.build("S4"))) == 1
    assert len(hypercenter(catalog.build("C2xS4"))) == 2


@pytest.mark.parametrize("name", FAST_NAMES)
def test_hypercenter_dual_oracle(name):
    G = catalog.build(name)
    assert hypercenter(G) == hypercenter_engel_oracle(G)
    series = upper_central_series(G)
    assert len(series.terms[0]) == 1
    assert all(t.is_normal() for t in series.terms)
    assert all(a.issubset(b) for a, b in zip(series.terms, series.terms[1:]))


@pytest.mark.parametrize("name", FAST_NAMES)
def test_fitting_dual_oracle_and_maximality(name):
    G = catalog.build(name)
    F = fitting(G)
    assert F == fitting_class_oracle(G)
    assert F.is_normal()
    seen = set()
    for x in G.class_reps:
        if int(x) in F:
            continue
        closure = normal_closure(G, np.concatenate([F.gens, [int(x)]]))
        key = closure.members.tobytes()
        if key not in seen:
            seen.add(key)
            assert not is_nilpotent(as_group(closure))
    assert is_nilpotent(G) == (len(hypercenter(G)) == len(G))


def test_fitting_examples():
    assert len(fitting(catalog.build("S4"))) == 4
    assert len(fitting(catalog.build("D8"))) == 8
    assert len(fitting(catalog.build("A5"))) == 1


def test_fstar_examples():
    assert fstar_equals_fitting(catalog.build("S4"))
    assert not fstar_equals_fitting(catalog.build("A5"))
    assert fstar_equals_fitting(catalog.build("Q8"))


def test_series_predicates():
    D8, S4, A5 = (catalog.build(n) for n in ("D8", "S4", "A5"))
    assert is_nilpotent(D8)
    assert not is_nilpotent(S4) and is_soluble(S4)
    assert not is_soluble(A5)
    assert is_simple(A5) and not is_simple(S4)
    C7 = catalog.build("C7")
    assert not is_simple(C7) and is_cyclic_of_prime_order(C7)


def test_almost_simple_examples():
    assert is_almost_simple(catalog.build("S5"))
    assert not is_almost_simple(catalog.build("A5xA5"))
    assert not is_almost_simple(catalog.build("S4"))
    assert is_almost_simple(catalog.build("A6"))


def _frobenius_by_action(G, K):
    """Oracle: a complement H (of order |G:K|) meets all of its conjugates trivially."""
    comp_order = len(G) // len(K)
    for h in range(1, len(G)):
        H = generate(G, [h])
        if len(H) != comp_order:
            continue
        ok = True
        for g in range(len(G)):
            if int(g) in H:
                continue
            conj = set(np.asarray(G.conj(H.members, g)).tolist())
            if len(conj & set(H.members.tolist())) > 1:
                ok = False
                break
        if ok:
            return True
    return False


@pytest.mark.parametrize("name,expected", [("S3", 3), ("AGL1(5)", 5), ("D10", 5), ("A4", 4), ("S4", None),
                                           ("D8", None), ("A5", None)])
def test_is_frobenius_examples(name, expected):
    G = catalog.build(name)
    w = is_frobenius(G)
    if expected is None:
        assert w is None
    else:
        assert w is not None and len(w.kernel) == expected
        assert np.gcd(len(w.kernel), w.complement_order) == 1
        for x in w.kernel.members[1:]:
            assert centralizer(G, [int(x)]).issubset(w.kernel)


@pytest.mark.parametrize("name", ["S3", "AGL1(5)", "AGL1(7)", "D10"])
def test_frobenius_matches_cyclic_complement_oracle(name):
    G = catalog.build(name)
    w = is_frobenius(G)
    assert w is not None and _frobenius_by_action(G, w.kernel)


def test_compute_J_examples():
    S4 = catalog.build("S4")
    J = compute_J(S4)
    assert len(J) == 12 and J.is_normal()
    D8 = catalog.build("D8")
    assert len(compute_J(D8)) == 8
    assert len(compute_J(catalog.build("A5"))) == 1


@pytest.mark.parametrize("name,p,aut", [("M11", 11, 5), ("A7", 7, 3), ("PSL2(7)", 7, 3), ("PSL2(11)", 11, 5)])
def test_sylow_automizer_examples(name, p, aut):
    rep = sylow_automizer(catalog.build(name), p)
    assert rep.automizer == aut and rep.automizer_odd
    assert rep.normalizer_order == rep.automizer * rep.centralizer_order


def test_chain_examples():
    assert odd_automizer_chain_length(catalog.build("M11")) <= 2
    assert odd_automizer_chain_length(catalog.build("A5"), odd_primes_only=True) == 0
    assert odd_automizer_chain_length(catalog.build("PSL2(7)")) >= 1
    with pytest.raises(ValueError):
        odd_automizer_chain_length(catalog.build("S4"))


def test_primitive_prime_divisor_examples():
    assert primitive_prime_divisors(2, 6) == set()
    assert primitive_prime_divisors(3, 2) == set()
    assert primitive_prime_divisors(2, 4) == {5}
    with pytest.raises(ValueError):
        primitive_prime_divisors(1, 3)
    with pytest.raises(OverflowError):
        primitive_prime_divisors(2, 70)


@given(st.integers(2, 40), st.integers(1, 12))
def test_primitive_prime_divisors_match_multiplicative_order(q, t):
    from sympy import primefactors
    expect = {p for p in primefactors(q**t - 1) if q % p and n_order(q, p) == t}
    assert primitive_prime_divisors(q, t) == expect


@pytest.mark.parametrize("name,expected", [("C6", True), ("S3", True), ("C2xC2", True), ("Q8", True),
                                           ("A4", False), ("D10", True)])
def test_metacyclic_examples(name, expected):
    G = catalog.build(name)
    assert is_metacyclic(G) is expected


@pytest.mark.parametrize("name", ["S3", "A4", "AGL1(5)", "AGL1(7)", "D10"])
def test_theta_on_frobenius_over_fitting_instances(name):
    G = catalog.build(name)
    results = set()
    for x in range(1, len(G)):
        o = int(G.element_orders[x])
        if prime_factors(o) == [o]:
            results.add(check_theta_isomorphism(G, x))
    assert True in results and False not in results


def test_theta_preconditions():
    G = catalog.build("S3")
    with pytest.raises(ValueError):
        check_theta_isomorphism(G, 0)
    D8 = catalog.build("D8")
    z = int(center(D8).members[1])
    assert check_theta_isomorphism(D8, z) is None


@settings(max_examples=25, deadline=None)
@given(st.sampled_from(SMALL_GROUPS + ["A5", "S5"]))
def test_normal_subgroups_are_normal_and_include_trivial_and_whole(name):
    G = catalog.build(name)
    Ns = normal_subgroups(G)
    orders = [len(N) for N in Ns]
    assert 1 in orders and len(G) in orders
    assert all(N.is_normal() for N in Ns)
    F = fitting(G)
    assert any(N == F for N in Ns)
