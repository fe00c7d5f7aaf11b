import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from engelgraph import catalog, graphs
from engelgraph.graphs import (BudgetError, alt_identity_check, alternating_prime_graph, build_commuting,
                               build_delta, build_gamma, build_gamma_n, build_kind, build_lambda,
                               build_prime_graph, class_graph_strongly_connected, engel_class_In,
                               odd_commuting_components)
from engelgraph.group import centralizer
from engelgraph.perm import Permutation, commutator, identity, order
from engelgraph.structure import center, fitting, hypercenter
from engelgraph.words import (NO_ARC, arc_depth, depth_matrix, depths_from, depths_into, engel_trace,
                              is_arc, pair_depths)
from engelgraph.digraph import scc
from conftest import SMALL_GROUPS

FAST_NAMES = [s.name for s in catalog.catalog_tier("fast")]
MID = ["S3", "S4", "A4", "D10", "SL(2,3)", "C2xS4", "A5", "AGL1(7)", "S3xS3"]


def oracle_depth(G, x, y, cap=None):
    """Iterate the commutator on Permutation objects until 1 or a repeat."""
    a, b = G.element(x), G.element(y)
    seen = {a}
    for n in range(1, (cap or len(G)) + 1):
        a = commutator(a, b)
        if a == identity(G.degree):
            return n
        if a in seen:
            return None
        seen.add(a)
    return None


def test_trace_examples():
    S3 = catalog.build("S3")
    x = S3.index(Permutation.from_cycles("(1,2)", 3))
    y = S3.index(Permutation.from_cycles("(1,2,3)", 3))
    t = engel_trace(S3, x, y)
    assert t.reaches_identity and t.depth == 2
    assert S3.label(t.sequence[1]) == "(1,3,2)"
    back = engel_trace(S3, y, x)
    assert not back.reaches_identity and back.cycle_length == 1 and back.sequence[:1] == (y,)
    assert arc_depth(S3, y, 0) == 1
    assert is_arc(S3, x, y) and not is_arc(S3, y, x)
    assert engel_trace(S3, x, y) == t


@settings(max_examples=60, deadline=None)
@given(st.sampled_from(SMALL_GROUPS + ["A5"]), st.data())
def test_depth_matches_permutation_oracle(name, data):
    G = catalog.build(name)
    x = data.draw(st.integers(0, len(G) - 1))
    y = data.draw(st.integers(0, len(G) - 1))
    expect = oracle_depth(G, x, y)
    assert arc_depth(G, x, y) == expect
    got = int(pair_depths(G, [x], [y])[0])
    assert got == (NO_ARC if expect is None else expect)


@pytest.mark.parametrize("name", MID)
def test_class_spread_matches_full_scan(name):
    G = catalog.build(name)
    full = depth_matrix(G, use_classes=False)
    assert np.array_equal(depth_matrix(G, use_classes=True), full)
    for v in range(0, len(G), max(1, len(G) // 9)):
        assert np.array_equal(depths_from(G, v), full[v])
        assert np.array_equal(depths_into(G, v), full[:, v])


@pytest.mark.parametrize("name", ["S4", "A5", "PSL2(7)", "AGL1(7)"])
def test_packed_builder_matches_dense_builder(name, monkeypatch):
    G = catalog.build(name)
    dense = build_gamma(G)
    monkeypatch.setattr(graphs, "DENSE_LIMIT", 0)
    packed = build_gamma(G)
    assert np.array_equal(dense.bits, packed.bits)
    assert np.array_equal(dense.vertex_ids, packed.vertex_ids)


def test_build_examples():
    assert len(build_gamma(catalog.build("D8"))) == 0
    S3 = build_gamma(catalog.build("S3"))
    assert len(S3) == 5 and not scc(S3).is_strongly_connected
    S4 = build_gamma(catalog.build("S4"))
    assert len(S4) == 23 and scc(S4).is_strongly_connected
    assert len(build_commuting(catalog.build("C6"))) == 0
    assert len(build_commuting(catalog.build("A5"))) == 59


def test_budget_error_reports_requirement():
    with pytest.raises(BudgetError) as info:
        build_gamma(catalog.build("S4"), budget=10)
    assert info.value.required == 23 * 23
    with pytest.raises(ValueError):
        build_kind(catalog.build("S3"), "gamma_n:x")
    with pytest.raises(ValueError):
        build_kind(catalog.build("S3"), "nope")


def test_engel_class_examples():
    for name in ("S3", "S4", "D8", "C2xS4", "Q8"):
        G = catalog.build(name)
        assert set(engel_class_In(G, 1).tolist()) == set(center(G).members.tolist())
    assert engel_class_In(catalog.build("S3"), 1).tolist() == [0]
    D8 = catalog.build("D8")
    assert len(engel_class_In(D8, 2)) == 8
    with pytest.raises(ValueError):
        engel_class_In(D8, 0)


@pytest.mark.parametrize("name", ["S3", "S4", "C2xS4", "SL(2,3)", "A4"])
def test_engel_class_matches_brute_force(name):
    G = catalog.build(name)
    for n in (1, 2, 3):
        brute = {x for x in range(len(G))
                 if all((d := oracle_depth(G, x, y, n)) is not None and d <= n or x == 0 or y == 0
                        for y in range(len(G)))
                 and all((d := oracle_depth(G, y, x, n)) is not None and d <= n or x == 0 or y == 0
                         for y in range(len(G)))}
        assert set(engel_class_In(G, n).tolist()) == brute


@pytest.mark.parametrize("name", FAST_NAMES)
def test_graph_laws(name):
    G = catalog.build(name)
    n = len(G)
    Z = hypercenter(G)
    gamma = build_gamma(G)
    assert set(gamma.vertex_ids.tolist()) == set(range(n)) - set(Z.members.tolist())
    lam = build_lambda(G)
    delta = build_delta(G)
    assert len(lam) == n and len(delta) == n - 1
    # sink law: every vertex reaches every non-identity element of F(G) in Lambda
    F = fitting(G).members[1:]
    if len(F):
        assert lam.dense()[:, F][np.arange(n)[:, None] != F[None, :]].all()
    # Gamma_n monotone and Gamma_1 symmetric
    prev = None
    for k in range(1, 6):
        Gk = build_gamma_n(G, k)
        if prev is not None:
            common, ia, ib = np.intersect1d(prev.vertex_ids, Gk.vertex_ids, return_indices=True)
            a = prev.dense()[np.ix_(ia, ia)]
            b = Gk.dense()[np.ix_(ib, ib)]
            assert not (a & ~b).any()
        if k == 1:
            assert (Gk.dense() == Gk.dense().T).all()
            assert set(Gk.vertex_ids.tolist()) == set(range(n)) - set(center(G).members.tolist())
        prev = Gk
    # commuting graph: symmetric, on G minus Z(G), edge iff commuting
    C = build_commuting(G)
    assert C.symmetric
    assert set(C.vertex_ids.tolist()) == set(range(n)) - set(center(G).members.tolist())


@settings(max_examples=30, deadline=None)
@given(st.sampled_from(MID), st.data())
def test_arcs_invariant_under_conjugation(name, data):
    G = catalog.build(name)
    D = build_lambda(G).dense()
    g = data.draw(st.integers(0, len(G) - 1))
    perm = np.asarray(G.conj(np.arange(len(G)), g))
    assert np.array_equal(D[np.ix_(perm, perm)], D)


@settings(max_examples=30, deadline=None)
@given(st.sampled_from(MID), st.data())
def test_commuting_edges_match_centralizers(name, data):
    G = catalog.build(name)
    C = build_commuting(G)
    if len(C) == 0:
        return
    i = data.draw(st.integers(0, len(C) - 1))
    x = int(C.vertex_ids[i])
    cent = set(centralizer(G, [x]).members.tolist()) - {x}
    assert set(C.vertex_ids[C.out_neighbors(i)].tolist()) == cent - set(center(G).members.tolist())


def _prime_graph_oracle(G):
    from sympy import primefactors
    orders = {order(G.element(i)) for i in range(len(G))}
    primes = primefactors(len(G))
    edges = {(r, s) for r in primes for s in primes if r < s and any(o % (r * s) == 0 for o in orders)}
    return primes, edges


@pytest.mark.parametrize("name", ["A5", "A6", "A7", "C6", "S4", "PSL2(7)", "AGL1(7)"])
def test_prime_graph_matches_oracle(name):
    G = catalog.build(name)
    pg = build_prime_graph(G)
    primes, edges = _prime_graph_oracle(G)
    assert list(pg.primes) == primes and set(pg.edges) == edges
    flat = sorted(p for c in pg.components for p in c)
    assert flat == primes


def test_prime_graph_examples():
    assert sorted(build_prime_graph(catalog.build("A5")).components) == [(2,), (3,), (5,)]
    assert sorted(build_prime_graph(catalog.build("A7")).components) == [(2, 3), (5,), (7,)]
    assert build_prime_graph(catalog.build("C6")).components == ((2, 3),)
    for n in (5, 6, 7, 8):
        assert alternating_prime_graph(n) == build_prime_graph(catalog.build(f"A{n}"))


def _image_chase_commutator(a, b, n):
    """[a, b] = a^-1 b^-1 a b evaluated point by point, images applied left to right."""
    inv = lambda p: {v: k for k, v in p.items()}  # noqa: E731
    ai, bi = inv(a), inv(b)
    return {pt: b[a[bi[ai[pt]]]] for pt in range(1, n + 1)}


@pytest.mark.parametrize("p", [7, 11, 13, 17, 19, 23])
def test_alt_identity(p):
    res = alt_identity_check(p)
    assert res.holds
    a = {pt: pt for pt in range(1, p + 1)}
    a.update({1: 3, 3: 5, 5: 1})
    x = {pt: pt % p + 1 for pt in range(1, p + 1)}
    c = _image_chase_commutator(a, x, p)
    expect = {pt: pt for pt in range(1, p + 1)}
    expect.update({1: 5, 5: 3, 3: 1, 2: 4, 4: 6, 6: 2})
    assert c == expect


def test_alt_identity_range():
    for bad in (5, 9, 29):
        with pytest.raises(ValueError):
            alt_identity_check(bad)


@pytest.mark.parametrize("name", ["A5", "PSL2(7)", "A6"])
def test_odd_commuting_components_are_hall_cliques(name):
    comps = odd_commuting_components(catalog.build(name))
    assert comps and all(c.isolated_hall_clique for c in comps)


@pytest.mark.parametrize("name,connected", [("S3", False), ("S4", True), ("A5", False), ("A6", True),
                                            ("PSL2(7)", True), ("AGL1(5)", False)])
def test_class_graph_agrees_with_element_graph(name, connected):
    G = catalog.build(name)
    assert class_graph_strongly_connected(G) is connected
    assert scc(build_gamma(G)).is_strongly_connected is connected
