import math

import pytest
from hypothesis import given, strategies as st

from engelgraph.perm import Permutation, commutator, compose, identity, inverse, order, power, product
from conftest import perm_pairs, permutations


def P(*images):
    return Permutation(tuple(images))


def test_identity_images():
    assert identity(3).images == (0, 1, 2)
    assert order(identity(5)) == 1
    with pytest.raises(ValueError):
        identity(0)


def test_compose_left_to_right():
    a, b = P(1, 0, 2), P(0, 2, 1)
    assert compose(a, b) == P(2, 0, 1)
    assert compose(identity(3), a) == a
    assert compose(a, inverse(a)) == identity(3)
    with pytest.raises(ValueError):
        compose(a, identity(4))


def test_commutator_examples():
    x = Permutation.from_cycles("(1,2,3)", 3)
    y = Permutation.from_cycles("(1,2)", 3)
    direct = product([inverse(x), inverse(y), x, y])
    assert commutator(x, y) == direct == Permutation.from_cycles("(1,2,3)", 3)
    assert commutator(x, identity(3)) == identity(3)
    assert commutator(x, x) == identity(3)
    with pytest.raises(ValueError):
        commutator(x, identity(4))


def test_order_examples():
    assert order(P(1, 0, 3, 4, 2)) == 6
    assert order(identity(4)) == 1
    for p in (5, 7, 11):
        cyc = Permutation.from_cycles("(" + ",".join(str(i) for i in range(1, p + 1)) + ")", p)
        assert order(cyc) == p


def test_cycle_notation_round_trip_and_errors():
    p = Permutation.from_cycles("(1,3)(2,4,5)", 6)
    assert p.to_cycles() == "(1,3)(2,4,5)"
    assert Permutation.from_cycles("()", 3) == identity(3)
    for bad in ("(1,2", "(1,1)", "(0,1)", "(1,9)", "abc"):
        with pytest.raises(ValueError):
            Permutation.from_cycles(bad, 4)


def test_rejects_non_bijection():
    with pytest.raises(ValueError):
        P(0, 0, 1)
    with pytest.raises(ValueError):
        P()


@given(permutations())
def test_inverse_law(p):
    assert compose(p, inverse(p)) == identity(p.degree)
    assert compose(inverse(p), p) == identity(p.degree)


@given(permutations())
def test_order_is_lcm_of_cycles_and_least(p):
    k = order(p)
    assert power(p, k) == identity(p.degree)
    assert all(power(p, j) != identity(p.degree) for j in range(1, k))
    assert k == math.lcm(*[len(c) for c in p.cycles()] or [1])


@given(perm_pairs())
def test_compose_pointwise(pair):
    a, b = pair
    c = compose(a, b)
    assert all(c[i] == b[a[i]] for i in range(a.degree))


@given(perm_pairs())
def test_commutator_trivial_iff_commute(pair):
    a, b = pair
    assert (commutator(a, b) == identity(a.degree)) == (compose(a, b) == compose(b, a))


@given(permutations(), st.integers(-20, 20))
def test_power_matches_repeated_product(p, k):
    base = p if k >= 0 else inverse(p)
    expect = identity(p.degree)
    for _ in range(abs(k)):
        expect = compose(expect, base)
    assert power(p, k) == expect


@given(permutations())
def test_cycles_round_trip(p):
    assert Permutation.from_cycles(p.to_cycles(), p.degree) == p
