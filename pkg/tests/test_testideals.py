"""Frobenius powers/roots and test ideals for monomial ideals.

Dual routes everywhere: the floor-division root is checked against its
defining minimality property, and the stabilization-loop test ideal against
the Newton-polyhedron membership oracle.
"""

import random

import pytest

from skelpot.testideals import (
    GradedSequence,
    MonomialIdeal,
    asymptotic_test_ideal as asymptotic_tau,
    frobenius_power,
    frobenius_root,
    unit_ideal,
    zero_ideal,
)
from skelpot.testideals import TestIdealError as IdealError
from skelpot.testideals import newton_test_ideal as newton_tau
from skelpot.testideals import test_ideal as tau
from skelpot.rat import Rat

from helpers import rand_lambda, rand_proper_ideal


def I(n, *gens):
    return MonomialIdeal(n, gens)


def test_ideal_normalization():
    a = I(2, (3, 0), (3, 1), (0, 2), (1, 2))
    assert a.gens == ((0, 2), (3, 0))  # antichain, sorted
    assert I(1, (0,)).is_unit()
    assert MonomialIdeal(2, ()).is_zero()
    with pytest.raises(IdealError):
        MonomialIdeal(2, ((1,),))
    with pytest.raises(IdealError):
        MonomialIdeal(2, ((-1, 0),))


def test_ideal_arithmetic():
    a = I(2, (1, 0))
    b = I(2, (0, 1))
    assert (a * b).gens == ((1, 1),)
    assert (a + b).gens == ((0, 1), (1, 0))
    assert a.intersect(b).gens == ((1, 1),)
    assert (a**3).gens == ((3, 0),)
    assert (a + b) ** 2 == I(2, (2, 0), (1, 1), (0, 2))
    assert a**0 == unit_ideal(2)
    assert zero_ideal(2) * a == zero_ideal(2)


def test_frobenius_power_example():
    # (x^2, y^3) at p=3, e=1
    assert frobenius_power(I(2, (2, 0), (0, 3)), 3, 1) == I(2, (6, 0), (0, 9))


def test_frobenius_root_examples():
    assert frobenius_root(I(2, (3, 2)), 2, 1) == I(2, (1, 1))
    assert frobenius_root(I(1, (1,)), 2, 2) == unit_ideal(1)
    a = I(2, (5, 1), (2, 3))
    assert frobenius_root(frobenius_power(a, 3, 2), 3, 2) == a


def test_frobenius_rejects_bad_p():
    with pytest.raises(IdealError):
        frobenius_power(I(1, (1,)), 4, 1)
    with pytest.raises(IdealError):
        frobenius_root(I(1, (1,)), 2, -1)


def _largest_ideal_missing(n, w):
    """The largest monomial ideal that does not contain x^w."""
    gens = []
    for i in range(n):
        v = [0] * n
        v[i] = w[i] + 1
        gens.append(tuple(v))
    return MonomialIdeal(n, gens)


def test_root_minimality_oracle():
    """a^[1/q] is the smallest b with a inside b^[q]: containment holds, and
    for every generator w of the root there is no valid b avoiding w."""
    rng = random.Random(92)
    for _ in range(60):
        n = rng.choice((1, 2, 3))
        a = rand_proper_ideal(rng, n)
        p = rng.choice((2, 3, 5))
        e = rng.choice((1, 1, 2))
        b = frobenius_root(a, p, e)
        assert frobenius_power(b, p, e).contains(a)
        for w in b.gens:
            avoiding = _largest_ideal_missing(n, w)
            assert not frobenius_power(avoiding, p, e).contains(a)


def test_membership_commutes_with_frobenius():
    # x^u in a  iff  x^(q u) in a^[q], checked over an exponent box
    rng = random.Random(93)
    for _ in range(30):
        n = rng.choice((2, 3))
        a = rand_proper_ideal(rng, n)
        p = rng.choice((2, 3))
        e = rng.choice((1, 2))
        q = p**e
        fp = frobenius_power(a, p, e)
        for _ in range(40):
            u = tuple(rng.randint(0, 6) for _ in range(n))
            assert a.contains_exponent(u) == fp.contains_exponent(
                tuple(q * x for x in u)
            )


def test_root_identities():
    rng = random.Random(94)
    for _ in range(60):
        n = rng.choice((2, 3))
        a = rand_proper_ideal(rng, n)
        p = rng.choice((2, 3, 5))
        e = rng.choice((1, 2))
        # (a^[q])^[1/q] = a  and  a <= (a^[1/q])^[q]
        assert frobenius_root(frobenius_power(a, p, e), p, e) == a
        assert frobenius_power(frobenius_root(a, p, e), p, e).contains(a)
        # iterated roots compose
        assert frobenius_root(frobenius_root(a, p, 1), p, e) == frobenius_root(
            a, p, e + 1
        )


# -- test ideals --------------------------------------------------------


def test_test_ideal_spec_values():
    m2 = I(2, (1, 0), (0, 1))
    assert tau(m2**2, 1, 2) == m2
    a = I(2, (2, 1))
    assert tau(a, 1, 2).contains(a)
    assert tau(unit_ideal(2), "7/3", 5) == unit_ideal(2)
    assert tau(a, 0, 3) == unit_ideal(2)
    assert tau(zero_ideal(2), 1, 2) == zero_ideal(2)
    with pytest.raises(IdealError):
        tau(a, "-1/2", 2)


def test_test_ideal_monotone_in_lambda():
    a = I(2, (2, 0), (1, 1), (0, 3))
    prev = None
    for lam in (Rat(1, 3), Rat(2, 3), Rat(1), Rat(3, 2), Rat(2), Rat(3)):
        cur = tau(a, lam, 2)
        if prev is not None:
            assert prev.contains(cur)
        prev = cur


def test_test_ideal_monotone_in_ideal():
    rng = random.Random(95)
    for _ in range(25):
        n = rng.choice((2, 3))
        small = rand_proper_ideal(rng, n)
        big = small + rand_proper_ideal(rng, n)
        lam = rand_lambda(rng)
        p = rng.choice((2, 3, 5))
        assert tau(big, lam, p).contains(tau(small, lam, p))


def test_power_compatibility():
    rng = random.Random(96)
    for _ in range(25):
        n = rng.choice((2, 3))
        a = rand_proper_ideal(rng, n, max_exp=4)
        lam = rand_lambda(rng, num_max=8)
        p = rng.choice((2, 3, 5))
        m = rng.choice((2, 3))
        assert tau(a**m, lam, p) == tau(a, m * lam, p)


def test_newton_oracle_agreement():
    rng = random.Random(97)
    for _ in range(60):
        n = rng.choice((2, 3))
        a = rand_proper_ideal(rng, n)
        lam = rand_lambda(rng)
        p = rng.choice((2, 3, 5))
        assert tau(a, lam, p) == newton_tau(a, lam)


def test_newton_oracle_known_values():
    m2 = I(2, (1, 0), (0, 1))
    assert newton_tau(m2**2, 1) == m2
    assert newton_tau(m2**2, Rat(1, 2)) == unit_ideal(2)
    # principal (xy): tau jumps exactly at integers
    xy = I(2, (1, 1))
    assert newton_tau(xy, Rat(99, 100)) == unit_ideal(2)
    assert newton_tau(xy, 1) == xy
    assert newton_tau(xy, Rat(5, 2)) == I(2, (2, 2))


def test_deep_chain_power_compatibility():
    """The instance whose stabilization chain pauses before e reaches its
    stable range: both the direct route and the route through the cube of
    the ideal must agree with the oracle (this exercises the
    query-based root for counts beyond the materialization cutoff)."""
    a = MonomialIdeal(3, [(4, 0, 2), (0, 4, 1), (2, 1, 3)])
    lam = Rat(11, 2)
    direct = tau(a, lam, 2)
    via_cube = tau(a**3, lam / 3, 2)
    assert direct == via_cube == newton_tau(a, lam)


def test_query_route_matches_materialized_floors():
    from skelpot.testideals import _PowerCache, _root_by_queries

    rng = random.Random(98)
    done = 0
    while done < 12:
        n = rng.choice((2, 3))
        a = rand_proper_ideal(rng, n)
        if len(a.gens) < 2:
            continue
        p = rng.choice((2, 3, 5))
        m = rng.randint(65, 90)
        e = 1
        while p**e < m:
            e += 1
        expected = MonomialIdeal(
            n, (tuple(x // p**e for x in u) for u in _PowerCache(a).power_gens(m))
        )
        assert _root_by_queries(a, m, p, e) == expected
        done += 1


# -- graded sequences ---------------------------------------------------


def test_sequence_table_validation():
    m2 = I(2, (1, 0), (0, 1))
    with pytest.raises(IdealError):
        GradedSequence.table({1: m2, 2: m2**3})  # a_1 * a_1 not inside a_2
    with pytest.raises(IdealError):
        GradedSequence.table({})
    with pytest.raises(IdealError):
        GradedSequence.table({1: zero_ideal(2), 2: zero_ideal(2)})
    seq = GradedSequence.table({1: m2, 2: m2**2, 4: m2**4})
    assert seq.ideal(2) == m2**2
    with pytest.raises(IdealError):
        seq.ideal(3)


def test_asymptotic_matches_plain_for_principal():
    rng = random.Random(99)
    for _ in range(8):
        n = rng.choice((2, 3))
        b = MonomialIdeal(n, (tuple(rng.randint(0, 4) for _ in range(n)),))
        if b.is_unit():
            continue
        lam = rand_lambda(rng, num_max=6)
        p = rng.choice((2, 3, 5))
        assert asymptotic_tau(GradedSequence.powers(b), lam, p) == tau(
            b, lam, p
        )


def test_asymptotic_contains_members():
    b = I(2, (2, 0), (1, 1), (0, 2))
    seq = GradedSequence.powers(b)
    for m in (1, 2):
        member = tau(seq.ideal(m), 1, 3)
        assert asymptotic_tau(seq, m, 3).contains(member)


def test_subadditivity():
    rng = random.Random(100)
    for _ in range(10):
        n = rng.choice((2, 3))
        b = rand_proper_ideal(rng, n, max_exp=3)
        seq = GradedSequence.powers(b)
        lam = rand_lambda(rng, den_max=3, num_max=5)
        p = rng.choice((2, 3, 5))
        one = asymptotic_tau(seq, lam, p)
        for m in (2, 3):
            assert (one**m).contains(asymptotic_tau(seq, m * lam, p))


def test_asymptotic_errors():
    b = I(2, (1, 1))
    with pytest.raises(IdealError):
        GradedSequence.powers(zero_ideal(2))
    table = GradedSequence.table({1: b})
    with pytest.raises(IdealError):
        asymptotic_tau(table, Rat(1, 2), 2)  # table runs out at m=4
