import math
from fractions import Fraction
from itertools import combinations_with_replacement

import pytest
from hypothesis import given, strategies as st

from pbrigid import arith
from pbrigid.arith import GammaClass, TupleError


tuples = st.lists(st.integers(1, 40), min_size=3, max_size=6).map(tuple)


def cotype_by_lcm(S):
    # a_i divides lcm(S_i) exactly when dropping it leaves the lcm unchanged
    L = math.lcm(*S)
    return sum(math.lcm(*(S[:i] + S[i + 1:])) != L for i in range(len(S)))


def test_lcm_and_weights():
    assert arith.lcm_tuple((2, 3, 5, 30)) == 30
    assert arith.weights((2, 3, 5, 30)) == arith.WeightVector((15, 10, 6, 1), 30)
    assert arith.weights((2, 3, 4, 12)).weights == (6, 4, 3, 1)
    assert arith.lcm_tuple((10**30, 3, 7)) == 21 * 10**30


def test_drop():
    assert arith.drop((2, 3, 4, 5), 3) == (2, 3, 4)
    with pytest.raises(TupleError):
        arith.drop((2, 3, 4), 0)
    with pytest.raises(TupleError):
        arith.drop((2, 3, 4, 5), 4)


def test_cotype_examples():
    assert arith.cotype((2, 3, 3, 4)) == 1
    assert arith.cotype((2, 3, 5, 30)) == 0
    assert arith.cotype((1, 1, 1)) == 0
    assert arith.cotype((2, 3, 4, 5)) == 3
    assert arith.offending_indices((2, 3, 3, 5)) == [0, 3]


def test_normalize_and_g():
    assert arith.normalize((4, 6, 10)) == (2, 3, 5)
    assert arith.g_i((2, 3, 3, 6), 3) == 6
    assert arith.g_i((2, 3, 3, 4), 3) == 2


def test_amplitude_and_classes():
    assert arith.amplitude((2, 3, 5, 30)) == -2
    assert arith.amplitude((2, 3, 7, 42)) == 0
    assert arith.gamma_class((2, 3, 7, 42)) is GammaClass.GAMMA_PLUS
    assert arith.gamma_class((2, 3, 5, 30)) is GammaClass.GAMMA_MINUS
    assert arith.gamma_class((2, 3, 3, 4)) is GammaClass.GAMMA_ONLY
    assert arith.gamma_class((2, 2, 3, 4)) is GammaClass.NOT_IN_GAMMA
    assert arith.gamma_class((1, 3, 4, 5)) is GammaClass.NOT_IN_GAMMA


def test_leq_order_examples():
    assert arith.leq_order((2, 3, 3, 6), (2, 3, 3, 12), 3)
    assert not arith.leq_order((2, 3, 3, 6), (2, 3, 4, 6), 3)
    with pytest.raises(TupleError):
        arith.leq_order((2, 3, 4), (2, 3, 4, 5), 0)


def test_bad_tuples():
    for bad in [(2, 3), (0, 2, 3), (2, -1, 3), (2.0, 3, 4), (True, 2, 3)]:
        with pytest.raises(TupleError):
            arith.as_tuple(bad)


def test_cotype_two_routes_exhaustive():
    for S in combinations_with_replacement(range(1, 31), 4):
        assert arith.cotype(S) == cotype_by_lcm(S), S


def test_weights_coprime_for_cotype_zero():
    for S in combinations_with_replacement(range(1, 31), 4):
        if arith.cotype(S) == 0:
            assert math.gcd(*arith.weights(S).weights) == 1, S


def gamma_minus_oracle():
    # loose box, filtered only by the definitions
    out = set()
    for S in combinations_with_replacement(range(2, 25), 3):
        for last in range(S[-1], 200):
            T = S + (last,)
            if T.count(2) > 1:
                continue
            if sum(Fraction(1, a) for a in T) <= 1:
                break
            if cotype_by_lcm(T) == 0:
                out.add(T)
    return out


def test_gamma_minus_matches_oracle():
    assert set(arith.enumerate_gamma_minus(3)) == gamma_minus_oracle()


def test_gamma_minus_search_order_invariant():
    a = arith.enumerate_gamma_minus(3, strategy="depth-first")
    b = arith.enumerate_gamma_minus(3, strategy="breadth-first")
    assert set(a) == set(b) and len(a) == 8
    assert set(arith.enumerate_gamma_minus(4, 12, "depth-first")) == set(
        arith.enumerate_gamma_minus(4, 12, "breadth-first"))


def test_gamma_minus_errors():
    with pytest.raises(TupleError):
        arith.enumerate_gamma_minus(2)
    with pytest.raises(TupleError):
        arith.enumerate_gamma_minus(4)
    with pytest.raises(TupleError):
        arith.enumerate_gamma_minus(3, strategy="random")


def test_enumerate_class_brute_force():
    minus = arith.enumerate_class(3, GammaClass.GAMMA_MINUS, 30)
    assert set(minus) == {S for S in arith.enumerate_gamma_minus(3) if max(S) <= 30}
    plus = arith.enumerate_class(3, GammaClass.GAMMA_PLUS, 8)
    assert (2, 4, 8, 8) in plus and (3, 3, 4, 4) not in plus
    assert all(arith.amplitude(S) >= 0 and arith.cotype(S) == 0 for S in plus)
    assert arith.enumerate_class(3, GammaClass.GAMMA_PLUS, 8, jobs=2) == plus


def test_gamma_minus_n4_bounded():
    found = arith.enumerate_gamma_minus(4, 6)
    assert (3, 3, 3, 3, 3) in found
    for S in found:
        assert arith.gamma_class(S) is GammaClass.GAMMA_MINUS


@given(tuples, st.integers(1, 9))
def test_cotype_normalization_invariance(S, d):
    S = tuple(a * d for a in S)
    assert arith.cotype(arith.normalize(S)) == arith.cotype(S)


small = st.lists(st.integers(1, 12), min_size=3, max_size=4).map(tuple)


def _variants(S, i, data):
    # tuples agreeing with S off position i, so that <=^i has a chance to hold
    return S[:i] + (data.draw(st.integers(1, 48)),) + S[i + 1:]


@given(small, st.data())
def test_leq_order_partial_order(S, data):
    i = data.draw(st.integers(0, len(S) - 1))
    T = _variants(S, i, data)
    U = _variants(S, i, data)
    assert arith.leq_order(S, S, i)
    if arith.leq_order(S, T, i) and arith.leq_order(T, S, i):
        assert S == T
    if arith.leq_order(S, T, i) and arith.leq_order(T, U, i):
        assert arith.leq_order(S, U, i)
