import pytest

from helpers import random_word, seed_rng
from knotperiod.freegroup import (
    EMPTY,
    GroupRingElem,
    Specializer,
    Word,
    gr_add,
    gr_mul,
    gr_scale,
    reduce,
    specialize,
    word_inv,
    word_mul,
)
from knotperiod.laurent import LaurentPoly
from knotperiod.matring import RingMatrix

X, Y = Word.gen(0), Word.gen(1)
t = LaurentPoly.gen()


def test_reduce_examples():
    assert reduce([(0, 1), (0, -1)]) == EMPTY
    assert reduce([(0, 1), (0, 1)]).syllables == ((0, 2),)
    assert reduce([(0, 1), (1, 1), (1, -1), (0, 1)]).syllables == ((0, 2),)


def test_reduce_idempotent_and_reduced():
    rng = seed_rng(1)
    for _ in range(1000):
        raw = [(rng.randrange(3), rng.choice([-2, -1, 1, 2])) for _ in range(rng.randint(0, 12))]
        w = reduce(raw)
        assert reduce(w.syllables) == w
        assert all(a[0] != b[0] for a, b in zip(w.syllables, w.syllables[1:]))
        assert all(e for _, e in w.syllables)


def test_reduce_matches_letterwise_cancellation():
    rng = seed_rng(2)
    for _ in range(300):
        raw = [(rng.randrange(2), rng.choice([-1, 1])) for _ in range(rng.randint(0, 14))]
        stack = []
        for g, e in raw:
            if stack and stack[-1] == (g, -e):
                stack.pop()
            else:
                stack.append((g, e))
        assert list(reduce(raw).letters()) == stack


def test_word_mul_inv_examples():
    assert word_inv(X * Y) == Word([(1, -1), (0, -1)])
    assert word_mul(X, EMPTY) == X
    assert word_mul(X * Y, Y.inverse()) == X


def test_group_laws_random():
    rng = seed_rng(3)
    for _ in range(300):
        a, b, c = (random_word(rng) for _ in range(3))
        assert (a * b) * c == a * (b * c)
        assert word_inv(word_inv(a)) == a
        assert a * word_inv(a) == EMPTY
        assert word_inv(a * b) == word_inv(b) * word_inv(a)


def test_word_power_and_exponent_sum():
    w = X * Y.inverse()
    assert (w ** 3).exponent_sum(0) == 3
    assert (w ** -2) == (w.inverse() * w.inverse())
    assert len(Word([(0, 3), (1, -2)])) == 5


def test_group_ring_examples():
    x, y = GroupRingElem.of(X), GroupRingElem.of(Y)
    assert gr_mul(x, y) == GroupRingElem.of(X * Y)
    assert gr_add(x, gr_scale(x, -1)) == GroupRingElem.zero()
    assert not gr_add(x, gr_scale(x, -1))
    assert gr_mul(x + y, x) == GroupRingElem.of(Word([(0, 2)])) + GroupRingElem.of(Y * X)


def test_group_ring_distributive():
    rng = seed_rng(4)

    def elem():
        out = GroupRingElem.zero()
        for _ in range(rng.randint(0, 3)):
            out = out + GroupRingElem.of(random_word(rng, length=4), rng.randint(-2, 2))
        return out

    for _ in range(100):
        a, b, c = elem(), elem(), elem()
        assert a * (b + c) == a * b + a * c
        assert (a + b) * c == a * c + b * c
        assert (a * b) * c == a * (b * c)


def test_specialize_examples():
    assign = {0: RingMatrix([[t]])}
    assert specialize(GroupRingElem.of(X), assign)[0, 0] == t
    assert specialize(GroupRingElem.of(X.inverse()), assign)[0, 0] == LaurentPoly({-1: 1})
    e = GroupRingElem.of(X * Y) + GroupRingElem.of(EMPTY, 2)
    out = specialize(e, {0: RingMatrix([[t]]), 1: RingMatrix([[1]])})
    assert out[0, 0] == t + 2


def test_specialize_is_homomorphism():
    rng = seed_rng(5)
    a1 = RingMatrix([[t, 1], [0, 1]])
    a2 = RingMatrix([[1, 0], [t, LaurentPoly({-1: 1})]])
    spec = Specializer({0: a1, 1: a2})

    def elem():
        out = GroupRingElem.zero()
        for _ in range(rng.randint(0, 3)):
            out = out + GroupRingElem.of(random_word(rng, ngens=2, length=4), rng.randint(-2, 2))
        return out

    for _ in range(60):
        a, b = elem(), elem()
        assert spec(a * b) == spec(a) * spec(b)
        assert spec(a + b) == spec(a) + spec(b)


def test_specialize_rejects_bad_assignments():
    with pytest.raises(ValueError):
        Specializer({0: RingMatrix([[t]]), 1: RingMatrix.identity(2)})
    with pytest.raises(ArithmeticError):
        Specializer({0: RingMatrix([[1 + t]])})
    with pytest.raises(ValueError):
        Specializer({0: RingMatrix([[t]], 3), 1: RingMatrix([[t]])})
