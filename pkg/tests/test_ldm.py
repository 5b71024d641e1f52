import itertools

import pytest
from hypothesis import given, strategies as st

from hetdtb.errors import DimensionError, InvalidShift
from hetdtb.ldm import LevelWord, apply_downshift, matrix_power, shift_matrix, superpose

W = LevelWord.of


@pytest.mark.parametrize(
    "x, n, expected",
    [("1011", 3, "0101"), ("1011", 4, "1011"), ("11", 0, "00")],
)
def test_downshift_examples(x, n, expected):
    assert apply_downshift(W(x), n) == W(expected)


@pytest.mark.parametrize("n", [-1, 5])
def test_downshift_rejects_bad_strength(n):
    with pytest.raises(InvalidShift):
        apply_downshift(W("1011"), n)


def test_superpose_examples():
    a, b = W("101"), W("001")
    assert superpose(a, b) == W("100")
    assert a ^ a == LevelWord.zeros(3)
    assert a ^ LevelWord.zeros(3) == a
    with pytest.raises(DimensionError):
        superpose(W("10"), W("101"))


def test_level_word_validation():
    with pytest.raises(ValueError):
        LevelWord((0, 2))
    with pytest.raises(DimensionError):
        LevelWord(())


@pytest.mark.parametrize("q", range(1, 9))
def test_downshift_is_shift_matrix_power(q):
    S = shift_matrix(q)
    for n in range(q + 1):
        M = matrix_power(S, q - n)
        for bits in itertools.product((0, 1), repeat=q):
            assert apply_downshift(LevelWord(bits), n).bits == M.matvec(bits)


@pytest.mark.parametrize("q", range(1, 7))
def test_shift_composition(q):
    for bits in itertools.product((0, 1), repeat=q):
        x = LevelWord(bits)
        for n in range(q + 1):
            for m in range(q + 1):
                assert apply_downshift(apply_downshift(x, n), m) == apply_downshift(x, max(0, n + m - q))


words = st.integers(1, 10).flatmap(
    lambda q: st.tuples(*[st.lists(st.integers(0, 1), min_size=q, max_size=q).map(tuple)] * 3)
)


@given(words)
def test_superpose_is_commutative_and_associative(abc):
    a, b, c = (LevelWord(x) for x in abc)
    assert a ^ b == b ^ a
    assert (a ^ b) ^ c == a ^ (b ^ c)
    assert (a ^ b) ^ b == a
