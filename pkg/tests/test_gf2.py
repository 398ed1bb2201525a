import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from crosscap.gf2 import F2Matrix, F2Vector


def square(n):
    return st.lists(st.lists(st.integers(0, 1), min_size=n, max_size=n), min_size=n, max_size=n)


def test_from_support_is_one_based():
    v = F2Vector.from_support([1, 3], 4)
    assert v.to_list() == [1, 0, 1, 0]
    assert v.support() == (1, 3)


def test_dot_and_add():
    a = F2Vector.from_support([1, 2, 3], 5)
    b = F2Vector.from_support([2, 3, 4], 5)
    assert a.dot(b) == 0
    assert (a + b).support() == (1, 4)


def test_size_mismatch_rejected():
    with pytest.raises(ValueError):
        F2Vector.from_support([1], 3) + F2Vector.from_support([1], 4)


@settings(max_examples=60, deadline=None)
@given(square(6), square(6))
def test_matmul_matches_numpy(a, b):
    got = (F2Matrix.from_lists(a) @ F2Matrix.from_lists(b)).to_lists()
    want = (np.array(a) @ np.array(b)) % 2
    assert got == want.tolist()


@settings(max_examples=60, deadline=None)
@given(square(5), st.lists(st.integers(0, 1), min_size=5, max_size=5))
def test_apply_matches_numpy(a, x):
    v = F2Vector.from_support([i + 1 for i, b in enumerate(x) if b], 5)
    got = F2Matrix.from_lists(a).apply(v).to_list()
    assert got == ((np.array(a) @ np.array(x)) % 2).tolist()


@settings(max_examples=40, deadline=None)
@given(square(7))
def test_transpose_and_hex_round_trip(a):
    m = F2Matrix.from_lists(a)
    assert m.transpose().to_lists() == np.array(a).T.tolist()
    assert F2Matrix.from_hex(m.to_hex()) == m


def test_identity():
    assert F2Matrix.identity(4).is_identity()
    assert not F2Matrix.from_lists([[0, 1], [1, 0]]).is_identity()
