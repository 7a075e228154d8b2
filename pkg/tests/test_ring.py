import math

import numpy as np
import pytest
from hypothesis import given, strategies as st

from spin101.exactgeom import Quad2

coeff = st.integers(min_value=-(10**6), max_value=10**6)
quads = st.builds(Quad2, coeff, coeff)


@given(quads, quads, quads)
def test_ring_axioms(u, v, w):
    assert (u + v) + w == u + (v + w)
    assert (u * v) * w == u * (v * w)
    assert u * (v + w) == u * v + u * w
    assert u + v == v + u
    assert u * v == v * u
    assert u + (-u) == Quad2(0, 0)
    assert u * Quad2(1, 0) == u


@given(quads)
def test_conjugate_norm_is_rational(q):
    n = q * q.conj()
    assert n.b == 0
    assert n.a == q.a * q.a - 2 * q.b * q.b


def test_zero_and_equality():
    assert Quad2(0, 0).is_zero()
    assert not Quad2(0, 1).is_zero()
    assert Quad2(1, 2) == Quad2(1, 2)
    assert Quad2(1, 2) != Quad2(2, 1)


@pytest.mark.parametrize(
    "a, b, expected",
    [
        (0, 0, 0),
        (3, 0, 1),
        (-3, 0, -1),
        (0, 2, 1),
        (0, -2, -1),
        (3, -2, 1),  # 3 - 2*sqrt(2) = 0.17...
        (-3, 2, -1),
        (1, -1, -1),  # 1 - sqrt(2) < 0
        (-1, 1, 1),
        (1414213562373095049, -10**18, 1),  # close call above zero
        (1414213562373095048, -10**18, -1),  # close call below zero
    ],
)
def test_sign_cases(a, b, expected):
    assert Quad2(a, b).sign() == expected


def test_sign_agrees_with_float_on_a_million_pairs():
    rng = np.random.default_rng(20260809)
    a = rng.integers(-(10**6), 10**6 + 1, size=1_000_000)
    b = rng.integers(-(10**6), 10**6 + 1, size=1_000_000)
    # vectorized transcription of the integer sign rule
    exact = np.zeros(a.shape, dtype=np.int64)
    both_nonneg = (a >= 0) & (b >= 0)
    both_nonpos = (a <= 0) & (b <= 0)
    exact[both_nonneg] = 1
    exact[both_nonpos] = -1
    exact[(a == 0) & (b == 0)] = 0
    pos_mixed = (a > 0) & (b < 0)
    exact[pos_mixed] = np.where(a[pos_mixed] ** 2 > 2 * b[pos_mixed] ** 2, 1, -1)
    neg_mixed = (a < 0) & (b > 0)
    exact[neg_mixed] = np.where(a[neg_mixed] ** 2 < 2 * b[neg_mixed] ** 2, 1, -1)

    approx = np.sign(a + b * math.sqrt(2.0)).astype(np.int64)
    assert (exact == approx).all()

    # spot-check the class agrees with the vectorized rule
    for i in range(0, 1_000_000, 99991):
        assert Quad2(int(a[i]), int(b[i])).sign() == exact[i]


def test_float_and_str():
    assert float(Quad2(1, 1)) == pytest.approx(1 + math.sqrt(2))
    assert str(Quad2(3, 0)) == "3"
    assert str(Quad2(0, 1)) == "√2"
    assert str(Quad2(1, -1)) == "1-1√2"
