"""Exact linear algebra: matrices, RREF, kernels, subspaces."""

import random

import pytest
from hypothesis import given, settings, strategies as st

from evoalg.errors import AmbientMismatch, ShapeError, Singular
from evoalg.fields import GF, QQ
from evoalg.linalg import Matrix, Subspace, kernel, rref

F13 = GF(13)


def test_rref_identity():
    m = Matrix.identity(3, QQ())
    r, rank = rref(m)
    assert r == m and rank == 3


def test_rref_proportional_rows():
    m = Matrix.from_ints([[2, 4], [1, 2]], QQ())
    r, rank = rref(m)
    assert rank == 1
    assert r == Matrix.from_ints([[1, 2], [0, 0]], QQ())


def test_rref_idempotent():
    rng = random.Random(0)
    for _ in range(25):
        m = Matrix.from_ints(
            [[rng.randrange(13) for _ in range(4)] for _ in range(3)], F13)
        r, _ = rref(m)
        r2, _ = rref(r)
        assert r2 == r


def test_inverse_roundtrip():
    m = Matrix.from_ints([[1, 2], [3, 5]], QQ())
    assert m * m.inverse() == Matrix.identity(2, QQ())
    with pytest.raises(Singular):
        Matrix.from_ints([[1, 2], [2, 4]], QQ()).inverse()


def test_shape_errors():
    a = Matrix.from_ints([[1, 2]], QQ())
    b = Matrix.from_ints([[1, 2]], QQ())
    with pytest.raises(ShapeError):
        _ = a * b


def test_kernel_basic():
    m = Matrix.from_ints([[1, 2], [2, 4]], QQ())
    k = kernel(m)
    assert k.dim == 1
    v = k.vectors()[0]
    assert all(x.is_zero() for x in m.apply(v))


def test_subspace_ops():
    s = Subspace.coordinate([0], 3, QQ())
    t = Subspace.coordinate([1], 3, QQ())
    assert (s + t).dim == 2
    assert (s + Subspace.zero(3, QQ())) == s
    assert (s + s) == s
    assert s.intersect(t).is_zero()
    full = Subspace.full(3, QQ())
    assert full.contains(s + t)


def test_subspace_ambient_mismatch():
    with pytest.raises(AmbientMismatch):
        Subspace.coordinate([0], 2, QQ()) + Subspace.coordinate([0], 3, QQ())


@settings(max_examples=50)
@given(st.lists(st.lists(st.integers(0, 12), min_size=4, max_size=4),
                min_size=1, max_size=5))
def test_rank_nullity(rows):
    m = Matrix.from_ints(rows, F13, 4)
    _, rank = rref(m)
    assert rank + kernel(m).dim == 4


@settings(max_examples=50)
@given(st.lists(st.lists(st.integers(0, 12), min_size=3, max_size=3),
                min_size=1, max_size=3),
       st.lists(st.lists(st.integers(0, 12), min_size=3, max_size=3),
                min_size=1, max_size=3))
def test_dimension_formula(rows_s, rows_t):
    s = Subspace.from_vectors(
        [[F13.from_int(x) for x in r] for r in rows_s], 3, F13)
    t = Subspace.from_vectors(
        [[F13.from_int(x) for x in r] for r in rows_t], 3, F13)
    assert s.dim + t.dim == (s + t).dim + s.intersect(t).dim
