"""Finite-field brute-force isomorphism oracle."""

import random

import pytest

from evoalg.algebra import EvolutionAlgebra
from evoalg.errors import BudgetExceeded, ShapeError, Singular, UnsupportedField
from evoalg.fields import GF, QQ
from evoalg.linalg import Matrix
from evoalg.oracle import (RANDOMIZED, SearchBudget, exhaustive_iso,
                           randomized_iso, verify_hom)
from evoalg.tables import find_entry

from helpers import random_nilpotent

F3 = GF(3)
F5 = GF(5)


def chain(n, field):
    rows = [[0] * n for _ in range(n)]
    for i in range(n - 1):
        rows[i][i + 1] = 1
    return EvolutionAlgebra.from_ints(rows, field)


def test_verify_hom_identity_and_permutation():
    E = chain(3, F5)
    assert verify_hom(E, E, Matrix.identity(3, F5))
    # swapping the two annihilator vectors of a split pair of chains
    A = EvolutionAlgebra.from_ints(
        [[0, 1, 0, 0], [0, 0, 0, 0], [0, 0, 0, 1], [0, 0, 0, 0]], F5)
    B = EvolutionAlgebra.from_ints(
        [[0, 0, 0, 1], [0, 0, 0, 0], [0, 1, 0, 0], [0, 0, 0, 0]], F5)
    perm = Matrix.from_ints(
        [[1, 0, 0, 0], [0, 0, 0, 1], [0, 0, 1, 0], [0, 1, 0, 0]], F5)
    assert verify_hom(A, B, perm)
    assert not verify_hom(A, A, perm)


def test_verify_hom_rejects_bad_shapes():
    E = chain(3, F5)
    with pytest.raises(ShapeError):
        verify_hom(E, E, Matrix.identity(2, F5))
    with pytest.raises(Singular):
        verify_hom(E, E, Matrix.from_ints([[0] * 3] * 3, F5))


def test_unsupported_field():
    E = chain(2, QQ())
    with pytest.raises(UnsupportedField):
        exhaustive_iso(E, E)
    with pytest.raises(UnsupportedField):
        exhaustive_iso(chain(2, F3), chain(2, F5))


def test_different_types_give_none():
    E1 = chain(3, F3)
    E2 = EvolutionAlgebra.from_ints(
        [[0, 1, 1], [0, 0, 0], [0, 0, 0]], F3)
    assert exhaustive_iso(E1, E2) is None
    assert randomized_iso(E1, E2) is None


def test_exhaustive_finds_rescaled_copy_over_f5():
    entry = find_entry(4, (1, 2, 1), 1)
    E1 = entry.template((), F5)
    d = Matrix.from_ints([[2, 0, 0, 0], [0, 1, 0, 0],
                          [0, 0, 3, 0], [0, 0, 0, 4]], F5)
    inv = d.inverse()
    new_rows = []
    for i in range(4):
        col = d.apply(E1.basis_vector(i))
        sq = E1.multiply(col, col)
        new_rows.append(inv.apply(sq))
    E2 = EvolutionAlgebra(4, Matrix(new_rows, F5, 4), F5)
    m = exhaustive_iso(E1, E2)
    assert m is not None and verify_hom(E1, E2, m)


def test_exhaustive_none_is_conclusive():
    # the two dim-3 classes are not isomorphic over any field
    e1 = find_entry(3, (1, 2), 1)
    e2 = find_entry(3, (1, 1, 1), 1)
    assert exhaustive_iso(e1.template((), F3), e2.template((), F3)) is None


def test_exhaustive_budget_exceeded():
    entry = find_entry(5, (1, 1, 3), 3)
    F13 = GF(13)
    E = entry.template((F13.from_int(2),), F13)
    with pytest.raises(BudgetExceeded):
        exhaustive_iso(E, E)


def test_randomized_zero_budget_returns_none():
    E = chain(3, F5)
    assert randomized_iso(E, E, SearchBudget(RANDOMIZED, max_trials=0)) \
        is None


def test_randomized_finds_self_isomorphism():
    entry = find_entry(4, (1, 2, 1), 1)
    F13 = GF(13)
    E = entry.template((), F13)
    m = randomized_iso(E, E, SearchBudget(RANDOMIZED, max_trials=50000,
                                          seed=0))
    assert m is not None and verify_hom(E, E, m)


def test_oracle_symmetry_over_f3():
    rng = random.Random(0)
    checked = 0
    while checked < 6:
        E1 = random_nilpotent(3, rng, field=F3)
        E2 = random_nilpotent(3, rng, field=F3)
        m12 = exhaustive_iso(E1, E2)
        m21 = exhaustive_iso(E2, E1)
        assert (m12 is None) == (m21 is None)
        checked += 1
