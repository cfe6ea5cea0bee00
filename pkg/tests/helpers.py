"""Shared random generators for the test suite.

All randomness is drawn from caller-provided ``random.Random`` instances
so every test is reproducible from its seed.
"""

from __future__ import annotations

from evoalg.algebra import EvolutionAlgebra, upper_series
from evoalg.fields import GF
from evoalg.linalg import Matrix

F13 = GF(13)


def random_algebra(dim, rng, field=F13, density=0.6):
    """A random evolution algebra (not necessarily nilpotent)."""
    rows = [[field.from_int(rng.randrange(field.modulus))
             if rng.random() < density else field.zero()
             for _ in range(dim)] for _ in range(dim)]
    return EvolutionAlgebra(dim, Matrix(rows, field, dim), field)


def random_nilpotent(dim, rng, field=F13, density=0.6):
    """A random nilpotent evolution algebra: strictly upper-triangular
    structure in a hidden basis order, then scrambled by a permutation
    (permutations preserve both naturality and nilpotency)."""
    while True:
        rows = [[field.zero()] * dim for _ in range(dim)]
        for i in range(dim):
            for j in range(i + 1, dim):
                if rng.random() < density:
                    rows[i][j] = field.from_int(rng.randrange(field.modulus))
        perm = list(range(dim))
        rng.shuffle(perm)
        prows = [[field.zero()] * dim for _ in range(dim)]
        for i in range(dim):
            for j in range(dim):
                prows[perm[i]][perm[j]] = rows[i][j]
        E = EvolutionAlgebra(dim, Matrix(prows, field, dim), field)
        if upper_series(E).nilpotent:
            return E


def random_nilpotent_of_type(type_vector, rng, field=F13, density=0.6):
    """Rejection-sample random_nilpotent until the type vector matches."""
    dim = sum(type_vector)
    while True:
        E = random_nilpotent(dim, rng, field, density)
        if upper_series(E).type_vector == list(type_vector):
            return E


def random_large_annihilator(rng, field=F13):
    """A random algebra of dim 2..5 with dim ann >= dim/2 >= 1.

    The dim-2 case with 1-dim annihilator equal to E^2 is excluded: that
    algebra is the two-element chain, the one shape where a large
    annihilator does not force decomposability (pairing each generator
    with its square yields a single ideal, not a direct sum).
    """
    from evoalg.algebra import square_subspace
    while True:
        dim = rng.randrange(2, 6)
        E = random_algebra(dim, rng, field, density=0.5)
        ann = E.annihilator()
        if not 2 * ann.dim >= dim >= 2 * 1:
            continue
        if dim == 2 and ann.dim == 1 and square_subspace(E).contains(ann):
            continue
        return E


def random_block_basis_change(E, rng, attempts=300):
    """Apply a random invertible block-patterned basis change that again
    yields a natural basis; returns the transformed algebra or None when
    no natural change was found within the attempt budget.

    The pattern mixes each annihilating-series block with itself and lets
    every vector pick up an arbitrary annihilator component.
    """
    series = upper_series(E)
    field = E.field
    p = field.modulus
    n = E.dim
    for _ in range(attempts):
        m = [[field.zero()] * n for _ in range(n)]
        for i, blk in enumerate(series.blocks):
            for c in blk:
                for r in blk:
                    m[r][c] = field.from_int(rng.randrange(p))
                if i > 0:
                    for r in series.blocks[0]:
                        m[r][c] = field.from_int(rng.randrange(p))
        mat = Matrix(m, field, n)
        if not mat.is_invertible():
            continue
        cols = [[m[r][c] for r in range(n)] for c in range(n)]
        natural = True
        for i in range(n):
            for j in range(i + 1, n):
                if any(not x.is_zero()
                       for x in E.multiply(cols[i], cols[j])):
                    natural = False
                    break
            if not natural:
                break
        if not natural:
            continue
        inv = mat.inverse()
        rows = [inv.apply(E.multiply(cols[i], cols[i])) for i in range(n)]
        return EvolutionAlgebra(n, Matrix(rows, field, n), field)
    return None
