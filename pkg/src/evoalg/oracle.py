"""Brute-force isomorphism search over prime fields.

Any isomorphism between nilpotent evolution algebras can be composed
with basis reorderings on both sides so that its matrix, written in
bases adapted to the upper annihilating series, mixes each block with
itself and adds an arbitrary annihilator component.  The searches below
therefore enumerate only matrices with that block pattern: the free
entries are the r diagonal blocks plus the annihilator block-row, which
cuts the space from p^(n^2) down to p^(n1^2 + sum n_i(n_i+n1)).

A returned matrix is always re-verified, so it is a genuine isomorphism
over the given prime field.  For exhaustive mode, None means no
isomorphism exists over that field; for randomized mode None is merely
a failed search.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass

from .errors import BudgetExceeded, ShapeError, Singular, UnsupportedField
from .fields import PRIME
from .linalg import Matrix
from .algebra import EvolutionAlgebra, upper_series

EXHAUSTIVE = "Exhaustive"
RANDOMIZED = "Randomized"

_EXHAUSTIVE_LIMIT = 10 ** 8


@dataclass(frozen=True)
class SearchBudget:
    mode: str = EXHAUSTIVE
    max_trials: int = 100000
    seed: int = 0


def verify_hom(E1: EvolutionAlgebra, E2: EvolutionAlgebra,
               m: Matrix) -> bool:
    """Check that x -> m.x is an algebra isomorphism E1 -> E2.

    By bilinearity it is enough that m(e_i^2) = (m e_i)^2 and that
    images of distinct basis vectors multiply to zero.
    """
    if E1.dim != E2.dim or m.nrows != E1.dim or m.ncols != E1.dim:
        raise ShapeError("isomorphism candidate has wrong shape")
    if not m.is_invertible():
        raise Singular("isomorphism candidate is singular")
    n = E1.dim
    images = [m.apply(E1.basis_vector(i)) for i in range(n)]
    for i in range(n):
        lhs = m.apply(E1.square_of_basis(i))
        rhs = E2.multiply(images[i], images[i])
        if lhs != rhs:
            return False
    for i in range(n):
        for j in range(i + 1, n):
            prod = E2.multiply(images[i], images[j])
            if any(not x.is_zero() for x in prod):
                return False
    return True


# ---------------------------------------------------------------------------
# fast modular internals (plain ints mod p)

def _int_structure(E: EvolutionAlgebra) -> list[list[int]]:
    return [[x.value for x in row] for row in E.structure.rows]


def _mat_rank(rows: list[list[int]], p: int) -> int:
    rows = [r[:] for r in rows]
    n = len(rows)
    cols = len(rows[0]) if rows else 0
    rank = 0
    for c in range(cols):
        piv = next((r for r in range(rank, n) if rows[r][c] % p), None)
        if piv is None:
            continue
        rows[rank], rows[piv] = rows[piv], rows[rank]
        inv = pow(rows[rank][c], p - 2, p)
        rows[rank] = [(x * inv) % p for x in rows[rank]]
        for r in range(n):
            if r != rank and rows[r][c]:
                f = rows[r][c]
                rows[r] = [(a - f * b) % p for a, b in zip(rows[r], rows[rank])]
        rank += 1
        if rank == n:
            break
    return rank


def _is_hom_int(A1, A2, m, p, n) -> bool:
    """m maps E1 coordinates to E2 coordinates; columns are basis images."""
    cols = [[m[r][c] for r in range(n)] for c in range(n)]
    # squares: m . A1[i] == sum_k cols[i][k]^2 A2[k]
    for i in range(n):
        col = cols[i]
        for j in range(n):
            lhs = sum(m[j][k] * A1[i][k] for k in range(n)) % p
            rhs = sum(col[k] * col[k] % p * A2[k][j] for k in range(n)) % p
            if lhs != rhs:
                return False
    # cross products vanish
    for i in range(n):
        ci = cols[i]
        for j in range(i + 1, n):
            cj = cols[j]
            prod = [0] * n
            for k in range(n):
                c = ci[k] * cj[k] % p
                if c:
                    for l in range(n):
                        prod[l] = (prod[l] + c * A2[k][l]) % p
            if any(prod):
                return False
    return True


def _pattern_slots(series1, series2, n):
    """The free matrix slots of the adapted block pattern, as a list of
    (row, col) positions in original coordinates; row indexes E2's basis,
    col indexes E1's basis."""
    slots = []
    b1, b2 = series1.blocks, series2.blocks
    for i, blk in enumerate(b1):
        for col in blk:
            for row in b2[i]:
                slots.append((row, col))
            if i > 0:
                for row in b2[0]:
                    slots.append((row, col))
    return slots


def _pattern_blocks(series1, series2):
    """The same free slots grouped as (diagonal blocks, annihilator
    slots): each diagonal block is (rows of E2's block i, cols of E1's
    block i); the annihilator slots are the (row, col) pairs of the
    first block row under the non-annihilator columns."""
    b1, b2 = series1.blocks, series2.blocks
    diag = [(b2[i], b1[i]) for i in range(len(b1))]
    ann = [(row, col)
           for i in range(1, len(b1))
           for col in b1[i]
           for row in b2[0]]
    return diag, ann


def _search_common(E1, E2):
    """Shared validation; returns (A1, A2, p, n, slots) or None when the
    answer is immediately None."""
    if E1.field.kind != PRIME or E2.field.kind != PRIME \
            or E1.field != E2.field:
        raise UnsupportedField("oracle search requires a shared prime field")
    if E1.dim != E2.dim:
        return None
    s1, s2 = upper_series(E1), upper_series(E2)
    if not s1.nilpotent or not s2.nilpotent \
            or s1.type_vector != s2.type_vector:
        return None
    n = E1.dim
    return (_int_structure(E1), _int_structure(E2), E1.field.modulus, n,
            _pattern_slots(s1, s2, n))


def _as_matrix(m_int, field, n) -> Matrix:
    return Matrix([[field.from_int(m_int[i][j]) for j in range(n)]
                   for i in range(n)], field, n)


def exhaustive_iso(E1: EvolutionAlgebra, E2: EvolutionAlgebra,
                   budget: SearchBudget = SearchBudget()) -> Matrix | None:
    """Enumerate every block-patterned matrix over the prime field.

    Returns the lexicographically first witness, or None once the space
    is exhausted (conclusive non-isomorphism over this field).
    """
    common = _search_common(E1, E2)
    if common is None:
        return None
    A1, A2, p, n, slots = common
    if p ** len(slots) > _EXHAUSTIVE_LIMIT:
        raise BudgetExceeded(
            f"{p}^{len(slots)} block-patterned matrices exceed the "
            f"exhaustive limit {_EXHAUSTIVE_LIMIT}")
    m = [[0] * n for _ in range(n)]
    for values in itertools.product(range(p), repeat=len(slots)):
        for (r, c), v in zip(slots, values):
            m[r][c] = v
        if _mat_rank(m, p) < n:
            continue
        if _is_hom_int(A1, A2, m, p, n):
            witness = _as_matrix(m, E1.field, n)
            assert verify_hom(E1, E2, witness)
            return witness
    return None


def randomized_iso(E1: EvolutionAlgebra, E2: EvolutionAlgebra,
                   budget: SearchBudget = SearchBudget(
                       mode=RANDOMIZED)) -> Matrix | None:
    """Sample block-patterned matrices; a hit is a verified witness, a
    miss after max_trials is *not* evidence of non-isomorphism.

    Sampling is importance-weighted rather than uniform: half the time a
    diagonal block is drawn as a monomial matrix (permutation times
    nonzero scalars) and annihilator-row entries are zeroed half the
    time.  Isomorphisms between natural-basis presentations concentrate
    on such sparse matrices, so this finds witnesses that uniform
    sampling over p^(free) matrices would essentially never hit.  Every
    hit is still re-verified exactly.
    """
    common = _search_common(E1, E2)
    if common is None:
        return None
    A1, A2, p, n, _ = common
    s1, s2 = upper_series(E1), upper_series(E2)
    diag, ann = _pattern_blocks(s1, s2)
    rng = random.Random(budget.seed)
    rand, randrange, shuffle = rng.random, rng.randrange, rng.shuffle
    m = [[0] * n for _ in range(n)]
    for _ in range(budget.max_trials):
        for rows, cols in diag:
            k = len(cols)
            if k > 1 and rand() < 0.5:
                perm = list(range(k))
                shuffle(perm)
                for ci, c in enumerate(cols):
                    for ri, r in enumerate(rows):
                        m[r][c] = randrange(1, p) if ri == perm[ci] else 0
            else:
                for c in cols:
                    for r in rows:
                        m[r][c] = randrange(p)
        for r, c in ann:
            m[r][c] = 0 if rand() < 0.5 else randrange(1, p)
        # cheap algebraic rejection first; rank only on the rare pass
        if _is_hom_int(A1, A2, m, p, n) and _mat_rank(m, p) == n:
            witness = _as_matrix(m, E1.field, n)
            assert verify_hom(E1, E2, witness)
            return witness
    return None
