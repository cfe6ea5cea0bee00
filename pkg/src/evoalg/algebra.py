"""Evolution algebras and their structural invariants.

An evolution algebra is presented by an n x n structure matrix A over a
field: the natural basis vectors satisfy e_i * e_j = 0 for i != j and
e_i^2 = sum_j A[i][j] e_j.  This module computes products, annihilators,
the upper annihilating series and its type vector, power chains, the
attached weighted digraph, and decomposability verdicts with witness
ideals where the supporting theory provides one.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field

from .errors import NotAnIdeal, NotNilpotent, ShapeError
from .fields import FieldDescriptor, FieldElement
from .linalg import Matrix, Subspace


class EvolutionAlgebra:
    """A finite-dimensional evolution algebra in a fixed natural basis."""

    def __init__(self, dim: int, structure: Matrix, field: FieldDescriptor):
        if dim < 1:
            raise ShapeError("dimension must be at least 1")
        if structure.nrows != dim or structure.ncols != dim:
            raise ShapeError(
                f"structure must be {dim}x{dim}, got "
                f"{structure.nrows}x{structure.ncols}")
        if structure.field != field:
            raise ShapeError("structure entries come from a different field")
        self.dim = dim
        self.field = field
        self.structure = structure

    @classmethod
    def from_ints(cls, rows: list[list[int]], field: FieldDescriptor):
        return cls(len(rows), Matrix.from_ints(rows, field), field)

    def __eq__(self, other):
        return (isinstance(other, EvolutionAlgebra)
                and self.dim == other.dim and self.field == other.field
                and self.structure == other.structure)

    def __repr__(self):
        return f"EvolutionAlgebra(dim {self.dim} over {self.field})"

    def basis_vector(self, i: int) -> list[FieldElement]:
        v = [self.field.zero()] * self.dim
        v[i] = self.field.one()
        return v

    def square_of_basis(self, i: int) -> list[FieldElement]:
        return self.structure.row(i)

    def multiply(self, x: list[FieldElement], y: list[FieldElement]):
        """Product of two coordinate vectors: sum_i x_i y_i e_i^2."""
        if len(x) != self.dim or len(y) != self.dim:
            raise ShapeError("vector length mismatch")
        out = [self.field.zero()] * self.dim
        for i in range(self.dim):
            c = x[i] * y[i]
            if c.is_zero():
                continue
            row = self.structure.rows[i]
            out = [a + c * b for a, b in zip(out, row)]
        return out

    def annihilator(self) -> Subspace:
        """Span of the natural basis vectors with zero square."""
        idx = [i for i in range(self.dim)
               if all(x.is_zero() for x in self.structure.rows[i])]
        return Subspace.coordinate(idx, self.dim, self.field)


def new_algebra(n: int, structure: Matrix,
                field: FieldDescriptor) -> EvolutionAlgebra:
    return EvolutionAlgebra(n, structure, field)


def multiply(E: EvolutionAlgebra, x, y):
    return E.multiply(x, y)


def annihilator(E: EvolutionAlgebra) -> Subspace:
    return E.annihilator()


def quotient_by_block(E: EvolutionAlgebra, keep) -> EvolutionAlgebra:
    """Quotient by the span of the discarded basis vectors.

    The discarded span must be an ideal, which for a coordinate span
    means every discarded vector's square is supported on discarded
    coordinates.
    """
    keep = sorted(keep)
    discard = [i for i in range(E.dim) if i not in keep]
    for i in discard:
        for j in keep:
            if not E.structure[i, j].is_zero():
                raise NotAnIdeal(
                    f"square of basis vector {i} leaves the discarded span")
    rows = [[E.structure[i, j] for j in keep] for i in keep]
    return EvolutionAlgebra(len(keep),
                            Matrix(rows, E.field, len(keep)), E.field)


@dataclass
class AnnSeries:
    """The upper annihilating series of an evolution algebra.

    chain[i] is ann^{i+1}; blocks[i] lists the basis indices entering the
    series at step i+1; type_vector[i] = len(blocks[i]).  When the chain
    stabilizes short of the full space the algebra is not nilpotent.
    """

    chain: list = dc_field(default_factory=list)
    blocks: list = dc_field(default_factory=list)
    type_vector: list = dc_field(default_factory=list)
    nilpotent: bool = False

    @property
    def r(self) -> int:
        return len(self.blocks)


def upper_series(E: EvolutionAlgebra) -> AnnSeries:
    """Compute ann^1 <= ann^2 <= ... and the type vector."""
    placed: set[int] = set()
    chain: list[Subspace] = []
    blocks: list[list[int]] = []
    prev = Subspace.zero(E.dim, E.field)
    while True:
        new = [i for i in range(E.dim) if i not in placed
               and prev.contains_vector(E.square_of_basis(i))]
        if not new:
            break
        placed.update(new)
        blocks.append(new)
        prev = Subspace.coordinate(placed, E.dim, E.field)
        chain.append(prev)
        if len(placed) == E.dim:
            break
    return AnnSeries(chain=chain, blocks=blocks,
                     type_vector=[len(b) for b in blocks],
                     nilpotent=len(placed) == E.dim)


def product_subspace(E: EvolutionAlgebra, s: Subspace, t: Subspace) -> Subspace:
    """Span of all products of basis vectors of s with basis vectors of t."""
    vecs = [E.multiply(x, y) for x in s.vectors() for y in t.vectors()]
    if not vecs:
        return Subspace.zero(E.dim, E.field)
    return Subspace.from_vectors(vecs, E.dim, E.field)


def square_subspace(E: EvolutionAlgebra) -> Subspace:
    """E^2 = span of the squares of the natural basis vectors."""
    return Subspace.from_vectors(
        [E.square_of_basis(i) for i in range(E.dim)], E.dim, E.field)


RIGHT = "Right"
PLENARY = "Plenary"


def power_subspaces(E: EvolutionAlgebra, kind: str, max_k: int):
    """The chain E^{<k>} (Right) or E^k (Plenary), k = 1..max_k,
    truncated once it stabilizes."""
    if max_k < 1:
        raise ShapeError("max_k must be at least 1")
    full = Subspace.full(E.dim, E.field)
    chain = [full]
    if kind == RIGHT:
        while len(chain) < max_k:
            nxt = product_subspace(E, chain[-1], full)
            if nxt == chain[-1]:
                break
            chain.append(nxt)
    elif kind == PLENARY:
        # the plenary chain is decreasing but may pause before dropping
        # further, so only the zero subspace is a safe early stop
        while len(chain) < max_k and not chain[-1].is_zero():
            # if A * A^k = A^k the chain is constant from here on
            if product_subspace(E, full, chain[-1]) == chain[-1]:
                break
            k = len(chain)
            acc = Subspace.zero(E.dim, E.field)
            for i in range(k):
                acc = acc + product_subspace(E, chain[i], chain[k - 1 - i])
            chain.append(acc)
    else:
        raise ShapeError(f"unknown power kind {kind!r}")
    return chain


def power_nilpotency(E: EvolutionAlgebra, kind: str) -> bool:
    """Whether the chosen power chain reaches zero.

    For the right chain, n+1 steps always suffice; for the plenary chain
    a product of 2^(k-1) factors lies in the k-th right power, so 2^n
    steps bound the nilpotency index.
    """
    if kind == RIGHT:
        chain = power_subspaces(E, RIGHT, E.dim + 1)
    else:
        chain = power_subspaces(E, PLENARY, 2 ** E.dim)
    return chain[-1].is_zero()


def relative_annihilator(E: EvolutionAlgebra, inside: Subspace,
                         against: Subspace) -> Subspace:
    """{x in inside : x * against = 0}."""
    if inside.ambient_dim != E.dim or against.ambient_dim != E.dim:
        from .errors import AmbientMismatch
        raise AmbientMismatch("subspace ambient must equal algebra dim")
    gens = inside.vectors()
    if not gens:
        return Subspace.zero(E.dim, E.field)
    constraints = []
    for t in against.vectors():
        prods = [E.multiply(g, t) for g in gens]
        for j in range(E.dim):
            constraints.append([p[j] for p in prods])
    if not constraints:
        return inside
    from .linalg import kernel
    coef = kernel(Matrix(constraints, E.field, len(gens)))
    vecs = []
    for c in coef.vectors():
        v = [E.field.zero()] * E.dim
        for ci, g in zip(c, gens):
            v = [a + ci * b for a, b in zip(v, g)]
        vecs.append(v)
    return Subspace.from_vectors(vecs, E.dim, E.field)


@dataclass
class WeightedGraph:
    """Directed weighted graph of an evolution algebra: an edge (i, j, w)
    for each nonzero structure entry A[i][j] = w."""

    vertex_count: int
    edges: list


def graph_of(E: EvolutionAlgebra) -> WeightedGraph:
    edges = [(i, j, E.structure[i, j])
             for i in range(E.dim) for j in range(E.dim)
             if not E.structure[i, j].is_zero()]
    return WeightedGraph(E.dim, edges)


def component_index_sets(E: EvolutionAlgebra) -> list[list[int]]:
    """Weakly connected components of the attached graph, as sorted index
    lists ordered by smallest member."""
    parent = list(range(E.dim))

    def find(a):
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    for i, j, _ in graph_of(E).edges:
        ri, rj = find(i), find(j)
        if ri != rj:
            parent[max(ri, rj)] = min(ri, rj)
    groups: dict[int, list[int]] = {}
    for i in range(E.dim):
        groups.setdefault(find(i), []).append(i)
    return [sorted(groups[k]) for k in sorted(groups)]


def restrict_to_indices(E: EvolutionAlgebra, idx: list[int]) -> EvolutionAlgebra:
    rows = [[E.structure[i, j] for j in idx] for i in idx]
    return EvolutionAlgebra(len(idx), Matrix(rows, E.field, len(idx)), E.field)


def split_components(E: EvolutionAlgebra) -> list[EvolutionAlgebra]:
    """The induced subalgebras on the weakly connected graph components."""
    return [restrict_to_indices(E, idx) for idx in component_index_sets(E)]


def is_ideal(E: EvolutionAlgebra, s: Subspace) -> bool:
    return s.contains(product_subspace(E, Subspace.full(E.dim, E.field), s))


DECOMPOSABLE = "Decomposable"
INDECOMPOSABLE = "Indecomposable"
UNKNOWN = "Unknown"


@dataclass
class DecompVerdict:
    status: str
    reason: str
    witness: tuple | None = None  # pair of complementary ideal Subspaces


def _complement_inside(small: Subspace, big: Subspace) -> Subspace:
    """A complement of small inside big, spanned by basis rows of big not
    reducible against small."""
    vecs = []
    current = small
    for v in big.vectors():
        if not current.contains_vector(v):
            vecs.append(v)
            current = current + Subspace.from_vectors(
                [v], big.ambient_dim, big.field)
    return Subspace.from_vectors(vecs, big.ambient_dim, big.field) \
        if vecs else Subspace.zero(big.ambient_dim, big.field)


def decomposability_check(E: EvolutionAlgebra) -> DecompVerdict:
    """Apply the sufficient decomposability/indecomposability criteria in
    a fixed order; Unknown when none of them applies."""
    n = E.dim
    field = E.field

    # (a) disconnected attached graph
    comps = component_index_sets(E)
    if len(comps) > 1:
        i_part = Subspace.coordinate(comps[0], n, field)
        j_part = Subspace.coordinate(
            [i for c in comps[1:] for i in c], n, field)
        return DecompVerdict(DECOMPOSABLE, "attached graph is disconnected",
                             (i_part, j_part))

    ann = E.annihilator()
    sq = square_subspace(E)

    # (b) annihilator not inside E^2: any complement of ann cap E^2
    # inside ann is a nonzero ideal with an ideal complement containing E^2
    if n >= 2 and not sq.contains(ann):
        c_part = _complement_inside(ann.intersect(sq), ann)
        i_part = sq + _complement_inside(sq + c_part,
                                         Subspace.full(n, field))
        return DecompVerdict(
            DECOMPOSABLE, "annihilator is not contained in E^2",
            (i_part, c_part))

    # (c) large annihilator: forces n = 2r with E^2 = ann and the r
    # nonzero squares independent; pair each non-annihilator basis vector
    # with its square
    if ann.dim >= 1 and 2 * ann.dim >= n:
        nonzero_idx = [i for i in range(n)
                       if not all(x.is_zero() for x in E.structure.rows[i])]
        first = nonzero_idx[0]
        i_vecs = [E.basis_vector(first), E.square_of_basis(first)]
        j_vecs = []
        for i in nonzero_idx[1:]:
            j_vecs.append(E.basis_vector(i))
            j_vecs.append(E.square_of_basis(i))
        i_part = Subspace.from_vectors(i_vecs, n, field)
        j_part = (Subspace.from_vectors(j_vecs, n, field) if j_vecs
                  else Subspace.zero(n, field))
        if (j_part.dim > 0 and i_part.intersect(j_part).is_zero()
                and (i_part + j_part).dim == n
                and is_ideal(E, i_part) and is_ideal(E, j_part)):
            return DecompVerdict(
                DECOMPOSABLE, "annihilator has dimension at least dim/2",
                (i_part, j_part))

    series = upper_series(E)
    if series.nilpotent:
        tv = series.type_vector
        r = len(tv)
        # (d0) a nilpotent dim-2 algebra with E^2 != 0 is the two-element
        # chain: any 1-dim nilpotent ideal squares to zero, so a direct
        # sum of two of them would force E^2 = 0
        if n == 2 and sq.dim > 0:
            return DecompVerdict(
                INDECOMPOSABLE, "nilpotent dim 2 with nonzero product")
        # (d) type [n,1,m] with ann inside E^2 is indecomposable
        if r == 3 and tv[1] == 1 and sq.contains(ann):
            return DecompVerdict(
                INDECOMPOSABLE,
                "type [n,1,m] with annihilator inside E^2")
        # (e) r >= 3 with a wide annihilator block is always decomposable;
        # in that regime the annihilator cannot sit inside E^2, so case
        # (b) above already produced the witness.  Kept as a safety net.
        if r >= 3 and 2 * tv[0] > n - r + 2:
            return DecompVerdict(
                DECOMPOSABLE,
                "nilpotent with r >= 3 and 2*n1 > n-r+2", None)

    return DecompVerdict(UNKNOWN, "no applicable criterion")


@dataclass
class InvariantProfile:
    """Dimension/containment data distinguishing canonical classes."""

    type_vector: list
    dim_sq: int
    dim_block_sq: dict          # i -> dim (U_i + U_1)^2, for i >= 2
    dim_u3_sq_sq: int | None    # dim ((U_3 + U_1)^2)^2
    u4_sq_in_u3: bool | None    # (U_4 + U_1)^2 subset of U_3 + U_1
    ann_in_sq: bool
    dim_sq_cap_u3: int | None   # dim (E^2 cap (U_3 + U_1))


def block_subspace(E: EvolutionAlgebra, series: AnnSeries, i: int) -> Subspace:
    """U_i as a coordinate subspace (1-based block index)."""
    return Subspace.coordinate(series.blocks[i - 1], E.dim, E.field)


def invariant_profile(E: EvolutionAlgebra) -> InvariantProfile:
    series = upper_series(E)
    if not series.nilpotent:
        raise NotNilpotent("invariant profile requires a nilpotent algebra")
    r = series.r
    u1 = block_subspace(E, series, 1)
    sq = square_subspace(E)
    dim_block_sq = {}
    for i in range(2, r + 1):
        ui = block_subspace(E, series, i) + u1
        dim_block_sq[i] = product_subspace(E, ui, ui).dim
    dim_u3_sq_sq = None
    u4_in = None
    dim_cap = None
    if r >= 3:
        u3 = block_subspace(E, series, 3) + u1
        p = product_subspace(E, u3, u3)
        dim_u3_sq_sq = product_subspace(E, p, p).dim
        dim_cap = sq.intersect(u3).dim
    if r >= 4:
        u4 = block_subspace(E, series, 4) + u1
        u3 = block_subspace(E, series, 3) + u1
        u4_in = u3.contains(product_subspace(E, u4, u4))
    return InvariantProfile(
        type_vector=list(series.type_vector),
        dim_sq=sq.dim,
        dim_block_sq=dim_block_sq,
        dim_u3_sq_sq=dim_u3_sq_sq,
        u4_sq_in_u3=u4_in,
        ann_in_sq=sq.contains(E.annihilator()),
        dim_sq_cap_u3=dim_cap,
    )
