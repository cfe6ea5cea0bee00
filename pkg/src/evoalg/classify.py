"""Classification of nilpotent evolution algebras of dimension at most 5.

``classify`` maps an algebra presented in a natural basis to its
canonical label: first it peels off direct-sum decompositions that can
be realized by natural bases (graph components, an annihilator vector
outside E^2, a large annihilator, and the two ann-dim-2 special splits),
then it reorders the basis into blocks adapted to the upper annihilating
series and runs a per-type normalizer that extracts the variant and the
normalized parameters.

Labels are field-independent data (parameters are extracted through
rational expressions plus canonical square roots); witness bases, which
realize the template by an explicit change of basis, may need roots that
the coefficient field lacks, in which case the label carries a
no-witness flag.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from fractions import Fraction

from .errors import (
    NotNilpotent,
    SpecMismatch,
    SqrtUnavailable,
    UnsupportedDim,
)
from .fields import (
    PRIME,
    RATIONALS,
    GAUSSIAN,
    FieldDescriptor,
    FieldElement,
    order_key,
    sqrt_if_square,
)
from .linalg import Matrix, Subspace
from .algebra import (
    EvolutionAlgebra,
    component_index_sets,
    restrict_to_indices,
    square_subspace,
    upper_series,
    _complement_inside,
)
from .tables import find_entry, orbit_min
from .oracle import verify_hom


@dataclass(frozen=True)
class CanonicalLabel:
    dim: int
    type_vector: tuple
    variant: int
    params: tuple = ()
    boundary: bool = False
    no_witness: bool = False

    def serialize(self) -> str:
        tv = ",".join(str(k) for k in self.type_vector)
        out = f"d{self.dim}:[{tv}]:v{self.variant}"
        if self.params:
            out += "(" + ",".join(str(p) for p in self.params) + ")"
        return out

    def skeleton(self):
        return (self.dim, self.type_vector, self.variant)


@dataclass
class Decomposed:
    """A direct-sum decomposition into indecomposable summand labels,
    sorted by serialization for determinism."""

    labels: list = dc_field(default_factory=list)

    def serialize(self) -> str:
        return " + ".join(l.serialize() for l in self.labels)


def labels_equal(l1, l2) -> bool:
    """Equal skeleton and parameter tuples in the same finite orbit."""
    if isinstance(l1, Decomposed) or isinstance(l2, Decomposed):
        if not (isinstance(l1, Decomposed) and isinstance(l2, Decomposed)):
            return False
        if len(l1.labels) != len(l2.labels):
            return False
        return all(labels_equal(a, b)
                   for a, b in zip(l1.labels, l2.labels))
    if l1.skeleton() != l2.skeleton():
        return False
    if not l1.params:
        return True
    entry = find_entry(l1.dim, l1.type_vector, l1.variant)
    field = l1.params[0].field
    return tuple(l2.params) in entry.param_orbit(tuple(l1.params), field)


# ---------------------------------------------------------------------------
# small vector helpers (coordinate lists of FieldElement)

def _zeros(n, field):
    return [field.zero()] * n


def _unit(i, n, field):
    v = _zeros(n, field)
    v[i] = field.one()
    return v


def _vadd(u, v):
    return [a + b for a, b in zip(u, v)]


def _vsub(u, v):
    return [a - b for a, b in zip(u, v)]


def _vscale(c, v):
    return [c * x for x in v]


def _sqrt(x: FieldElement) -> FieldElement:
    r = sqrt_if_square(x)
    if r is None:
        raise SqrtUnavailable(f"{x} is not a square in {x.field}")
    return r


def _cbrt(x: FieldElement) -> FieldElement:
    """A cube root, when one can be found exactly."""
    field = x.field
    if field.kind == PRIME:
        for c in field.elements():
            if c * c * c == x:
                return c
        raise SqrtUnavailable(f"{x} has no cube root in {field}")
    if field.kind == RATIONALS:
        q = x.value
    elif x.value[1] == 0:
        q = x.value[0]
    else:
        raise SqrtUnavailable(f"no exact cube root of {x} available")
    sign = -1 if q < 0 else 1
    q = abs(q)
    rn = round(q.numerator ** (1 / 3))
    rd = round(q.denominator ** (1 / 3))
    for dn in (rn - 1, rn, rn + 1):
        for dd in (rd - 1, rd, rd + 1):
            if dn ** 3 == q.numerator and dd > 0 and dd ** 3 == q.denominator:
                root = Fraction(sign * dn, dd)
                if field.kind == RATIONALS:
                    return FieldElement(field, root)
                return FieldElement(field, (root, Fraction(0)))
    raise SqrtUnavailable(f"{x} has no rational cube root")


# ---------------------------------------------------------------------------
# diagonal quadratic form utilities

class _DiagForm:
    """The form Q(v) = sum v_k^2 d_k on a coordinate space."""

    def __init__(self, diag):
        self.diag = list(diag)
        self.field = diag[0].field

    def q(self, v):
        acc = self.field.zero()
        for x, d in zip(v, self.diag):
            acc = acc + x * x * d
        return acc

    def b(self, u, v):
        acc = self.field.zero()
        for x, y, d in zip(u, v, self.diag):
            acc = acc + x * y * d
        return acc

    def orth_complement_basis(self, vecs):
        """An orthogonal basis, with anisotropic members whenever
        possible, of the orthogonal complement of span(vecs)."""
        m = len(self.diag)
        rows = [[v[k] * self.diag[k] for k in range(m)] for v in vecs]
        from .linalg import kernel
        comp = kernel(Matrix(rows, self.field, m)) if rows \
            else Subspace.full(m, self.field)
        basis = [list(v) for v in comp.vectors()]
        # Gram-Schmidt with isotropic-pivot repair
        out = []
        while basis:
            pick = next((v for v in basis if not self.q(v).is_zero()), None)
            if pick is None and len(basis) >= 2:
                # all remaining basis vectors isotropic; if the restricted
                # form is nondegenerate some sum is anisotropic
                for a in range(len(basis)):
                    for b in range(a + 1, len(basis)):
                        cand = _vadd(basis[a], basis[b])
                        if not self.q(cand).is_zero():
                            basis[a] = cand
                            pick = cand
                            break
                    if pick is not None:
                        break
            if pick is None:
                # totally isotropic leftover (possible when the restricted
                # form is degenerate); keep as-is
                out.extend(basis)
                break
            basis.remove(pick)
            out.append(pick)
            qp = self.q(pick)
            basis = [_vsub(v, _vscale(self.b(v, pick) / qp, pick))
                     for v in basis]
            basis = [v for v in basis if any(not x.is_zero() for x in v)]
        return out

    def hyperbolic_partner(self, a):
        """For isotropic a != 0: an isotropic d' with b(a, d') != 0."""
        m = len(self.diag)
        d = None
        for k in range(m):
            cand = _unit(k, m, self.field)
            if not self.b(a, cand).is_zero():
                d = cand
                break
        if d is None:
            raise SpecMismatch("vector lies in the radical of the form")
        h0 = self.b(a, d)
        two = self.field.from_int(2)
        d2 = _vsub(d, _vscale(self.q(d) / (two * h0), a))
        return d2, self.b(a, d2)


# ---------------------------------------------------------------------------
# natural-basis-preserving decompositions

def _solve_coords(basis_vecs, v, field):
    """Coordinates of v in the given basis of the ambient space."""
    n = len(v)
    cols = Matrix([[basis_vecs[j][i] for j in range(len(basis_vecs))]
                   for i in range(n)], field, len(basis_vecs))
    return cols.inverse().apply(v)


def _algebra_in_basis(E, basis_vecs):
    """Present E in a new natural basis; raises if not natural."""
    field = E.field
    n = E.dim
    for i in range(len(basis_vecs)):
        for j in range(i + 1, len(basis_vecs)):
            prod = E.multiply(basis_vecs[i], basis_vecs[j])
            if any(not x.is_zero() for x in prod):
                raise SpecMismatch("candidate basis is not natural")
    rows = [_solve_coords(basis_vecs, E.multiply(b, b), field)
            for b in basis_vecs]
    return EvolutionAlgebra(n, Matrix(rows, field, n), field)


def _refine_split(E, ann, sq):
    """When ann is not inside E^2: adjust each non-annihilator basis
    vector by an annihilator summand so that the basis splits into an
    ideal containing E^2 plus a zero-algebra complement."""
    n, field = E.dim, E.field
    ann_sq = ann.intersect(sq)
    c_part = _complement_inside(ann_sq, ann)
    i_part = sq + _complement_inside(sq + c_part, Subspace.full(n, field))
    i_vecs = [list(v) for v in i_part.vectors()]
    c_vecs = [list(v) for v in c_part.vectors()]
    mixed = i_vecs + c_vecs
    ann_idx = {i for i in range(n)
               if all(x.is_zero() for x in E.structure.rows[i])}
    new_basis = []
    for k in range(n):
        if k in ann_idx:
            continue
        coords = _solve_coords(mixed, _unit(k, n, field), field)
        c_comp = _zeros(n, field)
        for ci, cv in zip(coords[len(i_vecs):], c_vecs):
            c_comp = _vadd(c_comp, _vscale(ci, cv))
        new_basis.append(_vsub(_unit(k, n, field), c_comp))
    new_basis += [list(v) for v in ann_sq.vectors()]
    split_at = len(new_basis)
    new_basis += c_vecs
    adjusted = _algebra_in_basis(E, new_basis)
    head = restrict_to_indices(adjusted, list(range(split_at)))
    # the head must really be closed: its rows may not leak into the tail
    for i in range(split_at):
        for j in range(split_at, n):
            if not adjusted.structure[i, j].is_zero():
                raise SpecMismatch("refined split failed to close")
    tails = [restrict_to_indices(adjusted, [j])
             for j in range(split_at, n)]
    return [head] + tails


def _pairing_split(E):
    """For E^2 = ann with independent squares and dim = 2 * dim ann:
    the ideals span{e_i, e_i^2}."""
    n, field = E.dim, E.field
    nonzero = [i for i in range(n)
               if any(not x.is_zero() for x in E.structure.rows[i])]
    if len(nonzero) < 2 or 2 * len(nonzero) != n:
        return None
    basis = []
    for i in nonzero:
        basis.append(_unit(i, n, field))
        basis.append(list(E.square_of_basis(i)))
    rank = Subspace.from_vectors(basis, n, field).dim
    if rank != n:
        return None
    adjusted = _algebra_in_basis(E, basis)
    return [restrict_to_indices(adjusted, [2 * k, 2 * k + 1])
            for k in range(len(nonzero))]


# ---------------------------------------------------------------------------
# the classifier

def classify(E: EvolutionAlgebra):
    """Canonical label of E, or the Decomposed list of summand labels."""
    if E.dim > 5:
        raise UnsupportedDim("classification covers dimension at most 5")
    series = upper_series(E)
    if not series.nilpotent:
        raise NotNilpotent("classification applies to nilpotent algebras")

    comps = component_index_sets(E)
    if len(comps) > 1:
        return _gather([restrict_to_indices(E, idx) for idx in comps])

    n, field = E.dim, E.field
    ann = E.annihilator()
    sq = square_subspace(E)
    if n >= 2 and not sq.contains(ann):
        return _gather(_refine_split(E, ann, sq))
    if n >= 2 and 2 * ann.dim >= n:
        parts = _pairing_split(E)
        if parts is not None:
            return _gather(parts)

    result = _normalize(E, series)
    if isinstance(result, list):  # an ann-dim-2 special split
        return _gather(result)
    return result


def _gather(parts):
    labels = []
    for sub in parts:
        res = classify(sub)
        if isinstance(res, Decomposed):
            labels.extend(res.labels)
        else:
            labels.append(res)
    labels.sort(key=lambda l: l.serialize())
    return Decomposed(labels)


def _normalize(E, series):
    """Adapted reorder + per-type normalizer for an indecomposable
    candidate."""
    tv = tuple(series.type_vector)
    perm = [i for blk in reversed(series.blocks) for i in blk]
    field = E.field
    rows = [[E.structure[perm[i], perm[j]] for j in range(E.dim)]
            for i in range(E.dim)]
    Ead = EvolutionAlgebra(E.dim, Matrix(rows, field, E.dim), field)

    handler = _HANDLERS.get(tv)
    if handler is None:
        raise SpecMismatch(f"no normalizer for type {list(tv)}")
    out = handler(Ead, tv)
    if isinstance(out, list):
        return out
    variant, params, boundary, builder = out
    entry = find_entry(E.dim, tv, variant)
    params = orbit_min(entry, tuple(params), field) if params else ()
    no_witness = False
    try:
        _witness_basis(E, Ead, perm, entry, params, builder)
    except SqrtUnavailable:
        no_witness = True
    return CanonicalLabel(E.dim, tv, variant, params,
                          boundary=boundary, no_witness=no_witness)


def _witness_basis(E, Ead, perm, entry, params, builder) -> Matrix:
    """A matrix whose columns express the template's natural basis in
    E's coordinates, verified against the template."""
    template = entry.template(params, E.field)
    n = E.dim
    last_err = None
    found_any = False
    for cols_ad in builder(Ead, params):
        found_any = True
        cols = []
        for v in cols_ad:
            w = _zeros(n, E.field)
            for k in range(n):
                w[perm[k]] = v[k]
            cols.append(w)
        m = Matrix([[cols[j][i] for j in range(n)] for i in range(n)],
                   E.field, n)
        try:
            if m.is_invertible() and verify_hom(template, E, m):
                return m
        except Exception as exc:  # singular candidate etc.
            last_err = exc
    if not found_any:
        raise SqrtUnavailable("no normalizing basis candidates")
    raise SqrtUnavailable(
        f"no candidate basis realizes the template ({last_err})")


def witness_isomorphism(E1: EvolutionAlgebra, E2: EvolutionAlgebra):
    """Change-of-basis matrix carrying E1's products to E2's, when the
    labels agree and the needed roots exist; None when labels differ."""
    if E1.dim > 5 or E2.dim > 5:
        raise UnsupportedDim("classification covers dimension at most 5")
    l1, l2 = classify(E1), classify(E2)
    if not labels_equal(l1, l2):
        return None
    if E1 == E2:
        return Matrix.identity(E1.dim, E1.field)
    try:
        b1 = _witness_for(E1, l1)
        b2 = _witness_for(E2, _use_params_of(l1, l2))
        m = b2 * b1.inverse()
        if verify_hom(E1, E2, m):
            return m
    except SqrtUnavailable:
        pass
    # root-free fallback over finite fields: delegate to the oracle
    if E1.field.kind == PRIME and not isinstance(l1, Decomposed):
        from .oracle import (RANDOMIZED, SearchBudget, exhaustive_iso,
                             randomized_iso)
        from .errors import BudgetExceeded
        try:
            m = exhaustive_iso(E1, E2)
        except BudgetExceeded:
            m = randomized_iso(E1, E2, SearchBudget(
                mode=RANDOMIZED, max_trials=200000, seed=1))
        if m is not None:
            return m
    raise SqrtUnavailable(
        "labels agree but no witness basis exists over this field")


def _use_params_of(l1, l2):
    return l2


def _witness_for(E, label) -> Matrix:
    if isinstance(label, Decomposed):
        raise SqrtUnavailable("witness bases are built per indecomposable "
                              "summand only")
    series = upper_series(E)
    perm = [i for blk in reversed(series.blocks) for i in blk]
    field = E.field
    rows = [[E.structure[perm[i], perm[j]] for j in range(E.dim)]
            for i in range(E.dim)]
    Ead = EvolutionAlgebra(E.dim, Matrix(rows, field, E.dim), field)
    handler = _HANDLERS[tuple(series.type_vector)]
    out = handler(Ead, tuple(series.type_vector))
    if isinstance(out, list):
        raise SqrtUnavailable("decomposable input")
    variant, params, boundary, builder = out
    entry = find_entry(E.dim, label.type_vector, label.variant)
    return _witness_basis(E, Ead, perm, entry, tuple(label.params), builder)


# ---------------------------------------------------------------------------
# per-type normalizers.  Each receives the algebra in adapted coordinates
# (top block first, annihilator last) and returns
# (variant, raw params, boundary, builder) or a list of summands.

def _signs(x):
    return (x, -x) if not x.is_zero() else (x,)


def _h_zero(Ead, tv):
    # type [1]: the one-dimensional zero algebra
    def build(Ead, params):
        yield [[Ead.field.one()]]
    return 1, (), False, build


def _chain_builder(Ead, params):
    """Basis x, x^2, (x^2)^2, ... for plain chains."""
    n = Ead.dim
    field = Ead.field
    cols = [_unit(0, n, field)]
    for _ in range(n - 1):
        cols.append(Ead.multiply(cols[-1], cols[-1]))
    yield cols


def _h_chain(Ead, tv):
    return 1, (), False, _chain_builder


def _h_star(Ead, tv):
    # type [1, n-1]: u_i^2 = lam_i s
    n = Ead.dim

    def build(Ead, params):
        field = Ead.field
        lam = [Ead.structure[i, n - 1] for i in range(n - 1)]
        try:
            scales = [_sqrt(lam[0] / lam[i]) for i in range(1, n - 1)]
        except SqrtUnavailable:
            return
        for flip in range(1 << len(scales)):
            cols = [_unit(0, n, field)]
            for k, t in enumerate(scales):
                tt = -t if (flip >> k) & 1 else t
                cols.append(_vscale(tt, _unit(k + 1, n, field)))
            cols.append(Ead.square_of_basis(0))
            yield cols
    return 1, (), False, build


def _h_1n1(Ead, tv):
    # adapted (x, u_1..u_m, s); x^2 = a + mu s with a in U_2
    m = tv[1]
    n = Ead.dim
    field = Ead.field
    lam = [Ead.structure[1 + k, n - 1] for k in range(m)]
    form = _DiagForm(lam)
    a = [Ead.structure[0, 1 + k] for k in range(m)]
    qa = form.q(a)

    if not qa.is_zero():
        def build(Ead, params):
            x2 = Ead.square_of_basis(0)
            comp = form.orth_complement_basis([a])
            scales = []
            for w in comp:
                qw = form.q(w)
                if qw.is_zero():
                    return
                scales.append((w, qa / qw))
            try:
                roots = [_sqrt(r) for _, r in scales]
            except SqrtUnavailable:
                return
            for flip in range(1 << len(roots)):
                cols = [_unit(0, n, field), x2]
                for k, ((w, _), t) in enumerate(zip(scales, roots)):
                    tt = -t if (flip >> k) & 1 else t
                    vec = _zeros(n, field)
                    for j in range(m):
                        vec[1 + j] = tt * w[j]
                    cols.append(vec)
                cols.append(Ead.multiply(x2, x2))
                yield cols
        return 1, (), False, build

    def build_iso(Ead, params):
        # a is isotropic: hyperbolic pair gives x^2 = u1 + i u2
        i_elt = field.i()
        dprime, h = form.hyperbolic_partner(a)
        comp = form.orth_complement_basis([a, dprime])
        half = field.from_int(2).inverse()
        if comp:
            g3 = form.q(comp[0])
            if g3.is_zero():
                return
            delta = g3 / h
        else:
            delta = field.one()
        u1 = _vadd(_vscale(half, a), _vscale(delta, dprime))
        u2 = _vscale(-i_elt, _vsub(_vscale(half, a),
                                   _vscale(delta, dprime)))
        mu = Ead.structure[0, n - 1]
        cols = [_unit(0, n, field)]
        v1 = _zeros(n, field)
        for j in range(m):
            v1[1 + j] = u1[j]
        v1[n - 1] = mu
        cols.append(v1)
        v2 = _zeros(n, field)
        for j in range(m):
            v2[1 + j] = u2[j]
        cols.append(v2)
        if comp:
            # the first complement direction sets the common square value
            # (delta = q(comp[0]) / h), so it enters unscaled
            vec = _zeros(n, field)
            for j in range(m):
                vec[1 + j] = comp[0][j]
            cols.append(vec)
        for w in comp[1:]:
            # remaining orthogonal directions, scaled to the common value
            qw = form.q(w)
            if qw.is_zero():
                return
            t = _sqrt(form.q(comp[0]) / qw)
            vec = _zeros(n, field)
            for j in range(m):
                vec[1 + j] = t * w[j]
            cols.append(vec)
        cols.append(Ead.multiply(v1, v1))
        yield cols
        # sign variant on u2
        alt = list(cols)
        alt[2] = _vscale(field.from_int(-1), cols[2])
        yield alt
    return 2, (), False, build_iso


def _h_11n(Ead, tv):
    # adapted (u_1..u_m, w, s): u_i^2 = lam_i w + nu_i s, w^2 = gw s
    m = tv[2]
    n = Ead.dim
    field = Ead.field
    lam = [Ead.structure[k, m] for k in range(m)]
    nu = [Ead.structure[k, n - 1] for k in range(m)]
    gw = Ead.structure[m, n - 1]
    tvals = [nu[k] / lam[k] for k in range(m)]
    distinct = []
    for t in tvals:
        if t not in distinct:
            distinct.append(t)

    def build_equal(Ead, params):
        base = 0
        try:
            roots = [_sqrt(lam[base] / lam[k]) for k in range(m) if k != base]
        except SqrtUnavailable:
            return
        others = [k for k in range(m) if k != base]
        for flip in range(1 << len(roots)):
            cols = [_unit(base, n, field)]
            for j, k in enumerate(others):
                t = -roots[j] if (flip >> j) & 1 else roots[j]
                cols.append(_vscale(t, _unit(k, n, field)))
            wn = Ead.square_of_basis(base)
            cols.append(wn)
            cols.append(Ead.multiply(wn, wn))
            yield cols

    if len(distinct) == 1:
        return 1, (), False, build_equal

    def scaled_cols(assign):
        """assign maps template slot -> raw index; slot order is the
        template's u-order; the template's g-values per slot are given by
        gslot."""
        base, cval = assign["base"], assign["gap"]
        tb2 = (tvals[cval] - tvals[base]) / (lam[base] * gw)
        tb = _sqrt(tb2)
        out = {}
        for k in range(m):
            tk = _sqrt(tb2 * lam[base] / lam[k])
            out[k] = tk
        return out

    if m == 2:
        # two eigenvalues: template u1^2 = w, u2^2 = w + s
        def build(Ead, params):
            for base, gap in ((0, 1), (1, 0)):
                try:
                    sc = scaled_cols({"base": base, "gap": gap})
                except SqrtUnavailable:
                    continue
                for s0 in _signs(sc[base]):
                    for s1 in _signs(sc[gap]):
                        ub = _vscale(s0, _unit(base, n, field))
                        ug = _vscale(s1, _unit(gap, n, field))
                        wn = Ead.multiply(ub, ub)
                        cols = [ub, ug, wn, Ead.multiply(wn, wn)]
                        yield cols
        return 2, (), False, build

    # m == 3
    if len(distinct) == 2:
        def build(Ead, params):
            import itertools
            for order in itertools.permutations(range(3)):
                a, b, c = order  # slots u1, u2 (g=0), u3 (g=1)
                if tvals[a] != tvals[b]:
                    continue
                try:
                    sc = scaled_cols({"base": a, "gap": c})
                except SqrtUnavailable:
                    continue
                ua = _vscale(sc[a], _unit(a, n, field))
                ub = _vscale(sc[b], _unit(b, n, field))
                uc = _vscale(sc[c], _unit(c, n, field))
                wn = Ead.multiply(ua, ua)
                yield [ua, ub, uc, wn, Ead.multiply(wn, wn)]
        return 2, (), False, build

    # three distinct eigenvalues: anharmonic parameter
    alpha = (tvals[0] - tvals[1]) / (tvals[2] - tvals[1])

    def build(Ead, params):
        import itertools
        (target,) = params
        for order in itertools.permutations(range(3)):
            a, b, c = order  # slots: u1 (g=alpha), u2 (g=0), u3 (g=1)
            cand = (tvals[a] - tvals[b]) / (tvals[c] - tvals[b])
            if cand != target:
                continue
            try:
                sc = scaled_cols({"base": b, "gap": c})
            except SqrtUnavailable:
                continue
            for sa in _signs(sc[a]):
                for sb in _signs(sc[b]):
                    for scc in _signs(sc[c]):
                        ua = _vscale(sa, _unit(a, n, field))
                        ub = _vscale(sb, _unit(b, n, field))
                        uc = _vscale(scc, _unit(c, n, field))
                        wn = Ead.multiply(ub, ub)
                        yield [ua, ub, uc, wn, Ead.multiply(wn, wn)]
    return 3, (alpha,), False, build


def _h_111n(Ead, tv):
    # adapted (u_1..u_m, w, t, s)
    m = tv[3]
    n = Ead.dim
    field = Ead.field
    lam = [Ead.structure[k, m] for k in range(m)]
    mu = [Ead.structure[k, m + 1] for k in range(m)]
    nu = [Ead.structure[k, n - 1] for k in range(m)]
    aw = Ead.structure[m, m + 1]
    bw = Ead.structure[m, n - 1]
    gt = Ead.structure[m + 1, n - 1]
    f = [mu[k] / (aw * lam[k]) for k in range(m)]
    g = [(nu[k] - mu[k] * bw / aw) / (aw * aw * gt * lam[k])
         for k in range(m)]

    if m == 1:
        if f[0].is_zero():
            def build(Ead, params):
                yield from _chain_builder(Ead, params)
            return 1, (), False, build

        def build_v2(Ead, params):
            eps2 = mu[0] / (lam[0] * lam[0] * aw)
            try:
                eps = _sqrt(eps2)
            except SqrtUnavailable:
                return
            for e in _signs(eps):
                un = _vscale(e, _unit(0, n, field))
                usq = Ead.multiply(un, un)
                a = usq[1]  # w-coefficient
                tn = _zeros(n, field)
                tn[2] = a * a * aw
                tn[3] = a * a * bw
                wn = _vsub(usq, tn)
                yield [un, wn, tn, Ead.multiply(tn, tn)]
        return 2, (), False, build_v2

    # m == 2
    zf = [k for k in range(2) if f[k].is_zero()]
    if len(zf) == 2:
        if g[0] == g[1]:
            def build(Ead, params):
                wn = Ead.square_of_basis(0)
                tn = Ead.multiply(wn, wn)
                try:
                    t2 = _sqrt(lam[0] / lam[1])
                except SqrtUnavailable:
                    return
                for s in _signs(t2):
                    yield [_unit(0, n, field),
                           _vscale(s, _unit(1, n, field)),
                           wn, tn, Ead.multiply(tn, tn)]
            return 1, (), False, build

        def build_v2(Ead, params):
            for base, gap in ((0, 1), (1, 0)):
                c6 = (nu[gap] / lam[gap] - nu[base] / lam[base]) \
                    / (lam[base] ** 3 * aw * aw * gt)
                try:
                    tb2 = _cbrt(c6)
                    tb = _sqrt(tb2)
                    tg = _sqrt(tb2 * lam[base] / lam[gap])
                except SqrtUnavailable:
                    continue
                for sb in _signs(tb):
                    for sg in _signs(tg):
                        ub = _vscale(sb, _unit(base, n, field))
                        ug = _vscale(sg, _unit(gap, n, field))
                        wn = Ead.multiply(ub, ub)
                        tn = Ead.multiply(wn, wn)
                        yield [ug, ub, wn, tn, Ead.multiply(tn, tn)]
        return 2, (), False, build_v2

    if len(zf) == 1:
        z = zf[0]
        a = 1 - z
        gamma = (g[a] - g[z]) / (f[a] ** 3)

        def build(Ead, params):
            tb2 = mu[a] / (lam[a] * lam[z] * aw)
            ta2 = tb2 * lam[z] / lam[a]
            try:
                tb = _sqrt(tb2)
                ta = _sqrt(ta2)
            except SqrtUnavailable:
                return
            for sb in _signs(tb):
                for sa in _signs(ta):
                    ub = _vscale(sb, _unit(z, n, field))
                    ua = _vscale(sa, _unit(a, n, field))
                    wn = Ead.multiply(ub, ub)
                    tn = Ead.multiply(wn, wn)
                    yield [ua, ub, wn, tn, Ead.multiply(tn, tn)]
        return 3, (gamma,), False, build

    # both f nonzero
    cand = []
    for a in range(2):
        z = 1 - a
        cand.append((f[z] / f[a], (g[a] - g[z]) / (f[a] ** 3)))

    def build(Ead, params):
        for a in range(2):
            z = 1 - a
            if cand[a] != tuple(params):
                continue
            beta = cand[a][0]
            avec = mu[a] / (lam[a] * aw)
            ta2 = avec / lam[a]
            tb2 = avec / lam[z]
            try:
                ta = _sqrt(ta2)
                tb = _sqrt(tb2)
            except SqrtUnavailable:
                continue
            gamma = cand[a][1]
            tn = _zeros(n, field)
            tn[m + 1] = avec * avec * aw
            tn[n - 1] = avec * avec * bw
            sn = Ead.multiply(tn, tn)
            for sa in _signs(ta):
                for sb in _signs(tb):
                    ua = _vscale(sa, _unit(a, n, field))
                    ub = _vscale(sb, _unit(z, n, field))
                    wn = _vsub(_vsub(Ead.multiply(ua, ua), tn),
                               _vscale(gamma, sn))
                    yield [ua, ub, wn, tn, sn]
    return 4, min((c for c in cand),
                  key=lambda t: (order_key(t[0]), order_key(t[1]))), \
        False, build


def _h_122(Ead, tv):
    # adapted (x, y, u, v, s)
    n = Ead.dim
    field = Ead.field
    lam_u = Ead.structure[2, 4]
    lam_v = Ead.structure[3, 4]
    form = _DiagForm([lam_u, lam_v])
    a = [Ead.structure[0, 2], Ead.structure[0, 3]]
    b = [Ead.structure[1, 2], Ead.structure[1, 3]]
    mu_x = Ead.structure[0, 4]
    nu_y = Ead.structure[1, 4]
    qa, qb, qab = form.q(a), form.q(b), form.b(a, b)
    swapped = False
    if qa.is_zero() and not qb.is_zero():
        a, b, mu_x, nu_y = b, a, nu_y, mu_x
        qa, qb = qb, qa
        swapped = True

    def x_idx():
        return 1 if swapped else 0

    def y_idx():
        return 0 if swapped else 1

    def u_part(vec2, extra_s=None):
        v = _zeros(n, field)
        v[2], v[3] = vec2[0], vec2[1]
        if extra_s is not None:
            v[4] = extra_s
        return v

    if not qa.is_zero():
        det = qa * qb - qab * qab
        if not det.is_zero():
            alpha2 = qab * qab / det
            alpha = sqrt_if_square(alpha2)
            if alpha is None:
                raise SqrtUnavailable(
                    "the [1,2,2] parameter is not representable in "
                    f"{field}")

            def build(Ead, params):
                (target,) = params
                comp = form.orth_complement_basis([a])
                w0 = comp[0]
                qw0 = form.q(w0)
                if qw0.is_zero():
                    return
                # decompose b = A a + B w0
                gram = Matrix([[qa, form.b(a, w0)],
                               [form.b(a, w0), qw0]], field, 2)
                coeff = gram.inverse().apply([form.b(b, a), form.b(b, w0)])
                A, B = coeff
                if B.is_zero():
                    return
                try:
                    t0 = _sqrt(qa / qw0)
                except SqrtUnavailable:
                    return
                for t in _signs(t0):
                    if t * A / B != target:
                        continue
                    eps2 = t / B
                    try:
                        eps = _sqrt(eps2)
                    except SqrtUnavailable:
                        continue
                    un = u_part(a, mu_x)
                    sn = Ead.multiply(un, un)
                    sigma = eps2 * (nu_y - A * mu_x)
                    vn = u_part(_vscale(t, w0), sigma)
                    xn = _unit(x_idx(), n, field)
                    yn = _vscale(eps, _unit(y_idx(), n, field))
                    yield [xn, yn, un, vn, sn]
            return 1, (alpha,), False, build

        # b parallel to a: variants 2 / 3
        A = (form.b(b, a)) / qa
        kappa = nu_y - A * mu_x
        if kappa.is_zero():
            def build(Ead, params):
                comp = form.orth_complement_basis([a])
                w0 = comp[0]
                qw0 = form.q(w0)
                try:
                    ey = _sqrt(A.inverse())
                    t = _sqrt(qa / qw0)
                except SqrtUnavailable:
                    return
                for e in _signs(ey):
                    for tt in _signs(t):
                        un = u_part(a, mu_x)
                        sn = Ead.multiply(un, un)
                        vn = u_part(_vscale(tt, w0))
                        yield [_unit(x_idx(), n, field),
                               _vscale(e, _unit(y_idx(), n, field)),
                               un, vn, sn]
            return 2, (), False, build

        def build_v3(Ead, params):
            comp = form.orth_complement_basis([a])
            w0 = comp[0]
            qw0 = form.q(w0)
            ex2 = kappa / (A * qa)
            try:
                ex = _sqrt(ex2)
                ey = _sqrt(ex2 / A)
                t = _sqrt(ex2 * ex2 * qa / qw0)
            except SqrtUnavailable:
                return
            for sx in _signs(ex):
                for sy in _signs(ey):
                    for st in _signs(t):
                        xn = _vscale(sx, _unit(x_idx(), n, field))
                        un = Ead.multiply(xn, xn)
                        sn = Ead.multiply(un, un)
                        vn = u_part(_vscale(st, w0))
                        yield [xn,
                               _vscale(sy, _unit(y_idx(), n, field)),
                               un, vn, sn]
        return 3, (), False, build_v3

    # both squares isotropic
    if not field.has_i:
        raise SqrtUnavailable(f"{field} lacks i, needed for this class")
    i_elt = field.i()
    dprime, h = form.hyperbolic_partner(a)
    half = field.from_int(2).inverse()
    gram = Matrix([[qa, h], [h, form.q(dprime)]], field, 2)
    cc = gram.inverse().apply([form.b(b, a), form.b(b, dprime)])
    c_plus, c_minus = cc  # b = c_plus a + c_minus d'

    def pair_cols(delta, sigma_x):
        u0 = _vadd(_vscale(half, a), _vscale(delta, dprime))
        v0 = _vscale(-i_elt, _vsub(_vscale(half, a),
                                   _vscale(delta, dprime)))
        return u_part(u0, sigma_x), u_part(v0)

    if not c_minus.is_zero() and not c_plus.is_zero():
        raise SpecMismatch("isotropic squares must lie on isotropic lines")

    if c_minus.is_zero():
        rho = c_plus
        kappa = nu_y / rho - mu_x
        if kappa.is_zero():
            variant = 4
        else:
            variant = 5

        def build(Ead, params):
            try:
                ey = _sqrt(rho.inverse())
            except SqrtUnavailable:
                return
            if variant == 4:
                delta = field.one()
            else:
                delta = kappa / h
                if delta.is_zero():
                    return
            un, vn = pair_cols(delta, mu_x)
            sn = Ead.multiply(un, un)
            for e in _signs(ey):
                yield [_unit(0, n, field),
                       _vscale(e, _unit(1, n, field)), un, vn, sn]
        return variant, (), False, build

    # b on the opposite isotropic line
    def build_v6(Ead, params):
        ey2 = field.from_int(2) / c_minus
        try:
            ey = _sqrt(ey2)
        except SqrtUnavailable:
            return
        # shift the pair by tau*s: u -> u - i tau s, v -> v + tau s keeps
        # x^2 = u + iv while fixing the s-part of u - iv to match y^2
        tau = -i_elt * (mu_x - ey2 * nu_y) * half
        u0, v0 = pair_cols(field.one(), mu_x)
        un = _vsub(u0, u_part([field.zero()] * 2, i_elt * tau))
        vn = _vadd(v0, u_part([field.zero()] * 2, tau))
        sn = Ead.multiply(un, un)
        for e in _signs(ey):
            yield [_unit(0, n, field),
                   _vscale(e, _unit(1, n, field)), un, vn, sn]
    return 6, (), False, build_v6


def _h_1211(Ead, tv):
    # adapted (x, y, u, v, s)
    n = Ead.dim
    field = Ead.field
    lam_u = Ead.structure[2, 4]
    lam_v = Ead.structure[3, 4]
    form = _DiagForm([lam_u, lam_v])
    by = [Ead.structure[1, 2], Ead.structure[1, 3]]
    mu_y = Ead.structure[1, 4]
    lam = Ead.structure[0, 1]
    ax = [Ead.structure[0, 2], Ead.structure[0, 3]]
    nu_x = Ead.structure[0, 4]
    qby = form.q(by)

    def u2vec(c2, s=None):
        v = _zeros(n, field)
        v[2], v[3] = c2[0], c2[1]
        if s is not None:
            v[4] = s
        return v

    if not qby.is_zero():
        A = form.b(ax, by) / qby
        wvec = _vsub(ax, _vscale(A, by))
        qw = form.q(wvec)
        comp = form.orth_complement_basis([by])
        w0 = comp[0]
        qw0 = form.q(w0)

        def common_cols(ey, sy_shift, tvar):
            yn = _vadd(_vscale(ey, _unit(1, n, field)),
                       u2vec([field.zero()] * 2, sy_shift)
                       if sy_shift is not None else _zeros(n, field))
            yn = [a for a in yn]
            un = Ead.multiply(yn, yn)
            sn = Ead.multiply(un, un)
            vn = u2vec(_vscale(tvar, w0))
            return yn, un, sn, vn

        if A.is_zero() and all(x.is_zero() for x in wvec):
            def build(Ead, params):
                ey = lam
                try:
                    t0 = _sqrt(ey ** 4 * qby / qw0)
                except SqrtUnavailable:
                    return
                for t in _signs(t0):
                    yn, un, sn, vn = common_cols(ey, nu_x, t)
                    yield [_unit(0, n, field), yn, un, vn, sn]
            return 1, (), False, build

        if A.is_zero():
            def build_v2(Ead, params):
                # decompose the U_2 part of x^2 along w0
                B = form.b(ax, w0) / qw0
                ex4 = B * B * qw0 / (lam ** 4 * qby)
                try:
                    ex2 = _sqrt(ex4)
                except SqrtUnavailable:
                    return
                for e2 in _signs(ex2):
                    try:
                        ex = _sqrt(e2)
                    except SqrtUnavailable:
                        continue
                    for sx in _signs(ex):
                        ey = sx * sx * lam
                        t = sx * sx * B
                        yn, un, sn, vn = common_cols(
                            ey, sx * sx * nu_x, t)
                        yield [_vscale(sx, _unit(0, n, field)),
                               yn, un, vn, sn]
            return 2, (), False, build_v2

        beta2 = qw / (A * A * qby)
        beta = sqrt_if_square(beta2)
        if beta is None:
            raise SqrtUnavailable(
                f"the [1,2,1,1] parameter is not representable in {field}")

        def build_v3(Ead, params):
            (target,) = params
            B = form.b(ax, w0) / qw0
            ex2 = A / (lam * lam)
            ey = A / lam
            try:
                ex = _sqrt(ex2)
                t0 = _sqrt(ey ** 4 * qby / qw0)
            except SqrtUnavailable:
                return
            for t in _signs(t0):
                realized = ex2 * B / t
                if realized != target:
                    continue
                for sx in _signs(ex):
                    sy_shift = ex2 * (nu_x - A * mu_y)
                    yn, un, sn, vn = common_cols(ey, sy_shift, t)
                    yield [_vscale(sx, _unit(0, n, field)),
                           yn, un, vn, sn]
        return 3, (beta,), False, build_v3

    # second class: y^2 isotropic
    if not field.has_i:
        raise SqrtUnavailable(f"{field} lacks i, needed for this class")
    i_elt = field.i()
    dprime, h = form.hyperbolic_partner(by)
    half = field.from_int(2).inverse()
    gram = Matrix([[qby, h], [h, form.q(dprime)]], field, 2)
    cc = gram.inverse().apply([form.b(ax, by), form.b(ax, dprime)])
    c_plus, c_minus = cc
    qax = form.q(ax)

    def second_class_cols(ex, delta_coef, base_scale):
        """base_scale scales y; the hyperbolic pair is built from the
        rescaled y's square."""
        yn = _vadd(_vscale(base_scale, _unit(1, n, field)),
                   u2vec([field.zero()] * 2))
        ysq = Ead.multiply(yn, yn)
        bpair = [ysq[2], ysq[3]]
        u0 = _vadd(_vscale(half, bpair), _vscale(delta_coef, dprime))
        v0 = _vscale(-i_elt, _vsub(_vscale(half, bpair),
                                   _vscale(delta_coef, dprime)))
        un = u2vec(u0, ysq[4])
        vn = u2vec(v0)
        sn = Ead.multiply(un, un)
        return yn, un, vn, sn

    if all(x.is_zero() for x in ax):
        def build_v4(Ead, params):
            # x^2 = lam y + nu_x s: fold into y
            yn = _vadd(_vscale(lam, _unit(1, n, field)),
                       u2vec([field.zero()] * 2, nu_x))
            ysq = Ead.multiply(yn, yn)
            bpair = [ysq[2], ysq[3]]
            u0 = _vadd(_vscale(half, bpair), dprime)
            v0 = _vscale(-i_elt, _vsub(_vscale(half, bpair), dprime))
            un = u2vec(u0, ysq[4])
            vn = u2vec(v0)
            sn = Ead.multiply(un, un)
            yield [_unit(0, n, field), yn, un, vn, sn]
            alt = [_unit(0, n, field), yn, un,
                   _vscale(field.from_int(-1), vn), sn]
            yield alt
        return 4, (), False, build_v4

    if not qax.is_zero():
        def build_v5(Ead, params):
            ex2 = field.from_int(2) * c_plus / (lam * lam)
            try:
                ex = _sqrt(ex2)
            except SqrtUnavailable:
                return
            for sx in _signs(ex):
                e2 = sx * sx
                delta = e2 * c_minus
                base = e2 * lam
                yn0, un, vn, sn = second_class_cols(sx, delta, base)
                # absorb s-components into the y column
                sigma_u = un[4]
                sigma_y = e2 * nu_x - sigma_u
                yn = _vadd(yn0, u2vec([field.zero()] * 2, sigma_y))
                yield [_vscale(sx, _unit(0, n, field)), yn, un, vn, sn]
        return 5, (), False, build_v5

    # a_x isotropic and nonzero
    if c_minus.is_zero():
        def build_v6(Ead, params):
            ex2 = c_plus / (lam * lam)
            try:
                ex = _sqrt(ex2)
            except SqrtUnavailable:
                return
            for sx in _signs(ex):
                e2 = sx * sx
                base = e2 * lam
                yn0, un, vn, sn = second_class_cols(sx, e2 * c_plus, base)
                sigma_y = e2 * nu_x - un[4] * (field.one())
                yn = _vadd(yn0, u2vec([field.zero()] * 2, sigma_y))
                yield [_vscale(sx, _unit(0, n, field)), yn, un, vn, sn]
                yield [_vscale(sx, _unit(0, n, field)), yn, un,
                       _vscale(field.from_int(-1), vn), sn]
        return 6, (), False, build_v6

    def build_v7(Ead, params):
        # x's U_2 part lies on the opposite isotropic line
        delta = c_minus * half
        base = lam
        yn0, un, vn, sn = second_class_cols(field.one(), delta, base)
        sigma_y = nu_x - un[4]
        yn = _vadd(yn0, u2vec([field.zero()] * 2, sigma_y))
        yield [_unit(0, n, field), yn, un, vn, sn]
        yield [_unit(0, n, field), yn, un,
               _vscale(field.from_int(-1), vn), sn]
    return 7, (), False, build_v7


def _h_1121(Ead, tv):
    # adapted (x, y, z, w, s)
    n = Ead.dim
    field = Ead.field
    p1, q1 = Ead.structure[1, 3], Ead.structure[1, 4]
    p2, q2 = Ead.structure[2, 3], Ead.structure[2, 4]
    gw = Ead.structure[3, 4]
    c1, c2 = Ead.structure[0, 1], Ead.structure[0, 2]
    c3, c4 = Ead.structure[0, 3], Ead.structure[0, 4]
    delta = q1 / p1 - q2 / p2

    def u3vec(cy, cz, s=None):
        v = _zeros(n, field)
        v[1], v[2] = cy, cz
        if s is not None:
            v[4] = s
        return v

    if delta.is_zero():
        form = _DiagForm([p1, p2])
        c = [c1, c2]
        qc = form.q(c)
        if not qc.is_zero():
            comp = form.orth_complement_basis([c])
            w0 = comp[0]
            qw0 = form.q(w0)
            if c3.is_zero():
                def build(Ead, params):
                    yn = u3vec(c1, c2, c4)
                    wn = Ead.multiply(yn, yn)
                    sn = Ead.multiply(wn, wn)
                    try:
                        t0 = _sqrt(qc / qw0)
                    except SqrtUnavailable:
                        return
                    for t in _signs(t0):
                        zn = u3vec(t * w0[0], t * w0[1])
                        yield [_unit(0, n, field), yn, zn, wn, sn]
                return 1, (), False, build

            def build_v2(Ead, params):
                ex2 = c3 / qc
                try:
                    ex = _sqrt(ex2)
                except SqrtUnavailable:
                    return
                for sx in _signs(ex):
                    e2 = sx * sx
                    xn = _vscale(sx, _unit(0, n, field))
                    xsq = Ead.multiply(xn, xn)
                    # y_n = x_n^2 minus its w,s tail beyond the U3 part
                    yn = u3vec(xsq[1], xsq[2], xsq[4] - e2 * c3 * (q1 / p1))
                    wn = Ead.multiply(yn, yn)
                    sn = Ead.multiply(wn, wn)
                    try:
                        t0 = _sqrt(e2 * e2 * qc / qw0)
                    except SqrtUnavailable:
                        continue
                    for t in _signs(t0):
                        zn = u3vec(t * w0[0], t * w0[1])
                        yield [xn, yn, zn, wn, sn]
            return 2, (), False, build_v2

        # isotropic top square
        if not field.has_i:
            raise SqrtUnavailable(f"{field} lacks i, needed here")
        i_elt = field.i()
        dprime, h = form.hyperbolic_partner(c)
        half = field.from_int(2).inverse()

        def build_iso(Ead, params):
            if c3.is_zero():
                delta_c = field.one()
            else:
                delta_c = c3 / h
            y0 = _vadd(_vscale(half, c), _vscale(delta_c, dprime))
            z0 = _vscale(-i_elt, _vsub(_vscale(half, c),
                                       _vscale(delta_c, dprime)))
            yn = u3vec(y0[0], y0[1], c4)
            zn = u3vec(z0[0], z0[1])
            wn = Ead.multiply(yn, yn)
            sn = Ead.multiply(wn, wn)
            yield [_unit(0, n, field), yn, zn, wn, sn]
            yield [_unit(0, n, field), yn,
                   _vscale(field.from_int(-1), zn), wn, sn]
        return (3 if c3.is_zero() else 4), (), False, build_iso

    # delta != 0: the two U_3 lines are intrinsic (only permutations and
    # scalings of them extend to natural basis changes)
    def role_data(Y):
        Z = 3 - Y  # indices 1 and 2
        pY = p1 if Y == 1 else p2
        pZ = p2 if Y == 1 else p1
        qY = q1 if Y == 1 else q2
        qZ = q2 if Y == 1 else q1
        cY = c1 if Y == 1 else c2
        cZ = c2 if Y == 1 else c1
        dprim = pY * qZ / pZ - qY
        return Z, pY, pZ, qY, qZ, cY, cZ, dprim

    def v5_builder(Y):
        Z0, pY, pZ, _, _, cY, _, dpr = role_data(Y)

        def build(Ead, params):
            (target,) = params
            try:
                ey = _sqrt(dpr / (pY * pY * gw))
            except SqrtUnavailable:
                return
            for sy in _signs(ey):
                if c3 / (cY * sy * pY) != target:
                    continue
                yn = _zeros(n, field)
                yn[Y] = sy
                wn = Ead.multiply(yn, yn)
                sn = Ead.multiply(wn, wn)
                try:
                    ez = _sqrt(sy * sy * pY / pZ)
                    ex = _sqrt(sy / cY)
                except SqrtUnavailable:
                    continue
                for sz in _signs(ez):
                    zn = _zeros(n, field)
                    zn[Z0] = sz
                    for sx in _signs(ex):
                        xn = _vscale(sx, _unit(0, n, field))
                        xsq = Ead.multiply(xn, xn)
                        yshift = list(yn)
                        yshift[4] = yshift[4] + xsq[4] - target * wn[4]
                        yield [xn, yshift, zn, wn, sn]
        return build

    def v6_builder(roles):
        def build(Ead, params):
            for Y in roles:
                Z0, pY, pZ, _, _, cY, cZ, dpr = role_data(Y)
                try:
                    ey = _sqrt(dpr / (pY * pY * gw))
                except SqrtUnavailable:
                    continue
                for sy in _signs(ey):
                    yn = _zeros(n, field)
                    yn[Y] = sy
                    wn = Ead.multiply(yn, yn)
                    sn = Ead.multiply(wn, wn)
                    try:
                        ez = _sqrt(sy * sy * pY / pZ)
                    except SqrtUnavailable:
                        continue
                    for sz in _signs(ez):
                        realized_b = (sz / cZ) * cY / sy
                        realized_g = (sz / cZ) * c3 / (sy * sy * pY)
                        if (realized_b, realized_g) != tuple(params):
                            continue
                        try:
                            ex = _sqrt(sz / cZ)
                        except SqrtUnavailable:
                            continue
                        for sx in _signs(ex):
                            xn = _vscale(sx, _unit(0, n, field))
                            xsq = Ead.multiply(xn, xn)
                            zn = _zeros(n, field)
                            zn[Z0] = sz
                            zshift = list(zn)
                            zshift[4] = zshift[4] + xsq[4] \
                                - realized_g * wn[4]
                            yield [xn, yn, zshift, wn, sn]
        return build

    if c1.is_zero() or c2.is_zero():
        # x couples to a single line; whether that line can serve as the
        # template y (x^2 = y + alpha w, the other line carrying the s
        # gap) is decided by a scaling invariant that must be a square
        Yc = 1 if c2.is_zero() else 2
        _, pYc, _, _, _, cYc, _, dprc = role_data(Yc)
        alpha = sqrt_if_square(c3 * c3 * gw / (cYc * cYc * dprc))
        if alpha is not None:
            return 5, (alpha,), False, v5_builder(Yc)
        # boundary configuration: x couples only to the template z line
        Yf = 3 - Yc
        _, pYf, pZf, _, _, _, cZf, dprf = role_data(Yf)
        gamma = sqrt_if_square(
            c3 * c3 * pYf * gw / (cZf * cZf * pZf * dprf))
        if gamma is None:
            raise SqrtUnavailable(
                f"the [1,1,2,1] parameter is not representable in {field}")
        return 6, (field.zero(), gamma), True, v6_builder([Yf])

    # both coefficients nonzero: variant 6
    cands = []
    for Y in (1, 2):
        _, pY, pZ, _, _, cY, cZ, dpr = role_data(Y)
        beta = sqrt_if_square((cY / cZ) ** 2 * pY / pZ)
        gamma = sqrt_if_square(c3 * c3 * pY * gw / (cZ * cZ * pZ * dpr))
        if beta is None or gamma is None:
            continue
        cands.append((beta, gamma))
    if not cands:
        raise SqrtUnavailable(
            f"the [1,1,2,1] parameters are not representable in {field}")
    params0 = min(cands,
                  key=lambda t: (order_key(t[0]), order_key(t[1])))
    return 6, params0, False, v6_builder([1, 2])


def _h_11111(Ead, tv):
    n = Ead.dim
    field = Ead.field
    a2, a3, a4 = Ead.structure[0, 1], Ead.structure[0, 2], Ead.structure[0, 3]
    b3, b4 = Ead.structure[1, 2], Ead.structure[1, 3]
    c4 = Ead.structure[2, 3]

    if not b4.is_zero():
        eps22 = b4 / (b3 * b3 * c4)
        eps2 = sqrt_if_square(eps22)  # the forced scaling of x2
        if eps2 is None:
            if a3.is_zero() and a4.is_zero():
                cands = [(field.zero(), field.zero())]
            else:
                raise SqrtUnavailable(
                    f"the chain-family parameters are not representable "
                    f"in {field}")
        else:
            cands = [(a3 / (e * a2 * b3),
                      a4 / (e ** 3 * a2 * b3 * b3 * c4))
                     for e in _signs(eps2)]
        params0 = min(cands, key=lambda t: (order_key(t[0]),
                                            order_key(t[1])))

        def build_v4(Ead, params):
            if eps2 is None:
                return
            for e2 in _signs(eps2):
                realized = (a3 / (e2 * a2 * b3),
                            a4 / (e2 ** 3 * a2 * b3 * b3 * c4))
                if realized != tuple(params):
                    continue
                try:
                    e1 = _sqrt(e2 / a2)
                except SqrtUnavailable:
                    continue
                y3 = _zeros(n, field)
                y3[2] = eps22 * b3
                y4 = Ead.multiply(y3, y3)
                y5 = Ead.multiply(y4, y4)
                for s1 in _signs(e1):
                    x2n = _vscale(e2, _unit(1, n, field))
                    x1n = _vscale(s1, _unit(0, n, field))
                    x1sq = Ead.multiply(x1n, x1n)
                    used = _vadd(_vadd(list(x2n),
                                       _vscale(realized[0], y3)),
                                 _vscale(realized[1], y4))
                    # x2's column absorbs the leftover x5 component
                    x2shift = list(x2n)
                    x2shift[4] = x2shift[4] + (x1sq[4] - used[4])
                    # x2's own square closes on y3 + y4 via a y3 shift
                    x2sq = Ead.multiply(x2shift, x2shift)
                    y3shift = list(y3)
                    y3shift[4] = y3shift[4] + (x2sq[4] - y3[4] - y4[4])
                    yield [x1n, x2shift, y3shift, y4, y5]
        return 4, params0, False, build_v4

    if not a3.is_zero():
        e12 = a3 / (a2 * a2 * b3)
        alpha = a4 * a2 * a2 * b3 / (a3 ** 3 * c4)

        def build_v3(Ead, params):
            try:
                e1 = _sqrt(e12)
            except SqrtUnavailable:
                return
            for s1 in _signs(e1):
                x1n = _vscale(s1, _unit(0, n, field))
                x1sq = Ead.multiply(x1n, x1n)
                y2 = _zeros(n, field)
                y2[1] = e12 * a2
                y3 = Ead.multiply(y2, y2)
                y4 = Ead.multiply(y3, y3)
                used = _vadd(_vadd(list(y2), y3), _vscale(alpha, y4))
                y2shift = list(y2)
                y2shift[4] = y2shift[4] + (x1sq[4] - used[4])
                yield [x1n, y2shift, y3, y4, Ead.multiply(y4, y4)]
        return 3, (alpha,), False, build_v3

    if not a4.is_zero():
        def build_v2(Ead, params):
            e6 = a4 / (a2 ** 4 * b3 * b3 * c4)
            try:
                e2 = _cbrt(e6)
                e = _sqrt(e2)
            except SqrtUnavailable:
                return
            for s in _signs(e):
                x1n = _vscale(s, _unit(0, n, field))
                x1sq = Ead.multiply(x1n, x1n)
                y2 = _zeros(n, field)
                y2[1] = e2 * a2
                y3 = Ead.multiply(y2, y2)
                y4 = Ead.multiply(y3, y3)
                used = _vadd(list(y2), y4)
                y2shift = list(y2)
                y2shift[4] = y2shift[4] + (x1sq[4] - used[4])
                yield [x1n, y2shift, y3, y4, Ead.multiply(y4, y4)]
        return 2, (), False, build_v2

    return 1, (), False, _chain_builder


# ---------------------------------------------------------------------------
# ann-dim-2 types

def _h_23(Ead, tv):
    n = Ead.dim
    field = Ead.field
    sqs = [[Ead.structure[k, 3], Ead.structure[k, 4]] for k in range(3)]

    def dep(u, v):
        return (u[0] * v[1] - u[1] * v[0]).is_zero()

    for i in range(3):
        for j in range(i + 1, 3):
            if dep(sqs[i], sqs[j]):
                k = 3 - i - j
                # split off span{e_k, e_k^2}
                basis = [_unit(i, n, field), _unit(j, n, field),
                         Ead.square_of_basis(i),
                         _unit(k, n, field), Ead.square_of_basis(k)]
                adjusted = _algebra_in_basis(Ead, basis)
                return [restrict_to_indices(adjusted, [0, 1, 2]),
                        restrict_to_indices(adjusted, [3, 4])]

    def build(Ead, params):
        # pick the frame (x, z) = (0, 2); decompose e1^2 = al x^2 + be z^2
        gram = Matrix([[sqs[0][0], sqs[2][0]],
                       [sqs[0][1], sqs[2][1]]], field, 2)
        al, be = gram.inverse().apply(sqs[1])
        try:
            sa = _sqrt(al)
            sb = _sqrt(be)
        except SqrtUnavailable:
            return
        for fa in _signs(sa):
            for fb in _signs(sb):
                xn = _vscale(fa, _unit(0, n, field))
                zn = _vscale(fb, _unit(2, n, field))
                yield [xn, _unit(1, n, field), zn,
                       Ead.multiply(xn, xn), Ead.multiply(zn, zn)]
    return 1, (), False, build


def _h_221(Ead, tv):
    n = Ead.dim
    field = Ead.field
    al, be = Ead.structure[0, 1], Ead.structure[0, 2]
    if al.is_zero() or be.is_zero():
        keep, drop = (2, 1) if al.is_zero() else (1, 2)
        x2 = Ead.square_of_basis(0)
        x4 = Ead.multiply(x2, x2)
        basis = [_unit(0, n, field), x2, x4,
                 _unit(drop, n, field), Ead.square_of_basis(drop)]
        adjusted = _algebra_in_basis(Ead, basis)
        return [restrict_to_indices(adjusted, [0, 1, 2]),
                restrict_to_indices(adjusted, [3, 4])]

    def build(Ead, params):
        x2 = Ead.square_of_basis(0)
        ann_part = [field.zero()] * n
        ann_part[3], ann_part[4] = x2[3], x2[4]
        an = _vadd(_vscale(al, _unit(1, n, field)), ann_part)
        bn = _vscale(be, _unit(2, n, field))
        yield [_unit(0, n, field), an, bn,
               Ead.multiply(an, an), Ead.multiply(bn, bn)]
        # or put the annihilator tail on b instead
        an2 = _vscale(al, _unit(1, n, field))
        bn2 = _vadd(_vscale(be, _unit(2, n, field)), ann_part)
        yield [_unit(0, n, field), an2, bn2,
               Ead.multiply(an2, an2), Ead.multiply(bn2, bn2)]
    return 1, (), False, build


def _h_212(Ead, tv):
    n = Ead.dim
    field = Ead.field
    cx = Ead.structure[0, 2]
    cy = Ead.structure[1, 2]

    def build(Ead, params):
        an = Ead.square_of_basis(0)  # = c_x a + annihilator tail
        un = Ead.multiply(an, an)
        try:
            ey = _sqrt(cx / cy)
        except SqrtUnavailable:
            return
        for s in _signs(ey):
            yn = _vscale(s, _unit(1, n, field))
            vn = _vsub(Ead.multiply(yn, yn), an)
            yield [_unit(0, n, field), yn, an, un, vn]
    return 1, (), False, build


def _h_2111(Ead, tv):
    raise SpecMismatch(
        "type [2,1,1,1] is always decomposable; the split stages should "
        "have handled it")


_HANDLERS = {
    (1,): _h_zero,
    (1, 1): _h_chain,
    (1, 2): _h_star,
    (1, 1, 1): _h_chain,
    (1, 3): _h_star,
    (1, 2, 1): _h_1n1,
    (1, 1, 2): _h_11n,
    (1, 1, 1, 1): _h_111n,
    (1, 4): _h_star,
    (1, 3, 1): _h_1n1,
    (1, 1, 3): _h_11n,
    (1, 1, 1, 2): _h_111n,
    (1, 2, 2): _h_122,
    (1, 2, 1, 1): _h_1211,
    (1, 1, 2, 1): _h_1121,
    (1, 1, 1, 1, 1): _h_11111,
    (2, 3): _h_23,
    (2, 2, 1): _h_221,
    (2, 1, 2): _h_212,
    (2, 1, 1, 1): _h_2111,
}
