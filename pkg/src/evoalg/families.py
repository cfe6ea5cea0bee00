"""The four parametric families of nilpotent evolution algebras.

Each family is specified by diagonal data: the Gram diagonal of a
nondegenerate symmetric form b on an n-dimensional space U in an
orthogonal basis of common eigenvectors, plus eigenvalue lists for the
symmetric endomorphisms f and g where the family uses them, or the
coordinates of a distinguished vector u.  The builders emit the natural
basis presentations:

  Ub    (u_1..u_n, s):        u_i^2 = b_i s                       type [1,n]
  Ubg   (u_1..u_n, w, s):     u_i^2 = b_i w + b_i g_i s, w^2 = s  type [1,1,n]
  Ubfg  (u_1..u_n, w, t, s):  u_i^2 = b_i (w + f_i t + g_i s),
                              w^2 = t, t^2 = s                    type [1,1,1,n]
  Ubu   (a, u_1..u_n, s):     a^2 = sum u_i' u_i, u_i^2 = b_i s   type [1,n,1]
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import KindMismatch, SpecMismatch, UnsupportedField
from .fields import FieldDescriptor, FieldElement, order_key
from .linalg import Matrix
from .algebra import EvolutionAlgebra
from .oracle import verify_hom

UB = "Ub"
UBG = "Ubg"
UBFG = "Ubfg"
UBU = "Ubu"


@dataclass(frozen=True)
class FamilySpec:
    kind: str
    n: int
    b_diag: tuple
    f_eigs: tuple | None = None
    g_eigs: tuple | None = None
    u_coords: tuple | None = None

    def __post_init__(self):
        if self.kind not in (UB, UBG, UBFG, UBU):
            raise SpecMismatch(f"unknown family kind {self.kind!r}")
        if self.n < 1 or len(self.b_diag) != self.n:
            raise SpecMismatch("b_diag must have length n >= 1")
        if any(x.is_zero() for x in self.b_diag):
            raise SpecMismatch("b must be nondegenerate (no zero diagonal)")
        need_f = self.kind == UBFG
        need_g = self.kind in (UBG, UBFG)
        need_u = self.kind == UBU
        if need_f != (self.f_eigs is not None):
            raise SpecMismatch("f_eigs required exactly for kind Ubfg")
        if need_g != (self.g_eigs is not None):
            raise SpecMismatch("g_eigs required exactly for kinds Ubg/Ubfg")
        if need_u != (self.u_coords is not None):
            raise SpecMismatch("u_coords required exactly for kind Ubu")
        for lst in (self.f_eigs, self.g_eigs, self.u_coords):
            if lst is not None and len(lst) != self.n:
                raise SpecMismatch("eigenvalue/coordinate list length != n")
        if need_u and all(x.is_zero() for x in self.u_coords):
            raise SpecMismatch("u must be nonzero")

    @property
    def field(self) -> FieldDescriptor:
        return self.b_diag[0].field


def _zero_rows(k: int, field) -> list:
    return [[field.zero()] * k for _ in range(k)]


def build_Ub(spec: FamilySpec) -> EvolutionAlgebra:
    if spec.kind != UB:
        raise SpecMismatch("build_Ub needs kind Ub")
    field = spec.field
    n = spec.n
    rows = _zero_rows(n + 1, field)
    for i in range(n):
        rows[i][n] = spec.b_diag[i]
    return EvolutionAlgebra(n + 1, Matrix(rows, field, n + 1), field)


def build_Ubg(spec: FamilySpec) -> EvolutionAlgebra:
    if spec.kind != UBG:
        raise SpecMismatch("build_Ubg needs kind Ubg")
    field = spec.field
    n = spec.n
    rows = _zero_rows(n + 2, field)
    for i in range(n):
        rows[i][n] = spec.b_diag[i]
        rows[i][n + 1] = spec.b_diag[i] * spec.g_eigs[i]
    rows[n][n + 1] = field.one()
    return EvolutionAlgebra(n + 2, Matrix(rows, field, n + 2), field)


def build_Ubfg(spec: FamilySpec) -> EvolutionAlgebra:
    if spec.kind != UBFG:
        raise SpecMismatch("build_Ubfg needs kind Ubfg")
    field = spec.field
    n = spec.n
    rows = _zero_rows(n + 3, field)
    for i in range(n):
        rows[i][n] = spec.b_diag[i]
        rows[i][n + 1] = spec.b_diag[i] * spec.f_eigs[i]
        rows[i][n + 2] = spec.b_diag[i] * spec.g_eigs[i]
    rows[n][n + 1] = field.one()
    rows[n + 1][n + 2] = field.one()
    return EvolutionAlgebra(n + 3, Matrix(rows, field, n + 3), field)


def build_Ubu(spec: FamilySpec) -> EvolutionAlgebra:
    if spec.kind != UBU:
        raise SpecMismatch("build_Ubu needs kind Ubu")
    field = spec.field
    n = spec.n
    rows = _zero_rows(n + 2, field)
    for i in range(n):
        rows[0][1 + i] = spec.u_coords[i]
        rows[1 + i][n + 1] = spec.b_diag[i]
    return EvolutionAlgebra(n + 2, Matrix(rows, field, n + 2), field)


def build(spec: FamilySpec) -> EvolutionAlgebra:
    return {UB: build_Ub, UBG: build_Ubg,
            UBFG: build_Ubfg, UBU: build_Ubu}[spec.kind](spec)


def scaled_spec(spec: FamilySpec, alpha: FieldElement,
                beta: FieldElement) -> FamilySpec:
    """The target data (alpha b, alpha f, alpha^3 g + beta id) of the
    scaling isomorphism."""
    a3 = alpha * alpha * alpha
    return FamilySpec(
        UBFG, spec.n,
        tuple(alpha * x for x in spec.b_diag),
        tuple(alpha * x for x in spec.f_eigs),
        tuple(a3 * x + beta for x in spec.g_eigs))


def scaling_isomorphism(spec: FamilySpec, alpha: FieldElement,
                        beta: FieldElement) -> Matrix:
    """An explicit isomorphism E(U,b,f,g) -> E(U, alpha b, alpha f,
    alpha^3 g + beta id) for nonzero alpha.

    With the eigenbasis fixed pointwise the map sends w to
    alpha w' + alpha beta s', t to alpha^2 t' and s to alpha^4 s';
    no square roots are needed.
    """
    if spec.kind != UBFG:
        raise SpecMismatch("scaling isomorphism applies to kind Ubfg")
    if alpha.is_zero():
        raise SpecMismatch("alpha must be nonzero")
    field = spec.field
    n = spec.n
    dim = n + 3
    m = Matrix.identity(dim, field).rows
    m = [list(r) for r in m]
    m[n][n] = alpha
    m[n + 2][n] = alpha * beta
    m[n + 1][n + 1] = alpha * alpha
    m[n + 2][n + 2] = alpha ** 4
    witness = Matrix(m, field, dim)
    src = build_Ubfg(spec)
    dst = build_Ubfg(scaled_spec(spec, alpha, beta))
    if not verify_hom(src, dst, witness):
        raise SpecMismatch("internal check failed for scaling isomorphism")
    return witness


# ---------------------------------------------------------------------------
# isomorphism tests (algebraically-closed-field semantics)

def _multiset(values) -> list:
    return sorted(values, key=order_key)


def _affine_match(g1, g2) -> bool:
    """Is there mu != 0, nu with multiset(mu*g1 + nu) == multiset(g2)?"""
    s1, s2 = _multiset(g1), _multiset(g2)
    distinct1 = sorted(set(s1), key=order_key)
    if len(distinct1) == 1:
        return len(set(s2)) == 1
    a, b = distinct1[0], distinct1[1]
    for ap in s2:
        for bp in s2:
            if ap == bp:
                continue
            mu = (bp - ap) / (b - a)
            nu = ap - mu * a
            if _multiset([mu * x + nu for x in g1]) == s2:
                return True
    return False


def _pair_multiset(fs, gs) -> list:
    return sorted(zip(fs, gs), key=lambda p: (order_key(p[0]), order_key(p[1])))


def _fg_match(f1, g1, f2, g2) -> bool:
    """Is there mu != 0, nu with pair-multiset (mu f1, mu^3 g1 + nu)
    equal to (f2, g2)?  Over a closed field mu ranges over all nonzero
    scalars (any norm is attainable)."""
    if all(x.is_zero() for x in f1):
        if not all(x.is_zero() for x in f2):
            return False
        # mu^3 is then an arbitrary nonzero scalar over a closed field
        return _affine_match(g1, g2)
    if all(x.is_zero() for x in f2):
        return False
    field = f1[0].field
    fi = next(x for x in f1 if not x.is_zero())
    idx = f1.index(fi)
    gi = g1[idx]
    target = _pair_multiset(f2, g2)
    for fj, gj in zip(f2, g2):
        if fj.is_zero():
            continue
        mu = fj / fi
        nu = gj - mu * mu * mu * gi
        mapped = _pair_multiset([mu * x for x in f1],
                                [mu ** 3 * x + nu for x in g1])
        if mapped == target:
            return True
    return False


def _isotropic(spec: FamilySpec) -> bool:
    acc = spec.field.zero()
    for bi, ui in zip(spec.b_diag, spec.u_coords):
        acc = acc + bi * ui * ui
    return acc.is_zero()


def family_iso_test(s1: FamilySpec, s2: FamilySpec,
                    assume_closed: bool = False) -> bool:
    """Decide isomorphism of two family algebras using the eigen-data
    orbit conditions valid over algebraically closed fields.

    The caller must assert closed-field semantics; the reductions are
    not valid verbatim over Q or a prime field.
    """
    if s1.kind != s2.kind or s1.n != s2.n:
        raise KindMismatch("family specs differ in kind or dimension")
    if not assume_closed:
        raise UnsupportedField(
            "family_iso_test uses algebraically-closed-field semantics; "
            "pass assume_closed=True to assert them")
    if s1.kind == UB:
        return True
    if s1.kind == UBG:
        return _affine_match(list(s1.g_eigs), list(s2.g_eigs))
    if s1.kind == UBFG:
        return _fg_match(list(s1.f_eigs), list(s1.g_eigs),
                         list(s2.f_eigs), list(s2.g_eigs))
    return _isotropic(s1) == _isotropic(s2)
