"""The canonical table of indecomposable nilpotent evolution algebras of
dimension at most 5.

Basis convention for every template: blocks of the upper annihilating
series in descending order (the top block first, the annihilator last).
Parameters follow the graphs as drawn; a "dashed" parameter may be zero,
while solid parameter edges are nonzero.  Each entry carries the finite
isomorphism orbit of its parameter tuple, valid over algebraically
closed fields.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

from .errors import DomainError, FieldLacksI, UnsupportedDim
from .fields import FieldDescriptor, FieldElement, order_key
from .linalg import Matrix
from .algebra import EvolutionAlgebra


@dataclass(frozen=True)
class ClassEntry:
    dim: int
    type_vector: tuple
    variant: int
    param_arity: int
    build: Callable  # (params tuple, field) -> EvolutionAlgebra
    orbit: Callable  # (params tuple, field) -> list of param tuples
    param_ok: Callable  # (params tuple) -> bool
    needs_i: bool = False

    def template(self, params, field: FieldDescriptor) -> EvolutionAlgebra:
        if len(params) != self.param_arity:
            raise DomainError(
                f"entry {self.key()} takes {self.param_arity} parameters")
        if not self.param_ok(params):
            raise DomainError(
                f"parameters outside the domain of entry {self.key()}")
        if self.needs_i and not field.has_i:
            raise FieldLacksI(f"entry {self.key()} needs a square root of -1")
        return self.build(params, field)

    def param_orbit(self, params, field: FieldDescriptor) -> list:
        return _dedupe(self.orbit(params, field))

    def key(self):
        return (self.dim, self.type_vector, self.variant)


def _dedupe(tuples):
    out = []
    for t in tuples:
        if t not in out:
            out.append(t)
    return out


def _alg(rows_fn, params, field):
    """rows_fn receives helpers (zero, one, i, params) and returns int/
    element rows; ints are lifted into the field."""
    rows = rows_fn(field, params)
    n = len(rows)
    lifted = [[x if isinstance(x, FieldElement) else field.from_int(x)
               for x in row] for row in rows]
    return EvolutionAlgebra(n, Matrix(lifted, field, n), field)


def _trivial_orbit(params, field):
    return [tuple(params)]


def _sign_orbit(params, field):
    return [tuple(params), tuple(-p for p in params)]


def _nonzero(x: FieldElement) -> bool:
    return not x.is_zero()


def _any_params(params) -> bool:
    return True


# ---------------------------------------------------------------------------
# template row builders

def _chain(n):
    def rows(field, params):
        m = [[0] * n for _ in range(n)]
        for k in range(n - 1):
            m[k][k + 1] = 1
        return m
    return rows


def _star(n):
    # type [1, n-1]: every non-annihilator vector squares to the last one
    def rows(field, params):
        m = [[0] * n for _ in range(n)]
        for k in range(n - 1):
            m[k][n - 1] = 1
        return m
    return rows


def _rows_121_v1(field, params):
    # (x, u, v, s): x^2 = u, u^2 = s, v^2 = s
    return [[0, 1, 0, 0], [0, 0, 0, 1], [0, 0, 0, 1], [0, 0, 0, 0]]


def _rows_121_v2(field, params):
    return [[0, 1, field.i(), 0], [0, 0, 0, 1], [0, 0, 0, 1], [0, 0, 0, 0]]


def _rows_112_v1(field, params):
    # (u1, u2, w, s): u_i^2 = w, w^2 = s
    return [[0, 0, 1, 0], [0, 0, 1, 0], [0, 0, 0, 1], [0, 0, 0, 0]]


def _rows_112_v2(field, params):
    return [[0, 0, 1, 0], [0, 0, 1, 1], [0, 0, 0, 1], [0, 0, 0, 0]]


def _rows_1111_v2(field, params):
    # x1^2 = x2 + x3, x2^2 = x3, x3^2 = x4
    return [[0, 1, 1, 0], [0, 0, 1, 0], [0, 0, 0, 1], [0, 0, 0, 0]]


def _rows_23(field, params):
    # (x, y, z, u, v): x^2 = u, y^2 = u + v, z^2 = v
    return [[0, 0, 0, 1, 0], [0, 0, 0, 1, 1], [0, 0, 0, 0, 1],
            [0] * 5, [0] * 5]


def _rows_221(field, params):
    # (x, a, b, u, v): x^2 = a + b, a^2 = u, b^2 = v
    return [[0, 1, 1, 0, 0], [0, 0, 0, 1, 0], [0, 0, 0, 0, 1],
            [0] * 5, [0] * 5]


def _rows_212(field, params):
    # (x, y, a, u, v): x^2 = a, y^2 = a + v, a^2 = u
    return [[0, 0, 1, 0, 0], [0, 0, 1, 0, 1], [0, 0, 0, 1, 0],
            [0] * 5, [0] * 5]


def _rows_131_v1(field, params):
    # (a, u1, u2, u3, s): a^2 = u1, u_i^2 = s
    return [[0, 1, 0, 0, 0], [0, 0, 0, 0, 1], [0, 0, 0, 0, 1],
            [0, 0, 0, 0, 1], [0] * 5]


def _rows_131_v2(field, params):
    return [[0, 1, field.i(), 0, 0], [0, 0, 0, 0, 1], [0, 0, 0, 0, 1],
            [0, 0, 0, 0, 1], [0] * 5]


def _rows_113_v1(field, params):
    # (u1, u2, u3, w, s): u_i^2 = w, w^2 = s
    return [[0, 0, 0, 1, 0], [0, 0, 0, 1, 0], [0, 0, 0, 1, 0],
            [0, 0, 0, 0, 1], [0] * 5]


def _rows_113_v2(field, params):
    return [[0, 0, 0, 1, 0], [0, 0, 0, 1, 0], [0, 0, 0, 1, 1],
            [0, 0, 0, 0, 1], [0] * 5]


def _rows_113_v3(field, params):
    # u1^2 = w + alpha s, u2^2 = w, u3^2 = w + s
    (alpha,) = params
    return [[0, 0, 0, 1, alpha], [0, 0, 0, 1, 0], [0, 0, 0, 1, 1],
            [0, 0, 0, 0, 1], [0] * 5]


def _rows_1112_v1(field, params):
    # (u1, u2, w, t, s): u_i^2 = w, w^2 = t, t^2 = s
    return [[0, 0, 1, 0, 0], [0, 0, 1, 0, 0], [0, 0, 0, 1, 0],
            [0, 0, 0, 0, 1], [0] * 5]


def _rows_1112_v2(field, params):
    return [[0, 0, 1, 0, 1], [0, 0, 1, 0, 0], [0, 0, 0, 1, 0],
            [0, 0, 0, 0, 1], [0] * 5]


def _rows_1112_v3(field, params):
    (gamma,) = params
    return [[0, 0, 1, 1, gamma], [0, 0, 1, 0, 0], [0, 0, 0, 1, 0],
            [0, 0, 0, 0, 1], [0] * 5]


def _rows_1112_v4(field, params):
    beta, gamma = params
    return [[0, 0, 1, 1, gamma], [0, 0, 1, beta, 0], [0, 0, 0, 1, 0],
            [0, 0, 0, 0, 1], [0] * 5]


def _rows_122_v1(field, params):
    # (x, y, u, v, s): x^2 = u, y^2 = alpha u + v, u^2 = v^2 = s
    (alpha,) = params
    return [[0, 0, 1, 0, 0], [0, 0, alpha, 1, 0], [0, 0, 0, 0, 1],
            [0, 0, 0, 0, 1], [0] * 5]


def _rows_122_v2(field, params):
    return [[0, 0, 1, 0, 0], [0, 0, 1, 0, 0], [0, 0, 0, 0, 1],
            [0, 0, 0, 0, 1], [0] * 5]


def _rows_122_v3(field, params):
    return [[0, 0, 1, 0, 0], [0, 0, 1, 0, 1], [0, 0, 0, 0, 1],
            [0, 0, 0, 0, 1], [0] * 5]


def _rows_122_v4(field, params):
    i = field.i()
    return [[0, 0, 1, i, 0], [0, 0, 1, i, 0], [0, 0, 0, 0, 1],
            [0, 0, 0, 0, 1], [0] * 5]


def _rows_122_v5(field, params):
    i = field.i()
    return [[0, 0, 1, i, 0], [0, 0, 1, i, 1], [0, 0, 0, 0, 1],
            [0, 0, 0, 0, 1], [0] * 5]


def _rows_122_v6(field, params):
    i = field.i()
    return [[0, 0, 1, i, 0], [0, 0, 1, -i, 0], [0, 0, 0, 0, 1],
            [0, 0, 0, 0, 1], [0] * 5]


def _rows_1211_v1(field, params):
    # (x, y, u, v, s): x^2 = y, y^2 = u, u^2 = v^2 = s
    return [[0, 1, 0, 0, 0], [0, 0, 1, 0, 0], [0, 0, 0, 0, 1],
            [0, 0, 0, 0, 1], [0] * 5]


def _rows_1211_v2(field, params):
    return [[0, 1, 0, 1, 0], [0, 0, 1, 0, 0], [0, 0, 0, 0, 1],
            [0, 0, 0, 0, 1], [0] * 5]


def _rows_1211_v3(field, params):
    (beta,) = params
    return [[0, 1, 1, beta, 0], [0, 0, 1, 0, 0], [0, 0, 0, 0, 1],
            [0, 0, 0, 0, 1], [0] * 5]


def _rows_1211_v4(field, params):
    i = field.i()
    return [[0, 1, 0, 0, 0], [0, 0, 1, i, 0], [0, 0, 0, 0, 1],
            [0, 0, 0, 0, 1], [0] * 5]


def _rows_1211_v5(field, params):
    i = field.i()
    return [[0, 1, 1, 0, 0], [0, 0, 1, i, 0], [0, 0, 0, 0, 1],
            [0, 0, 0, 0, 1], [0] * 5]


def _rows_1211_v6(field, params):
    i = field.i()
    return [[0, 1, 1, i, 0], [0, 0, 1, i, 0], [0, 0, 0, 0, 1],
            [0, 0, 0, 0, 1], [0] * 5]


def _rows_1211_v7(field, params):
    i = field.i()
    return [[0, 1, 1, -i, 0], [0, 0, 1, i, 0], [0, 0, 0, 0, 1],
            [0, 0, 0, 0, 1], [0] * 5]


def _rows_1121_v1(field, params):
    # (x, y, z, w, s): x^2 = y, y^2 = w, z^2 = w, w^2 = s
    return [[0, 1, 0, 0, 0], [0, 0, 0, 1, 0], [0, 0, 0, 1, 0],
            [0, 0, 0, 0, 1], [0] * 5]


def _rows_1121_v2(field, params):
    return [[0, 1, 0, 1, 0], [0, 0, 0, 1, 0], [0, 0, 0, 1, 0],
            [0, 0, 0, 0, 1], [0] * 5]


def _rows_1121_v3(field, params):
    i = field.i()
    return [[0, 1, i, 0, 0], [0, 0, 0, 1, 0], [0, 0, 0, 1, 0],
            [0, 0, 0, 0, 1], [0] * 5]


def _rows_1121_v4(field, params):
    i = field.i()
    return [[0, 1, i, 1, 0], [0, 0, 0, 1, 0], [0, 0, 0, 1, 0],
            [0, 0, 0, 0, 1], [0] * 5]


def _rows_1121_v5(field, params):
    # x^2 = y + alpha w, y^2 = w, z^2 = w + s, w^2 = s
    (alpha,) = params
    return [[0, 1, 0, alpha, 0], [0, 0, 0, 1, 0], [0, 0, 0, 1, 1],
            [0, 0, 0, 0, 1], [0] * 5]


def _rows_1121_v6(field, params):
    beta, gamma = params
    return [[0, beta, 1, gamma, 0], [0, 0, 0, 1, 0], [0, 0, 0, 1, 1],
            [0, 0, 0, 0, 1], [0] * 5]


def _rows_11111_v2(field, params):
    return [[0, 1, 0, 1, 0], [0, 0, 1, 0, 0], [0, 0, 0, 1, 0],
            [0, 0, 0, 0, 1], [0] * 5]


def _rows_11111_v3(field, params):
    (alpha,) = params
    return [[0, 1, 1, alpha, 0], [0, 0, 1, 0, 0], [0, 0, 0, 1, 0],
            [0, 0, 0, 0, 1], [0] * 5]


def _rows_11111_v4(field, params):
    alpha, beta = params
    return [[0, 1, alpha, beta, 0], [0, 0, 1, 1, 0], [0, 0, 0, 1, 0],
            [0, 0, 0, 0, 1], [0] * 5]


# ---------------------------------------------------------------------------
# orbits

def anharmonic_orbit(params, field):
    """{a, 1/a, 1-a, 1-1/a, 1/(1-a), a/(a-1)} for the [1,1,3] family."""
    (a,) = params
    one = field.one()
    vals = [a, a.inverse(), one - a, one - a.inverse(),
            (one - a).inverse(), a / (a - one)]
    return [(v,) for v in vals]


def anharmonic_j(a: FieldElement) -> FieldElement:
    """j(a) = (a^2 - a + 1)^3 / (a^2 (a-1)^2), constant on orbits."""
    one = a.field.one()
    num = (a * a - a + one) ** 3
    den = (a * a) * ((a - one) ** 2)
    return num / den


def _orbit_1112_v4(params, field):
    beta, gamma = params
    binv = beta.inverse()
    return [(beta, gamma), (binv, -(binv ** 3) * gamma)]


def _orbit_1121_v6(params, field):
    beta, gamma = params
    out = [(b, g) for b in (beta, -beta) for g in (gamma, -gamma)]
    if not beta.is_zero() and field.has_i:
        i = field.i()
        binv = beta.inverse()
        for b in (binv, -binv):
            for g in (i * binv * gamma, -(i * binv * gamma)):
                out.append((b, g))
    return out


def _no_params(p):
    return len(p) == 0


ENTRIES: list[ClassEntry] = []


def _add(dim, tv, variant, arity, build, orbit=_trivial_orbit,
         param_ok=_any_params, needs_i=False):
    ENTRIES.append(ClassEntry(dim, tuple(tv), variant, arity, build, orbit,
                              param_ok, needs_i))


def _plain(rows_fn):
    return lambda params, field: _alg(rows_fn, params, field)


_add(1, [1], 1, 0, _plain(lambda f, p: [[0]]))
_add(2, [1, 1], 1, 0, _plain(_chain(2)))
_add(3, [1, 2], 1, 0, _plain(_star(3)))
_add(3, [1, 1, 1], 1, 0, _plain(_chain(3)))

_add(4, [1, 3], 1, 0, _plain(_star(4)))
_add(4, [1, 2, 1], 1, 0, _plain(_rows_121_v1))
_add(4, [1, 2, 1], 2, 0, _plain(_rows_121_v2), needs_i=True)
_add(4, [1, 1, 2], 1, 0, _plain(_rows_112_v1))
_add(4, [1, 1, 2], 2, 0, _plain(_rows_112_v2))
_add(4, [1, 1, 1, 1], 1, 0, _plain(_chain(4)))
_add(4, [1, 1, 1, 1], 2, 0, _plain(_rows_1111_v2))

_add(5, [2, 3], 1, 0, _plain(_rows_23))
_add(5, [2, 2, 1], 1, 0, _plain(_rows_221))
_add(5, [2, 1, 2], 1, 0, _plain(_rows_212))

_add(5, [1, 4], 1, 0, _plain(_star(5)))
_add(5, [1, 3, 1], 1, 0, _plain(_rows_131_v1))
_add(5, [1, 3, 1], 2, 0, _plain(_rows_131_v2), needs_i=True)

_add(5, [1, 1, 3], 1, 0, _plain(_rows_113_v1))
_add(5, [1, 1, 3], 2, 0, _plain(_rows_113_v2))
_add(5, [1, 1, 3], 3, 1, _plain(_rows_113_v3), orbit=anharmonic_orbit,
     param_ok=lambda p: _nonzero(p[0]) and not (p[0]).is_one())

_add(5, [1, 1, 1, 2], 1, 0, _plain(_rows_1112_v1))
_add(5, [1, 1, 1, 2], 2, 0, _plain(_rows_1112_v2))
_add(5, [1, 1, 1, 2], 3, 1, _plain(_rows_1112_v3))
_add(5, [1, 1, 1, 2], 4, 2, _plain(_rows_1112_v4), orbit=_orbit_1112_v4,
     param_ok=lambda p: _nonzero(p[0]))

_add(5, [1, 2, 2], 1, 1, _plain(_rows_122_v1), orbit=_sign_orbit)
_add(5, [1, 2, 2], 2, 0, _plain(_rows_122_v2))
_add(5, [1, 2, 2], 3, 0, _plain(_rows_122_v3))
_add(5, [1, 2, 2], 4, 0, _plain(_rows_122_v4), needs_i=True)
_add(5, [1, 2, 2], 5, 0, _plain(_rows_122_v5), needs_i=True)
_add(5, [1, 2, 2], 6, 0, _plain(_rows_122_v6), needs_i=True)

_add(5, [1, 2, 1, 1], 1, 0, _plain(_rows_1211_v1))
_add(5, [1, 2, 1, 1], 2, 0, _plain(_rows_1211_v2))
_add(5, [1, 2, 1, 1], 3, 1, _plain(_rows_1211_v3), orbit=_sign_orbit)
_add(5, [1, 2, 1, 1], 4, 0, _plain(_rows_1211_v4), needs_i=True)
_add(5, [1, 2, 1, 1], 5, 0, _plain(_rows_1211_v5), needs_i=True)
_add(5, [1, 2, 1, 1], 6, 0, _plain(_rows_1211_v6), needs_i=True)
_add(5, [1, 2, 1, 1], 7, 0, _plain(_rows_1211_v7), needs_i=True)

_add(5, [1, 1, 2, 1], 1, 0, _plain(_rows_1121_v1))
_add(5, [1, 1, 2, 1], 2, 0, _plain(_rows_1121_v2))
_add(5, [1, 1, 2, 1], 3, 0, _plain(_rows_1121_v3), needs_i=True)
_add(5, [1, 1, 2, 1], 4, 0, _plain(_rows_1121_v4), needs_i=True)
_add(5, [1, 1, 2, 1], 5, 1, _plain(_rows_1121_v5), orbit=_sign_orbit)
_add(5, [1, 1, 2, 1], 6, 2, _plain(_rows_1121_v6), orbit=_orbit_1121_v6,
     needs_i=True)

_add(5, [1, 1, 1, 1, 1], 1, 0, _plain(_chain(5)))
_add(5, [1, 1, 1, 1, 1], 2, 0, _plain(_rows_11111_v2))
_add(5, [1, 1, 1, 1, 1], 3, 1, _plain(_rows_11111_v3))
_add(5, [1, 1, 1, 1, 1], 4, 2, _plain(_rows_11111_v4), orbit=_sign_orbit)


def canonical_table(dim: int, field: FieldDescriptor) -> list[ClassEntry]:
    """All indecomposable nilpotent classes of the given dimension."""
    if not 1 <= dim <= 5:
        raise UnsupportedDim(f"the table covers dimensions 1..5, not {dim}")
    entries = [e for e in ENTRIES if e.dim == dim]
    if dim >= 4 and not field.has_i:
        raise FieldLacksI(
            "several canonical entries in dimension >= 4 carry weight i; "
            "use a field containing a square root of -1")
    return entries


def find_entry(dim, type_vector, variant) -> ClassEntry:
    for e in ENTRIES:
        if e.key() == (dim, tuple(type_vector), variant):
            return e
    raise DomainError(f"no table entry ({dim}, {type_vector}, v{variant})")


def orbit_min(entry: ClassEntry, params, field) -> tuple:
    """The orbit representative minimal in lexicographic element order."""
    orb = entry.param_orbit(tuple(params), field)
    return min(orb, key=lambda t: tuple(order_key(x) for x in t))
