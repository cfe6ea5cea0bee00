"""Parametric families and their scaling isomorphisms."""

import pytest

from evoalg.algebra import upper_series
from evoalg.errors import SpecMismatch, UnsupportedField
from evoalg.families import (UB, UBFG, UBG, UBU, FamilySpec, build, build_Ub,
                             build_Ubfg, build_Ubg, build_Ubu,
                             family_iso_test, scaled_spec,
                             scaling_isomorphism)
from evoalg.fields import GF, QQ
from evoalg.oracle import verify_hom

F13 = GF(13)


def f13s(*vals):
    return tuple(F13.from_int(v) for v in vals)


def test_family_types():
    b = f13s(1, 2, 3)
    assert upper_series(build_Ub(FamilySpec(UB, 3, b))).type_vector \
        == [1, 3]
    assert upper_series(build_Ubg(
        FamilySpec(UBG, 3, b, g_eigs=f13s(0, 1, 2)))).type_vector \
        == [1, 1, 3]
    assert upper_series(build_Ubfg(
        FamilySpec(UBFG, 3, b, f_eigs=f13s(1, 2, 3),
                   g_eigs=f13s(0, 1, 2)))).type_vector == [1, 1, 1, 3]
    assert upper_series(build_Ubu(
        FamilySpec(UBU, 3, b, u_coords=f13s(1, 0, 0)))).type_vector \
        == [1, 3, 1]


def test_spec_validation():
    with pytest.raises(SpecMismatch):
        FamilySpec(UB, 2, f13s(1, 0))          # degenerate form
    with pytest.raises(SpecMismatch):
        FamilySpec(UB, 2, f13s(1, 2), g_eigs=f13s(1, 2))  # g without kind
    with pytest.raises(SpecMismatch):
        FamilySpec(UBU, 2, f13s(1, 2), u_coords=f13s(0, 0))  # u = 0
    with pytest.raises(SpecMismatch):
        FamilySpec("other", 1, f13s(1))


def test_build_dispatch():
    spec = FamilySpec(UB, 2, f13s(1, 1))
    assert build(spec) == build_Ub(spec)


def test_scaling_isomorphism_passes_verify_hom():
    for n, b, f, g in [(1, (3,), (2,), (5,)),
                       (2, (1, 2), (3, 4), (5, 6))]:
        spec = FamilySpec(UBFG, n, f13s(*b), f_eigs=f13s(*f),
                          g_eigs=f13s(*g))
        for alpha, beta in [(1, 0), (1, 5), (4, 7)]:
            m = scaling_isomorphism(spec, F13.from_int(alpha),
                                    F13.from_int(beta))
            src = build_Ubfg(spec)
            dst = build_Ubfg(scaled_spec(spec, F13.from_int(alpha),
                                         F13.from_int(beta)))
            assert verify_hom(src, dst, m)


def test_scaling_isomorphism_rejects_zero_alpha():
    spec = FamilySpec(UBFG, 1, f13s(1), f_eigs=f13s(1), g_eigs=f13s(1))
    with pytest.raises(SpecMismatch):
        scaling_isomorphism(spec, F13.zero(), F13.one())


def test_family_iso_requires_closed_field_assertion():
    s = FamilySpec(UB, 2, f13s(1, 1))
    with pytest.raises(UnsupportedField):
        family_iso_test(s, s)
    assert family_iso_test(s, s, assume_closed=True)


def test_ubg_iso_is_affine_match():
    Q = QQ()

    def qs(*vals):
        return tuple(Q.from_int(v) for v in vals)

    s1 = FamilySpec(UBG, 3, qs(1, 1, 1), g_eigs=qs(0, 1, 2))
    s2 = FamilySpec(UBG, 3, qs(1, 1, 1), g_eigs=qs(5, 7, 9))   # 2g + 5
    s3 = FamilySpec(UBG, 3, qs(1, 1, 1), g_eigs=qs(0, 1, 3))
    assert family_iso_test(s1, s2, assume_closed=True)
    assert not family_iso_test(s1, s3, assume_closed=True)


def test_ubu_iso_is_isotropy_class():
    # q(u) = 0 vs q(u) != 0 over F13: 1*2^2 + 3*1^2 = 7 != 0;
    # 1*5^2 + 1*1^2 = 26 = 0
    iso = FamilySpec(UBU, 2, f13s(1, 1), u_coords=f13s(5, 1))
    aniso = FamilySpec(UBU, 2, f13s(1, 3), u_coords=f13s(2, 1))
    aniso2 = FamilySpec(UBU, 2, f13s(1, 1), u_coords=f13s(1, 1))
    assert not family_iso_test(iso, aniso, assume_closed=True)
    assert family_iso_test(aniso, aniso2, assume_closed=True)
