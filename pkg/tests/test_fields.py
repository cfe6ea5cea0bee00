"""Exact field arithmetic: rationals, Gaussian rationals, prime fields."""

from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from evoalg.errors import (AlgebraSyntaxError, DivisionByZero, DomainError,
                           FieldLacksI, MixedFields)
from evoalg.fields import (GF, QI, QQ, is_square, order_key, parse_element,
                           sqrt_if_square, total_order)


def test_descriptors():
    assert QQ().has_i is False
    assert QI().has_i is True
    assert GF(13).has_i is True    # 5^2 = 25 = -1 mod 13
    assert GF(3).has_i is False    # 3 = 3 mod 4
    assert GF(7).has_i is False


def test_gf_requires_odd_prime():
    with pytest.raises(DomainError):
        GF(2)
    with pytest.raises(DomainError):
        GF(15)


def test_parse_identity_zero():
    a = parse_element("0", QQ())
    assert a.is_zero()


def test_parse_gaussian():
    a = parse_element("1/2+3i", QI())
    assert a.value == (Fraction(1, 2), Fraction(3))
    assert parse_element("i", QI()) == QI().i()
    assert parse_element("-i", QI()) == -QI().i()


def test_f13_contains_i():
    five = parse_element("5", GF(13))
    assert (five * five) == GF(13).from_int(-1)
    assert GF(13).i() in (five, -five)


def test_parse_print_fixed_point():
    for text, desc in [("0", QQ()), ("-7/3", QQ()), ("1/2+3i", QI()),
                       ("-i", QI()), ("2-1/5i", QI()), ("11", GF(13))]:
        a = parse_element(text, desc)
        assert parse_element(str(a), desc) == a


def test_parse_rejects_i_over_prime_field():
    with pytest.raises(AlgebraSyntaxError, match="residue"):
        parse_element("i", GF(13))


def test_parse_rejects_malformed():
    for text in ("", "1//2", "one", "2+", "i3"):
        with pytest.raises(AlgebraSyntaxError):
            parse_element(text, QI())


def test_division_by_zero():
    one = QQ().one()
    with pytest.raises(DivisionByZero):
        one / QQ().zero()


def test_mixed_fields_rejected():
    with pytest.raises(MixedFields):
        QQ().one() + GF(13).one()


def test_i_unavailable():
    with pytest.raises(FieldLacksI):
        QQ().i()
    with pytest.raises(FieldLacksI):
        GF(7).i()


def test_sqrt_canonical_roots():
    # Q: the nonnegative root
    assert sqrt_if_square(QQ().from_int(4)) == QQ().from_int(2)
    assert sqrt_if_square(QQ().from_int(2)) is None
    assert sqrt_if_square(QQ().from_int(-1)) is None
    # GF(13): min(r, p - r); 3 has roots {4, 9}
    assert sqrt_if_square(GF(13).from_int(3)) == GF(13).from_int(4)
    # squares mod 13 are exactly {0,1,3,4,9,10,12}
    sq = {v for v in range(13) if is_square(GF(13).from_int(v))}
    assert sq == {0, 1, 3, 4, 9, 10, 12}
    # Q(i): re > 0, or re = 0 and im >= 0
    r = sqrt_if_square(QI().from_int(-1))
    assert r == QI().i()
    assert sqrt_if_square(QI().from_int(-4)) == \
        QI().from_int(2) * QI().i()


@given(st.fractions(), st.fractions())
def test_rational_field_axioms(x, y):
    F = QQ()
    from evoalg.fields import FieldElement
    a, b = FieldElement(F, x), FieldElement(F, y)
    assert a + b == b + a
    assert a * b == b * a
    assert a * (b + F.one()) == a * b + a
    if not b.is_zero():
        assert (a / b) * b == a


@given(st.integers(0, 12), st.integers(0, 12))
def test_gf13_axioms(x, y):
    F = GF(13)
    a, b = F.from_int(x), F.from_int(y)
    assert a + b == b + a
    assert a * (a + b) == a * a + a * b
    if not b.is_zero():
        assert b * b.inverse() == F.one()


@given(st.integers(0, 12))
def test_gf13_sqrt_consistency(x):
    a = GF(13).from_int(x)
    r = sqrt_if_square(a)
    assert (r is None) == (not is_square(a))
    if r is not None:
        assert r * r == a
        # canonical choice: the smaller residue of the two roots
        assert r.value <= (13 - r.value) % 13 or a.is_zero()


def test_total_order_is_total():
    F = GF(13)
    xs = [F.from_int(k) for k in range(13)]
    ordered = sorted(xs, key=order_key)
    for a, b in zip(ordered, ordered[1:]):
        assert total_order(a, b) <= 0
