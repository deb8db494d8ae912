import pytest
from hypothesis import given, strategies as st

from klatlas.polyq import NEG_INF, ONE, Q, ZERO, PolyQ

polys = st.lists(st.integers(-20, 20), max_size=6).map(PolyQ)


def test_examples():
    assert ONE + Q == PolyQ([1, 1])
    assert str((ONE + Q).shift(2)) == "q^2 + q^3"
    assert (ONE + Q) - (ONE + Q) == ZERO
    p = PolyQ.parse("1 + q^2")
    assert p.eval_at_one() == 2
    assert p.coefficient(1) == 0
    assert ZERO.degree() == NEG_INF
    assert p.degree() == 2


def test_negative_shift_rejected():
    with pytest.raises(ValueError):
        Q.shift(-1)


def test_no_stored_zeros():
    p = PolyQ([1, 0, 0])
    assert p.coeffs == (1,) and p.terms() == {0: 1}
    assert PolyQ({3: 2, 0: 1}).terms() == {0: 1, 3: 2}


def test_unimodality_diagnostic():
    assert PolyQ.parse("1 + q + q^2").is_unimodal_symmetric_prefix()
    assert not PolyQ.parse("1 + 2*q + q^3").is_unimodal_symmetric_prefix()
    assert not PolyQ.parse("1 + q^3").is_unimodal_symmetric_prefix()


@pytest.mark.parametrize("text", ["0", "1", "q", "-q^2", "1 + q + 2*q^3", "3 - 4*q^5"])
def test_text_round_trip(text):
    assert str(PolyQ.parse(text)) == text


@pytest.mark.invariant
@given(polys, polys, polys)
def test_ring_identities(a, b, c):
    assert (a + b) + c == a + (b + c)
    assert a + b == b + a
    assert a * (b + c) == a * b + a * c
    assert a - a == ZERO


@pytest.mark.invariant
@given(polys, st.integers(0, 5), st.integers(0, 5))
def test_shift_composes(a, j, k):
    assert a.shift(j + k) == a.shift(j).shift(k)
    assert all(a.shift(k).coefficient(e + k) == a.coefficient(e) for e in range(8))


@pytest.mark.invariant
@given(polys, polys)
def test_eval_at_one_additive(a, b):
    assert (a + b).eval_at_one() == a.eval_at_one() + b.eval_at_one()


@given(polys)
def test_str_parse_inverse(a):
    assert PolyQ.parse(str(a)) == a
