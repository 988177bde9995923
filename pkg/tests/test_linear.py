from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from sweedler.linear import BasisKey, FormalSum, TensorSum, decode_key
from sweedler.scalars import Fp, PrimeField, render_scalar


# strategies for structured payloads and sums

atoms = st.one_of(
    st.integers(min_value=-50, max_value=50),
    st.text(alphabet="abcxyz01", min_size=0, max_size=4),
)
payloads = st.recursive(
    atoms, lambda inner: st.tuples(inner, inner), max_leaves=6
)
keys = st.builds(BasisKey, st.sampled_from(["a", "b", "zz"]), st.tuples(payloads))
coeffs = st.builds(
    Fraction,
    st.integers(min_value=-40, max_value=40),
    st.integers(min_value=1, max_value=12),
)
sums = st.dictionaries(keys, coeffs, max_size=5).map(FormalSum)


@given(keys)
def test_encode_decode_roundtrip(key):
    assert decode_key(key.encoded()) == key


@given(keys, keys)
def test_encoding_injective(k1, k2):
    assert (k1 == k2) == (k1.encoded() == k2.encoded())


def test_encoding_injective_bulk():
    # canonicality at scale: >= 10^4 generated keys, all encodings distinct
    universe = [
        BasisKey("t", (i, j, s))
        for i in range(40)
        for j in range(51)
        for s in ("x", "y", ("p", "q"), 7, ("a", ("b",)))
    ]
    assert len(universe) >= 10 ** 4
    encodings = {k.encoded() for k in universe}
    assert len(encodings) == len(universe)
    for k in universe[::37]:
        assert decode_key(k.encoded()) == k


def test_key_order_deterministic():
    ks = [BasisKey("b", (1,)), BasisKey("a", (2,)), BasisKey("a", (1, 1))]
    once = sorted(ks)
    assert sorted(reversed(ks)) == once


@given(sums, sums, sums)
@settings(max_examples=60)
def test_addition_associative(a, b, c):
    assert (a + b) + c == a + (b + c)


@given(sums, sums, coeffs)
@settings(max_examples=60)
def test_scalar_distributivity(a, b, c):
    assert (a + b).scale(c) == a.scale(c) + b.scale(c)


@given(sums)
def test_no_zero_coefficients(a):
    assert all(c != 0 for _, c in a)
    assert (a - a).is_zero()
    assert a + FormalSum.zero() == a


def test_scaling_prunes_zero():
    k = BasisKey("a", (1,))
    assert FormalSum.basis(k).scale(Fraction(0)).is_zero()
    assert FormalSum({k: Fraction(0)}).is_zero()


def test_render_contract():
    k1 = BasisKey("a", ("x",))
    k2 = BasisKey("a", ("y",))
    s = FormalSum({k2: Fraction(-1, 2), k1: Fraction(3)})
    assert s.render() == "3*a:('x',) + -1/2*a:('y',)"
    assert FormalSum.zero().render() == "0"


def test_render_scalar():
    assert render_scalar(Fraction(3)) == "3"
    assert render_scalar(Fraction(-1, 2)) == "-1/2"


def test_tensor_sum_basics():
    a, b = BasisKey("a", (1,)), BasisKey("a", (2,))
    t = TensorSum.pure(a, b) + TensorSum.pure(b, a).scale(Fraction(2))
    assert t.flip() == TensorSum.pure(b, a) + TensorSum.pure(a, b).scale(Fraction(2))
    assert t.coeff(a, b) == 1
    assert (t - t).is_zero()


def test_tensor_of_accumulates():
    a = BasisKey("a", (1,))
    t = TensorSum.of([(a, a), (a, a)])
    assert t.coeff(a, a) == 2


def test_prime_field():
    gf7 = PrimeField(7)
    x = gf7.from_int(3)
    assert x + x == gf7.from_int(6)
    assert x * gf7.invert(x) == gf7.one()
    assert not gf7.zero()
    with pytest.raises(ValueError):
        PrimeField(6)
    with pytest.raises(ZeroDivisionError):
        gf7.zero().inverse()


def test_prime_field_sums():
    gf5 = PrimeField(5)
    k = BasisKey("a", (0,))
    s = FormalSum({k: gf5.from_int(2)})
    assert (s + s + s + s + s).is_zero()
    assert (s + s).coeff(k) == Fp(4, 5)
