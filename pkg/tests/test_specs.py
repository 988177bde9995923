from fractions import Fraction

import pytest

from sweedler.errors import ConfigurationError, UnsupportedError
from sweedler.gallery import (
    build_path_coalgebra,
    build_setlike_coalgebra,
    chain_poset,
    build_incidence_coalgebra,
    path_key,
    setlike_key,
    vertex_key,
    Quiver,
)
from sweedler.linear import BasisKey, FormalSum, TensorSum
from sweedler.renorm import LAURENT, LaurentPoly
from sweedler.specs import (
    CoalgebraSpec,
    ConvMap,
    convolution_unit,
    convolve,
    counit_functional,
    dual_algebra_product,
    validate_bialgebra,
    validate_coalgebra,
)
from sweedler.specs import AlgebraSpec, BialgebraSpec, FormalSumTarget


def word_target():
    """Free algebra on path/vertex symbols: words under concatenation."""

    def product(k1, k2):
        return FormalSum.basis(BasisKey("w", k1.payload + k2.payload))

    return FormalSumTarget(AlgebraSpec("words", product, FormalSum.basis(BasisKey("w", ()))))


def inclusion(C, target):
    return ConvMap(C, target, lambda k: FormalSum.basis(BasisKey("w", (str(k),))), "incl")


def test_convolution_unit_is_neutral(single_edge_paths):
    C = single_edge_paths
    T = word_target()
    f = inclusion(C, T)
    eta = convolution_unit(C, T)
    left = convolve(eta, f)
    right = convolve(f, eta)
    for k in C.keys:
        assert left(k) == f(k)
        assert right(k) == f(k)
    # unit of convolution: eta * eta = eta
    assert all(convolve(eta, eta)(k) == eta(k) for k in C.keys)


def test_convolution_unit_values(single_edge_paths):
    C = single_edge_paths
    T = word_target()
    eta = convolution_unit(C, T)
    assert eta(vertex_key("v")) == T.one()
    assert eta(path_key(("e",))).is_zero()


def test_identity_convolution_on_edge(single_edge_paths):
    # delta(e) = v (x) e + e (x) w, so (f*f)(e) = v.e + e.w in the word algebra
    C = single_edge_paths
    T = word_target()
    f = inclusion(C, T)
    square = convolve(f, f)
    expected = FormalSum.basis(BasisKey("w", ("v", "e"))) + FormalSum.basis(
        BasisKey("w", ("e", "w"))
    )
    assert square(path_key(("e",))) == expected


def test_convolution_associative(single_edge_paths):
    C = single_edge_paths
    T = word_target()
    f = inclusion(C, T)
    eta = convolution_unit(C, T)
    g = convolve(f, f)
    for k in C.keys:
        assert convolve(convolve(f, g), f)(k) == convolve(f, convolve(g, f))(k)
        assert convolve(convolve(f, eta), g)(k) == convolve(f, convolve(eta, g))(k)


def test_convolution_bilinear(single_edge_paths):
    C = single_edge_paths
    T = LAURENT
    z = LaurentPoly.monomial(1)
    f = ConvMap(C, T, lambda k: z if C.grading(k) else T.one(), "f")
    g = ConvMap(C, T, lambda k: LaurentPoly.monomial(-1), "g")
    h = ConvMap(C, T, lambda k: T.add(f(k), g(k)), "f+g")
    for k in C.keys:
        assert convolve(h, f)(k) == T.add(convolve(f, f)(k), convolve(g, f)(k))


def test_convolution_source_mismatch(single_edge_paths, two_vertex_complete_paths):
    T = word_target()
    f = inclusion(single_edge_paths, T)
    g = inclusion(two_vertex_complete_paths, T)
    with pytest.raises(ConfigurationError):
        convolve(f, g)


def test_character_convolution_multiplicative(trees_sym4):
    # characters into a commutative target: f*g is again multiplicative
    B = trees_sym4
    C = B.coalgebra
    from sweedler.renorm import CharacterSpec, parse_laurent

    f = CharacterSpec(LAURENT, {"vertex": parse_laurent("z^-1"), "grouplike": parse_laurent("z")})
    g = CharacterSpec(LAURENT, {"vertex": parse_laurent("2z"), "grouplike": parse_laurent("1")})
    fm, gm = f.as_conv_map(B), g.as_conv_map(B)
    conv = convolve(fm, gm)
    keys = [k for k in C.keys if C.grading(k) <= 2]
    for a in keys[:12]:
        for b in keys[:12]:
            ab = B.product(a, b)
            lhs = conv.evaluate(ab)
            assert lhs == conv(a) * conv(b)


# ---------------------------------------------------------------------------
# dual algebra


def test_dual_setlike_orthogonal_idempotents():
    C = build_setlike_coalgebra(["x", "y", "z"])
    dx = {setlike_key("x"): Fraction(1)}
    dy = {setlike_key("y"): Fraction(1)}
    assert dual_algebra_product(dx, dy, C) == {}
    assert dual_algebra_product(dx, dx, C) == dx


def test_dual_counit_is_unit():
    C = build_setlike_coalgebra(["x", "y", "z"])
    eps = counit_functional(C)
    f = {setlike_key("x"): Fraction(2), setlike_key("z"): Fraction(-5, 3)}
    assert dual_algebra_product(eps, f, C) == f
    assert dual_algebra_product(f, eps, C) == f


def test_dual_on_single_edge(single_edge_paths):
    C = single_edge_paths
    dv = {vertex_key("v"): Fraction(1)}
    de = {path_key(("e",)): Fraction(1)}
    prod = dual_algebra_product(dv, de, C)
    assert prod.get(path_key(("e",))) == 1


def test_dual_algebra_over_prime_field():
    # the engine is coefficient-agnostic: a setlike coalgebra over GF(5)
    from sweedler.scalars import PrimeField
    from sweedler.gallery import setlike_key

    gf5 = PrimeField(5)
    keys = [setlike_key(n) for n in "xyz"]
    C = CoalgebraSpec(
        "setlike/GF(5)", keys,
        lambda k: TensorSum.pure(k, k, gf5.one()),
        lambda k: gf5.one(), lambda k: 0,
    )
    f = {setlike_key("x"): gf5.from_int(3)}
    g = {setlike_key("x"): gf5.from_int(4), setlike_key("y"): gf5.from_int(2)}
    assert dual_algebra_product(f, g, C) == {setlike_key("x"): gf5.from_int(2)}


def test_dual_rejects_infinite_universe(single_edge_paths):
    C = single_edge_paths
    lazy = CoalgebraSpec("lazy", C.keys, C.delta, C.counit, C.grading,
                         finite_universe=False)
    with pytest.raises(UnsupportedError):
        dual_algebra_product({}, {}, lazy)


# ---------------------------------------------------------------------------
# validators


def test_validate_path_coalgebras(single_edge_paths, two_vertex_complete_paths):
    assert validate_coalgebra(single_edge_paths, max_degree=5).ok
    assert validate_coalgebra(two_vertex_complete_paths, max_degree=5).ok


def test_validate_incidence_chain():
    report = validate_coalgebra(build_incidence_coalgebra(chain_poset(3)))
    assert report.ok


def test_corrupted_delta_is_reported():
    quiver = Quiver(("v",), (("a", "v", "v"),))
    C = build_path_coalgebra(quiver, 3)
    bad_key = path_key(("a", "a", "a"))

    def corrupted(k):
        full = C.delta(k)
        if k == bad_key:
            # drop one middle deconcatenation term, asymmetrically
            return full - TensorSum.pure(path_key(("a",)), path_key(("a", "a")))
        return full

    broken = CoalgebraSpec("broken", C.keys, corrupted, C.counit, C.grading)
    report = validate_coalgebra(broken)
    assert not report.ok
    assert any(ctx == "a.a.a" for ctx, _ in report.failures)


def test_validate_bialgebra_negative_control(trees_sym4):
    B = trees_sym4

    def projecting_product(a, b):
        return FormalSum.basis(a)

    broken = BialgebraSpec(
        B.coalgebra,
        AlgebraSpec("broken", projecting_product, B.unit),
    )
    report = validate_bialgebra(broken, sample_budget=80, seed=3)
    assert not report.ok


def test_restriction_to_subcoalgebra(two_vertex_complete_paths):
    # a subquiver's paths form a subcoalgebra; convolution computed inside
    # agrees with convolution computed in the big coalgebra
    C = two_vertex_complete_paths
    sub_quiver = Quiver(("0", "1"), (("0to1", "0", "1"),))
    S = build_path_coalgebra(sub_quiver, 5)
    T = word_target()
    f_big = inclusion(C, T)
    f_small = inclusion(S, T)
    conv_big = convolve(f_big, f_big)
    conv_small = convolve(f_small, f_small)
    for k in S.keys:
        assert conv_big(k) == conv_small(k)


def test_degree_zero_closure(trees_sym4):
    report = validate_coalgebra(trees_sym4.coalgebra, max_degree=0)
    assert report.ok
