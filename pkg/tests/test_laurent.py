import pytest
from hypothesis import given, settings, strategies as st

from plabicflow.laurent import (
    LaurentPoly,
    NotInvertible,
    NotLaurent,
    lp_add,
    lp_equal,
    lp_exact_div,
    lp_max_exponent,
    lp_min_exponent,
    lp_mul,
    lp_neg,
    lp_pow,
    lp_sub,
    lp_substitute,
    tropicalize,
)

L3 = ("a", "b", "c")


def poly(terms):
    return LaurentPoly.make(L3, dict(terms))


polys = st.dictionaries(
    st.tuples(*(st.integers(-3, 3) for _ in L3)),
    st.integers(-5, 5),
    max_size=5,
).map(poly)


def test_make_drops_zero_terms():
    f = poly({(1, 0, 0): 0, (0, 1, 0): 2})
    assert f.num_terms() == 1
    assert poly({}).is_zero()


def test_monomial_and_pretty():
    m = LaurentPoly.monomial(("24", "34"), {"34": 1})
    f = lp_add(m, LaurentPoly.monomial(("24", "34"), {"24": 1, "34": 1}))
    assert f.pretty() == "y34*(1+y24)"
    assert lp_sub(m, f).pretty("y") == "-y24*y34"
    q = LaurentPoly.monomial(("q", "13", "34"), {"q": 1, "13": 1, "34": -1})
    assert q.pretty("p") == "q*p13*p34^-1"


def test_json_roundtrip():
    f = poly({(1, -2, 0): 3, (0, 0, 1): -1})
    assert lp_equal(LaurentPoly.from_json_obj(f.to_json_obj()), f)


@given(polys, polys, polys)
def test_ring_axioms(f, g, h):
    assert lp_equal(lp_add(f, g), lp_add(g, f))
    assert lp_equal(lp_mul(f, g), lp_mul(g, f))
    assert lp_equal(lp_mul(f, lp_add(g, h)),
                    lp_add(lp_mul(f, g), lp_mul(f, h)))
    assert lp_equal(lp_add(f, lp_neg(f)), poly({}))


@given(polys, polys)
@settings(max_examples=60)
def test_exact_division_inverts_multiplication(f, g):
    if g.is_zero():
        return
    assert lp_equal(lp_exact_div(lp_mul(f, g), g), f)


def test_exact_division_failure():
    f = poly({(1, 0, 0): 1, (0, 1, 0): 1})
    g = poly({(1, 0, 0): 1, (0, 0, 1): 1})
    with pytest.raises(NotLaurent):
        lp_exact_div(f, g)


def test_pow():
    f = poly({(1, 0, 0): 1, (0, 1, 0): 1})
    assert lp_pow(f, 3).num_terms() == 4
    assert lp_equal(lp_pow(f, 0), poly({(0, 0, 0): 1}))
    m = poly({(-1, 2, 0): 1})
    assert lp_equal(lp_pow(m, -2), poly({(2, -4, 0): 1}))
    with pytest.raises(NotInvertible):
        lp_pow(f, -1)


def test_min_max_exponent():
    f = poly({(0, 1, 0): 1, (1, 1, 0): 2, (2, 0, 0): 1})
    # two incomparable minima: lex tiebreak picks (0,1,0), flag says non-unique
    assert lp_min_exponent(f, tiebreak=list(L3)) == ((0, 1, 0), False)
    g = poly({(0, 1, 0): 1, (1, 1, 0): 2})
    assert lp_min_exponent(g) == ((0, 1, 0), True)
    assert lp_max_exponent(g) == ((1, 1, 0), True)
    with pytest.raises(ValueError):
        lp_min_exponent(poly({}))


@given(polys, polys)
@settings(max_examples=60)
def test_min_exponent_additive_for_positive_polys(f, g):
    fp = LaurentPoly.make(L3, {e: abs(c) for e, c in f.terms})
    gp = LaurentPoly.make(L3, {e: abs(c) for e, c in g.terms})
    if fp.is_zero() or gp.is_zero():
        return
    ef, _ = lp_min_exponent(fp, tiebreak=list(L3))
    eg, _ = lp_min_exponent(gp, tiebreak=list(L3))
    eh, _ = lp_min_exponent(lp_mul(fp, gp), tiebreak=list(L3))
    assert eh == tuple(x + y for x, y in zip(ef, eg))


def test_substitute_is_a_homomorphism():
    target = ("u", "v")
    images = {
        "a": LaurentPoly.make(target, {(1, 0): 1, (0, 1): 1}),  # u + v
        "b": LaurentPoly.monomial(target, {"u": -1}),
        "c": LaurentPoly.monomial(target, {"v": 2}),
    }
    f = poly({(1, 1, 0): 1})
    g = poly({(0, 0, 1): 1, (2, 0, 0): -3})
    sf = lp_substitute(f, images, target)
    sg = lp_substitute(g, images, target)
    sfg = lp_substitute(lp_mul(f, g), images, target)
    assert lp_equal(sfg, lp_mul(sf, sg))
    ssum = lp_substitute(lp_add(f, g), images, target)
    assert lp_equal(ssum, lp_add(sf, sg))


def test_substitute_requires_monomial_denominators():
    # a term with a negative exponent of a non-monomial image is not Laurent
    target = ("u",)
    images = {
        "a": LaurentPoly.make(target, {(1,): 1, (0,): 1}),
        "b": LaurentPoly.monomial(target, {"u": 1}),
        "c": LaurentPoly.monomial(target, {}),
    }
    f = poly({(-1, 0, 0): 1})
    with pytest.raises((NotLaurent, NotInvertible)):
        lp_substitute(f, images, target)


def test_tropicalize():
    f = poly({(0, 1, 0): 1, (1, 1, 0): 2})
    assert sorted(tropicalize(f)) == [(0, 1, 0), (1, 1, 0)]
