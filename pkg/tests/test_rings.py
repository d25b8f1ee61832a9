import itertools
import math

import pytest
from hypothesis import given, settings, strategies as st

from ringcrosscap.rings import (
    ElementNotUnit,
    EmptyS,
    GaloisField,
    GNotSubgroup,
    ModularInt,
    NonIrreduciblePoly,
    NotPrimePower,
    OrderTooLarge,
    QuotientPoly,
    RingSpecParseError,
    SNotInG,
    SNotInverseClosed,
    comaximal,
    compile_ring,
    index2_maximal_ideals,
    inverse_closed_subsets,
    is_local,
    jacobson_radical,
    parse_ring,
    product,
    subgroup_closure,
    units,
    validate_S,
)
from ringcrosscap.properties import ring_pool


def el(R, *texts):
    return {R.parse_element(t) for t in texts}


# oracles: brute force over the raw tables ------------------------------------

def units_oracle(R):
    return {x for x in range(R.order) if any(R.times(x, y) == R.one for y in range(R.order))}


def nilpotent_oracle(R):
    out = set()
    for x in range(R.order):
        y = x
        for _ in range(R.order):
            if y == 0:
                out.add(x)
                break
            y = R.times(y, x)
    return out


def ideal_generated(R, gens):
    ideal = {0}
    frontier = set(gens)
    while frontier:
        new = set()
        for g in frontier:
            for r in range(R.order):
                new.add(R.times(r, g))
        new |= {R.plus(a, b) for a in ideal | new for b in ideal | new}
        frontier = new - ideal
        ideal |= new
    return ideal


# compile_ring -------------------------------------------------------------

def test_z8_units_and_radical():
    R = compile_ring(ModularInt(8))
    assert units(R) == {1, 3, 5, 7}
    assert jacobson_radical(R) == {0, 2, 4, 6}


def test_gf4_auto_poly():
    R = compile_ring(GaloisField(2, 2))
    assert R.order == 4
    assert len(units(R)) == 3
    assert R.is_field()
    assert R.spec.modulus() == (1, 1, 1)


def test_z2x_over_x2_local():
    R = compile_ring(QuotientPoly(2, (0, 0, 1)))
    assert R.order == 4
    loc, m = is_local(R)
    assert loc and len(m) == 2 and jacobson_radical(R) == m


def test_tables_are_a_commutative_ring():
    for text in ring_pool(16):
        compile_ring(text).check_axioms()


def test_order_limit_and_errors():
    with pytest.raises(OrderTooLarge):
        compile_ring("Z5 x Z7", max_order=32)
    assert compile_ring("Z5 x Z7").order == 35
    with pytest.raises(NonIrreduciblePoly):
        compile_ring(GaloisField(2, 2, (1, 0, 1)))
    with pytest.raises(NotPrimePower):
        parse_ring("F6")
    with pytest.raises(RingSpecParseError) as info:
        parse_ring("Z3 x ")
    assert "position" in str(info.value) or "col" in str(info.value) or info.value.args


def test_product_flattens():
    spec = product(product(ModularInt(2), ModularInt(3)), ModularInt(5))
    assert len(spec.factors) == 3
    assert compile_ring(spec).order == 30


@pytest.mark.parametrize("text, order", [
    ("Z8", 8), ("Z3 x Z3", 9), ("Z2[x]/(x^3)", 8), ("F4", 4), ("GF(4)", 4), ("Z2^4", 16),
    ("Z2 x F4", 8), ("Z3[x]/(x^2)", 9),
])
def test_parse_orders(text, order):
    assert compile_ring(text).order == order


# units / radical ------------------------------------------------------------

def test_units_examples():
    assert units(compile_ring("Z6")) == {1, 5}
    assert len(units(compile_ring("Z2 x F4"))) == 3
    assert units(compile_ring("Z5")) == {1, 2, 3, 4}


def test_radical_examples():
    assert jacobson_radical(compile_ring("Z9")) == {0, 3, 6}
    R = compile_ring("Z3 x Z3")
    assert jacobson_radical(R) == {0}
    R = compile_ring("Z2 x Z4")
    assert jacobson_radical(R) == el(R, "(0,0)", "(0,2)")


@pytest.mark.parametrize("text", ring_pool(18))
def test_units_and_radical_match_brute_force(text):
    R = compile_ring(text)
    assert units(R) == units_oracle(R)
    assert jacobson_radical(R) == nilpotent_oracle(R)
    J = jacobson_radical(R)
    assert all(R.plus(R.one, j) in R.units for j in J)
    assert R.units.isdisjoint(R.zero_divisors)
    assert R.units | R.zero_divisors == set(range(R.order))


# locality / ideals ------------------------------------------------------------

def test_is_local_examples():
    loc, m = is_local(compile_ring("Z8"))
    assert loc and m == {0, 2, 4, 6}
    assert not is_local(compile_ring("Z3 x Z3"))[0]
    loc, m = is_local(compile_ring("Z2[x]/(x^3)"))
    assert loc and len(m) == 4


def test_index2_ideals():
    R = compile_ring("Z2 x Z5")
    ideals = index2_maximal_ideals(R)
    assert ideals == [frozenset(x for x in range(10) if R.decode(x)[0] == 0)]
    assert index2_maximal_ideals(compile_ring("Z5")) == []
    assert index2_maximal_ideals(compile_ring("Z4")) == [frozenset({0, 2})]


@pytest.mark.parametrize("text", ring_pool(16))
def test_index2_ideals_brute_force(text):
    R = compile_ring(text)
    found = set(index2_maximal_ideals(R))
    expected = set()
    # every ideal of these rings is generated by at most two elements
    for x, y in itertools.combinations_with_replacement(range(R.order), 2):
        I = frozenset(ideal_generated(R, [x, y]))
        if 2 * len(I) == R.order:
            expected.add(I)
    assert found == expected


def test_comaximal_examples():
    R = compile_ring("Z6")
    assert comaximal(R, 2, 3)
    assert not comaximal(compile_ring("Z4"), 2, 2)
    R = compile_ring("Z2 x Z4")
    assert comaximal(R, R.parse_element("(1,0)"), R.parse_element("(0,1)"))


@pytest.mark.parametrize("text", ["Z6", "Z2 x Z4", "Z3 x Z3", "Z2[x]/(x^2) x Z3", "Z12"])
def test_comaximal_brute_force(text):
    R = compile_ring(text)
    for x, y in itertools.product(range(R.order), repeat=2):
        assert comaximal(R, x, y) == (R.one in ideal_generated(R, [x, y]))


# subgroups and S ------------------------------------------------------------

def test_subgroup_closure_examples():
    assert subgroup_closure(compile_ring("Z7"), {2}) == {1, 2, 4}
    assert subgroup_closure(compile_ring("Z5"), {4}) == {1, 4}
    assert subgroup_closure(compile_ring("Z8"), {3, 5}) == {1, 3, 5, 7}
    with pytest.raises(ElementNotUnit):
        subgroup_closure(compile_ring("Z8"), {2})


def test_validate_S_examples():
    R = compile_ring("Z5")
    with pytest.raises(SNotInverseClosed):
        validate_S(R, None, {2})
    assert validate_S(R, None, {2, 3}).S == {2, 3}
    R = compile_ring("Z3 x Z3")
    assert validate_S(R, None, el(R, "(2,2)")).S == el(R, "(2,2)")
    with pytest.raises(EmptyS):
        validate_S(R, None, set())
    with pytest.raises(SNotInG):
        validate_S(compile_ring("Z7"), {1, 2, 4}, {3, 5})
    with pytest.raises(GNotSubgroup):
        validate_S(compile_ring("Z7"), {1, 2}, {1})


def test_z3xz3_has_15_inverse_closed_sets():
    R = compile_ring("Z3 x Z3")
    sets = inverse_closed_subsets(R)
    # four units, all self-inverse: every non-empty subset qualifies
    assert len(sets) == 15


def test_z5_inverse_closed_sets():
    sets = inverse_closed_subsets(compile_ring("Z5"))
    assert len(sets) == 7


@settings(max_examples=200, deadline=None)
@given(st.sampled_from(ring_pool(18)), st.data())
def test_subgroup_closure_is_a_subgroup(text, data):
    R = compile_ring(text)
    seed = data.draw(st.sets(st.sampled_from(sorted(R.units)), max_size=3))
    H = subgroup_closure(R, seed)
    assert R.one in H and set(seed) <= H
    assert all(R.times(a, b) in H for a in H for b in H)
    assert all(R.inverse[a] in H for a in H)
    assert len(R.units) % len(H) == 0
