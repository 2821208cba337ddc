import cmath
import json
import math
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from fszd import (
    Cyclotomic,
    NotCoprimeError,
    abs_squared,
    from_root,
    from_root_combination,
    galois,
    pretty,
    rationality,
    sqrt_cyclotomic,
)

CONDUCTORS = [1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 12, 15, 16, 20, 24]

rationals = st.fractions(
    min_value=-6, max_value=6, max_denominator=4
)


@st.composite
def cyclotomics(draw, conductors=CONDUCTORS):
    n = draw(st.sampled_from(conductors))
    terms = draw(
        st.dictionaries(st.integers(0, 2 * n), rationals, min_size=0, max_size=4)
    )
    return from_root_combination(n, terms)


# -- construction examples -----------------------------------------------------


def test_from_root_examples():
    assert from_root(0, 5) == 1
    assert from_root(4, 4) == 1
    assert from_root(3, 6) == -1
    assert from_root(-1, 5) == from_root(4, 5)


def test_arith_examples():
    assert from_root(1, 4) + from_root(3, 4) == 0
    assert from_root(1, 3) + from_root(2, 3) == -1
    assert from_root(1, 5) * from_root(4, 5) == 1
    assert -from_root(1, 3) == from_root(1, 3) * (-1)


def test_galois_examples():
    assert galois(from_root(1, 3), 2) == from_root(2, 3)
    assert galois(from_root(1, 5), -1) == from_root(4, 5)
    assert galois(Cyclotomic.rational(Fraction(3, 2)), 7) == Fraction(3, 2)
    with pytest.raises(NotCoprimeError):
        galois(from_root(1, 8), 2)


def test_abs_squared_examples():
    assert abs_squared(1 + from_root(1, 4)) == 2
    v = abs_squared(from_root(1, 5) + from_root(4, 5))
    assert v == 2 + from_root(2, 5) + from_root(3, 5)
    assert pretty(v) == "(3-√5)/2"
    assert abs_squared(Cyclotomic.rational(3)) == 9


def test_rationality_examples():
    root_sum = sum((from_root(k, 5) for k in range(1, 5)), Cyclotomic.rational(0))
    info = rationality(root_sum)
    assert info.is_rational and info.value == -1 and info.pretty == "-1"

    value = from_root_combination(5, {1: -60, 4: -60, 2: -10, 3: -10})
    info = rationality(value)
    assert not info.is_rational and info.value is None
    assert info.pretty == "35-25√5"
    assert abs(info.approx - (35 - 25 * math.sqrt(5))) < 1e-9

    info = rationality(from_root(1, 8) + from_root(7, 8))
    assert info.pretty == "√2"


def test_pretty_half_integer_quadratic():
    # (1325 + 25*sqrt(5))/2 style rendering with a common denominator
    value = Cyclotomic.rational(Fraction(1325, 2)) + sqrt_cyclotomic(5) * Fraction(25, 2)
    assert pretty(value) == "(1325+25√5)/2"
    negated = Cyclotomic.rational(Fraction(1325, 2)) - sqrt_cyclotomic(5) * Fraction(25, 2)
    assert pretty(negated) == "(1325-25√5)/2"
    assert pretty(-sqrt_cyclotomic(2)) == "-√2"
    assert pretty(sqrt_cyclotomic(3) * 2 - 1) == "-1+2√3"


def test_rationality_handles_plain_roots():
    info = rationality(from_root(2, 5))
    assert not info.is_rational
    assert info.pretty == "ζ5^2"
    assert pretty(from_root(1, 5) * 3) == "3ζ5"
    assert pretty(-from_root(1, 5) - from_root(1, 5)) == "-2ζ5"


def test_conductor_canonicalization():
    assert from_root(1, 6).conductor == 3  # 2 mod 4 conductor never minimal
    assert (from_root(1, 8) * from_root(1, 8)).conductor == 4
    assert (from_root(1, 12) ** 3).conductor == 4
    assert (from_root(1, 5) - from_root(1, 5)).conductor == 1


def test_json_round_trip():
    value = from_root_combination(12, {1: Fraction(1, 2), 7: -2})
    packed = json.dumps(value.to_json_dict())
    assert Cyclotomic.from_json_dict(json.loads(packed)) == value
    assert json.loads(packed)["conductor"] == value.conductor


def test_in_field():
    assert from_root(1, 5).in_field(10)  # Q(zeta_10) = Q(zeta_5)
    assert not from_root(1, 5).in_field(4)
    assert sqrt_cyclotomic(2).in_field(8)
    assert not sqrt_cyclotomic(2).in_field(4)
    assert Cyclotomic.rational(7).in_field(1)


def test_sqrt_cyclotomic_values():
    for d in (1, 2, 3, 5, 6, 7, 10, 15):
        root = sqrt_cyclotomic(d)
        assert abs(root.approx() - math.sqrt(d)) < 1e-9
        assert root * root == d


# -- algebraic laws -------------------------------------------------------------


@given(cyclotomics(), cyclotomics())
@settings(max_examples=60, deadline=None)
def test_commutativity(a, b):
    assert a + b == b + a
    assert a * b == b * a


@given(cyclotomics(), cyclotomics(), cyclotomics())
@settings(max_examples=40, deadline=None)
def test_associativity_distributivity(a, b, c):
    assert (a + b) + c == a + (b + c)
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c


@given(cyclotomics())
@settings(max_examples=60, deadline=None)
def test_rationality_iff_galois_fixed(v):
    n = v.conductor
    units = [r for r in range(1, n + 1) if math.gcd(r, n) == 1]
    fixed = all(v.galois(r) == v for r in units)
    assert fixed == v.is_rational()


@given(cyclotomics())
@settings(max_examples=50, deadline=None)
def test_galois_group_action(v):
    n = v.conductor
    units = [r for r in range(1, n + 1) if math.gcd(r, n) == 1]
    assert v.galois(1) == v
    for r in units[:4]:
        for s in units[-3:]:
            assert v.galois(r).galois(s) == v.galois(r * s)


@given(cyclotomics(), cyclotomics())
@settings(max_examples=40, deadline=None)
def test_galois_is_ring_map(a, b):
    n = math.lcm(a.conductor, b.conductor)
    units = [r for r in range(1, n + 1) if math.gcd(r, n) == 1]
    for r in units[:3]:
        assert (a * b).galois(r) == a.galois(r) * b.galois(r)
        assert (a + b).galois(r) == a.galois(r) + b.galois(r)


@given(cyclotomics())
@settings(max_examples=50, deadline=None)
def test_abs_squared_properties(v):
    sq = v.abs_squared()
    assert sq.galois(-1) == sq
    n = v.conductor
    for r in [r for r in range(2, n + 1) if math.gcd(r, n) == 1][:3]:
        assert v.galois(r).abs_squared() == sq.galois(r)


@st.composite
def root_combinations(draw):
    n = draw(st.sampled_from(CONDUCTORS))
    terms = draw(st.dictionaries(st.integers(0, n - 1), rationals, min_size=1, max_size=4))
    return n, terms


@given(root_combinations())
@settings(max_examples=60, deadline=None)
def test_approx_matches_direct_evaluation(combo):
    n, terms = combo
    value = from_root_combination(n, terms)
    direct = sum(
        complex(c) * cmath.exp(2j * cmath.pi * k / n) for k, c in terms.items()
    )
    assert abs(value.approx() - direct) < 1e-9


def test_division_and_errors():
    v = from_root(1, 5)
    assert v / Fraction(1, 2) == v * 2
    with pytest.raises(TypeError):
        v / from_root(1, 5)
    with pytest.raises(ZeroDivisionError):
        v / 0


def test_sort_key_deterministic():
    values = [from_root(k, 7) for k in range(7)]
    keys = [v.sort_key() for v in values]
    assert sorted(keys) == sorted(keys, key=lambda k: k)
    a = from_root_combination(12, {5: 2})
    b = from_root_combination(12, {5: 2})
    assert a.sort_key() == b.sort_key() and hash(a) == hash(b)
