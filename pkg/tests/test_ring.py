from fractions import Fraction

import pytest

from detlab.ring import (ANY_DEGREE, DEGREVLEX, LEX, Field, ParseError, Ring, compare,
                         elimination_order, poly)


def test_degrevlex_equal_degree():
    # x0^2 x1 vs x0 x1 x2: smaller last-variable exponent wins
    assert compare((2, 1, 0), (1, 1, 1), DEGREVLEX) == 1


def test_compare_reflexive():
    for order in (DEGREVLEX, LEX, elimination_order(1)):
        assert compare((1, 2, 3), (1, 2, 3), order) == 0


def test_elimination_block():
    assert compare((1, 0), (0, 3), elimination_order(1)) == 1


def test_arith_over_rationals():
    R = Ring(2, Field.rationals())
    x0, x1 = R.gens()
    assert (x0 + x1) * (x0 - x1) == x0 ** 2 - x1 ** 2
    assert (x0 + R.zero()) == x0
    assert (x0.scale(Fraction(1, 2)) * 2) == x0


def test_frobenius_char_2():
    R = Ring(2, Field(2))
    x0, x1 = R.gens()
    assert (x0 + x1) ** 2 == x0 ** 2 + x1 ** 2


def test_substitute():
    R = Ring(3)
    x = R.gens()
    assert (x[0] * x[2]).substitute([x[0], x[1], R.zero()]) == R.zero()
    f = poly(R, "x0^2*x1 - 3*x2^3 + x1")
    assert f.substitute(x) == f


def test_substitute_x3_to_x2_gives_section_matrix():
    from detlab.constructions import veronese_power_matrix

    M = veronese_power_matrix(1)
    x = M.ring.gens()
    images = list(x)
    images[3] = x[2]
    got = M.substitute(images)
    want = [["x0", "x1", "x2"], ["x1", "x2", "x4"], ["x2", "x4", "x5"]]
    assert [[str(e) for e in row] for row in got.rows] == want


def test_is_homogeneous():
    R = Ring(4)
    assert poly(R, "x0*x3 - x1*x2").is_homogeneous() == 2
    assert poly(R, "x0 + x1*x2").is_homogeneous() is None
    assert R.zero().is_homogeneous() is ANY_DEGREE


def test_parse_roundtrip_and_errors():
    R = Ring(3)
    f = poly(R, "2*x0^3 - (x1 + x2)^2*x0 + 7")
    assert poly(R, str(f)) == f
    with pytest.raises(ParseError) as e:
        poly(R, "x0 + y")
    assert e.value.column == 6


def test_field_rejects_composite():
    with pytest.raises(ValueError):
        Field(32004)


def test_field_inverse():
    F = Field(32003)
    for a in (1, 2, 17, 32002):
        assert a * F.inv(a) % 32003 == 1
