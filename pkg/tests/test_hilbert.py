from fractions import Fraction
from math import comb

from detlab.hilbert import HilbertSeries, UniPoly, numerator, series_from_betti
from detlab.ideals import Ideal
from detlab.ring import Ring


def test_zero_ideal_function():
    R = Ring(4)
    hs = Ideal(R, []).hilbert_series
    for d in range(8):
        assert hs.function(d) == comb(3 + d, 3)


def test_coordinate_points_numerator():
    # squarefree quadrics in 3 variables: 3 points in P^2
    monos = [(1, 1, 0), (1, 0, 1), (0, 1, 1)]
    hs = HilbertSeries(tuple(numerator(monos, 3)), 3)
    assert hs.krull_dim == 1 and hs.degree == 3
    assert str(hs.polynomial()) == "3"


def test_betti_identity_for_complete_intersection():
    hs = series_from_betti({(0, 2): 2, (1, 4): 1}, 3)
    assert hs.numerator == (1, 0, -2, 0, 1)
    assert hs.degree == 4


def test_unipoly_format():
    p = UniPoly.make([1, Fraction(10, 3), 4, Fraction(5, 3)])
    assert str(p) == "5/3*t^3 + 4*t^2 + 10/3*t + 1"
    assert p(0) == 1


def test_scroll_polynomial_matches_eagon_northcott_count():
    # R/I for the 3x5 linear matrix in 7 variables is resolved by
    # R <- R(-3)^10 <- R(-4)^15 <- R(-5)^6; it is CM with negative a-invariant,
    # so the alternating binomial sum is the Hilbert polynomial for all d >= 0
    from detlab.constructions import generic_linear_matrix

    def hf(d):
        return sum(sign * b * comb(d - shift + 6, 6) for sign, b, shift in
                   ((1, 1, 0), (-1, 10, 3), (1, 15, 4), (-1, 6, 5)) if d - shift >= 0)

    hp = generic_linear_matrix(3, 5, 7, seed=9).ideal().hilbert_polynomial()
    assert [hp(d) for d in range(8)] == [hf(d) for d in range(8)]
    assert hp.coeffs == (Fraction(1), Fraction(11, 6), Fraction(5, 2), Fraction(5, 3))
    assert hp(1) == 7
