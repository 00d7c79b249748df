import pytest

from detlab.constructions import n_plus_1_curve, squarefree_ideal, stgood_matrix, veronese_ideal
from detlab.ideals import (Ideal, artinian_reduction, equal, hyperplane_section, ideal_sum,
                           intersect, is_saturated, maximal_ideal, mu, mu_by_hilbert, mu_graded,
                           quotient, quotient_by, saturate)
from detlab.groebner import monomials_of_degree
from detlab.ring import Ring, poly, polys


def test_intersection_gives_curve_formula():
    c = n_plus_1_curve(3)
    x = c.ring.gens()
    want = Ideal(c.ring, [x[0] * x[2], x[0] * x[3], x[0] * x[4], x[1] * x[2], x[1] * x[3], x[2] * x[3]])
    assert equal(intersect(c.I_C1, c.I_C2), want)


def test_quotient_by_unit_ideal():
    I = veronese_ideal()
    assert equal(quotient(I, Ideal(I.ring, [I.ring.one()])), I)


def test_saturation_of_point_square():
    R = Ring(4)
    I_P2 = Ideal(R, R.gens()[:3]).power(2)
    assert equal(saturate(I_P2), I_P2)
    assert is_saturated(I_P2)
    assert equal(saturate(I_P2 * maximal_ideal(R)), I_P2)
    assert not is_saturated(I_P2 * maximal_ideal(R))


def test_equal_examples():
    Z = stgood_matrix("Z")
    R = Z.ring
    assert equal(Z.ideal(), Ideal(R, R.gens()[:3]).power(2))
    x0 = R.var(0)
    assert not equal(Ideal(R, [x0]), Ideal(R, [x0 ** 2]))
    I = veronese_ideal()
    assert equal(I, ideal_sum(I, Ideal(I.ring, [])))


@pytest.mark.parametrize("n,d", [(3, 2), (4, 2), (4, 3), (5, 3)])
def test_squarefree_height(n, d):
    R = Ring(n + 1)
    assert squarefree_ideal(R, d).height == n + 2 - d


def test_dimension_and_height():
    R = Ring(3)
    I = Ideal(R, polys(R, ["x0*x1", "x0*x2"]))
    assert (I.krull_dim, I.height) == (2, 1)
    assert veronese_ideal().height == 3


def test_hilbert_polynomials():
    I = veronese_ideal()
    assert str(I.hilbert_polynomial()) == "2*t^2 + 3*t + 1"
    J = hyperplane_section(I, poly(I.ring, "x0 + 3*x1 - x2 + 5*x3 + 2*x4 + 7*x5"))
    assert str(J.hilbert_polynomial()) == "4*t + 1"
    # brute-force Hilbert function check from the standard monomials
    leads = J.lead_monomials
    for d in range(11):
        std = [m for m in monomials_of_degree(J.ring.nvars, d)
               if not any(all(a >= b for a, b in zip(m, l)) for l in leads)]
        assert len(std) == J.hilbert_function(d)
        if d >= 1:
            assert len(std) == 4 * d + 1


def test_mu_examples():
    R = Ring(3)
    assert mu(maximal_ideal(R).power(3)) == 10
    assert mu(veronese_ideal()) == 6
    assert mu(Ideal(R, [poly(R, "x0^2*x1 - x2^3")])) == 1


def test_mu_routes_agree():
    R = Ring(4)
    I = Ideal(R, polys(R, ["x0^2", "x0*x1", "x0^2 + x0*x1", "x1^3", "x0*x1*x2", "x2^2*x3"]))
    assert mu_graded(I) == mu_by_hilbert(I) == {2: 2, 3: 2}


def test_section_of_cone_by_its_direction():
    I = veronese_ideal()
    R = Ring(7)
    cone = Ideal(R, [poly(R, str(g)) for g in I.gens])  # x6 does not occur: a cone over V
    J = hyperplane_section(cone, R.var(6))
    assert equal(J, I)


def test_stgood_section_by_x4():
    C = stgood_matrix("C")
    J = hyperplane_section(C.ideal(), C.ring.var(4))
    R = J.ring
    assert equal(J, Ideal(R, R.gens()[:3]).power(2))


def test_artinian_reduction_of_veronese_is_m_squared():
    ar = artinian_reduction(veronese_ideal(), seed=3)
    S = ar.ideal.ring
    assert S.nvars == 3
    assert equal(ar.ideal, maximal_ideal(S).power(2))


def test_artinian_reduction_of_artinian_ideal():
    R = Ring(3)
    I = maximal_ideal(R).power(2)
    ar = artinian_reduction(I)
    assert ar.forms == [] and equal(ar.ideal, I)


def test_colon_by_nonzerodivisor():
    I = veronese_ideal()
    assert equal(quotient_by(I, I.ring.var(0)), I)
