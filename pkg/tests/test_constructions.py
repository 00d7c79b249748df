import random

import pytest

from detlab.constructions import (SymmetricFamily, basic_double_link, bdl_matrix, cone_family,
                                  construct, flat_family_matrix, gensectbdl_ideal,
                                  gensectbdl_section, link_ideal, n_plus_1_curve, points_ideal,
                                  power_ideal_matrix, squarefree_ideal, squarefree_matrix,
                                  veronese_cone_coordinates, veronese_ideal, veronese_power_matrix)
from detlab.detcheck import CERTIFIED_YES, check_good
from detlab.ideals import Ideal, equal, hyperplane_section, ideal_sum, is_saturated, maximal_ideal
from detlab.matrixlab import PolyMatrix, delete_column
from detlab.resolutions import betti_table, free_resolution
from detlab.ring import Ring


def test_power_matrix_display():
    M = power_ideal_matrix(2, 2)
    assert [[str(e) for e in r] for r in M.rows] == [["x1", "x2", "0"], ["0", "x1", "x2"]]
    assert equal(M.ideal(), maximal_ideal(M.ring).power(2))
    M = power_ideal_matrix(4, 1)
    assert M.shape == (1, 4) and equal(M.ideal(), maximal_ideal(M.ring))


def test_squarefree_matrix_validation():
    with pytest.raises(ValueError):
        squarefree_matrix(3, 2, alphas=(1, 1))
    with pytest.raises(ValueError):
        squarefree_matrix(3, 2, alphas=(0, 2))


def test_squarefree_d1_and_points():
    M = squarefree_matrix(3, 1)
    assert equal(M.ideal(), maximal_ideal(M.ring))
    M = squarefree_matrix(4, 2)
    R = M.ring
    pts = [[int(i == j) for j in range(5)] for i in range(5)]
    assert equal(M.ideal(), points_ideal(R, pts))
    assert equal(M.ideal(), squarefree_ideal(R, 2))


def test_symmetric_family_t2_is_veronese():
    # x0_0, x0_1, x0_2, x1_1, x1_2, x2_2 line up with x0..x5 of the display
    I = SymmetricFamily(2).X().ideal(2)
    R = Ring(6)
    assert equal(Ideal(R, [g.change_ring(R) for g in I.gens]), veronese_ideal())


def test_symmetric_family_displays():
    fam = SymmetricFamily(3)
    Y = [[str(e) for e in r] for r in fam.Y().rows]
    assert Y[1] == ["x0_1", "x0_2", "x0_3", "x1_3"]
    assert Y[3] == ["x0_3", "x1_3", "x2_3", "x3_3"]
    U = [[str(e) for e in r] for r in fam.U().rows]
    assert U[0] == ["x0_0", "x0_1", "x0_2", "x0_3", "x1_3"]
    assert U[2] == ["x0_2", "x0_3", "x1_3", "x2_3", "x3_3"]


@pytest.mark.parametrize("seed", [0, 1, 2])
def test_zs_height_three(seed):
    assert SymmetricFamily(3, seed=seed).Zs().ideal(3).height == 3


def test_zs_endpoints():
    fam = SymmetricFamily(2, seed=1)
    assert fam.Zs(0).rows == fam.Y().rows
    assert fam.Zs(1).rows == fam.Z().rows


def test_curve_components():
    for n in (3, 4):
        c = n_plus_1_curve(n)
        assert equal(c.I_C, c.by_intersection())
        assert equal(ideal_sum(c.I_C1, c.I_C2), c.I_P)


def test_gensectbdl_generators_and_degree():
    c = n_plus_1_curve(3)
    x1 = c.ring.var(1)
    link = basic_double_link(c.I_C, c.I_S, x1)
    assert equal(link.ideal, gensectbdl_ideal(3))
    assert link.saturated
    assert link.ideal.degree == c.I_C.degree + 1 * c.I_S.degree


def test_link_formula_with_unit():
    c = n_plus_1_curve(3)
    assert equal(link_ideal(c.I_C, c.I_S, c.ring.one()), c.I_C)


def test_bdl_preconditions():
    c = n_plus_1_curve(3)
    x = c.ring.gens()
    with pytest.raises(ValueError):
        basic_double_link(c.I_S, c.I_C, x[1])  # containment reversed
    with pytest.raises(ValueError):
        basic_double_link(c.I_C, c.I_S, x[0])  # x0 divides zero mod I_S


def test_gensectbdl_section_matrix():
    sl = gensectbdl_section(4, seed=7)
    O = sl.O
    assert O.shape == (2, 5)
    assert O.rows[0][1] == sl.y * sl.F
    assert O.rows[1][1] == (sl.y * sl.F).scale(sl.gamma)
    assert check_good(O).verdict == CERTIFIED_YES


def test_bdl_matrix_t1_extends_complete_intersection():
    R = Ring(4)
    x = R.gens()
    M = PolyMatrix(R, [[x[0], x[1]]])
    N = PolyMatrix(R, [[x[0], x[1]], [x[2], x[3]]])
    O = bdl_matrix(M, N, x[3], "row_added", 1, 2)
    assert O.rows[1][2] == x[3] and O.rows[0][2] == R.zero()
    assert equal(O.ideal(), link_ideal(M.ideal(), N.ideal(), x[3]))


def test_bdl_matrix_shape_errors():
    R = Ring(4)
    x = R.gens()
    M = PolyMatrix(R, [[x[0], x[1], x[2]]])
    with pytest.raises(ValueError):
        bdl_matrix(M, M, x[3], "column_removed", 0)
    with pytest.raises(ValueError):
        bdl_matrix(M, delete_column(M, 1), x[3], "sideways", 0)


def test_cone_family_endpoints():
    I = veronese_cone_coordinates()
    assert equal(cone_family(I, 1).ideal, I)
    T0 = cone_family(I, 0).ideal
    hank = PolyMatrix.from_strings(I.ring, [["x0", "x1", "x2", "x3"], ["x1", "x2", "x3", "x4"]])
    assert equal(T0, hank.ideal())


def test_flat_family_matrix_endpoints():
    assert equal(flat_family_matrix(1).ideal(2), veronese_ideal())
    M0 = flat_family_matrix(0).ideal(2)
    assert all(e[3] == 0 for g in M0.gens for e in g.terms)


def test_cone_family_betti_constant_symmetric():
    I = SymmetricFamily(2).X().ideal(2)
    s = I.ring.field.random_element(random.Random(3), exclude=(0, 1))
    tables = [betti_table(free_resolution(cone_family(I, v).ideal)) for v in (0, s, 1)]
    assert tables[0] == tables[1] == tables[2]


def test_power_veronese_resolution_scales():
    I2 = veronese_power_matrix(2).ideal(2)
    assert is_saturated(I2) and I2.height == 3
    bt = betti_table(free_resolution(I2)).as_dict()
    assert bt == {(0, 4): 6, (1, 6): 8, (2, 8): 3}


def test_construct_ids():
    assert construct("symm.U?t=3").shape == (3, 5)
    assert construct("artin?n=2&t=3").shape == (3, 4)
    assert len(construct("vero").gens) == 6
    with pytest.raises(KeyError):
        construct("nope")
