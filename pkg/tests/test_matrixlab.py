import random

import pytest

from detlab.constructions import SymmetricFamily, power_ideal_matrix, squarefree_matrix, stgood_matrix
from detlab.ideals import equal
from detlab.matrixlab import (DegreeMatrix, PolyMatrix, col_ops, degree_matrix, delete_column,
                              delete_row, insert_column, is_one_generic, minors, random_invertible,
                              row_ops)
from detlab.ring import Field, Ring, poly


def test_degree_matrix_linear():
    D = degree_matrix(stgood_matrix("C"))
    assert D.u == ((1, 1),) * 4
    D = degree_matrix(power_ideal_matrix(3, 2))
    assert set(v for row in D.u for v in row) == {1}


def test_degree_matrix_mixed_rows():
    R = Ring(3)
    M = PolyMatrix.from_strings(R, [["x0", "x1", "x2"], ["x0^2", "x1^2", "x2^2"]])
    D = degree_matrix(M)
    assert D.q == 3 and D.t == 2
    assert all(abs(row[0] - row[1]) == 1 for row in D.u)
    assert D.is_monotone()


def test_catalecticant_minors():
    R = Ring(4)
    M = PolyMatrix.from_strings(R, [["x0", "x1", "x2"], ["x1", "x2", "x3"]])
    got = {m.monic() for m in minors(M, 2)}
    want = {poly(R, s).monic() for s in ["x0*x2 - x1^2", "x0*x3 - x1*x2", "x1*x3 - x2^2"]}
    assert got == want


def test_squarefree_minors_are_scaled_monomials():
    M = squarefree_matrix(2, 2, alphas=(1, 2))
    ms = minors(M, 2)
    assert sorted(len(m.terms) for m in ms) == [1, 1, 1]
    assert {tuple(next(iter(m.terms))) for m in ms} == {(1, 1, 0), (1, 0, 1), (0, 1, 1)}


def test_u_minors_equal_y_submaximal_t3():
    fam = SymmetricFamily(3)
    assert equal(fam.U().ideal(), fam.Y().ideal(3))


def test_row_ops_identity_and_generalized_row():
    Z = stgood_matrix("Z")
    assert row_ops(Z, [[1, 0], [0, 1]]).rows == Z.rows
    a = 5
    row = row_ops(Z, [[a, 1], [0, 1]]).rows[0]
    want = ["5*x0", "6*x1", "x2", "x0 + x1 + 5*x2"]
    assert [str(e) for e in row] == want


def test_minor_ideal_invariance():
    rng = random.Random(2)
    M = squarefree_matrix(4, 2)
    fld = M.ring.field
    I = M.ideal()
    for _ in range(5):
        G = random_invertible(2, fld, rng)
        H = random_invertible(5, fld, rng)
        assert equal(col_ops(row_ops(M, G), H).ideal(), I)


def test_delete_insert_roundtrip():
    M = stgood_matrix("C")
    col = M.column(2)
    assert insert_column(delete_column(M, 2), 2, col).rows == M.rows
    assert delete_row(M, 0).shape == (1, 4)


def test_one_generic():
    fam = SymmetricFamily(2)
    assert is_one_generic(fam.U()).one_generic
    R = Ring(3)
    M = PolyMatrix.from_strings(R, [["x0", "0"], ["x1", "x2"]])
    assert not is_one_generic(M).one_generic
    v = is_one_generic(SymmetricFamily(3, seed=4).Zs(), mode="generalized", seed=1)
    assert v.one_generic and not v.certain


def test_degree_matrix_from_grid_validation():
    with pytest.raises(ValueError):
        DegreeMatrix.from_grid([[1, 2], [1, 1]])
    assert DegreeMatrix.constant(5, 3).c == 3


def test_rejects_inhomogeneous():
    R = Ring(2)
    M = PolyMatrix.from_strings(R, [["x0", "x1^2"], ["x1", "x0"]])
    with pytest.raises(ValueError):
        degree_matrix(M)


def test_random_invertible_is_invertible():
    from detlab import linalg

    G = random_invertible(4, Field(), random.Random(0))
    assert linalg.is_invertible(G, 32003)
