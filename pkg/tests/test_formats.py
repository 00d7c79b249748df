import pytest

from detlab.constructions import SymmetricFamily, squarefree_matrix, veronese_ideal
from detlab.formats import format_ideal, format_matrix, parse_ideal, parse_matrix, read_matrix
from detlab.ideals import equal
from detlab.ring import ParseError


def test_matrix_roundtrip():
    M = squarefree_matrix(4, 2)
    assert parse_matrix(format_matrix(M)).rows == M.rows
    Z = SymmetricFamily(2, seed=3).Z()
    back = parse_matrix(format_matrix(Z))
    assert back.ring.varnames == Z.ring.varnames and back.rows == Z.rows


def test_ideal_roundtrip_with_comments():
    I = veronese_ideal()
    text = "# Veronese\n" + format_ideal(I) + "\n# trailing\n"
    assert equal(parse_ideal(text), I)


def test_header_field():
    I = parse_ideal("ring n=2 p=7\nx0^7 + 8*x1\n")
    assert I.ring.p == 7 and str(I.gens[0]) == "x0^7 + x1"


@pytest.mark.parametrize("text,line,col", [
    ("", 1, 1),
    ("ring n=2\nx0 +; x1", 2, 5),
    ("ring n=2 q=3\nx0", 1, 10),
    ("ring n=2\nx0; x1\nx0", 3, 1),
    ("ring n=2\nx0; x1 + y", 2, 10),
    ("ring n=3 vars=a,b\na", 1, 15),
])
def test_parse_errors_cite_position(text, line, col):
    with pytest.raises(ParseError) as e:
        parse_matrix(text)
    assert (e.value.line, e.value.column) == (line, col)


def test_sample_files_parse(samples):
    M = read_matrix(samples / "sqfr_n4_d2.mat")
    assert M.shape == (2, 5)
