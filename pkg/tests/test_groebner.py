import random

import sympy

from detlab.constructions import veronese_ideal
from detlab.groebner import (ModuleElement, buchberger, eliminate, is_reduced, normal_form,
                             spair_check, syzygies)
from detlab.ring import LEX, Field, Ring, poly, polys


def test_twisted_cubic_spair():
    R = Ring(4)
    f, g = polys(R, ["x0*x3 - x1*x2", "x0*x2 - x1^2"])
    G = buchberger([f, g])
    x = R.gens()
    assert spair_check(G)
    assert normal_form(x[2] * f - x[3] * g, G) == R.zero()


def test_monomial_ideal_is_its_own_basis():
    R = Ring(3)
    x = R.gens()
    G = buchberger([x[0], x[1]])
    assert sorted(G.generators, key=str) == [x[0], x[1]]


def test_veronese_minors_are_a_basis():
    I = veronese_ideal()
    G = I.gb
    assert len(G.generators) == 6
    assert {g.is_homogeneous() for g in G.generators} == {2}
    assert spair_check(G) and is_reduced(G)


def test_normal_form_examples():
    R = Ring(6)
    G = veronese_ideal().gb
    assert normal_form(poly(R, "x0*x3 - x1^2"), G) == R.zero()
    R2 = Ring(1)
    x0 = R2.var(0)
    assert normal_form(x0, buchberger([x0 ** 2])) == x0


def test_eliminate_intersection_trick():
    R = Ring(3, names=("t", "x0", "x1"))
    gens = polys(R, ["t*x0", "x1 - t*x1", "t^2 - t"])
    out = eliminate(gens, 1)
    assert [str(g) for g in out] == ["x0*x1"]


def test_eliminate_parabola():
    R = Ring(3, names=("t", "x0", "x1"))
    out = eliminate(polys(R, ["x0 - t", "x1 - t^2"]), 1)
    assert len(out) == 1 and out[0].monic() == poly(R, "x1 - x0^2").monic()


def test_eliminate_zero_variables():
    R = Ring(3)
    gens = polys(R, ["x0^2 - x1", "x1*x2"])
    assert sorted(map(str, eliminate(gens, 0))) == sorted(map(str, buchberger(gens).generators))


def test_koszul_syzygy():
    R = Ring(2)
    x0, x1 = R.gens()
    syz = syzygies([ModuleElement((x0,)), ModuleElement((x1,))])
    assert len(syz) == 1
    a, b = syz[0].components
    assert a * x0 + b * x1 == R.zero()
    assert {a.monic(), b.monic()} == {x0, x1}


def test_single_nonzerodivisor_has_no_syzygy():
    R = Ring(2)
    assert syzygies([ModuleElement((poly(R, "x0^2 + x1^2"),))]) == []


def test_veronese_linear_syzygies():
    gens = veronese_ideal().gens
    syz = syzygies([ModuleElement((g,)) for g in gens])
    assert len(syz) == 8
    assert all(s.degree() == 3 for s in syz)


def _sympy_basis(gens, ring, p):
    xs = sympy.symbols(ring.varnames)
    exprs = [sympy.sympify(str(g).replace("^", "**")) for g in gens]
    G = sympy.groebner(exprs, *xs, modulus=p, order="grevlex")
    return {str(sympy.Poly(g, *xs, modulus=p).monic().as_expr()) for g in G.exprs}


def _ours_as_sympy(G, ring, p):
    xs = sympy.symbols(ring.varnames)
    out = set()
    for g in G.generators:
        e = sympy.sympify(str(g.monic()).replace("^", "**"))
        out.add(str(sympy.Poly(e, *xs, modulus=p).monic().as_expr()))
    return out


def test_reduced_basis_matches_sympy_oracle():
    # independent oracle: sympy's Groebner basis over F_p in grevlex
    p = 101
    rng = random.Random(4)
    R = Ring(3, Field(p))
    for _ in range(6):
        gens = []
        for _ in range(3):
            f = R.zero()
            for _ in range(3):
                e = [rng.randrange(3) for _ in range(3)]
                f = f + R.monomial(e, rng.randrange(1, p))
            gens.append(f)
        G = buchberger(gens)
        assert _ours_as_sympy(G, R, p) == _sympy_basis(gens, R, p)


def test_lex_basis_triangular():
    R = Ring(3).with_order(LEX)
    G = buchberger(polys(R, ["x0 - x1^2", "x1 - x2^3"]))
    assert spair_check(G)
    assert any(g.support_variables() == {2} or g.support_variables() <= {1, 2} for g in G.generators)
