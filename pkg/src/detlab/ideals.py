"""Homogeneous ideals: arithmetic, colon and saturation, numerical invariants,
hyperplane sections and Artinian reductions."""

from __future__ import annotations

import random
from dataclasses import dataclass
from functools import cached_property
from typing import Sequence

from . import hilbert as hs
from . import linalg
from .groebner import (GroebnerBasis, buchberger, drop_leading_variables, eliminate,
                       monomials_of_degree, normal_form)
from .ring import DEGREVLEX, Polynomial, Ring, RingMismatch


class Ideal:
    """Ideal given by generators; Groebner basis and invariants are cached."""

    def __init__(self, ring: Ring, gens: Sequence[Polynomial] = ()):
        gens = tuple(g for g in gens if g)
        for g in gens:
            if g.ring != ring:
                raise RingMismatch("generator outside the ideal's ring")
        self.ring = ring
        self.gens = gens

    def __repr__(self):
        return f"Ideal({', '.join(map(str, self.gens))})"

    def __len__(self):
        return len(self.gens)

    @cached_property
    def gb(self) -> GroebnerBasis:
        return buchberger(self.gens, ring=self.ring)

    def is_homogeneous(self) -> bool:
        return all(g.is_homogeneous() is not None for g in self.gens)

    def is_zero(self) -> bool:
        return not self.gens

    def is_unit(self) -> bool:
        return self.gb.is_unit()

    def contains(self, f: Polynomial) -> bool:
        return not normal_form(f, self.gb)

    def contains_ideal(self, other: "Ideal") -> bool:
        return all(self.contains(g) for g in other.gens)

    def reduce(self, f: Polynomial) -> Polynomial:
        return normal_form(f, self.gb)

    @cached_property
    def lead_monomials(self) -> list:
        return hs.minimalize(self.gb.lead_monomials())

    @cached_property
    def hilbert_series(self) -> hs.HilbertSeries:
        if not self.is_homogeneous():
            raise ValueError("Hilbert series needs a homogeneous ideal")
        return hs.HilbertSeries(tuple(hs.numerator(self.lead_monomials, self.ring.nvars)),
                                self.ring.nvars)

    def hilbert_function(self, d: int) -> int:
        return self.hilbert_series.function(d)

    def hilbert_polynomial(self) -> hs.UniPoly:
        return self.hilbert_series.polynomial()

    @cached_property
    def krull_dim(self) -> int:
        """Krull dimension of R/I (-1 for the unit ideal)."""
        if self.is_unit():
            return -1
        return self.ring.nvars - _min_cover([frozenset(i for i, e in enumerate(m) if e)
                                             for m in self.lead_monomials])

    @property
    def height(self) -> int:
        """Height (codimension); the unit ideal gets ``nvars + 1``."""
        return self.ring.nvars - self.krull_dim

    @property
    def degree(self) -> int:
        return self.hilbert_series.degree

    def __add__(self, other: "Ideal") -> "Ideal":
        return ideal_sum(self, other)

    def __mul__(self, other: "Ideal") -> "Ideal":
        return product(self, other)

    def power(self, k: int) -> "Ideal":
        out = Ideal(self.ring, [self.ring.one()])
        for _ in range(k):
            out = product(out, self)
        return out

    def __eq__(self, other):
        if not isinstance(other, Ideal):
            return NotImplemented
        return equal(self, other)

    __hash__ = None


def ideal(ring: Ring, gens) -> Ideal:
    """Build an ideal from polynomials or strings."""
    return Ideal(ring, [ring.parse(g) if isinstance(g, str) else g for g in gens])


def maximal_ideal(ring: Ring) -> Ideal:
    return Ideal(ring, ring.gens())


def _min_cover(sets: list) -> int:
    """Size of a smallest variable set meeting every support in ``sets``."""
    sets = [s for s in set(sets)]
    # keep minimal supports only
    sets = [s for s in sets if not any(t < s for t in sets)]
    best = [len(set().union(*sets)) if sets else 0]

    def rec(remaining, chosen):
        if chosen >= best[0]:
            return
        if not remaining:
            best[0] = chosen
            return
        pick = min(remaining, key=len)
        for v in sorted(pick):
            rec([s for s in remaining if v not in s], chosen + 1)

    rec(sets, 0)
    return best[0]


def _check_same(I: Ideal, J: Ideal):
    if I.ring != J.ring:
        raise RingMismatch("ideals live in different rings")


def ideal_sum(I: Ideal, J: Ideal) -> Ideal:
    _check_same(I, J)
    return Ideal(I.ring, I.gens + J.gens)


def product(I: Ideal, J: Ideal) -> Ideal:
    _check_same(I, J)
    return Ideal(I.ring, [f * g for f in I.gens for g in J.gens])


def equal(I: Ideal, J: Ideal) -> bool:
    _check_same(I, J)
    return I.gb.generators == J.gb.generators


def _extend(ring: Ring, k: int = 1) -> Ring:
    names = tuple(f"_t{i}" for i in range(k)) + ring.varnames
    return Ring(ring.nvars + k, ring.field, DEGREVLEX, names)


def _embed(f: Polynomial, big: Ring, k: int = 1) -> Polynomial:
    pad = (0,) * k
    return Polynomial(big, {pad + e: c for e, c in f.terms.items()}, _clean=True)


def intersect(I: Ideal, J: Ideal) -> Ideal:
    """``I \\cap J`` via ``<t*I, (1-t)*J>`` and elimination of ``t``."""
    _check_same(I, J)
    ring = I.ring
    if I.is_zero() or J.is_zero():
        return Ideal(ring)
    if I.is_unit():
        return J
    if J.is_unit():
        return I
    big = _extend(ring)
    t = big.var(0)
    one = big.one()
    gens = [t * _embed(f, big) for f in I.gens] + [(one - t) * _embed(g, big) for g in J.gens]
    small = Ring(ring.nvars, ring.field, DEGREVLEX, ring.names)
    out = drop_leading_variables(eliminate(gens, 1), 1, small)
    return Ideal(ring, [f.change_ring(ring) for f in out])


def intersect_all(ideals: Sequence[Ideal]) -> Ideal:
    ideals = list(ideals)
    out = ideals[0]
    for J in ideals[1:]:
        out = intersect(out, J)
    return out


def divide_exact(f: Polynomial, g: Polynomial) -> Polynomial:
    """``f / g`` when ``g`` divides ``f`` (raises otherwise)."""
    ring = f.ring
    q = ring.zero()
    r = f
    lg = g.leading_monomial()
    cg = g.leading_coefficient()
    inv = ring.field.inv(cg)
    while r:
        lr = r.leading_monomial()
        if any(a < b for a, b in zip(lr, lg)):
            raise ValueError("not an exact division")
        mono = tuple(a - b for a, b in zip(lr, lg))
        c = ring.field(r.leading_coefficient() * inv)
        q = q + ring.monomial(mono, c)
        r = r - g.mul_monomial(mono, c)
    return q


def _permute(f: Polynomial, perm: Sequence[int], ring: Ring) -> Polynomial:
    # new exponent vector: position perm[i] receives old exponent i
    out = {}
    for e, c in f.terms.items():
        ne = [0] * len(e)
        for i, a in enumerate(e):
            ne[perm[i]] = a
        out[tuple(ne)] = c
    return Polynomial(ring, out, _clean=True)


def _swap_last(n: int, v: int) -> list:
    perm = list(range(n))
    perm[v], perm[n - 1] = n - 1, v
    return perm


def quotient_by_variable(I: Ideal, v: int, infinite: bool = False) -> Ideal:
    """``(I : x_v)`` (or ``(I : x_v^inf)``) for homogeneous ``I``.

    Moves ``x_v`` last; in degrevlex the reduced basis elements divisible by
    the last variable are exactly those whose lead is, so dividing them out
    gives a basis of the colon ideal.
    """
    ring = I.ring
    n = ring.nvars
    perm = _swap_last(n, v)
    work = Ring(n, ring.field, DEGREVLEX)
    G = buchberger([_permute(g, perm, work) for g in I.gens], ring=work)
    out = []
    for g in G.generators:
        low = min(e[n - 1] for e in g.terms)
        k = low if infinite else min(low, 1)
        if k:
            g = Polynomial(work, {e[:-1] + (e[-1] - k,): c for e, c in g.terms.items()}, _clean=True)
        out.append(_permute(g, perm, ring))
    return Ideal(ring, out)


def quotient_by(I: Ideal, g: Polynomial) -> Ideal:
    """``(I : g)`` for one polynomial."""
    ring = I.ring
    if not g:
        return Ideal(ring, [ring.one()])
    if g.is_constant():
        return I
    if len(g.terms) == 1 and I.is_homogeneous():
        (e,) = g.terms
        out = I
        for v, a in enumerate(e):
            for _ in range(a):
                out = quotient_by_variable(out, v)
        return out
    inter = intersect(I, Ideal(ring, [g]))
    return Ideal(ring, [divide_exact(f, g) for f in inter.gens])


def quotient(I: Ideal, J: Ideal) -> Ideal:
    """``(I : J) = intersection of (I : g)`` over the generators of ``J``."""
    _check_same(I, J)
    if J.is_zero():
        return Ideal(I.ring, [I.ring.one()])
    return intersect_all([quotient_by(I, g) for g in J.gens])


def saturate(I: Ideal, J: Ideal | None = None) -> Ideal:
    """``I : J^inf``; ``J`` defaults to the irrelevant maximal ideal."""
    ring = I.ring
    if J is None and I.is_homogeneous():
        if I.is_zero() or I.is_unit():
            return I
        if is_saturated(I):
            return I
        parts = [quotient_by_variable(I, v, infinite=True) for v in range(ring.nvars)]
        return intersect_all(parts)
    if J is None:
        J = maximal_ideal(ring)
    cur = I
    while True:
        nxt = quotient(cur, J)
        if equal(nxt, cur):
            return cur
        cur = nxt


def _linear_change(ring: Ring, form: Polynomial):
    """Substitution moving a linear ``form`` (nonzero last coefficient) to x_{n-1}."""
    n = ring.nvars
    coeffs = form.linear_coefficients()
    fld = ring.field
    inv = fld.inv(coeffs[n - 1])
    last = ring.var(n - 1).scale(inv)
    for i in range(n - 1):
        if coeffs[i]:
            last = last - ring.var(i).scale(fld(coeffs[i] * inv))
    return [ring.var(i) for i in range(n - 1)] + [last]


def is_nonzerodivisor_form(I: Ideal, form: Polynomial) -> bool:
    """Whether a linear form with nonzero last coefficient is a nonzerodivisor on R/I."""
    ring = I.ring
    n = ring.nvars
    images = _linear_change(ring, form)
    G = buchberger([g.substitute(images) for g in I.gens], ring=ring)
    return not any(all(e[n - 1] for e in g.terms) for g in G.generators if g)


def is_saturated(I: Ideal, seed: int = 0, tries: int = 2) -> bool:
    """Exact test of ``I == I : m^inf`` for homogeneous ``I``.

    A random linear form that is a nonzerodivisor proves saturation; when the
    random forms fail, fall back to comparing with the explicit colon.
    """
    ring = I.ring
    if I.is_zero() or I.is_unit():
        return True
    if ring.nvars == 0:
        return True
    rng = random.Random(seed)
    for _ in range(tries):
        form = ring.random_linear_form(rng)
        if is_nonzerodivisor_form(I, form):
            return True
    colon = intersect_all([quotient_by_variable(I, v) for v in range(ring.nvars)])
    return equal(colon, I)


def in_radical(f: Polynomial, I: Ideal) -> bool:
    """Radical membership: ``1 in I + (1 - y f)`` in one extra variable."""
    ring = I.ring
    big = _extend(ring)
    y = big.var(0)
    gens = [_embed(g, big) for g in I.gens] + [big.one() - y * _embed(f, big)]
    return buchberger(gens).is_unit()


# -- minimal generators -------------------------------------------------------


def _graded_pieces(gens):
    by_deg: dict = {}
    for g in gens:
        d = g.is_homogeneous()
        if d is None:
            raise ValueError("minimal generators need homogeneous input")
        by_deg.setdefault(d, []).append(g)
    return by_deg


def minimal_generators(I: Ideal) -> list:
    """A minimal homogeneous generating subset of ``I.gens``.

    Degree by degree: a generator is kept iff it is not in the span of the
    degree-d part of the ideal generated by the kept lower-degree generators
    and the kept generators of degree d.
    """
    return _minimal(I)[0]


def mu_graded(I: Ideal) -> dict:
    """Number of minimal generators in each degree."""
    return _minimal(I)[1]


def mu(I: Ideal) -> int:
    return sum(mu_graded(I).values())


def _minimal(I: Ideal):
    ring = I.ring
    p = ring.p
    n = ring.nvars
    by_deg = _graded_pieces(I.gens)
    kept: list = []
    counts: dict = {}
    for d in sorted(by_deg):
        rows = []
        for g in kept:
            e = d - g.is_homogeneous()
            for mon in monomials_of_degree(n, e):
                rows.append({tuple(a + b for a, b in zip(m, mon)): c for m, c in g.terms.items()})
        pivots, basis = linalg.echelon(rows, p)
        for g in by_deg[d]:
            r = linalg.reduce_row(dict(g.terms), pivots, basis, p)
            if r:
                kept.append(g)
                counts[d] = counts.get(d, 0) + 1
                piv = max(r)
                inv = ring.field.inv(r[piv])
                r = {c: ring.field(v * inv) for c, v in r.items()}
                pivots[piv] = len(basis)
                basis.append(r)
    return kept, counts


def mu_by_hilbert(I: Ideal) -> dict:
    """Graded generator count from ``HF(R/mI) - HF(R/I)`` (independent route)."""
    mI = product(maximal_ideal(I.ring), I)
    top = max((g.is_homogeneous() for g in mI.gb.generators), default=0)
    out = {}
    for d in range(top + 1):
        v = mI.hilbert_function(d) - I.hilbert_function(d)
        if v:
            out[d] = v
    return out


# -- sections ------------------------------------------------------------------


def _drop_variable(f: Polynomial, j: int, ring: Ring) -> Polynomial:
    return Polynomial(ring, {e[:j] + e[j + 1:]: c for e, c in f.terms.items()}, _clean=True)


def hyperplane_section(I: Ideal, H: Polynomial) -> Ideal:
    """``(I + (H)) / (H)`` as an ideal in the remaining variables.

    Pivots on the largest-index variable with nonzero coefficient in ``H``.
    """
    if not H.is_linear_form():
        raise ValueError("hyperplane must be a nonzero linear form")
    ring = I.ring
    coeffs = H.linear_coefficients()
    j = max(i for i, c in enumerate(coeffs) if c)
    fld = ring.field
    inv = fld.inv(coeffs[j])
    repl = ring.zero()
    for i, c in enumerate(coeffs):
        if c and i != j:
            repl = repl - ring.var(i).scale(fld(c * inv))
    images = [ring.var(i) for i in range(ring.nvars)]
    images[j] = repl
    names = ring.varnames[:j] + ring.varnames[j + 1:]
    small = Ring(ring.nvars - 1, ring.field, ring.order, names if ring.names else None)
    gens = [_drop_variable(g.substitute(images), j, small) for g in I.gens]
    return Ideal(small, gens)


@dataclass
class SectionReport:
    ideal: Ideal
    pivot: int
    saturated: bool


def hyperplane_section_report(I: Ideal, H: Polynomial) -> SectionReport:
    J = hyperplane_section(I, H)
    j = max(i for i, c in enumerate(H.linear_coefficients()) if c)
    return SectionReport(J, j, is_saturated(J))


@dataclass
class ArtinianReduction:
    ideal: Ideal
    forms: list


def artinian_reduction(I: Ideal, seed: int = 0, retries: int = 10) -> ArtinianReduction:
    """Cut by random linear forms until R/I has Krull dimension zero.

    Every form is checked to be a nonzerodivisor modulo the current ideal.
    """
    rng = random.Random(seed)
    cur = I
    forms = []
    while cur.krull_dim > 0:
        for _ in range(retries):
            H = cur.ring.random_linear_form(rng)
            if is_nonzerodivisor_form(cur, H):
                break
        else:
            raise ValueError("no nonzerodivisor linear form found; R/I is not Cohen-Macaulay "
                             "or the seed is degenerate")
        forms.append(H)
        cur = hyperplane_section(cur, H)
    return ArtinianReduction(cur, forms)
