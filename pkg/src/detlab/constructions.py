"""Explicit matrices, ideals and families: banded power matrices, squarefree
(Vandermonde) matrices, the symmetric family, the n+1 curve, basic double
links, cone families and a few fixed test objects."""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from itertools import combinations
from urllib.parse import parse_qsl

from . import linalg
from .ideals import (Ideal, hyperplane_section, intersect, intersect_all, is_saturated,
                     minimal_generators, quotient_by, equal)
from .matrixlab import PolyMatrix, degree_data, delete_column, insert_column, minors
from .ring import Field, Polynomial, Ring


def _rng(seed) -> random.Random:
    return random.Random(seed)


def _param(fld: Field, rng: random.Random):
    """Random field element avoiding 0 and 1."""
    return fld.random_element(rng, exclude=(0, 1))


# -- banded matrix for m^t ---------------------------------------------------------


def power_ideal_matrix(n: int, t: int, fld: Field | None = None) -> PolyMatrix:
    """t x (t+n-1) banded matrix with shifted copies of (x1, ..., xn).

    Its maximal minors generate the t-th power of the maximal ideal.
    """
    if n < 1 or t < 1:
        raise ValueError("need n >= 1 and t >= 1")
    ring = Ring(n, fld or Field(), names=tuple(f"x{i}" for i in range(1, n + 1)))
    x = ring.gens()
    zero = ring.zero()
    rows = []
    for i in range(t):
        rows.append([x[j - i] if 0 <= j - i < n else zero for j in range(t + n - 1)])
    return PolyMatrix(ring, rows)


# -- squarefree monomials -------------------------------------------------------------


def squarefree_matrix(n: int, d: int, alphas=None, fld: Field | None = None,
                      ring: Ring | None = None) -> PolyMatrix:
    """d x (n+1) matrix with entry (i, j) = alpha_i^j * x_j.

    The maximal minors are nonzero multiples of the squarefree monomials of
    degree d in x_0..x_n provided every maximal minor of the scalar matrix
    (alpha_i^j) is nonzero; that is checked.
    """
    fld = fld or (ring.field if ring else Field())
    if ring is None:
        ring = Ring(n + 1, fld)
    if ring.nvars != n + 1:
        raise ValueError("ring must have n+1 variables")
    if alphas is None:
        alphas = list(range(1, d + 1))
    alphas = [fld(a) for a in alphas]
    if len(alphas) != d:
        raise ValueError(f"need {d} scalars")
    if any(a == 0 for a in alphas) or len(set(alphas)) != d:
        raise ValueError("scalars must be distinct and nonzero")
    A = [[pow(a, j, fld.p) if fld.p else a ** j for j in range(n + 1)] for a in alphas]
    for cols in combinations(range(n + 1), d):
        sub = [[row[j] for j in cols] for row in A]
        if linalg.dense_rank(sub, fld.p) < d:
            raise ValueError(f"scalar minor on columns {cols} vanishes; choose other scalars")
    x = ring.gens()
    return PolyMatrix(ring, [[x[j].scale(A[i][j]) for j in range(n + 1)] for i in range(d)])


def squarefree_ideal(ring: Ring, d: int, variables=None) -> Ideal:
    variables = range(ring.nvars) if variables is None else variables
    gens = []
    for sub in combinations(variables, d):
        e = [0] * ring.nvars
        for v in sub:
            e[v] = 1
        gens.append(ring.monomial(e))
    return Ideal(ring, gens)


# -- symmetric family -----------------------------------------------------------------


def symmetric_names(t: int) -> tuple:
    return tuple(f"x{i}_{j}" for i in range(t + 1) for j in range(i, t + 1))


def outer_names(t: int) -> tuple:
    return tuple(f"x0_{j}" for j in range(t + 1)) + tuple(f"x{i}_{t}" for i in range(1, t + 1))


def symmetric_ring(t: int, fld: Field | None = None) -> Ring:
    return Ring((t + 1) * (t + 2) // 2, fld or Field(), names=symmetric_names(t))


def outer_ring(t: int, fld: Field | None = None) -> Ring:
    return Ring(2 * t + 1, fld or Field(), names=outer_names(t))


@dataclass
class SymmetricFamily:
    """Matrices of the symmetric family for a given t (random data seeded)."""

    t: int
    fld: Field = field(default_factory=Field)
    seed: int = 0

    def __post_init__(self):
        if self.t < 2:
            raise ValueError("t >= 2")
        self.big = symmetric_ring(self.t, self.fld)
        self.ring = outer_ring(self.t, self.fld)
        rng = _rng(self.seed)
        t = self.t
        self.L = {}
        for i in range(1, t):
            for j in range(i, t):
                terms = [self.ring.var(k).scale(_param(self.fld, rng)) for k in range(self.ring.nvars)]
                acc = self.ring.zero()
                for tm in terms:
                    acc = acc + tm
                self.L[(i, j)] = acc
        self.s = _param(self.fld, rng)

    def h(self, k: int) -> Polynomial:
        """Entry on the k-th antidiagonal: x_{0,k} for k <= t, else x_{k-t,t}."""
        t = self.t
        name = f"x0_{k}" if k <= t else f"x{k - t}_{t}"
        return self.ring.var(self.ring.varnames.index(name))

    def X(self) -> PolyMatrix:
        t, R = self.t, self.big
        idx = {nm: i for i, nm in enumerate(R.varnames)}
        return PolyMatrix(R, [[R.var(idx[f"x{min(i, j)}_{max(i, j)}"]) for j in range(t + 1)]
                              for i in range(t + 1)])

    def Y(self) -> PolyMatrix:
        t = self.t
        return PolyMatrix(self.ring, [[self.h(i + j) for j in range(t + 1)] for i in range(t + 1)])

    def U(self) -> PolyMatrix:
        t = self.t
        return PolyMatrix(self.ring, [[self.h(i + j) for j in range(t + 2)] for i in range(t)])

    def Z(self) -> PolyMatrix:
        t, R = self.t, self.ring
        idx = {nm: i for i, nm in enumerate(R.varnames)}
        rows = []
        for i in range(t + 1):
            row = []
            for j in range(t + 1):
                a, b = min(i, j), max(i, j)
                if a == 0 or b == t:
                    row.append(R.var(idx[f"x{a}_{b}"]))
                else:
                    row.append(self.L[(a, b)])
            rows.append(row)
        return PolyMatrix(R, rows)

    def Zs(self, s=None) -> PolyMatrix:
        s = self.s if s is None else self.fld(s)
        return self.Z().scale(s) + self.Y().scale(self.fld(1 - s))

    def section_forms(self) -> list:
        """Linear forms on the big ring cutting X down to Y."""
        t, R = self.t, self.big
        idx = {nm: i for i, nm in enumerate(R.varnames)}
        out = []
        for i in range(1, t):
            for j in range(i, t):
                k = i + j
                target = f"x0_{k}" if k <= t else f"x{k - t}_{t}"
                out.append(R.var(idx[f"x{i}_{j}"]) - R.var(idx[target]))
        return out

    def section_map(self) -> list:
        """Images of the big ring's variables in the outer ring realising X -> Y."""
        t = self.t
        images = []
        for nm in self.big.varnames:
            i, j = (int(v) for v in nm[1:].split("_"))
            images.append(self.h(i + j))
        return images


def symmetric_family(t: int, variant: str, seed: int = 0, s=None, fld: Field | None = None) -> PolyMatrix:
    fam = SymmetricFamily(t, fld or Field(), seed)
    if variant == "X":
        return fam.X()
    if variant == "Y":
        return fam.Y()
    if variant == "U":
        return fam.U()
    if variant == "Z":
        return fam.Z()
    if variant == "Zs":
        return fam.Zs(s)
    raise ValueError(f"unknown variant {variant!r}")


def veronese_ideal(fld: Field | None = None) -> Ideal:
    R = Ring(6, fld or Field())
    return PolyMatrix.from_strings(R, [["x0", "x1", "x2"], ["x1", "x3", "x4"], ["x2", "x4", "x5"]]).ideal(2)


def veronese_power_matrix(n: int, fld: Field | None = None) -> PolyMatrix:
    """Symmetric 3x3 matrix with entries x_i^n in the Veronese pattern."""
    R = Ring(6, fld or Field())
    x = R.gens()
    e = [[0, 1, 2], [1, 3, 4], [2, 4, 5]]
    return PolyMatrix(R, [[x[k] ** n for k in row] for row in e])


@dataclass
class VeroneseLink:
    V: Ideal
    S_matrix: PolyMatrix
    F: Polynomial
    W: Ideal


def veronese_link(seed: int = 0, fld: Field | None = None) -> VeroneseLink:
    """Basic double link of a Veronese surface on a good determinantal
    threefold (3x4 matrix) by a random linear form."""
    R = Ring(6, fld or Field())
    V = PolyMatrix.from_strings(R, [["x0", "x1", "x2"], ["x1", "x5", "x3"], ["x2", "x3", "x4"]]).ideal(2)
    SM = PolyMatrix.from_strings(R, [["x0", "x1", "x2", "x3"], ["x1", "x5", "x3", "x4"],
                                     ["x2", "x3", "x4", "x0"]])
    F = R.random_linear_form(_rng(seed))
    return VeroneseLink(V, SM, F, basic_double_link(V, SM.ideal(), F).ideal)


# -- the n+1 curve ----------------------------------------------------------------------


@dataclass
class NPlusOneCurve:
    n: int
    ring: Ring
    I_C: Ideal
    I_C1: Ideal
    I_C2: Ideal
    I_S: Ideal
    I_P: Ideal

    def by_intersection(self) -> Ideal:
        return intersect(self.I_C1, self.I_C2)

    def target_minor_ideal(self) -> Ideal:
        """(x_0..x_n)^2 + x_{n+1}(x_0..x_n)."""
        R, n = self.ring, self.n
        x = R.gens()
        gens = [x[i] * x[j] for i in range(n + 1) for j in range(i, n + 1)]
        gens += [x[n + 1] * x[i] for i in range(n + 1)]
        return Ideal(R, gens)


def n_plus_1_curve(n: int, fld: Field | None = None) -> NPlusOneCurve:
    """Cone over n coordinate points union a line through one of its points.

    I_C = x_0(x_2..x_{n+1}) + sum_{1<=i<j<=n} (x_i x_j); the components are
    I_C1 = (x_0) + (x_i x_j) and I_C2 = (x_2..x_{n+1}).  I_S is the ideal of
    squarefree quadrics in x_0, x_2..x_n.
    """
    if n < 2:
        raise ValueError("n >= 2")
    R = Ring(n + 2, fld or Field())
    x = R.gens()
    pairs = [x[i] * x[j] for i in range(1, n + 1) for j in range(i + 1, n + 1)]
    I_C = Ideal(R, [x[0] * x[k] for k in range(2, n + 2)] + pairs)
    I_C1 = Ideal(R, [x[0]] + pairs)
    I_C2 = Ideal(R, x[2:n + 2])
    I_S = squarefree_ideal(R, 2, [0] + list(range(2, n + 1)))
    I_P = Ideal(R, [x[0]] + x[2:n + 2])
    return NPlusOneCurve(n, R, I_C, I_C1, I_C2, I_S, I_P)


@dataclass
class CurveSection:
    ideal: Ideal
    points: list
    change: list          # images of the section ring's variables
    coordinate_ideal: Ideal


def n_plus_1_section(curve: NPlusOneCurve, H: Polynomial) -> CurveSection:
    """Section of the n+1 curve by a hyperplane with nonzero x_{n+1}, x_0, x_1
    coefficients.

    The section meets the n lines of the cone in e_1..e_n and the extra line in
    (h_1, -h_0, 0, ..., 0).  ``change`` maps those points to the coordinate
    points; ``coordinate_ideal`` is the section ideal after that change.
    """
    n = curve.n
    h = H.linear_coefficients()
    if not (h[n + 1] and h[0] and h[1]):
        raise ValueError("hyperplane must involve x_0, x_1 and x_{n+1}")
    J = hyperplane_section(curve.I_C, H)
    S = J.ring
    fld = S.field
    pts = [[1 if k == i else 0 for k in range(n + 1)] for i in range(1, n + 1)]
    pts.append([h[1], fld.neg(h[0])] + [0] * (n - 1))
    # x_0 -> h_1 y_0, x_1 -> y_1 - h_0 y_0 sends coordinate points to pts
    y = S.gens()
    images = list(y)
    images[0] = y[0].scale(h[1])
    images[1] = y[1] - y[0].scale(h[0])
    moved = Ideal(S, [g.substitute(images) for g in J.gens])
    return CurveSection(J, pts, images, moved)


def points_ideal(ring: Ring, points) -> Ideal:
    """Ideal of finitely many points (intersection of their linear ideals)."""
    fld = ring.field
    ideals = []
    for pt in points:
        pt = [fld(c) for c in pt]
        j = max(i for i, c in enumerate(pt) if c)
        inv = fld.inv(pt[j])
        x = ring.gens()
        forms = [x[i] - x[j].scale(fld(pt[i] * inv)) for i in range(ring.nvars) if i != j]
        ideals.append(Ideal(ring, forms))
    return intersect_all(ideals)


# -- basic double links ------------------------------------------------------------------


def link_ideal(I_C: Ideal, I_S: Ideal, F: Polynomial) -> Ideal:
    """I_S + F * I_C (the formula alone, no hypotheses checked)."""
    return Ideal(I_S.ring, list(I_S.gens) + [F * g for g in I_C.gens])


@dataclass
class LinkResult:
    ideal: Ideal
    saturated: bool


def basic_double_link(I_C: Ideal, I_S: Ideal, F: Polynomial) -> LinkResult:
    """Basic double link of C on S by F: ``I_S + F * I_C``.

    Requires I_S inside I_C, F homogeneous of positive degree and a
    nonzerodivisor modulo I_S (``(I_S : F) == I_S``).
    """
    d = F.is_homogeneous()
    if d is None or not F or F.is_constant():
        raise ValueError("F must be a homogeneous form of positive degree")
    if not I_C.contains_ideal(I_S):
        raise ValueError("I_S is not contained in I_C")
    if not equal(quotient_by(I_S, F), I_S):
        raise ValueError("F is a zerodivisor modulo I_S")
    J = link_ideal(I_C, I_S, F)
    return LinkResult(J, is_saturated(J))


def bdl_matrix(M: PolyMatrix, N: PolyMatrix, F: Polynomial, mode: str, k: int,
               l: int | None = None, verify: bool = True) -> PolyMatrix:
    """Matrix whose maximal minors generate ``I(N) + F * I(M)``.

    ``row_added``: N is M with a row inserted at position k; insert at column
    l a column that is zero except for F in row k (deg F must sit between the
    degrees of n_{k,l-1} and n_{k,l}).
    ``column_removed``: N is M without column k; reinsert column k of M
    multiplied by F.
    With ``verify`` the minor ideal of the result is checked against the
    link formula by Groebner equality.
    """
    O = _bdl_matrix(M, N, F, mode, k, l)
    if verify and not equal(O.ideal(), link_ideal(M.ideal(), N.ideal(), F)):
        raise ArithmeticError("maximal minors of the linked matrix differ from I(N) + F*I(M)")
    return O


def _bdl_matrix(M, N, F, mode, k, l):
    if mode == "row_added":
        if l is None:
            raise ValueError("row_added needs the column position l")
        if N.nrows != M.nrows + 1 or N.ncols != M.ncols:
            raise ValueError("N must be M with one extra row")
        rest = PolyMatrix(N.ring, [r for i, r in enumerate(N.rows) if i != k])
        if rest.rows != M.rows:
            raise ValueError(f"deleting row {k} of N does not give M")
        dF = F.is_homogeneous()
        if dF is None:
            raise ValueError("F must be homogeneous")
        row = N.rows[k]
        if l > 0 and row[l - 1] and row[l - 1].is_homogeneous() > dF:
            raise ValueError("deg F is below the degree of n_{k,l-1}")
        if l < N.ncols and row[l] and row[l].is_homogeneous() < dF:
            raise ValueError("deg F is above the degree of n_{k,l}")
        zero = N.ring.zero()
        col = [F if i == k else zero for i in range(N.nrows)]
        return insert_column(N, l, col)
    if mode == "column_removed":
        if delete_column(M, k).rows != N.rows:
            raise ValueError(f"deleting column {k} of M does not give N")
        return insert_column(N, k, [e * F for e in M.column(k)])
    raise ValueError(f"unknown mode {mode!r}")


def gensectbdl_ideal(n: int, fld: Field | None = None) -> Ideal:
    """(x_0 x_1 x_{n+1}) + x_1^2 (x_2..x_n) + squarefree quadrics in x_0, x_2..x_n."""
    R = Ring(n + 2, fld or Field())
    x = R.gens()
    gens = [x[0] * x[1] * x[n + 1]] + [x[1] * x[1] * x[i] for i in range(2, n + 1)]
    others = [0] + list(range(2, n + 1))
    gens += [x[i] * x[j] for i, j in combinations(others, 2)]
    return Ideal(R, gens)


@dataclass
class SectionLink:
    """Data of the hyperplane-section basic double link for the n+1 curve."""

    ring: Ring
    M: PolyMatrix        # section of C
    N: PolyMatrix        # section of S (M minus column 1)
    O: PolyMatrix        # result
    F: Polynomial
    y: Polynomial
    gamma: int


def gensectbdl_section(n: int, seed: int = 0, fld: Field | None = None) -> SectionLink:
    """Matrices for the section of the link: rows (x0, y, x2..xn) and
    (x0, g y, g^2 x2, ..., g^n xn) with y = a x0 + b x1, then F = x1 in the
    column_removed mode at column 1."""
    fld = fld or Field()
    rng = _rng(seed)
    R = Ring(n + 1, fld)
    x = R.gens()
    a, b = _param(fld, rng), _param(fld, rng)
    y = x[0].scale(a) + x[1].scale(b)
    while True:
        g = _param(fld, rng)
        powers = [pow(g, k, fld.p) if fld.p else g ** k for k in range(n + 1)]
        if len(set(powers)) == n + 1:
            break
    top = [x[0], y] + [x[i] for i in range(2, n + 1)]
    bottom = [x[0], y.scale(powers[1])] + [x[i].scale(powers[i]) for i in range(2, n + 1)]
    M = PolyMatrix(R, [top, bottom])
    N = delete_column(M, 1)
    O = bdl_matrix(M, N, x[1], "column_removed", 1)
    return SectionLink(R, M, N, O, x[1], y, g)


# -- cone families --------------------------------------------------------------------------


@dataclass
class FamilyMember:
    s: object
    ideal: Ideal
    provenance: str


def cone_family(I: Ideal, s, var: int | None = None, provenance: str = "") -> FamilyMember:
    """Substitute x_v -> s * x_v (v = last variable by default) in a minimal
    generating set; s = 1 is the identity and s = 0 the cone."""
    R = I.ring
    v = R.nvars - 1 if var is None else var
    fld = R.field
    s = fld(s)
    images = [R.var(i) for i in range(R.nvars)]
    images[v] = R.var(v).scale(s)
    gens = [g.substitute(images) for g in minimal_generators(I)]
    return FamilyMember(s, Ideal(R, gens), provenance or f"cone_family(s={s})")


def veronese_cone_coordinates(fld: Field | None = None) -> Ideal:
    """Veronese ideal in coordinates where the last variable y5 = x3 - x2 is
    the cone direction: I_2 of [[y0,y1,y2],[y1,y2+y5,y3],[y2,y3,y4]]."""
    R = Ring(6, fld or Field())
    M = PolyMatrix.from_strings(R, [["x0", "x1", "x2"], ["x1", "x2+x5", "x3"], ["x2", "x3", "x4"]])
    return M.ideal(2)


def flat_family_matrix(s, fld: Field | None = None) -> PolyMatrix:
    """M_s = [[x0,x1,x2],[x1,(1-s)x2+s x3,x4],[x2,x4,x5]] in the original coordinates."""
    fld = fld or Field()
    R = Ring(6, fld)
    x = R.gens()
    s = fld(s)
    mid = x[2].scale(fld(1 - s)) + x[3].scale(s)
    return PolyMatrix(R, [[x[0], x[1], x[2]], [x[1], mid, x[4]], [x[2], x[4], x[5]]])


# -- fixed test objects ---------------------------------------------------------------------------


def stgood_matrix(which: str, fld: Field | None = None) -> PolyMatrix:
    """The 2x4 linear matrices of the cone curve C (P^4), its generic-type
    section X (variables x0,x1,x2,x4) and its section Z by x4 = 0."""
    fld = fld or Field()
    if which == "C":
        R = Ring(5, fld)
        rows = [["x0", "x1+x4", "0", "x2"], ["0", "x1", "x2", "x0+x1"]]
    elif which == "X":
        R = Ring(4, fld, names=("x0", "x1", "x2", "x4"))
        rows = [["x0", "x1+x4", "0", "x2"], ["0", "x1", "x2", "x0+x1"]]
    elif which == "Z":
        R = Ring(4, fld)
        rows = [["x0", "x1", "0", "x2"], ["0", "x1", "x2", "x0+x1"]]
    else:
        raise ValueError(f"unknown stgood matrix {which!r}")
    return PolyMatrix.from_strings(R, rows)


def ruling_lines_curve(n_a: int = 3, n_b: int = 6, fld: Field | None = None) -> Ideal:
    """Union of n_a lines of one ruling and n_b of the other on x0*x3 - x1*x2."""
    R = Ring(4, fld or Field())
    x = R.gens()
    lines = []
    for k in range(n_a):
        a, b = 1, k + 2
        lines.append(Ideal(R, [x[0].scale(b) - x[2].scale(a), x[1].scale(b) - x[3].scale(a)]))
    for k in range(n_b):
        c, d = 1, k + 2
        lines.append(Ideal(R, [x[0].scale(d) - x[1].scale(c), x[2].scale(d) - x[3].scale(c)]))
    return intersect_all(lines)


def generic_linear_matrix(t: int, q: int, nvars: int, seed: int = 0, fld: Field | None = None) -> PolyMatrix:
    fld = fld or Field()
    R = Ring(nvars, fld)
    rng = _rng(seed)
    return PolyMatrix(R, [[R.random_linear_form(rng) for _ in range(q)] for _ in range(t)])


# -- stable ids ---------------------------------------------------------------------------------------


def parse_id(ident: str):
    name, _, query = ident.partition("?")
    params = dict(parse_qsl(query, keep_blank_values=True))
    return name, params


def construct(ident: str, fld: Field | None = None):
    """Build the object named by a stable id such as ``symm.Y?t=3`` or
    ``bdl.gensectbdl?n=4&seed=7``.  Returns a PolyMatrix or an Ideal."""
    name, params = parse_id(ident)
    fld = fld or Field(int(params.get("p", Field().p)))
    geti = lambda k, d: int(params.get(k, d))
    seed = geti("seed", 0)
    if name == "artin":
        return power_ideal_matrix(geti("n", 2), geti("t", 2), fld)
    if name == "sqfr":
        return squarefree_matrix(geti("n", 4), geti("d", 2), fld=fld)
    if name.startswith("symm."):
        variant = name.split(".", 1)[1]
        s = params.get("s")
        return symmetric_family(geti("t", 2), variant, seed, None if s is None else int(s), fld)
    if name == "vero":
        return veronese_ideal(fld)
    if name == "verodeform":
        fam = SymmetricFamily(3, fld, seed)
        return fam.Zs().ideal(3)
    if name == "n+1curve":
        return n_plus_1_curve(geti("n", 3), fld).I_C
    if name.startswith("stgood."):
        return stgood_matrix(name.split(".", 1)[1], fld)
    if name == "flatfam":
        return flat_family_matrix(geti("s", 1), fld)
    if name == "bdl.gensectbdl":
        return gensectbdl_section(geti("n", 3), seed, fld).O
    if name == "gensectbdl":
        return gensectbdl_ideal(geti("n", 3), fld)
    if name == "deg9gen10":
        return ruling_lines_curve(3, 6, fld)
    if name == "vero.power":
        return veronese_power_matrix(geti("n", 2), fld)
    if name == "bdl.veronese":
        return veronese_link(seed, fld).W
    if name == "scroll":
        return generic_linear_matrix(3, 5, 7, seed, fld)
    raise KeyError(f"unknown construction id {ident!r}")


CONSTRUCTION_IDS = ("artin?n=&t=", "sqfr?n=&d=", "symm.{X,Y,U,Z,Zs}?t=&seed=&s=", "vero",
                    "verodeform?seed=", "n+1curve?n=", "stgood.{C,X,Z}", "flatfam?s=",
                    "bdl.gensectbdl?n=&seed=", "gensectbdl?n=", "deg9gen10", "scroll?seed=",
                    "vero.power?n=", "bdl.veronese?seed=")
