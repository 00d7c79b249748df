"""Homogeneous polynomial matrices: degree matrices, minors, surgery,
1-genericity."""

from __future__ import annotations

import random
from dataclasses import dataclass
from itertools import combinations
from typing import Sequence

from . import linalg
from .ring import Polynomial, Ring, RingMismatch


@dataclass(frozen=True)
class PolyMatrix:
    ring: Ring
    rows: tuple

    def __init__(self, ring: Ring, rows):
        rows = tuple(tuple(e if isinstance(e, Polynomial) else _coerce(ring, e) for e in row) for row in rows)
        if rows and any(len(r) != len(rows[0]) for r in rows):
            raise ValueError("ragged matrix")
        for row in rows:
            for e in row:
                if e.ring != ring:
                    raise RingMismatch("matrix entry outside the matrix's ring")
        object.__setattr__(self, "ring", ring)
        object.__setattr__(self, "rows", rows)

    @classmethod
    def from_strings(cls, ring: Ring, rows: Sequence[Sequence[str]]) -> "PolyMatrix":
        return cls(ring, [[ring.parse(s) for s in row] for row in rows])

    @property
    def nrows(self) -> int:
        return len(self.rows)

    @property
    def ncols(self) -> int:
        return len(self.rows[0]) if self.rows else 0

    @property
    def shape(self) -> tuple:
        return self.nrows, self.ncols

    def __getitem__(self, ij):
        i, j = ij
        return self.rows[i][j]

    def column(self, j: int) -> list:
        return [row[j] for row in self.rows]

    def transpose(self) -> "PolyMatrix":
        return PolyMatrix(self.ring, list(zip(*self.rows)) if self.rows else [])

    def entries(self):
        for row in self.rows:
            yield from row

    def is_linear(self) -> bool:
        return all((not e) or e.is_linear_form() for e in self.entries())

    def substitute(self, images) -> "PolyMatrix":
        ring = images[0].ring if images else self.ring
        return PolyMatrix(ring, [[e.substitute(images) for e in row] for row in self.rows])

    def change_ring(self, ring: Ring) -> "PolyMatrix":
        return PolyMatrix(ring, [[e.change_ring(ring) for e in row] for row in self.rows])

    def scale(self, c) -> "PolyMatrix":
        return PolyMatrix(self.ring, [[e.scale(c) for e in row] for row in self.rows])

    def __add__(self, other: "PolyMatrix") -> "PolyMatrix":
        if self.shape != other.shape:
            raise ValueError("shape mismatch")
        return PolyMatrix(self.ring, [[a + b for a, b in zip(r, s)] for r, s in zip(self.rows, other.rows)])

    def __str__(self):
        return "\n".join("; ".join(str(e) for e in row) for row in self.rows)

    def minors(self, s: int) -> list:
        return minors(self, s)

    def ideal(self, s: int | None = None):
        """Ideal of ``s``-minors (maximal minors by default); minors equal up
        to a scalar are listed once."""
        from .ideals import Ideal

        s = min(self.shape) if s is None else s
        seen, gens = set(), []
        for m in minors(self, s):
            key = tuple(sorted(m.monic().terms.items()))
            if key not in seen:
                seen.add(key)
                gens.append(m)
        return Ideal(self.ring, gens)


def _coerce(ring: Ring, e) -> Polynomial:
    if isinstance(e, str):
        return ring.parse(e)
    return ring.const(e)


# -- minors ---------------------------------------------------------------------


def minors_indexed(M: PolyMatrix, s: int) -> dict:
    """All ``s`` x ``s`` minors keyed by (row subset, column subset).

    Laplace expansion along the first chosen row; sub-determinants are shared
    across subsets through a memo table.
    """
    t, q = M.shape
    if s < 0 or s > min(t, q):
        raise ValueError(f"minor size {s} out of range for a {t}x{q} matrix")
    ring = M.ring
    memo: dict = {}

    def det(rows: tuple, cols: tuple) -> Polynomial:
        if not rows:
            return ring.one()
        key = (rows, cols)
        hit = memo.get(key)
        if hit is not None:
            return hit
        r0 = rows[0]
        acc = ring.zero()
        for k, c in enumerate(cols):
            e = M.rows[r0][c]
            if not e:
                continue
            sub = det(rows[1:], cols[:k] + cols[k + 1:])
            if not sub:
                continue
            term = e * sub
            acc = acc - term if k % 2 else acc + term
        memo[key] = acc
        return acc

    out = {}
    for rows in combinations(range(t), s):
        for cols in combinations(range(q), s):
            out[(rows, cols)] = det(rows, cols)
    return out


def minors(M: PolyMatrix, s: int) -> list:
    """Nonzero ``s`` x ``s`` minors, ordered by (rows, columns)."""
    return [f for f in minors_indexed(M, s).values() if f]


def maximal_minors(M: PolyMatrix) -> list:
    return minors(M, min(M.shape))


# -- degree matrices ------------------------------------------------------------


@dataclass(frozen=True)
class DegreeMatrix:
    """Transposed degree grid ``u[j][i] = a_j - b_i``.

    ``u`` has one row per column of the matrix and one column per row.  When
    ``normalized`` the a's and b's are ascending, so entries grow downwards
    and leftwards.  ``col_perm``/``row_perm`` record which original column/row
    sits at each normalized position; ``ambiguous`` flags degrees fixed by
    convention (zero rows/columns, disconnected blocks).
    """

    u: tuple
    a: tuple
    b: tuple
    normalized: bool = True
    col_perm: tuple = ()
    row_perm: tuple = ()
    ambiguous: bool = False

    @property
    def t(self) -> int:
        return len(self.b)

    @property
    def q(self) -> int:
        return len(self.a)

    @property
    def c(self) -> int:
        return self.q - self.t + 1

    def entry(self, j: int, i: int) -> int:
        """``u_{ji}`` with 1-based j (column of M) and i (row of M)."""
        return self.u[j - 1][i - 1]

    def kl(self, i: int, j: int) -> int:
        """Row-first indexing: ``i`` = row 1..t, ``j`` = column 0..q-1."""
        if not (1 <= i <= self.t and 0 <= j < self.q):
            raise IndexError(f"degree-matrix index ({i},{j}) out of range for t={self.t}, q={self.q}")
        return self.u[j][i - 1]

    def is_monotone(self) -> bool:
        q, t = self.q, self.t
        for j in range(q):
            for i in range(t):
                if j + 1 < q and self.u[j + 1][i] < self.u[j][i]:
                    return False
                if i + 1 < t and self.u[j][i + 1] > self.u[j][i]:
                    return False
        return True

    @classmethod
    def from_grid(cls, grid) -> "DegreeMatrix":
        """Wrap a given (q x t) grid; it must come from some a, b."""
        grid = tuple(tuple(int(v) for v in row) for row in grid)
        if not grid or not grid[0] or any(len(r) != len(grid[0]) for r in grid):
            raise ValueError("malformed degree matrix")
        b = tuple(grid[0][0] - grid[0][i] for i in range(len(grid[0])))
        a = tuple(row[0] for row in grid)
        for j, row in enumerate(grid):
            for i, v in enumerate(row):
                if v != a[j] - b[i]:
                    raise ValueError("grid is not of the form a_j - b_i")
        dm = cls(grid, a, b, True, tuple(range(len(a))), tuple(range(len(b))))
        if not dm.is_monotone():
            raise ValueError("degree matrix is not normalized")
        return dm

    @classmethod
    def constant(cls, q: int, t: int, value: int = 1) -> "DegreeMatrix":
        return cls.from_grid([[value] * t for _ in range(q)])

    def __str__(self):
        return "\n".join(" ".join(str(v) for v in row) for row in self.u)


def degree_data(M: PolyMatrix):
    """Return ``(a, b, ambiguous)`` with ``deg M[i][j] = a[j] - b[i]``."""
    t, q = M.shape
    a: list = [None] * q
    b: list = [None] * t
    degs = {}
    for i in range(t):
        for j in range(q):
            e = M.rows[i][j]
            if e:
                d = e.is_homogeneous()
                if d is None:
                    raise ValueError(f"entry ({i},{j}) is not homogeneous")
                degs[(i, j)] = d
    ambiguous = False
    for start in range(t):
        if b[start] is not None:
            continue
        if start > 0:
            ambiguous = ambiguous or any((start, j) in degs for j in range(q))
        b[start] = 0
        stack = [("r", start)]
        while stack:
            kind, k = stack.pop()
            if kind == "r":
                for j in range(q):
                    if (k, j) in degs:
                        val = degs[(k, j)] + b[k]
                        if a[j] is None:
                            a[j] = val
                            stack.append(("c", j))
                        elif a[j] != val:
                            raise ValueError("matrix is not homogeneous")
            else:
                for i in range(t):
                    if (i, k) in degs:
                        val = a[k] - degs[(i, k)]
                        if b[i] is None:
                            b[i] = val
                            stack.append(("r", i))
                        elif b[i] != val:
                            raise ValueError("matrix is not homogeneous")
    if any(v is None for v in a):
        ambiguous = True
        known = [v for v in a if v is not None]
        fill = min(known) if known else 0
        a = [fill if v is None else v for v in a]
    # zero rows were anchored at 0 above
    if any(not any((i, j) in degs for j in range(q)) for i in range(t)):
        ambiguous = True
    return a, b, ambiguous


def is_homogeneous_matrix(M: PolyMatrix) -> bool:
    try:
        degree_data(M)
    except ValueError:
        return False
    return True


def degree_matrix(M: PolyMatrix) -> DegreeMatrix:
    """Normalized degree matrix (a and b sorted ascending, b_1 anchored at 0)."""
    a, b, amb = degree_data(M)
    col_perm = tuple(sorted(range(len(a)), key=lambda j: (a[j], j)))
    row_perm = tuple(sorted(range(len(b)), key=lambda i: (b[i], i)))
    a_s = [a[j] for j in col_perm]
    b_s = [b[i] for i in row_perm]
    shift = b_s[0] if b_s else 0
    a_s = tuple(v - shift for v in a_s)
    b_s = tuple(v - shift for v in b_s)
    u = tuple(tuple(aj - bi for bi in b_s) for aj in a_s)
    return DegreeMatrix(u, a_s, b_s, True, col_perm, row_perm, amb)


def normalize(M: PolyMatrix) -> PolyMatrix:
    """Permute rows and columns into the degree-matrix convention."""
    D = degree_matrix(M)
    return PolyMatrix(M.ring, [[M.rows[i][j] for j in D.col_perm] for i in D.row_perm])


# -- surgery and row operations ---------------------------------------------------


def row_ops(M: PolyMatrix, G) -> PolyMatrix:
    """``G * M`` for an invertible scalar matrix ``G``."""
    fld = M.ring.field
    G = [[fld(v) for v in row] for row in G]
    if len(G) != M.nrows or any(len(r) != M.nrows for r in G):
        raise ValueError("G must be square of size nrows")
    if not linalg.is_invertible(G, M.ring.p):
        raise ValueError("row operation matrix is singular")
    ring = M.ring
    out = []
    for grow in G:
        row = []
        for j in range(M.ncols):
            acc = ring.zero()
            for g, mrow in zip(grow, M.rows):
                if g and mrow[j]:
                    acc = acc + mrow[j].scale(g)
            row.append(acc)
        out.append(row)
    return PolyMatrix(ring, out)


def col_ops(M: PolyMatrix, H) -> PolyMatrix:
    """``M * H`` for an invertible scalar matrix ``H``."""
    return row_ops(M.transpose(), [list(r) for r in zip(*H)]).transpose()


def delete_row(M: PolyMatrix, i: int) -> PolyMatrix:
    return PolyMatrix(M.ring, [r for k, r in enumerate(M.rows) if k != i])


def delete_column(M: PolyMatrix, j: int) -> PolyMatrix:
    return PolyMatrix(M.ring, [[e for k, e in enumerate(r) if k != j] for r in M.rows])


def insert_column(M: PolyMatrix, j: int, col: Sequence[Polynomial], check: bool = True) -> PolyMatrix:
    if len(col) != M.nrows:
        raise ValueError("column length must equal the row count")
    out = PolyMatrix(M.ring, [list(r[:j]) + [col[i]] + list(r[j:]) for i, r in enumerate(M.rows)])
    if check and not is_homogeneous_matrix(out):
        raise ValueError("inserted column breaks homogeneity")
    return out


def insert_row(M: PolyMatrix, i: int, row: Sequence[Polynomial], check: bool = True) -> PolyMatrix:
    if len(row) != M.ncols:
        raise ValueError("row length must equal the column count")
    rows = list(M.rows)
    rows.insert(i, tuple(row))
    out = PolyMatrix(M.ring, rows)
    if check and not is_homogeneous_matrix(out):
        raise ValueError("inserted row breaks homogeneity")
    return out


def random_invertible(size: int, fld, rng: random.Random) -> list:
    """Uniform-ish random invertible matrix over ``fld`` (rejection sampling)."""
    while True:
        G = [[fld.random_element(rng, exclude=()) for _ in range(size)] for _ in range(size)]
        if linalg.is_invertible(G, fld.p):
            return G


# -- 1-genericity ----------------------------------------------------------------------


def _independent(forms: Sequence[Polynomial]) -> bool:
    if any(not f for f in forms):
        return False
    rows = [{i: c for i, c in enumerate(f.linear_coefficients()) if c} for f in forms]
    return linalg.rank(rows, forms[0].ring.p) == len(forms)


@dataclass
class OneGenericVerdict:
    one_generic: bool
    certain: bool
    mode: str
    witness: object = None
    trials: int = 0
    seed: int | None = None

    @property
    def label(self) -> str:
        if not self.one_generic:
            return "not 1-generic"
        return "1-generic" if self.certain else "probably 1-generic"


def is_one_generic(M: PolyMatrix, mode: str = "rows_cols", trials: int = 20,
                   seed: int = 0) -> OneGenericVerdict:
    """1-genericity of a matrix of linear forms.

    ``rows_cols``: entries of every row and every column are linearly
    independent (exact).  ``generalized``: additionally every scalar
    combination of rows/columns must have independent entries; tested on
    ``trials`` random combinations (a failure is exact, passing is probable).
    """
    if mode not in ("rows_cols", "generalized"):
        raise ValueError(f"unknown 1-generic mode {mode!r}")
    if not M.is_linear():
        raise ValueError("1-genericity is only tested for matrices of linear forms")
    for i, row in enumerate(M.rows):
        if not _independent(row):
            return OneGenericVerdict(False, True, mode, ("row", i))
    for j in range(M.ncols):
        if not _independent(M.column(j)):
            return OneGenericVerdict(False, True, mode, ("column", j))
    if mode == "rows_cols":
        return OneGenericVerdict(True, True, mode)
    rng = random.Random(seed)
    fld = M.ring.field
    ring = M.ring
    for trial in range(trials):
        lam = [fld.random_element(rng, exclude=()) for _ in range(M.nrows)]
        if any(lam):
            combo = []
            for j in range(M.ncols):
                acc = ring.zero()
                for l, row in zip(lam, M.rows):
                    if l and row[j]:
                        acc = acc + row[j].scale(l)
                combo.append(acc)
            if not _independent(combo):
                return OneGenericVerdict(False, True, mode, ("generalized row", lam), trial + 1, seed)
        mu = [fld.random_element(rng, exclude=()) for _ in range(M.ncols)]
        if any(mu):
            combo = []
            for row in M.rows:
                acc = ring.zero()
                for m, e in zip(mu, row):
                    if m and e:
                        acc = acc + e.scale(m)
                combo.append(acc)
            if not _independent(combo):
                return OneGenericVerdict(False, True, mode, ("generalized column", mu), trial + 1, seed)
    return OneGenericVerdict(True, False, mode, None, trials, seed)
