"""Exact linear algebra over F_p or QQ.

Rows are sparse dicts ``column -> value``; columns can be any sortable keys
(monomial tuples, packed ints, plain indices).
"""

from __future__ import annotations

from fractions import Fraction


def _norm(v, p):
    return v % p if p else v


def echelon(rows, p: int, cols_order=None):
    """Reduced-enough row echelon form of sparse ``rows``.

    Returns ``(pivots, basis)``: ``pivots`` maps pivot column to the index of
    its row in ``basis``; every basis row is monic at its pivot, and no basis
    row has a nonzero entry in another row's pivot column *that precedes it*.
    Pivot columns are chosen as the largest column (by ``cols_order`` key, or
    natural ordering) of each reduced row.
    """
    key = cols_order
    pivots: dict = {}
    basis: list = []
    for row in rows:
        r = {c: _norm(v, p) for c, v in row.items()}
        r = {c: v for c, v in r.items() if v}
        r = _reduce_row(r, pivots, basis, p)
        if not r:
            continue
        piv = max(r, key=key) if key else max(r)
        inv = pow(r[piv], -1, p) if p else 1 / Fraction(r[piv])
        if p:
            r = {c: v * inv % p for c, v in r.items()}
        else:
            r = {c: v * inv for c, v in r.items()}
        pivots[piv] = len(basis)
        basis.append(r)
    return pivots, basis


def _reduce_row(r, pivots, basis, p):
    # repeatedly eliminate pivot columns present in r
    if not pivots:
        return r
    changed = True
    while changed:
        changed = False
        for c in [c for c in r if c in pivots]:
            v = r.get(c)
            if not v:
                continue
            b = basis[pivots[c]]
            for cc, bv in b.items():
                nv = r.get(cc, 0) - v * bv
                if p:
                    nv %= p
                if nv:
                    r[cc] = nv
                else:
                    r.pop(cc, None)
            changed = True
    return r


def reduce_row(row, pivots, basis, p):
    r = {c: _norm(v, p) for c, v in row.items()}
    return _reduce_row({c: v for c, v in r.items() if v}, pivots, basis, p)


def rank(rows, p: int) -> int:
    return len(echelon(rows, p)[1])


def dense_rank(matrix, p: int) -> int:
    return rank([{j: v for j, v in enumerate(row) if v} for row in matrix], p)


def det_bareiss(matrix):
    """Fraction-free Gaussian elimination determinant of an integer matrix."""
    a = [list(map(int, row)) for row in matrix]
    n = len(a)
    if n == 0:
        return 1
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            for i in range(k + 1, n):
                if a[i][k] != 0:
                    a[k], a[i] = a[i], a[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
        prev = a[k][k]
    return sign * a[n - 1][n - 1]


def inverse(matrix, p: int):
    """Inverse of a square matrix over F_p (p > 0) or QQ (p == 0)."""
    n = len(matrix)
    one = 1 if p else Fraction(1)
    a = [[_norm(v, p) if p else Fraction(v) for v in row] + [one if i == j else 0 * one for j in range(n)]
         for i, row in enumerate(matrix)]
    for col in range(n):
        piv = next((r for r in range(col, n) if a[r][col]), None)
        if piv is None:
            raise ZeroDivisionError("singular matrix")
        a[col], a[piv] = a[piv], a[col]
        inv = pow(a[col][col], -1, p) if p else 1 / a[col][col]
        a[col] = [_norm(v * inv, p) for v in a[col]]
        for r in range(n):
            if r != col and a[r][col]:
                f = a[r][col]
                a[r] = [_norm(x - f * y, p) for x, y in zip(a[r], a[col])]
    return [row[n:] for row in a]


def matmul(a, b, p: int):
    return [[_norm(sum(x * y for x, y in zip(row, col)), p) for col in zip(*b)] for row in a]


def is_invertible(matrix, p: int) -> bool:
    return dense_rank(matrix, p) == len(matrix)
