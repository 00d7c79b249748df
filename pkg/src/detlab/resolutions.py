"""Minimal graded free resolutions and Betti tables.

A non-minimal resolution (a Schreyer frame) is built level by level from a
Groebner basis: the S-vector reductions of one level give a Groebner basis of
the next level's syzygies in the induced Schreyer order.  Constant entries are
then cancelled to reach the minimal resolution.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from . import hilbert as hs
from . import linalg
from .groebner import Engine, Layout, to_keys
from .ideals import Ideal, is_saturated
from .ring import Polynomial, Ring


@dataclass
class FreeResolution:
    """``0 <- I <- F_0 <- F_1 <- ... <- F_len``.

    ``degrees[k]`` lists the degrees of the basis of ``F_k`` (``F_0`` maps onto
    the generators of ``I``).  ``maps[k]`` is the matrix of ``F_k -> F_{k-1}``
    as rows x columns of polynomials, with ``maps[0]`` the 1 x rank(F_0) row of
    generators.
    """

    ring: Ring
    degrees: list
    maps: list
    minimal: bool = False
    complete: bool = True

    @property
    def length(self) -> int:
        """Number of nonzero free modules (projective dimension of R/I)."""
        return len([d for d in self.degrees if d])

    def ranks(self) -> list:
        return [len(d) for d in self.degrees]

    def matrix(self, k: int) -> list:
        return self.maps[k]

    def last_matrix(self) -> list:
        return self.maps[len(self.degrees) - 1]


@dataclass
class BettiTable:
    """Graded Betti numbers keyed by (homological index, internal degree)."""

    table: dict = field(default_factory=dict)

    def __getitem__(self, key):
        return self.table.get(key, 0)

    def __eq__(self, other):
        if isinstance(other, BettiTable):
            return self.table == other.table
        if isinstance(other, dict):
            return self.table == other
        return NotImplemented

    def ranks(self) -> tuple:
        top = max((i for i, _ in self.table), default=-1)
        return tuple(sum(v for (i, _), v in self.table.items() if i == k) for k in range(top + 1))

    def as_dict(self) -> dict:
        return dict(sorted(self.table.items()))

    def to_text(self) -> str:
        """Grid with columns = homological index, rows = degree - index."""
        if not self.table:
            return "(zero)"
        cols = max(i for i, _ in self.table) + 1
        rows = sorted({j - i for i, j in self.table})
        width = max(len(str(v)) for v in self.table.values()) + 1
        head = " " * 5 + "".join(str(i).rjust(width) for i in range(cols))
        lines = [head]
        for r in range(rows[0], rows[-1] + 1):
            cells = []
            for i in range(cols):
                v = self.table.get((i, i + r), 0)
                cells.append((str(v) if v else "-").rjust(width))
            lines.append(f"{r:>4}:" + "".join(cells))
        return "\n".join(lines)


# ---------------------------------------------------------------------------
# Schreyer frame


def schreyer_frame(I: Ideal, max_length: int | None = None) -> FreeResolution:
    """Non-minimal free resolution of ``I`` from its Groebner basis."""
    ring = I.ring
    if max_length is None:
        max_length = ring.nvars + 1
    gens = [g for g in I.gb.generators]
    if not gens:
        return FreeResolution(ring, [], [], minimal=True)
    for g in gens:
        if g.is_homogeneous() is None:
            raise ValueError("free resolutions need a homogeneous ideal")
    pk = ring.packer
    p = ring.p
    lay = Layout(pk, "top", 0)
    eng = Engine(pk, p, lay, module=False)
    elems = [eng.monic(to_keys(g, pk)) for g in gens]
    ranks_prev = {0: 0}
    T_prev = {0: pk.one}
    degrees, maps = [], []
    complete = True
    level = 0
    while elems:
        if level > max_length:
            complete = False
            break
        elems, syz, new_lay, rank, T = eng.schreyer_level(elems, ranks_prev, T_prev)
        rank_to_idx = {r: i for i, r in ranks_prev.items()}
        nrows = len(T_prev)
        cols = []
        for g in elems:
            col = {}
            for key, c in g.items():
                row = rank_to_idx[eng.layout.pos(key)]
                e = pk.decode(pk.quo(eng.layout.ring_part(key), T_prev[row]))
                col.setdefault(row, {})[e] = c
            cols.append(col)
        mat = [[Polynomial(ring, cols[j].get(r, {}), _clean=True) for j in range(len(elems))]
               for r in range(nrows)]
        maps.append(mat)
        degrees.append([pk.degree(T[i]) for i in range(len(elems))])
        eng = Engine(pk, p, new_lay, module=True)
        elems = syz
        ranks_prev, T_prev = rank, T
        level += 1
    return FreeResolution(ring, degrees, maps, minimal=False, complete=complete)


def minimalize(res: FreeResolution) -> FreeResolution:
    """Cancel unit entries (row-major scan) until none remain."""
    ring = res.ring
    fld = ring.field
    # columns as dicts row -> Polynomial
    mats = []
    for mat in res.maps:
        ncols = len(mat[0]) if mat else 0
        cols = [{r: mat[r][c] for r in range(len(mat)) if mat[r][c]} for c in range(ncols)]
        mats.append(cols)
    alive = [list(range(len(d))) for d in res.degrees]
    alive_set = [set(a) for a in alive]
    for k in range(1, len(mats)):
        cols = mats[k]
        while True:
            pivot = None
            for c in alive[k]:
                col = cols[c]
                for r in sorted(col):
                    if r in alive_set[k - 1] and col[r].is_constant():
                        pivot = (r, c)
                        break
                if pivot:
                    break
            if pivot is None:
                break
            r, c = pivot
            pc = cols[c]
            u_inv = fld.inv(pc[r].constant_value())
            for l in alive[k]:
                if l == c:
                    continue
                col = cols[l]
                a = col.get(r)
                if not a:
                    continue
                fac = a.scale(u_inv)
                for j, v in pc.items():
                    if j == r or j not in alive_set[k - 1]:
                        continue
                    nv = col.get(j, ring.zero()) - v * fac
                    if nv:
                        col[j] = nv
                    else:
                        col.pop(j, None)
                col.pop(r, None)
            alive[k].remove(c)
            alive_set[k].discard(c)
            alive[k - 1].remove(r)
            alive_set[k - 1].discard(r)
            cols[c] = {}
    # rebuild dense matrices over surviving bases
    degrees, maps = [], []
    for k, cols in enumerate(mats):
        keep_c = alive[k]
        keep_r = alive[k - 1] if k > 0 else [0]
        mat = [[cols[c].get(r, ring.zero()) for c in keep_c] for r in keep_r]
        degrees.append([res.degrees[k][c] for c in keep_c])
        maps.append(mat)
    while degrees and not degrees[-1]:
        degrees.pop()
        maps.pop()
    return FreeResolution(ring, degrees, maps, minimal=True, complete=res.complete)


def free_resolution(I: Ideal, max_length: int | None = None) -> FreeResolution:
    """Minimal graded free resolution of ``I`` (index 0 = generators)."""
    frame = schreyer_frame(I, max_length)
    if I.is_unit():
        one = I.ring.one()
        return FreeResolution(I.ring, [[0]], [[[one]]], minimal=True)
    out = minimalize(frame)
    if not out.complete:
        raise RuntimeError("resolution did not terminate within max_length")
    return out


def betti_table(res: FreeResolution) -> BettiTable:
    if not res.minimal:
        raise ValueError("Betti numbers are read off a minimal resolution")
    table: dict = {}
    for k, degs in enumerate(res.degrees):
        for d in degs:
            table[(k, d)] = table.get((k, d), 0) + 1
    return BettiTable(table)


def betti_from_frame(frame: FreeResolution) -> BettiTable:
    """Betti numbers from ranks of the constant parts of a frame.

    ``b_{k,d} = f_{k,d} - rank(const d_k in degree d) - rank(const d_{k+1} in degree d)``
    where ``f_{k,d}`` counts frame basis elements of degree ``d``.
    """
    p = frame.ring.p
    table: dict = {}

    def const_rank(k: int, d: int) -> int:
        if k <= 0 or k >= len(frame.maps):
            return 0
        mat = frame.maps[k]
        cols = [c for c, deg in enumerate(frame.degrees[k]) if deg == d]
        rows = [r for r, deg in enumerate(frame.degrees[k - 1]) if deg == d]
        data = [{r: mat[r][c].constant_value() for r in rows if mat[r][c]} for c in cols]
        return linalg.rank(data, p)

    for k, degs in enumerate(frame.degrees):
        for d in sorted(set(degs)):
            b = degs.count(d) - const_rank(k, d) - const_rank(k + 1, d)
            if b:
                table[(k, d)] = b
    return BettiTable(table)


def composition_is_zero(res: FreeResolution) -> bool:
    ring = res.ring
    for k in range(1, len(res.maps)):
        A, B = res.maps[k - 1], res.maps[k]
        for r in range(len(A)):
            for c in range(len(B[0]) if B else 0):
                acc = ring.zero()
                for m in range(len(B)):
                    if A[r][m] and B[m][c]:
                        acc = acc + A[r][m] * B[m][c]
                if acc:
                    return False
    return True


def hilbert_identity_holds(res: FreeResolution, I: Ideal) -> bool:
    """Alternating Betti sum equals the Hilbert series numerator of R/I."""
    lhs = hs.series_from_betti(betti_table(res).table, I.ring.nvars)
    return lhs.numerator == I.hilbert_series.numerator


def is_acm(I: Ideal, res: FreeResolution | None = None) -> bool:
    """pd(R/I) == height(I) for a saturated homogeneous ideal."""
    if I.is_zero() or I.is_unit():
        return True
    if not is_saturated(I):
        raise ValueError("is_acm expects a saturated ideal")
    if res is None:
        res = free_resolution(I)
    return res.length == I.height


def last_map_minor_ideal(res: FreeResolution, size: int) -> Ideal:
    """Ideal of ``size`` x ``size`` minors of the last resolution matrix."""
    from .matrixlab import PolyMatrix

    mat = res.last_matrix()
    if not mat or not mat[0]:
        raise ValueError("resolution has no nonzero last matrix")
    M = PolyMatrix(res.ring, mat)
    if size > min(M.nrows, M.ncols):
        raise ValueError(f"minor size {size} exceeds the {M.nrows}x{M.ncols} last matrix")
    return Ideal(res.ring, M.minors(size))
