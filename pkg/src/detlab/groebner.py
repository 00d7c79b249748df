"""Buchberger's algorithm, normal forms, elimination and syzygies.

The engine works on dicts ``key -> coefficient`` where a key packs a module
monomial into one integer (see :class:`Layout`), so monomial comparison,
multiplication and divisibility are a handful of integer operations.  Ideals
are the rank-one case.
"""

from __future__ import annotations

import heapq
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from . import linalg
from .ring import MonomialOrder, Packer, Polynomial, Ring, RingMismatch


class Layout:
    """How a (position, monomial) pair is packed into one integer key.

    ``top``: ``key = E << rb | rank`` (term over position; Schreyer orders are
    this layout with the position's leading monomial folded into ``E``).
    ``pot``: ``key = rank << eb | E`` (position over term).
    Larger rank means larger position.
    """

    def __init__(self, packer: Packer, kind: str = "top", rb: int = 0):
        self.packer = packer
        self.kind = kind
        if kind == "top":
            self.rshift, self.rmask = rb, -1
            self.pshift, self.pmask = 0, (1 << rb) - 1
        else:
            eb = packer.bits
            self.rshift, self.rmask = 0, (1 << eb) - 1
            self.pshift, self.pmask = eb, -1

    def ring_part(self, key: int) -> int:
        return (key >> self.rshift) & self.rmask

    def pos(self, key: int) -> int:
        return (key >> self.pshift) & self.pmask

    def make(self, E: int, rank: int) -> int:
        if self.kind == "top":
            return (E << self.rshift) | rank
        return (rank << self.pshift) | E


class Engine:
    """Reduction and pair machinery for one packer/layout/characteristic."""

    def __init__(self, packer: Packer, p: int, layout: Layout | None = None, module: bool = False):
        self.pk = packer
        self.p = p
        self.layout = layout or Layout(packer)
        self.module = module

    # -- reducers ------------------------------------------------------------

    def make_reducer(self, poly: dict, index: int):
        """Reducer tuple for a monic ``poly``: (lead, sgn*E_lead, pos, tail, index)."""
        L = max(poly)
        lay = self.layout
        tail = [(k, c) for k, c in poly.items() if k != L]
        return (L, self.pk.sgn * lay.ring_part(L), lay.pos(L), tail, index)

    def reduce(self, f: dict, reducers, track=None, tail=True) -> dict:
        """Remainder of ``f`` on division by ``reducers`` (consumes ``f``).

        With ``track`` (a list) every step is recorded as
        ``(reducer index, reduced key, coefficient)``.
        """
        if not f:
            return {}
        p = self.p
        lay = self.layout
        rshift, rmask, pshift, pmask = lay.rshift, lay.rmask, lay.pshift, lay.pmask
        sgn = self.pk.sgn
        G = self.pk.guard
        M = self.pk.emask
        by_pos: dict = {}
        for r in reducers:
            by_pos.setdefault(r[2], []).append(r)
        heap = [-k for k in f]
        heapq.heapify(heap)
        pop, push = heapq.heappop, heapq.heappush
        rem = {}
        while heap:
            k = -pop(heap)
            c = f.pop(k, None)
            if c is None:
                continue
            cands = by_pos.get((k >> pshift) & pmask)
            red = None
            if cands:
                sE = sgn * ((k >> rshift) & rmask)
                for r in cands:
                    if ((sE - r[1] + G) & M) == M:
                        red = r
                        break
            if red is None:
                rem[k] = c
                if not tail:
                    for kk in heap:
                        kk = -kk
                        v = f.pop(kk, None)
                        if v is not None:
                            rem[kk] = v
                    return rem
                continue
            d = k - red[0]
            if track is not None:
                track.append((red[4], k, c))
            get = f.get
            if p:
                for tk, tc in red[3]:
                    nk = tk + d
                    old = get(nk)
                    if old is None:
                        f[nk] = (-c * tc) % p
                        push(heap, -nk)
                    else:
                        v = (old - c * tc) % p
                        if v:
                            f[nk] = v
                        else:
                            del f[nk]
            else:
                for tk, tc in red[3]:
                    nk = tk + d
                    old = get(nk)
                    if old is None:
                        f[nk] = -c * tc
                        push(heap, -nk)
                    else:
                        v = old - c * tc
                        if v:
                            f[nk] = v
                        else:
                            del f[nk]
        return rem

    def monic(self, f: dict) -> dict:
        L = max(f)
        c = f[L]
        if c == 1:
            return f
        p = self.p
        if p:
            inv = pow(c, -1, p)
            return {k: v * inv % p for k, v in f.items()}
        inv = 1 / Fraction(c)
        return {k: v * inv for k, v in f.items()}

    def spoly(self, f: dict, Lf: int, g: dict, Lg: int, lcm_key: int) -> dict:
        """S-polynomial of monic ``f`` and ``g`` (leading terms cancel)."""
        p = self.p
        df, dg = lcm_key - Lf, lcm_key - Lg
        out = {k + df: v for k, v in f.items() if k != Lf}
        get = out.get
        for k, v in g.items():
            if k == Lg:
                continue
            nk = k + dg
            nv = get(nk, 0) - v
            if p:
                nv %= p
            if nv:
                out[nk] = nv
            else:
                out.pop(nk, None)
        return out

    # -- Buchberger ----------------------------------------------------------

    def buchberger(self, polys: Sequence[dict]) -> list:
        """Reduced Groebner basis (list of monic dicts, ascending leads)."""
        pk = self.pk
        lay = self.layout
        basis: list = []
        leads: list = []      # ring part of lead
        lpos: list = []
        active: list = []
        pairs: dict = {}      # (i, j) -> lcm ring part
        queue: list = []
        seq = 0
        for f in polys:
            f = {k: v for k, v in f.items() if v}
            if f:
                L = max(f)
                queue.append((pk.degree(lay.ring_part(L)), seq, -1, -1, f))
                seq += 1
        heapq.heapify(queue)
        reducers: list = []

        while queue:
            deg, _, i, j, f = heapq.heappop(queue)
            if i >= 0:
                if pairs.pop((i, j), None) is None:
                    continue
                lcm_key = lay.make(f, lpos[i])
                f = self.spoly(basis[i], lay.make(leads[i], lpos[i]),
                               basis[j], lay.make(leads[j], lpos[j]), lcm_key)
            else:
                f = dict(f)
            h = self.reduce(f, reducers)
            if not h:
                continue
            h = self.monic(h)
            L = max(h)
            hE, hp = lay.ring_part(L), lay.pos(L)
            n = len(basis)
            basis.append(h)
            leads.append(hE)
            lpos.append(hp)
            # Gebauer-Moeller update
            cands = []
            for a in range(n):
                if active[a] and lpos[a] == hp:
                    cands.append((a, pk.lcm(leads[a], hE)))
            lcm_h = dict(cands)
            D = []
            for idx, (a, l) in enumerate(cands):
                disjoint = (not self.module) and l == pk.mul(leads[a], hE)
                if disjoint:
                    D.append((a, l, True))
                    continue
                dominated = False
                for _, l2 in cands[idx + 1:]:
                    if pk.divides(l2, l):
                        dominated = True
                        break
                if not dominated:
                    for _, l2, _d in D:
                        if pk.divides(l2, l):
                            dominated = True
                            break
                if not dominated:
                    D.append((a, l, False))
            for (a, b), l in list(pairs.items()):
                if lpos[a] != hp:
                    continue
                if pk.divides(hE, l) and lcm_h.get(a) != l and lcm_h.get(b) != l:
                    del pairs[(a, b)]
            for a, l, disjoint in D:
                if not disjoint:
                    pairs[(a, n)] = l
                    heapq.heappush(queue, (pk.degree(l), seq, a, n, l))
                    seq += 1
            for a in range(n):
                if active[a] and lpos[a] == hp and pk.divides(hE, leads[a]):
                    active[a] = False
            active.append(True)
            reducers = [self.make_reducer(basis[a], a) for a in range(n + 1) if active[a]]

        keep = [basis[a] for a in range(len(basis)) if active[a]]
        reduced = []
        for idx, g in enumerate(keep):
            others = [self.make_reducer(h, k) for k, h in enumerate(keep) if k != idx]
            L = max(g)
            rest = {k: v for k, v in g.items() if k != L}
            r = self.reduce(rest, others)
            r[L] = g[L]
            reduced.append(self.monic(r))
        reduced.sort(key=max)
        return reduced

    # -- Schreyer frames -----------------------------------------------------

    def schreyer_level(self, elems: list, ranks_prev: dict, T_prev: dict):
        """One Schreyer step.

        ``elems`` are monic vectors forming a Groebner basis for the current
        (Schreyer) order.  ``ranks_prev`` maps a position index to its rank in
        the current layout; ``T_prev`` maps position index to its total
        leading monomial.  Returns the syzygy vectors as dicts over the next
        layout plus the bookkeeping for the next step.
        """
        pk = self.pk
        lay = self.layout
        rank_to_idx = {r: i for i, r in ranks_prev.items()}
        info = []
        for g in elems:
            L = max(g)
            E, pos = lay.ring_part(L), rank_to_idx[lay.pos(L)]
            local = pk.decode(pk.quo(E, T_prev[pos]))
            info.append((pos, tuple(-e for e in local), L, E, g))
        # order by position then descending lex on the local monomial
        info.sort(key=lambda t: (t[0], t[1]))
        elems = [t[4] for t in info]
        n = len(elems)
        order = sorted(range(n), key=lambda i: (ranks_prev[info[i][0]], -i))
        rank = {i: r for r, i in enumerate(order)}
        T = {i: info[i][3] for i in range(n)}
        rb = max(1, n.bit_length())
        new_lay = Layout(pk, "top", rb)
        reducers = [self.make_reducer(g, i) for i, g in enumerate(elems)]
        syz = []
        for i in range(n):
            pos_i, Ei = info[i][0], info[i][3]
            cands = []
            for j in range(i + 1, n):
                if info[j][0] != pos_i:
                    continue
                l = pk.lcm(Ei, info[j][3])
                cands.append((j, l, pk.quo(l, Ei)))
            chosen = []
            for idx, (j, l, m) in enumerate(cands):
                ok = True
                for idx2, (j2, l2, m2) in enumerate(cands):
                    if idx2 == idx:
                        continue
                    if pk.divides(m2, m) and (m2 != m or idx2 < idx):
                        ok = False
                        break
                if ok:
                    chosen.append((j, l))
            for j, l in chosen:
                lcm_key = lay.make(l, ranks_prev[pos_i])
                s = self.spoly(elems[i], info[i][2], elems[j], info[j][2], lcm_key)
                track: list = []
                rem = self.reduce(s, reducers, track=track)
                if rem:
                    raise AssertionError("Schreyer S-vector did not reduce to zero")
                tau = {new_lay.make(l, rank[i]): 1}
                mj = -1 % self.p if self.p else -1
                tau[new_lay.make(l, rank[j])] = mj
                p = self.p
                for k_idx, key, c in track:
                    nk = new_lay.make(lay.ring_part(key), rank[k_idx])
                    v = tau.get(nk, 0) - c
                    if p:
                        v %= p
                    if v:
                        tau[nk] = v
                    else:
                        tau.pop(nk, None)
                syz.append(tau)
        return elems, syz, new_lay, rank, T


def _engine(ring: Ring, module=False, layout=None) -> Engine:
    return Engine(ring.packer, ring.p, layout, module)


def to_keys(f: Polynomial, packer: Packer) -> dict:
    enc = packer.encode
    return {enc(e): c for e, c in f.terms.items()}


def from_keys(ring: Ring, d: dict, layout: Layout | None = None) -> Polynomial:
    dec = ring.packer.decode
    if layout is None:
        return Polynomial(ring, {dec(k): c for k, c in d.items()}, _clean=True)
    return Polynomial(ring, {dec(layout.ring_part(k)): c for k, c in d.items()}, _clean=True)


@dataclass(frozen=True)
class GroebnerBasis:
    ring: Ring
    generators: tuple
    reduced: bool = True

    @property
    def order(self) -> MonomialOrder:
        return self.ring.order

    def __len__(self):
        return len(self.generators)

    def __iter__(self):
        return iter(self.generators)

    def lead_monomials(self) -> list:
        return [g.leading_monomial() for g in self.generators]

    def is_unit(self) -> bool:
        return any(g.is_constant() and g for g in self.generators)

    def normal_form(self, f: Polynomial) -> Polynomial:
        return normal_form(f, self)

    def contains(self, f: Polynomial) -> bool:
        return not normal_form(f, self)


def _common_ring(gens) -> Ring | None:
    ring = None
    for g in gens:
        if ring is None:
            ring = g.ring
        elif g.ring != ring:
            raise RingMismatch("generators live in different rings")
    return ring


def buchberger(gens: Sequence[Polynomial], order: MonomialOrder | None = None,
               ring: Ring | None = None) -> GroebnerBasis:
    """Reduced Groebner basis of the ideal generated by ``gens``."""
    gens = list(gens)
    base = _common_ring(gens) or ring
    if base is None:
        raise ValueError("need generators or an explicit ring")
    target = base if order is None else base.with_order(order)
    if target != base:
        gens = [g.change_ring(target) for g in gens]
    eng = _engine(target)
    out = eng.buchberger([to_keys(g, target.packer) for g in gens if g])
    return GroebnerBasis(target, tuple(from_keys(target, d) for d in out))


def normal_form(f: Polynomial, G: GroebnerBasis) -> Polynomial:
    ring = G.ring
    if f.ring != ring:
        if f.ring.nvars == ring.nvars and f.ring.field == ring.field:
            f = f.change_ring(ring)
        else:
            raise RingMismatch("polynomial and basis live in different rings")
    eng = _engine(ring)
    pk = ring.packer
    reducers = [eng.make_reducer(to_keys(g, pk), i) for i, g in enumerate(G.generators)]
    rem = eng.reduce(to_keys(f, pk), reducers)
    return from_keys(ring, rem)


def spair_check(G: GroebnerBasis) -> bool:
    """Buchberger criterion: every S-polynomial reduces to zero."""
    ring = G.ring
    pk = ring.packer
    eng = _engine(ring)
    polys = [to_keys(g.monic(), pk) for g in G.generators]
    reducers = [eng.make_reducer(f, i) for i, f in enumerate(polys)]
    for i in range(len(polys)):
        for j in range(i + 1, len(polys)):
            Li, Lj = max(polys[i]), max(polys[j])
            l = pk.lcm(Li, Lj)
            s = eng.spoly(polys[i], Li, polys[j], Lj, l)
            if eng.reduce(s, reducers):
                return False
    return True


def is_reduced(G: GroebnerBasis) -> bool:
    pk = G.ring.packer
    leads = [pk.encode(g.leading_monomial()) for g in G.generators]
    for i, g in enumerate(G.generators):
        if g.leading_coefficient() != 1:
            return False
        for e in g.terms:
            E = pk.encode(e)
            for j, L in enumerate(leads):
                if j != i and pk.divides(L, E):
                    return False
    return True


def eliminate(gens: Sequence[Polynomial], k: int, ring: Ring | None = None) -> list:
    """Generators of the ideal's intersection with k[x_k, ..., x_{n-1}].

    The result stays in the original ring (the eliminated variables simply do
    not occur); use :func:`drop_leading_variables` to move it to the smaller ring.
    """
    gens = list(gens)
    base = _common_ring(gens) or ring
    if k == 0:
        return list(buchberger(gens, ring=base).generators)
    G = buchberger(gens, MonomialOrder("elim", k), ring=base)
    out = []
    for g in G.generators:
        if all(not any(e[:k]) for e in g.terms):
            out.append(g.change_ring(base))
    return out


def drop_leading_variables(polys: Sequence[Polynomial], k: int, ring: Ring) -> list:
    """Move polynomials not involving x_0..x_{k-1} into ``ring`` (n - k vars)."""
    out = []
    for f in polys:
        terms = {}
        for e, c in f.terms.items():
            if any(e[:k]):
                raise ValueError("polynomial involves an eliminated variable")
            terms[e[k:]] = c
        out.append(Polynomial(ring, terms, _clean=True))
    return out


# ---------------------------------------------------------------------------
# modules


@dataclass(frozen=True)
class ModuleElement:
    """Element of a graded free module: one polynomial per basis vector."""

    components: tuple
    shifts: tuple = ()

    def __post_init__(self):
        if self.shifts and len(self.shifts) != len(self.components):
            raise ValueError("component count must equal the rank")

    @property
    def rank(self) -> int:
        return len(self.components)

    @property
    def ring(self) -> Ring:
        return self.components[0].ring

    def is_zero(self) -> bool:
        return all(not c for c in self.components)

    def degree(self):
        """Common degree w.r.t. the shifts, ``None`` if inhomogeneous/zero."""
        shifts = self.shifts or (0,) * self.rank
        deg = None
        for c, s in zip(self.components, shifts):
            if not c:
                continue
            d = c.is_homogeneous()
            if d is None:
                return None
            if deg is None:
                deg = d + s
            elif deg != d + s:
                return None
        return deg


def _module_keys(v: ModuleElement, pk: Packer, lay: Layout, rank_of) -> dict:
    out = {}
    for pos, comp in enumerate(v.components):
        r = rank_of(pos)
        for e, c in comp.terms.items():
            out[lay.make(pk.encode(e), r)] = c
    return out


def module_groebner(vectors: Sequence[ModuleElement]) -> list:
    """Reduced Groebner basis of a submodule, position-over-term order."""
    vectors = [v for v in vectors if not v.is_zero()]
    if not vectors:
        return []
    ring = vectors[0].ring
    m = vectors[0].rank
    pk = ring.packer
    lay = Layout(pk, "pot")
    eng = Engine(pk, ring.p, lay, module=True)
    rank_of = lambda pos: m - 1 - pos
    out = eng.buchberger([_module_keys(v, pk, lay, rank_of) for v in vectors])
    return [_vector_from_keys(ring, d, lay, m, vectors[0].shifts) for d in out]


def _vector_from_keys(ring, d, lay, m, shifts=(), offset=0):
    dec = ring.packer.decode
    comps = [dict() for _ in range(m)]
    for k, c in d.items():
        pos = m - 1 - (lay.pos(k) - offset)
        comps[pos][dec(lay.ring_part(k))] = c
    return ModuleElement(tuple(Polynomial(ring, t, _clean=True) for t in comps), tuple(shifts))


def syzygies(vectors: Sequence[ModuleElement], minimal: bool = True) -> list:
    """Generators of the first syzygy module of ``vectors``.

    Computed from a position-over-term Groebner basis of the graph module
    ``(v_i, e_i)``: basis elements with zero ``v``-part generate the syzygies.
    With ``minimal`` (default) a minimal homogeneous generating set is
    extracted degree by degree.
    """
    vectors = list(vectors)
    if not vectors:
        return []
    ring = vectors[0].ring
    m = vectors[0].rank
    r = len(vectors)
    degs = []
    for v in vectors:
        if v.rank != m:
            raise ValueError("vectors of different ranks")
        d = v.degree()
        if d is None and not v.is_zero():
            raise ValueError("syzygies need homogeneous input")
        degs.append(d if d is not None else 0)
    pk = ring.packer
    lay = Layout(pk, "pot")
    eng = Engine(pk, ring.p, lay, module=True)
    total = m + r
    rank_of = lambda pos: total - 1 - pos
    graph = []
    one = ring.one()
    zero = ring.zero()
    for i, v in enumerate(vectors):
        comps = list(v.components) + [one if k == i else zero for k in range(r)]
        graph.append(_module_keys(ModuleElement(tuple(comps)), pk, lay, rank_of))
    gb = eng.buchberger(graph)
    out = []
    for d in gb:
        L = max(d)
        if lay.pos(L) >= r:   # lead in the v-part
            continue
        full = _vector_from_keys(ring, d, lay, total)
        out.append(ModuleElement(full.components[m:], tuple(degs)))
    if minimal:
        out = minimal_generators_module(out)
    return out


def minimal_generators_module(vectors: Sequence[ModuleElement]) -> list:
    """Minimal subset of homogeneous generators (linear algebra by degree)."""
    vectors = [v for v in vectors if not v.is_zero()]
    if not vectors:
        return []
    ring = vectors[0].ring
    p = ring.p
    n = ring.nvars
    by_deg: dict = {}
    for v in vectors:
        d = v.degree()
        if d is None:
            raise ValueError("inhomogeneous module element")
        by_deg.setdefault(d, []).append(v)
    kept: list = []
    for d in sorted(by_deg):
        rows = []
        for g in kept:
            for mon in monomials_of_degree(n, d - g.degree()):
                rows.append(_vec_row(g, mon, p))
        pivots, basis = linalg.echelon(rows, p)
        for v in by_deg[d]:
            row = _vec_row(v, (0,) * n, p)
            r = linalg.reduce_row(row, pivots, basis, p)
            if r:
                kept.append(v)
                pivots, basis = linalg.echelon(basis + [r], p)
    return kept


def _vec_row(v: ModuleElement, mon, p):
    row = {}
    for pos, comp in enumerate(v.components):
        for e, c in comp.terms.items():
            row[(pos, tuple(a + b for a, b in zip(e, mon)))] = c
    return row


def monomials_of_degree(n: int, d: int):
    """All exponent tuples of total degree ``d`` in ``n`` variables."""
    if d < 0:
        return []
    if n == 0:
        return [()] if d == 0 else []
    out = []

    def rec(prefix, left, k):
        if k == n - 1:
            out.append(tuple(prefix) + (left,))
            return
        for a in range(left, -1, -1):
            prefix.append(a)
            rec(prefix, left - a, k + 1)
            prefix.pop()

    rec([], d, 0)
    return out
