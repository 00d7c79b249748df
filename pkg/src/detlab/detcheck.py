"""Decision procedures for standard and good determinantal ideals, degree
matrix predicates, and the generator-count refutation of linear shapes."""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from itertools import combinations
from math import comb

from . import linalg
from .ideals import Ideal, mu, mu_graded, minimal_generators, product
from .matrixlab import (DegreeMatrix, PolyMatrix, delete_row, degree_data, minors,
                        random_invertible, row_ops)
from .ring import Field, Ring

CERTIFIED_YES = "certified_yes"
CERTIFIED_NO = "certified_no"
PROBABLE_NO = "probable_no"
INCONCLUSIVE = "inconclusive"


@dataclass
class CheckReport:
    verdict: str
    check: str
    witness: dict | None = None
    trials: int = 0
    seed: int | None = None
    log: list = field(default_factory=list)

    @property
    def yes(self) -> bool:
        return self.verdict == CERTIFIED_YES

    def as_dict(self) -> dict:
        return {"check": self.check, "verdict": self.verdict, "witness": self.witness,
                "trials": self.trials, "seed": self.seed, "log": self.log}


def _height(M: PolyMatrix, s: int | None = None) -> int:
    return M.ideal(s).height


def check_standard(M: PolyMatrix) -> CheckReport:
    """Height of the maximal-minor ideal equals ``q - t + 1``."""
    t, q = M.shape
    if t == 0 or t > q:
        raise ValueError(f"need 1 <= t <= q, got a {t}x{q} matrix")
    degree_data(M)  # raises on inhomogeneous input
    c = q - t + 1
    h = _height(M)
    verdict = CERTIFIED_YES if h == c else CERTIFIED_NO
    return CheckReport(verdict, "standard", {"height": h, "expected_height": c, "t": t, "q": q})


def _generalized_row_ideal_height(M: PolyMatrix, lam) -> int:
    """Height of the minors ideal after replacing row 0 by sum lam_i row_i and
    deleting the other row (t = 2)."""
    ring = M.ring
    row = []
    for j in range(M.ncols):
        acc = ring.zero()
        for l, r in zip(lam, M.rows):
            if l and r[j]:
                acc = acc + r[j].scale(l)
        row.append(acc)
    return PolyMatrix(ring, [row]).ideal(1).height


def _linear_row_rank(M: PolyMatrix, lam) -> int:
    p = M.ring.p
    rows = []
    for j in range(M.ncols):
        vec: dict = {}
        for l, r in zip(lam, M.rows):
            if l and r[j]:
                for k, cf in enumerate(r[j].linear_coefficients()):
                    if cf:
                        vec[k] = (vec.get(k, 0) + l * cf) % p if p else vec.get(k, 0) + l * cf
        rows.append({k: v for k, v in vec.items() if v})
    return linalg.rank(rows, p)


def alpha_sweep(M: PolyMatrix) -> dict | None:
    """Certificate that no generalized-row deletion of a 2-row linear matrix
    reaches height ``c + 1``.

    The remaining row is ``l1*r1 + l2*r2``; the height of the ideal of its
    (linear) entries is the rank of their coefficient matrix, and the
    ``(c+1)``-minors of that matrix are forms of degree ``c+1`` in
    ``(l1, l2)``.  If the rank is at most ``c`` at ``c+2`` distinct points of
    P^1, those forms vanish identically, so the rank never reaches ``c+1``.
    Returns the certificate, or ``None`` when the sweep does not apply or
    finds a good row.
    """
    t, q = M.shape
    if t != 2 or not M.is_linear():
        return None
    c = q - t + 1
    p = M.ring.p
    points = [(1, 0)] + [(a, 1) for a in range(c + 1)]
    if p and len(points) > p + 1:
        return None
    ranks = []
    for lam in points:
        r = _linear_row_rank(M, lam)
        ranks.append(r)
        if r > c:
            return None
    return {"method": "alpha-sweep", "points": [list(pt) for pt in points], "ranks": ranks,
            "max_rank": max(ranks), "needed": c + 1}


def check_good(M: PolyMatrix, trials: int = 8, seed: int = 0) -> CheckReport:
    """Search for an invertible row operation and a row deletion whose
    maximal minors have height ``c + 1``.

    Success is a replayable certificate; exhausting the trials gives
    ``probable_no``, upgraded to ``certified_no`` by :func:`alpha_sweep` for
    two-row linear matrices.
    """
    std = check_standard(M)
    if not std.yes:
        return CheckReport(CERTIFIED_NO, "good", {"reason": "not standard determinantal", **std.witness},
                           seed=seed)
    t, q = M.shape
    c = q - t + 1
    if t == 1:
        return CheckReport(CERTIFIED_YES, "good", {"reason": "t = 1 (complete intersection)"}, seed=seed)
    rng = random.Random(seed)
    fld = M.ring.field
    log = []
    for trial in range(trials):
        G = random_invertible(t, fld, rng)
        GM = row_ops(M, G)
        for i in range(t):
            h = _height(delete_row(GM, i))
            log.append({"trial": trial, "deleted_row": i, "height": h})
            if h == c + 1:
                return CheckReport(CERTIFIED_YES, "good",
                                   {"G": [[int(v) if fld.p else str(v) for v in r] for r in G],
                                    "deleted_row": i, "height": h},
                                   trials=trial + 1, seed=seed, log=log)
    cert = alpha_sweep(M)
    if cert is not None:
        return CheckReport(CERTIFIED_NO, "good", cert, trials=trials, seed=seed, log=log)
    return CheckReport(PROBABLE_NO, "good", None, trials=trials, seed=seed, log=log)


def replay_good_witness(M: PolyMatrix, witness: dict) -> bool:
    """Recompute the height behind a ``certified_yes`` good witness."""
    if "G" not in witness:
        return M.nrows == 1
    GM = row_ops(M, witness["G"])
    t, q = M.shape
    return _height(delete_row(GM, witness["deleted_row"])) == q - t + 2


# -- degree-matrix predicates --------------------------------------------------------


def acm_lift_bound(U: DegreeMatrix, n: int, dim_V: int) -> bool:
    """Sufficient condition for V to be aCM given its section's degree matrix:
    ``dim V >= 2`` or ``u_{1,t} + ... + u_{c-1,t} >= n + 1``."""
    if not isinstance(U, DegreeMatrix) or not U.normalized:
        raise ValueError("acm_lift_bound needs a normalized DegreeMatrix")
    if dim_V >= 2:
        return True
    t, c = U.t, U.c
    if c < 1:
        raise ValueError("malformed degree matrix")
    return sum(U.entry(j, t) for j in range(1, c)) >= n + 1


def _nonneg_band(U: DegreeMatrix, m: int) -> bool:
    t = U.t
    m = min(m, t)
    return all(U.kl(i, i - m) >= 0 for i in range(m, t + 1))


def sect_conditions(U: DegreeMatrix, n: int, c: int):
    """Evaluate the numerical hypotheses on (U, n, c) listed for lifting good
    determinantality from a section; returns ``(holds, bullet)`` with the
    1-based index of the first satisfied condition or ``None``.

    Indexing: ``u(i, j)`` with ``i`` the row (1..t) and ``j`` the column
    (0..t+c-2) of the normalized degree matrix.
    """
    if U.c != c:
        raise ValueError(f"degree matrix of shape {U.q}x{U.t} has c = {U.c}, not {c}")
    t = U.t
    u = U.kl
    if c == 3:
        if n >= 5:
            return True, 1
        if n >= 4 and _nonneg_band(U, 2) and u(t, t + 1) > u(t, t) + u(1, t - 1):
            return True, 2
        if n == 4 and u(t, 0) > u(t, 1) + u(t, 2):
            return True, 3
        return False, None
    if c == 4:
        if n >= 6 and _nonneg_band(U, 3):
            return True, 4
        if n >= 5 and _nonneg_band(U, 3) and u(t, t + 2) > u(t, t) + u(1, t - 1):
            return True, 5
        return False, None
    if c >= 5:
        if n >= c + 1 and _nonneg_band(U, 3):
            ok = True
            for j in range(5, c + 1):
                rhs = sum(u(t, k) for k in range(t, t + j - 3)) - sum(u(t, k) for k in range(0, j - 4)) \
                    + u(1, t - 1)
                if not u(t, t + j - 2) > rhs:
                    ok = False
                    break
            if ok:
                return True, 6
        return False, None
    return False, None


# -- Pluecker counting ------------------------------------------------------------------


def plucker_defect(t: int, q: int, seed: int = 0, p: int | None = None) -> int:
    """Number of independent quadratic relations among the maximal minors of a
    t x q matrix of indeterminates.

    ``C(m+1, 2) - rank`` of the products ``p_J p_K`` (m = C(q, t)).  The seed
    applies a random invertible column operation first, which must not change
    the answer.
    """
    if not 0 < t < q:
        raise ValueError("need 0 < t < q")
    m = comb(q, t)
    if m > 60:
        raise ValueError(f"{m} maximal minors exceeds the desk-scale guard (60)")
    fld = Field(p) if p is not None else Field()
    ring = Ring(t * q, fld)
    x = ring.gens()
    X = PolyMatrix(ring, [[x[i * q + j] for j in range(q)] for i in range(t)])
    if seed:
        from .matrixlab import col_ops
        X = col_ops(X, random_invertible(q, fld, random.Random(seed)))
    ps = minors(X, t)
    rows = []
    for a in range(len(ps)):
        for b in range(a, len(ps)):
            rows.append(dict((ps[a] * ps[b]).terms))
    return comb(m + 1, 2) - linalg.rank(rows, fld.p)


def refute_standard_linear(I: Ideal, t: int, q: int, second_prime: int = 65537) -> CheckReport:
    """Refute ``I = I_t(M)`` for a t x q matrix of linear forms by counting
    minimal generators of ``I^2`` against the quadratic relations the minors
    of such a matrix must satisfy.

    ``certified_no`` when ``mu(I^2)`` exceeds the bound, else ``inconclusive``.
    """
    gens = minimal_generators(I)
    m = len(gens)
    degs = {g.is_homogeneous() for g in gens}
    if m != comb(q, t):
        raise ValueError(f"mu(I) = {m} but a {t}x{q} matrix has {comb(q, t)} maximal minors")
    if degs != {t}:
        raise ValueError(f"generator degrees {sorted(degs)} do not match linear {t}x{q} minors")
    sq = Ideal(I.ring, [gens[a] * gens[b] for a in range(m) for b in range(a, m)])
    mu2 = mu(sq)
    defect = plucker_defect(t, q, p=I.ring.p if I.ring.p else None)
    defect2 = plucker_defect(t, q, p=second_prime) if second_prime else defect
    bound = comb(m + 1, 2) - defect
    witness = {"mu_I": m, "mu_I2": mu2, "products": comb(m + 1, 2), "plucker_defect": defect,
               "plucker_defect_second_prime": defect2, "bound": bound,
               "claim": f"I is not the ideal of maximal minors of a {t}x{q} matrix of linear forms"}
    if defect != defect2:
        witness["warning"] = "Pluecker defect differs between primes"
    verdict = CERTIFIED_NO if mu2 > bound else INCONCLUSIVE
    return CheckReport(verdict, "refute_standard_linear", witness)
