"""Hilbert series of monomial ideals and their numerical consequences."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import comb


def _mul(a: list, b: list) -> list:
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return out


def _add(a: list, b: list) -> list:
    if len(a) < len(b):
        a, b = b, a
    out = list(a)
    for i, y in enumerate(b):
        out[i] += y
    return out


def _trim(a: list) -> list:
    while len(a) > 1 and a[-1] == 0:
        a = a[:-1]
    return a


def minimalize(monos) -> list:
    """Minimal generators of a monomial ideal (exponent tuples)."""
    monos = sorted(set(monos), key=sum)
    out: list = []
    for m in monos:
        if not any(all(a <= b for a, b in zip(g, m)) for g in out):
            out.append(m)
    return out


def numerator(monos, nvars: int) -> list:
    """Numerator ``N`` with ``HS(R/I) = N(T) / (1-T)^nvars`` (integer list)."""
    gens = minimalize(monos)
    return _trim(_numerator(tuple(gens), nvars, {}))


def _numerator(gens: tuple, n: int, memo: dict) -> list:
    if not gens:
        return [1]
    if any(sum(g) == 0 for g in gens):
        return [0]
    key = gens
    hit = memo.get(key)
    if hit is not None:
        return hit
    # base case: pairwise coprime generators form a regular sequence
    used = [0] * n
    coprime = True
    for g in gens:
        for i, e in enumerate(g):
            if e:
                if used[i]:
                    coprime = False
                    break
                used[i] = 1
        if not coprime:
            break
    if coprime:
        res = [1]
        for g in gens:
            d = sum(g)
            f = [0] * (d + 1)
            f[0], f[d] = 1, -1
            res = _mul(res, f)
        memo[key] = res
        return res
    # pivot on the variable occurring in the most non-linear generators
    counts = [0] * n
    for g in gens:
        if sum(g) > 1:
            for i, e in enumerate(g):
                if e:
                    counts[i] += 1
    v = max(range(n), key=lambda i: counts[i])
    xv = tuple(1 if i == v else 0 for i in range(n))
    # HS(I) = HS(I + (x)) + T * HS(I : x)
    plus = minimalize([g for g in gens if not g[v]] + [xv])
    colon = minimalize([tuple(e - 1 if (i == v and e) else e for i, e in enumerate(g)) for g in gens])
    a = _numerator(tuple(plus), n, memo)
    b = _numerator(tuple(colon), n, memo)
    res = _add(a, [0] + b)
    memo[key] = res
    return res


@dataclass(frozen=True)
class UniPoly:
    """Univariate polynomial with rational coefficients (index = power)."""

    coeffs: tuple

    @classmethod
    def make(cls, coeffs) -> "UniPoly":
        c = [Fraction(x) for x in coeffs]
        while c and c[-1] == 0:
            c.pop()
        return cls(tuple(c))

    def __call__(self, x):
        acc = Fraction(0)
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def __str__(self):
        if not self.coeffs:
            return "0"
        parts = []
        for k in range(len(self.coeffs) - 1, -1, -1):
            c = self.coeffs[k]
            if c == 0:
                continue
            sign = "-" if c < 0 else "+"
            a = abs(c)
            mon = "" if k == 0 else ("t" if k == 1 else f"t^{k}")
            if mon and a == 1:
                body = mon
            elif mon:
                body = f"{a}*{mon}"
            else:
                body = str(a)
            parts.append((sign, body))
        s = ("-" if parts[0][0] == "-" else "") + parts[0][1]
        for sign, body in parts[1:]:
            s += f" {sign} {body}"
        return s


def _binom_poly(shift: int, k: int) -> list:
    """Coefficients of C(t + shift, k) as a polynomial in t."""
    poly = [Fraction(1)]
    for i in range(k):
        poly = _mul(poly, [Fraction(shift - i), Fraction(1)])
    fk = Fraction(1)
    for i in range(2, k + 1):
        fk *= i
    return [c / fk for c in poly]


@dataclass(frozen=True)
class HilbertSeries:
    """``numerator(T) / (1 - T)^nvars`` for a graded quotient ``R/I``."""

    numerator: tuple
    nvars: int

    def reduced(self) -> tuple:
        """``(h, d)`` with ``HS = h(T) / (1-T)^d`` and ``h(1) != 0``.

        For the zero ring (``numerator == 0``) returns ``((0,), -1)``.
        """
        h = list(self.numerator)
        if not any(h):
            return (0,), -1
        d = self.nvars
        while d > 0 and sum(h) == 0:
            # divide by (1 - T)
            q = []
            acc = 0
            for c in h[:-1]:
                acc += c
                q.append(acc)
            h = q or [0]
            d -= 1
        return tuple(h), d

    @property
    def krull_dim(self) -> int:
        return self.reduced()[1]

    @property
    def degree(self) -> int:
        h, d = self.reduced()
        return sum(h) if d >= 0 else 0

    def function(self, deg: int) -> int:
        """Coefficient of T^deg in the series."""
        if deg < 0:
            return 0
        n = self.nvars
        total = 0
        for k, c in enumerate(self.numerator):
            if c and k <= deg:
                total += c * (comb(deg - k + n - 1, n - 1) if n > 0 else (1 if deg == k else 0))
        return total

    def polynomial(self) -> UniPoly:
        h, d = self.reduced()
        if d <= 0:
            return UniPoly.make([])
        acc = [Fraction(0)] * d
        for k, c in enumerate(h):
            if c:
                for i, b in enumerate(_binom_poly(d - 1 - k, d - 1)):
                    acc[i] += c * b
        return UniPoly.make(acc)

    def regularity_index(self) -> int:
        """First degree from which the Hilbert function equals the polynomial."""
        h, d = self.reduced()
        return max(0, len(h) - d) if d >= 0 else 0


def series_from_betti(betti: dict, nvars: int) -> HilbertSeries:
    """Alternating sum ``1 - sum_i (-1)^i sum_j b_ij T^j`` for ``R/I``.

    ``betti`` is keyed by (homological index i, internal degree j) where index
    0 counts the generators of ``I``.
    """
    top = max((j for (_, j) in betti), default=0)
    num = [0] * (top + 1)
    num[0] = 1
    for (i, j), b in betti.items():
        num[j] += (-1) ** (i + 1) * b
    return HilbertSeries(tuple(_trim(num)), nvars)
