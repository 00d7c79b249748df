"""Exact coefficient fields, monomial orders and sparse polynomials.

Polynomials are immutable maps ``exponent tuple -> coefficient``.  Coefficients
are plain ints reduced into ``[0, p)`` over a prime field, or
:class:`fractions.Fraction` over the rationals.  Nothing here ever touches a
float.
"""

from __future__ import annotations

import random
import re
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Mapping, Sequence

DEFAULT_PRIME = 32003

# Exponents beyond this are rejected; the packed encoding below has room for
# products of two such monomials.
MAX_EXPONENT = 1 << 20


class RingMismatch(ValueError):
    """Raised when operands live in different polynomial rings."""


class ParseError(ValueError):
    def __init__(self, msg, text="", pos=0, line=1):
        self.line = line
        self.column = pos + 1
        self.text = text
        super().__init__(f"line {line}, column {pos + 1}: {msg}")


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    small = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)
    for q in small:
        if n % q == 0:
            return n == q
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in small:
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


@dataclass(frozen=True)
class Field:
    """Prime field F_p (``p > 0``) or the rationals (``p == 0``)."""

    p: int = DEFAULT_PRIME

    def __post_init__(self):
        if self.p != 0 and not _is_prime(self.p):
            raise ValueError(f"{self.p} is not prime")

    @classmethod
    def rationals(cls) -> "Field":
        return cls(0)

    @property
    def is_prime_field(self) -> bool:
        return self.p != 0

    @property
    def characteristic(self) -> int:
        return self.p

    def __call__(self, x):
        if self.p:
            if isinstance(x, Fraction):
                return x.numerator * pow(x.denominator, -1, self.p) % self.p
            return int(x) % self.p
        return Fraction(x)

    def inv(self, a):
        if not a:
            raise ZeroDivisionError("inverse of zero")
        if self.p:
            return pow(a, -1, self.p)
        return 1 / Fraction(a)

    def neg(self, a):
        return (-a) % self.p if self.p else -a

    def symmetric(self, a) -> int | Fraction:
        """Representative in (-p/2, p/2] for display."""
        if self.p and a > self.p // 2:
            return a - self.p
        return a

    def random_element(self, rng: random.Random, exclude=(0,)):
        if not self.p:
            # rationals: small integers are generic enough for desk-scale use
            while True:
                a = Fraction(rng.randint(-10**6, 10**6))
                if a not in exclude:
                    return a
        while True:
            a = rng.randrange(self.p)
            if a not in exclude:
                return a

    def __str__(self):
        return f"F_{self.p}" if self.p else "QQ"


@dataclass(frozen=True)
class MonomialOrder:
    """``degrevlex``, ``lex`` or ``elim`` (block order eliminating the first k
    variables: degrevlex on the block, then degrevlex on the rest)."""

    kind: str = "degrevlex"
    k: int = 0

    def __post_init__(self):
        if self.kind not in ("degrevlex", "lex", "elim"):
            raise ValueError(f"unknown monomial order {self.kind!r}")
        if self.kind == "elim" and self.k < 0:
            raise ValueError("elimination block size must be non-negative")

    def key(self, exps: Sequence[int]):
        """Reference sort key: larger key means larger monomial."""
        if self.kind == "lex":
            return tuple(exps)
        if self.kind == "degrevlex":
            return (sum(exps), tuple(-e for e in reversed(exps)))
        head, tail = exps[: self.k], exps[self.k:]
        return (sum(head), tuple(-e for e in reversed(head)),
                sum(tail), tuple(-e for e in reversed(tail)))

    def __str__(self):
        return f"elim({self.k})" if self.kind == "elim" else self.kind


DEGREVLEX = MonomialOrder("degrevlex")
LEX = MonomialOrder("lex")


def elimination_order(k: int) -> MonomialOrder:
    return MonomialOrder("elim", k)


def compare(a: Sequence[int], b: Sequence[int], order: MonomialOrder = DEGREVLEX) -> int:
    """Return 1, 0 or -1 as ``a`` is greater than, equal to or less than ``b``."""
    if len(a) != len(b):
        raise ValueError(f"monomials of different lengths {len(a)} and {len(b)}")
    ka, kb = order.key(a), order.key(b)
    return (ka > kb) - (ka < kb)


class Packer:
    """Order-preserving integer encoding of exponent vectors.

    Each exponent gets a fixed-width bit field.  For degree orders the field
    stores ``C - e`` (reverse lexicographic tie-break) under a leading total
    degree field, so comparing two encoded monomials is one integer
    comparison.  Multiplication is ``a + b - off`` and divisibility is a
    guard-bit test on ``l - m`` (or ``m - l`` for lex).
    """

    W = 24
    C = 1 << (W - 2)
    GUARD = 1 << (W - 1)
    FMASK = (1 << W) - 1

    def __init__(self, nvars: int, order: MonomialOrder):
        self.nvars = nvars
        self.order = order
        W, C = self.W, self.C
        # positions[i] = field index of variable i; deg_fields = list of
        # (field index, variable range)
        self.positions = [0] * nvars
        self.deg_fields = []
        if order.kind == "lex":
            for i in range(nvars):
                self.positions[i] = nvars - 1 - i
            self.nfields = nvars
            self.complement = False
        elif order.kind == "degrevlex":
            for i in range(nvars):
                self.positions[i] = i
            self.deg_fields.append((nvars, range(nvars)))
            self.nfields = nvars + 1
            self.complement = True
        else:
            k = min(order.k, nvars)
            for j in range(k, nvars):
                self.positions[j] = j - k
            self.deg_fields.append((nvars - k, range(k, nvars)))
            for j in range(k):
                self.positions[j] = nvars - k + 1 + j
            self.deg_fields.append((nvars + 1, range(k)))
            self.nfields = nvars + 2
            self.complement = True
        self.sgn = -1 if self.complement else 1
        self.shifts = [W * pos for pos in self.positions]
        self.off = sum(C << s for s in self.shifts) if self.complement else 0
        self.guard = sum(self.GUARD << (W * f) for f in range(self.nfields))
        self.emask = sum(self.GUARD << s for s in self.shifts)
        self.bits = W * self.nfields
        self.one = self.encode((0,) * nvars)

    def encode(self, exps: Sequence[int]) -> int:
        W, C = self.W, self.C
        E = 0
        if self.complement:
            for e, s in zip(exps, self.shifts):
                if e < 0 or e >= MAX_EXPONENT:
                    raise OverflowError(f"exponent {e} out of range")
                E |= (C - e) << s
        else:
            for e, s in zip(exps, self.shifts):
                if e < 0 or e >= MAX_EXPONENT:
                    raise OverflowError(f"exponent {e} out of range")
                E |= e << s
        for f, rng in self.deg_fields:
            E |= sum(exps[i] for i in rng) << (W * f)
        return E

    def decode(self, E: int) -> tuple:
        F = self.FMASK
        if self.complement:
            C = self.C
            out = tuple(C - ((E >> s) & F) for s in self.shifts)
        else:
            out = tuple((E >> s) & F for s in self.shifts)
        for e in out:
            if e < 0 or e >= 2 * MAX_EXPONENT:
                raise OverflowError("exponent overflow in packed monomial")
        return out

    def mul(self, a: int, b: int) -> int:
        return a + b - self.off

    def quo(self, m: int, l: int) -> int:
        return m - l + self.off

    def divides(self, l: int, m: int) -> bool:
        M = self.emask
        return ((self.sgn * (m - l) + self.guard) & M) == M

    def lcm(self, a: int, b: int) -> int:
        return self.encode(tuple(map(max, self.decode(a), self.decode(b))))

    def degree(self, E: int) -> int:
        return sum(self.decode(E))


@lru_cache(maxsize=None)
def packer_for(nvars: int, order: MonomialOrder) -> Packer:
    return Packer(nvars, order)


@dataclass(frozen=True)
class Ring:
    """Polynomial ring k[x0, ..., x{n-1}] with a fixed monomial order."""

    nvars: int
    field: Field = field(default_factory=Field)
    order: MonomialOrder = DEGREVLEX
    names: tuple | None = None

    def __post_init__(self):
        if self.nvars < 0:
            raise ValueError("negative variable count")
        if self.names is not None and len(self.names) != self.nvars:
            raise ValueError("names must match the variable count")

    @property
    def varnames(self) -> tuple:
        return self.names if self.names is not None else tuple(f"x{i}" for i in range(self.nvars))

    @property
    def packer(self) -> Packer:
        return packer_for(self.nvars, self.order)

    @property
    def p(self) -> int:
        return self.field.p

    def with_order(self, order: MonomialOrder) -> "Ring":
        return Ring(self.nvars, self.field, order, self.names)

    def with_field(self, fld: Field) -> "Ring":
        return Ring(self.nvars, fld, self.order, self.names)

    def zero(self) -> "Polynomial":
        return Polynomial(self, {})

    def one(self) -> "Polynomial":
        return self.const(1)

    def const(self, c) -> "Polynomial":
        return Polynomial(self, {(0,) * self.nvars: c})

    def var(self, i: int) -> "Polynomial":
        e = [0] * self.nvars
        e[i] = 1
        return Polynomial(self, {tuple(e): 1}, _clean=True)

    def gens(self) -> list:
        return [self.var(i) for i in range(self.nvars)]

    def monomial(self, exps, coeff=1) -> "Polynomial":
        return Polynomial(self, {tuple(exps): coeff})

    def parse(self, text: str) -> "Polynomial":
        return parse_polynomial(self, text)

    def random_linear_form(self, rng: random.Random, variables=None) -> "Polynomial":
        variables = range(self.nvars) if variables is None else variables
        terms = {}
        for i in variables:
            e = [0] * self.nvars
            e[i] = 1
            terms[tuple(e)] = self.field.random_element(rng)
        return Polynomial(self, terms)

    def __str__(self):
        return f"{self.field}[{','.join(self.varnames)}] ({self.order})"


class _AnyDegree:
    """Degree of the zero polynomial: compatible with every homogeneity check."""

    _inst = None

    def __new__(cls):
        if cls._inst is None:
            cls._inst = super().__new__(cls)
        return cls._inst

    def __repr__(self):
        return "ANY_DEGREE"

    def __eq__(self, other):
        return isinstance(other, (int, _AnyDegree))

    def __hash__(self):
        return 0


ANY_DEGREE = _AnyDegree()


class Polynomial:
    """Immutable sparse polynomial over a :class:`Ring`."""

    __slots__ = ("ring", "terms", "_lead")

    def __init__(self, ring: Ring, terms: Mapping | None = None, _clean: bool = False):
        self.ring = ring
        if _clean or not terms:
            self.terms = dict(terms) if terms else {}
        else:
            fld = ring.field
            n = ring.nvars
            out = {}
            for e, c in terms.items():
                c = fld(c)
                if c:
                    e = tuple(e)
                    if len(e) != n:
                        raise ValueError(f"monomial {e} has wrong length for {n} variables")
                    out[e] = c
            self.terms = out
        self._lead = None

    # construction helpers -------------------------------------------------

    def _new(self, terms) -> "Polynomial":
        return Polynomial(self.ring, terms, _clean=True)

    def _check(self, other: "Polynomial"):
        if other.ring != self.ring:
            raise RingMismatch(f"{self.ring} vs {other.ring}")

    def _coerce(self, other):
        if isinstance(other, Polynomial):
            self._check(other)
            return other
        if isinstance(other, (int, Fraction)):
            return self.ring.const(other)
        return NotImplemented

    # arithmetic -------------------------------------------------------------

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        p = self.ring.p
        out = dict(self.terms)
        for e, c in other.terms.items():
            v = out.get(e, 0) + c
            if p:
                v %= p
            if v:
                out[e] = v
            else:
                out.pop(e, None)
        return self._new(out)

    __radd__ = __add__

    def __neg__(self):
        fld = self.ring.field
        return self._new({e: fld.neg(c) for e, c in self.terms.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return other - self

    def scale(self, c) -> "Polynomial":
        fld = self.ring.field
        c = fld(c)
        if not c:
            return self.ring.zero()
        p = fld.p
        if p:
            return self._new({e: v * c % p for e, v in self.terms.items()})
        return self._new({e: v * c for e, v in self.terms.items()})

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        if not isinstance(other, Polynomial):
            return NotImplemented
        self._check(other)
        if len(self.terms) > len(other.terms):
            a, b = other.terms, self.terms
        else:
            a, b = self.terms, other.terms
        p = self.ring.p
        out: dict = {}
        get = out.get
        for ea, ca in a.items():
            for eb, cb in b.items():
                e = tuple(map(int.__add__, ea, eb))
                out[e] = get(e, 0) + ca * cb
        if p:
            out = {e: c % p for e, c in out.items() if c % p}
        else:
            out = {e: c for e, c in out.items() if c}
        return self._new(out)

    def __rmul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        return NotImplemented

    def __pow__(self, k: int):
        if not isinstance(k, int) or k < 0:
            raise ValueError("exponent must be a non-negative integer")
        result = self.ring.one()
        base = self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    def mul_monomial(self, exps, coeff=1) -> "Polynomial":
        fld = self.ring.field
        c = fld(coeff)
        p = fld.p
        out = {}
        for e, v in self.terms.items():
            v = v * c
            if p:
                v %= p
            if v:
                out[tuple(map(int.__add__, e, exps))] = v
        return self._new(out)

    # comparison -------------------------------------------------------------

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = self.ring.const(other)
        if not isinstance(other, Polynomial):
            return NotImplemented
        return self.ring == other.ring and self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __bool__(self):
        return bool(self.terms)

    # structure ------------------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def is_constant(self) -> bool:
        return not self.terms or (len(self.terms) == 1 and not any(next(iter(self.terms))))

    def constant_value(self):
        return self.terms.get((0,) * self.ring.nvars, 0)

    def total_degree(self) -> int:
        if not self.terms:
            return -1
        return max(sum(e) for e in self.terms)

    def is_homogeneous(self):
        """Common degree of all terms, ``ANY_DEGREE`` for 0, else ``None``."""
        if not self.terms:
            return ANY_DEGREE
        degs = {sum(e) for e in self.terms}
        return degs.pop() if len(degs) == 1 else None

    def is_linear_form(self) -> bool:
        return bool(self.terms) and all(sum(e) == 1 for e in self.terms)

    def _lead_pair(self):
        if self._lead is None:
            if not self.terms:
                raise ValueError("zero polynomial has no leading term")
            enc = self.ring.packer.encode
            self._lead = max(self.terms, key=enc)
        return self._lead

    def leading_monomial(self) -> tuple:
        return self._lead_pair()

    def leading_coefficient(self):
        return self.terms[self._lead_pair()]

    def monic(self) -> "Polynomial":
        if not self.terms:
            return self
        return self.scale(self.ring.field.inv(self.leading_coefficient()))

    def sorted_terms(self) -> list:
        enc = self.ring.packer.encode
        return sorted(self.terms.items(), key=lambda t: enc(t[0]), reverse=True)

    def coefficient(self, exps):
        return self.terms.get(tuple(exps), 0)

    def support_variables(self) -> set:
        return {i for e in self.terms for i, a in enumerate(e) if a}

    def linear_coefficients(self) -> list:
        """Coefficient vector of a linear form (or zero)."""
        if any(sum(e) != 1 for e in self.terms):
            raise ValueError(f"{self} is not a linear form")
        out = [0] * self.ring.nvars
        for e, c in self.terms.items():
            out[e.index(1)] = c
        return out

    def homogeneous_components(self) -> dict:
        comps: dict = {}
        for e, c in self.terms.items():
            comps.setdefault(sum(e), {})[e] = c
        return {d: self._new(t) for d, t in sorted(comps.items())}

    # ring maps --------------------------------------------------------------

    def substitute(self, images: Sequence["Polynomial"]) -> "Polynomial":
        """Apply the ring map ``x_i -> images[i]``."""
        if len(images) != self.ring.nvars:
            raise ValueError("need one image per variable")
        target = images[0].ring if images else self.ring
        for im in images:
            if im.ring != target:
                raise RingMismatch("images must share one ring")
        powers: dict = {}

        def pw(i, k):
            key = (i, k)
            if key not in powers:
                powers[key] = images[i] ** k
            return powers[key]

        total = target.zero()
        for e, c in self.terms.items():
            t = target.const(c)
            for i, k in enumerate(e):
                if k:
                    t = t * pw(i, k)
                    if not t:
                        break
            total = total + t
        return total

    def change_ring(self, ring: Ring) -> "Polynomial":
        """Same terms, different order/names (variable count must agree)."""
        if ring.nvars != self.ring.nvars:
            raise RingMismatch("variable counts differ")
        if ring.field == self.ring.field:
            return Polynomial(ring, self.terms, _clean=True)
        return Polynomial(ring, {e: _lift(c, self.ring.field) for e, c in self.terms.items()})

    def evaluate(self, point: Sequence):
        fld = self.ring.field
        total = fld(0)
        for e, c in self.terms.items():
            t = c
            for x, k in zip(point, e):
                if k:
                    t = t * fld(x) ** k
            total = total + t
        return fld(total)

    # display ----------------------------------------------------------------

    def __str__(self):
        if not self.terms:
            return "0"
        names = self.ring.varnames
        fld = self.ring.field
        parts = []
        for e, c in self.sorted_terms():
            c = fld.symmetric(c)
            mon = "*".join(
                names[i] if k == 1 else f"{names[i]}^{k}" for i, k in enumerate(e) if k
            )
            neg = c < 0
            a = -c if neg else c
            if not mon:
                body = str(a)
            elif a == 1:
                body = mon
            else:
                body = f"{a}*{mon}"
            if not parts:
                parts.append(f"-{body}" if neg else body)
            else:
                parts.append(f"- {body}" if neg else f"+ {body}")
        return " ".join(parts)

    def __repr__(self):
        return f"Polynomial({self})"


def _lift(c, fld: Field):
    """Integer/rational lift of a field element (symmetric for prime fields)."""
    return fld.symmetric(c)


# ---------------------------------------------------------------------------
# parsing

_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_][A-Za-z0-9_]*)|(\S))")


def parse_polynomial(ring: Ring, text: str, line: int = 1) -> Polynomial:
    """Parse ``x0^2*x1 - 3*x2^3`` style input (``+ - * ^`` and parentheses)."""
    index = {name: i for i, name in enumerate(ring.varnames)}
    tokens = []
    pos = 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None or m.end() == pos:
            break
        start = m.start(m.lastindex)
        tokens.append((m.lastindex, m.group(m.lastindex), start))
        pos = m.end()
    tokens.append((0, "", len(text.rstrip())))
    state = {"i": 0}

    def peek():
        return tokens[state["i"]]

    def take():
        tok = tokens[state["i"]]
        state["i"] += 1
        return tok

    def fail(msg, tok):
        raise ParseError(msg, text, tok[2], line)

    def expr():
        tok = peek()
        sign = 1
        if tok[1] in "+-" and tok[0] == 3:
            take()
            sign = -1 if tok[1] == "-" else 1
        acc = term()
        if sign < 0:
            acc = -acc
        while True:
            tok = peek()
            if tok[0] == 3 and tok[1] in "+-":
                take()
                rhs = term()
                acc = acc + rhs if tok[1] == "+" else acc - rhs
            else:
                return acc

    def term():
        acc = power()
        while peek()[0] == 3 and peek()[1] == "*":
            take()
            acc = acc * power()
        return acc

    def power():
        base = atom()
        if peek()[0] == 3 and peek()[1] == "^":
            take()
            tok = take()
            if tok[0] != 1:
                fail("expected a non-negative integer exponent", tok)
            base = base ** int(tok[1])
        return base

    def atom():
        tok = take()
        kind, val = tok[0], tok[1]
        if kind == 1:
            return ring.const(int(val))
        if kind == 2:
            if val not in index:
                fail(f"unknown variable {val!r}", tok)
            return ring.var(index[val])
        if kind == 3 and val == "(":
            inner = expr()
            close = take()
            if close[1] != ")":
                fail("expected ')'", close)
            return inner
        if kind == 3 and val == "-":
            return -atom()
        fail(f"unexpected {val!r}" if val else "unexpected end of input", tok)

    if not text.strip():
        raise ParseError("empty polynomial", text, 0, line)
    result = expr()
    tok = peek()
    if tok[0] != 0:
        fail(f"unexpected {tok[1]!r}", tok)
    return result


def poly(ring: Ring, text: str) -> Polynomial:
    return parse_polynomial(ring, text)


def polys(ring: Ring, texts: Iterable[str]) -> list:
    return [parse_polynomial(ring, t) for t in texts]
