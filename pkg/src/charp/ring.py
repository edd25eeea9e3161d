"""Sparse multivariate polynomials over a prime field F_p.

Coefficients are canonical integer residues in [0, p); exponent vectors
are tuples of non-negative ints, one slot per declared variable.  The
ring descriptor fixes the variable names and the characteristic.  The
monomial order used for every canonical computation is graded reverse
lexicographic (grevlex); internal eliminations may use block orders but
all published bases are grevlex-reduced.

Values are immutable after construction and safe to share across
threads.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Iterator, Mapping, Optional, Sequence, Union

from .errors import DomainError, ParseError, RingMismatchError

Exponents = tuple  # tuple[int, ...]

MAX_CHARACTERISTIC = 1 << 16

_NAME_RE = re.compile(r"[A-Za-z_][A-Za-z0-9_]*\Z")


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    d = 2
    while d * d <= n:
        if n % d == 0:
            return False
        d += 1
    return True


def grevlex_key(exps: Exponents):
    """Sort key: larger key means larger monomial in grevlex."""
    return (sum(exps), tuple(-e for e in reversed(exps)))


class GrevlexOrder:
    """Graded reverse lexicographic order (the package-wide default)."""

    name = "grevlex"

    @staticmethod
    def key(exps: Exponents):
        return grevlex_key(exps)


class BlockElimOrder:
    """Eliminates the first `nblock` variables: any monomial involving
    them beats any monomial that does not; grevlex within each block."""

    name = "block-elim"

    def __init__(self, nblock: int):
        self.nblock = nblock

    def key(self, exps: Exponents):
        head, tail = exps[: self.nblock], exps[self.nblock:]
        return (grevlex_key(head), grevlex_key(tail))


GREVLEX = GrevlexOrder()


@dataclass(frozen=True)
class PolyRing:
    """Descriptor for F_p[variables] with the fixed grevlex order."""

    variables: tuple
    p: int

    def __post_init__(self):
        if not (2 <= self.p <= MAX_CHARACTERISTIC and is_prime(self.p)):
            raise DomainError(f"characteristic must be a prime <= 2^16, got {self.p}")
        if not self.variables:
            raise DomainError("a polynomial ring needs at least one variable")
        seen = set()
        for name in self.variables:
            if not isinstance(name, str) or not _NAME_RE.match(name):
                raise DomainError(f"invalid variable name {name!r}")
            if name in seen:
                raise DomainError(f"duplicate variable name {name!r}")
            seen.add(name)

    @property
    def nvars(self) -> int:
        return len(self.variables)

    def zero(self) -> "MultiPoly":
        return MultiPoly(self, {})

    def one(self) -> "MultiPoly":
        return self.constant(1)

    def constant(self, c: int) -> "MultiPoly":
        c %= self.p
        zero_exp = (0,) * self.nvars
        return MultiPoly(self, {zero_exp: c} if c else {})

    def monomial(self, exps: Sequence[int], coeff: int = 1) -> "MultiPoly":
        exps = tuple(int(e) for e in exps)
        if len(exps) != self.nvars or any(e < 0 for e in exps):
            raise DomainError(f"bad exponent vector {exps} for {self}")
        return MultiPoly(self, {exps: coeff % self.p})

    def gen(self, which: Union[int, str]) -> "MultiPoly":
        if isinstance(which, str):
            try:
                which = self.variables.index(which)
            except ValueError:
                raise DomainError(f"no variable {which!r} in {self}") from None
        exps = tuple(1 if i == which else 0 for i in range(self.nvars))
        return MultiPoly(self, {exps: 1})

    def gens(self) -> tuple:
        return tuple(self.gen(i) for i in range(self.nvars))

    def poly(self, terms: Mapping[Exponents, int]) -> "MultiPoly":
        out = {}
        for exps, c in terms.items():
            exps = tuple(int(e) for e in exps)
            if len(exps) != self.nvars or any(e < 0 for e in exps):
                raise DomainError(f"bad exponent vector {exps} for {self}")
            c = int(c) % self.p
            if c:
                out[exps] = (out.get(exps, 0) + c) % self.p
                if not out[exps]:
                    del out[exps]
        return MultiPoly(self, out)

    def parse(self, text: str) -> "MultiPoly":
        return _parse_poly(self, text)

    def __str__(self):
        return f"F_{self.p}[{', '.join(self.variables)}]"


class MultiPoly:
    """Immutable sparse polynomial: dict from exponent tuples to residues.

    No zero coefficients are stored; arithmetic is exact.
    """

    __slots__ = ("ring", "_terms")

    def __init__(self, ring: PolyRing, terms: dict):
        self.ring = ring
        self._terms = terms

    # -- basic queries -------------------------------------------------

    @property
    def is_zero(self) -> bool:
        return not self._terms

    @property
    def is_constant(self) -> bool:
        return all(not any(e) for e in self._terms)

    def constant_value(self) -> int:
        """The coefficient of the constant term."""
        return self._terms.get((0,) * self.ring.nvars, 0)

    def degree(self) -> int:
        """Total degree; -1 for the zero polynomial."""
        if not self._terms:
            return -1
        return max(sum(e) for e in self._terms)

    def is_homogeneous(self) -> bool:
        degs = {sum(e) for e in self._terms}
        return len(degs) <= 1

    def num_terms(self) -> int:
        return len(self._terms)

    def iter_terms(self) -> Iterator:
        """(exponents, coefficient) pairs in descending grevlex order."""
        for exps in sorted(self._terms, key=grevlex_key, reverse=True):
            yield exps, self._terms[exps]

    def coefficient(self, exps: Exponents) -> int:
        return self._terms.get(tuple(exps), 0)

    def leading_exponent(self, order=GREVLEX) -> Exponents:
        if not self._terms:
            raise DomainError("zero polynomial has no leading term")
        return max(self._terms, key=order.key)

    def leading_coefficient(self, order=GREVLEX) -> int:
        return self._terms[self.leading_exponent(order)]

    def monic(self, order=GREVLEX) -> "MultiPoly":
        if not self._terms:
            return self
        lc = self.leading_coefficient(order)
        if lc == 1:
            return self
        inv = pow(lc, -1, self.ring.p)
        return self.scale(inv)

    # -- arithmetic ----------------------------------------------------

    def _check_ring(self, other: "MultiPoly"):
        if self.ring != other.ring:
            raise RingMismatchError(f"{self.ring} vs {other.ring}")

    def _coerce(self, other) -> Optional["MultiPoly"]:
        if isinstance(other, MultiPoly):
            self._check_ring(other)
            return other
        if isinstance(other, int):
            return self.ring.constant(other)
        return None

    def __add__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        p = self.ring.p
        out = dict(self._terms)
        for exps, c in other._terms.items():
            s = (out.get(exps, 0) + c) % p
            if s:
                out[exps] = s
            else:
                out.pop(exps, None)
        return MultiPoly(self.ring, out)

    __radd__ = __add__

    def __neg__(self):
        p = self.ring.p
        return MultiPoly(self.ring, {e: (-c) % p for e, c in self._terms.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return other + (-self)

    def scale(self, c: int) -> "MultiPoly":
        c %= self.ring.p
        if c == 0:
            return self.ring.zero()
        if c == 1:
            return self
        p = self.ring.p
        return MultiPoly(self.ring, {e: (k * c) % p for e, k in self._terms.items()})

    def mul_monomial(self, exps: Exponents, coeff: int = 1) -> "MultiPoly":
        p = self.ring.p
        coeff %= p
        if coeff == 0:
            return self.ring.zero()
        out = {}
        for e, c in self._terms.items():
            ne = tuple(a + b for a, b in zip(e, exps))
            nc = (c * coeff) % p
            if nc:
                out[ne] = nc
        return MultiPoly(self.ring, out)

    def __mul__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        if not self._terms or not other._terms:
            return self.ring.zero()
        p = self.ring.p
        # iterate over the shorter operand
        a, b = (self._terms, other._terms)
        if len(a) > len(b):
            a, b = b, a
        out = {}
        for ea, ca in a.items():
            for eb, cb in b.items():
                ne = tuple(x + y for x, y in zip(ea, eb))
                s = (out.get(ne, 0) + ca * cb) % p
                if s:
                    out[ne] = s
                else:
                    out.pop(ne, None)
        return MultiPoly(self.ring, out)

    __rmul__ = __mul__

    def __pow__(self, n: int) -> "MultiPoly":
        if n < 0:
            raise DomainError("negative polynomial powers are not defined")
        result = self.ring.one()
        base = self
        while n:
            if n & 1:
                result = result * base
            base_needed = n >> 1
            if base_needed:
                base = base * base
            n = base_needed
        return result

    def frobenius_power(self, q: int) -> "MultiPoly":
        """self**q for q a power of the characteristic (exponent scaling).

        Valid because Frobenius is additive in characteristic p and fixes
        F_p coefficients.
        """
        p = self.ring.p
        m, e = q, 0
        while m > 1 and m % p == 0:
            m //= p
            e += 1
        if m != 1:
            raise DomainError(f"{q} is not a power of the characteristic {p}")
        if q == 1:
            return self
        return MultiPoly(self.ring, {tuple(a * q for a in exps): c
                                     for exps, c in self._terms.items()})

    # -- substitution --------------------------------------------------

    def evaluate(self, values: Sequence[int]) -> int:
        """Evaluate at a rational point (tuple of residues)."""
        if len(values) != self.ring.nvars:
            raise DomainError("wrong number of coordinates")
        p = self.ring.p
        total = 0
        for exps, c in self._terms.items():
            term = c
            for v, e in zip(values, exps):
                if e:
                    term = (term * pow(v % p, e, p)) % p
            total = (total + term) % p
        return total

    def shift(self, point: Sequence[Optional[int]]) -> "MultiPoly":
        """Substitute x_i -> x_i + c_i for every constrained coordinate.

        Coordinates given as None are left untouched.
        """
        if len(point) != self.ring.nvars:
            raise DomainError("wrong number of coordinates")
        ring = self.ring
        shifted_gens = []
        for i, c in enumerate(point):
            if c is None or c % ring.p == 0:
                shifted_gens.append(None)
            else:
                shifted_gens.append(ring.gen(i) + ring.constant(c))
        power_cache: dict = {}
        result = ring.zero()
        for exps, coeff in self._terms.items():
            term = ring.constant(coeff)
            plain_exp = [0] * ring.nvars
            for i, e in enumerate(exps):
                if e == 0:
                    continue
                if shifted_gens[i] is None:
                    plain_exp[i] = e
                else:
                    key = (i, e)
                    if key not in power_cache:
                        power_cache[key] = shifted_gens[i] ** e
                    term = term * power_cache[key]
            term = term.mul_monomial(tuple(plain_exp))
            result = result + term
        return result

    def dehomogenize(self, index: int) -> "MultiPoly":
        """Substitute 1 for the given variable (chart of a cone)."""
        p = self.ring.p
        out = {}
        for exps, c in self._terms.items():
            ne = tuple(0 if i == index else a for i, a in enumerate(exps))
            s = (out.get(ne, 0) + c) % p
            if s:
                out[ne] = s
            else:
                out.pop(ne, None)
        return MultiPoly(self.ring, out)

    # -- comparison / hashing / display --------------------------------

    def __eq__(self, other):
        if isinstance(other, int):
            return self == self.ring.constant(other)
        if not isinstance(other, MultiPoly):
            return NotImplemented
        return self.ring == other.ring and self._terms == other._terms

    def __hash__(self):
        return hash((self.ring, frozenset(self._terms.items())))

    def __bool__(self):
        return bool(self._terms)

    def __str__(self):
        if not self._terms:
            return "0"
        names = self.ring.variables
        chunks = []
        for exps, c in self.iter_terms():
            factors = []
            for name, e in zip(names, exps):
                if e == 1:
                    factors.append(name)
                elif e > 1:
                    factors.append(f"{name}^{e}")
            if not factors:
                chunks.append(str(c))
            elif c == 1:
                chunks.append("*".join(factors))
            else:
                chunks.append(f"{c}*" + "*".join(factors))
        return " + ".join(chunks)

    def __repr__(self):
        return f"MultiPoly({self})"


# -- parsing -----------------------------------------------------------

_TOKEN_RE = re.compile(
    r"(?P<num>\d+)|(?P<name>[A-Za-z_][A-Za-z0-9_]*)|(?P<pow>\*\*|\^)"
    r"|(?P<op>[-+*()])|(?P<ws>\s+)"
)


def _tokenize(text: str):
    tokens = []
    pos = 0
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        if not m:
            raise ParseError(f"unexpected character {text[pos]!r}", column=pos + 1)
        if m.lastgroup != "ws":
            kind = m.lastgroup
            value = m.group()
            if kind == "pow":
                kind, value = "op", "^"
            tokens.append((kind, value, pos + 1))
        pos = m.end()
    tokens.append(("end", "", len(text) + 1))
    return tokens


class _Parser:
    """Recursive-descent parser for '+', '-', '*', '^' and parentheses."""

    def __init__(self, ring: PolyRing, text: str):
        self.ring = ring
        self.tokens = _tokenize(text)
        self.idx = 0

    def peek(self):
        return self.tokens[self.idx]

    def take(self):
        tok = self.tokens[self.idx]
        self.idx += 1
        return tok

    def expect_op(self, op: str):
        kind, value, col = self.take()
        if kind != "op" or value != op:
            raise ParseError(f"expected {op!r}, found {value!r}", column=col)

    def parse(self) -> MultiPoly:
        poly = self.expr()
        kind, value, col = self.peek()
        if kind != "end":
            raise ParseError(f"unexpected trailing {value!r}", column=col)
        return poly

    def expr(self) -> MultiPoly:
        result = self.term()
        while True:
            kind, value, _ = self.peek()
            if kind == "op" and value in "+-":
                self.take()
                rhs = self.term()
                result = result + rhs if value == "+" else result - rhs
            else:
                return result

    def term(self) -> MultiPoly:
        result = self.factor()
        while True:
            kind, value, _ = self.peek()
            if kind == "op" and value == "*":
                self.take()
                result = result * self.factor()
            else:
                return result

    def factor(self) -> MultiPoly:
        kind, value, col = self.peek()
        if kind == "op" and value in "+-":
            self.take()
            inner = self.factor()
            return inner if value == "+" else -inner
        base = self.atom()
        while True:
            kind, value, _ = self.peek()
            if kind == "op" and value == "^":
                self.take()
                nkind, nvalue, ncol = self.take()
                if nkind != "num":
                    raise ParseError("exponent must be a non-negative integer",
                                     column=ncol)
                base = base ** int(nvalue)
            else:
                return base

    def atom(self) -> MultiPoly:
        kind, value, col = self.take()
        if kind == "num":
            return self.ring.constant(int(value))
        if kind == "name":
            if value not in self.ring.variables:
                raise ParseError(f"unknown variable {value!r}", column=col)
            return self.ring.gen(value)
        if kind == "op" and value == "(":
            inner = self.expr()
            self.expect_op(")")
            return inner
        raise ParseError(f"unexpected {value!r}" if value else "unexpected end of input",
                         column=col)


def _parse_poly(ring: PolyRing, text: str) -> MultiPoly:
    if not isinstance(text, str):
        raise ParseError(f"polynomial must be a string, got {type(text).__name__}")
    return _Parser(ring, text).parse()


def monomials_of_degree(nvars: int, degree: int) -> Iterator[Exponents]:
    """All exponent tuples of the given total degree, grevlex-descending."""
    if degree < 0:
        return
    def rec(remaining, slots):
        if slots == 1:
            yield (remaining,)
            return
        for first in range(remaining, -1, -1):
            for rest in rec(remaining - first, slots - 1):
                yield (first,) + rest
    yield from sorted(rec(degree, nvars), key=grevlex_key, reverse=True)
