"""Finite extensions F_{p^k} realized by adjoining a root.

The extension is F_p[t]/(mu) for a monic irreducible mu of degree k;
elements are canonical residues, reusing the univariate polynomial
kernel.  Only k <= 3 is needed for point sampling, where irreducibility
is equivalent to having no roots in F_p.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator, Sequence

from .errors import DomainError
from .ring import MultiPoly, PolyRing


def _find_irreducible(ring: PolyRing, p: int, k: int) -> MultiPoly:
    t = ring.gen(0)
    if k == 1:
        return t
    # degree 2 or 3: irreducible over F_p iff no roots in F_p
    for tail in range(p ** k):
        coeffs = []
        rest = tail
        for _ in range(k):
            coeffs.append(rest % p)
            rest //= p
        poly = t ** k
        for i, c in enumerate(coeffs):
            if c:
                poly = poly + ring.monomial((i,), c)
        if all(poly.evaluate((v,)) != 0 for v in range(p)):
            return poly
    raise DomainError(f"no irreducible polynomial of degree {k} found")  # unreachable


@dataclass(frozen=True)
class ExtElement:
    """Residue in F_p[t]/(mu), stored as a reduced polynomial."""

    field: "ExtField"
    value: MultiPoly

    def __add__(self, other: "ExtElement") -> "ExtElement":
        return ExtElement(self.field, self.value + other.value)

    def __sub__(self, other: "ExtElement") -> "ExtElement":
        return ExtElement(self.field, self.value - other.value)

    def __neg__(self) -> "ExtElement":
        return ExtElement(self.field, -self.value)

    def __mul__(self, other: "ExtElement") -> "ExtElement":
        return ExtElement(self.field, self.field.reduce(self.value * other.value))

    def __pow__(self, n: int) -> "ExtElement":
        result = self.field.one
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    @property
    def is_zero(self) -> bool:
        return self.value.is_zero

    def inverse(self) -> "ExtElement":
        return self.field.inverse(self)

    def __hash__(self):
        return hash((id(self.field), self.value))

    def __eq__(self, other):
        return isinstance(other, ExtElement) and self.value == other.value

    def __str__(self):
        return str(self.value)


def _divmod_univariate(f: MultiPoly, g: MultiPoly) -> tuple:
    ring = f.ring
    p = ring.p
    lg = g.leading_exponent()
    inv = pow(g.leading_coefficient(), -1, p)
    quotient = ring.zero()
    rem = f
    while not rem.is_zero and rem.degree() >= g.degree():
        lead = rem.leading_exponent()
        mono = (lead[0] - lg[0],)
        factor = (rem.coefficient(lead) * inv) % p
        quotient = quotient + ring.monomial(mono, factor)
        rem = rem - g.mul_monomial(mono, factor)
    return quotient, rem


class ExtField:
    """F_{p^k} as residues modulo an irreducible of degree k."""

    def __init__(self, p: int, k: int):
        if k < 1:
            raise DomainError(f"extension degree must be >= 1, got {k}")
        if k > 3:
            raise DomainError("point sampling supports extension degree <= 3")
        self.p = p
        self.k = k
        self.ring = PolyRing(("t",), p)
        self.modulus = _find_irreducible(self.ring, p, k)
        self.zero = ExtElement(self, self.ring.zero())
        self.one = ExtElement(self, self.ring.one())

    @property
    def order(self) -> int:
        return self.p ** self.k

    def reduce(self, poly: MultiPoly) -> MultiPoly:
        if poly.degree() < self.k:
            return poly
        return _divmod_univariate(poly, self.modulus)[1]

    def from_int(self, n: int) -> ExtElement:
        return ExtElement(self, self.ring.constant(n))

    def element(self, coeffs: Sequence[int]) -> ExtElement:
        poly = self.ring.zero()
        for i, c in enumerate(coeffs):
            if c % self.p:
                poly = poly + self.ring.monomial((i,), c)
        return ExtElement(self, poly)

    def elements(self) -> Iterator[ExtElement]:
        for code in range(self.order):
            coeffs = []
            rest = code
            for _ in range(self.k):
                coeffs.append(rest % self.p)
                rest //= self.p
            yield self.element(coeffs)

    def inverse(self, a: ExtElement) -> ExtElement:
        if a.is_zero:
            raise DomainError("zero has no inverse")
        # extended Euclid on (value, modulus)
        r0, r1 = a.value, self.modulus
        s0, s1 = self.ring.one(), self.ring.zero()
        while not r1.is_zero:
            q, rem = _divmod_univariate(r0, r1)
            r0, r1 = r1, rem
            s0, s1 = s1, s0 - q * s1
        # r0 = gcd is a nonzero constant
        scale = pow(r0.constant_value(), -1, self.p)
        return ExtElement(self, self.reduce(s0.scale(scale)))


def evaluate_poly(f: MultiPoly, coords: Sequence[ExtElement],
                  field: ExtField) -> ExtElement:
    """Evaluate a form at a point with extension-field coordinates."""
    if len(coords) != f.ring.nvars:
        raise DomainError("wrong number of coordinates")
    total = field.zero
    for exps, c in f._terms.items():
        term = field.from_int(c)
        for v, e in zip(coords, exps):
            if e:
                term = term * (v ** e)
        total = total + term
    return total


def projective_points(field: ExtField, nvars: int) -> Iterator[tuple]:
    """Canonical representatives of projective points: first nonzero
    coordinate equal to 1, enumerated deterministically."""
    all_elements = list(field.elements())
    for pivot in range(nvars):
        prefix = (field.zero,) * pivot + (field.one,)
        tail_slots = nvars - pivot - 1

        def rec(slots):
            if slots == 0:
                yield ()
                return
            for value in all_elements:
                for rest in rec(slots - 1):
                    yield (value,) + rest

        for tail in rec(tail_slots):
            yield prefix + tail
