"""Frobenius pushforward structure of a polynomial ring.

For q = p^e the monomials x^b with 0 <= b_i < q form a free basis of
S = F_p[x] over its subring of q-th powers, so every g has a unique
expansion g = sum_b g_b^q * x^b.  The trace operator projects onto the
top basis slot b = (q-1, ..., q-1); this normalization is fixed once and
for all, which is harmless because images of ideals are insensitive to
unit factors.  Composites follow the rule
Tr^e(f * -) iterated n times = Tr^(ne)(f^(1+q+...+q^(n-1)) * -).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Dict

from .config import Caps, DEFAULT_CAPS
from .errors import DomainError, ResourceError
from .ideal import Ideal
from .ring import MultiPoly, PolyRing


def _check_level(ring: PolyRing, e: int, caps: Caps) -> int:
    if e <= 0:
        raise DomainError(f"Frobenius level must be >= 1, got {e}")
    q = ring.p ** e
    if q > caps.frobenius_block:
        raise ResourceError("frobenius_block", caps.frobenius_block,
                            f"p^e = {q}")
    return q


@dataclass(frozen=True)
class FrobBasisExpansion:
    """Unique expansion g = sum_b components[b]^q * x^b, 0 <= b_i < q."""

    e: int
    q: int
    components: Dict[tuple, MultiPoly]

    def component(self, b: tuple) -> MultiPoly:
        return self.components.get(tuple(b))

    def reassemble(self) -> MultiPoly:
        """Recompute the expanded polynomial; identity check for tests."""
        ring = next(iter(self.components.values())).ring if self.components else None
        if ring is None:
            raise DomainError("empty expansion has no ring")
        total = ring.zero()
        for b, g_b in self.components.items():
            total = total + g_b.frobenius_power(self.q).mul_monomial(b)
        return total


def frob_expand(g: MultiPoly, e: int, caps: Caps = DEFAULT_CAPS) -> FrobBasisExpansion:
    """Split every exponent a as q*u + b with b in [0, q); coefficients
    pass through unchanged because Frobenius fixes F_p."""
    q = _check_level(g.ring, e, caps)
    ring = g.ring
    buckets: Dict[tuple, dict] = {}
    for exps, c in g._terms.items():
        b = tuple(a % q for a in exps)
        u = tuple(a // q for a in exps)
        bucket = buckets.setdefault(b, {})
        bucket[u] = (bucket.get(u, 0) + c) % ring.p
    components = {}
    for b in sorted(buckets):
        poly = MultiPoly(ring, {u: c for u, c in buckets[b].items() if c})
        if not poly.is_zero:
            components[b] = poly
    return FrobBasisExpansion(e=e, q=q, components=components)


def trace(g: MultiPoly, e: int, caps: Caps = DEFAULT_CAPS) -> MultiPoly:
    """Projection onto the basis monomial x^(q-1, ..., q-1).

    Monomial rule: x^a maps to x^((a - (q-1)*1)/q) when every coordinate
    of a is congruent to q-1 mod q, and to 0 otherwise.  The operator is
    p^{-e}-linear and surjective.
    """
    q = _check_level(g.ring, e, caps)
    ring = g.ring
    top = q - 1
    out: Dict[tuple, int] = {}
    for exps, c in g._terms.items():
        if all(a % q == top for a in exps):
            u = tuple((a - top) // q for a in exps)
            s = (out.get(u, 0) + c) % ring.p
            if s:
                out[u] = s
            else:
                out.pop(u, None)
    return MultiPoly(ring, out)


def bracket_root(ideal: Ideal, e: int, caps: Caps = DEFAULT_CAPS) -> Ideal:
    """Smallest ideal K with J ⊆ K^[q]: generated by all basis components
    of the generators.  Monotone in J."""
    if e <= 0:
        raise DomainError(f"bracket root needs e >= 1, got {e}")
    gens = []
    seen = set()
    for g in ideal.generators:
        expansion = frob_expand(g, e, caps)
        for b in sorted(expansion.components):
            component = expansion.components[b].monic()
            if component not in seen:
                seen.add(component)
                gens.append(component)
    return Ideal(ideal.ring, gens)


@dataclass(frozen=True)
class CartierMap:
    """The p^{-e}-linear operator g -> Tr^e(multiplier * g)."""

    e: int
    multiplier: MultiPoly

    def __post_init__(self):
        if self.e <= 0:
            raise DomainError(f"Cartier map level must be >= 1, got {self.e}")
        if self.multiplier.is_zero:
            raise DomainError("Cartier map multiplier must be nonzero")

    @property
    def ring(self) -> PolyRing:
        return self.multiplier.ring

    @property
    def q(self) -> int:
        return self.ring.p ** self.e

    def iterate(self, n: int) -> "CartierMap":
        """n-fold composite: level n*e with multiplier
        f^(1 + q + ... + q^(n-1))."""
        if n <= 0:
            raise DomainError(f"composite needs n >= 1, got {n}")
        exponent = (self.q ** n - 1) // (self.q - 1)
        return CartierMap(self.e * n, self.multiplier ** exponent)

    def __call__(self, g: MultiPoly, caps: Caps = DEFAULT_CAPS) -> MultiPoly:
        return trace(self.multiplier * g, self.e, caps)


def apply_cartier(cmap: CartierMap, ideal: Ideal, caps: Caps = DEFAULT_CAPS) -> Ideal:
    """Image ideal of the operator on J: bracket_root(multiplier * J).

    Monotone in J and additive over ideal sums.
    """
    if cmap.multiplier.is_zero:
        raise DomainError("Cartier map multiplier must be nonzero")
    if ideal.ring != cmap.ring:
        raise DomainError("Cartier map and ideal live in different rings")
    scaled = Ideal(ideal.ring, [cmap.multiplier * g for g in ideal.generators])
    return bracket_root(scaled, cmap.e, caps)
