"""Finitely generated ideals with cached reduced Gröbner bases.

The reduced basis is unique for the fixed grevlex order, so two Ideal
values are equal exactly when they generate the same ideal.  Basis
completion is plain Buchberger with the coprimality criterion and
normal-pair selection; degree and basis-size caps turn blowups into
ResourceErrors instead of hangs.

Ideals are immutable; the Gröbner basis is computed lazily and cached.
A single completion runs on one thread, but independent computations on
shared values are safe to run concurrently.
"""

from __future__ import annotations

import heapq
from typing import Iterable, Optional, Sequence

from .config import Caps, DEFAULT_CAPS
from .errors import (DomainError, InternalInvariantError, ResourceError,
                     RingMismatchError)
from .ring import GREVLEX, BlockElimOrder, MultiPoly, PolyRing


def _divides(a, b) -> bool:
    return all(x <= y for x, y in zip(a, b))


def _exp_sub(a, b):
    return tuple(x - y for x, y in zip(a, b))


def _exp_lcm(a, b):
    return tuple(max(x, y) for x, y in zip(a, b))


def normal_form(f: MultiPoly, basis: Sequence[MultiPoly], order=GREVLEX) -> MultiPoly:
    """Fully reduce f against the basis: no term of the result is
    divisible by any basis leading monomial."""
    reducers = [(g.leading_exponent(order),
                 pow(g.leading_coefficient(order), -1, g.ring.p), g)
                for g in basis if not g.is_zero]
    if not reducers:
        return f
    ring = f.ring
    remainder = ring.zero()
    work = f
    while not work.is_zero:
        lead = work.leading_exponent(order)
        coeff = work.coefficient(lead)
        for lm, lc_inv, g in reducers:
            if _divides(lm, lead):
                factor = (coeff * lc_inv) % ring.p
                work = work - g.mul_monomial(_exp_sub(lead, lm), factor)
                break
        else:
            remainder = remainder + ring.monomial(lead, coeff)
            work = work - ring.monomial(lead, coeff)
    return remainder


def _s_poly(f: MultiPoly, g: MultiPoly, order=GREVLEX) -> MultiPoly:
    """S-polynomial of two monic polynomials."""
    lf, lg = f.leading_exponent(order), g.leading_exponent(order)
    lcm = _exp_lcm(lf, lg)
    return f.mul_monomial(_exp_sub(lcm, lf)) - g.mul_monomial(_exp_sub(lcm, lg))


def buchberger(generators: Iterable[MultiPoly], order=GREVLEX,
               caps: Caps = DEFAULT_CAPS) -> tuple:
    """Reduced Gröbner basis of the given generators.

    Returns a tuple of monic polynomials sorted with the largest leading
    monomial first; the tuple is canonical for the order, so equal ideals
    yield equal tuples.
    """
    raw = sorted((g for g in generators if not g.is_zero),
                 key=lambda g: order.key(g.leading_exponent(order)))
    if not raw:
        return ()

    pairs: list = []
    counter = 0
    basis: list = []

    def push_pairs(new_index: int):
        nonlocal counter
        lm_new = basis[new_index].leading_exponent(order)
        for i in range(new_index):
            lm_i = basis[i].leading_exponent(order)
            lcm = _exp_lcm(lm_i, lm_new)
            if lcm == tuple(a + b for a, b in zip(lm_i, lm_new)):
                continue  # coprime leading monomials: S-poly reduces to zero
            heapq.heappush(pairs, (order.key(lcm), counter, i, new_index))
            counter += 1

    # feed the input through the reducer so redundant generators
    # (frequent in bracket-root images) never enter the pair queue
    for g in raw:
        reduced = normal_form(g, basis, order) if basis else g
        if reduced.is_zero:
            continue
        basis.append(reduced.monic(order))
        if len(basis) > caps.max_basis:
            raise ResourceError("max_basis", caps.max_basis,
                                "too many pairwise-irreducible generators")
        push_pairs(len(basis) - 1)

    while pairs:
        _, _, i, j = heapq.heappop(pairs)
        s = _s_poly(basis[i], basis[j], order)
        if s.is_zero:
            continue
        if s.degree() > caps.max_degree:
            raise ResourceError("max_degree", caps.max_degree,
                                f"S-polynomial of degree {s.degree()}")
        reduced = normal_form(s, basis, order)
        if reduced.is_zero:
            continue
        if reduced.degree() > caps.max_degree:
            raise ResourceError("max_degree", caps.max_degree,
                                f"basis element of degree {reduced.degree()}")
        basis.append(reduced.monic(order))
        if len(basis) > caps.max_basis:
            raise ResourceError("max_basis", caps.max_basis,
                                "basis completion did not stay desk-scale")
        push_pairs(len(basis) - 1)

    # minimalize: drop elements whose leading monomial is divisible by another's
    basis.sort(key=lambda g: order.key(g.leading_exponent(order)))
    minimal: list = []
    for g in basis:
        lm = g.leading_exponent(order)
        if not any(_divides(h.leading_exponent(order), lm) for h in minimal):
            minimal.append(g)
    # inter-reduce tails (leading monomials are stable under this pass)
    reduced_basis = []
    for k, g in enumerate(minimal):
        others = minimal[:k] + minimal[k + 1:]
        reduced_basis.append(normal_form(g, others, order).monic(order))
        minimal[k] = reduced_basis[k]
    reduced_basis.sort(key=lambda g: order.key(g.leading_exponent(order)),
                       reverse=True)
    return tuple(reduced_basis)


class Ideal:
    """Finitely generated ideal of a PolyRing."""

    __slots__ = ("ring", "generators", "_gb", "_caps")

    def __init__(self, ring: PolyRing, generators: Iterable[MultiPoly] = (),
                 caps: Caps = DEFAULT_CAPS):
        gens = []
        for g in generators:
            if isinstance(g, int):
                g = ring.constant(g)
            if g.ring != ring:
                raise RingMismatchError(f"generator ring {g.ring} != {ring}")
            if not g.is_zero:
                gens.append(g)
        self.ring = ring
        self.generators = tuple(gens)
        self._gb: Optional[tuple] = None
        self._caps = caps

    @classmethod
    def _from_groebner(cls, ring: PolyRing, basis: tuple,
                       caps: Caps = DEFAULT_CAPS) -> "Ideal":
        """Wrap an already-reduced basis without recomputing it."""
        ideal = cls(ring, basis, caps)
        ideal._gb = tuple(basis)
        return ideal

    @classmethod
    def zero(cls, ring: PolyRing) -> "Ideal":
        return cls(ring, ())

    @classmethod
    def unit(cls, ring: PolyRing) -> "Ideal":
        return cls(ring, (ring.one(),))

    @classmethod
    def irrelevant(cls, ring: PolyRing) -> "Ideal":
        """The ideal generated by all the variables."""
        return cls(ring, ring.gens())

    @property
    def groebner_basis(self) -> tuple:
        if self._gb is None:
            self._gb = buchberger(self.generators, GREVLEX, self._caps)
        return self._gb

    # -- predicates ------------------------------------------------------

    @property
    def is_zero(self) -> bool:
        return self.groebner_basis == ()

    @property
    def is_unit(self) -> bool:
        gb = self.groebner_basis
        return len(gb) == 1 and gb[0].is_constant

    def normal_form(self, f: MultiPoly) -> MultiPoly:
        if f.ring != self.ring:
            raise RingMismatchError(f"{f.ring} vs {self.ring}")
        return normal_form(f, self.groebner_basis)

    def contains(self, f: MultiPoly) -> bool:
        return self.normal_form(f).is_zero

    def __contains__(self, f: MultiPoly) -> bool:
        return self.contains(f)

    def issubset(self, other: "Ideal") -> bool:
        self._check_ring(other)
        return all(other.contains(g) for g in self.groebner_basis)

    def __eq__(self, other):
        if not isinstance(other, Ideal):
            return NotImplemented
        return self.ring == other.ring and self.groebner_basis == other.groebner_basis

    def __hash__(self):
        return hash((self.ring, self.groebner_basis))

    def _check_ring(self, other: "Ideal"):
        if self.ring != other.ring:
            raise RingMismatchError(f"{self.ring} vs {other.ring}")

    # -- constructions ----------------------------------------------------

    def __add__(self, other: "Ideal") -> "Ideal":
        self._check_ring(other)
        return Ideal(self.ring, self.generators + other.generators, self._caps)

    def __mul__(self, other) -> "Ideal":
        if isinstance(other, MultiPoly):
            other = Ideal(self.ring, (other,), self._caps)
        self._check_ring(other)
        gens = [f * g for f in self.generators for g in other.generators]
        return Ideal(self.ring, gens, self._caps)

    __rmul__ = __mul__

    def intersect(self, other: "Ideal") -> "Ideal":
        """I ∩ J via elimination of an auxiliary variable t:
        (t·I + (1-t)·J) ∩ k[x]."""
        self._check_ring(other)
        if self.is_zero or other.is_zero:
            return Ideal.zero(self.ring)
        if self.is_unit:
            return other
        if other.is_unit:
            return self
        aux = "t_elim"
        while aux in self.ring.variables:
            aux += "_"
        ext_ring = PolyRing((aux,) + self.ring.variables, self.ring.p)

        def lift(f: MultiPoly, t_shift: int = 0) -> MultiPoly:
            return MultiPoly(ext_ring, {(t_shift,) + e: c
                                        for e, c in f._terms.items()})

        t = ext_ring.gen(0)
        one = ext_ring.one()
        ext_gens = [lift(g, 1) for g in self.generators]
        ext_gens += [(one - t) * lift(g) for g in other.generators]
        order = BlockElimOrder(1)
        gb = buchberger(ext_gens, order, self._caps)
        kept = []
        for g in gb:
            if all(e[0] == 0 for e in g._terms):
                kept.append(MultiPoly(self.ring, {e[1:]: c
                                                  for e, c in g._terms.items()}))
        return Ideal(self.ring, kept, self._caps)

    def quotient(self, other: "Ideal") -> "Ideal":
        """(I : J) = {g : g·J ⊆ I}."""
        self._check_ring(other)
        if other.is_zero:
            return Ideal.unit(self.ring)
        if other.is_unit:
            return self
        result: Optional[Ideal] = None
        for g in other.groebner_basis:
            meet = self.intersect(Ideal(self.ring, (g,), self._caps))
            part = Ideal(self.ring, [_exact_div(h, g) for h in meet.generators],
                         self._caps)
            result = part if result is None else result.intersect(part)
        return result if result is not None else Ideal.unit(self.ring)

    def saturate(self, other: "Ideal", caps: Optional[Caps] = None) -> "Ideal":
        """Stabilized union of (I : J^n); detected by equality of
        consecutive reduced bases."""
        caps = caps or self._caps
        current = self
        for _ in range(caps.saturation_steps):
            nxt = current.quotient(other)
            if nxt == current:
                return current
            current = nxt
        raise ResourceError("saturation_steps", caps.saturation_steps)

    def bracket_power(self, e: int) -> "Ideal":
        """Ideal generated by g^(p^e) over the generators.

        Independent of the generating set because Frobenius is flat over
        the (regular) ambient polynomial ring.
        """
        if e < 0:
            raise DomainError(f"bracket power needs e >= 0, got {e}")
        if e == 0:
            return self
        q = self.ring.p ** e
        return Ideal(self.ring, [g.frobenius_power(q) for g in self.generators],
                     self._caps)

    def graded_generators_in_degree(self, m: int) -> list:
        """Spanning set of the degree-m piece: monomial multiples of the
        reduced basis (homogeneous ideals only)."""
        from .ring import monomials_of_degree
        out = []
        for g in self.groebner_basis:
            d = g.degree()
            if d > m:
                continue
            if not g.is_homogeneous():
                raise DomainError("graded piece of a non-homogeneous ideal")
            for exps in monomials_of_degree(self.ring.nvars, m - d):
                out.append(g.mul_monomial(exps))
        return out

    def __str__(self):
        if not self.generators:
            return "(0)"
        return "(" + ", ".join(str(g) for g in self.generators) + ")"

    def __repr__(self):
        return f"Ideal{self}"


def _exact_div(f: MultiPoly, g: MultiPoly) -> MultiPoly:
    """Quotient f/g when g divides f exactly (used on I ∩ (g) generators)."""
    if g.is_zero:
        raise DomainError("division by the zero polynomial")
    ring = f.ring
    lg = g.leading_exponent()
    lc_inv = pow(g.leading_coefficient(), -1, ring.p)
    quotient = ring.zero()
    work = f
    while not work.is_zero:
        lead = work.leading_exponent()
        if not _divides(lg, lead):
            raise InternalInvariantError(f"{g} does not divide {f} exactly")
        factor = (work.coefficient(lead) * lc_inv) % ring.p
        mono = _exp_sub(lead, lg)
        quotient = quotient + ring.monomial(mono, factor)
        work = work - g.mul_monomial(mono, factor)
    return quotient


def groebner(ideal: Ideal) -> tuple:
    """The unique reduced Gröbner basis of the ideal (grevlex)."""
    return ideal.groebner_basis
