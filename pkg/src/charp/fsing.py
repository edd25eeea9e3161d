"""F-singularity ideals of pairs on affine space and cones.

A pair divisor (f, a, e) encodes the effective Q-divisor
Delta = (a/(p^e-1)) * div(f), whose log-discrepancy data is carried by
the p^{-e}-linear operator g -> Tr^e(f^a * g).  The non-F-pure ideal is
the limit of the descending image chain from the unit ideal; the test
ideal is the stabilized ascending chain from a test element.  Both land
on operator-fixed ideals and the fixedness is re-checked at the end of
every run.

An optional modulus ideal supports quotient ambients: for a cone
S/(h_1, ..., h_r) the operator multiplier picks up the adjunction factor
prod h_i^(q-1) and every chain step adds the modulus back in.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

from .cartier import CartierMap, apply_cartier
from .config import Caps, DEFAULT_CAPS
from .errors import (DomainError, InternalInvariantError, PreconditionError,
                     ResourceError, TestElementError, UnsupportedInputError)
from .ideal import Ideal
from .ring import MultiPoly, PolyRing


@dataclass(frozen=True)
class PairDivisor:
    """Delta = (a/(p^e-1)) * div(f); the index of the pair is prime to p
    by construction."""

    f: MultiPoly
    a: int
    e: int

    def __post_init__(self):
        if self.f.is_zero:
            raise DomainError("pair divisor needs a nonzero polynomial")
        if self.a < 0:
            raise DomainError(f"pair coefficient must be >= 0, got {self.a}")
        if self.e < 1:
            raise DomainError(f"pair level must be >= 1, got {self.e}")

    @property
    def ring(self) -> PolyRing:
        return self.f.ring

    @property
    def q(self) -> int:
        return self.ring.p ** self.e

    @property
    def coefficient(self) -> Fraction:
        return Fraction(self.a, self.q - 1)

    def multiplier(self) -> MultiPoly:
        return self.f ** self.a

    def cartier_map(self) -> CartierMap:
        return CartierMap(self.e, self.multiplier())

    def rescale(self, n: int) -> "PairDivisor":
        """Same divisor presented at level n*e."""
        q = self.q
        return PairDivisor(self.f, self.a * (q ** n - 1) // (q - 1), self.e * n)

    def default_test_element(self) -> MultiPoly:
        return self.f


@dataclass
class ChainResult:
    ideal: Ideal
    steps: int


def _step_image(cmap: CartierMap, current: Ideal, modulus: Optional[Ideal],
                caps: Caps) -> Ideal:
    image = apply_cartier(cmap, current, caps)
    if modulus is not None:
        image = image + modulus
    return image


def descending_fixed_ideal(cmap: CartierMap, modulus: Optional[Ideal] = None,
                           caps: Caps = DEFAULT_CAPS) -> ChainResult:
    """Largest operator-fixed ideal: iterate J -> image(J) from the unit
    ideal until two consecutive reduced bases agree.

    Each step must shrink or stall; growth signals a broken trace
    convention and raises InternalInvariantError.
    """
    current = Ideal.unit(cmap.ring)
    for step in range(1, caps.chain_steps + 1):
        nxt = _step_image(cmap, current, modulus, caps)
        if not nxt.issubset(current):
            raise InternalInvariantError(
                "descending chain grew at step %d" % step)
        if nxt == current:
            return ChainResult(current, step)
        current = Ideal._from_groebner(cmap.ring, nxt.groebner_basis)
    raise ResourceError("chain_steps", caps.chain_steps,
                        "descending fixed-ideal chain did not stabilize")


def ascending_fixed_ideal(cmap: CartierMap, seed: MultiPoly,
                          modulus: Optional[Ideal] = None,
                          caps: Caps = DEFAULT_CAPS) -> ChainResult:
    """Smallest operator-fixed ideal containing the seed: iterate
    N -> N + image(N) until stable, then insist the result is genuinely
    fixed (image == result); failure means the seed was not a test
    element and raises TestElementError.
    """
    ring = cmap.ring
    if seed.is_zero:
        raise DomainError("test element must be nonzero")
    if modulus is not None and modulus.contains(seed):
        raise DomainError("test element vanishes on the ambient quotient")
    current = Ideal(ring, (seed,))
    if modulus is not None:
        current = current + modulus
    for step in range(1, caps.chain_steps + 1):
        image = _step_image(cmap, current, modulus, caps)
        nxt = current + image
        if nxt == current:
            if image != current:
                raise TestElementError(
                    f"chain from {seed} stabilized on a non-fixed ideal; "
                    "the seed is not a test element for this pair")
            return ChainResult(current, step)
        current = Ideal._from_groebner(cmap.ring, nxt.groebner_basis)
    raise ResourceError("chain_steps", caps.chain_steps,
                        "ascending fixed-ideal chain did not stabilize")


# -- public operations on pairs ------------------------------------------


def sigma_chain(pair: PairDivisor, caps: Caps = DEFAULT_CAPS) -> ChainResult:
    return descending_fixed_ideal(pair.cartier_map(), None, caps)


def sigma(pair: PairDivisor, caps: Caps = DEFAULT_CAPS) -> Ideal:
    """Non-F-pure ideal of the pair (largest fixed ideal)."""
    return sigma_chain(pair, caps).ideal


def tau_chain(pair: PairDivisor, c: Optional[MultiPoly] = None,
              caps: Caps = DEFAULT_CAPS) -> ChainResult:
    seed = pair.default_test_element() if c is None else c
    return ascending_fixed_ideal(pair.cartier_map(), seed, None, caps)


def tau(pair: PairDivisor, c: Optional[MultiPoly] = None,
        caps: Caps = DEFAULT_CAPS) -> Ideal:
    """Test ideal of the pair (smallest nonzero fixed ideal), computed
    from the test element c (default: the pair's polynomial)."""
    return tau_chain(pair, c, caps).ideal


def safe_test_element(pair: PairDivisor) -> MultiPoly:
    """f^ceil(a/(q-1)), always a valid test element for the pair."""
    t = Fraction(pair.a, pair.q - 1)
    k = -(-t.numerator // t.denominator)  # ceil
    return pair.f ** k


def is_sharply_f_pure(pair: PairDivisor, caps: Caps = DEFAULT_CAPS) -> bool:
    return sigma(pair, caps).is_unit


def is_strongly_f_regular(pair: PairDivisor, c: Optional[MultiPoly] = None,
                          caps: Caps = DEFAULT_CAPS) -> bool:
    return tau(pair, c, caps).is_unit


@dataclass
class TwistReport:
    holds: bool
    shifted: Ideal
    expected: Ideal


def twist_identity(pair: PairDivisor, g: MultiPoly,
                   c: Optional[MultiPoly] = None,
                   caps: Caps = DEFAULT_CAPS) -> TwistReport:
    """Check tau(Delta + div(g)) == g * tau(Delta).

    The augmented pair is represented with the single polynomial
    f^a * g^(q-1) at coefficient 1 and the same level; the augmented
    chain is seeded with g*c so that both runs share test-element data.
    """
    if g.is_zero:
        raise DomainError("twisting polynomial must be nonzero")
    base_c = pair.default_test_element() if c is None else c
    q = pair.q
    augmented = PairDivisor(pair.multiplier() * g ** (q - 1), 1, pair.e)
    lhs = tau(augmented, g * base_c, caps)
    rhs = Ideal(pair.ring, (g,)) * tau(pair, base_c, caps)
    return TwistReport(holds=(lhs == rhs), shifted=lhs, expected=rhs)


def fedder_f_pure(ideal: Ideal, maximal: Ideal, caps: Caps = DEFAULT_CAPS) -> bool:
    """Fedder's criterion at a rational point: the quotient ring S/I is
    F-pure at m exactly when (I^[p] : I) is not inside m^[p].

    For a hypersurface I = (h) this is the classical test
    h^(p-1) not in m^[p].
    """
    if not ideal.issubset(maximal):
        raise DomainError("Fedder test needs I contained in the maximal ideal")
    colon = ideal.bracket_power(1).quotient(ideal)
    return not colon.issubset(maximal.bracket_power(1))


def is_compatible(center: Ideal, pair: PairDivisor,
                  caps: Caps = DEFAULT_CAPS) -> bool:
    """Whether the operator of the pair maps the center's ideal into
    itself; a compatible center along which the pair is generically
    sharply F-pure is an F-pure-center candidate."""
    image = apply_cartier(pair.cartier_map(), center, caps)
    return image.issubset(center)


# -- multiplicity and the codimension containment test ---------------------


def _validate_point(ring: PolyRing, point: Sequence) -> tuple:
    if len(point) != ring.nvars:
        raise DomainError(
            f"point has {len(point)} coordinates, ring has {ring.nvars}")
    coords = []
    for v in point:
        if v is None:
            coords.append(None)
        elif isinstance(v, int) and not isinstance(v, bool):
            coords.append(v % ring.p)
        else:
            raise UnsupportedInputError(
                f"point coordinates must be residues or None, got {v!r}")
    if all(v is None for v in coords):
        raise DomainError("point must constrain at least one coordinate")
    return tuple(coords)


def multiplicity(f: MultiPoly, point: Sequence) -> int:
    """Order of vanishing of f at a coordinate-subspace point.

    Constrained coordinates carry residues; None marks a free direction
    (a non-closed point along that coordinate subspace).  After moving
    the point to the origin, the multiplicity is the least total degree
    in the constrained variables over the terms of f.
    """
    if f.is_zero:
        raise DomainError("multiplicity of the zero polynomial is undefined")
    coords = _validate_point(f.ring, point)
    shifted = f.shift(tuple(c if c is not None else None for c in coords))
    constrained = [i for i, c in enumerate(coords) if c is not None]
    return min(sum(exps[i] for i in constrained) for exps in shifted._terms)


def point_ideal(ring: PolyRing, point: Sequence) -> Ideal:
    """Prime ideal of a coordinate-subspace point: (x_i - c_i) over the
    constrained coordinates."""
    coords = _validate_point(ring, point)
    gens = [ring.gen(i) - ring.constant(c)
            for i, c in enumerate(coords) if c is not None]
    return Ideal(ring, gens)


@dataclass
class ContainmentReport:
    point: tuple
    codim: int
    threshold: int
    pair_multiplicity: Fraction
    test_ideal: Ideal
    holds: bool


def multiplicity_containment(pair: PairDivisor, point: Sequence,
                             l: Optional[int] = None,
                             c: Optional[MultiPoly] = None,
                             caps: Caps = DEFAULT_CAPS) -> ContainmentReport:
    """If the divisor has multiplicity >= l at a point of codimension l,
    its test ideal must land inside the point's prime ideal.  The verdict
    is expected True on every admissible input; False is a bug detector.
    """
    coords = _validate_point(pair.ring, point)
    codim = sum(1 for v in coords if v is not None)
    threshold = codim if l is None else l
    mult = Fraction(pair.a, pair.q - 1) * multiplicity(pair.f, coords)
    if mult < threshold:
        raise PreconditionError(
            f"divisor multiplicity {mult} at {coords} is below the "
            f"threshold {threshold}")
    seed = safe_test_element(pair) if c is None else c
    t = tau(pair, seed, caps)
    q_point = point_ideal(pair.ring, coords)
    return ContainmentReport(point=coords, codim=codim, threshold=threshold,
                             pair_multiplicity=mult, test_ideal=t,
                             holds=t.issubset(q_point))
