"""Graded section spaces on subschemes of projective space and the
stable images of iterated trace maps inside them.

Everything happens on the affine cone: sections of O_X(m) for a
projectively normal X = V(h_1, ..., h_r) in P^n are the degree-m piece
of S/(h_1, ..., h_r).  The trace operator of the cone with multiplier
prod h_i^(q-1) * f^a realizes the divisor pair on X, and its level-n
image inside the degree-m piece is computed by iterating the level-one
operator on a spanning set of the source piece.  The images descend as
the level grows and stabilize; the stable row space is the canonical
subsystem of the twist.

Degree bookkeeping for one level with multiplier u (homogeneous of
degree du): a source form of degree D maps to degree
(D + du - (q-1)*(n+1)) / q, so the source piece for target degree m at
level n is D_n = q^n*m + (q^n-1)*(n+1) - du*(q^n-1)/(q-1).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, List, Optional, Sequence, Tuple

import numpy as np

from .cartier import CartierMap, apply_cartier, trace
from .config import Caps, DEFAULT_CAPS
from .errors import (DomainError, PreconditionError, ResourceError,
                     TheoremViolationError)
from .fsing import (ChainResult, PairDivisor, ascending_fixed_ideal,
                    descending_fixed_ideal, multiplicity, safe_test_element)
from .ideal import Ideal, normal_form
from .linalg import in_row_space, rref
from .ring import MultiPoly, PolyRing, monomials_of_degree


def trivial_pair(ring: PolyRing) -> PairDivisor:
    """The zero divisor, encoded as (1, 0, 1)."""
    return PairDivisor(ring.one(), 0, 1)


@dataclass(frozen=True)
class ProjScheme:
    """X in P^n cut out by homogeneous forms (empty for P^n itself),
    with the degree of the dualizing twist tracked by adjunction."""

    ring: PolyRing
    forms: tuple

    def __post_init__(self):
        for h in self.forms:
            if h.ring != self.ring:
                raise DomainError("defining form in the wrong ring")
            if h.is_zero or not h.is_homogeneous():
                raise DomainError("defining forms must be nonzero homogeneous")

    @classmethod
    def projective_space(cls, ring: PolyRing) -> "ProjScheme":
        return cls(ring, ())

    @classmethod
    def from_forms(cls, ring: PolyRing, forms: Iterable[MultiPoly]) -> "ProjScheme":
        scheme = cls(ring, tuple(forms))
        ideal = scheme.ideal
        saturated = ideal.saturate(Ideal.irrelevant(ring))
        if saturated != ideal:
            raise DomainError(
                "defining ideal is not saturated; pass a saturated model")
        return scheme

    @property
    def n(self) -> int:
        return self.ring.nvars - 1

    @property
    def ideal(self) -> Ideal:
        return Ideal(self.ring, self.forms)

    @property
    def canonical_twist(self) -> int:
        """omega_X = O_X(canonical_twist) for these complete intersections."""
        return sum(h.degree() for h in self.forms) - (self.n + 1)

    @property
    def dimension(self) -> int:
        return self.n - len(self.forms)

    @property
    def is_curve(self) -> bool:
        return self.dimension == 1

    def trace_multiplier(self, pair: PairDivisor) -> MultiPoly:
        """Level-one multiplier on the cone: adjunction factor times f^a."""
        if pair.ring != self.ring:
            raise DomainError("pair lives in a different ring than the scheme")
        if not pair.f.is_homogeneous():
            raise DomainError("pair polynomial must be homogeneous")
        u = pair.multiplier()
        q = pair.q
        for h in self.forms:
            u = u * h ** (q - 1)
        return u

    def pair_degree(self, pair: PairDivisor) -> Fraction:
        """Degree of the twist K_X + Delta."""
        return self.canonical_twist + pair.coefficient * pair.f.degree()


@dataclass
class GradedSubspace:
    """Row-reduced subspace of the degree-m piece of S/modulus.

    Columns are the standard monomials of the quotient in that degree
    (grevlex-descending), so equal row spaces have equal matrices.
    """

    ring: PolyRing
    modulus: Ideal
    degree: int
    columns: tuple
    matrix: np.ndarray
    pivots: tuple

    @property
    def dim(self) -> int:
        return int(self.matrix.shape[0])

    def polys(self) -> List[MultiPoly]:
        out = []
        for row in self.matrix:
            terms = {exps: int(c) for exps, c in zip(self.columns, row) if c}
            out.append(MultiPoly(self.ring, terms))
        return out

    def vectorize(self, f: MultiPoly) -> np.ndarray:
        """Coefficient vector of the canonical representative of f."""
        reduced = normal_form(f, self.modulus.groebner_basis)
        index = {exps: i for i, exps in enumerate(self.columns)}
        vec = np.zeros(len(self.columns), dtype=np.int64)
        for exps, c in reduced._terms.items():
            if exps not in index:
                raise DomainError(
                    f"{f} does not reduce into degree {self.degree}")
            vec[index[exps]] = c
        return vec

    def contains(self, f: MultiPoly) -> bool:
        return in_row_space(self.vectorize(f), self.matrix, self.pivots,
                            self.ring.p)

    def is_subspace_of(self, other: "GradedSubspace") -> bool:
        if self.columns != other.columns:
            raise DomainError("subspaces graded differently")
        return all(in_row_space(row, other.matrix, other.pivots, self.ring.p)
                   for row in self.matrix)

    def __eq__(self, other):
        if not isinstance(other, GradedSubspace):
            return NotImplemented
        return (self.ring == other.ring and self.degree == other.degree
                and self.columns == other.columns
                and self.matrix.shape == other.matrix.shape
                and bool((self.matrix == other.matrix).all()))


def _standard_monomials(modulus: Ideal, m: int) -> tuple:
    """Degree-m monomials outside the leading-term ideal of the modulus,
    grevlex-descending."""
    lts = [g.leading_exponent() for g in modulus.groebner_basis]
    out = []
    for exps in monomials_of_degree(modulus.ring.nvars, m):
        if not any(all(a >= b for a, b in zip(exps, lt)) for lt in lts):
            out.append(exps)
    return tuple(out)


def _space_from_rows(ring: PolyRing, modulus: Ideal, m: int,
                     columns: tuple, rows: List[np.ndarray]) -> GradedSubspace:
    if rows:
        mat, piv = rref(np.array(rows, dtype=np.int64), ring.p)
    else:
        mat = np.zeros((0, len(columns)), dtype=np.int64)
        piv = ()
    return GradedSubspace(ring=ring, modulus=modulus, degree=m,
                          columns=columns, matrix=mat, pivots=piv)


def space_from_polys(modulus: Ideal, m: int,
                     polys: Iterable[MultiPoly]) -> GradedSubspace:
    """Row space spanned by the canonical representatives of the polys."""
    ring = modulus.ring
    columns = _standard_monomials(modulus, m)
    probe = GradedSubspace(ring=ring, modulus=modulus, degree=m,
                           columns=columns,
                           matrix=np.zeros((0, len(columns)), dtype=np.int64),
                           pivots=())
    rows = []
    for f in polys:
        if f.is_zero:
            continue
        if f.degree() != m or not f.is_homogeneous():
            raise DomainError(f"{f} is not homogeneous of degree {m}")
        vec = probe.vectorize(f)
        if vec.any():
            rows.append(vec)
    return _space_from_rows(ring, modulus, m, columns, rows)


def graded_piece(scheme: ProjScheme, m: int) -> GradedSubspace:
    """The full degree-m piece of the homogeneous coordinate ring; its
    dimension is the Hilbert function value."""
    if m < 0:
        raise DomainError(f"graded pieces need m >= 0, got {m}")
    modulus = scheme.ideal
    columns = _standard_monomials(modulus, m)
    mat = np.eye(len(columns), dtype=np.int64)
    return GradedSubspace(ring=scheme.ring, modulus=modulus, degree=m,
                          columns=columns, matrix=mat,
                          pivots=tuple(range(len(columns))))


# -- stable trace images -------------------------------------------------


@dataclass(frozen=True)
class TraceStep:
    """One level of the trace tower: an F_p-linear map from the source
    graded piece to the target one; steps compose across levels."""

    multiplier: MultiPoly  # level-one multiplier (adjunction included)
    e: int                 # level-one Frobenius exponent
    n: int                 # how many levels are composed
    source_degree: int
    target_degree: int


@dataclass
class StableImageResult:
    space: GradedSubspace
    level: int
    steps: List[TraceStep] = field(default_factory=list)
    source_rows: List[int] = field(default_factory=list)


def _trace_step(u1: MultiPoly, e: int, n: int, m: int) -> TraceStep:
    ring = u1.ring
    q = ring.p ** e
    big = q ** n
    du = u1.degree()
    if (du * (big - 1)) % (q - 1):
        raise DomainError(
            f"non-integral source twist at level {n}: multiplier degree "
            f"{du} is not compatible with q = {q}")
    twist = du * (big - 1) // (q - 1)  # du * (1 + q + ... + q^(n-1))
    degree = big * m + (big - 1) * ring.nvars - twist
    if degree < 0:
        raise DomainError(
            f"source twist degree {degree} is negative at level {n}")
    return TraceStep(multiplier=u1, e=e, n=n, source_degree=degree,
                     target_degree=m)


def _level_image(modulus: Ideal, u1: MultiPoly, e: int, n: int, m: int,
                 source: Optional[Ideal], caps: Caps) -> Tuple[GradedSubspace, int]:
    ring = u1.ring
    step = _trace_step(u1, e, n, m)
    D = step.source_degree
    gb = modulus.groebner_basis
    if source is None:
        span = [ring.monomial(exps) for exps in _standard_monomials(modulus, D)]
    else:
        span = source.graded_generators_in_degree(D)
    if len(span) > caps.source_rows:
        raise ResourceError("source_rows", caps.source_rows,
                            f"{len(span)} spanning rows at level {n}")
    columns = _standard_monomials(modulus, m)
    index = {exps: i for i, exps in enumerate(columns)}
    rows = []
    for s in span:
        v = s
        for _ in range(n):
            v = trace(u1 * v, e, caps)
            if gb and not v.is_zero:
                v = normal_form(v, gb)
            if v.is_zero:
                break
        if v.is_zero:
            continue
        vec = np.zeros(len(columns), dtype=np.int64)
        for exps, c in v._terms.items():
            vec[index[exps]] = c
        rows.append(vec)
    return _space_from_rows(ring, modulus, m, columns, rows), len(span)


def graded_fixed_ideal(scheme: ProjScheme, pair: PairDivisor, which: str,
                       c: Optional[MultiPoly] = None,
                       caps: Caps = DEFAULT_CAPS) -> ChainResult:
    """Largest ('sigma') or smallest ('tau') operator-fixed homogeneous
    ideal of the cone pair, adjunction factors included."""
    u1 = scheme.trace_multiplier(pair)
    cmap = CartierMap(pair.e, u1)
    modulus = scheme.ideal if scheme.forms else None
    if which == "sigma":
        return descending_fixed_ideal(cmap, modulus, caps)
    if which == "tau":
        seed = pair.f if c is None else c
        return ascending_fixed_ideal(cmap, seed, modulus, caps)
    raise DomainError(f"unknown fixed-ideal kind {which!r}")


def stable_sections(scheme: ProjScheme, pair: PairDivisor, m: int,
                    which: str = "sigma", c: Optional[MultiPoly] = None,
                    caps: Caps = DEFAULT_CAPS) -> StableImageResult:
    """Stable image of the level-n trace maps inside the degree-m piece,
    detected by row-space equality of consecutive levels.

    For which='tau' the source pieces are pre-intersected with the graded
    test ideal of the cone pair.  The result does not depend on the level
    used to present the pair.
    """
    if m < 0:
        raise DomainError(f"target degree must be >= 0, got {m}")
    u1 = scheme.trace_multiplier(pair)
    modulus = scheme.ideal
    source = None
    if which == "tau":
        source = graded_fixed_ideal(scheme, pair, "tau", c, caps).ideal
    elif which != "sigma":
        raise DomainError(f"unknown subsystem kind {which!r}")
    previous = None
    source_rows: List[int] = []
    steps: List[TraceStep] = []
    for level in range(1, caps.image_levels + 1):
        steps.append(_trace_step(u1, pair.e, level, m))
        current, nrows = _level_image(modulus, u1, pair.e, level, m, source, caps)
        source_rows.append(nrows)
        if previous is not None and current == previous:
            return StableImageResult(space=current, level=level, steps=steps,
                                     source_rows=source_rows)
        previous = current
    raise ResourceError("image_levels", caps.image_levels,
                        "trace images did not stabilize")


# -- positional checks ---------------------------------------------------


def is_base_point_free(space: GradedSubspace, caps: Caps = DEFAULT_CAPS) -> bool:
    """Whether the subspace has empty common zero locus on the scheme:
    the saturation of (scheme ideal + lifts) must be the unit ideal."""
    if space.dim == 0:
        raise DomainError("base-point check on the zero subspace")
    ring = space.ring
    total = Ideal(ring, space.polys()) + space.modulus
    return total.saturate(Ideal.irrelevant(ring), caps).is_unit


@dataclass
class SeparationFailure:
    kind: str  # 'base-point' | 'pair' | 'tangent'
    points: tuple
    detail: str = ""


@dataclass
class SeparationReport:
    extension_degree: int
    points_on_scheme: int
    pairs_checked: int
    tangents_checked: int
    failures: List[SeparationFailure]

    @property
    def ok(self) -> bool:
        return not self.failures

    def coverage(self) -> str:
        return (f"separation verified on rational points of degree "
                f"<= {self.extension_degree} only; {self.points_on_scheme} "
                f"points, {self.pairs_checked} pairs, "
                f"{self.tangents_checked} tangent checks")


def separates(scheme: ProjScheme, space: GradedSubspace, ext_degree: int = 1,
              caps: Caps = DEFAULT_CAPS) -> SeparationReport:
    """Point and tangent separation of the linear system on a curve.

    Pairs of distinct points are sampled over F_{p^k} for the requested
    k; tangent directions are checked at rational points through the
    square of the point's ideal.  This is a partial, rational-point
    verification and the report says so.
    """
    from .extfield import ExtField, evaluate_poly, projective_points

    if not scheme.is_curve:
        raise DomainError("separation checks are defined for curves only")
    if ext_degree < 1 or ext_degree > caps.ext_degree:
        raise DomainError(
            f"extension degree must be in [1, {caps.ext_degree}]")
    if space.dim == 0:
        raise DomainError("separation check on the zero subspace")

    ring = scheme.ring
    fieldk = ExtField(ring.p, ext_degree)
    basis = space.polys()
    defining = scheme.ideal.generators

    points = []
    evals = []
    for P in projective_points(fieldk, ring.nvars):
        if all(evaluate_poly(h, P, fieldk).is_zero for h in defining):
            points.append(P)
            evals.append([evaluate_poly(s, P, fieldk) for s in basis])

    failures: List[SeparationFailure] = []

    def point_repr(P):
        return tuple(str(v) for v in P)

    for P, row in zip(points, evals):
        if all(v.is_zero for v in row):
            failures.append(SeparationFailure(
                "base-point", (point_repr(P),), "all sections vanish"))

    pairs_checked = 0
    npts = len(points)
    for i in range(npts):
        for j in range(i + 1, npts):
            pairs_checked += 1
            u, v = evals[i], evals[j]
            # rank 2 of the 2 x dim matrix: some 2x2 minor is nonzero
            separated = any(
                not (u[s] * v[t] - u[t] * v[s]).is_zero
                for s in range(len(u)) for t in range(s + 1, len(u)))
            if not separated and not all(x.is_zero for x in u):
                failures.append(SeparationFailure(
                    "pair", (point_repr(points[i]), point_repr(points[j]))))

    tangents_checked = 0
    rational = []
    for P in points:
        coords = []
        for v in P:
            val = v.value
            if not val.is_constant:
                break
            coords.append(val.constant_value())
        else:
            rational.append(tuple(coords))
    for coords in rational:
        tangents_checked += 1
        fat = _double_point_ideal(scheme, coords, caps)
        target_cols = _standard_monomials(fat, space.degree)
        target_dim = len(target_cols)
        if target_dim != 2:
            failures.append(SeparationFailure(
                "tangent", (tuple(map(str, coords)),),
                f"double-point piece has dimension {target_dim}"))
            continue
        image = space_from_polys(fat, space.degree, basis)
        if image.dim != 2:
            failures.append(SeparationFailure(
                "tangent", (tuple(map(str, coords)),),
                "sections do not surject onto the doubled point"))
    return SeparationReport(extension_degree=ext_degree,
                            points_on_scheme=npts,
                            pairs_checked=pairs_checked,
                            tangents_checked=tangents_checked,
                            failures=failures)


def rational_point_ideal(ring: PolyRing, coords: Sequence[int]) -> Ideal:
    """Homogeneous ideal of a rational projective point."""
    coords = [c % ring.p for c in coords]
    if len(coords) != ring.nvars or not any(coords):
        raise DomainError(f"bad projective point {coords}")
    gens = []
    for i in range(len(coords)):
        for j in range(i + 1, len(coords)):
            g = ring.gen(i).scale(coords[j]) - ring.gen(j).scale(coords[i])
            if not g.is_zero:
                gens.append(g)
    return Ideal(ring, gens)


def _double_point_ideal(scheme: ProjScheme, coords: Sequence[int],
                        caps: Caps) -> Ideal:
    point = rational_point_ideal(scheme.ring, coords)
    fat = scheme.ideal + point * point
    return fat.saturate(Ideal.irrelevant(scheme.ring), caps)


# -- global generation ----------------------------------------------------


def is_globally_generated(ideal: Ideal, m: int, caps: Caps = DEFAULT_CAPS) -> bool:
    """Whether the degree-m piece of a homogeneous ideal generates the
    associated sheaf: saturations of (degree-m piece) and of the ideal
    agree."""
    ring = ideal.ring
    irrelevant = Ideal.irrelevant(ring)
    piece = Ideal(ring, ideal.graded_generators_in_degree(m))
    return piece.saturate(irrelevant, caps) == ideal.saturate(irrelevant, caps)


def stable_sections_generate(scheme: ProjScheme, pair: PairDivisor, m: int,
                             which: str = "tau", c: Optional[MultiPoly] = None,
                             caps: Caps = DEFAULT_CAPS) -> bool:
    """Whether the stable subsystem alone generates the fixed-ideal twist:
    for a unit fixed ideal this is base-point-freeness of the subsystem,
    otherwise a saturation comparison restricted to the subsystem's lifts."""
    fixed = graded_fixed_ideal(scheme, pair, which, c, caps).ideal
    result = stable_sections(scheme, pair, m, which, c, caps)
    space = result.space
    ring = scheme.ring
    irrelevant = Ideal.irrelevant(ring)
    target = (fixed + scheme.ideal).saturate(irrelevant, caps)
    if target.is_unit:
        if space.dim == 0:
            return False
        return is_base_point_free(space, caps)
    generated = Ideal(ring, space.polys()) + scheme.ideal
    return generated.saturate(irrelevant, caps) == target


# -- degree bound for points on hypersurfaces ------------------------------


def projective_multiplicity(form: MultiPoly, point: Sequence[int]) -> int:
    """Multiplicity of a hypersurface at a rational projective point."""
    ring = form.ring
    p = ring.p
    coords = [c % p for c in point]
    if len(coords) != ring.nvars or not any(coords):
        raise DomainError(f"bad projective point {point}")
    pivot = max(i for i, c in enumerate(coords) if c)
    scale = pow(coords[pivot], -1, p)
    chart = form.dehomogenize(pivot)
    local = [None if i == pivot else (c * scale) % p
             for i, c in enumerate(coords)]
    return multiplicity(chart, local)


@dataclass
class DegreeBoundReport:
    delta: int
    witness: MultiPoly
    witness_degree: int
    pair: PairDivisor
    test_ideal: Ideal
    points_ideal: Ideal
    multiplicities: List[int]

    @property
    def ok(self) -> bool:
        return self.witness_degree <= self.delta


def degree_bound_pipeline(ring: PolyRing, points: Sequence[Sequence[int]],
                          form: MultiPoly, mult_threshold: int,
                          codim_bound: int,
                          caps: Caps = DEFAULT_CAPS) -> DegreeBoundReport:
    """Produce a low-degree hypersurface through a finite point set.

    Given a degree-d form with multiplicity >= l at every point of S and
    codimension bound e for S, the test ideal of the pair scaled by e/l
    lands inside I_S and its twist by floor(d*e/l) is globally generated,
    so a form of degree at most delta = floor(d*e/l) through S exists.
    The containment and existence checks are theorems; their failure
    raises TheoremViolationError.
    """
    if form.is_zero or not form.is_homogeneous():
        raise DomainError("the pipeline needs a nonzero homogeneous form")
    if mult_threshold < 1 or codim_bound < 1:
        raise DomainError("thresholds must be positive")
    if not points:
        raise DomainError("the point set must be non-empty")
    d = form.degree()
    p = ring.p

    mults = []
    offenders = []
    for P in points:
        mp = projective_multiplicity(form, P)
        mults.append(mp)
        if mp < mult_threshold:
            offenders.append((tuple(P), mp))
    if offenders:
        raise PreconditionError(
            "multiplicity below threshold at: " +
            ", ".join(f"{pt} (mult {mv})" for pt, mv in offenders))

    t = Fraction(codim_bound, mult_threshold)
    pair = None
    max_level = 1
    while p ** (max_level + 1) <= caps.frobenius_block:
        max_level += 1
    for E in range(1, max_level + 1):
        denom = p ** E - 1
        if (denom * t.numerator) % t.denominator == 0:
            pair = PairDivisor(form, denom * t.numerator // t.denominator, E)
            break
    if pair is None:
        # round the coefficient up; the containment only improves
        best = None
        for E in range(1, max_level + 1):
            denom = p ** E - 1
            a = -(-t.numerator * denom // t.denominator)  # ceil
            err = Fraction(a, denom) - t
            if best is None or err < best[0]:
                best = (err, a, E)
        pair = PairDivisor(form, best[1], best[2])

    tau_ideal = ascending_fixed_ideal(pair.cartier_map(),
                                      safe_test_element(pair), None, caps).ideal

    points_ideal = None
    for P in points:
        ip = rational_point_ideal(ring, P)
        points_ideal = ip if points_ideal is None else points_ideal.intersect(ip)

    if not tau_ideal.issubset(points_ideal):
        raise TheoremViolationError(
            "test ideal escapes the point ideal; multiplicity containment "
            "failed on admissible input")

    delta = (d * codim_bound) // mult_threshold
    saturated = tau_ideal.saturate(Ideal.irrelevant(ring), caps)
    witness = None
    for mdeg in range(delta + 1):
        piece = space_from_polys(Ideal.zero(ring), mdeg,
                                 saturated.graded_generators_in_degree(mdeg))
        if piece.dim > 0:
            witness = piece.polys()[0]
            break
    if witness is None:
        raise TheoremViolationError(
            f"no section of the test ideal in degree <= {delta}")
    return DegreeBoundReport(delta=delta, witness=witness,
                             witness_degree=witness.degree(), pair=pair,
                             test_ideal=tau_ideal, points_ideal=points_ideal,
                             multiplicities=mults)


# -- restriction to compatible centers -------------------------------------


def center_is_compatible(scheme: ProjScheme, pair: PairDivisor,
                         center: Ideal, caps: Caps = DEFAULT_CAPS) -> bool:
    """Compatibility of a center's cone ideal with the scheme's operator."""
    u1 = scheme.trace_multiplier(pair)
    total = center + scheme.ideal
    image = apply_cartier(CartierMap(pair.e, u1), total, caps) + scheme.ideal
    return image.issubset(total)


def restriction_is_surjective(scheme: ProjScheme, pair: PairDivisor,
                              center: Ideal, m: int,
                              caps: Caps = DEFAULT_CAPS) -> bool:
    """Whether the stable subsystem on X restricts onto the stable
    subsystem of the induced operator on a compatible center.

    Surjectivity is a theorem whenever the twist minus the pair's log
    divisor has positive degree, so False signals a bug rather than an
    admissible outcome.
    """
    if not center_is_compatible(scheme, pair, center, caps):
        raise PreconditionError("the center is not compatible with the pair")
    if m - scheme.pair_degree(pair) <= 0:
        raise PreconditionError(
            f"twist degree {m} does not dominate the pair degree "
            f"{scheme.pair_degree(pair)}")
    u1 = scheme.trace_multiplier(pair)
    on_x = stable_sections(scheme, pair, m, "sigma", None, caps).space

    center_modulus = center + scheme.ideal
    previous = None
    restricted = None
    for level in range(1, caps.image_levels + 1):
        current, _ = _level_image(center_modulus, u1, pair.e, level, m,
                                  None, caps)
        if previous is not None and current == previous:
            restricted = current
            break
        previous = current
    if restricted is None:
        raise ResourceError("image_levels", caps.image_levels,
                            "center images did not stabilize")
    image = space_from_polys(center_modulus, m, on_x.polys())
    return image == restricted
