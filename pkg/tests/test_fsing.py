"""Fixed-ideal theory of divisor pairs: chains, purity, Fedder,
multiplicity containment."""

import random
from fractions import Fraction

import pytest

from charp.cartier import apply_cartier, bracket_root
from charp.config import Caps
from charp.errors import (DomainError, PreconditionError, ResourceError,
                          TestElementError)
from charp.fsing import (PairDivisor, ascending_fixed_ideal, fedder_f_pure,
                         is_compatible, is_sharply_f_pure,
                         is_strongly_f_regular, multiplicity,
                         multiplicity_containment, point_ideal,
                         safe_test_element, sigma, tau, twist_identity)
from charp.ideal import Ideal
from charp.ring import PolyRing

from conftest import random_poly


def I(ring, *texts):
    return Ideal(ring, [ring.parse(t) for t in texts])


@pytest.fixture
def R5x():
    return PolyRing(("x",), 5)


@pytest.fixture
def R7xy():
    return PolyRing(("x", "y"), 7)


# -- pair plumbing -------------------------------------------------------------


def test_pair_validation(R5x):
    with pytest.raises(DomainError):
        PairDivisor(R5x.zero(), 1, 1)
    with pytest.raises(DomainError):
        PairDivisor(R5x.gen(0), -1, 1)
    with pytest.raises(DomainError):
        PairDivisor(R5x.gen(0), 1, 0)
    pair = PairDivisor(R5x.gen(0), 3, 1)
    assert pair.q == 5 and pair.coefficient == Fraction(3, 4)
    assert pair.multiplier() == R5x.parse("x^3")


def test_pair_rescaling_preserves_divisor(R5x):
    pair = PairDivisor(R5x.gen(0), 3, 1)
    double = pair.rescale(2)
    assert (double.a, double.e) == (3 * 6, 2)
    assert Fraction(double.a, double.q - 1) == pair.coefficient


# -- the non-F-pure ideal -------------------------------------------------------


def test_sigma_examples(R5x):
    x = R5x.gen(0)
    assert sigma(PairDivisor(x, 4, 1)).is_unit
    assert sigma(PairDivisor(x, 5, 1)) == I(R5x, "x")
    R2 = PolyRing(("x", "y"), 5)
    assert sigma(PairDivisor(R2.one(), 0, 1)).is_unit


def test_sigma_is_fixed_point(R7xy):
    rng = random.Random(211)
    for _ in range(20):
        f = random_poly(rng, R7xy, max_degree=3, nonzero=True)
        a = rng.randint(0, 8)
        pair = PairDivisor(f, a, 1)
        fixed = sigma(pair)
        assert apply_cartier(pair.cartier_map(), fixed) == fixed


def test_sigma_unit_iff_surjective_on_unit(R7xy):
    # apply(phi, (1)) = (1) exactly when the pair is sharply F-pure
    rng = random.Random(223)
    for _ in range(20):
        f = random_poly(rng, R7xy, max_degree=3, nonzero=True)
        pair = PairDivisor(f, rng.randint(0, 7), 1)
        first = apply_cartier(pair.cartier_map(), Ideal.unit(R7xy))
        assert first.is_unit == is_sharply_f_pure(pair)


def test_sigma_step_cap():
    ring = PolyRing(("x",), 5)
    with pytest.raises(ResourceError):
        sigma(PairDivisor(ring.gen(0), 5, 1), Caps(chain_steps=1))


# -- the test ideal --------------------------------------------------------------


def test_tau_examples(R5x, R7xy):
    assert tau(PairDivisor(R5x.gen(0), 4, 1)) == I(R5x, "x")
    cusp = R7xy.parse("x^2+y^3")
    assert tau(PairDivisor(cusp, 6, 1)) == I(R7xy, "x^2+y^3")
    assert tau(PairDivisor(cusp, 5, 1)) == I(R7xy, "x", "y")


def test_tau_brute_force_oracle(R7xy):
    # independent route: stable sum of single-shot level-n root images;
    # level 3 at p=7 needs a frobenius block above the default cap
    wide = Caps(frobenius_block=512)
    cusp = R7xy.parse("x^2+y^3")
    pair = PairDivisor(cusp, 5, 1)
    c = Ideal(R7xy, [cusp])
    total = c
    images = []
    for n in (1, 2, 3):
        exponent = 5 * (7 ** n - 1) // 6
        level_image = bracket_root(
            Ideal(R7xy, [cusp ** exponent * g for g in c.generators]), n,
            wide)
        images.append(level_image)
        total = total + level_image
    assert images[1] + images[0] + c == total  # level 3 added nothing
    assert total == tau(pair)
    assert total == I(R7xy, "x", "y")


def test_cusp_threshold_structure_across_characteristics():
    # the cusp's F-pure threshold is 5/6 when p = 1 mod 6 and
    # 5/6 - 1/(6p) otherwise; over F_5 that is 4/5, which level-2 pairs
    # bracket as 19/24 < 4/5 < 20/24
    R5 = PolyRing(("x", "y"), 5)
    cusp5 = R5.parse("x^2+y^3")
    assert tau(PairDivisor(cusp5, 19, 2)).is_unit
    assert tau(PairDivisor(cusp5, 20, 2)) == I(R5, "x", "y")
    assert tau(PairDivisor(cusp5, 3, 1)).is_unit
    R7 = PolyRing(("x", "y"), 7)
    cusp7 = R7.parse("x^2+y^3")
    assert tau(PairDivisor(cusp7, 4, 1)).is_unit       # 4/6 < 5/6
    assert tau(PairDivisor(cusp7, 5, 1)) == I(R7, "x", "y")


def test_tau_rejects_zero_seed(R5x):
    with pytest.raises(DomainError):
        tau(PairDivisor(R5x.gen(0), 4, 1), R5x.zero())


def test_tau_flags_bad_test_element(R5x):
    # coefficient 10/4 = 2.5: the chain from (x) stalls on (x) while the
    # image is (x^2), so x is not a test element
    pair = PairDivisor(R5x.gen(0), 10, 1)
    with pytest.raises(TestElementError):
        tau(pair, R5x.gen(0))
    assert tau(pair, safe_test_element(pair)) == I(R5x, "x^2")


def test_tau_is_least_fixed_ideal_containing_seed(R7xy):
    # against 20 harness-built fixed ideals containing the seed
    rng = random.Random(227)
    built = 0
    while built < 20:
        f = random_poly(rng, R7xy, max_degree=3, nonzero=True)
        a = rng.randint(0, 6)
        pair = PairDivisor(f, a, 1)
        cmap = pair.cartier_map()
        seed = f
        ideal = tau(pair, seed)
        extra = random_poly(rng, R7xy, max_degree=2, nonzero=True)
        bigger = ascending_fixed_ideal(cmap, seed, None).ideal
        enlarged = Ideal(R7xy, (seed, extra))
        # close the enlarged seed up to a fixed ideal
        current = enlarged
        for _ in range(64):
            nxt = current + apply_cartier(cmap, current)
            if nxt == current:
                break
            current = nxt
        assert apply_cartier(cmap, current).issubset(current)
        assert ideal.issubset(current)
        assert ideal.issubset(bigger) and bigger.issubset(ideal)
        built += 1


def test_tau_inside_sigma(R7xy):
    rng = random.Random(229)
    for _ in range(20):
        f = random_poly(rng, R7xy, max_degree=3, nonzero=True)
        a = rng.randint(0, 6)
        pair = PairDivisor(f, a, 1)
        assert tau(pair).issubset(sigma(pair))


def test_monotone_in_coefficient(R7xy):
    rng = random.Random(233)
    for _ in range(15):
        f = random_poly(rng, R7xy, max_degree=3, nonzero=True)
        a2 = rng.randint(0, 5)
        a1 = a2 + rng.randint(0, 6 - a2)
        small = PairDivisor(f, a1, 1)  # bigger divisor
        large = PairDivisor(f, a2, 1)
        assert tau(small).issubset(tau(large))
        assert sigma(small).issubset(sigma(large))


def test_level_normalization(R7xy):
    rng = random.Random(239)
    for _ in range(15):
        f = random_poly(rng, R7xy, max_degree=2, nonzero=True)
        a = rng.randint(0, 6)
        pair = PairDivisor(f, a, 1)
        assert sigma(pair) == sigma(pair.rescale(2))
        assert tau(pair) == tau(pair.rescale(2))


def test_purity_classification(R5x):
    x = R5x.gen(0)
    pair = PairDivisor(x, 4, 1)
    assert is_sharply_f_pure(pair) and not is_strongly_f_regular(pair)
    R2 = PolyRing(("x", "y"), 5)
    trivial = PairDivisor(R2.one(), 0, 1)
    assert is_sharply_f_pure(trivial) and is_strongly_f_regular(trivial)
    assert not is_sharply_f_pure(PairDivisor(x, 5, 1))


# -- twist rule -------------------------------------------------------------------


def test_twist_examples(R5x, R7xy):
    trivial = PairDivisor(R5x.one(), 0, 1)
    report = twist_identity(trivial, R5x.gen(0))
    assert report.holds and report.shifted == I(R5x, "x")
    assert twist_identity(trivial, R5x.one()).holds
    cusp_pair = PairDivisor(R7xy.parse("x^2+y^3"), 5, 1)
    report = twist_identity(cusp_pair, R7xy.gen(0))
    assert report.holds
    assert report.shifted == I(R7xy, "x^2", "x*y")


def test_twist_rejects_zero(R5x):
    with pytest.raises(DomainError):
        twist_identity(PairDivisor(R5x.gen(0), 1, 1), R5x.zero())


# -- Fedder ------------------------------------------------------------------------


def test_fedder_examples():
    R7 = PolyRing(("x", "y", "z"), 7)
    m7 = Ideal.irrelevant(R7)
    assert fedder_f_pure(I(R7, "x^3+y^3+z^3"), m7)
    R2 = PolyRing(("x", "y", "z"), 2)
    assert not fedder_f_pure(I(R2, "x^3+y^3+z^3"), Ideal.irrelevant(R2))
    for p in (2, 3, 5, 7):
        ring = PolyRing(("x", "y"), p)
        assert fedder_f_pure(I(ring, "x"), Ideal.irrelevant(ring))


def test_fedder_requires_containment():
    ring = PolyRing(("x", "y"), 5)
    with pytest.raises(DomainError):
        fedder_f_pure(I(ring, "x+1"), Ideal.irrelevant(ring))


def test_fedder_hypersurface_shortcut_agrees():
    # (h^[p] : h) = (h^(p-1)), so the general formula must match the
    # classical h^(p-1) membership test
    rng = random.Random(241)
    for p in (2, 3, 5):
        ring = PolyRing(("x", "y"), p)
        m = Ideal.irrelevant(ring)
        mp = m.bracket_power(1)
        for _ in range(10):
            h = random_poly(rng, ring, max_degree=3, nonzero=True)
            if not m.contains(h):
                continue
            direct = not mp.contains(h ** (p - 1))
            assert fedder_f_pure(Ideal(ring, [h]), m) == direct


def test_fedder_agrees_with_localized_purity():
    # sharp F-purity of (S, div h) at the origin equals Fedder's verdict
    rng = random.Random(251)
    checked = 0
    while checked < 20:
        p = rng.choice([2, 3, 5, 7])
        ring = PolyRing(("x", "y"), p)
        h = random_poly(rng, ring, max_degree=4, nonzero=True)
        m = Ideal.irrelevant(ring)
        if not m.contains(h):
            continue
        pair = PairDivisor(h, p - 1, 1)
        pure_at_origin = not sigma(pair).issubset(m)
        assert pure_at_origin == fedder_f_pure(Ideal(ring, [h]), m)
        checked += 1


# -- compatibility ------------------------------------------------------------------


def test_compatibility_examples():
    for p in (2, 3, 5):
        ring = PolyRing(("x", "y"), p)
        x, y = ring.gens()
        assert is_compatible(I(ring, "x"), PairDivisor(x, p - 1, 1))
        assert not is_compatible(I(ring, "x"), PairDivisor(ring.one(), 0, 1))
        assert is_compatible(Ideal.irrelevant(ring),
                             PairDivisor(x * y, p - 1, 1))


# -- multiplicity and the containment lemma -------------------------------------------


def test_multiplicity_examples(R7xy):
    assert multiplicity(R7xy.parse("x^2+y^3"), (0, 0)) == 2
    ring = PolyRing(("x", "y"), 5)
    assert multiplicity(ring.gen(0), (1, 0)) == 0
    assert multiplicity(ring.parse("(x-1)^3"), (1, 0)) == 3
    # non-closed point: order along the x-axis
    R3 = PolyRing(("x", "y", "z"), 5)
    assert multiplicity(R3.parse("x^2 + z*y^2"), (0, 0, None)) == 2


def test_multiplicity_input_validation(R7xy):
    with pytest.raises(DomainError):
        multiplicity(R7xy.zero(), (0, 0))
    with pytest.raises(DomainError):
        multiplicity(R7xy.gen(0), (0,))
    with pytest.raises(DomainError):
        multiplicity(R7xy.gen(0), (None, None))
    from charp.errors import UnsupportedInputError
    with pytest.raises(UnsupportedInputError):
        multiplicity(R7xy.gen(0), (0.5, 0))


def test_containment_example():
    ring = PolyRing(("x", "y"), 5)
    pair = PairDivisor(ring.parse("x^2+y^2+x*y"), 4, 1)
    report = multiplicity_containment(pair, (0, 0), 2)
    assert report.holds and report.pair_multiplicity == 2


def test_containment_precondition():
    ring = PolyRing(("x", "y"), 5)
    pair = PairDivisor(ring.gen(0), 4, 1)  # multiplicity 1 at origin
    with pytest.raises(PreconditionError):
        multiplicity_containment(pair, (0, 0), 2)


def test_point_ideal_shapes():
    ring = PolyRing(("x", "y", "z"), 5)
    closed = point_ideal(ring, (1, 2, 0))
    assert closed == I(ring, "x-1", "y-2", "z")
    line = point_ideal(ring, (0, 0, None))
    assert line == I(ring, "x", "y")
