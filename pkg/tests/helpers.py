"""Shared generators and independent oracles for the test suite."""

from __future__ import annotations

import itertools
from fractions import Fraction

from gradekit.abgroup import (
    FinGenAbGroup,
    Subgroup,
    solve_square,
    squares_and_two_torsion,
    subgroup_and_quotient,
)
from gradekit.bichar import Bicharacter, RootOfUnity, standard_pair
from gradekit.superlie import PSpec, ambient_even_spec
from gradekit.matgrade import (
    EmbeddedPairing,
    EvenAssocSpec,
    OddAssocGSpec,
    odd_existence_check,
)

TRIVIAL_BETA = Bicharacter(FinGenAbGroup(0, ()), ())


def embedded_standard_torus(h, free=0, extra=()):
    """Ambient group Z^free x (H x H^) x extra with the standard pairing.

    Returns (G, tgens, beta); tgens are the unit vectors of the H x H^
    coordinates.
    """
    h = tuple(h)
    if not h:
        return FinGenAbGroup(free, tuple(extra)), (), TRIVIAL_BETA
    _, beta = standard_pair(h)
    group = FinGenAbGroup(free, h + h + tuple(extra))
    tgens = tuple(group.unit(free + i) for i in range(2 * len(h)))
    return group, tgens, beta


def random_element(rng, group):
    coords = [rng.randint(-2, 2) for _ in range(group.free_rank)]
    coords += [rng.randrange(d) for d in group.torsion]
    return group.reduce(coords)


def random_even_spec(rng):
    """A random valid even spec with m + n <= 8."""
    h = rng.choice([(), (), (2,), (3,), (4,), (2, 2)])
    root = 1
    for x in h:
        root *= x
    max_blocks = max(2, 8 // root)
    k0 = rng.randint(1, max(1, max_blocks - 1))
    k1 = rng.randint(1, max(1, max_blocks - k0))
    free = rng.choice([0, 1])
    extra = rng.choice([(), (2,), (4,)])
    group, tgens, beta = embedded_standard_torus(h, free, extra)
    gamma0 = tuple(random_element(rng, group) for _ in range(k0))
    gamma1 = tuple(random_element(rng, group) for _ in range(k1))
    return EvenAssocSpec(group, tgens, beta, gamma0, gamma1)


def oracle_chi_and_a(group, t0, tbar_lifts, beta_bar):
    """Independent derivation of the canonical character and its square class.

    Mirrors the published rule: characters of T+ are enumerated as dual
    vectors against its smith basis in lexicographic order; the first one
    taking -1 at t0 is chosen.  Returns (chi, a).
    """
    _, gbar, theta = subgroup_and_quotient(group, [t0])
    bar = EmbeddedPairing(gbar, tuple(theta(t) for t in tbar_lifts), beta_bar)
    t_plus = bar.sub.preimage_under(theta)
    gens = t_plus.smith_gens
    t0_coords = t_plus.coords_of(t0)
    assert t0_coords is not None
    chosen = None
    for vec in itertools.product(*(range(o) for _, o in gens)):
        val = sum(Fraction(c * d, o) for c, d, (_, o) in zip(vec, t0_coords, gens))
        if val % 1 == Fraction(1, 2):
            chosen = vec
            break
    assert chosen is not None, "t0 is not separated by any character"

    def chi(x):
        coords = t_plus.coords_of(x)
        assert coords is not None
        return RootOfUnity(sum(Fraction(c * xc, o)
                               for c, xc, (_, o) in zip(chosen, coords, gens)))

    a_bar = None
    for cand in bar.sub.elements():
        if all(bar.value(cand, theta(s)) == chi(s) ** 2 for s, _ in gens):
            a_bar = cand
            break
    assert a_bar is not None
    a = next(x for x in t_plus.elements()
             if theta(x) == a_bar and chi(x).is_one())
    return chi, a


def random_odd_g_spec(rng, max_tries=200):
    """A random OddAssocG spec that passes the existence check, n <= 4."""
    for _ in range(max_tries):
        c = rng.choice([1, 2])
        h = rng.choice([(), (), (2,)])
        hsize = 1
        for x in h:
            hsize *= x
        k = rng.randint(1, max(1, 4 // hsize))
        extra = rng.choice([(), (2,), (4,), (3,)])
        tors = (2 * c,) + h + h + tuple(extra)
        group = FinGenAbGroup(0, tors)
        t0 = group.reduce((c,) + (0,) * (len(tors) - 1))
        lifts = tuple(group.unit(1 + i) for i in range(2 * len(h)))
        beta_bar = standard_pair(h)[1] if h else TRIVIAL_BETA
        try:
            if not odd_existence_check(group, t0, lifts, beta_bar):
                continue
        except ValueError:
            continue
        _, a = oracle_chi_and_a(group, t0, lifts, beta_bar)
        u0 = solve_square(group, a)
        if u0 is None:
            continue
        _, two_torsion = squares_and_two_torsion(group)
        shift = rng.choice(sorted(two_torsion.elements()))
        u = group.add(u0, shift)
        gamma = tuple(random_element(rng, group) for _ in range(k))
        return OddAssocGSpec(group, t0, lifts, beta_bar, u, gamma)
    raise RuntimeError("could not generate an odd spec")


def random_p_spec(rng):
    """A random valid P spec with n in {2, 3}."""
    if rng.random() < 0.5:
        h = ()
        k = rng.choice((3, 4))
    else:
        h = (2,)
        k = 2
    free = rng.choice((0, 1))
    extra = rng.choice(((), (2,), (3,)))
    group, tgens, beta = embedded_standard_torus(h, free, extra)
    gamma = tuple(random_element(rng, group) for _ in range(k))
    return PSpec(group, tgens, beta, gamma, random_element(rng, group))


def random_p_candidate_spec(rng):
    """An even spec with equal block counts over an elementary 2 support.

    Half the draws are ambient gradings of a valid P spec, the rest have
    independent block degrees and usually admit no restriction.
    """
    if rng.random() < 0.5:
        return ambient_even_spec(random_p_spec(rng))
    h = rng.choice(((), (2,)))
    k = 2 if h else rng.choice((3, 4))
    group, tgens, beta = embedded_standard_torus(h, rng.choice((0, 1)),
                                                 rng.choice(((), (2,), (4,))))
    gamma0 = tuple(random_element(rng, group) for _ in range(k))
    gamma1 = tuple(random_element(rng, group) for _ in range(k))
    return EvenAssocSpec(group, tgens, beta, gamma0, gamma1)
