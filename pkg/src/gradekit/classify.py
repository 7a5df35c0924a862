"""Isomorphism deciders and fine-grading enumerators.

Two gradings of a family are isomorphic exactly when their division
data agree and some shift g carries one block-degree coset multiset
onto the other, g Xi(gamma) = Xi(gamma').  That reduces deciding to a
finite search: any valid g must carry the first coset of the left
multiset onto some coset of the right one, so the differences of coset
representatives exhaust the candidates.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from math import gcd
from typing import Optional, Union

from .abgroup import Coords, FinGenAbGroup, Subgroup
from .bichar import Bicharacter, beta_isomorphism, standard_pair
from .matgrade import (
    EmbeddedPairing,
    EvenAssocSpec,
    OddAssocGSpec,
    OddAssocTSpec,
    ParityExtension,
    build_matrix_model,
    build_odd_from_G,
    validate_spec,
    xi_multiset,
)
from .superlie import PSpec, superadjoint_spec, validate_p_spec

TRIVIAL_BETA = Bicharacter(FinGenAbGroup(0, ()), ())

OddSpec = Union[OddAssocTSpec, OddAssocGSpec]


@dataclass(frozen=True)
class IsoWitness:
    """Shift (plus optional block swap and sign twist) realizing an
    isomorphism of gradings."""

    g: Coords
    swap: bool = False
    delta: int = 1


def _same_division_data(p1: EmbeddedPairing, p2: EmbeddedPairing) -> bool:
    """T = T' as subgroups of the ambient group and beta = beta' on it."""
    if p1.sub != p2.sub:
        return False
    gens = [g for g, _ in p1.sub.smith_gens]
    return all(p1.value(x, y) == p2.value(x, y) for x in gens for y in gens)


def iso_even_assoc(s1: EvenAssocSpec, s2: EvenAssocSpec) -> Optional[IsoWitness]:
    """Witness that two even gradings on M(m,n) are isomorphic, or None.

    Requires equal (T, beta) and a shift matching both block-degree
    multisets; when the two sides of the matrix have equal size the
    swapped matching is also allowed.
    """
    s1, s2 = validate_spec(s1), validate_spec(s2)
    group = s1.group
    if group != s2.group:
        raise ValueError("specs live over different ambient groups")
    p1 = EmbeddedPairing(group, s1.tgens, s1.beta)
    p2 = EmbeddedPairing(group, s2.tgens, s2.beta)
    if not _same_division_data(p1, p2):
        return None
    tsub = p1.sub
    xi10 = xi_multiset(group, tsub, s1.gamma0)
    xi11 = xi_multiset(group, tsub, s1.gamma1)
    xi20 = xi_multiset(group, tsub, s2.gamma0)
    xi21 = xi_multiset(group, tsub, s2.gamma1)
    base = xi10.reps()[0]
    for rep in xi20.reps():
        g = group.sub(rep, base)
        if xi10.shift(g) == xi20 and xi11.shift(g) == xi21:
            return IsoWitness(g)
    if len(s1.gamma0) == len(s1.gamma1):
        for rep in xi21.reps():
            g = group.sub(rep, base)
            if xi10.shift(g) == xi21 and xi11.shift(g) == xi20:
                return IsoWitness(g, swap=True)
    return None


def _as_t_variant(spec: OddSpec) -> OddAssocTSpec:
    spec = validate_spec(spec)
    if isinstance(spec, OddAssocGSpec):
        spec = validate_spec(build_odd_from_G(spec))
    return spec


def _even_support_part(group: FinGenAbGroup, pairing: EmbeddedPairing) -> Subgroup:
    """T cap G: the even-degree part of the support, inside the base group."""
    members = [t[:-1] for t in pairing.sub.elements() if t[-1] % 2 == 0]
    return Subgroup(group, members)


def iso_odd_assoc(s1: OddSpec, s2: OddSpec) -> Optional[IsoWitness]:
    """Witness that two odd gradings on M(n,n) are isomorphic, or None.

    Either variant is accepted; G-variant data is converted first, which
    folds the parity element, the quotient pairing and the square root u
    into the support subgroup of G x Z/2 and its bicharacter.
    """
    s1, s2 = _as_t_variant(s1), _as_t_variant(s2)
    group = s1.group
    if group != s2.group:
        raise ValueError("specs live over different ambient groups")
    ext = ParityExtension(group)
    p1 = EmbeddedPairing(ext.group, s1.tgens, s1.beta)
    p2 = EmbeddedPairing(ext.group, s2.tgens, s2.beta)
    if not _same_division_data(p1, p2):
        return None
    if len(s1.gamma) != len(s2.gamma):
        return None
    teven = _even_support_part(group, p1)
    xi1 = xi_multiset(group, teven, s1.gamma)
    xi2 = xi_multiset(group, teven, s2.gamma)
    base = xi1.reps()[0]
    for rep in xi2.reps():
        g = group.sub(rep, base)
        if xi1.shift(g) == xi2:
            return IsoWitness(g)
    return None


def iso_lie_typeI(s1, s2, kind: Optional[str] = None) -> Optional[IsoWitness]:
    """Isomorphism of the induced gradings on the special linear Lie
    superalgebra: the associative test, run for both signs delta.

    delta = -1 composes with the superadjoint, which inverts the
    bicharacter and all degree data.
    """
    even = isinstance(s1, EvenAssocSpec)
    if kind is not None and kind != ("even" if even else "odd"):
        raise ValueError(f"kind {kind!r} does not match the spec types")
    decider = iso_even_assoc if even else iso_odd_assoc
    witness = decider(s1, s2)
    if witness is not None:
        return witness
    witness = decider(superadjoint_spec(s1), s2)
    if witness is not None:
        return IsoWitness(witness.g, witness.swap, -1)
    return None


def iso_P(s1: PSpec, s2: PSpec) -> Optional[IsoWitness]:
    """Witness that two periplectic gradings are isomorphic, or None.

    Beyond the shift on the block-degree multiset, the witness must
    relate the corner shifts by 2g + g0 = g0'.  Squares are constant on
    cosets of an elementary 2-group, so one representative per matching
    coset decides.
    """
    s1, s2 = validate_p_spec(s1), validate_p_spec(s2)
    group = s1.group
    if group != s2.group:
        raise ValueError("specs live over different ambient groups")
    p1 = EmbeddedPairing(group, s1.tgens, s1.beta)
    p2 = EmbeddedPairing(group, s2.tgens, s2.beta)
    if not _same_division_data(p1, p2):
        return None
    if len(s1.gamma) != len(s2.gamma):
        return None
    tsub = p1.sub
    xi1 = xi_multiset(group, tsub, s1.gamma)
    xi2 = xi_multiset(group, tsub, s2.gamma)
    base = xi1.reps()[0]
    for rep in xi2.reps():
        g = group.sub(rep, base)
        if xi1.shift(g) != xi2:
            continue
        if group.add(group.scale(2, g), s1.g0) == s2.g0:
            return IsoWitness(g)
    return None


# ---------------------------------------------------------------------------
# fine gradings


@dataclass(frozen=True)
class FineGradingDescriptor:
    """One fine grading up to equivalence.

    h lists cyclic factor orders of the group H whose double H x H^
    carries the division pairing; blocks are the module block counts;
    t0 is the parity-defining involution (odd family only).  spec is a
    ready-to-build grading spec over an ambient presentation of the
    universal group.
    """

    family: str                      # 'even' | 'odd' | 'p'
    h: tuple[int, ...]
    blocks: tuple[int, ...]
    t0: Optional[Coords]
    universal: FinGenAbGroup
    spec: object


def _partitions(n: int) -> list[tuple[int, ...]]:
    if n == 0:
        return [()]
    out = []

    def rec(remaining, largest, acc):
        if remaining == 0:
            out.append(tuple(acc))
            return
        for part in range(min(remaining, largest), 0, -1):
            rec(remaining - part, part, acc + [part])

    rec(n, n, [])
    return out


def abelian_groups_of_order(order: int) -> list[tuple[int, ...]]:
    """All abelian groups of the given order, each as an ascending tuple
    of prime-power cyclic factors."""
    if order < 1:
        raise ValueError("order must be positive")
    factors = []
    rest = order
    p = 2
    while p * p <= rest:
        if rest % p == 0:
            e = 0
            while rest % p == 0:
                rest //= p
                e += 1
            factors.append((p, e))
        p += 1
    if rest > 1:
        factors.append((rest, 1))
    per_prime = [[tuple(p ** part for part in parts) for parts in _partitions(e)]
                 for p, e in factors]
    out = []
    for combo in itertools.product(*per_prime):
        cyclic = tuple(sorted(x for block in combo for x in block))
        out.append(cyclic)
    return sorted(out)


def _divisors(n: int) -> list[int]:
    return [d for d in range(1, n + 1) if n % d == 0]


def _torus_spec_parts(h: tuple[int, ...], free_rank: int):
    """Ambient Z^free x (H x H^) with unit-vector support generators."""
    if h:
        _, beta = standard_pair(h)
        group = FinGenAbGroup(free_rank, h + h)
        tgens = tuple(group.unit(free_rank + i) for i in range(2 * len(h)))
    else:
        beta = TRIVIAL_BETA
        group = FinGenAbGroup(free_rank, ())
        tgens = ()
    return group, tgens, beta


def enumerate_even_fine(m: int, n: int) -> list[FineGradingDescriptor]:
    """Fine even gradings on M(m,n), one per divisor ell of gcd(m,n) and
    abelian group H of order ell."""
    if m < 1 or n < 1:
        raise ValueError("block sizes must be positive")
    out = []
    for ell in _divisors(gcd(m, n)):
        k0, k1 = m // ell, n // ell
        for h in abelian_groups_of_order(ell):
            rank = k0 + k1 - 1
            group, tgens, beta = _torus_spec_parts(h, rank)
            gamma = (group.zero(),) + tuple(group.unit(i) for i in range(rank))
            spec = EvenAssocSpec(group, tgens, beta, gamma[:k0], gamma[k0:])
            universal = FinGenAbGroup(
                rank, FinGenAbGroup(0, h + h).invariant_factors())
            out.append(FineGradingDescriptor("even", h, (k0, k1), None,
                                             universal, spec))
    return out


def _involution_orbits(beta: Bicharacter) -> list[Coords]:
    """Representatives of the pairing-automorphism orbits of order-2
    elements, smallest representative first."""
    group = beta.domain
    zero = group.zero()
    involutions = sorted(x for x in group.elements()
                         if x != zero and group.scale(2, x) == zero)
    reps: list[Coords] = []
    for x in involutions:
        if any(beta_isomorphism(beta, beta, [(rep, x)]) is not None
               for rep in reps):
            continue
        reps.append(x)
    return reps


def enumerate_odd_fine(n: int) -> list[FineGradingDescriptor]:
    """Fine odd gradings on M(n,n): ell | n, H of order 2*ell, and one
    parity involution t0 per automorphism orbit of (H x H^, beta)."""
    if n < 1:
        raise ValueError("n must be positive")
    out = []
    for ell in _divisors(n):
        k = n // ell
        for h in abelian_groups_of_order(2 * ell):
            t_group, beta = standard_pair(h)
            for t0 in _involution_orbits(beta):
                group, _, _ = _torus_spec_parts(h, k - 1)
                ext = ParityExtension(group)
                free = k - 1
                tgens = []
                for i in range(2 * len(h)):
                    s = t_group.unit(i)
                    parity = 0 if beta.value(t0, s).is_one() else 1
                    tgens.append(ext.lift(group.unit(free + i), parity))
                gamma = (group.zero(),) + tuple(group.unit(i)
                                                for i in range(free))
                spec = OddAssocTSpec(group, tuple(tgens), beta, gamma)
                universal = FinGenAbGroup(
                    free, FinGenAbGroup(0, h + h).invariant_factors())
                out.append(FineGradingDescriptor("odd", h, (k,), t0,
                                                 universal, spec))
    return out


def enumerate_P_fine(n: int) -> list[FineGradingDescriptor]:
    """Fine gradings on P(n): one per ell with 2^ell dividing n + 1."""
    if n < 2:
        raise ValueError("P(n) needs n >= 2")
    out = []
    ell = 0
    while (n + 1) % (2 ** ell) == 0:
        k = (n + 1) // 2 ** ell
        h = (2,) * ell
        group, tgens, beta = _torus_spec_parts(h, k + 1)
        g0 = group.unit(0)
        gamma = tuple(group.unit(1 + i) for i in range(k))
        spec = PSpec(group, tgens, beta, gamma, g0)
        universal = FinGenAbGroup(k, h + h)
        out.append(FineGradingDescriptor("p", h, (k,), None, universal, spec))
        ell += 1
    return out
