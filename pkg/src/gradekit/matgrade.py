"""Gradings on the matrix superalgebra M(m,n) by abelian groups.

A grading is specified by a finite subgroup T of the grading group (or
of its parity extension G# = G x Z/2), a nondegenerate alternating
bicharacter on T, and a tuple of block degrees.  This module builds the
explicit matrix models, verifies them, coarsens them, converts between
the two descriptions of gradings with odd support, and computes
universal grading groups.

Coordinates: elements of G# carry the parity bit as the last
coordinate.  Subgroup generators handed to a spec must be independent
(the listed generators map isomorphically onto the subgroup they
generate); every constructor here emits that form.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, replace
from fractions import Fraction
from typing import Iterable, Optional, Union

from .abgroup import (
    Coords,
    FinGenAbGroup,
    GroupHom,
    Subgroup,
    coordinates_in_basis,
    coset_canonical_rep,
    finitely_presented_quotient,
    hermite_normal_form,
    squares_and_two_torsion,
    subgroup_and_quotient,
)
from .bichar import Bicharacter, RootOfUnity
from .graddiv import MonomialMatrix, StandardRealization


class ParityExtension:
    """G x Z/2 with the parity bit appended as the last coordinate."""

    def __init__(self, base: FinGenAbGroup):
        self.base = base
        self.group = FinGenAbGroup(base.free_rank, base.torsion + (2,))

    def embed(self, g: Coords) -> Coords:
        return self.group.reduce(tuple(self.base.reduce(g)) + (0,))

    def lift(self, g: Coords, bit: int) -> Coords:
        return self.group.reduce(tuple(self.base.reduce(g)) + (bit,))

    def base_part(self, x: Coords) -> Coords:
        return self.base.reduce(x[:-1])

    def bit(self, x: Coords) -> int:
        return x[-1] % 2

    def extend_hom(self, alpha: GroupHom) -> GroupHom:
        """alpha x id on the parity bit."""
        if alpha.source != self.base:
            raise ValueError("homomorphism does not start at the base group")
        target_ext = ParityExtension(alpha.target)
        images = [target_ext.embed(im) for im in alpha.images]
        images.append(target_ext.lift(alpha.target.zero(), 1))
        return GroupHom(self.group, target_ext.group, tuple(images))


class EmbeddedPairing:
    """A bicharacter on a finite subgroup T of an ambient group.

    The bicharacter is stored on an abstract group with one coordinate
    per listed generator; the generators must be independent so that
    values transfer to T unambiguously.
    """

    def __init__(self, ambient: FinGenAbGroup, gens: tuple[Coords, ...],
                 beta: Bicharacter):
        if beta.domain.rank != len(gens):
            raise ValueError("one generator per bicharacter coordinate required")
        self.ambient = ambient
        self.gens = tuple(ambient.reduce(g) for g in gens)
        self.beta = beta
        self.hom = GroupHom(beta.domain, ambient, self.gens)
        self.sub = Subgroup(ambient, self.gens)
        self._coord_cache: dict[Coords, Coords] = {}

    def check(self) -> None:
        """Validate the pairing: alternating, independent generators, nondegenerate."""
        self.beta.validate()
        kernel = Subgroup(self.ambient, []).preimage_under(self.hom)
        if kernel.order() != 1:
            raise ValueError("subgroup generators are not independent")
        if not self.beta.is_nondegenerate():
            raise ValueError("bicharacter is degenerate")

    def abstract_coords(self, x: Coords) -> Coords:
        x = self.ambient.reduce(x)
        got = self._coord_cache.get(x)
        if got is None:
            orders = list(self.beta.domain.torsion)
            got = coordinates_in_basis(self.ambient, list(self.gens), orders, x)
            if got is None:
                raise ValueError(f"{x} is not in the support subgroup")
            self._coord_cache[x] = got
        return got

    def push(self, dom: Coords) -> Coords:
        return self.hom.apply(dom)

    def value(self, x: Coords, y: Coords) -> RootOfUnity:
        return self.beta.value(self.abstract_coords(x), self.abstract_coords(y))

    def contains(self, x: Coords) -> bool:
        return self.sub.contains(x)


# ---------------------------------------------------------------------------
# specs


@dataclass(frozen=True)
class EvenAssocSpec:
    """Even grading on M(m,n): T inside G, block degrees split by parity."""

    group: FinGenAbGroup
    tgens: tuple[Coords, ...]
    beta: Bicharacter
    gamma0: tuple[Coords, ...]
    gamma1: tuple[Coords, ...]


@dataclass(frozen=True)
class OddAssocTSpec:
    """Odd grading on M(n,n): T inside G# with odd elements, degrees in G#."""

    group: FinGenAbGroup
    tgens: tuple[Coords, ...]
    beta: Bicharacter
    gamma: tuple[Coords, ...]


@dataclass(frozen=True)
class OddAssocGSpec:
    """Odd grading described inside G itself.

    t0 has order 2; tbar_gens are lifts in G of generators of a subgroup
    of G/<t0> carrying beta_bar; u squares to the element derived from
    the canonical character.
    """

    group: FinGenAbGroup
    t0: Coords
    tbar_gens: tuple[Coords, ...]
    beta_bar: Bicharacter
    u: Coords
    gamma: tuple[Coords, ...]


GradingSpec = Union[EvenAssocSpec, OddAssocTSpec, OddAssocGSpec]


def validate_spec(spec: GradingSpec) -> GradingSpec:
    """Check a spec and return it with all coordinates reduced."""
    if isinstance(spec, EvenAssocSpec):
        g = spec.group
        out = EvenAssocSpec(g,
                            tuple(g.reduce(t) for t in spec.tgens),
                            spec.beta,
                            tuple(g.reduce(x) for x in spec.gamma0),
                            tuple(g.reduce(x) for x in spec.gamma1))
        if not out.gamma0 or not out.gamma1:
            raise ValueError("both block-degree tuples must be nonempty")
        EmbeddedPairing(g, out.tgens, out.beta).check()
        return out
    if isinstance(spec, OddAssocTSpec):
        g = spec.group
        ext = ParityExtension(g)
        out = OddAssocTSpec(g,
                            tuple(ext.group.reduce(t) for t in spec.tgens),
                            spec.beta,
                            tuple(g.reduce(x) for x in spec.gamma))
        if not out.gamma:
            raise ValueError("the block-degree tuple must be nonempty")
        pairing = EmbeddedPairing(ext.group, out.tgens, out.beta)
        pairing.check()
        if all(ext.bit(t) == 0 for t in out.tgens):
            raise ValueError("support has no odd elements; use an even spec")
        parity_element(out)
        return out
    if isinstance(spec, OddAssocGSpec):
        g = spec.group
        out = OddAssocGSpec(g, g.reduce(spec.t0),
                            tuple(g.reduce(t) for t in spec.tbar_gens),
                            spec.beta_bar, g.reduce(spec.u),
                            tuple(g.reduce(x) for x in spec.gamma))
        if not out.gamma:
            raise ValueError("the block-degree tuple must be nonempty")
        build_odd_from_G(out)
        return out
    raise TypeError(f"not a grading spec: {type(spec).__name__}")


# ---------------------------------------------------------------------------
# coset multisets


@dataclass(frozen=True)
class CosetMultiset:
    """Multiset of cosets of a finite subgroup, keyed by canonical reps."""

    group: FinGenAbGroup
    sub: Subgroup
    counts: tuple[tuple[Coords, int], ...]

    @classmethod
    def from_tuple(cls, group: FinGenAbGroup, sub: Subgroup,
                   gamma: Iterable[Coords]) -> "CosetMultiset":
        acc: dict[Coords, int] = {}
        for g in gamma:
            rep = coset_canonical_rep(group, sub, g)
            acc[rep] = acc.get(rep, 0) + 1
        return cls(group, sub, tuple(sorted(acc.items())))

    def shift(self, g: Coords) -> "CosetMultiset":
        acc = {coset_canonical_rep(self.group, self.sub, self.group.add(g, rep)): c
               for rep, c in self.counts}
        return CosetMultiset(self.group, self.sub, tuple(sorted(acc.items())))

    def reps(self) -> tuple[Coords, ...]:
        return tuple(rep for rep, _ in self.counts)


def xi_multiset(group: FinGenAbGroup, sub: Subgroup,
                gamma: Iterable[Coords]) -> CosetMultiset:
    """The multiset of cosets hit by the block-degree tuple."""
    return CosetMultiset.from_tuple(group, sub, gamma)


# ---------------------------------------------------------------------------
# matrix models


@dataclass(frozen=True)
class BasisElement:
    """One element E_ij (x) X_t of a model, with its bookkeeping."""

    i: int
    j: int
    t: Coords          # ambient coordinates (G for even, G# for odd)
    t_abs: Coords      # coordinates in the bicharacter domain
    degree: Coords     # in the model's degree group
    parity: int
    z_degree: int      # block degree in the canonical Z-grading (even models)


class GradedMatrixModel:
    """Explicit homogeneous basis of M(m,n) with exact product structure."""

    def __init__(self, kind, base_group, degree_group, sizes, basis, pairing,
                 realization, eps_support, partner, parity_coords):
        self.kind = kind                      # 'even' | 'odd'
        self.base_group = base_group          # G
        self.degree_group = degree_group      # G or G x Z/2
        self.sizes = sizes                    # (m, n)
        self.basis: tuple[BasisElement, ...] = basis
        self.pairing: EmbeddedPairing = pairing
        self.realization: StandardRealization = realization
        self.eps_support: tuple[int, ...] = eps_support
        self.partner: dict[int, int] = partner
        self.parity_coords = parity_coords    # u0 in G# for odd models, else None
        self.index = {(b.i, b.j, b.t): n for n, b in enumerate(self.basis)}

    def base_degree(self, elem: BasisElement) -> Coords:
        if self.kind == "even":
            return elem.degree
        return self.base_group.reduce(elem.degree[:-1])

    def support(self) -> tuple[Coords, ...]:
        return tuple(sorted({self.base_degree(b) for b in self.basis}))

    def dimension_table(self) -> dict[tuple[Coords, int], int]:
        """Dimension of each (base degree, parity) component."""
        out: dict[tuple[Coords, int], int] = {}
        for b in self.basis:
            key = (self.base_degree(b), b.parity)
            out[key] = out.get(key, 0) + 1
        return out


def _even_model(spec: EvenAssocSpec) -> GradedMatrixModel:
    g = spec.group
    pairing = EmbeddedPairing(g, spec.tgens, spec.beta)
    real = StandardRealization(spec.beta)
    d = real.size
    gamma = spec.gamma0 + spec.gamma1
    k0 = len(spec.gamma0)
    sizes = (k0 * d, len(spec.gamma1) * d)
    dom_elems = sorted(spec.beta.domain.elements())
    basis = []
    for i, gi in enumerate(gamma):
        for j, gj in enumerate(gamma):
            side_i, side_j = int(i >= k0), int(j >= k0)
            for t_abs in dom_elems:
                t = pairing.push(t_abs)
                degree = g.add(g.sub(gi, gj), t)
                basis.append(BasisElement(i, j, t, t_abs, degree,
                                          side_i ^ side_j, side_i - side_j))
    eps = tuple(n for n, b in enumerate(basis)
                if b.i == b.j and b.i < k0 and not any(b.t_abs))
    return GradedMatrixModel("even", g, g, sizes, tuple(basis), pairing,
                             real, eps, {}, None)


def _odd_model(spec: OddAssocTSpec) -> GradedMatrixModel:
    g = spec.group
    ext = ParityExtension(g)
    pairing = EmbeddedPairing(ext.group, spec.tgens, spec.beta)
    real = StandardRealization(spec.beta)
    d = real.size
    if (len(spec.gamma) * d) % 2:
        raise ValueError("matrix size is odd; support cannot be odd")
    half = len(spec.gamma) * d // 2
    t0 = parity_element(spec)
    u0 = ext.embed(t0)
    u0_abs = pairing.abstract_coords(u0)
    dom = spec.beta.domain
    dom_elems = sorted(dom.elements())
    basis = []
    for i, gi in enumerate(spec.gamma):
        for j, gj in enumerate(spec.gamma):
            block = ext.embed(g.sub(gi, gj))
            for t_abs in dom_elems:
                t = pairing.push(t_abs)
                degree = ext.group.add(block, t)
                basis.append(BasisElement(i, j, t, t_abs, degree,
                                          ext.bit(t), 0))
    index = {(b.i, b.j, b.t_abs): n for n, b in enumerate(basis)}
    partner = {}
    for n, b in enumerate(basis):
        partner[n] = index[(b.i, b.j, dom.add(b.t_abs, u0_abs))]
    eps = tuple(n for n, b in enumerate(basis)
                if b.i == b.j and (not any(b.t_abs) or b.t_abs == u0_abs))
    return GradedMatrixModel("odd", g, ext.group, (half, half), tuple(basis),
                             pairing, real, eps, partner, u0)


def build_matrix_model(spec: GradingSpec) -> GradedMatrixModel:
    spec = validate_spec(spec)
    if isinstance(spec, EvenAssocSpec):
        return _even_model(spec)
    if isinstance(spec, OddAssocTSpec):
        return _odd_model(spec)
    return _odd_model(build_odd_from_G(spec))


def coarsen(model: GradedMatrixModel, alpha: GroupHom) -> GradedMatrixModel:
    """Relabel all degrees through a homomorphism out of the base group."""
    if alpha.source != model.base_group:
        raise ValueError("homomorphism does not start at the grading group")
    if model.kind == "even":
        degree_group = alpha.target
        remap = alpha.apply
    else:
        ext = ParityExtension(model.base_group)
        alpha_ext = ext.extend_hom(alpha)
        degree_group = alpha_ext.target
        remap = alpha_ext.apply
    basis = tuple(replace(b, degree=remap(b.degree)) for b in model.basis)
    out = GradedMatrixModel(model.kind, alpha.target, degree_group, model.sizes,
                            basis, model.pairing, model.realization,
                            model.eps_support, model.partner,
                            remap(model.parity_coords) if model.parity_coords is not None else None)
    return out


@dataclass
class GradingReport:
    ok: bool
    failures: list[str]
    support: tuple[Coords, ...]
    supp_even: tuple[Coords, ...]
    supp_odd: tuple[Coords, ...]


def verify_grading(model: GradedMatrixModel) -> GradingReport:
    """Multiply out every compatible basis pair and check degree bookkeeping."""
    failures = []
    dg = model.degree_group
    dom = model.pairing.beta.domain
    by_row: dict[int, list[BasisElement]] = {}
    for b in model.basis:
        by_row.setdefault(b.i, []).append(b)
    for x in model.basis:
        for y in by_row.get(x.j, ()):
            prod_abs = dom.add(x.t_abs, y.t_abs)
            mx = model.realization.matrix(x.t_abs)
            my = model.realization.matrix(y.t_abs)
            sigma = (mx * my).proportionality(model.realization.matrix(prod_abs))
            if sigma is None or sigma.magnitude != 1:
                failures.append(f"product of X_{x.t_abs} and X_{y.t_abs} "
                                "is not a root multiple of the expected basis matrix")
                continue
            key = (x.i, y.j, model.pairing.push(prod_abs))
            target = model.basis[model.index[key]]
            want = dg.add(x.degree, y.degree)
            if target.degree != want:
                failures.append(f"degree of {(x.i, x.j, x.t)} * {(y.i, y.j, y.t)} "
                                f"is {target.degree}, expected {want}")
            if target.parity != (x.parity + y.parity) % 2:
                failures.append(f"parity of {(x.i, x.j, x.t)} * {(y.i, y.j, y.t)} "
                                "is not additive")
    support = model.support()
    supp_even = tuple(sorted({b.degree for b in model.basis if b.parity == 0}))
    supp_odd = tuple(sorted({b.degree for b in model.basis if b.parity == 1}))
    return GradingReport(not failures, failures, support, supp_even, supp_odd)


# ---------------------------------------------------------------------------
# parity elements and the odd <-> G-description conversion


def _bit_subgroup(pairing: EmbeddedPairing, ext: ParityExtension) -> Subgroup:
    """The bit-0 part of the support, as a subgroup of the abstract domain."""
    dom = pairing.beta.domain
    z2 = FinGenAbGroup(0, (2,))
    bits = tuple((ext.bit(g),) for g in pairing.gens)
    to_bit = GroupHom(dom, z2, bits)
    return Subgroup(z2, []).preimage_under(to_bit)


def parity_element(spec: OddAssocTSpec) -> Coords:
    """The order-2 element of G whose character separates even from odd support."""
    ext = ParityExtension(spec.group)
    pairing = EmbeddedPairing(ext.group, spec.tgens, spec.beta)
    plus = _bit_subgroup(pairing, ext)
    comp = spec.beta.orthogonal_complement(plus)
    if comp.order() != 2:
        raise ValueError("orthogonal complement of the even support "
                         f"has order {comp.order()}, expected 2")
    (gen, order), = comp.smith_gens
    assert order == 2
    u0 = pairing.push(gen)
    if ext.bit(u0) != 0:
        raise ValueError("parity element has odd parity; spec is corrupted")
    return ext.base_part(u0)


def _quotient_by_t0(group: FinGenAbGroup, t0: Coords):
    _, gbar, theta = subgroup_and_quotient(group, [t0])
    return gbar, theta


def _character_on(sub: Subgroup, vector: tuple[int, ...]):
    """The character of a finite subgroup given by dual coordinates."""
    gens = sub.smith_gens

    def chi(x: Coords) -> RootOfUnity:
        coords = sub.coords_of(x)
        if coords is None:
            raise ValueError(f"{x} is outside the subgroup")
        acc = Fraction(0)
        for c, xc, (_, o) in zip(vector, coords, gens):
            acc += Fraction(c * xc, o)
        return RootOfUnity(acc)

    return chi


def _canonical_chi(group: FinGenAbGroup, t_plus: Subgroup, t0: Coords):
    """Lexicographically least character of T+ taking -1 at t0."""
    gens = t_plus.smith_gens
    orders = [o for _, o in gens]
    t0_coords = t_plus.coords_of(t0)
    if t0_coords is None:
        raise ValueError("t0 does not lie in the support")
    half = Fraction(1, 2)
    for vec in itertools.product(*(range(o) for o in orders)):
        val = sum(Fraction(c * d, o) for c, d, o in zip(vec, t0_coords, orders))
        if val % 1 == half:
            return _character_on(t_plus, vec)
    raise ValueError("no character separates t0; is it the identity?")


def odd_existence_check(group: FinGenAbGroup, t0: Coords,
                        tbar_gens: tuple[Coords, ...],
                        beta_bar: Bicharacter) -> bool:
    """Whether the given quotient data extends to an odd grading support.

    tbar_gens are lifts in G; the test compares the complement of the
    pushed-down two-torsion with the squares of the quotient group.
    """
    t0 = group.reduce(t0)
    if group.element_order(t0) != 2:
        raise ValueError("t0 must have order 2")
    gbar, theta = _quotient_by_t0(group, t0)
    bar_pairing = EmbeddedPairing(gbar, tuple(theta(t) for t in tbar_gens), beta_bar)
    bar_pairing.check()
    t_plus = bar_pairing.sub.preimage_under(theta)
    _, g_two = squares_and_two_torsion(group)
    r_gens = [theta(x) for x, _ in t_plus.intersect(g_two).smith_gens]
    r_abstract = Subgroup(beta_bar.domain,
                          [bar_pairing.abstract_coords(x) for x in r_gens])
    comp = beta_bar.orthogonal_complement(r_abstract)
    r_comp = Subgroup(gbar, [bar_pairing.push(x) for x, _ in comp.smith_gens])
    gbar_squares, _ = squares_and_two_torsion(gbar)
    return r_comp.is_subset_of(gbar_squares)


def _odd_g_workspace(spec: OddAssocGSpec):
    """Shared derivation for the G-description: chi, a, and the quotient data."""
    g = spec.group
    t0 = g.reduce(spec.t0)
    if g.element_order(t0) != 2:
        raise ValueError("t0 must have order 2")
    gbar, theta = _quotient_by_t0(g, t0)
    bar_pairing = EmbeddedPairing(gbar, tuple(theta(t) for t in spec.tbar_gens),
                                  spec.beta_bar)
    bar_pairing.check()
    if not odd_existence_check(g, t0, spec.tbar_gens, spec.beta_bar):
        raise ValueError("no odd grading exists for this quotient data")
    t_plus = bar_pairing.sub.preimage_under(theta)
    chi = _canonical_chi(g, t_plus, t0)
    # the unique element pairing (via beta_bar) as chi squared
    a_bar = None
    plus_gens = [x for x, _ in t_plus.smith_gens]
    for cand in bar_pairing.sub.elements():
        if all(bar_pairing.value(cand, theta(s)) == chi(s) ** 2 for s in plus_gens):
            a_bar = cand
            break
    assert a_bar is not None, "chi^2 must be represented by the nondegenerate pairing"
    a = next(x for x in t_plus.elements()
             if theta(x) == a_bar and chi(x).is_one())
    return t0, gbar, theta, bar_pairing, t_plus, chi, a


def build_odd_from_G(spec: OddAssocGSpec) -> OddAssocTSpec:
    """Convert the G-description of an odd grading to explicit support in G#."""
    g = spec.group
    t0, gbar, theta, bar_pairing, t_plus, chi, a = _odd_g_workspace(spec)
    u = g.reduce(spec.u)
    if g.scale(2, u) != a:
        raise ValueError(f"u squared is {g.scale(2, u)}, expected {a}")
    ext = ParityExtension(g)

    def beta_u(x: Coords, y: Coords) -> RootOfUnity:
        i, j = ext.bit(x), ext.bit(y)
        s = g.sub(ext.base_part(x), g.scale(i, u))
        t = g.sub(ext.base_part(y), g.scale(j, u))
        val = bar_pairing.value(theta(s), theta(t))
        return val * (chi(s) ** (-j)) * (chi(t) ** i)

    tu_gens = [ext.embed(x) for x, _ in t_plus.smith_gens] + [ext.lift(u, 1)]
    tu = Subgroup(ext.group, tu_gens)
    gens = tuple(x for x, _ in tu.smith_gens)
    orders = tuple(o for _, o in tu.smith_gens)
    q = tuple(tuple(beta_u(x, y).exponent for y in gens) for x in gens)
    beta = Bicharacter(FinGenAbGroup(0, orders), q)
    out = OddAssocTSpec(g, gens, beta, spec.gamma)
    got_t0 = parity_element(out)
    if got_t0 != t0:
        raise RuntimeError("constructed support has the wrong parity element")
    return out


def finest_even_coarsening(spec: OddAssocTSpec) -> EvenAssocSpec:
    """The even grading induced over G modulo the parity element."""
    g = spec.group
    ext = ParityExtension(g)
    pairing = EmbeddedPairing(ext.group, spec.tgens, spec.beta)
    t0 = parity_element(spec)
    gbar, theta = _quotient_by_t0(g, t0)
    plus_dom = _bit_subgroup(pairing, ext)
    plus_elems_g = sorted(ext.base_part(pairing.push(x)) for x in plus_dom.elements())
    tbar = Subgroup(gbar, [theta(x) for x in plus_elems_g])
    tbar_gens = []
    q_lifts = []
    for gen, _ in tbar.smith_gens:
        lift = next(x for x in plus_elems_g if theta(x) == gen)
        tbar_gens.append(gen)
        q_lifts.append(lift)
    q = tuple(tuple(pairing.value(ext.embed(x), ext.embed(y)).exponent
                    for y in q_lifts) for x in q_lifts)
    beta_bar = Bicharacter(tbar.as_group(), q)
    u = min(ext.base_part(pairing.push(x))
            for x in spec.beta.domain.elements()
            if ext.bit(pairing.push(x)) == 1)
    u_bar = theta(u)
    gamma_bar = tuple(theta(x) for x in spec.gamma)
    gamma_shift = tuple(gbar.add(u_bar, x) for x in gamma_bar)
    return EvenAssocSpec(gbar, tuple(tbar_gens), beta_bar, gamma_bar, gamma_shift)


def is_even_grading(model: GradedMatrixModel) -> bool:
    """Whether the model's grading is even, via two independent criteria."""
    # (a) compatibility with the canonical Z-grading: every basis element
    # either is Z-homogeneous or merges with its parity partner
    if model.kind == "even":
        z_compatible = True
    else:
        z_compatible = all(model.basis[n].degree == model.basis[p].degree
                           for n, p in model.partner.items()
                           if model.basis[n].parity == 1)
    # (b) the Morita idempotent diag(I_m, 0) is homogeneous
    eps_degrees = {model.basis[n].degree for n in model.eps_support}
    eps_homogeneous = len(eps_degrees) == 1
    if z_compatible != eps_homogeneous:
        raise RuntimeError("even-grading criteria disagree; model bookkeeping is broken")
    return z_compatible


# ---------------------------------------------------------------------------
# universal grading groups


def universal_group(model: GradedMatrixModel
                    ) -> tuple[FinGenAbGroup, dict[Coords, Coords]]:
    """The group presented by the support with one relation per nonzero product."""
    supp = model.support()
    index = {s: n for n, s in enumerate(supp)}
    base = model.base_group
    rel_rows = set()
    by_row: dict[int, list[BasisElement]] = {}
    for b in model.basis:
        by_row.setdefault(b.i, []).append(b)
    for x in model.basis:
        dx = model.base_degree(x)
        for y in by_row.get(x.j, ()):
            dy = model.base_degree(y)
            row = [0] * len(supp)
            row[index[dx]] += 1
            row[index[dy]] += 1
            row[index[base.add(dx, dy)]] -= 1
            if any(row):
                rel_rows.add(tuple(row))
    reduced = hermite_normal_form(sorted(rel_rows))
    quotient, proj = finitely_presented_quotient(len(supp), reduced)
    labels = {s: proj(tuple(int(i == n) for i in range(len(supp))))
              for s, n in index.items()}
    return quotient, labels
