"""Alternating bicharacters on finite abelian groups.

Values are roots of unity held exactly as rational exponents: the root
exp(2*pi*i*q) is stored as the Fraction q reduced into [0, 1).  A
bicharacter on a finite group with coordinates Z/d1 x ... x Z/dk is a
rank x rank matrix of such exponents, beta(x, y) = exp(2 pi i sum x_i
q_ij y_j).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from math import lcm
from typing import Iterable, Optional, Sequence

from .abgroup import (
    Coords,
    FinGenAbGroup,
    Subgroup,
    coordinates_in_basis,
    left_kernel,
)


@dataclass(frozen=True)
class RootOfUnity:
    """exp(2*pi*i*exponent) with the exponent reduced into [0, 1)."""

    exponent: Fraction

    def __post_init__(self):
        object.__setattr__(self, "exponent", Fraction(self.exponent) % 1)

    @classmethod
    def one(cls) -> "RootOfUnity":
        return cls(Fraction(0))

    @classmethod
    def minus_one(cls) -> "RootOfUnity":
        return cls(Fraction(1, 2))

    @classmethod
    def primitive(cls, n: int) -> "RootOfUnity":
        return cls(Fraction(1, n))

    @property
    def order(self) -> int:
        return self.exponent.denominator

    def is_one(self) -> bool:
        return self.exponent == 0

    def __mul__(self, other: "RootOfUnity") -> "RootOfUnity":
        return RootOfUnity(self.exponent + other.exponent)

    def inverse(self) -> "RootOfUnity":
        return RootOfUnity(-self.exponent)

    def __pow__(self, k: int) -> "RootOfUnity":
        return RootOfUnity(self.exponent * k)

    def to_json(self) -> list[int]:
        return [self.exponent.numerator, self.exponent.denominator]

    @classmethod
    def from_json(cls, obj: Sequence[int]) -> "RootOfUnity":
        return cls(Fraction(int(obj[0]), int(obj[1])))

    def __str__(self) -> str:
        if self.exponent == 0:
            return "1"
        if self.exponent == Fraction(1, 2):
            return "-1"
        return f"zeta({self.exponent})"


@dataclass(frozen=True)
class Bicharacter:
    """Bicharacter on a finite group, given by its exponent matrix."""

    domain: FinGenAbGroup
    q: tuple[tuple[Fraction, ...], ...]

    def __post_init__(self):
        if not self.domain.is_finite:
            raise ValueError("bicharacter domain must be finite")
        k = self.domain.rank
        rows = tuple(tuple(Fraction(v) % 1 for v in row) for row in self.q)
        if len(rows) != k or any(len(r) != k for r in rows):
            raise ValueError(f"exponent matrix must be {k} x {k}")
        object.__setattr__(self, "q", rows)

    def validate(self) -> None:
        """Raise ValueError unless well defined on the domain and alternating."""
        d = self.domain.torsion
        k = self.domain.rank
        for i in range(k):
            for j in range(k):
                if (d[i] * self.q[i][j]).denominator != 1:
                    raise ValueError(f"entry ({i},{j}) not killed by generator order {d[i]}")
                if (self.q[i][j] * d[j]).denominator != 1:
                    raise ValueError(f"entry ({i},{j}) not killed by generator order {d[j]}")
        for i in range(k):
            if self.q[i][i] != 0:
                raise ValueError(f"diagonal entry ({i},{i}) is nonzero")
            for j in range(i):
                if (self.q[i][j] + self.q[j][i]) % 1 != 0:
                    raise ValueError(f"entries ({i},{j}) and ({j},{i}) are not opposite")

    def value(self, x: Coords, y: Coords) -> RootOfUnity:
        x = self.domain.reduce(x)
        y = self.domain.reduce(y)
        acc = Fraction(0)
        for i, xi in enumerate(x):
            if not xi:
                continue
            row = self.q[i]
            for j, yj in enumerate(y):
                if yj and row[j]:
                    acc += xi * row[j] * yj
        return RootOfUnity(acc)

    @cached_property
    def _int_matrix(self) -> tuple[int, list[list[int]]]:
        """(m, N) with q = N / m entrywise."""
        m = 1
        for row in self.q:
            for v in row:
                m = lcm(m, v.denominator)
        n = [[int(v * m) for v in row] for row in self.q]
        return m, n

    def radical(self) -> Subgroup:
        """Elements pairing trivially with the whole domain."""
        k = self.domain.rank
        if k == 0:
            return Subgroup(self.domain, [])
        m, n = self._int_matrix
        stacked = [list(row) for row in n]
        for i in range(k):
            row = [0] * k
            row[i] = m
            stacked.append(row)
        ker = left_kernel(stacked)
        return Subgroup(self.domain, [z[:k] for z in ker])

    def is_nondegenerate(self) -> bool:
        return self.radical().order() == 1

    def orthogonal_complement(self, sub: Subgroup) -> Subgroup:
        """Elements pairing trivially with every element of `sub`."""
        if sub.parent != self.domain:
            raise ValueError("subgroup lives in a different group")
        gens = [g for g, _ in sub.smith_gens]
        if not gens:
            return Subgroup(self.domain, self.domain.generators())
        k = self.domain.rank
        m, n = self._int_matrix
        w = [[sum(n[i][j] * g[j] for j in range(k)) for g in gens] for i in range(k)]
        stacked = w + [[m * int(i == j) for j in range(len(gens))] for i in range(len(gens))]
        ker = left_kernel(stacked)
        return Subgroup(self.domain, [z[:k] for z in ker])

    def restrict(self, sub: Subgroup) -> "Bicharacter":
        """The induced bicharacter on sub.as_group(), in its smith-gens coordinates."""
        if sub.parent != self.domain:
            raise ValueError("subgroup lives in a different group")
        gens = [g for g, _ in sub.smith_gens]
        q = tuple(tuple(self.value(a, b).exponent for b in gens) for a in gens)
        return Bicharacter(sub.as_group(), q)

    def inverse(self) -> "Bicharacter":
        return Bicharacter(self.domain, tuple(tuple(-v % 1 for v in row) for row in self.q))

    def symplectic_decomposition(self) -> "DualPairDecomposition":
        """Split the domain into mutually orthogonal dual pairs.

        Requires a nondegenerate alternating bicharacter.  Pivots are
        chosen deterministically: the lex-least element of maximal order,
        then the lex-least partner pairing to a root of that exact order.
        """
        group = self.domain
        current = Subgroup(group, group.generators())
        if not self.radical().order() == 1:
            raise ValueError("bicharacter is degenerate")
        pairs: list[tuple[Coords, Coords, int]] = []
        while current.order() > 1:
            elems = sorted(current.elements())
            a = min((e for e in elems if e != group.zero()),
                    key=lambda e: (-group.element_order(e), e))
            o = group.element_order(a)
            b = next((e for e in elems if self.value(a, e).order == o), None)
            if b is None:
                raise ValueError("no dual partner found; bicharacter is degenerate")
            pairs.append((a, b, o))
            pair_sub = Subgroup(group, [a, b])
            assert pair_sub.order() == o * o, "dual pair does not split off"
            nxt = current.intersect(self.orthogonal_complement(pair_sub))
            assert pair_sub.order() * nxt.order() == current.order()
            current = nxt
        return DualPairDecomposition(self, tuple(pairs))


@dataclass(frozen=True)
class DualPairDecomposition:
    """Dual pairs (a_i, b_i) of exact order o_i spanning the domain.

    beta(a_i, b_i) has order o_i, all other generator pairs are
    orthogonal, and orders descend: o_1 >= o_2 >= ...
    """

    beta: Bicharacter
    pairs: tuple[tuple[Coords, Coords, int], ...]

    @property
    def orders(self) -> tuple[int, ...]:
        return tuple(o for _, _, o in self.pairs)

    @property
    def a_gens(self) -> tuple[Coords, ...]:
        return tuple(a for a, _, _ in self.pairs)

    @property
    def b_gens(self) -> tuple[Coords, ...]:
        return tuple(b for _, b, _ in self.pairs)

    def coords_of(self, t: Coords) -> tuple[Coords, Coords]:
        """Write t as sum alpha_i a_i + delta_i b_i; return (alpha, delta)."""
        basis = list(self.a_gens) + list(self.b_gens)
        orders = list(self.orders) + list(self.orders)
        c = coordinates_in_basis(self.beta.domain, basis, orders, t)
        if c is None:
            raise ValueError("element does not lie in the span of the dual pairs")
        p = len(self.pairs)
        return c[:p], c[p:]


def standard_pair(h_moduli: Sequence[int]) -> tuple[FinGenAbGroup, Bicharacter]:
    """The group H x H^ with its canonical pairing, H = Z/h1 x ... x Z/hp.

    Coordinates are the h-list twice over.  The exponent matrix pairs
    coordinate i with coordinate p+i at 1/h_i, with the opposite sign
    below the diagonal.
    """
    h = tuple(int(x) for x in h_moduli)
    if any(x < 2 for x in h):
        raise ValueError("moduli must be >= 2")
    p = len(h)
    group = FinGenAbGroup(0, h + h)
    q = [[Fraction(0)] * (2 * p) for _ in range(2 * p)]
    for i, hi in enumerate(h):
        q[i][p + i] = Fraction(1, hi)
        q[p + i][i] = Fraction(-1, hi) % 1
    return group, Bicharacter(group, tuple(tuple(row) for row in q))


def beta_isomorphism(b1: Bicharacter, b2: Bicharacter,
                     pins: Iterable[tuple[Coords, Coords]] = ()
                     ) -> Optional[tuple[Coords, ...]]:
    """Images of b1's unit generators under some isomorphism onto b2, or None.

    Searches for a group isomorphism phi with b2(phi x, phi y) = b1(x, y)
    and phi(s) = t for every pinned pair (s, t).  Requires b1
    nondegenerate: any pairing-preserving homomorphism is then injective,
    so equal orders make it bijective.
    """
    g1, g2 = b1.domain, b2.domain
    if g1.order() != g2.order():
        return None
    if not b1.is_nondegenerate():
        raise ValueError("source bicharacter must be nondegenerate")
    pins = [(g1.reduce(s), g2.reduce(t)) for s, t in pins]
    k = g1.rank
    if k == 0:
        return () if all(not any(t) for _, t in pins) else None

    elems2 = sorted(g2.elements())
    by_order: dict[int, list[Coords]] = {}
    for e in elems2:
        by_order.setdefault(g2.element_order(e), []).append(e)
    unit_orders = [g1.element_order(g1.unit(i)) for i in range(k)]
    # pin (s, t) is checked once the last generator with a nonzero
    # coefficient in s has been assigned
    pin_at: dict[int, list[tuple[Coords, Coords]]] = {}
    for s, t in pins:
        last = max((i for i in range(k) if s[i]), default=-1)
        if last < 0:
            if any(t):
                return None
            continue
        pin_at.setdefault(last, []).append((s, t))

    images: list[Coords] = []

    def apply(x: Coords) -> Coords:
        acc = g2.zero()
        for c, im in zip(x, images):
            if c:
                acc = g2.add(acc, g2.scale(c, im))
        return acc

    def extend(i: int) -> bool:
        if i == k:
            return True
        for cand in by_order.get(unit_orders[i], ()):
            ok = all(b2.value(cand, images[j]).exponent == b1.q[i][j]
                     for j in range(i))
            if not ok:
                continue
            images.append(cand)
            if all(apply(s) == t for s, t in pin_at.get(i, ())):
                if extend(i + 1):
                    return True
            images.pop()
        return False

    if not extend(0):
        return None
    return tuple(images)
