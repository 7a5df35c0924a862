"""Finitely generated abelian groups in explicit coordinates.

A group is Z^r x Z/d1 x ... x Z/ds.  Elements are integer tuples of
length r + s, free coordinates first; torsion coordinate i is kept
reduced into [0, di).  The factor list of a directly constructed group
may be any list of moduli >= 2 (direct products keep their natural
coordinates), but every group produced by a quotient or presentation
construction has its torsion in invariant-factor form d1 | d2 | ... | ds,
computed through Smith normal form.  Abstract comparisons always go
through invariant_factors().
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from math import gcd, lcm
from typing import Iterable, Iterator, Optional

Coords = tuple[int, ...]
Matrix = list[list[int]]


# ---------------------------------------------------------------------------
# integer matrix utilities


def _identity(n: int) -> Matrix:
    return [[int(i == j) for j in range(n)] for i in range(n)]


def smith_normal_form(mat: Matrix) -> tuple[Matrix, Matrix, Matrix]:
    """Return (U, S, V) with S = U*mat*V diagonal, U and V unimodular.

    The diagonal entries of S are nonnegative and form a divisibility
    chain s1 | s2 | ... ; zero entries come last.  Plain Python integers
    throughout, so there is no overflow at any size.
    """
    m = len(mat)
    n = len(mat[0]) if m else 0
    S = [list(row) for row in mat]
    U = _identity(m)
    V = _identity(n)

    def swap_rows(i, j):
        S[i], S[j] = S[j], S[i]
        U[i], U[j] = U[j], U[i]

    def swap_cols(i, j):
        for row in S:
            row[i], row[j] = row[j], row[i]
        for row in V:
            row[i], row[j] = row[j], row[i]

    def add_row(i, j, q):
        # row i += q * row j
        S[i] = [a + q * b for a, b in zip(S[i], S[j])]
        U[i] = [a + q * b for a, b in zip(U[i], U[j])]

    def add_col(i, j, q):
        # col i += q * col j
        for row in S:
            row[i] += q * row[j]
        for row in V:
            row[i] += q * row[j]

    def negate_row(i):
        S[i] = [-a for a in S[i]]
        U[i] = [-a for a in U[i]]

    t = 0
    while t < min(m, n):
        # pivot: smallest nonzero magnitude in the remaining block
        pivot = None
        best = None
        for i in range(t, m):
            for j in range(t, n):
                v = abs(S[i][j])
                if v and (best is None or v < best):
                    best = v
                    pivot = (i, j)
        if pivot is None:
            break
        pi, pj = pivot
        if pi != t:
            swap_rows(t, pi)
        if pj != t:
            swap_cols(t, pj)

        dirty = False
        for i in range(t + 1, m):
            if S[i][t]:
                q = S[i][t] // S[t][t]
                add_row(i, t, -q)
                if S[i][t]:
                    dirty = True
        for j in range(t + 1, n):
            if S[t][j]:
                q = S[t][j] // S[t][t]
                add_col(j, t, -q)
                if S[t][j]:
                    dirty = True
        if dirty:
            continue

        # force the pivot to divide the rest of the block
        fix = None
        p = S[t][t]
        for i in range(t + 1, m):
            for j in range(t + 1, n):
                if S[i][j] % p:
                    fix = i
                    break
            if fix is not None:
                break
        if fix is not None:
            add_row(t, fix, 1)
            continue
        t += 1

    for i in range(min(m, n)):
        if S[i][i] < 0:
            negate_row(i)
    return U, S, V


def hermite_normal_form(rows: Iterable[Coords]) -> tuple[Coords, ...]:
    """Canonical basis of the integer row span of `rows`.

    Pivots are positive, pivot columns strictly increase, and entries
    above each pivot are reduced into [0, pivot).  Zero rows are dropped,
    so equal lattices give identical results.
    """
    work = [list(r) for r in rows if any(r)]
    if not work:
        return ()
    n = len(work[0])
    basis: list[list[int]] = []
    for col in range(n):
        carrier = None
        for row in work:
            if row[col]:
                if carrier is None:
                    carrier = row
                    continue
                # euclid the two rows on this column
                while row[col]:
                    q = carrier[col] // row[col]
                    for k in range(n):
                        carrier[k] -= q * row[k]
                    carrier, row = row, carrier
                # ends with row[col] == 0; carrier holds the gcd
        if carrier is None:
            continue
        work = [r for r in work if r is not carrier and any(r)]
        if carrier[col] < 0:
            carrier = [-a for a in carrier]
        basis.append(carrier)
    # reduce entries above each pivot
    for i in range(len(basis)):
        pcol = next(j for j, a in enumerate(basis[i]) if a)
        for k in range(i):
            q = basis[k][pcol] // basis[i][pcol]
            if q:
                basis[k] = [a - q * b for a, b in zip(basis[k], basis[i])]
    return tuple(tuple(r) for r in basis)


def lattice_contains(hnf_rows: tuple[Coords, ...], vec: Coords) -> bool:
    """Membership of an integer vector in a row lattice given in HNF."""
    v = list(vec)
    for row in hnf_rows:
        pcol = next(j for j, a in enumerate(row) if a)
        if v[pcol] % row[pcol] == 0:
            q = v[pcol] // row[pcol]
            if q:
                v = [a - q * b for a, b in zip(v, row)]
    return not any(v)


def solve_left(mat: Matrix, target: Coords) -> Optional[Coords]:
    """Integer solution x of x*mat = target, or None."""
    m = len(mat)
    if m == 0:
        return () if not any(target) else None
    U, S, V = smith_normal_form(mat)
    n = len(mat[0])
    bv = [sum(target[i] * V[i][j] for i in range(n)) for j in range(n)]
    w = [0] * m
    for j in range(n):
        s = S[j][j] if j < min(m, n) else 0
        if s:
            if bv[j] % s:
                return None
            w[j] = bv[j] // s
        elif bv[j]:
            return None
    x = [sum(w[i] * U[i][j] for i in range(m)) for j in range(m)]
    return tuple(x)


def left_kernel(mat: Matrix) -> tuple[Coords, ...]:
    """Basis of {x : x*mat = 0} as rows."""
    m = len(mat)
    if m == 0:
        return ()
    U, S, _ = smith_normal_form(mat)
    n = len(mat[0])
    rows = []
    for i in range(m):
        s = S[i][i] if i < min(m, n) else 0
        if s == 0:
            rows.append(tuple(U[i]))
    return hermite_normal_form(rows)


def lattice_intersect(rows_a: Iterable[Coords], rows_b: Iterable[Coords]) -> tuple[Coords, ...]:
    """Basis of the intersection of two integer row lattices."""
    a = [list(r) for r in rows_a]
    b = [list(r) for r in rows_b]
    if not a or not b:
        return ()
    ker = left_kernel(a + b)
    ka = len(a)
    n = len(a[0])
    out = []
    for z in ker:
        vec = [sum(z[i] * a[i][j] for i in range(ka)) for j in range(n)]
        out.append(tuple(vec))
    return hermite_normal_form(out)


def unimodular_inverse(mat: Matrix) -> Matrix:
    """Inverse of a unimodular integer matrix, as an integer matrix."""
    n = len(mat)
    aug = [[Fraction(mat[i][j]) for j in range(n)] + [Fraction(int(i == j)) for j in range(n)]
           for i in range(n)]
    for col in range(n):
        piv = next(r for r in range(col, n) if aug[r][col])
        aug[col], aug[piv] = aug[piv], aug[col]
        inv = 1 / aug[col][col]
        aug[col] = [a * inv for a in aug[col]]
        for r in range(n):
            if r != col and aug[r][col]:
                f = aug[r][col]
                aug[r] = [a - f * b for a, b in zip(aug[r], aug[col])]
    out = []
    for i in range(n):
        row = []
        for j in range(n):
            v = aug[i][n + j]
            if v.denominator != 1:
                raise ValueError("matrix is not unimodular")
            row.append(int(v))
        out.append(row)
    return out


# ---------------------------------------------------------------------------
# groups


@dataclass(frozen=True)
class FinGenAbGroup:
    """Z^free_rank x Z/torsion[0] x ... in fixed coordinates."""

    free_rank: int
    torsion: tuple[int, ...] = ()

    def __post_init__(self):
        if self.free_rank < 0:
            raise ValueError("free rank must be nonnegative")
        object.__setattr__(self, "torsion", tuple(int(d) for d in self.torsion))
        if any(d < 2 for d in self.torsion):
            raise ValueError("torsion moduli must be >= 2")

    @property
    def rank(self) -> int:
        return self.free_rank + len(self.torsion)

    @property
    def is_finite(self) -> bool:
        return self.free_rank == 0

    def order(self) -> Optional[int]:
        if not self.is_finite:
            return None
        out = 1
        for d in self.torsion:
            out *= d
        return out

    def reduce(self, coords: Iterable[int]) -> Coords:
        c = list(coords)
        if len(c) != self.rank:
            raise ValueError(f"expected {self.rank} coordinates, got {len(c)}")
        r = self.free_rank
        return tuple(c[:r]) + tuple(c[r + i] % d for i, d in enumerate(self.torsion))

    def zero(self) -> Coords:
        return (0,) * self.rank

    def add(self, x: Coords, y: Coords) -> Coords:
        return self.reduce(tuple(a + b for a, b in zip(x, y)))

    def neg(self, x: Coords) -> Coords:
        return self.reduce(tuple(-a for a in x))

    def sub(self, x: Coords, y: Coords) -> Coords:
        return self.reduce(tuple(a - b for a, b in zip(x, y)))

    def scale(self, k: int, x: Coords) -> Coords:
        return self.reduce(tuple(k * a for a in x))

    def element_order(self, x: Coords) -> Optional[int]:
        """Order of x; None means infinite."""
        x = self.reduce(x)
        if any(x[: self.free_rank]):
            return None
        out = 1
        for i, d in enumerate(self.torsion):
            a = x[self.free_rank + i]
            out = lcm(out, d // gcd(d, a)) if a else out
        return out

    def elements(self) -> Iterator[Coords]:
        if not self.is_finite:
            raise ValueError("cannot enumerate an infinite group")
        for combo in itertools.product(*(range(d) for d in self.torsion)):
            yield combo

    def relation_rows(self) -> Matrix:
        rows = []
        for i, d in enumerate(self.torsion):
            row = [0] * self.rank
            row[self.free_rank + i] = d
            rows.append(row)
        return rows

    def unit(self, i: int) -> Coords:
        row = [0] * self.rank
        row[i] = 1
        return self.reduce(row)

    def generators(self) -> list[Coords]:
        return [self.unit(i) for i in range(self.rank)]

    def invariant_factors(self) -> tuple[int, ...]:
        """Torsion of this group in invariant-factor form d1 | d2 | ..."""
        if not self.torsion:
            return ()
        _, s, _ = smith_normal_form([[d if i == j else 0 for j in range(len(self.torsion))]
                                     for i, d in enumerate(self.torsion)])
        return tuple(s[i][i] for i in range(len(self.torsion)) if s[i][i] > 1)

    def is_isomorphic_to(self, other: "FinGenAbGroup") -> bool:
        return (self.free_rank == other.free_rank
                and self.invariant_factors() == other.invariant_factors())

    def to_json(self) -> dict:
        return {"free": self.free_rank, "torsion": list(self.torsion)}

    @classmethod
    def from_json(cls, obj: dict) -> "FinGenAbGroup":
        return cls(int(obj["free"]), tuple(int(d) for d in obj.get("torsion", ())))

    def __str__(self) -> str:
        parts = ["Z"] * self.free_rank + [f"Z/{d}" for d in self.torsion]
        return " x ".join(parts) if parts else "0"


def compose_elements(group: FinGenAbGroup, x: Coords, y: Coords) -> Coords:
    return group.add(x, y)


def element_order(group: FinGenAbGroup, x: Coords) -> Optional[int]:
    return group.element_order(x)


def solve_square(group: FinGenAbGroup, a: Coords) -> Optional[Coords]:
    """One x with 2x = a, or None.  Deterministic per coordinate."""
    a = group.reduce(a)
    out = []
    for i in range(group.free_rank):
        if a[i] % 2:
            return None
        out.append(a[i] // 2)
    for i, d in enumerate(group.torsion):
        v = a[group.free_rank + i]
        if d % 2:
            out.append(v * pow(2, -1, d) % d)
        else:
            if v % 2:
                return None
            out.append(v // 2)
    return tuple(out)


# ---------------------------------------------------------------------------
# homomorphisms


@dataclass(frozen=True)
class GroupHom:
    """Homomorphism given by images of the source's standard generators."""

    source: FinGenAbGroup
    target: FinGenAbGroup
    images: tuple[Coords, ...]

    def __post_init__(self):
        if len(self.images) != self.source.rank:
            raise ValueError("one image per source generator required")
        imgs = tuple(self.target.reduce(im) for im in self.images)
        object.__setattr__(self, "images", imgs)
        for i, d in enumerate(self.source.torsion):
            im = imgs[self.source.free_rank + i]
            if any(self.target.scale(d, im)):
                raise ValueError(f"generator of order {d} maps to an element not killed by {d}")

    def apply(self, x: Coords) -> Coords:
        x = self.source.reduce(x)
        acc = self.target.zero()
        for c, im in zip(x, self.images):
            if c:
                acc = self.target.add(acc, self.target.scale(c, im))
        return acc

    def __call__(self, x: Coords) -> Coords:
        return self.apply(x)

    def compose(self, inner: "GroupHom") -> "GroupHom":
        if inner.target != self.source:
            raise ValueError("homomorphisms do not compose")
        return GroupHom(inner.source, self.target, tuple(self.apply(im) for im in inner.images))

    @classmethod
    def identity(cls, group: FinGenAbGroup) -> "GroupHom":
        return cls(group, group, tuple(group.generators()))

    def matrix(self) -> Matrix:
        return [list(im) for im in self.images]

    def to_json(self) -> list:
        return [list(im) for im in self.images]


# ---------------------------------------------------------------------------
# subgroups


class Subgroup:
    """Subgroup of a FinGenAbGroup, represented by its coordinate lattice.

    The lattice of all integer lifts of subgroup elements is kept in
    Hermite normal form, so two Subgroup objects are equal exactly when
    they describe the same subset of the same parent.
    """

    def __init__(self, parent: FinGenAbGroup, gens: Iterable[Coords]):
        self.parent = parent
        self.gens = tuple(parent.reduce(g) for g in gens)

    @cached_property
    def lattice(self) -> tuple[Coords, ...]:
        rows = [list(g) for g in self.gens] + self.parent.relation_rows()
        return hermite_normal_form(rows)

    def contains(self, x: Coords) -> bool:
        return lattice_contains(self.lattice, self.parent.reduce(x))

    def __eq__(self, other) -> bool:
        return (isinstance(other, Subgroup) and self.parent == other.parent
                and self.lattice == other.lattice)

    def __hash__(self) -> int:
        return hash((self.parent, self.lattice))

    def __repr__(self) -> str:
        return f"Subgroup({self.parent}, {len(self.smith_gens)} generators, order {self.order()})"

    @cached_property
    def smith_gens(self) -> tuple[tuple[Coords, int], ...]:
        """Independent generators with orders (0 means infinite).

        Computed from the quotient lattice/relations; free generators
        first, then finite orders in an ascending divisibility chain.
        """
        basis = [list(r) for r in self.lattice]
        if not basis:
            return ()
        rel = self.parent.relation_rows()
        coeffs = []
        for row in rel:
            c = solve_left(basis, tuple(row))
            assert c is not None, "relation lattice escapes the subgroup lattice"
            coeffs.append(list(c))
        k = len(basis)
        if not coeffs:
            orders = [0] * k
            vinv = _identity(k)
        else:
            _, s, v = smith_normal_form(coeffs)
            vinv = unimodular_inverse(v)
            orders = []
            for i in range(k):
                si = s[i][i] if i < min(len(coeffs), k) else 0
                orders.append(si)
        out = []
        n = self.parent.rank
        for i in range(k):
            if orders[i] == 1:
                continue
            vec = [sum(vinv[i][t] * basis[t][j] for t in range(k)) for j in range(n)]
            out.append((self.parent.reduce(vec), orders[i]))
        free = [g for g in out if g[1] == 0]
        finite = [g for g in out if g[1] != 0]
        return tuple(free + finite)

    @property
    def is_finite(self) -> bool:
        return all(o != 0 for _, o in self.smith_gens)

    def order(self) -> Optional[int]:
        out = 1
        for _, o in self.smith_gens:
            if o == 0:
                return None
            out *= o
        return out

    def elements(self) -> Iterator[Coords]:
        if not self.is_finite:
            raise ValueError("cannot enumerate an infinite subgroup")
        gens = self.smith_gens
        for combo in itertools.product(*(range(o) for _, o in gens)):
            acc = self.parent.zero()
            for c, (g, _) in zip(combo, gens):
                if c:
                    acc = self.parent.add(acc, self.parent.scale(c, g))
            yield acc

    def as_group(self) -> FinGenAbGroup:
        free = sum(1 for _, o in self.smith_gens if o == 0)
        tors = tuple(o for _, o in self.smith_gens if o > 1)
        return FinGenAbGroup(free, tors)

    def coords_of(self, x: Coords) -> Optional[Coords]:
        """Coordinates of x in the smith_gens basis, or None if x not in the subgroup."""
        gens = self.smith_gens
        return coordinates_in_basis(self.parent, [g for g, _ in gens],
                                    [o for _, o in gens], x)

    def image_under(self, hom: GroupHom) -> "Subgroup":
        if hom.source != self.parent:
            raise ValueError("homomorphism source does not match subgroup parent")
        return Subgroup(hom.target, [hom.apply(g) for g in self.gens])

    def preimage_under(self, hom: GroupHom) -> "Subgroup":
        if hom.target != self.parent:
            raise ValueError("homomorphism target does not match subgroup parent")
        hmat = [list(im) for im in hom.images]
        mrows = [list(r) for r in self.lattice]
        if not hmat:
            return Subgroup(hom.source, [])
        ker = left_kernel(hmat + mrows)
        nsrc = hom.source.rank
        gens = [tuple(z[:nsrc]) for z in ker]
        return Subgroup(hom.source, [hom.source.reduce(g) for g in gens])

    def intersect(self, other: "Subgroup") -> "Subgroup":
        if self.parent != other.parent:
            raise ValueError("subgroups of different parents")
        rows = lattice_intersect(self.lattice, other.lattice)
        return Subgroup(self.parent, [self.parent.reduce(r) for r in rows])

    def sum_with(self, other: "Subgroup") -> "Subgroup":
        if self.parent != other.parent:
            raise ValueError("subgroups of different parents")
        return Subgroup(self.parent, self.gens + other.gens)

    def is_subset_of(self, other: "Subgroup") -> bool:
        return all(other.contains(g) for g, _ in self.smith_gens)


def coordinates_in_basis(group: FinGenAbGroup, basis: list[Coords], orders: list[int],
                         x: Coords) -> Optional[Coords]:
    """Solve x = sum c_i * basis_i in `group`; c_i reduced mod orders[i].

    orders[i] == 0 marks an infinite-order generator.  Returns None when
    x is not in the span.
    """
    x = group.reduce(x)
    rows = [list(b) for b in basis] + group.relation_rows()
    if not rows:
        return () if not any(x) else None
    sol = solve_left(rows, x)
    if sol is None:
        return None
    c = list(sol[: len(basis)])
    for i, o in enumerate(orders):
        if o:
            c[i] %= o
    return tuple(c)


# ---------------------------------------------------------------------------
# constructions


def finitely_presented_quotient(num_gens: int, relations: Iterable[Coords]
                                ) -> tuple[FinGenAbGroup, GroupHom]:
    """Z^num_gens modulo the given relation rows, in invariant-factor form.

    Returns the quotient plus the projection from the free group Z^num_gens.
    """
    rel = [list(r) for r in relations]
    for r in rel:
        if len(r) != num_gens:
            raise ValueError("relation length does not match generator count")
    free_src = FinGenAbGroup(num_gens)
    if not rel:
        q = FinGenAbGroup(num_gens)
        return q, GroupHom.identity(q)
    _, s, v = smith_normal_form(rel)
    n = num_gens
    diag = [s[i][i] if i < min(len(rel), n) else 0 for i in range(n)]
    free_idx = [i for i in range(n) if diag[i] == 0]
    tors_idx = [i for i in range(n) if diag[i] > 1]
    quotient = FinGenAbGroup(len(free_idx), tuple(diag[i] for i in tors_idx))
    images = []
    for j in range(n):
        row = v[j]
        coords = [row[i] for i in free_idx] + [row[i] % diag[i] for i in tors_idx]
        images.append(tuple(coords))
    return quotient, GroupHom(free_src, quotient, tuple(images))


def subgroup_and_quotient(group: FinGenAbGroup, gens: Iterable[Coords]
                          ) -> tuple[Subgroup, FinGenAbGroup, GroupHom]:
    """The subgroup generated by `gens`, the quotient group, and the projection."""
    gens = [group.reduce(g) for g in gens]
    sub = Subgroup(group, gens)
    rel = [list(g) for g in gens] + group.relation_rows()
    quotient, raw = finitely_presented_quotient(group.rank, rel)
    proj = GroupHom(group, quotient, raw.images)
    return sub, quotient, proj


def squares_and_two_torsion(obj) -> tuple[Subgroup, Subgroup]:
    """(squares, two-torsion) of a group or of a subgroup, inside the parent group."""
    if isinstance(obj, FinGenAbGroup):
        parent = obj
        doubled = Subgroup(parent, [parent.scale(2, g) for g in parent.generators()])
        doubling = GroupHom(parent, parent, tuple(parent.scale(2, g) for g in parent.generators()))
        two_tor = Subgroup(parent, []).preimage_under(doubling)
        return doubled, two_tor
    if isinstance(obj, Subgroup):
        parent = obj.parent
        doubled = Subgroup(parent, [parent.scale(2, g) for g, _ in obj.smith_gens])
        _, g_two = squares_and_two_torsion(parent)
        return doubled, obj.intersect(g_two)
    raise TypeError("expected a FinGenAbGroup or Subgroup")


def coset_canonical_rep(group: FinGenAbGroup, sub: Subgroup, x: Coords) -> Coords:
    """Lexicographically least element of the finite coset x + sub."""
    if not sub.is_finite:
        raise ValueError("coset representative needs a finite subgroup")
    x = group.reduce(x)
    return min(group.add(x, t) for t in sub.elements())
