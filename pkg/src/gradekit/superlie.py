"""Lie superalgebra layer on top of the matrix models.

Supertrace and supertranspose act on explicit block matrices over the
rationals.  Gradings descend from M(m,n) to sl/psl by removing the lines
cut out by the supertrace and, for equal block sizes, the identity.  The
periplectic algebra P(n) is handled by intersecting each component of an
ambient even model with the fixed standard copy

    {(a b; c -a^T) : tr a = 0, b = b^T, c = -c^T}

inside M(n+1,n+1), which is exact rational linear algebra because the
support of the division algebra must be an elementary 2-group.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from .abgroup import (
    Coords,
    FinGenAbGroup,
    Subgroup,
    finitely_presented_quotient,
    hermite_normal_form,
)
from .bichar import Bicharacter
from .graddiv import Scalar, StandardRealization
from .matgrade import (
    EmbeddedPairing,
    EvenAssocSpec,
    GradedMatrixModel,
    GradingSpec,
    OddAssocGSpec,
    OddAssocTSpec,
    build_matrix_model,
    validate_spec,
    xi_multiset,
)

F0 = Fraction(0)
F1 = Fraction(1)


# ---------------------------------------------------------------------------
# block matrices over the rationals


@dataclass(frozen=True)
class BlockMatrix:
    """A matrix of M(m,n): (m+n) x (m+n) rationals split after row/column m."""

    m: int
    n: int
    entries: tuple[tuple[Fraction, ...], ...]

    def __post_init__(self):
        size = self.m + self.n
        if len(self.entries) != size or any(len(r) != size for r in self.entries):
            raise ValueError("entry grid does not match the block sizes")

    @classmethod
    def zero(cls, m: int, n: int) -> "BlockMatrix":
        return cls(m, n, tuple((F0,) * (m + n) for _ in range(m + n)))

    @classmethod
    def from_rows(cls, m: int, n: int, rows) -> "BlockMatrix":
        return cls(m, n, tuple(tuple(Fraction(x) for x in row) for row in rows))

    @classmethod
    def from_blocks(cls, a, b, c, d) -> "BlockMatrix":
        m, n = len(a), len(d)
        rows = [tuple(Fraction(x) for x in ra) + tuple(Fraction(x) for x in rb)
                for ra, rb in zip(a, b)]
        rows += [tuple(Fraction(x) for x in rc) + tuple(Fraction(x) for x in rd)
                 for rc, rd in zip(c, d)]
        return cls(m, n, tuple(rows))

    def _shape_check(self, other: "BlockMatrix"):
        if (self.m, self.n) != (other.m, other.n):
            raise ValueError("block sizes differ")

    def __add__(self, other: "BlockMatrix") -> "BlockMatrix":
        self._shape_check(other)
        return BlockMatrix(self.m, self.n,
                           tuple(tuple(x + y for x, y in zip(r, s))
                                 for r, s in zip(self.entries, other.entries)))

    def __sub__(self, other: "BlockMatrix") -> "BlockMatrix":
        self._shape_check(other)
        return BlockMatrix(self.m, self.n,
                           tuple(tuple(x - y for x, y in zip(r, s))
                                 for r, s in zip(self.entries, other.entries)))

    def scale(self, factor) -> "BlockMatrix":
        factor = Fraction(factor)
        return BlockMatrix(self.m, self.n,
                           tuple(tuple(factor * x for x in r) for r in self.entries))

    def __neg__(self) -> "BlockMatrix":
        return self.scale(-1)

    def __mul__(self, other: "BlockMatrix") -> "BlockMatrix":
        self._shape_check(other)
        size = self.m + self.n
        # graded basis vectors are mostly zeros, so skip them outright
        out = [[F0] * size for _ in range(size)]
        for i, row in enumerate(self.entries):
            target = out[i]
            for j, a in enumerate(row):
                if a:
                    for k, b in enumerate(other.entries[j]):
                        if b:
                            target[k] += a * b
        return BlockMatrix(self.m, self.n, tuple(tuple(r) for r in out))

    def is_zero(self) -> bool:
        return all(x == 0 for r in self.entries for x in r)

    def blocks(self):
        """The four corners (a, b, c, d) as plain row tuples."""
        m = self.m
        a = tuple(r[:m] for r in self.entries[:m])
        b = tuple(r[m:] for r in self.entries[:m])
        c = tuple(r[:m] for r in self.entries[m:])
        d = tuple(r[m:] for r in self.entries[m:])
        return a, b, c, d

    def even_part(self) -> "BlockMatrix":
        a, _, _, d = self.blocks()
        zb = tuple((F0,) * self.n for _ in range(self.m))
        zc = tuple((F0,) * self.m for _ in range(self.n))
        return BlockMatrix.from_blocks(a, zb, zc, d)

    def odd_part(self) -> "BlockMatrix":
        _, b, c, _ = self.blocks()
        za = tuple((F0,) * self.m for _ in range(self.m))
        zd = tuple((F0,) * self.n for _ in range(self.n))
        return BlockMatrix.from_blocks(za, b, c, zd)

    def flatten(self) -> tuple[Fraction, ...]:
        return tuple(x for r in self.entries for x in r)


def _transpose(rows):
    return tuple(tuple(col) for col in zip(*rows))


def supertrace(mat: BlockMatrix) -> Fraction:
    """tr a - tr d."""
    a, _, _, d = mat.blocks()
    return sum(a[i][i] for i in range(mat.m)) - sum(d[i][i] for i in range(mat.n))


def supertranspose(mat: BlockMatrix) -> BlockMatrix:
    """(a b; c d) -> (a^T -c^T; b^T d^T)."""
    a, b, c, d = mat.blocks()
    neg_ct = tuple(tuple(-x for x in row) for row in _transpose(c))
    return BlockMatrix.from_blocks(_transpose(a), neg_ct, _transpose(b),
                                   _transpose(d))


def supercommutator(x: BlockMatrix, y: BlockMatrix) -> BlockMatrix:
    """[x,y] = xy - (-1)^{|x||y|} yx, extended bilinearly."""
    out = BlockMatrix.zero(x.m, x.n)
    for xi, px in ((x.even_part(), 0), (x.odd_part(), 1)):
        if xi.is_zero():
            continue
        for yj, py in ((y.even_part(), 0), (y.odd_part(), 1)):
            if yj.is_zero():
                continue
            prod = xi * yj
            back = yj * xi
            out = out + (prod + back if px and py else prod - back)
    return out


# ---------------------------------------------------------------------------
# exact rational row reduction


def _rref(rows: list[list[Fraction]]):
    """Reduced row echelon form; returns (nonzero rows, pivot columns)."""
    mat = [list(r) for r in rows]
    pivots: list[int] = []
    rank = 0
    ncols = len(mat[0]) if mat else 0
    for col in range(ncols):
        pivot_row = next((r for r in range(rank, len(mat)) if mat[r][col] != 0),
                         None)
        if pivot_row is None:
            continue
        mat[rank], mat[pivot_row] = mat[pivot_row], mat[rank]
        inv = 1 / mat[rank][col]
        mat[rank] = [x * inv for x in mat[rank]]
        for r in range(len(mat)):
            if r != rank and mat[r][col] != 0:
                factor = mat[r][col]
                mat[r] = [x - factor * y for x, y in zip(mat[r], mat[rank])]
        pivots.append(col)
        rank += 1
    return mat[:rank], pivots


def _kernel_basis(rows: list[list[Fraction]], ncols: int) -> list[tuple[Fraction, ...]]:
    """A basis of {x : rows . x = 0}."""
    echelon, pivots = _rref(rows)
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for f in free:
        vec = [F0] * ncols
        vec[f] = F1
        for row, p in zip(echelon, pivots):
            vec[p] = -row[f]
        basis.append(tuple(vec))
    return basis


def _reduce_vector(echelon, pivots, vec):
    out = list(vec)
    for row, p in zip(echelon, pivots):
        if out[p] != 0:
            factor = out[p]
            out = [x - factor * y for x, y in zip(out, row)]
    return out


# ---------------------------------------------------------------------------
# realized basis elements as rational matrices


def scalar_to_rational(s: Scalar) -> Fraction:
    if s.root.exponent == 0:
        return s.magnitude
    if s.root.exponent == Fraction(1, 2):
        return -s.magnitude
    raise ValueError(f"scalar {s} is not rational")


def _rational_block(real: StandardRealization, t_abs: Coords):
    mono = real.matrix(t_abs)
    d = mono.n
    rows = [[F0] * d for _ in range(d)]
    for j in range(d):
        rows[mono.perm[j]][j] = scalar_to_rational(mono.scalars[j])
    return rows


def realized_basis_matrix(model: GradedMatrixModel, index: int) -> BlockMatrix:
    """The basis element as an explicit rational matrix (needs rational X_t)."""
    b = model.basis[index]
    d = model.realization.size
    m, n = model.sizes
    size = m + n
    rows = [[F0] * size for _ in range(size)]
    block = _rational_block(model.realization, b.t_abs)
    for r in range(d):
        for c in range(d):
            if block[r][c]:
                rows[b.i * d + r][b.j * d + c] = block[r][c]
    return BlockMatrix(m, n, tuple(tuple(r) for r in rows))


# ---------------------------------------------------------------------------
# superadjoint and Type I restriction


def superadjoint_spec(spec: GradingSpec) -> GradingSpec:
    """Parameters of the image grading under L -> -L* (the superadjoint).

    The support is unchanged, the bicharacter is inverted, and all degree
    data is replaced by its inverse.
    """
    if isinstance(spec, EvenAssocSpec):
        g = spec.group
        return EvenAssocSpec(g, spec.tgens, spec.beta.inverse(),
                             tuple(g.neg(x) for x in spec.gamma0),
                             tuple(g.neg(x) for x in spec.gamma1))
    if isinstance(spec, OddAssocTSpec):
        g = spec.group
        return OddAssocTSpec(g, spec.tgens, spec.beta.inverse(),
                             tuple(g.neg(x) for x in spec.gamma))
    if isinstance(spec, OddAssocGSpec):
        g = spec.group
        return OddAssocGSpec(g, spec.t0, spec.tbar_gens,
                             spec.beta_bar.inverse(), g.neg(spec.u),
                             tuple(g.neg(x) for x in spec.gamma))
    raise TypeError(f"not a grading spec: {type(spec).__name__}")


def restrict_type_I(spec: GradingSpec) -> dict[Coords, int]:
    """Componentwise dimensions of the induced grading on sl, or psl when
    the block sizes agree.

    The supertrace functional is homogeneous, so it cuts one dimension from
    a single component: the identity component for even gradings, and the
    component of the parity element for odd ones.
    """
    model = build_matrix_model(spec)
    dims: dict[Coords, int] = {}
    for b in model.basis:
        key = model.base_degree(b)
        dims[key] = dims.get(key, 0) + 1
    zero = model.base_group.zero()
    if model.kind == "even":
        str_degree = zero
    else:
        str_degree = model.base_group.reduce(model.parity_coords[:-1])
    dims[str_degree] -= 1
    if model.sizes[0] == model.sizes[1]:
        dims[zero] -= 1
    return {k: v for k, v in dims.items() if v}


# ---------------------------------------------------------------------------
# periplectic gradings


@dataclass(frozen=True)
class PSpec:
    """Grading data for P(n): T inside G elementary 2, k block degrees, and
    the degree shift g0 between the two module halves."""

    group: FinGenAbGroup
    tgens: tuple[Coords, ...]
    beta: Bicharacter
    gamma: tuple[Coords, ...]
    g0: Coords


def validate_p_spec(spec: PSpec) -> PSpec:
    g = spec.group
    out = PSpec(g, tuple(g.reduce(t) for t in spec.tgens), spec.beta,
                tuple(g.reduce(x) for x in spec.gamma), g.reduce(spec.g0))
    if not out.gamma:
        raise ValueError("the block-degree tuple must be nonempty")
    if any(t != 2 for t in spec.beta.domain.torsion):
        raise ValueError("support must be an elementary 2-group")
    pairing = EmbeddedPairing(g, out.tgens, out.beta)
    pairing.check()
    size = len(out.gamma) * StandardRealization(out.beta).size
    if size < 3:
        raise ValueError(f"matrix half size is {size}; P(n) needs n >= 2")
    return out


def ambient_even_spec(spec: PSpec) -> EvenAssocSpec:
    """The even grading on M(n+1,n+1) whose restriction is the P grading."""
    g = spec.group
    gamma1 = tuple(g.sub(spec.g0, x) for x in spec.gamma)
    return EvenAssocSpec(g, spec.tgens, spec.beta, spec.gamma, gamma1)


def _p_constraints(selected, z, half):
    """Constraint rows cutting P(n) out of the degree component.

    selected holds the rational matrices of the ambient basis elements of
    one degree and z-block; columns of the output are their coefficients.
    """
    rows = []
    if z == 0:
        for r in range(half):
            for c in range(half):
                rows.append([mat.entries[half + r][half + c] + mat.entries[c][r]
                             for mat in selected])
        rows.append([sum(mat.entries[i][i] for i in range(half))
                     for mat in selected])
    elif z == -1:
        for r in range(half):
            for c in range(r + 1, half):
                rows.append([mat.entries[r][half + c] - mat.entries[c][half + r]
                             for mat in selected])
    else:
        for r in range(half):
            for c in range(r, half):
                rows.append([mat.entries[half + r][c] + mat.entries[half + c][r]
                             for mat in selected])
    return rows


class PGradedModel:
    """Rational bases for the components P(n) cap A_g of an even model."""

    def __init__(self, spec: Optional[PSpec], ambient: GradedMatrixModel,
                 components: dict[Coords, list[tuple[BlockMatrix, int]]]):
        self.spec = spec
        self.ambient = ambient
        self.n = ambient.sizes[0] - 1
        self.components = components
        self._echelon: dict[Coords, tuple] = {}

    def dims(self) -> dict[Coords, int]:
        return {g: len(items) for g, items in self.components.items() if items}

    def z_dims(self) -> dict[int, int]:
        out = {-1: 0, 0: 0, 1: 0}
        for items in self.components.values():
            for _, z in items:
                out[z] += 1
        return out

    def total_dim(self) -> int:
        return sum(len(items) for items in self.components.values())

    def contains(self, degree: Coords, mat: BlockMatrix) -> bool:
        items = self.components.get(degree)
        if not items:
            return mat.is_zero()
        if degree not in self._echelon:
            self._echelon[degree] = _rref([list(m.flatten()) for m, _ in items])
        echelon, pivots = self._echelon[degree]
        return all(x == 0 for x in _reduce_vector(echelon, pivots, mat.flatten()))


def p_intersection(model: GradedMatrixModel) -> dict[Coords, list[tuple[BlockMatrix, int]]]:
    """Intersect every component of an even model with the standard P(n).

    Components decompose along the canonical Z-grading of P (a/d corners,
    symmetric b, antisymmetric c), so the kernels are computed per z-block
    and every basis vector comes out z-homogeneous.
    """
    if model.kind != "even":
        raise ValueError("P(n) sits inside an even grading")
    if model.sizes[0] != model.sizes[1]:
        raise ValueError("block sizes must agree")
    if any(t != 2 for t in model.pairing.beta.domain.torsion):
        raise ValueError("support must be an elementary 2-group")
    half = model.sizes[0]
    mats = [realized_basis_matrix(model, i) for i in range(len(model.basis))]
    buckets: dict[tuple[Coords, int], list[int]] = {}
    for i, b in enumerate(model.basis):
        buckets.setdefault((b.degree, b.z_degree), []).append(i)
    components: dict[Coords, list[tuple[BlockMatrix, int]]] = {}
    for (degree, z), indices in sorted(buckets.items()):
        selected = [mats[i] for i in indices]
        rows = _p_constraints(selected, z, half)
        for coeffs in _kernel_basis(rows, len(selected)):
            vec = BlockMatrix.zero(half, half)
            for x, mat in zip(coeffs, selected):
                if x:
                    vec = vec + mat.scale(x)
            components.setdefault(degree, []).append((vec, z))
    return {g: items for g, items in sorted(components.items())}


def build_P_model(spec: PSpec) -> PGradedModel:
    spec = validate_p_spec(spec)
    ambient = build_matrix_model(ambient_even_spec(spec))
    model = PGradedModel(spec, ambient, p_intersection(ambient))
    expected = 2 * (model.n + 1) ** 2 - 1
    if model.total_dim() != expected:
        raise RuntimeError(f"P components span {model.total_dim()} dimensions, "
                           f"expected {expected}")
    return model


@dataclass
class PReport:
    ok: bool
    failures: list[str]
    dims: dict[Coords, int]
    z_dims: dict[int, int]


def verify_P_graded(model: PGradedModel) -> PReport:
    """Dimension bookkeeping and exact bracket closure for a P model."""
    failures = []
    n1 = model.n + 1
    total = model.total_dim()
    if total != 2 * n1 * n1 - 1:
        failures.append(f"dimensions sum to {total}, expected {2 * n1 * n1 - 1}")
    z_dims = model.z_dims()
    expected_z = {0: n1 * n1 - 1, -1: n1 * (n1 + 1) // 2, 1: n1 * (n1 - 1) // 2}
    if z_dims != expected_z:
        failures.append(f"Z-component dimensions {z_dims} != {expected_z}")
    group = model.ambient.base_group
    degrees = list(model.components)
    # [y,x] is proportional to [x,y], so unordered pairs suffice
    for gi, g in enumerate(degrees):
        for h in degrees[gi:]:
            target = group.add(g, h)
            items_g, items_h = model.components[g], model.components[h]
            for a, (x, zx) in enumerate(items_g):
                start = a if g == h else 0
                for y, zy in items_h[start:]:
                    prod, back = x * y, y * x
                    lie = prod + back if zx and zy else prod - back
                    if zx + zy in (2, -2):
                        if not lie.is_zero():
                            failures.append(f"bracket of z-degrees {zx},{zy} "
                                            "does not vanish")
                        continue
                    if not model.contains(target, lie):
                        failures.append(f"bracket of components {g} and {h} "
                                        f"leaves the component at {target}")
    return PReport(not failures, failures, model.dims(), z_dims)


def universal_P_group(model: PGradedModel
                      ) -> tuple[FinGenAbGroup, dict[Coords, Coords]]:
    """Group presented by the support with a relation per nonzero bracket."""
    supp = sorted(g for g, items in model.components.items() if items)
    index = {s: i for i, s in enumerate(supp)}
    group = model.ambient.base_group
    rel_rows = set()
    for a, g in enumerate(supp):
        for h in supp[a:]:
            items_g, items_h = model.components[g], model.components[h]
            hit = False
            for x, zx in items_g:
                for y, zy in items_h:
                    if zx + zy in (2, -2):
                        continue
                    prod, back = x * y, y * x
                    lie = prod + back if zx and zy else prod - back
                    if not lie.is_zero():
                        hit = True
                        break
                if hit:
                    break
            if not hit:
                continue
            target = group.add(g, h)
            if target not in index:
                raise ValueError(f"bracket of {g} and {h} leaves the support")
            row = [0] * len(supp)
            row[index[g]] += 1
            row[index[h]] += 1
            row[index[target]] -= 1
            if any(row):
                rel_rows.add(tuple(row))
    reduced = hermite_normal_form(sorted(rel_rows))
    quotient, proj = finitely_presented_quotient(len(supp), reduced)
    labels = {s: proj(tuple(int(i == n) for i in range(len(supp))))
              for s, n in index.items()}
    return quotient, labels


def P_restriction_condition(spec: EvenAssocSpec) -> Optional[Coords]:
    """A degree shift g0 witnessing that the even grading restricts to P(n).

    Returns None when the support is not an elementary 2-group or no shift
    matches the two block-degree multisets.
    """
    spec = validate_spec(spec)
    if len(spec.gamma0) != len(spec.gamma1):
        return None
    if any(t != 2 for t in spec.beta.domain.torsion):
        return None
    group = spec.group
    tsub = Subgroup(group, list(spec.tgens))
    xi0_inv = xi_multiset(group, tsub, [group.neg(x) for x in spec.gamma0])
    xi1 = xi_multiset(group, tsub, spec.gamma1)
    base = xi0_inv.reps()[0]
    for rep in xi1.reps():
        g0 = group.sub(rep, base)
        if xi0_inv.shift(g0) == xi1:
            return g0
    return None
