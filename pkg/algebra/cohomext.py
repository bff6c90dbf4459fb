"""
Derivations, low-degree cohomology with trivial and central coefficients,
2-cocycles and the central extensions E(L, sigma) they define.
"""
import logging
from dataclasses import dataclass, replace
from fractions import Fraction
from itertools import combinations, product
from typing import Any, Dict, List, Mapping, Optional, Sequence, Tuple

from .builders import AssocTable, tensor
from .centroid import (
    CentroidBasis, centroid, centroid_cap_der, graded_centroid, homogeneous_components,
    induced_der_action,
)
from .exact_linalg import (
    ZERO, Matrix, Subspace, Vector, format_rational, nullspace, rank, sparse, unit_vector,
)
from .exceptions import AlgebraInputError, InvariantViolation
from .liecore import (
    Degree, Grading, SCAlgebra, centre, derivation_witness, derived_subalgebra, form_failures,
    invariant_forms, is_nondegenerate, is_perfect, lie_generating_set, maps_of, validate,
)

logger = logging.getLogger('algebra')


def _combine(maps: Sequence[Matrix], coeffs: Sequence[Fraction]) -> Matrix:
    out = Matrix.zeros(maps[0].rows, maps[0].cols)
    for c, m in zip(coeffs, maps):
        if c:
            out = out + m.scaled(c)
    return out


# ---------------------------------------------------------------------------
# Derivations
# ---------------------------------------------------------------------------

def derivation_equations(a: SCAlgebra, generators: Optional[Sequence[int]] = None) -> List[Dict[int, Fraction]]:
    """Rows of d ad_x - ad_x d - ad_{d(x)} = 0 in the unknowns d[r][c] (index r*n + c)."""
    n = a.dim
    if generators is None:
        generators = lie_generating_set(a)
    rows = []
    for x in generators:
        by_col: Dict[int, List[Tuple[int, Fraction]]] = {}
        by_row: Dict[int, List[Tuple[int, Fraction]]] = {}
        for (k, j), c in a.ad_cells(x).items():
            by_col.setdefault(j, []).append((k, c))
            by_row.setdefault(k, []).append((j, c))
        for r, c in product(range(n), repeat=2):
            row: Dict[int, Fraction] = {}
            for m, v in by_col.get(c, ()):
                row[r * n + m] = row.get(r * n + m, ZERO) + v
            for m, v in by_row.get(r, ()):
                row[m * n + c] = row.get(m * n + c, ZERO) - v
            for m in range(n):
                v = a.structure(m, c).get(r)
                if v:
                    row[m * n + x] = row.get(m * n + x, ZERO) - v
            row = {key: v for key, v in row.items() if v}
            if row:
                rows.append(row)
    return rows


def derivations(a: SCAlgebra) -> Subspace:
    """Der(L) as a subspace of flattened n x n matrices."""
    n = a.dim
    logger.info(f"Computing derivations of {a.name} (dim {n})")
    space = Subspace.span(nullspace(derivation_equations(a), n * n, label=f'Der({a.name})'), n * n)
    for d in maps_of(space, n):
        witness = derivation_witness(a, d)
        if witness is not None:
            raise InvariantViolation(f"Derivation of {a.name} fails the Leibniz rule on {witness}", witness=witness)
    inner = inner_derivations(a)
    if not inner.is_subspace_of(space):
        raise InvariantViolation(f"Inner derivations of {a.name} are not derivations")
    logger.info(f"Der({a.name}) has dimension {space.dim}")
    return space


def inner_derivations(a: SCAlgebra) -> Subspace:
    n = a.dim
    return Subspace.span([a.ad_basis(i).flatten() for i in range(n)], n * n)


def der_tensor_decomposition_check(g: SCAlgebra, b: AssocTable) -> Dict[str, Any]:
    """Der(g (x) b) = Der(g) (x) b + Cent(g) (x) Der(b), and the kernel of Der -> Der(Cent) is an ideal."""
    report: Dict[str, Any] = {'algebra': g.name, 'coefficients': b.name, 'applicable': True}
    if not is_perfect(g) or centroid(g).dim != 1 or not b.is_commutative:
        report.update({'applicable': False, 'passed': None,
                       'reason': 'needs a perfect central algebra and a commutative coordinate algebra'})
        return report
    tensored = tensor(g, b)
    n = tensored.dim
    der_g = derivations(g).dim
    der_b = b.derivations().dim
    der = derivations(tensored)
    expected = der_g * b.dim + der_b
    report.update({'der_dim': der.dim, 'der_g_dim': der_g, 'der_b_dim': der_b, 'expected_dim': expected})

    cent = centroid(tensored)
    actions = [induced_der_action(tensored, d, cent) for d in maps_of(der, n)]
    rows = []
    for r, c in product(range(cent.dim), repeat=2):
        row = {k: act[r, c] for k, act in enumerate(actions) if act[r, c]}
        if row:
            rows.append(row)
    der_maps = maps_of(der, n)
    kernel = Subspace.span([_combine(der_maps, s).flatten()
                            for s in nullspace(rows, der.dim, label='Der_C kernel')], n * n)
    kernel_maps = maps_of(kernel, n)
    is_ideal = all(kernel.contains((d @ k - k @ d).flatten()) for d in der_maps for k in kernel_maps)
    report.update({
        'kernel_dim': kernel.dim,
        'image_dim': der.dim - kernel.dim,
        'kernel_is_ideal': is_ideal,
        'passed': der.dim == expected and kernel.dim == der_g * b.dim and der.dim - kernel.dim == der_b and is_ideal,
    })
    return report


def h1_with_centre_coefficients(a: SCAlgebra) -> Dict[str, Any]:
    """H^1(L, Z(L)): maps vanishing on [L, L] with image in Z(L)."""
    n = a.dim
    z = centre(a)
    outside_centre = nullspace([sparse(v) for v in z.basis], n, label='functionals vanishing on Z(L)')
    rows = []
    for v in derived_subalgebra(a).basis:
        for r in range(n):
            row = {r * n + c: x for c, x in enumerate(v) if x}
            if row:
                rows.append(row)
    for f in outside_centre:
        for c in range(n):
            row = {r * n + c: x for r, x in enumerate(f) if x}
            if row:
                rows.append(row)
    space = Subspace.span(nullspace(rows, n * n, label=f'H1({a.name}, Z)'), n * n)
    expected = Subspace.span([m.flatten() for m in centroid_cap_der(a)], n * n)
    if space != expected:
        raise InvariantViolation("H^1(L, Z(L)) differs from Cent(L) ∩ Der(L)")
    return {'algebra': a.name, 'dim': space.dim, 'basis': maps_of(space, n)}


def h1_trivial_coeffs(a: SCAlgebra) -> int:
    """dim H^1(L, Q) = dim L/[L, L]."""
    return a.dim - derived_subalgebra(a).dim


# ---------------------------------------------------------------------------
# Cocycles
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Cocycle:
    """Alternating bilinear L x L -> C stored over pairs i < j; validated once the cyclic identity holds."""

    algebra: SCAlgebra
    coeff_dim: int
    values: Tuple[Tuple[Tuple[int, int], Vector], ...]
    validated: bool = False

    def __post_init__(self):
        n = self.algebra.dim
        merged: Dict[Tuple[int, int], List[Fraction]] = {}
        for (i, j), v in self.values:
            if i == j:
                raise AlgebraInputError("Cocycles are alternating: no diagonal values")
            if not (0 <= i < n and 0 <= j < n):
                raise AlgebraInputError(f"Cocycle pair ({i},{j}) out of range")
            if len(v) != self.coeff_dim:
                raise AlgebraInputError(f"Cocycle value at ({i},{j}) must have length {self.coeff_dim}")
            key, sign = ((i, j), 1) if i < j else ((j, i), -1)
            if key in merged:
                raise AlgebraInputError(f"Cocycle pair {key} given twice")
            merged[key] = [sign * Fraction(x) for x in v]
        object.__setattr__(self, 'values', tuple(
            (key, tuple(v)) for key, v in sorted(merged.items()) if any(v)))

    @classmethod
    def from_dict(cls, a: SCAlgebra, coeff_dim: int, values: Mapping[Tuple[int, int], Sequence[Any]]) -> 'Cocycle':
        return cls(a, coeff_dim, tuple((key, tuple(Fraction(x) for x in v)) for key, v in values.items()))

    @classmethod
    def zero(cls, a: SCAlgebra, coeff_dim: int) -> 'Cocycle':
        return cls(a, coeff_dim, (), True)

    def value(self, i: int, j: int) -> Vector:
        table = dict(self.values)
        if (i, j) in table:
            return table[(i, j)]
        if (j, i) in table:
            return tuple(-x for x in table[(j, i)])
        return (ZERO,) * self.coeff_dim

    def evaluate(self, x: Sequence[Fraction], y: Sequence[Fraction]) -> Vector:
        out = [ZERO] * self.coeff_dim
        for (i, j), v in self.values:
            weight = x[i] * y[j] - x[j] * y[i]
            if weight:
                for k, c in enumerate(v):
                    out[k] += weight * c
        return tuple(out)


def cocycle_residual(a: SCAlgebra, sigma: Cocycle, i: int, j: int, k: int) -> Vector:
    e = lambda t: unit_vector(a.dim, t)  # noqa: E731
    terms = [
        sigma.evaluate(a.bracket_basis(i, j), e(k)),
        sigma.evaluate(a.bracket_basis(j, k), e(i)),
        sigma.evaluate(a.bracket_basis(k, i), e(j)),
    ]
    return tuple(x + y + z for x, y, z in zip(*terms))


def validate_cocycle(a: SCAlgebra, sigma: Cocycle) -> Dict[str, Any]:
    """Cyclic identity on all basis triples; the report carries the first failure and a validated copy."""
    if sigma.algebra.dim != a.dim:
        raise AlgebraInputError("Cocycle belongs to an algebra of another dimension")
    for i, j, k in combinations(range(a.dim), 3):
        residual = cocycle_residual(a, sigma, i, j, k)
        if any(residual):
            names = a.basis_names
            return {
                'valid': False,
                'triple': [names[i], names[j], names[k]],
                'indices': [i, j, k],
                'residual': [format_rational(x) for x in residual],
                'cocycle': sigma,
            }
    return {'valid': True, 'triple': None, 'indices': None, 'residual': None,
            'cocycle': replace(sigma, validated=True)}


def coboundary(a: SCAlgebra, f: Matrix) -> Cocycle:
    """delta f (x, y) = f([x, y]) for a linear map f: L -> C."""
    if f.cols != a.dim:
        raise AlgebraInputError(f"Map must have {a.dim} columns")
    values = []
    for (i, j), _ in a.brackets:
        v = f.apply(a.bracket_basis(i, j))
        if any(v):
            values.append(((i, j), v))
    return Cocycle(a, f.rows, tuple(values), True)


def _pairs(n: int) -> List[Tuple[int, int]]:
    return list(combinations(range(n), 2))


def cocycle_space(a: SCAlgebra) -> Subspace:
    """Z^2(L, Q) in coordinates over the pairs i < j."""
    n = a.dim
    index = {p: idx for idx, p in enumerate(_pairs(n))}

    def var(m: int, k: int) -> Optional[Tuple[int, int]]:
        if m == k:
            return None
        return (index[(m, k)], 1) if m < k else (index[(k, m)], -1)

    rows = []
    for i, j, k in combinations(range(n), 3):
        row: Dict[int, Fraction] = {}
        for (p, q), r in (((i, j), k), ((j, k), i), ((k, i), j)):
            for m, c in a.structure(p, q).items():
                slot = var(m, r)
                if slot is not None:
                    col, sign = slot
                    row[col] = row.get(col, ZERO) + sign * c
        row = {key: v for key, v in row.items() if v}
        if row:
            rows.append(row)
    return Subspace.span(nullspace(rows, len(index), label=f'Z2({a.name})'), len(index))


def coboundary_space(a: SCAlgebra) -> Subspace:
    pairs = _pairs(a.dim)
    return Subspace.span([tuple(a.structure(i, j).get(m, ZERO) for i, j in pairs) for m in range(a.dim)],
                         len(pairs))


def h2_trivial_coeffs(a: SCAlgebra) -> int:
    z2, b2 = cocycle_space(a), coboundary_space(a)
    if not b2.is_subspace_of(z2):
        raise InvariantViolation("Coboundaries are not cocycles")
    return z2.dim - b2.dim


# ---------------------------------------------------------------------------
# Central extensions
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class CentralExtension:
    """E(L, sigma) = L + C with the coefficient block in the trailing coordinates."""

    algebra: SCAlgebra
    base: SCAlgebra
    cocycle: Cocycle
    projection: Matrix

    @property
    def coeff_dim(self) -> int:
        return self.cocycle.coeff_dim


def _coefficient_names(base: SCAlgebra, m: int) -> Tuple[str, ...]:
    stem = 'c' if 'c' not in base.basis_names else 'z'
    if m == 1 and stem not in base.basis_names:
        return (stem,)
    names = tuple(f'{stem}{k + 1}' for k in range(m))
    while set(names) & set(base.basis_names):
        stem += "'"
        names = tuple(f'{stem}{k + 1}' for k in range(m))
    return names


def central_extension(a: SCAlgebra, sigma: Cocycle, check: bool = True,
                      coeff_degrees: Optional[Sequence[Sequence[int]]] = None) -> CentralExtension:
    """[x + c, y + c'] = [x, y] + sigma(x, y); refuses invalid cocycles unless check is off."""
    if check and not sigma.validated:
        report = validate_cocycle(a, sigma)
        if not report['valid']:
            logger.warning(f"Refusing cocycle on {a.name}: triple {report['triple']} residual {report['residual']}")
            raise AlgebraInputError("Not a 2-cocycle", witness=report)
        sigma = report['cocycle']
    n, m = a.dim, sigma.coeff_dim
    table: Dict[Tuple[int, int], Dict[int, Fraction]] = {key: dict(terms) for key, terms in a.brackets}
    for (i, j), v in sigma.values:
        terms = table.setdefault((i, j), {})
        for k, c in enumerate(v):
            if c:
                terms[n + k] = c
    grading = None
    if a.grading is not None and (m == 0 or coeff_degrees is not None):
        grading = Grading(a.grading.free_rank, a.grading.torsion,
                          a.grading.degrees + tuple(tuple(d) for d in (coeff_degrees or ())))
    ext = SCAlgebra.from_table(f'E({a.name})', a.basis_names + _coefficient_names(a, m), table,
                               grading=grading, toral_indices=a.toral_indices)
    projection = Matrix.from_columns([unit_vector(n, i) for i in range(n)] + [(ZERO,) * n] * m, n)
    result = CentralExtension(ext, a, sigma, projection)
    if check:
        report = validate(ext)
        if not report['passed']:
            raise InvariantViolation(f"Extension of {a.name} failed validation", witness=report)
        coefficients = Subspace.spanned_by_indices(range(n, n + m), n + m)
        if not coefficients.is_subspace_of(centre(ext)):
            raise InvariantViolation("Coefficient block is not central")
        if rank(projection) != n:
            raise InvariantViolation("Projection is not onto")
    logger.info(f"Built central extension of {a.name} by {m} dimensions")
    return result


def extension_from_algebra(e: SCAlgebra, coeff_dim: int) -> CentralExtension:
    """Read E(L, sigma) back from an algebra whose last coeff_dim coordinates are central."""
    total = e.dim
    n = total - coeff_dim
    if coeff_dim < 0 or n < 0:
        raise AlgebraInputError("Coefficient block larger than the algebra")
    z = centre(e)
    for k in range(n, total):
        if not z.contains(unit_vector(total, k)):
            raise AlgebraInputError(f"Coordinate {e.basis_names[k]} is not central")
    table = {}
    values = []
    for (i, j), terms in e.brackets:
        if i >= n or j >= n:
            continue
        base_terms = {k: c for k, c in terms if k < n}
        coeff = tuple(dict(terms).get(k, ZERO) for k in range(n, total))
        if base_terms:
            table[(i, j)] = base_terms
        if any(coeff):
            values.append(((i, j), coeff))
    grading = None
    if e.grading is not None:
        grading = Grading(e.grading.free_rank, e.grading.torsion, e.grading.degrees[:n])
    toral = None
    if e.toral_indices is not None:
        toral = tuple(t for t in e.toral_indices if t < n)
    base = SCAlgebra.from_table(f'{e.name}/C', e.basis_names[:n], table, grading=grading, toral_indices=toral)
    sigma = Cocycle(base, coeff_dim, tuple(values))
    report = validate_cocycle(base, sigma)
    if not report['valid']:
        raise AlgebraInputError("Trailing block does not define a 2-cocycle", witness=report)
    projection = Matrix.from_columns([unit_vector(n, i) for i in range(n)] + [(ZERO,) * n] * coeff_dim, n)
    return CentralExtension(e, base, report['cocycle'], projection)


@dataclass(frozen=True)
class CentroidDecomposition:
    """Psi(x + c) = chi(x) + (psi(x) + eta(c))."""

    chi: Matrix
    psi: Matrix
    eta: Matrix

    def assemble(self) -> Matrix:
        n, m = self.chi.rows, self.eta.rows
        cells = {}
        for i, j in product(range(n), repeat=2):
            if self.chi[i, j]:
                cells[(i, j)] = self.chi[i, j]
        for k, j in product(range(m), range(n)):
            if self.psi[k, j]:
                cells[(n + k, j)] = self.psi[k, j]
        for k, l in product(range(m), repeat=2):
            if self.eta[k, l]:
                cells[(n + k, n + l)] = self.eta[k, l]
        return Matrix.from_sparse(n + m, n + m, cells)


def _compatibility_failure(ext: CentralExtension, d: CentroidDecomposition) -> Optional[str]:
    a, sigma = ext.base, ext.cocycle
    n = a.dim
    for i, j in product(range(n), repeat=2):
        x, y = unit_vector(n, i), unit_vector(n, j)
        left = sigma.evaluate(x, d.chi.apply(y))
        right = tuple(p + q for p, q in zip(d.psi.apply(a.bracket_basis(i, j)), d.eta.apply(sigma.value(i, j))))
        if left != right:
            return f'compatibility at ({a.basis_names[i]}, {a.basis_names[j]})'
        if left != sigma.evaluate(d.chi.apply(x), y):
            return f'symmetry at ({a.basis_names[i]}, {a.basis_names[j]})'
    return None


def decompose_extension_centroid(ext: CentralExtension,
                                 cent: Optional[CentroidBasis] = None) -> List[CentroidDecomposition]:
    """Split every centroid basis element of E(L, sigma) into (chi, psi, eta) blocks."""
    a = ext.base
    if centre(a).dim:
        raise AlgebraInputError(f"Decomposition needs Z({a.name}) = 0")
    n, m = a.dim, ext.coeff_dim
    cent = cent or centroid(ext.algebra)
    base_cent = centroid(a)
    out = []
    for idx, big in enumerate(cent.maps):
        if any(big[i, n + k] for i in range(n) for k in range(m)):
            raise InvariantViolation(f"Centroid element {idx} maps C outside C")
        d = CentroidDecomposition(
            chi=Matrix.from_rows([[big[i, j] for j in range(n)] for i in range(n)]) if n else Matrix.zeros(0, 0),
            psi=Matrix.from_rows([[big[n + k, j] for j in range(n)] for k in range(m)]) if m else Matrix.zeros(0, n),
            eta=Matrix.from_rows([[big[n + k, n + l] for l in range(m)] for k in range(m)]) if m else Matrix.zeros(0, 0),
        )
        if d.assemble() != big:
            raise InvariantViolation("Decomposition does not reassemble")
        failure = _compatibility_failure(ext, d)
        if failure is not None:
            raise InvariantViolation(f"Centroid element {idx} fails {failure}")
        if not base_cent.contains(d.chi):
            raise InvariantViolation(f"chi-block of centroid element {idx} is not in Cent({a.name})")
        out.append(d)
    return out


def triple_is_centroidal(ext: CentralExtension, d: CentroidDecomposition) -> bool:
    from .centroid import is_centroidal
    return is_centroidal(ext.algebra, d.assemble())


def extension_centroid_from_triples(ext: CentralExtension) -> Dict[str, Any]:
    """Solve chi in Cent(L) with sigma(x, chi y) = psi([x, y]) + eta(sigma(x, y)) and compare with Cent(E)."""
    a, sigma = ext.base, ext.cocycle
    if centre(a).dim:
        raise AlgebraInputError(f"Decomposition needs Z({a.name}) = 0")
    n, m = a.dim, sigma.coeff_dim
    base_cent = centroid(a)
    kc = base_cent.dim
    psi_at = lambda k, r: kc + k * n + r  # noqa: E731
    eta_at = lambda k, l: kc + m * n + k * m + l  # noqa: E731
    unknowns = kc + m * n + m * m
    rows = []
    for i, j in product(range(n), repeat=2):
        x, y = unit_vector(n, i), unit_vector(n, j)
        chi_terms = [sigma.evaluate(x, chi.apply(y)) for chi in base_cent.maps]
        bracket_ij = a.bracket_basis(i, j)
        sigma_ij = sigma.value(i, j)
        for k in range(m):
            row: Dict[int, Fraction] = {}
            for s, v in enumerate(chi_terms):
                if v[k]:
                    row[s] = row.get(s, ZERO) + v[k]
            for r, c in enumerate(bracket_ij):
                if c:
                    row[psi_at(k, r)] = row.get(psi_at(k, r), ZERO) - c
            for l, c in enumerate(sigma_ij):
                if c:
                    row[eta_at(k, l)] = row.get(eta_at(k, l), ZERO) - c
            row = {key: v for key, v in row.items() if v}
            if row:
                rows.append(row)
    solutions = nullspace(rows, unknowns, label='extension centroid triples')
    maps = []
    for s in solutions:
        d = CentroidDecomposition(
            chi=base_cent.map_of(s[:kc]),
            psi=Matrix.from_rows([[s[psi_at(k, r)] for r in range(n)] for k in range(m)]) if m else Matrix.zeros(0, n),
            eta=Matrix.from_rows([[s[eta_at(k, l)] for l in range(m)] for k in range(m)]) if m else Matrix.zeros(0, 0),
        )
        maps.append(d.assemble())
    total = n + m
    assembled = Subspace.span([mp.flatten() for mp in maps], total * total)
    brute = centroid(ext.algebra)
    return {'dim': assembled.dim, 'matches_brute_force': assembled == brute.span(), 'maps': maps_of(assembled, total)}


# ---------------------------------------------------------------------------
# Degree and skew derivations
# ---------------------------------------------------------------------------

def _trivial_grading(a: SCAlgebra) -> Grading:
    return Grading(0, (), tuple(() for _ in range(a.dim)))


def degree_derivation(a: SCAlgebra, theta: Sequence[Any]) -> Matrix:
    """d_theta(x) = theta(deg x) x for an additive theta given on the generators of the grading group."""
    if a.grading is None:
        raise AlgebraInputError(f"{a.name} carries no grading")
    g = a.grading
    theta = [Fraction(t) for t in theta]
    if len(theta) != g.width:
        raise AlgebraInputError(f"theta needs {g.width} values, one per generator of the grading group")
    for m, t in zip(g.torsion, theta[g.free_rank:]):
        if t:
            raise AlgebraInputError(f"No nonzero additive map Z/{m} -> Q")
    d = Matrix.diagonal([sum((t * x for t, x in zip(theta, deg[:g.free_rank])), ZERO) for deg in g.degrees])
    witness = derivation_witness(a, d)
    if witness is not None:
        raise InvariantViolation("Degree map is not a derivation", witness=witness)
    return d


def degree_derivation_injective(a: SCAlgebra) -> Dict[str, Any]:
    """theta -> d_theta is injective exactly when the free parts of the support span Q^r."""
    if a.grading is None:
        raise AlgebraInputError(f"{a.name} carries no grading")
    g = a.grading
    support = [deg[:g.free_rank] for deg in g.support()]
    spans = Subspace.span([tuple(Fraction(x) for x in s) for s in support], g.free_rank).dim == g.free_rank \
        if g.free_rank else True
    images = [degree_derivation(a, [1 if k == r else 0 for k in range(g.width)]).flatten()
              for r in range(g.free_rank)]
    injective = Subspace.span(images, a.dim * a.dim).dim == g.free_rank
    if spans != injective:
        raise InvariantViolation("Support spanning and injectivity of theta -> d_theta disagree")
    return {'algebra': a.name, 'free_rank': g.free_rank, 'support_spans': spans, 'injective': injective}


@dataclass(frozen=True)
class SkewDerivationSpace:
    """Homogeneous skew derivations; the graded dual has (S*)^lambda = (S^-lambda)*."""

    algebra: SCAlgebra
    form: Matrix
    grading: Grading
    basis: Tuple[Tuple[Degree, Matrix], ...]

    @property
    def dim(self) -> int:
        return len(self.basis)

    @property
    def graded_dual_dims(self) -> Dict[Degree, int]:
        out: Dict[Degree, int] = {}
        for deg, _ in self.basis:
            dual = self.grading.neg(deg)
            out[dual] = out.get(dual, 0) + 1
        return out

    @property
    def dual_degrees(self) -> List[Degree]:
        return [self.grading.neg(deg) for deg, _ in self.basis]


def _nondegenerate_form(a: SCAlgebra) -> Matrix:
    forms = maps_of(invariant_forms(a), a.dim)
    candidates = list(forms)
    if forms:
        for s in range(1, len(forms) + 1):
            total = Matrix.zeros(a.dim, a.dim)
            for k, f in enumerate(forms):
                total = total + f.scaled(Fraction(k + 1) ** s)
            candidates.append(total)
    for f in candidates:
        if is_nondegenerate(f):
            return f
    raise AlgebraInputError(f"{a.name} has no nondegenerate invariant form")


def skew_derivations(a: SCAlgebra, form: Optional[Matrix] = None) -> SkewDerivationSpace:
    n = a.dim
    form = form if form is not None else (a.form if a.form is not None else _nondegenerate_form(a))
    if form_failures(a, form):
        raise AlgebraInputError("Form is not a symmetric invariant form")
    if not is_nondegenerate(form):
        raise AlgebraInputError("Form is degenerate")
    grading = a.grading or _trivial_grading(a)
    for i, j in product(range(n), repeat=2):
        if form[i, j] and grading.add(grading.degrees[i], grading.degrees[j]) != grading.zero:
            raise AlgebraInputError("Form is not graded", witness=(a.basis_names[i], a.basis_names[j]))

    rows = list(derivation_equations(a))
    for i, j in product(range(n), repeat=2):
        # (D^T B + B D)[i][j] = sum_r D[r][i] B[r][j] + B[i][r] D[r][j]
        row: Dict[int, Fraction] = {}
        for r in range(n):
            if form[r, j]:
                row[r * n + i] = row.get(r * n + i, ZERO) + form[r, j]
            if form[i, r]:
                row[r * n + j] = row.get(r * n + j, ZERO) + form[i, r]
        row = {key: v for key, v in row.items() if v}
        if row:
            rows.append(row)
    space = Subspace.span(nullspace(rows, n * n, label=f'SDer({a.name})'), n * n)

    pieces: Dict[Degree, List[Matrix]] = {}
    for d in maps_of(space, n):
        for deg, part in homogeneous_components(grading, d).items():
            pieces.setdefault(deg, []).append(part)
    basis: List[Tuple[Degree, Matrix]] = []
    for deg in sorted(pieces):
        for part in maps_of(Subspace.span([m.flatten() for m in pieces[deg]], n * n), n):
            if derivation_witness(a, part) is not None or part.transpose() @ form + form @ part != Matrix.zeros(n, n):
                raise InvariantViolation(f"Homogeneous component of degree {deg} is not a skew derivation")
            basis.append((deg, part))
    if sum(1 for _ in basis) != space.dim:
        raise InvariantViolation("Homogeneous skew derivations do not span SDer")
    for i in range(n):
        ad = a.ad_basis(i)
        if ad.transpose() @ form + form @ ad != Matrix.zeros(n, n):
            raise InvariantViolation("An inner derivation is not skew")
    return SkewDerivationSpace(a, form, grading, tuple(basis))


def skew_subspace(space: SkewDerivationSpace, maps: Sequence[Tuple[Sequence[int], Matrix]]) -> SkewDerivationSpace:
    """A graded subspace S given by homogeneous members of a skew derivation space."""
    n = space.algebra.dim
    whole = Subspace.span([m.flatten() for _, m in space.basis], n * n)
    chosen = []
    for deg, m in maps:
        deg = space.grading.normalize(deg)
        if not whole.contains(m.flatten()):
            raise AlgebraInputError("Map is not a skew derivation")
        parts = homogeneous_components(space.grading, m)
        if set(parts) - {deg}:
            raise AlgebraInputError(f"Map is not homogeneous of degree {list(deg)}")
        chosen.append((deg, m))
    by_degree: Dict[Degree, List[Matrix]] = {}
    for deg, m in chosen:
        by_degree.setdefault(deg, []).append(m)
    basis = []
    for deg in sorted(by_degree):
        for m in maps_of(Subspace.span([x.flatten() for x in by_degree[deg]], n * n), n):
            basis.append((deg, m))
    return replace(space, basis=tuple(basis))


def _ev_hypothesis(space: SkewDerivationSpace) -> Dict[str, Any]:
    """Injectivity of lambda -> ev(lambda) restricted to D ∩ S on the group generated by the support."""
    a, g = space.algebra, space.grading
    n = a.dim
    support = g.support()
    trivial_group = all(deg == g.zero for deg in support)
    zero_part = [m for deg, m in space.basis if deg == g.zero]
    r = g.free_rank
    # unknowns: coefficients over zero_part, then theta in Q^r; sum s_k d_k - diag(theta . deg) = 0
    rows = []
    for i, j in product(range(n), repeat=2):
        row: Dict[int, Fraction] = {k: m[i, j] for k, m in enumerate(zero_part) if m[i, j]}
        if i == j:
            for t in range(r):
                x = g.degrees[i][t]
                if x:
                    row[len(zero_part) + t] = -Fraction(x)
        if row:
            rows.append(row)
    solutions = nullspace(rows, len(zero_part) + r, label='D ∩ S')
    thetas = Subspace.span([s[len(zero_part):] for s in solutions], r) if r else Subspace.zero(0)
    if thetas.dim == 0:
        return {'d_cap_s_dim': 0, 'injective': trivial_group,
                'status': 'vacuously injective only if Λ = 0' + ('' if trivial_group else ' (fails)')}
    has_torsion = any(any(deg[r:]) for deg in support)
    free = Matrix.from_rows([[Fraction(x) for x in deg[:r]] for deg in support])
    pairing = free @ Matrix.from_columns(thetas.basis, r)
    injective = not has_torsion and pairing.rank() == free.rank()
    return {'d_cap_s_dim': thetas.dim, 'injective': injective,
            'status': 'injective' if injective else 'not injective'}


def sigma_S_extension(a: SCAlgebra, space: SkewDerivationSpace) -> Tuple[CentralExtension, Dict[str, Any]]:
    """E(L, sigma_S) with sigma_S(x, y)(d) = (d(x) | y), plus the nonzero-degree chi-block check."""
    n, form = a.dim, space.form
    m = space.dim
    values = []
    for i, j in combinations(range(n), 2):
        v = tuple(sum((d[r, i] * form[r, j] for r in range(n)), ZERO) for _, d in space.basis)
        if any(v):
            values.append(((i, j), v))
    sigma = Cocycle(a, m, tuple(values))
    report_cocycle = validate_cocycle(a, sigma)
    if not report_cocycle['valid']:
        raise InvariantViolation("sigma_S is not a 2-cocycle", witness=report_cocycle)
    g = space.grading
    graded_a = a if a.grading is not None else a.with_grading(g)
    dual_degrees = space.dual_degrees
    for (i, j), v in report_cocycle['cocycle'].values:
        target = g.add(g.degrees[i], g.degrees[j])
        for k, c in enumerate(v):
            if c and dual_degrees[k] != target:
                raise InvariantViolation("sigma_S is not graded")
    ext = central_extension(graded_a, report_cocycle['cocycle'], coeff_degrees=dual_degrees)

    hypothesis = _ev_hypothesis(space)
    report: Dict[str, Any] = {
        'algebra': a.name,
        'extension_dim': ext.algebra.dim,
        'coeff_dim': m,
        'graded_dual_dims': {str(list(k)): v for k, v in space.graded_dual_dims.items()},
        'hypothesis': hypothesis['status'],
        'centprop_checked': False,
        'passed': None,
    }
    if not hypothesis['injective'] or not is_perfect(a):
        logger.warning(f"centprop inapplicable for {a.name}: {hypothesis['status']}")
        report['status'] = 'centprop inapplicable'
        return ext, report
    gc = graded_centroid(ext.algebra)
    failures = []
    for deg, maps in gc.components:
        if deg == g.zero:
            continue
        for idx, chi in enumerate(maps):
            if any(chi[i, j] for i in range(n) for j in range(n)):
                failures.append({'degree': list(deg), 'map': idx})
    report.update({
        'centprop_checked': True,
        'centroid_dim': gc.dim,
        'degrees': [list(deg) for deg in gc.support],
        'failures': failures,
        'passed': not failures,
        'status': 'passed' if not failures else 'failed',
    })
    return ext, report
