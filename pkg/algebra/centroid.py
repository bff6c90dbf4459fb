"""
Centroid computations.

The centroid of L is solved as the commutant of ad over a Lie generating set
and every result is re-checked on all ordered basis pairs, (i, i) included.
"""
import logging
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from itertools import combinations, product
from math import gcd
from typing import Any, Dict, List, Optional, Sequence, Tuple

import sympy

from .exact_linalg import (
    ZERO, CoordinateSolver, Matrix, RowEchelon, Subspace, Vector, evaluate_polynomial,
    format_rational, minimal_polynomial, nullspace, sparse, unit_vector, vec_scale,
)
from .exceptions import AlgebraInputError, InvariantViolation
from .liecore import (
    Degree, Grading, SCAlgebra, automorphism_witness, centralizer, centre, derivation_witness,
    derived_subalgebra, form_failures, invariant_forms, is_ideal, is_perfect, lie_generating_set,
    maps_of, quotient, subalgebra, weight_decomposition,
)

logger = logging.getLogger('algebra')


@dataclass(frozen=True)
class CentroidBasis:
    """Basis of Cent(L) with its multiplication table; maps[identity_index] is id."""

    algebra: SCAlgebra
    maps: Tuple[Matrix, ...]
    structure_constants: Tuple[Tuple[Vector, ...], ...]
    identity_index: int = 0

    @property
    def dim(self) -> int:
        return len(self.maps)

    @cached_property
    def _solver(self) -> CoordinateSolver:
        n = self.algebra.dim
        return CoordinateSolver([m.flatten() for m in self.maps], n * n)

    def span(self) -> Subspace:
        n = self.algebra.dim
        return Subspace.span([m.flatten() for m in self.maps], n * n)

    def coordinates(self, m: Matrix) -> Optional[Vector]:
        return self._solver.coordinates(m.flatten())

    def contains(self, m: Matrix) -> bool:
        return self.coordinates(m) is not None

    def map_of(self, coords: Sequence[Fraction]) -> Matrix:
        n = self.algebra.dim
        out = Matrix.zeros(n, n)
        for c, m in zip(coords, self.maps):
            if c:
                out = out + m.scaled(c)
        return out

    def compose(self, i: int, j: int) -> Vector:
        return self.structure_constants[i][j]

    @property
    def is_commutative(self) -> bool:
        return all(self.structure_constants[i][j] == self.structure_constants[j][i]
                   for i, j in combinations(range(self.dim), 2))

    def left_regular(self, coords: Sequence[Fraction]) -> Matrix:
        """Matrix of left multiplication by an element, acting on centroid coordinates."""
        columns = []
        for j in range(self.dim):
            col = [ZERO] * self.dim
            for i, c in enumerate(coords):
                if c:
                    for k, v in enumerate(self.structure_constants[i][j]):
                        col[k] += c * v
            columns.append(col)
        return Matrix.from_columns(columns, self.dim)


@dataclass(frozen=True)
class GradedCentroid:
    algebra: SCAlgebra
    grading: Grading
    components: Tuple[Tuple[Degree, Tuple[Matrix, ...]], ...]

    def component(self, degree: Sequence[int]) -> Tuple[Matrix, ...]:
        key = self.grading.normalize(degree)
        for deg, maps in self.components:
            if deg == key:
                return maps
        return ()

    @property
    def support(self) -> List[Degree]:
        return [deg for deg, maps in self.components if maps]

    @property
    def dim(self) -> int:
        return sum(len(maps) for _, maps in self.components)


# ---------------------------------------------------------------------------
# The defining system
# ---------------------------------------------------------------------------

def centroid_equations(a: SCAlgebra, generators: Optional[Sequence[int]] = None) -> List[Dict[int, Fraction]]:
    """Rows of chi ad_x - ad_x chi = 0 in the unknowns chi[r][c] (index r*n + c)."""
    n = a.dim
    if generators is None:
        generators = lie_generating_set(a)
    rows = []
    for g in generators:
        by_col: Dict[int, List[Tuple[int, Fraction]]] = {}
        by_row: Dict[int, List[Tuple[int, Fraction]]] = {}
        for (k, j), c in a.ad_cells(g).items():
            by_col.setdefault(j, []).append((k, c))
            by_row.setdefault(k, []).append((j, c))
        for r, c in product(range(n), repeat=2):
            row: Dict[int, Fraction] = {}
            for m, v in by_col.get(c, ()):
                row[r * n + m] = row.get(r * n + m, ZERO) + v
            for m, v in by_row.get(r, ()):
                row[m * n + c] = row.get(m * n + c, ZERO) - v
            row = {key: v for key, v in row.items() if v}
            if row:
                rows.append(row)
    return rows


def centroid_witness(a: SCAlgebra, m: Matrix) -> Optional[Tuple[str, str]]:
    """None when m is centroidal on every ordered pair, else the first failing pair."""
    if (m.rows, m.cols) != (a.dim, a.dim):
        raise AlgebraInputError(f"Map must be {a.dim}x{a.dim}")
    images = [m.column(i) for i in range(a.dim)]
    for i, j in product(range(a.dim), repeat=2):
        e_i, e_j = unit_vector(a.dim, i), unit_vector(a.dim, j)
        target = m.apply(a.bracket_basis(i, j))
        if target != a.bracket(images[i], e_j) or target != a.bracket(e_i, images[j]):
            return a.basis_names[i], a.basis_names[j]
    return None


def is_centroidal(a: SCAlgebra, m: Matrix) -> bool:
    return centroid_witness(a, m) is None


def _basis_from_maps(a: SCAlgebra, candidates: Sequence[Matrix]) -> CentroidBasis:
    """Identity first, then a greedy independent extension, with the multiplication table."""
    n = a.dim
    echelon = RowEchelon(n * n)
    maps: List[Matrix] = []
    for m in [Matrix.identity(n)] + list(candidates):
        if echelon.insert(sparse(m.flatten())) is not None:
            maps.append(m)
    for m in maps:
        witness = centroid_witness(a, m)
        if witness is not None:
            raise InvariantViolation(f"Centroid map of {a.name} fails on {witness}", witness=witness)
    solver = CoordinateSolver([m.flatten() for m in maps], n * n)
    table = []
    for x in maps:
        row = []
        for y in maps:
            coords = solver.coordinates((x @ y).flatten())
            if coords is None:
                raise InvariantViolation(f"Centroid of {a.name} is not closed under composition")
            row.append(coords)
        table.append(tuple(row))
    basis = CentroidBasis(a, tuple(maps), tuple(table), 0)
    if is_perfect(a) and not basis.is_commutative:
        raise InvariantViolation(f"Centroid of the perfect algebra {a.name} is not commutative")
    return basis


def centroid(a: SCAlgebra) -> CentroidBasis:
    n = a.dim
    logger.info(f"Computing centroid of {a.name} (dim {n})")
    solutions = nullspace(centroid_equations(a), n * n, label=f'centroid({a.name})')
    basis = _basis_from_maps(a, [Matrix.from_flat(n, n, v) for v in solutions])
    if basis.dim != len(solutions):
        raise InvariantViolation("Centroid basis size disagrees with the solution space")
    logger.info(f"Centroid of {a.name} has dimension {basis.dim}")
    return basis


# ---------------------------------------------------------------------------
# Ideals and derivations
# ---------------------------------------------------------------------------

def vanishing_ideal(a: SCAlgebra, b: Subspace, cent: Optional[CentroidBasis] = None) -> List[Matrix]:
    """V(B): the centroid elements killing the ideal B."""
    if not is_ideal(a, b):
        raise AlgebraInputError("Subspace is not an ideal")
    cent = cent or centroid(a)
    for k, chi in enumerate(cent.maps):
        for x in b.basis:
            image = chi.apply(x)
            if not b.contains(image):
                raise AlgebraInputError("Ideal is not invariant under the centroid",
                                        witness={'map': k, 'element': [format_rational(v) for v in x]})
    rows = []
    images = [[chi.apply(x) for chi in cent.maps] for x in b.basis]
    for per_map in images:
        for r in range(a.dim):
            row = {k: v[r] for k, v in enumerate(per_map) if v[r]}
            if row:
                rows.append(row)
    solutions = nullspace(rows, cent.dim, label='vanishing ideal')
    result = [cent.map_of(s) for s in solutions]

    if 0 < b.dim:
        sub_centroid = centroid(subalgebra(a, b)).dim
        if sub_centroid == 1 and cent.dim != 1 + len(result):
            raise InvariantViolation(f"dim Cent = {cent.dim} but 1 + dim V(B) = {1 + len(result)}")
    return result


def centroid_cap_der(a: SCAlgebra, cent: Optional[CentroidBasis] = None) -> List[Matrix]:
    """Maps vanishing on [L, L] with image in Z(L); checked against Cent(L) and Der(L)."""
    from .cohomext import derivations

    n = a.dim
    derived = derived_subalgebra(a)
    functionals = nullspace([sparse(v) for v in derived.basis], n, label='functionals on L/[L,L]')
    z = centre(a)
    maps = [Matrix.from_sparse(n, n, {(r, c): zr * fc for r, zr in enumerate(zv) if zr
                                      for c, fc in enumerate(f) if fc})
            for zv in z.basis for f in functionals]
    span = Subspace.span([m.flatten() for m in maps], n * n)
    if span.dim != (n - derived.dim) * z.dim:
        raise InvariantViolation("Hom(L/[L,L], Z(L)) has the wrong dimension")

    cent = cent or centroid(a)
    intersection = cent.span().intersection(derivations(a))
    if intersection != span:
        raise InvariantViolation(f"Cent ∩ Der of {a.name} differs from Hom(L/[L,L], Z(L))")
    return maps_of(span, n)


# ---------------------------------------------------------------------------
# Gradings
# ---------------------------------------------------------------------------

def homogeneous_components(grading: Grading, m: Matrix) -> Dict[Degree, Matrix]:
    """Split a map into pieces of pure degree deg(i) - deg(j)."""
    cells: Dict[Degree, Dict[Tuple[int, int], Fraction]] = {}
    for i, j in product(range(m.rows), range(m.cols)):
        v = m[i, j]
        if v:
            deg = grading.sub(grading.degrees[i], grading.degrees[j])
            cells.setdefault(deg, {})[(i, j)] = v
    return {deg: Matrix.from_sparse(m.rows, m.cols, c) for deg, c in cells.items()}


def graded_centroid(a: SCAlgebra, cent: Optional[CentroidBasis] = None) -> GradedCentroid:
    if a.grading is None:
        raise AlgebraInputError(f"{a.name} carries no grading")
    cent = cent or centroid(a)
    n = a.dim
    pieces: Dict[Degree, List[Matrix]] = {}
    for chi in cent.maps:
        for deg, part in homogeneous_components(a.grading, chi).items():
            witness = centroid_witness(a, part)
            if witness is not None:
                raise InvariantViolation(f"Homogeneous component of degree {deg} is not centroidal", witness=witness)
            pieces.setdefault(deg, []).append(part)
    components = []
    for deg in sorted(pieces):
        space = Subspace.span([m.flatten() for m in pieces[deg]], n * n)
        components.append((deg, tuple(maps_of(space, n))))
    result = GradedCentroid(a, a.grading, tuple(components))
    if result.dim != cent.dim:
        raise InvariantViolation(f"Graded components sum to {result.dim}, centroid has {cent.dim}")
    together = Subspace.span([m.flatten() for _, maps in components for m in maps], n * n)
    if together != cent.span():
        raise InvariantViolation("Graded components do not span the centroid")
    return result


def _field_verdict(maps: Sequence[Matrix]) -> Optional[bool]:
    """True/False when the span of maps (a commutative algebra containing id) is decided to be a field."""
    dim = len(maps)
    if dim == 1:
        return True
    candidates = list(maps) + [
        _combination(maps, [Fraction(k + 1) ** s for k in range(dim)]) for s in range(1, dim * dim + 1)
    ]
    for x in candidates:
        if x.inverse() is None and not x.is_zero():
            return False
        poly = minimal_polynomial(x)
        if not poly.is_irreducible:
            return False
        if poly.degree() == dim:
            return True
    return None


def _combination(maps: Sequence[Matrix], coeffs: Sequence[Fraction]) -> Matrix:
    out = Matrix.zeros(maps[0].rows, maps[0].cols)
    for c, m in zip(coeffs, maps):
        out = out + m.scaled(c)
    return out


def division_graded_report(gc: GradedCentroid) -> Dict[str, Any]:
    """Invertibility of homogeneous centroid elements and the shape of the support."""
    zero = gc.component(gc.grading.zero)
    field = _field_verdict(zero) if zero else False
    components = []
    division: Optional[bool] = field
    for deg, maps in gc.components:
        invertible = next((k for k, m in enumerate(maps) if m.inverse() is not None), None)
        singular = next((k for k, m in enumerate(maps) if m.inverse() is None), None)
        components.append({'degree': list(deg), 'dim': len(maps), 'invertible_witness': invertible,
                           'singular_witness': singular})
        if singular is not None or len(maps) != len(zero):
            division = False
        elif invertible is None and division:
            division = None
    support = gc.support
    twisted = bool(division) and all(c['dim'] <= len(zero) for c in components)
    return {
        'algebra': gc.algebra.name,
        'components': components,
        'support': [list(d) for d in support],
        'support_is_subgroup': gc.grading.is_subgroup(support),
        'zero_component_is_field': field,
        'division_graded': division,
        'twisted_group_ring': twisted,
    }


def _is_rational_power(value: Fraction, m: int) -> bool:
    if value < 0 and m % 2 == 0:
        return False
    _, num_exact = sympy.integer_nthroot(abs(value.numerator), m)
    _, den_exact = sympy.integer_nthroot(value.denominator, m)
    return bool(num_exact and den_exact)


def recognize_twisted_group_ring(gc: GradedCentroid) -> Dict[str, Any]:
    """For C^0 = Q: the scalar c with u^r = c id for a generator u of each cyclic factor of the support."""
    grading = gc.grading
    zero = gc.component(grading.zero)
    report: Dict[str, Any] = {'supported': False, 'generators': [], 'trivial': None}
    if len(zero) != 1 or grading.free_rank or not grading.is_subgroup(gc.support):
        report['reason'] = 'needs C^0 = Q and a finite support subgroup'
        return report
    n = gc.algebra.dim
    identity = Matrix.identity(n)
    support = set(gc.support)
    for factor, modulus in enumerate(grading.torsion):
        step = next((k for k in range(1, modulus + 1)
                     if grading.normalize([k if f == factor else 0 for f in range(grading.width)]) in support),
                    modulus)
        if step == modulus:
            continue
        degree = grading.normalize([step if f == factor else 0 for f in range(grading.width)])
        order = modulus // gcd(modulus, step)
        maps = gc.component(degree)
        if len(maps) != 1:
            report['reason'] = f'component {list(degree)} is not one-dimensional'
            return report
        power = maps[0].power(order)
        scalar = power[0, 0]
        if power != identity.scaled(scalar) or not scalar:
            report['reason'] = f'u^{order} is not a nonzero scalar at degree {list(degree)}'
            return report
        report['generators'].append({'degree': list(degree), 'order': order, 'scalar': format_rational(scalar),
                                     'is_power': _is_rational_power(scalar, order)})
    report['supported'] = True
    report['trivial'] = all(g['is_power'] for g in report['generators'])
    return report


def evaluation_map_injective(a: SCAlgebra, elem: Sequence[Fraction], cent: Optional[CentroidBasis] = None) -> bool:
    if not any(elem):
        raise AlgebraInputError("Evaluation at the zero element")
    if a.grading is not None and a.grading.degree_of_vector(elem) is None:
        raise AlgebraInputError("Evaluation element is not homogeneous")
    cent = cent or centroid(a)
    return Subspace.span([chi.apply(elem) for chi in cent.maps], a.dim).dim == cent.dim


# ---------------------------------------------------------------------------
# Local structure, symmetry, quotients
# ---------------------------------------------------------------------------

def _split_idempotent(chi: Matrix) -> Optional[Matrix]:
    """An idempotent e != 0, id in Q[chi] when the minimal polynomial has two coprime factors."""
    poly = minimal_polynomial(chi)
    _, factors = poly.factor_list()
    if len(factors) < 2:
        return None
    first = factors[0][0] ** factors[0][1]
    rest = sympy.Poly(1, poly.gen, domain='QQ')
    for f, e in factors[1:]:
        rest = rest * f ** e
    s, _, g = sympy.gcdex(first, rest)
    if g.as_expr() != 1:
        raise InvariantViolation("Coprime factors have a nontrivial gcd")
    idempotent = evaluate_polynomial(s * first, chi)
    if idempotent @ idempotent != idempotent:
        raise InvariantViolation("Constructed element is not idempotent")
    return idempotent


def _products_span(cent: CentroidBasis, left: Sequence[Vector], right: Sequence[Vector]) -> List[Vector]:
    out = []
    for u in left:
        mult = cent.left_regular(u)
        out.extend(mult.apply(v) for v in right)
    return list(Subspace.span(out, cent.dim).basis)


def centroid_local_analysis(a: SCAlgebra, cent: Optional[CentroidBasis] = None) -> Dict[str, Any]:
    cent = cent or centroid(a)
    n = a.dim
    report: Dict[str, Any] = {'algebra': a.name, 'centroid_dim': cent.dim, 'commutative': cent.is_commutative,
                              'idempotent': None}
    if cent.is_commutative:
        regular = [cent.left_regular(unit_vector(cent.dim, i)) for i in range(cent.dim)]
        trace_form = Matrix.from_rows([[(x @ y).trace() for y in regular] for x in regular])
        radical = nullspace(trace_form.sparse_rows(), cent.dim, label='centroid radical')
        for v in radical:
            if not cent.map_of(v).is_nilpotent():
                raise InvariantViolation("Radical element is not nilpotent")
        power = list(radical)
        index = 1
        while power:
            power = _products_span(cent, power, radical)
            index += 1
            if index > cent.dim + 1:
                raise InvariantViolation("Radical is not nilpotent")
        report.update({
            'restricted': False,
            'radical_dim': len(radical),
            'radical': [cent.map_of(v) for v in radical],
            'nilpotency_index': index,
            'semisimple_quotient_dim': cent.dim - len(radical),
            'field': _field_verdict(cent.maps) if not radical else False,
        })
        if cent.dim - len(radical) == 1:
            report['verdict'] = 'indecomposable'
            return report
    else:
        nilpotent = [k for k, m in enumerate(cent.maps) if m.is_nilpotent()]
        report.update({'restricted': True, 'nilpotent_basis_elements': nilpotent})

    candidates = list(cent.maps) + [_combination(cent.maps, [Fraction(k + 1) ** s for k in range(cent.dim)])
                                    for s in range(1, cent.dim + 1)]
    for chi in candidates:
        e = _split_idempotent(chi)
        if e is not None and not e.is_zero() and e != Matrix.identity(n):
            report['verdict'] = 'decomposable'
            report['idempotent'] = e
            return report
    report['verdict'] = 'undetermined'
    return report


def centroid_symmetry_check(a: SCAlgebra, form: Optional[Matrix] = None,
                            cent: Optional[CentroidBasis] = None) -> Dict[str, Any]:
    """(chi x | y) = (x | chi y) for every centroid map, against one form or every invariant form."""
    n = a.dim
    if form is None:
        form = a.form
    forms = [form] if form is not None else maps_of(invariant_forms(a), n)
    for f in forms:
        if form_failures(a, f):
            raise AlgebraInputError("Form is not a symmetric invariant form")
    perfect = is_perfect(a)
    if not perfect:
        logger.warning(f"Symmetry check on the non-perfect {a.name}: precondition not met, checking anyway")
    cent = cent or centroid(a)
    failures = []
    for fi, f in enumerate(forms):
        for k, chi in enumerate(cent.maps):
            if chi.transpose() @ f != f @ chi:
                failures.append({'form': fi, 'map': k})
    return {'algebra': a.name, 'precondition': perfect, 'forms_checked': len(forms),
            'symmetric': not failures, 'failures': failures}


def induce_quotient_centroid(a: SCAlgebra, ideal: Subspace, cent: Optional[CentroidBasis] = None) -> Dict[str, Any]:
    """Maps chi with chi(I) in I induce chi-bar on L/I for a central ideal I."""
    z = centre(a)
    if not ideal.is_subspace_of(z):
        raise AlgebraInputError("Ideal is not central")
    cent = cent or centroid(a)
    if ideal.dim == 0:
        return {'quotient': a, 'projection': Matrix.identity(a.dim), 'compatible': list(cent.maps),
                'images': list(cent.maps), 'injective': True}
    b, projection = quotient(a, ideal)
    keep = ideal.complement_indices()

    rows = []
    for x in ideal.basis:
        residuals = [ideal.residual(chi.apply(x)) for chi in cent.maps]
        for r in range(a.dim):
            row = {k: v[r] for k, v in enumerate(residuals) if v[r]}
            if row:
                rows.append(row)
    compatible = [cent.map_of(s) for s in nullspace(rows, cent.dim, label='compatible maps')]
    images = []
    for chi in compatible:
        induced = Matrix.from_columns([projection.apply(chi.column(i)) for i in keep], b.dim)
        if projection @ chi != induced @ projection:
            raise InvariantViolation("Induced map does not commute with the projection")
        if not is_centroidal(b, induced):
            raise InvariantViolation("Induced map is not in the centroid of the quotient")
        images.append(induced)

    injective = None
    if is_perfect(a) and centre(b).dim == 0:
        injective = Subspace.span([m.flatten() for m in images], b.dim * b.dim).dim == len(compatible)
        if not injective:
            raise InvariantViolation("Induced centroid map is not injective")
    return {'quotient': b, 'projection': projection, 'compatible': compatible, 'images': images,
            'injective': injective}


# ---------------------------------------------------------------------------
# Toral reconstruction
# ---------------------------------------------------------------------------

def toral_centroid(a: SCAlgebra, toral: Optional[Subspace] = None,
                   cent: Optional[CentroidBasis] = None) -> Tuple[CentroidBasis, Dict[str, Any]]:
    """Centroid rebuilt from chi|_h with chi(h) in Z(L_0) and chi(x_alpha) = [chi(t_alpha), x_alpha]."""
    n = a.dim
    if toral is None:
        toral = a.toral_subspace()
    if toral.dim == 0:
        logger.info(f"Toral subalgebra of {a.name} is zero; using the direct solve")
        basis = cent or centroid(a)
        return basis, {'fallback': True, 'matches_brute_force': True}

    decomposition = weight_decomposition(a, toral)
    l0 = decomposition.zero_space()
    z0 = centralizer(a, l0).intersection(l0)
    h = list(toral.basis)
    extra: List[Vector] = []
    for v in l0.basis:
        if not Subspace.span(h + extra, n).contains(v):
            extra.append(v)

    # unknowns: chi(h_k) in Z(L_0), chi(y) in L_0 for y completing h to L_0
    unknowns: List[Tuple[str, int, Vector]] = []
    for k in range(len(h)):
        for z in z0.basis:
            unknowns.append(('h', k, z))
    for k in range(len(extra)):
        for w in l0.basis:
            unknowns.append(('y', k, w))

    domain = h + extra
    root_vectors: List[Tuple[Vector, Vector]] = []
    for weight, space in decomposition.weights:
        if not any(weight):
            continue
        t = decomposition.t_alpha(weight)
        for x in space.basis:
            root_vectors.append((x, t))
        domain.extend(space.basis)
    solver = CoordinateSolver(domain, n)
    h_solver = CoordinateSolver(h, n)

    def map_for(u: int) -> Matrix:
        kind, k, target = unknowns[u]
        images: List[Vector] = []
        for idx, _ in enumerate(h):
            images.append(target if kind == 'h' and idx == k else (ZERO,) * n)
        for idx, _ in enumerate(extra):
            images.append(target if kind == 'y' and idx == k else (ZERO,) * n)
        for x, t in root_vectors:
            if kind == 'h':
                weight = h_solver.coordinates(t)[k]
                images.append(a.bracket(vec_scale(weight, target), x))
            else:
                images.append((ZERO,) * n)
        # chi = images * domain^{-1}
        columns = []
        for j in range(n):
            coords = solver.coordinates(unit_vector(n, j))
            col = [ZERO] * n
            for c, img in zip(coords, images):
                if c:
                    for r, v in enumerate(img):
                        col[r] += c * v
            columns.append(col)
        return Matrix.from_columns(columns, n)

    param_maps = [map_for(u) for u in range(len(unknowns))]
    rows = []
    generator_ads = [a.ad_basis(g) for g in lie_generating_set(a)]
    for ad in generator_ads:
        commutators = [m @ ad - ad @ m for m in param_maps]
        for r, c in product(range(n), repeat=2):
            row = {u: comm[r, c] for u, comm in enumerate(commutators) if comm[r, c]}
            if row:
                rows.append(row)
    solutions = nullspace(rows, len(unknowns), label=f'toral centroid({a.name})')
    rebuilt = [_combination(param_maps, s) for s in solutions]
    basis = _basis_from_maps(a, rebuilt)

    restrictions = [tuple(x for hk in h for x in chi.apply(hk)) for chi in basis.maps]
    restriction_injective = Subspace.span(restrictions, n * len(h)).dim == basis.dim
    brute = cent or centroid(a)
    matches = brute.span() == basis.span()
    if not matches:
        raise InvariantViolation(f"Toral reconstruction of Cent({a.name}) differs from the direct solve")
    for chi in basis.maps:
        for hk in h:
            if not z0.contains(chi.apply(hk)):
                raise InvariantViolation("Centroid map sends h outside Z(L_0)")
        for _, space in decomposition.weights:
            if not all(space.contains(chi.apply(v)) for v in space.basis):
                raise InvariantViolation("Centroid map does not preserve a weight space")
    certificate = {
        'fallback': False,
        'toral_dim': len(h),
        'zero_weight_dim': l0.dim,
        'z0_dim': z0.dim,
        'parameters': len(unknowns),
        'restriction_injective': restriction_injective,
        'matches_brute_force': matches,
    }
    return basis, certificate


# ---------------------------------------------------------------------------
# Induced actions
# ---------------------------------------------------------------------------

def _coordinates_matrix(cent: CentroidBasis, images: Sequence[Matrix], what: str) -> Matrix:
    columns = []
    for k, m in enumerate(images):
        coords = cent.coordinates(m)
        if coords is None:
            raise InvariantViolation(f"{what} of centroid map {k} left the centroid")
        columns.append(coords)
    return Matrix.from_columns(columns, cent.dim)


def induced_aut_action(a: SCAlgebra, f: Matrix, cent: Optional[CentroidBasis] = None) -> Matrix:
    """Matrix of chi -> f chi f^-1 in centroid coordinates."""
    witness = automorphism_witness(a, f)
    if witness is not None:
        raise AlgebraInputError("Map is not an automorphism", witness=witness)
    cent = cent or centroid(a)
    f_inv = f.inverse()
    conj = [f @ chi @ f_inv for chi in cent.maps]
    action = _coordinates_matrix(cent, conj, 'Conjugate')
    if action.inverse() is None:
        raise InvariantViolation("Induced action on the centroid is not invertible")
    for i, j in product(range(cent.dim), repeat=2):
        if cent.map_of(action.apply(cent.compose(i, j))) != conj[i] @ conj[j]:
            raise InvariantViolation("Induced action is not multiplicative")
    return action


def induced_der_action(a: SCAlgebra, d: Matrix, cent: Optional[CentroidBasis] = None) -> Matrix:
    """Matrix of chi -> d chi - chi d in centroid coordinates."""
    witness = derivation_witness(a, d)
    if witness is not None:
        raise AlgebraInputError("Map is not a derivation", witness=witness)
    cent = cent or centroid(a)
    images = [d @ chi - chi @ d for chi in cent.maps]
    action = _coordinates_matrix(cent, images, 'Commutator')
    for i, j in product(range(cent.dim), repeat=2):
        left = cent.map_of(action.apply(cent.compose(i, j)))
        right = images[i] @ cent.maps[j] + cent.maps[i] @ images[j]
        if left != right:
            raise InvariantViolation("Induced action is not a derivation of the centroid")
    return action


def describe_centroid(cent: CentroidBasis) -> Dict[str, Any]:
    return {
        'algebra': cent.algebra.name,
        'dim': cent.dim,
        'commutative': cent.is_commutative,
        'identity_index': cent.identity_index,
        'structure_constants': [[[format_rational(x) for x in v] for v in row] for row in cent.structure_constants],
    }

