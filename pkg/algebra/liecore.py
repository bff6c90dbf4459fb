"""
Structure-constant Lie algebras over Q.

An SCAlgebra stores [e_i, e_j] only for i < j; antisymmetry is implied.
Module-level functions implement the analyses (validation, series, centres,
closures, forms, weight decompositions) as pure functions over it.
"""
import logging
from dataclasses import dataclass, field, replace
from fractions import Fraction
from functools import cached_property
from itertools import combinations
from typing import Any, Dict, Iterable, List, Mapping, Optional, Sequence, Tuple

from .conf import kit_setting
from .exact_linalg import (
    ONE, ZERO, CoordinateSolver, Matrix, RowEchelon, Subspace, Vector,
    format_rational, nullspace, simultaneous_eigenspaces, sparse, unit_vector, vec_add, vec_scale,
)
from .exceptions import AlgebraInputError, InvariantViolation, NotSplitError, ResourceLimitError

logger = logging.getLogger('algebra')

Degree = Tuple[int, ...]
BracketTerms = Tuple[Tuple[int, Fraction], ...]


@dataclass(frozen=True)
class Grading:
    """Grading by Z^r x Z/m_1 x ... x Z/m_s; degrees[i] is the degree of e_i."""

    free_rank: int
    torsion: Tuple[int, ...]
    degrees: Tuple[Degree, ...]

    def __post_init__(self):
        if self.free_rank < 0 or any(m < 2 for m in self.torsion):
            raise AlgebraInputError(f"Invalid grading group Z^{self.free_rank} x {self.torsion}")
        width = self.free_rank + len(self.torsion)
        for idx, deg in enumerate(self.degrees):
            if len(deg) != width:
                raise AlgebraInputError(f"Degree of basis element {idx} has {len(deg)} components, expected {width}")
        object.__setattr__(self, 'degrees', tuple(self.normalize(d) for d in self.degrees))

    @classmethod
    def by_integers(cls, degrees: Sequence[int]) -> 'Grading':
        return cls(1, (), tuple((int(d),) for d in degrees))

    @classmethod
    def by_cyclic(cls, modulus: int, degrees: Sequence[int]) -> 'Grading':
        return cls(0, (modulus,), tuple((int(d),) for d in degrees))

    @property
    def width(self) -> int:
        return self.free_rank + len(self.torsion)

    @property
    def zero(self) -> Degree:
        return (0,) * self.width

    def normalize(self, deg: Sequence[int]) -> Degree:
        r = self.free_rank
        return tuple(int(d) for d in deg[:r]) + tuple(int(d) % m for d, m in zip(deg[r:], self.torsion))

    def add(self, a: Sequence[int], b: Sequence[int]) -> Degree:
        return self.normalize([x + y for x, y in zip(a, b)])

    def neg(self, a: Sequence[int]) -> Degree:
        return self.normalize([-x for x in a])

    def sub(self, a: Sequence[int], b: Sequence[int]) -> Degree:
        return self.add(a, self.neg(b))

    def same_group(self, other: 'Grading') -> bool:
        return self.free_rank == other.free_rank and self.torsion == other.torsion

    def components(self) -> Dict[Degree, Tuple[int, ...]]:
        out: Dict[Degree, List[int]] = {}
        for idx, deg in enumerate(self.degrees):
            out.setdefault(deg, []).append(idx)
        return {deg: tuple(idx) for deg, idx in sorted(out.items())}

    def support(self) -> List[Degree]:
        return sorted(set(self.degrees))

    def is_subgroup(self, elements: Iterable[Sequence[int]]) -> bool:
        """A finite set of group elements is a subgroup iff it has 0 and is closed under + and -."""
        items = {self.normalize(e) for e in elements}
        if self.zero not in items:
            return False
        return all(self.add(x, y) in items for x in items for y in items) and all(self.neg(x) in items for x in items)

    def degree_of_vector(self, v: Sequence[Fraction]) -> Optional[Degree]:
        """Degree of a homogeneous nonzero vector, None otherwise."""
        degrees = {self.degrees[i] for i, x in enumerate(v) if x}
        return degrees.pop() if len(degrees) == 1 else None

    def as_dict(self) -> Dict[str, Any]:
        return {'free_rank': self.free_rank, 'torsion': list(self.torsion), 'degrees': [list(d) for d in self.degrees]}


@dataclass(frozen=True)
class SCAlgebra:
    """Finite-dimensional Lie algebra given by sparse structure constants."""

    name: str
    basis_names: Tuple[str, ...]
    brackets: Tuple[Tuple[Tuple[int, int], BracketTerms], ...]
    grading: Optional[Grading] = None
    toral_indices: Optional[Tuple[int, ...]] = None
    form: Optional[Matrix] = field(default=None, compare=True)

    def __post_init__(self):
        n = len(self.basis_names)
        if len(set(self.basis_names)) != n:
            raise AlgebraInputError(f"Duplicate basis names in {self.name}")
        seen = set()
        canonical = []
        for (i, j), terms in self.brackets:
            if i == j:
                raise AlgebraInputError(f"Diagonal bracket ({i},{i}) is not allowed")
            if not (0 <= i < j < n):
                raise AlgebraInputError(f"Bracket indices ({i},{j}) must satisfy 0 <= i < j < {n}")
            if (i, j) in seen:
                raise AlgebraInputError(f"Bracket ({i},{j}) given twice")
            seen.add((i, j))
            merged: Dict[int, Fraction] = {}
            for k, c in terms:
                if not (0 <= k < n):
                    raise AlgebraInputError(f"Bracket ({i},{j}) has target index {k} out of range")
                merged[k] = merged.get(k, ZERO) + Fraction(c)
            cleaned = tuple((k, c) for k, c in sorted(merged.items()) if c)
            if cleaned:
                canonical.append(((i, j), cleaned))
        object.__setattr__(self, 'brackets', tuple(sorted(canonical)))
        if self.grading is not None and len(self.grading.degrees) != n:
            raise AlgebraInputError(f"Grading lists {len(self.grading.degrees)} degrees for dimension {n}")
        if self.toral_indices is not None:
            if any(not (0 <= t < n) for t in self.toral_indices):
                raise AlgebraInputError("Toral index out of range")
            object.__setattr__(self, 'toral_indices', tuple(sorted(set(self.toral_indices))))
        if self.form is not None and (self.form.rows, self.form.cols) != (n, n):
            raise AlgebraInputError(f"Form must be {n}x{n}")

    @classmethod
    def from_table(cls, name: str, basis_names: Sequence[str],
                   table: Mapping[Tuple[int, int], Mapping[int, Any]], **extra) -> 'SCAlgebra':
        """Build from brackets given for either index order; (j,i) entries are negated."""
        stored: Dict[Tuple[int, int], Dict[int, Fraction]] = {}
        for (i, j), terms in table.items():
            if i == j:
                if any(Fraction(c) for c in terms.values()):
                    raise AlgebraInputError(f"Diagonal bracket ({i},{i}) must vanish")
                continue
            key, sign = ((i, j), 1) if i < j else ((j, i), -1)
            if key in stored:
                raise AlgebraInputError(f"Bracket {key} specified in both orders")
            stored[key] = {k: sign * Fraction(c) for k, c in terms.items()}
        brackets = tuple((key, tuple(sorted(terms.items()))) for key, terms in sorted(stored.items()))
        return cls(name, tuple(basis_names), brackets, **extra)

    @property
    def dim(self) -> int:
        return len(self.basis_names)

    @cached_property
    def _table(self) -> Dict[Tuple[int, int], Dict[int, Fraction]]:
        table: Dict[Tuple[int, int], Dict[int, Fraction]] = {}
        for (i, j), terms in self.brackets:
            table[(i, j)] = dict(terms)
            table[(j, i)] = {k: -c for k, c in terms}
        return table

    @cached_property
    def _ad_cells(self) -> Tuple[Dict[Tuple[int, int], Fraction], ...]:
        cells: List[Dict[Tuple[int, int], Fraction]] = [{} for _ in range(self.dim)]
        for (i, j), terms in self._table.items():
            for k, c in terms.items():
                cells[i][(k, j)] = c
        return tuple(cells)

    def index(self, name: str) -> int:
        try:
            return self.basis_names.index(name)
        except ValueError:
            raise AlgebraInputError(f"{self.name} has no basis element {name!r}")

    def basis_vector(self, name_or_index) -> Vector:
        idx = self.index(name_or_index) if isinstance(name_or_index, str) else name_or_index
        return unit_vector(self.dim, idx)

    def element(self, coeffs: Mapping[str, Any]) -> Vector:
        out = [ZERO] * self.dim
        for name, c in coeffs.items():
            out[self.index(name)] += Fraction(c)
        return tuple(out)

    def structure(self, i: int, j: int) -> Dict[int, Fraction]:
        return self._table.get((i, j), {})

    def bracket_basis(self, i: int, j: int) -> Vector:
        out = [ZERO] * self.dim
        for k, c in self.structure(i, j).items():
            out[k] = c
        return tuple(out)

    def bracket(self, x: Sequence[Fraction], y: Sequence[Fraction]) -> Vector:
        if len(x) != self.dim or len(y) != self.dim:
            raise AlgebraInputError(f"Vectors must have length {self.dim}")
        out = [ZERO] * self.dim
        xs = [(i, a) for i, a in enumerate(x) if a]
        ys = [(j, b) for j, b in enumerate(y) if b]
        table = self._table
        for i, a in xs:
            for j, b in ys:
                terms = table.get((i, j))
                if terms:
                    ab = a * b
                    for k, c in terms.items():
                        out[k] += ab * c
        return tuple(out)

    def ad_basis(self, i: int) -> Matrix:
        return Matrix.from_sparse(self.dim, self.dim, self._ad_cells[i])

    def ad_cells(self, i: int) -> Dict[Tuple[int, int], Fraction]:
        return self._ad_cells[i]

    def ad(self, x: Sequence[Fraction]) -> Matrix:
        cells: Dict[Tuple[int, int], Fraction] = {}
        for i, a in enumerate(x):
            if a:
                for key, c in self._ad_cells[i].items():
                    cells[key] = cells.get(key, ZERO) + a * c
        return Matrix.from_sparse(self.dim, self.dim, cells)

    def toral_subspace(self) -> Subspace:
        if self.toral_indices is None:
            raise AlgebraInputError(f"{self.name} has no toral designation")
        return Subspace.spanned_by_indices(self.toral_indices, self.dim)

    def with_grading(self, grading: Optional[Grading]) -> 'SCAlgebra':
        return replace(self, grading=grading)

    def with_toral(self, indices: Optional[Sequence[int]]) -> 'SCAlgebra':
        return replace(self, toral_indices=None if indices is None else tuple(indices))

    def with_form(self, form: Optional[Matrix]) -> 'SCAlgebra':
        return replace(self, form=form)

    def renamed(self, name: str) -> 'SCAlgebra':
        return replace(self, name=name)


@dataclass(frozen=True)
class OperatorAlgebraBasis:
    """Basis of an associative subalgebra of End(A); maps[0] is the identity."""

    maps: Tuple[Matrix, ...]

    @property
    def dim(self) -> int:
        return len(self.maps)


@dataclass(frozen=True)
class WeightDecomposition:
    """Joint eigenspaces of ad(h) for a toral subalgebra h."""

    toral_basis: Tuple[Vector, ...]
    weights: Tuple[Tuple[Vector, Subspace], ...]

    def space(self, weight: Sequence[Fraction]) -> Optional[Subspace]:
        key = tuple(Fraction(w) for w in weight)
        for value, space in self.weights:
            if value == key:
                return space
        return None

    @property
    def zero_weight(self) -> Vector:
        return (ZERO,) * len(self.toral_basis)

    def zero_space(self) -> Subspace:
        space = self.space(self.zero_weight)
        if space is None:
            raise InvariantViolation("Zero weight space missing from a toral decomposition")
        return space

    def nonzero_weights(self) -> List[Vector]:
        return [w for w, _ in self.weights if any(w)]

    def weight_of(self, v: Sequence[Fraction]) -> Optional[Vector]:
        for value, space in self.weights:
            if space.contains(v):
                return value
        return None

    def t_alpha(self, weight: Sequence[Fraction]) -> Vector:
        """An element t of h with weight(t) = 1."""
        for k, value in enumerate(weight):
            if value:
                return vec_scale(ONE / Fraction(value), self.toral_basis[k])
        raise AlgebraInputError("The zero weight has no t_alpha")

    def as_dict(self) -> Dict[str, Any]:
        return {
            'toral_dim': len(self.toral_basis),
            'weights': [
                {'weight': [format_rational(x) for x in w], 'dim': s.dim}
                for w, s in self.weights
            ],
        }


# ---------------------------------------------------------------------------
# Validation
# ---------------------------------------------------------------------------

def bracket(a: SCAlgebra, x: Sequence[Fraction], y: Sequence[Fraction]) -> Vector:
    return a.bracket(x, y)


def jacobi_residual(a: SCAlgebra, i: int, j: int, k: int) -> Vector:
    e = lambda t: unit_vector(a.dim, t)  # noqa: E731
    r1 = a.bracket(a.bracket_basis(i, j), e(k))
    r2 = a.bracket(a.bracket_basis(j, k), e(i))
    r3 = a.bracket(a.bracket_basis(k, i), e(j))
    return tuple(x + y + z for x, y, z in zip(r1, r2, r3))


def validate(a: SCAlgebra) -> Dict[str, Any]:
    """Check Jacobi on all triples, grading compatibility and form invariance."""
    results: Dict[str, Any] = {
        'algebra': a.name,
        'dim': a.dim,
        'passed': True,
        'jacobi_failures': [],
        'grading_failures': [],
        'form_failures': [],
    }
    names = a.basis_names
    for i, j, k in combinations(range(a.dim), 3):
        residual = jacobi_residual(a, i, j, k)
        if any(residual):
            results['jacobi_failures'].append({
                'triple': [names[i], names[j], names[k]],
                'indices': [i, j, k],
                'residual': [format_rational(x) for x in residual],
            })

    if a.grading is not None:
        g = a.grading
        for (i, j), terms in a.brackets:
            expected = g.add(g.degrees[i], g.degrees[j])
            for k, _ in terms:
                if g.degrees[k] != expected:
                    results['grading_failures'].append({
                        'pair': [names[i], names[j]],
                        'target': names[k],
                        'expected_degree': list(expected),
                        'actual_degree': list(g.degrees[k]),
                    })

    if a.form is not None:
        results['form_failures'] = form_failures(a, a.form)

    results['passed'] = not (results['jacobi_failures'] or results['grading_failures'] or results['form_failures'])
    if not results['passed']:
        logger.warning(f"Validation of {a.name} failed: {len(results['jacobi_failures'])} Jacobi, "
                       f"{len(results['grading_failures'])} grading, {len(results['form_failures'])} form")
    return results


def form_failures(a: SCAlgebra, form: Matrix) -> List[Dict[str, Any]]:
    """Symmetry and invariance ([x,y]|z) = (x|[y,z]) failures of a bilinear form."""
    failures = []
    if form != form.transpose():
        failures.append({'kind': 'not symmetric'})
        return failures
    for y in range(a.dim):
        ad_y = a.ad_basis(y)
        skew = ad_y.transpose() @ form + form @ ad_y
        if not skew.is_zero():
            failures.append({'kind': 'not invariant', 'element': a.basis_names[y]})
    return failures


def is_lie_algebra(a: SCAlgebra) -> bool:
    return not any(any(jacobi_residual(a, i, j, k)) for i, j, k in combinations(range(a.dim), 3))


# ---------------------------------------------------------------------------
# Ideals, series, centres
# ---------------------------------------------------------------------------

def brackets_of(a: SCAlgebra, s: Subspace, t: Subspace) -> Subspace:
    return Subspace.span([a.bracket(u, v) for u in s.basis for v in t.basis], a.dim)


def derived_subalgebra(a: SCAlgebra) -> Subspace:
    return Subspace.span([a.bracket_basis(i, j) for (i, j), _ in a.brackets], a.dim)


def is_perfect(a: SCAlgebra) -> bool:
    return derived_subalgebra(a).dim == a.dim


def is_ideal(a: SCAlgebra, s: Subspace) -> bool:
    for i in range(a.dim):
        e = unit_vector(a.dim, i)
        for v in s.basis:
            if not s.contains(a.bracket(e, v)):
                return False
    return True


def _series(a: SCAlgebra, step) -> List[Subspace]:
    terms = [Subspace.whole(a.dim)]
    while True:
        nxt = step(terms[-1])
        if not is_ideal(a, nxt):
            raise InvariantViolation("A series term is not an ideal")
        if nxt == terms[-1]:
            return terms
        terms.append(nxt)
        if nxt.dim == 0:
            return terms


def derived_series(a: SCAlgebra) -> List[Subspace]:
    return _series(a, lambda s: brackets_of(a, s, s))


def lower_central_series(a: SCAlgebra) -> List[Subspace]:
    whole = Subspace.whole(a.dim)
    return _series(a, lambda s: brackets_of(a, whole, s))


def _vanishing_rows(a: SCAlgebra, vectors: Sequence[Vector], left: bool) -> List[Dict[int, Fraction]]:
    """Equations in z for [z, v] = 0 (left) or [v, z] = 0 for every v."""
    rows = []
    for v in vectors:
        images = [a.bracket(unit_vector(a.dim, i), v) if left else a.bracket(v, unit_vector(a.dim, i))
                  for i in range(a.dim)]
        for k in range(a.dim):
            row = {i: img[k] for i, img in enumerate(images) if img[k]}
            if row:
                rows.append(row)
    return rows


def centralizer(a: SCAlgebra, s: Subspace) -> Subspace:
    return Subspace.span(nullspace(_vanishing_rows(a, s.basis, True), a.dim, label='centralizer'), a.dim)


def centre(a: SCAlgebra) -> Subspace:
    return centralizer(a, Subspace.whole(a.dim))


def annihilator(a: SCAlgebra, s: Subspace) -> Subspace:
    rows = _vanishing_rows(a, s.basis, True) + _vanishing_rows(a, s.basis, False)
    result = Subspace.span(nullspace(rows, a.dim, label='annihilator'), a.dim)
    if result != centralizer(a, s):
        raise InvariantViolation("Annihilator and centralizer differ for a Lie algebra")
    return result


# ---------------------------------------------------------------------------
# Generation, multiplication algebra
# ---------------------------------------------------------------------------

def generated_subalgebra(a: SCAlgebra, vectors: Iterable[Sequence[Fraction]]) -> Subspace:
    echelon = RowEchelon(a.dim)
    members: List[Vector] = []
    for v in vectors:
        if echelon.insert(sparse(v)) is not None:
            members.append(tuple(v))
    idx = 0
    while idx < len(members):
        u = members[idx]
        for j in range(idx):
            w = a.bracket(members[j], u)
            if any(w) and echelon.insert(sparse(w)) is not None:
                members.append(w)
        idx += 1
    return Subspace.span(members, a.dim)


def lie_generating_set(a: SCAlgebra) -> Tuple[int, ...]:
    """Basis indices that generate a as a Lie algebra, chosen greedily in basis order."""
    gens: List[int] = []
    current = Subspace.zero(a.dim)
    for i in range(a.dim):
        if current.dim == a.dim:
            break
        e = unit_vector(a.dim, i)
        if current.contains(e):
            continue
        gens.append(i)
        current = generated_subalgebra(a, list(current.basis) + [e])
    return tuple(gens)


def mult_closure(a: SCAlgebra, max_dim: Optional[int] = None) -> OperatorAlgebraBasis:
    """Unital associative algebra generated by the ad operators, by breadth-first products."""
    n = a.dim
    if max_dim is None:
        max_dim = kit_setting('MULT_CLOSURE_LIMIT')
    if max_dim is None:
        max_dim = n * n
    generators = [a.ad_basis(i) for i in range(n)]
    generators = [g for g in generators if not g.is_zero()]
    echelon = RowEchelon(n * n)
    maps: List[Matrix] = []

    def offer(m: Matrix):
        if echelon.insert(sparse(m.flatten())) is not None:
            maps.append(m)
            if len(maps) > max_dim:
                raise ResourceLimitError(f"Multiplication closure of {a.name} exceeds {max_dim}", witness=len(maps))

    offer(Matrix.identity(n))
    idx = 0
    while idx < len(maps):
        current = maps[idx]
        for g in generators:
            offer(current @ g)
        idx += 1
    logger.debug(f"mult_closure({a.name}) has dimension {len(maps)}")
    return OperatorAlgebraBasis(tuple(maps))


def mult_module_generators(a: SCAlgebra, s: Subspace) -> bool:
    current = s
    while True:
        grown = current + brackets_of(a, Subspace.whole(a.dim), current)
        if grown == current:
            return current.dim == a.dim
        current = grown


# ---------------------------------------------------------------------------
# Sums, quotients, subalgebras, morphisms
# ---------------------------------------------------------------------------

def direct_sum(a: SCAlgebra, b: SCAlgebra) -> SCAlgebra:
    clash = set(a.basis_names) & set(b.basis_names)
    left = tuple(f"{n}_1" for n in a.basis_names) if clash else a.basis_names
    right = tuple(f"{n}_2" for n in b.basis_names) if clash else b.basis_names
    shift = a.dim
    brackets = list(a.brackets) + [
        ((i + shift, j + shift), tuple((k + shift, c) for k, c in terms)) for (i, j), terms in b.brackets
    ]
    grading = None
    if a.grading is not None and b.grading is not None and a.grading.same_group(b.grading):
        grading = Grading(a.grading.free_rank, a.grading.torsion, a.grading.degrees + b.grading.degrees)
    toral = None
    if a.toral_indices is not None or b.toral_indices is not None:
        toral = tuple(a.toral_indices or ()) + tuple(t + shift for t in (b.toral_indices or ()))
    form = None
    if a.form is not None and b.form is not None:
        cells = {(i, j): a.form[i, j] for i in range(a.dim) for j in range(a.dim) if a.form[i, j]}
        cells.update({(i + shift, j + shift): b.form[i, j] for i in range(b.dim) for j in range(b.dim) if b.form[i, j]})
        form = Matrix.from_sparse(a.dim + b.dim, a.dim + b.dim, cells)
    return SCAlgebra(f"{a.name}+{b.name}", left + right, tuple(brackets), grading, toral, form)


def quotient(a: SCAlgebra, ideal: Subspace) -> Tuple[SCAlgebra, Matrix]:
    """Quotient by an ideal on the complementary coordinate basis, with the projection."""
    if ideal.ambient_dim != a.dim:
        raise AlgebraInputError("Ideal lives in the wrong ambient space")
    if not is_ideal(a, ideal):
        raise AlgebraInputError("Subspace is not an ideal")
    keep = ideal.complement_indices()
    m = len(keep)

    def project(v: Sequence[Fraction]) -> Vector:
        residual = ideal.residual(v)
        return tuple(residual[idx] for idx in keep)

    projection = Matrix.from_columns([project(unit_vector(a.dim, i)) for i in range(a.dim)], m)
    table = {}
    for p, q in combinations(range(m), 2):
        image = project(a.bracket_basis(keep[p], keep[q]))
        terms = {k: c for k, c in enumerate(image) if c}
        if terms:
            table[(p, q)] = terms
    grading = None
    if a.grading is not None and all(a.grading.degree_of_vector(b) is not None for b in ideal.basis):
        grading = Grading(a.grading.free_rank, a.grading.torsion, tuple(a.grading.degrees[i] for i in keep))
    result = SCAlgebra.from_table(f"{a.name}/I", [a.basis_names[i] for i in keep], table, grading=grading)

    witness = is_homomorphism(a, result, projection)
    if witness is not None:
        raise InvariantViolation("Quotient projection is not a homomorphism", witness=witness)
    return result, projection


def subalgebra(a: SCAlgebra, s: Subspace, name: Optional[str] = None) -> SCAlgebra:
    """Structure constants of a subalgebra in its canonical basis."""
    solver = CoordinateSolver(s.basis, a.dim)
    table = {}
    for p, q in combinations(range(s.dim), 2):
        coords = solver.coordinates(a.bracket(s.basis[p], s.basis[q]))
        if coords is None:
            raise AlgebraInputError("Subspace is not closed under the bracket", witness=(p, q))
        terms = {k: c for k, c in enumerate(coords) if c}
        if terms:
            table[(p, q)] = terms
    return SCAlgebra.from_table(name or f"sub({a.name})", [f"s{k}" for k in range(s.dim)], table)


def is_homomorphism(a: SCAlgebra, b: SCAlgebra, f: Matrix) -> Optional[Tuple[str, str]]:
    """None when f: a -> b preserves brackets, else the first offending basis pair."""
    if (f.rows, f.cols) != (b.dim, a.dim):
        raise AlgebraInputError(f"Map must be {b.dim}x{a.dim}")
    images = [f.column(i) for i in range(a.dim)]
    for i, j in combinations(range(a.dim), 2):
        if f.apply(a.bracket_basis(i, j)) != b.bracket(images[i], images[j]):
            return a.basis_names[i], a.basis_names[j]
    return None


def derivation_witness(a: SCAlgebra, d: Matrix) -> Optional[Tuple[str, str]]:
    """None when d is a derivation, else the first pair violating the Leibniz rule."""
    if (d.rows, d.cols) != (a.dim, a.dim):
        raise AlgebraInputError(f"Map must be {a.dim}x{a.dim}")
    images = [d.column(i) for i in range(a.dim)]
    for i, j in combinations(range(a.dim), 2):
        left = d.apply(a.bracket_basis(i, j))
        right = vec_add(a.bracket(images[i], unit_vector(a.dim, j)), a.bracket(unit_vector(a.dim, i), images[j]))
        if left != right:
            return a.basis_names[i], a.basis_names[j]
    return None


def is_derivation(a: SCAlgebra, d: Matrix) -> bool:
    return derivation_witness(a, d) is None


def automorphism_witness(a: SCAlgebra, f: Matrix) -> Optional[Any]:
    if f.inverse() is None:
        return 'not invertible'
    return is_homomorphism(a, a, f)


# ---------------------------------------------------------------------------
# Forms
# ---------------------------------------------------------------------------

def killing_form(a: SCAlgebra) -> Matrix:
    n = a.dim
    cells = [a.ad_cells(i) for i in range(n)]
    by_row = []
    for i in range(n):
        rows: Dict[int, List[Tuple[int, Fraction]]] = {}
        for (k, l), c in cells[i].items():
            rows.setdefault(k, []).append((l, c))
        by_row.append(rows)
    grid = [[ZERO] * n for _ in range(n)]
    for i in range(n):
        for j in range(i, n):
            total = ZERO
            for (k, l), c in cells[i].items():
                for m, d in by_row[j].get(l, ()):
                    if m == k:
                        total += c * d
            grid[i][j] = grid[j][i] = total
    form = Matrix(n, n, tuple(tuple(r) for r in grid))
    if form_failures(a, form):
        raise InvariantViolation("Killing form failed its invariance check")
    return form


def invariant_forms(a: SCAlgebra) -> Subspace:
    """Invariant symmetric bilinear forms, as a subspace of flattened n x n matrices."""
    n = a.dim
    pairs = [(i, j) for i in range(n) for j in range(i, n)]
    unknown = {p: idx for idx, p in enumerate(pairs)}

    def var(i: int, j: int) -> int:
        return unknown[(i, j) if i <= j else (j, i)]

    rows = []
    for y in lie_generating_set(a) or range(n):
        ad_y = a.ad_basis(y)
        for i, j in pairs:
            row: Dict[int, Fraction] = {}
            for l in range(n):
                c = ad_y[l, i]
                if c:
                    row[var(l, j)] = row.get(var(l, j), ZERO) + c
                c = ad_y[l, j]
                if c:
                    row[var(i, l)] = row.get(var(i, l), ZERO) + c
            row = {k: v for k, v in row.items() if v}
            if row:
                rows.append(row)
    solutions = nullspace(rows, len(pairs), label='invariant forms')
    flat = []
    for s in solutions:
        grid = [ZERO] * (n * n)
        for (i, j), idx in unknown.items():
            grid[i * n + j] = grid[j * n + i] = s[idx]
        flat.append(tuple(grid))
    return Subspace.span(flat, n * n)


def maps_of(space: Subspace, rows: int, cols: Optional[int] = None) -> List[Matrix]:
    """Canonical basis of a subspace of flattened matrices, as matrices."""
    cols = rows if cols is None else cols
    return [Matrix.from_flat(rows, cols, v) for v in space.basis]


def is_nondegenerate(form: Matrix) -> bool:
    return form.rank() == form.rows


# ---------------------------------------------------------------------------
# Weight decompositions
# ---------------------------------------------------------------------------

def weight_decomposition(a: SCAlgebra, toral: Subspace) -> WeightDecomposition:
    if toral.ambient_dim != a.dim:
        raise AlgebraInputError("Toral subspace lives in the wrong ambient space")
    basis = toral.basis
    for u, v in combinations(basis, 2):
        if any(a.bracket(u, v)):
            raise AlgebraInputError("Not a toral subalgebra: toral basis does not commute")
    try:
        blocks = simultaneous_eigenspaces([a.ad(h) for h in basis], ambient_dim=a.dim)
    except (NotSplitError, AlgebraInputError) as e:
        raise AlgebraInputError(f"Not a toral subalgebra: {e}", witness=getattr(e, 'witness', None)) from e
    decomposition = WeightDecomposition(tuple(basis), tuple(blocks))

    if not toral.is_subspace_of(decomposition.zero_space()):
        raise InvariantViolation("Toral subalgebra is not inside the zero weight space")
    for alpha, s in blocks:
        for beta, t in blocks:
            target_weight = tuple(x + y for x, y in zip(alpha, beta))
            target = decomposition.space(target_weight)
            for u in s.basis:
                for v in t.basis:
                    w = a.bracket(u, v)
                    if any(w) and (target is None or not target.contains(w)):
                        raise InvariantViolation("Weight spaces are not bracket compatible",
                                                 witness=(alpha, beta))
    return decomposition
