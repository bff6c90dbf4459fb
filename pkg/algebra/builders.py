"""
Constructors for the example families.

Lie algebras come out as SCAlgebra instances; associative coordinate algebras
are AssocTable instances and never leave this layer through the JSON schema.
"""
import logging
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations, product
from typing import Any, Dict, List, Mapping, Optional, Sequence, Tuple

import sympy

from .conf import kit_setting
from .exact_linalg import (
    ONE, ZERO, CoordinateSolver, Matrix, Subspace, Vector, dense, format_rational, nullspace,
    solve, unit_vector,
)
from .exceptions import AlgebraInputError, InvariantViolation
from .liecore import Grading, SCAlgebra, derived_subalgebra, is_perfect, killing_form, validate

logger = logging.getLogger('algebra')

Terms = Tuple[Tuple[int, Fraction], ...]
MatrixCells = Dict[Tuple[int, int], Fraction]


# ---------------------------------------------------------------------------
# Associative coordinate algebras
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class AssocTable:
    """Unital associative algebra; products[i][j] holds the sparse terms of b_i b_j."""

    name: str
    basis_names: Tuple[str, ...]
    products: Tuple[Tuple[Terms, ...], ...]
    unit_index: int
    grading: Optional[Grading] = None

    @property
    def dim(self) -> int:
        return len(self.basis_names)

    @property
    def unit(self) -> Vector:
        return unit_vector(self.dim, self.unit_index)

    def product_basis(self, i: int, j: int) -> Vector:
        return dense(dict(self.products[i][j]), self.dim)

    def multiply(self, u: Sequence[Fraction], v: Sequence[Fraction]) -> Vector:
        out = [ZERO] * self.dim
        for i, a in enumerate(u):
            if not a:
                continue
            for j, b in enumerate(v):
                if not b:
                    continue
                for k, c in self.products[i][j]:
                    out[k] += a * b * c
        return tuple(out)

    def left_mult(self, u: Sequence[Fraction]) -> Matrix:
        return Matrix.from_columns([self.multiply(u, unit_vector(self.dim, j)) for j in range(self.dim)], self.dim)

    def right_mult(self, u: Sequence[Fraction]) -> Matrix:
        return Matrix.from_columns([self.multiply(unit_vector(self.dim, j), u) for j in range(self.dim)], self.dim)

    @property
    def is_commutative(self) -> bool:
        return all(self.products[i][j] == self.products[j][i] for i, j in combinations(range(self.dim), 2))

    def commutator_space(self) -> Subspace:
        return Subspace.span(
            [tuple(x - y for x, y in zip(self.product_basis(i, j), self.product_basis(j, i)))
             for i, j in combinations(range(self.dim), 2)],
            self.dim,
        )

    def centre(self) -> Subspace:
        n = self.dim
        rows = []
        for j in range(n):
            for k in range(n):
                row = {i: self.product_basis(i, j)[k] - self.product_basis(j, i)[k] for i in range(n)}
                row = {i: c for i, c in row.items() if c}
                if row:
                    rows.append(row)
        return Subspace.span(nullspace(rows, n, label=f'centre({self.name})'), n)

    def validate(self) -> Dict[str, Any]:
        results: Dict[str, Any] = {'algebra': self.name, 'passed': True, 'associativity_failures': [],
                                   'unit_failures': [], 'commutative': self.is_commutative}
        e = lambda t: unit_vector(self.dim, t)  # noqa: E731
        for i, j, k in product(range(self.dim), repeat=3):
            left = self.multiply(self.product_basis(i, j), e(k))
            right = self.multiply(e(i), self.product_basis(j, k))
            if left != right:
                results['associativity_failures'].append([self.basis_names[x] for x in (i, j, k)])
        for i in range(self.dim):
            if self.product_basis(self.unit_index, i) != e(i) or self.product_basis(i, self.unit_index) != e(i):
                results['unit_failures'].append(self.basis_names[i])
        if self.grading is not None:
            g = self.grading
            for i, j in product(range(self.dim), repeat=2):
                for k, _ in self.products[i][j]:
                    if g.degrees[k] != g.add(g.degrees[i], g.degrees[j]):
                        results['associativity_failures'].append(['grading', self.basis_names[i], self.basis_names[j]])
        results['passed'] = not (results['associativity_failures'] or results['unit_failures'])
        return results

    def derivations(self) -> Subspace:
        """Derivations of the associative algebra, as flattened dim x dim matrices."""
        n = self.dim
        table = [[self.product_basis(k, l) for l in range(n)] for k in range(n)]
        rows = []
        for k in range(n):
            for l in range(n):
                for r in range(n):
                    row: Dict[int, Fraction] = {}
                    for m in range(n):
                        c = table[k][l][m]
                        if c:
                            row[r * n + m] = row.get(r * n + m, ZERO) + c
                    for s in range(n):
                        c = table[s][l][r]
                        if c:
                            row[s * n + k] = row.get(s * n + k, ZERO) - c
                        c = table[k][s][r]
                        if c:
                            row[s * n + l] = row.get(s * n + l, ZERO) - c
                    row = {key: v for key, v in row.items() if v}
                    if row:
                        rows.append(row)
        return Subspace.span(nullspace(rows, n * n, label=f'Der({self.name})'), n * n)


def _checked(table: AssocTable) -> AssocTable:
    report = table.validate()
    if not report['passed']:
        raise AlgebraInputError(f"{table.name} is not a unital associative algebra", witness=report)
    return table


def _table_from_vectors(dim: int, product_of) -> Tuple[Tuple[Terms, ...], ...]:
    return tuple(
        tuple(tuple((k, c) for k, c in enumerate(product_of(i, j)) if c) for j in range(dim))
        for i in range(dim)
    )


def truncated_poly(k: int) -> AssocTable:
    """Q[t]/(t^k)."""
    if k < 1:
        raise AlgebraInputError("truncated_poly needs k >= 1")
    names = tuple('1' if i == 0 else ('t' if i == 1 else f't^{i}') for i in range(k))

    def prod(i, j):
        return unit_vector(k, i + j) if i + j < k else (ZERO,) * k

    return _checked(AssocTable(f'Q[t]/(t^{k})', names, _table_from_vectors(k, prod), 0))


def _group_elements(moduli: Sequence[int]) -> List[Tuple[int, ...]]:
    return list(product(*(range(m) for m in moduli)))


def _group_names(elements: Sequence[Tuple[int, ...]], moduli: Sequence[int]) -> Tuple[str, ...]:
    if len(moduli) == 1:
        return tuple('1' if g[0] == 0 else ('u' if g[0] == 1 else f'u^{g[0]}') for g in elements)
    return tuple('u[' + ','.join(str(x) for x in g) + ']' for g in elements)


def _normalize_group_key(key, moduli: Sequence[int]) -> Tuple[int, ...]:
    items = (key,) if isinstance(key, int) else tuple(key)
    if len(items) != len(moduli):
        raise AlgebraInputError(f"Group element {key!r} does not match moduli {list(moduli)}")
    return tuple(int(x) % m for x, m in zip(items, moduli))


def twisted_group_ring(moduli: Sequence[int], twist: Optional[Mapping[Any, Any]] = None) -> AssocTable:
    """Twisted group ring over Z/m_1 x ... with u_g u_h = t(g,h) u_{g+h}; unspecified t values are 1."""
    moduli = tuple(int(m) for m in moduli)
    if not moduli or any(m < 2 for m in moduli):
        raise AlgebraInputError("Group moduli must all be at least 2")
    elements = _group_elements(moduli)
    index = {g: i for i, g in enumerate(elements)}
    values: Dict[Tuple[Tuple[int, ...], Tuple[int, ...]], Fraction] = {}
    for (g, h), value in (twist or {}).items():
        values[(_normalize_group_key(g, moduli), _normalize_group_key(h, moduli))] = Fraction(value)

    def t(g, h) -> Fraction:
        return values.get((g, h), ONE)

    def add(g, h):
        return tuple((x + y) % m for x, y, m in zip(g, h, moduli))

    for (g, h), value in values.items():
        if not value:
            raise AlgebraInputError(f"Twist vanishes at {g},{h}")
    zero = tuple(0 for _ in moduli)
    if t(zero, zero) != ONE:
        raise AlgebraInputError("Twist must be normalized: t(0,0) = 1")
    for g, h, k in product(elements, repeat=3):
        if t(g, h) * t(add(g, h), k) != t(h, k) * t(g, add(h, k)):
            raise AlgebraInputError(f"Twist is not a group 2-cocycle at {g},{h},{k}", witness=(g, h, k))

    n = len(elements)

    def prod(i, j):
        g, h = elements[i], elements[j]
        out = [ZERO] * n
        out[index[add(g, h)]] = t(g, h)
        return tuple(out)

    label = 'x'.join(f'Z/{m}' for m in moduli)
    name = f'Q[{label}]' if not values or all(v == ONE for v in values.values()) else f'Q^t[{label}]'
    return _checked(AssocTable(name, _group_names(elements, moduli), _table_from_vectors(n, prod), index[zero],
                               Grading(0, moduli, tuple(elements))))


def group_algebra(moduli: Sequence[int]) -> AssocTable:
    return twisted_group_ring(moduli)


def _matrix_product(x: MatrixCells, y: MatrixCells) -> MatrixCells:
    out: MatrixCells = {}
    by_row: Dict[int, List[Tuple[int, Fraction]]] = {}
    for (j, l), b in y.items():
        by_row.setdefault(j, []).append((l, b))
    for (i, j), a in x.items():
        for l, b in by_row.get(j, ()):
            out[(i, l)] = out.get((i, l), ZERO) + a * b
    return {key: v for key, v in out.items() if v}


def _matrix_unit_basis(n: int) -> Tuple[Tuple[str, ...], List[MatrixCells]]:
    """Basis I, E_ij (i != j), E_ii - E_{i+1,i+1}: the unit is a basis element."""
    names = ['I']
    mats: List[MatrixCells] = [{(i, i): ONE for i in range(n)}]
    for i, j in product(range(n), repeat=2):
        if i != j:
            names.append(f'E{i + 1}{j + 1}')
            mats.append({(i, j): ONE})
    for i in range(n - 1):
        names.append(f'D{i + 1}')
        mats.append({(i, i): ONE, (i + 1, i + 1): -ONE})
    return tuple(names), mats


def matrix_assoc(n: int) -> AssocTable:
    """The n x n matrix algebra M_n(Q)."""
    if n < 1:
        raise AlgebraInputError("matrix_assoc needs n >= 1")
    names, mats = _matrix_unit_basis(n)
    solver = CoordinateSolver([_flatten_cells(m, n) for m in mats], n * n)

    def prod(i, j):
        coords = solver.coordinates(_flatten_cells(_matrix_product(mats[i], mats[j]), n))
        if coords is None:
            raise InvariantViolation("Matrix product escaped the matrix algebra")
        return coords

    return _checked(AssocTable(f'M{n}(Q)', names, _table_from_vectors(len(names), prod), 0))


def _flatten_cells(cells: MatrixCells, n: int) -> Vector:
    out = [ZERO] * (n * n)
    for (i, j), v in cells.items():
        out[i * n + j] = v
    return tuple(out)


def field_ext(min_poly: Sequence[Any]) -> AssocTable:
    """Q[x]/(p) for an irreducible p of degree <= 4, coefficients listed from the leading one."""
    coeffs = [Fraction(c) for c in min_poly]
    while coeffs and not coeffs[0]:
        coeffs.pop(0)
    degree = len(coeffs) - 1
    if degree < 1 or degree > 4:
        raise AlgebraInputError(f"field_ext supports minimal polynomials of degree 1..4, got {degree}")
    x = sympy.Symbol('x')
    poly = sympy.Poly([sympy.Rational(c.numerator, c.denominator) for c in coeffs], x, domain='QQ')
    if not poly.is_irreducible:
        raise AlgebraInputError(f"Polynomial {poly.as_expr()} is reducible over Q", witness=str(poly.as_expr()))
    monic = [c / coeffs[0] for c in coeffs]
    # powers[k] = x^k reduced, for k < 2*degree - 1
    powers: List[List[Fraction]] = [list(unit_vector(degree, k)) for k in range(degree)]
    for k in range(degree, 2 * degree - 1):
        prev = powers[-1]
        shifted = [ZERO] + prev[:-1]
        top = prev[-1]
        powers.append([shifted[i] - top * monic[degree - i] for i in range(degree)])

    def prod(i, j):
        return tuple(powers[i + j])

    names = tuple('1' if k == 0 else ('x' if k == 1 else f'x^{k}') for k in range(degree))
    label = str(poly.as_expr()).replace(' ', '').replace('**', '^')
    return _checked(AssocTable(f'Q[x]/({label})', names, _table_from_vectors(degree, prod), 0))


# ---------------------------------------------------------------------------
# Lie families
# ---------------------------------------------------------------------------

def abelian(n: int) -> SCAlgebra:
    if n < 1:
        raise AlgebraInputError("abelian needs n >= 1")
    return SCAlgebra(f'abelian({n})', tuple(f'e{i}' for i in range(n)), ())


def heisenberg(n: int, graded: bool = False) -> SCAlgebra:
    """Heisenberg algebra with [a_i, b_i] = c; optionally Z-graded by deg a = 1, deg b = -1."""
    if n < 1:
        raise AlgebraInputError("heisenberg needs n >= 1")
    if n == 1:
        names = ('a', 'b', 'c')
    else:
        names = tuple(f'a{i + 1}' for i in range(n)) + tuple(f'b{i + 1}' for i in range(n)) + ('c',)
    c = 2 * n
    table = {(i, n + i): {c: 1} for i in range(n)}
    grading = Grading.by_integers([1] * n + [-1] * n + [0]) if graded else None
    return SCAlgebra.from_table(f'heisenberg({n})', names, table, grading=grading)


def oscillator() -> SCAlgebra:
    """{d, a, b, c} with [d,a] = a, [d,b] = -b, [a,b] = c, toral span{d}."""
    table = {(0, 1): {1: 1}, (0, 2): {2: -1}, (1, 2): {3: 1}}
    form = Matrix.from_sparse(4, 4, {(1, 2): ONE, (2, 1): ONE, (0, 3): ONE, (3, 0): ONE})
    return SCAlgebra.from_table('oscillator', ('d', 'a', 'b', 'c'), table,
                                grading=Grading.by_integers([0, 1, -1, 0]), toral_indices=(0,), form=form)


@dataclass(frozen=True)
class ClassicalRealization:
    """Matrix realization of a classical algebra with its Cartan and simple root vectors."""

    type: str
    rank: int
    size: int
    names: Tuple[str, ...]
    matrices: Tuple[Tuple[Tuple[Tuple[int, int], Fraction], ...], ...]
    cartan: Tuple[int, ...]
    simple_pairs: Tuple[Tuple[int, int], ...]

    def cells(self, idx: int) -> MatrixCells:
        return dict(self.matrices[idx])


def _classical_realization(kind: str, rank: int) -> ClassicalRealization:
    kind = kind.upper()
    limits = {'A': (1, 9), 'B': (2, 6), 'C': (2, 6), 'D': (3, 7)}
    if kind not in limits:
        raise AlgebraInputError(f"Unsupported classical type {kind!r}")
    low, high = limits[kind]
    if not (low <= rank <= high):
        raise AlgebraInputError(f"Type {kind} supports ranks {low}..{high}, got {rank}")

    positive: List[Tuple[str, MatrixCells]] = []
    negative: List[Tuple[str, MatrixCells]] = []
    cartan: List[Tuple[str, MatrixCells]] = []
    simple: List[Tuple[str, str]] = []

    def cell(*entries) -> MatrixCells:
        out: MatrixCells = {}
        for (i, j), v in entries:
            out[(i, j)] = out.get((i, j), ZERO) + Fraction(v)
        return out

    if kind == 'A':
        n = rank + 1
        size = n
        for i, j in combinations(range(n), 2):
            positive.append((f'E{i + 1}{j + 1}', cell(((i, j), 1))))
            negative.append((f'E{j + 1}{i + 1}', cell(((j, i), 1))))
        for i in range(rank):
            cartan.append((f'H{i + 1}', cell(((i, i), 1), ((i + 1, i + 1), -1))))
            simple.append((f'E{i + 1}{i + 2}', f'E{i + 2}{i + 1}'))
        if rank == 1:
            positive = [('e', positive[0][1])]
            negative = [('f', negative[0][1])]
            cartan = [('h', cartan[0][1])]
            simple = [('e', 'f')]
    else:
        r = rank
        offset = 1 if kind == 'B' else 0
        size = 2 * r + offset
        p = lambda i: offset + i  # noqa: E731
        q = lambda i: offset + r + i  # noqa: E731
        plus_sign = 1 if kind == 'C' else -1
        for i, j in combinations(range(r), 2):
            positive.append((f'X[e{i + 1}-e{j + 1}]', cell(((p(i), p(j)), 1), ((q(j), q(i)), -1))))
            negative.append((f'Y[e{i + 1}-e{j + 1}]', cell(((p(j), p(i)), 1), ((q(i), q(j)), -1))))
        for i, j in combinations(range(r), 2):
            positive.append((f'X[e{i + 1}+e{j + 1}]', cell(((p(i), q(j)), 1), ((p(j), q(i)), plus_sign))))
            negative.append((f'Y[e{i + 1}+e{j + 1}]', cell(((q(j), p(i)), 1), ((q(i), p(j)), plus_sign))))
        if kind == 'B':
            for i in range(r):
                positive.append((f'X[e{i + 1}]', cell(((p(i), 0), 1), ((0, q(i)), -1))))
                negative.append((f'Y[e{i + 1}]', cell(((0, p(i)), 1), ((q(i), 0), -1))))
        if kind == 'C':
            for i in range(r):
                positive.append((f'X[2e{i + 1}]', cell(((p(i), q(i)), 1))))
                negative.append((f'Y[2e{i + 1}]', cell(((q(i), p(i)), 1))))
        for i in range(r):
            cartan.append((f'H{i + 1}', cell(((p(i), p(i)), 1), ((q(i), q(i)), -1))))
        for i in range(r - 1):
            simple.append((f'X[e{i + 1}-e{i + 2}]', f'Y[e{i + 1}-e{i + 2}]'))
        last = {'B': f'e{r}', 'C': f'2e{r}', 'D': f'e{r - 1}+e{r}'}[kind]
        simple.append((f'X[{last}]', f'Y[{last}]'))

    ordered = positive + cartan + negative
    names = tuple(name for name, _ in ordered)
    position = {name: idx for idx, name in enumerate(names)}
    return ClassicalRealization(
        type=kind,
        rank=rank,
        size=size,
        names=names,
        matrices=tuple(tuple(sorted(m.items())) for _, m in ordered),
        cartan=tuple(range(len(positive), len(positive) + len(cartan))),
        simple_pairs=tuple((position[e], position[f]) for e, f in simple),
    )


def _commutator_algebra(name: str, names: Sequence[str], elements: Sequence[MatrixCells], size: int,
                        product_fn, **extra) -> SCAlgebra:
    """Lie algebra spanned by elements of an associative algebra under the commutator."""
    solver = CoordinateSolver([_flatten_cells(m, size) for m in elements], size * size)
    table = {}
    for i, j in combinations(range(len(elements)), 2):
        x, y = elements[i], elements[j]
        commutator = dict(product_fn(x, y))
        for key, v in product_fn(y, x).items():
            commutator[key] = commutator.get(key, ZERO) - v
        coords = solver.coordinates(_flatten_cells({k: v for k, v in commutator.items() if v}, size))
        if coords is None:
            raise InvariantViolation(f"Commutator of {names[i]} and {names[j]} left the span in {name}")
        terms = {k: c for k, c in enumerate(coords) if c}
        if terms:
            table[(i, j)] = terms
    return SCAlgebra.from_table(name, names, table, **extra)


def classical(kind: str, rank: int, verify: Optional[bool] = None) -> SCAlgebra:
    """Split simple algebra of type A, B, C or D with Cartan toral designation and Killing form."""
    realization = _classical_realization(kind, rank)
    label = f'{realization.type}{rank}'
    algebra = _commutator_algebra(
        label, realization.names, [realization.cells(i) for i in range(len(realization.names))],
        realization.size, _matrix_product, toral_indices=realization.cartan,
    )
    algebra = algebra.with_form(killing_form(algebra))
    if verify is None:
        verify = kit_setting('VERIFY_BUILDS')
    if verify:
        report = validate(algebra)
        if not report['passed']:
            raise InvariantViolation(f"{label} failed validation", witness=report)
        if rank <= 3:
            from .centroid import centroid
            if centroid(algebra).dim != 1:
                raise InvariantViolation(f"{label} is not central")
    logger.debug(f"Built {label} of dimension {algebra.dim}")
    return algebra


def chevalley_generators(kind: str, rank: int) -> List[Tuple[Vector, Vector]]:
    """Simple root vector pairs (e_i, f_i) in the coordinates of classical(kind, rank)."""
    realization = _classical_realization(kind, rank)
    n = len(realization.names)
    return [(unit_vector(n, e), unit_vector(n, f)) for e, f in realization.simple_pairs]


def height_graded(kind: str, rank: int) -> SCAlgebra:
    """classical(kind, rank) Z-graded by root height: deg e_i = 1, deg f_i = -1, Cartan in degree 0."""
    g = classical(kind, rank)
    coroots = [g.bracket(e, f) for e, f in chevalley_generators(kind, rank)]
    columns = []
    for e, _ in chevalley_generators(kind, rank):
        k = next(i for i, x in enumerate(e) if x)
        columns.append([g.bracket(h, e)[k] / e[k] for h in coroots])
    # alpha_j(h_rho) = 1 for every simple root
    coeffs = solve(Matrix.from_rows(columns), [ONE] * rank)
    if coeffs is None:
        raise InvariantViolation(f"Cartan matrix of {g.name} is singular")
    h_rho = tuple(sum((c * h[k] for c, h in zip(coeffs, coroots)), ZERO) for k in range(g.dim))
    ad = g.ad(h_rho)
    degrees = []
    for k in range(g.dim):
        if any(ad[r, k] for r in range(g.dim) if r != k) or ad[k, k].denominator != 1:
            raise InvariantViolation(f"Basis element {g.basis_names[k]} is not a root vector")
        degrees.append(int(ad[k, k]))
    return g.with_grading(Grading.by_integers(degrees)).renamed(f'{g.name} by height')


# ---------------------------------------------------------------------------
# Tensor products and coordinate constructions
# ---------------------------------------------------------------------------

def _tensor_names(g_names: Sequence[str], b: AssocTable) -> Tuple[str, ...]:
    if b.dim == 1:
        return tuple(g_names)
    return tuple(f'{x}*{y}' for x in g_names for y in b.basis_names)


def tensor(g: SCAlgebra, b: AssocTable) -> SCAlgebra:
    """g (x) b with [x (x) u, y (x) v] = [x,y] (x) uv, for unital commutative b."""
    if not b.is_commutative:
        raise AlgebraInputError(f"{b.name} is not commutative; use sl_n_over for matrix coordinates")
    db = b.dim
    table: Dict[Tuple[int, int], Dict[int, Fraction]] = {}
    for (i, j), terms in g.brackets:
        for k, l in product(range(db), repeat=2):
            prod_kl = b.products[k][l]
            if not prod_kl:
                continue
            out: Dict[int, Fraction] = {}
            for m, c in terms:
                for s, d in prod_kl:
                    key = m * db + s
                    out[key] = out.get(key, ZERO) + c * d
            out = {key: v for key, v in out.items() if v}
            if out:
                table[(i * db + k, j * db + l)] = out

    grading = None
    if b.grading is not None and g.grading is not None:
        gg, bg = g.grading, b.grading
        grading = Grading(gg.free_rank + bg.free_rank, gg.torsion + bg.torsion, tuple(
            gg.degrees[i][:gg.free_rank] + bg.degrees[k][:bg.free_rank]
            + gg.degrees[i][gg.free_rank:] + bg.degrees[k][bg.free_rank:]
            for i in range(g.dim) for k in range(db)))
    elif b.grading is not None:
        grading = Grading(b.grading.free_rank, b.grading.torsion,
                          tuple(b.grading.degrees[k] for _ in range(g.dim) for k in range(db)))
    elif g.grading is not None:
        grading = Grading(g.grading.free_rank, g.grading.torsion,
                          tuple(g.grading.degrees[i] for i in range(g.dim) for _ in range(db)))

    toral = None
    if g.toral_indices is not None:
        toral = tuple(t * db + b.unit_index for t in g.toral_indices)

    form = None
    if g.form is not None:
        cells = {}
        for i, j in product(range(g.dim), repeat=2):
            kij = g.form[i, j]
            if not kij:
                continue
            for k, l in product(range(db), repeat=2):
                eps = dict(b.products[k][l]).get(b.unit_index, ZERO)
                if eps:
                    cells[(i * db + k, j * db + l)] = kij * eps
        form = Matrix.from_sparse(g.dim * db, g.dim * db, cells)

    result = SCAlgebra.from_table(f'{g.name}(x){b.name}', _tensor_names(g.basis_names, b), table,
                                  grading=grading, toral_indices=toral, form=form)
    if db > 1 and is_perfect(g) and derived_subalgebra(result).dim != result.dim:
        raise InvariantViolation(f"{result.name} should be perfect")
    return result


def tensor_map(g: SCAlgebra, b: AssocTable, m: Matrix) -> Matrix:
    """The map id (x) m on g (x) b."""
    db = b.dim
    if (m.rows, m.cols) != (db, db):
        raise AlgebraInputError(f"Coefficient map must be {db}x{db}")
    cells = {}
    for i in range(g.dim):
        for k, l in product(range(db), repeat=2):
            if m[k, l]:
                cells[(i * db + k, i * db + l)] = m[k, l]
    return Matrix.from_sparse(g.dim * db, g.dim * db, cells)


def tensor_multiplication_maps(g: SCAlgebra, b: AssocTable) -> List[Matrix]:
    """id (x) L_{b_k} for every basis element b_k."""
    return [tensor_map(g, b, b.left_mult(unit_vector(b.dim, k))) for k in range(b.dim)]


def tensor_centroid_expectation(g: SCAlgebra, b: AssocTable) -> Dict[str, Any]:
    """Expected centroid of g (x) b for central perfect g and unital commutative b."""
    return {'expected_dim': b.dim, 'maps': tensor_multiplication_maps(g, b)}


def tensor_grading_embedding(g: SCAlgebra, b: AssocTable) -> Matrix:
    """x -> x (x) 1 from g into g (x) b."""
    db = b.dim
    return Matrix.from_columns([unit_vector(g.dim * db, i * db + b.unit_index) for i in range(g.dim)], g.dim * db)


def restrict_scalars(g: SCAlgebra, ext: AssocTable) -> SCAlgebra:
    """g split over a number field given by field_ext, regarded as a Q-algebra."""
    if ext.dim > 4:
        raise AlgebraInputError("restrict_scalars supports extensions of degree <= 4")
    return tensor(g, ext).renamed(f'{g.name} over {ext.name}')


def finite_loop_analog(g: SCAlgebra, m: int) -> SCAlgebra:
    """g (x) Q[Z/m], graded by Z/m."""
    return tensor(g, group_algebra([m]))


def sl_n_over(a: AssocTable, n: int) -> SCAlgebra:
    """n x n matrices over a with trace in [a, a]; equals sl_n (x) a for commutative a."""
    if n < 2:
        raise AlgebraInputError("sl_n_over needs n >= 2")
    if n == 2 and not a.is_commutative:
        logger.warning(f"sl_2 over the noncommutative {a.name} is outside the verified associative theory")
    realization = _classical_realization('A', n - 1)
    da = a.dim
    names: List[str] = []
    elements: List[Dict[Tuple[Tuple[int, int], int], Fraction]] = []
    for idx, xname in enumerate(realization.names):
        for k in range(da):
            names.append(xname if da == 1 else f'{xname}*{a.basis_names[k]}')
            elements.append({(pos, k): v for pos, v in realization.cells(idx).items()})
    for t, c in enumerate(a.commutator_space().basis):
        names.append(f'E11*c{t}')
        elements.append({((0, 0), k): v for k, v in enumerate(c) if v})

    flat_size = n * n * da

    def flatten(cells) -> Vector:
        out = [ZERO] * flat_size
        for ((i, j), k), v in cells.items():
            out[(i * n + j) * da + k] = v
        return tuple(out)

    def product_fn(x, y):
        out: Dict[Tuple[Tuple[int, int], int], Fraction] = {}
        rows_of_y: Dict[int, List[Tuple[int, int, Fraction]]] = {}
        for ((j, l), k2), v in y.items():
            rows_of_y.setdefault(j, []).append((l, k2, v))
        for ((i, j), k1), u in x.items():
            for l, k2, v in rows_of_y.get(j, ()):
                for m, c in a.products[k1][k2]:
                    key = ((i, l), m)
                    out[key] = out.get(key, ZERO) + u * v * c
        return {key: v for key, v in out.items() if v}

    solver = CoordinateSolver([flatten(e) for e in elements], flat_size)
    table = {}
    for i, j in combinations(range(len(elements)), 2):
        commutator = dict(product_fn(elements[i], elements[j]))
        for key, v in product_fn(elements[j], elements[i]).items():
            commutator[key] = commutator.get(key, ZERO) - v
        coords = solver.coordinates(flatten(commutator))
        if coords is None:
            raise InvariantViolation(f"Commutator of {names[i]} and {names[j]} left sl_{n}({a.name})")
        terms = {k: c for k, c in enumerate(coords) if c}
        if terms:
            table[(i, j)] = terms
    toral = tuple(t * da + a.unit_index for t in realization.cartan)
    return SCAlgebra.from_table(f'sl{n}({a.name})', names, table, toral_indices=toral)


def sl_n_over_embedding(a: AssocTable, n: int) -> Matrix:
    """x -> x (x) 1 from classical('A', n-1) into sl_n_over(a, n)."""
    realization = _classical_realization('A', n - 1)
    da = a.dim
    total = len(realization.names) * da + a.commutator_space().dim
    return Matrix.from_columns([unit_vector(total, i * da + a.unit_index) for i in range(len(realization.names))],
                               total)


def describe_assoc(a: AssocTable) -> Dict[str, Any]:
    return {
        'name': a.name,
        'dim': a.dim,
        'unit': a.basis_names[a.unit_index],
        'commutative': a.is_commutative,
        'centre_dim': a.centre().dim,
        'products': [
            {'i': i, 'j': j, 'terms': [{'k': k, 'c': format_rational(c)} for k, c in a.products[i][j]]}
            for i in range(a.dim) for j in range(a.dim) if a.products[i][j]
        ],
    }
