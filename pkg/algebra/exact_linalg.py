"""
Exact rational linear algebra.

Vectors are tuples of Fraction and matrices are immutable dense grids.  Large
linear systems are handed over as sparse rows (column -> value) and reduced by
fraction-free elimination over the integers, pivoting on the leftmost nonzero
column of the topmost remaining row.
"""
import logging
import re
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property, reduce
from math import gcd
from typing import Dict, Iterable, List, Mapping, Optional, Sequence, Tuple

import sympy
from sympy.polys.domains import QQ
from sympy.polys.matrices import DomainMatrix

from .exceptions import AlgebraInputError, InvariantViolation, NotSplitError

logger = logging.getLogger('algebra')

Rational = Fraction
Vector = Tuple[Fraction, ...]
SparseRow = Dict[int, Fraction]

ZERO = Fraction(0)
ONE = Fraction(1)

_RATIONAL_PATTERN = re.compile(r'^-?\d+(/[1-9]\d*)?$')
_X = sympy.Symbol('x')


def parse_rational(text) -> Fraction:
    """Parse the "p/q" or "n" wire form of a rational."""
    if isinstance(text, int) and not isinstance(text, bool):
        return Fraction(text)
    if not isinstance(text, str) or not _RATIONAL_PATTERN.match(text.strip()):
        raise AlgebraInputError(f"Malformed rational {text!r}")
    return Fraction(text.strip())


def format_rational(value) -> str:
    return str(Fraction(value))


# ---------------------------------------------------------------------------
# Vectors
# ---------------------------------------------------------------------------

def as_vector(values: Iterable) -> Vector:
    return tuple(Fraction(v) for v in values)


def zero_vector(n: int) -> Vector:
    return (ZERO,) * n


def unit_vector(n: int, i: int) -> Vector:
    return tuple(ONE if k == i else ZERO for k in range(n))


def vec_add(u: Sequence[Fraction], v: Sequence[Fraction]) -> Vector:
    return tuple(a + b for a, b in zip(u, v))


def vec_sub(u: Sequence[Fraction], v: Sequence[Fraction]) -> Vector:
    return tuple(a - b for a, b in zip(u, v))


def vec_scale(q, v: Sequence[Fraction]) -> Vector:
    q = Fraction(q)
    return tuple(q * a for a in v)


def vec_is_zero(v: Sequence[Fraction]) -> bool:
    return not any(v)


def dot(u: Sequence[Fraction], v: Sequence[Fraction]) -> Fraction:
    return sum((a * b for a, b in zip(u, v) if a and b), ZERO)


def linear_combination(coeffs: Sequence[Fraction], vectors: Sequence[Vector], n: int) -> Vector:
    out = [ZERO] * n
    for c, v in zip(coeffs, vectors):
        if not c:
            continue
        for i, x in enumerate(v):
            if x:
                out[i] += c * x
    return tuple(out)


def sparse(v: Sequence[Fraction]) -> SparseRow:
    return {i: Fraction(x) for i, x in enumerate(v) if x}


def dense(row: Mapping[int, Fraction], n: int) -> Vector:
    out = [ZERO] * n
    for i, x in row.items():
        out[i] = Fraction(x)
    return tuple(out)


# ---------------------------------------------------------------------------
# Fraction-free elimination on sparse integer rows
# ---------------------------------------------------------------------------

def _primitive(row: Dict[int, int]) -> Dict[int, int]:
    g = 0
    for v in row.values():
        g = gcd(g, v)
    if row[min(row)] < 0:
        g = -g
    if g != 1:
        row = {k: v // g for k, v in row.items()}
    return row


def _integer_row(row: Mapping[int, Fraction]) -> Dict[int, int]:
    items = {k: Fraction(v) for k, v in row.items() if v}
    if not items:
        return {}
    den = reduce(lambda a, b: a * b // gcd(a, b), (v.denominator for v in items.values()), 1)
    return _primitive({k: v.numerator * (den // v.denominator) for k, v in items.items()})


def _eliminate(row: Dict[int, int], pivot_row: Dict[int, int], col: int) -> Dict[int, int]:
    a = pivot_row[col]
    b = row[col]
    g = gcd(a, b)
    a //= g
    b //= g
    out = {k: a * v for k, v in row.items()}
    for k, v in pivot_row.items():
        nv = out.get(k, 0) - b * v
        if nv:
            out[k] = nv
        else:
            out.pop(k, None)
    return _primitive(out) if out else out


class RowEchelon:
    """Incremental echelon form of a growing family of sparse rows."""

    def __init__(self, ncols: int):
        self.ncols = ncols
        self._rows: Dict[int, Dict[int, int]] = {}
        self._reduced: Optional[Dict[int, Dict[int, Fraction]]] = None

    @property
    def rank(self) -> int:
        return len(self._rows)

    def pivot_columns(self) -> List[int]:
        return sorted(self._rows)

    def insert(self, row: Mapping[int, Fraction]) -> Optional[int]:
        """Add a row; return its pivot column, or None if it was dependent."""
        current = _integer_row(row)
        while current:
            lead = min(current)
            pivot_row = self._rows.get(lead)
            if pivot_row is None:
                self._rows[lead] = current
                self._reduced = None
                return lead
            current = _eliminate(current, pivot_row, lead)
        return None

    def contains(self, row: Mapping[int, Fraction]) -> bool:
        current = _integer_row(row)
        while current:
            hits = [k for k in current if k in self._rows]
            if not hits:
                return False
            col = min(hits)
            if col != min(current):
                return False
            current = _eliminate(current, self._rows[col], col)
        return True

    def reduced_rows(self) -> Dict[int, Dict[int, Fraction]]:
        """Reduced echelon rows keyed by pivot column, pivot entries equal to 1."""
        if self._reduced is None:
            done: Dict[int, Dict[int, int]] = {}
            for col in sorted(self._rows, reverse=True):
                row = self._rows[col]
                for other in sorted(k for k in row if k != col and k in done):
                    row = _eliminate(row, done[other], other)
                done[col] = row
            self._reduced = {
                col: {k: Fraction(v, row[col]) for k, v in row.items()}
                for col, row in sorted(done.items())
            }
        return self._reduced

    def nullspace(self) -> List[Vector]:
        """Kernel basis of the row system: one vector per free column, ascending."""
        rows = self.reduced_rows()
        basis = []
        for free in range(self.ncols):
            if free in rows:
                continue
            v = [ZERO] * self.ncols
            v[free] = ONE
            for col, row in rows.items():
                x = row.get(free)
                if x:
                    v[col] = -x
            basis.append(tuple(v))
        return basis


def nullspace(equations: Iterable[Mapping[int, Fraction]], ncols: int, label: str = 'system') -> List[Vector]:
    """Basis of the solutions of a homogeneous sparse system."""
    echelon = RowEchelon(ncols)
    count = 0
    for equation in equations:
        count += 1
        if equation:
            echelon.insert(equation)
    basis = echelon.nullspace()
    logger.debug(f"{label}: {ncols} unknowns, {count} equations, rank {echelon.rank}, nullity {len(basis)}")
    return basis


class CoordinateSolver:
    """Expresses vectors in a fixed linearly independent family."""

    def __init__(self, vectors: Sequence[Sequence[Fraction]], ambient_dim: int):
        self.ambient_dim = ambient_dim
        self.size = len(vectors)
        echelon = RowEchelon(ambient_dim + self.size)
        for idx, v in enumerate(vectors):
            if len(v) != ambient_dim:
                raise AlgebraInputError(f"Vector {idx} has length {len(v)}, expected {ambient_dim}")
            row = sparse(v)
            row[ambient_dim + idx] = ONE
            pivot = echelon.insert(row)
            if pivot is None or pivot >= ambient_dim:
                raise AlgebraInputError(f"Family is linearly dependent at member {idx}")
        self._rows = echelon.reduced_rows()

    def coordinates(self, v: Sequence[Fraction]) -> Optional[Vector]:
        """Coordinates of v in the family, or None if v is outside its span."""
        n = self.ambient_dim
        residual = list(v)
        coords = [ZERO] * self.size
        for col, row in self._rows.items():
            weight = v[col]
            if not weight:
                continue
            for key, val in row.items():
                if key < n:
                    residual[key] -= weight * val
                else:
                    coords[key - n] += weight * val
        if any(residual):
            return None
        return tuple(coords)


# ---------------------------------------------------------------------------
# Matrices
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Matrix:
    """Immutable dense rational matrix; as a linear map, column j is the image of e_j."""

    rows: int
    cols: int
    entries: Tuple[Tuple[Fraction, ...], ...]

    def __post_init__(self):
        if len(self.entries) != self.rows or any(len(r) != self.cols for r in self.entries):
            raise AlgebraInputError(f"Matrix entries do not match shape {self.rows}x{self.cols}")

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence]) -> 'Matrix':
        entries = tuple(as_vector(r) for r in rows)
        ncols = len(entries[0]) if entries else 0
        return cls(len(entries), ncols, entries)

    @classmethod
    def from_columns(cls, columns: Sequence[Sequence], nrows: int) -> 'Matrix':
        cols = [as_vector(c) for c in columns]
        return cls(nrows, len(cols), tuple(tuple(c[i] for c in cols) for i in range(nrows)))

    @classmethod
    def zeros(cls, rows: int, cols: int) -> 'Matrix':
        return cls(rows, cols, tuple((ZERO,) * cols for _ in range(rows)))

    @classmethod
    def identity(cls, n: int) -> 'Matrix':
        return cls(n, n, tuple(unit_vector(n, i) for i in range(n)))

    @classmethod
    def diagonal(cls, values: Sequence) -> 'Matrix':
        n = len(values)
        return cls(n, n, tuple(tuple(Fraction(values[i]) if i == j else ZERO for j in range(n)) for i in range(n)))

    @classmethod
    def from_flat(cls, rows: int, cols: int, flat: Sequence[Fraction]) -> 'Matrix':
        return cls(rows, cols, tuple(tuple(Fraction(x) for x in flat[i * cols:(i + 1) * cols]) for i in range(rows)))

    @classmethod
    def from_sparse(cls, rows: int, cols: int, cells: Mapping[Tuple[int, int], Fraction]) -> 'Matrix':
        grid = [[ZERO] * cols for _ in range(rows)]
        for (i, j), x in cells.items():
            grid[i][j] = Fraction(x)
        return cls(rows, cols, tuple(tuple(r) for r in grid))

    def __getitem__(self, key: Tuple[int, int]) -> Fraction:
        i, j = key
        return self.entries[i][j]

    def row(self, i: int) -> Vector:
        return self.entries[i]

    def column(self, j: int) -> Vector:
        return tuple(r[j] for r in self.entries)

    def flatten(self) -> Vector:
        return tuple(x for r in self.entries for x in r)

    @property
    def is_square(self) -> bool:
        return self.rows == self.cols

    def apply(self, v: Sequence[Fraction]) -> Vector:
        if len(v) != self.cols:
            raise AlgebraInputError(f"Cannot apply a {self.rows}x{self.cols} matrix to a vector of length {len(v)}")
        nz = [(j, x) for j, x in enumerate(v) if x]
        return tuple(sum((r[j] * x for j, x in nz if r[j]), ZERO) for r in self.entries)

    def __matmul__(self, other: 'Matrix') -> 'Matrix':
        if self.cols != other.rows:
            raise AlgebraInputError(f"Shape mismatch {self.rows}x{self.cols} @ {other.rows}x{other.cols}")
        out = []
        for r in self.entries:
            acc = [ZERO] * other.cols
            for k, a in enumerate(r):
                if not a:
                    continue
                for j, b in enumerate(other.entries[k]):
                    if b:
                        acc[j] += a * b
            out.append(tuple(acc))
        return Matrix(self.rows, other.cols, tuple(out))

    def __add__(self, other: 'Matrix') -> 'Matrix':
        self._check_same_shape(other)
        return Matrix(self.rows, self.cols, tuple(vec_add(a, b) for a, b in zip(self.entries, other.entries)))

    def __sub__(self, other: 'Matrix') -> 'Matrix':
        self._check_same_shape(other)
        return Matrix(self.rows, self.cols, tuple(vec_sub(a, b) for a, b in zip(self.entries, other.entries)))

    def __neg__(self) -> 'Matrix':
        return self.scaled(-1)

    def _check_same_shape(self, other: 'Matrix'):
        if (self.rows, self.cols) != (other.rows, other.cols):
            raise AlgebraInputError(f"Shape mismatch {self.rows}x{self.cols} vs {other.rows}x{other.cols}")

    def scaled(self, q) -> 'Matrix':
        return Matrix(self.rows, self.cols, tuple(vec_scale(q, r) for r in self.entries))

    def transpose(self) -> 'Matrix':
        return Matrix(self.cols, self.rows, tuple(zip(*self.entries)) if self.rows else tuple(() for _ in range(self.cols)))

    def trace(self) -> Fraction:
        return sum((self.entries[i][i] for i in range(min(self.rows, self.cols))), ZERO)

    def is_zero(self) -> bool:
        return not any(any(r) for r in self.entries)

    def power(self, k: int) -> 'Matrix':
        result = Matrix.identity(self.rows)
        for _ in range(k):
            result = result @ self
        return result

    def is_nilpotent(self) -> bool:
        return self.power(self.rows).is_zero()

    def sparse_rows(self) -> List[SparseRow]:
        return [sparse(r) for r in self.entries]

    def rank(self) -> int:
        return rank(self)

    def inverse(self) -> Optional['Matrix']:
        """Exact inverse, or None when singular."""
        if not self.is_square:
            raise AlgebraInputError("Only square matrices have inverses")
        n = self.rows
        echelon = RowEchelon(2 * n)
        for i, r in enumerate(self.entries):
            row = sparse(r)
            row[n + i] = ONE
            echelon.insert(row)
        rows = echelon.reduced_rows()
        if any(col not in rows for col in range(n)):
            return None
        out = [[ZERO] * n for _ in range(n)]
        for col in range(n):
            for key, val in rows[col].items():
                if key >= n:
                    out[col][key - n] = val
        return Matrix(n, n, tuple(tuple(r) for r in out))


LinearMap = Matrix


def kernel(m: Matrix) -> 'Subspace':
    basis = nullspace(m.sparse_rows(), m.cols, label='kernel')
    return Subspace.span(basis, m.cols)


def rank(m: Matrix) -> int:
    echelon = RowEchelon(m.cols)
    for r in m.sparse_rows():
        if r:
            echelon.insert(r)
    return echelon.rank


def solve(m: Matrix, b: Sequence) -> Optional[Vector]:
    """Some x with m x = b (free variables set to 0), or None if inconsistent."""
    if len(b) != m.rows:
        raise AlgebraInputError(f"Right-hand side has length {len(b)}, expected {m.rows}")
    echelon = RowEchelon(m.cols + 1)
    for r, rhs in zip(m.entries, b):
        row = sparse(r)
        if rhs:
            row[m.cols] = Fraction(rhs)
        if row:
            echelon.insert(row)
    rows = echelon.reduced_rows()
    if m.cols in rows:
        return None
    x = [ZERO] * m.cols
    for col, row in rows.items():
        x[col] = row.get(m.cols, ZERO)
    return tuple(x)


# ---------------------------------------------------------------------------
# Subspaces
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Subspace:
    """A subspace of Q^n held by its canonical reduced echelon basis."""

    ambient_dim: int
    basis: Tuple[Vector, ...]

    @classmethod
    def span(cls, vectors: Iterable[Sequence[Fraction]], ambient_dim: int) -> 'Subspace':
        echelon = RowEchelon(ambient_dim)
        for v in vectors:
            if len(v) != ambient_dim:
                raise AlgebraInputError(f"Vector of length {len(v)} in ambient dimension {ambient_dim}")
            row = sparse(v)
            if row:
                echelon.insert(row)
        return cls(ambient_dim, tuple(dense(row, ambient_dim) for _, row in sorted(echelon.reduced_rows().items())))

    @classmethod
    def zero(cls, n: int) -> 'Subspace':
        return cls(n, ())

    @classmethod
    def whole(cls, n: int) -> 'Subspace':
        return cls(n, tuple(unit_vector(n, i) for i in range(n)))

    @classmethod
    def spanned_by_indices(cls, indices: Iterable[int], n: int) -> 'Subspace':
        return cls.span([unit_vector(n, i) for i in indices], n)

    @property
    def dim(self) -> int:
        return len(self.basis)

    @cached_property
    def pivots(self) -> Tuple[int, ...]:
        return tuple(next(i for i, x in enumerate(b) if x) for b in self.basis)

    def residual(self, v: Sequence[Fraction]) -> Vector:
        out = list(v)
        for p, b in zip(self.pivots, self.basis):
            weight = v[p]
            if weight:
                for i, x in enumerate(b):
                    if x:
                        out[i] -= weight * x
        return tuple(out)

    def contains(self, v: Sequence[Fraction]) -> bool:
        if len(v) != self.ambient_dim:
            raise AlgebraInputError(f"Vector of length {len(v)} in ambient dimension {self.ambient_dim}")
        return not any(self.residual(v))

    def coordinates(self, v: Sequence[Fraction]) -> Vector:
        if not self.contains(v):
            raise AlgebraInputError("Vector is not in the subspace")
        return tuple(Fraction(v[p]) for p in self.pivots)

    def __add__(self, other: 'Subspace') -> 'Subspace':
        self._check_ambient(other)
        return Subspace.span(self.basis + other.basis, self.ambient_dim)

    def intersection(self, other: 'Subspace') -> 'Subspace':
        self._check_ambient(other)
        if not self.dim or not other.dim:
            return Subspace.zero(self.ambient_dim)
        k = self.dim
        columns = list(self.basis) + [vec_scale(-1, w) for w in other.basis]
        equations = [{j: col[i] for j, col in enumerate(columns) if col[i]} for i in range(self.ambient_dim)]
        solutions = nullspace(equations, len(columns), label='intersection')
        return Subspace.span(
            [linear_combination(s[:k], self.basis, self.ambient_dim) for s in solutions],
            self.ambient_dim,
        )

    def is_subspace_of(self, other: 'Subspace') -> bool:
        self._check_ambient(other)
        return all(other.contains(b) for b in self.basis)

    def complement_indices(self) -> Tuple[int, ...]:
        """Coordinate indices whose unit vectors complete the basis."""
        pivots = set(self.pivots)
        return tuple(i for i in range(self.ambient_dim) if i not in pivots)

    def _check_ambient(self, other: 'Subspace'):
        if self.ambient_dim != other.ambient_dim:
            raise AlgebraInputError(f"Ambient dimensions differ: {self.ambient_dim} vs {other.ambient_dim}")


# ---------------------------------------------------------------------------
# Polynomials and spectra
# ---------------------------------------------------------------------------

def _to_domain_matrix(m: Matrix) -> DomainMatrix:
    return DomainMatrix(
        [[QQ(int(e.numerator), int(e.denominator)) for e in r] for r in m.entries],
        (m.rows, m.cols),
        QQ,
    )


def _to_fraction(value) -> Fraction:
    value = sympy.Rational(value)
    return Fraction(int(value.p), int(value.q))


def characteristic_polynomial(m: Matrix) -> sympy.Poly:
    if not m.is_square:
        raise AlgebraInputError("Characteristic polynomial needs a square matrix")
    coeffs = _to_domain_matrix(m).charpoly()
    return sympy.Poly([QQ.to_sympy(c) for c in coeffs], _X, domain='QQ')


def minimal_polynomial(m: Matrix) -> sympy.Poly:
    """Monic minimal polynomial, found from the first linear dependency among powers."""
    if not m.is_square:
        raise AlgebraInputError("Minimal polynomial needs a square matrix")
    n = m.rows
    powers = [Matrix.identity(n)]
    while True:
        candidate = powers[-1] @ m
        coords = CoordinateSolver([p.flatten() for p in powers], n * n).coordinates(candidate.flatten())
        if coords is not None:
            k = len(powers)
            coeffs = [sympy.Integer(1)] + [-sympy.Rational(coords[i].numerator, coords[i].denominator)
                                           for i in reversed(range(k))]
            return sympy.Poly(coeffs, _X, domain='QQ')
        powers.append(candidate)


def evaluate_polynomial(poly: sympy.Poly, m: Matrix) -> Matrix:
    """Horner evaluation of a rational polynomial at a square matrix."""
    result = Matrix.zeros(m.rows, m.cols)
    identity = Matrix.identity(m.rows)
    for c in poly.all_coeffs():
        result = result @ m + identity.scaled(_to_fraction(c))
    return result


def rational_eigenvalues(m: Matrix) -> List[Fraction]:
    """Distinct eigenvalues in descending order; NotSplitError if any is irrational."""
    _, factors = characteristic_polynomial(m).factor_list()
    values = []
    for factor, _ in factors:
        if factor.degree() > 1:
            raise NotSplitError(f"Spectrum not split over Q: factor {factor.as_expr()}", witness=str(factor.as_expr()))
        lead, const = factor.all_coeffs()
        values.append(-_to_fraction(const) / _to_fraction(lead))
    return sorted(set(values), reverse=True)


def eigenspace(m: Matrix, value) -> Subspace:
    return kernel(m - Matrix.identity(m.rows).scaled(value))


def is_diagonalizable(m: Matrix) -> bool:
    try:
        values = rational_eigenvalues(m)
    except NotSplitError:
        return False
    return sum(eigenspace(m, v).dim for v in values) == m.rows


def simultaneous_eigenspaces(ops: Sequence[Matrix], ambient_dim: Optional[int] = None) -> List[Tuple[Vector, Subspace]]:
    """Joint eigenspace decomposition of pairwise commuting diagonalizable operators."""
    if not ops:
        if ambient_dim is None:
            raise AlgebraInputError("Ambient dimension needed when no operators are given")
        return [((), Subspace.whole(ambient_dim))]
    n = ops[0].rows
    for idx, op in enumerate(ops):
        if not op.is_square or op.rows != n:
            raise AlgebraInputError(f"Operator {idx} is not a {n}x{n} matrix")
    for i in range(len(ops)):
        for j in range(i + 1, len(ops)):
            if ops[i] @ ops[j] != ops[j] @ ops[i]:
                raise AlgebraInputError(f"Operators {i} and {j} do not commute", witness=(i, j))

    blocks: List[Tuple[Vector, Subspace]] = [((), Subspace.whole(n))]
    for idx, op in enumerate(ops):
        values = rational_eigenvalues(op)
        spaces = [(v, eigenspace(op, v)) for v in values]
        if sum(s.dim for _, s in spaces) != n:
            raise NotSplitError(f"Operator {idx} is not diagonalizable", witness=idx)
        refined = []
        for label, space in blocks:
            for value, eig in spaces:
                part = space.intersection(eig)
                if part.dim:
                    refined.append((label + (value,), part))
        blocks = refined
    if sum(s.dim for _, s in blocks) != n:
        raise InvariantViolation("Joint eigenspaces do not fill the ambient space")
    return blocks
