"""
Isotypic decomposition under a grading subalgebra and the centroid of
root-graded algebras L = (g (x) A) + D, recovered from structure constants.
"""
import logging
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from itertools import product
from typing import Any, Dict, List, Optional, Sequence, Tuple

from .builders import chevalley_generators, classical
from .centroid import CentroidBasis, centroid, centroid_witness, induce_quotient_centroid
from .exact_linalg import (
    ZERO, CoordinateSolver, Matrix, RowEchelon, Subspace, Vector, format_rational, kernel, nullspace, sparse,
    simultaneous_eigenspaces, unit_vector,
)
from .exceptions import AlgebraInputError, NotSplitError
from .liecore import SCAlgebra, is_homomorphism

logger = logging.getLogger('algebra')

OUTSIDE = 'model outside verified families'


@dataclass(frozen=True)
class IsotypicBlock:
    label: str
    highest_weight: Tuple[Fraction, ...]
    space: Subspace
    multiplicity_space: Subspace

    @property
    def multiplicity(self) -> int:
        return self.multiplicity_space.dim

    @property
    def module_dim(self) -> int:
        return self.space.dim // self.multiplicity

    def as_dict(self) -> Dict[str, Any]:
        return {
            'label': self.label,
            'highest_weight': [format_rational(x) for x in self.highest_weight],
            'module_dim': self.module_dim,
            'multiplicity': self.multiplicity,
            'dim': self.space.dim,
        }


@dataclass(frozen=True)
class RootGradedModel:
    """An algebra with an embedded split classical g and its g-isotypic blocks."""

    algebra: SCAlgebra
    g: SCAlgebra
    embedding: Matrix
    blocks: Tuple[IsotypicBlock, ...]
    e_images: Tuple[Vector, ...]
    f_images: Tuple[Vector, ...]
    centroid: CentroidBasis
    block_scalar: bool

    def block(self, label: str) -> Optional[IsotypicBlock]:
        return next((b for b in self.blocks if b.label == label), None)

    @cached_property
    def block_solver(self) -> CoordinateSolver:
        return CoordinateSolver([v for b in self.blocks for v in b.space.basis], self.algebra.dim)

    def project(self, v: Sequence[Fraction], label: str) -> Vector:
        """Component of v in the named block."""
        coords = self.block_solver.coordinates(v)
        out = [ZERO] * self.algebra.dim
        offset = 0
        for b in self.blocks:
            if b.label == label:
                for c, u in zip(coords[offset:offset + b.space.dim], b.space.basis):
                    if c:
                        for i, x in enumerate(u):
                            out[i] += c * x
            offset += b.space.dim
        return tuple(out)

    def as_dict(self) -> Dict[str, Any]:
        return {
            'algebra': self.algebra.name,
            'grading_subalgebra': self.g.name,
            'blocks': [b.as_dict() for b in self.blocks],
            'centroid_dim': self.centroid.dim,
            'block_scalar': self.block_scalar,
        }


def _eigen_ratio(image: Sequence[Fraction], v: Sequence[Fraction]) -> Fraction:
    k = next(i for i, x in enumerate(v) if x)
    return Fraction(image[k]) / v[k]


def _stacked_kernel(ops: Sequence[Matrix], n: int) -> Subspace:
    return kernel(Matrix.from_rows([row for m in ops for row in m.entries])) if ops else Subspace.whole(n)


def _submodule(seeds: Sequence[Vector], lowering: Sequence[Matrix], n: int) -> Subspace:
    echelon = RowEchelon(n)
    kept: List[Vector] = []
    frontier = list(seeds)
    while frontier:
        nxt = []
        for v in frontier:
            if echelon.insert(sparse(v)) is not None:
                kept.append(v)
                nxt.extend(op.apply(v) for op in lowering)
        frontier = nxt
    return Subspace.span(kept, n)


def _highest_root_weight(g: SCAlgebra, pairs) -> Tuple[Fraction, ...]:
    ad_e = [g.ad(e) for e, _ in pairs]
    top = _stacked_kernel(ad_e, g.dim).basis[0]
    return tuple(_eigen_ratio(g.ad(g.bracket(e, f)).apply(top), top) for e, f in pairs)


UNIT_SUFFIXES = ('', '*1', '*I')


def embedding_by_names(a: SCAlgebra, kind: str, rank: int) -> Matrix:
    """classical(kind, rank) -> a, sending x to the basis element named x, x*1 or x*I."""
    g = classical(kind, rank)
    columns = []
    for name in g.basis_names:
        match = next((name + s for s in UNIT_SUFFIXES if name + s in a.basis_names), None)
        if match is None:
            raise AlgebraInputError(f"No basis element of {a.name} matches {name} (x 1)")
        columns.append(unit_vector(a.dim, a.index(match)))
    return Matrix.from_columns(columns, a.dim)


def isotypic_decomposition(a: SCAlgebra, embedding: Matrix, kind: str = 'A', rank: int = 1,
                           cent: Optional[CentroidBasis] = None) -> RootGradedModel:
    """Decompose a under ad of an embedded classical(kind, rank) into isotypic blocks."""
    g = classical(kind, rank)
    witness = is_homomorphism(g, a, embedding)
    if witness is not None:
        raise AlgebraInputError("Grading subalgebra embedding is not a homomorphism", witness=witness)
    if embedding.rank() != g.dim:
        raise AlgebraInputError("Grading subalgebra embedding is not injective")
    pairs = chevalley_generators(kind, rank)
    e_images = tuple(embedding.apply(e) for e, _ in pairs)
    f_images = tuple(embedding.apply(f) for _, f in pairs)
    coroots = [a.bracket(e, f) for e, f in zip(e_images, f_images)]
    ad_e = [a.ad(x) for x in e_images]
    ad_f = [a.ad(x) for x in f_images]
    n = a.dim

    try:
        weights = simultaneous_eigenspaces([a.ad(h) for h in coroots], ambient_dim=n)
    except NotSplitError as e:
        raise AlgebraInputError(f"Adjoint action of {g.name} is not completely reducible: {e}",
                                witness=e.witness) from e
    primitive = _stacked_kernel(ad_e, n)
    theta = _highest_root_weight(g, pairs)
    blocks = []
    for weight, space in weights:
        top = space.intersection(primitive)
        if not top.dim:
            continue
        if any(w < 0 or w.denominator != 1 for w in weight):
            raise AlgebraInputError("Primitive vector of non-dominant weight", witness=[str(w) for w in weight])
        module = _submodule(top.basis, ad_f, n)
        if module.intersection(space).dim != top.dim or module.dim % top.dim:
            raise AlgebraInputError("Highest weight space of an isotypic block is not its multiplicity space",
                                    witness=[str(w) for w in weight])
        if tuple(weight) == theta:
            label = 'adjoint'
        elif not any(weight):
            label = 'trivial'
        else:
            label = 'V(' + ','.join(format_rational(w) for w in weight) + ')'
        blocks.append(IsotypicBlock(label, tuple(weight), module, top))

    total = Subspace.span([v for b in blocks for v in b.space.basis], n)
    if sum(b.space.dim for b in blocks) != n or total.dim != n:
        raise AlgebraInputError(f"Adjoint action of {g.name} on {a.name} is not completely reducible",
                                witness={'blocks': sum(b.space.dim for b in blocks), 'dim': n})

    cent = cent or centroid(a)
    block_scalar = True
    for chi in cent.maps:
        if any(chi @ m != m @ chi for m in ad_e + ad_f):
            block_scalar = False
        for b in blocks:
            if any(not b.space.contains(chi.apply(v)) for v in b.space.basis):
                block_scalar = False
    if not block_scalar:
        logger.warning(f"Centroid of {a.name} is not block scalar on the {g.name}-isotypic blocks")
    model = RootGradedModel(a, g, embedding, tuple(blocks), e_images, f_images, cent, block_scalar)
    logger.info(f"Isotypic decomposition of {a.name} under {g.name}: "
                + ', '.join(f"{b.label} x{b.multiplicity}" for b in blocks))
    return model


# ---------------------------------------------------------------------------
# Coordinate recovery
# ---------------------------------------------------------------------------

class _AdjointChart:
    """g (x) A -> adjoint block, fixed by x_theta (x) a_k -> k-th primitive vector."""

    def __init__(self, model: RootGradedModel):
        g, a = model.g, model.algebra
        block = model.block('adjoint')
        self.model = model
        self.m = block.multiplicity
        pairs = chevalley_generators(g.name[0], len(model.e_images))
        g_lower = [g.ad(f) for _, f in pairs]
        a_lower = [a.ad(f) for f in model.f_images]
        top_g = _stacked_kernel([g.ad(e) for e, _ in pairs], g.dim).basis[0]

        echelon = RowEchelon(g.dim)
        g_vectors: List[Vector] = []
        a_vectors: List[List[Vector]] = []
        frontier = [(top_g, list(block.multiplicity_space.basis))]
        while frontier:
            nxt = []
            for v, images in frontier:
                if echelon.insert(sparse(v)) is None:
                    continue
                g_vectors.append(v)
                a_vectors.append(images)
                for lg, la in zip(g_lower, a_lower):
                    nxt.append((lg.apply(v), [la.apply(u) for u in images]))
            frontier = nxt
        self.g_solver = CoordinateSolver(g_vectors, g.dim)
        self.a_vectors = a_vectors
        flat = [u for images in a_vectors for u in images]
        if Subspace.span(flat, a.dim) != block.space:
            raise AlgebraInputError("Adjoint block is not g (x) A on the primitive vectors")

    def tensor(self, x: Sequence[Fraction], coeffs: Sequence[Fraction]) -> Vector:
        out = [ZERO] * self.model.algebra.dim
        for cw, images in zip(self.g_solver.coordinates(x), self.a_vectors):
            if not cw:
                continue
            for ck, u in zip(coeffs, images):
                if ck:
                    for i, v in enumerate(u):
                        if v:
                            out[i] += cw * ck * v
        return tuple(out)

    def unit(self, k: int) -> Vector:
        return unit_vector(self.m, k)


def _recover_product(model: RootGradedModel, chart: _AdjointChart):
    g = model.g
    cartan = set(g.toral_indices or ())
    positive = [i for i in range(g.dim) if i < min(cartan)]
    choice = next(((i, j) for i in positive for j in positive if i < j and any(g.bracket_basis(i, j))), None)
    recovery = 'orthogonal root pair'
    if choice is None:
        choice = next(((i, j) for i in positive for j in sorted(cartan) if any(g.bracket_basis(i, j))), None)
        recovery = 'symmetrized'
    if choice is None:
        return None
    x, y = g.basis_vector(choice[0]), g.basis_vector(choice[1])
    z = g.bracket(x, y)
    solver = CoordinateSolver([chart.tensor(z, chart.unit(k)) for k in range(chart.m)], model.algebra.dim)
    table = []
    for k in range(chart.m):
        row = []
        for l in range(chart.m):
            value = model.project(model.algebra.bracket(chart.tensor(x, chart.unit(k)),
                                                        chart.tensor(y, chart.unit(l))), 'adjoint')
            coords = solver.coordinates(value)
            if coords is None:
                return None
            row.append(coords)
        table.append(row)
    return recovery, table


def _recover_pairing(model: RootGradedModel, chart: _AdjointChart) -> List[List[Vector]]:
    g, a = model.g, model.algebra
    top = _stacked_kernel([g.ad(e) for e, _ in chevalley_generators(g.name[0], len(model.e_images))], g.dim).basis[0]
    partner = next(g.basis_vector(j) for j in range(g.dim) if any(g.form.apply(g.basis_vector(j))[i] * top[i]
                                                                   for i in range(g.dim)))
    return [[model.project(a.bracket(chart.tensor(top, chart.unit(k)), chart.tensor(partner, chart.unit(l))),
                           'trivial')
             for l in range(chart.m)] for k in range(chart.m)]


def _times(table, z: Sequence[Fraction], k: int, m: int) -> Vector:
    out = [ZERO] * m
    for s, zs in enumerate(z):
        if zs:
            for r, v in enumerate(table[s][k]):
                out[r] += zs * v
    return tuple(out)


def _pair(pairing, u: Sequence[Fraction], v: Sequence[Fraction], n: int) -> Vector:
    out = [ZERO] * n
    for k, uk in enumerate(u):
        if not uk:
            continue
        for l, vl in enumerate(v):
            if vl:
                for r, x in enumerate(pairing[k][l]):
                    if x:
                        out[r] += uk * vl * x
    return tuple(out)


def verify_cent_rg(model: RootGradedModel) -> Dict[str, Any]:
    """Cent(L) against the z in Z(A) compatible with the D-pairing, acting as x (x) a -> x (x) za."""
    a = model.algebra
    n = a.dim
    report: Dict[str, Any] = {
        'algebra': a.name,
        'blocks': [b.as_dict() for b in model.blocks],
        'centroid_dim': model.centroid.dim,
        'block_scalar': model.block_scalar,
    }
    if model.block('adjoint') is None or any(b.label not in ('adjoint', 'trivial') for b in model.blocks):
        return {**report, 'status': OUTSIDE, 'passed': False}
    chart = _AdjointChart(model)
    recovered = _recover_product(model, chart)
    if recovered is None:
        return {**report, 'status': OUTSIDE, 'passed': False}
    recovery, table = recovered
    m = chart.m
    pairing = _recover_pairing(model, chart)

    rows = []
    for l in range(m):
        for r in range(m):
            row = {s: table[s][l][r] - table[l][s][r] for s in range(m) if table[s][l][r] != table[l][s][r]}
            if row:
                rows.append(row)
    centre_basis = nullspace(rows, m, label='coordinate centre')

    def pair_of(z, k, l, left: bool) -> Vector:
        if left:
            return _pair(pairing, _times(table, z, k, m), unit_vector(m, l), n)
        return _pair(pairing, unit_vector(m, k), _times(table, z, l, m), n)

    relations = nullspace(
        ({k * m + l: pairing[k][l][r] for k, l in product(range(m), repeat=2) if pairing[k][l][r]} for r in range(n)),
        m * m, label='pairing relations')
    conditions = []
    for k, l in product(range(m), repeat=2):
        left = [pair_of(z, k, l, True) for z in centre_basis]
        right = [pair_of(z, k, l, False) for z in centre_basis]
        for r in range(n):
            conditions.append({t: left[t][r] - right[t][r] for t in range(len(centre_basis)) if left[t][r] != right[t][r]})
    for rel in relations:
        values = []
        for z in centre_basis:
            acc = [ZERO] * n
            for idx, c in enumerate(rel):
                if c:
                    for r, x in enumerate(pair_of(z, idx // m, idx % m, True)):
                        acc[r] += c * x
            values.append(acc)
        for r in range(n):
            conditions.append({t: values[t][r] for t in range(len(centre_basis)) if values[t][r]})
    filtered = []
    for u in nullspace(conditions, len(centre_basis), label='pairing conditions'):
        z = [ZERO] * m
        for t, c in enumerate(u):
            if c:
                for s, x in enumerate(centre_basis[t]):
                    z[s] += c * x
        filtered.append(tuple(z))

    trivial = model.block('trivial')
    domain: List[Vector] = []
    for i in range(model.g.dim):
        for k in range(m):
            domain.append(chart.tensor(model.g.basis_vector(i), unit_vector(m, k)))
    d_pairs = []
    if trivial is not None:
        echelon = RowEchelon(n)
        for k, l in product(range(m), repeat=2):
            if echelon.insert(sparse(pairing[k][l])) is not None:
                d_pairs.append((k, l))
                domain.append(pairing[k][l])
        if len(d_pairs) != trivial.space.dim:
            return {**report, 'status': OUTSIDE, 'passed': False, 'reason': 'D is not spanned by the pairing'}
    inverse = Matrix.from_columns(domain, n).inverse()
    if inverse is None:
        return {**report, 'status': OUTSIDE, 'passed': False}

    maps = []
    failures = []
    for z in filtered:
        images = [chart.tensor(model.g.basis_vector(i), _times(table, z, k, m))
                  for i in range(model.g.dim) for k in range(m)]
        images += [_pair(pairing, _times(table, z, k, m), unit_vector(m, l), n) for k, l in d_pairs]
        psi = Matrix.from_columns(images, n) @ inverse
        witness = centroid_witness(a, psi)
        if witness is not None:
            failures.append({'z': [format_rational(x) for x in z], 'witness': list(witness)})
        maps.append(psi)

    span = Subspace.span([psi.flatten() for psi in maps], n * n)
    bijection = not failures and span.dim == len(filtered) == model.centroid.dim and span == model.centroid.span()
    action_shape = all(model.centroid.contains(psi) for psi in maps) and not failures
    passed = bijection and action_shape and model.block_scalar
    if not passed:
        logger.error(f"Root-graded centroid check failed on {a.name}: {failures or 'dimension mismatch'}")
    return {
        **report,
        'status': 'verified' if passed else 'failed',
        'coordinate_dim': m,
        'recovery': recovery,
        'centre_dim': len(centre_basis),
        'filtered_dim': len(filtered),
        'trivial_dim': trivial.space.dim if trivial else 0,
        'bijection': bijection,
        'action_shape': action_shape,
        'failures': failures,
        'passed': passed,
    }


def cover_centroid_embedding(ext, cent: Optional[CentroidBasis] = None) -> Dict[str, Any]:
    """Cent(cover) -> Cent(L) through the projection of a central extension."""
    e = ext.algebra
    coefficients = Subspace.spanned_by_indices(range(ext.base.dim, e.dim), e.dim)
    cent = cent or centroid(e)
    result = induce_quotient_centroid(e, coefficients, cent)
    base_cent = centroid(ext.base)
    embeds = all(base_cent.contains(m) for m in result['images'])
    return {
        'cover': e.name,
        'base': ext.base.name,
        'cover_centroid_dim': cent.dim,
        'compatible_dim': len(result['compatible']),
        'base_centroid_dim': base_cent.dim,
        'injective': result['injective'],
        'passed': embeds and result['injective'] is not False,
    }

