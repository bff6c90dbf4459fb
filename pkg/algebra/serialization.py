"""
JSON file format for algebras, maps, cocycles and loop elements.

Key order and reduced rationals are fixed so that equal inputs give
byte-identical output.
"""
import json
import logging
from fractions import Fraction
from pathlib import Path
from typing import Any, Dict, List, Mapping, Optional, Sequence, Union

from .cohomext import Cocycle
from .exact_linalg import Matrix, Subspace, format_rational, parse_rational
from .exceptions import AlgebraInputError
from .liecore import Grading, SCAlgebra
from .loopkit import LoopElement

logger = logging.getLogger('algebra')

PathLike = Union[str, Path]


def _require(data: Mapping[str, Any], key: str, kind) -> Any:
    if key not in data:
        raise AlgebraInputError(f"Missing key {key!r}")
    value = data[key]
    if not isinstance(value, kind) or isinstance(value, bool):
        raise AlgebraInputError(f"Key {key!r} has the wrong type")
    return value


def _index(value: Any, what: str) -> int:
    if not isinstance(value, int) or isinstance(value, bool):
        raise AlgebraInputError(f"{what} must be an integer, got {value!r}")
    return value


def matrix_to_json(m: Matrix) -> List[List[str]]:
    return [[format_rational(x) for x in row] for row in m.entries]


def matrix_from_json(rows: Any, shape: Optional[int] = None) -> Matrix:
    if not isinstance(rows, list) or any(not isinstance(r, list) for r in rows):
        raise AlgebraInputError("A matrix is a list of rows")
    m = Matrix.from_rows([[parse_rational(x) for x in r] for r in rows]) if rows else Matrix.zeros(0, 0)
    if shape is not None and (m.rows, m.cols) != (shape, shape):
        raise AlgebraInputError(f"Matrix must be {shape}x{shape}, got {m.rows}x{m.cols}")
    return m


def algebra_to_dict(a: SCAlgebra) -> Dict[str, Any]:
    data: Dict[str, Any] = {
        'name': a.name,
        'dim': a.dim,
        'basis': list(a.basis_names),
        'brackets': [
            {'i': i, 'j': j, 'terms': [{'k': k, 'c': format_rational(c)} for k, c in terms]}
            for (i, j), terms in a.brackets
        ],
    }
    if a.grading is not None:
        data['grading'] = a.grading.as_dict()
    if a.toral_indices is not None:
        data['toral'] = list(a.toral_indices)
    if a.form is not None:
        data['form'] = matrix_to_json(a.form)
    return data


def algebra_from_dict(data: Any) -> SCAlgebra:
    if not isinstance(data, dict):
        raise AlgebraInputError("An algebra file holds a JSON object")
    name = _require(data, 'name', str)
    dim = _require(data, 'dim', int)
    basis = _require(data, 'basis', list)
    if len(basis) != dim or any(not isinstance(b, str) for b in basis):
        raise AlgebraInputError(f"'basis' must list {dim} names")
    brackets = []
    for entry in _require(data, 'brackets', list):
        if not isinstance(entry, dict):
            raise AlgebraInputError("Bracket entries are objects")
        i, j = _index(entry.get('i'), 'i'), _index(entry.get('j'), 'j')
        if not i < j:
            raise AlgebraInputError(f"Bracket ({i},{j}) must have i < j")
        terms = []
        for term in _require(entry, 'terms', list):
            if not isinstance(term, dict):
                raise AlgebraInputError("Bracket terms are objects")
            terms.append((_index(term.get('k'), 'k'), parse_rational(term.get('c'))))
        brackets.append(((i, j), tuple(terms)))

    grading = None
    if data.get('grading') is not None:
        g = data['grading']
        if not isinstance(g, dict):
            raise AlgebraInputError("'grading' must be an object")
        grading = Grading(
            _require(g, 'free_rank', int),
            tuple(_index(m, 'torsion') for m in _require(g, 'torsion', list)),
            tuple(tuple(_index(x, 'degree') for x in deg) for deg in _require(g, 'degrees', list)),
        )
    toral = None
    if data.get('toral') is not None:
        toral = tuple(_index(t, 'toral index') for t in _require(data, 'toral', list))
    form = matrix_from_json(data['form'], dim) if data.get('form') is not None else None
    return SCAlgebra(name, tuple(basis), tuple(brackets), grading=grading, toral_indices=toral, form=form)


def cocycle_to_dict(sigma: Cocycle) -> Dict[str, Any]:
    return {
        'coeff_dim': sigma.coeff_dim,
        'values': [{'i': i, 'j': j, 'v': [format_rational(x) for x in v]} for (i, j), v in sigma.values],
    }


def cocycle_from_dict(a: SCAlgebra, data: Any) -> Cocycle:
    if not isinstance(data, dict):
        raise AlgebraInputError("A cocycle file holds a JSON object")
    coeff_dim = _require(data, 'coeff_dim', int)
    values = {}
    for entry in _require(data, 'values', list):
        i, j = _index(entry.get('i'), 'i'), _index(entry.get('j'), 'j')
        v = entry.get('v')
        if not isinstance(v, list):
            raise AlgebraInputError(f"Cocycle value at ({i},{j}) must be a list")
        values[(i, j)] = [parse_rational(x) for x in v]
    return Cocycle.from_dict(a, coeff_dim, values)


def loop_element_to_dict(x: LoopElement) -> Dict[str, Any]:
    return {
        'terms': [{'p': p, 'v': [format_rational(c) for c in v]} for p, v in x.terms],
        'c': format_rational(x.c),
        'd': format_rational(x.d),
    }


def loop_element_from_dict(data: Any) -> LoopElement:
    if not isinstance(data, dict):
        raise AlgebraInputError("A loop element is a JSON object")
    terms = tuple((_index(t.get('p'), 'p'), tuple(parse_rational(c) for c in t.get('v', [])))
                  for t in data.get('terms', []))
    return LoopElement(terms, parse_rational(data.get('c', '0')), parse_rational(data.get('d', '0')))


def dumps(data: Any) -> str:
    return json.dumps(data, indent=2, ensure_ascii=False) + '\n'


def read_json(path: PathLike) -> Any:
    path = Path(path)
    try:
        with path.open(encoding='utf-8') as fh:
            return json.load(fh)
    except FileNotFoundError:
        raise AlgebraInputError(f"No such file: {path}")
    except (OSError, json.JSONDecodeError) as e:
        raise AlgebraInputError(f"Cannot read {path}: {e}")


def write_json(path: PathLike, data: Any) -> None:
    Path(path).write_text(dumps(data), encoding='utf-8')
    logger.info(f"Wrote {path}")


def load_algebra(path: PathLike) -> SCAlgebra:
    return algebra_from_dict(read_json(path))


def save_algebra(a: SCAlgebra, path: PathLike) -> None:
    write_json(path, algebra_to_dict(a))


def rationals(values: Sequence[Any]) -> List[str]:
    return [format_rational(x) for x in values]


def jsonable(obj: Any) -> Any:
    """Reports to plain JSON values: rationals as strings, maps as row lists."""
    if isinstance(obj, bool) or obj is None or isinstance(obj, (int, str)):
        return obj
    if isinstance(obj, Fraction):
        return format_rational(obj)
    if isinstance(obj, Matrix):
        return matrix_to_json(obj)
    if isinstance(obj, Subspace):
        return {'dim': obj.dim, 'basis': [rationals(v) for v in obj.basis]}
    if isinstance(obj, SCAlgebra):
        return algebra_to_dict(obj)
    if isinstance(obj, LoopElement):
        return loop_element_to_dict(obj)
    if isinstance(obj, Mapping):
        return {k if isinstance(k, str) else ','.join(map(str, k)) if isinstance(k, tuple) else str(k): jsonable(v)
                for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [jsonable(x) for x in obj]
    if hasattr(obj, 'as_dict'):
        return jsonable(obj.as_dict())
    return str(obj)
