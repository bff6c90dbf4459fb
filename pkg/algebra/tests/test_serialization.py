import json
import tempfile
from fractions import Fraction
from pathlib import Path

from django.test import SimpleTestCase

from algebra.builders import heisenberg, oscillator
from algebra.cohomext import Cocycle
from algebra.exact_linalg import Matrix
from algebra.exceptions import AlgebraInputError
from algebra.serialization import (
    algebra_from_dict, algebra_to_dict, cocycle_from_dict, cocycle_to_dict, dumps, jsonable, load_algebra,
    loop_element_from_dict, read_json, save_algebra,
)

HEISENBERG = {
    'name': 'heisenberg(1)',
    'dim': 3,
    'basis': ['a', 'b', 'c'],
    'brackets': [{'i': 0, 'j': 1, 'terms': [{'k': 2, 'c': '1'}]}],
}


class AlgebraFormatTests(SimpleTestCase):
    def test_schema(self):
        self.assertEqual(algebra_to_dict(heisenberg(1)), HEISENBERG)

    def test_optional_fields(self):
        data = algebra_to_dict(oscillator())
        self.assertEqual(data['toral'], [0])
        self.assertEqual(data['grading']['degrees'], [[0], [1], [-1], [0]])
        self.assertEqual(algebra_from_dict(json.loads(dumps(data))), oscillator())

    def test_output_is_deterministic(self):
        self.assertEqual(dumps(algebra_to_dict(oscillator())), dumps(algebra_to_dict(oscillator())))

    def test_rejects_malformed(self):
        for broken in (
            {**HEISENBERG, 'dim': 4},
            {**HEISENBERG, 'dim': True},
            {k: v for k, v in HEISENBERG.items() if k != 'brackets'},
            {**HEISENBERG, 'brackets': [{'i': 1, 'j': 0, 'terms': []}]},
            {**HEISENBERG, 'brackets': [{'i': 0, 'j': 1, 'terms': [{'k': 2, 'c': '1/0'}]}]},
            {**HEISENBERG, 'form': [['1', '0'], ['0', '1']]},
            [],
        ):
            with self.assertRaises(AlgebraInputError):
                algebra_from_dict(broken)

    def test_files(self):
        with tempfile.TemporaryDirectory() as tmp:
            path = Path(tmp) / 'h.json'
            save_algebra(heisenberg(2), path)
            self.assertEqual(load_algebra(path), heisenberg(2))
            (Path(tmp) / 'bad.json').write_text('{not json', encoding='utf-8')
            with self.assertRaises(AlgebraInputError):
                read_json(Path(tmp) / 'bad.json')
            with self.assertRaises(AlgebraInputError):
                read_json(Path(tmp) / 'missing.json')


class OtherObjectTests(SimpleTestCase):
    def test_cocycle(self):
        h = heisenberg(1)
        sigma = Cocycle.from_dict(h, 1, {(0, 2): ['1/2']})
        data = cocycle_to_dict(sigma)
        self.assertEqual(data, {'coeff_dim': 1, 'values': [{'i': 0, 'j': 2, 'v': ['1/2']}]})
        self.assertEqual(cocycle_from_dict(h, data).values, sigma.values)

    def test_loop_element(self):
        x = loop_element_from_dict({'terms': [{'p': -1, 'v': ['0', '1', '0']}], 'c': '4'})
        self.assertEqual(x.degrees, [-1])
        self.assertEqual(x.c, Fraction(4))

    def test_jsonable(self):
        report = {'dim': Fraction(3, 6), 'map': Matrix.identity(2), ('a', 1): [True, None]}
        self.assertEqual(jsonable(report), {'dim': '1/2', 'map': [['1', '0'], ['0', '1']], 'a,1': [True, None]})
