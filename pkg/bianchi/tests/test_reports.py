import io
import json
import os
import tempfile
from fractions import Fraction

from django.test import SimpleTestCase

from bianchi import presets
from bianchi.acceptance import SuiteResult
from bianchi.bott import BottCheck
from bianchi.codes import BinaryCode, doubly_even_codes, euclidean_by_code
from bianchi.exceptions import ParseError
from bianchi.reports import acceptance_frame, bott_frame, codes_frame, emit_frame, orders_frame
from bianchi.serialization import canonical_dumps, fraction_list, load_json, write_json


class FrameTests(SimpleTestCase):
    def test_orders(self):
        frame = orders_frame([presets.gaussian(), presets.hurwitz()])
        self.assertEqual(list(frame['discriminant']), [-4, -64])
        self.assertEqual(list(frame['code']), ['0', '0'])
        self.assertNotIn('units', frame.columns)

    def test_codes(self):
        codes = doubly_even_codes(4)
        frame = codes_frame(codes, [euclidean_by_code(c) for c in codes])
        self.assertEqual(list(frame['generators']), ['0', '1111'])
        self.assertEqual(list(frame['euclidean']), [False, True])
        self.assertEqual(list(frame['rho_sq']), ['4', '2'])

    def test_acceptance_rounds_seconds(self):
        frame = acceptance_frame([SuiteResult('trivial', 'S^2 = -I', 'True', 'True', True, 0.123456)])
        self.assertEqual(frame['seconds'][0], 0.12)
        self.assertTrue(acceptance_frame([]).empty)

    def test_emit(self):
        stdout = io.StringIO()
        self.assertIsNone(emit_frame(acceptance_frame([]), 'accept', stdout))
        self.assertEqual(stdout.getvalue(), 'accept: no rows\n')

    def test_emit_writes_csv(self):
        frame = bott_frame([BottCheck('identity', True, 3)])
        stdout = io.StringIO()
        with tempfile.TemporaryDirectory() as directory:
            path = emit_frame(frame, 'bott_check', stdout, os.path.join(directory, 'run'))
            with open(path) as handle:
                self.assertEqual(handle.read().splitlines(), ['name,passed,samples', 'identity,True,3'])
        self.assertIn('identity', stdout.getvalue())


class SerializationTests(SimpleTestCase):
    def test_canonical_dumps(self):
        payload = {'b': Fraction(1, 2), 'a': {3, 1}, 'code': BinaryCode(4, ['1111'])}
        self.assertEqual(json.loads(canonical_dumps(payload)), {
            'a': [1, 3],
            'b': '1/2',
            'code': {'dimension': 1, 'length': 4, 'words': ['1111']},
        })
        self.assertLess(canonical_dumps(payload).index('"a"'), canonical_dumps(payload).index('"b"'))

    def test_files(self):
        with tempfile.TemporaryDirectory() as directory:
            path = write_json(os.path.join(directory, 'nested', 'order.json'), presets.gaussian())
            self.assertEqual(load_json(path), json.loads(canonical_dumps(presets.gaussian().to_json())))
            with open(os.path.join(directory, 'broken.json'), 'w') as handle:
                handle.write('{')
            with self.assertRaises(ParseError):
                load_json(os.path.join(directory, 'broken.json'))
            with self.assertRaises(ParseError):
                load_json(os.path.join(directory, 'missing.json'))

    def test_fraction_list(self):
        self.assertEqual(fraction_list([1, '1/2', Fraction(-2, 4)]), ['1', '1/2', '-1/2'])
