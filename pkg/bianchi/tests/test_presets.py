import os
import tempfile

from django.test import SimpleTestCase

from bianchi import presets
from bianchi.exceptions import CatalogueError
from bianchi.serialization import write_json


class CatalogueTests(SimpleTestCase):
    def test_unknown_preset(self):
        with self.assertRaises(CatalogueError):
            presets.get_preset('nonesuch')
        with self.assertRaises(CatalogueError):
            presets.load_order()

    def test_orders_are_cached(self):
        self.assertIs(presets.preset_order('gaussian'), presets.preset_order('gaussian'))

    def test_forms_match(self):
        for name in ['integers', 'gaussian', 'eisenstein', 'hurwitz', 'o4']:
            preset = presets.get_preset(name)
            self.assertEqual(tuple(presets.preset_order(name).algebra.form.coefficients), preset.form, name)

    def test_regions(self):
        self.assertEqual(presets.preset_region('gaussian'), (None, None))
        cell, region = presets.preset_region('hurwitz')
        self.assertIs(cell, region)
        cell, region = presets.preset_region('sqrt-19')
        self.assertIsNone(cell)
        self.assertIsNotNone(region)

    def test_load_from_file(self):
        with tempfile.TemporaryDirectory() as directory:
            path = write_json(os.path.join(directory, 'hurwitz.json'), presets.hurwitz().to_json())
            self.assertEqual(presets.load_order(path=path), presets.hurwitz())
