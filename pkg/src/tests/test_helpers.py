
import unittest
import math
from pathlib import Path
import numpy as np
from ssp_core.helpers import (
    parse_lambda_grid, parse_dt_list, parse_k, format_k, resolve_method,
    artifact_stem
)
from ssp_core.tableau import TableauFormatError
from library.catalog import default_catalog


DATA_DIR = Path(__file__).parent / 'data' / 'tableaus'


class TestHelpers(unittest.TestCase):

    def test_parse_lambda_grid(self):
        r = parse_lambda_grid('1.0:1.1:0.05')
        np.testing.assert_array_equal([1.0, 1.05, 1.1], r)

        r = parse_lambda_grid(' 0.5, 1.0,2.0 ')
        np.testing.assert_array_equal([0.5, 1.0, 2.0], r)

        for grid_str in (
            '', '1.0', '1:2', '1:2:3:4', 'a:b:c', '2,1', '0,1', '-1,1',
            '1:0.5:0.1', '1,1'
        ):
            with self.assertRaisesRegex(ValueError, 'Invalid lambda grid'):
                parse_lambda_grid(grid_str)

    def test_parse_dt_list(self):
        self.assertEqual([0.5, 0.25], parse_dt_list('0.5,0.25'))
        for dts_str in ('0.5', '0.5,x', '0.5,0', '0.5,-0.25'):
            with self.assertRaises(ValueError):
                parse_dt_list(dts_str)

    def test_parse_k(self):
        self.assertEqual(1.0, parse_k('1'))
        self.assertEqual(0.5, parse_k(0.5))
        self.assertTrue(math.isinf(parse_k('inf')))
        self.assertTrue(math.isinf(parse_k(' Infinity ')))
        for k_str in ('0', '-1', 'abc', 'nan'):
            with self.assertRaises(ValueError):
                parse_k(k_str)

    def test_format_k(self):
        self.assertEqual('inf', format_k(math.inf))
        self.assertEqual('1', format_k(1.0))
        self.assertEqual('0.5', format_k(0.5))

    def test_resolve_method(self):
        catalog = default_catalog()

        r = resolve_method('M2(4,5,1)', catalog)
        self.assertEqual('M2(4,5,1)', r.name)

        r = resolve_method('M3(3,4,K=0.2)', catalog)
        self.assertEqual(0.2, r.tableau.design_K)

        r = resolve_method(str(DATA_DIR / 'ssprk2.json'), catalog)
        self.assertEqual('SSPRK2', r.name)

        with self.assertRaises(TableauFormatError):
            resolve_method(str(DATA_DIR / 'negative.json'), catalog)
        r = resolve_method(
            str(DATA_DIR / 'negative.json'), catalog, allow_negative=True
        )
        self.assertEqual('negative-weights', r.name)

        with self.assertRaisesRegex(KeyError, 'Invalid method name'):
            resolve_method('no_such_method', catalog)

    def test_artifact_stem(self):
        self.assertEqual(
            'sweep_M2_4_5_1_advection-upwind',
            artifact_stem('sweep', 'M2(4,5,1)', 'advection-upwind')
        )
        self.assertEqual(
            'ssp_coef_M3_3_4_K=0.5_inf',
            artifact_stem('ssp_coef', 'M3(3,4,K=0.5)', None, 'inf')
        )
