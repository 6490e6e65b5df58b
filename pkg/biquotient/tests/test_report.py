import json
import unittest

import numpy as np

from biquotient.process import CurvatureCampaign, RunConfig
from biquotient.report import (
    MAX_EXACT_INT,
    Report,
    WitnessValidationError,
    decode_complex,
    encode,
    revalidate,
)

import logging

logging.basicConfig(level=logging.DEBUG)


class EncodeTests(unittest.TestCase):
    """Tests the JSON encoding of numeric values."""

    def test_complex_arrays(self):
        arr = np.array([[1 + 2j, -0.5j], [3.0, 0.0]])
        enc = encode(arr)
        self.assertEqual(enc[0][0], [1.0, 2.0])
        self.assertEqual(enc[0][1], [0.0, -0.5])
        np.testing.assert_array_equal(decode_complex(enc), arr)

    def test_scalars(self):
        self.assertEqual(encode(np.int64(3)), 3)
        self.assertIsInstance(encode(np.int64(3)), int)
        self.assertIs(encode(np.bool_(True)), True)
        self.assertEqual(encode(np.float32(0.5)), 0.5)
        self.assertEqual(encode(1 - 1j), [1.0, -1.0])
        self.assertEqual(encode(MAX_EXACT_INT), MAX_EXACT_INT)
        self.assertEqual(encode(MAX_EXACT_INT + 1), str(MAX_EXACT_INT + 1))

    def test_containers(self):
        self.assertEqual(
            encode({1: (np.int64(2), [np.float64(1.5)])}), {'1': [2, [1.5]]}
        )


class ReportTests(unittest.TestCase):
    """Tests serialization, re-validation and rendering of reports."""

    def setUp(self):
        """Runs a small locus campaign on E0 and a torus
        campaign, both with witnesses.
        """
        config = RunConfig(seed=4, samples=4, locus_samples=2)
        campaign = CurvatureCampaign(config, log_level=logging.INFO)
        self.report = campaign.verify(
            'eschenburg', {'p': [1, 1, 0], 'q': [0, 0, 2]}, campaign='locus'
        )
        self.torus = campaign.verify(
            'torus', {'kind': 'AB', 'a': 0, 'b': 0, 'c': 0}, campaign='locus'
        )

    def test_round_trip(self):
        for report in (self.report, self.torus):
            loaded = Report.from_json(report.to_json())
            self.assertEqual(loaded.to_dict(), report.to_dict())
            for fmt in ('json', 'csv', 'text'):
                self.assertEqual(loaded.render(fmt), report.render(fmt))

    def test_witnesses_revalidate(self):
        self.assertEqual(len(self.report.witnesses), 2)
        for witness in self.report.witnesses + self.torus.witnesses:
            self.assertTrue(revalidate(witness))
            self.assertTrue(witness['valid'])

    def test_corrupt_witness(self):
        data = json.loads(self.report.to_json())
        data['witnesses'][0]['X'] = data['witnesses'][0]['Y']
        with self.assertRaises(WitnessValidationError):
            Report.from_json(json.dumps(data))
        data = json.loads(self.torus.to_json())
        data['witnesses'][0]['point'][0] = [2.0, 0.0, 0.0, 0.0]
        with self.assertRaises(WitnessValidationError):
            Report.from_json(json.dumps(data))

    def test_unknown_family_fails(self):
        witness = dict(self.report.witnesses[0], family='wallach')
        self.assertFalse(revalidate(witness))
        self.assertFalse(revalidate({'family': 'eschenburg'}))

    def test_malformed_input(self):
        with self.assertRaises(ValueError):
            Report.from_json("{not json")
        data = self.report.to_dict()
        del data['witnesses']
        with self.assertRaises(ValueError):
            Report.from_json(json.dumps(data))

    def test_column_order(self):
        frame = self.report.to_frame()
        self.assertEqual(
            list(frame.columns),
            [
                'family', 'params', 'campaign', 'sample', 'zero_plane',
                'witness_valid', 'locus_distance', 'residual', 'range_min',
                'range_max', 'direction',
            ],
        )

    def test_render(self):
        text = self.report.render("text")
        self.assertTrue(text.startswith("command: "))
        self.assertIn("witnesses: 2", text)
        csv = self.report.render("csv")
        self.assertTrue(csv.startswith("family,params,campaign,sample,zero_plane"))
        self.assertEqual(len(csv.strip().splitlines()), 3)
        self.assertNotIn("elapsed_s", text + csv)
        self.assertIn("elapsed_s", self.report.render("json"))
        with self.assertRaises(ValueError):
            self.report.render("xml")

    def test_empty_and_failed(self):
        report = Report({'command': 'scan'}, {}, [], summary={'failures': 2})
        self.assertTrue(report.failed)
        self.assertTrue(report.render("text").endswith("(no rows)\n"))
        self.assertFalse(Report({'command': 'scan'}, {}, []).failed)


if __name__ == "__main__":
    unittest.main()
