import argparse
import json
import os
import shutil
import tempfile
import unittest

from biquotient.cli import (
    EXIT_FAILED,
    EXIT_INVALID,
    EXIT_OK,
    build_parser,
    int_list,
    join_negative_values,
    main,
)

import logging

logging.basicConfig(level=logging.DEBUG)


class ParserTests(unittest.TestCase):
    """Tests argument parsing helpers."""

    def test_int_list(self):
        self.assertEqual(int_list("1,1,0"), [1, 1, 0])
        self.assertEqual(int_list("-1,0,1"), [-1, 0, 1])
        with self.assertRaises(argparse.ArgumentTypeError):
            int_list("1,x")

    def test_join_negative_values(self):
        self.assertEqual(
            join_negative_values(['classify', 'eschenburg', '--q', '-1,0,1', '--p', '0,0,0']),
            ['classify', 'eschenburg', '--q=-1,0,1', '--p', '0,0,0'],
        )
        self.assertEqual(join_negative_values(['--ab', '-2,1']), ['--ab=-2,1'])
        self.assertEqual(join_negative_values(['--seed', '5', '-v']), ['--seed', '5', '-v'])

    def test_parser(self):
        args = build_parser().parse_args(
            ['scan', 'torus', '--ab-max', '2', '--single-z2', '--format', 'csv']
        )
        self.assertEqual(args.command, 'scan')
        self.assertEqual(args.ab_max, 2)
        self.assertTrue(args.single_z2)
        self.assertEqual(args.format, 'csv')
        args = build_parser().parse_args(['verify', 'torus', '--c', '2', '-n', '10'])
        self.assertEqual((args.c, args.samples, args.campaign), (2, 10, 'random'))


class MainTests(unittest.TestCase):
    """Tests the exit codes and files of the console entry point."""

    def setUp(self):
        """Creates a scratch directory and clears BIQ_ variables."""
        self.tmp = tempfile.mkdtemp()
        self.saved = {key: val for key, val in os.environ.items() if key.startswith('BIQ_')}
        for key in self.saved:
            del os.environ[key]

    def tearDown(self):
        shutil.rmtree(self.tmp)
        os.environ.update(self.saved)

    def path(self, name):
        return os.path.join(self.tmp, name)

    def read_json(self, name):
        with open(self.path(name)) as handle:
            return json.load(handle)

    def test_version(self):
        self.assertEqual(main(['--version']), EXIT_OK)

    def test_classify(self):
        code = main(
            ['classify', 'eschenburg', '--p', '0,0,0', '--q', '-1,0,1', '--out', self.path('w.json')]
        )
        self.assertEqual(code, EXIT_OK)
        data = self.read_json('w.json')
        self.assertEqual(data['results'][0]['class'], 'BOUNDARY_W11')
        code = main(['classify', 'bazaikin', '--q', '1,1,1,1,-1', '--out', self.path('b.json')])
        self.assertEqual(code, EXIT_OK)
        self.assertEqual(self.read_json('b.json')['results'][0]['p1'], 7)

    def test_classify_torus_csv(self):
        code = main(
            ['classify', 'torus', '--ab', '3,0', '--format', 'csv', '--out', self.path('t.csv')]
        )
        self.assertEqual(code, EXIT_OK)
        with open(self.path('t.csv')) as handle:
            lines = handle.read().splitlines()
        self.assertTrue(lines[0].startswith("family,params,free,class"))
        self.assertIn("U_{3,0}", lines[1])

    def test_invalid_input(self):
        out = ['--out', self.path('x.json')]
        for argv in (
            ['frobnicate'],
            ['classify', 'eschenburg', '--p', '1,1,0'],
            ['classify', 'eschenburg', '--p', '1,1,0', '--q', '0,0,1'],
            ['classify', 'bazaikin', '--q', '1,1,1,2,-1'],
            ['classify', 'torus', '--ab', '1,2,3'],
            ['verify', 'eschenburg', '--p', '1,1,2', '--q', '0,0,4', '--campaign', 'locus'],
            ['verify', 'eschenburg', '--p', '1,1,0', '--q', '0,0,2', '--lam', '1.5'],
            ['scan', 'eschenburg', '--max', '-2'],
            ['report', self.path('missing.json')],
        ):
            self.assertEqual(main(argv + out), EXIT_INVALID, argv)

    def test_invalid_environment(self):
        os.environ['BIQ_SAMPLES'] = 'lots'
        code = main(['verify', 'eschenburg', '--p', '1,1,0', '--q', '0,0,2', '--out', self.path('e.json')])
        self.assertEqual(code, EXIT_INVALID)

    def test_verify_and_report(self):
        code = main(
            [
                'verify', 'eschenburg', '--p', '1,1,0', '--q', '0,0,2',
                '--campaign', 'locus', '--locus-samples', '2', '--seed', '3',
                '--out', self.path('v.json'),
            ]
        )
        self.assertEqual(code, EXIT_OK)
        self.assertEqual(len(self.read_json('v.json')['witnesses']), 2)
        code = main(['report', self.path('v.json'), '--out', self.path('v.txt')])
        self.assertEqual(code, EXIT_OK)
        with open(self.path('v.txt')) as handle:
            text = handle.read()
        self.assertIn("witnesses: 2", text)

    def test_corrupt_report(self):
        main(
            [
                'verify', 'eschenburg', '--p', '1,1,0', '--q', '0,0,2',
                '--campaign', 'locus', '--locus-samples', '1', '--out', self.path('v.json'),
            ]
        )
        data = self.read_json('v.json')
        data['witnesses'][0]['Y'] = data['witnesses'][0]['X']
        with open(self.path('bad.json'), 'w') as handle:
            json.dump(data, handle)
        code = main(['report', self.path('bad.json'), '--out', self.path('bad.txt')])
        self.assertEqual(code, EXIT_FAILED)

    def test_failed_summary(self):
        report = {
            'command': {'command': 'verify'},
            'config': {},
            'results': [],
            'witnesses': [],
            'summary': {'failures': 1},
        }
        with open(self.path('failed.json'), 'w') as handle:
            json.dump(report, handle)
        code = main(['report', self.path('failed.json'), '--out', self.path('failed.txt')])
        self.assertEqual(code, EXIT_FAILED)


if __name__ == "__main__":
    unittest.main()
