import unittest

from biquotient.process import (
    CurvatureCampaign,
    RunConfig,
    format_params,
    run_sample,
)

import logging

logging.basicConfig(level=logging.DEBUG)

E0 = {'p': [1, 1, 0], 'q': [0, 0, 2]}
POSITIVE = {'p': [1, 1, 2], 'q': [0, 0, 4]}
DAGGER = {'p': [0, 2, 3], 'q': [-1, 0, 6]}
AP = {'q': [1, 1, 1, 1, -1]}
U11 = {'kind': 'AB', 'a': 1, 'b': 1, 'c': 0}
U00 = {'kind': 'AB', 'a': 0, 'b': 0, 'c': 0}


def comparable(report):
    data = report.to_dict()
    return {key: data[key] for key in ('command', 'results', 'witnesses', 'summary')}


class RunConfigTests(unittest.TestCase):
    """Tests defaults, environment overrides and validation of the
    run configuration.
    """

    def test_defaults(self):
        cfg = RunConfig.from_env(environ={})
        self.assertEqual(cfg.seed, 0)
        self.assertEqual(cfg.workers, 1)
        self.assertEqual(cfg.samples, 1000)
        self.assertEqual(cfg.locus_samples, 20)
        self.assertEqual(cfg.bracket_tol, 1e-9)
        self.assertEqual(cfg.horiz_tol, 1e-8)
        self.assertEqual(cfg.lam, 0.5)
        self.assertEqual(cfg.method, 'spectral')
        self.assertEqual(cfg.format, 'json')
        self.assertEqual(list(cfg.to_dict()), sorted(RunConfig.FIELDS))

    def test_environment_and_overrides(self):
        environ = {'BIQ_SEED': '7', 'BIQ_LAMBDA': '0.25', 'BIQ_FORMAT': 'csv'}
        cfg = RunConfig.from_env(environ=environ, seed=3, samples=None)
        self.assertEqual(cfg.seed, 3)
        self.assertEqual(cfg.lam, 0.25)
        self.assertEqual(cfg.format, 'csv')
        self.assertEqual(cfg.samples, 1000)

    def test_invalid_environment(self):
        with self.assertRaises(ValueError):
            RunConfig.from_env(environ={'BIQ_SAMPLES': 'many'})
        with self.assertRaises(ValueError):
            RunConfig.from_env(environ={'BIQ_LAMBDA': '1.5'})

    def test_invalid_values(self):
        for kwargs in (
            {'lam': 1.0},
            {'lam': 0.0},
            {'samples': 0},
            {'workers': 0},
            {'margin': 0.0},
            {'horiz_tol': -1e-8},
            {'format': 'xml'},
            {'method': 'grid'},
            {'colour': 'red'},
        ):
            with self.assertRaises(ValueError):
                RunConfig(**kwargs)

    def test_format_params(self):
        self.assertEqual(format_params('eschenburg', E0), "p=1,1,0 q=0,0,2")
        self.assertEqual(format_params('bazaikin', AP), "q=1,1,1,1,-1")
        self.assertEqual(format_params('torus', U11), "U_{1,1}")


class ClassifyTests(unittest.TestCase):
    """Tests the classify command of the three families."""

    def setUp(self):
        """Defines a campaign with the default configuration."""
        self.campaign = CurvatureCampaign(RunConfig(), log_level=logging.INFO)

    def test_eschenburg(self):
        report = self.campaign.classify('eschenburg', E0)
        self.assertEqual(len(report.results), 1)
        row = report.results[0]
        self.assertEqual(row['params'], "p=1,1,0 q=0,0,2")
        self.assertTrue(row['free'])
        self.assertEqual(row['class'], 'ALMOST_POSITIVE_E0')
        self.assertFalse(report.failed)
        row = self.campaign.classify('eschenburg', DAGGER).results[0]
        self.assertFalse(row['free'])
        self.assertEqual(row['class'], 'ORBIFOLD_DAGGER')

    def test_eschenburg_unclassifiable(self):
        row = self.campaign.classify('eschenburg', {'p': [0, 0, 0], 'q': [0, 0, 0]}).results[0]
        self.assertFalse(row['free'])
        self.assertIsNone(row['class'])

    def test_bazaikin(self):
        row = self.campaign.classify('bazaikin', {'q': [1, 1, 1, 3, -3]}).results[0]
        self.assertEqual(row['class'], 'QUASI_POSITIVE/BOUNDARY_FAMILY')
        self.assertEqual((row['s'], row['p1'], row['n']), (1, 15, 3))
        row = self.campaign.classify('bazaikin', AP).results[0]
        self.assertEqual(row['class'], 'ALMOST_POSITIVE_11111m1')
        self.assertEqual((row['s'], row['p1']), (1, 7))

    def test_torus(self):
        row = self.campaign.classify('torus', U11).results[0]
        self.assertEqual(row['class'], 'ALMOST_POSITIVE')
        self.assertEqual(row['kernel'], 'trivial')
        self.assertEqual(row['isotropy'], [1, 1, 1, 3])
        self.assertEqual(row['singular'], ['(j,j):Z_3'])
        row = self.campaign.classify('torus', {'kind': 'L'}).results[0]
        self.assertTrue(row['free'])
        self.assertEqual(row['class'], 'NOT_ALMOST_POSITIVE_FREE')

    def test_unknown_family(self):
        with self.assertRaises(ValueError):
            self.campaign.classify('wallach', {})


class ScanTests(unittest.TestCase):
    """Tests the lattice scans."""

    def setUp(self):
        """Defines a campaign with the default configuration."""
        self.campaign = CurvatureCampaign(RunConfig(), log_level=logging.INFO)

    def test_eschenburg_boundary(self):
        report = self.campaign.scan('eschenburg', bound=3, boundary=True)
        self.assertEqual(
            report.summary['classes'], ['ALMOST_POSITIVE_E0', 'BOUNDARY_W11']
        )
        self.assertEqual(report.summary['rows'], len(report.results))
        self.assertEqual(report.summary['failures'], 0)

    def test_bazaikin_family(self):
        report = self.campaign.scan('bazaikin', family_n=5)
        self.assertEqual([row['p1'] for row in report.results], [7, 15, 31])
        self.assertEqual(report.results[1]['params'], "q=1,1,1,3,-3")
        report = self.campaign.scan('bazaikin', family_n=9, class_filter='BOUNDARY_FAMILY')
        self.assertEqual([row['n'] for row in report.results], [3, 5, 7, 9])
        report = self.campaign.scan('bazaikin', family_n=9, s_filter=2)
        self.assertEqual(report.results, [])

    def test_torus(self):
        report = self.campaign.scan('torus', ab_max=1, c_max=1)
        self.assertEqual(report.summary['rows'], 12)
        filtered = self.campaign.scan('torus', ab_max=1, c_max=1, single_z2=True)
        self.assertEqual(filtered.summary['rows'], report.summary['single_z2_matches'])
        self.assertTrue(all(row['single_z2'] for row in filtered.results))

    def test_negative_bound(self):
        with self.assertRaises(ValueError):
            self.campaign.scan('eschenburg', bound=-1)


class VerifyTests(unittest.TestCase):
    """Tests the verification campaigns on small sample counts."""

    def setUp(self):
        """Defines a campaign with few samples."""
        self.config = RunConfig(seed=11, samples=12, locus_samples=3)
        self.campaign = CurvatureCampaign(self.config, log_level=logging.INFO)

    def test_eschenburg_random(self):
        for params in (E0, POSITIVE):
            report = self.campaign.verify('eschenburg', params)
            self.assertEqual(report.summary['samples'], 12)
            self.assertEqual(report.summary['zero_planes'], 0)
            self.assertFalse(report.failed)
        report = self.campaign.verify('eschenburg', E0)
        self.assertTrue(all(row['locus_distance'] > 0.0 for row in report.results))

    def test_eschenburg_locus(self):
        report = self.campaign.verify('eschenburg', E0, campaign='locus')
        self.assertEqual(report.summary['zero_planes'], 3)
        self.assertEqual(len(report.witnesses), 3)
        self.assertFalse(report.failed)
        report = self.campaign.verify('eschenburg', DAGGER, campaign='locus')
        self.assertEqual(report.summary['class'], 'ORBIFOLD_DAGGER')
        self.assertTrue(all(row['family_dim'] == 1 for row in report.results))
        self.assertFalse(report.failed)

    def test_locus_needs_almost_positive_class(self):
        with self.assertRaises(ValueError):
            self.campaign.verify('eschenburg', POSITIVE, campaign='locus')
        with self.assertRaises(ValueError):
            self.campaign.verify('bazaikin', {'q': [1, 1, 1, 1, 1]}, campaign='locus')

    def test_bazaikin(self):
        report = self.campaign.verify('bazaikin', AP)
        self.assertFalse(report.failed)
        report = self.campaign.verify('bazaikin', AP, campaign='locus')
        self.assertEqual(report.summary['zero_planes'], 3)
        self.assertTrue(all(row['locus_distance'] <= 1e-12 for row in report.results))
        self.assertFalse(report.failed)

    def test_torus(self):
        report = self.campaign.verify('torus', U11)
        self.assertFalse(report.failed)
        report = self.campaign.verify('torus', U11, campaign='locus')
        self.assertEqual(report.summary['samples'], 3 + 4)
        points = [row['point'] for row in report.results if row['point'] is not None]
        self.assertEqual(points, ['(1,1)', '(1,j)', '(j,1)', '(j,j)'])
        self.assertFalse(report.failed)
        report = self.campaign.verify('torus', U00, campaign='locus')
        self.assertTrue(all(row['status'] == 'CIRCLE' for row in report.results))
        self.assertFalse(report.failed)

    def test_oracle(self):
        for family in ('eschenburg', 'bazaikin', 'torus'):
            report = self.campaign.verify(family, {}, campaign='oracle')
            self.assertEqual(report.summary['agree'], 12)
            self.assertFalse(report.failed)
            constructed = [row for row in report.results if row['constructed']]
            self.assertTrue(all(row['zero_plane'] for row in constructed))

    def test_unknown_campaign(self):
        with self.assertRaises(ValueError):
            self.campaign.verify('eschenburg', E0, campaign='exhaustive')

    def test_deterministic(self):
        first = self.campaign.verify('eschenburg', E0, campaign='locus')
        second = CurvatureCampaign(self.config, log_level=logging.INFO).verify(
            'eschenburg', E0, campaign='locus'
        )
        self.assertEqual(comparable(first), comparable(second))

    def test_workers_do_not_change_results(self):
        serial = self.campaign.verify('torus', U11)
        config = RunConfig(seed=11, samples=12, locus_samples=3, workers=2)
        parallel = CurvatureCampaign(config, log_level=logging.INFO).verify('torus', U11)
        self.assertEqual(comparable(serial), comparable(parallel))

    def test_run_sample(self):
        import numpy as np

        task = {
            'family': 'eschenburg',
            'campaign': 'random',
            'config': self.config.to_dict(),
            'log_level': logging.INFO,
            'params': POSITIVE,
            'locus': None,
        }
        seed = np.random.SeedSequence(0).spawn(1)[0]
        row, witnesses = run_sample((task, 0, seed))
        self.assertFalse(row['zero_plane'])
        self.assertEqual(witnesses, [])
        self.assertIsNone(row['locus_distance'])


if __name__ == "__main__":
    unittest.main()
