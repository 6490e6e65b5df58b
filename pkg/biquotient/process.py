import os
from datetime import datetime
from multiprocessing import Pool
from platform import python_version

import numpy as np
import pandas as pd
import scipy
from scipy.stats import unitary_group

import biquotient
from biquotient import bazaikin, eschenburg, torus_s3s3
from biquotient.algebra import LieVector, adjoint, haar_unitary
from biquotient.cheeger import S3S3_DIAG, SU3_U2, SU5_U4, SymmetricPairContext
from biquotient.label_map import Labels
from biquotient.report import Report, encode_witness

import logging

log = logging.getLogger(__name__)

FAMILIES = ('eschenburg', 'bazaikin', 'torus')
CAMPAIGNS = ('random', 'locus', 'oracle')
FORMATS = ('json', 'csv', 'text')
METHODS = ('spectral', 'numeric')

PAIR_OF_FAMILY = {'eschenburg': SU3_U2, 'bazaikin': SU5_U4, 'torus': S3S3_DIAG}


class RunConfig(object):
    """Tolerances, sample counts and output settings of a run.

    Each field has a default and an environment variable that
    overrides it; keyword arguments that are not None override
    both.

    Parameters:

        seed: int
            Root seed of the per sample random streams.
            Default: 0, env BIQ_SEED

        workers: int
            Size of the worker pool. Default: 1, env BIQ_WORKERS

        samples: int
            Haar points of a random campaign and planes of an
            oracle campaign. Default: 1000, env BIQ_SAMPLES

        locus_samples: int
            Constructed points of a locus campaign.
            Default: 20, env BIQ_LOCUS_SAMPLES

        bracket_tol, horiz_tol, margin: float
            Relative bracket tolerance, horizontality tolerance
            of witnesses and zero decision margin.
            Default: 1e-9, 1e-8, 1e-8, env BIQ_TOL_BRACKET,
            BIQ_TOL_HORIZ, BIQ_MARGIN

        lam: float
            Deformation parameter in (0, 1). Default: 0.5,
            env BIQ_LAMBDA

        method: str
            'spectral' for the exact eigenvalue ranges, 'numeric'
            for the grid (Eschenburg) and multi-start (Bazaikin)
            searches. Default: 'spectral', env BIQ_METHOD

        resolution: int
            Grid resolution of the numeric Y1 range. Default: 256

        starts: int
            Multi-start count of the numeric W2 range. Default: 64

        det_cut: float
            Distance from the zero locus beyond which random
            Eschenburg and torus points must carry no zero plane.
            Default: 0.05

        a55_cut: float
            Same for |a55| on B_{1,1,1,1,-1}. Default: 0.1

        format: str
            'json', 'csv' or 'text'. Default: 'json', env BIQ_FORMAT
    """

    ENV_PREFIX = 'BIQ_'

    # name: (default, type, environment variable suffix)
    FIELDS = {
        'seed': (0, int, 'SEED'),
        'workers': (1, int, 'WORKERS'),
        'samples': (1000, int, 'SAMPLES'),
        'locus_samples': (20, int, 'LOCUS_SAMPLES'),
        'bracket_tol': (1e-9, float, 'TOL_BRACKET'),
        'horiz_tol': (1e-8, float, 'TOL_HORIZ'),
        'margin': (1e-8, float, 'MARGIN'),
        'lam': (0.5, float, 'LAMBDA'),
        'method': ('spectral', str, 'METHOD'),
        'resolution': (256, int, 'RESOLUTION'),
        'starts': (64, int, 'STARTS'),
        'det_cut': (0.05, float, 'DET_CUT'),
        'a55_cut': (0.1, float, 'A55_CUT'),
        'format': ('json', str, 'FORMAT'),
    }

    def __init__(self, **kwargs):
        unknown = sorted(set(kwargs) - set(self.FIELDS))
        if unknown:
            msg = "Unknown configuration fields {}.".format(unknown)
            log.error(msg)
            raise ValueError(msg)
        for name, (default, kind, _) in self.FIELDS.items():
            value = kwargs.get(name)
            setattr(self, name, kind(default if value is None else value))
        self.validate()

    @classmethod
    def from_env(cls, environ=None, **overrides):
        """Configuration from BIQ_* environment variables, with
        overrides that are not None taking precedence.
        """
        environ = os.environ if environ is None else environ
        values = {}
        for name, (_, kind, suffix) in cls.FIELDS.items():
            raw = environ.get(cls.ENV_PREFIX + suffix)
            if raw is None:
                continue
            try:
                values[name] = kind(raw)
            except ValueError:
                msg = "Environment variable {}{} = {!r} is not a valid {}.".format(
                    cls.ENV_PREFIX, suffix, raw, kind.__name__
                )
                log.error(msg)
                raise ValueError(msg)
        values.update({key: val for key, val in overrides.items() if val is not None})
        return cls(**values)

    def validate(self):
        for name in ('bracket_tol', 'horiz_tol', 'margin', 'det_cut', 'a55_cut'):
            if not getattr(self, name) > 0:
                msg = "{} must be positive, got {}.".format(name, getattr(self, name))
                log.error(msg)
                raise ValueError(msg)
        for name in ('samples', 'locus_samples', 'resolution', 'starts', 'workers'):
            if getattr(self, name) < 1:
                msg = "{} must be at least 1, got {}.".format(name, getattr(self, name))
                log.error(msg)
                raise ValueError(msg)
        if not 0.0 < self.lam < 1.0:
            msg = "lam must lie in (0, 1), got {}.".format(self.lam)
            log.error(msg)
            raise ValueError(msg)
        if self.format not in FORMATS:
            msg = "Unknown output format {}, use one of {}.".format(self.format, FORMATS)
            log.error(msg)
            raise ValueError(msg)
        if self.method not in METHODS:
            msg = "Unknown range method {}, use one of {}.".format(self.method, METHODS)
            log.error(msg)
            raise ValueError(msg)

    def to_dict(self):
        return {name: getattr(self, name) for name in sorted(self.FIELDS)}

    def __repr__(self):
        return "RunConfig({})".format(self.to_dict())


def format_params(family, params):
    """Compact parameter string used in result rows."""
    if family == 'eschenburg':
        return "p={} q={}".format(
            ",".join(str(v) for v in params['p']), ",".join(str(v) for v in params['q'])
        )
    if family == 'bazaikin':
        return "q={}".format(",".join(str(v) for v in params['q']))
    action = torus_s3s3.TorusAction(params['kind'], params['a'], params['b'], params['c'])
    return repr(action)


def _check_family(family):
    if family not in FAMILIES:
        msg = "Unknown family {}, use one of {}.".format(family, FAMILIES)
        log.error(msg)
        raise ValueError(msg)


def _report_row(task, index, found, report):
    row = {
        'family': task['family'],
        'params': format_params(task['family'], task['params']),
        'campaign': task['campaign'],
        'sample': index,
        'zero_plane': bool(found),
    }
    row.update(report.to_dict())
    row['direction'] = report.witness.direction if report.witness is not None else None
    return row


def _witnesses_of(report):
    if report.witness is None:
        return []
    return [encode_witness(report.witness)]


def _eschenburg_sample(task, index, rng):
    cfg = task['config']
    space = eschenburg.EschenburgSpace(
        task['params']['p'],
        task['params']['q'],
        lam=cfg['lam'],
        margin=cfg['margin'],
        horiz_tol=cfg['horiz_tol'],
        bracket_tol=cfg['bracket_tol'],
        log_level=task['log_level'],
    )
    method = 'grid' if cfg['method'] == 'numeric' else 'spectral'
    locus = task.get('locus')
    if task['campaign'] == 'locus':
        A = space.zero_locus_point(locus, seed=rng)
    else:
        A = haar_unitary(3, rng)
    found, report = space.has_horizontal_zero_plane(
        A, method=method, resolution=cfg['resolution']
    )
    row = _report_row(task, index, found, report)
    row['locus_distance'] = eschenburg_locus_distance(locus, A, space.labels)
    if task['campaign'] == 'locus' and locus == space.labels['dagger_lens']:
        members = space.lens_plane_family(A)
        row['family_dim'] = space.lens_plane_family_dim(A)
        row['family_valid'] = all(member.valid for member in members)
    return row, _witnesses_of(report)


def eschenburg_locus_distance(locus, A, labels):
    """|det| of the upper left 2 x 2 block for E0_DET,
    |a22| + |a32| for DAGGER_LENS, None otherwise.
    """
    A = np.asarray(A)
    if locus == labels['e0_det']:
        return float(abs(np.linalg.det(A[:2, :2])))
    if locus == labels['dagger_lens']:
        return float(abs(A[1, 1]) + abs(A[2, 1]))
    return None


def _bazaikin_sample(task, index, rng):
    cfg = task['config']
    space = bazaikin.BazaikinSpace(
        task['params']['q'],
        lam=cfg['lam'],
        margin=cfg['margin'],
        horiz_tol=cfg['horiz_tol'],
        bracket_tol=cfg['bracket_tol'],
        log_level=task['log_level'],
    )
    method = 'multistart' if cfg['method'] == 'numeric' else 'spectral'
    if task['campaign'] == 'locus':
        A = space.zero_locus_point(seed=rng)
    else:
        A = haar_unitary(5, rng)
    found, report = space.has_horizontal_zero_plane(
        A, method=method, starts=cfg['starts'], seed=rng
    )
    row = _report_row(task, index, found, report)
    row['locus_distance'] = float(abs(A[4, 4])) if task.get('locus') else None
    return row, _witnesses_of(report)


def _torus_sample(task, index, rng):
    cfg = task['config']
    params = task['params']
    action = torus_s3s3.TorusAction(params['kind'], params['a'], params['b'], params['c'])
    quotient = torus_s3s3.TorusQuotient(action, lam=cfg['lam'], log_level=task['log_level'])
    special = task.get('special')
    if special is not None:
        q1, q2 = torus_s3s3.SPECIAL_POINTS[special][1]
    elif task['campaign'] == 'locus':
        if quotient.is_free():
            q1, q2 = torus_s3s3.circle_locus_point(action, rng)
        else:
            q1, q2 = torus_s3s3.hypersurface_point(seed=rng)
    else:
        q1, q2 = torus_s3s3.random_pair(rng)
    status = quotient.zero_plane_status(q1, q2)
    witnesses = quotient.witnesses(
        q1, q2, bracket_tol=cfg['bracket_tol'], horiz_tol=cfg['horiz_tol']
    )
    row = {
        'family': 'torus',
        'params': repr(action),
        'campaign': task['campaign'],
        'sample': index,
        'point': torus_s3s3.SPECIAL_POINTS[special][0] if special is not None else None,
        'status': status,
        'zero_plane': status != quotient.labels['none'],
        'witness_valid': all(w.valid for w in witnesses) if witnesses else None,
        'locus_distance': float(abs(torus_s3s3.dependence_det(q1, q2))),
        'on_circle_locus': bool(quotient.on_circle_locus(q1, q2)),
    }
    return row, [encode_witness(w) for w in witnesses]


def _oracle_sample(task, index, rng):
    """Lifted-bracket oracle against the bracket test, on a
    random plane (even samples) or a constructed zero-curvature
    plane (odd samples).
    """
    cfg = task['config']
    ctx = SymmetricPairContext(PAIR_OF_FAMILY[task['family']], lam=cfg['lam'])
    constructed = index % 2 == 1
    if not constructed:
        X = ctx.random_vector(rng)
        Y = ctx.random_vector(rng)
    elif ctx.n is None:
        v = rng.standard_normal(3)
        X = LieVector.pair(v, np.zeros(3))
        Y = LieVector.pair(np.zeros(3), v)
    else:
        # commuting elements of k: a conjugated diagonal pair
        n = ctx.n
        k = np.eye(n, dtype=complex)
        k[:-1, :-1] = unitary_group.rvs(n - 1, random_state=rng)
        diag = rng.standard_normal((2, n - 1))
        X, Y = [
            adjoint(k, LieVector.imaginary_diagonal(list(d) + [-d.sum()]))
            for d in diag
        ]
    primary = ctx.plane_zero_curvature(X, Y, tol=cfg['bracket_tol'])
    oracle = ctx.lifted_bracket_oracle(X, Y, tol=cfg['bracket_tol'])
    row = {
        'family': task['family'],
        'params': ctx.pair_id,
        'campaign': 'oracle',
        'sample': index,
        'constructed': constructed,
        'zero_plane': bool(primary),
        'oracle': bool(oracle),
        'agree': bool(primary) == bool(oracle),
    }
    return row, []


SAMPLERS = {
    'eschenburg': _eschenburg_sample,
    'bazaikin': _bazaikin_sample,
    'torus': _torus_sample,
}


def run_sample(job):
    """Worker entry point: one sample of a campaign.

    Parameters:

        job: tuple (task dict, sample index, SeedSequence)

    Returns:

        (row, witnesses): dict and list of encoded witnesses
    """
    task, index, seed_seq = job
    logging.getLogger().setLevel(task['log_level'])
    rng = np.random.default_rng(seed_seq)
    if task['campaign'] == 'oracle':
        return _oracle_sample(task, index, rng)
    return SAMPLERS[task['family']](task, index, rng)


class CurvatureCampaign(object):
    """Runs the classification, scan and verification commands
    and collects their outcome in a Report.

    Verification campaigns split into independent samples. Each
    sample draws from its own random stream, spawned from one
    SeedSequence of the configured seed, so the report does not
    depend on the number of workers.

    Parameters:

        config: RunConfig or None
            Default: RunConfig.from_env()

        log_level: None or python logger logging level,
            Default: logging.DEBUG
    """

    def __init__(self, config=None, log_level=logging.DEBUG):
        # start timer
        self.start_time = datetime.now()

        # set log level
        self.log_level = log_level
        logging.getLogger().setLevel(log_level)
        # log versions
        log.info("Python version: {}".format(python_version()))
        log.info("biquotient package version: {}".format(biquotient.__version__))
        log.info("numpy version: {}".format(np.__version__))
        log.info("scipy version: {}".format(scipy.__version__))
        log.info("pandas version: {}".format(pd.__version__))

        self.config = config if config is not None else RunConfig.from_env()
        self.esc_l = Labels(log_level=log_level).set_eschenburg()
        self.baz_l = Labels(log_level=log_level).set_bazaikin()
        self.tor_l = Labels(log_level=log_level).set_torus()

    def _timing(self):
        return {
            'started': self.start_time.isoformat(),
            'elapsed_s': (datetime.now() - self.start_time).total_seconds(),
        }

    def _report(self, command, results, witnesses=None, summary=None):
        return Report(
            command,
            self.config.to_dict(),
            results,
            witnesses,
            summary,
            self._timing(),
        )

    def _map(self, jobs):
        if self.config.workers > 1 and len(jobs) > 1:
            with Pool(self.config.workers) as pool:
                outcomes = pool.map(run_sample, jobs)
        else:
            outcomes = [run_sample(job) for job in jobs]
        rows = [row for row, _ in outcomes]
        witnesses = [wit for _, wits in outcomes for wit in wits]
        return rows, witnesses

    def _jobs(self, task, count):
        seeds = np.random.SeedSequence(self.config.seed).spawn(count)
        return [(task, index, seeds[index]) for index in range(count)]

    def _space_kwargs(self):
        cfg = self.config
        return {
            'lam': cfg.lam,
            'margin': cfg.margin,
            'horiz_tol': cfg.horiz_tol,
            'bracket_tol': cfg.bracket_tol,
            'log_level': self.log_level,
        }

    def classify(self, family, params):
        """Freeness, curvature class and, for Bazaikin spaces,
        the invariants s and p1.

        Parameters:

            family: str
                'eschenburg', 'bazaikin' or 'torus'

            params: dict
                {'p', 'q'}, {'q'} or a TorusAction dict

        Returns:

            Report with one result row
        """
        _check_family(family)
        row = {'family': family}
        if family == 'eschenburg':
            space = eschenburg.EschenburgSpace(params['p'], params['q'], **self._space_kwargs())
            row['params'] = format_params(family, space.params.to_dict())
            row['free'] = space.is_free()
            if eschenburg.is_classifiable(space.params):
                cls = space.classify_curvature()
                row['class'] = cls.label
                row['note'] = cls.note
                row['ordering'] = format_params(family, cls.ordering.to_dict())
            else:
                row['class'] = None
                row['note'] = "action is neither free nor of type (dagger)"
        elif family == 'bazaikin':
            space = bazaikin.BazaikinSpace(params['q'], **self._space_kwargs())
            row['params'] = format_params(family, space.params.to_dict())
            row['free'] = space.is_free()
            if row['free']:
                cls = space.classify_curvature()
                row['class'] = cls.name
                row['n'] = cls.boundary_n
                row['ordering'] = format_params(family, cls.ordering.to_dict())
            else:
                row['class'] = None
            row.update(space.invariants().to_dict())
        else:
            action = torus_s3s3.TorusAction(
                params.get('kind', 'L'), params.get('a', 0), params.get('b', 0), params.get('c', 0)
            )
            quotient = torus_s3s3.TorusQuotient(
                action, lam=self.config.lam, log_level=self.log_level
            )
            row['params'] = repr(action)
            row['free'] = quotient.is_free()
            row['class'] = quotient.curvature_verdict()
            if action.kind != 'L':
                row['kernel'] = quotient.ineffective_kernel()
                row['isotropy'] = list(quotient.orders())
                row['singular'] = [
                    "{}:Z_{}".format(rec.point, rec.order) for rec in quotient.singular_points()
                ]
        log.debug("Classified {}: {}.".format(row['params'], row.get('class')))
        command = {'command': 'classify', 'family': family, 'params': params}
        return self._report(command, [row], summary={'failures': 0})

    def scan(
        self,
        family,
        bound=None,
        boundary=False,
        family_n=None,
        class_filter=None,
        s_filter=None,
        ab_max=3,
        c_max=3,
        single_z2=False,
    ):
        """Lattice scans.

        * eschenburg: sorted weights with entries in
          [-bound, bound], optionally only boundary actions
        * bazaikin: the family (1, 1, 1, n, -n) up to family_n,
          or free odd tuples with entries in [-bound, bound]
        * torus: isotropy patterns of AB(a, b) with
          |a|, |b| <= ab_max and C(c) with |c| <= c_max

        Rows are filtered by class name and s when given.

        Returns:

            Report with one row per parameter set
        """
        _check_family(family)
        command = {
            'command': 'scan',
            'family': family,
            'bound': bound,
            'boundary': boundary,
            'family_n': family_n,
            'class': class_filter,
            's': s_filter,
            'ab_max': ab_max,
            'c_max': c_max,
            'single_z2': single_z2,
        }
        for name, value in (('bound', bound), ('ab_max', ab_max), ('c_max', c_max)):
            if value is not None and int(value) < 0:
                msg = "Scan bound {} must be nonnegative, got {}.".format(name, value)
                log.error(msg)
                raise ValueError(msg)

        if family == 'eschenburg':
            table = eschenburg.scan(
                bound if bound is not None else 3,
                boundary_only=boundary,
                log_level=self.log_level,
            )
            table.insert(
                0,
                'params',
                [
                    format_params(family, {'p': p, 'q': q})
                    for p, q in zip(table['p'], table['q'])
                ],
            )
            table = table.drop(columns=['p', 'q'])
        elif family == 'bazaikin':
            if family_n is not None:
                table = bazaikin.family_table(family_n, log_level=self.log_level)
                table.insert(
                    0, 'params', ["q=1,1,1,{},{}".format(n, -n) for n in table['n']]
                )
            else:
                table = bazaikin.scan(
                    bound if bound is not None else 3, log_level=self.log_level
                )
                table.insert(
                    0, 'params', [format_params(family, {'q': q}) for q in table['q']]
                )
                table = table.drop(columns=['q'])
        else:
            table = torus_s3s3.isotropy_scan(ab_max, c_max, log_level=self.log_level)
            table.insert(
                0,
                'params',
                [
                    format_params(family, {'kind': k, 'a': a, 'b': b, 'c': c})
                    for k, a, b, c in zip(table['kind'], table['a'], table['b'], table['c'])
                ],
            )
            if single_z2:
                table = table[table['single_z2']]

        table.insert(0, 'family', family)
        if class_filter is not None and 'class' in table.columns:
            table = table[
                table['class'].apply(lambda name: class_filter in str(name).split("/"))
            ]
        if s_filter is not None and 's' in table.columns:
            table = table[table['s'] == int(s_filter)]
        table = table.reset_index(drop=True)

        summary = {'rows': len(table), 'failures': 0}
        if 'class' in table.columns:
            summary['classes'] = sorted(str(name) for name in table['class'].unique())
        if family == 'torus':
            matches = int(table['single_z2'].sum()) if len(table) else 0
            summary['single_z2_matches'] = matches
            log.info("Isotropy scan: {} single Z2 patterns.".format(matches))
        results = table.astype(object).where(table.notna(), None).to_dict('records')
        return self._report(command, results, summary=summary)

    def _eschenburg_task(self, params, campaign):
        space = eschenburg.EschenburgSpace(params['p'], params['q'], **self._space_kwargs())
        cls = space.classify_curvature()
        ordering = cls.ordering
        locus = None
        if cls.label == self.esc_l['e0']:
            locus = self.esc_l['e0_det']
        elif cls.label == self.esc_l['dagger']:
            locus = self.esc_l['dagger_lens']
        if campaign == 'locus' and locus is None:
            msg = "No zero locus is known for {} of class {}.".format(
                space.params, cls.label
            )
            log.error(msg)
            raise ValueError(msg)
        return cls.label, ordering.to_dict(), locus

    def _bazaikin_task(self, params, campaign):
        space = bazaikin.BazaikinSpace(params['q'], **self._space_kwargs())
        cls = space.classify_curvature()
        locus = self.baz_l['a55_zero'] if cls.label == self.baz_l['ap'] else None
        if campaign == 'locus' and locus is None:
            msg = "No zero locus is known for {} of class {}.".format(
                space.params, cls.name
            )
            log.error(msg)
            raise ValueError(msg)
        return cls.name, cls.ordering.to_dict(), locus

    def verify(self, family, params, campaign='random'):
        """Numerical verification campaigns.

        * random: Haar points; no zero plane may occur for a
          POSITIVE class, nor beyond the locus cut for the
          almost positive classes
        * locus: constructed points of the zero locus; each must
          carry a validated witness
        * oracle: bracket test against the lifted-bracket test on
          random and constructed planes; every pair must agree

        Every witness found must validate. A violation counts as
        a failure in the report summary.

        Returns:

            Report
        """
        _check_family(family)
        if campaign not in CAMPAIGNS:
            msg = "Unknown campaign {}, use one of {}.".format(campaign, CAMPAIGNS)
            log.error(msg)
            raise ValueError(msg)
        cfg = self.config
        command = {'command': 'verify', 'family': family, 'params': params, 'campaign': campaign}
        task = {
            'family': family,
            'campaign': campaign,
            'config': cfg.to_dict(),
            'log_level': self.log_level,
        }
        summary = {'campaign': campaign}

        if campaign == 'oracle':
            task['params'] = {}
            rows, witnesses = self._map(self._jobs(task, cfg.samples))
            summary['samples'] = len(rows)
            summary['agree'] = sum(1 for row in rows if row['agree'])
            summary['failures'] = len(rows) - summary['agree']
            return self._finish(command, rows, witnesses, summary)

        if family == 'eschenburg':
            label, ordering, locus = self._eschenburg_task(params, campaign)
            cut = cfg.det_cut
        elif family == 'bazaikin':
            label, ordering, locus = self._bazaikin_task(params, campaign)
            cut = cfg.a55_cut
        else:
            action = torus_s3s3.TorusAction(
                params.get('kind', 'L'), params.get('a', 0), params.get('b', 0), params.get('c', 0)
            )
            quotient = torus_s3s3.TorusQuotient(action, lam=cfg.lam, log_level=self.log_level)
            label, ordering, locus = quotient.curvature_verdict(), action.to_dict(), None
            cut = cfg.det_cut
        task['params'] = ordering
        task['locus'] = locus
        summary['class'] = label
        summary['ordering'] = format_params(family, ordering)

        count = cfg.locus_samples if campaign == 'locus' else cfg.samples
        jobs = self._jobs(task, count)
        if family == 'torus' and campaign == 'locus' and label == self.tor_l['ap']:
            extra = np.random.SeedSequence(cfg.seed).spawn(count + len(torus_s3s3.SPECIAL_POINTS))
            for idx in range(len(torus_s3s3.SPECIAL_POINTS)):
                special = dict(task, special=idx)
                jobs.append((special, count + idx, extra[count + idx]))
        rows, witnesses = self._map(jobs)

        if family == 'torus':
            failures = self._torus_failures(rows, label, campaign, cut)
        else:
            failures = self._space_failures(rows, family, label, campaign, locus, cut)
        summary['samples'] = len(rows)
        summary['zero_planes'] = sum(1 for row in rows if row['zero_plane'])
        summary['invalid_witnesses'] = sum(
            1 for row in rows if row.get('witness_valid') is False
        )
        summary['failures'] = failures
        return self._finish(command, rows, witnesses, summary)

    def _space_failures(self, rows, family, label, campaign, locus, cut):
        positive = self.esc_l['pos'] if family == 'eschenburg' else self.baz_l['pos']
        failures = 0
        for row in rows:
            bad = row['witness_valid'] is False
            if campaign == 'locus':
                bad = bad or not row['zero_plane']
                if 'family_dim' in row:
                    bad = bad or row['family_dim'] != 1 or not row['family_valid']
            elif label == positive:
                bad = bad or row['zero_plane']
            elif locus is not None and row['locus_distance'] > cut:
                bad = bad or row['zero_plane']
            failures += int(bool(bad))
        return failures

    def _torus_failures(self, rows, label, campaign, cut):
        none, circle = self.tor_l['none'], self.tor_l['circle']
        free = label == self.tor_l['free']
        failures = 0
        for row in rows:
            bad = row['witness_valid'] is False
            if campaign == 'locus':
                if free:
                    bad = bad or row['status'] != circle
                else:
                    bad = bad or row['status'] == none
            elif free:
                bad = bad or row['status'] == none
                bad = bad or (row['status'] == circle) != row['on_circle_locus']
            elif row['locus_distance'] > cut:
                bad = bad or row['status'] != none
            failures += int(bool(bad))
        return failures

    def _finish(self, command, rows, witnesses, summary):
        if summary['failures']:
            log.error(
                "Verification of {} failed for {} samples.".format(
                    command, summary['failures']
                )
            )
        else:
            log.debug("Verification of {} passed.".format(command))
        return self._report(command, rows, witnesses, summary)
