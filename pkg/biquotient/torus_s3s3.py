import numpy as np
import pandas as pd

from biquotient.algebra import (
    BRACKET_TOL,
    LieVector,
    QUAT_I,
    QUAT_J,
    QUAT_ONE,
    Quaternion,
    as_generator,
    quat_ad,
)
from biquotient.cheeger import (
    S3S3_DIAG,
    SymmetricPairContext,
    Witness,
    validate_witness,
)
from biquotient.label_map import Labels

import logging

log = logging.getLogger(__name__)

# rank threshold of the horizontality systems
RANK_TOL = 1e-9

SPECIAL_POINTS = [
    ('(1,1)', (QUAT_ONE, QUAT_ONE)),
    ('(1,j)', (QUAT_ONE, QUAT_J)),
    ('(j,1)', (QUAT_J, QUAT_ONE)),
    ('(j,j)', (QUAT_J, QUAT_J)),
]

E_I = np.array([1.0, 0.0, 0.0])


class TorusAction(object):
    """Two-sided T2 action on S3 x S3.

    * AB (a, b): (q1, q2) -> (z q1 u_bar, w q2 u_bar), u = z^a w^b
    * C (c): (q1, q2) -> (z q1 w_bar, z^c q2 w_bar)
    * L: the left action, AB with a = b = 0

    Parameters:

        kind: str
            One of 'L', 'AB', 'C'
        a, b: int
            Exponents of the AB family
        c: int
            Exponent of the C family
    """

    def __init__(self, kind, a=0, b=0, c=0):
        if kind not in ('L', 'AB', 'C'):
            msg = "Unknown torus action kind {}.".format(kind)
            log.error(msg)
            raise ValueError(msg)
        if kind == 'L' and (a or b or c):
            msg = "The left action carries no exponents."
            log.error(msg)
            raise ValueError(msg)
        self.kind = kind
        self.a = int(a) if kind == 'AB' else 0
        self.b = int(b) if kind == 'AB' else 0
        self.c = int(c) if kind == 'C' else 0

    @classmethod
    def left(cls):
        return cls('L')

    @classmethod
    def ab(cls, a, b):
        return cls('AB', a=a, b=b)

    @classmethod
    def circle(cls, c):
        return cls('C', c=c)

    def __eq__(self, other):
        return isinstance(other, TorusAction) and self.key() == other.key()

    def __hash__(self):
        return hash(self.key())

    def key(self):
        return (self.kind, self.a, self.b, self.c)

    def __repr__(self):
        if self.kind == 'AB':
            return "U_{{{},{}}}".format(self.a, self.b)
        if self.kind == 'C':
            return "U_{}".format(self.c)
        return "U_L"

    def to_dict(self):
        return {'kind': self.kind, 'a': self.a, 'b': self.b, 'c': self.c}

    def is_free_kind(self):
        """L, AB(0, 0) and C(0)."""
        return (
            self.kind == 'L'
            or (self.kind == 'AB' and self.a == 0 and self.b == 0)
            or (self.kind == 'C' and self.c == 0)
        )


class IsotropyRecord(object):
    """Isotropy order at a special point; 0 encodes a circle,
    1 the trivial group.
    """

    def __init__(self, point, order, relation=None, exponent=None):
        if order < 0:
            msg = "Isotropy order must be nonnegative, got {}.".format(order)
            log.error(msg)
            raise ValueError(msg)
        self.point = point
        self.order = order
        self.relation = relation
        self.exponent = exponent

    def __repr__(self):
        return "IsotropyRecord({}, Z_{})".format(self.point, self.order)


def ad_bar_i(q):
    """Ad_{q_bar} i as a 3-vector."""
    return quat_ad(q.conjugate(), QUAT_I).imag


def dependence_det(q1, q2):
    """Determinant of the j, k components of Ad_{q1_bar} i and
    Ad_{q2_bar} i. It vanishes iff i, Ad_{q1_bar} i and
    Ad_{q2_bar} i are linearly dependent.
    """
    for q in (q1, q2):
        if not q.is_unit():
            msg = "dependence_det needs unit quaternions, got {}.".format(q)
            log.error(msg)
            raise ValueError(msg)
    u1 = ad_bar_i(q1)
    u2 = ad_bar_i(q2)
    return float(u1[1] * u2[2] - u1[2] * u2[1])


def random_pair(seed=None):
    rng = as_generator(seed)
    return Quaternion.random_unit(rng), Quaternion.random_unit(rng)


def hypersurface_point(q1=None, seed=None):
    """Pair (q1, q2) with dependence_det(q1, q2) = 0 and
    Ad_{q2_bar} i a random unit vector in Span{i, Ad_{q1_bar} i}.
    """
    rng = as_generator(seed)
    if q1 is None:
        q1 = Quaternion.random_unit(rng)
    alpha, beta = rng.standard_normal(2)
    target = alpha * E_I + beta * ad_bar_i(q1)
    if np.linalg.norm(target) < 1e-8:
        target = E_I
    rot = Quaternion.rotation_between(E_I, target)
    q2_bar = rot * Quaternion.exp_i(rng.uniform(0.0, 2.0 * np.pi))
    return q1, q2_bar.conjugate().unit()


def circle_locus_point(action, seed=None):
    """Point on the circle loci of the free actions: for AB(0, 0)
    and L, Ad_{q1_bar} i = +-Ad_{q2_bar} i; for C(0), q1 in C or Cj.
    """
    if not action.is_free_kind():
        msg = "Circle loci exist for the free actions only, got {}.".format(action)
        log.error(msg)
        raise ValueError(msg)
    rng = as_generator(seed)
    phase = Quaternion.exp_i(rng.uniform(0.0, 2.0 * np.pi))
    flip = rng.integers(2) == 1
    if action.kind == 'C':
        q1 = phase * QUAT_J if flip else phase
        return q1, Quaternion.random_unit(rng)
    q1 = Quaternion.random_unit(rng)
    q2 = (QUAT_J * phase * q1) if flip else (phase * q1)
    return q1, q2.unit()


class TorusQuotient(object):
    """Quotient of S3 x S3, with the Cheeger deformation of the
    product metric along the diagonal S3, by a T2 action.

    The planes Span{phi_inv(v, 0), phi_inv(0, v)}, v in Im H, are
    the zero-curvature planes of the metric; such a plane is
    horizontal at (q1, q2) when (v, 0) and (0, v) are orthogonal
    to the vertical space of the action.

    Parameters:

        action: TorusAction

        lam: float
            Deformation parameter. Default: 0.5

        log_level: None or python logger logging level,
            Default: logging.DEBUG
    """

    def __init__(self, action, lam=0.5, log_level=logging.DEBUG):
        self.log_level = log_level
        logging.getLogger().setLevel(log_level)

        self.action = action
        self.ctx = SymmetricPairContext(S3S3_DIAG, lam=lam)
        self.labels = Labels(log_level=log_level).set_torus()

    def __repr__(self):
        return "TorusQuotient({}, lam={})".format(self.action, self.ctx.lam)

    def ineffective_kernel(self):
        """DeltaZ2 = {+-(1, 1)} acts trivially iff a + b (AB) or
        c (C) is odd.
        """
        act = self.action
        if (act.kind == 'AB' and (act.a + act.b) % 2) or (
            act.kind == 'C' and act.c % 2
        ):
            return self.labels['dz2']
        return self.labels['trivial']

    def _require_ab_or_c(self):
        if self.action.kind == 'L':
            msg = "The left action has no nontrivial isotropy."
            log.error(msg)
            raise ValueError(msg)

    def fixed_exponents(self, point):
        """Circle relation and exponent e of a special point. The
        isotropy group is {(z, w): relation, z^e = 1}.

        Parameters:

            point: str, one of '(1,1)', '(1,j)', '(j,1)', '(j,j)'

        Returns:

            (relation, exponent)
        """
        self._require_ab_or_c()
        names = self.labels['points']
        if point not in names:
            msg = "Unknown special point {}.".format(point)
            log.error(msg)
            raise ValueError(msg)
        idx = names.index(point)
        same, bar = self.labels['z=w'], self.labels['z=w_bar']
        act = self.action
        if act.kind == 'AB':
            a, b = act.a, act.b
            table = [
                (same, 1 - a - b),
                (bar, 1 - a + b),
                (bar, 1 + a - b),
                (same, 1 + a + b),
            ]
        else:
            c = act.c
            table = [(same, c - 1), (same, c + 1), (bar, c + 1), (bar, c - 1)]
        return table[idx]

    def isotropy_table(self):
        """Isotropy orders at the four special points.

        Returns:

            records: list of IsotropyRecord
        """
        self._require_ab_or_c()
        halve = self.ineffective_kernel() == self.labels['dz2']
        records = []
        for point in self.labels['points']:
            relation, exponent = self.fixed_exponents(point)
            order = abs(exponent) // 2 if halve else abs(exponent)
            records.append(IsotropyRecord(point, order, relation, exponent))
        return records

    def orders(self):
        return tuple(rec.order for rec in self.isotropy_table())

    def singular_points(self):
        return [rec for rec in self.isotropy_table() if rec.order != 1]

    def is_free(self):
        """Free exactly for L, AB(0, 0) and C(0)."""
        return self.action.is_free_kind()

    def act(self, q1, q2, z_angle, w_angle):
        """Orbit map of the action at (z, w) = (e^{i z_angle}, e^{i w_angle})."""
        act = self.action
        z = Quaternion.exp_i(z_angle)
        w = Quaternion.exp_i(w_angle)
        if act.kind == 'C':
            zc = Quaternion.exp_i(act.c * z_angle)
            return z * q1 * w.conjugate(), zc * q2 * w.conjugate()
        u = Quaternion.exp_i(act.a * z_angle + act.b * w_angle)
        return z * q1 * u.conjugate(), w * q2 * u.conjugate()

    def vertical_space(self, q1, q2):
        """Vertical space at (q1, q2) after left translation:

        AB: 1/2 (theta Ad_{q1_bar} i - (a theta + b phi) i,
                 phi Ad_{q2_bar} i - (a theta + b phi) i)
        C:  1/2 (theta Ad_{q1_bar} i - phi i,
                 c theta Ad_{q2_bar} i - phi i)

        Returns:

            [V_theta, V_phi]: list of LieVector
        """
        act = self.action
        u1 = ad_bar_i(q1)
        u2 = ad_bar_i(q2)
        if act.kind == 'C':
            v_theta = LieVector.pair(u1, act.c * u2)
            v_phi = LieVector.pair(-E_I, -E_I)
        else:
            v_theta = LieVector.pair(u1 - act.a * E_I, -act.a * E_I)
            v_phi = LieVector.pair(-act.b * E_I, u2 - act.b * E_I)
        return [v_theta * 0.5, v_phi * 0.5]

    def constraint_matrix(self, q1, q2):
        """Rows that v must be orthogonal to, read off the
        vertical space: first components for (v, 0), second
        components for (0, v).
        """
        vert = self.vertical_space(q1, q2)
        return np.array([vec.data[0] for vec in vert] + [vec.data[1] for vec in vert])

    def horizontality_rows(self, q1, q2):
        """Rows of the horizontality conditions in the form
        v perp Ad_{q1_bar} i - a i, a i, Ad_{q2_bar} i - b i, b i
        (AB, L) or v perp Ad_{q1_bar} i, c Ad_{q2_bar} i, i (C).
        """
        act = self.action
        u1 = ad_bar_i(q1)
        u2 = ad_bar_i(q2)
        if act.kind == 'C':
            return np.array([u1, act.c * u2, E_I])
        return np.array(
            [u1 - act.a * E_I, act.a * E_I, u2 - act.b * E_I, act.b * E_I]
        )

    @staticmethod
    def null_basis(rows):
        """Orthonormal basis (as columns) of the vectors v
        orthogonal to all rows.
        """
        _, sing, vh = np.linalg.svd(rows)
        rank = int(np.sum(sing > RANK_TOL))
        return vh[rank:].T

    def zero_planes(self, q1, q2):
        """Basis of the v giving horizontal zero-curvature planes
        Span{phi_inv(v, 0), phi_inv(0, v)} at (q1, q2).
        """
        return self.null_basis(self.constraint_matrix(q1, q2))

    def zero_plane_status(self, q1, q2):
        """NONE, UNIQUE or CIRCLE for a 0, 1 or 2 dimensional
        solution space of v.
        """
        dim = self.zero_planes(q1, q2).shape[1]
        return [self.labels['none'], self.labels['unique'], self.labels['circle']][
            min(dim, 2)
        ]

    def witnesses(self, q1, q2, bracket_tol=BRACKET_TOL, horiz_tol=1e-9):
        """Validated zero planes for the basis solutions v."""
        vertical = self.vertical_space(q1, q2)
        point = np.vstack([q1.as_array(), q2.as_array()])
        out = []
        for v in self.zero_planes(q1, q2).T:
            X = LieVector.pair(v, np.zeros(3))
            Y = LieVector.pair(np.zeros(3), v)
            witness = Witness(
                'torus',
                self.action.to_dict(),
                'v',
                point,
                X,
                Y,
                self.ctx.lam,
                {'v': v.tolist()},
            )
            witness.valid = validate_witness(
                self.ctx,
                X,
                Y,
                vertical,
                bracket_tol=bracket_tol,
                horiz_tol=horiz_tol,
            )
            out.append(witness)
        return out

    def on_circle_locus(self, q1, q2, tol=1e-9):
        """Circle loci of the free actions."""
        u1 = ad_bar_i(q1)
        if self.action.kind == 'C':
            return abs(abs(u1[0]) - 1.0) <= tol
        u2 = ad_bar_i(q2)
        return min(np.linalg.norm(u1 - u2), np.linalg.norm(u1 + u2)) <= tol

    def curvature_verdict(self):
        """ALMOST_POSITIVE iff the action is not free."""
        if self.is_free():
            return self.labels['free']
        return self.labels['ap']

    def certify(self, samples=1000, constructed=50, det_cut=0.05, seed=None):
        """Empirical check of the curvature verdict.

        Non-free actions: random points with |det| > det_cut carry
        no horizontal zero plane, constructed points on the
        hypersurface det = 0 and the special points carry one.
        Free actions: every random point carries one, CIRCLE
        exactly on the circle loci, and constructed circle locus
        points report CIRCLE.

        Returns:

            summary: dict of counts and the boolean 'certified'
        """
        rng = as_generator(seed)
        none = self.labels['none']
        circle = self.labels['circle']
        summary = {
            'action': repr(self.action),
            'verdict': self.curvature_verdict(),
            'samples': samples,
            'checked': 0,
            'violations': 0,
            'constructed': constructed,
            'constructed_ok': 0,
            'invalid_witnesses': 0,
        }
        free = self.is_free()
        for _ in range(samples):
            q1, q2 = random_pair(rng)
            status = self.zero_plane_status(q1, q2)
            if free:
                summary['checked'] += 1
                on_locus = self.on_circle_locus(q1, q2)
                if status == none or (status == circle) != on_locus:
                    summary['violations'] += 1
            elif abs(dependence_det(q1, q2)) > det_cut:
                summary['checked'] += 1
                if status != none:
                    summary['violations'] += 1
        for _ in range(constructed):
            if free:
                q1, q2 = circle_locus_point(self.action, rng)
                ok = self.zero_plane_status(q1, q2) == circle
            else:
                q1, q2 = hypersurface_point(seed=rng)
                ok = self.zero_plane_status(q1, q2) != none
            if ok:
                summary['constructed_ok'] += 1
                invalid = [w for w in self.witnesses(q1, q2) if not w.valid]
                summary['invalid_witnesses'] += len(invalid)
        if not free:
            for _, (q1, q2) in SPECIAL_POINTS:
                if self.zero_plane_status(q1, q2) == none:
                    summary['violations'] += 1
        summary['certified'] = (
            summary['violations'] == 0
            and summary['invalid_witnesses'] == 0
            and summary['constructed_ok'] == constructed
        )
        if not summary['certified']:
            log.error("Certification of {} failed: {}.".format(self.action, summary))
        return summary


def isotropy_scan(ab_max, c_max, log_level=logging.DEBUG):
    """Isotropy patterns of AB(a, b), |a|, |b| <= ab_max, and
    C(c), |c| <= c_max.

    The column single_z2 marks actions with exactly one singular
    special point, with isotropy Z2. Matches are reported, the
    scan does not decide the existence question beyond its
    bounds.

    Returns:

        table: pandas DataFrame
    """
    actions = [
        TorusAction.ab(a, b)
        for a in range(-ab_max, ab_max + 1)
        for b in range(-ab_max, ab_max + 1)
    ] + [TorusAction.circle(c) for c in range(-c_max, c_max + 1)]
    rows = []
    for action in actions:
        quotient = TorusQuotient(action, log_level=log_level)
        orders = quotient.orders()
        singular = [val for val in orders if val != 1]
        rows.append(
            {
                'kind': action.kind,
                'a': action.a,
                'b': action.b,
                'c': action.c,
                'kernel': quotient.ineffective_kernel(),
                'isotropy': orders,
                'free': quotient.is_free(),
                'almost_free': 0 not in orders,
                'n_singular': len(singular),
                'single_z2': singular == [2],
            }
        )
    table = pd.DataFrame(rows)
    log.info(
        "{} of {} scanned actions have a single singular point with Z2 "
        "isotropy.".format(int(table['single_z2'].sum()), len(table))
    )
    return table
