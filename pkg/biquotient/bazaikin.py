import itertools

import numpy as np
import pandas as pd
from scipy.linalg import expm
from scipy.optimize import minimize

from biquotient.algebra import (
    BRACKET_TOL,
    LieVector,
    as_generator,
    check_special_unitary,
    elementary_symmetric,
    haar_unitary,
    pair_gcd,
)
from biquotient.cheeger import (
    SU5_U4,
    HorizontalityReport,
    SymmetricPairContext,
    Witness,
    validate_witness,
)
from biquotient.eschenburg import int_tuple
from biquotient.label_map import Labels

import logging

log = logging.getLogger(__name__)

# J of the quaternionic structure on C4 = H2
J4 = np.block(
    [[np.zeros((2, 2)), -np.eye(2)], [np.eye(2), np.zeros((2, 2))]]
).astype(complex)

W1 = LieVector.imaginary_diagonal((1, 1, 1, 1, -4))
W2_BASE = LieVector.imaginary_diagonal((2, -3, 2, -3, 2))

AP_TUPLE = (1, 1, 1, 1, -1)


class Sp2Element(object):
    """Element S + T j of Sp(2), acting on C4 as the matrix

        (S     T    )
        (-T_bar S_bar)

    Parameters:

        S, T: 2 x 2 complex arrays
    """

    def __init__(self, S, T):
        self.S = np.asarray(S, dtype=complex)
        self.T = np.asarray(T, dtype=complex)
        if self.S.shape != (2, 2) or self.T.shape != (2, 2):
            msg = "Sp(2) blocks must be 2 x 2, got {} and {}.".format(
                self.S.shape, self.T.shape
            )
            log.error(msg)
            raise ValueError(msg)
        check_special_unitary(self.matrix4, n=4)

    @classmethod
    def from_matrix4(cls, M):
        M = np.asarray(M)
        return cls(M[:2, :2], M[:2, 2:])

    @property
    def matrix4(self):
        return np.block([[self.S, self.T], [-self.T.conj(), self.S.conj()]])

    def embed(self):
        """diag(A_hat, 1) in SU(5)."""
        out = np.eye(5, dtype=complex)
        out[:4, :4] = self.matrix4
        return out


def sp2_embed(S, T):
    """5 x 5 embedding diag(A_hat, 1) of S + T j."""
    return Sp2Element(S, T).embed()


def _quaternionic_columns(x1, x2):
    """Sp(2) element with columns x1, x2, J conj(x1), J conj(x2)."""
    M = np.column_stack([x1, x2, J4 @ x1.conj(), J4 @ x2.conj()])
    return Sp2Element.from_matrix4(M)


def haar_sp2(seed=None):
    """Haar distributed element of Sp(2).

    A Gaussian vector of C4 is normalized, a second one is
    orthonormalized against it and its quaternionic partner
    J conj(x1); the remaining columns follow from the
    quaternionic structure.
    """
    rng = as_generator(seed)
    x1 = rng.standard_normal(4) + 1j * rng.standard_normal(4)
    x1 = x1 / np.linalg.norm(x1)
    y1 = J4 @ x1.conj()
    x2 = rng.standard_normal(4) + 1j * rng.standard_normal(4)
    x2 = x2 - (x1.conj() @ x2) * x1 - (y1.conj() @ x2) * y1
    x2 = x2 / np.linalg.norm(x2)
    return _quaternionic_columns(x1, x2)


def sp2_from_column(x):
    """Element k of Sp(2) whose second column is the unit
    vector x of C4.
    """
    x = np.asarray(x, dtype=complex)
    x = x / np.linalg.norm(x)
    y = J4 @ x.conj()
    best = None
    for e in np.eye(4, dtype=complex):
        cand = e - (x.conj() @ e) * x - (y.conj() @ e) * y
        if best is None or np.linalg.norm(cand) > np.linalg.norm(best):
            best = cand
    x1 = best / np.linalg.norm(best)
    return _quaternionic_columns(x1, x)


def sp2_basis():
    """Orthonormal basis of sp(2) embedded in su(5), matrices
    (a, b / -b_bar, a_bar) with a in u(2) and b symmetric.
    """
    units = []
    for j, l, val in ((0, 0, 1j), (1, 1, 1j)):
        a = np.zeros((2, 2), dtype=complex)
        a[j, l] = val
        units.append((a, np.zeros((2, 2), dtype=complex)))
    real = np.array([[0, 1], [-1, 0]], dtype=complex)
    imag = np.array([[0, 1j], [1j, 0]], dtype=complex)
    units.append((real, np.zeros((2, 2), dtype=complex)))
    units.append((imag, np.zeros((2, 2), dtype=complex)))
    for b in (
        np.array([[1, 0], [0, 0]]),
        np.array([[1j, 0], [0, 0]]),
        np.array([[0, 0], [0, 1]]),
        np.array([[0, 0], [0, 1j]]),
        np.array([[0, 1], [1, 0]]),
        np.array([[0, 1j], [1j, 0]]),
    ):
        units.append((np.zeros((2, 2), dtype=complex), b.astype(complex)))
    basis = []
    for a, b in units:
        M = np.zeros((5, 5), dtype=complex)
        M[:4, :4] = np.block([[a, b], [-b.conj(), a.conj()]])
        vec = LieVector(M)
        basis.append(vec / vec.norm())
    return basis


class BazParams(object):
    """Weights q1, ..., q5 of the Sp(2) S1 action

        [A, z] * B = diag(z^q1, ..., z^q5) B diag(A_hat, z^-q)

    on SU(5), with q = q1 + ... + q5.

    Parameters:

        q: iterable of 5 integers

        require_odd: boolean
            Rejects even entries. Set to False for exploratory
            scans.

            Default: True
    """

    def __init__(self, q, require_odd=True):
        self.q = int_tuple(q, 5, "q")
        self.require_odd = require_odd
        if require_odd and any(val % 2 == 0 for val in self.q):
            msg = "Bazaikin weights must be odd, got {}.".format(self.q)
            log.error(msg)
            raise ValueError(msg)

    def __eq__(self, other):
        return isinstance(other, BazParams) and self.q == other.q

    def __hash__(self):
        return hash(self.q)

    def __repr__(self):
        return "BazParams(q={})".format(self.q)

    def to_dict(self):
        return {'q': list(self.q)}

    @property
    def q_sum(self):
        return sum(self.q)

    def extended(self):
        """(q1, ..., q5, -q)."""
        return list(self.q) + [-self.q_sum]

    def negated(self):
        return BazParams([-val for val in self.q], require_odd=self.require_odd)

    def is_free(self):
        """gcd(q_a + q_b, q_c + q_d) = 2 for all pairs of disjoint
        index pairs {a, b}, {c, d}.
        """
        q = self.q
        for a, b, c, d in disjoint_pairs():
            if pair_gcd(q[a] + q[b], q[c] + q[d]) != 2:
                return False
        return True

    def boundary_family_normalize(self):
        """n when the weights are equivalent, up to sign and
        order, to (1, 1, 1, n, -n) or to (1, 1, -3, n, -n),
        else None.
        """
        q = self.q
        for i, j in itertools.combinations(range(5), 2):
            if q[i] + q[j] != 0:
                continue
            rest = [q[k] for k in range(5) if k not in (i, j)]
            for sign in (1, -1):
                if sorted(sign * val for val in rest) in ([1, 1, 1], [-3, 1, 1]):
                    return abs(q[i])
        return None


def disjoint_pairs():
    """All (a, b, c, d) with {a, b} and {c, d} disjoint index
    pairs of range(5), each unordered pair of pairs once.
    """
    out = []
    pairs = list(itertools.combinations(range(5), 2))
    for first, second in itertools.combinations(pairs, 2):
        if not set(first) & set(second):
            out.append(first + second)
    return out


class BazClass(object):
    """Curvature class of a Bazaikin space.

    Parameters:

        labels: list of str
            Applicable class names, the first one is primary
        ordering: BazParams
            Weights whose Cheeger metric realizes the class
        boundary_n: int or None
    """

    def __init__(self, labels, ordering, boundary_n=None):
        self.labels = list(labels)
        self.ordering = ordering
        self.boundary_n = boundary_n

    @property
    def label(self):
        return self.labels[0]

    @property
    def name(self):
        return "/".join(self.labels)

    def __repr__(self):
        return "BazClass({})".format(self.name)

    def to_dict(self):
        return {
            'class': self.name,
            'ordering': self.ordering.to_dict(),
            'n': self.boundary_n,
        }


class InvariantRecord(object):
    """Order s of H^6 = H^8 = Z_s and first Pontrjagin class p1.

    s is None and anomaly is True when sigma_3 is not divisible
    by 8.
    """

    def __init__(self, s, p1, anomaly=False):
        self.s = s
        self.p1 = p1
        self.anomaly = anomaly

    def __repr__(self):
        return "InvariantRecord(s={}, p1={}, anomaly={})".format(
            self.s, self.p1, self.anomaly
        )

    def to_dict(self):
        return {'s': self.s, 'p1': self.p1, 'anomaly': self.anomaly}


def classify(params, log_level=logging.DEBUG):
    """Curvature class of B_q. See BazaikinSpace.classify_curvature."""
    labels = Labels(log_level=log_level).set_bazaikin()
    if not params.is_free():
        msg = "Action {} is not free.".format(params)
        log.error(msg)
        raise ValueError(msg)
    q = params.q
    sums = [q[a] + q[b] for a, b in itertools.combinations(range(5), 2)]
    n = params.boundary_family_normalize()
    positives = sum(1 for val in q if val > 0)
    negatives = sum(1 for val in q if val < 0)
    signed = params if positives >= negatives else params.negated()
    ordering = BazParams(
        sorted(signed.q, reverse=True), require_odd=params.require_odd
    )

    if all(val > 0 for val in sums) or all(val < 0 for val in sums):
        return BazClass([labels['pos']], ordering)
    if n == 1:
        # (1, 1, -3, 1, -1) is the same space as (1, 1, 1, 1, -1)
        return BazClass([labels['ap']], BazParams(AP_TUPLE), boundary_n=n)
    if n is not None:
        rep = BazParams((1, 1, 1, n, -n))
        return BazClass([labels['qp'], labels['boundary']], rep, boundary_n=n)
    if positives >= 4 or negatives >= 4:
        return BazClass([labels['qp']], ordering)
    return BazClass([labels['unknown']], ordering)


class BazaikinSpace(object):
    """Horizontality, curvature and topology computations on the
    Bazaikin space B_q = SU(5) // Sp(2) S1, with the Cheeger
    deformed metric of SU(5) along U(4).

    A plane at B is horizontal when it is <,>_1 orthogonal to
    v_B = Ad_{B*} Q - diag(0, 0, 0, 0, iq) and to sp(2). Every
    horizontal zero-curvature plane contains W1 or some
    W2 = Ad_k diag(2i, -3i, 2i, -3i, 2i), k in Sp(2), which
    reduces the search to the W1 residual and the W2 range.

    Parameters:

        q: iterable of 5 odd integers

        lam: float
            Deformation parameter. Default: 0.5

        margin: float
            Zero decision margin. Default: 1e-8

        horiz_tol: float
            Horizontality tolerance of witnesses. Default: 1e-8

        bracket_tol: float
            Relative bracket tolerance. Default: 1e-9

        require_odd: boolean
            Default: True

        log_level: None or python logger logging level,
            Default: logging.DEBUG
    """

    def __init__(
        self,
        q,
        lam=0.5,
        margin=1e-8,
        horiz_tol=1e-8,
        bracket_tol=BRACKET_TOL,
        require_odd=True,
        log_level=logging.DEBUG,
    ):
        self.log_level = log_level
        logging.getLogger().setLevel(log_level)

        self.params = BazParams(q, require_odd=require_odd)
        self.ctx = SymmetricPairContext(SU5_U4, lam=lam)
        self.margin = margin
        self.horiz_tol = horiz_tol
        self.bracket_tol = bracket_tol
        self.labels = Labels(log_level=log_level).set_bazaikin()

    def __repr__(self):
        return "BazaikinSpace(q={}, lam={})".format(self.params.q, self.ctx.lam)

    @property
    def lam(self):
        return self.ctx.lam

    def is_free(self):
        return self.params.is_free()

    def boundary_family_normalize(self):
        return self.params.boundary_family_normalize()

    def classify_curvature(self):
        """Curvature class of the space.

        POSITIVE when all pair sums q_i + q_j share one sign;
        ALMOST_POSITIVE_11111m1 for (1, 1, 1, 1, -1) up to sign
        and order; QUASI_POSITIVE with BOUNDARY_FAMILY for the
        other members of (1, 1, 1, n, -n); QUASI_POSITIVE when
        four entries share a sign; else UNKNOWN_NONNEGATIVE.

        Returns:

            BazClass
        """
        cls = classify(self.params, log_level=self.log_level)
        log.debug("{} classified as {}.".format(self, cls.name))
        return cls

    def metric_space(self):
        ordering = self.classify_curvature().ordering
        return BazaikinSpace(
            ordering.q,
            lam=self.lam,
            margin=self.margin,
            horiz_tol=self.horiz_tol,
            bracket_tol=self.bracket_tol,
            require_odd=self.params.require_odd,
            log_level=self.log_level,
        )

    def invariants(self):
        """s = |sigma_3| / 8 and p1 = -sigma_2 of the extended
        weights (q1, ..., q5, -q), in exact integers.

        Returns:

            InvariantRecord
        """
        ext = self.params.extended()
        sigma2 = elementary_symmetric(ext, 2)
        sigma3 = elementary_symmetric(ext, 3)
        if sigma3 % 8 != 0:
            log.warning(
                "sigma_3 = {} of {} is not divisible by 8.".format(sigma3, ext)
            )
            return InvariantRecord(None, -sigma2, anomaly=True)
        return InvariantRecord(abs(sigma3) // 8, -sigma2)

    def act(self, A, angle=0.0, k=None):
        """Orbit map B -> diag(z^q) B diag(k, z^-q) for z = e^{i angle}."""
        q = np.array(self.params.q)
        left = np.exp(1j * angle * q)
        right = np.ones(5, dtype=complex)
        right[4] = np.exp(-1j * angle * self.params.q_sum)
        out = left[:, None] * np.asarray(A) * right[None, :]
        if k is not None:
            out = out @ k.embed()
        return out

    def vertical_vector(self, A):
        """v_A = Ad_{A*} Q - diag(0, 0, 0, 0, iq)."""
        A = check_special_unitary(A, n=5)
        Q = 1j * np.diag(np.array(self.params.q, dtype=float))
        corner = np.zeros((5, 5), dtype=complex)
        corner[4, 4] = 1j * self.params.q_sum
        return LieVector(A.conj().T @ Q @ A - corner)

    def vertical_space(self, A):
        """v_A followed by the orthonormal basis of sp(2)."""
        return [self.vertical_vector(A)] + sp2_basis()

    def w1_residual(self, A):
        """sum_l |a_l5|^2 q_l - q; W1 is horizontal at A iff it
        vanishes.
        """
        A = check_special_unitary(A, n=5)
        weights = np.abs(A[:, 4]) ** 2
        return float(weights @ np.array(self.params.q, dtype=float) - self.params.q_sum)

    def w2_form(self, A):
        """Hermitian 4 x 4 form H with g(k) = x* H x for the
        second column x of k in Sp(2), where
        g(k) = sum_l (|(Ak)_l2|^2 + |(Ak)_l4|^2) q_l.
        """
        A = check_special_unitary(A, n=5)
        M = A.conj().T @ np.diag(np.array(self.params.q, dtype=float)) @ A
        M4 = M[:4, :4]
        H = M4 + J4.T @ M4.conj() @ J4
        return (H + H.conj().T) / 2.0

    def g_value(self, A, k):
        """g(k) computed from its definition."""
        Ak = np.asarray(A) @ k.embed()
        weights = np.abs(Ak[:, 1]) ** 2 + np.abs(Ak[:, 3]) ** 2
        return float(weights @ np.array(self.params.q, dtype=float))

    def w2_range(self, A, method="spectral", starts=64, seed=None):
        """Range of g over Sp(2); some W2 is horizontal at A iff
        the range contains zero.

        Parameters:

            A: 5 x 5 complex array in SU(5)

            method: str
                'spectral': Sp(2) is transitive on the unit
                sphere of C4, so the extrema of g are the
                extreme eigenvalues of H.
                'multistart': local optimization over
                k0 exp(sum theta_i B_i) from Haar starts.

                Default: 'spectral'

            starts: int
                Number of Haar starts. Default: 64

            seed: None, int or numpy Generator

        Returns:

            (min, max, argmin): floats and an Sp2Element
        """
        if method == "spectral":
            vals, vecs = np.linalg.eigh(self.w2_form(A))
            return float(vals[0]), float(vals[-1]), sp2_from_column(vecs[:, 0])
        if method != "multistart":
            msg = "Unknown W2 range method {}.".format(method)
            log.error(msg)
            raise ValueError(msg)

        A = check_special_unitary(A, n=5)
        rng = as_generator(seed)
        generators = [b.data[:4, :4] for b in sp2_basis()]

        def element(k0, theta):
            step = sum(t * g for t, g in zip(theta, generators))
            return Sp2Element.from_matrix4(k0.matrix4 @ expm(step))

        lo, hi, best = np.inf, -np.inf, None
        for _ in range(starts):
            k0 = haar_sp2(rng)
            res = minimize(
                lambda th: self.g_value(A, element(k0, th)),
                np.zeros(len(generators)),
                method="BFGS",
            )
            if res.fun < lo:
                lo, best = float(res.fun), element(k0, res.x)
            res = minimize(
                lambda th: -self.g_value(A, element(k0, th)),
                np.zeros(len(generators)),
                method="BFGS",
            )
            hi = max(hi, float(-res.fun))
        return lo, hi, best

    def w2_zero(self, A):
        """Element k of Sp(2) with g(k) = 0, or None."""
        vals, vecs = np.linalg.eigh(self.w2_form(A))
        lo, hi = vals[0], vals[-1]
        if lo > self.margin or hi < -self.margin:
            return None
        if hi - lo <= self.margin:
            return sp2_from_column(vecs[:, 0])
        cos2 = min(max(hi / (hi - lo), 0.0), 1.0)
        x = np.sqrt(cos2) * vecs[:, 0] + np.sqrt(1.0 - cos2) * vecs[:, -1]
        return sp2_from_column(x)

    def _witness(self, A, direction, W, extra=None):
        constraints = self.vertical_space(A)
        Y = self.ctx.phi(W)
        X = self.ctx.complete_zero_plane(Y, constraints)
        if X is None:
            log.error("No horizontal completion of {} at the point.".format(direction))
            return None
        witness = Witness(
            'bazaikin',
            self.params.to_dict(),
            direction,
            np.asarray(A),
            X,
            Y,
            self.lam,
            extra,
        )
        witness.valid = validate_witness(
            self.ctx,
            X,
            Y,
            constraints,
            bracket_tol=self.bracket_tol,
            horiz_tol=self.horiz_tol,
        )
        if not witness.valid:
            log.error("Witness for {} failed validation.".format(self))
        return witness

    def has_horizontal_zero_plane(self, A, method="spectral", starts=64, seed=None):
        """Decides whether A carries a horizontal zero-curvature
        plane and, if so, constructs one.

        Returns:

            (found, report): boolean and HorizontalityReport
        """
        A = check_special_unitary(A, n=5)
        res1 = self.w1_residual(A)
        lo, hi, _ = self.w2_range(A, method=method, starts=starts, seed=seed)
        w1_zero = abs(res1) <= self.margin
        found = w1_zero or (lo <= self.margin and hi >= -self.margin)
        witness = None
        if w1_zero:
            witness = self._witness(A, self.labels['w1'], W1)
        elif found:
            k = self.w2_zero(A)
            if k is not None:
                W = LieVector(k.embed() @ W2_BASE.data @ k.embed().conj().T)
                witness = self._witness(
                    A, self.labels['w2'], W, extra={'S': k.S, 'T': k.T}
                )
        if found and witness is None:
            log.error("Range at the point brackets zero but no plane was completed.")
        return found, HorizontalityReport(res1, lo, hi, witness, found=found)

    def diagonal_certificate(self):
        """True when the identity carries no horizontal
        zero-curvature plane.
        """
        found, _ = self.has_horizontal_zero_plane(np.eye(5, dtype=complex))
        return not found

    def zero_locus_point(self, seed=None):
        """Point of SU(5) with a55 = 0, for q = (1, 1, 1, 1, -1)."""
        if self.params.q != AP_TUPLE:
            msg = "The a55 = 0 locus needs the weights {}, got {}.".format(
                AP_TUPLE, self.params.q
            )
            log.error(msg)
            raise ValueError(msg)
        rng = as_generator(seed)
        x = rng.standard_normal(4) + 1j * rng.standard_normal(4)
        col = np.append(x / np.linalg.norm(x), 0.0)
        G = rng.standard_normal((5, 5)) + 1j * rng.standard_normal((5, 5))
        G[:, 0] = col
        Q, _ = np.linalg.qr(G)
        A = Q[:, [1, 2, 3, 4, 0]]
        A[:, 0] = A[:, 0] / np.linalg.det(A)
        return check_special_unitary(A, n=5)


def family_table(n_max, log_level=logging.DEBUG):
    """Free members B_{1,1,1,n,-n}, n = 1, 3, ..., n_max, with
    class and invariants. The p1 values must be pairwise
    distinct, which separates the spaces up to homeomorphism.

    Returns:

        table: pandas DataFrame with columns n, free, class, s, p1
    """
    n_max = int(n_max)
    if n_max < 1 or n_max % 2 == 0:
        msg = "n_max must be a positive odd integer, got {}.".format(n_max)
        log.error(msg)
        raise ValueError(msg)
    rows = []
    for n in range(1, n_max + 1, 2):
        space = BazaikinSpace((1, 1, 1, n, -n), log_level=log_level)
        record = space.invariants()
        rows.append(
            {
                'n': n,
                'free': space.is_free(),
                'class': space.classify_curvature().name,
                's': record.s,
                'p1': record.p1,
            }
        )
    table = pd.DataFrame(rows, columns=['n', 'free', 'class', 's', 'p1'])
    if table['p1'].nunique() != len(table):
        msg = "First Pontrjagin classes are not pairwise distinct."
        log.error(msg)
        raise ValueError(msg)
    return table


def scan(bound, log_level=logging.DEBUG):
    """Free odd weight tuples, sorted descending, with entries in
    [-bound, bound].

    Returns:

        table: pandas DataFrame with columns q, class, n, s, p1
    """
    odd = [val for val in range(-int(bound), int(bound) + 1) if val % 2 != 0]
    rows = []
    for tup in itertools.combinations_with_replacement(odd, 5):
        params = BazParams(tup)
        if not params.is_free():
            continue
        space = BazaikinSpace(tup, log_level=log_level)
        cls = space.classify_curvature()
        record = space.invariants()
        rows.append(
            {
                'q': tuple(sorted(tup, reverse=True)),
                'class': cls.name,
                'n': cls.boundary_n,
                's': record.s,
                'p1': record.p1,
            }
        )
    return pd.DataFrame(rows, columns=['q', 'class', 'n', 's', 'p1'])


def random_points(count, seed=None):
    """count Haar points of SU(5) from one random stream."""
    rng = as_generator(seed)
    return [haar_unitary(5, rng) for _ in range(count)]
