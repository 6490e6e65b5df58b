import itertools

import numpy as np
import pandas as pd
from scipy.linalg import expm, schur
from scipy.optimize import brentq, minimize
from scipy.stats import unitary_group

from biquotient.algebra import (
    BRACKET_TOL,
    LieVector,
    as_generator,
    check_special_unitary,
    haar_unitary,
    inner0,
    pair_gcd,
)
from biquotient.cheeger import (
    SU3_U2,
    HorizontalityReport,
    SymmetricPairContext,
    Witness,
    validate_witness,
)
from biquotient.label_map import Labels

import logging

log = logging.getLogger(__name__)

Y1 = LieVector.imaginary_diagonal((-2, 1, 1))
Y2 = LieVector.imaginary_diagonal((1, -2, 1))
Y3 = LieVector.imaginary_diagonal((1, 1, -2))

# the almost positive and the boundary action of the two
# free spaces with a weight on the boundary of [min p, max p]
E0_PARAMS = ((1, 1, 0), (0, 0, 2))
W11_PARAMS = ((0, 0, 0), (-1, 0, 1))

LOCUS_TOL = 1e-10


def int_tuple(values, arity, name):
    """Converts values into a tuple of python integers of
    the given arity.
    """
    try:
        out = tuple(int(val) for val in values)
        exact = all(float(a) == float(b) for a, b in zip(out, values))
    except (TypeError, ValueError):
        out, exact = (), False
    if len(out) != arity or not exact:
        msg = "{} must be {} integers, got {}.".format(name, arity, values)
        log.error(msg)
        raise ValueError(msg)
    return out


class EschParams(object):
    """Weights of the circle action

        z * A = diag(z^p1, z^p2, z^p3) A diag(z^-q1, z^-q2, z^-q3)

    on SU(3).

    Parameters:

        p, q: iterables of 3 integers with sum(p) = sum(q)
    """

    def __init__(self, p, q):
        self.p = int_tuple(p, 3, "p")
        self.q = int_tuple(q, 3, "q")
        if sum(self.p) != sum(self.q):
            msg = "Eschenburg weights need sum(p) = sum(q), got {} and {}.".format(
                self.p, self.q
            )
            log.error(msg)
            raise ValueError(msg)

    def __eq__(self, other):
        return isinstance(other, EschParams) and self.key() == other.key()

    def __hash__(self):
        return hash(self.key())

    def __repr__(self):
        return "EschParams(p={}, q={})".format(self.p, self.q)

    def key(self):
        return (self.p, self.q)

    def to_dict(self):
        return {'p': list(self.p), 'q': list(self.q)}

    @property
    def P(self):
        return 1j * np.diag(np.array(self.p, dtype=float))

    @property
    def Q(self):
        return 1j * np.diag(np.array(self.q, dtype=float))

    def sorted(self):
        return EschParams(sorted(self.p), sorted(self.q))

    def swapped(self):
        return EschParams(self.q, self.p)

    def negated(self):
        """(p, q) -> (-reverse p, -reverse q)."""
        return EschParams(
            [-val for val in reversed(self.p)], [-val for val in reversed(self.q)]
        )

    def shift_key(self):
        """Sorted weights with min p moved to zero. A common shift
        of p and q multiplies A by a central element on both
        sides and defines the identical action.
        """
        p = sorted(self.p)
        q = sorted(self.q)
        shift = p[0]
        return (
            tuple(val - shift for val in p),
            tuple(val - shift for val in q),
        )

    def symmetry_orbit(self):
        """All images under permutations of p, permutations of q,
        the swap and the negation-reversal.

        Returns:

            images: list of EschParams, in a fixed order
        """
        images = []
        seen = set()
        for swap in (False, True):
            for neg in (False, True):
                base = self.swapped() if swap else self
                base = base.negated() if neg else base
                for pp in itertools.permutations(base.p):
                    for qq in itertools.permutations(base.q):
                        if (pp, qq) not in seen:
                            seen.add((pp, qq))
                            images.append(EschParams(pp, qq))
        return images

    def equivalent_to(self, other):
        """Parameter equivalence up to the symmetry group and a
        common shift.
        """
        target = other.shift_key()
        return any(img.shift_key() == target for img in self.symmetry_orbit())

    def is_free(self):
        """gcd(p1 - q_s1, p2 - q_s2) = 1 for all permutations s."""
        p, q = self.p, self.q
        for sigma in itertools.permutations(range(3)):
            if pair_gcd(p[0] - q[sigma[0]], p[1] - q[sigma[1]]) != 1:
                return False
        return True

    def is_positive_ordering(self):
        """Every q_i outside [min p, max p]."""
        lo, hi = min(self.p), max(self.p)
        return all(val < lo or val > hi for val in self.q)

    def is_dagger(self):
        """Condition (dagger), q1 < q2 = p1 < p2 <= p3 < q3, on
        the weights as ordered.
        """
        p, q = self.p, self.q
        return q[0] < q[1] == p[0] < p[1] <= p[2] < q[2]

    def is_dagger_mirror(self):
        p, q = self.p, self.q
        return q[0] < p[0] <= p[1] < p[2] == q[1] < q[2]

    def quasi_product(self):
        return (self.p[0] - self.q[0]) * (self.p[1] - self.q[1])


class EschClass(object):
    """Curvature class of an Eschenburg space.

    Parameters:

        label: str
            Curvature class name
        note: str
            Reordering used for the decision
        ordering: EschParams
            Weights whose Cheeger metric realizes the class
    """

    def __init__(self, label, note, ordering):
        self.label = label
        self.note = note
        self.ordering = ordering

    def __repr__(self):
        return "EschClass({}, {})".format(self.label, self.note)

    def to_dict(self):
        return {
            'class': self.label,
            'note': self.note,
            'ordering': self.ordering.to_dict(),
        }


def dagger_images(params):
    """Symmetric images satisfying (dagger) or its mirror."""
    return [
        img
        for img in params.symmetry_orbit()
        if img.is_dagger() or img.is_dagger_mirror()
    ]


def is_classifiable(params):
    """Free actions and (dagger) orbifolds."""
    return params.is_free() or bool(dagger_images(params))


def classify(params, log_level=logging.DEBUG):
    """Curvature class of E_{p,q}. See EschenburgSpace.classify_curvature."""
    labels = Labels(log_level=log_level).set_eschenburg()
    params = params if isinstance(params, EschParams) else EschParams(*params)
    orbit = params.symmetry_orbit()
    free = params.is_free()
    dagger = dagger_images(params)
    if not free and not dagger:
        msg = "Action {} is neither free nor of type (dagger).".format(params)
        log.error(msg)
        raise ValueError(msg)

    prefix = "sorted p={} q={}".format(tuple(sorted(params.p)), tuple(sorted(params.q)))

    for img in orbit:
        if img.is_positive_ordering():
            srt = img.sorted()
            q = srt.q if srt.q[1] < srt.p[0] else (srt.q[1], srt.q[2], srt.q[0])
            ordering = EschParams(srt.p, q)
            note = "{}; q outside [min p, max p] for {}".format(prefix, ordering)
            return EschClass(labels['pos'], note, ordering)

    for key, target in (('e0', E0_PARAMS), ('w11', W11_PARAMS)):
        target = EschParams(*target)
        if params.equivalent_to(target):
            note = "{}; equivalent to {}".format(prefix, target)
            return EschClass(labels[key], note, target)

    # the orbit is closed under negation-reversal, which maps a
    # mirrored image to one satisfying (dagger)
    for img in dagger:
        if img.is_dagger():
            note = "{}; condition (dagger) for {}".format(prefix, img)
            return EschClass(labels['dagger'], note, img)

    for pp in itertools.permutations(params.p):
        for qq in itertools.permutations(params.q):
            img = EschParams(pp, qq)
            if img.quasi_product() > 0:
                note = "{}; (p1 - q1)(p2 - q2) > 0 for {}".format(prefix, img)
                return EschClass(labels['qp'], note, img)

    return EschClass(labels['unknown'], prefix, params)


def cohomogeneity_one(n):
    """Weights of the cohomogeneity one space E_n, p = (1, 1, n),
    q = (0, 0, n + 2), normalized to n >= 0 by E_n = E_{-(n+1)}.
    """
    n = int(n)
    if n < 0:
        n = -(n + 1)
    return EschParams((1, 1, n), (0, 0, n + 2))


def permutation_point(col, row):
    """Signed permutation matrix in SU(3) with a unit entry at
    (row, col).
    """
    others = [r for r in range(3) if r != row]
    rows = []
    for c in range(3):
        rows.append(row if c == col else others.pop(0))
    A = np.zeros((3, 3), dtype=complex)
    for c, r in enumerate(rows):
        A[r, c] = 1.0
    if np.linalg.det(A).real < 0:
        A[:, (col + 1) % 3] *= -1.0
    return A


def unitary_log(U):
    """Anti-Hermitian logarithm of a unitary matrix."""
    T, Z = schur(U, output="complex")
    angles = np.angle(np.diag(T))
    return Z @ np.diag(1j * angles) @ Z.conj().T


class EschenburgSpace(object):
    """Horizontality and zero-curvature computations on the
    Eschenburg space E_{p,q} = SU(3) // S1_{p,q}, with the
    Cheeger deformed metric of SU(3) along U(2).

    A plane at A in SU(3) is horizontal when it is <,>_1
    orthogonal to the orbit direction v_A = Ad_{A*} P - Q.
    Every horizontal zero-curvature plane contains Y3 or
    Ad_k Y1 for some k in U(2), which reduces the search for
    such planes to one scalar equation (the Y3 residual) and
    the range of one real function on CP1 (the Y1 range).

    Parameters:

        p, q: iterables of 3 integers with sum(p) = sum(q)

        lam: float
            Deformation parameter of the metric.

            Default: 0.5

        margin: float
            Tolerance of the decision that a residual vanishes
            or that a range contains zero.

            Default: 1e-8

        horiz_tol: float
            Horizontality tolerance in witness validation.

            Default: 1e-8

        bracket_tol: float
            Relative bracket tolerance.

            Default: 1e-9

        log_level: None or python logger logging level,
            Default: logging.DEBUG
    """

    def __init__(
        self,
        p,
        q,
        lam=0.5,
        margin=1e-8,
        horiz_tol=1e-8,
        bracket_tol=BRACKET_TOL,
        log_level=logging.DEBUG,
    ):
        self.log_level = log_level
        logging.getLogger().setLevel(log_level)

        self.params = EschParams(p, q)
        self.ctx = SymmetricPairContext(SU3_U2, lam=lam)
        self.margin = margin
        self.horiz_tol = horiz_tol
        self.bracket_tol = bracket_tol
        self.labels = Labels(log_level=log_level).set_eschenburg()

    def __repr__(self):
        return "EschenburgSpace(p={}, q={}, lam={})".format(
            self.params.p, self.params.q, self.ctx.lam
        )

    @property
    def lam(self):
        return self.ctx.lam

    def is_free(self):
        return self.params.is_free()

    def classify_curvature(self):
        """Curvature class of the space.

        POSITIVE when some symmetric image of the weights has
        every q_i outside [min p, max p]; else the two boundary
        classes when equivalent to E0 or to W11; else
        ORBIFOLD_DAGGER when some image satisfies (dagger) or its
        mirror after sorting; else QUASI_POSITIVE when a
        reordering has (p1 - q1)(p2 - q2) > 0; else
        UNKNOWN_NONNEGATIVE.

        Returns:

            EschClass
        """
        cls = classify(self.params, log_level=self.log_level)
        log.debug("{} classified as {} ({}).".format(self, cls.label, cls.note))
        return cls

    def metric_space(self):
        """Space with the weights ordered as the classification
        prescribes.
        """
        ordering = self.classify_curvature().ordering
        return EschenburgSpace(
            ordering.p,
            ordering.q,
            lam=self.lam,
            margin=self.margin,
            horiz_tol=self.horiz_tol,
            bracket_tol=self.bracket_tol,
            log_level=self.log_level,
        )

    def act(self, A, angle):
        """Orbit map A -> z * A for z = e^{i angle}."""
        left = np.exp(1j * angle * np.array(self.params.p))
        right = np.exp(-1j * angle * np.array(self.params.q))
        return left[:, None] * np.asarray(A) * right[None, :]

    def vertical_vector(self, A):
        """v_A = Ad_{A*} P - Q, the orbit direction at A after
        left translation to the identity.
        """
        A = check_special_unitary(A, n=3)
        return LieVector(A.conj().T @ self.params.P @ A - self.params.Q)

    def y3_residual(self, A):
        """sum_j |a_j3|^2 p_j - q3; Y3 is horizontal at A iff it
        vanishes.
        """
        A = check_special_unitary(A, n=3)
        weights = np.abs(A[:, 2]) ** 2
        return float(weights @ np.array(self.params.p, dtype=float) - self.params.q[2])

    def y1_form(self, A):
        """Hermitian 2 x 2 form H with f(u) = u* H u, where
        f(u) = sum_j |(A u)_j|^2 p_j - |u1|^2 q1 - |u2|^2 q2 for
        u = (u1, u2, 0).
        """
        A = check_special_unitary(A, n=3)
        B = A[:, :2]
        H = B.conj().T @ np.diag(np.array(self.params.p, dtype=float)) @ B
        H = H - np.diag(np.array(self.params.q[:2], dtype=float))
        return (H + H.conj().T) / 2.0

    def y1_range(self, A, method="spectral", resolution=256):
        """Range of the Y1 horizontality function f over the unit
        sphere of C2; Ad_k Y1 is horizontal at A for some k in
        U(2) iff the range contains zero.

        Parameters:

            A: 3 x 3 complex array in SU(3)

            method: str
                'spectral': the extrema of u* H u are the
                eigenvalues of H.
                'grid': a resolution x resolution (theta, phi)
                grid, u = (cos theta, e^{i phi} sin theta), with
                local refinement at the best cells.

                Default: 'spectral'

            resolution: int
                Grid resolution. Default: 256

        Returns:

            (min, max, argmin): floats and a unit vector in C2
        """
        H = self.y1_form(A)
        if method == "spectral":
            vals, vecs = np.linalg.eigh(H)
            return float(vals[0]), float(vals[1]), vecs[:, 0]
        if method != "grid":
            msg = "Unknown Y1 range method {}.".format(method)
            log.error(msg)
            raise ValueError(msg)

        def f(angles):
            theta, phi = angles
            c, s = np.cos(theta), np.sin(theta)
            return float(
                H[0, 0].real * c * c
                + H[1, 1].real * s * s
                + 2.0 * c * s * np.real(H[0, 1] * np.exp(1j * phi))
            )

        theta = np.linspace(0.0, np.pi / 2.0, resolution)
        phi = np.linspace(0.0, 2.0 * np.pi, resolution, endpoint=False)
        tt, pp = np.meshgrid(theta, phi, indexing="ij")
        c, s = np.cos(tt), np.sin(tt)
        values = (
            H[0, 0].real * c * c
            + H[1, 1].real * s * s
            + 2.0 * c * s * np.real(H[0, 1] * np.exp(1j * pp))
        )
        i_min = np.unravel_index(np.argmin(values), values.shape)
        i_max = np.unravel_index(np.argmax(values), values.shape)
        start_min = np.array([theta[i_min[0]], phi[i_min[1]]])
        start_max = np.array([theta[i_max[0]], phi[i_max[1]]])
        res_min = minimize(f, start_min, method="BFGS")
        res_max = minimize(lambda x: -f(x), start_max, method="BFGS")
        lo_angles = res_min.x if res_min.fun < values[i_min] else start_min
        lo = min(float(res_min.fun), float(values[i_min]))
        hi = max(float(-res_max.fun), float(values[i_max]))
        u = np.array(
            [np.cos(lo_angles[0]), np.exp(1j * lo_angles[1]) * np.sin(lo_angles[0])]
        )
        return lo, hi, u

    def y1_zero(self, A):
        """Unit u in C2 with f(u) = 0, or None when the range
        excludes zero.
        """
        vals, vecs = np.linalg.eigh(self.y1_form(A))
        lo, hi = vals
        if lo > self.margin or hi < -self.margin:
            return None
        if hi - lo <= self.margin:
            return vecs[:, 0]
        cos2 = min(max(hi / (hi - lo), 0.0), 1.0)
        return np.sqrt(cos2) * vecs[:, 0] + np.sqrt(1.0 - cos2) * vecs[:, 1]

    def _witness(self, A, direction, W, extra=None):
        """Completes Y = phi(W) for W in k to a horizontal
        zero-curvature plane and validates it.
        """
        v = self.vertical_vector(A)
        Y = self.ctx.phi(W)
        X = self.ctx.complete_zero_plane(Y, [v])
        if X is None:
            msg = "No horizontal completion of {} at the point.".format(direction)
            log.error(msg)
            return None
        witness = Witness(
            'eschenburg',
            self.params.to_dict(),
            direction,
            np.asarray(A),
            X,
            Y,
            self.lam,
            extra,
        )
        witness.valid = validate_witness(
            self.ctx, X, Y, [v], bracket_tol=self.bracket_tol, horiz_tol=self.horiz_tol
        )
        if not witness.valid:
            log.error("Witness for {} failed validation.".format(self))
        return witness

    def has_horizontal_zero_plane(self, A, method="spectral", resolution=256):
        """Decides whether the point A carries a horizontal
        zero-curvature plane and, if so, constructs one.

        Parameters:

            A: 3 x 3 complex array in SU(3)

            method: str
                Method of the Y1 range, see y1_range.

            resolution: int
                Grid resolution of the grid method. Default: 256

        Returns:

            (found, report): boolean and HorizontalityReport
        """
        A = check_special_unitary(A, n=3)
        res3 = self.y3_residual(A)
        lo, hi, _ = self.y1_range(A, method=method, resolution=resolution)
        y3_zero = abs(res3) <= self.margin
        found = y3_zero or (lo <= self.margin and hi >= -self.margin)
        witness = None
        if y3_zero:
            witness = self._witness(A, self.labels['y3'], Y3)
        elif found:
            u = self.y1_zero(A)
            if u is not None:
                u_hat = np.array([u[0], u[1], 0.0])
                W = LieVector(1j * (np.eye(3) - 3.0 * np.outer(u_hat, u_hat.conj())))
                witness = self._witness(
                    A, self.labels['y1'], W, extra={'u': [u[0], u[1]]}
                )
        # the verdict is the bracket; a missing plane marks the report invalid
        if found and witness is None:
            log.error("Range at the point brackets zero but no plane was completed.")
        return found, HorizontalityReport(res3, lo, hi, witness, found=found)

    def diagonal_certificate(self):
        """True when the identity carries no horizontal
        zero-curvature plane, which makes the metric quasi
        positive.
        """
        found, _ = self.has_horizontal_zero_plane(np.eye(3, dtype=complex))
        return not found

    def zero_locus_point(self, kind, seed=None):
        """Point of SU(3) on a locus of horizontal zero planes.

        Parameters:

            kind: str
                'E0_DET' for E0 with p = (1, 1, 0), q = (0, 0, 2),
                where the upper left 2 x 2 block is singular, or
                'DAGGER_LENS' for weights satisfying (dagger) as
                ordered, where a22 = a32 = 0.

            seed: None, int or numpy Generator

        Returns:

            A: 3 x 3 complex array in SU(3)
        """
        rng = as_generator(seed)
        if kind == self.labels['e0_det']:
            if self.params != EschParams(*E0_PARAMS):
                msg = "The {} locus needs the weights {}, got {}.".format(
                    kind, E0_PARAMS, self.params
                )
                log.error(msg)
                raise ValueError(msg)
            # a33 = 0 is equivalent to a singular upper left block
            x = rng.standard_normal(2) + 1j * rng.standard_normal(2)
            col = np.array([x[0], x[1], 0.0]) / np.linalg.norm(x)
            G = rng.standard_normal((3, 3)) + 1j * rng.standard_normal((3, 3))
            G[:, 0] = col
            Q, _ = np.linalg.qr(G)
            A = Q[:, [1, 2, 0]]
            A[:, 0] = A[:, 0] / np.linalg.det(A)
            return check_special_unitary(A, n=3)
        if kind == self.labels['dagger_lens']:
            if not self.params.is_dagger():
                msg = "The {} locus needs weights satisfying (dagger), got {}.".format(
                    kind, self.params
                )
                log.error(msg)
                raise ValueError(msg)
            V = unitary_group.rvs(2, random_state=rng)
            A = np.zeros((3, 3), dtype=complex)
            A[0, 1] = -np.conj(np.linalg.det(V))
            A[1, 0], A[1, 2] = V[0, 0], V[0, 1]
            A[2, 0], A[2, 2] = V[1, 0], V[1, 1]
            return check_special_unitary(A, n=3)
        msg = "Unknown zero locus kind {}.".format(kind)
        log.error(msg)
        raise ValueError(msg)

    def _lens_constraint(self, A):
        if not self.params.is_dagger():
            msg = "Lens plane families need weights satisfying (dagger)."
            log.error(msg)
            raise ValueError(msg)
        A = check_special_unitary(A, n=3)
        if abs(A[1, 1]) + abs(A[2, 1]) > LOCUS_TOL:
            msg = "Point is not on the lens locus a22 = a32 = 0."
            log.error(msg)
            raise ValueError(msg)
        basis = lens_family_basis()
        v = self.vertical_vector(A)
        row = np.array([[inner0(b, v) for b in basis]])
        return basis, row, v

    def lens_plane_family_dim(self, A):
        """Dimension of the family of horizontal zero-curvature
        planes containing Y2 at a lens locus point.

        The candidates X = (is, 0, x / 0, 0, 0 / -conj(x), 0, -is)
        form a real 3-space; horizontality is one linear
        condition, and unit vectors up to sign remove one more
        dimension.
        """
        basis, row, v = self._lens_constraint(A)
        sing = np.linalg.svd(row, compute_uv=False)
        rank = int(np.sum(sing > 1e-9 * max(1.0, v.norm())))
        return (len(basis) - rank) - 1

    def lens_plane_family(self, A, count=8):
        """Members of the lens plane family at A.

        Returns:

            members: list of Witness, each spanned by X and
            phi(Y2)
        """
        basis, row, v = self._lens_constraint(A)
        _, _, vh = np.linalg.svd(row)
        kernel = vh[1:].T
        Y = self.ctx.phi(Y2)
        members = []
        for angle in np.linspace(0.0, np.pi, count, endpoint=False):
            coeffs = kernel @ np.array([np.cos(angle), np.sin(angle)])
            X = SymmetricPairContext.combine(basis, coeffs)
            X = X / X.norm()
            witness = Witness(
                'eschenburg',
                self.params.to_dict(),
                'Y2',
                np.asarray(A),
                X,
                Y,
                self.lam,
                {'angle': float(angle)},
            )
            witness.valid = validate_witness(
                self.ctx,
                X,
                Y,
                [v],
                bracket_tol=self.bracket_tol,
                horiz_tol=self.horiz_tol,
            )
            members.append(witness)
        return members

    def boundary_search(self):
        """Constructive search for a point with a horizontal zero
        plane when some q_i lies in [min p, max p].

        Along the geodesic of SU(3) between two signed
        permutation matrices that put the smallest and the
        largest p_j in column i, the column weight
        sum_j |a_ji|^2 p_j - q_i moves from min p - q_i to
        max p - q_i, and a bracketing root search locates its
        zero. Column 3 is the Y3 residual, columns 1 and 2 are
        values of f on e1 and e2.

        Returns:

            (A, report) or (None, None) when nothing was found
        """
        p = np.array(self.params.p, dtype=float)
        row_lo, row_hi = int(np.argmin(p)), int(np.argmax(p))
        for col in (2, 0, 1):
            q_col = self.params.q[col]
            if not p[row_lo] <= q_col <= p[row_hi]:
                continue
            A0 = permutation_point(col, row_lo)
            A1 = permutation_point(col, row_hi)
            L = unitary_log(A0.conj().T @ A1)
            L = L - np.trace(L) / 3.0 * np.eye(3)

            def path(t):
                return A0 @ expm(t * L)

            def weight(t):
                column = np.abs(path(t)[:, col]) ** 2
                return float(column @ p - q_col)

            w0, w1 = weight(0.0), weight(1.0)
            if w0 == 0.0:
                t_star = 0.0
            elif w1 == 0.0:
                t_star = 1.0
            elif w0 * w1 < 0.0:
                t_star = brentq(weight, 0.0, 1.0, xtol=1e-14)
            else:
                continue
            A = path(t_star)
            found, report = self.has_horizontal_zero_plane(A)
            if found:
                log.debug(
                    "Boundary search for {} found a zero plane in column {}.".format(
                        self, col + 1
                    )
                )
                return A, report

        log.warning(
            "Finding: no horizontal zero plane located for {} by the "
            "permutation geodesic search.".format(self)
        )
        return None, None


def lens_family_basis():
    """Basis of the matrices (is, 0, x / 0, 0, 0 / -conj(x), 0, -is)."""
    diag = LieVector.imaginary_diagonal((1, 0, -1))
    real = np.zeros((3, 3), dtype=complex)
    real[0, 2], real[2, 0] = 1.0, -1.0
    imag = np.zeros((3, 3), dtype=complex)
    imag[0, 2], imag[2, 0] = 1j, 1j
    return [diag, LieVector(real), LieVector(imag)]


def sorted_triples(bound):
    return list(itertools.combinations_with_replacement(range(-bound, bound + 1), 3))


def scan(bound, boundary_only=False, log_level=logging.DEBUG):
    """Lattice scan over sorted weights with entries in
    [-bound, bound].

    Parameters:

        bound: int
            Largest absolute entry.

        boundary_only: boolean
            Restrict to free actions with q2 = p1 or q2 = p3.

    Returns:

        table: pandas DataFrame with columns p, q, free, class
    """
    rows = []
    triples = sorted_triples(int(bound))
    by_sum = {}
    for trip in triples:
        by_sum.setdefault(sum(trip), []).append(trip)
    for p in triples:
        for q in by_sum.get(sum(p), []):
            if boundary_only and q[1] != p[0] and q[1] != p[2]:
                continue
            params = EschParams(p, q)
            free = params.is_free()
            if boundary_only and not free:
                continue
            if not free and not dagger_images(params):
                continue
            label = classify(params, log_level=log_level).label
            rows.append({'p': p, 'q': q, 'free': free, 'class': label})
    return pd.DataFrame(rows, columns=['p', 'q', 'free', 'class'])


def random_points(count, seed=None):
    """count Haar points of SU(3) from one random stream."""
    rng = as_generator(seed)
    return [haar_unitary(3, rng) for _ in range(count)]
