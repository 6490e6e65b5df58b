import numpy as np
from scipy.linalg import null_space

from biquotient.algebra import (
    BRACKET_TOL,
    LieVector,
    as_generator,
    bracket,
    inner0,
    pair_basis,
    su_basis,
)

import logging

log = logging.getLogger(__name__)

SU3_U2 = "SU3_U2"
SU5_U4 = "SU5_U4"
S3S3_DIAG = "S3S3_DIAG"

# matrix size of G, None for S3 x S3
PAIR_DIMS = {SU3_U2: 3, SU5_U4: 5, S3S3_DIAG: None}

# relative Gram determinant below which a plane is degenerate
GRAM_TOL = 1e-12


class SymmetricPairContext(object):
    """Cheeger deformation of the bi-invariant metric of G
    along a subgroup K, for the symmetric pairs

    * SU3_U2: U(2) in SU(3) as A -> diag(A, conj(det A))
    * SU5_U4: U(4) in SU(5) as A -> diag(A, conj(det A))
    * S3S3_DIAG: the diagonal S3 in S3 x S3

    The deformed metric is <X, Y>_1 = <X, phi(Y)>_0 with
    phi(Y) = Y_p + lam Y_k, where g = k + p is the orthogonal
    splitting of the Lie algebra and lam = t / (t + 1) comes
    from the submersion (G x K, <,>_0 + t <,>_0) -> G,
    (g, k) -> g k^-1.

    A plane is written as a spanning pair (X, Y) in phi
    coordinates, meaning that the plane itself is
    Span{phi_inv(X), phi_inv(Y)}.

    Parameters:

        pair_id: str
            One of SU3_U2, SU5_U4, S3S3_DIAG

        lam: float
            Deformation parameter in the open interval (0, 1).

            Default: 0.5
    """

    def __init__(self, pair_id, lam=0.5):
        if pair_id not in PAIR_DIMS:
            msg = "Unknown symmetric pair {}, use one of {}.".format(
                pair_id, sorted(PAIR_DIMS)
            )
            log.error(msg)
            raise ValueError(msg)
        lam = float(lam)
        if not 0.0 < lam < 1.0:
            msg = "The deformation parameter must lie in (0, 1), got {}.".format(
                lam
            )
            log.error(msg)
            raise ValueError(msg)
        self.pair_id = pair_id
        self.lam = lam
        self.n = PAIR_DIMS[pair_id]

    @classmethod
    def from_t(cls, pair_id, t):
        """Context for the submersion scale t > 0."""
        if t <= 0:
            msg = "The submersion scale t must be positive, got {}.".format(t)
            log.error(msg)
            raise ValueError(msg)
        return cls(pair_id, lam=t / (t + 1.0))

    @property
    def t(self):
        return self.lam / (1.0 - self.lam)

    def __repr__(self):
        return "SymmetricPairContext({}, lam={})".format(self.pair_id, self.lam)

    def basis(self):
        """Orthonormal basis of the Lie algebra of G."""
        if self.n is None:
            return pair_basis()
        return su_basis(self.n)

    def random_vector(self, seed=None):
        """Gaussian random vector of the Lie algebra of G."""
        rng = as_generator(seed)
        basis = self.basis()
        coeffs = rng.standard_normal(len(basis))
        return self.combine(basis, coeffs)

    @staticmethod
    def combine(basis, coeffs):
        data = sum(c * b.data for c, b in zip(coeffs, basis))
        return LieVector(data, check=False)

    def _check(self, X):
        if not isinstance(X, LieVector):
            msg = "Expected a LieVector, got {}.".format(type(X).__name__)
            log.error(msg)
            raise ValueError(msg)
        expected = "pair" if self.n is None else "matrix"
        if X.kind != expected or X.dim != self.n:
            msg = "Vector {} does not belong to the Lie algebra of {}.".format(
                X.signature, self.pair_id
            )
            log.error(msg)
            raise ValueError(msg)

    def split(self, X):
        """Orthogonal splitting X = X_k + X_p.

        Returns:

            (X_k, X_p): tuple of LieVector
        """
        self._check(X)
        if self.n is None:
            v, w = X.data
            mean = (v + w) / 2.0
            half = (v - w) / 2.0
            return (
                LieVector(np.vstack([mean, mean])),
                LieVector(np.vstack([half, -half])),
            )
        mask = np.zeros((self.n, self.n), dtype=bool)
        mask[-1, :-1] = True
        mask[:-1, -1] = True
        x_p = np.where(mask, X.data, 0.0)
        return LieVector(X.data - x_p, check=False), LieVector(x_p, check=False)

    def phi(self, X):
        x_k, x_p = self.split(X)
        return x_p + x_k * self.lam

    def phi_inv(self, X):
        x_k, x_p = self.split(X)
        return x_p + x_k / self.lam

    def inner1(self, X, Y):
        """Deformed metric <X, Y>_1 = <X, phi(Y)>_0."""
        return inner0(X, self.phi(Y))

    def gram_ratio(self, X, Y):
        """Gram determinant of (X, Y) divided by |X|^2 |Y|^2."""
        xx = inner0(X, X)
        yy = inner0(Y, Y)
        if xx == 0.0 or yy == 0.0:
            return 0.0
        xy = inner0(X, Y)
        return (xx * yy - xy * xy) / (xx * yy)

    def _check_plane(self, X, Y):
        self._check(X)
        self._check(Y)
        if self.gram_ratio(X, Y) <= GRAM_TOL:
            msg = "Spanning vectors are linearly dependent."
            log.error(msg)
            raise ValueError(msg)

    def plane_zero_curvature(self, X, Y, tol=BRACKET_TOL):
        """Zero-curvature test for the plane Span{phi_inv(X),
        phi_inv(Y)} of the deformed metric: the plane has zero
        curvature exactly when [X, Y], [X_k, Y_k] and [X_p, Y_p]
        all vanish.

        Parameters:

            X, Y: LieVector
                Linearly independent spanning pair.

            tol: float
                Bracket tolerance relative to |X| |Y|.

                Default: 1e-9

        Returns:

            zero: boolean
        """
        self._check_plane(X, Y)
        scale = tol * X.norm() * Y.norm()
        x_k, x_p = self.split(X)
        y_k, y_p = self.split(Y)
        return (
            bracket(X, Y).norm() <= scale
            and bracket(x_k, y_k).norm() <= scale
            and bracket(x_p, y_p).norm() <= scale
        )

    def horizontal_lift(self, X):
        """Horizontal lift of phi_inv(X) to G x K at the identity.

        The fibres of (g, k) -> g k^-1 are spanned by (Z, Z),
        Z in k. The pair (X, -c X_k) with c = (1 - lam) / lam is
        orthogonal to them for <,>_0 + t <,>_0 and projects
        to X - (-c X_k) = X_p + X_k / lam.

        Returns:

            (G component, K component): tuple of LieVector
        """
        x_k, _ = self.split(X)
        c = (1.0 - self.lam) / self.lam
        return X, x_k * (-c)

    @staticmethod
    def project_lift(lift):
        """Differential of (g, k) -> g k^-1 at the identity."""
        return lift[0] - lift[1]

    def lift_inner(self, lift_a, lift_b):
        """Metric <,>_0 + t <,>_0 of G x K on lifted vectors."""
        return inner0(lift_a[0], lift_b[0]) + self.t * inner0(lift_a[1], lift_b[1])

    def lifted_bracket_oracle(self, X, Y, tol=BRACKET_TOL):
        """Zero-curvature test through the horizontal lifts to
        the product metric on G x K, where a plane has zero
        curvature iff the lifts commute componentwise.

        Only the pair ([X, Y], [X_k, Y_k]) enters, so it is an
        independent check of plane_zero_curvature.
        """
        self._check_plane(X, Y)
        lift_x = self.horizontal_lift(X)
        lift_y = self.horizontal_lift(Y)
        c = (1.0 - self.lam) / self.lam
        scale = tol * X.norm() * Y.norm()
        g_part = bracket(lift_x[0], lift_y[0])
        k_part = bracket(lift_x[1], lift_y[1])
        return g_part.norm() <= scale and k_part.norm() <= scale * c * c

    def complete_zero_plane(self, Y, constraints=(), rcond=1e-10):
        """Finds X such that Span{phi_inv(X), phi_inv(Y)} is a
        zero-curvature plane and X is <,>_0 orthogonal to Y and
        to every vector in constraints.

        The three bracket conditions are linear in X, so the
        solutions form the null space of a real matrix over an
        orthonormal basis of the Lie algebra.

        Parameters:

            Y: LieVector
                First spanning vector, phi coordinates.

            constraints: list of LieVector
                For horizontality, the vertical vectors.

        Returns:

            X: LieVector of unit norm, or None if the only
            solution is zero
        """
        self._check(Y)
        basis = self.basis()
        y_k, y_p = self.split(Y)
        columns = []
        for b in basis:
            b_k, b_p = self.split(b)
            columns.append(
                np.concatenate(
                    [
                        bracket(b, Y).coordinates(),
                        bracket(b_k, y_k).coordinates(),
                        bracket(b_p, y_p).coordinates(),
                        [inner0(b, c) for c in constraints],
                        [inner0(b, Y)],
                    ]
                )
            )
        matrix = np.column_stack(columns)
        kernel = null_space(matrix, rcond=rcond)
        if kernel.shape[1] == 0:
            log.debug("No completion of the zero-curvature plane exists.")
            return None
        X = self.combine(basis, kernel[:, 0])
        return X / X.norm()


class Witness(object):
    """Explicit horizontal zero-curvature plane at a point.

    Parameters:

        family: str
            'eschenburg', 'bazaikin' or 'torus'
        params: dict
            Parameters of the action, as used by the metric
        direction: str
            Name of the distinguished direction of the plane,
            for instance 'Y1' or 'W2'
        point: numpy array
            Base point in G, a matrix or a pair of quaternions
        X, Y: LieVector
            Spanning pair in phi coordinates
        lam: float
            Deformation parameter of the metric
        extra: dict
            Family specific data, such as the unit vector u.
    """

    def __init__(self, family, params, direction, point, X, Y, lam, extra=None):
        self.family = family
        self.params = params
        self.direction = direction
        self.point = point
        self.X = X
        self.Y = Y
        self.lam = lam
        self.extra = extra or {}
        self.valid = None

    def __repr__(self):
        return "Witness({}, {}, {}, valid={})".format(
            self.family, self.params, self.direction, self.valid
        )


class HorizontalityReport(object):
    """Outcome of a horizontal zero-plane search at a point.

    residual is the scalar horizontality equation of the
    central direction (Y3 or W1), range_min and range_max
    bound the horizontality function of the remaining
    direction (Ad_k Y1 or W2) over K. found records the verdict;
    a found plane without a witness failed its completion.
    """

    def __init__(self, residual, range_min, range_max, witness=None, found=None):
        if range_min > range_max:
            msg = "Empty range [{}, {}].".format(range_min, range_max)
            log.error(msg)
            raise ValueError(msg)
        self.residual = float(residual)
        self.range_min = float(range_min)
        self.range_max = float(range_max)
        self.witness = witness
        self.found = witness is not None if found is None else bool(found)

    @property
    def valid(self):
        if self.witness is None:
            return False if self.found else None
        return self.witness.valid

    def to_dict(self):
        return {
            'residual': self.residual,
            'range_min': self.range_min,
            'range_max': self.range_max,
            'witness_valid': self.valid,
        }


def validate_witness(ctx, X, Y, constraints, bracket_tol=BRACKET_TOL, horiz_tol=1e-8):
    """Checks that Span{phi_inv(X), phi_inv(Y)} has zero curvature
    and that both spanning vectors are <,>_1 orthogonal to every
    constraint vector.

    Since <phi_inv(X), v>_1 = <X, v>_0, the orthogonality is
    tested on X and Y directly, after normalization.
    """
    try:
        zero = ctx.plane_zero_curvature(X, Y, tol=bracket_tol)
    except ValueError:
        return False
    if not zero:
        log.debug("Witness plane fails the bracket conditions.")
        return False
    for vec in (X, Y):
        unit = vec / vec.norm()
        for con in constraints:
            if abs(inner0(unit, con)) > horiz_tol * max(1.0, con.norm()):
                log.debug("Witness vector is not horizontal.")
                return False
    return True
