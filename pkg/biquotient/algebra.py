import math

import numpy as np
from scipy.stats import unitary_group

import logging

log = logging.getLogger(__name__)

# group and algebra membership checks
UNITARY_TOL = 1e-10
SKEW_TOL = 1e-10
UNIT_TOL = 1e-10
# bracket vanishing, relative to |X||Y|
BRACKET_TOL = 1e-9

SUPPORTED_DIMS = (3, 4, 5)


def as_generator(seed=None):
    """Returns a numpy random generator for a seed.

    Parameters:

        seed: None, int, numpy SeedSequence or Generator
            A generator is passed through unchanged, so that
            callers can thread one stream of random numbers
            through several samplers.

    Returns:

        rng: numpy.random.Generator
    """
    if isinstance(seed, np.random.Generator):
        return seed
    return np.random.default_rng(seed)


class Quaternion(object):
    """Real quaternion w + x i + y j + z k.

    Unit quaternions are used as elements of S3 = Sp(1) and
    imaginary quaternions (w = 0) as tangent vectors in Im H.

    Parameters:

        w, x, y, z: float
            Coefficients of 1, i, j and k.
    """

    def __init__(self, w=0.0, x=0.0, y=0.0, z=0.0):
        self.w = float(w)
        self.x = float(x)
        self.y = float(y)
        self.z = float(z)

    @classmethod
    def imaginary(cls, v):
        """Imaginary quaternion from a 3-vector."""
        v = np.asarray(v, dtype=float)
        return cls(0.0, v[0], v[1], v[2])

    @classmethod
    def from_array(cls, values):
        w, x, y, z = [float(val) for val in values]
        return cls(w, x, y, z)

    @classmethod
    def random_unit(cls, seed=None):
        """Haar distributed unit quaternion (uniform on S3)."""
        rng = as_generator(seed)
        vec = rng.standard_normal(4)
        return cls.from_array(vec / np.linalg.norm(vec))

    @classmethod
    def exp_i(cls, angle):
        """The unit complex number e^{i angle} as a quaternion."""
        return cls(math.cos(angle), math.sin(angle), 0.0, 0.0)

    @classmethod
    def rotation_between(cls, u, v):
        """Unit quaternion q with q u q_bar = v for unit 3-vectors
        u and v.
        """
        u = np.asarray(u, dtype=float)
        v = np.asarray(v, dtype=float)
        u = u / np.linalg.norm(u)
        v = v / np.linalg.norm(v)
        dot = float(np.dot(u, v))
        if dot < -1.0 + 1e-12:
            # antiparallel, rotate by pi about any axis normal to u
            helper = np.eye(3)[int(np.argmin(np.abs(u)))]
            axis = np.cross(u, helper)
            axis = axis / np.linalg.norm(axis)
            return cls(0.0, axis[0], axis[1], axis[2])
        cross = np.cross(u, v)
        q = np.array([1.0 + dot, cross[0], cross[1], cross[2]])
        return cls.from_array(q / np.linalg.norm(q))

    def as_array(self):
        return np.array([self.w, self.x, self.y, self.z])

    @property
    def imag(self):
        return np.array([self.x, self.y, self.z])

    def conjugate(self):
        return Quaternion(self.w, -self.x, -self.y, -self.z)

    def norm(self):
        return float(np.linalg.norm(self.as_array()))

    def unit(self):
        return Quaternion.from_array(self.as_array() / self.norm())

    def is_unit(self, tol=UNIT_TOL):
        return abs(self.norm() ** 2 - 1.0) <= tol

    def is_imaginary(self):
        return self.w == 0.0

    def __mul__(self, other):
        if isinstance(other, Quaternion):
            w1, x1, y1, z1 = self.w, self.x, self.y, self.z
            w2, x2, y2, z2 = other.w, other.x, other.y, other.z
            return Quaternion(
                w1 * w2 - x1 * x2 - y1 * y2 - z1 * z2,
                w1 * x2 + x1 * w2 + y1 * z2 - z1 * y2,
                w1 * y2 - x1 * z2 + y1 * w2 + z1 * x2,
                w1 * z2 + x1 * y2 - y1 * x2 + z1 * w2,
            )
        return Quaternion.from_array(self.as_array() * float(other))

    def __rmul__(self, other):
        return Quaternion.from_array(self.as_array() * float(other))

    def __add__(self, other):
        return Quaternion.from_array(self.as_array() + other.as_array())

    def __sub__(self, other):
        return Quaternion.from_array(self.as_array() - other.as_array())

    def __neg__(self):
        return Quaternion.from_array(-self.as_array())

    def __repr__(self):
        return "Quaternion({}, {}, {}, {})".format(
            self.w, self.x, self.y, self.z
        )

    def rotation_matrix(self):
        """Rotation of Im H given by v -> q v q_bar, from the
        standard quaternion-to-rotation formula.
        """
        w, x, y, z = self.unit().as_array()
        return np.array(
            [
                [1 - 2 * (y * y + z * z), 2 * (x * y - w * z), 2 * (x * z + w * y)],
                [2 * (x * y + w * z), 1 - 2 * (x * x + z * z), 2 * (y * z - w * x)],
                [2 * (x * z - w * y), 2 * (y * z + w * x), 1 - 2 * (x * x + y * y)],
            ]
        )


QUAT_ONE = Quaternion(1.0, 0.0, 0.0, 0.0)
QUAT_I = Quaternion(0.0, 1.0, 0.0, 0.0)
QUAT_J = Quaternion(0.0, 0.0, 1.0, 0.0)
QUAT_K = Quaternion(0.0, 0.0, 0.0, 1.0)


def quat_ad(q, v):
    """Adjoint action q v q_bar of a unit quaternion on
    an imaginary quaternion.

    Parameters:

        q: Quaternion
            Unit quaternion
        v: Quaternion or array of 3 floats
            Imaginary quaternion

    Returns:

        Quaternion, imaginary
    """
    if not isinstance(v, Quaternion):
        v = Quaternion.imaginary(v)
    if not q.is_unit():
        msg = "Ad requires a unit quaternion, got |q| = {}.".format(q.norm())
        log.error(msg)
        raise ValueError(msg)
    if abs(v.w) > UNIT_TOL:
        msg = "Ad acts on imaginary quaternions, got Re v = {}.".format(v.w)
        log.error(msg)
        raise ValueError(msg)
    res = q * Quaternion.imaginary(v.imag) * q.conjugate()
    return Quaternion.imaginary(res.imag)


class LieVector(object):
    """Element of su(n), n in {3, 4, 5}, or of the product
    Im H + Im H = Lie algebra of S3 x S3.

    The matrix form holds an anti-Hermitian traceless complex
    n x n array. The pair form holds a real 2 x 3 array whose
    rows are the imaginary parts of the two quaternions.

    Parameters:

        data: array-like
            n x n complex matrix or 2 x 3 real array

        check: boolean
            Validates anti-Hermitian and traceless property
            of the matrix form.

            Default: True
    """

    def __init__(self, data, check=True):
        arr = np.asarray(data)
        if arr.shape == (2, 3) and not np.iscomplexobj(arr):
            self.kind = "pair"
            self.data = arr.astype(float)
        elif (
            arr.ndim == 2
            and arr.shape[0] == arr.shape[1]
            and arr.shape[0] in SUPPORTED_DIMS
        ):
            self.kind = "matrix"
            self.data = arr.astype(complex)
            if check:
                scale = max(1.0, np.linalg.norm(self.data))
                skew = np.linalg.norm(self.data + self.data.conj().T)
                trace = abs(np.trace(self.data))
                if skew > SKEW_TOL * scale or trace > SKEW_TOL * scale:
                    msg = (
                        "Matrix is not in su({}): |X + X*| = {:.3e}, "
                        "|tr X| = {:.3e}.".format(arr.shape[0], skew, trace)
                    )
                    log.error(msg)
                    raise ValueError(msg)
        else:
            msg = "Unsupported Lie algebra data of shape {}.".format(arr.shape)
            log.error(msg)
            raise ValueError(msg)

    @classmethod
    def pair(cls, v, w):
        """Pair form from two imaginary quaternions or 3-vectors."""
        v = v.imag if isinstance(v, Quaternion) else np.asarray(v, dtype=float)
        w = w.imag if isinstance(w, Quaternion) else np.asarray(w, dtype=float)
        return cls(np.vstack([v, w]))

    @classmethod
    def imaginary_diagonal(cls, values):
        """i diag(values) for a real tuple with zero sum."""
        return cls(1j * np.diag(np.asarray(values, dtype=float)))

    @classmethod
    def zeros_like(cls, other):
        return cls(np.zeros_like(other.data), check=False)

    @property
    def dim(self):
        """Matrix size n, or None for the pair form."""
        if self.kind == "matrix":
            return self.data.shape[0]
        return None

    @property
    def signature(self):
        return (self.kind, self.data.shape)

    def _check_compatible(self, other):
        if not isinstance(other, LieVector) or self.signature != other.signature:
            msg = "Lie algebra mismatch: {} vs {}.".format(
                self.signature,
                getattr(other, "signature", type(other).__name__),
            )
            log.error(msg)
            raise ValueError(msg)

    def __add__(self, other):
        self._check_compatible(other)
        return LieVector(self.data + other.data, check=False)

    def __sub__(self, other):
        self._check_compatible(other)
        return LieVector(self.data - other.data, check=False)

    def __neg__(self):
        return LieVector(-self.data, check=False)

    def __mul__(self, scalar):
        return LieVector(self.data * float(scalar), check=False)

    __rmul__ = __mul__

    def __truediv__(self, scalar):
        return LieVector(self.data / float(scalar), check=False)

    def __repr__(self):
        return "LieVector({}, {})".format(self.kind, self.data.tolist())

    def norm(self):
        """Norm of the bi-invariant metric."""
        return math.sqrt(max(inner0(self, self), 0.0))

    def coordinates(self):
        """Real coordinate vector, used for linear solves."""
        if self.kind == "matrix":
            return np.concatenate([self.data.real.ravel(), self.data.imag.ravel()])
        return self.data.ravel().copy()

    def is_zero(self, tol):
        return np.linalg.norm(self.data) <= tol


def bracket(X, Y):
    """Lie bracket [X, Y].

    The matrix form is the commutator XY - YX. The pair form
    brackets componentwise, and for imaginary quaternions the
    commutator is vw - wv = 2 v x w.
    """
    X._check_compatible(Y)
    if X.kind == "matrix":
        return LieVector(X.data @ Y.data - Y.data @ X.data, check=False)
    return LieVector(2.0 * np.cross(X.data, Y.data), check=False)


def inner0(X, Y):
    """Bi-invariant inner product <X, Y>_0 = -Re tr(XY).

    On the pair form it is the Euclidean product of Im H + Im H.
    """
    X._check_compatible(Y)
    if X.kind == "matrix":
        return float(-np.real(np.trace(X.data @ Y.data)))
    return float(np.sum(X.data * Y.data))


def adjoint(g, X):
    """Ad_g X = g X g^-1.

    Parameters:

        g: complex matrix (matrix form) or pair of unit
           Quaternions (pair form)
        X: LieVector
    """
    if X.kind == "matrix":
        g = np.asarray(g)
        return LieVector(g @ X.data @ g.conj().T, check=False)
    g1, g2 = g
    return LieVector.pair(quat_ad(g1, X.data[0]), quat_ad(g2, X.data[1]))


def su_basis(n):
    """Orthonormal basis of su(n) for <,>_0.

    Returns:

        basis: list of n^2 - 1 LieVector
    """
    if n not in SUPPORTED_DIMS:
        msg = "su({}) is not supported, use one of {}.".format(n, SUPPORTED_DIMS)
        log.error(msg)
        raise ValueError(msg)
    basis = []
    for j in range(n):
        for l in range(j + 1, n):
            real = np.zeros((n, n), dtype=complex)
            real[j, l] = 1.0
            real[l, j] = -1.0
            imag = np.zeros((n, n), dtype=complex)
            imag[j, l] = 1j
            imag[l, j] = 1j
            basis.append(LieVector(real / math.sqrt(2.0)))
            basis.append(LieVector(imag / math.sqrt(2.0)))
    for m in range(1, n):
        diag = np.zeros(n)
        diag[:m] = 1.0
        diag[m] = -m
        basis.append(LieVector.imaginary_diagonal(diag / math.sqrt(m * (m + 1))))
    return basis


def pair_basis():
    """Orthonormal basis of Im H + Im H."""
    basis = []
    for row in range(2):
        for col in range(3):
            data = np.zeros((2, 3))
            data[row, col] = 1.0
            basis.append(LieVector(data))
    return basis


def lie_basis(X):
    """Orthonormal basis of the Lie algebra that X belongs to."""
    if X.kind == "matrix":
        return su_basis(X.dim)
    return pair_basis()


def is_special_unitary(A, tol=UNITARY_TOL):
    A = np.asarray(A)
    if A.ndim != 2 or A.shape[0] != A.shape[1]:
        return False
    n = A.shape[0]
    unitary = np.linalg.norm(A.conj().T @ A - np.eye(n)) <= tol
    return bool(unitary and abs(np.linalg.det(A) - 1.0) <= tol)


def check_special_unitary(A, n=None, tol=UNITARY_TOL):
    """Raises a ValueError unless A is in SU(n)."""
    A = np.asarray(A)
    if n is not None and A.shape != (n, n):
        msg = "Expected a {0}x{0} matrix, got shape {1}.".format(n, A.shape)
        log.error(msg)
        raise ValueError(msg)
    if not is_special_unitary(A, tol=tol):
        msg = "Point is not special unitary within {}.".format(tol)
        log.error(msg)
        raise ValueError(msg)
    return A.astype(complex)


def haar_unitary(n, seed=None):
    """Haar distributed element of SU(n).

    A Haar unitary from scipy (QR of a complex Gaussian matrix
    with the diagonal phases of R removed) is rotated into SU(n)
    by a scalar phase.

    Parameters:

        n: int
            Dimension, one of 3, 4, 5
        seed: None, int or numpy Generator

    Returns:

        A: n x n complex numpy array
    """
    if n not in SUPPORTED_DIMS:
        msg = "Haar sampling on SU({}) is not supported.".format(n)
        log.error(msg)
        raise ValueError(msg)
    rng = as_generator(seed)
    U = unitary_group.rvs(n, random_state=rng)
    phase = np.angle(np.linalg.det(U))
    return U * np.exp(-1j * phase / n)


def pair_gcd(a, b):
    """gcd(|a|, |b|), with gcd(0, 0) = 0."""
    return math.gcd(int(a), int(b))


def elementary_symmetric(values, degree):
    """Exact elementary symmetric polynomial of the given degree.

    Parameters:

        values: list of int
        degree: int, 0 <= degree <= len(values)

    Returns:

        sigma: int (python integer, no overflow)
    """
    values = [int(val) for val in values]
    if degree < 0 or degree > len(values):
        msg = "Degree {} is out of range for {} values.".format(
            degree, len(values)
        )
        log.error(msg)
        raise ValueError(msg)
    # coeffs[k] holds sigma_k of the values processed so far
    coeffs = [1] + [0] * degree
    for val in values:
        for k in range(degree, 0, -1):
            coeffs[k] += coeffs[k - 1] * val
    return coeffs[degree]
