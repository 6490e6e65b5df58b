import unittest

import numpy as np
from hypothesis import given, settings, strategies as st
from scipy.linalg import expm

from biquotient.algebra import LieVector, adjoint, bracket, inner0
from biquotient.cheeger import (
    S3S3_DIAG,
    SU3_U2,
    SU5_U4,
    HorizontalityReport,
    SymmetricPairContext,
    validate_witness,
)

import logging

logging.basicConfig(level=logging.DEBUG)

PAIRS = [SU3_U2, SU5_U4, S3S3_DIAG]


def commuting_k_pair(ctx, seed):
    """Spanning pair of a zero-curvature plane: commuting
    elements of k, or (v, 0), (0, v) on S3 x S3.
    """
    rng = np.random.default_rng(seed)
    if ctx.n is None:
        v = rng.standard_normal(3)
        return LieVector.pair(v, np.zeros(3)), LieVector.pair(np.zeros(3), v)
    n = ctx.n
    q, _ = np.linalg.qr(rng.standard_normal((n - 1, n - 1)))
    k = np.eye(n, dtype=complex)
    k[:-1, :-1] = q
    out = []
    for _ in range(2):
        d = rng.standard_normal(n - 1)
        out.append(adjoint(k, LieVector.imaginary_diagonal(list(d) + [-d.sum()])))
    return out[0], out[1]


class ContextTests(unittest.TestCase):
    """Tests the k + p splitting and the deformation map."""

    def setUp(self):
        """Defines one context per symmetric pair."""
        self.contexts = [SymmetricPairContext(pair_id) for pair_id in PAIRS]

    def test_invalid_inputs(self):
        with self.assertRaises(ValueError):
            SymmetricPairContext("SO3_SO2")
        for lam in (0.0, 1.0, -0.5, 2.0):
            with self.assertRaises(ValueError):
                SymmetricPairContext(SU3_U2, lam=lam)
        with self.assertRaises(ValueError):
            SymmetricPairContext.from_t(SU3_U2, 0.0)

    def test_from_t(self):
        ctx = SymmetricPairContext.from_t(SU3_U2, 1.0)
        self.assertAlmostEqual(ctx.lam, 0.5)
        self.assertAlmostEqual(SymmetricPairContext(SU3_U2, lam=0.75).t, 3.0)

    def test_split_is_orthogonal(self):
        for ctx in self.contexts:
            X = ctx.random_vector(seed=3)
            x_k, x_p = ctx.split(X)
            np.testing.assert_allclose((x_k + x_p).data, X.data, atol=1e-12)
            self.assertAlmostEqual(inner0(x_k, x_p), 0.0, places=12)

    def test_k_and_p_of_su3(self):
        ctx = self.contexts[0]
        x_k, x_p = ctx.split(LieVector.imaginary_diagonal((1, 1, -2)))
        self.assertTrue(x_p.is_zero(1e-15))
        self.assertAlmostEqual(x_k.norm(), np.sqrt(6.0))

    def test_phi_inverse(self):
        for ctx in self.contexts:
            X = ctx.random_vector(seed=5)
            np.testing.assert_allclose(ctx.phi(ctx.phi_inv(X)).data, X.data, atol=1e-12)

    def test_deformed_metric_symmetric(self):
        for ctx in self.contexts:
            X, Y = ctx.random_vector(seed=1), ctx.random_vector(seed=2)
            self.assertAlmostEqual(ctx.inner1(X, Y), ctx.inner1(Y, X), places=12)
            self.assertGreater(ctx.inner1(X, X), 0.0)

    def test_wrong_algebra_rejected(self):
        ctx = self.contexts[0]
        with self.assertRaises(ValueError):
            ctx.split(self.contexts[1].random_vector(seed=0))
        with self.assertRaises(ValueError):
            ctx.split(np.zeros((3, 3)))


class ZeroCurvatureTests(unittest.TestCase):
    """Tests the bracket criterion, the lifted-bracket oracle and
    the completion of zero-curvature planes.
    """

    def test_random_planes_are_not_flat(self):
        for pair_id in PAIRS:
            ctx = SymmetricPairContext(pair_id)
            X, Y = ctx.random_vector(seed=10), ctx.random_vector(seed=11)
            self.assertFalse(ctx.plane_zero_curvature(X, Y))
            self.assertFalse(ctx.lifted_bracket_oracle(X, Y))

    def test_commuting_k_planes_are_flat(self):
        for pair_id in (SU3_U2, SU5_U4):
            ctx = SymmetricPairContext(pair_id)
            X, Y = commuting_k_pair(ctx, seed=4)
            self.assertTrue(ctx.plane_zero_curvature(X, Y))
            self.assertTrue(ctx.lifted_bracket_oracle(X, Y))

    def test_product_planes_are_flat(self):
        ctx = SymmetricPairContext(S3S3_DIAG)
        v = np.array([0.2, -1.0, 0.7])
        X = LieVector.pair(v, np.zeros(3))
        Y = LieVector.pair(np.zeros(3), v)
        self.assertTrue(ctx.plane_zero_curvature(X, Y))
        self.assertTrue(ctx.lifted_bracket_oracle(X, Y))

    def test_conjugated_cartan_planes_are_not_flat(self):
        """Commuting vectors whose k-parts do not commute span a
        plane of positive curvature.
        """
        cartan = {
            SU3_U2: ((1.0, -1.0, 0.0), (2.0, -3.0, 1.0)),
            SU5_U4: ((1.0, -1.0, 0.0, 2.0, -2.0), (3.0, 1.0, -2.0, 0.0, -2.0)),
        }
        for pair_id, (a, b) in cartan.items():
            ctx = SymmetricPairContext(pair_id)
            _, P = ctx.split(ctx.random_vector(seed=12))
            g = expm(0.7 * P.data)
            X = adjoint(g, LieVector.imaginary_diagonal(a))
            Y = adjoint(g, LieVector.imaginary_diagonal(b))
            self.assertTrue(bracket(X, Y).is_zero(1e-9))
            x_k, _ = ctx.split(X)
            y_k, _ = ctx.split(Y)
            self.assertGreater(bracket(x_k, y_k).norm(), 1e-3)
            self.assertFalse(ctx.plane_zero_curvature(X, Y))
            self.assertFalse(ctx.lifted_bracket_oracle(X, Y))

    def test_verdict_independent_of_scale(self):
        scales = ((2.5, -0.4), (-3.0, 7.0), (1e-3, 1e3), (-1.0, -1.0))
        for pair_id in PAIRS:
            ctx = SymmetricPairContext(pair_id)
            planes = [
                commuting_k_pair(ctx, seed=6),
                (ctx.random_vector(seed=13), ctx.random_vector(seed=14)),
            ]
            for X, Y in planes:
                expected = ctx.plane_zero_curvature(X, Y)
                for c, d in scales:
                    self.assertEqual(ctx.plane_zero_curvature(c * X, d * Y), expected)
                    self.assertEqual(
                        ctx.lifted_bracket_oracle(c * X, d * Y),
                        ctx.lifted_bracket_oracle(X, Y),
                    )

    def test_degenerate_plane(self):
        ctx = SymmetricPairContext(SU3_U2)
        X = ctx.random_vector(seed=0)
        with self.assertRaises(ValueError):
            ctx.plane_zero_curvature(X, X * 2.0)

    @given(
        st.integers(min_value=0, max_value=2 ** 31),
        st.sampled_from(PAIRS),
        st.booleans(),
    )
    @settings(max_examples=30, deadline=None)
    def test_verdict_independent_of_lam(self, seed, pair_id, flat):
        base = SymmetricPairContext(pair_id)
        if flat:
            X, Y = commuting_k_pair(base, seed)
        else:
            X, Y = base.random_vector(seed), base.random_vector(seed + 1)
        verdicts = set()
        for lam in (0.1, 0.3, 0.5, 0.7, 0.9):
            ctx = SymmetricPairContext(pair_id, lam=lam)
            primary = ctx.plane_zero_curvature(X, Y)
            self.assertEqual(primary, ctx.lifted_bracket_oracle(X, Y))
            verdicts.add(primary)
        self.assertEqual(len(verdicts), 1)

    def test_horizontal_lift(self):
        """The lift projects to phi_inv(X) and is orthogonal to
        the fibre directions (Z, Z), Z in k.
        """
        for pair_id in PAIRS:
            ctx = SymmetricPairContext(pair_id, lam=0.3)
            X = ctx.random_vector(seed=7)
            lift = ctx.horizontal_lift(X)
            np.testing.assert_allclose(
                ctx.project_lift(lift).data, ctx.phi_inv(X).data, atol=1e-12
            )
            Z, _ = ctx.split(ctx.random_vector(seed=8))
            self.assertAlmostEqual(ctx.lift_inner(lift, (Z, Z)), 0.0, places=10)

    def test_complete_zero_plane(self):
        ctx = SymmetricPairContext(SU3_U2)
        Y = ctx.phi(LieVector.imaginary_diagonal((1, 1, -2)))
        X = ctx.complete_zero_plane(Y)
        self.assertIsNotNone(X)
        self.assertAlmostEqual(X.norm(), 1.0)
        self.assertAlmostEqual(inner0(X, Y), 0.0, places=10)
        self.assertTrue(ctx.plane_zero_curvature(X, Y))
        self.assertTrue(bracket(X, Y).is_zero(1e-9))

    def test_validate_witness(self):
        ctx = SymmetricPairContext(SU3_U2)
        Y = ctx.phi(LieVector.imaginary_diagonal((1, 1, -2)))
        X = ctx.complete_zero_plane(Y)
        self.assertTrue(validate_witness(ctx, X, Y, []))
        # a constraint along X breaks horizontality
        self.assertFalse(validate_witness(ctx, X, Y, [X]))
        self.assertFalse(validate_witness(ctx, X, X, []))


class HorizontalityReportTests(unittest.TestCase):
    def test_empty_range(self):
        with self.assertRaises(ValueError):
            HorizontalityReport(0.0, 1.0, -1.0)

    def test_to_dict(self):
        report = HorizontalityReport(-2.0, 1.0, 1.0)
        self.assertIsNone(report.valid)
        self.assertEqual(
            report.to_dict(),
            {'residual': -2.0, 'range_min': 1.0, 'range_max': 1.0, 'witness_valid': None},
        )

    def test_found_without_witness_is_invalid(self):
        report = HorizontalityReport(0.0, -1.0, 1.0, found=True)
        self.assertTrue(report.found)
        self.assertIsNone(report.witness)
        self.assertIs(report.valid, False)
        self.assertIs(report.to_dict()['witness_valid'], False)
        self.assertFalse(HorizontalityReport(-2.0, 1.0, 1.0).found)


if __name__ == "__main__":
    unittest.main()
