"""
Tests for oracle app.
"""
import cmath
import math

import numpy as np
import scipy.linalg
from django.test import SimpleTestCase

from apps.states.factories import CoherentKetFactory, DriveParamsFactory, DyadEnsembleFactory, FockKetFactory
from apps.states.models import Coherent, Fock, OperatorEnsemble, ProductKet, StateFamily
from apps.states.services import build_family_state, mixture, partial_trace, superposition
from apps.weyl.engine import drive_lambda, weyl
from apps.weyl.models import DriveAt
from config.exceptions import OracleGuardError, StateError
from .expm import expm
from .models import DenseOperator, TruncatedSpace
from .services import (
    coherent_tail_mass, displacement_matrix, embed_state, ladder_matrices, oracle_partial_trace,
    oracle_weyl, oracle_weyl_dense, space_for,
)


def random_ket(rng, modes, kind):
    if kind == 'fock':
        return ProductKet(tuple(Fock(int(n)) for n in rng.integers(0, 6, modes)))
    radius = math.sqrt(2) * rng.random(modes)
    angle = 2 * math.pi * rng.random(modes)
    return ProductKet(tuple(Coherent(r * cmath.exp(1j * a)) for r, a in zip(radius, angle)))


def random_state(rng, modes, kind, max_amplitude=math.sqrt(2)):
    """Random pure superposition or two-component mixture of product kets."""
    def ket():
        k = random_ket(rng, modes, kind)
        if kind == 'coherent':
            k = ProductKet(tuple(Coherent(s.amplitude * max_amplitude / math.sqrt(2)) for s in k.modes))
        return k

    def pure():
        kets = [ket() for _ in range(rng.integers(1, 4))]
        coefficients = rng.normal(size=len(kets)) + 1j * rng.normal(size=len(kets))
        try:
            return superposition(list(coefficients), kets)
        except StateError:
            return OperatorEnsemble.dyad(kets[0])

    if rng.random() < 0.5:
        return pure()
    p = rng.uniform(0.1, 0.9)
    return mixture([(p, pure()), (1 - p, pure())])


def random_drive(rng, modes, scale=0.5):
    radius = scale * rng.random(modes)
    angle = 2 * math.pi * rng.random(modes)
    return DriveAt(tuple(r * cmath.exp(1j * a) for r, a in zip(radius, angle)))


class ExpmTests(SimpleTestCase):
    """Tests for the scaling-and-squaring exponential."""

    def test_matches_scipy(self):
        rng = np.random.default_rng(1)
        for scale in (0.1, 1.0, 8.0):
            a = scale * (rng.normal(size=(12, 12)) + 1j * rng.normal(size=(12, 12)))
            expected = scipy.linalg.expm(a)
            self.assertLess(np.max(np.abs(expm(a) - expected)) / np.max(np.abs(expected)), 1e-12)

    def test_zero_matrix(self):
        np.testing.assert_array_equal(expm(np.zeros((3, 3))), np.eye(3))

    def test_diagonal(self):
        d = np.array([0.2, -1.0, 3.5j])
        np.testing.assert_allclose(expm(np.diag(d)), np.diag(np.exp(d)), rtol=1e-13)


class LadderMatrixTests(SimpleTestCase):
    """Tests for ladder_matrices."""

    def test_smallest_space(self):
        a, a_dagger = ladder_matrices(TruncatedSpace(1))
        np.testing.assert_array_equal(a.matrix, [[0, 1], [0, 0]])
        np.testing.assert_array_equal(a_dagger.matrix, [[0, 0], [1, 0]])

    def test_commutator_truncation(self):
        """Test [a, a^dagger] = I except the last diagonal entry, which is -cutoff."""
        cutoff = 6
        a, a_dagger = ladder_matrices(TruncatedSpace(cutoff))
        commutator = (a @ a_dagger).matrix - (a_dagger @ a).matrix
        expected = np.eye(cutoff + 1)
        expected[cutoff, cutoff] = -cutoff
        np.testing.assert_allclose(commutator, expected, atol=1e-14)

    def test_number_operator(self):
        a, a_dagger = ladder_matrices(TruncatedSpace(5, modes=2))
        number = (a_dagger @ a).matrix
        np.testing.assert_allclose(number, np.diag(np.arange(6)), atol=1e-14)
        self.assertEqual(a.space.modes, 1)


class DisplacementMatrixTests(SimpleTestCase):
    """Tests for displacement_matrix."""

    def setUp(self):
        self.space = TruncatedSpace(40)

    def test_zero_is_identity(self):
        np.testing.assert_allclose(displacement_matrix(0, self.space).matrix, np.eye(41), atol=1e-15)

    def test_vacuum_element(self):
        """Test <0|D(0.3)|0> = exp(-0.045)."""
        value = displacement_matrix(0.3, self.space).matrix[0, 0]
        self.assertAlmostEqual(value, math.exp(-0.045), delta=1e-12)
        self.assertAlmostEqual(value.real, 0.955997, places=6)

    def test_unitarity(self):
        """Test D D^dagger = I on the guarded block for |z| <= 1."""
        for z in (1.0, 0.7j, -0.5 + 0.5j):
            d = displacement_matrix(z, self.space)
            block = 40 - math.ceil(5 * abs(z))
            product = (d @ d.adjoint()).matrix[:block, :block]
            self.assertLess(np.max(np.abs(product - np.eye(block))), 1e-10)

    def test_inverse(self):
        z = 0.4 - 0.2j
        product = displacement_matrix(z, self.space).matrix @ displacement_matrix(-z, self.space).matrix
        self.assertLess(np.max(np.abs(product - np.eye(41))), 1e-10)

    def test_first_column_is_coherent_state(self):
        """Test D(z)|0> has Poisson populations."""
        z = 1.0
        column = displacement_matrix(z, self.space).matrix[:, 0]
        for n in range(10):
            self.assertAlmostEqual(abs(column[n]) ** 2, math.exp(-1) / math.factorial(n), delta=1e-12)

    def test_drive_guard(self):
        with self.assertRaises(OracleGuardError):
            displacement_matrix(1.2, TruncatedSpace(20))


class EmbedStateTests(SimpleTestCase):
    """Tests for embed_state."""

    def test_fock_dyad(self):
        rho = DyadEnsembleFactory(ket=FockKetFactory())
        dense = embed_state(rho, TruncatedSpace(3, modes=2))
        expected = np.zeros((16, 16))
        expected[4, 4] = 1.0
        np.testing.assert_array_equal(dense.matrix, expected)

    def test_coherent_populations(self):
        rho = DyadEnsembleFactory(ket=CoherentKetFactory(amplitudes=(1.0,)))
        dense = embed_state(rho, TruncatedSpace(40))
        populations = np.real(np.diag(dense.matrix))
        for n in range(12):
            self.assertAlmostEqual(populations[n], math.exp(-1) / math.factorial(n), delta=1e-14)

    def test_entangled_coherent_trace(self):
        rho = build_family_state(StateFamily.ENT_COHERENT2, (1, 0))
        dense = embed_state(rho, TruncatedSpace(40, modes=2))
        self.assertLess(abs(dense.trace() - 1), 1e-10)

    def test_tail_guard(self):
        """Test cutoff 2 cannot hold |A| = sqrt2."""
        self.assertGreater(coherent_tail_mass(math.sqrt(2), 2), 0.3)
        rho = DyadEnsembleFactory(ket=CoherentKetFactory(amplitudes=(math.sqrt(2),)))
        with self.assertRaises(OracleGuardError):
            embed_state(rho, TruncatedSpace(2))

    def test_occupation_guard(self):
        rho = DyadEnsembleFactory(ket=FockKetFactory(occupations=(4,)))
        with self.assertRaises(OracleGuardError):
            embed_state(rho, TruncatedSpace(3))

    def test_dense_dimension_guard(self):
        rho = build_family_state(StateFamily.SEP_NUMBER3, (0, 1, 2))
        with self.assertRaises(OracleGuardError):
            embed_state(rho, TruncatedSpace(40, modes=3))

    def test_vector_dimension_guard(self):
        with self.assertRaises(OracleGuardError):
            TruncatedSpace(40, modes=4)


class OracleWeylTests(SimpleTestCase):
    """Tests for oracle_weyl against the closed-form engine."""

    def test_zero_drive(self):
        rho = build_family_state(StateFamily.ENT_COHERENT2, (1, 0))
        value = oracle_weyl(rho, DriveAt((0, 0)), space_for(rho, 40))
        self.assertLess(abs(value - 1), 1e-10)

    def test_single_mode_vacuum(self):
        rho = DyadEnsembleFactory(ket=FockKetFactory(occupations=(0,)))
        z = 0.45 * cmath.exp(0.3j)
        self.assertLess(abs(oracle_weyl(rho, DriveAt((z,)), space_for(rho, 40)) - math.exp(-abs(z) ** 2 / 2)), 1e-10)

    def test_separable_number_joint(self):
        rho = build_family_state(StateFamily.SEP_NUMBER2, (1, 0))
        at = drive_lambda(DriveParamsFactory(), 0.0)
        self.assertLess(abs(oracle_weyl(rho, at, space_for(rho, 40)) - weyl(rho, at)), 1e-10)

    def test_dense_and_vector_paths_agree(self):
        rho = build_family_state(StateFamily.ENT_COHERENT2, (0.5j, -0.3))
        space = TruncatedSpace(15, modes=2)
        at = DriveAt((0.2 + 0.1j, -0.3j))
        self.assertLess(abs(oracle_weyl(rho, at, space) - oracle_weyl_dense(embed_state(rho, space), at)), 1e-12)

    def test_engine_oracle_equivalence(self):
        """Test 200 random states and drives agree with the closed form to 1e-8."""
        rng = np.random.default_rng(2024)
        deviation = 0.0
        for case in range(200):
            modes = int(rng.integers(1, 4))
            kind = 'fock' if case % 2 else 'coherent'
            rho = random_state(rng, modes, kind)
            at = random_drive(rng, modes)
            deviation = max(deviation, abs(weyl(rho, at) - oracle_weyl(rho, at, space_for(rho, 40))))
        self.assertLess(deviation, 1e-8)

    def test_fock_element_against_matrix(self):
        """Test <3|D(z)|5> from the engine against the dense matrix."""
        z = 0.3 + 0.2j
        rho = OperatorEnsemble.dyad(ProductKet.fock(5), ProductKet.fock(3))
        self.assertLess(abs(weyl(rho, DriveAt((z,))) - displacement_matrix(z, TruncatedSpace(40)).matrix[3, 5]), 1e-12)

    def test_coherent_element_against_matrix(self):
        """Test <A|D(z)|B> for A = 1, B = 0.5i, z = 0.2 - 0.1i."""
        rho = OperatorEnsemble.dyad(ProductKet.coherent(0.5j), ProductKet.coherent(1.0))
        at = DriveAt((0.2 - 0.1j,))
        self.assertLess(abs(weyl(rho, at) - oracle_weyl(rho, at, TruncatedSpace(40))), 1e-10)

    def test_cutoff_convergence(self):
        """Test cutoff 20 and 40 agree to 1e-9."""
        rng = np.random.default_rng(99)
        for case in range(30):
            modes = int(rng.integers(1, 4))
            kind = 'fock' if case % 2 else 'coherent'
            rho = random_state(rng, modes, kind, max_amplitude=1.0)
            at = random_drive(rng, modes)
            coarse = oracle_weyl(rho, at, space_for(rho, 20))
            fine = oracle_weyl(rho, at, space_for(rho, 40))
            self.assertLess(abs(coarse - fine), 1e-9)

    def test_mode_mismatch(self):
        rho = build_family_state(StateFamily.SEP_NUMBER2, (1, 0))
        with self.assertRaises(StateError):
            oracle_weyl(rho, DriveAt((0.1,)), TruncatedSpace(10, modes=2))


class OraclePartialTraceTests(SimpleTestCase):
    """Tests for oracle_partial_trace."""

    def test_product_state_factor(self):
        space = TruncatedSpace(4, modes=2)
        rho = DyadEnsembleFactory(ket=FockKetFactory(occupations=(2, 1)))
        reduced = oracle_partial_trace(embed_state(rho, space), 1)
        expected = embed_state(DyadEnsembleFactory(ket=FockKetFactory(occupations=(2,))), TruncatedSpace(4))
        np.testing.assert_array_equal(reduced.matrix, expected.matrix)

    def test_entangled_coherent_reduction(self):
        """Test dense and closed-form reductions of the entangled coherent state agree."""
        rho = build_family_state(StateFamily.ENT_COHERENT2, (1, 0))
        space = TruncatedSpace(40, modes=2)
        dense = oracle_partial_trace(embed_state(rho, space), 1)
        closed = embed_state(partial_trace(rho, 1), TruncatedSpace(40))
        self.assertLess(np.max(np.abs(dense.matrix - closed.matrix)), 1e-10)

    def test_trace_preserved(self):
        rho = build_family_state(StateFamily.ENT_COHERENT3, (0, 0.5, 0.3j))
        space = TruncatedSpace(11, modes=3)
        dense = embed_state(rho, space)
        for mode in range(3):
            self.assertLess(abs(oracle_partial_trace(dense, mode).trace() - dense.trace()), 1e-12)

    def test_invalid_mode(self):
        dense = embed_state(DyadEnsembleFactory(), TruncatedSpace(3, modes=2))
        with self.assertRaises(StateError):
            oracle_partial_trace(dense, 2)
        with self.assertRaises(StateError):
            oracle_partial_trace(oracle_partial_trace(dense, 0), 0)

    def test_shape_validation(self):
        with self.assertRaises(OracleGuardError):
            DenseOperator(np.eye(3), TruncatedSpace(3))
