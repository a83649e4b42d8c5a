"""
Tests for weyl app.
"""
import cmath
import math

import numpy as np
from django.test import SimpleTestCase
from hypothesis import given, settings, strategies as st

from apps.special.laguerre import generalized_laguerre
from apps.states.factories import (
    CoherentKetFactory, DriveParamsFactory, DyadEnsembleFactory, FockKetFactory, all_built_states,
)
from apps.states.models import DriveParams, ProductKet, StateFamily
from apps.states.services import build_family_state, overlap, partial_trace, tensor_product
from config.exceptions import EngineError, StateError
from .engine import (
    beat_frequency, closed_form_number_correlators, closed_form_number_weyl, correlator,
    displacement_element_coherent, displacement_element_fock, drive_lambda, signed_weyl_table,
    tripartite_interference_term, weyl, weyl_result,
)
from .models import DriveAt

X = 2 * math.pi / 137
Q = math.sqrt(X)


def random_drive(rng, modes, scale=0.5):
    radius = scale * rng.random(modes)
    angle = 2 * math.pi * rng.random(modes)
    return DriveAt(tuple(r * cmath.exp(1j * a) for r, a in zip(radius, angle)))


class DriveLambdaTests(SimpleTestCase):
    """Tests for drive_lambda."""

    def test_time_zero(self):
        """Test lambda = i q at t = 0."""
        at = drive_lambda(DriveParams((1e-4,), e_charge=0.2 * math.sqrt(2)), 0.0)
        self.assertAlmostEqual(at.lambdas[0], 0.2j, places=15)

    def test_half_period(self):
        """Test lambda_1 = -i q at t = pi / omega_1."""
        drive = DriveParamsFactory()
        at = drive_lambda(drive, math.pi / 1.2e-4)
        self.assertAlmostEqual(at.lambdas[0], -1j * drive.q, places=12)
        self.assertEqual(at.mode_count, 2)

    def test_rejects_infinite_time(self):
        with self.assertRaises(EngineError):
            drive_lambda(DriveParamsFactory(), math.inf)


class DisplacementElementTests(SimpleTestCase):
    """Tests for the Fock and coherent displacement matrix elements."""

    def test_vacuum_element(self):
        """Test <0|D(z)|0> = exp(-|z|^2/2)."""
        z = 0.3 - 0.4j
        self.assertAlmostEqual(displacement_element_fock(0, 0, z), math.exp(-0.125), places=15)

    def test_one_photon_diagonal(self):
        """Test <1|D(z)|1> = exp(-|z|^2/2)(1 - |z|^2)."""
        z = 0.7j
        expected = math.exp(-0.245) * (1 - 0.49)
        self.assertAlmostEqual(displacement_element_fock(1, 1, z), expected, places=14)

    def test_coherent_amplitudes(self):
        """Test <m|D(z)|0> is the coherent-state amplitude exp(-|z|^2/2) z^m / sqrt(m!)."""
        z = 0.4 + 0.9j
        for m in range(8):
            expected = cmath.exp(-abs(z) ** 2 / 2) * z ** m / math.sqrt(math.factorial(m))
            self.assertAlmostEqual(displacement_element_fock(m, 0, z), expected, places=13)

    def test_lower_triangle_uses_conjugation(self):
        """Test <m|D(z)|n> = <n|D(-z)|m>* for m < n."""
        z = 0.3 + 0.2j
        self.assertAlmostEqual(
            displacement_element_fock(3, 5, z), displacement_element_fock(5, 3, -z).conjugate(), places=15
        )

    def test_columns_are_unit_vectors(self):
        """Test sum_m |<m|D(z)|n>|^2 = 1 (unitarity) with enough rows."""
        z = 0.8 - 0.3j
        for n in range(4):
            norm = sum(abs(displacement_element_fock(m, n, z)) ** 2 for m in range(60))
            self.assertAlmostEqual(norm, 1.0, places=12)

    def test_negative_index(self):
        with self.assertRaises(EngineError):
            displacement_element_fock(-1, 0, 0.1)

    def test_coherent_identity_displacement(self):
        """Test <A|D(0)|B> = <A|B>."""
        a, b = 1 + 0.2j, -0.5j
        value = displacement_element_coherent(a, b, 0)
        self.assertAlmostEqual(value, overlap(ProductKet.coherent(a), ProductKet.coherent(b)), places=15)

    def test_coherent_vacuum(self):
        """Test <0|D(z)|0> = exp(-|z|^2/2) in the coherent basis."""
        z = 0.2 - 0.1j
        self.assertAlmostEqual(displacement_element_coherent(0, 0, z), math.exp(-0.025), places=15)

    def test_coherent_matches_shifted_overlap(self):
        """Test <A|D(z)|B> = <A|B+z> exp((z B* - z* B)/2)."""
        for a, b, z in [(1, 0.5j, 0.2 - 0.1j), (-0.3 + 0.4j, 1.1, 0.5j), (0.0, 1.0, -0.45)]:
            a, b, z = complex(a), complex(b), complex(z)
            shifted = cmath.exp(-abs(a) ** 2 / 2 - abs(b + z) ** 2 / 2 + a.conjugate() * (b + z))
            expected = shifted * cmath.exp((z * b.conjugate() - z.conjugate() * b) / 2)
            self.assertAlmostEqual(displacement_element_coherent(a, b, z), expected, places=14)

    def test_coherent_matches_fock_expansion(self):
        """Test the coherent element against a truncated number-basis sum."""
        a, b, z = 1.0, 0.5j, 0.2 - 0.1j

        def amplitude(alpha, n):
            return cmath.exp(-abs(alpha) ** 2 / 2) * alpha ** n / math.sqrt(math.factorial(n))

        expected = sum(
            amplitude(a, m).conjugate() * displacement_element_fock(m, n, z) * amplitude(b, n)
            for m in range(30)
            for n in range(30)
        )
        self.assertAlmostEqual(displacement_element_coherent(a, b, z), expected, places=12)


class WeylTests(SimpleTestCase):
    """Tests for weyl."""

    def setUp(self):
        self.rng = np.random.default_rng(7)

    def test_zero_drive_gives_trace(self):
        """Test W(0) = 1 for every built state."""
        for family, values, rho in all_built_states():
            with self.subTest(family=family, values=values):
                at = DriveAt((0j,) * rho.mode_count)
                self.assertAlmostEqual(abs(weyl(rho, at) - 1), 0, delta=1e-12)

    def test_hermitian_symmetry_and_bound(self):
        """Test W(-lambda) = W(lambda)* and |W| <= 1 for 100 random drives per state."""
        for family, values, rho in all_built_states():
            with self.subTest(family=family, values=values):
                for _ in range(100):
                    at = random_drive(self.rng, rho.mode_count, scale=1.5)
                    value = weyl(rho, at)
                    self.assertLess(abs(weyl(rho, at.negated()) - value.conjugate()), 1e-12)
                    self.assertLessEqual(abs(value), 1 + 1e-12)

    def test_separable_number_marginal(self):
        """Test the single-mode marginal of sep_number2(1, 0)."""
        rho = build_family_state(StateFamily.SEP_NUMBER2, (1, 0))
        at = drive_lambda(DriveParamsFactory(), 12.0)
        expected = math.exp(-X / 2) * 0.5 * (generalized_laguerre(1, 0, X) + 1)
        self.assertAlmostEqual(weyl(rho, at.only(0)), expected, places=14)
        self.assertAlmostEqual(weyl(rho, at.only(1)), expected, places=14)

    def test_separable_number_joint_is_time_independent(self):
        """Test the joint Weyl of sep_number2(1, 0) is exp(-q^2) L_1(q^2)."""
        rho = build_family_state(StateFamily.SEP_NUMBER2, (1, 0))
        drive = DriveParamsFactory()
        expected = math.exp(-X) * (1 - X)
        for t in (0.0, 1e3, 3.3e4, 9e4):
            self.assertAlmostEqual(weyl(rho, drive_lambda(drive, t)), expected, places=14)

    def test_marginal_matches_partial_trace(self):
        """Test W(rho, lambda with zeros elsewhere) = W(reduced rho, lambda)."""
        for family, values, rho in all_built_states():
            at = random_drive(self.rng, rho.mode_count)
            for mode in range(rho.mode_count):
                with self.subTest(family=family, mode=mode):
                    lambdas = tuple(0j if i == mode else z for i, z in enumerate(at.lambdas))
                    reduced = weyl(partial_trace(rho, mode), DriveAt(lambdas).without(mode))
                    zeroed = weyl(rho, DriveAt(lambdas))
                    self.assertLess(abs(reduced - zeroed), 1e-12)

    def test_mode_mismatch(self):
        rho = build_family_state(StateFamily.SEP_NUMBER2, (1, 0))
        with self.assertRaises(StateError):
            weyl(rho, DriveAt((0.1j,)))

    @settings(max_examples=50, deadline=None)
    @given(
        t=st.floats(min_value=0, max_value=1e6, allow_nan=False),
        xi=st.floats(min_value=0.01, max_value=5.0),
    )
    def test_entangled_coherent_bound(self, t, xi):
        """Test |W| <= 1 for the tripartite entangled coherent state at any time and coupling."""
        rho = build_family_state(StateFamily.ENT_COHERENT3, (0, 1, math.sqrt(2)))
        drive = DriveParams((1.2e-4, 1.1e-4, 1.0e-4), xi=xi)
        self.assertLessEqual(abs(weyl(rho, drive_lambda(drive, t))), 1 + 1e-12)


class CorrelatorTests(SimpleTestCase):
    """Tests for correlator."""

    def setUp(self):
        self.rng = np.random.default_rng(11)
        self.drive = DriveParamsFactory()

    def test_separable_number_constant(self):
        """Test c_sep = -exp(-q^2) q^4 / 4, about -5.02e-4, for N1 = 1, N2 = 0."""
        rho = build_family_state(StateFamily.SEP_NUMBER2, (1, 0))
        value = correlator(rho, drive_lambda(self.drive, 0.0))
        reference = -math.exp(-X) * X ** 2 / 4
        self.assertAlmostEqual(value.c, reference, delta=1e-12)
        self.assertEqual(f'{abs(value.c):.0e}', '5e-04')
        self.assertAlmostEqual(value.c.imag, 0, delta=1e-15)

    def test_entangled_number_at_zero(self):
        """Test c_ent(0) = c_sep - exp(-q^2) q^2 for N1 = 1, N2 = 0."""
        rho = build_family_state(StateFamily.ENT_NUMBER2, (1, 0))
        value = correlator(rho, drive_lambda(self.drive, 0.0))
        expected = -math.exp(-X) * X ** 2 / 4 - math.exp(-X) * X
        self.assertAlmostEqual(value.c, expected, delta=1e-12)
        self.assertAlmostEqual(value.c.real, -0.0443091, places=6)

    def test_value_fields(self):
        """Test c equals joint minus the product of marginals."""
        rho = build_family_state(StateFamily.ENT_COHERENT2, (1, 0))
        value = correlator(rho, drive_lambda(self.drive, 5e3))
        self.assertEqual(len(value.marginals), 2)
        self.assertEqual(value.c, value.joint - value.marginal_product)

    def test_factorizable_null(self):
        """Test single-dyad product states give c = 0 at 100 random times."""
        states = [
            DyadEnsembleFactory(),
            DyadEnsembleFactory(ket=FockKetFactory(occupations=(3, 1, 2))),
            DyadEnsembleFactory(ket=CoherentKetFactory(amplitudes=(1.0, -0.5j))),
            DyadEnsembleFactory(ket=CoherentKetFactory(amplitudes=(0.3, 1 + 1j, math.sqrt(2)))),
        ]
        for rho in states:
            drive = DriveParams((1.2e-4, 1.1e-4, 1.0e-4)[:rho.mode_count], xi=3.0)
            for t in self.rng.uniform(0, 1e6, 100):
                self.assertLess(abs(correlator(rho, drive_lambda(drive, t)).c), 1e-12)

    def test_mixed_product_null(self):
        """Test rho_A (x) rho_B with mixed factors has c = 0."""
        rho_a = partial_trace(build_family_state(StateFamily.ENT_COHERENT2, (1, 0.5j)), 1)
        rho_b = partial_trace(build_family_state(StateFamily.SEP_COHERENT2, (0.2, -1)), 0)
        rho = tensor_product(rho_a, rho_b)
        for _ in range(20):
            self.assertLess(abs(correlator(rho, random_drive(self.rng, 2, scale=1.0)).c), 1e-12)

    def test_no_detuning_constancy(self):
        """Test c_ent is constant when omega_1 = omega_2."""
        rho = build_family_state(StateFamily.ENT_NUMBER2, (1, 0))
        drive = DriveParams((1.0e-4, 1.0e-4))
        series = np.array([correlator(rho, drive_lambda(drive, t)).c for t in np.linspace(0, 2e5, 1000)])
        self.assertLess(np.std(series.real), 1e-12)
        self.assertLess(np.std(series.imag), 1e-12)

    def test_entangled_oscillation_fit(self):
        """Test c_ent - c_sep = A cos(Omega t) with A = -exp(-q^2) q^2 over two periods."""
        rho_ent = build_family_state(StateFamily.ENT_NUMBER2, (1, 0))
        rho_sep = build_family_state(StateFamily.SEP_NUMBER2, (1, 0))
        omega = beat_frequency((1, 0), self.drive.omegas)
        scaled = np.linspace(0, 4 * math.pi, 400)
        diff = np.array([
            (correlator(rho_ent, drive_lambda(self.drive, s / omega)).c
             - correlator(rho_sep, drive_lambda(self.drive, s / omega)).c).real
            for s in scaled
        ])
        design = np.column_stack([np.cos(scaled), np.sin(scaled)])
        (a, b), *_ = np.linalg.lstsq(design, diff, rcond=None)
        self.assertLess(np.max(np.abs(design @ np.array([a, b]) - diff)), 1e-10)
        self.assertAlmostEqual(a, -math.exp(-X) * X, delta=1e-12)
        self.assertAlmostEqual(abs(a), 0.0438068, places=7)
        self.assertAlmostEqual(b, 0, delta=1e-12)


class ClosedFormTests(SimpleTestCase):
    """Tests for the closed-form number-state expressions."""

    def test_symmetric_separable_is_zero(self):
        """Test c_sep = 0 when N1 = N2."""
        for n in range(5):
            c_sep, c_ent = closed_form_number_correlators(n, n, 0.9, 1.3)
            self.assertAlmostEqual(c_sep, 0, delta=1e-15)
            self.assertAlmostEqual(c_ent, 0, delta=1e-15)

    def test_cosine_zero(self):
        """Test c_ent = c_sep at Omega t = pi/2."""
        c_sep, c_ent = closed_form_number_correlators(1, 0, Q, math.pi / 2)
        self.assertAlmostEqual(c_ent, c_sep, delta=1e-16)

    def test_matches_general_engine(self):
        """Test closed forms against correlator on built ensembles."""
        for n1, n2 in [(1, 0), (0, 1), (4, 2), (0, 3), (2, 2), (5, 1)]:
            drive = DriveParams((1.2e-4, 1.0e-4), xi=1.7)
            rho_sep = build_family_state(StateFamily.SEP_NUMBER2, (n1, n2))
            rho_ent = build_family_state(StateFamily.ENT_NUMBER2, (n1, n2))
            omega = beat_frequency((n1, n2), drive.omegas)
            for t in (0.0, 2.1e4, 7.7e4):
                with self.subTest(n1=n1, n2=n2, t=t):
                    at = drive_lambda(drive, t)
                    c_sep, c_ent = closed_form_number_correlators(n1, n2, drive.q, omega * t)
                    self.assertAlmostEqual(correlator(rho_sep, at).c, c_sep, delta=1e-12)
                    self.assertAlmostEqual(correlator(rho_ent, at).c, c_ent, delta=1e-12)

    def test_weyl_values(self):
        """Test marginal and joint values against the engine."""
        rho_ent = build_family_state(StateFamily.ENT_NUMBER2, (3, 1))
        drive = DriveParamsFactory()
        t = 4.4e4
        at = drive_lambda(drive, t)
        values = closed_form_number_weyl(3, 1, drive.q, beat_frequency((3, 1), drive.omegas) * t)
        self.assertAlmostEqual(weyl(rho_ent, at.only(0)), values.marginal, delta=1e-13)
        self.assertAlmostEqual(weyl(rho_ent, at), values.joint_ent, delta=1e-13)

    def test_negative_occupation(self):
        with self.assertRaises(EngineError):
            closed_form_number_correlators(-1, 0, Q, 0)


class BeatFrequencyTests(SimpleTestCase):
    """Tests for beat_frequency."""

    def test_bipartite(self):
        self.assertAlmostEqual(beat_frequency([1, 0], [1.2e-4, 1.0e-4]), 2.0e-5, delta=1e-18)

    def test_tripartite(self):
        self.assertAlmostEqual(beat_frequency([0, 1, 2], [1.2e-4, 1.1e-4, 1.0e-4]), 3.0e-5, delta=1e-18)

    def test_equal_numbers(self):
        self.assertEqual(beat_frequency([2, 2], [1.2e-4, 1.0e-4]), 0)

    def test_length_mismatch(self):
        with self.assertRaises(StateError):
            beat_frequency([1, 0, 2], [1.2e-4, 1.0e-4])


class TripartiteTests(SimpleTestCase):
    """Tests for the tripartite number-state interference term."""

    def test_difference_is_real_part_of_term(self):
        """Test W_ent - W_sep = Re(<N1|D|N2><N2|D|N3><N3|D|N1>)."""
        drive = DriveParams((1.2e-4, 1.1e-4, 1.0e-4), xi=2.0)
        for numbers in [(0, 1, 2), (2, 0, 0), (1, 3, 0)]:
            rho_ent = build_family_state(StateFamily.ENT_NUMBER3, numbers)
            rho_sep = build_family_state(StateFamily.SEP_NUMBER3, numbers)
            for t in (0.0, 1.3e4, 6.1e4):
                with self.subTest(numbers=numbers, t=t):
                    at = drive_lambda(drive, t)
                    difference = weyl(rho_ent, at) - weyl(rho_sep, at)
                    self.assertAlmostEqual(difference, tripartite_interference_term(numbers, at).real, delta=1e-13)

    def test_term_oscillates_at_tripartite_beat(self):
        """Test the interference term rotates as exp(-i Omega' t)."""
        numbers = (0, 1, 2)
        drive = DriveParams((1.2e-4, 1.1e-4, 1.0e-4))
        omega = beat_frequency(numbers, drive.omegas)
        t0 = tripartite_interference_term(numbers, drive_lambda(drive, 0.0))
        t1 = tripartite_interference_term(numbers, drive_lambda(drive, 1.0 / omega))
        self.assertAlmostEqual(t1 / t0, cmath.exp(-1j), places=10)


class SquidTableTests(SimpleTestCase):
    """Tests for signed_weyl_table."""

    def test_table_has_every_sign_pattern(self):
        rho = build_family_state(StateFamily.SEP_COHERENT3, (0, 1, math.sqrt(2)))
        table = signed_weyl_table(rho, DriveAt((0.1j, 0.2, -0.3j)))
        self.assertEqual(len(table), 8)
        self.assertAlmostEqual(table[(-1, -1, -1)], table[(1, 1, 1)].conjugate(), delta=1e-14)


class WeylResultTests(SimpleTestCase):
    """Tests for weyl_result."""

    def test_visibility_and_phase(self):
        result = weyl_result(0.5 * cmath.exp(1j * math.pi / 3))
        self.assertAlmostEqual(result.visibility, 0.5, places=15)
        self.assertAlmostEqual(result.phase_shift, math.pi / 3, places=15)
        self.assertFalse(result.phase_undefined)

    def test_zero_value_flags_phase(self):
        result = weyl_result(0)
        self.assertEqual(result.phase_shift, 0.0)
        self.assertTrue(result.phase_undefined)
        self.assertEqual(result.to_dict()['phase_undefined'], True)
