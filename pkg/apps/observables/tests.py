"""
Tests for observables app.
"""
import cmath
import math

import numpy as np
from django.test import SimpleTestCase

from apps.states.factories import CoherentKetFactory, DriveParamsFactory, DyadEnsembleFactory, all_built_states
from apps.states.models import StateFamily
from apps.states.services import build_family_state
from apps.weyl.engine import drive_lambda, signed_weyl_table, weyl
from config.exceptions import EngineError
from .fringes import (
    fit_fringes, intensity, intensity_profile, joint_squid_current, phase_shift, squid_current, visibility,
)
from .models import FringeQuery

X = 2 * math.pi / 137


class IntensityTests(SimpleTestCase):
    """Tests for intensity."""

    def test_washed_out(self):
        """Test w = 0 gives I = 1 everywhere."""
        for x in np.linspace(-math.pi, math.pi, 7):
            self.assertEqual(intensity(FringeQuery(x, 0)), 1.0)

    def test_full_constructive(self):
        self.assertAlmostEqual(intensity(FringeQuery(0.0, 1)), 2.0, places=15)

    def test_shifted_maximum(self):
        """Test w = 0.5 exp(i pi/3), x = -pi/3 gives 1.5."""
        self.assertAlmostEqual(intensity(FringeQuery(-math.pi / 3, 0.5 * cmath.exp(1j * math.pi / 3))), 1.5, places=15)

    def test_extrema(self):
        """Test the extrema over x are 1 +- |w|."""
        w = 0.37 * cmath.exp(-2.1j)
        arg = phase_shift(w)
        self.assertAlmostEqual(intensity(FringeQuery(-arg, w)), 1 + abs(w), delta=1e-12)
        self.assertAlmostEqual(intensity(FringeQuery(math.pi - arg, w)), 1 - abs(w), delta=1e-12)
        profile = intensity_profile(np.linspace(0, 2 * math.pi, 2001), w)
        self.assertLessEqual(profile.max(), 1 + abs(w) + 1e-12)
        self.assertGreaterEqual(profile.min(), 1 - abs(w) - 1e-12)

    def test_rejects_unphysical_weyl(self):
        with self.assertRaises(EngineError):
            FringeQuery(0.0, 1.01)


class VisibilityTests(SimpleTestCase):
    """Tests for visibility and phase_shift."""

    def test_real_value(self):
        self.assertEqual(visibility(0.7), 0.7)
        self.assertEqual(phase_shift(0.7), 0.0)

    def test_phase_range(self):
        """Test arg is reported in (-pi, pi]."""
        self.assertEqual(phase_shift(complex(-1.0, -0.0)), math.pi)
        self.assertEqual(phase_shift(-1), math.pi)
        self.assertAlmostEqual(phase_shift(-1j), -math.pi / 2, places=15)

    def test_zero_phase_convention(self):
        self.assertEqual(phase_shift(0), 0.0)

    def test_separable_number_marginal_visibility(self):
        """Test the sep_number2(1, 0) marginal visibility exp(-q^2/2)(2 - q^2)/2."""
        rho = build_family_state(StateFamily.SEP_NUMBER2, (1, 0))
        at = drive_lambda(DriveParamsFactory(), 0.0).only(0)
        expected = math.exp(-X / 2) * (2 - X) / 2
        self.assertAlmostEqual(visibility(weyl(rho, at)), expected, delta=1e-14)
        self.assertAlmostEqual(expected, 0.954918, places=6)

    def test_sampled_contrast_equals_modulus(self):
        """Test (I_max - I_min)/(I_max + I_min) over a fine scan equals |w|."""
        w = 0.8 * cmath.exp(0.4j)
        x = np.linspace(-math.pi, math.pi, 200001)
        profile = intensity_profile(x, w)
        contrast = (profile.max() - profile.min()) / (profile.max() + profile.min())
        self.assertAlmostEqual(contrast, abs(w), delta=1e-9)

    def test_visibility_bounded_for_built_states(self):
        rng = np.random.default_rng(3)
        for family, values, rho in all_built_states():
            drive = DriveParamsFactory(omegas=(1.2e-4, 1.1e-4, 1.0e-4)[:rho.mode_count], xi=2.0)
            for t in rng.uniform(0, 1e5, 10):
                value = visibility(weyl(rho, drive_lambda(drive, t)))
                self.assertGreaterEqual(value, 0.0)
                self.assertLessEqual(value, 1 + 1e-12)


class FitFringesTests(SimpleTestCase):
    """Tests for fit_fringes."""

    def test_recovers_modulus_and_phase(self):
        """Test 1000-sample fits reproduce |w| and arg w."""
        x = np.linspace(0, 2 * math.pi, 1000, endpoint=False)
        for w in [0.93, 0.2 * cmath.exp(2.5j), 1e-5 * cmath.exp(-1j), cmath.exp(-3.0j)]:
            with self.subTest(w=w):
                fit = fit_fringes(x, intensity_profile(x, w))
                self.assertAlmostEqual(fit.visibility, abs(w), delta=1e-9)
                self.assertAlmostEqual(fit.phase_shift, phase_shift(w), delta=1e-9)
                self.assertAlmostEqual(fit.offset, 1.0, delta=1e-12)
                self.assertLess(fit.residual, 1e-12)

    def test_rejects_short_input(self):
        with self.assertRaises(EngineError):
            fit_fringes([0.0, 1.0], [1.0, 1.5])


class SquidCurrentTests(SimpleTestCase):
    """Tests for the SQUID current mapping."""

    def test_real_weyl_gives_no_current(self):
        self.assertEqual(squid_current(0.8, 1.0), 0.0)

    def test_imaginary_weyl(self):
        self.assertEqual(squid_current(1j, 2.0), 2.0)

    def test_vacuum_at_time_zero(self):
        """Test the vacuum marginal at lambda = i q is real, so no current flows."""
        rho = DyadEnsembleFactory(ket=CoherentKetFactory(amplitudes=(0.0,)))
        w = weyl(rho, drive_lambda(DriveParamsFactory(omegas=(1e-4,)), 0.0))
        self.assertAlmostEqual(squid_current(w, 1.0), 0.0, delta=1e-16)

    def test_nonpositive_critical_current(self):
        with self.assertRaises(EngineError):
            squid_current(0.5j, 0.0)

    def test_joint_current_factorizes_for_product_states(self):
        """Test <I_A I_B> = <I_A><I_B> for a product coherent state."""
        rho = DyadEnsembleFactory(ket=CoherentKetFactory(amplitudes=(0.6 + 0.2j, -0.4j)))
        at = drive_lambda(DriveParamsFactory(xi=2.5), 3.7e3)
        joint = joint_squid_current(signed_weyl_table(rho, at), 1.5)
        single = [squid_current(weyl(rho, at.only(mode)), 1.5) for mode in range(2)]
        self.assertAlmostEqual(joint, single[0] * single[1], delta=1e-13)

    def test_joint_current_sees_entanglement(self):
        """Test the entangled coherent state correlates the two currents."""
        rho = build_family_state(StateFamily.ENT_COHERENT2, (1, 0))
        drive = DriveParamsFactory(xi=2.5)
        deviations = []
        for t in np.linspace(0, 3.2e5, 20):
            at = drive_lambda(drive, t)
            joint = joint_squid_current(signed_weyl_table(rho, at), 1.0)
            single = [squid_current(weyl(rho, at.only(mode)), 1.0) for mode in range(2)]
            deviations.append(abs(joint - single[0] * single[1]))
        self.assertGreater(max(deviations), 1e-4)

    def test_incomplete_table(self):
        with self.assertRaises(EngineError):
            joint_squid_current({(1, 1): 0.5, (1, -1): 0.5}, 1.0)
