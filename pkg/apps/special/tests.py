"""
Tests for special app.
"""
import math
from fractions import Fraction

from django.test import SimpleTestCase

from config.exceptions import EngineError
from .laguerre import LaguerreQuery, generalized_laguerre, laguerre, log_factorial


def laguerre_series(n, alpha, x):
    """Direct finite series sum_k (-1)^k C(n+alpha, n-k) x^k / k!."""
    x = Fraction(x)
    total = Fraction(0)
    for k in range(n + 1):
        total += (-1) ** k * math.comb(n + alpha, n - k) * x ** k / math.factorial(k)
    return float(total)


class LaguerreTests(SimpleTestCase):
    """Tests for the Laguerre recurrence."""

    def test_degree_zero_is_one(self):
        """Test L_0^alpha is identically one."""
        for alpha in (-3, 0, 4):
            self.assertEqual(laguerre(LaguerreQuery(0, alpha, 1.7)), 1.0)

    def test_degree_one_closed_forms(self):
        """Test L_1(x) = 1 - x and L_1^-1(x) = -x."""
        x = 0.045862666
        self.assertAlmostEqual(generalized_laguerre(1, 0, x), 0.954137334, places=12)
        self.assertAlmostEqual(generalized_laguerre(1, -1, x), -0.045862666, places=12)

    def test_matches_series_small_case(self):
        """Test L_2^1(0.5) against the finite series."""
        self.assertAlmostEqual(generalized_laguerre(2, 1, 0.5), laguerre_series(2, 1, 0.5), places=14)

    def test_matches_series_on_grid(self):
        """Test recurrence against the series for n <= 30, alpha in [-n, 10], x in [0, 4]."""
        for n in range(0, 31, 3):
            for alpha in range(-n, 11, 2):
                for x in (0.0, 0.045862666, 0.7, 2.3, 4.0):
                    expected = laguerre_series(n, alpha, x)
                    actual = generalized_laguerre(n, alpha, x)
                    scale = max(1.0, abs(expected))
                    self.assertLess(abs(actual - expected) / scale, 1e-10, (n, alpha, x))

    def test_value_at_origin_is_binomial(self):
        """Test L_n^alpha(0) = C(n+alpha, n) for alpha >= 0."""
        for n in range(12):
            for alpha in range(6):
                self.assertAlmostEqual(generalized_laguerre(n, alpha, 0.0), math.comb(n + alpha, n), places=6)

    def test_rejects_negative_degree_or_argument(self):
        """Test invalid queries are rejected."""
        with self.assertRaises(EngineError):
            LaguerreQuery(-1, 0, 0.1)
        with self.assertRaises(EngineError):
            LaguerreQuery(2, 0, -0.1)


class LogFactorialTests(SimpleTestCase):
    """Tests for log_factorial."""

    def test_small_values(self):
        """Test ln 0! = ln 1! = 0 and ln 5! = ln 120."""
        self.assertEqual(log_factorial(0), 0.0)
        self.assertEqual(log_factorial(1), 0.0)
        self.assertAlmostEqual(log_factorial(5), 4.787491743, places=9)

    def test_agrees_with_exact_factorial(self):
        """Test twelve significant digits against exact integer factorials."""
        for n in range(2, 60):
            expected = math.log(math.factorial(n))
            self.assertLess(abs(log_factorial(n) - expected) / expected, 1e-12)

    def test_rejects_negative(self):
        """Test negative input raises."""
        with self.assertRaises(EngineError):
            log_factorial(-2)
