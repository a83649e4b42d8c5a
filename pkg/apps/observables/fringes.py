"""
Fringe observables: intensity, visibility, phase shift and SQUID currents.
"""
import cmath
import math

import numpy as np

from config.exceptions import EngineError
from .models import FringeFit, FringeQuery


def intensity(fq):
    """I(x) = 1 + |w| cos(x + arg w) for equal splitting between the two paths."""
    return 1.0 + abs(fq.w) * math.cos(fq.x + phase_shift(fq.w))


def intensity_profile(x, w):
    """Vectorized intensity over an array of screen coordinates."""
    fq = FringeQuery(0.0, w)
    return 1.0 + abs(fq.w) * np.cos(np.asarray(x, dtype=float) + phase_shift(fq.w))


def visibility(w):
    return abs(complex(w))


def phase_shift(w):
    """arg w in (-pi, pi]; zero when w = 0, where the phase is undefined."""
    w = complex(w)
    if w == 0:
        return 0.0
    phase = cmath.phase(w)
    return math.pi if phase == -math.pi else phase


def phase_is_undefined(w):
    return complex(w) == 0


def fit_fringes(x, samples):
    """
    Recover visibility and phase shift from sampled intensities.

    Solves I(x) = c + a cos x - b sin x by linear least squares, then
    |w| = hypot(a, b) and arg w = atan2(b, a).
    """
    x = np.asarray(x, dtype=float)
    samples = np.asarray(samples, dtype=float)
    if x.shape != samples.shape or x.size < 3:
        raise EngineError('Fringe fit needs at least three matching samples', code='invalid_argument')
    design = np.column_stack([np.ones_like(x), np.cos(x), -np.sin(x)])
    (offset, a, b), *_ = np.linalg.lstsq(design, samples, rcond=None)
    residual = float(np.max(np.abs(design @ np.array([offset, a, b]) - samples)))
    return FringeFit(
        visibility=float(math.hypot(a, b)),
        phase_shift=phase_shift(complex(a, b)),
        offset=float(offset),
        residual=residual,
    )


def squid_current(w, i_cr):
    """Current in a single-junction SQUID ring, I = I_cr Im w."""
    if i_cr <= 0:
        raise EngineError(f'Critical current must be positive, got {i_cr}', code='invalid_argument')
    return i_cr * complex(w).imag


def joint_squid_current(signed_weyl, i_cr):
    """
    Expectation of the product of the currents in all rings.

    Args:
        signed_weyl: mapping from sign tuples (s_1, ..., s_n), s_k = +-1, to
            W(s_1 lambda_1, ..., s_n lambda_n)
        i_cr: critical current shared by the rings

    Returns:
        I_cr^n (2i)^-n sum_s (prod_k s_k) W(s lambda), which is real
    """
    if i_cr <= 0:
        raise EngineError(f'Critical current must be positive, got {i_cr}', code='invalid_argument')
    if not signed_weyl:
        raise EngineError('No signed Weyl values supplied', code='invalid_argument')
    modes = len(next(iter(signed_weyl)))
    if len(signed_weyl) != 2 ** modes:
        raise EngineError(f'Expected {2 ** modes} signed Weyl values, got {len(signed_weyl)}', code='invalid_argument')
    total = sum((math.prod(signs) * complex(w) for signs, w in signed_weyl.items()), 0j)
    return (i_cr ** modes * total / (2j) ** modes).real
