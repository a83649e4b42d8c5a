"""
Dense matrix exponential by scaling and squaring around a Taylor core.
"""
import math

import numpy as np

TAYLOR_DEGREE = 18
SCALED_NORM = 0.5


def one_norm(a):
    """Maximum absolute column sum."""
    return float(np.max(np.sum(np.abs(a), axis=0)))


def expm(a, degree=TAYLOR_DEGREE, threshold=SCALED_NORM):
    """
    exp(a) for a dense square matrix.

    a is scaled by 2^-s until its one-norm is at most `threshold`, the
    exponential of the scaled matrix is summed to `degree` Taylor terms and
    the result is squared s times.
    """
    a = np.asarray(a, dtype=complex)
    norm = one_norm(a)
    squarings = math.ceil(math.log2(norm / threshold)) if norm > threshold else 0
    scaled = a / (2 ** squarings)

    identity = np.eye(a.shape[0], dtype=complex)
    result = identity.copy()
    term = identity
    for k in range(1, degree + 1):
        term = term @ scaled / k
        result = result + term

    for _ in range(squarings):
        result = result @ result
    return result
