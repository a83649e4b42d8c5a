"""
Observable value objects.
"""
from dataclasses import dataclass

from config.exceptions import EngineError

WEYL_BOUND_TOLERANCE = 1e-12


@dataclass(frozen=True)
class FringeQuery:
    """Screen coordinate x (phase difference of the two paths) and Weyl value w."""
    x: float
    w: complex

    def __post_init__(self):
        object.__setattr__(self, 'w', complex(self.w))
        if abs(self.w) > 1 + WEYL_BOUND_TOLERANCE:
            raise EngineError(f'|w| = {abs(self.w)!r} exceeds 1', code='invalid_argument')


@dataclass(frozen=True)
class FringeFit:
    """Least-squares cosine fit of sampled intensities."""
    visibility: float
    phase_shift: float
    offset: float
    residual: float
