"""
Weyl engine value objects.
"""
import math
from dataclasses import dataclass


@dataclass(frozen=True)
class DriveAt:
    """Displacement parameters lambda_i, one per mode, at a single time."""
    lambdas: tuple

    def __post_init__(self):
        object.__setattr__(self, 'lambdas', tuple(complex(z) for z in self.lambdas))

    @property
    def mode_count(self):
        return len(self.lambdas)

    def only(self, mode):
        """Same drive with every lambda except `mode` set to zero."""
        return DriveAt(tuple(z if i == mode else 0j for i, z in enumerate(self.lambdas)))

    def without(self, mode):
        """Drive on the remaining modes after removing `mode`."""
        return DriveAt(self.lambdas[:mode] + self.lambdas[mode + 1:])

    def negated(self):
        return DriveAt(tuple(-z for z in self.lambdas))


@dataclass(frozen=True)
class CorrelatorValue:
    """Joint Weyl value, per-mode marginals and c = joint - product of marginals."""
    joint: complex
    marginals: tuple
    c: complex

    @property
    def marginal_product(self):
        return math.prod(self.marginals, start=1 + 0j)


@dataclass(frozen=True)
class NumberStateWeyl:
    """Closed-form bipartite number-state Weyl values at one drive."""
    marginal: float
    joint_sep: float
    joint_ent: float


@dataclass(frozen=True)
class WeylResult:
    """Weyl value with the fringe quantities it determines."""
    value: complex
    visibility: float
    phase_shift: float
    phase_undefined: bool = False

    def to_dict(self):
        return {
            're': self.value.real,
            'im': self.value.imag,
            'visibility': self.visibility,
            'phase_shift': self.phase_shift,
            'phase_undefined': self.phase_undefined,
        }
