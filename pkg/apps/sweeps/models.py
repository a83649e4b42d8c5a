"""
Sweep models for TopoPhase.
"""
from dataclasses import dataclass, field

import numpy as np
from django.db import models
from django.utils.translation import gettext_lazy as _

from apps.states.models import DEFAULT_CHARGE, Normalization
from config.exceptions import ConfigError

BIPARTITE_OMEGAS = (1.2e-4, 1.0e-4)
TRIPARTITE_OMEGAS = (1.2e-4, 1.1e-4, 1.0e-4)


class FigurePreset(models.TextChoices):
    """Figure reproduction presets."""
    FIG2 = 'fig2', _('两模数态')
    FIG3 = 'fig3', _('两模相干态')
    FIG4 = 'fig4', _('三模数态')
    FIG5 = 'fig5', _('三模相干态')
    FIG6 = 'fig6', _('纠缠与可分离之差')


class AxisKind(models.TextChoices):
    """Horizontal axis of a sweep."""
    SCALED = 'scaled', _('拍频标度时间')
    RAW = 'raw', _('原始时间')


class OutputFormat(models.TextChoices):
    CSV = 'csv', 'CSV'
    JSON = 'json', 'JSON'


@dataclass(frozen=True)
class SweepConfig:
    """
    One time sweep: state, drive and time grid.

    `t_range` is in scaled-time units (None means the default range);
    `axis_omega` pins the scaling frequency instead of deriving it from the
    state.
    """
    state: str
    omegas: tuple
    xi: float = 1.0
    e_charge: float = DEFAULT_CHARGE
    t_range: tuple = None
    points: int = 1000
    normalization: str = Normalization.OVERLAP
    axis_omega: float = None
    label: str = ''

    def __post_init__(self):
        object.__setattr__(self, 'omegas', tuple(float(w) for w in self.omegas))
        if self.points < 2:
            raise ConfigError(f'Need at least 2 grid points, got {self.points}', errors={'points': 'min_value'})
        if self.t_range is not None:
            start, end = (float(v) for v in self.t_range)
            if not start < end:
                raise ConfigError(f'Time range start {start} must be below end {end}', errors={'t_range': 'order'})
            object.__setattr__(self, 't_range', (start, end))
        if self.axis_omega is not None and not self.axis_omega > 0:
            raise ConfigError(f'Axis frequency must be positive, got {self.axis_omega}', errors={'axis_omega': 'min_value'})

    def to_dict(self):
        return {
            'label': self.label,
            'state': self.state,
            'omegas': list(self.omegas),
            'xi': self.xi,
            'e_charge': self.e_charge,
            't_range': None if self.t_range is None else list(self.t_range),
            'points': self.points,
            'normalization': str(self.normalization),
            'axis_omega': self.axis_omega,
        }


def series_header(mode_count):
    """CSV columns for a sweep over `mode_count` modes."""
    marginals = [name for k in range(1, mode_count + 1) for name in (f'reW_{k}', f'imW_{k}')]
    return ('t', 'scaled_time', *marginals, 'reW_joint', 'imW_joint', 'reC', 'imC', 'absC')


@dataclass(frozen=True)
class SweepSeries:
    """Evaluated rows plus the metadata block echoing the configuration."""
    config: SweepConfig
    header: tuple
    rows: tuple
    metadata: dict = field(default_factory=dict)

    def column(self, name):
        return np.array([row[self.header.index(name)] for row in self.rows])

    @property
    def correlator(self):
        """Complex C per row."""
        return self.column('reC') + 1j * self.column('imC')

    def to_dict(self):
        return {
            'metadata': self.metadata,
            'columns': list(self.header),
            'rows': [list(row) for row in self.rows],
        }


@dataclass(frozen=True)
class FigureResult:
    """All curves of one preset on a shared grid, plus |C_ent - C_sep| tables."""
    preset: str
    curves: tuple
    differences: tuple = ()

    def curve(self, label):
        return dict(self.curves)[label]

    def difference(self, label):
        return dict(self.differences)[label]

    def to_dict(self):
        return {
            'preset': self.preset,
            'curves': {label: series.to_dict() for label, series in self.curves},
            'differences': {label: values.tolist() for label, values in self.differences},
        }


@dataclass(frozen=True)
class OracleSample:
    t: float
    deviation: float


@dataclass(frozen=True)
class OracleReport:
    """Engine against dense-oracle comparison at sampled grid points."""
    config: SweepConfig
    cutoff: int
    tolerance: float
    samples: tuple

    @property
    def max_deviation(self):
        return max((s.deviation for s in self.samples), default=0.0)

    @property
    def passed(self):
        return self.max_deviation <= self.tolerance

    def to_dict(self):
        return {
            'config': self.config.to_dict(),
            'cutoff': self.cutoff,
            'tolerance': self.tolerance,
            'max_deviation': self.max_deviation,
            'passed': self.passed,
            'samples': [{'t': s.t, 'deviation': s.deviation} for s in self.samples],
        }
