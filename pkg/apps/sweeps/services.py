"""
Sweep services for TopoPhase: state resolution, time sweeps, figure presets and oracle checks.
"""
import logging
import math

import numpy as np
from django.conf import settings

from apps.dsl.lowering import parse_state
from apps.oracle.models import TruncatedSpace
from apps.oracle.services import oracle_weyl
from apps.states.models import DEFAULT_CHARGE, DriveParams, Normalization, SlotKind, StateFamily
from apps.states.services import COHERENT_FAMILIES, NUMBER_FAMILIES, build_family_state
from apps.weyl.engine import beat_frequency, correlator, drive_lambda, weyl
from config.exceptions import ConfigError
from .models import (
    BIPARTITE_OMEGAS, TRIPARTITE_OMEGAS, AxisKind, FigurePreset, FigureResult, OracleReport, OracleSample,
    SweepConfig, SweepSeries, series_header,
)

logger = logging.getLogger(__name__)

FULL_TURNS = 4 * math.pi


def _setting(name, default):
    return getattr(settings, name, default)


def _parse_parameter(text, family):
    text = text.strip()
    try:
        if family in NUMBER_FAMILIES:
            return int(text)
        return complex(text.replace('i', 'j'))
    except ValueError:
        raise ConfigError(f'Invalid parameter {text!r} for {family}', errors={'state': 'invalid_parameter'})


class StateResolver:
    """Turn `family:params` or DSL text into an ensemble and its matched photon numbers."""

    @staticmethod
    def resolve(text, normalization=Normalization.OVERLAP):
        """
        Resolve a --state value.

        Returns:
            (OperatorEnsemble, photon numbers used for the beat-frequency axis)
        """
        prefix, _, rest = text.partition(':')
        family = prefix.strip()
        if family == StateFamily.FACTORIZABLE:
            rho = parse_state(rest)
            if len(rho) != 1:
                raise ConfigError('factorizable needs a single product ket', errors={'state': 'not_factorizable'})
            return rho, StateResolver.matched_numbers(rho)
        if family in StateFamily.values:
            family = StateFamily(family)
            values = [_parse_parameter(v, family) for v in rest.split(',') if v.strip()]
            rho = build_family_state(family, values, normalization=normalization)
            if family in COHERENT_FAMILIES:
                return rho, tuple(round(abs(a) ** 2) for a in values)
            return rho, tuple(values)
        rho = parse_state(text)
        return rho, StateResolver.matched_numbers(rho)

    @staticmethod
    def matched_numbers(rho):
        """
        Photon numbers of the leading ket; coherent slots use round(|A|^2).

        A ket whose cyclic relabelling also appears in the state is preferred,
        so entangled states are read in the orientation that sets their
        beat frequency.
        """
        kets = [t.ket for t in rho.terms]
        present = set(kets)
        leading = next((k for k in kets if k.mode_count > 1 and k.rotated(1) in present and k.rotated(1) != k), kets[0])
        if leading.kind == SlotKind.FOCK:
            return tuple(slot.occupation for slot in leading.modes)
        return tuple(round(abs(slot.amplitude) ** 2) for slot in leading.modes)


class SweepService:
    """Service for evaluating correlator series on a time grid."""

    @staticmethod
    def time_axis(config, numbers):
        """
        Scaling frequency, axis kind, default range and optional warning.

        The scaled axis is |Omega| t with Omega the beat frequency of the
        matched photon numbers. When that vanishes the axis is raw t.
        """
        if config.axis_omega is not None:
            return config.axis_omega, AxisKind.SCALED, _setting('SWEEP_DEFAULT_RANGE', (0.0, FULL_TURNS)), None

        omega = 0.0
        if len(numbers) in (2, 3) and len(numbers) == len(config.omegas):
            omega = abs(beat_frequency(numbers, config.omegas))
        if omega > 0:
            return omega, AxisKind.SCALED, _setting('SWEEP_DEFAULT_RANGE', (0.0, FULL_TURNS)), None

        spread = max(config.omegas) - min(config.omegas)
        if spread > 0:
            end = FULL_TURNS / spread
        elif max(abs(w) for w in config.omegas) > 0:
            end = FULL_TURNS / max(abs(w) for w in config.omegas)
        else:
            end = FULL_TURNS
        warning = 'beat frequency is zero; axis falls back to raw t'
        logger.warning('%s (state %s, omegas %s)', warning, config.state, config.omegas)
        return 1.0, AxisKind.RAW, (0.0, end), warning

    @staticmethod
    def evaluate(rho, drive, grid):
        """One sweep row per (t, scaled time) pair, in grid order."""
        rows = []
        for t, scaled in grid:
            value = correlator(rho, drive_lambda(drive, float(t)))
            marginals = [part for w in value.marginals for part in (w.real, w.imag)]
            rows.append((
                float(t), float(scaled), *marginals,
                value.joint.real, value.joint.imag, value.c.real, value.c.imag, abs(value.c),
            ))
        return tuple(rows)

    @staticmethod
    def prepare(config):
        """Resolve the state and build drive, time grid and metadata for `config`."""
        rho, numbers = StateResolver.resolve(config.state, config.normalization)
        if rho.mode_count != len(config.omegas):
            raise ConfigError(
                f'State has {rho.mode_count} modes but {len(config.omegas)} frequencies were given',
                code='omega_mismatch',
                errors={'omegas': 'omega_mismatch'},
            )
        drive = DriveParams(config.omegas, xi=config.xi, e_charge=config.e_charge)
        omega, axis, default_range, warning = SweepService.time_axis(config, numbers)
        start, end = config.t_range if config.t_range is not None else default_range
        scaled = np.linspace(start, end, config.points)
        times = scaled / omega

        metadata = {
            'config': config.to_dict(),
            'mode_count': rho.mode_count,
            'kind': str(rho.kind),
            'photon_numbers': list(numbers),
            'axis': str(axis),
            'axis_omega': omega,
            't_range': [float(start), float(end)],
        }
        if warning:
            metadata['warning'] = warning
        return rho, drive, (times, scaled), metadata

    @staticmethod
    def run_sweep(config):
        """Correlator series over the configured grid; identical configs give identical rows."""
        rho, drive, (times, scaled), metadata = SweepService.prepare(config)
        logger.info('Sweep %s: %d points', config.label or config.state, config.points)
        rows = SweepService.evaluate(rho, drive, zip(times, scaled))
        logger.debug('Sweep %s finished', config.label or config.state)
        return SweepSeries(config=config, header=series_header(rho.mode_count), rows=rows, metadata=metadata)

    @staticmethod
    def evaluate_at(config, t):
        """Single-row series at time `t`."""
        rho, drive, _times, metadata = SweepService.prepare(config)
        rows = SweepService.evaluate(rho, drive, [(t, t * metadata['axis_omega'])])
        return SweepSeries(config=config, header=series_header(rho.mode_count), rows=rows, metadata=metadata)

    @staticmethod
    def weyl_at(config, t):
        """Joint and marginal Weyl values at time `t`."""
        rho, drive, _times, _metadata = SweepService.prepare(config)
        at = drive_lambda(drive, t)
        return at, weyl(rho, at), tuple(weyl(rho, at.only(mode)) for mode in range(at.mode_count))


class FigureService:
    """Figure reproduction presets."""

    @staticmethod
    def figure_preset(preset, normalization=Normalization.OVERLAP, points=None):
        """
        Curve configs of a preset as (group, role, SweepConfig) triples.

        Roles are 'ent' and 'sep'; fig6 has a bipartite and a tripartite
        group sharing the tripartite axis.
        """
        try:
            preset = FigurePreset(preset)
        except ValueError:
            raise ConfigError(f'Unknown figure preset: {preset}', code='unknown_preset')
        points = points or _setting('SWEEP_DEFAULT_POINTS', 1000)
        sqrt2 = repr(math.sqrt(2))

        def pair(group, family, params, omegas, axis_omega=None, ent_normalization=Normalization.OVERLAP):
            return [
                (group, role, SweepConfig(
                    state=f'{role}_{family}:{params}',
                    omegas=omegas,
                    xi=_setting('WEYL_XI', 1.0),
                    e_charge=_setting('WEYL_CHARGE', DEFAULT_CHARGE),
                    points=points,
                    normalization=ent_normalization if role == 'ent' else Normalization.OVERLAP,
                    axis_omega=axis_omega,
                    label=f'{group}_{role}',
                ))
                for role in ('ent', 'sep')
            ]

        if preset == FigurePreset.FIG2:
            return pair('number2', 'number2', '1,0', BIPARTITE_OMEGAS)
        if preset == FigurePreset.FIG3:
            return pair('coherent2', 'coherent2', '1,0', BIPARTITE_OMEGAS)
        if preset == FigurePreset.FIG4:
            return pair('number3', 'number3', '0,1,2', TRIPARTITE_OMEGAS)
        if preset == FigurePreset.FIG5:
            return pair('coherent3', 'coherent3', f'0,1,{sqrt2}', TRIPARTITE_OMEGAS, ent_normalization=normalization)

        axis = abs(beat_frequency((0, 1, 2), TRIPARTITE_OMEGAS))
        return (
            pair('bipartite', 'coherent2', '1,0', TRIPARTITE_OMEGAS[:2], axis_omega=axis)
            + pair('tripartite', 'coherent3', f'0,1,{sqrt2}', TRIPARTITE_OMEGAS, axis_omega=axis,
                   ent_normalization=normalization)
        )

    @staticmethod
    def difference_series(ent, sep):
        """|C_ent - C_sep| on a shared grid."""
        if ent.header[:2] != sep.header[:2] or len(ent.rows) != len(sep.rows):
            raise ConfigError('Series do not share a grid', errors={'grid': 'mismatch'})
        if not np.array_equal(ent.column('t'), sep.column('t')):
            raise ConfigError('Series do not share a grid', errors={'grid': 'mismatch'})
        return np.abs(ent.correlator - sep.correlator)

    @staticmethod
    def run_figure(preset, normalization=Normalization.OVERLAP, points=None):
        """Run every curve of a preset and the ent/sep difference of each group."""
        curves = []
        groups = {}
        for group, role, config in FigureService.figure_preset(preset, normalization, points):
            series = SweepService.run_sweep(config)
            curves.append((config.label, series))
            groups.setdefault(group, {})[role] = series
        differences = tuple(
            (group, FigureService.difference_series(pair['ent'], pair['sep']))
            for group, pair in groups.items()
        )
        return FigureResult(preset=str(FigurePreset(preset)), curves=tuple(curves), differences=differences)


class OracleCheckService:
    """Compare the closed-form engine against the dense truncated-space oracle."""

    @staticmethod
    def oracle_check(config, samples, cutoff, seed=None, tolerance=None):
        """
        Deviations at `samples` grid points drawn with a seeded generator.

        Guard violations raise OracleGuardError; the report carries the
        verdict against `tolerance`.
        """
        seed = _setting('ORACLE_SAMPLE_SEED', 0) if seed is None else seed
        tolerance = _setting('ORACLE_TOLERANCE', 1e-8) if tolerance is None else tolerance
        if samples < 1:
            raise ConfigError(f'Need at least one sample, got {samples}', errors={'samples': 'min_value'})

        rho, drive, (times, _scaled), _metadata = SweepService.prepare(config)
        space = TruncatedSpace(cutoff, rho.mode_count, _setting('ORACLE_MAX_DIMENSION', 100_000))
        rng = np.random.default_rng(seed)
        picks = np.sort(rng.choice(len(times), size=min(samples, len(times)), replace=False))

        results = []
        for index in picks:
            t = float(times[index])
            at = drive_lambda(drive, t)
            value = correlator(rho, at)
            deviation = abs(value.joint - oracle_weyl(rho, at, space))
            for mode, marginal in enumerate(value.marginals):
                deviation = max(deviation, abs(marginal - oracle_weyl(rho, at.only(mode), space)))
            logger.debug('Oracle check t=%r deviation=%.3e', t, deviation)
            results.append(OracleSample(t=t, deviation=float(deviation)))

        report = OracleReport(config=config, cutoff=cutoff, tolerance=tolerance, samples=tuple(results))
        logger.info(
            'Oracle check %s: max deviation %.3e (%s)',
            config.label or config.state, report.max_deviation, 'passed' if report.passed else 'failed',
        )
        return report

