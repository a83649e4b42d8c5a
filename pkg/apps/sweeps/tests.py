"""
Tests for sweeps app.
"""
import io
import json
import math
import os
import tempfile

import numpy as np
from django.core.management import CommandError, call_command
from django.test import SimpleTestCase, override_settings
from scipy.signal import argrelextrema

from apps.states.models import Normalization, StateFamily
from apps.states.services import build_family_state
from config.exceptions import ConfigError, DslParseError, OracleGuardError, StateError
from .factories import SweepConfigFactory
from .models import AxisKind, FigurePreset, SweepConfig, series_header
from .serializers import config_from_data
from .services import FigureService, OracleCheckService, StateResolver, SweepService
from .writers import figure_to_csv, series_to_csv

X = 2 * math.pi / 137
SQRT2 = repr(math.sqrt(2))


def same_kind_extremum_spacing(values, scaled):
    """Scaled-time spacing of the first two interior maxima (or minima)."""
    for comparator in (np.greater, np.less):
        (indices,) = argrelextrema(np.asarray(values), comparator)
        if len(indices) >= 2:
            return scaled[indices[1]] - scaled[indices[0]]
    raise AssertionError('fewer than two extrema of the same kind')


def run_command(name, *args, **options):
    out, err = io.StringIO(), io.StringIO()
    call_command(name, *args, stdout=out, stderr=err, **options)
    return out.getvalue()


class StateResolverTests(SimpleTestCase):
    """Tests for StateResolver."""

    def test_family_params(self):
        rho, numbers = StateResolver.resolve('ent_number2:1,0')
        self.assertTrue(rho.isclose(build_family_state(StateFamily.ENT_NUMBER2, (1, 0))))
        self.assertEqual(numbers, (1, 0))

    def test_coherent_family_matched_numbers(self):
        """Test coherent parameters map to round(|A|^2)."""
        _rho, numbers = StateResolver.resolve(f'ent_coherent3:0,1,{SQRT2}')
        self.assertEqual(numbers, (0, 1, 2))

    def test_complex_parameter(self):
        rho, _ = StateResolver.resolve('sep_coherent2:0.3+0.4i,-1i')
        self.assertTrue(rho.isclose(build_family_state(StateFamily.SEP_COHERENT2, (0.3 + 0.4j, -1j))))

    def test_dsl_text(self):
        rho, numbers = StateResolver.resolve('|2,0,0> + |0,0,2>')
        self.assertTrue(rho.isclose(build_family_state(StateFamily.ENT_NUMBER3, (2, 0, 0))))
        self.assertEqual(numbers, (2, 0, 0))

    def test_factorizable_prefix(self):
        rho, numbers = StateResolver.resolve('factorizable:|c:1, c:0>')
        self.assertEqual(len(rho), 1)
        self.assertEqual(numbers, (1, 0))
        with self.assertRaises(ConfigError):
            StateResolver.resolve('factorizable:|1,0> + |0,1>')

    def test_printed_normalization(self):
        rho, _ = StateResolver.resolve(f'ent_coherent3:0,1,{SQRT2}', Normalization.PRINTED)
        self.assertTrue(rho.isclose(
            build_family_state(StateFamily.ENT_COHERENT3, (0, 1, math.sqrt(2)), Normalization.PRINTED)
        ))

    def test_invalid_parameters(self):
        with self.assertRaises(ConfigError):
            StateResolver.resolve('ent_number2:1.5,0')
        with self.assertRaises(StateError):
            StateResolver.resolve('ent_number2:1')
        with self.assertRaises(DslParseError):
            StateResolver.resolve('bell_state:1,0')


class SweepConfigTests(SimpleTestCase):
    """Tests for SweepConfig and its serializer."""

    def test_invariants(self):
        with self.assertRaises(ConfigError):
            SweepConfigFactory(points=1)
        with self.assertRaises(ConfigError):
            SweepConfigFactory(t_range=(2.0, 1.0))

    def test_serializer_defaults(self):
        config = config_from_data({'state': 'ent_number2:1,0', 'omegas': ['1.2e-4', '1e-4']})
        self.assertEqual(config.omegas, (1.2e-4, 1.0e-4))
        self.assertEqual(config.points, 1000)
        self.assertEqual(config.xi, 1.0)
        self.assertAlmostEqual(config.e_charge, math.sqrt(4 * math.pi / 137), places=15)

    def test_serializer_errors(self):
        with self.assertRaises(ConfigError) as ctx:
            config_from_data({'state': 'ent_number2:1,0', 'omegas': [], 'points': 1, 't_range': [3, 1]})
        self.assertEqual(ctx.exception.exit_code, 2)
        self.assertEqual(set(ctx.exception.errors), {'omegas', 'points', 't_range'})


class RunSweepTests(SimpleTestCase):
    """Tests for SweepService.run_sweep."""

    def test_shape_and_header(self):
        series = SweepService.run_sweep(SweepConfigFactory(points=25))
        self.assertEqual(len(series.rows), 25)
        self.assertEqual(series.header, series_header(2))
        self.assertEqual(series.header[-3:], ('reC', 'imC', 'absC'))
        self.assertTrue(np.all(np.diff(series.column('scaled_time')) > 0))
        self.assertEqual(series.metadata['axis'], AxisKind.SCALED)
        self.assertAlmostEqual(series.metadata['axis_omega'], 2e-5, delta=1e-18)
        self.assertAlmostEqual(series.column('scaled_time')[-1], 4 * math.pi, places=12)

    def test_separable_constant(self):
        """Test |C_sep| stays at exp(-q^2) q^4 / 4, about 5.02e-4."""
        series = SweepService.run_sweep(SweepConfigFactory(state='sep_number2:1,0', points=40))
        expected = math.exp(-X) * X ** 2 / 4
        self.assertTrue(np.allclose(series.column('absC'), expected, rtol=0, atol=1e-12))
        self.assertAlmostEqual(expected, 5.02274e-4, delta=1e-9)

    def test_entangled_envelope(self):
        """Test the entangled |C| peaks at |c_sep| + exp(-q^2) q^2 at t = 0."""
        series = SweepService.run_sweep(SweepConfigFactory(points=201))
        self.assertAlmostEqual(series.column('absC')[0], math.exp(-X) * (X + X ** 2 / 4), delta=1e-12)
        self.assertLess(series.column('absC').min(), 0.0440)

    def test_factorizable_null(self):
        series = SweepService.run_sweep(SweepConfigFactory(state='|3,1,0>', omegas=(1.2e-4, 1.1e-4, 1.0e-4)))
        self.assertLess(series.column('absC').max(), 1e-12)

    def test_omega_mismatch(self):
        with self.assertRaises(ConfigError) as ctx:
            SweepService.run_sweep(SweepConfigFactory(omegas=(1e-4,)))
        self.assertEqual(ctx.exception.code, 'omega_mismatch')

    def test_explicit_range(self):
        series = SweepService.run_sweep(SweepConfigFactory(t_range=(math.pi, 2 * math.pi), points=3))
        self.assertAlmostEqual(series.rows[0][0], math.pi / 2e-5, delta=1e-6)
        self.assertEqual(series.metadata['t_range'], [math.pi, 2 * math.pi])

    def test_degenerate_equal_numbers(self):
        """Test N1 = N2 falls back to raw t over [0, 4 pi / |w1 - w2|]."""
        series = SweepService.run_sweep(SweepConfigFactory(state='ent_number2:2,2', points=5))
        self.assertEqual(series.metadata['axis'], AxisKind.RAW)
        self.assertIn('warning', series.metadata)
        self.assertAlmostEqual(series.column('t')[-1], 4 * math.pi / 2e-5, delta=1e-6)
        self.assertTrue(np.array_equal(series.column('t'), series.column('scaled_time')))

    def test_degenerate_equal_frequencies(self):
        series = SweepService.run_sweep(SweepConfigFactory(omegas=(1e-4, 1e-4), points=5))
        self.assertEqual(series.metadata['axis'], AxisKind.RAW)
        self.assertAlmostEqual(series.column('t')[-1], 4 * math.pi / 1e-4, delta=1e-6)

    def test_degenerate_zero_frequencies(self):
        series = SweepService.run_sweep(SweepConfigFactory(omegas=(0.0, 0.0), points=5))
        self.assertAlmostEqual(series.column('t')[-1], 4 * math.pi, places=12)

    def test_single_mode_state(self):
        series = SweepService.run_sweep(SweepConfigFactory(state='|c:0.5>', omegas=(1e-4,), points=4))
        self.assertEqual(series.header, series_header(1))
        self.assertEqual(series.metadata['axis'], AxisKind.RAW)

    def test_identical_configs_identical_rows(self):
        first = SweepService.run_sweep(SweepConfigFactory(state='ent_coherent2:1,0'))
        second = SweepService.run_sweep(SweepConfigFactory(state='ent_coherent2:1,0'))
        self.assertEqual(series_to_csv(first), series_to_csv(second))


class FigurePresetTests(SimpleTestCase):
    """Tests for FigureService."""

    def test_fig2_parameters(self):
        curves = FigureService.figure_preset(FigurePreset.FIG2)
        self.assertEqual([(g, r) for g, r, _ in curves], [('number2', 'ent'), ('number2', 'sep')])
        for _, _, config in curves:
            self.assertEqual(config.omegas, (1.2e-4, 1.0e-4))
            self.assertEqual(config.points, 1000)
        self.assertEqual(curves[0][2].state, 'ent_number2:1,0')

    def test_fig5_parameters(self):
        _, _, config = FigureService.figure_preset('fig5')[0]
        self.assertEqual(config.omegas, (1.2e-4, 1.1e-4, 1.0e-4))
        rho, numbers = StateResolver.resolve(config.state)
        self.assertTrue(rho.isclose(build_family_state(StateFamily.ENT_COHERENT3, (0, 1, math.sqrt(2)))))
        self.assertEqual(numbers, (0, 1, 2))

    def test_fig6_shares_tripartite_axis(self):
        curves = FigureService.figure_preset('fig6')
        self.assertEqual(len(curves), 4)
        for _, _, config in curves:
            self.assertAlmostEqual(config.axis_omega, 3e-5, delta=1e-18)
        self.assertEqual(curves[0][2].omegas, (1.2e-4, 1.1e-4))

    def test_unknown_preset(self):
        with self.assertRaises(ConfigError) as ctx:
            FigureService.figure_preset('fig7')
        self.assertEqual(ctx.exception.code, 'unknown_preset')

    def test_fig2_periods(self):
        """Test the sep curve is constant and the ent curve has period 2 pi in Omega t."""
        result = FigureService.run_figure('fig2')
        ent, sep = result.curve('number2_ent'), result.curve('number2_sep')
        self.assertLess(np.std(sep.column('reC')), 1e-15)
        scaled = ent.column('scaled_time')
        step = scaled[1] - scaled[0]
        spacing = same_kind_extremum_spacing(ent.column('reC'), scaled)
        self.assertLessEqual(abs(spacing - 2 * math.pi), step)
        self.assertAlmostEqual(result.difference('number2').max(), math.exp(-X) * X, delta=1e-9)

    def test_fig4_period(self):
        """Test Omega' = 3e-5 sets the tripartite ent period."""
        result = FigureService.run_figure('fig4')
        ent = result.curve('number3_ent')
        self.assertAlmostEqual(ent.metadata['axis_omega'], 3e-5, delta=1e-18)
        scaled = ent.column('scaled_time')
        spacing = same_kind_extremum_spacing(ent.column('reC'), scaled)
        self.assertLessEqual(abs(spacing - 2 * math.pi), scaled[1] - scaled[0])
        self.assertLess(np.std(result.curve('number3_sep').column('reC')), 1e-15)

    def test_fig6_ratio_with_overlap_normalization(self):
        """Test bipartite and tripartite quantum parts are the same order of magnitude."""
        result = FigureService.run_figure('fig6', points=200)
        ratio = result.difference('tripartite').max() / result.difference('bipartite').max()
        self.assertGreater(ratio, 0.5)
        self.assertLess(ratio, 2.0)

    def test_fig6_ratio_with_printed_normalization(self):
        """Test the printed tripartite normalization gives an order-of-magnitude gap."""
        result = FigureService.run_figure('fig6', Normalization.PRINTED, points=200)
        ratio = result.difference('tripartite').max() / result.difference('bipartite').max()
        self.assertGreaterEqual(ratio, 5.0)

    def test_difference_requires_shared_grid(self):
        a = SweepService.run_sweep(SweepConfigFactory(points=10))
        b = SweepService.run_sweep(SweepConfigFactory(points=11))
        with self.assertRaises(ConfigError):
            FigureService.difference_series(a, b)

    def test_figure_csv_is_deterministic(self):
        first = figure_to_csv(FigureService.run_figure('fig3', points=30))
        second = figure_to_csv(FigureService.run_figure('fig3', points=30))
        self.assertEqual(first, second)
        self.assertIn('# curve: coherent2_ent', first)
        self.assertIn('# difference: coherent2', first)


class OracleCheckTests(SimpleTestCase):
    """Tests for OracleCheckService."""

    def test_fig2_agrees(self):
        for _, _, config in FigureService.figure_preset('fig2', points=100):
            report = OracleCheckService.oracle_check(config, samples=10, cutoff=40)
            self.assertEqual(len(report.samples), 10)
            self.assertLess(report.max_deviation, 1e-8)
            self.assertTrue(report.passed)

    def test_fig5_agrees(self):
        _, _, config = FigureService.figure_preset('fig5', points=100)[0]
        report = OracleCheckService.oracle_check(config, samples=3, cutoff=40)
        self.assertLess(report.max_deviation, 1e-8)

    def test_seeded_sampling(self):
        config = SweepConfigFactory(points=100)
        first = OracleCheckService.oracle_check(config, samples=4, cutoff=20)
        second = OracleCheckService.oracle_check(config, samples=4, cutoff=20)
        self.assertEqual([s.t for s in first.samples], [s.t for s in second.samples])

    def test_small_cutoff_guard(self):
        """Test |A| = sqrt 2 at cutoff 2 is refused."""
        config = SweepConfigFactory(state=f'ent_coherent3:0,1,{SQRT2}', omegas=(1.2e-4, 1.1e-4, 1.0e-4))
        with self.assertRaises(OracleGuardError):
            OracleCheckService.oracle_check(config, samples=2, cutoff=2)


class CommandTests(SimpleTestCase):
    """Tests for the management commands."""

    def test_sweep_csv(self):
        text = run_command('sweep', state='ent_number2:1,0', omega='1.2e-4,1.0e-4', points=5)
        lines = text.splitlines()
        comments = [line for line in lines if line.startswith('#')]
        data = [line for line in lines if not line.startswith('#')]
        self.assertTrue(comments)
        self.assertEqual(data[0], 't,scaled_time,reW_1,imW_1,reW_2,imW_2,reW_joint,imW_joint,reC,imC,absC')
        self.assertEqual(len(data), 6)
        self.assertEqual(float(data[1].split(',')[0]), 0.0)

    def test_sweep_json(self):
        text = run_command('sweep', state='|1,0> + |0,1>', omega='1.2e-4,1.0e-4', points=4, format='json')
        payload = json.loads(text)
        self.assertEqual(payload['code'], 0)
        self.assertEqual(payload['data']['columns'][0], 't')
        self.assertEqual(len(payload['data']['rows']), 4)

    def test_sweep_to_file(self):
        with tempfile.TemporaryDirectory() as directory:
            path = os.path.join(directory, 'fig.csv')
            run_command('sweep', state='sep_number2:1,0', omega='1.2e-4,1.0e-4', points=3, output=path)
            with open(path, encoding='utf-8') as handle:
                self.assertIn('absC', handle.read())

    def test_figure_is_byte_identical(self):
        first = run_command('figure', '2', points=40)
        second = run_command('figure', 'fig2', points=40)
        self.assertEqual(first, second)

    def test_weyl_command(self):
        payload = json.loads(run_command('weyl', state='sep_number2:1,0', omega='1.2e-4,1.0e-4', format='json'))
        marginal = payload['data']['marginals'][0]
        self.assertAlmostEqual(marginal['visibility'], math.exp(-X / 2) * (2 - X) / 2, delta=1e-14)

    def test_correlator_command(self):
        text = run_command('correlator', state='sep_number2:1,0', omega='1.2e-4,1.0e-4', t=0.0)
        row = [line for line in text.splitlines() if not line.startswith('#')][1]
        self.assertAlmostEqual(float(row.split(',')[-1]), math.exp(-X) * X ** 2 / 4, delta=1e-12)

    def test_parse_command(self):
        text = run_command('parse', 'mix 0.5: |1,0>; 0.5: |0,1>')
        self.assertTrue(text.startswith('ok: 2 modes'))

    def test_oracle_check_command(self):
        text = run_command('oracle_check', figure='2', samples=2, points=20)
        self.assertIn('true', text)

    def test_config_error_exit_code(self):
        with self.assertRaises(CommandError) as ctx:
            run_command('sweep', state='ent_number2:1,0', omega='1e-4', points=5)
        self.assertEqual(ctx.exception.returncode, 2)
        with self.assertRaises(CommandError) as ctx:
            run_command('sweep', state='ent_number2:1,0', omega='1.2e-4,1.0e-4', t_range='5,1')
        self.assertEqual(ctx.exception.returncode, 2)
        with self.assertRaises(CommandError) as ctx:
            run_command('figure', '7')
        self.assertEqual(ctx.exception.returncode, 2)

    def test_parse_error_exit_code(self):
        with self.assertRaises(CommandError) as ctx:
            run_command('parse', '|1,0')
        self.assertEqual(ctx.exception.returncode, 4)
        self.assertIn('1:5', str(ctx.exception))

    def test_oracle_guard_exit_code(self):
        with self.assertRaises(CommandError) as ctx:
            run_command(
                'oracle_check', state=f'ent_coherent3:0,1,{SQRT2}', omega='1.2e-4,1.1e-4,1.0e-4',
                cutoff=2, samples=1, points=2,
            )
        self.assertEqual(ctx.exception.returncode, 2)

    @override_settings(ORACLE_TOLERANCE=-1.0)
    def test_oracle_failure_exit_code(self):
        with self.assertRaises(CommandError) as ctx:
            run_command('oracle_check', state='ent_number2:1,0', omega='1.2e-4,1.0e-4', samples=1, points=2)
        self.assertEqual(ctx.exception.returncode, 3)

    def test_json_error_payload(self):
        err = io.StringIO()
        with self.assertRaises(CommandError):
            call_command('parse', '|1, c:0>', format='json', stdout=io.StringIO(), stderr=err)
        payload = json.loads(err.getvalue())
        self.assertEqual(payload['code'], 4004)
        self.assertEqual(payload['errors']['column'], 5)
