"""
Shared plumbing for the engine management commands.
"""
from django.conf import settings
from django.core.management.base import BaseCommand, CommandError

from apps.states.models import Normalization
from config.exceptions import EngineError, error_response_for
from config.renderers import render_json
from ..models import OutputFormat
from ..services import FigureService, OracleCheckService, SweepService
from ..serializers import config_from_data
from ..writers import write_output


def split_list(value):
    """'1.2e-4, 1e-4' -> ['1.2e-4', '1e-4']."""
    if value is None:
        return None
    return [item.strip() for item in value.split(',') if item.strip()]


class EngineCommand(BaseCommand):
    """
    Base command: engine errors become CommandError with the matching exit code.

    Subclasses implement `run(**options)` and return the text to emit.
    """
    state_required = True
    sweep_service = SweepService
    figure_service = FigureService
    oracle_service = OracleCheckService

    def add_state_arguments(self, parser):
        parser.add_argument(
            '--state',
            type=str,
            required=self.state_required,
            help='State as family:params (e.g. ent_number2:1,0) or DSL text (e.g. "|1,0> + |0,1>")'
        )
        parser.add_argument('--omega', type=str, help='Comma-separated angular frequencies, one per mode')
        parser.add_argument('--xi', type=float, help='Coupling xi (default WEYL_XI)')
        parser.add_argument('--charge', type=float, help='Electric charge e (default WEYL_CHARGE)')
        parser.add_argument(
            '--normalization',
            choices=Normalization.values,
            default=Normalization.OVERLAP,
            help='Entangled-state normalization'
        )

    def add_grid_arguments(self, parser):
        parser.add_argument('--t-range', type=str, help='Scaled-time range start,end (default 0,4pi)')
        parser.add_argument('--points', type=int, help='Grid points (default SWEEP_DEFAULT_POINTS)')

    def add_output_arguments(self, parser):
        parser.add_argument('--format', choices=OutputFormat.values, default=OutputFormat.CSV, help='Output format')
        parser.add_argument('--output', type=str, help='Output file (default stdout)')

    def config_from_options(self, options, default_omegas=None):
        """SweepConfig from command-line flags."""
        data = {
            'state': options.get('state') or '',
            'omegas': split_list(options.get('omega')) or list(default_omegas or []),
            'normalization': options.get('normalization') or Normalization.OVERLAP,
        }
        if options.get('xi') is not None:
            data['xi'] = options['xi']
        if options.get('charge') is not None:
            data['e_charge'] = options['charge']
        if options.get('t_range'):
            data['t_range'] = split_list(options['t_range'])
        if options.get('points') is not None:
            data['points'] = options['points']
        return config_from_data(data)

    def setting(self, name, default):
        return getattr(settings, name, default)

    def handle(self, *args, **options):
        try:
            text = self.run(*args, **options)
        except EngineError as exc:
            if options.get('format') == OutputFormat.JSON:
                self.stderr.write(render_json(error_response_for(exc), exit_code=exc.exit_code))
            raise CommandError(str(exc), returncode=exc.exit_code)
        write_output(text, options.get('output'), self.stdout)

    def run(self, *args, **options):
        raise NotImplementedError('subclasses of EngineCommand must provide a run() method')
