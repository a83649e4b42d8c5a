"""
Management command to evaluate the correlator C at one time.
"""
from ..base import EngineCommand
from ...models import OutputFormat
from ...writers import series_to_csv, to_json


class Command(EngineCommand):
    """Single sweep row: marginals, joint Weyl value and C."""

    help = 'Evaluate C = W_joint - prod W_k for a state at one time'

    def add_arguments(self, parser):
        self.add_state_arguments(parser)
        parser.add_argument('--t', type=float, default=0.0, help='Time (default 0)')
        self.add_output_arguments(parser)

    def run(self, *args, **options):
        config = self.config_from_options(options)
        series = self.sweep_service.evaluate_at(config, options['t'])
        if options['format'] == OutputFormat.JSON:
            return to_json(series)
        return series_to_csv(series)
