"""
Management command to sweep the correlator over a time grid.
"""
from ..base import EngineCommand
from ...models import OutputFormat
from ...writers import series_to_csv, to_json


class Command(EngineCommand):
    """Correlator series over the scaled-time grid."""

    help = 'Sweep the correlator over time and emit CSV or JSON'

    def add_arguments(self, parser):
        self.add_state_arguments(parser)
        self.add_grid_arguments(parser)
        self.add_output_arguments(parser)

    def run(self, *args, **options):
        config = self.config_from_options(options)
        series = self.sweep_service.run_sweep(config)
        self.stderr.write(f'{len(series.rows)} rows, axis {series.metadata["axis"]}')
        if 'warning' in series.metadata:
            self.stderr.write(self.style.WARNING(series.metadata['warning']))
        if options['format'] == OutputFormat.JSON:
            return to_json(series)
        return series_to_csv(series)
