"""
Management command to reproduce a figure preset.
"""
from apps.states.models import Normalization
from ..base import EngineCommand
from ...models import FigurePreset, OutputFormat
from ...writers import figure_to_csv, to_json


class Command(EngineCommand):
    """Run every curve of a figure preset on its shared grid."""

    help = 'Reproduce figure 2-6 data (CSV or JSON); no plotting'

    def add_arguments(self, parser):
        parser.add_argument('preset', type=str, help='Figure number 2-6 or preset name fig2-fig6')
        parser.add_argument(
            '--normalization',
            choices=Normalization.values,
            default=Normalization.OVERLAP,
            help='Normalization of the tripartite entangled coherent state'
        )
        parser.add_argument('--points', type=int, help='Grid points (default SWEEP_DEFAULT_POINTS)')
        self.add_output_arguments(parser)

    def run(self, *args, **options):
        preset = options['preset']
        if preset.isdigit():
            preset = f'fig{preset}'
        result = self.figure_service.run_figure(preset, options['normalization'], options.get('points'))
        self.stderr.write(self.style.SUCCESS(f'{FigurePreset(preset).label}: {len(result.curves)} curves'))
        if options['format'] == OutputFormat.JSON:
            return to_json(result)
        return figure_to_csv(result)
