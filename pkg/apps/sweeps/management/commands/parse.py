"""
Management command to validate state DSL text.
"""
from apps.dsl.lowering import lower, render
from apps.dsl.parser import parse
from apps.states.serializers import ensemble_to_data
from ..base import EngineCommand
from ...models import OutputFormat
from ...writers import to_json


class Command(EngineCommand):
    """Parse and lower DSL text; print the canonical rendering."""

    help = 'Validate state DSL text and print its canonical form'

    def add_arguments(self, parser):
        parser.add_argument('text', type=str, help='State DSL text, e.g. "mix 0.5: |1,0>; 0.5: |0,1>"')
        self.add_output_arguments(parser)

    def run(self, *args, **options):
        expr = parse(options['text'])
        rho = lower(expr)
        if options['format'] == OutputFormat.JSON:
            return to_json({
                'modes': expr.mode_count,
                'kind': str(expr.kind),
                'mixture': expr.is_mixture,
                'canonical': render(rho),
                'ensemble': ensemble_to_data(rho),
            })
        return f'ok: {expr.mode_count} modes, {expr.kind}, {len(rho)} dyads\n{render(rho)}\n'
