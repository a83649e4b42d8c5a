"""
Management command to evaluate the Weyl function at one time.
"""
from apps.weyl.engine import weyl_result
from ..base import EngineCommand
from ...models import OutputFormat
from ...writers import format_float, to_json


class Command(EngineCommand):
    """Joint and marginal Weyl values with visibility and phase shift."""

    help = 'Evaluate W(lambda(t)) for a state, with fringe visibility and phase shift'

    def add_arguments(self, parser):
        self.add_state_arguments(parser)
        parser.add_argument('--t', type=float, default=0.0, help='Time (default 0)')
        self.add_output_arguments(parser)

    def run(self, *args, **options):
        config = self.config_from_options(options)
        t = options['t']
        at, joint, marginals = self.sweep_service.weyl_at(config, t)
        results = [(str(mode + 1), weyl_result(w)) for mode, w in enumerate(marginals)]
        results.append(('joint', weyl_result(joint)))

        if options['format'] == OutputFormat.JSON:
            return to_json({
                't': t,
                'lambdas': [{'re': z.real, 'im': z.imag} for z in at.lambdas],
                'marginals': [result.to_dict() for _, result in results[:-1]],
                'joint': results[-1][1].to_dict(),
            })
        lines = ['t,mode,reW,imW,visibility,phase_shift']
        for mode, result in results:
            lines.append(','.join([
                format_float(t), mode, format_float(result.value.real), format_float(result.value.imag),
                format_float(result.visibility), format_float(result.phase_shift),
            ]))
        return '\n'.join(lines) + '\n'
