"""
Management command to check the closed-form engine against the dense oracle.
"""
from config.exceptions import ConfigError, OracleCheckFailed
from ..base import EngineCommand
from ...models import OutputFormat
from ...writers import format_float, to_json


class Command(EngineCommand):
    """Compare engine and oracle Weyl values at sampled grid points."""

    help = 'Compare closed-form Weyl values with the truncated Fock-space oracle'
    state_required = False

    def add_arguments(self, parser):
        self.add_state_arguments(parser)
        parser.add_argument('--figure', type=str, help='Check every curve of a figure preset instead of --state')
        self.add_grid_arguments(parser)
        parser.add_argument('--samples', type=int, default=10, help='Sampled grid points (default 10)')
        parser.add_argument('--cutoff', type=int, help='Fock cutoff (default ORACLE_DEFAULT_CUTOFF)')
        parser.add_argument('--seed', type=int, help='Sampling seed (default ORACLE_SAMPLE_SEED)')
        self.add_output_arguments(parser)

    def run(self, *args, **options):
        cutoff = options.get('cutoff') or self.setting('ORACLE_DEFAULT_CUTOFF', 40)
        if options.get('figure'):
            preset = options['figure']
            preset = f'fig{preset}' if preset.isdigit() else preset
            configs = [
                config for _group, _role, config
                in self.figure_service.figure_preset(preset, options['normalization'], options.get('points'))
            ]
        elif options.get('state'):
            configs = [self.config_from_options(options)]
        else:
            raise ConfigError('Either --state or --figure is required', errors={'state': 'required'})

        reports = [
            self.oracle_service.oracle_check(config, options['samples'], cutoff, seed=options.get('seed'))
            for config in configs
        ]
        if options['format'] == OutputFormat.JSON:
            text = to_json({'reports': [report.to_dict() for report in reports]})
        else:
            lines = ['label,state,cutoff,samples,max_deviation,passed']
            for report in reports:
                lines.append(','.join([
                    report.config.label, f'"{report.config.state}"', str(report.cutoff), str(len(report.samples)),
                    format_float(report.max_deviation), str(report.passed).lower(),
                ]))
            text = '\n'.join(lines) + '\n'

        failed = [report for report in reports if not report.passed]
        if failed:
            self.stdout.write(text, ending='')
            worst = max(report.max_deviation for report in failed)
            raise OracleCheckFailed(f'Max deviation {worst:.3e} exceeds tolerance {failed[0].tolerance:.1e}')
        return text
