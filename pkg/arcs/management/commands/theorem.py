from arcs.management.base import ArcCommand, Report
from arcs.search import theorem_check
from arcs.serializers import TheoremReportSerializer


class Command(ArcCommand):
    help = 'Check that (3k-6)-subsets of the normal rational curve do not extend to q+2 points'
    formats = ('json', 'csv', 'text')

    def add_command_arguments(self, parser):
        self.add_field_arguments(parser)
        parser.add_argument('--k', type=int, required=True, help='Vector space dimension')
        parser.add_argument(
            '--strategy',
            choices=['prefix', 'random'],
            default='prefix',
            help='First 3k-6 curve points, or seeded random subsets',
        )
        parser.add_argument('--trials', type=int, default=3, help='Random subsets to check (default: 3)')

    def compute(self, **options):
        spec = self.field_spec(options)
        report = theorem_check(
            spec,
            options['k'],
            strategy=options['strategy'],
            trials=options['trials'],
            seed=options['seed'],
            threads=options['threads'],
        )
        table = [
            {
                'subset': list(subset),
                'target': cert.target_size,
                'outcome': cert.outcome.value,
                'nodes': cert.nodes_expanded,
                'max_size': cert.max_size_reached,
            }
            for subset, cert in zip(report.subsets, report.certificates)
        ]
        lines = [f'{row["subset"]}: {row["outcome"]} at {row["target"]} ({row["nodes"]} nodes)' for row in table]
        return Report(
            TheoremReportSerializer(report).data,
            spec=spec,
            parameters={'k': options['k'], 'size': 3 * options['k'] - 6, 'target': spec.q + 2},
            ok=report.holds,
            failure='a subset of the curve extends to q+2 points',
            lines=lines,
            table=table,
            columns=('subset', 'target', 'outcome', 'nodes', 'max_size'),
        )
