from arcs.management.base import ArcCommand, Report
from arcs.search import conjecture_explore, conjectured_bound


class Command(ArcCommand):
    help = 'Tabulate rank and weight-one data of P_n over a range of n'
    reads_arc = True
    formats = ('json', 'csv', 'text')

    def add_command_arguments(self, parser):
        self.add_context_arguments(parser)
        parser.add_argument('--n-min', type=int, default=0, help='Smallest n (default: 0)')
        parser.add_argument('--n-max', type=int, help='Largest n (default: |S|-k-t)')

    def compute(self, **options):
        arc = self.load_arc(options)
        n_max = options['n_max'] if options['n_max'] is not None else len(arc) - arc.k - arc.deficiency
        E = options['E'] if options['E'] is not None else tuple(range(arc.k + arc.deficiency - 1))
        rows = conjecture_explore(
            arc,
            E,
            options['A'],
            range(options['n_min'], n_max + 1),
            G=options['G'],
            e=options['e'],
        )
        bound = conjectured_bound(arc.spec)
        body = {'bound': bound, 'k_within_bound': arc.k <= bound, 'rows': rows}
        lines = [
            f'n={row["n"]}: {row["rows"]}x{row["cols"]} rank {row["rank"]} '
            f'weight-one {len(row["weight_one"])} conic {row["conic_hypothesis"]} '
            f'regime {row["conjectured_regime"]}'
            for row in rows
        ]
        return Report(
            body,
            spec=arc.spec,
            parameters={'k': arc.k, 't': arc.deficiency, 'E': list(E)},
            lines=lines,
            table=rows,
            columns=('n', 'rows', 'cols', 'rank', 'weight_one', 'conic_hypothesis', 'conjectured_regime'),
        )
