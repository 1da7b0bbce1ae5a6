from arcs import equations, exactla
from arcs.management.base import ArcCommand, Report
from arcs.serializers import GfMatrixSerializer


class Command(ArcCommand):
    help = 'Build the matrix P_n for a context G ⊇ E ⊇ A of the arc'
    reads_arc = True

    def add_command_arguments(self, parser):
        self.add_context_arguments(parser)

    def compute(self, **options):
        arc = self.load_arc(options)
        ctx = self.context(arc, options)
        Pn = equations.build_Pn(ctx)
        weight = exactla.weight_one_in_colspace(Pn)
        body = {
            'matrix': GfMatrixSerializer(Pn).data,
            'rank': exactla.rank(Pn),
            'weight_one': [Pn.row_labels[i] for i in weight],
        }
        lines = [
            f'P_{ctx.n}: {Pn.rows} x {Pn.cols}, rank {body["rank"]}',
            f'weight-one rows: {body["weight_one"] or "none"}',
        ]
        return Report(body, spec=arc.spec, parameters=ctx.parameters(), lines=lines)
