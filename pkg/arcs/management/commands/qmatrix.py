from arcs import equations, exactla
from arcs.management.base import ArcCommand, Report
from arcs.serializers import GfMatrixSerializer


class Command(ArcCommand):
    help = 'Build Q_t from the polynomials psi_D, D a (k-3)-subset of A (needs n = t)'
    reads_arc = True

    def add_command_arguments(self, parser):
        self.add_context_arguments(parser)

    def compute(self, **options):
        arc = self.load_arc(options)
        ctx = self.context(arc, options)
        Qt = equations.build_Qt(ctx)
        weight = exactla.weight_one_in_colspace(Qt)
        body = {
            'matrix': GfMatrixSerializer(Qt).data,
            'rank': exactla.rank(Qt),
            'square': Qt.rows == Qt.cols,
            'weight_one': [Qt.row_labels[i] for i in weight],
        }
        lines = [
            f'Q_{ctx.t}: {Qt.rows} x {Qt.cols}, rank {body["rank"]}',
            f'weight-one rows: {body["weight_one"] or "none"}',
        ]
        return Report(body, spec=arc.spec, parameters=ctx.parameters(), lines=lines)
