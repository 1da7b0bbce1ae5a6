from arcs.files import arc_document, render_json
from arcs.management.base import ArcCommand, Report
from arcs.projgeom import nrc


class Command(ArcCommand):
    help = 'Write the normal rational curve of PG(k-1, q) as an arc file'

    def add_command_arguments(self, parser):
        self.add_field_arguments(parser)
        parser.add_argument('--k', type=int, required=True, help='Vector space dimension')

    def compute(self, **options):
        spec = self.field_spec(options)
        arc = nrc(spec, options['k'])
        lines = [f'nrc {spec} k={arc.k} size={len(arc)}'] + [str(row) for row in arc.codes()]
        return Report(arc_document(arc), spec=spec, parameters={'k': arc.k}, lines=lines)

    def render(self, report, options, elapsed):
        # --out and stdout both carry a plain arc file so it can be fed back with --in
        if options['format'] == 'json':
            return render_json(report.body).decode()
        return super().render(report, options, elapsed)
