from arcs.files import arc_document, render_json
from arcs.management.base import ArcCommand, Report, index_list
from arcs.projgeom import Arc, normalize_rows, project_arc


class Command(ArcCommand):
    help = 'Project the arc from the span of some of its points'
    reads_arc = True

    def add_command_arguments(self, parser):
        parser.add_argument(
            '--from',
            dest='centre',
            type=index_list,
            required=True,
            help='Indices of the projection centre, e.g. 0,1',
        )
        parser.add_argument(
            '--normalize',
            action='store_true',
            help='Scale every image so its first nonzero coordinate is 1',
        )

    def compute(self, **options):
        arc = self.load_arc(options)
        centre = options['centre']
        points = project_arc(arc, centre)
        if options['normalize']:
            points = normalize_rows(points)
        image = Arc(arc.spec, arc.k - len(centre), points)
        lines = [f'projection from {list(centre)}: {len(image)} points of PG({image.k - 1},{image.q})']
        lines += [str(row) for row in image.codes()]
        return Report(arc_document(image), spec=arc.spec, parameters={'from': list(centre)}, lines=lines)

    def render(self, report, options, elapsed):
        if options['format'] == 'json':
            return render_json(report.body).decode()
        return super().render(report, options, elapsed)
