from arcs.management.base import ArcCommand, Report
from arcs.projgeom import is_arc, subset_label


class Command(ArcCommand):
    help = 'Check that every k vectors of an arc file form a basis'
    reads_arc = True

    def compute(self, **options):
        arc = self.load_arc({**options, 'no_validate': True})
        check = is_arc(arc.vectors, arc.spec, arc.k)
        body = {
            'is_arc': check.ok,
            'size': len(arc),
            'k': arc.k,
            'witness': list(check.witness) if check.witness else None,
        }
        if check.ok:
            lines = [f'{len(arc)} points of PG({arc.k - 1},{arc.q}) form an arc']
            failure = ''
        else:
            failure = f'not an arc: {subset_label(check.witness, "S")} is linearly dependent'
            lines = [failure]
        return Report(body, spec=arc.spec, parameters={'input': options['input']},
                      ok=check.ok, failure=failure, lines=lines)
