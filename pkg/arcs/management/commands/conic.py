from arcs.management.base import ArcCommand, Report
from arcs.projgeom import ConicStatus, conic_fit, is_on_conic


class Command(ArcCommand):
    help = 'Fit the unique conic through a set of points of PG(2, q)'
    reads_arc = True

    def compute(self, **options):
        arc = self.load_arc(options)
        fit = conic_fit(arc.vectors, arc.spec)
        body = {
            'status': fit.status.value,
            'nullity': fit.nullity,
            'form': fit.form.to_dict() if fit.form else None,
        }
        lines = [f'conic: {fit.status.value}']
        if fit.status is ConicStatus.UNIQUE:
            body['on_conic'] = all(is_on_conic(fit.form, point) for point in arc.vectors)
            lines.append(' '.join(f'{term}={value}' for term, value in body['form'].items()))
        return Report(body, spec=arc.spec, parameters={'input': options['input']}, lines=lines)
