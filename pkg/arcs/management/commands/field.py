from django.core.management.base import CommandError

from arcs.gf import FieldSpec, enumerate_elements
from arcs.management.base import ArcCommand, Report
from arcs.serializers import FieldSpecSerializer


class Command(ArcCommand):
    help = 'Describe GF(q): characteristic, degree, modulus and primitive element'

    def add_command_arguments(self, parser):
        parser.add_argument('--p', type=int, help='Characteristic')
        parser.add_argument('--e', type=int, default=1, help='Extension degree (default: 1)')
        parser.add_argument('--q', type=int, help='Field order, instead of --p and --e')
        self.add_field_arguments(parser, order=False)
        parser.add_argument(
            '--elements',
            action='store_true',
            help='Also list every element code with its polynomial form',
        )

    def compute(self, **options):
        if options['q'] is not None:
            spec = self.field_spec(options)
        elif options['p'] is not None:
            spec = FieldSpec(options['p'], options['e'], options['modulus'])
        else:
            raise CommandError('give either --q or --p', returncode=2)
        body = dict(FieldSpecSerializer(spec).data)
        body['odd'] = spec.is_odd
        body['primitive_element'] = int(spec.GF.primitive_element)
        lines = [
            f'{spec}: p={spec.p} e={spec.e} modulus={list(spec.modulus)}',
            f'primitive element: {body["primitive_element"]}',
        ]
        if options['elements']:
            body['elements'] = [
                {'code': int(x), 'poly': _poly(x, spec)}
                for x in enumerate_elements(spec)
            ]
            lines += [f'  {item["code"]}: {item["poly"]}' for item in body['elements']]
        return Report(body, spec=spec, parameters={'q': spec.q}, lines=lines)


def _poly(element, spec):
    digits = []
    code = int(element)
    for _ in range(spec.e):
        digits.append(code % spec.p)
        code //= spec.p
    terms = [
        (f'{c}' if i == 0 else f'{c if c != 1 else ""}X' + (f'^{i}' if i > 1 else ''))
        for i, c in enumerate(digits) if c
    ]
    return ' + '.join(reversed(terms)) or '0'
