import argparse
import time
from dataclasses import dataclass, field
from pathlib import Path

from django.conf import settings
from django.core.management.base import BaseCommand, CommandError
from rest_framework.exceptions import APIException

from arcs.equations import EqContext
from arcs.exceptions import ArcforgeError
from arcs.files import load_arc, render_csv, render_json
from arcs.gf import FieldSpec
from arcs.serializers import header


NOT_ECHOED = {
    'verbosity', 'settings', 'pythonpath', 'traceback', 'no_color', 'force_color',
    'skip_checks', 'stdout', 'stderr', 'format', 'out', 'seed', 'threads',
}


def index_list(value):
    """'0,2,5' -> (0, 2, 5); the empty string is the empty tuple."""
    value = value.strip()
    if not value:
        return ()
    try:
        return tuple(int(part) for part in value.split(','))
    except ValueError:
        raise argparse.ArgumentTypeError(f'expected comma-separated integers, got {value!r}')


@dataclass
class Report:
    body: object
    spec: object = None
    parameters: dict = field(default_factory=dict)
    ok: bool = True
    failure: str = ''
    lines: list = None
    table: list = None
    columns: tuple = ()


class ArcCommand(BaseCommand):
    """Base for the arcforge subcommands.

    Subclasses implement ``compute(**options)`` returning a Report. Input errors
    exit with status 2, a failed checked property with status 1 after the report
    has been written.
    """

    requires_system_checks = []
    formats = ('json', 'text')
    reads_arc = False

    def add_arguments(self, parser):
        if self.reads_arc:
            parser.add_argument('--in', dest='input', required=True, help='Arc file (JSON)')
            parser.add_argument(
                '--no-validate',
                action='store_true',
                help='Skip the arc check when loading the input file',
            )
        self.add_command_arguments(parser)
        parser.add_argument('--format', choices=self.formats, default='json', help='Report format')
        parser.add_argument('--out', help='Write the report to this file instead of stdout')
        parser.add_argument(
            '--seed',
            type=int,
            default=settings.ARCFORGE_SEED,
            help=f'Seed for every sampled choice (default: {settings.ARCFORGE_SEED})',
        )
        parser.add_argument(
            '--threads',
            type=int,
            default=settings.ARCFORGE_THREADS,
            help=f'Worker threads for searches (default: {settings.ARCFORGE_THREADS})',
        )

    def add_command_arguments(self, parser):
        pass

    def add_field_arguments(self, parser, order=True):
        if order:
            parser.add_argument('--q', type=int, required=True, help='Field order (prime power)')
        parser.add_argument(
            '--modulus',
            type=index_list,
            default=(),
            help='Irreducible modulus, little-endian coefficients (default: smallest)',
        )

    def add_context_arguments(self, parser, with_d=False):
        parser.add_argument('--E', dest='E', type=index_list, help='Indices of E (default: first k+t-1)')
        parser.add_argument('--A', dest='A', type=index_list, help='Indices of A (default: first k-2 of E)')
        parser.add_argument('--e', dest='e', type=int, help='Element of E outside A')
        parser.add_argument('--n', dest='n', type=int, help='Points of G outside E, minus one')
        parser.add_argument('--G', dest='G', type=index_list, help='Indices of G (default: E plus the next n+1)')
        if with_d:
            parser.add_argument('--D', dest='D', type=index_list, help='(k-3)-subset of A (default: first)')

    def field_spec(self, options):
        return FieldSpec.from_order(options['q'], options['modulus'])

    def load_arc(self, options):
        return load_arc(options['input'], validate=not options['no_validate'])

    def context(self, arc, options):
        return EqContext.build(
            arc,
            E=options.get('E'),
            A=options.get('A'),
            e=options.get('e'),
            n=options.get('n'),
            G=options.get('G'),
        )

    def compute(self, **options):
        raise NotImplementedError

    def handle(self, *args, **options):
        started = time.perf_counter()
        try:
            report = self.compute(**options)
        except ArcforgeError as exc:
            raise CommandError(str(exc), returncode=2)
        except APIException as exc:
            raise CommandError(f'invalid input: {exc.detail}', returncode=2)
        except OSError as exc:
            raise CommandError(str(exc), returncode=2)
        self.emit(report, options, time.perf_counter() - started)
        if not report.ok:
            raise CommandError(report.failure or 'check failed', returncode=1)

    def render(self, report, options, elapsed):
        fmt = options['format']
        if fmt == 'csv':
            return render_csv(report.table or [], report.columns)
        if fmt == 'text' and report.lines is not None:
            return '\n'.join(report.lines) + '\n'
        document = {
            'header': header(
                self.command_name(),
                report.spec,
                self.echo(options, report.parameters),
                options['seed'],
                options['threads'],
                elapsed,
            ),
            'body': report.body,
        }
        return render_json(document).decode()

    def emit(self, report, options, elapsed):
        content = self.render(report, options, elapsed)
        if options.get('out'):
            Path(options['out']).write_text(content)
            message = f'Report written to {options["out"]}'
            self.stdout.write(self.style.SUCCESS(message) if report.ok else self.style.WARNING(message))
        else:
            self.stdout.write(content, ending='')

    def echo(self, options, extra):
        parameters = {key: value for key, value in options.items() if key not in NOT_ECHOED}
        parameters.update(extra)
        return parameters

    def command_name(self):
        return self.__module__.rsplit('.', 1)[-1].replace('_', '-')
