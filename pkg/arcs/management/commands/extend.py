from django.conf import settings

from arcs.files import certificate_path, load_certificate, save_certificate
from arcs.management.base import ArcCommand, Report
from arcs.search import complete_search, verify_certificate
from arcs.serializers import SearchCertSerializer


class Command(ArcCommand):
    help = 'Search for an extension of the arc to the target size'
    reads_arc = True

    def add_command_arguments(self, parser):
        parser.add_argument('--target', type=int, help='Target arc size (default: q+2)')
        parser.add_argument(
            '--all',
            action='store_true',
            help='Count every completion instead of stopping at the first',
        )
        parser.add_argument(
            '--resume',
            action='store_true',
            help='Verify the stored certificate for this arc and target instead of searching',
        )
        parser.add_argument(
            '--cert-dir',
            default=str(settings.ARCFORGE_CERT_DIR),
            help='Certificate directory (default: ARCFORGE_CERT_DIR)',
        )
        parser.add_argument(
            '--no-save',
            action='store_true',
            help='Do not write a certificate file',
        )

    def compute(self, **options):
        arc = self.load_arc(options)
        target = options['target'] or arc.q + 2
        if options['resume']:
            return self.resume(arc, target, options)
        cert = complete_search(
            arc,
            target,
            threads=options['threads'],
            stop_at_first=not options['all'],
            seed=options['seed'],
        )
        body = dict(SearchCertSerializer(cert).data)
        if not options['no_save']:
            body['certificate'] = str(save_certificate(cert, options['cert_dir']))
        lines = [
            f'{cert.outcome.value} at {target}: {cert.nodes_expanded} nodes, largest arc {cert.max_size_reached}',
        ]
        if cert.completions is not None:
            lines.append(f'completions: {cert.completions}')
        return Report(body, spec=arc.spec, parameters={'target': target}, lines=lines)

    def resume(self, arc, target, options):
        path = certificate_path(options['cert_dir'], arc, target)
        data = load_certificate(path)
        problems = verify_certificate(data, arc, target)
        body = {
            'certificate': str(path),
            'outcome': data['outcome'],
            'verified': not problems,
            'problems': problems,
        }
        lines = [f'certificate {path}: {"verified" if not problems else "; ".join(problems)}']
        return Report(
            body,
            spec=arc.spec,
            parameters={'target': target},
            ok=not problems,
            failure='stored certificate does not verify',
            lines=lines,
        )
