from django.conf import settings

from arcs.equations import solve_alpha, verify_alpha
from arcs.management.base import ArcCommand, Report, index_list
from arcs.serializers import AlphaSystemSerializer


class Command(ArcCommand):
    help = 'Solve the Lemma-4 equations of an arc for the coefficients alpha_C'
    reads_arc = True

    def add_command_arguments(self, parser):
        parser.add_argument(
            '--scope',
            type=index_list,
            help='Restrict unknowns and equations to these arc indices (default: all)',
        )
        parser.add_argument(
            '--verify-samples',
            type=int,
            default=settings.ARCFORGE_HOLDOUT_SAMPLES,
            help='Random (E, A) pairs re-checked when the scope has more than 8 points',
        )

    def compute(self, **options):
        arc = self.load_arc(options)
        alpha = solve_alpha(
            arc,
            scope=options['scope'] or None,
            seed=options['seed'],
            node_limit=settings.ARCFORGE_ALPHA_NODES,
        )
        residuals = verify_alpha(arc, alpha, samples=options['verify_samples'], seed=options['seed'])
        body = dict(AlphaSystemSerializer(alpha).data)
        body['holdout'] = {
            'checked': residuals.checked,
            'exhaustive': residuals.exhaustive,
            'failures': residuals.failures,
        }
        lines = [
            f'alpha over {len(alpha.subsets)} subsets, nullspace dimension {alpha.nullspace_dim}',
            f'equations used {alpha.equations_used} of {alpha.equations_total}',
            f'holdout: {residuals.checked} checked, {len(residuals.failures)} failures',
        ]
        return Report(
            body,
            spec=arc.spec,
            parameters={'k': arc.k, 't': arc.deficiency},
            ok=residuals.ok,
            failure=f'{len(residuals.failures)} Lemma-4 sums do not vanish',
            lines=lines,
        )
