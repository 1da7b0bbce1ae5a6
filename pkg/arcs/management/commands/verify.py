from django.conf import settings

from arcs import equations, pipeline
from arcs.management.base import ArcCommand, Report, index_list
from arcs.serializers import LemmaCheckSerializer

LEMMA_CHOICES = ['4', '5', 'projecttoplane', 'nowone', 'matrixmd', 'thepsis', 'projpsi', 'evalpsi',
                 'weightoneQ', 'woneQ']


class Command(ArcCommand):
    help = 'Check one lemma on a concrete arc'
    reads_arc = True

    def add_command_arguments(self, parser):
        parser.add_argument('--lemma', choices=LEMMA_CHOICES, required=True, help='Lemma to check')
        self.add_context_arguments(parser, with_d=True)
        parser.add_argument(
            '--scope',
            type=index_list,
            help='Arc indices for the alpha system of lemmas 4 and 5 (default: all)',
        )
        parser.add_argument(
            '--samples',
            type=int,
            default=settings.ARCFORGE_HOLDOUT_SAMPLES,
            help='Random instances checked when the scope has more than 8 points',
        )

    def compute(self, **options):
        arc = self.load_arc(options)
        check = self.check(arc, options)
        lines = [f'{check.lemma}: {check.status.value}']
        return Report(
            LemmaCheckSerializer(check).data,
            spec=arc.spec,
            ok=not check.failed,
            failure=f'lemma {check.lemma} fails on this arc',
            lines=lines,
        )

    def check(self, arc, options):
        lemma, seed = options['lemma'], options['seed']
        node_limit = settings.ARCFORGE_ALPHA_NODES
        if lemma in ('4', '5'):
            alpha = equations.solve_alpha(arc, scope=options['scope'] or None, seed=seed, node_limit=node_limit)
            if lemma == '4':
                return pipeline.check_lemma4(arc, alpha, samples=options['samples'], seed=seed)
            return pipeline.check_lemma5(arc, alpha, samples=options['samples'], seed=seed)

        ctx = self.context(arc, options)
        D = options['D'] if options['D'] is not None else ctx.d_subsets()[0]
        if lemma == 'projecttoplane':
            return pipeline.check_projecttoplane(ctx)
        if lemma == 'nowone':
            alpha = equations.solve_alpha(arc, scope=ctx.G, seed=seed, node_limit=node_limit)
            return pipeline.check_nowone(ctx, alpha)
        if lemma == 'matrixmd':
            return pipeline.check_matrixmd(ctx, D)
        if lemma == 'thepsis':
            return pipeline.check_thepsis(ctx, D)
        psis = equations.psis_for_context(ctx)
        if lemma == 'projpsi':
            return pipeline.check_projpsi(ctx, psis)
        Pn = equations.build_Pn(ctx)
        Qt = equations.build_Qt(ctx, psis)
        if lemma == 'evalpsi':
            return pipeline.check_evalpsi(ctx, Pn, Qt, psis)
        if lemma == 'weightoneQ':
            return pipeline.check_weightoneQ(ctx, Pn, Qt)
        return pipeline.check_woneQ(ctx, Qt)
