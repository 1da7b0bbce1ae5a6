from django.conf import settings

from arcs.equations import solve_alpha
from arcs.management.base import ArcCommand, Report
from arcs.pipeline import pipeline_report
from arcs.serializers import PipelineReportSerializer


class Command(ArcCommand):
    help = 'Run every lemma check for one context with n = t'
    reads_arc = True

    def add_command_arguments(self, parser):
        self.add_context_arguments(parser)

    def compute(self, **options):
        arc = self.load_arc(options)
        ctx = self.context(arc, options)
        alpha = solve_alpha(arc, scope=ctx.G, seed=options['seed'], node_limit=settings.ARCFORGE_ALPHA_NODES)
        report = pipeline_report(ctx, alpha)
        lines = [f'{check.lemma:<16} {check.status.value}' for check in report.checks]
        return Report(
            PipelineReportSerializer(report).data,
            spec=arc.spec,
            parameters=ctx.parameters(),
            ok=not report.failed,
            failure=f'checks failed: {", ".join(report.failed)}',
            lines=lines,
        )
