from arcs import equations
from arcs.management.base import ArcCommand, Report
from arcs.serializers import GfMatrixSerializer


class Command(ArcCommand):
    help = 'Build M_D and the polynomial psi_D read off its nullspace'
    reads_arc = True

    def add_command_arguments(self, parser):
        self.add_context_arguments(parser, with_d=True)

    def compute(self, **options):
        arc = self.load_arc(options)
        ctx = self.context(arc, options)
        D = options['D'] if options['D'] is not None else ctx.d_subsets()[0]
        MD = equations.build_MD(ctx, D)
        full, with_e = equations.md_span_ranks(ctx, D, MD)
        checked, failures = equations.minor_singularity(ctx, D, MD)
        psi = equations.psi_from_MD(MD, ctx) if ctx.n >= ctx.t else None
        body = {
            'D': list(D),
            'matrix': GfMatrixSerializer(MD).data,
            'rank': full,
            'rank_e_rows': with_e,
            'minors_checked': checked,
            'minor_failures': failures,
            'psi': psi.to_dict() if psi is not None else None,
        }
        lines = [
            f'M_D for D={list(D)}: {MD.rows} x {MD.cols}, rank {full} (rows through e: {with_e})',
            f'3x3 minors: {checked} checked, {len(failures)} nonsingular',
            f'psi_D: {body["psi"]}',
        ]
        return Report(body, spec=arc.spec, parameters=ctx.parameters(), lines=lines)
