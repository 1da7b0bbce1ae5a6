"""
Per-lemma checks on a concrete arc.

Every check returns a LemmaCheck whose status is one of holds, fails or
not-instantiable; a check never aborts the pipeline because a hypothesis is
not met, it reports what it observed instead.
"""

import enum
import itertools
import logging
from dataclasses import dataclass, field

import numpy as np

from . import equations, exactla
from .exceptions import ContextError
from .gf import codes
from .projgeom import ConicStatus, conic_fit, project_arc, subset_label

logger = logging.getLogger(__name__)

LEMMAS = (
    'lemma4',
    'lemma5',
    'projecttoplane',
    'matrixmd',
    'thepsis',
    'projpsi',
    'evalpsi',
    'weightoneQ',
    'woneQ',
    'nowone',
)


class Status(enum.Enum):
    HOLDS = 'holds'
    FAILS = 'fails'
    NOT_INSTANTIABLE = 'not-instantiable'


@dataclass
class LemmaCheck:
    lemma: str
    parameters: dict
    status: Status
    witness: dict = field(default_factory=dict)

    @property
    def failed(self):
        return self.status is Status.FAILS


def _verdict(ok):
    return Status.HOLDS if ok else Status.FAILS


def check_lemma4(arc, alpha, samples=500, seed=1):
    residuals = equations.verify_alpha(arc, alpha, samples=samples, seed=seed)
    witness = {
        'checked': residuals.checked,
        'exhaustive': residuals.exhaustive,
        'failures': residuals.failures[:10],
        'nullspace_dim': alpha.nullspace_dim,
    }
    return LemmaCheck('lemma4', {'k': arc.k, 't': arc.deficiency, 'scope': list(alpha.scope)},
                      _verdict(residuals.ok), witness)


def check_lemma5(arc, alpha, samples=500, seed=1):
    parameters = {'k': arc.k, 't': arc.deficiency, 'scope': list(alpha.scope)}
    if not arc.spec.is_odd:
        return LemmaCheck('lemma5', parameters, Status.NOT_INSTANTIABLE, {'reason': 'q is even'})
    if arc.k < 3:
        return LemmaCheck('lemma5', parameters, Status.NOT_INSTANTIABLE, {'reason': 'needs k >= 3'})
    W = alpha.scope
    k, t = arc.k, arc.deficiency
    if len(W) <= 8:
        triples = [
            (E, e, D)
            for E in itertools.combinations(W, k + t - 1)
            for e in W if e not in E
            for D in itertools.combinations(E, k - 3)
        ]
    else:
        rng = np.random.default_rng(seed)
        triples = []
        for _ in range(samples):
            E = equations.sample_subset(rng, W, k + t - 1)
            rest = [i for i in W if i not in E]
            e = rest[int(rng.integers(0, len(rest)))]
            triples.append((E, e, equations.sample_subset(rng, E, k - 3)))
    failures = []
    for E, e, D in triples:
        direct = equations.lemma5_lhs(arc, alpha, E, e, D)
        derived = equations.lemma5_from_lemma4(arc, alpha, E, e, D)
        if direct != 0 or direct != derived:
            failures.append({'E': list(E), 'e': e, 'D': list(D), 'value': codes(direct)})
    return LemmaCheck('lemma5', parameters, _verdict(not failures),
                      {'checked': len(triples), 'failures': failures[:10]})


def conic_projections(ctx):
    """Conic fit of G projected from each (k-3)-subset D of E."""
    sub = ctx.arc.subarc(ctx.G)
    position = {index: i for i, index in enumerate(ctx.G)}
    fits = {}
    for D in itertools.combinations(ctx.E, ctx.k - 3):
        points = project_arc(sub, [position[i] for i in D])
        fits[D] = conic_fit(points, ctx.spec)
    return fits


def check_projecttoplane(ctx, fits=None):
    fits = conic_projections(ctx) if fits is None else fits
    witness = {
        subset_label(D, 'D'): {
            'status': fit.status.value,
            'form': fit.form.to_dict() if fit.form else None,
            'nullity': fit.nullity,
        }
        for D, fit in fits.items()
    }
    # several conics through the points still put them on a conic
    ok = all(fit.status is not ConicStatus.NONE for fit in fits.values())
    return LemmaCheck('projecttoplane', ctx.parameters(), _verdict(ok), witness)


def check_matrixmd(ctx, D, fits=None):
    D = tuple(D)
    fits = conic_projections(ctx) if fits is None else fits
    MD = equations.build_MD(ctx, D)
    full, with_e = equations.md_span_ranks(ctx, D, MD)
    checked, failures = equations.minor_singularity(ctx, D, MD)
    witness = {
        'D': list(D),
        'hypothesis': fits[D].status is ConicStatus.UNIQUE,
        'rank': full,
        'rank_e_rows': with_e,
        'minors_checked': checked,
        'minor_failures': failures[:10],
    }
    return LemmaCheck('matrixmd', ctx.parameters(), _verdict(full == with_e and not failures), witness)


def check_thepsis(ctx, D, psi=None):
    D = tuple(D)
    parameters = ctx.parameters()
    if ctx.n < ctx.t:
        return LemmaCheck('thepsis', parameters, Status.NOT_INSTANTIABLE, {'D': list(D), 'reason': 'needs n >= t'})
    MD = equations.build_MD(ctx, D)
    psi = equations.psi_from_MD(MD, ctx) if psi is None else psi
    if psi is None:
        return LemmaCheck('thepsis', parameters, Status.FAILS, {'D': list(D), 'psi': None})
    rows = equations.md_rows(ctx, D)
    nonvanishing = [subset_label(C) for C in rows if equations.eval_psi(psi, C) != 0]
    witness = {'D': list(D), 'psi': psi.to_dict(), 'nonvanishing': nonvanishing}
    return LemmaCheck('thepsis', parameters, _verdict(not nonvanishing), witness)


def check_projpsi(ctx, psis):
    """Vanishing of psi_D on (k-1)-subsets of E∖(A∖D) and nonvanishing at E∖D."""
    parameters = ctx.parameters()
    observed = {}
    ok = True
    for D, psi in psis.items():
        label = subset_label(D, 'D')
        if psi is None:
            observed[label] = {'psi': None}
            ok = False
            continue
        pool = [i for i in ctx.E if i not in set(ctx.A) - set(D)]
        zero = sum(1 for C in itertools.combinations(pool, ctx.k - 1) if equations.eval_psi(psi, C) == 0)
        total = len(list(itertools.combinations(pool, ctx.k - 1)))
        complement = tuple(i for i in ctx.E if i not in set(D))
        at_complement = codes(equations.eval_psi(psi, complement)) if len(complement) == ctx.k - 1 else None
        observed[label] = {'zeros': zero, 'subsets': total, 'psi_at_complement': at_complement}
        ok = ok and zero == total and at_complement not in (None, 0)
    if ctx.t != ctx.k - 3:
        return LemmaCheck('projpsi', parameters, Status.NOT_INSTANTIABLE,
                          {'reason': 'needs t = k-3', 'observed': observed})
    return LemmaCheck('projpsi', parameters, _verdict(ok), observed)


def check_evalpsi(ctx, Pn, Qt, psis):
    """v_D lies in the column span of P_t, is zero off the rows A∪{b} and agrees there with Q_t."""
    parameters = ctx.parameters()
    base_rank = exactla.rank(Pn)
    rows = equations.pn_rows(ctx)
    q_rows = [rows.index(C) for C in equations.qt_rows(ctx)]
    witness = {}
    ok = True
    for j, (D, psi) in enumerate(psis.items()):
        v = equations.padded_column(ctx, Pn, D, psi)
        in_span = exactla.rank(Pn.transpose().with_row(v, 'v_D')) == base_rank
        stray = [subset_label(C) for C, value in zip(rows, v) if value != 0 and not set(ctx.A) <= set(C)]
        matches = bool(np.all(v[q_rows] == Qt.array[:, j]))
        witness[subset_label(D, 'D')] = {'in_span': in_span, 'stray_rows': stray, 'matches_Q': matches}
        ok = ok and in_span and not stray and matches
    return LemmaCheck('evalpsi', parameters, _verdict(ok), witness)


def check_weightoneQ(ctx, Pn, Qt):
    """Weight-one vectors in the column span of Q_t carry over to P_t on the rows A∪{b}."""
    weight_Q = exactla.weight_one_in_colspace(Qt)
    weight_P = exactla.weight_one_in_colspace(Pn)
    rows = equations.pn_rows(ctx)
    lifted = [rows.index(C) for C in equations.qt_rows(ctx)]
    missing = [Qt.row_labels[i] for i in weight_Q if lifted[i] not in weight_P]
    witness = {'Q_weight_one': [Qt.row_labels[i] for i in weight_Q], 'not_lifted': missing}
    return LemmaCheck('weightoneQ', ctx.parameters(), _verdict(not missing), witness)


def check_woneQ(ctx, Qt):
    parameters = ctx.parameters()
    weight = exactla.weight_one_in_colspace(Qt)
    witness = {'rank': exactla.rank(Qt), 'shape': list(Qt.shape), 'weight_one': [Qt.row_labels[i] for i in weight]}
    if ctx.t != ctx.k - 3:
        witness['reason'] = 'needs t = k-3'
        return LemmaCheck('woneQ', parameters, Status.NOT_INSTANTIABLE, witness)
    return LemmaCheck('woneQ', parameters, _verdict(bool(weight)), witness)


def check_nowone(ctx, alpha, Pn=None):
    """P_n has no weight-one vector in its column span and v . P_n = 0."""
    parameters = ctx.parameters()
    Pn = equations.build_Pn(ctx) if Pn is None else Pn
    weight = exactla.weight_one_in_colspace(Pn)
    v = equations.dual_certificate_vector(ctx, alpha)
    residual = v @ Pn.array
    nonzero = [Pn.col_labels[j] for j in np.flatnonzero(residual.view(np.ndarray))]
    base_rank = exactla.rank(Pn)
    augmented = exactla.rank(Pn.transpose().with_row(v, 'v'))
    witness = {
        'shape': list(Pn.shape),
        'rank': base_rank,
        'weight_one': [Pn.row_labels[i] for i in weight],
        'residual_nonzero': nonzero,
        'certificate_rank_gain': augmented - base_rank,
    }
    if not ctx.spec.is_odd:
        witness['reason'] = 'q is even'
        return LemmaCheck('nowone', parameters, Status.NOT_INSTANTIABLE, witness)
    return LemmaCheck('nowone', parameters, _verdict(not weight and not nonzero), witness)


@dataclass
class PipelineReport:
    parameters: dict
    checks: list

    @property
    def failed(self):
        return [check.lemma for check in self.checks if check.failed]


def pipeline_report(ctx, alpha):
    """Run the full chain for one context with n = t."""
    if ctx.n != ctx.t:
        raise ContextError(f'the pipeline runs with n = t (n={ctx.n}, t={ctx.t})')
    fits = conic_projections(ctx)
    checks = [check_projecttoplane(ctx, fits)]
    checks += [check_matrixmd(ctx, D, fits) for D in ctx.d_subsets()]
    psis = equations.psis_for_context(ctx)
    checks += [check_thepsis(ctx, D, psi) for D, psi in psis.items()]
    checks.append(check_projpsi(ctx, psis))
    Pn = equations.build_Pn(ctx)
    if all(psi is not None for psi in psis.values()):
        Qt = equations.build_Qt(ctx, psis)
        checks.append(check_evalpsi(ctx, Pn, Qt, psis))
        checks.append(check_weightoneQ(ctx, Pn, Qt))
        checks.append(check_woneQ(ctx, Qt))
    else:
        for lemma in ('evalpsi', 'weightoneQ', 'woneQ'):
            checks.append(LemmaCheck(lemma, ctx.parameters(), Status.NOT_INSTANTIABLE,
                                     {'reason': 'some psi_D is missing'}))
    checks.append(check_nowone(ctx, alpha, Pn))
    report = PipelineReport(ctx.parameters(), checks)
    logger.info('pipeline finished field=%s k=%d t=%d failed=%s', ctx.spec, ctx.k, ctx.t, report.failed)
    return report
