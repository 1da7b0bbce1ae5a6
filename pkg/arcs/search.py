"""
Arc extension search.

Points of PG(k-1, q) are identified with their index in
:func:`arcs.projgeom.enumerate_points`; every search adds points in increasing
index order, so the first completion found is the lexicographically first one.
"""

import enum
import functools
import itertools
import logging
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from . import equations, exactla
from .exceptions import ContextError, DimensionError, EvenCharacteristicError
from .pipeline import conic_projections
from .projgeom import Arc, ConicStatus, enumerate_points, hyperplane_normals, is_arc, nrc

logger = logging.getLogger(__name__)


@functools.lru_cache(maxsize=8)
def _points(spec, k):
    return enumerate_points(spec, k)


def _on_hyperplanes(points, normals):
    if normals.shape[0] == 0 or points.shape[0] == 0:
        return np.zeros(points.shape[0], dtype=bool)
    return np.any((points @ normals.T).view(np.ndarray) == 0, axis=1)


def extension_mask(arc, points=None):
    """Boolean mask over ``points`` of the P for which arc ∪ {P} is still an arc."""
    points = _points(arc.spec, arc.k) if points is None else points
    m, k = len(arc), arc.k
    if m < k - 1:
        raise DimensionError(f'extension points need at least k-1 = {k - 1} arc points, got {m}')
    normals = hyperplane_normals(arc.vectors, itertools.combinations(range(m), k - 1))
    return ~_on_hyperplanes(points, normals)


def extension_points(arc):
    """Normalized points P with arc ∪ {P} an arc, in lexicographic order."""
    points = _points(arc.spec, arc.k)
    return points[extension_mask(arc, points)]


class Outcome(enum.Enum):
    REACHED = 'reached'
    UNREACHABLE = 'unreachable'


@dataclass
class SearchCert:
    base: Arc
    target_size: int
    outcome: Outcome
    witness: Arc = None
    nodes_expanded: int = 0
    max_size_reached: int = 0
    elapsed: float = 0.0
    candidate_order: str = 'lex'
    seed: int = None
    completions: int = None

    @property
    def reached(self):
        return self.outcome is Outcome.REACHED


@dataclass
class _Tally:
    nodes: int = 0
    max_size: int = 0
    first: object = None
    completions: int = 0

    def merge(self, other):
        self.nodes += other.nodes
        self.max_size = max(self.max_size, other.max_size)
        if self.first is None:
            self.first = other.first
        self.completions += other.completions


class ArcSearch:
    """Depth-first completion of a base arc to ``target`` points.

    Each node keeps the candidate indices that extend the current arc; adding a
    point removes the candidates on a hyperplane through it and k-2 current
    points.
    """

    def __init__(self, base, target, stop_at_first=True, threads=1):
        if target <= len(base):
            raise DimensionError(f'target {target} must exceed the base size {len(base)}')
        self.base = base
        self.target = target
        self.stop_at_first = stop_at_first
        self.threads = max(1, int(threads))
        self.points = _points(base.spec, base.k)

    def _candidates_after(self, vectors, point, remaining):
        if not remaining.size:
            return remaining
        k = vectors.shape[1]
        stacked = type(vectors)(np.concatenate([vectors.view(np.ndarray), point.view(np.ndarray)[None, :]]))
        last = stacked.shape[0] - 1
        subsets = (subset + (last,) for subset in itertools.combinations(range(last), k - 2))
        normals = hyperplane_normals(stacked, subsets)
        return remaining[~_on_hyperplanes(self.points[remaining], normals)]

    def _descend(self, vectors, candidates, tally):
        tally.nodes += 1
        size = vectors.shape[0]
        tally.max_size = max(tally.max_size, size)
        if size >= self.target:
            if tally.first is None:
                tally.first = vectors
            tally.completions += 1
            return True
        if size + candidates.size < self.target:
            return False
        for position, index in enumerate(candidates):
            remaining = candidates[position + 1:]
            if size + 1 + remaining.size < self.target:
                break
            found = self._branch(vectors, index, remaining, tally)
            if found and self.stop_at_first:
                return True
        return tally.first is not None

    def _branch(self, vectors, index, remaining, tally):
        point = self.points[index]
        following = self._candidates_after(vectors, point, remaining)
        extended = type(vectors)(np.concatenate([vectors.view(np.ndarray), point.view(np.ndarray)[None, :]]))
        return self._descend(extended, following, tally)

    def _root_branches(self, candidates):
        size = len(self.base)
        branches = []
        for position, index in enumerate(candidates):
            remaining = candidates[position + 1:]
            if size + 1 + remaining.size < self.target:
                break
            branches.append((index, remaining))
        return branches

    def _run_branch(self, branch):
        tally = _Tally()
        self._branch(self.base.vectors, branch[0], branch[1], tally)
        return tally

    def run(self, seed=None):
        started = time.perf_counter()
        candidates = np.flatnonzero(extension_mask(self.base, self.points))
        total = _Tally(nodes=1, max_size=len(self.base))
        if len(self.base) + candidates.size >= self.target:
            branches = self._root_branches(candidates)
            if self.threads > 1 and len(branches) > 1:
                with ThreadPoolExecutor(max_workers=self.threads) as pool:
                    results = pool.map(self._run_branch, branches)
                    tallies = list(results)
            else:
                tallies = self._serial(branches)
            for tally in tallies:
                total.merge(tally)
                if tally.first is not None and self.stop_at_first:
                    break
        witness = Arc(self.base.spec, self.base.k, total.first) if total.first is not None else None
        cert = SearchCert(
            base=self.base,
            target_size=self.target,
            outcome=Outcome.REACHED if witness is not None else Outcome.UNREACHABLE,
            witness=witness,
            nodes_expanded=total.nodes,
            max_size_reached=total.max_size,
            elapsed=time.perf_counter() - started,
            seed=seed,
            completions=None if self.stop_at_first else total.completions,
        )
        logger.info('search finished field=%s k=%d base=%d target=%d outcome=%s nodes=%d max_size=%d elapsed=%.3f',
                    self.base.spec, self.base.k, len(self.base), self.target, cert.outcome.value,
                    cert.nodes_expanded, cert.max_size_reached, cert.elapsed)
        return cert

    def _serial(self, branches):
        for branch in branches:
            tally = self._run_branch(branch)
            yield tally
            if tally.first is not None and self.stop_at_first:
                return


def complete_search(G, target, threads=1, stop_at_first=True, seed=None):
    return ArcSearch(G, target, stop_at_first=stop_at_first, threads=threads).run(seed=seed)


def verify_certificate(cert_data, base, target):
    """Re-check a stored certificate against the requested base and target.

    Returns a list of problems; empty when the certificate is consistent.
    """
    problems = []
    if cert_data['field']['spec'] != base.spec or cert_data['k'] != base.k:
        problems.append('certificate field or dimension differs from the input arc')
    if cert_data['target'] != target:
        problems.append(f"certificate target {cert_data['target']} differs from {target}")
    if cert_data['base'] != base.codes():
        problems.append('certificate base differs from the input arc')
    if cert_data['outcome'] == Outcome.REACHED.value:
        witness = cert_data.get('witness')
        if not witness:
            problems.append('reached certificate has no witness')
        else:
            arc = Arc.from_codes(base.spec, base.k, witness)
            rows = {tuple(row) for row in witness}
            if len(arc) < cert_data['target']:
                problems.append('witness is smaller than the target')
            if not all(tuple(row) in rows for row in base.codes()):
                problems.append('witness does not contain the base')
            check = is_arc(arc.vectors, base.spec, base.k)
            if not check.ok:
                problems.append(f'witness is not an arc: dependent subset {list(check.witness)}')
    return problems


def _theorem_subsets(q, size, strategy, trials, seed):
    if strategy == 'prefix':
        return [tuple(range(size))]
    if strategy != 'random':
        raise DimensionError(f'unknown subset strategy {strategy!r}')
    rng = np.random.default_rng(seed)
    return [tuple(sorted(int(i) for i in rng.choice(q + 1, size=size, replace=False))) for _ in range(trials)]


@dataclass
class TheoremReport:
    spec: object
    k: int
    strategy: str
    seed: int
    subsets: list
    certificates: list

    @property
    def holds(self):
        return all(not cert.reached for cert in self.certificates)


def theorem_check(spec, k, strategy='prefix', trials=3, seed=1, threads=1):
    """Search every chosen (3k-6)-subset of nrc(spec, k) for a completion to q+2 points."""
    if not spec.is_odd:
        raise EvenCharacteristicError(f'{spec} has even order; the statement concerns odd q')
    if k < 3:
        raise DimensionError('k must be at least 3')
    size = 3 * k - 6
    if size > spec.q + 1:
        raise DimensionError(f'3k-6 = {size} exceeds q+1 = {spec.q + 1}')
    curve = nrc(spec, k)
    subsets = _theorem_subsets(spec.q, size, strategy, trials, seed)
    certificates = [
        complete_search(curve.subarc(subset), spec.q + 2, threads=threads, seed=seed if strategy == 'random' else None)
        for subset in subsets
    ]
    report = TheoremReport(spec, k, strategy, seed, subsets, certificates)
    logger.info('theorem check field=%s k=%d strategy=%s subsets=%d holds=%s',
                spec, k, strategy, len(subsets), report.holds)
    return report


def conjectured_regime(p, n, k):
    return k <= p + n * (p - 2)


def conjectured_bound(spec):
    p, q = spec.p, spec.q
    return (p * q - 2 * q + 6 * p - 10) / (2 * p - 3)


def conjecture_explore(arc, E, A, n_values, G=None, e=None):
    """Rank and weight-one data of P_n for each n, G_n = E plus the first n+1 further points of G."""
    pool = tuple(G) if G is not None else tuple(range(len(arc)))
    E = tuple(sorted(E))
    rest = [i for i in pool if i not in set(E)]
    rows = []
    for n in n_values:
        if n + 1 > len(rest):
            raise ContextError(f'n = {n} needs {n + 1} points of G outside E, only {len(rest)} available')
        ctx = equations.EqContext.build(arc, E=E, A=A, e=e, G=E + tuple(rest[: n + 1]))
        Pn = equations.build_Pn(ctx)
        fits = conic_projections(ctx)
        rows.append({
            'n': n,
            'rows': Pn.rows,
            'cols': Pn.cols,
            'rank': exactla.rank(Pn),
            'weight_one': [Pn.row_labels[i] for i in exactla.weight_one_in_colspace(Pn)],
            'conic_hypothesis': all(fit.status is ConicStatus.UNIQUE for fit in fits.values()),
            'conjectured_regime': conjectured_regime(arc.spec.p, n, arc.k),
        })
    logger.info('explorer finished field=%s k=%d n_values=%s', arc.spec, arc.k, list(n_values))
    return rows
