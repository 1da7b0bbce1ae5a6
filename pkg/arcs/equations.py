"""
The determinant equations attached to an ordered arc S and the matrices built
from them.

Subsets are ascending index tuples into S. det(z, C) always uses C in
ascending order with z as the first row, so det(z, C) = S[z] . dual(C).
"""

import itertools
import logging
import math
from dataclasses import dataclass, field

import numpy as np

from . import exactla
from .exceptions import (
    AlphaSolveError,
    ContextError,
    DegenerateProjectionError,
    DimensionError,
    EvenCharacteristicError,
)
from .gf import codes, product
from .projgeom import subset_label

logger = logging.getLogger(__name__)


def _sorted(indices):
    return tuple(sorted(int(i) for i in indices))


def _union(base, *extra):
    return tuple(sorted(set(base) | set(extra)))


def _require_odd(spec):
    if not spec.is_odd:
        raise EvenCharacteristicError(f'{spec} has characteristic 2; the odd-q equations divide by 2')


@dataclass(frozen=True, eq=False)
class EqContext:
    """Nested index sets G ⊇ E ⊇ A with e ∈ E∖A inside the arc S.

    |E| = k+t-1, |A| = k-2 and |G| = k+t+n with t the deficiency of S.
    """

    arc: object
    G: tuple
    E: tuple
    A: tuple
    e: int

    def __post_init__(self):
        for name in ('G', 'E', 'A'):
            object.__setattr__(self, name, _sorted(getattr(self, name)))
        arc, k, t = self.arc, self.arc.k, self.arc.deficiency
        size = len(arc)
        if k < 3:
            raise ContextError('the matrices need k >= 3')
        if t < 0:
            raise ContextError(f'an arc of size {size} is larger than q+k-1')
        if len(set(self.G)) != len(self.G) or any(not 0 <= i < size for i in self.G):
            raise ContextError(f'G must be distinct indices into an arc of size {size}')
        if not set(self.E) <= set(self.G):
            raise ContextError('E must be a subset of G')
        if len(self.E) != k + t - 1:
            raise ContextError(f'|E| must be k+t-1 = {k + t - 1}, got {len(self.E)}')
        if not set(self.A) <= set(self.E) or len(self.A) != k - 2:
            raise ContextError(f'A must be a subset of E of size k-2 = {k - 2}')
        if self.e not in self.E or self.e in self.A:
            raise ContextError('e must lie in E but not in A')
        if self.n < 0:
            raise ContextError(f'|G| must be at least k+t = {k + t}, got {len(self.G)}')
        if self.n > size - k - t:
            raise ContextError(f'n must be at most |S|-k-t = {size - k - t}')

    @classmethod
    def build(cls, arc, E=None, A=None, e=None, n=None, G=None):
        """Fill unspecified sets with the first admissible indices."""
        k, t, size = arc.k, arc.deficiency, len(arc)
        E = _sorted(E) if E is not None else tuple(range(min(k + t - 1, size)))
        A = _sorted(A) if A is not None else E[: k - 2]
        if e is None:
            outside = [i for i in E if i not in A]
            if not outside:
                raise ContextError('E∖A is empty')
            e = outside[0]
        if G is None:
            if n is None:
                n = max(0, min(t, size - k - t))
            rest = [i for i in range(size) if i not in set(E)]
            if n + 1 > len(rest):
                raise ContextError(f'n must be at most |S|-k-t = {size - k - t}')
            G = _sorted(E + tuple(rest[: n + 1]))
        elif n is not None and len(G) != k + t + n:
            raise ContextError(f'|G| = {len(G)} does not match n = {n}')
        return cls(arc, G, E, A, int(e))

    @property
    def k(self):
        return self.arc.k

    @property
    def t(self):
        return self.arc.deficiency

    @property
    def n(self):
        return len(self.G) - self.k - self.t

    @property
    def U(self):
        return tuple(i for i in self.G if i not in set(self.E))

    @property
    def outside_A(self):
        return tuple(i for i in self.E if i not in set(self.A))

    @property
    def spec(self):
        return self.arc.spec

    def d_subsets(self):
        return list(itertools.combinations(self.A, self.k - 3))

    def parameters(self):
        return {
            'k': self.k,
            't': self.t,
            'n': self.n,
            'G': list(self.G),
            'E': list(self.E),
            'A': list(self.A),
            'e': self.e,
            'U': list(self.U),
        }


@dataclass(frozen=True, eq=False)
class AlphaSystem:
    scope: tuple
    subsets: tuple
    values: dict
    nullspace_dim: int
    equations_used: int
    equations_total: int
    seed: int = None

    def __getitem__(self, C):
        try:
            return self.values[tuple(C)]
        except KeyError:
            raise ContextError(f'alpha has no value for {subset_label(C)}') from None

    def __contains__(self, C):
        return tuple(C) in self.values

    def scaled(self, factor):
        return AlphaSystem(
            self.scope,
            self.subsets,
            {C: value * factor for C, value in self.values.items()},
            self.nullspace_dim,
            self.equations_used,
            self.equations_total,
            self.seed,
        )

    def as_rows(self):
        return [{'C': list(C), 'alpha': codes(self.values[C])} for C in self.subsets]


def inverse_det_product(arc, C, universe):
    """prod over z in universe∖C of det(z, C)^-1."""
    others = [z for z in universe if z not in set(C)]
    dets = arc.dets_against(others, C)
    if np.any(dets.view(np.ndarray) == 0):
        raise ContextError(f'det(z, {subset_label(C)}) vanishes; the points do not form an arc')
    return product(np.reciprocal(dets), arc.spec) if others else arc.spec.GF(1)


def lemma4_lhs(arc, alpha, E, A):
    """sum over C = A∪{b}, b ∈ E∖A, of alpha_C prod_{z∈E∖C} det(z, C)^-1."""
    E, A = _sorted(E), _sorted(A)
    k, t = arc.k, arc.deficiency
    if len(E) != k + t:
        raise ContextError(f'|E| must be k+t = {k + t}, got {len(E)}')
    if len(A) != k - 2 or not set(A) <= set(E):
        raise ContextError(f'A must be a subset of E of size k-2 = {k - 2}')
    total = arc.spec.GF(0)
    for b in E:
        if b in A:
            continue
        C = _union(A, b)
        total = total + alpha[C] * inverse_det_product(arc, C, E)
    return total


def lemma5_lhs(arc, alpha, E, e, D):
    """sum over C ⊆ E with C ⊇ D, |C| = k-1, of alpha_C prod_{z∈(E∪{e})∖C} det(z, C)^-1."""
    _require_odd(arc.spec)
    E, D = _sorted(E), _sorted(D)
    k, t = arc.k, arc.deficiency
    if len(E) != k + t - 1:
        raise ContextError(f'|E| must be k+t-1 = {k + t - 1}, got {len(E)}')
    if e in E:
        raise ContextError('e must lie outside E')
    if len(D) != k - 3 or not set(D) <= set(E):
        raise ContextError(f'D must be a subset of E of size k-3 = {k - 3}')
    universe = _union(E, e)
    rest = [i for i in E if i not in set(D)]
    total = arc.spec.GF(0)
    for pair in itertools.combinations(rest, 2):
        C = _union(D, *pair)
        total = total + alpha[C] * inverse_det_product(arc, C, universe)
    return total


def lemma5_from_lemma4(arc, alpha, E, e, D):
    """(-eq(D∪{e}) + sum_{a∈E∖D} eq(D∪{a})) / 2 with eq the Lemma-4 sum over E∪{e}."""
    _require_odd(arc.spec)
    E, D = _sorted(E), _sorted(D)
    universe = _union(E, e)
    total = -lemma4_lhs(arc, alpha, universe, _union(D, e))
    for a in E:
        if a not in D:
            total = total + lemma4_lhs(arc, alpha, universe, _union(D, a))
    return total / arc.spec.GF(2)


def _lemma4_row(arc, E, A, position, unknowns):
    row = arc.spec.GF.Zeros(unknowns)
    for b in E:
        if b in A:
            continue
        C = _union(A, b)
        row[position[C]] = inverse_det_product(arc, C, E)
    return row


def _nonzero_combination(GF, basis, seed, node_limit):
    """A combination of the rows of ``basis`` with no zero coordinate.

    Depth-first search over the weights. A coordinate is checked as soon as the
    last basis row touching it has its weight; scalars are tried in a seeded order.
    """
    dim = basis.shape[0]
    support = basis.view(np.ndarray) != 0
    dead = np.flatnonzero(~support.any(axis=0))
    if dead.size:
        raise AlphaSolveError(
            f'coordinate {int(dead[0])} is zero in every nullspace vector', nullspace_dim=dim
        )
    last_row = dim - 1 - np.argmax(support[::-1], axis=0)
    closing = [np.flatnonzero(last_row == i) for i in range(dim)]
    scalars = GF(np.random.default_rng(seed).permutation(GF.order))[:, None]
    nodes = 0

    def extend(i, partial):
        nonlocal nodes
        if i == dim:
            return partial
        nodes += 1
        if nodes > node_limit:
            raise AlphaSolveError(
                f'no all-nonzero vector found within {node_limit} search nodes', nullspace_dim=dim
            )
        candidates = partial + scalars * basis[i]
        alive = np.all(candidates[:, closing[i]].view(np.ndarray) != 0, axis=1)
        for row in np.flatnonzero(alive):
            found = extend(i + 1, candidates[row])
            if found is not None:
                return found
        return None

    vector = extend(0, GF.Zeros(basis.shape[1]))
    if vector is None:
        raise AlphaSolveError('every combination of the nullspace basis has a zero coordinate', nullspace_dim=dim)
    return vector


def solve_alpha(arc, scope=None, seed=1, node_limit=200_000):
    """Recover alpha_C from the nullspace of the Lemma-4 equations inside ``scope``.

    Equations are added one E at a time in lexicographic order; the sweep stops
    early once the nullspace is one-dimensional.
    """
    W = _sorted(scope) if scope is not None else tuple(range(len(arc)))
    k, t = arc.k, arc.deficiency
    if len(W) < k + t:
        raise AlphaSolveError(f'scope of size {len(W)} holds no Lemma-4 equation (needs k+t = {k + t})')
    GF = arc.spec.GF
    subsets = tuple(itertools.combinations(W, k - 1))
    position = {C: i for i, C in enumerate(subsets)}
    unknowns = len(subsets)
    total = math.comb(len(W), k + t) * math.comb(k + t, k - 2)

    echelon = GF.Zeros((0, unknowns))
    used = 0
    for E in itertools.combinations(W, k + t):
        batch = [_lemma4_row(arc, E, A, position, unknowns) for A in itertools.combinations(E, k - 2)]
        used += len(batch)
        stacked = GF(np.concatenate([echelon.view(np.ndarray)] + [row.view(np.ndarray)[None, :] for row in batch]))
        reduced, pivots = exactla.rref(stacked)
        echelon = reduced[: len(pivots)]
        if unknowns - len(pivots) <= 1:
            break
    basis = exactla.nullspace(echelon) if echelon.shape[0] else GF.Identity(unknowns)
    dim = basis.shape[0]
    logger.info('alpha system solved field=%s k=%d t=%d unknowns=%d equations=%d/%d nullspace_dim=%d',
                arc.spec, k, t, unknowns, used, total, dim)
    if dim == 0:
        raise AlphaSolveError('the Lemma-4 system has only the zero solution', nullspace_dim=0)

    if dim == 1:
        vector = basis[0]
    else:
        vector = _nonzero_combination(GF, basis, seed, node_limit)
    if np.any(vector.view(np.ndarray) == 0):
        raise AlphaSolveError('the nullspace vector has a zero coordinate', nullspace_dim=dim)
    vector = vector / vector[0]
    values = {C: vector[i] for i, C in enumerate(subsets)}
    return AlphaSystem(W, subsets, values, dim, used, total, seed if dim > 1 else None)


def lemma4_pairs(W, k, t):
    for E in itertools.combinations(W, k + t):
        for A in itertools.combinations(E, k - 2):
            yield E, A


def sample_subset(rng, pool, size):
    chosen = rng.choice(len(pool), size=size, replace=False)
    return _sorted(pool[i] for i in chosen)


@dataclass
class Residuals:
    checked: int = 0
    failures: list = field(default_factory=list)
    exhaustive: bool = False

    @property
    def ok(self):
        return not self.failures


def verify_alpha(arc, alpha, samples=500, seed=1):
    """Evaluate Lemma-4 sums: every (E, A) when |S| <= 8, otherwise ``samples`` random pairs."""
    W = alpha.scope
    k, t = arc.k, arc.deficiency
    residuals = Residuals(exhaustive=len(W) <= 8)
    if residuals.exhaustive:
        pairs = lemma4_pairs(W, k, t)
    else:
        rng = np.random.default_rng(seed)
        pairs = []
        for _ in range(samples):
            E = sample_subset(rng, W, k + t)
            pairs.append((E, sample_subset(rng, E, k - 2)))
    for E, A in pairs:
        residuals.checked += 1
        if lemma4_lhs(arc, alpha, E, A) != 0:
            residuals.failures.append({'E': list(E), 'A': list(A)})
    logger.info('alpha holdout checked=%d failures=%d exhaustive=%s',
                residuals.checked, len(residuals.failures), residuals.exhaustive)
    return residuals


def _u_products(arc, U, C):
    """prod_{u∈U∖{w}} det(u, C) for each w ∈ U, in U order."""
    dets = arc.dets_against(U, C)
    GF = arc.spec.GF
    values = GF.Zeros(len(U))
    for i in range(len(U)):
        values[i] = product(dets[np.arange(len(U)) != i], arc.spec) if len(U) > 1 else GF(1)
    return values


def pn_rows(ctx):
    A = set(ctx.A)
    return [C for C in itertools.combinations(ctx.E, ctx.k - 1) if len(A & set(C)) >= ctx.k - 3]


def pn_columns(ctx):
    return [(D, w) for D in ctx.d_subsets() for w in ctx.U]


def build_Pn(ctx):
    rows, columns = pn_rows(ctx), pn_columns(ctx)
    GF = ctx.spec.GF
    M = GF.Zeros((len(rows), len(columns)))
    for i, C in enumerate(rows):
        values = _u_products(ctx.arc, ctx.U, C)
        for j, (D, w) in enumerate(columns):
            if set(D) <= set(C):
                M[i, j] = values[ctx.U.index(w)]
    return exactla.GfMatrix(
        ctx.spec,
        M,
        tuple(subset_label(C) for C in rows),
        tuple(f"{subset_label(D, 'D')},w={w}" for D, w in columns),
    )


def dual_certificate_vector(ctx, alpha):
    """v_C = alpha_C prod_{z∈G∖C} det(z, C)^-1 over the rows of P_n."""
    GF = ctx.spec.GF
    rows = pn_rows(ctx)
    v = GF.Zeros(len(rows))
    for i, C in enumerate(rows):
        v[i] = alpha[C] * inverse_det_product(ctx.arc, C, ctx.G)
    zero = np.flatnonzero(v.view(np.ndarray) == 0)
    if zero.size:
        raise AlphaSolveError(f'certificate vanishes at {subset_label(rows[int(zero[0])])}')
    return v


def md_rows(ctx, D):
    return [_union(D, *L) for L in itertools.combinations(ctx.outside_A, 2)]


def build_MD(ctx, D):
    D = _sorted(D)
    if len(D) != ctx.k - 3 or not set(D) <= set(ctx.A):
        raise ContextError(f'D must be a subset of A of size k-3 = {ctx.k - 3}')
    rows = md_rows(ctx, D)
    GF = ctx.spec.GF
    M = GF.Zeros((len(rows), len(ctx.U)))
    for i, C in enumerate(rows):
        M[i, :] = _u_products(ctx.arc, ctx.U, C)
    return exactla.GfMatrix(
        ctx.spec,
        M,
        tuple(subset_label(C) for C in rows),
        tuple(f'w={w}' for w in ctx.U),
    )


def md_span_ranks(ctx, D, MD):
    """(rank of M_D, rank of its rows D∪{e,b})."""
    e_rows = [i for i, C in enumerate(md_rows(ctx, _sorted(D))) if ctx.e in C]
    return exactla.rank(MD), exactla.rank(MD.take(rows=e_rows))


def minor_singularity(ctx, D, MD):
    """3x3 minors on rows D∪{e,a}, D∪{e,b}, D∪{a,b} that are not singular."""
    D = _sorted(D)
    labels = MD.row_labels
    others = [i for i in ctx.outside_A if i != ctx.e]
    checked, failures = 0, []
    for a, b in itertools.combinations(others, 2):
        rows = [labels.index(subset_label(_union(D, *pair))) for pair in ((ctx.e, a), (ctx.e, b), (a, b))]
        for cols in itertools.combinations(range(MD.cols), 3):
            checked += 1
            if exactla.det(MD.array[np.ix_(rows, cols)]) != 0:
                failures.append({'a': a, 'b': b, 'w': [ctx.U[j] for j in cols]})
    return checked, failures


@dataclass(frozen=True, eq=False)
class PsiPoly:
    """psi(X) = sum_w lambda_w prod_{u∈U∖{w}} (u . X)."""

    arc: object
    U: tuple
    lambdas: object

    def __post_init__(self):
        if len(self.lambdas) != len(self.U):
            raise DimensionError('one lambda per element of U')
        if np.all(self.lambdas.view(np.ndarray) == 0):
            raise ContextError('psi needs at least one nonzero lambda')

    @property
    def degree(self):
        return len(self.U) - 1

    def evaluate(self, x):
        dets = self.arc.rows(self.U) @ x
        total = self.arc.spec.GF(0)
        for i, weight in enumerate(self.lambdas):
            if weight != 0:
                total = total + weight * product(dets[np.arange(len(dets)) != i], self.arc.spec)
        return total

    def to_dict(self):
        return {'U': list(self.U), 'lambda': codes(self.lambdas)}


def psi_from_MD(MD, ctx):
    """psi_D from the first canonical nullspace vector of M_D, or None if M_D has trivial nullspace."""
    if ctx.n < ctx.t:
        raise ContextError(f'psi_D needs n >= t (n={ctx.n}, t={ctx.t})')
    basis = exactla.nullspace(MD)
    if basis.shape[0] == 0:
        return None
    return PsiPoly(ctx.arc, ctx.U, basis[0])


def eval_psi(psi, C):
    return psi.evaluate(psi.arc.dual(_sorted(C)))


def _pencil_parameters(spec, count):
    GF = spec.GF
    points = [(GF(1), s) for s in GF.Range(0, spec.q)] + [(GF(0), GF(1))]
    if count > len(points):
        raise DimensionError(f'a degree-{count - 1} binary form needs {count} pencil points, PG(1,q) has {len(points)}')
    return points[:count]


def restrict_to_line(psi, A, b1, b2):
    """Coefficients c_i of psi(s X1 + r X2) = sum_i c_i s^(n-i) r^i, X1, X2 the duals of A∪{b1}, A∪{b2}."""
    A = _sorted(A)
    arc = psi.arc
    X1, X2 = arc.dual(_union(A, b1)), arc.dual(_union(A, b2))
    GF = arc.spec.GF
    if exactla.rank(GF(np.stack([X1.view(np.ndarray), X2.view(np.ndarray)]))) < 2:
        raise DegenerateProjectionError('the base points do not span a line of the dual space')
    n = psi.degree
    system = GF.Zeros((n + 1, n + 1))
    values = GF.Zeros(n + 1)
    for row, (s, r) in enumerate(_pencil_parameters(arc.spec, n + 1)):
        for i in range(n + 1):
            system[row, i] = s ** (n - i) * r ** i
        values[row] = psi.evaluate(s * X1 + r * X2)
    return exactla.solve(system, values)


def line_zero_count(psi, A, b1, b2):
    """Number of points of the dual line through A∪{b1}, A∪{b2} where psi vanishes."""
    A = _sorted(A)
    arc = psi.arc
    X1, X2 = arc.dual(_union(A, b1)), arc.dual(_union(A, b2))
    return sum(1 for s, r in _pencil_parameters(arc.spec, arc.q + 1) if psi.evaluate(s * X1 + r * X2) == 0)


def psis_for_context(ctx):
    """psi_D (or None) for each (k-3)-subset D of A."""
    return {D: psi_from_MD(build_MD(ctx, D), ctx) for D in ctx.d_subsets()}


def qt_rows(ctx):
    return [_union(ctx.A, b) for b in ctx.outside_A]


def build_Qt(ctx, psis=None):
    if ctx.n != ctx.t:
        raise ContextError(f'Q_t is defined for n = t (n={ctx.n}, t={ctx.t})')
    psis = psis_for_context(ctx) if psis is None else psis
    columns = ctx.d_subsets()
    missing = [D for D in columns if psis.get(D) is None]
    if missing:
        raise ContextError(f"psi_D is missing for {subset_label(missing[0], 'D')}")
    rows = qt_rows(ctx)
    GF = ctx.spec.GF
    M = GF.Zeros((len(rows), len(columns)))
    for i, C in enumerate(rows):
        for j, D in enumerate(columns):
            M[i, j] = eval_psi(psis[D], C)
    return exactla.GfMatrix(
        ctx.spec,
        M,
        tuple(subset_label(C) for C in rows),
        tuple(subset_label(D, 'D') for D in columns),
    )


def padded_column(ctx, Pn, D, psi):
    """v_D = sum_w lambda_w v_(D,w), a vector over the rows of P_n."""
    D = _sorted(D)
    columns = [j for j, (col_D, _) in enumerate(pn_columns(ctx)) if col_D == D]
    return Pn.array[:, columns] @ psi.lambdas
