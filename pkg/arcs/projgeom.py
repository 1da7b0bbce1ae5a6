"""
Projective geometry over GF(q): points, arcs, normal rational curves,
projections, conics, tangent hyperplanes and the arc/MDS-code bridge.

Vectors are 1-D FieldArrays, point sets are 2-D FieldArrays with one vector per
row. Subsets of an arc are ascending index tuples into the arc's stored order.
"""

import enum
import functools
import itertools
import logging
from dataclasses import dataclass

import galois
import numpy as np

from . import exactla
from .exceptions import DegenerateProjectionError, DimensionError, NotAnArcError
from .gf import codes

logger = logging.getLogger(__name__)


def normalize_point(vector):
    """Scale a nonzero vector so its first nonzero coordinate is 1."""
    nonzero = np.flatnonzero(vector.view(np.ndarray))
    if not nonzero.size:
        raise DegenerateProjectionError('the zero vector is not a point')
    return vector / vector[nonzero[0]]


def normalize_rows(points):
    if points.shape[0] == 0:
        return points.copy()
    return type(points)(np.stack([normalize_point(row).view(np.ndarray) for row in points]))


def point_key(vector):
    return tuple(codes(normalize_point(vector)))


def subset_label(indices, name='C'):
    return f"{name}={{{','.join(str(i) for i in indices)}}}"


@dataclass(frozen=True, eq=False)
class Arc:
    """An ordered set of vectors of V_k(GF(q)), one per row of ``vectors``.

    The constructor does not check the arc property; use :func:`is_arc` or
    :meth:`validated`.
    """

    spec: object
    k: int
    vectors: galois.FieldArray

    def __post_init__(self):
        vectors = self.spec.GF(self.vectors)
        if vectors.ndim != 2 or vectors.shape[1] != self.k:
            raise DimensionError(f'expected vectors of length {self.k}, got shape {vectors.shape}')
        if self.k < 2:
            raise DimensionError('k must be at least 2')
        object.__setattr__(self, 'vectors', vectors)

    @classmethod
    def from_codes(cls, spec, k, rows):
        rows = [list(row) for row in rows]
        if any(len(row) != k for row in rows):
            raise DimensionError(f'every vector must have {k} coordinates')
        array = np.asarray(rows, dtype=np.int64).reshape(len(rows), k)
        return cls(spec, k, spec.GF(array))

    def validated(self):
        check = is_arc(self.vectors, self.spec, self.k)
        if not check.ok:
            raise NotAnArcError(f"{subset_label(check.witness, 'S')} is linearly dependent", check.witness)
        return self

    def __len__(self):
        return self.vectors.shape[0]

    @property
    def q(self):
        return self.spec.q

    @property
    def deficiency(self):
        return self.spec.q + self.k - 1 - len(self)

    def codes(self):
        return codes(self.vectors)

    def subarc(self, indices):
        return Arc(self.spec, self.k, self.vectors[list(indices)])

    def reordered(self, order):
        order = list(order)
        if sorted(order) != list(range(len(self))):
            raise DimensionError('reordering must be a permutation of the arc indices')
        return self.subarc(order)

    def rows(self, indices):
        indices = list(indices)
        if not indices:
            return self.spec.GF.Zeros((0, self.k))
        return self.vectors[indices]

    @functools.cached_property
    def _duals(self):
        return {}

    def dual(self, C):
        """Dual vector of the ascending (k-1)-tuple C."""
        C = tuple(C)
        cached = self._duals.get(C)
        if cached is None:
            cached = dual_coords(self.rows(C))
            self._duals[C] = cached
        return cached

    def det_with(self, z, C):
        """det(z, C) = z . dual(C)."""
        return self.vectors[z] @ self.dual(C)

    def dets_against(self, zs, C):
        zs = list(zs)
        if not zs:
            return self.spec.GF.Zeros(0)
        return self.vectors[zs] @ self.dual(C)


@dataclass(frozen=True)
class ArcCheck:
    ok: bool
    witness: tuple = None


def _as_point_array(points, spec, k):
    if isinstance(points, galois.FieldArray):
        array = spec.GF(points)
    else:
        rows = [list(row) for row in points]
        if any(len(row) != k for row in rows):
            raise DimensionError(f'every vector must have {k} coordinates')
        array = spec.GF(np.asarray(rows, dtype=np.int64).reshape(len(rows), k))
    if array.ndim != 2 or array.shape[1] != k:
        raise DimensionError(f'expected vectors of length {k}, got shape {array.shape}')
    return array


def is_arc(points, spec, k):
    """True iff every k-subset is a basis; otherwise the first dependent k-tuple."""
    array = _as_point_array(points, spec, k)
    m = array.shape[0]
    if m < k:
        # fewer than k vectors: the arc property is linear independence of all of them
        if exactla.rank(array) < m:
            for size in range(1, m + 1):
                for subset in itertools.combinations(range(m), size):
                    if exactla.rank(array[list(subset)]) < size:
                        return ArcCheck(False, subset)
        return ArcCheck(True)
    for subset in itertools.combinations(range(m), k):
        if exactla.det(array[list(subset)]) == 0:
            return ArcCheck(False, subset)
    return ArcCheck(True)


def nrc(spec, k):
    """Normal rational curve: (1, t, ..., t^(k-1)) for t in code order, then (0, ..., 0, 1)."""
    if k < 2:
        raise DimensionError('k must be at least 2')
    if k > spec.q + 1:
        raise DimensionError(f'a normal rational curve with k={k} > q+1={spec.q + 1} is not an arc')
    GF = spec.GF
    t = GF.Range(0, spec.q)
    vectors = GF.Zeros((spec.q + 1, k))
    column = GF.Ones(spec.q)
    for i in range(k):
        vectors[: spec.q, i] = column
        column = column * t
    vectors[spec.q, k - 1] = 1
    return Arc(spec, k, vectors)


def dual_coords(C):
    """x with u . x = det(u, C) for every u; x_j = (-1)^j det(C without column j)."""
    C = type(C)(C)
    rows, k = C.shape
    if rows != k - 1:
        raise DimensionError(f'dual coordinates need {k - 1} vectors, got {rows}')
    GF = type(C)
    x = GF.Zeros(k)
    for j in range(k):
        minor = np.delete(C.view(np.ndarray), j, axis=1)
        value = exactla.det(GF(minor))
        x[j] = -value if j % 2 else value
    return x


def hyperplane_normals(vectors, subsets):
    """One (projective) dual vector per subset of k-1 rows, stacked as rows.

    Only the hyperplane matters here, so the normal is the nullspace vector
    rather than the determinant-scaled dual.
    """
    GF = type(vectors)
    k = vectors.shape[1]
    normals = [exactla.nullspace(vectors[list(subset)])[0] for subset in subsets]
    if not normals:
        return GF.Zeros((0, k))
    return GF(np.stack([n.view(np.ndarray) for n in normals]))


def _completion_basis(D, k):
    GF = type(D)
    basis = [row.view(np.ndarray) for row in D]
    current = len(basis)
    for i in range(k):
        unit = np.zeros(k, dtype=np.int64)
        unit[i] = 1
        trial = GF(np.stack(basis + [unit]))
        if exactla.rank(trial) > current:
            basis.append(unit)
            current += 1
        if current == k:
            break
    return GF(np.stack(basis))


def project(points, D):
    """Quotient representatives of ``points`` modulo <D>.

    D is completed to a basis by appending standard basis vectors in order;
    each point is written in that basis and its D-coordinates are dropped.
    """
    GF = type(points)
    k = points.shape[1]
    d = D.shape[0]
    if d == 0:
        return points.copy()
    if exactla.rank(D) < d:
        raise DegenerateProjectionError('projection centre is linearly dependent')
    basis = _completion_basis(D, k)
    coordinates = points @ np.linalg.inv(basis)
    projected = coordinates[:, d:]
    if points.shape[0] and np.any(np.all(projected.view(np.ndarray) == 0, axis=1)):
        raise DegenerateProjectionError('a projected point lies inside the projection centre')
    return GF(projected)


def project_arc(arc, D):
    """Project the points of ``arc`` outside the index tuple D from <D>."""
    rest = [i for i in range(len(arc)) if i not in set(D)]
    return project(arc.rows(rest), arc.rows(D))


CONIC_TERMS = ('c00', 'c11', 'c22', 'c01', 'c02', 'c12')


@dataclass(frozen=True)
class ConicForm:
    """c00 x0^2 + c11 x1^2 + c22 x2^2 + c01 x0x1 + c02 x0x2 + c12 x1x2, first nonzero coefficient 1."""

    spec: object
    coefficients: tuple

    def evaluate(self, point):
        row = conic_monomials(self.spec.GF(np.atleast_2d(point.view(np.ndarray))))[0]
        return row @ self.spec.GF(list(self.coefficients))

    def contains(self, point):
        return self.evaluate(point) == 0

    def to_dict(self):
        return dict(zip(CONIC_TERMS, self.coefficients))


def is_on_conic(form, point):
    return form.contains(point)


class ConicStatus(enum.Enum):
    UNIQUE = 'unique'
    NONE = 'none'
    NOT_UNIQUE = 'not unique'


@dataclass(frozen=True)
class ConicFit:
    status: ConicStatus
    form: ConicForm = None
    nullity: int = 0


def conic_monomials(points):
    x0, x1, x2 = points[:, 0], points[:, 1], points[:, 2]
    GF = type(points)
    return GF(np.column_stack([
        (x0 * x0).view(np.ndarray),
        (x1 * x1).view(np.ndarray),
        (x2 * x2).view(np.ndarray),
        (x0 * x1).view(np.ndarray),
        (x0 * x2).view(np.ndarray),
        (x1 * x2).view(np.ndarray),
    ]))


def conic_fit(points, spec):
    points = spec.GF(points)
    if points.ndim != 2 or points.shape[1] != 3:
        raise DimensionError('conic fitting needs points of PG(2, q)')
    if points.shape[0] == 0:
        return ConicFit(ConicStatus.NOT_UNIQUE, nullity=6)
    basis = exactla.nullspace(conic_monomials(points))
    nullity = basis.shape[0]
    if nullity == 0:
        return ConicFit(ConicStatus.NONE)
    if nullity > 1:
        return ConicFit(ConicStatus.NOT_UNIQUE, nullity=nullity)
    form = ConicForm(spec, tuple(codes(normalize_point(basis[0]))))
    return ConicFit(ConicStatus.UNIQUE, form, 1)


def tangent_hyperplanes(arc, A):
    """Duals of the hyperplanes through <A> that contain no other point of the arc.

    The pencil through <A> is walked as h1 + s h2 for s in code order, then h2.
    """
    A = tuple(A)
    if len(A) != arc.k - 2:
        raise DimensionError(f'A must have {arc.k - 2} elements')
    GF = arc.spec.GF
    if A:
        pencil = exactla.nullspace(arc.rows(A))
    else:
        pencil = GF.Identity(arc.k)
    if pencil.shape[0] != 2:
        raise DegenerateProjectionError('A does not span a (k-2)-dimensional subspace')
    h1, h2 = pencil[0], pencil[1]
    others = arc.rows([i for i in range(len(arc)) if i not in set(A)])
    tangents = []
    members = [h1 + s * h2 for s in GF.Range(0, arc.q)] + [h2]
    for h in members:
        if others.shape[0] == 0 or np.all((others @ h).view(np.ndarray) != 0):
            tangents.append(normalize_point(h))
    return tangents


def mobius_nrc_matrix(spec, k, a, b, c, d):
    """Change of basis taking (1, t, ..., t^(k-1)) to ((ct+d)^(k-1-j) (at+b)^j)_j.

    Row vectors are mapped by right multiplication: image = v @ M.
    """
    GF = spec.GF
    a, b, c, d = (int(x) for x in (a, b, c, d))
    if GF(a) * GF(d) == GF(b) * GF(c):
        raise DegenerateProjectionError('ad = bc does not define a change of basis')
    denominator = galois.Poly([c, d], field=GF)
    numerator = galois.Poly([a, b], field=GF)
    M = GF.Zeros((k, k))
    for j in range(k):
        poly = denominator ** (k - 1 - j) * numerator ** j
        ascending = poly.coeffs[::-1]
        M[: len(ascending), j] = ascending
    return exactla.GfMatrix(spec, M)


def arc_to_generator_matrix(arc):
    labels = tuple(f'P{i}' for i in range(len(arc)))
    return exactla.GfMatrix(arc.spec, arc.vectors.T.copy(), col_labels=labels)


def is_mds(G):
    """Every k columns of the generator matrix are linearly independent."""
    A = G.array
    k, n = A.shape
    if n < k:
        return exactla.rank(A) == n
    for subset in itertools.combinations(range(n), k):
        if exactla.det(A[:, list(subset)]) == 0:
            return False
    return True


def enumerate_points(spec, k):
    """All normalized points of PG(k-1, q), lexicographic by coordinate codes."""
    blocks = []
    for lead in reversed(range(k)):
        tail = k - 1 - lead
        tails = np.array(list(itertools.product(range(spec.q), repeat=tail)), dtype=np.int64)
        if tail == 0:
            tails = np.zeros((1, 0), dtype=np.int64)
        block = np.zeros((tails.shape[0], k), dtype=np.int64)
        block[:, lead] = 1
        block[:, lead + 1:] = tails
        blocks.append(block)
    return spec.GF(np.concatenate(blocks))
