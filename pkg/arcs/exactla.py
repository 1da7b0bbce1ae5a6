"""
Dense exact linear algebra over GF(q).

Thin layer over galois' linear algebra. Matrices carry optional row and column
labels so reports can name rows by subset without this module knowing geometry.
"""

import logging
from dataclasses import dataclass

import galois
import numpy as np

from .exceptions import DimensionError
from .gf import codes

logger = logging.getLogger(__name__)


@dataclass(frozen=True, eq=False)
class GfMatrix:
    spec: object
    array: galois.FieldArray
    row_labels: tuple = ()
    col_labels: tuple = ()

    def __post_init__(self):
        array = self.spec.GF(self.array)
        if array.ndim != 2:
            raise DimensionError(f'matrix must be two-dimensional, got shape {array.shape}')
        object.__setattr__(self, 'array', array)
        object.__setattr__(self, 'row_labels', tuple(self.row_labels))
        object.__setattr__(self, 'col_labels', tuple(self.col_labels))
        if self.row_labels and len(self.row_labels) != array.shape[0]:
            raise DimensionError('row label count does not match the row count')
        if self.col_labels and len(self.col_labels) != array.shape[1]:
            raise DimensionError('column label count does not match the column count')

    @classmethod
    def from_codes(cls, spec, entries, cols=None, row_labels=(), col_labels=()):
        entries = np.asarray(entries, dtype=np.int64)
        if entries.size == 0:
            entries = entries.reshape(0, cols or 0)
        return cls(spec, spec.GF(entries), row_labels, col_labels)

    @property
    def rows(self):
        return self.array.shape[0]

    @property
    def cols(self):
        return self.array.shape[1]

    @property
    def entries(self):
        return codes(self.array)

    @property
    def shape(self):
        return self.array.shape

    def transpose(self):
        return GfMatrix(self.spec, self.array.T.copy(), self.col_labels, self.row_labels)

    def take(self, rows=None, cols=None):
        rows = list(range(self.rows)) if rows is None else list(rows)
        cols = list(range(self.cols)) if cols is None else list(cols)
        array = self.array[np.ix_(rows, cols)] if rows and cols else self.spec.GF.Zeros((len(rows), len(cols)))
        return GfMatrix(
            self.spec,
            array,
            tuple(self.row_labels[i] for i in rows) if self.row_labels else (),
            tuple(self.col_labels[j] for j in cols) if self.col_labels else (),
        )

    def with_row(self, vector, label=None):
        stacked = np.concatenate([self.array.view(np.ndarray), np.atleast_2d(vector.view(np.ndarray))])
        labels = self.row_labels + (label or f'r{self.rows}',) if self.row_labels else ()
        return GfMatrix(self.spec, self.spec.GF(stacked), labels, self.col_labels)

    def row_position(self, label):
        return self.row_labels.index(label)

    def col_position(self, label):
        return self.col_labels.index(label)


def _as_array(M):
    return M.array if isinstance(M, GfMatrix) else M


def det(M):
    A = _as_array(M)
    if A.ndim != 2 or A.shape[0] != A.shape[1]:
        raise DimensionError(f'determinant needs a square matrix, got shape {A.shape}')
    GF = type(A)
    if A.shape[0] == 0:
        return GF(1)
    if A.shape[0] == 1:
        return A[0, 0]
    return np.linalg.det(A)


def rank(M):
    A = _as_array(M)
    if A.size == 0:
        return 0
    return int(np.linalg.matrix_rank(A))


def _pivots(R):
    pivots = []
    for row in R:
        nonzero = np.flatnonzero(row.view(np.ndarray))
        if nonzero.size:
            pivots.append(int(nonzero[0]))
    return pivots


def rref(M):
    """Reduced row echelon form and its pivot columns."""
    A = _as_array(M)
    if A.size == 0:
        R = A.copy()
    else:
        R = A.row_reduce()
    pivots = _pivots(R)
    if isinstance(M, GfMatrix):
        R = GfMatrix(M.spec, R, (), M.col_labels)
    return R, pivots


def nullspace(M):
    """Basis of {x : M x = 0} as the rows of a FieldArray, in reduced echelon form."""
    A = _as_array(M)
    GF = type(A)
    cols = A.shape[1]
    if A.shape[0] == 0:
        return GF.Identity(cols)
    if cols == 0:
        return GF.Zeros((0, 0))
    return A.null_space()


def left_nullspace(M):
    A = _as_array(M)
    return nullspace(A.T.copy())


def solve(M, b):
    """Particular solution of M x = b with free variables set to zero, or None when inconsistent."""
    A = _as_array(M)
    GF = type(A)
    b = GF(b)
    if b.ndim != 1 or b.shape[0] != A.shape[0]:
        raise DimensionError(f'right-hand side of length {b.shape} does not match {A.shape[0]} rows')
    augmented = GF(np.column_stack([A.view(np.ndarray), b.view(np.ndarray)]))
    R, pivots = rref(augmented)
    cols = A.shape[1]
    if cols in pivots:
        return None
    x = GF.Zeros(cols)
    for row, col in enumerate(pivots):
        x[col] = R[row, cols]
    return x


def weight_one_in_colspace(M):
    """Positions i such that the unit vector e_i lies in the column space of M.

    e_i is in the column space exactly when every vector of the left nullspace
    vanishes at i.
    """
    A = _as_array(M)
    if A.shape[0] == 0:
        return []
    if A.shape[1] == 0:
        return []
    N = left_nullspace(A)
    if N.shape[0] == 0:
        return list(range(A.shape[0]))
    blocked = np.any(N.view(np.ndarray) != 0, axis=0)
    return [int(i) for i in np.flatnonzero(~blocked)]
