import itertools

import numpy as np
from django.test import SimpleTestCase

from arcs import exactla
from arcs.exceptions import DimensionError
from arcs.gf import FieldSpec


class GfMatrixTests(SimpleTestCase):
    def setUp(self):
        self.spec = FieldSpec(7)

    def test_from_codes_and_labels(self):
        M = exactla.GfMatrix.from_codes(self.spec, [[1, 2], [3, 4]], row_labels=('a', 'b'), col_labels=('x', 'y'))
        self.assertEqual(M.shape, (2, 2))
        self.assertEqual(M.entries, [[1, 2], [3, 4]])
        self.assertEqual(M.row_position('b'), 1)
        self.assertEqual(M.transpose().col_labels, ('a', 'b'))

    def test_empty_matrix_keeps_columns(self):
        M = exactla.GfMatrix.from_codes(self.spec, [], cols=3)
        self.assertEqual(M.shape, (0, 3))

    def test_label_count_mismatch(self):
        with self.assertRaises(DimensionError):
            exactla.GfMatrix.from_codes(self.spec, [[1, 2]], row_labels=('a', 'b'))

    def test_take_and_with_row(self):
        M = exactla.GfMatrix.from_codes(self.spec, [[1, 2], [3, 4], [5, 6]], row_labels=('a', 'b', 'c'))
        self.assertEqual(M.take(rows=[0, 2]).entries, [[1, 2], [5, 6]])
        grown = M.with_row(self.spec.GF([0, 1]), 'd')
        self.assertEqual(grown.rows, 4)
        self.assertEqual(grown.row_labels[-1], 'd')


class LinearAlgebraTests(SimpleTestCase):
    def setUp(self):
        self.spec = FieldSpec(7)
        self.GF = self.spec.GF

    def test_det(self):
        self.assertEqual(exactla.det(self.GF([[1, 2], [3, 4]])), 5)
        self.assertEqual(exactla.det(self.GF.Zeros((0, 0))), 1)
        self.assertEqual(exactla.det(self.GF([[6]])), 6)

    def test_det_needs_square(self):
        with self.assertRaises(DimensionError):
            exactla.det(self.GF([[1, 2, 3], [4, 5, 6]]))

    def test_rank(self):
        self.assertEqual(exactla.rank(self.GF([[1, 2], [2, 4]])), 1)
        self.assertEqual(exactla.rank(self.GF.Zeros((0, 3))), 0)

    def test_rref_pivots(self):
        R, pivots = exactla.rref(self.GF([[0, 2, 4], [0, 1, 2], [1, 0, 1]]))
        self.assertEqual(pivots, [0, 1])
        self.assertEqual(R[0].tolist(), [1, 0, 1])

    def test_nullspace(self):
        M = self.GF([[1, 2], [2, 4]])
        basis = exactla.nullspace(M)
        self.assertEqual(basis.shape, (1, 2))
        self.assertTrue(np.all(M @ basis[0] == 0))

    def test_nullspace_of_no_rows_is_everything(self):
        basis = exactla.nullspace(self.GF.Zeros((0, 3)))
        self.assertEqual(exactla.rank(basis), 3)

    def test_solve(self):
        M = self.GF([[1, 2], [3, 4]])
        x = exactla.solve(M, [1, 0])
        self.assertEqual(x.tolist(), [5, 5])

    def test_solve_inconsistent(self):
        self.assertIsNone(exactla.solve(self.GF([[1, 1], [1, 1]]), [1, 2]))

    def test_solve_underdetermined_sets_free_variables_to_zero(self):
        x = exactla.solve(self.GF([[1, 1, 0]]), [3])
        self.assertEqual(x.tolist(), [3, 0, 0])

    def test_weight_one_in_colspace(self):
        self.assertEqual(exactla.weight_one_in_colspace(self.GF([[1], [0], [0]])), [0])
        self.assertEqual(exactla.weight_one_in_colspace(self.GF([[1], [1]])), [])
        self.assertEqual(exactla.weight_one_in_colspace(self.GF.Identity(3)), [0, 1, 2])
        self.assertEqual(exactla.weight_one_in_colspace(self.GF([[1, 0], [1, 0], [0, 1]])), [2])
        self.assertEqual(exactla.weight_one_in_colspace(self.GF.Zeros((2, 0))), [])

    def test_left_nullspace(self):
        M = self.GF([[1, 0], [1, 0], [0, 1]])
        N = exactla.left_nullspace(M)
        self.assertEqual(N.shape[0], 1)
        self.assertTrue(np.all(N[0] @ M == 0))


class RandomMatrixTests(SimpleTestCase):
    def setUp(self):
        self.rng = np.random.default_rng(3)

    def random_matrix(self, GF, rows, cols, density=1.0):
        entries = self.rng.integers(0, GF.order, size=(rows, cols))
        entries = entries * (self.rng.random((rows, cols)) < density)
        return GF(entries)

    def test_row_swap_negates_det(self):
        GF = FieldSpec(7).GF
        for _ in range(20):
            A = self.random_matrix(GF, 4, 4)
            self.assertEqual(exactla.det(A[[1, 0, 2, 3]]), -exactla.det(A))

    def test_rank_nullity(self):
        GF = FieldSpec(5).GF
        for _ in range(20):
            rows, cols = (int(x) for x in self.rng.integers(1, 7, size=2))
            M = self.random_matrix(GF, rows, cols, density=0.6)
            r = exactla.rank(M)
            self.assertEqual(r + exactla.nullspace(M).shape[0], cols)
            self.assertEqual(r + exactla.left_nullspace(M).shape[0], rows)

    def test_weight_one_matches_enumeration(self):
        for q in (3, 5, 7):
            GF = FieldSpec(q).GF
            for _ in range(10):
                rows, cols = int(self.rng.integers(2, 6)), int(self.rng.integers(1, 5))
                M = self.random_matrix(GF, rows, cols, density=0.4)
                weights = GF(np.array(list(itertools.product(range(q), repeat=cols)), dtype=np.int64))
                support = (weights @ M.T).view(np.ndarray) != 0
                expected = sorted({int(np.flatnonzero(row)[0]) for row in support if row.sum() == 1})
                with self.subTest(q=q, M=M.tolist()):
                    self.assertEqual(exactla.weight_one_in_colspace(M), expected)
