import tempfile

import numpy as np
from django.test import SimpleTestCase, tag

from arcs import search
from arcs.exceptions import ContextError, DimensionError, EvenCharacteristicError
from arcs.files import load_certificate, save_certificate
from arcs.gf import FieldSpec, codes
from arcs.projgeom import Arc, enumerate_points, is_arc, nrc


def naive_extensions(arc):
    points = enumerate_points(arc.spec, arc.k)
    keep = []
    for point in points:
        stacked = arc.spec.GF(np.vstack([arc.vectors.view(np.ndarray), point.view(np.ndarray)[None, :]]))
        if is_arc(stacked, arc.spec, arc.k).ok:
            keep.append(codes(point))
    return keep


class ExtensionPointTests(SimpleTestCase):
    def test_conics_are_complete(self):
        for q in (5, 7, 9, 11, 13):
            with self.subTest(q=q):
                curve = nrc(FieldSpec.from_order(q), 3)
                self.assertEqual(len(search.extension_points(curve)), 0)

    def test_removed_point_comes_back(self):
        curve = nrc(FieldSpec(3, 2), 3)
        base = curve.subarc(range(len(curve) - 1))
        found = codes(search.extension_points(base))
        self.assertIn([0, 0, 1], found)

    def test_reached_after_removing_a_point(self):
        curve = nrc(FieldSpec(3, 2), 3)
        cert = search.complete_search(curve.subarc(range(9)), 10)
        self.assertTrue(cert.reached)
        self.assertTrue(is_arc(cert.witness.vectors, curve.spec, 3).ok)

    def test_agrees_with_naive_check(self):
        cases = (
            nrc(FieldSpec(5), 3).subarc((0, 1, 2)),
            nrc(FieldSpec(5), 3).subarc((0, 2, 3, 5)),
            nrc(FieldSpec(3), 4).subarc((0, 1, 2)),
        )
        for arc in cases:
            with self.subTest(q=arc.q, k=arc.k, size=len(arc)):
                self.assertEqual(codes(search.extension_points(arc)), naive_extensions(arc))

    def test_needs_k_minus_one_points(self):
        with self.assertRaises(DimensionError):
            search.extension_points(nrc(FieldSpec(5), 4).subarc((0, 1)))


class CompleteSearchTests(SimpleTestCase):
    def test_full_conic_is_unreachable(self):
        curve = nrc(FieldSpec(5), 3)
        cert = search.complete_search(curve, 7)
        self.assertFalse(cert.reached)
        self.assertIsNone(cert.witness)
        self.assertEqual(cert.nodes_expanded, 1)
        self.assertEqual(cert.max_size_reached, 6)

    def test_reached_witness_contains_base(self):
        base = nrc(FieldSpec(7), 3).subarc(range(4))
        cert = search.complete_search(base, 8)
        self.assertTrue(cert.reached)
        self.assertEqual(len(cert.witness), 8)
        self.assertTrue(is_arc(cert.witness.vectors, base.spec, 3).ok)
        self.assertEqual(cert.witness.codes()[:4], base.codes())
        self.assertEqual(cert.max_size_reached, 8)

    def test_threads_do_not_change_the_result(self):
        base = nrc(FieldSpec(7), 3).subarc(range(4))
        serial = search.complete_search(base, 8)
        threaded = search.complete_search(base, 8, threads=3)
        self.assertEqual(serial.witness.codes(), threaded.witness.codes())
        self.assertEqual(serial.nodes_expanded, threaded.nodes_expanded)
        self.assertEqual(serial.max_size_reached, threaded.max_size_reached)

    def test_counting_completions(self):
        curve = nrc(FieldSpec(5), 3)
        cert = search.complete_search(curve.subarc(range(5)), 6, stop_at_first=False)
        self.assertEqual(cert.completions, 1)
        self.assertEqual(cert.witness.codes()[-1], [0, 0, 1])

    def test_target_must_exceed_base(self):
        with self.assertRaises(DimensionError):
            search.complete_search(nrc(FieldSpec(5), 3), 6)


class CertificateTests(SimpleTestCase):
    def setUp(self):
        self.base = nrc(FieldSpec(7), 3).subarc(range(4))
        self.cert = search.complete_search(self.base, 8)
        self.directory = tempfile.TemporaryDirectory()
        self.addCleanup(self.directory.cleanup)

    def test_saved_certificate_verifies(self):
        path = save_certificate(self.cert, self.directory.name)
        self.assertTrue(path.name.startswith('cert-q7-k3-'))
        self.assertTrue(path.name.endswith('-t8.json'))
        data = load_certificate(path)
        self.assertEqual(search.verify_certificate(data, self.base, 8), [])

    def test_tampered_witness_is_reported(self):
        path = save_certificate(self.cert, self.directory.name)
        data = load_certificate(path)
        data['witness'][-1] = data['witness'][0]
        problems = search.verify_certificate(data, self.base, 8)
        self.assertTrue(any('not an arc' in problem for problem in problems))

    def test_other_target_is_reported(self):
        data = load_certificate(save_certificate(self.cert, self.directory.name))
        problems = search.verify_certificate(data, self.base, 9)
        self.assertEqual(problems, ['certificate target 8 differs from 9'])


class TheoremTests(SimpleTestCase):
    def test_conic_gf5(self):
        report = search.theorem_check(FieldSpec(5), 3)
        self.assertTrue(report.holds)
        self.assertEqual(report.subsets, [(0, 1, 2)])
        self.assertEqual(report.certificates[0].target_size, 7)

    def test_conic_gf7_random_subsets(self):
        report = search.theorem_check(FieldSpec(7), 3, strategy='random', trials=2, seed=4)
        self.assertTrue(report.holds)
        self.assertEqual(len(report.subsets), 2)
        self.assertEqual(report.subsets, search.theorem_check(FieldSpec(7), 3, 'random', 2, seed=4).subsets)

    @tag('slow')
    def test_twisted_cubic_gf7(self):
        report = search.theorem_check(FieldSpec(7), 4)
        self.assertTrue(report.holds)
        self.assertEqual(report.certificates[0].target_size, 9)

    @tag('slow')
    def test_twisted_cubic_gf11_random(self):
        report = search.theorem_check(FieldSpec(11), 4, strategy='random', trials=5, seed=1)
        self.assertTrue(report.holds)
        self.assertEqual({cert.target_size for cert in report.certificates}, {13})

    @tag('slow')
    def test_quartic_gf9(self):
        report = search.theorem_check(FieldSpec(3, 2), 5)
        self.assertTrue(report.holds)
        self.assertEqual(report.certificates[0].target_size, 11)

    @tag('slow')
    def test_prefix_and_random_subsets(self):
        for spec, k in ((FieldSpec(3, 2), 4), (FieldSpec(11), 5)):
            for strategy in ('prefix', 'random'):
                with self.subTest(q=spec.q, k=k, strategy=strategy):
                    report = search.theorem_check(spec, k, strategy=strategy, trials=3, seed=7)
                    self.assertTrue(report.holds)
                    self.assertEqual(len(report.subsets), 1 if strategy == 'prefix' else 3)
                    self.assertEqual({len(subset) for subset in report.subsets}, {3 * k - 6})

    def test_even_q_rejected(self):
        with self.assertRaises(EvenCharacteristicError):
            search.theorem_check(FieldSpec(2, 2), 3)

    def test_subset_larger_than_curve(self):
        with self.assertRaises(DimensionError):
            search.theorem_check(FieldSpec(5), 5)

    def test_bound(self):
        self.assertTrue(search.conjectured_regime(7, 2, 4))
        self.assertFalse(search.conjectured_regime(3, 0, 5))
        self.assertAlmostEqual(search.conjectured_bound(FieldSpec(3, 2)), (27 - 18 + 18 - 10) / 3)


class ExplorerTests(SimpleTestCase):
    def setUp(self):
        self.arc = nrc(FieldSpec(7), 4)

    def test_no_weight_one_on_the_curve(self):
        rows = search.conjecture_explore(self.arc, (0, 1, 2, 3, 4), (0, 1), range(3))
        self.assertEqual([row['n'] for row in rows], [0, 1, 2])
        for row in rows:
            self.assertEqual(row['weight_one'], [])
            self.assertTrue(row['conic_hypothesis'])
        self.assertEqual((rows[2]['rows'], rows[2]['cols']), (9, 6))

    def test_n_beyond_the_arc(self):
        with self.assertRaises(ContextError):
            search.conjecture_explore(self.arc, (0, 1, 2, 3, 4), (0, 1), [3])

    def test_explicit_pool(self):
        rows = search.conjecture_explore(self.arc, (0, 1, 2, 3, 4), (0, 1), [0], G=(0, 1, 2, 3, 4, 7))
        self.assertEqual(rows[0]['cols'], 2)
