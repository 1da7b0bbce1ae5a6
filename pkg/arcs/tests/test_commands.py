import io
import json
import tempfile
from contextlib import redirect_stderr, redirect_stdout
from pathlib import Path

from django.core.management import call_command
from django.core.management.base import CommandError
from django.test import SimpleTestCase

import arcforge
from arcs.cli import run
from arcs.files import save_arc
from arcs.gf import FieldSpec
from arcs.projgeom import nrc


def invoke(*argv):
    out, err = io.StringIO(), io.StringIO()
    with redirect_stdout(out), redirect_stderr(err):
        status = run([str(arg) for arg in argv])
    return status, out.getvalue(), err.getvalue()


class CommandTestCase(SimpleTestCase):
    def setUp(self):
        self.tmp = tempfile.TemporaryDirectory()
        self.addCleanup(self.tmp.cleanup)
        self.dir = Path(self.tmp.name)
        self.conic = self.write_arc('conic5.json', nrc(FieldSpec(5), 3))
        self.cubic = self.write_arc('cubic7.json', nrc(FieldSpec(7), 4))

    def write_arc(self, name, arc):
        path = self.dir / name
        save_arc(arc, path)
        return str(path)

    def write_json(self, name, data):
        path = self.dir / name
        path.write_text(json.dumps(data))
        return str(path)

    def call(self, name, **options):
        out = io.StringIO()
        call_command(name, stdout=out, **options)
        return out.getvalue()

    def body(self, name, **options):
        return json.loads(self.call(name, **options))['body']


class ArcFileCommandTests(CommandTestCase):
    def test_nrc_writes_an_arc_file(self):
        document = json.loads(self.call('nrc', q=5, k=3))
        self.assertEqual(document['k'], 3)
        self.assertEqual(document['field']['p'], 5)
        self.assertEqual(len(document['vectors']), 6)
        self.assertEqual(document['vectors'][-1], [0, 0, 1])

    def test_nrc_text(self):
        text = self.call('nrc', q=5, k=3, format='text')
        self.assertEqual(text.splitlines()[0], 'nrc GF(5) k=3 size=6')

    def test_nrc_feeds_check_arc(self):
        path = self.dir / 'nrc.json'
        status, out, _ = invoke('nrc', '--q', 7, '--k', 4, '--out', path)
        self.assertEqual(status, 0)
        self.assertIn('Report written to', out)
        status, out, _ = invoke('check-arc', '--in', path)
        self.assertEqual(status, 0)
        report = json.loads(out)
        self.assertTrue(report['body']['is_arc'])
        self.assertEqual(report['header']['command'], 'check-arc')
        self.assertEqual(report['header']['version'], arcforge.__version__)
        self.assertEqual(report['header']['field']['q'], 7)

    def test_repeated_vector(self):
        path = self.write_json('bad.json', {'field': {'p': 5}, 'k': 3, 'vectors': [[1, 0, 0], [0, 1, 0], [1, 0, 0]]})
        status, out, err = invoke('check-arc', '--in', path)
        self.assertEqual(status, 1)
        self.assertEqual(json.loads(out)['body']['witness'], [0, 1, 2])
        self.assertIn('not an arc', err)

    def test_repeated_vector_rejected_by_other_commands(self):
        path = self.write_json('bad.json', {'field': {'p': 5}, 'k': 3, 'vectors': [[1, 0, 0], [0, 1, 0], [1, 0, 0]]})
        status, _, err = invoke('conic', '--in', path)
        self.assertEqual(status, 2)
        self.assertIn('not an arc', err)
        status, _, _ = invoke('conic', '--in', path, '--no-validate')
        self.assertEqual(status, 0)

    def test_code_outside_field(self):
        path = self.write_json('big.json', {'field': {'p': 5}, 'k': 3, 'vectors': [[1, 0, 7]]})
        self.assertEqual(invoke('check-arc', '--in', path)[0], 2)

    def test_unreadable_input(self):
        self.assertEqual(invoke('check-arc', '--in', self.dir / 'missing.json')[0], 2)
        broken = self.dir / 'broken.json'
        broken.write_text('{"field": ')
        self.assertEqual(invoke('check-arc', '--in', broken)[0], 2)

    def test_project_then_conic(self):
        projected = self.dir / 'plane.json'
        status, _, _ = invoke('project', '--in', self.cubic, '--from', '0', '--normalize', '--out', projected)
        self.assertEqual(status, 0)
        document = json.loads(projected.read_text())
        self.assertEqual(document['k'], 3)
        self.assertEqual(len(document['vectors']), 7)
        body = self.body('conic', input=str(projected))
        self.assertEqual(body['status'], 'unique')
        self.assertTrue(body['on_conic'])


class UsageTests(CommandTestCase):
    def test_unknown_subcommand(self):
        status, _, err = invoke('frobnicate')
        self.assertEqual(status, 2)
        self.assertIn('unknown subcommand', err)

    def test_no_subcommand(self):
        self.assertEqual(invoke()[0], 2)

    def test_unknown_flag(self):
        self.assertEqual(invoke('nrc', '--q', 5, '--k', 3, '--bogus')[0], 2)

    def test_not_a_prime_power(self):
        status, _, err = invoke('nrc', '--q', 6, '--k', 3)
        self.assertEqual(status, 2)
        self.assertIn('not a prime power', err)


class FieldCommandTests(CommandTestCase):
    def test_extension_field(self):
        body = self.body('field', p=3, e=2)
        self.assertEqual(body['modulus'], [1, 0, 1])
        self.assertEqual(body['q'], 9)
        self.assertTrue(body['odd'])

    def test_elements(self):
        body = self.body('field', q=4, elements=True)
        self.assertEqual([item['code'] for item in body['elements']], [0, 1, 2, 3])
        self.assertEqual(body['elements'][3]['poly'], 'X + 1')

    def test_needs_an_order(self):
        with self.assertRaises(CommandError) as cm:
            self.call('field')
        self.assertEqual(cm.exception.returncode, 2)


class EquationCommandTests(CommandTestCase):
    def test_alpha(self):
        body = self.body('alpha', input=self.conic)
        self.assertEqual(len(body['values']), 15)
        self.assertEqual(body['values'][0]['alpha'], 1)
        self.assertTrue(body['holdout']['exhaustive'])
        self.assertEqual(body['holdout']['failures'], [])

    def test_verify_lemmas(self):
        for lemma, status in (('4', 'holds'), ('5', 'holds'), ('projecttoplane', 'holds'), ('projpsi', 'not-instantiable')):
            with self.subTest(lemma=lemma):
                body = self.body('verify', input=self.cubic, lemma=lemma)
                self.assertEqual(body['status'], status)

    def test_verify_nowone_for_smaller_n(self):
        body = self.body('verify', input=self.cubic, lemma='nowone', n=1)
        self.assertEqual(body['status'], 'holds')
        self.assertEqual(body['parameters']['U'], [5, 6])

    def test_pmatrix_is_reproducible(self):
        first = self.body('pmatrix', input=self.cubic)
        second = self.body('pmatrix', input=self.cubic)
        self.assertEqual(first, second)
        self.assertEqual((first['matrix']['rows'], first['matrix']['cols']), (9, 6))
        self.assertEqual(first['matrix']['row_labels'][0], 'C={0,1,2}')
        self.assertEqual(first['weight_one'], [])

    def test_pmatrix_header_echoes_context(self):
        header = json.loads(self.call('pmatrix', input=self.cubic, E=(0, 1, 2, 3, 5)))['header']
        self.assertEqual(header['parameters']['E'], [0, 1, 2, 3, 5])
        self.assertEqual(header['parameters']['n'], 2)

    def test_mdmatrix(self):
        body = self.body('mdmatrix', input=self.cubic)
        self.assertEqual(body['D'], [0])
        self.assertEqual(body['rank'], body['rank_e_rows'])
        self.assertEqual(body['minor_failures'], [])
        self.assertEqual(body['psi']['U'], [5, 6, 7])

    def test_qmatrix(self):
        body = self.body('qmatrix', input=self.cubic)
        self.assertEqual((body['matrix']['rows'], body['matrix']['cols']), (3, 2))
        self.assertFalse(body['square'])

    def test_qmatrix_needs_n_equal_t(self):
        status, _, err = invoke('qmatrix', '--in', self.cubic, '--n', 1)
        self.assertEqual(status, 2)
        self.assertIn('n = t', err)

    def test_pipeline(self):
        status, out, _ = invoke('pipeline', '--in', self.cubic)
        self.assertEqual(status, 0)
        body = json.loads(out)['body']
        self.assertEqual(body['failed'], [])
        self.assertEqual(body['checks'][0]['lemma'], 'projecttoplane')

    def test_pipeline_text(self):
        text = self.call('pipeline', input=self.cubic, format='text')
        self.assertTrue(text.startswith('projecttoplane'))

    def test_reruns_give_the_same_body(self):
        commands = (
            ('alpha', '--in', self.conic),
            ('pipeline', '--in', self.cubic),
            ('theorem', '--q', 7, '--k', 3, '--strategy', 'random', '--trials', 2),
        )
        for argv in commands:
            with self.subTest(command=argv[0]):
                runs = []
                for _ in range(2):
                    status, out, _ = invoke(*argv)
                    self.assertEqual(status, 0)
                    runs.append([line for line in out.splitlines() if '"elapsed"' not in line])
                self.assertEqual(runs[0], runs[1])


class SearchCommandTests(CommandTestCase):
    def test_complete_conic_does_not_extend(self):
        body = self.body('extend', input=self.conic, no_save=True)
        self.assertEqual(body['outcome'], 'unreachable')
        self.assertEqual(body['target'], 7)
        self.assertNotIn('certificate', body)

    def test_count_completions(self):
        partial = self.write_arc('partial.json', nrc(FieldSpec(5), 3).subarc(range(5)))
        body = self.body('extend', input=partial, target=6, all=True, no_save=True)
        self.assertEqual(body['outcome'], 'reached')
        self.assertEqual(body['completions'], 1)

    def test_saved_certificate_resumes(self):
        partial = self.write_arc('partial.json', nrc(FieldSpec(7), 3).subarc(range(4)))
        cert_dir = str(self.dir / 'certs')
        body = self.body('extend', input=partial, target=8, cert_dir=cert_dir)
        self.assertTrue(Path(body['certificate']).exists())
        resumed = self.body('extend', input=partial, target=8, cert_dir=cert_dir, resume=True)
        self.assertTrue(resumed['verified'])
        self.assertEqual(resumed['outcome'], 'reached')

    def test_resume_without_certificate(self):
        status, _, _ = invoke('extend', '--in', self.conic, '--resume', '--cert-dir', self.dir / 'none')
        self.assertEqual(status, 2)

    def test_theorem(self):
        status, out, _ = invoke('theorem', '--q', 5, '--k', 3)
        self.assertEqual(status, 0)
        body = json.loads(out)['body']
        self.assertTrue(body['holds'])
        self.assertEqual(body['certificates'][0]['outcome'], 'unreachable')

    def test_theorem_csv(self):
        lines = self.call('theorem', q=5, k=3, format='csv').splitlines()
        self.assertEqual(lines[0], 'subset,target,outcome,nodes,max_size')
        self.assertTrue(lines[1].startswith('0 1 2,7,unreachable,'))

    def test_theorem_even_q(self):
        self.assertEqual(invoke('theorem', '--q', 4, '--k', 3)[0], 2)

    def test_explore_csv(self):
        lines = self.call('explore', input=self.cubic, format='csv').splitlines()
        self.assertEqual(lines[0], 'n,rows,cols,rank,weight_one,conic_hypothesis,conjectured_regime')
        self.assertEqual(len(lines), 4)
        self.assertTrue(lines[3].startswith('2,9,6,'))
