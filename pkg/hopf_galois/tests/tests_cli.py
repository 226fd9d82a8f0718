import contextlib
import io
import os
import tempfile
import unittest

import yaml

from hopf_galois.cli import EXIT_INPUT, EXIT_NEGATIVE, EXIT_PASS, main


class TestCli(unittest.TestCase):
    """Commands, reports and exit codes
    """

    def setUp(self):
        self.directory = tempfile.TemporaryDirectory()

    def tearDown(self):
        self.directory.cleanup()

    def _path(self, name: str) -> str:
        return os.path.join(self.directory.name, name)

    def _run(self, *argv: str):
        out = io.StringIO()
        with contextlib.redirect_stdout(out):
            code = main(list(argv))
        return code, yaml.safe_load(out.getvalue())

    def _example(self, name: str, *words: str) -> str:
        path = self._path(name)
        code, _ = self._run('example', *words, '-o', path)
        self.assertEqual(code, EXIT_PASS)
        return path

    def test_example(self):
        code, data = self._run('example', 'group', 'Z2', '-f', 'Fp:3')

        self.assertEqual(code, EXIT_PASS)
        self.assertEqual(data['version'], 1)
        self.assertEqual(data['field'], 'Fp:3')
        self.assertEqual(len(data['objects']), 1)

    def test_check(self):
        path = self._example('h4.yml', 'self', 'sweedler')

        code, data = self._run('check', path)
        self.assertEqual(code, EXIT_PASS)
        self.assertTrue(data['passed'])
        self.assertEqual(len(data['objects']), 2)  # H4 and its self-coaction

    def test_analyze(self):
        path = self._example('points.yml', 'free-gset', 'Z2', '4')

        code, data = self._run('analyze', path)
        self.assertEqual(code, EXIT_PASS)
        self.assertEqual(data['index_size'], 2)
        self.assertEqual(data['components'], [[2, 0], [0, 2]])
        self.assertEqual(data['classes'], [[0], [1]])
        self.assertEqual(data['mu'], '0 1')
        self.assertEqual(data['nu'], ['1', '1'])
        self.assertTrue(data['nakayama_routes_agree'])
        self.assertEqual(data['notes'], [])

    def test_analyze_sweedler(self):
        path = self._example('h4.yml', 'self', 'sweedler')

        code, data = self._run('analyze', path)
        self.assertEqual(code, EXIT_PASS)
        self.assertEqual(data['index_size'], 1)
        self.assertEqual(data['delta_A'], 'g')
        self.assertEqual(data['nu'], ['-1'])
        self.assertEqual(data['notes'], ['nu is not trivial'])

        code, data = self._run('analyze', path, '--choice', '2')
        self.assertEqual(code, EXIT_PASS)
        self.assertEqual(data['delta_A'], 'g')

    def test_analyze_not_galois(self):
        path = self._example('point.yml', 'trivial', 'group', 'Z2')

        code, data = self._run('analyze', path)
        self.assertEqual(code, EXIT_NEGATIVE)
        self.assertEqual(data['error'], 'NotGalois')

    def test_correspond(self):
        path = self._example('point.yml', 'trivial', 'group', 'Z2')
        galois = self._path('galois.yml')

        code, data = self._run('correspond', path, 'to-galois', '--index', '1', '-o', galois)
        self.assertEqual(code, EXIT_PASS)
        self.assertEqual(data['index_size'], 2)
        self.assertEqual([c['status'] for c in data['contexts']], ['Strict'] * 3)
        self.assertNotIn('document', data)

        code, data = self._run('correspond', galois, 'to-homogeneous', '--object', 'B')
        self.assertEqual(code, EXIT_PASS)
        self.assertEqual(data['dim'], 1)
        self.assertFalse(data['galois'])
        self.assertIn('document', data)

    def test_correspond_disconnected(self):
        path = self._example('points.yml', 'free-gset', 'Z2', '4')

        code, data = self._run('correspond', path, 'to-homogeneous')
        self.assertEqual(code, EXIT_NEGATIVE)
        self.assertEqual(data['error'], 'Disconnected')

    def test_decompose(self):
        path = self._example('group.yml', 'group', 'Z2', '-f', 'Fp:3')

        code, data = self._run('decompose', path, '--seed', '3')
        self.assertEqual(code, EXIT_PASS)
        self.assertTrue(data['split'])
        self.assertEqual([b['degree'] for b in data['blocks']], [1, 1])

    def test_input_errors(self):
        code, data = self._run('example', 'sweedlr')
        self.assertEqual(code, EXIT_INPUT)
        self.assertEqual(data['error'], 'UnknownExample')

        code, data = self._run('example', 'group', 'Z2', '-f', 'R')
        self.assertEqual(code, EXIT_INPUT)
        self.assertEqual(data['error'], 'FieldError')

        code, data = self._run('check', self._path('missing.yml'))
        self.assertEqual(code, EXIT_INPUT)
        self.assertEqual(data['error'], 'DocumentError')
