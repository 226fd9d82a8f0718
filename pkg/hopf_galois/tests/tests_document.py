import os
import tempfile
import unittest

from hopf_galois.document import Document, DocumentError, kind_of, single
from hopf_galois.examples import sweedler_h4
from hopf_galois.tests import F3, Q, natural_module
from hopf_galois.tests.tests_coact import sign_cocycle

HEADER = 'version: 1\nfield: Q\nobjects:\n'

DUAL_NUMBERS = HEADER + """\
  D:
    kind: algebra
    dim: 2
    labels: ['1', x]
    mult: [[0, 0, 0, 1], [0, 1, 1, 1], [1, 0, 1, 1]]
"""


class TestRoundTrip(unittest.TestCase):
    """Dump then parse
    """

    def test_hopf(self):
        H = sweedler_h4(Q)
        parsed = Document.parse(single(Q, 'H4', H).dump()).get('H4', 'hopf')

        self.assertEqual(parsed.algebra.labels, ['1', 'g', 'x', 'gx'])
        self.assertEqual(parsed.algebra.mult, H.algebra.mult)
        self.assertEqual(parsed.coproduct, H.coproduct)
        self.assertEqual(parsed.counit, H.counit)
        self.assertEqual(parsed.antipode, H.antipode)

    def test_comodule(self):
        A = sign_cocycle(Q)
        document = Document.parse(single(Q, 'A', A).dump())

        self.assertEqual(len(document.names('hopf')), 1)
        self.assertEqual(document.names('comodule'), ['A'])

        parsed = document.get(kind='comodule')
        self.assertEqual(parsed.coaction, A.coaction)
        self.assertEqual(parsed.hopf.coproduct, A.hopf.coproduct)
        self.assertIs(parsed.hopf, document.get(kind='hopf'))

    def test_module(self):
        V = natural_module(F3, 2)
        document = Document(F3)
        document.add('M2', V.algebra)
        document.add('V', V)

        parsed = Document.parse(document.dump())
        self.assertEqual(parsed.field, F3)
        self.assertEqual(parsed.get('V', 'module').action, V.action)
        self.assertIsNone(parsed.get('V').check())

    def test_load(self):
        with tempfile.TemporaryDirectory() as directory:
            path = os.path.join(directory, 'dual.yml')
            with open(path, 'w') as f:
                f.write(DUAL_NUMBERS)

            D = Document.load(path).get('D', 'algebra')
            self.assertEqual(D.multiply(D.element({'x': 1}), D.element({'x': 1})), D.zero())

            with self.assertRaises(DocumentError):
                Document.load(os.path.join(directory, 'missing.yml'))


class TestDocument(unittest.TestCase):
    """Lookup and bookkeeping
    """

    def test_get(self):
        document = single(Q, 'H4', sweedler_h4(Q))

        self.assertIn('H4', document)
        self.assertEqual(kind_of(document['H4']), 'hopf')
        with self.assertRaises(DocumentError):
            document.get('H4', 'comodule')
        with self.assertRaises(DocumentError):
            document.get('H5')
        with self.assertRaises(DocumentError):
            document.get(kind='module')

    def test_add(self):
        document = Document(Q)
        H = sweedler_h4(Q)

        self.assertEqual(document.add('H', H), 'H')
        self.assertEqual(document.add('H', H.algebra), 'H_2')
        with self.assertRaises(DocumentError):
            document.add('V', natural_module(Q, 2))  # its algebra is missing
        with self.assertRaises(DocumentError):
            document.add('F', sweedler_h4(F3))
        with self.assertRaises(DocumentError):
            kind_of(3)

    def test_version(self):
        with self.assertRaises(DocumentError):
            Document(Q, version=2)


class TestErrors(unittest.TestCase):
    """Errors point to their line and column
    """

    def _check(self, text: str, line: int, column: int = None):
        with self.assertRaises(DocumentError) as cm:
            Document.parse(text)
        self.assertEqual(cm.exception.line, line, cm.exception)
        if column is not None:
            self.assertEqual(cm.exception.column, column)

    def test_yaml(self):
        with self.assertRaises(DocumentError) as cm:
            Document.parse(HEADER + '  D: [\n')
        self.assertGreaterEqual(cm.exception.line, 4)  # unterminated list

    def test_header(self):
        self._check('version: 2\nfield: Q\nobjects: {}\n', 1, 10)
        self._check('version: 1\nfield: Fp:6\nobjects: {}\n', 2, 8)
        self._check('version: 1\nfield: Q\nobjects: {}\nextra: 1\n', 4, 1)
        self._check('version: 1\nfield: Q\n', 1)  # objects missing

    def test_blocks(self):
        self._check(DUAL_NUMBERS.replace('dim: 2', 'dim: 2\n    colour: red'), 7, 5)
        self._check(DUAL_NUMBERS.replace('[1, 0, 1, 1]]', '[0, 0, 0, 1]]'), 8, 40)
        self._check(DUAL_NUMBERS.replace('[0, 1, 1, 1]', '[0, 2, 1, 1]'), 8, 30)
        self._check(DUAL_NUMBERS.replace('kind: algebra', 'kind: ring'), 5, 11)
        self._check(DUAL_NUMBERS.replace('[0, 1, 1, 1]', '[0, 1, 1, a]'), 8, 36)
        self._check(DUAL_NUMBERS + '  D:\n    kind: algebra\n    dim: 0\n    mult: []\n', 9, 3)

    def test_references(self):
        text = HEADER + '  A:\n    kind: comodule\n    hopf: H\n    dim: 0\n    mult: []\n    coaction: []\n'
        self._check(text, 6, 11)

    def test_empty(self):
        with self.assertRaises(DocumentError):
            Document.parse('')
