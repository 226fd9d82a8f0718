import unittest

from hopf_galois.coact import ComoduleAlgebra, check_comodule_algebra
from hopf_galois.examples import (
    CharacteristicTwo, ExampleError, GroupTable, NotACocycle, NotAGroup, NotFree, UnknownExample, cocycle_table,
    cocycle_twisted_group_algebra, cyclic, direct_sum, example, free_gset_function_algebra, ground_algebra,
    group_algebra, group_table, hopf_example, klein_four, regular_gset, self_coaction, sweedler_h4, symmetric_group,
    trivial_coaction
)
from hopf_galois.exactla import ScalarField
from hopf_galois.hopf import HopfData
from hopf_galois.tests import Q


class TestGroups(unittest.TestCase):
    """Group tables
    """

    def test_tables(self):
        S3 = symmetric_group(3)
        self.assertEqual(S3.order, 6)
        self.assertEqual(S3.labels[S3.identity], 'e')
        for g in range(6):
            self.assertEqual(S3.multiply(g, S3.inverse(g)), S3.identity)

        V4 = klein_four()
        self.assertTrue(all(V4.multiply(g, g) == V4.identity for g in range(4)))

        self.assertEqual(group_table('Z5').order, 5)
        self.assertEqual(group_table('S3').order, 6)

    def test_not_a_group(self):
        with self.assertRaises(NotAGroup):
            GroupTable([[0, 1], [1]])
        with self.assertRaises(NotAGroup):
            GroupTable([[0, 1], [1, 1]])  # 1 has no inverse
        with self.assertRaises(NotAGroup):
            cyclic(0)

    def test_unknown_group(self):
        with self.assertRaises(UnknownExample):
            group_table('Q8')


class TestComoduleAlgebras(unittest.TestCase):
    """Cocycles, free G-sets and sums
    """

    def test_cocycles(self):
        V4 = klein_four()
        A = cocycle_twisted_group_algebra(V4, cocycle_table(V4, 'bilinear', Q), Q)

        self.assertTrue(check_comodule_algebra(A).passed)
        self.assertFalse(A.algebra.is_commutative())

        Z2 = cyclic(2)
        with self.assertRaises(NotACocycle):
            cocycle_twisted_group_algebra(Z2, [[1, 2], [1, 1]], Q)
        with self.assertRaises(NotACocycle):
            cocycle_twisted_group_algebra(Z2, [[1, 1], [1, 0]], Q)
        with self.assertRaises(UnknownExample):
            cocycle_table(cyclic(3), 'sign', Q)

    def test_gsets(self):
        self.assertEqual(regular_gset(cyclic(2), 2), [[0, 1], [1, 0], [2, 3], [3, 2]])

        with self.assertRaises(NotFree):
            free_gset_function_algebra(cyclic(2), [[0, 0]], Q)

    def test_direct_sum(self):
        H = group_algebra(cyclic(2), Q)
        A = direct_sum(self_coaction(H), trivial_coaction(ground_algebra(Q), H))

        self.assertEqual(A.dim, 3)
        self.assertTrue(check_comodule_algebra(A).passed)

        with self.assertRaises(ExampleError):
            direct_sum(self_coaction(H), self_coaction(group_algebra(cyclic(2), Q)))

    def test_characteristic_two(self):
        with self.assertRaises(CharacteristicTwo):
            sweedler_h4(ScalarField(2))


class TestLookup(unittest.TestCase):
    """Examples by name
    """

    def test_hopf(self):
        self.assertEqual(hopf_example(['group', 'Z3'], Q).dim, 3)
        self.assertEqual(hopf_example(['dual-group', 'S3'], Q).dim, 6)
        self.assertEqual(hopf_example(['sweedler'], Q).dim, 4)

    def test_comodule(self):
        A = example(['cocycle', 'Z2', 'sign'], Q)
        self.assertIsInstance(A, ComoduleAlgebra)
        self.assertEqual(A.name, 'k_signZ2')

        self.assertEqual(example(['free-gset', 'Z2', '4'], Q).dim, 4)
        self.assertEqual(example(['self', 'sweedler'], Q).dim, 4)
        self.assertEqual(example(['trivial', 'group', 'S3'], Q).dim, 1)
        self.assertIsInstance(example(['group', 'Z2'], Q), HopfData)

    def test_unknown(self):
        with self.assertRaises(UnknownExample) as cm:
            example(['sweedlr'], Q)
        self.assertIn('sweedler', cm.exception.suggestions)

        with self.assertRaises(UnknownExample):
            example([], Q)

    def test_bad_parameters(self):
        with self.assertRaises(ExampleError):
            example(['group'], Q)
        with self.assertRaises(ExampleError):
            example(['free-gset', 'Z2', '3'], Q)
        with self.assertRaises(ExampleError):
            example(['free-gset', 'Z2', 'four'], Q)
