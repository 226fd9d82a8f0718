import random
import unittest

from hopf_galois.assoc import (
    AlgebraError, AlgModule, BlockStatus, MoritaStatus, NotSemisimple, NotSplit, NotSplitCenter, NotUnital,
    StructureAlgebra, Verdict, center, check_associativity, corner, direct_sum_algebras, endomorphism_algebra,
    homomorphisms, is_absolutely_semisimple, is_full_idempotent, is_semisimple, is_simple, meataxe_decompose,
    morita_context, primitive_idempotents_split_commutative, radical, sandwich, spin, tensor_multiply,
    verify_morita, wedderburn
)
from hopf_galois.examples import cyclic, group_algebra, symmetric_group
from hopf_galois.exactla import ScalarField, Subspace
from hopf_galois.tests import (
    F3, F5, Q, all_submodules, dual_numbers, matrix_algebra, maximal_nilpotent_ideal, natural_module, upper_triangular
)


class TestStructureAlgebra(unittest.TestCase):
    """Structure constants, units and associativity
    """

    def test_associativity(self):
        for D in (matrix_algebra(Q, 2), upper_triangular(F3), dual_numbers(Q)):
            self.assertIsNone(check_associativity(D))

        # e0 e0 = e1 and e0 e1 = e0
        bad = StructureAlgebra.from_products(Q, 2, lambda i, j: [[0, 1], [1, 0]][j] if i == 0 else [0, 0])
        self.assertIsNotNone(check_associativity(bad))

    def test_unit(self):
        self.assertEqual(matrix_algebra(Q, 2).one(), [Q(1), Q(0), Q(0), Q(1)])
        self.assertEqual(upper_triangular(Q).one(), [Q(1), Q(0), Q(1)])

        zero = StructureAlgebra.from_products(Q, 1, lambda i, j: [0])
        self.assertIsNone(zero.unit)
        with self.assertRaises(NotUnital):
            zero.one()

    def test_products(self):
        M = matrix_algebra(Q, 2)
        E01, E10 = M.element({'E01': 1}), M.element({'E10': 1})

        self.assertEqual(M.multiply(E01, E10), M.element({'E00': 1}))
        self.assertEqual(M.power(E01, 2), M.zero())
        self.assertEqual(M.format_element(M.one()), 'E00 + E11')
        self.assertFalse(M.is_commutative())
        self.assertTrue(M.is_central(M.one()))
        self.assertTrue(M.is_idempotent(M.element({'E00': 1})))

    def test_direct_sum_and_tensor(self):
        kZ2 = group_algebra(cyclic(2), Q).algebra
        S = direct_sum_algebras(kZ2, upper_triangular(Q))

        self.assertEqual(S.dim, 5)
        self.assertEqual(S.one(), [Q(1), Q(0), Q(1), Q(0), Q(1)])
        self.assertIsNone(check_associativity(S))

        # (g ⊗ e)(e ⊗ g) = g ⊗ g
        g_e, e_g = [0, 0, 1, 0], [0, 1, 0, 0]
        self.assertEqual(tensor_multiply(kZ2, kZ2, g_e, e_g), [Q(0), Q(0), Q(0), Q(1)])


class TestStructure(unittest.TestCase):
    """Center, radical and idempotents
    """

    def test_center(self):
        self.assertEqual(center(matrix_algebra(Q, 2)), Subspace.span(Q, 4, [[1, 0, 0, 1]]))
        self.assertEqual(center(upper_triangular(Q)).dim, 1)
        self.assertEqual(center(group_algebra(cyclic(3), Q).algebra).dim, 3)

    def _check_radical(self, D: StructureAlgebra):
        """Radical against the largest nilpotent two-sided ideal, found by brute force"""

        self.assertEqual(radical(D), maximal_nilpotent_ideal(D))

    def test_radical(self):
        self.assertEqual(radical(upper_triangular(Q)), Subspace.span(Q, 3, [[0, 1, 0]]))
        self.assertEqual(radical(upper_triangular(F3)), Subspace.span(F3, 3, [[0, 1, 0]]))
        self.assertTrue(radical(matrix_algebra(F3, 2)).is_zero())
        self.assertTrue(radical(group_algebra(cyclic(3), Q).algebra).is_zero())

        self._check_radical(dual_numbers(F3))
        self._check_radical(group_algebra(cyclic(3), F3).algebra)  # trace form vanishes identically
        self._check_radical(group_algebra(cyclic(2), F3).algebra)

        for field in (F3, F5):
            self._check_radical(upper_triangular(field))
            self._check_radical(matrix_algebra(field, 2))
            self._check_radical(direct_sum_algebras(upper_triangular(field), dual_numbers(field)))
        self._check_radical(group_algebra(cyclic(5), F5).algebra)
        self._check_radical(group_algebra(symmetric_group(3), F3).algebra)

        self.assertEqual(radical(group_algebra(cyclic(3), F3).algebra).dim, 2)

    def test_semisimple(self):
        self.assertTrue(is_semisimple(matrix_algebra(Q, 2)))
        self.assertFalse(is_semisimple(upper_triangular(Q)))
        self.assertFalse(is_semisimple(group_algebra(cyclic(2), ScalarField(2)).algebra))

    def test_primitive_idempotents(self):
        kZ2 = group_algebra(cyclic(2), Q).algebra
        idempotents = primitive_idempotents_split_commutative(kZ2)

        self.assertEqual(len(idempotents), 2)
        self.assertIn([Q(1, 2), Q(1, 2)], idempotents)
        self.assertIn([Q(1, 2), Q(-1, 2)], idempotents)

        F7 = ScalarField(7)
        kZ3 = group_algebra(cyclic(3), F7).algebra
        idempotents = primitive_idempotents_split_commutative(kZ3)
        self.assertEqual(len(idempotents), 3)
        self.assertEqual([sum(x, F7.zero) for x in zip(*idempotents)], kZ3.one())
        for a, e in enumerate(idempotents):
            self.assertTrue(kZ3.is_idempotent(e))
            for b, f in enumerate(idempotents):
                if a != b:
                    self.assertEqual(kZ3.multiply(e, f), kZ3.zero())

        # t³ - 1 has an irreducible quadratic factor over Q
        with self.assertRaises(NotSplit):
            primitive_idempotents_split_commutative(group_algebra(cyclic(3), Q).algebra)

        with self.assertRaises(AlgebraError):
            primitive_idempotents_split_commutative(matrix_algebra(Q, 2))


class TestModules(unittest.TestCase):
    """Modules, homomorphisms and the meataxe
    """

    def test_check(self):
        self.assertIsNone(natural_module(Q, 2).check())
        self.assertIsNone(AlgModule.regular(upper_triangular(Q)).check())

        V = natural_module(Q, 2)
        broken = AlgModule(V.algebra, 2, [V.action[1]] + V.action[1:])
        self.assertIsNotNone(broken.check())

    def test_submodules(self):
        R = AlgModule.regular(matrix_algebra(F3, 2))

        # 0, the four left ideals M_2(F3)·E for E of rank 1 up to scaling, M_2(F3)
        self.assertEqual(len(all_submodules(R)), 6)
        self.assertEqual(spin(R, [1, 0, 0, 0]).dim, 2)
        self.assertTrue(spin(R, [1, 0, 0, 1]).is_full())

        T = AlgModule.regular(upper_triangular(F3))
        submodules = all_submodules(T)
        self.assertIn(Subspace.span(F3, 3, [[0, 1, 0]]), submodules)

    def test_homomorphisms(self):
        V = natural_module(Q, 2)
        self.assertEqual(len(homomorphisms(V, V)), 1)
        self.assertEqual(endomorphism_algebra(V).dim, 1)
        self.assertEqual(len(homomorphisms(V, AlgModule.regular(V.algebra))), 2)

    def test_simple(self):
        rng = random.Random(0)
        self.assertTrue(is_simple(natural_module(F3, 2), rng))
        self.assertFalse(is_simple(AlgModule.regular(matrix_algebra(F3, 2)), rng))
        self.assertFalse(is_simple(AlgModule.regular(upper_triangular(Q)), rng))

    def _check_decomposition(self, V: AlgModule, dims):
        summands = meataxe_decompose(V, random.Random(0))
        self.assertEqual([S.dim for S in summands], dims)

        span = Subspace.span(V.field, V.dim, [b for S in summands for b in Subspace.column_space(S.embedding).basis])
        self.assertTrue(span.is_full())

        for S in summands:
            self.assertIsNone(S.check())
            if V.field.is_prime_field:
                self.assertEqual(len(all_submodules(S)), 2)  # 0 and S

    def test_meataxe(self):
        self._check_decomposition(AlgModule.regular(matrix_algebra(F3, 2)), [2, 2])
        self._check_decomposition(AlgModule.regular(matrix_algebra(Q, 2)), [2, 2])
        self._check_decomposition(AlgModule.regular(group_algebra(cyclic(2), F3).algebra), [1, 1])

        with self.assertRaises(NotSemisimple):
            meataxe_decompose(AlgModule.regular(upper_triangular(Q)))

    def _check_against_submodules(self, V: AlgModule):
        """Simplicity and the meataxe against the lattice of all submodules"""

        rng = random.Random(0)
        lattice = all_submodules(V)
        semisimple = all(
            any(U.dim + W.dim == V.dim and (U + W).is_full() for W in lattice) for U in lattice)

        self.assertEqual(is_simple(V, rng), len(lattice) == 2)

        if not semisimple:
            with self.assertRaises(NotSemisimple):
                meataxe_decompose(V, rng)
            return

        summands = meataxe_decompose(V, rng)
        self.assertEqual(sum(S.dim for S in summands), V.dim)
        images = [Subspace.column_space(S.embedding) for S in summands]
        self.assertTrue(Subspace.span(V.field, V.dim, [b for U in images for b in U.basis]).is_full())
        for S, U in zip(summands, images):
            self.assertIn(U, lattice)
            self.assertEqual(len(all_submodules(S)), 2)

    def test_submodule_lattices(self):
        for field in (F3, F5):
            modules = [AlgModule.regular(group_algebra(cyclic(n), field).algebra) for n in range(2, 6)]
            modules += [
                AlgModule.regular(upper_triangular(field)),
                AlgModule.regular(dual_numbers(field)),
                AlgModule.regular(matrix_algebra(field, 2)),
                natural_module(field, 2),
                natural_module(field, 2).direct_sum(natural_module(field, 2)),
                AlgModule.regular(dual_numbers(field)).direct_sum(AlgModule.regular(dual_numbers(field))),
            ]

            for V in modules:
                self._check_against_submodules(V)


class TestWedderburn(unittest.TestCase):
    """Wedderburn forms and matrix units
    """

    def test_matrix_algebra(self):
        M = matrix_algebra(Q, 2)
        form = wedderburn(M)

        self.assertTrue(form.is_split())
        self.assertEqual(len(form.blocks), 1)
        self.assertEqual(form.blocks[0].degree, 2)
        self.assertEqual(form.serialize()[0]['status'], 'Split')

        block = form.blocks[0]
        e00, e01, e10 = block.matrix_unit(0, 0), block.matrix_unit(0, 1), block.matrix_unit(1, 0)
        self.assertTrue(M.is_idempotent(e00))
        self.assertEqual(M.multiply(e01, e10), e00)
        self.assertEqual(M.multiply(e10, e01), block.matrix_unit(1, 1))

    def test_group_algebra(self):
        form = wedderburn(group_algebra(cyclic(2), F3).algebra)
        self.assertEqual([b.degree for b in form.blocks], [1, 1])
        self.assertEqual(form.statuses(), [BlockStatus.SPLIT, BlockStatus.SPLIT])

        with self.assertRaises(NotSplitCenter):
            wedderburn(group_algebra(cyclic(3), Q).algebra)

        with self.assertRaises(NotSemisimple):
            wedderburn(upper_triangular(Q))

    def test_absolutely_semisimple(self):
        self.assertEqual(is_absolutely_semisimple(matrix_algebra(Q, 2)), Verdict.YES)
        self.assertEqual(is_absolutely_semisimple(upper_triangular(Q)), Verdict.NO)
        self.assertEqual(is_absolutely_semisimple(group_algebra(cyclic(3), Q).algebra), Verdict.NO)
        self.assertEqual(is_absolutely_semisimple(group_algebra(cyclic(3), ScalarField(7)).algebra), Verdict.YES)


class TestMorita(unittest.TestCase):
    """Corners and Morita contexts
    """

    def test_full_corner(self):
        M = matrix_algebra(Q, 2)
        p = M.element({'E00': 1})

        B, ctx, full = corner(M, p)
        self.assertEqual(B.dim, 1)
        self.assertTrue(full)
        self.assertEqual(verify_morita(ctx), MoritaStatus.STRICT)
        self.assertEqual(sandwich(M, p, M.one()).dim, 2)

    def test_corner_not_full(self):
        T = upper_triangular(Q)
        p = T.element({'E00': 1})

        self.assertFalse(is_full_idempotent(T, p))
        self.assertEqual(verify_morita(morita_context(T, T.one(), p)), MoritaStatus.NOT_SURJECTIVE)

    def test_not_idempotent(self):
        M = matrix_algebra(Q, 2)
        with self.assertRaises(AlgebraError):
            corner(M, M.element({'E01': 1}))
