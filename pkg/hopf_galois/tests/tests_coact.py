import unittest

from hopf_galois.assoc import MoritaStatus, NotSemisimple, Verdict, check_associativity, wedderburn
from hopf_galois.coact import (
    Cancelled, CancellationToken, Comodule, ComoduleAlgebra, ComoduleError, NotGalois, balanced_tensor, biduality,
    check_comodule_algebra, coinvariant_space, coinvariants, coinvariants_generate, double_smash_twisted,
    equivariant_tensor_module, equivariant_to_smash, galois_inverse, galois_map, has_coinvariant_local_units,
    is_equivariantly_abs_semisimple, is_galois, is_homogeneous, restrict, reynolds, right_galois_map, smash,
    smash_to_equivariant
)
from hopf_galois.examples import (
    cocycle_table, cocycle_twisted_group_algebra, cyclic, free_gset_function_algebra, ground_algebra, group_algebra,
    regular_gset, self_coaction, sweedler_h4, trivial_coaction
)
from hopf_galois.exactla import Matrix, Subspace
from hopf_galois.tests import F3, Q, upper_triangular


def sign_cocycle(field) -> ComoduleAlgebra:
    G = cyclic(2)
    return cocycle_twisted_group_algebra(G, cocycle_table(G, 'sign', field), field)


def four_points(field) -> ComoduleAlgebra:
    """``k^X`` for two free orbits of ``Z2``"""

    G = cyclic(2)
    return free_gset_function_algebra(G, regular_gset(G, 2), field)


class TestComoduleAlgebra(unittest.TestCase):
    """Axioms and coinvariants
    """

    def _check(self, A: ComoduleAlgebra):
        report = check_comodule_algebra(A)
        self.assertTrue(report.passed, report.failures())

    def test_axioms(self):
        self._check(self_coaction(group_algebra(cyclic(2), Q)))
        self._check(self_coaction(sweedler_h4(Q)))
        self._check(trivial_coaction(ground_algebra(Q), group_algebra(cyclic(2), Q)))
        self._check(sign_cocycle(Q))
        self._check(four_points(F3))

    def test_broken_coaction(self):
        A = self_coaction(group_algebra(cyclic(2), Q))
        broken = ComoduleAlgebra(A.hopf, A.algebra, Matrix.zeros(Q, 4, 2))

        report = check_comodule_algebra(broken)
        self.assertIsNotNone(report['counit'])

    def test_cancel(self):
        token = CancellationToken()
        token.cancel()
        with self.assertRaises(Cancelled):
            check_comodule_algebra(sign_cocycle(Q), token)
        with self.assertRaises(Cancelled):
            check_associativity(sign_cocycle(Q).algebra, token)

    def test_coinvariants(self):
        A = self_coaction(group_algebra(cyclic(2), Q))
        self.assertTrue(is_homogeneous(A))
        self.assertEqual(coinvariant_space(A), Subspace.span(Q, 2, [[1, 0]]))
        self.assertTrue(has_coinvariant_local_units(A))
        self.assertTrue(coinvariants_generate(A))

        X = four_points(Q)
        self.assertFalse(is_homogeneous(X))
        self.assertEqual(coinvariant_space(X), Subspace.span(Q, 4, [[1, 1, 0, 0], [0, 0, 1, 1]]))
        self.assertTrue(coinvariants(X).algebra.is_commutative())

        T = trivial_coaction(group_algebra(cyclic(2), Q).algebra, group_algebra(cyclic(2), Q))
        self.assertTrue(coinvariant_space(T).is_full())

    def test_restrict(self):
        X = four_points(Q)
        B = restrict(X, coinvariant_space(X), name='B')

        self.assertEqual(B.dim, 2)
        self.assertTrue(check_comodule_algebra(B).passed)
        self.assertTrue(coinvariant_space(B).is_full())
        self.assertEqual(B.embedding.shape, (4, 2))

        with self.assertRaises(ComoduleError):
            restrict(X, Subspace.span(Q, 4, [[1, 0, 0, 0]]))

    def test_reynolds(self):
        A = self_coaction(group_algebra(cyclic(2), Q))
        self.assertEqual(reynolds(A), Matrix.from_rows(Q, [[1, 0], [0, 0]]))

        X = four_points(Q)
        self.assertEqual(reynolds(X).column(0), [Q(1, 2), Q(1, 2), Q(0), Q(0)])


class TestGalois(unittest.TestCase):
    """Galois maps on the balanced tensor product
    """

    def test_galois(self):
        self.assertTrue(is_galois(self_coaction(group_algebra(cyclic(2), Q))))
        self.assertTrue(is_galois(self_coaction(sweedler_h4(Q))))
        self.assertTrue(is_galois(sign_cocycle(Q)))
        self.assertTrue(is_galois(four_points(Q)))

    def test_not_galois(self):
        H = group_algebra(cyclic(2), Q)
        for A in (trivial_coaction(ground_algebra(Q), H), trivial_coaction(H.algebra, H)):
            self.assertFalse(is_galois(A))
            with self.assertRaises(NotGalois):
                galois_inverse(A)

    def test_balanced_tensor(self):
        X = four_points(Q)
        projection, section = balanced_tensor(X)

        # k^X is free of rank 2 over its coinvariants
        self.assertEqual(projection.shape, (8, 16))
        self.assertTrue((projection @ section).is_identity())
        self.assertEqual(galois_map(X).matrix.shape, (8, 8))

    def test_inverse(self):
        A = sign_cocycle(Q)
        can = galois_map(A)
        self.assertTrue((can.matrix @ galois_inverse(A)).is_identity())
        self.assertTrue(right_galois_map(A).is_bijective())


class TestSmash(unittest.TestCase):
    """Smash products, equivariant modules and biduality
    """

    def test_smash_of_galois_objects(self):
        for A in (self_coaction(group_algebra(cyclic(2), Q)), sign_cocycle(Q)):
            S = smash(A)
            self.assertEqual(S.dim, 4)

            # A#Ĥ is the full matrix algebra on A
            form = wedderburn(S.algebra)
            self.assertEqual([b.degree for b in form.blocks], [2])
            self.assertEqual(is_equivariantly_abs_semisimple(A), Verdict.YES)

    def test_smash_not_semisimple(self):
        cases = [
            trivial_coaction(upper_triangular(Q), group_algebra(cyclic(2), Q)),
            trivial_coaction(group_algebra(cyclic(3), F3).algebra, group_algebra(cyclic(2), F3)),
        ]

        for A in cases:
            self.assertEqual(is_equivariantly_abs_semisimple(A), Verdict.NO)
            with self.assertRaises(NotSemisimple):
                wedderburn(smash(A).algebra)

    def test_embeddings(self):
        A = self_coaction(group_algebra(cyclic(2), Q))
        S = smash(A)

        self.assertEqual(S.embed_algebra(A.algebra.one()), S.algebra.one())
        self.assertEqual(S.embed_dual(A.hopf.counit), S.algebra.one())

    def test_double_smash(self):
        A = self_coaction(group_algebra(cyclic(2), Q))
        D = double_smash_twisted(A)

        self.assertEqual(D.dim, 8)
        self.assertTrue(check_comodule_algebra(D).passed)
        self.assertEqual(coinvariant_space(D).dim, 4)

    def test_biduality(self):
        self.assertEqual(biduality(self_coaction(group_algebra(cyclic(2), Q))), MoritaStatus.STRICT)

    def test_comodules(self):
        H = sweedler_h4(Q)
        self.assertTrue(Comodule.regular(H).check().passed)
        self.assertTrue(Comodule.trivial(H).check().passed)

    def test_equivariant_modules(self):
        A = sign_cocycle(Q)
        V = equivariant_tensor_module(A, Comodule.trivial(A.hopf))

        self.assertEqual(V.dim, 2)
        self.assertTrue(V.check().passed)

        M = equivariant_to_smash(V)
        self.assertIsNone(M.check())

        W = smash_to_equivariant(A, M)
        self.assertTrue(W.check().passed)
        self.assertEqual(W.action, V.action)
        self.assertEqual(W.coaction, V.coaction)
