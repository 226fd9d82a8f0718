import random
import unittest

from hopf_galois.assoc import MoritaStatus
from hopf_galois.coact import NotGalois, check_comodule_algebra, is_homogeneous
from hopf_galois.examples import (
    cyclic, dual_group_algebra, ground_algebra, group_algebra, self_coaction, sweedler_h4, trivial_coaction
)
from hopf_galois.exactla import Matrix
from hopf_galois.igalois import (
    Disconnected, InvariantViolation, NoCompleteFunctional, NotHomogeneous, analyze, check_delta_invariance,
    check_eigen_relations, compare_nakayama_routes, complete_functionals, component_scaling, connectivity,
    correspond_round_trip, cut_down, equivariant_simples_report, galois_from_homogeneous, homogeneous_from_galois,
    invariant_functionals, is_connected, modular_data, nakayama, sigma_prime_invariance, split_connected,
    splitting_map, theta_explicit
)
from hopf_galois.tests import Q
from hopf_galois.tests.tests_coact import four_points, sign_cocycle


def self_kz2():
    return self_coaction(group_algebra(cyclic(2), Q))


def trivial_point():
    """``k`` with the trivial ``kZ2``-coaction"""

    return trivial_coaction(ground_algebra(Q), group_algebra(cyclic(2), Q))


class TestAnalyze(unittest.TestCase):
    """Components and connectedness
    """

    def test_hopf_algebra(self):
        G = analyze(self_kz2())

        self.assertEqual(G.size, 1)
        self.assertEqual(G.idempotents, [[Q(1), Q(0)]])
        self.assertEqual(G.component_dims(), [[2]])
        self.assertTrue(is_connected(G))

    def test_four_points(self):
        G = analyze(four_points(Q))

        self.assertEqual(G.size, 2)
        self.assertEqual(G.component_dims(), [[2, 0], [0, 2]])
        self.assertEqual(connectivity(G), [[0], [1]])
        self.assertFalse(is_connected(G))

        # k^X ⊗_{k_I} k^X is ⊕ A_ii ⊗ A_ii
        self.assertEqual(splitting_map(G).shape, (16, 8))

    def test_split_connected(self):
        pieces = split_connected(analyze(four_points(Q)))

        self.assertEqual(len(pieces), 2)
        for piece in pieces:
            self.assertEqual(piece.size, 1)
            self.assertEqual(piece.algebra.dim, 2)
            self.assertTrue(is_connected(piece))
            self.assertTrue(check_comodule_algebra(piece.base).passed)

    def test_not_galois(self):
        with self.assertRaises(NotGalois):
            analyze(trivial_point())

    def test_coefficient(self):
        G = analyze(four_points(Q))
        p = G.idempotents[0]

        self.assertEqual(G.coefficient([3 * a for a in p], 0), Q(3))
        with self.assertRaises(InvariantViolation):
            G.coefficient([Q(1), Q(0), Q(0), Q(0)], 0)


class TestFunctionals(unittest.TestCase):
    """Invariant functionals and the permutation μ
    """

    def test_four_points(self):
        G = analyze(four_points(Q))
        F = invariant_functionals(G)

        self.assertEqual(F.phi_A, [Q(1, 2)] * 4)
        self.assertEqual(F.completion, [Q(1)] * 4)  # neither orbit indicator alone is complete
        self.assertEqual(F.psi_A, [Q(1, 2)] * 4)
        self.assertEqual(F.space.dim, 2)
        self.assertEqual(F.mu, [0, 1])
        self.assertTrue(F.mu_is_identity)
        self.assertEqual(F.kappa, [0, 1])

    def test_sweedler(self):
        G = analyze(self_coaction(sweedler_h4(Q)))
        F = invariant_functionals(G)

        self.assertEqual(F.phi_A, [Q(0), Q(0), Q(0), Q(1)])
        self.assertEqual(F.completion, [Q(0), Q(0), Q(1), Q(0)])
        self.assertEqual(F.psi_A, [Q(0), Q(0), Q(-1), Q(0)])
        self.assertEqual(F.mu, [0])

    def test_scaling(self):
        G = analyze(four_points(Q))
        psi = invariant_functionals(G).psi_A

        self.assertEqual(component_scaling(G, psi, [Q(3)] * 4), [Q(6), Q(6)])
        with self.assertRaises(InvariantViolation):
            component_scaling(G, psi, [Q(1), Q(2), Q(1), Q(1)])

    def test_completions(self):
        for A in (self_kz2(), four_points(Q), sign_cocycle(Q), self_coaction(sweedler_h4(Q))):
            G = analyze(A)
            completions = [invariant_functionals(G, choice) for choice in range(3)]

            self.assertEqual(len({tuple(Q.key(a) for a in F.completion) for F in completions}), 3)
            for F in completions[1:]:
                self.assertEqual(F.mu, completions[0].mu)
                self.assertEqual(F.psi_A, completions[0].psi_A)

        # c·b for c in 1, 2, -1, 3, -2
        G = analyze(self_kz2())
        self.assertEqual(len(list(complete_functionals(G))), 5)
        with self.assertRaises(NoCompleteFunctional):
            invariant_functionals(G, choice=5)

    def test_delta_invariance(self):
        for A in (self_kz2(), four_points(Q), sign_cocycle(Q), self_coaction(sweedler_h4(Q))):
            self.assertIsNone(check_delta_invariance(analyze(A)))


class TestModularData(unittest.TestCase):
    """Modular elements, ν and the Nakayama automorphisms
    """

    def test_four_points(self):
        G = analyze(four_points(Q))
        M = modular_data(G)

        self.assertTrue(M.theta.is_identity())
        self.assertEqual(M.delta_A, [Q(1)] * 4)
        self.assertEqual(M.delta_A_inverse, [Q(1)] * 4)
        self.assertEqual(M.delta_A_prime, [Q(1)] * 4)
        self.assertEqual(M.nu, [Q(1), Q(1)])
        self.assertTrue(M.nu_is_trivial(Q))
        self.assertTrue(M.sigma_A.is_identity())
        self.assertTrue(M.sigma_A_prime.is_identity())

    def test_sign_cocycle(self):
        M = modular_data(analyze(sign_cocycle(Q)))

        self.assertEqual(M.delta_A, [Q(1), Q(0)])
        self.assertTrue(M.nu_is_trivial(Q))
        self.assertTrue(M.sigma_A.is_identity())

    def test_sweedler(self):
        G = analyze(self_coaction(sweedler_h4(Q)))
        M = modular_data(G)

        # δ_A = g, the modular element of H4
        self.assertEqual(M.delta_A, [Q(0), Q(1), Q(0), Q(0)])
        self.assertEqual(M.delta_A_inverse, [Q(0), Q(1), Q(0), Q(0)])
        self.assertEqual(M.delta_A_prime, [Q(0), Q(-1), Q(0), Q(0)])
        self.assertEqual(M.nu, [Q(-1)])
        self.assertFalse(M.nu_is_trivial(Q))

        # φ_A is the left invariant functional of H4
        self.assertEqual(nakayama(G), Matrix.diagonal(Q, [1, -1, -1, 1]))
        self.assertEqual(M.sigma_A_prime, Matrix.diagonal(Q, [1, -1, 1, -1]))
        self.assertIsNone(sigma_prime_invariance(G))

    def test_normalization(self):
        for A in (self_kz2(), four_points(Q), sign_cocycle(Q), self_coaction(sweedler_h4(Q))):
            G = analyze(A)
            delta_A = modular_data(G).delta_A
            for p in G.idempotents:
                delta_i = G.algebra.multiply(p, delta_A)
                self.assertEqual(next(a for a in delta_i if a), Q(1))

        # the normalization does not depend on the completion
        G = analyze(four_points(Q))
        self.assertEqual(modular_data(G, invariant_functionals(G, 2)).delta_A, [Q(1)] * 4)

    def test_sigma_prime(self):
        for A in (self_kz2(), four_points(Q), sign_cocycle(Q)):
            self.assertIsNone(sigma_prime_invariance(analyze(A)))


class TestExplicit(unittest.TestCase):
    """Constructions through the Galois maps against the solved ones
    """

    def test_theta(self):
        G = analyze(four_points(Q))
        self.assertTrue(theta_explicit(G).is_identity())
        self.assertTrue(theta_explicit(analyze(self_kz2())).is_identity())

    def test_eigen_relations(self):
        for A in (self_kz2(), four_points(Q), sign_cocycle(Q), self_coaction(sweedler_h4(Q))):
            self.assertIsNone(check_eigen_relations(analyze(A)))

    def test_nakayama_routes(self):
        for A in (self_kz2(), four_points(Q), sign_cocycle(Q)):
            self.assertTrue(compare_nakayama_routes(analyze(A)).is_identity())

        # σ_A = σ for a Hopf algebra coacting on itself
        G = analyze(self_coaction(sweedler_h4(Q)))
        self.assertEqual(compare_nakayama_routes(G), Matrix.diagonal(Q, [1, -1, -1, 1]))


class TestCorrespondence(unittest.TestCase):
    """Homogeneous coactions and connected I-Galois objects
    """

    def test_from_homogeneous(self):
        # k^{Z2} ≅ k x k, so |I| = 2 and pDp ≅ M_2(k)
        G = galois_from_homogeneous(trivial_point(), random.Random(0))

        self.assertEqual(G.size, 2)
        self.assertEqual(G.component_dims(), [[1, 1], [1, 1]])
        self.assertTrue(is_connected(G))

        self.assertEqual(galois_from_homogeneous(self_kz2(), random.Random(0)).size, 1)

    def test_cut_down(self):
        cut = cut_down(trivial_point(), random.Random(0))

        self.assertEqual(cut.double.dim, 4)
        self.assertTrue(cut.double.algebra.is_idempotent(cut.idempotent))

        with self.assertRaises(NotHomogeneous):
            cut_down(four_points(Q))

    def test_to_homogeneous(self):
        G = analyze(self_kz2())
        C = homogeneous_from_galois(G, 0, random.Random(0))

        self.assertEqual(C.dim, 2)
        self.assertTrue(is_homogeneous(C))

        with self.assertRaises(Disconnected):
            homogeneous_from_galois(analyze(four_points(Q)))

    def test_round_trip(self):
        trip = correspond_round_trip(trivial_point(), 1, random.Random(0))

        self.assertEqual(trip.corner.dim, 1)
        self.assertEqual(trip.galois.size, 2)
        self.assertEqual([status for _, status in trip.contexts], [MoritaStatus.STRICT] * 3)
        self.assertEqual(len(trip.serialize()), 3)

        trip = correspond_round_trip(self_kz2(), 0, random.Random(0))
        self.assertEqual(trip.galois.size, 1)
        self.assertEqual(trip.corner.dim, 2)
        self.assertTrue(all(status == MoritaStatus.STRICT for _, status in trip.contexts))

    def test_round_trip_function_algebra(self):
        C = self_coaction(dual_group_algebra(cyclic(2), Q))
        trip = correspond_round_trip(C, 0, random.Random(0))

        self.assertEqual([status for _, status in trip.contexts], [MoritaStatus.STRICT] * 3)
        self.assertTrue(is_homogeneous(trip.corner))

    def test_equivariant_simples(self):
        report = equivariant_simples_report(analyze(self_kz2()), random.Random(0))

        self.assertEqual(report['modules'], [{'index': 0, 'dim': 2, 'simple': True, 'endomorphisms': 1}])
        self.assertTrue(report['pairwise_nonisomorphic'])
        self.assertTrue(report['maximal'])

    def test_equivariant_simples_two_objects(self):
        G = galois_from_homogeneous(trivial_point(), random.Random(0))
        report = equivariant_simples_report(G, random.Random(0))

        self.assertEqual([m['dim'] for m in report['modules']], [2, 2])
        self.assertTrue(report['pairwise_nonisomorphic'])
        self.assertTrue(report['maximal'])

        with self.assertRaises(Disconnected):
            equivariant_simples_report(analyze(four_points(Q)))
