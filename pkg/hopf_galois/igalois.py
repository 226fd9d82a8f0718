"""
I-Galois objects: components ``A_ij = p_i A p_j``, connectedness, invariant functionals, modular data, the Nakayama
automorphism, and the correspondence with homogeneous coactions.
"""

import itertools
import logging
import random
from typing import Any, Dict, Iterator, List, Optional, Sequence, Tuple

from hopf_galois.assoc import (
    DEFAULT_SPLIT_SEARCH_BUDGET, AlgModule, BlockStatus, MoritaStatus, NotSplit, NotSplitCenter, Verdict, corner,
    homomorphisms, is_full_idempotent, is_semisimple, is_simple, morita_context,
    primitive_idempotents_split_commutative, sandwich, tensor_multiply, verify_morita, wedderburn
)
from hopf_galois.coact import (
    ComoduleAlgebra, EquivariantModule, NotGalois, balanced_tensor, biduality, coinvariants, double_smash_twisted,
    equivariant_to_smash, galois_inverse, is_equivariantly_abs_semisimple, is_galois, is_homogeneous, restrict,
    reynolds, right_galois_inverse, smash
)
from hopf_galois.exactla import (
    Matrix, SingularMatrix, Subspace, Vector, dot, inverse, kernel, solve, tensor, tensor_vectors, unit_vector,
    zero_vector
)
from hopf_galois.hopf import antipode_inverse, gram_matrix

logger = logging.getLogger(__name__)


class IGaloisError(Exception):
    pass


class CoinvariantsNotSplit(IGaloisError):
    def __init__(self, reason: str, *args):
        super().__init__('coinvariants are not isomorphic to k_I ({})'.format(reason), *args)


class NoCompleteFunctional(IGaloisError):
    def __init__(self, dim: int, size: int, *args):
        self.dim = dim
        self.size = size
        super().__init__(
            'no complete invariant functional in a space of dimension {} (|I| = {})'.format(dim, size), *args)


class CannotCertifySplit(IGaloisError):
    def __init__(self, what: str, *args):
        super().__init__('cannot certify that the smash product of {} is split'.format(what), *args)


class NotHomogeneous(IGaloisError):
    def __init__(self, what: str, *args):
        super().__init__('{} is not homogeneous'.format(what), *args)


class NotEquivariantlySemisimple(IGaloisError):
    def __init__(self, what: str, *args):
        super().__init__('{} is not equivariantly absolutely semisimple'.format(what), *args)


class Disconnected(IGaloisError):
    def __init__(self, classes: List[List[int]], *args):
        self.classes = classes
        super().__init__('I-Galois object is not connected (classes: {})'.format(classes), *args)


class RouteMismatch(IGaloisError):
    def __init__(self, index: int, *args):
        self.index = index
        super().__init__('the two Nakayama automorphisms differ on basis element {}'.format(index), *args)


class InvariantViolation(IGaloisError):
    def __init__(self, name: str, where: tuple = (), *args):
        self.name = name
        self.where = where
        super().__init__('{} fails{}'.format(name, ' at {}'.format(where) if where else ''), *args)


class IGaloisObject:
    """Galois coaction with coinvariants ``k_I``, with its minimal coinvariant idempotents ``p_i`` and the components
    ``A_ij = p_i A p_j``"""

    def __init__(self, base: ComoduleAlgebra, idempotents: List[Vector], components: Dict[Tuple[int, int], Subspace]):
        self.base = base
        self.algebra = base.algebra
        self.field = base.field
        self.idempotents = idempotents
        self.components = components
        self.index = list(range(len(idempotents)))
        self._cache = {}

        # coordinate of p_i used to read coefficients of multiples of p_i
        self._anchors = [next(k for k, a in enumerate(p) if a) for p in idempotents]

    @property
    def size(self) -> int:
        return len(self.idempotents)

    def component_dims(self) -> List[List[int]]:
        return [[self.components[(i, j)].dim for j in self.index] for i in self.index]

    def coefficient(self, y: Sequence, i: int) -> Any:
        """``c`` with ``y = c p_i``"""

        k, p = self._anchors[i], self.idempotents[i]
        c = y[k] / p[k]
        if list(y) != [c * a for a in p]:
            raise InvariantViolation('element is a multiple of p_{}'.format(i))
        return c

    def __repr__(self) -> str:
        return '<IGaloisObject {} with |I| = {}>'.format(self.base.name, self.size)


def analyze(A: ComoduleAlgebra) -> IGaloisObject:
    """Check that ``A`` is Galois with coinvariants ``k_I`` and compute its components"""

    if not is_galois(A):
        raise NotGalois(A.name or 'coaction')

    B = coinvariants(A)
    if not B.algebra.is_commutative():
        raise CoinvariantsNotSplit('not commutative')

    try:
        local = primitive_idempotents_split_commutative(B.algebra)
    except NotSplit as e:
        raise CoinvariantsNotSplit(str(e))

    if len(local) != B.dim:
        raise CoinvariantsNotSplit('{} primitive idempotents in dimension {}'.format(len(local), B.dim))

    D = A.algebra
    idempotents = [B.lift(e) for e in local]
    if [sum(x, A.field.zero) for x in zip(*idempotents)] != D.one():
        raise InvariantViolation('Σ p_i = 1')

    components = {}
    for i, p in enumerate(idempotents):
        for j, q in enumerate(idempotents):
            components[(i, j)] = sandwich(D, p, q)

    pieces = [b for U in components.values() for b in U.basis]
    if len(pieces) != D.dim or not Subspace.span(A.field, D.dim, pieces).is_full():
        raise InvariantViolation('A = ⊕ A_ij')

    G = IGaloisObject(A, idempotents, components)
    logger.debug('{}: component dimensions {}'.format(G, G.component_dims()))
    return G


def splitting_map(G: IGaloisObject) -> Matrix:
    """Matrix of ``a ⊗ a' -> Σ_i a p_i ⊗ p_i a'`` from the quotient coordinates of ``A ⊗_{k_I} A`` to ``A ⊗ A``"""

    if 'splitting' in G._cache:
        return G._cache['splitting']

    D, field = G.algebra, G.field
    projection, section = balanced_tensor(G.base)

    full = Matrix.zeros(field, D.dim * D.dim, D.dim * D.dim)
    for p in G.idempotents:
        full = full + tensor(D.right_matrix(p), D.left_matrix(p))

    if full @ section @ projection != full:
        raise InvariantViolation('splitting map vanishes on the balancing relations')

    split = full @ section

    expected = Subspace.span(field, D.dim * D.dim, [
        tensor_vectors(b, c, field)
        for i, j, k in itertools.product(G.index, repeat=3)
        for b in G.components[(i, j)].basis for c in G.components[(j, k)].basis])
    if Subspace.column_space(split) != expected or split.rank() != split.cols:
        raise InvariantViolation('splitting map is an isomorphism onto ⊕ A_ij ⊗ A_jk')

    G._cache['splitting'] = split
    return split


def connectivity(G: IGaloisObject) -> List[List[int]]:
    """Classes of the relation ``i ~ j`` iff ``A_ij ≠ 0``"""

    nonzero = {(i, j) for (i, j), U in G.components.items() if not U.is_zero()}

    for i, j in nonzero:
        if (j, i) not in nonzero:
            raise InvariantViolation('symmetry of ~', (i, j))
        for k in G.index:
            if (j, k) in nonzero and (i, k) not in nonzero:
                raise InvariantViolation('transitivity of ~', (i, j, k))

    parent = list(G.index)

    def find(i: int) -> int:
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    for i, j in nonzero:
        ri, rj = find(i), find(j)
        if ri != rj:
            parent[max(ri, rj)] = min(ri, rj)

    classes = {}
    for i in G.index:
        classes.setdefault(find(i), []).append(i)

    return [classes[k] for k in sorted(classes)]


def is_connected(G: IGaloisObject) -> bool:
    return len(connectivity(G)) == 1


def split_connected(G: IGaloisObject) -> List[IGaloisObject]:
    """One connected I_x-Galois object per class ``x``, cut down by ``e_x = Σ_{i ∈ x} p_i``"""

    pieces = []
    for n, cls in enumerate(connectivity(G)):
        e = [sum(x, G.field.zero) for x in zip(*[G.idempotents[i] for i in cls])]
        piece = analyze(restrict(G.base, sandwich(G.algebra, e, e), name='{}[{}]'.format(G.base.name, n)))
        if piece.size != len(cls) or not is_connected(piece):
            raise InvariantViolation('connected piece {}'.format(cls))
        pieces.append(piece)
    return pieces


# -- invariant functionals

class InvariantFunctionalData:
    """Functionals on ``A`` as coordinate rows: the components ``phi_i`` of the Reynolds operator, their sum
    ``phi_A``, and (once solved) a complete invariant functional ``psi_A`` with its permutation ``mu``. ``completion``
    is the functional as picked, before normalization"""

    def __init__(self, phi_i: List[Vector], phi_A: Vector, psi_A: Vector = None, mu: List[int] = None,
                 space: Subspace = None, choice: int = None, completion: Vector = None):
        self.phi_i = phi_i
        self.phi_A = phi_A
        self.psi_A = psi_A
        self.mu = mu
        self.space = space
        self.choice = choice
        self.completion = completion

    @property
    def kappa(self) -> List[int]:
        kappa = [0] * len(self.mu)
        for i, j in enumerate(self.mu):
            kappa[j] = i
        return kappa

    @property
    def mu_is_identity(self) -> bool:
        return self.mu == list(range(len(self.mu)))


def phi_components(G: IGaloisObject) -> InvariantFunctionalData:
    """``φ_i(a)``, the coefficient of ``p_i`` in ``Φ(p_i a p_i)``, and ``φ_A = Σ_i φ_i``"""

    if 'phi' in G._cache:
        return G._cache['phi']

    A, D, field = G.base, G.algebra, G.field
    Phi = reynolds(A)

    phi_i = []
    for i, p in enumerate(G.idempotents):
        phi_i.append([G.coefficient(Phi.apply(D.multiply_all(p, D.basis_element(k), p)), i) for k in range(D.dim)])

    for k in range(D.dim):
        reassembled = zero_vector(field, D.dim)
        for i, p in enumerate(G.idempotents):
            reassembled = [x + phi_i[i][k] * y for x, y in zip(reassembled, p)]
        if Phi.column(k) != reassembled:
            raise InvariantViolation('Φ(a) = Σ φ_i(p_i a p_i) p_i', (k, ))

    phi_A = [sum(x, field.zero) for x in zip(*phi_i)]

    if gram_matrix(D, phi_A).rank() != D.dim:
        raise InvariantViolation('φ_A faithful')

    for i in G.index:
        for j in G.index:
            X, Y = G.components[(i, j)], G.components[(j, i)]
            if X.dim != Y.dim:
                raise InvariantViolation('dim A_ij = dim A_ji', (i, j))
            if X.dim == 0:
                continue
            pairing = Matrix.from_rows(
                field, [[dot(phi_i[i], D.multiply(x, y), field) for y in Y.basis] for x in X.basis], Y.dim)
            if pairing.rank() != X.dim:
                raise InvariantViolation('φ_i pairing on A_ij x A_ji non-degenerate', (i, j))

    delta = A.hopf.invariants().delta
    failure = _delta_invariance_failure(A, phi_A, delta)
    if failure is not None:
        raise InvariantViolation('(φ_A ⊗ id)α(a) = φ_A(a)δ', failure)

    data = InvariantFunctionalData(phi_i, phi_A)
    G._cache['phi'] = data
    return data


def _delta_invariance_failure(A: ComoduleAlgebra, functional: Sequence, delta: Sequence) -> Optional[tuple]:
    field = A.field
    for k in range(A.dim):
        lhs = zero_vector(field, A.hopf.dim)
        for a, h, c in A.sparse_alpha(k):
            if functional[a]:
                lhs[h] += c * functional[a]
        if lhs != [functional[k] * d for d in delta]:
            return k,
    return None


def check_delta_invariance(G: IGaloisObject) -> Optional[tuple]:
    """First basis element where ``(Φ ⊗ id)α(a) = Φ(a) ⊗ δ`` fails"""

    A, D, field = G.base, G.algebra, G.field
    m = A.hopf.dim
    Phi = reynolds(A)
    delta = A.hopf.invariants().delta

    for k in range(D.dim):
        lhs = zero_vector(field, D.dim * m)
        for a, h, c in A.sparse_alpha(k):
            for b, v in enumerate(Phi.column(a)):
                if v:
                    lhs[b * m + h] += c * v
        if lhs != tensor_vectors(Phi.column(k), delta, field):
            return k,
    return None


def invariant_functional_space(G: IGaloisObject) -> Subspace:
    """``{ψ : (ψ ⊗ id)α(x) = ψ(x)1}``"""

    A, field = G.base, G.field
    m, unit = A.hopf.dim, A.hopf.unit()

    # equation j·m + h: Σ_a α(e_j)[(a, h)] ψ_a - ψ_j 1[h] = 0
    entries = {}
    for t, j, c in A.coaction.items():
        a, h = divmod(t, m)
        row = entries.setdefault(j * m + h, {})
        row[a] = row.get(a, field.zero) + c
    for j in range(A.dim):
        for h in range(m):
            if unit[h]:
                row = entries.setdefault(j * m + h, {})
                row[j] = row.get(j, field.zero) - unit[h]

    return kernel(Matrix(field, A.dim * m, A.dim, entries))


def _restriction_is_zero(G: IGaloisObject, psi: Sequence, i: int, j: int) -> bool:
    return all(not dot(psi, b, G.field) for b in G.components[(i, j)].basis)


def _is_left_complete(G: IGaloisObject, psi: Sequence) -> bool:
    return all(any(psi_ for psi_ in G.algebra.left_matrix(p).apply_left(psi)) for p in G.idempotents)


def _is_right_complete(G: IGaloisObject, psi: Sequence) -> bool:
    return all(any(psi_ for psi_ in G.algebra.right_matrix(p).apply_left(psi)) for p in G.idempotents)


# small coefficients tried, in this order, when combining basis functionals
COMPLETION_COEFFICIENTS = (1, 2, -1, 3, -2)


def _coefficient_patterns(dim: int) -> Iterator[Tuple[Tuple[int, ...], Tuple[int, ...]]]:
    for height in range(1, len(COMPLETION_COEFFICIENTS) + 1):
        values, newest = COMPLETION_COEFFICIENTS[:height], COMPLETION_COEFFICIENTS[height - 1]
        for size in range(1, dim + 1):
            for support in itertools.combinations(range(dim), size):
                for picked in itertools.product(values, repeat=size):
                    if newest in picked:
                        yield support, picked


def complete_functionals(G: IGaloisObject) -> Iterator[Vector]:
    """Distinct complete invariant functionals, as combinations of the canonical basis of the solution space.

    Sums of subsets come first (single vectors, then pairs, and so on), then combinations with the other
    ``COMPLETION_COEFFICIENTS``.
    """

    field = G.field
    space = invariant_functional_space(G)
    seen = set()

    for support, picked in _coefficient_patterns(space.dim):
        psi = zero_vector(field, G.algebra.dim)
        for k, c in zip(support, picked):
            psi = [x + field(c) * y for x, y in zip(psi, space.basis[k])]

        key = tuple(field.key(a) for a in psi)
        if key in seen or not _is_left_complete(G, psi):
            continue
        seen.add(key)
        yield psi


def normalize_functional(G: IGaloisObject, psi: Sequence) -> Vector:
    """``x -> ψ(xu)`` with ``u = Σ_i c_i p_i``, the ``c_i`` chosen so that every ``δ_i = θ(p_i)`` has leading
    coordinate 1.

    ``u`` is coinvariant, so the result is still a complete invariant functional, and its ``θ`` is ``w -> wuδ_A``.
    """

    D, field = G.algebra, G.field
    G_A = gram_matrix(D, phi_components(G).phi_A)
    try:
        theta = inverse(G_A) @ gram_matrix(D, psi)
    except SingularMatrix:
        raise InvariantViolation('φ_A faithful')

    u = zero_vector(field, D.dim)
    for i, p in enumerate(G.idempotents):
        lead = next((a for a in theta.apply(p) if a), None)
        if lead is None:
            raise InvariantViolation('δ_i ≠ 0', (i, ))
        u = [x + y / lead for x, y in zip(u, p)]

    return D.right_matrix(u).apply_left(psi)


def invariant_functionals(G: IGaloisObject, choice: int = 0) -> InvariantFunctionalData:
    """Solve for the invariant functionals, pick the ``choice``-th complete one and read ``μ`` off its components.

    The space must have dimension ``|I|``, every solution must vanish on ``A_ij`` unless ``j = μ(i)``, and the chosen
    ``ψ_A`` must be right complete and faithful. It is then rescaled by ``normalize_functional``, so that the
    modular element comes out with leading coordinates 1 on every ``p_i``.
    """

    key = ('psi', choice)
    if key in G._cache:
        return G._cache[key]

    phi = phi_components(G)
    space = invariant_functional_space(G)
    if space.dim != G.size:
        raise InvariantViolation('invariant functionals form a space of dimension |I|', (space.dim, G.size))

    psi = next(itertools.islice(complete_functionals(G), choice, None), None)
    if psi is None:
        raise NoCompleteFunctional(space.dim, G.size)

    mu = []
    for i in G.index:
        support = [j for j in G.index if not _restriction_is_zero(G, psi, i, j)]
        if len(support) != 1:
            raise InvariantViolation('ψ_ij ≠ 0 for exactly one j', (i, support))
        mu.append(support[0])

    if sorted(mu) != G.index:
        raise InvariantViolation('μ bijective', tuple(mu))

    for b in space.basis:
        for i in G.index:
            for j in G.index:
                if j != mu[i] and not _restriction_is_zero(G, b, i, j):
                    raise InvariantViolation('every invariant functional is supported on the A_iμ(i)', (i, j))

    if not _is_right_complete(G, psi):
        raise InvariantViolation('left complete implies right complete')
    if gram_matrix(G.algebra, psi).rank() != G.algebra.dim:
        raise InvariantViolation('ψ_A faithful')

    data = InvariantFunctionalData(
        phi.phi_i, phi.phi_A, normalize_functional(G, psi), mu, space, choice, completion=psi)
    if not data.mu_is_identity:
        logger.warning('{}: the permutation μ = {} is not the identity'.format(G, mu))

    G._cache[key] = data
    return data


def component_scaling(G: IGaloisObject, psi: Sequence, other: Sequence) -> List[Any]:
    """Constants ``c_j`` with ``ψ'_ij = c_j ψ_ij`` for every ``i``, ``ψ`` being complete"""

    field = G.field
    kappa = invariant_functionals(G).kappa

    constants = []
    for j in G.index:
        i = kappa[j]
        b = next((b for b in G.components[(i, j)].basis if dot(psi, b, field)), None)
        if b is None:
            raise InvariantViolation('ψ_κ(j)j ≠ 0', (j, ))
        constants.append(dot(other, b, field) / dot(psi, b, field))

    for i in G.index:
        for j in G.index:
            for b in G.components[(i, j)].basis:
                if dot(other, b, field) != constants[j] * dot(psi, b, field):
                    raise InvariantViolation('ψ\'_ij = c_j ψ_ij', (i, j))

    return constants


# -- modular data

class ModularData:
    """``θ``, ``θ'`` (matrices), modular elements ``δ_A``, ``δ'_A``, scalars ``ν_i`` and the automorphisms
    ``σ_A``, ``σ'_A``"""

    def __init__(self, theta: Matrix, theta_prime: Matrix, delta_A: Vector, delta_A_inverse: Vector,
                 delta_A_prime: Vector, nu: List[Any], sigma_A: Matrix, sigma_A_prime: Matrix):
        self.theta = theta
        self.theta_prime = theta_prime
        self.delta_A = delta_A
        self.delta_A_inverse = delta_A_inverse
        self.delta_A_prime = delta_A_prime
        self.nu = nu
        self.sigma_A = sigma_A
        self.sigma_A_prime = sigma_A_prime

    def nu_is_trivial(self, field: Any) -> bool:
        return all(v == field.one for v in self.nu)


def _grams(G: IGaloisObject, F: InvariantFunctionalData) -> Tuple[Matrix, Matrix, Matrix]:
    G_A = gram_matrix(G.algebra, F.phi_A)
    try:
        G_inv = inverse(G_A)
    except SingularMatrix:
        raise InvariantViolation('φ_A faithful')
    return G_A, G_inv, gram_matrix(G.algebra, F.psi_A)


def nakayama(G: IGaloisObject) -> Matrix:
    """``σ_A`` with ``φ_A(xy) = φ_A(y σ_A(x))``, solved from the Gram matrix of ``φ_A``"""

    if 'nakayama' in G._cache:
        return G._cache['nakayama']

    D = G.algebra
    F = phi_components(G)
    G_A = gram_matrix(D, F.phi_A)
    try:
        sigma = inverse(G_A) @ G_A.transpose()
    except SingularMatrix:
        raise InvariantViolation('φ_A faithful')

    if sigma.rank() != D.dim:
        raise InvariantViolation('σ_A bijective')

    for i in range(D.dim):
        for j in range(D.dim):
            if sigma.apply(D.product(i, j)) != D.multiply(sigma.column(i), sigma.column(j)):
                raise InvariantViolation('σ_A multiplicative', (i, j))

    G._cache['nakayama'] = sigma
    return sigma


def modular_data(G: IGaloisObject, functionals: InvariantFunctionalData = None) -> ModularData:
    """Solve ``φ_A(xθ(w)) = ψ_A(xw)`` and ``φ_A(θ'(x)y) = ψ_A(xy)``, then read off ``δ_A = θ(1)``,
    ``δ'_A = θ'(1)`` and ``ν_i`` from ``p_i δ_A⁻¹ δ'_A p_i = ν_i p_i``"""

    F = functionals if functionals is not None else invariant_functionals(G)
    key = ('modular', F.choice)
    if key in G._cache:
        return G._cache[key]

    A, D, field = G.base, G.algebra, G.field
    G_A, G_inv, Psi = _grams(G, F)

    theta = G_inv @ Psi
    theta_prime = (Psi @ G_inv).transpose()
    if theta.rank() != D.dim or theta_prime.rank() != D.dim:
        raise InvariantViolation('θ and θ\' bijective')

    mu, kappa = F.mu, F.kappa
    for (i, j), U in G.components.items():
        for b in U.basis:
            if not G.components[(i, kappa[j])].contains(theta.apply(b)):
                raise InvariantViolation('θ(A_ij) ⊆ A_iκ(j)', (i, j))
            if not G.components[(mu[i], j)].contains(theta_prime.apply(b)):
                raise InvariantViolation('θ\'(A_ij) ⊆ A_μ(i)j', (i, j))

    one = D.one()
    delta_A, delta_prime = theta.apply(one), theta_prime.apply(one)
    if theta != D.right_matrix(delta_A) or theta_prime != D.left_matrix(delta_prime):
        raise InvariantViolation('θ(x) = xδ_A and θ\'(x) = δ\'_A x')

    try:
        delta_inv = inverse(D.left_matrix(delta_A)).apply(one)
    except SingularMatrix:
        raise InvariantViolation('δ_A invertible')
    if D.multiply(delta_inv, delta_A) != one or D.multiply(delta_A, delta_inv) != one:
        raise InvariantViolation('δ_A invertible')

    delta = A.hopf.invariants().delta
    for name, x in (('α(δ_A) = δ_A ⊗ δ', delta_A), ('α(δ\'_A) = δ\'_A ⊗ δ', delta_prime)):
        if A.alpha(x) != tensor_vectors(x, delta, field):
            raise InvariantViolation(name)

    ratio = D.multiply(delta_inv, delta_prime)
    nu = [G.coefficient(D.multiply_all(p, ratio, p), i) for i, p in enumerate(G.idempotents)]
    for i, p in enumerate(G.idempotents):
        if not nu[i]:
            raise InvariantViolation('ν_i invertible', (i, ))
        if theta_prime.apply(p) != [nu[i] * x for x in theta.apply(G.idempotents[mu[i]])]:
            raise InvariantViolation('δ\'_i = ν_i δ_μ(i)', (i, ))

    sigma = nakayama(G)
    sigma_prime = D.left_matrix(delta_A) @ D.right_matrix(delta_inv) @ sigma

    data = ModularData(theta, theta_prime, delta_A, delta_inv, delta_prime, nu, sigma, sigma_prime)
    if not data.nu_is_trivial(field):
        logger.warning('{}: ν = {} is not trivial'.format(G, [field.format(v) for v in nu]))

    G._cache[key] = data
    return data


def sigma_prime_invariance(G: IGaloisObject, functionals: InvariantFunctionalData = None) -> Optional[tuple]:
    """First basis pair where ``ψ_A(xy) = ψ_A(y σ'_A(x))`` fails"""

    F = functionals if functionals is not None else invariant_functionals(G)
    sigma_prime = modular_data(G, F).sigma_A_prime
    Psi = gram_matrix(G.algebra, F.psi_A)
    lhs, rhs = Psi.transpose(), Psi @ sigma_prime

    for j in range(G.algebra.dim):
        for k in range(G.algebra.dim):
            if lhs[j, k] != rhs[j, k]:
                return k, j
    return None


# -- explicit constructions through the Galois maps

def _h_prime(G: IGaloisObject) -> Vector:
    """``h'`` with ``φ(h') = 1``: the first basis element where ``φ`` does not vanish, rescaled"""

    H = G.base.hopf
    phi = H.invariants().phi
    k = next(k for k, a in enumerate(phi) if a)
    h = unit_vector(G.field, H.dim, k)
    h[k] = G.field.one / phi[k]
    return h


def theta_explicit(G: IGaloisObject, functionals: InvariantFunctionalData = None) -> Matrix:
    """``θ(w) = ((id ⊗ ψ_A)∘𝔰∘c̃an⁻¹)(α(w)(1 ⊗ h'))``, checked against the solved ``θ``"""

    F = functionals if functionals is not None else invariant_functionals(G)
    A, D, field = G.base, G.algebra, G.field
    n = D.dim

    split = splitting_map(G) @ right_galois_inverse(A)
    shifted = tensor_vectors(D.one(), _h_prime(G), field)

    columns = []
    for w in range(n):
        y = split.apply(tensor_multiply(D, A.hopf.algebra, A.coaction.column(w), shifted))
        column = zero_vector(field, n)
        for t, c in enumerate(y):
            if c:
                a, b = divmod(t, n)
                if F.psi_A[b]:
                    column[a] += c * F.psi_A[b]
        columns.append(column)

    theta = Matrix.from_columns(field, columns, n)
    solved = modular_data(G, F).theta
    for w in range(n):
        if theta.column(w) != solved.column(w):
            raise InvariantViolation('explicit θ equals the solved θ', (w, ))

    return theta


def beta(G: IGaloisObject, i: int) -> Matrix:
    """Matrix of ``β_i: h -> 𝔰(can⁻¹(p_i ⊗ h))``, from ``H`` to ``A ⊗ A``"""

    key = ('beta', i)
    if key not in G._cache:
        m = G.base.hopf.dim
        inputs = Matrix.from_columns(
            G.field, [tensor_vectors(G.idempotents[i], unit_vector(G.field, m, h), G.field) for h in range(m)],
            G.algebra.dim * m)
        G._cache[key] = splitting_map(G) @ galois_inverse(G.base) @ inputs
    return G._cache[key]


def check_eigen_relations(G: IGaloisObject) -> Optional[Tuple[str, tuple]]:
    """First failure ``(relation, (h, x, i))`` of

    - ``h^[1;i] Φ(h^[2;i] x) = φ(h x_(1)) p_i x_(0)``
    - ``Φ(x h^[1;i]) h^[2;i] = φ(x_(1) S(h)) x_(0) p_i``
    """

    A, D, field = G.base, G.algebra, G.field
    H = A.hopf
    n, m = D.dim, H.dim
    Phi = reynolds(A)
    phi = H.invariants().phi

    for i, p in enumerate(G.idempotents):
        B = beta(G, i)
        for h in range(m):
            terms = [divmod(t, n) + (c, ) for t, c in enumerate(B.column(h)) if c]
            sh = H.S(unit_vector(field, m, h))
            for x in range(n):
                ex = D.basis_element(x)

                lhs1, lhs2 = zero_vector(field, n), zero_vector(field, n)
                for a, b, c in terms:
                    y1 = D.multiply(D.basis_element(a), Phi.apply(D.multiply(D.basis_element(b), ex)))
                    y2 = D.multiply(Phi.apply(D.multiply(ex, D.basis_element(a))), D.basis_element(b))
                    lhs1 = [u + c * v for u, v in zip(lhs1, y1)]
                    lhs2 = [u + c * v for u, v in zip(lhs2, y2)]

                rhs1, rhs2 = zero_vector(field, n), zero_vector(field, n)
                for u, k, c in A.sparse_alpha(x):
                    w1 = c * dot(phi, H.algebra.product(h, k), field)
                    w2 = c * dot(phi, H.algebra.multiply(H.algebra.basis_element(k), sh), field)
                    if w1:
                        rhs1 = [r + w1 * v for r, v in zip(rhs1, D.multiply(p, D.basis_element(u)))]
                    if w2:
                        rhs2 = [r + w2 * v for r, v in zip(rhs2, D.multiply(D.basis_element(u), p))]

                if lhs1 != rhs1:
                    return 'eig1', (h, x, i)
                if lhs2 != rhs2:
                    return 'eig2', (h, x, i)

    return None


def nakayama_explicit(G: IGaloisObject) -> Matrix:
    """``σ_A`` assembled from pairs ``x -> x'`` with ``x = Σ_i φ_A(p h^[1;i] q) h^[2;i]`` and
    ``x' = Σ_i g^[1;i] φ_A(p g^[2;i] q)``, ``g = S⁻¹σ(h)``, over basis elements ``h``, ``p`` and ``q``"""

    A, D, field = G.base, G.algebra, G.field
    H = A.hopf
    n, m = D.dim, H.dim
    phi_A = phi_components(G).phi_A
    twist = antipode_inverse(H) @ H.invariants().sigma
    betas = [beta(G, i) for i in G.index]

    # weights[p][q][a] = φ_A(e_p e_a e_q)
    weights = [[D.right_matrix(D.basis_element(q)).apply_left(D.left_matrix(D.basis_element(p)).apply_left(phi_A))
                for q in range(n)] for p in range(n)]

    sources, targets = [], []
    for h in range(m):
        g = twist.column(h)
        tensors_h = [B.column(h) for B in betas]
        tensors_g = [B.apply(g) for B in betas]
        for p in range(n):
            for q in range(n):
                w = weights[p][q]
                x, x_ = zero_vector(field, n), zero_vector(field, n)
                for th, tg in zip(tensors_h, tensors_g):
                    for t, c in enumerate(th):
                        if c and w[t // n]:
                            x[t % n] += c * w[t // n]
                    for t, c in enumerate(tg):
                        if c and w[t % n]:
                            x_[t // n] += c * w[t % n]
                sources.append(x)
                targets.append(x_)

    X = Matrix.from_rows(field, sources, n)
    if X.rank() != n:
        raise InvariantViolation('the elements x span A')

    transposed = solve(X, Matrix.from_rows(field, targets, n))
    if transposed is None:
        raise InvariantViolation('x -> x\' is well defined')

    return transposed.transpose()


def compare_nakayama_routes(G: IGaloisObject) -> Matrix:
    """Both constructions of ``σ_A``; raise ``RouteMismatch`` at the first basis element where they differ"""

    solved, explicit = nakayama(G), nakayama_explicit(G)
    for k in range(G.algebra.dim):
        if solved.column(k) != explicit.column(k):
            raise RouteMismatch(k)
    return solved


# -- correspondence with homogeneous coactions

def homogeneous_from_galois(
        G: IGaloisObject, i: int = 0, rng: random.Random = None,
        budget: int = DEFAULT_SPLIT_SEARCH_BUDGET) -> ComoduleAlgebra:
    """The corner ``(A_ii, α)``; it is checked homogeneous, and each context ``(A_ij, A_ji)`` strict"""

    classes = connectivity(G)
    if len(classes) != 1:
        raise Disconnected(classes)

    C = restrict(G.base, G.components[(i, i)], name='{}[{},{}]'.format(G.base.name, i, i))
    if not is_homogeneous(C):
        raise InvariantViolation('A_ii homogeneous', (i, ))

    for j in G.index:
        status = verify_morita(morita_context(G.algebra, G.idempotents[i], G.idempotents[j]))
        if status != MoritaStatus.STRICT:
            raise InvariantViolation('(A_ij, A_ji) strict', (i, j))

    verdict = is_equivariantly_abs_semisimple(C, rng, budget)
    if verdict == Verdict.NO:
        raise InvariantViolation('A_ii equivariantly absolutely semisimple', (i, ))
    if verdict == Verdict.UNDETERMINED:
        logger.warning('equivariant semisimplicity of {} left undetermined'.format(C))

    return C


class CutDown:
    """``D = (C#Ĥ)#H``, the full coinvariant idempotent ``p`` and the Galois object on ``pDp``"""

    def __init__(self, double: ComoduleAlgebra, idempotent: Vector, galois: IGaloisObject):
        self.double = double
        self.idempotent = idempotent
        self.galois = galois


def cut_down(C: ComoduleAlgebra, rng: random.Random = None, budget: int = DEFAULT_SPLIT_SEARCH_BUDGET) -> CutDown:
    if not is_homogeneous(C):
        raise NotHomogeneous(C.name or 'coaction')

    S = smash(C)
    if not is_semisimple(S.algebra):
        raise NotEquivariantlySemisimple(C.name or 'coaction')

    try:
        form = wedderburn(S.algebra, rng, budget)
    except NotSplitCenter:
        raise NotEquivariantlySemisimple(C.name or 'coaction')

    statuses = form.statuses()
    if BlockStatus.NON_SPLIT in statuses:
        raise NotEquivariantlySemisimple(C.name or 'coaction')
    if BlockStatus.UNDETERMINED in statuses:
        raise CannotCertifySplit(C.name or 'coaction')

    field, m = C.field, C.hopf.dim
    p_smash = zero_vector(field, S.dim)
    for block in form.blocks:
        p_smash = [a + b for a, b in zip(p_smash, block.matrix_unit(0, 0))]

    D = double_smash_twisted(C)
    p = tensor(Matrix.identity(field, S.dim), Matrix.column_vector(field, C.hopf.unit())).apply(p_smash)
    if not D.algebra.is_idempotent(p) or not is_full_idempotent(D.algebra, p):
        raise InvariantViolation('p is a full idempotent of (C#Ĥ)#H')

    B = restrict(D, sandwich(D.algebra, p, p), name='p({})p'.format(D.name))
    G = analyze(B)
    if G.size != len(form.blocks):
        raise InvariantViolation('|I| equals the number of simple blocks of C#Ĥ')
    if not is_connected(G):
        raise InvariantViolation('pDp connected')

    logger.debug('{} cut down to {} (|I| = {})'.format(C, B, G.size))
    return CutDown(D, p, G)


def galois_from_homogeneous(
        C: ComoduleAlgebra, rng: random.Random = None, budget: int = DEFAULT_SPLIT_SEARCH_BUDGET) -> IGaloisObject:
    """Connected I-Galois object equivariantly Morita equivalent to the homogeneous ``C``"""

    return cut_down(C, rng, budget).galois


class RoundTrip:
    def __init__(self, corner: ComoduleAlgebra, galois: IGaloisObject, contexts: List[Tuple[str, MoritaStatus]]):
        self.corner = corner
        self.galois = galois
        self.contexts = contexts

    def serialize(self) -> List[Dict[str, str]]:
        return [{'context': label, 'status': status.value} for label, status in self.contexts]


def correspond_round_trip(
        C: ComoduleAlgebra, i: int = 0, rng: random.Random = None,
        budget: int = DEFAULT_SPLIT_SEARCH_BUDGET) -> RoundTrip:
    """``C -> pDp -> (pDp)_ii`` with the chain of contexts ``C ~ D ~ pDp ~ (pDp)_ii``, each certified strict"""

    cut = cut_down(C, rng, budget)
    G = cut.galois
    corner_i = homogeneous_from_galois(G, i, rng, budget)

    contexts = [('C ~ (C#H^)#H', biduality(C))]
    _, ctx, full = corner(cut.double.algebra, cut.idempotent)
    contexts.append(('(C#H^)#H ~ pDp', verify_morita(ctx)))
    contexts.append(('pDp ~ corner {}'.format(i), verify_morita(
        morita_context(G.algebra, G.algebra.one(), G.idempotents[i]))))

    for label, status in contexts:
        if status != MoritaStatus.STRICT:
            raise InvariantViolation('strict context {}'.format(label))

    return RoundTrip(corner_i, G, contexts)


def equivariant_simples_report(
        G: IGaloisObject, rng: random.Random = None, budget: int = DEFAULT_SPLIT_SEARCH_BUDGET) -> Dict[str, Any]:
    """The equivariant modules ``M_j = ⊕_i A_ij = A p_j``: simplicity as smash modules, pairwise non-isomorphism and
    maximality (their squared dimensions add up to the dimension of ``A#Ĥ``)"""

    classes = connectivity(G)
    if len(classes) != 1:
        raise Disconnected(classes)

    A, D = G.base, G.algebra
    m = A.hopf.dim
    regular = AlgModule.regular(D)

    modules, entries = [], []
    for j, p in enumerate(G.idempotents):
        U = Subspace.column_space(D.right_matrix(p))
        sub = regular.submodule(U)

        columns = []
        for b in U.basis:
            image = A.alpha(b)
            column = [G.field.zero] * (U.dim * m)
            for h in range(m):
                for r, c in enumerate(U.coordinates([image[a * m + h] for a in range(D.dim)])):
                    column[r * m + h] = c
            columns.append(column)

        V = EquivariantModule(
            A, U.dim, sub.action, Matrix.from_columns(G.field, columns, U.dim * m), name='A p_{}'.format(j))
        report = V.check()
        if not report.passed:
            raise InvariantViolation('A p_j equivariant', (j, ))

        M = equivariant_to_smash(V)
        modules.append(M)
        entries.append({
            'index': j,
            'dim': M.dim,
            'simple': is_simple(M, rng, budget),
            'endomorphisms': len(homomorphisms(M, M))
        })

    nonisomorphic = all(
        not homomorphisms(modules[j], modules[k]) for j in G.index for k in G.index if j != k)
    maximal = all(e['simple'] and e['endomorphisms'] == 1 for e in entries) and \
        sum(e['dim'] ** 2 for e in entries) == smash(A).dim

    return {'modules': entries, 'pairwise_nonisomorphic': nonisomorphic, 'maximal': maximal}
