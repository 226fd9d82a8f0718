"""
Finite-dimensional Hopf algebras: axioms, invariant functionals, modular element and automorphism, dual Hopf algebra
and Fourier map.
"""

import logging
from collections import OrderedDict
from typing import Any, Dict, List, Optional, Sequence

from hopf_galois.assoc import StructureAlgebra, check_associativity, tensor_multiply
from hopf_galois.exactla import (
    Matrix, SingularMatrix, Subspace, Vector, dot, inverse, kernel, tensor, tensor_vectors
)

logger = logging.getLogger(__name__)


class HopfError(Exception):
    pass


class NoInvariantFunctional(HopfError):
    def __init__(self, *args):
        super().__init__('no nonzero left invariant functional (inconsistent Hopf data)', *args)


class NonUniqueFunctional(HopfError):
    def __init__(self, dim: int, *args):
        self.dim = dim
        super().__init__('left invariant functionals form a space of dimension {}'.format(dim), *args)


class AxiomReport:
    """Axiom name -> ``None`` (pass) or the first violating basis tuple"""

    def __init__(self):
        self.results = OrderedDict()

    def record(self, axiom: str, failure: Optional[tuple]):
        self.results[axiom] = failure

    @property
    def passed(self) -> bool:
        return all(f is None for f in self.results.values())

    def failures(self) -> Dict[str, tuple]:
        return OrderedDict((k, v) for k, v in self.results.items() if v is not None)

    def __getitem__(self, axiom: str) -> Optional[tuple]:
        return self.results[axiom]

    def serialize(self) -> List[Dict[str, Any]]:
        return [
            {'axiom': k, 'status': 'pass'} if v is None else {'axiom': k, 'status': 'fail', 'at': list(v)}
            for k, v in self.results.items()
        ]


class HopfData:
    """Hopf algebra on the basis of ``algebra``.

    ``coproduct`` is the ``(n·n) x n`` matrix whose column ``j`` is ``Δ(e_j)``, ``counit`` the list of the
    ``ε(e_j)`` and ``antipode`` the ``n x n`` matrix of ``S``.
    """

    def __init__(self, algebra: StructureAlgebra, coproduct: Matrix, counit: Sequence, antipode: Matrix,
                 name: str = ''):

        n = algebra.dim
        if coproduct.shape != (n * n, n):
            raise HopfError('coproduct must be a {}x{} matrix'.format(n * n, n))
        if len(counit) != n:
            raise HopfError('counit must have {} coordinates'.format(n))
        if antipode.shape != (n, n):
            raise HopfError('antipode must be a {0}x{0} matrix'.format(n))

        self.algebra = algebra
        self.field = algebra.field
        self.dim = n
        self.coproduct = coproduct
        self.counit = [algebra.field.convert(c) for c in counit]
        self.antipode = antipode
        self.name = name or algebra.name
        self._invariants = None

    @property
    def labels(self) -> List[str]:
        return self.algebra.labels

    def unit(self) -> Vector:
        return self.algebra.one()

    def delta(self, x: Sequence) -> Vector:
        return self.coproduct.apply(x)

    def epsilon(self, x: Sequence) -> Any:
        return dot(self.counit, x, self.field)

    def S(self, x: Sequence) -> Vector:
        return self.antipode.apply(x)

    def counit_matrix(self) -> Matrix:
        return Matrix.from_rows(self.field, [self.counit], self.dim)

    def invariants(self) -> 'InvariantPair':
        if self._invariants is None:
            self._invariants = invariant_functionals(self)
        return self._invariants

    def serialize(self) -> Dict[str, Any]:
        f = self.field.format
        return {
            'algebra': self.algebra.serialize(),
            'coproduct': [[c, r // self.dim, r % self.dim, f(v)] for c, r, v in self.coproduct.transpose().items()],
            'counit': [[i, f(v)] for i, v in enumerate(self.counit) if v],
            'antipode': [[c, r, f(v)] for c, r, v in self.antipode.transpose().items()],
        }

    def __repr__(self) -> str:
        return '<HopfData {} of dim {} over {}>'.format(self.name, self.dim, self.field)


def first_bad_column(M: Matrix, N: Matrix) -> Optional[tuple]:
    for j in range(M.cols):
        if M.column(j) != N.column(j):
            return j,
    return None


def check_hopf(H: HopfData, token: Any = None) -> AxiomReport:
    """Check every Hopf algebra axiom on basis elements.

    :param token: optional cancellation token, polled between basis elements
    """

    D, n, field = H.algebra, H.dim, H.field
    report = AxiomReport()
    identity = Matrix.identity(field, n)
    eps = H.counit_matrix()

    report.record('associativity', check_associativity(D, token))
    report.record('unit', None if D.unit is not None else ())

    report.record('coassociativity', first_bad_column(
        tensor(H.coproduct, identity) @ H.coproduct, tensor(identity, H.coproduct) @ H.coproduct))
    report.record('counit', first_bad_column(tensor(eps, identity) @ H.coproduct, identity)
                  or first_bad_column(tensor(identity, eps) @ H.coproduct, identity))

    deltas = [H.coproduct.column(j) for j in range(n)]
    coproduct_failure, counit_failure = None, None
    for i in range(n):
        if token is not None:
            token.raise_if_cancelled()
        for j in range(n):
            eij = D.product(i, j)
            if coproduct_failure is None and H.delta(eij) != tensor_multiply(D, D, deltas[i], deltas[j]):
                coproduct_failure = (i, j)
            if counit_failure is None and H.epsilon(eij) != H.counit[i] * H.counit[j]:
                counit_failure = (i, j)

    if D.unit is not None:
        if coproduct_failure is None and H.delta(D.unit) != tensor_vectors(D.unit, D.unit, field):
            coproduct_failure = ('unit', )
        if counit_failure is None and H.epsilon(D.unit) != field.one:
            counit_failure = ('unit', )

    report.record('coproduct is an algebra map', coproduct_failure)
    report.record('counit is an algebra map', counit_failure)

    antipode_failure = None
    if D.unit is None:
        antipode_failure = ('unit', )
    else:
        for j in range(n):
            expected = [H.counit[j] * u for u in D.unit]
            left, right = D.zero(), D.zero()
            for t, c in enumerate(deltas[j]):
                if not c:
                    continue
                a, b = divmod(t, n)
                sa, sb = H.S(D.basis_element(a)), H.S(D.basis_element(b))
                left = [x + c * y for x, y in zip(left, D.multiply(sa, D.basis_element(b)))]
                right = [x + c * y for x, y in zip(right, D.multiply(D.basis_element(a), sb))]
            if left != expected or right != expected:
                antipode_failure = (j, )
                break

    report.record('antipode', antipode_failure)

    if not report.passed:
        logger.debug('Hopf axioms failing for {}: {}'.format(H, list(report.failures())))

    return report


class InvariantPair:
    """Left invariant functional ``phi``, right invariant ``psi = phi∘S``, modular element ``delta`` and modular
    automorphism ``sigma``"""

    def __init__(self, phi: Vector, psi: Vector, delta: Vector, sigma: Matrix, normalized: bool):
        self.phi = phi
        self.psi = psi
        self.delta = delta
        self.sigma = sigma
        self.normalized = normalized


def gram_matrix(D: StructureAlgebra, phi: Sequence) -> Matrix:
    """``G[j][k] = phi(e_j e_k)``"""

    entries = {}
    for i, j, k, c in D.structure_items():
        if phi[k]:
            row = entries.setdefault(i, {})
            row[j] = row.get(j, D.field.zero) + c * phi[k]
    return Matrix(D.field, D.dim, D.dim, entries)


def left_invariant_functionals(H: HopfData) -> Subspace:
    """``{φ : (id⊗φ)Δ(h) = φ(h)1}``, solved on basis elements"""

    n, D = H.dim, H.algebra
    unit = D.one()

    # equation j·n + i: Σ_k Δ(e_j)[(i, k)] φ_k - φ_j unit_i = 0
    entries = {}
    for t, j, c in H.coproduct.items():
        i, k = divmod(t, n)
        row = entries.setdefault(j * n + i, {})
        row[k] = row.get(k, H.field.zero) + c
    for j in range(n):
        for i in range(n):
            if unit[i]:
                row = entries.setdefault(j * n + i, {})
                row[j] = row.get(j, H.field.zero) - unit[i]

    return kernel(Matrix(H.field, n * n, n, entries))


def right_invariant_functionals(H: HopfData) -> Subspace:
    """``{ψ : (ψ⊗id)Δ(h) = ψ(h)1}``"""

    n, D = H.dim, H.algebra
    unit = D.one()

    entries = {}
    for t, j, c in H.coproduct.items():
        k, i = divmod(t, n)
        row = entries.setdefault(j * n + i, {})
        row[k] = row.get(k, H.field.zero) + c
    for j in range(n):
        for i in range(n):
            if unit[i]:
                row = entries.setdefault(j * n + i, {})
                row[j] = row.get(j, H.field.zero) - unit[i]

    return kernel(Matrix(H.field, n * n, n, entries))


def invariant_functionals(H: HopfData) -> InvariantPair:
    """Solve for the left invariant functional and derive ``ψ``, ``δ`` and ``σ``.

    ``φ`` is scaled so that ``φ(1) = 1`` when possible, otherwise so that its first nonzero coordinate is 1.
    """

    space = left_invariant_functionals(H)
    if space.dim == 0:
        raise NoInvariantFunctional()
    if space.dim > 1:
        raise NonUniqueFunctional(space.dim)

    field, D = H.field, H.algebra
    phi = space.basis[0]
    phi_one = dot(phi, D.one(), field)
    normalized = bool(phi_one)
    scale = field.one / phi_one if normalized else field.one / next(a for a in phi if a)
    phi = [scale * a for a in phi]

    psi = H.antipode.apply_left(phi)

    G = gram_matrix(D, phi)
    try:
        G_inv = inverse(G)
    except SingularMatrix:
        raise HopfError('left invariant functional is not faithful')

    delta = G_inv.apply(psi)
    sigma = G_inv @ G.transpose()

    pair = InvariantPair(phi, psi, delta, sigma, normalized)
    _verify_invariants(H, pair)

    logger.debug('invariant functionals of {}: φ(1) = {}, δ = {}'.format(
        H, field.format(phi_one * scale), D.format_element(delta)))

    return pair


def _verify_invariants(H: HopfData, pair: InvariantPair):
    D, field = H.algebra, H.field

    if not right_invariant_functionals(H).contains(pair.psi):
        raise HopfError('φ∘S is not right invariant')

    if H.delta(pair.delta) != tensor_vectors(pair.delta, pair.delta, field) or H.epsilon(pair.delta) != field.one:
        raise HopfError('modular element is not grouplike')

    for i in range(H.dim):
        for j in range(H.dim):
            si, sj = pair.sigma.column(i), pair.sigma.column(j)
            if pair.sigma.apply(D.product(i, j)) != D.multiply(si, sj):
                raise HopfError('modular automorphism is not multiplicative at {}'.format((i, j)))

    if pair.normalized and pair.delta != D.one():
        raise HopfError('normalized integral with modular element different from 1')

    if not modular_element_identity(H, pair):
        raise HopfError('(φ⊗id)Δ(h) = φ(h)δ fails')


def modular_element_identity(H: HopfData, pair: InvariantPair) -> bool:
    """``(φ⊗id)Δ(h) = φ(h)δ`` on every basis element"""

    n = H.dim
    for j in range(n):
        lhs = H.algebra.zero()
        for t, c in enumerate(H.coproduct.column(j)):
            if c:
                i, k = divmod(t, n)
                lhs[k] += pair.phi[i] * c
        if lhs != [pair.phi[j] * d for d in pair.delta]:
            return False
    return True


def faithfulness_check(H: HopfData, phi: Sequence) -> bool:
    """Whether ``(a, b) -> φ(ab)`` is non-degenerate"""

    return gram_matrix(H.algebra, phi).rank() == H.dim


def antipode_inverse(H: HopfData) -> Matrix:
    try:
        return inverse(H.antipode)
    except SingularMatrix:
        raise HopfError('antipode is not invertible')


def antipode_power(H: HopfData, k: int) -> Matrix:
    return H.antipode.power(k)


def dual_hopf(H: HopfData) -> HopfData:
    """Hopf algebra structure on the dual basis ``f_0, ..., f_{n-1}``: the convolution product is read off the
    coproduct and conversely, ``S`` is transposed."""

    labels = ['{}*'.format(lb) for lb in H.labels]
    algebra = StructureAlgebra(H.field, H.dim, H.coproduct, labels, name='dual of {}'.format(H.name))
    return HopfData(algebra, H.algebra.mult, H.algebra.one(), H.antipode.transpose(), name=algebra.name)


def fourier_map(H: HopfData, phi: Sequence) -> Matrix:
    """Matrix of ``h -> φ(h·-)`` from ``H`` to the dual basis"""

    F = gram_matrix(H.algebra, phi).transpose()
    if F.rank() != H.dim:
        raise HopfError('Fourier map is singular (φ is not faithful)')
    return F

