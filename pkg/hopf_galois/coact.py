"""
Comodule algebras over a finite-dimensional Hopf algebra: axioms, coinvariants, Reynolds operator, Galois maps, smash
products, equivariant modules and the biduality context.
"""

import logging
import random
import threading
from typing import Any, Dict, List, Optional, Sequence, Tuple

from hopf_galois.assoc import (
    DEFAULT_SPLIT_SEARCH_BUDGET, AlgModule, Bimodule, MoritaContextData, MoritaStatus, StructureAlgebra, Subalgebra,
    Verdict, check_associativity, is_absolutely_semisimple, tensor_multiply, verify_morita
)
from hopf_galois.exactla import (
    DimensionError, Matrix, SingularMatrix, Subspace, Vector, inverse, kernel, quotient_map, solve, tensor,
    tensor_vectors, unit_vector, zero_vector
)
from hopf_galois.hopf import AxiomReport, HopfData, first_bad_column

logger = logging.getLogger(__name__)


class ComoduleError(Exception):
    pass


class NotGalois(ComoduleError):
    def __init__(self, what: str, *args):
        super().__init__('{} is not Galois'.format(what), *args)


class Cancelled(ComoduleError):
    def __init__(self, *args):
        super().__init__('computation cancelled', *args)


class CancellationToken:
    """Shared flag, polled by the axiom checkers between basis elements"""

    def __init__(self):
        self._event = threading.Event()

    def cancel(self):
        self._event.set()

    @property
    def cancelled(self) -> bool:
        return self._event.is_set()

    def raise_if_cancelled(self):
        if self._event.is_set():
            raise Cancelled()


class ComoduleAlgebra:
    """Algebra with a right coaction ``α: A -> A ⊗ H``.

    ``coaction`` is the ``(dim A · dim H) x dim A`` matrix whose column ``j`` is ``α(e_j)``. ``embedding``, when set,
    is the inclusion matrix into the comodule algebra this one was cut from.
    """

    def __init__(self, hopf: HopfData, algebra: StructureAlgebra, coaction: Matrix, name: str = '',
                 embedding: Matrix = None):

        if algebra.field != hopf.field:
            raise DimensionError('field', hopf.field, algebra.field)
        if coaction.shape != (algebra.dim * hopf.dim, algebra.dim):
            raise DimensionError('coaction shape', (algebra.dim * hopf.dim, algebra.dim), coaction.shape)

        self.hopf = hopf
        self.algebra = algebra
        self.field = algebra.field
        self.coaction = coaction
        self.name = name or algebra.name
        self.embedding = embedding
        self._cache = {}

    @property
    def dim(self) -> int:
        return self.algebra.dim

    def alpha(self, x: Sequence) -> Vector:
        return self.coaction.apply(x)

    def sparse_alpha(self, j: int) -> List[Tuple[int, int, Any]]:
        """Nonzero terms ``(a, h, c)`` of ``α(e_j) = Σ c e_a ⊗ f_h``"""

        n = self.hopf.dim
        return [divmod(t, n) + (c, ) for t, c in sorted(self.coaction.sparse_columns().get(j, {}).items())]

    def serialize(self) -> Dict[str, Any]:
        f, n = self.field.format, self.hopf.dim
        return {
            'algebra': self.algebra.serialize(),
            'coaction': [[a, t // n, t % n, f(v)] for a, t, v in self.coaction.transpose().items()]
        }

    def __repr__(self) -> str:
        return '<ComoduleAlgebra {} of dim {} over {}>'.format(self.name, self.dim, self.hopf.name)


def check_comodule_algebra(A: ComoduleAlgebra, token: CancellationToken = None) -> AxiomReport:
    """Check the comodule algebra axioms on basis elements"""

    D, H, field = A.algebra, A.hopf, A.field
    report = AxiomReport()
    id_a, id_h = Matrix.identity(field, D.dim), Matrix.identity(field, H.dim)

    report.record('associativity', check_associativity(D, token))
    report.record('unit', None if D.unit is not None else ())

    report.record('coassociativity', first_bad_column(
        tensor(A.coaction, id_h) @ A.coaction, tensor(id_a, H.coproduct) @ A.coaction))
    report.record('counit', first_bad_column(tensor(id_a, H.counit_matrix()) @ A.coaction, id_a))

    columns = [A.coaction.column(j) for j in range(D.dim)]
    failure = None
    for i in range(D.dim):
        if token is not None:
            token.raise_if_cancelled()
        for j in range(D.dim):
            if A.alpha(D.product(i, j)) != tensor_multiply(D, H.algebra, columns[i], columns[j]):
                failure = (i, j)
                break
        if failure is not None:
            break

    if failure is None and D.unit is not None and H.algebra.unit is not None:
        if A.alpha(D.unit) != tensor_vectors(D.unit, H.algebra.unit, field):
            failure = ('unit', )

    report.record('coaction is an algebra map', failure)

    if not report.passed:
        logger.debug('comodule algebra axioms failing for {}: {}'.format(A, list(report.failures())))

    return report


def unit_embedding(A: ComoduleAlgebra) -> Matrix:
    """Matrix of ``a -> a ⊗ 1``"""

    return tensor(Matrix.identity(A.field, A.dim), Matrix.column_vector(A.field, A.hopf.unit()))


def coinvariant_space(A: ComoduleAlgebra) -> Subspace:
    """``{a : α(a) = a ⊗ 1}``"""

    if 'coinvariants' not in A._cache:
        A._cache['coinvariants'] = kernel(A.coaction - unit_embedding(A))
    return A._cache['coinvariants']


def coinvariants(A: ComoduleAlgebra) -> Subalgebra:
    """Coinvariants with their own structure constants (closure under multiplication is checked)"""

    return Subalgebra(A.algebra, coinvariant_space(A), name='coinvariants of {}'.format(A.name))


def is_homogeneous(A: ComoduleAlgebra) -> bool:
    return A.algebra.unit is not None and coinvariant_space(A).dim == 1


def has_coinvariant_local_units(A: ComoduleAlgebra) -> bool:
    """Coinvariant local units; in finite dimension this asks for a unit which is coinvariant"""

    unit = A.algebra.unit
    return unit is not None and coinvariant_space(A).contains(unit)


def coinvariants_generate(A: ComoduleAlgebra) -> bool:
    """``A·A^α = A^α·A = A``"""

    D, B = A.algebra, coinvariant_space(A)
    left = [D.multiply(D.basis_element(i), b) for i in range(D.dim) for b in B.basis]
    right = [D.multiply(b, D.basis_element(i)) for i in range(D.dim) for b in B.basis]
    return Subspace.span(A.field, D.dim, left).is_full() and Subspace.span(A.field, D.dim, right).is_full()


def restrict(A: ComoduleAlgebra, U: Subspace, name: str = '') -> ComoduleAlgebra:
    """Comodule algebra structure on a subalgebra ``U`` with ``α(U) ⊆ U ⊗ H``"""

    n = A.hopf.dim
    sub = Subalgebra(A.algebra, U, name=name)

    columns = []
    for b in U.basis:
        image = A.alpha(b)
        column = [A.field.zero] * (U.dim * n)
        for h in range(n):
            leg = [image[a * n + h] for a in range(A.dim)]
            if not U.contains(leg):
                raise ComoduleError('subspace is not stable under the coaction')
            for r, c in enumerate(U.coordinates(leg)):
                column[r * n + h] = c
        columns.append(column)

    coaction = Matrix.from_columns(A.field, columns, U.dim * n)
    return ComoduleAlgebra(A.hopf, sub.algebra, coaction, name=name, embedding=U.basis_matrix())


# -- Reynolds operator

def reynolds(A: ComoduleAlgebra) -> Matrix:
    """Matrix of ``Φ = (id ⊗ φ)α``, checked against its defining identities"""

    if 'reynolds' not in A._cache:
        phi = A.hopf.invariants().phi
        Phi = tensor(Matrix.identity(A.field, A.dim), Matrix.from_rows(A.field, [phi], A.hopf.dim)) @ A.coaction

        failure = reynolds_identities(A, Phi)
        if failure is not None:
            raise ComoduleError('Reynolds operator: {} fails'.format(failure))

        A._cache['reynolds'] = Phi

    return A._cache['reynolds']


def reynolds_identities(A: ComoduleAlgebra, Phi: Matrix) -> Optional[str]:
    """Name of the first failing identity of ``Φ`` (image in the coinvariants, bimodularity, ``Φ = φ(1)`` on
    the coinvariants), or ``None``"""

    D, B = A.algebra, coinvariant_space(A)
    phi_one = sum((a * u for a, u in zip(A.hopf.invariants().phi, A.hopf.unit()) if a and u), A.field.zero)

    for j in range(D.dim):
        if not B.contains(Phi.column(j)):
            return 'image in the coinvariants'

    for b in B.basis:
        if Phi.apply(b) != [phi_one * x for x in b]:
            return 'restriction to the coinvariants'

    for e in B.basis:
        for f in B.basis:
            for j in range(D.dim):
                x = D.basis_element(j)
                if Phi.apply(D.multiply_all(e, x, f)) != D.multiply_all(e, Phi.column(j), f):
                    return 'bimodularity'

    return None


# -- Galois maps

class GaloisMap:
    """Linear map on ``A ⊗_{A^α} A``.

    ``matrix`` acts on the quotient coordinates; ``projection`` and ``section`` relate them to ``A ⊗ A``, on which
    ``full`` is the map before passing to the quotient.
    """

    def __init__(self, matrix: Matrix, projection: Matrix, section: Matrix, full: Matrix):
        self.matrix = matrix
        self.projection = projection
        self.section = section
        self.full = full
        self._inverse = None

    @property
    def domain_dim(self) -> int:
        return self.matrix.cols

    def __call__(self, x: Sequence) -> Vector:
        """Image of a tensor of ``A ⊗ A``"""

        return self.full.apply(x)

    def is_bijective(self) -> bool:
        return self.matrix.is_square() and self.matrix.rank() == self.matrix.rows

    def inverse(self) -> Matrix:
        if self._inverse is None:
            if not self.matrix.is_square():
                raise SingularMatrix(min(self.matrix.shape), self.matrix.rank())
            self._inverse = inverse(self.matrix)
        return self._inverse


def balanced_tensor(A: ComoduleAlgebra) -> Tuple[Matrix, Matrix]:
    """Projection ``A ⊗ A -> A ⊗_{A^α} A`` and a section, the relations being ``xe ⊗ y - x ⊗ ey``"""

    if 'balanced' in A._cache:
        return A._cache['balanced']

    D, field, n = A.algebra, A.field, A.dim
    entries, r = {}, 0

    for e in coinvariant_space(A).basis:
        right, left = D.right_matrix(e), D.left_matrix(e)
        for a in range(n):
            xe = right.column(a)
            for b in range(n):
                row = {}
                for u, c in enumerate(xe):
                    if c:
                        row[u * n + b] = row.get(u * n + b, field.zero) + c
                for v, c in enumerate(left.column(b)):
                    if c:
                        row[a * n + v] = row.get(a * n + v, field.zero) - c
                row = {k: c for k, c in row.items() if c}
                if row:
                    entries[r] = row
                    r += 1

    if r == 0:
        relations = Subspace.zero(field, n * n)
    else:
        logger.debug('reducing {} balancing relations in dimension {}'.format(r, n * n))
        relations = Subspace.from_matrix(Matrix(field, r, n * n, entries))

    A._cache['balanced'] = quotient_map(n * n, relations)
    return A._cache['balanced']


def _galois(A: ComoduleAlgebra, right: bool) -> GaloisMap:
    D, H, field = A.algebra, A.hopf, A.field
    unit_h = H.unit()

    columns = []
    for a in range(D.dim):
        ea = tensor_vectors(D.basis_element(a), unit_h, field)
        for b in range(D.dim):
            if right:
                columns.append(tensor_multiply(D, H.algebra, A.coaction.column(a), tensor_vectors(
                    D.basis_element(b), unit_h, field)))
            else:
                columns.append(tensor_multiply(D, H.algebra, ea, A.coaction.column(b)))

    full = Matrix.from_columns(field, columns, D.dim * H.dim)
    projection, section = balanced_tensor(A)
    logger.debug('{} Galois map of {}: {}x{}'.format('right' if right else 'left', A, full.rows, section.cols))

    return GaloisMap(full @ section, projection, section, full)


def galois_map(A: ComoduleAlgebra) -> GaloisMap:
    """``can: a ⊗ b -> (a ⊗ 1)α(b)``"""

    if 'galois' not in A._cache:
        A._cache['galois'] = _galois(A, right=False)
    return A._cache['galois']


def right_galois_map(A: ComoduleAlgebra) -> GaloisMap:
    """``a ⊗ b -> α(a)(b ⊗ 1)``"""

    if 'right galois' not in A._cache:
        A._cache['right galois'] = _galois(A, right=True)
    return A._cache['right galois']


def is_galois(A: ComoduleAlgebra) -> bool:
    return galois_map(A).is_bijective()


def galois_inverse(A: ComoduleAlgebra) -> Matrix:
    """Inverse of ``can``, from ``A ⊗ H`` to the quotient coordinates of ``A ⊗_{A^α} A``"""

    try:
        return galois_map(A).inverse()
    except SingularMatrix:
        raise NotGalois(A.name or 'coaction')


def right_galois_inverse(A: ComoduleAlgebra) -> Matrix:
    try:
        return right_galois_map(A).inverse()
    except SingularMatrix:
        raise NotGalois(A.name or 'coaction')


# -- smash products

def _dual_shifts(H: HopfData, left: bool) -> Dict[Tuple[int, int], Dict[int, Any]]:
    """``(h, j) -> f_j(e_h -)`` (or ``f_j(- e_h)``), in the dual basis"""

    shifts = {}
    for a, b, k, c in H.algebra.structure_items():
        if left:
            shifts.setdefault((a, k), {})[b] = c
        else:
            shifts.setdefault((b, k), {})[a] = c
    return shifts


class SmashAlgebra:
    """``A#Ĥ`` on the basis ``e_i ⊗ f_j`` (index ``i·dim H + j``)"""

    def __init__(self, base: ComoduleAlgebra, algebra: StructureAlgebra):
        self.base = base
        self.hopf = base.hopf
        self.algebra = algebra
        self.field = algebra.field

    @property
    def dim(self) -> int:
        return self.algebra.dim

    def embed_algebra(self, a: Sequence) -> Vector:
        """``a -> a#ε``"""

        return tensor_vectors(a, self.hopf.counit, self.field)

    def embed_dual(self, omega: Sequence) -> Vector:
        """``ω -> 1#ω``"""

        return tensor_vectors(self.base.algebra.one(), omega, self.field)

    def __repr__(self) -> str:
        return '<SmashAlgebra of {}>'.format(self.base)


def smash(A: ComoduleAlgebra) -> SmashAlgebra:
    """``A#Ĥ`` with ``(a#ω)(b#χ) = a b_(0) # ω(b_(1) -) * χ``; unit, embeddings and the flip identity are checked"""

    if 'smash' in A._cache:
        return A._cache['smash']

    D, H, field = A.algebra, A.hopf, A.field
    m = H.dim
    shifts = _dual_shifts(H, left=True)
    convolution = H.coproduct.sparse_rows()
    alphas = [A.sparse_alpha(k) for k in range(D.dim)]

    def product(s: int, t: int) -> Vector:
        i, j = divmod(s, m)
        k, l_ = divmod(t, m)
        r = zero_vector(field, D.dim * m)
        for a, h, c in alphas[k]:
            ia = D.product(i, a)
            for g, w in shifts.get((h, j), {}).items():
                for q, d in convolution.get(g * m + l_, {}).items():
                    cwd = c * w * d
                    for u, v in enumerate(ia):
                        if v:
                            r[u * m + q] += cwd * v
        return r

    labels = ['{}#{}*'.format(a, h) for a in D.labels for h in H.labels]
    logger.debug('building the smash product of {} (dim {})'.format(A, D.dim * m))
    algebra = StructureAlgebra.from_products(field, D.dim * m, product, labels, name='{}#dual'.format(A.name))

    S = SmashAlgebra(A, algebra)
    failure = _check_smash(S)
    if failure is not None:
        raise ComoduleError('smash product: {} fails'.format(failure))

    A._cache['smash'] = S
    return S


def _check_smash(S: SmashAlgebra) -> Optional[str]:
    A, H, field = S.base, S.hopf, S.field
    D, m = A.algebra, H.dim

    if S.algebra.unit != S.embed_algebra(D.one()):
        return 'unit 1#ε'

    for i in range(D.dim):
        for j in range(D.dim):
            if S.algebra.multiply(S.embed_algebra(D.basis_element(i)), S.embed_algebra(D.basis_element(j))) != \
                    S.embed_algebra(D.product(i, j)):
                return 'embedding of A'

    duals = [unit_vector(field, m, j) for j in range(m)]
    for j in range(m):
        for k in range(m):
            convolution = H.coproduct.apply_left(tensor_vectors(duals[j], duals[k], field))
            if S.algebra.multiply(S.embed_dual(duals[j]), S.embed_dual(duals[k])) != S.embed_dual(convolution):
                return 'embedding of the dual'

    # (1#ω)(a#ε) = a_(0) # ω(a_(1) -), and these span A#Ĥ
    shifts = _dual_shifts(H, left=True)
    flips = []
    for j in range(m):
        for k in range(D.dim):
            expected = zero_vector(field, S.dim)
            for a, h, c in A.sparse_alpha(k):
                for g, w in shifts.get((h, j), {}).items():
                    expected[a * m + g] += c * w
            flip = S.algebra.multiply(S.embed_dual(duals[j]), S.embed_algebra(D.basis_element(k)))
            if flip != expected:
                return 'flip formula'
            flips.append(flip)

    if not Subspace.span(field, S.dim, flips).is_full():
        return 'flip identity'

    return None


def dual_action(H: HopfData, dim_a: int) -> List[Matrix]:
    """Matrices of ``a#ω -> a#ω(- e_t)`` on ``A#Ĥ``, one per basis element ``e_t`` of ``H``"""

    m, field = H.dim, H.field
    shifts = _dual_shifts(H, left=False)
    actions = []
    for t in range(m):
        entries = {}
        for l_ in range(m):
            for g, w in shifts.get((t, l_), {}).items():
                entries.setdefault(g, {})[l_] = w
        actions.append(tensor(Matrix.identity(field, dim_a), Matrix(field, m, m, entries)))
    return actions


def double_smash_twisted(A: ComoduleAlgebra, verify: bool = True) -> ComoduleAlgebra:
    """``(A#Ĥ)#H`` with ``(x#h)(y#k) = x(h_(1)·y) # h_(2)k`` and the coaction ``x#h -> x#h_(1) ⊗ S²(h_(2))``.

    :param verify: check that the coinvariants are exactly ``A#Ĥ ⊗ 1`` and that the coaction is Galois
    """

    if 'double smash' in A._cache:
        return A._cache['double smash']

    S, H, field = smash(A), A.hopf, A.field
    m, s = H.dim, smash(A).dim
    acting = dual_action(H, A.dim)
    deltas = [[divmod(t, m) + (c, ) for t, c in sorted(H.coproduct.sparse_columns().get(j, {}).items())]
              for j in range(m)]

    def product(p: int, q: int) -> Vector:
        x, t = divmod(p, m)
        y, u = divmod(q, m)
        r = zero_vector(field, s * m)
        for a, b, c in deltas[t]:
            moved = acting[a].column(y)
            xy = S.algebra.multiply(S.algebra.basis_element(x), moved)
            bu = H.algebra.product(b, u)
            for z, v in enumerate(xy):
                if not v:
                    continue
                for g, w in enumerate(bu):
                    if w:
                        r[z * m + g] += c * v * w
        return r

    labels = ['({})#{}'.format(x, h) for x in S.algebra.labels for h in H.labels]
    logger.debug('building the double smash product of {} (dim {})'.format(A, s * m))
    algebra = StructureAlgebra.from_products(field, s * m, product, labels, name='{}#dual#H'.format(A.name))

    s2 = H.antipode.power(2)
    entries = {}
    for x in range(s):
        for t in range(m):
            column = x * m + t
            for a, b, c in deltas[t]:
                for g, w in s2.sparse_columns().get(b, {}).items():
                    row = (x * m + a) * m + g
                    entries.setdefault(row, {})
                    entries[row][column] = entries[row].get(column, field.zero) + c * w

    D = ComoduleAlgebra(H, algebra, Matrix(field, s * m * m, s * m, entries), name=algebra.name)

    if verify:
        embedded = Subspace.column_space(tensor(Matrix.identity(field, s), Matrix.column_vector(field, H.unit())))
        if coinvariant_space(D) != embedded:
            raise ComoduleError('coinvariants of the double smash product differ from A#Ĥ')
        if not is_galois(D):
            raise NotGalois(D.name)

    A._cache['double smash'] = D
    return D


# -- comodules and equivariant modules

def _tensor_action(H: HopfData, action: Sequence[Matrix], dim: int, x: Sequence, v: Sequence) -> Vector:
    """``(Σ x_(a,h) e_a ⊗ f_h)·(Σ v_(w,k) v_w ⊗ f_k)`` in ``V ⊗ H``"""

    m = H.dim
    r = zero_vector(H.field, dim * m)
    terms = [divmod(t, m) + (b, ) for t, b in enumerate(v) if b]
    for s_, c in enumerate(x):
        if not c:
            continue
        a, h = divmod(s_, m)
        for w, k, b in terms:
            acted = action[a].column(w)
            hk = H.algebra.product(h, k)
            for z, u in enumerate(acted):
                if not u:
                    continue
                for g, y in enumerate(hk):
                    if y:
                        r[z * m + g] += c * b * u * y
    return r


class Comodule:
    """Finite-dimensional right ``H``-comodule; ``coaction`` is the ``(dim · dim H) x dim`` matrix of ``δ``"""

    def __init__(self, hopf: HopfData, dim: int, coaction: Matrix, name: str = ''):
        if coaction.shape != (dim * hopf.dim, dim):
            raise DimensionError('comodule map shape', (dim * hopf.dim, dim), coaction.shape)

        self.hopf = hopf
        self.field = hopf.field
        self.dim = dim
        self.coaction = coaction
        self.name = name

    @classmethod
    def regular(cls, H: HopfData) -> 'Comodule':
        return cls(H, H.dim, H.coproduct, name='regular')

    @classmethod
    def trivial(cls, H: HopfData) -> 'Comodule':
        return cls(H, 1, Matrix.column_vector(H.field, H.unit()), name='trivial')

    def check(self) -> AxiomReport:
        H, field = self.hopf, self.field
        id_v, id_h = Matrix.identity(field, self.dim), Matrix.identity(field, H.dim)

        report = AxiomReport()
        report.record('coassociativity', first_bad_column(
            tensor(self.coaction, id_h) @ self.coaction, tensor(id_v, H.coproduct) @ self.coaction))
        report.record('counit', first_bad_column(tensor(id_v, H.counit_matrix()) @ self.coaction, id_v))
        return report

    def __repr__(self) -> str:
        return '<Comodule {}of dim {} over {}>'.format('{} '.format(self.name) if self.name else '', self.dim,
                                                       self.hopf.name)


class EquivariantModule:
    """Module over the algebra of a comodule algebra, with a compatible comodule map ``δ(av) = α(a)δ(v)``"""

    def __init__(self, base: ComoduleAlgebra, dim: int, action: Sequence[Matrix], coaction: Matrix, name: str = ''):
        if coaction.shape != (dim * base.hopf.dim, dim):
            raise DimensionError('comodule map shape', (dim * base.hopf.dim, dim), coaction.shape)

        self.base = base
        self.field = base.field
        self.dim = dim
        self.module = AlgModule(base.algebra, dim, action, name=name)
        self.action = self.module.action
        self.comodule = Comodule(base.hopf, dim, coaction, name=name)
        self.coaction = coaction
        self.name = name

    def check(self) -> AxiomReport:
        report = self.comodule.check()

        failure = self.module.check()
        report.record('module', None if failure is None else (failure[0], ) + failure[1])

        compatibility = None
        H, D = self.base.hopf, self.base.algebra
        for i in range(D.dim):
            for c in range(self.dim):
                lhs = self.coaction.apply(self.action[i].column(c))
                rhs = _tensor_action(H, self.action, self.dim, self.base.coaction.column(i), self.coaction.column(c))
                if lhs != rhs:
                    compatibility = (i, c)
                    break
            if compatibility is not None:
                break

        report.record('compatibility', compatibility)
        return report

    def __repr__(self) -> str:
        return '<EquivariantModule of dim {} over {}>'.format(self.dim, self.base)


def dual_operators(V: EquivariantModule) -> List[Matrix]:
    """Matrices of ``v -> (id ⊗ f_j)δ(v)``"""

    field, m = V.field, V.base.hopf.dim
    id_v = Matrix.identity(field, V.dim)
    return [tensor(id_v, Matrix.from_rows(field, [unit_vector(field, m, j)], m)) @ V.coaction for j in range(m)]


def equivariant_to_smash(V: EquivariantModule) -> AlgModule:
    """``A#Ĥ``-module with ``(a#ω)v = a(ωv)`` and ``ωv = (id ⊗ ω)δ(v)``"""

    S = smash(V.base)
    omegas = dual_operators(V)
    action = [V.action[i] @ omega for i in range(V.base.dim) for omega in omegas]

    module = AlgModule(S.algebra, V.dim, action, name=V.name)
    failure = module.check()
    if failure is not None:
        raise ComoduleError('smash module: {} fails at {}'.format(*failure))
    return module


def smash_to_equivariant(A: ComoduleAlgebra, M: AlgModule, name: str = '') -> EquivariantModule:
    """Inverse translation: ``a`` acts as ``a#ε`` and ``δ(v) = Σ_j (f_j v) ⊗ e_j``"""

    S, field = smash(A), A.field
    m = A.hopf.dim
    action = [M.matrix_of(S.embed_algebra(A.algebra.basis_element(i))) for i in range(A.dim)]

    entries = {}
    for j in range(m):
        omega = M.matrix_of(S.embed_dual(unit_vector(field, m, j)))
        for w, c, v in omega.items():
            entries.setdefault(w * m + j, {})[c] = v

    return EquivariantModule(A, M.dim, action, Matrix(field, M.dim * m, M.dim, entries), name=name or M.name)


def equivariant_tensor_module(A: ComoduleAlgebra, V: Comodule) -> EquivariantModule:
    """``A ⊗ V`` with ``A`` acting on the first leg and the diagonal comodule map ``a ⊗ v -> a_(0) ⊗ v_(0) ⊗
    a_(1)v_(1)``; index ``a·dim V + v``"""

    H, field = A.hopf, A.field
    m, dv = H.dim, V.dim
    n = A.dim * dv

    action = [tensor(A.algebra.left_matrix(A.algebra.basis_element(i)), Matrix.identity(field, dv))
              for i in range(A.dim)]

    deltas = [[divmod(t, m) + (c, ) for t, c in sorted(V.coaction.sparse_columns().get(v, {}).items())]
              for v in range(dv)]

    entries = {}
    for a in range(A.dim):
        for v in range(dv):
            column = a * dv + v
            for b, h, c in A.sparse_alpha(a):
                for w, k, d in deltas[v]:
                    for g, y in enumerate(H.algebra.product(h, k)):
                        if y:
                            row = (b * dv + w) * m + g
                            entries.setdefault(row, {})
                            entries[row][column] = entries[row].get(column, field.zero) + c * d * y

    M = EquivariantModule(A, n, action, Matrix(field, n * m, n, entries), name='{} ⊗ {}'.format(A.name, V.name))
    report = M.check()
    if not report.passed:
        raise ComoduleError('tensor module axioms fail: {}'.format(list(report.failures())))
    return M


def is_equivariantly_abs_semisimple(
        A: ComoduleAlgebra, rng: random.Random = None, budget: int = DEFAULT_SPLIT_SEARCH_BUDGET) -> Verdict:
    """Equivariant absolute semisimplicity, decided on the smash product ``A#Ĥ``"""

    return is_absolutely_semisimple(smash(A).algebra, rng, budget)


# -- biduality

def bidual_context(A: ComoduleAlgebra) -> MoritaContextData:
    """Morita context between ``D = (A#Ĥ)#H`` and ``A``.

    ``M = A#Ĥ`` is a left ``D``-module (``x#h`` acts as ``y -> x(h·y)``) and a right ``A``-module through
    ``a -> a#ε``; ``N = Hom_A(M, A)``. The pairing ``M x N -> D`` goes through ``D ≅ End_A(M)``, which is
    checked to be bijective.
    """

    S, H, field = smash(A), A.hopf, A.field
    D = double_smash_twisted(A, verify=False).algebra
    s, m, n = S.dim, H.dim, A.dim

    acting = dual_action(H, n)
    left_d = [S.algebra.left_matrix(S.algebra.basis_element(x)) @ acting[t] for x in range(s) for t in range(m)]
    right_a = [S.algebra.right_matrix(S.embed_algebra(A.algebra.basis_element(a))) for a in range(n)]
    M = Bimodule(D, A.algebra, s, left_d, right_a)

    # D -> End(M), flattened row-major
    rho = Matrix.from_columns(field, [[r[i, j] for i in range(s) for j in range(s)] for r in left_d], s * s)
    commutant = _commutant(field, s, right_a)
    if rho.rank() != D.dim or commutant.dim != D.dim:
        raise ComoduleError('(A#Ĥ)#H does not act as End_A(A#Ĥ)')

    # N: T with T(y·a) = T(y)a, T flattened as r·s + c
    left_a = [A.algebra.left_matrix(A.algebra.basis_element(a)) for a in range(n)]
    right_aa = [A.algebra.right_matrix(A.algebra.basis_element(a)) for a in range(n)]
    equations, k = {}, 0
    for R, L in zip(right_a, right_aa):
        for r in range(n):
            for c in range(s):
                row = {}
                for j in range(s):
                    v = R[j, c]
                    if v:
                        row[r * s + j] = row.get(r * s + j, field.zero) + v
                for j in range(n):
                    v = L[r, j]
                    if v:
                        row[j * s + c] = row.get(j * s + c, field.zero) - v
                equations[k] = row
                k += 1

    N_space = kernel(Matrix(field, k, n * s, equations))
    homs = [Matrix.from_rows(field, [b[r * s:(r + 1) * s] for r in range(n)], s) for b in N_space.basis]

    def coordinates(T: Matrix) -> Vector:
        return N_space.coordinates([T[r, c] for r in range(n) for c in range(s)])

    N = Bimodule(
        A.algebra, D, N_space.dim,
        [Matrix.from_columns(field, [coordinates(L @ T) for T in homs], N_space.dim) for L in left_a],
        [Matrix.from_columns(field, [coordinates(T @ R) for T in homs], N_space.dim) for R in left_d])

    # (m, T) -> y -> m·T(y)
    endomorphisms = []
    for i in range(s):
        mi = unit_vector(field, s, i)
        for T in homs:
            E = [M.act_right(mi, T.column(c)) for c in range(s)]
            endomorphisms.append([E[j][r] for r in range(s) for j in range(s)])

    rhs = Matrix.from_columns(field, endomorphisms, s * s)
    pairing_mn = solve(rho, rhs)
    if pairing_mn is None:
        raise ComoduleError('M x N pairing leaves the image of (A#Ĥ)#H')

    pairing_nm = Matrix.from_rows(
        field, [T.column(i) for T in homs for i in range(s)], n)

    logger.debug('biduality context for {}: dim M = {}, dim N = {}'.format(A, s, N_space.dim))
    return MoritaContextData(D, A.algebra, M, N, pairing_mn.transpose(), pairing_nm)


def _commutant(field: Any, dim: int, matrices: Sequence[Matrix]) -> Subspace:
    """``{E : E·X = X·E for every X}``, flattened row-major"""

    equations, k = {}, 0
    for X in matrices:
        for r in range(dim):
            for c in range(dim):
                row = {}
                for j in range(dim):
                    v = X[j, c]
                    if v:
                        row[r * dim + j] = row.get(r * dim + j, field.zero) + v
                    v = X[r, j]
                    if v:
                        row[j * dim + c] = row.get(j * dim + c, field.zero) - v
                equations[k] = row
                k += 1

    return kernel(Matrix(field, k, dim * dim, equations))


def biduality(A: ComoduleAlgebra) -> MoritaStatus:
    """Status of the context between ``(A#Ĥ)#H`` and ``A``"""

    return verify_morita(bidual_context(A))
