"""
Finite-dimensional associative algebras given by structure constants, and their modules: units, center, radical,
idempotents, semisimplicity, meataxe decomposition, Wedderburn form and Morita contexts.
"""

import enum
import logging
import math
import random
from typing import Any, Callable, Dict, Iterator, List, Optional, Sequence, Tuple

from hopf_galois.exactla import (
    DimensionError, EchelonForm, Matrix, Polynomial, ScalarField, Subspace, Vector, combine, factor_over_prime_field,
    inverse, irreducible_factors, is_zero_vector, kernel, min_poly, quotient_map, rational_roots, solve, unit_vector,
    zero_vector
)

logger = logging.getLogger(__name__)

DEFAULT_SEED = 0
DEFAULT_SPLIT_SEARCH_BUDGET = 64

#: over a prime field, endomorphism rings with at most that many elements are searched exhaustively
EXHAUSTIVE_END_SIZE = 729


class AlgebraError(Exception):
    pass


class NotUnital(AlgebraError):
    def __init__(self, what: str, *args):
        super().__init__('{} has no unit'.format(what), *args)


class NotIdempotent(AlgebraError):
    def __init__(self, what: str, *args):
        super().__init__('{} is not an idempotent'.format(what), *args)


class NotSplit(AlgebraError):
    def __init__(self, element: str, *args):
        self.element = element
        super().__init__('the minimal polynomial of {} does not split into distinct linear factors'.format(element),
                         *args)


class NotSplitCenter(AlgebraError):
    def __init__(self, reason: str, *args):
        super().__init__('center does not split ({})'.format(reason), *args)


class Undetermined(AlgebraError):
    def __init__(self, what: str, *args):
        super().__init__('cannot decide {} within the search budget'.format(what), *args)


class NotSemisimple(AlgebraError):
    def __init__(self, what: str, *args):
        super().__init__('{} is not semisimple'.format(what), *args)


class ContextError(AlgebraError):
    def __init__(self, axiom: str, where: tuple, *args):
        self.axiom = axiom
        self.where = where
        super().__init__('Morita context axiom "{}" fails at {}'.format(axiom, where), *args)


class Verdict(enum.Enum):
    YES = 'Yes'
    NO = 'No'
    UNDETERMINED = 'Undetermined'


class BlockStatus(enum.Enum):
    SPLIT = 'Split'
    NON_SPLIT = 'NonSplit'
    UNDETERMINED = 'Undetermined'


class MoritaStatus(enum.Enum):
    STRICT = 'Strict'
    SURJECTIVE_ONLY = 'SurjectiveOnly'
    NOT_SURJECTIVE = 'NotSurjective'


def spin_vectors(field: ScalarField, dim: int, vectors: Sequence[Sequence], matrices: Sequence[Matrix]) -> Subspace:
    """Smallest subspace containing ``vectors`` and stable under every matrix of ``matrices``"""

    echelon = EchelonForm(field, dim)
    queue = []
    for v in vectors:
        if echelon.add(v):
            queue.append(list(v))

    while queue:
        v = queue.pop()
        for m in matrices:
            w = m.apply(v)
            if echelon.add(w):
                queue.append(w)

    return echelon.subspace()


class StructureAlgebra:
    """Associative algebra on the basis ``e_0, ..., e_{n-1}``.

    ``mult`` is the ``(n·n) x n`` matrix whose row ``i·n + j`` holds the coordinates of ``e_i e_j``.
    Elements are dense coordinate lists.
    """

    def __init__(self, field: ScalarField, dim: int, mult: Matrix, labels: Sequence[str] = None, name: str = ''):
        if mult.shape != (dim * dim, dim):
            raise DimensionError('structure tensor shape', (dim * dim, dim), mult.shape)

        self.field = field
        self.dim = dim
        self.mult = mult
        self.labels = list(labels) if labels is not None else ['e{}'.format(i) for i in range(dim)]
        self.name = name

        if len(self.labels) != dim:
            raise DimensionError('number of labels', dim, len(self.labels))

        self._table = {}
        for r, row in mult.sparse_rows().items():
            self._table[divmod(r, dim)] = list(row.items())

        self._cache = {}

    @classmethod
    def from_products(
            cls, field: ScalarField, dim: int, product: Callable[[int, int], Sequence],
            labels: Sequence[str] = None, name: str = '') -> 'StructureAlgebra':
        """Build the algebra from a function giving the coordinates of ``e_i e_j``"""

        entries = {}
        for i in range(dim):
            for j in range(dim):
                entries[i * dim + j] = {k: field.convert(v) for k, v in enumerate(product(i, j))}

        return cls(field, dim, Matrix(field, dim * dim, dim, entries), labels, name)

    # -- elements

    def zero(self) -> Vector:
        return zero_vector(self.field, self.dim)

    def basis_element(self, i: int) -> Vector:
        return unit_vector(self.field, self.dim, i)

    def element(self, coefficients: Dict[str, Any]) -> Vector:
        """Element from a ``{label: coefficient}`` mapping"""

        x = self.zero()
        for label, c in coefficients.items():
            x[self.labels.index(label)] += self.field.convert(c)
        return x

    def structure_items(self) -> Iterator[Tuple[int, int, int, Any]]:
        """Nonzero structure constants ``(i, j, k, c)``: ``e_i e_j`` has coefficient ``c`` on ``e_k``"""

        for (i, j) in sorted(self._table):
            for k, c in sorted(self._table[(i, j)]):
                yield i, j, k, c

    def sparse_product(self, x: Dict[int, Any], j: int, left: bool = True) -> Dict[int, Any]:
        """``x e_j`` (or ``e_j x`` when ``left`` is false) for a sparse ``x``"""

        r = {}
        for i, a in x.items():
            for k, c in self._table.get((i, j) if left else (j, i), ()):
                r[k] = r.get(k, self.field.zero) + a * c
        return {k: v for k, v in r.items() if v}

    def product(self, i: int, j: int) -> Vector:
        r = self.zero()
        for k, c in self._table.get((i, j), ()):
            r[k] = c
        return r

    def multiply(self, x: Sequence, y: Sequence) -> Vector:
        r = self.zero()
        nz_y = [(j, b) for j, b in enumerate(y) if b]
        for i, a in enumerate(x):
            if not a:
                continue
            for j, b in nz_y:
                ab = a * b
                for k, c in self._table.get((i, j), ()):
                    r[k] += ab * c
        return r

    def multiply_all(self, *elements: Sequence) -> Vector:
        r = list(elements[0])
        for x in elements[1:]:
            r = self.multiply(r, x)
        return r

    def power(self, x: Sequence, k: int) -> Vector:
        if k == 0:
            return self.one()

        r = list(x)
        for _ in range(k - 1):
            r = self.multiply(r, x)
        return r

    def evaluate(self, f: Polynomial, x: Sequence) -> Vector:
        """``f(x)``, requires a unit"""

        one = self.one()
        r = self.zero()
        for c in reversed(f.coefficients):
            r = self.multiply(r, x)
            if c:
                r = [a + c * b for a, b in zip(r, one)]
        return r

    def left_matrix(self, x: Sequence) -> Matrix:
        """Matrix of ``y -> x·y``"""

        entries = {}
        for i, a in enumerate(x):
            if not a:
                continue
            for j in range(self.dim):
                for k, c in self._table.get((i, j), ()):
                    row = entries.setdefault(k, {})
                    row[j] = row.get(j, self.field.zero) + a * c

        return Matrix(self.field, self.dim, self.dim, entries)

    def right_matrix(self, x: Sequence) -> Matrix:
        """Matrix of ``y -> y·x``"""

        entries = {}
        for j, a in enumerate(x):
            if not a:
                continue
            for i in range(self.dim):
                for k, c in self._table.get((i, j), ()):
                    row = entries.setdefault(k, {})
                    row[i] = row.get(i, self.field.zero) + a * c

        return Matrix(self.field, self.dim, self.dim, entries)

    def left_matrices(self) -> List[Matrix]:
        if 'left' not in self._cache:
            self._cache['left'] = [self.left_matrix(self.basis_element(i)) for i in range(self.dim)]
        return self._cache['left']

    # -- unit and generators

    @property
    def unit(self) -> Optional[Vector]:
        if 'unit' not in self._cache:
            self._cache['unit'] = find_unit(self)
        return self._cache['unit']

    def is_unital(self) -> bool:
        return self.unit is not None

    def one(self) -> Vector:
        if self.unit is None:
            raise NotUnital(self.name or 'algebra')
        return list(self.unit)

    def generator_indices(self) -> List[int]:
        """Indices of basis elements generating the algebra (all of them if there is no unit)"""

        if 'generators' not in self._cache:
            if self.unit is None:
                self._cache['generators'] = list(range(self.dim))
            else:
                gens, span = [], spin_vectors(self.field, self.dim, [self.unit], [])
                for i in range(self.dim):
                    if span.contains(self.basis_element(i)):
                        continue
                    gens.append(i)
                    span = spin_vectors(
                        self.field, self.dim, [self.unit], [self.left_matrices()[g] for g in gens])
                    if span.is_full():
                        break
                self._cache['generators'] = gens

        return self._cache['generators']

    # -- predicates

    def is_commutative(self) -> bool:
        return all(self.product(i, j) == self.product(j, i)
                   for i in range(self.dim) for j in range(i + 1, self.dim))

    def is_idempotent(self, x: Sequence) -> bool:
        return self.multiply(x, x) == list(x)

    def is_central(self, x: Sequence) -> bool:
        return all(
            self.multiply(x, self.basis_element(i)) == self.multiply(self.basis_element(i), x)
            for i in range(self.dim))

    def __eq__(self, other: Any) -> bool:
        if not isinstance(other, StructureAlgebra):
            return NotImplemented
        return self.field == other.field and self.dim == other.dim and self.mult == other.mult

    def __ne__(self, other: Any) -> bool:
        r = self.__eq__(other)
        return r if r is NotImplemented else not r

    __hash__ = None

    def format_element(self, x: Sequence) -> str:
        terms = []
        for c, label in zip(x, self.labels):
            if not c:
                continue
            s = self.field.format(c)
            terms.append(label if s == '1' else ('-' + label if s == '-1' else '{}*{}'.format(s, label)))

        return ' + '.join(terms).replace('+ -', '- ') if terms else '0'

    def serialize(self) -> Dict[str, Any]:
        return {
            'dim': self.dim,
            'labels': list(self.labels),
            'mult': [[i, j, k, self.field.format(c)]
                     for (i, j) in sorted(self._table) for k, c in sorted(self._table[(i, j)])]
        }

    def __repr__(self) -> str:
        return '<StructureAlgebra {}dim {} over {}>'.format(
            '{} '.format(self.name) if self.name else '', self.dim, self.field)


def check_associativity(D: StructureAlgebra, token: Any = None) -> Optional[Tuple[int, int, int]]:
    """First basis triple with ``(e_i e_j) e_k != e_i (e_j e_k)``, or ``None``.

    :param token: optional cancellation token, polled between basis elements
    """

    products = {}
    for i, j, k, c in D.structure_items():
        products.setdefault((i, j), {})[k] = c

    for i in range(D.dim):
        if token is not None:
            token.raise_if_cancelled()
        for j in range(D.dim):
            ij = products.get((i, j), {})
            for k in range(D.dim):
                lhs = D.sparse_product(ij, k)
                rhs = D.sparse_product(products.get((j, k), {}), i, left=False)
                if lhs != rhs:
                    return i, j, k

    return None


def direct_sum_algebras(D: StructureAlgebra, E: StructureAlgebra, name: str = '') -> StructureAlgebra:
    """Block-diagonal algebra ``D ⊕ E``; the basis of ``E`` comes after the one of ``D``"""

    if D.field != E.field:
        raise DimensionError('field', D.field, E.field)

    n = D.dim + E.dim

    def product(i: int, j: int) -> Vector:
        if i < D.dim and j < D.dim:
            return D.product(i, j) + zero_vector(D.field, E.dim)
        if i >= D.dim and j >= D.dim:
            return zero_vector(D.field, D.dim) + E.product(i - D.dim, j - D.dim)
        return zero_vector(D.field, n)

    labels = ['{}.0'.format(lb) for lb in D.labels] + ['{}.1'.format(lb) for lb in E.labels]
    return StructureAlgebra.from_products(D.field, n, product, labels, name)


def find_unit(D: StructureAlgebra) -> Optional[Vector]:
    """Two-sided unit, by solving ``u e_i = e_i = e_i u``"""

    n, field = D.dim, D.field
    if n == 0:
        return []

    # equation 2(i·n + k) is (u e_i)_k = δ_ik, equation 2(i·n + k) + 1 is (e_i u)_k = δ_ik
    system = {}
    for a, b, k, c in D.structure_items():
        system.setdefault(2 * (b * n + k), {})[a] = c
        system.setdefault(2 * (a * n + k) + 1, {})[b] = c

    rhs = {}
    for i in range(n):
        rhs[2 * (i * n + i)] = {0: field.one}
        rhs[2 * (i * n + i) + 1] = {0: field.one}

    x = solve(Matrix(field, 2 * n * n, n, system), Matrix(field, 2 * n * n, 1, rhs))
    return None if x is None else x.column(0)


def has_local_units(D: StructureAlgebra) -> bool:
    """In finite dimension, local units amount to a unit"""

    return D.unit is not None


def is_firm(D: StructureAlgebra) -> bool:
    """Firm (``D ⊗_D D -> D`` bijective), which in finite dimension amounts to unital"""

    return has_local_units(D)


class Subalgebra:
    """Subspace of a ``StructureAlgebra`` closed under multiplication, presented on its canonical basis"""

    def __init__(self, parent: StructureAlgebra, subspace: Subspace, name: str = ''):
        self.parent = parent
        self.subspace = subspace

        def product(a: int, b: int) -> Vector:
            p = parent.multiply(subspace.basis[a], subspace.basis[b])
            if not subspace.contains(p):
                raise AlgebraError('subspace is not closed under multiplication')
            return subspace.coordinates(p)

        labels = [parent.format_element(b) for b in subspace.basis]
        self.algebra = StructureAlgebra.from_products(parent.field, subspace.dim, product, labels, name)

    @property
    def dim(self) -> int:
        return self.subspace.dim

    def lift(self, coordinates: Sequence) -> Vector:
        return self.subspace.vector(coordinates)

    def restrict(self, x: Sequence) -> Vector:
        if not self.subspace.contains(x):
            raise AlgebraError('element is not in the subalgebra')
        return self.subspace.coordinates(x)

    def inclusion(self) -> Matrix:
        return self.subspace.basis_matrix()


def quotient_algebra(D: StructureAlgebra, ideal: Subspace, name: str = '') -> Tuple[StructureAlgebra, Matrix]:
    """``D / ideal`` and the projection matrix"""

    for b in ideal.basis:
        for i in range(D.dim):
            e = D.basis_element(i)
            if not (ideal.contains(D.multiply(e, b)) and ideal.contains(D.multiply(b, e))):
                raise AlgebraError('subspace is not a two-sided ideal')

    projection, section = quotient_map(D.dim, ideal)
    lifts = [section.column(j) for j in range(section.cols)]

    def product(a: int, b: int) -> Vector:
        return projection.apply(D.multiply(lifts[a], lifts[b]))

    return StructureAlgebra.from_products(D.field, len(lifts), product, name=name), projection


def center(D: StructureAlgebra) -> Subspace:
    """``{z : z e_i = e_i z for every i}``"""

    if D.dim == 0:
        return Subspace.zero(D.field, 0)

    equations = [D.right_matrix(D.basis_element(i)) - D.left_matrices()[i] for i in D.generator_indices()]
    return kernel(Matrix.vstack(*equations))


def _trace_form_kernel(D: StructureAlgebra, basis: Sequence[Sequence], trace: Callable[[Sequence], Any]) -> Subspace:
    """``{Σ c_a b_a : Σ c_a trace(b_a e_j) = 0 for every j}``"""

    entries = {}
    for a, b in enumerate(basis):
        for j in range(D.dim):
            value = trace(D.multiply(b, D.basis_element(j)))
            if value:
                entries.setdefault(j, {})[a] = value

    coefficients = kernel(Matrix(D.field, D.dim, len(basis), entries))
    return Subspace.span(D.field, D.dim, [combine(D.field, c, basis, D.dim) for c in coefficients.basis])


def _lifted_power_trace(X: List[List[int]], exponent: int, modulus: int) -> int:
    n = len(X)
    result = [[int(i == j) for j in range(n)] for i in range(n)]
    base = X

    def mul(P, Q):
        Qt = list(zip(*Q))
        return [[sum(a * b for a, b in zip(row, col) if a and b) % modulus for col in Qt] for row in P]

    while exponent > 0:
        if exponent & 1:
            result = mul(result, base)
        exponent >>= 1
        if exponent:
            base = mul(base, base)

    return sum(result[i][i] for i in range(n)) % modulus


def radical(D: StructureAlgebra) -> Subspace:
    """Jacobson radical of a unital algebra.

    Over the rationals, it is the kernel of the trace form ``(x, y) -> tr(L_{xy})``. Over ``F_p``, the trace form
    is refined along the p-power maps: starting from ``I_{-1} = D``,
    ``I_i = {x ∈ I_{i-1} : g_i(x y) = 0 for every y}`` with ``g_i(a) = (Tr(ã^{p^i}) mod p^{i+1}) / p^i`` computed on
    an integer lift ``ã`` of the left regular matrix, until ``p^i > dim D``.
    """

    if 'radical' in D._cache:
        return D._cache['radical']

    if D.unit is None:
        raise NotUnital(D.name or 'algebra')

    field, n = D.field, D.dim
    if n == 0:
        return Subspace.zero(field, 0)

    left = D.left_matrices()
    traces = [sum((m[i, i] for i in range(n)), field.zero) for m in left]

    def trace(x: Sequence) -> Any:
        return sum((a * t for a, t in zip(x, traces) if a), field.zero)

    full = [D.basis_element(i) for i in range(n)]
    current = _trace_form_kernel(D, full, trace)

    if field.is_prime_field:
        p = field.p
        lifted = [[[field.to_int(m[i, j]) for j in range(n)] for i in range(n)] for m in left]
        i = 1
        while p ** i <= n and not current.is_zero():
            exponent, modulus = p ** i, p ** (i + 1)

            def g(x: Sequence) -> Any:
                coefficients = [field.to_int(a) for a in x]
                X = [[sum(c * lm[r][s] for c, lm in zip(coefficients, lifted) if c) % p for s in range(n)]
                     for r in range(n)]
                return field((_lifted_power_trace(X, exponent, modulus) // (p ** i)) % p)

            current = _trace_form_kernel(D, current.basis, g)
            i += 1

    logger.debug('radical of {} has dimension {}'.format(D, current.dim))
    D._cache['radical'] = current
    return current


def is_semisimple(D: StructureAlgebra) -> bool:
    return radical(D).is_zero()


def primitive_idempotents_split_commutative(C: StructureAlgebra) -> List[Vector]:
    """Primitive orthogonal idempotents of a commutative algebra isomorphic to ``k^n``.

    Every basis element refines the current decomposition through its spectral idempotents
    ``E_λ = Π_{μ≠λ} (b - μ) / (λ - μ)``.
    """

    if not C.is_commutative():
        raise AlgebraError('algebra is not commutative')
    if C.unit is None:
        raise NotUnital(C.name or 'algebra')

    field = C.field
    idempotents = [C.one()] if C.dim > 0 else []

    for i in range(C.dim):
        b = C.basis_element(i)
        f = min_poly(C.left_matrix(b))
        roots = rational_roots(f)
        if len(roots) != f.degree:
            raise NotSplit(C.labels[i])
        if len(roots) == 1:
            continue

        spectral = []
        for lam in roots:
            g = Polynomial(field, [1])
            for mu in roots:
                if mu != lam:
                    g = g * Polynomial(field, [-mu, 1]) * Polynomial.constant(field, field.one / (lam - mu))
            spectral.append(C.evaluate(g, b))

        refined = []
        for e in idempotents:
            for s in spectral:
                es = C.multiply(e, s)
                if not is_zero_vector(es):
                    refined.append(es)
        idempotents = refined

    def key(e: Sequence) -> tuple:
        first = next(j for j, a in enumerate(e) if a)
        return (first, ) + tuple(field.key(a) for a in e)

    return sorted(idempotents, key=key)


# -- modules

class AlgModule:
    """Left module over a ``StructureAlgebra``: ``action[i]`` is the matrix of ``v -> e_i·v``.

    ``embedding``, when set, is the inclusion matrix into the module it was cut from.
    """

    def __init__(
            self, algebra: StructureAlgebra, dim: int, action: Sequence[Matrix],
            embedding: Matrix = None, name: str = ''):

        if len(action) != algebra.dim:
            raise DimensionError('number of action matrices', algebra.dim, len(action))
        for m in action:
            if m.shape != (dim, dim):
                raise DimensionError('action matrix shape', (dim, dim), m.shape)

        self.algebra = algebra
        self.field = algebra.field
        self.dim = dim
        self.action = list(action)
        self.embedding = embedding
        self.name = name
        self._generators = None
        self._unital = None

    @classmethod
    def regular(cls, D: StructureAlgebra) -> 'AlgModule':
        return cls(D, D.dim, D.left_matrices(), name='regular')

    def matrix_of(self, x: Sequence) -> Matrix:
        entries = {}
        for i, a in enumerate(x):
            if not a:
                continue
            for r, row in self.action[i].sparse_rows().items():
                target = entries.setdefault(r, {})
                for c, v in row.items():
                    target[c] = target.get(c, self.field.zero) + a * v

        return Matrix(self.field, self.dim, self.dim, entries)

    def act(self, x: Sequence, v: Sequence) -> Vector:
        return self.matrix_of(x).apply(v)

    def is_unital(self) -> bool:
        if self._unital is None:
            unit = self.algebra.unit
            self._unital = unit is not None and self.matrix_of(unit).is_identity()
        return self._unital

    def check(self) -> Optional[Tuple[str, tuple]]:
        """First failing module axiom with the basis tuple, or ``None``"""

        for i in range(self.algebra.dim):
            for j in range(self.algebra.dim):
                if self.action[i] @ self.action[j] != self.matrix_of(self.algebra.product(i, j)):
                    return 'action', (i, j)

        if self.algebra.unit is not None and not self.is_unital():
            return 'unit', ()

        return None

    def generator_actions(self) -> List[Matrix]:
        """Actions of a generating set of the algebra; enough to test module maps between unital modules"""

        if self._generators is None:
            if self.is_unital():
                self._generators = [self.action[i] for i in self.algebra.generator_indices()]
            else:
                self._generators = list(self.action)
        return self._generators

    def submodule(self, U: Subspace, name: str = '') -> 'AlgModule':
        action = []
        for m in self.action:
            columns = []
            for b in U.basis:
                w = m.apply(b)
                if not U.contains(w):
                    raise AlgebraError('subspace is not a submodule')
                columns.append(U.coordinates(w))
            action.append(Matrix.from_columns(self.field, columns, U.dim))

        return AlgModule(self.algebra, U.dim, action, embedding=U.basis_matrix(), name=name)

    def quotient(self, U: Subspace, name: str = '') -> 'AlgModule':
        projection, section = quotient_map(self.dim, U)
        return AlgModule(self.algebra, projection.rows, [projection @ m @ section for m in self.action], name=name)

    def direct_sum(self, other: 'AlgModule') -> 'AlgModule':
        n = self.dim + other.dim
        action = []
        for a, b in zip(self.action, other.action):
            entries = {i: dict(r) for i, r in a.sparse_rows().items()}
            for i, r in b.sparse_rows().items():
                entries[i + self.dim] = {j + self.dim: v for j, v in r.items()}
            action.append(Matrix(self.field, n, n, entries))

        return AlgModule(self.algebra, n, action)

    def serialize(self) -> Dict[str, Any]:
        return {
            'dim': self.dim,
            'action': [[i, c, r, self.field.format(v)] for i, m in enumerate(self.action) for r, c, v in m.items()]
        }

    def __repr__(self) -> str:
        return '<AlgModule of dim {} over {}>'.format(self.dim, self.algebra)


def spin(V: AlgModule, v: Sequence) -> Subspace:
    """Submodule generated by ``v`` (``v`` itself included)"""

    if is_zero_vector(v):
        return Subspace.zero(V.field, V.dim)

    return spin_vectors(V.field, V.dim, [v], V.generator_actions())


def homomorphisms(V: AlgModule, W: AlgModule) -> List[Matrix]:
    """Basis of ``Hom_D(V, W)``, as ``dim W x dim V`` matrices"""

    if V.algebra is not W.algebra and V.algebra != W.algebra:
        raise AlgebraError('modules over different algebras')

    dv, dw = V.dim, W.dim
    if dv == 0 or dw == 0:
        return []

    if V.is_unital() and W.is_unital():
        indices = V.algebra.generator_indices()
    else:
        indices = range(V.algebra.dim)

    # T ρ_V(g) - ρ_W(g) T = 0, unknown T[w][v] at w·dv + v
    entries, row = {}, 0
    for g in indices:
        columns_v = V.action[g].sparse_columns()
        rows_w = W.action[g].sparse_rows()
        for w in range(dw):
            for v_ in range(dv):
                eq = {}
                for v, a in columns_v.get(v_, {}).items():
                    eq[w * dv + v] = eq.get(w * dv + v, V.field.zero) + a
                for u, a in rows_w.get(w, {}).items():
                    eq[u * dv + v_] = eq.get(u * dv + v_, V.field.zero) - a
                if eq:
                    entries[row] = eq
                row += 1

    solutions = kernel(Matrix(V.field, max(row, 1), dv * dw, entries))
    return [Matrix(V.field, dw, dv, {w: {v: s[w * dv + v] for v in range(dv)} for w in range(dw)})
            for s in solutions.basis]


def endomorphisms(V: AlgModule) -> Tuple[StructureAlgebra, List[Matrix]]:
    """``End_D(V)`` as a structure algebra, with the matrices of its basis"""

    matrices = homomorphisms(V, V)
    n, d = len(matrices), V.dim
    flat = Subspace.span(V.field, d * d, [[m[i, j] for i in range(d) for j in range(d)] for m in matrices])

    def product(a: int, b: int) -> Vector:
        m = matrices[a] @ matrices[b]
        return flat.coordinates([m[i, j] for i in range(d) for j in range(d)])

    return StructureAlgebra.from_products(V.field, n, product, name='End'), matrices


def endomorphism_algebra(V: AlgModule) -> StructureAlgebra:
    return endomorphisms(V)[0]


def _candidates(V: AlgModule, rng: random.Random, budget: int) -> Iterator[Vector]:
    D = V.algebra
    field, n = D.field, D.dim
    count = 0

    fixed = [D.basis_element(i) for i in D.generator_indices()]
    fixed += [D.basis_element(i) for i in range(n) if i not in D.generator_indices()]
    fixed += [[field.one if k in (i, j) else field.zero for k in range(n)] for i in range(n) for j in range(i + 1, n)]

    for x in fixed:
        if count >= budget:
            return
        count += 1
        yield x

    while count < budget:
        count += 1
        yield [field.random_element(rng) for _ in range(n)]


def _is_irreducible(f: Polynomial) -> bool:
    """Certified irreducibility: complete over prime fields, up to degree 3 over the rationals"""

    if f.field.is_prime_field:
        factors = factor_over_prime_field(f)
        return len(factors) == 1 and factors[0][1] == 1
    return f.degree <= 3 and not rational_roots(f)


def _split_from_endomorphisms(V: AlgModule) -> Optional[Subspace]:
    """Proper submodule from a zero divisor of ``End(V)``, ``None`` when ``End(V)`` is certified to be a division
    algebra (``V`` is then simple, being semisimple), or raise ``Undetermined``."""

    E, matrices = endomorphisms(V)
    if E.dim == 1:
        return None

    identity = Matrix.identity(V.field, V.dim)
    for T in matrices:
        if T == identity.scale(T[0, 0]):
            continue
        for g in irreducible_factors(min_poly(T)):
            K = g.evaluate(T)
            if not K.is_zero():
                return kernel(K)

    if V.field.is_prime_field and V.field.p ** E.dim <= EXHAUSTIVE_END_SIZE:
        coordinates = [[]]
        for _ in range(E.dim):
            coordinates = [c + [a] for c in coordinates for a in V.field.elements()]
        for c in coordinates:
            if not any(c):
                continue
            T = Matrix.zeros(V.field, V.dim, V.dim)
            for a, m in zip(c, matrices):
                if a:
                    T = T + m.scale(a)
            K = kernel(T)
            if not K.is_zero():
                return K
        return None

    if E.is_commutative():
        for T in matrices:
            f = min_poly(T)
            if f.degree == E.dim and _is_irreducible(f):
                return None

    raise Undetermined('simplicity of a module of dimension {}'.format(V.dim))


def _split_or_certify(V: AlgModule, rng: random.Random, budget: int) -> Optional[Subspace]:
    """A proper nonzero submodule of a semisimple module, or ``None`` when ``V`` is certified simple.

    Candidate algebra elements are tried in turn: for each irreducible factor ``g`` of the minimal polynomial of the
    action, a vector of ``ker g(A)`` is spun, then a vector of ``ker g(A)ᵀ`` is spun in the dual module. When both
    generate and ``dim ker g(A) = deg g``, the module is simple (Norton's criterion).
    """

    if V.dim == 0:
        raise AlgebraError('zero module')
    if V.dim == 1:
        return None

    transposed = [m.transpose() for m in V.generator_actions()]

    for attempt, a in enumerate(_candidates(V, rng, budget)):
        A = V.matrix_of(a)
        for g in irreducible_factors(min_poly(A)):
            K = g.evaluate(A)
            N = kernel(K)
            if N.is_zero():
                continue

            S = spin(V, N.basis[0])
            if not S.is_full():
                logger.debug('split at attempt {}: submodule of dim {}'.format(attempt, S.dim))
                return S

            dual = spin_vectors(V.field, V.dim, [kernel(K.transpose()).basis[0]], transposed)
            if not dual.is_full():
                logger.debug('split at attempt {} through the dual module'.format(attempt))
                return dual.annihilator()

            if N.dim == g.degree:
                logger.debug('simplicity certified at attempt {}'.format(attempt))
                return None

    logger.debug('candidates exhausted, analyzing endomorphisms of a module of dim {}'.format(V.dim))
    return _split_from_endomorphisms(V)


def _check_semisimple_action(V: AlgModule):
    R = radical(V.algebra)
    for r in R.basis:
        if not V.matrix_of(r).is_zero():
            raise NotSemisimple('module')


def _simple_inside(V: AlgModule, U: Subspace, rng: random.Random, budget: int) -> Subspace:
    """Simple submodule of ``V`` contained in the submodule ``U``"""

    while True:
        sub = _split_or_certify(V.submodule(U), rng, budget)
        if sub is None:
            return U
        U = Subspace.span(V.field, V.dim, [U.vector(c) for c in sub.basis])


def is_simple(V: AlgModule, rng: random.Random = None, budget: int = DEFAULT_SPLIT_SEARCH_BUDGET) -> bool:
    """Whether ``V`` is simple; raises ``Undetermined`` when the rational search stalls"""

    if V.dim == 0:
        raise AlgebraError('zero module')

    if rng is None:
        rng = random.Random(DEFAULT_SEED)

    R = radical(V.algebra)
    if any(not V.matrix_of(r).is_zero() for r in R.basis):
        return False

    return _split_or_certify(V, rng, budget) is None


def is_absolutely_simple(V: AlgModule, rng: random.Random = None, budget: int = DEFAULT_SPLIT_SEARCH_BUDGET) -> bool:
    return is_simple(V, rng, budget) and endomorphism_algebra(V).dim == 1


def meataxe_decompose(
        V: AlgModule, rng: random.Random = None, budget: int = DEFAULT_SPLIT_SEARCH_BUDGET) -> List[AlgModule]:
    """Simple summands of a semisimple module, with their embedding matrices into ``V``.

    A simple submodule ``S`` is split off at each step; its complement is the kernel of a module map onto ``S``
    which does not vanish on ``S``. Summands are ordered by dimension, then by the echelon basis of their image.
    """

    if V.dim == 0:
        return []

    if rng is None:
        rng = random.Random(DEFAULT_SEED)

    _check_semisimple_action(V)

    field = V.field
    pending = [Subspace.full(field, V.dim)]
    summands = []

    while pending:
        U = pending.pop()
        S = _simple_inside(V, U, rng, budget)
        summands.append(S)
        if S.dim == U.dim:
            continue

        W = V.submodule(U)
        inside = Subspace.span(field, U.dim, [U.coordinates(s) for s in S.basis])
        inclusion = inside.basis_matrix()
        for T in homomorphisms(W, W.submodule(inside)):
            if not (T @ inclusion).is_zero():
                break
        else:
            raise NotSemisimple('module (no projection onto a simple submodule)')

        complement = kernel(T)
        pending.append(Subspace.span(field, V.dim, [U.vector(c) for c in complement.basis]))

    summands.sort(key=lambda s: s.sort_key())
    logger.debug('module of dim {} decomposed into {}'.format(V.dim, [s.dim for s in summands]))

    return [V.submodule(S, name='simple') for S in summands]


# -- Wedderburn form

class WedderburnBlock:
    """Simple block ``zD`` of a semisimple algebra.

    When the block is ``Split``, ``module`` is a simple ``D``-module of dimension ``degree`` and ``iso`` sends
    ``x`` to the row-major flattening of its action, which is bijective on the block.
    """

    def __init__(
            self, algebra: StructureAlgebra, idempotent: Vector, subspace: Subspace, status: BlockStatus,
            module: AlgModule = None):

        self.algebra = algebra
        self.idempotent = idempotent
        self.subspace = subspace
        self.status = status
        self.module = module
        self.degree = module.dim if module is not None and status == BlockStatus.SPLIT else None
        self._inverse = None

        if self.degree is not None:
            n = self.degree
            self.iso = Matrix.from_columns(
                algebra.field,
                [[m[r, c] for r in range(n) for c in range(n)] for m in module.action], n * n)
        else:
            self.iso = None

    @property
    def dim(self) -> int:
        return self.subspace.dim

    def image(self, x: Sequence) -> Matrix:
        n = self.degree
        flat = self.iso.apply(x)
        return Matrix.from_rows(self.algebra.field, [flat[r * n:(r + 1) * n] for r in range(n)], n)

    def matrix_unit(self, r: int, c: int) -> Vector:
        """Element of the block mapped to the matrix unit ``E_rc``"""

        if self.degree is None:
            raise AlgebraError('block is not split')

        if self._inverse is None:
            basis = self.subspace.basis_matrix()
            self._inverse = basis @ inverse(self.iso @ basis)

        return self._inverse.column(r * self.degree + c)


class WedderburnForm:
    def __init__(self, algebra: StructureAlgebra, blocks: List[WedderburnBlock]):
        self.algebra = algebra
        self.blocks = blocks

    def is_split(self) -> bool:
        return all(b.status == BlockStatus.SPLIT for b in self.blocks)

    def statuses(self) -> List[BlockStatus]:
        return [b.status for b in self.blocks]

    def serialize(self) -> List[Dict[str, Any]]:
        return [{
            'dim': b.dim,
            'degree': b.degree,
            'status': b.status.value,
            'idempotent': self.algebra.format_element(b.idempotent)
        } for b in self.blocks]


def wedderburn(D: StructureAlgebra, rng: random.Random = None, budget: int = DEFAULT_SPLIT_SEARCH_BUDGET) \
        -> WedderburnForm:
    """Central primitive idempotents and, per block, a matrix-unit presentation when one is found"""

    if D.unit is None:
        raise NotUnital(D.name or 'algebra')
    if not radical(D).is_zero():
        raise NotSemisimple(D.name or 'algebra')

    if rng is None:
        rng = random.Random(DEFAULT_SEED)

    Z = Subalgebra(D, center(D), name='center')
    try:
        central = [Z.lift(e) for e in primitive_idempotents_split_commutative(Z.algebra)]
    except NotSplit as e:
        raise NotSplitCenter(str(e))

    regular = AlgModule.regular(D)
    blocks = []
    for z in central:
        B = Subspace.column_space(D.left_matrix(z))
        n = math.isqrt(B.dim)
        logger.debug('searching a simple module in a block of dim {}'.format(B.dim))

        if n * n != B.dim:
            blocks.append(WedderburnBlock(D, z, B, BlockStatus.NON_SPLIT))
            continue

        try:
            S = _simple_inside(regular, B, rng, budget)
        except Undetermined:
            logger.warning('block of dim {} left undetermined'.format(B.dim))
            blocks.append(WedderburnBlock(D, z, B, BlockStatus.UNDETERMINED))
            continue

        module = regular.submodule(S, name='simple')
        status = BlockStatus.SPLIT if S.dim == n else BlockStatus.NON_SPLIT
        blocks.append(WedderburnBlock(D, z, B, status, module))

    return WedderburnForm(D, blocks)


def is_absolutely_semisimple(
        D: StructureAlgebra, rng: random.Random = None, budget: int = DEFAULT_SPLIT_SEARCH_BUDGET) -> Verdict:

    if D.unit is None:
        raise NotUnital(D.name or 'algebra')

    if not is_semisimple(D):
        return Verdict.NO

    try:
        form = wedderburn(D, rng, budget)
    except NotSplitCenter:
        return Verdict.NO

    statuses = form.statuses()
    if BlockStatus.NON_SPLIT in statuses:
        return Verdict.NO
    if BlockStatus.UNDETERMINED in statuses:
        return Verdict.UNDETERMINED

    return Verdict.YES


# -- Morita contexts

def bilinear(P: Matrix, u: Sequence, v: Sequence, dim_v: int) -> Vector:
    """Evaluate the bilinear map whose row ``i·dim_v + j`` is the image of ``(u_i, v_j)``"""

    r = [P.field.zero] * P.cols
    rows = P.sparse_rows()
    for i, a in enumerate(u):
        if not a:
            continue
        for j, b in enumerate(v):
            if not b:
                continue
            ab = a * b
            for k, c in rows.get(i * dim_v + j, {}).items():
                r[k] += ab * c
    return r


class Bimodule:
    """``(L, R)``-bimodule: ``left[i]`` is the matrix of ``v -> e_i·v``, ``right[j]`` the one of ``v -> v·f_j``"""

    def __init__(
            self, left_algebra: StructureAlgebra, right_algebra: StructureAlgebra, dim: int,
            left: Sequence[Matrix], right: Sequence[Matrix]):

        if len(left) != left_algebra.dim or len(right) != right_algebra.dim:
            raise DimensionError('number of action matrices', (left_algebra.dim, right_algebra.dim),
                                 (len(left), len(right)))

        self.left_algebra = left_algebra
        self.right_algebra = right_algebra
        self.dim = dim
        self.left = list(left)
        self.right = list(right)

    def act_left(self, x: Sequence, v: Sequence) -> Vector:
        r = zero_vector(self.left_algebra.field, self.dim)
        for a, m in zip(x, self.left):
            if a:
                r = [p + a * q for p, q in zip(r, m.apply(v))]
        return r

    def act_right(self, v: Sequence, y: Sequence) -> Vector:
        r = zero_vector(self.left_algebra.field, self.dim)
        for a, m in zip(y, self.right):
            if a:
                r = [p + a * q for p, q in zip(r, m.apply(v))]
        return r

    def check(self) -> Optional[Tuple[str, tuple]]:
        L, R = self.left_algebra, self.right_algebra
        for i in range(L.dim):
            for j in range(L.dim):
                if self.left[i] @ self.left[j] != _combination(L.field, self.left, L.product(i, j), self.dim):
                    return 'left action', (i, j)
        for i in range(R.dim):
            for j in range(R.dim):
                if self.right[j] @ self.right[i] != _combination(L.field, self.right, R.product(i, j), self.dim):
                    return 'right action', (i, j)
        for i in range(L.dim):
            for j in range(R.dim):
                if self.left[i] @ self.right[j] != self.right[j] @ self.left[i]:
                    return 'commuting actions', (i, j)
        return None


def _combination(field: ScalarField, matrices: Sequence[Matrix], x: Sequence, dim: int) -> Matrix:
    r = Matrix.zeros(field, dim, dim)
    for a, m in zip(x, matrices):
        if a:
            r = r + m.scale(a)
    return r


class MoritaContextData:
    """Morita context ``(A, B, M, N)`` with ``M`` an ``(A, B)``-bimodule, ``N`` a ``(B, A)``-bimodule, and the
    pairings ``M x N -> A`` and ``N x M -> B`` given as bilinear maps (see ``bilinear``)."""

    def __init__(self, A: StructureAlgebra, B: StructureAlgebra, M: Bimodule, N: Bimodule,
                 pairing_mn: Matrix, pairing_nm: Matrix):

        if pairing_mn.shape != (M.dim * N.dim, A.dim):
            raise DimensionError('M x N pairing shape', (M.dim * N.dim, A.dim), pairing_mn.shape)
        if pairing_nm.shape != (N.dim * M.dim, B.dim):
            raise DimensionError('N x M pairing shape', (N.dim * M.dim, B.dim), pairing_nm.shape)

        self.A, self.B, self.M, self.N = A, B, M, N
        self.pairing_mn = pairing_mn
        self.pairing_nm = pairing_nm

    def pair_mn(self, m: Sequence, n: Sequence) -> Vector:
        return bilinear(self.pairing_mn, m, n, self.N.dim)

    def pair_nm(self, n: Sequence, m: Sequence) -> Vector:
        return bilinear(self.pairing_nm, n, m, self.M.dim)


def check_context(ctx: MoritaContextData):
    """Raise ``ContextError`` on the first failing axiom"""

    A, B, M, N = ctx.A, ctx.B, ctx.M, ctx.N
    field = A.field

    for name, bimodule in (('M', M), ('N', N)):
        failure = bimodule.check()
        if failure is not None:
            raise ContextError('{}: {}'.format(name, failure[0]), failure[1])

    ms = [unit_vector(field, M.dim, i) for i in range(M.dim)]
    ns = [unit_vector(field, N.dim, j) for j in range(N.dim)]

    for i, m in enumerate(ms):
        for j, n in enumerate(ns):
            mn, nm = ctx.pair_mn(m, n), ctx.pair_nm(n, m)
            for k in range(M.dim):
                if M.act_left(mn, ms[k]) != M.act_right(m, ctx.pair_nm(n, ms[k])):
                    raise ContextError('(mn)m = m(nm)', (i, j, k))
            for k in range(N.dim):
                if N.act_left(nm, ns[k]) != N.act_right(n, ctx.pair_mn(m, ns[k])):
                    raise ContextError('(nm)n = n(mn)', (j, i, k))
            for b in range(B.dim):
                eb = B.basis_element(b)
                if ctx.pair_mn(M.act_right(m, eb), n) != ctx.pair_mn(m, N.act_left(eb, n)):
                    raise ContextError('(mb, n) = (m, bn)', (i, b, j))
                if B.multiply(eb, nm) != ctx.pair_nm(N.act_left(eb, n), m):
                    raise ContextError('b(n, m) = (bn, m)', (b, j, i))
                if B.multiply(nm, eb) != ctx.pair_nm(n, M.act_right(m, eb)):
                    raise ContextError('(n, m)b = (n, mb)', (j, i, b))
            for a in range(A.dim):
                ea = A.basis_element(a)
                if ctx.pair_nm(N.act_right(n, ea), m) != ctx.pair_nm(n, M.act_left(ea, m)):
                    raise ContextError('(na, m) = (n, am)', (j, a, i))
                if A.multiply(ea, mn) != ctx.pair_mn(M.act_left(ea, m), n):
                    raise ContextError('a(m, n) = (am, n)', (a, i, j))
                if A.multiply(mn, ea) != ctx.pair_mn(m, N.act_right(n, ea)):
                    raise ContextError('(m, n)a = (m, na)', (i, j, a))


def _balanced_pairing_is_injective(
        P: Matrix, X: Bimodule, Y: Bimodule, middle: StructureAlgebra) -> bool:
    """Whether ``X ⊗_middle Y -> target`` induced by ``P`` is injective"""

    field = middle.field
    dx, dy = X.dim, Y.dim
    relations = []
    for c in range(middle.dim):
        ec = middle.basis_element(c)
        for i in range(dx):
            xi = unit_vector(field, dx, i)
            xc = X.act_right(xi, ec)
            for j in range(dy):
                yj = unit_vector(field, dy, j)
                cy = Y.act_left(ec, yj)
                r = zero_vector(field, dx * dy)
                for a, u in enumerate(xc):
                    if u:
                        r[a * dy + j] += u
                for b, u in enumerate(cy):
                    if u:
                        r[i * dy + b] -= u
                relations.append(r)

    projection, section = quotient_map(dx * dy, Subspace.span(field, dx * dy, relations))
    induced = P.transpose() @ section
    return induced.rank() == section.cols


def verify_morita(ctx: MoritaContextData) -> MoritaStatus:
    """``Strict`` when both pairings are onto (then they are also one-to-one), ``NotSurjective`` otherwise"""

    if ctx.A.unit is None or ctx.B.unit is None:
        raise NotUnital('context algebra')

    check_context(ctx)

    image_a = Subspace.from_matrix(ctx.pairing_mn)
    image_b = Subspace.from_matrix(ctx.pairing_nm)

    if not (image_a.is_full() and image_b.is_full()):
        return MoritaStatus.NOT_SURJECTIVE

    if not _balanced_pairing_is_injective(ctx.pairing_mn, ctx.M, ctx.N, ctx.B) or \
            not _balanced_pairing_is_injective(ctx.pairing_nm, ctx.N, ctx.M, ctx.A):
        raise ContextError('surjective pairings are injective', ())

    return MoritaStatus.STRICT


def sandwich(D: StructureAlgebra, e: Sequence, f: Sequence) -> Subspace:
    """``eDf``"""

    return Subspace.column_space(D.left_matrix(e) @ D.right_matrix(f))


def _restricted_action(D: StructureAlgebra, acting: Sequence[Sequence], space: Subspace, left: bool) -> List[Matrix]:
    matrices = []
    for x in acting:
        columns = []
        for b in space.basis:
            w = D.multiply(x, b) if left else D.multiply(b, x)
            columns.append(space.coordinates(w))
        matrices.append(Matrix.from_columns(D.field, columns, space.dim))
    return matrices


def _pairing(D: StructureAlgebra, X: Subspace, Y: Subspace, target: Subspace) -> Matrix:
    entries = {}
    for i, x in enumerate(X.basis):
        for j, y in enumerate(Y.basis):
            entries[i * Y.dim + j] = dict(enumerate(target.coordinates(D.multiply(x, y))))
    return Matrix(D.field, X.dim * Y.dim, target.dim, entries)


def morita_context(D: StructureAlgebra, e: Sequence, f: Sequence) -> MoritaContextData:
    """Context ``(eDf, fDe)`` between ``eDe`` and ``fDf``"""

    for name, x in (('e', e), ('f', f)):
        if not D.is_idempotent(x):
            raise NotIdempotent(name)

    eDe, fDf = Subalgebra(D, sandwich(D, e, e), name='eDe'), Subalgebra(D, sandwich(D, f, f), name='fDf')
    eDf, fDe = sandwich(D, e, f), sandwich(D, f, e)

    a_basis, b_basis = eDe.subspace.basis, fDf.subspace.basis
    M = Bimodule(eDe.algebra, fDf.algebra, eDf.dim,
                 _restricted_action(D, a_basis, eDf, True), _restricted_action(D, b_basis, eDf, False))
    N = Bimodule(fDf.algebra, eDe.algebra, fDe.dim,
                 _restricted_action(D, b_basis, fDe, True), _restricted_action(D, a_basis, fDe, False))

    return MoritaContextData(
        eDe.algebra, fDf.algebra, M, N,
        _pairing(D, eDf, fDe, eDe.subspace), _pairing(D, fDe, eDf, fDf.subspace))


def is_full_idempotent(D: StructureAlgebra, p: Sequence) -> bool:
    """``DpD = D``"""

    pD = sandwich(D, p, D.one())
    products = [D.multiply(D.basis_element(i), y) for i in range(D.dim) for y in pD.basis]
    return Subspace.span(D.field, D.dim, products).is_full()


def corner(D: StructureAlgebra, p: Sequence) -> Tuple[StructureAlgebra, MoritaContextData, bool]:
    """``pDp``, the ``(Dp, pD)`` context between ``D`` and ``pDp``, and whether ``p`` is full"""

    if not D.is_idempotent(p):
        raise NotIdempotent('p')

    ctx = morita_context(D, D.one(), p)
    return ctx.B, ctx, is_full_idempotent(D, p)


def tensor_multiply(D: StructureAlgebra, E: StructureAlgebra, x: Sequence, y: Sequence) -> Vector:
    """Product in ``D ⊗ E``, where ``e_i ⊗ f_j`` sits at index ``i·dim(E) + j``"""

    m = E.dim
    r = zero_vector(D.field, D.dim * m)
    nz_y = [divmod(t, m) + (b, ) for t, b in enumerate(y) if b]

    for s, a in enumerate(x):
        if not a:
            continue
        i, j = divmod(s, m)
        for k, l_, b in nz_y:
            ab = a * b
            left = D._table.get((i, k), ())
            if not left:
                continue
            for u, c in left:
                for v, d in E._table.get((j, l_), ()):
                    r[u * m + v] += ab * c * d
    return r
