"""
Exact linear algebra over the rationals and the prime fields: scalars, sparse matrices, canonical subspaces,
polynomials and their roots or factors.
"""

import logging
import math
from fractions import Fraction
from typing import Any, Dict, Iterator, List, Optional, Sequence, Tuple

import sympy
from sympy.polys import galoistools
from sympy.polys.domains import GF, QQ, ZZ
from sympy.polys.euclidtools import dup_lcm
from sympy.polys.matrices import DomainMatrix

logger = logging.getLogger(__name__)

Vector = List[Any]


class FieldError(Exception):
    pass


class DimensionError(ValueError):
    def __init__(self, what: str, expected: Any, got: Any, *args):
        self.what = what
        super().__init__('{}: expected {}, got {}'.format(what, expected, got), *args)


class SingularMatrix(Exception):
    def __init__(self, size: int, rank_: int, *args):
        self.size = size
        self.rank = rank_
        super().__init__('{0}x{0} matrix is singular (rank {1})'.format(size, rank_), *args)


class FactorizationUnsupported(Exception):
    def __init__(self, field: 'ScalarField', *args):
        super().__init__('polynomial factorization is not available over {}'.format(field), *args)


class ScalarField:
    """Exact ground field: the rationals (``p = 0``) or the prime field with ``p`` elements.

    Elements are the ones of the underlying sympy domain (``QQ`` or ``GF(p)``), so they
    can be fed to ``DomainMatrix`` directly.
    """

    def __init__(self, p: int = 0):
        if p != 0 and (p < 2 or not sympy.isprime(p)):
            raise FieldError('{} is not a prime'.format(p))

        self.p = p
        self.domain = QQ if p == 0 else GF(p, symmetric=False)
        self.zero = self.domain.zero
        self.one = self.domain.one

    @classmethod
    def rationals(cls) -> 'ScalarField':
        return cls(0)

    @property
    def is_prime_field(self) -> bool:
        return self.p != 0

    @property
    def characteristic(self) -> int:
        return self.p

    @property
    def descriptor(self) -> str:
        return 'Q' if self.p == 0 else 'Fp:{}'.format(self.p)

    @classmethod
    def from_descriptor(cls, descriptor: str) -> 'ScalarField':
        if descriptor == 'Q':
            return cls(0)

        if descriptor.startswith('Fp:'):
            try:
                return cls(int(descriptor[3:]))
            except ValueError:
                pass

        raise FieldError('unknown field descriptor "{}" (expected "Q" or "Fp:<p>")'.format(descriptor))

    def __call__(self, num: int = 0, den: int = 1) -> Any:
        if den == 0:
            raise FieldError('zero denominator')

        if self.p == 0:
            return self.domain(num, den)

        if den % self.p == 0:
            raise FieldError('{} is not invertible modulo {}'.format(den, self.p))

        return self.domain(num) / self.domain(den)

    def convert(self, value: Any) -> Any:
        """Convert an integer, a ``Fraction``, a ``"num/den"`` string or an element of this field"""

        if isinstance(value, str):
            return self.parse(value)
        if isinstance(value, Fraction):
            return self(value.numerator, value.denominator)
        if isinstance(value, int):
            return self(value)
        if self.domain.of_type(value):
            return value

        raise FieldError('cannot convert {!r} to an element of {}'.format(value, self))

    def parse(self, text: str) -> Any:
        text = text.strip()
        num, _, den = text.partition('/')

        try:
            n = int(num)
            d = int(den) if den else 1
        except ValueError:
            raise FieldError('"{}" is not a rational number'.format(text))

        return self(n, d)

    def format(self, a: Any) -> str:
        if self.p != 0:
            return str(self.to_int(a))

        n, d = int(QQ.numer(a)), int(QQ.denom(a))
        return str(n) if d == 1 else '{}/{}'.format(n, d)

    def to_int(self, a: Any) -> int:
        """Integer representative (``0 <= n < p`` over a prime field)"""

        if self.p != 0:
            return int(self.domain.to_sympy(a))

        if int(QQ.denom(a)) != 1:
            raise FieldError('{} is not an integer'.format(self.format(a)))

        return int(QQ.numer(a))

    def to_fraction(self, a: Any) -> Fraction:
        if self.p != 0:
            return Fraction(self.to_int(a))

        return Fraction(int(QQ.numer(a)), int(QQ.denom(a)))

    def key(self, a: Any) -> Tuple[int, int]:
        """Hashable, totally ordered key of an element"""

        f = self.to_fraction(a)
        return f.numerator, f.denominator

    def elements(self) -> Iterator[Any]:
        if self.p == 0:
            raise FieldError('the rationals cannot be enumerated')

        for i in range(self.p):
            yield self(i)

    def random_element(self, rng) -> Any:
        if self.p != 0:
            return self(rng.randrange(self.p))

        return self(rng.randint(-2, 2))

    def __eq__(self, other: Any) -> bool:
        return isinstance(other, ScalarField) and other.p == self.p

    def __hash__(self) -> int:
        return hash(('ScalarField', self.p))

    def __repr__(self) -> str:
        return self.descriptor


# -- dense vectors

def zero_vector(field: ScalarField, n: int) -> Vector:
    return [field.zero] * n


def unit_vector(field: ScalarField, n: int, i: int) -> Vector:
    v = [field.zero] * n
    v[i] = field.one
    return v


def is_zero_vector(v: Sequence) -> bool:
    return not any(v)


def add_vectors(u: Sequence, v: Sequence) -> Vector:
    return [a + b for a, b in zip(u, v)]


def sub_vectors(u: Sequence, v: Sequence) -> Vector:
    return [a - b for a, b in zip(u, v)]


def scale_vector(c: Any, v: Sequence) -> Vector:
    return [c * a for a in v]


def dot(u: Sequence, v: Sequence, field: ScalarField) -> Any:
    r = field.zero
    for a, b in zip(u, v):
        if a and b:
            r += a * b
    return r


def combine(field: ScalarField, coefficients: Sequence, vectors: Sequence[Sequence], n: int) -> Vector:
    """Linear combination of ``vectors`` (all of length ``n``)"""

    r = [field.zero] * n
    for c, v in zip(coefficients, vectors):
        if not c:
            continue
        for i, a in enumerate(v):
            if a:
                r[i] += c * a
    return r


class Matrix:
    """Exact matrix over a ``ScalarField``.

    Entries are kept as sparse rows (``{row: {col: value}}``, nonzero values only); the object is never
    modified after construction.
    """

    def __init__(self, field: ScalarField, rows: int, cols: int, entries: Dict[int, Dict[int, Any]] = None):
        self.field = field
        self.rows = rows
        self.cols = cols
        self._entries = {}
        self._columns = None

        if entries:
            for i, row in entries.items():
                r = {j: v for j, v in row.items() if v}
                if r:
                    self._entries[i] = r

    # -- constructors

    @classmethod
    def zeros(cls, field: ScalarField, rows: int, cols: int) -> 'Matrix':
        return cls(field, rows, cols)

    @classmethod
    def identity(cls, field: ScalarField, n: int) -> 'Matrix':
        return cls(field, n, n, {i: {i: field.one} for i in range(n)})

    @classmethod
    def diagonal(cls, field: ScalarField, values: Sequence) -> 'Matrix':
        n = len(values)
        return cls(field, n, n, {i: {i: field.convert(v)} for i, v in enumerate(values)})

    @classmethod
    def from_rows(cls, field: ScalarField, rows: Sequence[Sequence], cols: int = None) -> 'Matrix':
        if cols is None:
            cols = len(rows[0]) if rows else 0

        entries = {}
        for i, row in enumerate(rows):
            if len(row) != cols:
                raise DimensionError('row {} length'.format(i), cols, len(row))
            entries[i] = {j: field.convert(v) for j, v in enumerate(row)}

        return cls(field, len(rows), cols, entries)

    @classmethod
    def from_columns(cls, field: ScalarField, columns: Sequence[Sequence], rows: int = None) -> 'Matrix':
        if rows is None:
            rows = len(columns[0]) if columns else 0

        entries = {}
        for j, col in enumerate(columns):
            if len(col) != rows:
                raise DimensionError('column {} length'.format(j), rows, len(col))
            for i, v in enumerate(col):
                v = field.convert(v)
                if v:
                    entries.setdefault(i, {})[j] = v

        return cls(field, rows, len(columns), entries)

    @classmethod
    def column_vector(cls, field: ScalarField, vector: Sequence) -> 'Matrix':
        return cls.from_columns(field, [vector], len(vector))

    @classmethod
    def from_domain_matrix(cls, field: ScalarField, dm: DomainMatrix) -> 'Matrix':
        rows, cols = dm.shape
        sdm = dm.to_sparse().rep
        return cls(field, rows, cols, {i: dict(row) for i, row in sdm.items()})

    # -- access

    @property
    def shape(self) -> Tuple[int, int]:
        return self.rows, self.cols

    def __getitem__(self, index: Tuple[int, int]) -> Any:
        i, j = index
        return self._entries.get(i, {}).get(j, self.field.zero)

    def sparse_rows(self) -> Dict[int, Dict[int, Any]]:
        return self._entries

    def sparse_columns(self) -> Dict[int, Dict[int, Any]]:
        if self._columns is None:
            columns = {}
            for i, row in self._entries.items():
                for j, v in row.items():
                    columns.setdefault(j, {})[i] = v
            self._columns = columns

        return self._columns

    def items(self) -> Iterator[Tuple[int, int, Any]]:
        for i in sorted(self._entries):
            row = self._entries[i]
            for j in sorted(row):
                yield i, j, row[j]

    def row(self, i: int) -> Vector:
        r = [self.field.zero] * self.cols
        for j, v in self._entries.get(i, {}).items():
            r[j] = v
        return r

    def column(self, j: int) -> Vector:
        c = [self.field.zero] * self.rows
        for i, v in self.sparse_columns().get(j, {}).items():
            c[i] = v
        return c

    def to_lists(self) -> List[Vector]:
        return [self.row(i) for i in range(self.rows)]

    def to_domain_matrix(self) -> DomainMatrix:
        return DomainMatrix({i: dict(row) for i, row in self._entries.items()}, self.shape, self.field.domain)

    # -- arithmetic

    def _check_same_shape(self, other: 'Matrix'):
        if self.field != other.field:
            raise DimensionError('field', self.field, other.field)
        if self.shape != other.shape:
            raise DimensionError('shape', self.shape, other.shape)

    def __add__(self, other: 'Matrix') -> 'Matrix':
        self._check_same_shape(other)
        entries = {i: dict(row) for i, row in self._entries.items()}
        for i, row in other._entries.items():
            target = entries.setdefault(i, {})
            for j, v in row.items():
                target[j] = target.get(j, self.field.zero) + v
        return Matrix(self.field, self.rows, self.cols, entries)

    def __neg__(self) -> 'Matrix':
        return Matrix(self.field, self.rows, self.cols, {i: {j: -v for j, v in row.items()}
                                                          for i, row in self._entries.items()})

    def __sub__(self, other: 'Matrix') -> 'Matrix':
        return self + (-other)

    def scale(self, c: Any) -> 'Matrix':
        c = self.field.convert(c)
        return Matrix(self.field, self.rows, self.cols, {i: {j: c * v for j, v in row.items()}
                                                          for i, row in self._entries.items()})

    def __matmul__(self, other: 'Matrix') -> 'Matrix':
        if self.field != other.field:
            raise DimensionError('field', self.field, other.field)
        if self.cols != other.rows:
            raise DimensionError('inner dimension', self.cols, other.rows)

        zero = self.field.zero
        entries = {}
        for i, row in self._entries.items():
            acc = {}
            for k, a in row.items():
                for j, b in other._entries.get(k, {}).items():
                    acc[j] = acc.get(j, zero) + a * b
            entries[i] = acc

        return Matrix(self.field, self.rows, other.cols, entries)

    def apply(self, vector: Sequence) -> Vector:
        """``M·v`` for a dense column vector ``v``"""

        if len(vector) != self.cols:
            raise DimensionError('vector length', self.cols, len(vector))

        zero = self.field.zero
        r = [zero] * self.rows
        for i, row in self._entries.items():
            acc = zero
            for j, a in row.items():
                b = vector[j]
                if b:
                    acc += a * b
            r[i] = acc
        return r

    def apply_left(self, vector: Sequence) -> Vector:
        """``v·M`` for a dense row vector ``v``"""

        if len(vector) != self.rows:
            raise DimensionError('vector length', self.rows, len(vector))

        r = [self.field.zero] * self.cols
        for i, row in self._entries.items():
            c = vector[i]
            if c:
                for j, a in row.items():
                    r[j] += c * a
        return r

    def transpose(self) -> 'Matrix':
        return Matrix(self.field, self.cols, self.rows, self.sparse_columns())

    def power(self, k: int) -> 'Matrix':
        if self.rows != self.cols:
            raise DimensionError('square matrix', self.rows, self.cols)

        result = Matrix.identity(self.field, self.rows)
        base = self
        while k > 0:
            if k & 1:
                result = result @ base
            base = base @ base
            k >>= 1
        return result

    def submatrix(self, row_indices: Sequence[int], col_indices: Sequence[int]) -> 'Matrix':
        cmap = {j: n for n, j in enumerate(col_indices)}
        entries = {}
        for n, i in enumerate(row_indices):
            row = self._entries.get(i, {})
            entries[n] = {cmap[j]: v for j, v in row.items() if j in cmap}
        return Matrix(self.field, len(row_indices), len(col_indices), entries)

    @staticmethod
    def hstack(*matrices: 'Matrix') -> 'Matrix':
        field, rows = matrices[0].field, matrices[0].rows
        entries, offset = {}, 0
        for m in matrices:
            if m.rows != rows:
                raise DimensionError('rows', rows, m.rows)
            for i, row in m._entries.items():
                target = entries.setdefault(i, {})
                for j, v in row.items():
                    target[j + offset] = v
            offset += m.cols
        return Matrix(field, rows, offset, entries)

    @staticmethod
    def vstack(*matrices: 'Matrix') -> 'Matrix':
        field, cols = matrices[0].field, matrices[0].cols
        entries, offset = {}, 0
        for m in matrices:
            if m.cols != cols:
                raise DimensionError('columns', cols, m.cols)
            for i, row in m._entries.items():
                entries[i + offset] = dict(row)
            offset += m.rows
        return Matrix(field, offset, cols, entries)

    # -- predicates

    def is_zero(self) -> bool:
        return not self._entries

    def is_square(self) -> bool:
        return self.rows == self.cols

    def is_identity(self) -> bool:
        return self.is_square() and self == Matrix.identity(self.field, self.rows)

    def __eq__(self, other: Any) -> bool:
        if not isinstance(other, Matrix):
            return NotImplemented

        return self.field == other.field and self.shape == other.shape and self._entries == other._entries

    def __ne__(self, other: Any) -> bool:
        r = self.__eq__(other)
        return r if r is NotImplemented else not r

    __hash__ = None

    # -- elimination

    def rref(self) -> Tuple['Matrix', Tuple[int, ...]]:
        """Reduced row echelon form and pivot columns"""

        if self.rows == 0 or self.cols == 0 or self.is_zero():
            return Matrix(self.field, self.rows, self.cols), ()

        if self.rows * self.cols > 100000:
            logger.debug('eliminating a {}x{} system'.format(self.rows, self.cols))

        reduced, pivots = self.to_domain_matrix().rref()
        return Matrix.from_domain_matrix(self.field, reduced), tuple(pivots)

    def rank(self) -> int:
        return len(self.rref()[1])

    def __repr__(self) -> str:
        return '<Matrix {}x{} over {}>'.format(self.rows, self.cols, self.field)

    def format_rows(self) -> List[List[str]]:
        return [[self.field.format(v) for v in self.row(i)] for i in range(self.rows)]


def identity_matrix(field: ScalarField, n: int) -> Matrix:
    return Matrix.identity(field, n)


def rank(M: Matrix) -> int:
    return M.rank()


def inverse(M: Matrix) -> Matrix:
    """Exact inverse, raises ``SingularMatrix``"""

    if not M.is_square():
        raise DimensionError('square matrix', M.rows, M.cols)

    n = M.rows
    if n == 0:
        return M

    reduced, pivots = Matrix.hstack(M, Matrix.identity(M.field, n)).rref()
    if tuple(pivots[:n]) != tuple(range(n)):
        raise SingularMatrix(n, len([p for p in pivots if p < n]))

    return reduced.submatrix(range(n), range(n, 2 * n))


def solve(M: Matrix, b: Matrix) -> Optional[Matrix]:
    """Some ``X`` with ``M·X = b`` (free variables set to zero), or ``None`` if inconsistent.

    :param M: system matrix
    :param b: right-hand side, one column per system
    """

    if M.field != b.field:
        raise DimensionError('field', M.field, b.field)
    if M.rows != b.rows:
        raise DimensionError('right-hand side rows', M.rows, b.rows)

    n = M.cols
    reduced, pivots = Matrix.hstack(M, b).rref()

    if any(p >= n for p in pivots):
        return None

    entries = {}
    for r, p in enumerate(pivots):
        row = reduced.sparse_rows().get(r, {})
        entries[p] = {j - n: v for j, v in row.items() if j >= n}

    return Matrix(M.field, n, b.cols, entries)


class Subspace:
    """Subspace of ``k^n`` in canonical form: the basis is the list of nonzero rows of the reduced row
    echelon form, so that two equal subspaces have identical representations.
    """

    def __init__(self, field: ScalarField, ambient_dim: int, basis: Sequence[Sequence], pivots: Sequence[int]):
        self.field = field
        self.ambient_dim = ambient_dim
        self.basis = [list(v) for v in basis]
        self.pivots = tuple(pivots)

    @classmethod
    def span(cls, field: ScalarField, ambient_dim: int, vectors: Sequence[Sequence]) -> 'Subspace':
        vectors = [v for v in vectors if not is_zero_vector(v)]
        if not vectors:
            return cls.zero(field, ambient_dim)

        return cls.from_matrix(Matrix.from_rows(field, vectors, ambient_dim))

    @classmethod
    def from_matrix(cls, M: Matrix) -> 'Subspace':
        """Row space of ``M``"""

        reduced, pivots = M.rref()
        return cls(M.field, M.cols, [reduced.row(i) for i in range(len(pivots))], pivots)

    @classmethod
    def column_space(cls, M: Matrix) -> 'Subspace':
        return cls.from_matrix(M.transpose())

    @classmethod
    def zero(cls, field: ScalarField, ambient_dim: int) -> 'Subspace':
        return cls(field, ambient_dim, [], ())

    @classmethod
    def full(cls, field: ScalarField, ambient_dim: int) -> 'Subspace':
        return cls(field, ambient_dim, [unit_vector(field, ambient_dim, i) for i in range(ambient_dim)],
                   range(ambient_dim))

    @property
    def dim(self) -> int:
        return len(self.basis)

    def is_zero(self) -> bool:
        return self.dim == 0

    def is_full(self) -> bool:
        return self.dim == self.ambient_dim

    def matrix(self) -> Matrix:
        """Basis as rows"""

        return Matrix.from_rows(self.field, self.basis, self.ambient_dim)

    def basis_matrix(self) -> Matrix:
        """Basis as columns (the embedding ``k^dim -> k^n``)"""

        return Matrix.from_columns(self.field, self.basis, self.ambient_dim)

    def coordinates(self, v: Sequence) -> Vector:
        """Coordinates of ``v`` in the canonical basis (``v`` must belong to the subspace)"""

        return [v[p] for p in self.pivots]

    def vector(self, coordinates: Sequence) -> Vector:
        return combine(self.field, coordinates, self.basis, self.ambient_dim)

    def reduce(self, v: Sequence) -> Vector:
        """Remainder of ``v`` modulo the subspace (zero at every pivot)"""

        r = list(v)
        for p, b in zip(self.pivots, self.basis):
            c = r[p]
            if c:
                r = [x - c * y if y else x for x, y in zip(r, b)]
        return r

    def contains(self, v: Sequence) -> bool:
        return is_zero_vector(self.reduce(v))

    def __contains__(self, v: Sequence) -> bool:
        return self.contains(v)

    def is_subspace_of(self, other: 'Subspace') -> bool:
        return all(other.contains(b) for b in self.basis)

    def __le__(self, other: 'Subspace') -> bool:
        return self.is_subspace_of(other)

    def __add__(self, other: 'Subspace') -> 'Subspace':
        if self.ambient_dim != other.ambient_dim:
            raise DimensionError('ambient dimension', self.ambient_dim, other.ambient_dim)
        return Subspace.span(self.field, self.ambient_dim, self.basis + other.basis)

    def annihilator(self) -> 'Subspace':
        """``{y : b·y = 0 for every basis vector b}``"""

        if self.is_zero():
            return Subspace.full(self.field, self.ambient_dim)
        return kernel(self.matrix())

    def intersection(self, other: 'Subspace') -> 'Subspace':
        if self.is_zero() or other.is_zero():
            return Subspace.zero(self.field, self.ambient_dim)

        ann = other.annihilator()
        if ann.is_zero():
            return self

        coefficients = kernel(ann.matrix() @ self.basis_matrix())
        return Subspace.span(self.field, self.ambient_dim, [self.vector(c) for c in coefficients.basis])

    def __eq__(self, other: Any) -> bool:
        if not isinstance(other, Subspace):
            return NotImplemented

        return self.field == other.field and self.ambient_dim == other.ambient_dim and \
            self.pivots == other.pivots and self.basis == other.basis

    def __ne__(self, other: Any) -> bool:
        r = self.__eq__(other)
        return r if r is NotImplemented else not r

    __hash__ = None

    def sort_key(self) -> tuple:
        return self.dim, tuple(tuple(self.field.key(a) for a in b) for b in self.basis)

    def __repr__(self) -> str:
        return '<Subspace of dim {} in {}^{}>'.format(self.dim, self.field, self.ambient_dim)


def kernel(M: Matrix) -> Subspace:
    """Canonical basis of ``{x : M·x = 0}``"""

    n = M.cols
    reduced, pivots = M.rref()
    pivot_set = set(pivots)

    vectors = []
    for f in range(n):
        if f in pivot_set:
            continue
        v = unit_vector(M.field, n, f)
        for r, p in enumerate(pivots):
            c = reduced[r, f]
            if c:
                v[p] = -c
        vectors.append(v)

    return Subspace.span(M.field, n, vectors)


class EchelonForm:
    """Echelon basis grown one vector at a time.

    Each stored row is normalized (1 at its pivot, 0 before it). When ``combination`` data is given to
    ``reduce``/``add``, it is carried along so that a vector reducing to zero yields a linear relation
    between the inputs.
    """

    def __init__(self, field: ScalarField, ambient_dim: int):
        self.field = field
        self.ambient_dim = ambient_dim
        self._rows = []

    @property
    def dim(self) -> int:
        return len(self._rows)

    def reduce(self, vector: Sequence, combination: Dict[int, Any] = None) -> Tuple[Vector, Dict[int, Any]]:
        v = list(vector)
        comb = dict(combination) if combination is not None else None
        zero = self.field.zero

        for pivot, row, row_comb in self._rows:
            c = v[pivot]
            if not c:
                continue
            v = [x - c * y if y else x for x, y in zip(v, row)]
            if comb is not None:
                for k, b in row_comb.items():
                    comb[k] = comb.get(k, zero) - c * b

        return v, comb

    def add(self, vector: Sequence, combination: Dict[int, Any] = None) -> bool:
        """Add ``vector`` if it is independent of the current rows; returns whether it was"""

        v, comb = self.reduce(vector, combination)
        pivot = next((i for i, x in enumerate(v) if x), None)
        if pivot is None:
            return False

        inv = self.field.one / v[pivot]
        v = [x * inv if x else x for x in v]
        if comb is not None:
            comb = {k: b * inv for k, b in comb.items()}

        self._rows.append((pivot, v, comb or {}))
        self._rows.sort(key=lambda r: r[0])
        return True

    def __contains__(self, vector: Sequence) -> bool:
        return is_zero_vector(self.reduce(vector)[0])

    def vectors(self) -> List[Vector]:
        return [list(r[1]) for r in self._rows]

    def subspace(self) -> Subspace:
        return Subspace.span(self.field, self.ambient_dim, self.vectors())


def quotient_map(ambient_dim: int, relations: Subspace) -> Tuple[Matrix, Matrix]:
    """Projection ``π: k^n -> k^n / relations`` and section ``s`` with ``π·s = 1``.

    The quotient is coordinatized by the non-pivot coordinates of the canonical basis of ``relations``.
    """

    if relations.ambient_dim != ambient_dim:
        raise DimensionError('relations ambient dimension', ambient_dim, relations.ambient_dim)

    field = relations.field
    pivot_set = set(relations.pivots)
    free = [j for j in range(ambient_dim) if j not in pivot_set]
    position = {j: n for n, j in enumerate(free)}

    projection = {}
    for j in free:
        projection.setdefault(position[j], {})[j] = field.one
    for p, b in zip(relations.pivots, relations.basis):
        for j, v in enumerate(b):
            if v and j in position:
                projection.setdefault(position[j], {})[p] = -v

    section = {j: {position[j]: field.one} for j in free}

    return Matrix(field, len(free), ambient_dim, projection), Matrix(field, ambient_dim, len(free), section)


def tensor(M: Matrix, N: Matrix) -> Matrix:
    """Kronecker product; ``e_i ⊗ f_j`` sits at index ``i·dim(W) + j``"""

    if M.field != N.field:
        raise DimensionError('field', M.field, N.field)

    entries = {}
    for i, row in M.sparse_rows().items():
        for k, nrow in N.sparse_rows().items():
            target = entries.setdefault(i * N.rows + k, {})
            for j, a in row.items():
                for m, b in nrow.items():
                    target[j * N.cols + m] = a * b

    return Matrix(M.field, M.rows * N.rows, M.cols * N.cols, entries)


def tensor_vectors(u: Sequence, v: Sequence, field: ScalarField) -> Vector:
    r = [field.zero] * (len(u) * len(v))
    n = len(v)
    for i, a in enumerate(u):
        if a:
            for j, b in enumerate(v):
                if b:
                    r[i * n + j] = a * b
    return r


class Polynomial:
    """Univariate polynomial, coefficients stored lowest degree first"""

    def __init__(self, field: ScalarField, coefficients: Sequence = ()):
        self.field = field
        c = [field.convert(a) for a in coefficients]
        while c and not c[-1]:
            c.pop()
        self.coefficients = tuple(c)

    @classmethod
    def t(cls, field: ScalarField) -> 'Polynomial':
        return cls(field, [0, 1])

    @classmethod
    def constant(cls, field: ScalarField, c: Any) -> 'Polynomial':
        return cls(field, [c])

    @classmethod
    def from_roots(cls, field: ScalarField, roots: Sequence) -> 'Polynomial':
        f = cls(field, [1])
        for r in roots:
            f = f * cls(field, [-field.convert(r), 1])
        return f

    @property
    def degree(self) -> int:
        """Degree, -1 for the zero polynomial"""

        return len(self.coefficients) - 1

    def is_zero(self) -> bool:
        return not self.coefficients

    @property
    def leading(self) -> Any:
        return self.coefficients[-1] if self.coefficients else self.field.zero

    def monic(self) -> 'Polynomial':
        if self.is_zero():
            return self
        inv = self.field.one / self.leading
        return Polynomial(self.field, [a * inv for a in self.coefficients])

    def __add__(self, other: 'Polynomial') -> 'Polynomial':
        n = max(len(self.coefficients), len(other.coefficients))
        a = list(self.coefficients) + [self.field.zero] * (n - len(self.coefficients))
        b = list(other.coefficients) + [self.field.zero] * (n - len(other.coefficients))
        return Polynomial(self.field, add_vectors(a, b))

    def __neg__(self) -> 'Polynomial':
        return Polynomial(self.field, [-a for a in self.coefficients])

    def __sub__(self, other: 'Polynomial') -> 'Polynomial':
        return self + (-other)

    def __mul__(self, other: 'Polynomial') -> 'Polynomial':
        if self.is_zero() or other.is_zero():
            return Polynomial(self.field)

        r = [self.field.zero] * (len(self.coefficients) + len(other.coefficients) - 1)
        for i, a in enumerate(self.coefficients):
            if a:
                for j, b in enumerate(other.coefficients):
                    r[i + j] += a * b
        return Polynomial(self.field, r)

    def __pow__(self, k: int) -> 'Polynomial':
        r = Polynomial(self.field, [1])
        for _ in range(k):
            r = r * self
        return r

    def __divmod__(self, other: 'Polynomial') -> Tuple['Polynomial', 'Polynomial']:
        if other.is_zero():
            raise ZeroDivisionError('polynomial division by zero')

        remainder = list(self.coefficients)
        d = other.degree
        inv = self.field.one / other.leading
        quotient = [self.field.zero] * max(len(remainder) - d, 0)

        for k in range(len(remainder) - d - 1, -1, -1):
            c = remainder[k + d] * inv
            quotient[k] = c
            if c:
                for j, b in enumerate(other.coefficients):
                    remainder[k + j] -= c * b

        return Polynomial(self.field, quotient), Polynomial(self.field, remainder[:d])

    def __eq__(self, other: Any) -> bool:
        if not isinstance(other, Polynomial):
            return NotImplemented
        return self.field == other.field and self.coefficients == other.coefficients

    def __ne__(self, other: Any) -> bool:
        r = self.__eq__(other)
        return r if r is NotImplemented else not r

    __hash__ = None

    def __call__(self, a: Any) -> Any:
        r = self.field.zero
        for c in reversed(self.coefficients):
            r = r * a + c
        return r

    def evaluate(self, M: Matrix) -> Matrix:
        """``f(M)`` by Horner's scheme"""

        if not M.is_square():
            raise DimensionError('square matrix', M.rows, M.cols)

        n = M.rows
        result = Matrix.zeros(self.field, n, n)
        for c in reversed(self.coefficients):
            result = result @ M
            if c:
                result = result + Matrix.identity(self.field, n).scale(c)
        return result

    def sort_key(self) -> tuple:
        return self.degree, tuple(self.field.key(a) for a in reversed(self.coefficients))

    def format(self, var: str = 't') -> str:
        if self.is_zero():
            return '0'

        terms = []
        for k in range(self.degree, -1, -1):
            c = self.coefficients[k]
            if not c:
                continue
            s = self.field.format(c)
            monomial = '' if k == 0 else (var if k == 1 else '{}^{}'.format(var, k))
            if monomial and s == '1':
                s = monomial
            elif monomial and s == '-1':
                s = '-' + monomial
            elif monomial:
                s = '{}*{}'.format(s, monomial)
            terms.append(s)

        return ' + '.join(terms).replace('+ -', '- ')

    def __repr__(self) -> str:
        return '<Polynomial {} over {}>'.format(self.format(), self.field)

    # -- bridges with ``sympy.polys.galoistools`` (dense integer lists, highest degree first)

    def to_gf(self) -> List[int]:
        return [ZZ(self.field.to_int(a)) for a in reversed(self.coefficients)]

    @classmethod
    def from_gf(cls, field: ScalarField, f: Sequence) -> 'Polynomial':
        return cls(field, [field(int(a)) for a in reversed(f)])


def min_poly(M: Matrix) -> Polynomial:
    """Monic minimal polynomial.

    Unit vectors are spun up under ``M`` until the first linear relation between ``v, Mv, M²v, ...``, which is
    the minimal polynomial of ``v``; the result is the lcm of those. A unit vector lying in the sum of the Krylov
    subspaces already built is skipped, as the current lcm annihilates it.
    """

    if not M.is_square():
        raise DimensionError('square matrix', M.rows, M.cols)

    field, n = M.field, M.rows
    covered = EchelonForm(field, n)
    result = [field.one]  # dense, leading coefficient first

    for j in range(n):
        v = unit_vector(field, n, j)
        if v in covered:
            continue

        krylov = EchelonForm(field, n)
        for k in range(n + 1):
            residual, relation = krylov.reduce(v, {k: field.one})
            if is_zero_vector(residual):
                break
            krylov.add(v, {k: field.one})
            covered.add(v)
            v = M.apply(v)
        else:
            raise AssertionError('no relation found below degree {}'.format(n + 1))

        result = dup_lcm(result, [relation.get(i, field.zero) for i in range(k, -1, -1)], field.domain)

    return Polynomial(field, list(reversed(result))).monic()


def factor_over_prime_field(f: Polynomial) -> List[Tuple[Polynomial, int]]:
    """Monic irreducible factors with multiplicities: square-free decomposition, then distinct-degree,
    then equal-degree splitting."""

    field = f.field
    if not field.is_prime_field:
        raise FactorizationUnsupported(field)
    if f.is_zero():
        raise ValueError('cannot factor the zero polynomial')

    p = field.p
    _, square_free = galoistools.gf_sqf_list(f.to_gf(), p, ZZ)

    factors = []
    for g, multiplicity in square_free:
        for h, degree in galoistools.gf_ddf_zassenhaus(g, p, ZZ):
            for irreducible in galoistools.gf_edf_zassenhaus(h, degree, p, ZZ):
                factors.append((Polynomial.from_gf(field, irreducible), multiplicity))

    factors.sort(key=lambda e: (e[0].sort_key(), e[1]))
    return factors


def irreducible_factors(f: Polynomial) -> List[Polynomial]:
    """Distinct monic irreducible factors that are available over the field of ``f``: all of them over a prime
    field, the linear ones over the rationals."""

    if f.field.is_prime_field:
        return [g for g, _ in factor_over_prime_field(f)]

    return [Polynomial(f.field, [-r, 1]) for r in rational_roots(f)]


def rational_roots(f: Polynomial) -> List[Any]:
    """All roots of ``f`` in its ground field, without multiplicity and sorted"""

    if f.is_zero():
        raise ValueError('the zero polynomial has every element as a root')

    field = f.field
    if field.is_prime_field:
        roots = [-g.coefficients[0] for g, _ in factor_over_prime_field(f) if g.degree == 1]
        return sorted(roots, key=field.to_int)

    fractions = [field.to_fraction(a) for a in f.coefficients]
    denominator = 1
    for c in fractions:
        denominator = denominator * c.denominator // math.gcd(denominator, c.denominator)
    integers = [int(c * denominator) for c in fractions]

    roots = []
    low = next(i for i, c in enumerate(integers) if c != 0)
    if low > 0:
        roots.append(field.zero)
    integers = integers[low:]

    if len(integers) > 1:
        candidates = set()
        for d in sympy.divisors(abs(integers[0])):
            for e in sympy.divisors(abs(integers[-1])):
                candidates.add(Fraction(d, e))
                candidates.add(Fraction(-d, e))
        for c in candidates:
            a = field(c.numerator, c.denominator)
            if not f(a):
                roots.append(a)

    return sorted(roots, key=field.to_fraction)
