import itertools
from typing import Iterator, List, Sequence, Tuple

from hopf_galois.assoc import AlgModule, StructureAlgebra
from hopf_galois.exactla import Matrix, ScalarField, Subspace

Q = ScalarField(0)
F3 = ScalarField(3)
F5 = ScalarField(5)


def echelon_forms(p: int, dim: int) -> Iterator[Tuple[List[List[int]], Tuple[int, ...]]]:
    """Every reduced row echelon form with ``dim`` columns over ``F_p``, as integer rows with their pivots"""

    for rank in range(dim + 1):
        for pivots in itertools.combinations(range(dim), rank):
            free = [(k, c) for k, pc in enumerate(pivots) for c in range(pc + 1, dim) if c not in pivots]
            for values in itertools.product(range(p), repeat=len(free)):
                rows = [[0] * dim for _ in pivots]
                for k, pc in enumerate(pivots):
                    rows[k][pc] = 1
                for (k, c), v in zip(free, values):
                    rows[k][c] = v
                yield rows, pivots


def _dense(field: ScalarField, M: Matrix) -> List[List[int]]:
    rows = [[0] * M.cols for _ in range(M.rows)]
    for r, c, v in M.items():
        rows[r][c] = field.to_int(v)
    return rows


def _in_row_space(rows: List[List[int]], pivots: Tuple[int, ...], w: List[int], p: int) -> bool:
    for row, c in zip(rows, pivots):
        f = w[c]
        if f:
            w = [(a - f * b) % p for a, b in zip(w, row)]
    return not any(w)


def invariant_subspaces(field: ScalarField, dim: int, matrices: Sequence[Matrix]) -> List[Subspace]:
    """Brute force over a prime field: every subspace of ``F_p^dim`` mapped into itself by all the ``matrices``"""

    p = field.characteristic
    dense = [_dense(field, m) for m in matrices]

    found = []
    for rows, pivots in echelon_forms(p, dim):
        closed = all(
            _in_row_space(rows, pivots, [sum(a * b for a, b in zip(line, row)) % p for line in m], p)
            for m in dense for row in rows)
        if closed:
            found.append(Subspace(field, dim, [[field(x) for x in row] for row in rows], pivots))

    return found


def all_submodules(V: AlgModule) -> List[Subspace]:
    return invariant_subspaces(V.field, V.dim, V.action)


def is_nilpotent_ideal(D: StructureAlgebra, I: Subspace) -> bool:
    power = I
    for _ in range(D.dim + 1):
        if power.is_zero():
            return True
        power = Subspace.span(D.field, D.dim, [D.multiply(x, y) for x in power.basis for y in I.basis])
    return power.is_zero()


def maximal_nilpotent_ideal(D: StructureAlgebra) -> Subspace:
    """Brute force radical over a prime field: the largest two-sided ideal ``I`` with ``I^k = 0``"""

    matrices = D.left_matrices() + [D.right_matrix(D.basis_element(i)) for i in range(D.dim)]
    nilpotent = [I for I in invariant_subspaces(D.field, D.dim, matrices) if is_nilpotent_ideal(D, I)]

    largest = max(nilpotent, key=lambda I: I.dim)
    if not all(I <= largest for I in nilpotent):
        raise AssertionError('nilpotent ideals are not all inside {}'.format(largest))
    return largest


def matrix_algebra(field: ScalarField, n: int) -> StructureAlgebra:
    """``M_n(k)`` on the matrix units ``E_rc`` (index ``r·n + c``)"""

    def product(i: int, j: int) -> Sequence:
        r, c = divmod(i, n)
        s, t = divmod(j, n)
        v = [0] * (n * n)
        if c == s:
            v[r * n + t] = 1
        return v

    labels = ['E{}{}'.format(r, c) for r in range(n) for c in range(n)]
    return StructureAlgebra.from_products(field, n * n, product, labels, name='M{}'.format(n))


def dual_numbers(field: ScalarField) -> StructureAlgebra:
    """``k[x]/(x²)``"""

    def product(i: int, j: int) -> Sequence:
        v = [0, 0]
        if i + j < 2:
            v[i + j] = 1
        return v

    return StructureAlgebra.from_products(field, 2, product, ['1', 'x'], name='k[x]/x2')


def upper_triangular(field: ScalarField) -> StructureAlgebra:
    """Upper triangular ``2x2`` matrices on ``E00, E01, E11``"""

    units = [(0, 0), (0, 1), (1, 1)]

    def product(i: int, j: int) -> Sequence:
        (r, c), (s, t) = units[i], units[j]
        v = [0, 0, 0]
        if c == s:
            v[units.index((r, t))] = 1
        return v

    return StructureAlgebra.from_products(field, 3, product, ['E00', 'E01', 'E11'], name='T2')


def natural_module(field: ScalarField, n: int) -> AlgModule:
    """``k^n`` as a module over ``M_n(k)``"""

    M = matrix_algebra(field, n)
    action = [Matrix(field, n, n, {r: {c: field.one}}) for r in range(n) for c in range(n)]
    return AlgModule(M, n, action, name='k^{}'.format(n))
