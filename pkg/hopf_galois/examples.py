"""
Generators for the standard fixtures: group algebras and their duals, Sweedler's four-dimensional Hopf algebra,
cocycle-twisted group algebras, function algebras of free G-sets and self-coactions.
"""

import difflib
import itertools
import logging
import re
from typing import Any, Callable, Dict, List, Sequence, Union

from hopf_galois.assoc import StructureAlgebra, direct_sum_algebras
from hopf_galois.coact import ComoduleAlgebra
from hopf_galois.exactla import Matrix, ScalarField, Vector, zero_vector
from hopf_galois.hopf import HopfData, dual_hopf

logger = logging.getLogger(__name__)


class ExampleError(Exception):
    pass


class NotAGroup(ExampleError):
    def __init__(self, reason: str, *args):
        super().__init__('table is not a group: {}'.format(reason), *args)


class NotACocycle(ExampleError):
    def __init__(self, where: tuple, *args):
        self.where = where
        super().__init__('2-cocycle identity fails at {}'.format(where), *args)


class NotFree(ExampleError):
    def __init__(self, point: int, element: int, *args):
        self.point = point
        self.element = element
        super().__init__('action is not free: point {} is fixed by element {}'.format(point, element), *args)


class CharacteristicTwo(ExampleError):
    def __init__(self, *args):
        super().__init__('Sweedler\'s algebra needs a field of characteristic different from 2', *args)


class UnknownExample(ExampleError):
    def __init__(self, name: str, suggestions: List[str] = (), *args):
        self.name = name
        self.suggestions = list(suggestions)
        msg = 'unknown example {}'.format(repr(name))
        if self.suggestions:
            msg += ' (did you mean {}?)'.format(', '.join(self.suggestions))
        super().__init__(msg, *args)


# -- groups

class GroupTable:
    """Finite group given by its multiplication table: ``table[i][j]`` is the index of ``g_i g_j``"""

    def __init__(self, table: Sequence[Sequence[int]], labels: Sequence[str] = None, name: str = ''):
        self.table = [list(row) for row in table]
        self.order = len(self.table)
        self.labels = list(labels) if labels is not None else ['g{}'.format(i) for i in range(self.order)]
        self.name = name

        self.check()

        self.identity = next(
            e for e in range(self.order) if all(self.table[e][g] == g for g in range(self.order)))
        self._inverses = [next(h for h in range(self.order) if self.table[g][h] == self.identity)
                          for g in range(self.order)]

    def check(self):
        n = self.order
        if n == 0:
            raise NotAGroup('empty table')
        if len(self.labels) != n:
            raise NotAGroup('{} labels for {} elements'.format(len(self.labels), n))

        for row in self.table:
            if len(row) != n or any(not 0 <= x < n for x in row):
                raise NotAGroup('table is not closed')

        for a, b, c in itertools.product(range(n), repeat=3):
            if self.table[self.table[a][b]][c] != self.table[a][self.table[b][c]]:
                raise NotAGroup('not associative at {}'.format((a, b, c)))

        identities = [e for e in range(n) if all(self.table[e][g] == g == self.table[g][e] for g in range(n))]
        if not identities:
            raise NotAGroup('no identity')

        e = identities[0]
        for g in range(n):
            if not any(self.table[g][h] == e == self.table[h][g] for h in range(n)):
                raise NotAGroup('{} has no inverse'.format(self.labels[g]))

    def multiply(self, a: int, b: int) -> int:
        return self.table[a][b]

    def inverse(self, a: int) -> int:
        return self._inverses[a]

    def __repr__(self) -> str:
        return '<GroupTable {} of order {}>'.format(self.name, self.order)


def cyclic(n: int) -> GroupTable:
    if n < 1:
        raise NotAGroup('order {}'.format(n))

    labels = ['e', 'g'] + ['g{}'.format(k) for k in range(2, n)]
    return GroupTable([[(i + j) % n for j in range(n)] for i in range(n)], labels[:n], name='Z{}'.format(n))


def klein_four() -> GroupTable:
    """``Z2 x Z2``, with ``a`` and ``b`` the two generators (indices are bit masks)"""

    return GroupTable([[i ^ j for j in range(4)] for i in range(4)], ['e', 'a', 'b', 'ab'], name='V4')


def _cycle_notation(perm: Sequence[int]) -> str:
    seen, cycles = set(), []
    for start in range(len(perm)):
        if start in seen or perm[start] == start:
            continue
        cycle, x = [], start
        while x not in seen:
            seen.add(x)
            cycle.append(str(x))
            x = perm[x]
        cycles.append('({})'.format(''.join(cycle)))

    return ''.join(cycles) or 'e'


def symmetric_group(n: int = 3) -> GroupTable:
    """Permutations of ``{0, ..., n-1}`` in lexicographic order, with ``(στ)(x) = σ(τ(x))``"""

    perms = list(itertools.permutations(range(n)))
    index = {p: i for i, p in enumerate(perms)}
    table = [[index[tuple(s[t[x]] for x in range(n))] for t in perms] for s in perms]

    return GroupTable(table, [_cycle_notation(p) for p in perms], name='S{}'.format(n))


def group_table(name: str) -> GroupTable:
    """Lookup by name: ``Z<n>``, ``V4`` or ``S3``"""

    match = re.fullmatch(r'Z(\d+)', name)
    if match:
        return cyclic(int(match.group(1)))
    if name == 'V4':
        return klein_four()
    if name == 'S3':
        return symmetric_group(3)

    raise UnknownExample(name, difflib.get_close_matches(name, ['Z2', 'Z3', 'V4', 'S3'], n=3))


# -- Hopf algebras

def group_algebra(G: GroupTable, field: ScalarField) -> HopfData:
    """``kG`` with ``Δ(g) = g ⊗ g``, ``ε(g) = 1`` and ``S(g) = g⁻¹``"""

    n = G.order

    def product(i: int, j: int) -> Vector:
        r = zero_vector(field, n)
        r[G.multiply(i, j)] = field.one
        return r

    algebra = StructureAlgebra.from_products(field, n, product, G.labels, name='k{}'.format(G.name))
    coproduct = Matrix(field, n * n, n, {g * n + g: {g: field.one} for g in range(n)})
    antipode = Matrix(field, n, n, {G.inverse(g): {g: field.one} for g in range(n)})

    return HopfData(algebra, coproduct, [field.one] * n, antipode, name=algebra.name)


def dual_group_algebra(G: GroupTable, field: ScalarField) -> HopfData:
    """``k^G`` on the basis of the ``δ_g``"""

    H = dual_hopf(group_algebra(G, field))
    H.name = H.algebra.name = 'k^{}'.format(G.name)
    return H


def _sweedler_index(a: int, b: int) -> int:
    return a + 2 * b


def sweedler_h4(field: ScalarField) -> HopfData:
    """Sweedler's algebra on the basis ``1, g, x, gx``: ``g² = 1``, ``x² = 0``, ``xg = -gx``, ``g`` grouplike and
    ``Δ(x) = x ⊗ 1 + g ⊗ x``, ``S(x) = -gx``"""

    if field.characteristic == 2:
        raise CharacteristicTwo()

    one, zero = field.one, field.zero

    # e_{a+2b} = g^a x^b
    def product(i: int, j: int) -> Vector:
        a, b = i % 2, i // 2
        c, d = j % 2, j // 2
        r = zero_vector(field, 4)
        if b + d < 2:
            r[_sweedler_index((a + c) % 2, b + d)] = -one if b * c else one
        return r

    algebra = StructureAlgebra.from_products(field, 4, product, ['1', 'g', 'x', 'gx'], name='H4')

    # Δ(gx) = gx ⊗ g + 1 ⊗ gx
    coproduct = Matrix.from_columns(field, [
        [one if t == 0 else zero for t in range(16)],
        [one if t == 5 else zero for t in range(16)],
        [one if t in (8, 6) else zero for t in range(16)],
        [one if t in (13, 3) else zero for t in range(16)],
    ], 16)

    antipode = Matrix(field, 4, 4, {0: {0: one}, 1: {1: one}, 3: {2: -one}, 2: {3: one}})

    return HopfData(algebra, coproduct, [one, one, zero, zero], antipode, name='H4')


# -- comodule algebras

def cocycle_table(G: GroupTable, name: str, field: ScalarField) -> List[List[Any]]:
    """Named 2-cocycles: ``trivial``, ``sign`` (on ``Z2``, ``σ(g, g) = -1``) and ``bilinear`` (on ``V4``,
    ``σ(x, y) = (-1)^(x_1 y_2)``)"""

    n = G.order
    if name == 'trivial':
        return [[field.one] * n for _ in range(n)]
    if name == 'sign' and n == 2:
        return [[field.one, field.one], [field.one, -field.one]]
    if name == 'bilinear' and n == 4:
        return [[-field.one if (i & 1) and (j & 2) else field.one for j in range(n)] for i in range(n)]

    raise UnknownExample('{} on {}'.format(name, G.name))


def cocycle_twisted_group_algebra(
        G: GroupTable, cocycle: Sequence[Sequence[Any]], field: ScalarField, name: str = '') -> ComoduleAlgebra:
    """``u_g u_h = σ(g, h) u_gh`` with the grading coaction ``u_g -> u_g ⊗ g`` over ``kG``"""

    n = G.order
    sigma = [[field.convert(v) for v in row] for row in cocycle]

    if len(sigma) != n or any(len(row) != n for row in sigma):
        raise NotACocycle(('shape', ))
    for g, h in itertools.product(range(n), repeat=2):
        if not sigma[g][h]:
            raise NotACocycle((g, h))
    for g, h, k in itertools.product(range(n), repeat=3):
        if sigma[g][h] * sigma[G.multiply(g, h)][k] != sigma[h][k] * sigma[g][G.multiply(h, k)]:
            raise NotACocycle((g, h, k))

    def product(i: int, j: int) -> Vector:
        r = zero_vector(field, n)
        r[G.multiply(i, j)] = sigma[i][j]
        return r

    H = group_algebra(G, field)
    name = name or 'k_sigma{}'.format(G.name)
    algebra = StructureAlgebra.from_products(field, n, product, ['u_{}'.format(lb) for lb in G.labels], name=name)
    coaction = Matrix(field, n * n, n, {g * n + g: {g: field.one} for g in range(n)})

    return ComoduleAlgebra(H, algebra, coaction, name=name)


def regular_gset(G: GroupTable, copies: int) -> List[List[int]]:
    """Action table of ``G`` on ``copies`` copies of itself by right multiplication, point ``c·|G| + h``"""

    n = G.order
    return [[(x // n) * n + G.multiply(x % n, g) for g in range(n)] for x in range(copies * n)]


def free_gset_function_algebra(
        G: GroupTable, action: Sequence[Sequence[int]], field: ScalarField, name: str = '') -> ComoduleAlgebra:
    """``k^X`` for a free right ``G``-set ``X`` (``action[x][g] = x·g``), with the coaction
    ``α(δ_x) = Σ_{y·g = x} δ_y ⊗ δ_g`` over ``k^G``"""

    n, size = G.order, len(action)

    for x in range(size):
        if len(action[x]) != n or any(not 0 <= y < size for y in action[x]):
            raise ExampleError('action table has a bad row {}'.format(x))
        if action[x][G.identity] != x:
            raise ExampleError('identity does not act trivially on {}'.format(x))
        for g, h in itertools.product(range(n), repeat=2):
            if action[action[x][g]][h] != action[x][G.multiply(g, h)]:
                raise ExampleError('not a right action at {}'.format((x, g, h)))
        for g in range(n):
            if g != G.identity and action[x][g] == x:
                raise NotFree(x, g)

    def product(i: int, j: int) -> Vector:
        r = zero_vector(field, size)
        if i == j:
            r[i] = field.one
        return r

    H = dual_group_algebra(G, field)
    name = name or 'k^X over k^{}'.format(G.name)
    algebra = StructureAlgebra.from_products(field, size, product, ['d{}'.format(x) for x in range(size)], name=name)

    entries = {}
    for y in range(size):
        for g in range(n):
            entries.setdefault(y * n + g, {})[action[y][g]] = field.one

    return ComoduleAlgebra(H, algebra, Matrix(field, size * n, size, entries), name=name)


def self_coaction(H: HopfData) -> ComoduleAlgebra:
    """``(H, Δ)``"""

    return ComoduleAlgebra(H, H.algebra, H.coproduct, name=H.name)


def ground_algebra(field: ScalarField) -> StructureAlgebra:
    return StructureAlgebra.from_products(field, 1, lambda i, j: [field.one], ['1'], name='k')


def trivial_coaction(D: StructureAlgebra, H: HopfData) -> ComoduleAlgebra:
    """``a -> a ⊗ 1``"""

    m, unit = H.dim, H.unit()
    entries = {}
    for a in range(D.dim):
        for h, c in enumerate(unit):
            if c:
                entries[a * m + h] = {a: c}

    return ComoduleAlgebra(H, D, Matrix(D.field, D.dim * m, D.dim, entries), name='{} (trivial)'.format(D.name))


def direct_sum(A: ComoduleAlgebra, B: ComoduleAlgebra, name: str = '') -> ComoduleAlgebra:
    """Block-diagonal ``A ⊕ B`` with both coactions"""

    if A.hopf is not B.hopf:
        raise ExampleError('direct sum of comodule algebras over different Hopf algebras')

    m, n = A.hopf.dim, A.dim + B.dim
    name = name or '{} + {}'.format(A.name, B.name)
    algebra = direct_sum_algebras(A.algebra, B.algebra, name=name)

    entries = {}
    for shift, C in ((0, A), (A.dim, B)):
        for j in range(C.dim):
            for a, h, c in C.sparse_alpha(j):
                entries.setdefault((shift + a) * m + h, {})[shift + j] = c

    return ComoduleAlgebra(A.hopf, algebra, Matrix(A.field, n * m, n, entries), name=name)


# -- lookup by name

HOPF_EXAMPLES: Dict[str, Callable[..., HopfData]] = {
    'group': lambda field, G: group_algebra(group_table(G), field),
    'dual-group': lambda field, G: dual_group_algebra(group_table(G), field),
    'sweedler': lambda field: sweedler_h4(field),
}


def _gset(field: ScalarField, G: str, size: str) -> ComoduleAlgebra:
    table = group_table(G)
    copies, rest = divmod(int(size), table.order)
    if rest or not copies:
        raise ExampleError('a free {}-set has a size multiple of {}'.format(G, table.order))
    return free_gset_function_algebra(table, regular_gset(table, copies), field)


def _cocycle(field: ScalarField, G: str, name: str) -> ComoduleAlgebra:
    table = group_table(G)
    return cocycle_twisted_group_algebra(
        table, cocycle_table(table, name, field), field, name='k_{}{}'.format(name, table.name))


COMODULE_EXAMPLES: Dict[str, Callable[..., ComoduleAlgebra]] = {
    'cocycle': _cocycle,
    'free-gset': _gset,
    'self': lambda field, *words: self_coaction(hopf_example(list(words), field)),
    'trivial': lambda field, *words: trivial_coaction(ground_algebra(field), hopf_example(list(words), field)),
}


def _lookup(registry: Dict[str, Callable], words: List[str], field: ScalarField) -> Any:
    if not words:
        raise UnknownExample('', sorted(registry))

    name, params = words[0], words[1:]
    if name not in registry:
        raise UnknownExample(name, difflib.get_close_matches(name, registry.keys(), n=3))

    try:
        return registry[name](field, *params)
    except (TypeError, ValueError):
        raise ExampleError('bad parameters for {}: {}'.format(name, ' '.join(params) or '(none)'))


def hopf_example(words: List[str], field: ScalarField) -> HopfData:
    """E.g. ``['group', 'Z2']``, ``['dual-group', 'S3']`` or ``['sweedler']``"""

    return _lookup(HOPF_EXAMPLES, words, field)


def example(words: List[str], field: ScalarField) -> Union[HopfData, ComoduleAlgebra]:
    """Hopf algebra or comodule algebra described by ``words``, e.g. ``['free-gset', 'Z2', '4']``"""

    if words and words[0] in COMODULE_EXAMPLES:
        obj = _lookup(COMODULE_EXAMPLES, words, field)
    elif words and words[0] in HOPF_EXAMPLES:
        obj = _lookup(HOPF_EXAMPLES, words, field)
    else:
        raise UnknownExample(
            ' '.join(words), difflib.get_close_matches(
                words[0] if words else '', list(HOPF_EXAMPLES) + list(COMODULE_EXAMPLES), n=3))

    logger.debug('built example {}'.format(obj))
    return obj
