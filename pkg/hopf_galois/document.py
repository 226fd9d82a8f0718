"""
Document file format: a versioned YAML file holding named algebras, Hopf algebras, comodule algebras and modules
over a common field, with sparse structure tensors.

.. code-block:: yaml

    version: 1
    field: Q
    objects:
      H:
        kind: hopf
        dim: 2
        labels: [e, g]
        mult: [[0, 0, 0, '1'], [0, 1, 1, '1'], [1, 0, 1, '1'], [1, 1, 0, '1']]
        coproduct: [[0, 0, 0, '1'], [1, 1, 1, '1']]
        counit: [[0, '1'], [1, '1']]
        antipode: [[0, 0, '1'], [1, 1, '1']]

Entries are ``[i, j, k, v]`` for ``e_i e_j ∋ v e_k``, ``[k, i, j, v]`` for ``Δ(e_k) ∋ v e_i ⊗ e_j``,
``[j, i, v]`` for ``S(e_j) ∋ v e_i``, ``[a, b, h, v]`` for ``α(e_a) ∋ v e_b ⊗ f_h`` and ``[i, c, r, v]`` for
``e_i·v_c ∋ v v_r``. Values are integers or ``"num/den"`` strings.
"""

import logging
from collections import OrderedDict
from typing import Any, Dict, Iterator, List, Sequence, Tuple, Union

import yaml

from hopf_galois.assoc import AlgModule, StructureAlgebra
from hopf_galois.coact import ComoduleAlgebra
from hopf_galois.exactla import FieldError, Matrix, ScalarField
from hopf_galois.hopf import HopfData

logger = logging.getLogger(__name__)

FORMAT_VERSION = 1
SUPPORTED_VERSIONS = (1, )

KINDS = ('algebra', 'hopf', 'comodule', 'module')

DocumentObject = Union[StructureAlgebra, HopfData, ComoduleAlgebra, AlgModule]


class DocumentError(Exception):
    def __init__(self, message: str, line: int = None, column: int = None, *args):
        self.message = message
        self.line = line
        self.column = column

        if line is not None:
            super().__init__('line {}, column {}: {}'.format(line, column, message), *args)
        else:
            super().__init__(message, *args)


def _error(node: yaml.Node, message: str) -> DocumentError:
    mark = node.start_mark if node is not None else None
    if mark is None:
        return DocumentError(message)
    return DocumentError(message, mark.line + 1, mark.column + 1)


class _Reader:
    """Walks the composed YAML nodes, so that every error can point to its location"""

    def __init__(self, field: ScalarField = None):
        self.field = field

    def mapping(self, node: yaml.Node, required: Sequence[str], optional: Sequence[str] = ()) \
            -> 'OrderedDict[str, yaml.Node]':

        if not isinstance(node, yaml.MappingNode):
            raise _error(node, 'expected a mapping')

        result = OrderedDict()
        for key_node, value_node in node.value:
            key = self.string(key_node)
            if key not in required and key not in optional:
                raise _error(key_node, 'unknown field "{}"'.format(key))
            if key in result:
                raise _error(key_node, 'duplicate field "{}"'.format(key))
            result[key] = value_node

        for key in required:
            if key not in result:
                raise _error(node, 'missing field "{}"'.format(key))

        return result

    def sequence(self, node: yaml.Node) -> List[yaml.Node]:
        if not isinstance(node, yaml.SequenceNode):
            raise _error(node, 'expected a list')
        return list(node.value)

    def string(self, node: yaml.Node) -> str:
        if not isinstance(node, yaml.ScalarNode):
            raise _error(node, 'expected a scalar')
        return node.value

    def integer(self, node: yaml.Node, lower: int = None, upper: int = None) -> int:
        if not isinstance(node, yaml.ScalarNode) or node.tag != 'tag:yaml.org,2002:int':
            raise _error(node, 'expected an integer')

        try:
            n = int(node.value)
        except ValueError:
            raise _error(node, 'expected a decimal integer')

        if (lower is not None and n < lower) or (upper is not None and n >= upper):
            raise _error(node, '{} out of range [{}, {})'.format(n, lower, upper))
        return n

    def value(self, node: yaml.Node) -> Any:
        if not isinstance(node, yaml.ScalarNode) or node.tag not in ('tag:yaml.org,2002:int', 'tag:yaml.org,2002:str'):
            raise _error(node, 'expected an integer or a "num/den" string')

        try:
            return self.field.parse(node.value)
        except FieldError as e:
            raise _error(node, str(e))

    def entries(self, node: yaml.Node, bounds: Sequence[int]) -> Iterator[Tuple[Tuple[int, ...], Any]]:
        """Sparse entries ``[index..., value]`` with the given index bounds, duplicates refused"""

        seen = set()
        for entry in self.sequence(node):
            parts = self.sequence(entry)
            if len(parts) != len(bounds) + 1:
                raise _error(entry, 'expected {} indices and a value'.format(len(bounds)))

            index = tuple(self.integer(p, 0, b) for p, b in zip(parts, bounds))
            if index in seen:
                raise _error(entry, 'duplicate entry {}'.format(list(index)))
            seen.add(index)

            yield index, self.value(parts[-1])


class Document:
    """Named objects over one field, in insertion order"""

    def __init__(self, field: ScalarField, version: int = FORMAT_VERSION):
        if version not in SUPPORTED_VERSIONS:
            raise DocumentError('unsupported version {}'.format(version))

        self.field = field
        self.version = version
        self.objects = OrderedDict()

    def __contains__(self, name: str) -> bool:
        return name in self.objects

    def __getitem__(self, name: str) -> DocumentObject:
        return self.objects[name]

    def __iter__(self) -> Iterator[str]:
        return iter(self.objects)

    def names(self, kind: str = None) -> List[str]:
        return [name for name, obj in self.objects.items() if kind is None or kind_of(obj) == kind]

    def get(self, name: str = None, kind: str = None) -> DocumentObject:
        """Object ``name``, or the last object of ``kind`` when no name is given"""

        if name is None:
            candidates = self.names(kind)
            if not candidates:
                raise DocumentError('no {} in the document'.format(kind or 'object'))
            name = candidates[-1]

        if name not in self.objects:
            raise DocumentError('no object named "{}"'.format(name))

        obj = self.objects[name]
        if kind is not None and kind_of(obj) != kind:
            raise DocumentError('"{}" is a {}, not a {}'.format(name, kind_of(obj), kind))
        return obj

    def _name_of(self, obj: Any) -> str:
        return next((n for n, o in self.objects.items() if o is obj), None)

    def _fresh(self, base: str) -> str:
        base = base or 'object'
        name, k = base, 1
        while name in self.objects:
            k += 1
            name = '{}_{}'.format(base, k)
        return name

    def add(self, name: str, obj: DocumentObject) -> str:
        """Add ``obj`` (the Hopf algebra of a comodule algebra is added first when missing), return its name"""

        if obj.field != self.field:
            raise DocumentError('object over {} in a document over {}'.format(obj.field, self.field))

        if isinstance(obj, ComoduleAlgebra) and self._name_of(obj.hopf) is None:
            self.add(self._fresh(obj.hopf.name or 'H'), obj.hopf)
        if isinstance(obj, AlgModule) and self._algebra_reference(obj.algebra) is None:
            raise DocumentError('the algebra of module "{}" is not in the document'.format(name))

        name = name if name not in self.objects else self._fresh(name)
        self.objects[name] = obj
        return name

    def _algebra_reference(self, algebra: StructureAlgebra) -> str:
        for n, o in self.objects.items():
            if o is algebra or getattr(o, 'algebra', None) is algebra:
                return n
        return None

    # -- output

    def serialize(self) -> Dict[str, Any]:
        objects = OrderedDict()
        for name, obj in self.objects.items():
            kind = kind_of(obj)
            block = OrderedDict(kind=kind)

            if kind == 'algebra':
                block.update(obj.serialize())
            elif kind == 'hopf':
                d = obj.serialize()
                block.update(d.pop('algebra'))
                block.update(d)
            elif kind == 'comodule':
                d = obj.serialize()
                block['hopf'] = self._name_of(obj.hopf)
                block.update(d['algebra'])
                block['coaction'] = d['coaction']
            else:
                block['algebra'] = self._algebra_reference(obj.algebra)
                block.update(obj.serialize())

            objects[name] = dict(block)

        return {'version': self.version, 'field': self.field.descriptor, 'objects': dict(objects)}

    def dump(self, width: int = 120) -> str:
        return yaml.dump(
            self.serialize(), Dumper=yaml.Dumper, default_flow_style=None, sort_keys=False, width=width,
            allow_unicode=True)

    # -- input

    @classmethod
    def parse(cls, text: str) -> 'Document':
        try:
            root = yaml.compose(text, Loader=yaml.Loader)
        except yaml.MarkedYAMLError as e:
            mark = e.problem_mark
            raise DocumentError(e.problem or 'invalid YAML', mark.line + 1 if mark else None,
                                mark.column + 1 if mark else None)
        except yaml.YAMLError as e:
            raise DocumentError(str(e))

        if root is None:
            raise DocumentError('empty document')

        reader = _Reader()
        top = reader.mapping(root, ['version', 'field', 'objects'])

        version = reader.integer(top['version'])
        if version not in SUPPORTED_VERSIONS:
            raise _error(top['version'], 'unsupported version {}'.format(version))

        try:
            field = ScalarField.from_descriptor(reader.string(top['field']))
        except FieldError as e:
            raise _error(top['field'], str(e))

        reader.field = field
        document = cls(field, version)

        objects = top['objects']
        if not isinstance(objects, yaml.MappingNode):
            raise _error(objects, 'expected a mapping of named objects')

        for key_node, block_node in objects.value:
            name = reader.string(key_node)
            if name in document:
                raise _error(key_node, 'duplicate object "{}"'.format(name))
            document.objects[name] = document._read_block(reader, name, block_node)

        logger.debug('parsed document with {} objects over {}'.format(len(document.objects), field))
        return document

    @classmethod
    def load(cls, path: str) -> 'Document':
        try:
            with open(path) as f:
                text = f.read()
        except OSError as e:
            raise DocumentError('cannot read {}: {}'.format(path, e.strerror))

        return cls.parse(text)

    def _read_algebra(self, reader: _Reader, fields: Dict[str, yaml.Node], name: str) -> StructureAlgebra:
        n = reader.integer(fields['dim'], 0)

        labels = None
        if 'labels' in fields:
            labels = [reader.string(x) for x in reader.sequence(fields['labels'])]
            if len(labels) != n:
                raise _error(fields['labels'], 'expected {} labels, got {}'.format(n, len(labels)))
            if len(set(labels)) != n:
                raise _error(fields['labels'], 'labels must be distinct')

        entries = {}
        for (i, j, k), v in reader.entries(fields['mult'], (n, n, n)):
            entries.setdefault(i * n + j, {})[k] = v

        return StructureAlgebra(self.field, n, Matrix(self.field, n * n, n, entries), labels, name)

    def _reference(self, reader: _Reader, node: yaml.Node, kinds: Sequence[str]) -> DocumentObject:
        target = reader.string(node)
        if target not in self.objects:
            raise _error(node, 'reference to an unknown (or later) object "{}"'.format(target))
        if kind_of(self.objects[target]) not in kinds:
            raise _error(node, '"{}" is a {}, expected {}'.format(
                target, kind_of(self.objects[target]), ' or '.join(kinds)))
        return self.objects[target]

    def _read_block(self, reader: _Reader, name: str, node: yaml.Node) -> DocumentObject:
        if not isinstance(node, yaml.MappingNode):
            raise _error(node, 'expected a mapping')

        kind_node = next((v for k, v in node.value if isinstance(k, yaml.ScalarNode) and k.value == 'kind'), None)
        if kind_node is None:
            raise _error(node, 'missing field "kind"')
        kind = reader.string(kind_node)

        if kind == 'algebra':
            fields = reader.mapping(node, ['kind', 'dim', 'mult'], ['labels'])
            return self._read_algebra(reader, fields, name)

        if kind == 'hopf':
            fields = reader.mapping(node, ['kind', 'dim', 'mult', 'coproduct', 'counit', 'antipode'], ['labels'])
            algebra = self._read_algebra(reader, fields, name)
            n = algebra.dim

            coproduct = {}
            for (k, i, j), v in reader.entries(fields['coproduct'], (n, n, n)):
                coproduct.setdefault(i * n + j, {})[k] = v

            counit = [self.field.zero] * n
            for (i, ), v in reader.entries(fields['counit'], (n, )):
                counit[i] = v

            antipode = {}
            for (j, i), v in reader.entries(fields['antipode'], (n, n)):
                antipode.setdefault(i, {})[j] = v

            return HopfData(
                algebra, Matrix(self.field, n * n, n, coproduct), counit, Matrix(self.field, n, n, antipode), name)

        if kind == 'comodule':
            fields = reader.mapping(node, ['kind', 'hopf', 'dim', 'mult', 'coaction'], ['labels'])
            hopf = self._reference(reader, fields['hopf'], ['hopf'])
            algebra = self._read_algebra(reader, fields, name)
            n, m = algebra.dim, hopf.dim

            coaction = {}
            for (a, b, h), v in reader.entries(fields['coaction'], (n, n, m)):
                coaction.setdefault(b * m + h, {})[a] = v

            return ComoduleAlgebra(hopf, algebra, Matrix(self.field, n * m, n, coaction), name)

        if kind == 'module':
            fields = reader.mapping(node, ['kind', 'algebra', 'dim', 'action'])
            target = self._reference(reader, fields['algebra'], KINDS[:3])
            algebra = target if isinstance(target, StructureAlgebra) else target.algebra
            d = reader.integer(fields['dim'], 0)

            action = [{} for _ in range(algebra.dim)]
            for (i, c, r), v in reader.entries(fields['action'], (algebra.dim, d, d)):
                action[i].setdefault(r, {})[c] = v

            return AlgModule(algebra, d, [Matrix(self.field, d, d, a) for a in action], name=name)

        raise _error(kind_node, 'unknown kind "{}" (expected one of {})'.format(kind, ', '.join(KINDS)))


def kind_of(obj: Any) -> str:
    if isinstance(obj, HopfData):
        return 'hopf'
    if isinstance(obj, ComoduleAlgebra):
        return 'comodule'
    if isinstance(obj, AlgModule):
        return 'module'
    if isinstance(obj, StructureAlgebra):
        return 'algebra'
    raise DocumentError('{} cannot be stored in a document'.format(type(obj).__name__))


def single(field: ScalarField, name: str, obj: DocumentObject, version: int = FORMAT_VERSION) -> Document:
    """Document holding ``obj`` (and the Hopf algebra it depends on)"""

    document = Document(field, version)
    document.add(name, obj)
    return document
