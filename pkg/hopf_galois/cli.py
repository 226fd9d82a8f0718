"""
Command line interface: check axioms, analyze I-Galois objects, run the correspondence with homogeneous coactions,
write example documents and decompose algebras and modules. Reports are YAML documents on the standard output.
"""

import argparse
import logging
import random
import sys
from typing import Any, Dict, List, Optional

import yaml

from hopf_galois import __program_name__, __version__
from hopf_galois.assoc import (
    DEFAULT_SEED, DEFAULT_SPLIT_SEARCH_BUDGET, AlgebraError, AlgModule, StructureAlgebra, check_associativity,
    meataxe_decompose, wedderburn
)
from hopf_galois.coact import ComoduleAlgebra, ComoduleError, check_comodule_algebra, is_galois, smash
from hopf_galois.document import Document, DocumentError, single
from hopf_galois.examples import ExampleError, example
from hopf_galois.exactla import FieldError, ScalarField
from hopf_galois.hopf import AxiomReport, HopfData, HopfError, check_hopf
from hopf_galois.igalois import (
    IGaloisError, RouteMismatch, analyze, check_delta_invariance, check_eigen_relations, compare_nakayama_routes,
    connectivity, correspond_round_trip, homogeneous_from_galois, invariant_functionals, modular_data,
    sigma_prime_invariance, theta_explicit
)

logger = logging.getLogger(__name__)

DEFAULT_CONFIG = {
    'SEED': DEFAULT_SEED,
    'SPLIT_SEARCH_BUDGET': DEFAULT_SPLIT_SEARCH_BUDGET,
    'LOG_LEVEL': 'WARNING',
    'REPORT_WIDTH': 120,
    'DOCUMENT_VERSION': 1,
}

EXIT_PASS = 0
EXIT_NEGATIVE = 1
EXIT_INPUT = 2

# exceptions that express a negative verdict or an unmet precondition
NEGATIVE = (AlgebraError, HopfError, ComoduleError, IGaloisError)


class Context:
    """Parsed arguments and configuration of one invocation"""

    def __init__(self, args: argparse.Namespace, config: Dict[str, Any]):
        self.args = args
        self.config = config
        self.seed = args.seed if args.seed is not None else config['SEED']
        self.budget = args.split_search_budget if args.split_search_budget is not None \
            else config['SPLIT_SEARCH_BUDGET']

    def rng(self) -> random.Random:
        return random.Random(self.seed)

    def dump(self, data: Any) -> str:
        return yaml.dump(
            data, Dumper=yaml.Dumper, default_flow_style=None, sort_keys=False, width=self.config['REPORT_WIDTH'],
            allow_unicode=True)

    def emit(self, data: Any):
        sys.stdout.write(self.dump(data))

    def write_document(self, document: Document) -> Optional[Dict[str, Any]]:
        """Write to ``--output`` when given, otherwise return the serialized document for the report"""

        if self.args.output:
            with open(self.args.output, 'w') as f:
                f.write(document.dump(self.config['REPORT_WIDTH']))
            return None
        return document.serialize()


def _load(ctx: Context) -> Document:
    return Document.load(ctx.args.path)


# -- commands

def _check_one(obj: Any) -> AxiomReport:
    if isinstance(obj, HopfData):
        return check_hopf(obj)
    if isinstance(obj, ComoduleAlgebra):
        return check_comodule_algebra(obj)

    report = AxiomReport()
    if isinstance(obj, StructureAlgebra):
        report.record('associativity', check_associativity(obj))
    else:
        failure = obj.check()
        report.record('module', None if failure is None else (failure[0], ) + failure[1])
    return report


def cmd_check(ctx: Context) -> int:
    """Axioms of every object of the document (or of ``--object``)"""

    document = _load(ctx)
    names = [ctx.args.object] if ctx.args.object else list(document)

    results, passed = [], True
    for name in names:
        obj = document.get(name)
        report = _check_one(obj)
        passed = passed and report.passed
        results.append({'object': name, 'passed': report.passed, 'axioms': report.serialize()})

    ctx.emit({'passed': passed, 'objects': results})
    return EXIT_PASS if passed else EXIT_NEGATIVE


def _format_matrix(field: ScalarField, M: Any) -> List[List[str]]:
    return [[field.format(M[r, c]) for c in range(M.cols)] for r in range(M.rows)]


def cmd_analyze(ctx: Context) -> int:
    """Components, invariant functionals, modular data and Nakayama automorphism of an I-Galois object"""

    document = _load(ctx)
    A = document.get(ctx.args.object, kind='comodule')
    field = A.field

    G = analyze(A)
    F = invariant_functionals(G, ctx.args.choice)
    M = modular_data(G, F)

    notes, negative = [], False
    if not F.mu_is_identity:
        notes.append('the permutation mu is not the identity')
    if not M.nu_is_trivial(field):
        notes.append('nu is not trivial')

    try:
        compare_nakayama_routes(G)
        routes_agree = True
    except RouteMismatch as e:
        routes_agree, negative = False, True
        notes.append(str(e))

    checks = {
        'delta invariance': check_delta_invariance(G),
        'eigen relations': check_eigen_relations(G),
        'sigma prime invariance': sigma_prime_invariance(G, F),
    }
    for name, failure in checks.items():
        if failure is not None:
            negative = True
            notes.append('{} fails at {}'.format(name, failure))

    theta_explicit(G, F)

    ctx.emit({
        'object': ctx.args.object or document.names('comodule')[-1],
        'galois': True,
        'index_size': G.size,
        'components': G.component_dims(),
        'classes': connectivity(G),
        'mu': ' '.join(str(j) for j in F.mu),
        'mu_is_identity': F.mu_is_identity,
        'delta_A': A.algebra.format_element(M.delta_A),
        'nu': [field.format(v) for v in M.nu],
        'sigma_A': _format_matrix(field, M.sigma_A),
        'nakayama_routes_agree': routes_agree,
        'notes': notes,
    })

    return EXIT_NEGATIVE if negative else EXIT_PASS


def cmd_correspond(ctx: Context) -> int:
    """``to-galois``: connected I-Galois object of a homogeneous coaction, with the certified contexts;
    ``to-homogeneous``: the corner ``A_ii`` of a connected I-Galois object"""

    document = _load(ctx)
    A = document.get(ctx.args.object, kind='comodule')
    version = ctx.config['DOCUMENT_VERSION']

    if ctx.args.direction == 'to-galois':
        trip = correspond_round_trip(A, ctx.args.index, ctx.rng(), ctx.budget)
        B = trip.galois.base
        report = {
            'direction': 'to-galois',
            'index_size': trip.galois.size,
            'components': trip.galois.component_dims(),
            'contexts': trip.serialize(),
        }
        output = single(A.field, 'B', B, version)
    else:
        G = analyze(A)
        C = homogeneous_from_galois(G, ctx.args.index, ctx.rng(), ctx.budget)
        report = {
            'direction': 'to-homogeneous',
            'index': ctx.args.index,
            'dim': C.dim,
            'galois': is_galois(C),
        }
        output = single(A.field, 'C', C, version)

    serialized = ctx.write_document(output)
    if serialized is not None:
        report['document'] = serialized

    ctx.emit(report)
    return EXIT_PASS


def cmd_example(ctx: Context) -> int:
    field = ScalarField.from_descriptor(ctx.args.field)
    obj = example(ctx.args.words, field)
    document = single(field, obj.name or 'A', obj, ctx.config['DOCUMENT_VERSION'])

    if ctx.args.output:
        ctx.write_document(document)
    else:
        sys.stdout.write(document.dump(ctx.config['REPORT_WIDTH']))

    return EXIT_PASS


def cmd_decompose(ctx: Context) -> int:
    """Wedderburn form of an algebra (the smash product for a comodule algebra), or simple summands of a module"""

    document = _load(ctx)
    obj = document.get(ctx.args.object)

    if isinstance(obj, AlgModule):
        summands = meataxe_decompose(obj, ctx.rng(), ctx.budget)
        ctx.emit({'object': ctx.args.object, 'summands': [
            {'dim': S.dim, 'basis': _format_matrix(obj.field, S.embedding.transpose())} for S in summands]})
        return EXIT_PASS

    if isinstance(obj, ComoduleAlgebra):
        algebra = smash(obj).algebra
    elif isinstance(obj, HopfData):
        algebra = obj.algebra
    else:
        algebra = obj

    form = wedderburn(algebra, ctx.rng(), ctx.budget)
    ctx.emit({'object': ctx.args.object, 'dim': algebra.dim, 'split': form.is_split(), 'blocks': form.serialize()})
    return EXIT_PASS


# -- entry point

def get_arguments_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument('--seed', type=int, help='seed of the random element generator')
    common.add_argument('--split-search-budget', type=int, help='candidates tried per module split')
    common.add_argument('-o', '--output', help='write the produced document there')
    common.add_argument('-v', '--verbose', action='store_true', help='debug output on stderr')

    parser = argparse.ArgumentParser(prog=__program_name__, description=__doc__)
    parser.add_argument('--version', action='version', version='%(prog)s ' + __version__)
    subparsers = parser.add_subparsers(dest='command')
    subparsers.required = True

    p = subparsers.add_parser('check', parents=[common], help='check the axioms of the objects of a document')
    p.add_argument('path')
    p.add_argument('--object', help='only this object')
    p.set_defaults(func=cmd_check)

    p = subparsers.add_parser('analyze', parents=[common], help='analyze an I-Galois object')
    p.add_argument('path')
    p.add_argument('--object', help='comodule algebra to analyze (default: the last one)')
    p.add_argument('--choice', type=int, default=0, help='which complete invariant functional to use')
    p.set_defaults(func=cmd_analyze)

    p = subparsers.add_parser('correspond', parents=[common], help='homogeneous coactions <-> I-Galois objects')
    p.add_argument('path')
    p.add_argument('direction', choices=['to-galois', 'to-homogeneous'])
    p.add_argument('--object', help='comodule algebra (default: the last one)')
    p.add_argument('--index', type=int, default=0, help='index i of the corner')
    p.set_defaults(func=cmd_correspond)

    p = subparsers.add_parser('example', parents=[common], help='write an example document')
    p.add_argument('words', nargs='+', help='e.g. "sweedler", "group Z2", "free-gset Z2 4", "self group Z2"')
    p.add_argument('-f', '--field', default='Q', help='field descriptor, "Q" or "Fp:<p>"')
    p.set_defaults(func=cmd_example)

    p = subparsers.add_parser('decompose', parents=[common], help='Wedderburn form or meataxe decomposition')
    p.add_argument('path')
    p.add_argument('--object', help='object to decompose (default: the last one)')
    p.set_defaults(func=cmd_decompose)

    return parser


def main(argv: List[str] = None, config: Dict[str, Any] = None) -> int:
    config = dict(DEFAULT_CONFIG, **(config or {}))
    args = get_arguments_parser().parse_args(argv)

    logging.basicConfig(
        level=logging.DEBUG if args.verbose else config['LOG_LEVEL'], stream=sys.stderr,
        format='%(levelname)s:%(name)s: %(message)s')

    ctx = Context(args, config)

    try:
        return args.func(ctx)
    except (DocumentError, ExampleError, FieldError, OSError) as e:
        code = EXIT_INPUT
        error = e
    except NEGATIVE as e:
        code = EXIT_NEGATIVE
        error = e

    logger.debug('{} failed: {}'.format(args.command, error))
    ctx.emit({'error': type(error).__name__, 'message': str(error)})
    return code


if __name__ == '__main__':
    sys.exit(main())
