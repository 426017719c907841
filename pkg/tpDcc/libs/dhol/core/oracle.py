#! /usr/bin/env python
# -*- coding: utf-8 -*-

"""
Module that contains a finite model evaluator and an exhaustive countermodel search for simply typed HOL with
choice.

Booleans are Python booleans, elements of a base type of size n are the integers 0 .. n-1 and a function is the
tuple of its results over its domain in canonical order. Function types are full function spaces. Choice picks
the first element of its carrier satisfying the body, or the first element of the carrier when none does.
"""

from __future__ import print_function, division, absolute_import

import enum
import time
import logging
import itertools
from dataclasses import dataclass, field

from tpDcc.libs.dhol.core import consts, exceptions, syntax, printer

logger = logging.getLogger(consts.LIB_ID)

# largest carrier the evaluator accepts to enumerate
MAX_CARRIER_SIZE = 1000000


class SearchStatus(enum.Enum):
    FOUND = 'Found'
    NONE_UP_TO_BOUND = 'NoneUpToBound'
    NO_MODELS = 'NoModels'
    BUDGET_EXHAUSTED = 'BudgetExhausted'


@dataclass(frozen=True)
class SearchBudget(object):
    max_size: int = consts.DEFAULT_MAX_SIZE
    max_models: int = consts.DEFAULT_MAX_MODELS
    time_cap: float = consts.DEFAULT_TIME_CAP

    def __post_init__(self):
        if self.max_size < 1:
            raise ValueError('Maximum carrier size must be at least 1, got {}'.format(self.max_size))


@dataclass
class FiniteModel(object):
    """
    Carrier sizes of the base types and values of the constants. types gives the signature of the constants
    """

    sizes: dict
    types: dict
    interpretation: dict = field(default_factory=dict)

    def value(self, name):
        return self.interpretation[name]

    def rows(self, name):
        """
        Returns the graph of a constant as (arguments, result) rows, uncurrying function values
        :param name: str
        :return: list(tuple(tuple, object))
        """

        domain = _Domain(self.sizes)
        return list(domain.rows(self.interpretation[name], self.types[name]))

    def format_table(self):
        """
        Returns a human readable description of the model
        :return: str
        """

        lines = ['{} : {}'.format(name, ', '.join(str(i) for i in range(size))) for name, size in self.sizes.items()]
        for name, ty in self.types.items():
            if name not in self.interpretation:
                continue
            lines.append('{} : {}'.format(name, printer.format_type(ty)))
            for args, result in self.rows(name):
                head = ' '.join([name] + [_format_value(arg) for arg in args])
                lines.append('    {} = {}'.format(head, _format_value(result)))

        return '\n'.join(lines)

    def to_dict(self):
        constants = dict()
        for name, ty in self.types.items():
            if name not in self.interpretation:
                continue
            constants[name] = {
                'type': printer.format_type(ty),
                'table': [[_plain(arg) for arg in args] + [_plain(result)] for args, result in self.rows(name)]
            }

        return {'sizes': dict(self.sizes), 'constants': constants}


@dataclass
class SearchResult(object):
    status: SearchStatus
    model: FiniteModel = None
    assignment: dict = field(default_factory=dict)
    examined: int = 0
    elapsed: float = 0.0

    @property
    def found(self):
        return self.status == SearchStatus.FOUND

    def to_dict(self):
        return {
            'status': self.status.value,
            'examined': self.examined,
            'model': self.model.to_dict() if self.model else None,
            'assignment': {name: _plain(value) for name, value in self.assignment.items()},
        }


def _format_value(value):
    if isinstance(value, bool):
        return '$true' if value else '$false'
    if isinstance(value, tuple):
        return '[{}]'.format(' '.join(_format_value(item) for item in value))
    return str(value)


def _plain(value):
    if isinstance(value, tuple):
        return [_plain(item) for item in value]
    return value


# =================================================================================================================
# EVALUATION
# =================================================================================================================

class _Domain(object):
    """
    Carriers of the simple types over the given base type sizes
    """

    def __init__(self, sizes):
        self._sizes = sizes
        self._carriers = dict()

    def size(self, ty):
        if isinstance(ty, syntax.Bool):
            return 2
        if isinstance(ty, syntax.Base):
            if ty.args:
                raise exceptions.OracleError('Type "{}" is not simple'.format(printer.format_type(ty)))
            if ty.name not in self._sizes:
                raise exceptions.OracleError('No carrier for base type "{}"'.format(ty.name))
            return self._sizes[ty.name]
        if isinstance(ty, syntax.Pi):
            return self.size(ty.codomain) ** self.size(ty.domain)

        raise TypeError('Not a type: {!r}'.format(ty))

    def carrier(self, ty):
        key = syntax.canonical_type_key(ty)
        if key not in self._carriers:
            size = self.size(ty)
            if size > MAX_CARRIER_SIZE:
                raise exceptions.OracleError(
                    'Carrier of "{}" has {} elements, too many to enumerate'.format(printer.format_type(ty), size))
            if isinstance(ty, syntax.Bool):
                values = (False, True)
            elif isinstance(ty, syntax.Base):
                values = tuple(range(size))
            else:
                values = tuple(itertools.product(self.carrier(ty.codomain), repeat=self.size(ty.domain)))
            self._carriers[key] = values

        return self._carriers[key]

    def first(self, ty):
        if isinstance(ty, syntax.Bool):
            return False
        if isinstance(ty, syntax.Base):
            self.size(ty)
            return 0
        return tuple(self.first(ty.codomain) for _ in range(self.size(ty.domain)))

    def indexer(self, ty):
        """
        Returns the function mapping an element of the type to its position in the carrier
        """

        if isinstance(ty, syntax.Bool):
            return int
        if isinstance(ty, syntax.Base):
            return _identity
        size = self.size(ty.codomain)
        inner = self.indexer(ty.codomain)

        def _index(value):
            result = 0
            for item in value:
                result = result * size + inner(item)
            return result

        return _index

    def rows(self, value, ty):
        if not isinstance(ty, syntax.Pi):
            yield (), value
            return
        for arg, result in zip(self.carrier(ty.domain), value):
            for args, final in self.rows(result, ty.codomain):
                yield (arg, ) + args, final


def _identity(value):
    return value


class _Compiler(object):
    """
    Compiles simply typed terms into closures over an environment tuple. Constants are read from the
    interpretation dictionary when the closure runs
    """

    def __init__(self, domain, signature, interpretation):
        self._domain = domain
        self._signature = signature
        self._interpretation = interpretation

    def compile(self, t, scope=()):
        """
        :param t: Term
        :param scope: tuple(tuple(str, Type)), bound variables, innermost last
        :return: tuple(callable, Type)
        """

        if isinstance(t, syntax.Var):
            for position in range(len(scope) - 1, -1, -1):
                if scope[position][0] == t.name:
                    return (lambda env: env[position]), scope[position][1]
            if t.name not in self._signature:
                raise exceptions.OracleError('Unknown constant "{}"'.format(t.name))
            interpretation, name = self._interpretation, t.name
            return (lambda env: interpretation[name]), self._signature[name]

        if isinstance(t, syntax.App):
            fun, fun_type = self.compile(t.fun, scope)
            arg, _ = self.compile(t.arg, scope)
            if not isinstance(fun_type, syntax.Pi):
                raise exceptions.OracleError('Ill-typed application "{}"'.format(printer.format_term(t)))
            index = self._domain.indexer(fun_type.domain)
            return (lambda env: fun(env)[index(arg(env))]), fun_type.codomain

        if isinstance(t, syntax.Bot):
            return (lambda env: False), syntax.Bool()

        if isinstance(t, syntax.Implies):
            lhs, _ = self.compile(t.lhs, scope)
            rhs, _ = self.compile(t.rhs, scope)
            return (lambda env: not lhs(env) or rhs(env)), syntax.Bool()

        if isinstance(t, syntax.Eq):
            lhs, _ = self.compile(t.lhs, scope)
            rhs, _ = self.compile(t.rhs, scope)
            return (lambda env: lhs(env) == rhs(env)), syntax.Bool()

        if isinstance(t, syntax.BINDERS):
            if not syntax.is_simple(t.annot):
                raise exceptions.OracleError('Type "{}" is not simple'.format(printer.format_type(t.annot)))
            carrier = self._domain.carrier(t.annot)
            body, body_type = self.compile(t.body, scope + ((t.bound, t.annot), ))

            if isinstance(t, syntax.Forall):
                return (lambda env: all(body(env + (value, )) for value in carrier)), syntax.Bool()

            if isinstance(t, syntax.Lambda):
                closure = (lambda env: tuple(body(env + (value, )) for value in carrier))
                return closure, syntax.Pi('_', t.annot, body_type)

            def _choose(env):
                for value in carrier:
                    if body(env + (value, )):
                        return value
                return carrier[0]

            return _choose, t.annot

        raise TypeError('Not a term: {!r}'.format(t))


def eval(model, env, t):
    """
    Evaluates a term in a finite model. Names in env override the interpretation; all of them must be typed
    by the model signature
    :param model: FiniteModel
    :param env: dict(str, object)
    :param t: Term
    :return: object
    """

    interpretation = dict(model.interpretation)
    interpretation.update(env or dict())
    compiler = _Compiler(_Domain(model.sizes), model.types, interpretation)
    closure, _ = compiler.compile(t)

    return closure(())


# =================================================================================================================
# SEARCH
# =================================================================================================================

class _BudgetExhausted(Exception):
    pass


class _Search(object):
    def __init__(self, thy, conjecture, budget, context=None):
        context = context or syntax.Context()
        for decl in thy.base_types.values():
            if decl.arity:
                raise exceptions.OracleError('Dependent base type "{}" cannot be interpreted'.format(decl.name))

        self._budget = budget
        self._conjecture = conjecture
        self._base_names = list(thy.base_types)
        self._signature = dict(thy.constants)
        self._signature.update(context.constants)
        self._context_names = list(context.constants)
        self._axioms = [decl.term for decl in list(thy.axioms) + list(context.axioms)]

        mentioned = set(syntax.free_vars(conjecture))
        for axiom in self._axioms:
            mentioned.update(syntax.free_vars(axiom))
        self._order = [name for name in self._signature if name in mentioned]
        self._free = [name for name in self._signature if name not in mentioned]

        self.examined = 0
        self._started = 0.0

    def size_vectors(self):
        vectors = itertools.product(range(1, self._budget.max_size + 1), repeat=len(self._base_names))
        return sorted(vectors, key=lambda vector: (max(vector) if vector else 0, vector))

    def run(self):
        self._started = time.monotonic()
        exhausted = False
        any_model = False

        for vector in self.size_vectors():
            sizes = dict(zip(self._base_names, vector))
            try:
                outcome = self._search_sizes(sizes)
            except _BudgetExhausted:
                logger.info('Countermodel search ran out of budget at sizes {}'.format(sizes))
                exhausted = True
                break
            except exceptions.OracleError as exc:
                logger.debug('Skipping sizes {}: {}'.format(sizes, exc))
                exhausted = True
                continue
            if outcome is None:
                continue
            if isinstance(outcome, FiniteModel):
                return self._result(SearchStatus.FOUND, outcome)
            any_model = True

        if exhausted:
            return self._result(SearchStatus.BUDGET_EXHAUSTED)
        if any_model:
            return self._result(SearchStatus.NONE_UP_TO_BOUND)

        return self._result(SearchStatus.NO_MODELS)

    def _result(self, status, model=None):
        assignment = dict()
        if model is not None:
            for name in self._context_names:
                assignment[name] = model.interpretation.pop(name)
                model.types.pop(name)
        return SearchResult(
            status, model=model, assignment=assignment, examined=self.examined,
            elapsed=time.monotonic() - self._started)

    def _search_sizes(self, sizes):
        """
        Returns a countermodel, True when models of the axioms exist but none falsifies the conjecture, or None
        when the axioms have no model at these sizes
        """

        domain = _Domain(sizes)
        interpretation = dict()
        compiler = _Compiler(domain, self._signature, interpretation)
        carriers = [domain.carrier(self._signature[name]) for name in self._order]
        for name in self._free:
            interpretation[name] = domain.first(self._signature[name])

        positions = {name: index for index, name in enumerate(self._order)}
        checks = [list() for _ in range(len(self._order) + 1)]
        for axiom in self._axioms:
            closure, _ = compiler.compile(axiom)
            names = [positions[name] for name in syntax.free_vars(axiom) if name in positions]
            checks[max(names) + 1 if names else 0].append(closure)
        conjecture, _ = compiler.compile(self._conjecture)

        state = {'model': False}

        def _descend(depth):
            if not all(check(()) for check in checks[depth]):
                return None
            if depth == len(self._order):
                state['model'] = True
                if not conjecture(()):
                    return FiniteModel(dict(sizes), dict(self._signature), dict(interpretation))
                return None
            name = self._order[depth]
            for value in carriers[depth]:
                self._tick()
                interpretation[name] = value
                found = _descend(depth + 1)
                if found is not None:
                    return found
            return None

        found = _descend(0)
        if found is not None:
            return found

        return True if state['model'] else None

    def _tick(self):
        self.examined += 1
        if self.examined > self._budget.max_models:
            raise _BudgetExhausted()
        if self.examined % 1024 == 0 and time.monotonic() - self._started > self._budget.time_cap:
            raise _BudgetExhausted()


def countermodel(thy, conjecture, budget=None, context=None):
    """
    Searches, in deterministic order, for a finite model of the axioms of the theory (and the assumptions of the
    context) in which the conjecture is false. Carrier size vectors are tried by increasing maximum size
    :param thy: Theory, simply typed
    :param conjecture: Term
    :param budget: SearchBudget or None
    :param context: Context or None, its variables are searched for and returned as the assignment
    :return: SearchResult
    """

    search = _Search(thy, conjecture, budget or SearchBudget(), context=context)
    result = search.run()
    logger.debug('Countermodel search: {} after {} candidates'.format(result.status.value, result.examined))

    return result


def is_valid(thy, conjecture, budget=None, context=None):
    """
    Returns whether models of the axioms exist up to the budget bound and none of them is a countermodel. Axioms
    without a model up to the bound give False, as in bridge.discharge_one
    :return: bool
    """

    result = countermodel(thy, conjecture, budget=budget, context=context)
    return result.status == SearchStatus.NONE_UP_TO_BOUND
