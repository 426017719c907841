#! /usr/bin/env python
# -*- coding: utf-8 -*-

"""
Module that contains the TPTP THF printer and a reader for the problems it prints.

Choice is printed with the indefinite description binder @+. Formulas are fully parenthesized. Derived
connectives can be printed back as sugar (~, $true, &, |, ?, !=); the reader expands them again.
"""

from __future__ import print_function, division, absolute_import

import re
import logging
from dataclasses import dataclass, field

import pyparsing as pp

from tpDcc.libs.dhol.core import consts, exceptions, syntax, erasure, kernel

logger = logging.getLogger(consts.LIB_ID)

_SYMBOL_REGEX = re.compile(r'^[a-z][A-Za-z0-9_]*$')


class Mangler(object):
    """
    Injective renaming of our identifiers into THF atomic words (constants, types, formula names) and THF
    variables. Raises ThfError when two different names would be printed the same way
    """

    def __init__(self):
        self._symbols = dict()
        self._labels = dict()
        self._variables = dict()
        self._reverse_symbols = dict()
        self._reverse_labels = dict()
        self._reverse_variables = dict()

    @staticmethod
    def _clean(name):
        return name.replace(consts.PER_SUFFIX, 'STAR').replace("'", 'PRIME')

    def _register(self, name, mangled, table, reverse, what):
        known = reverse.get(mangled)
        if known is not None and known != name:
            raise exceptions.ThfError(
                'THF {} name collision: "{}" and "{}" both become "{}"'.format(what, known, name, mangled))
        table[name] = mangled
        reverse[mangled] = name
        return mangled

    def symbol(self, name):
        if name in self._symbols:
            return self._symbols[name]
        mangled = self._clean(name)
        if mangled[0].isdigit():
            mangled = 'num{}'.format(mangled)
        elif not _SYMBOL_REGEX.match(mangled):
            mangled = 'c{}'.format(mangled)
        return self._register(name, mangled, self._symbols, self._reverse_symbols, 'symbol')

    def label(self, name):
        if name in self._labels:
            return self._labels[name]
        mangled = self._clean(name)
        if not _SYMBOL_REGEX.match(mangled):
            mangled = 'f{}'.format(mangled)
        return self._register(name, mangled, self._labels, self._reverse_labels, 'formula')

    def variable(self, name):
        if name in self._variables:
            return self._variables[name]
        mangled = self._clean(name)
        if mangled[0].isalpha():
            mangled = mangled[0].upper() + mangled[1:]
        else:
            mangled = 'V{}'.format(mangled)
        return self._register(name, mangled, self._variables, self._reverse_variables, 'variable')

    def demangle_symbol(self, mangled):
        return self._reverse_symbols.get(mangled, mangled)

    def demangle_label(self, mangled):
        return self._reverse_labels.get(mangled, mangled)

    def demangle_variable(self, mangled):
        return self._reverse_variables.get(mangled, mangled)


@dataclass
class ThfProblem(object):
    name: str
    header: list = field(default_factory=list)
    formulas: list = field(default_factory=list)
    conjecture: str = None
    mangler: Mangler = field(default=None, compare=False, repr=False)

    @property
    def text(self):
        lines = ['% {}'.format(line) for line in self.header]
        lines.extend(self.formulas)
        if self.conjecture is not None:
            lines.append(self.conjecture)
        return '\n'.join(lines) + '\n'


# =================================================================================================================
# PRINTER
# =================================================================================================================

class _ThfPrinter(object):
    def __init__(self, mangler, sugar=True):
        self._mangler = mangler
        self._sugar = sugar

    def type(self, ty):
        if isinstance(ty, syntax.Bool):
            return '$o'
        if isinstance(ty, syntax.Base):
            if ty.args:
                raise exceptions.ThfError('Dependent type "{}" cannot be printed in THF'.format(ty.name))
            return self._mangler.symbol(ty.name)
        if isinstance(ty, syntax.Pi):
            if not syntax.is_arrow(ty):
                raise exceptions.ThfError('Dependent function type cannot be printed in THF')
            return '({} > {})'.format(self.type(ty.domain), self.type(ty.codomain))

        raise TypeError('Not a type: {!r}'.format(ty))

    def term(self, t, bound=frozenset()):
        if isinstance(t, syntax.Var):
            return self._mangler.variable(t.name) if t.name in bound else self._mangler.symbol(t.name)
        if isinstance(t, syntax.Bot):
            return '$false'
        if isinstance(t, syntax.App):
            return '({} @ {})'.format(self.term(t.fun, bound), self.term(t.arg, bound))
        if isinstance(t, syntax.Eq):
            return '({} = {})'.format(self.term(t.lhs, bound), self.term(t.rhs, bound))
        if isinstance(t, syntax.Implies):
            if self._sugar:
                sugared = self._sugared(t, bound)
                if sugared is not None:
                    return sugared
            return '({} => {})'.format(self.term(t.lhs, bound), self.term(t.rhs, bound))
        if isinstance(t, syntax.Lambda):
            return self._binder('^', t.bound, t.annot, t.body, bound)
        if isinstance(t, syntax.Forall):
            return self._binder('!', t.bound, t.annot, t.body, bound)
        if isinstance(t, syntax.Choice):
            return self._binder('@+', t.bound, t.annot, t.body, bound)

        raise TypeError('Not a term: {!r}'.format(t))

    def _sugared(self, t, bound):
        if isinstance(t.rhs, syntax.Bot):
            inner = t.lhs
            if isinstance(inner, syntax.Bot):
                return '$true'
            if isinstance(inner, syntax.Forall) and _is_negation(inner.body):
                return self._binder('?', inner.bound, inner.annot, inner.body.lhs, bound)
            if isinstance(inner, syntax.Implies) and _is_negation(inner.rhs):
                return '({} & {})'.format(self.term(inner.lhs, bound), self.term(inner.rhs.lhs, bound))
            if isinstance(inner, syntax.Eq):
                return '({} != {})'.format(self.term(inner.lhs, bound), self.term(inner.rhs, bound))
            return '(~ {})'.format(self.term(inner, bound))
        if _is_negation(t.lhs):
            return '({} | {})'.format(self.term(t.lhs.lhs, bound), self.term(t.rhs, bound))
        return None

    def _binder(self, symbol, name, annot, body, bound):
        return '({}[{}:{}]: {})'.format(
            symbol, self._mangler.variable(name), self.type(annot), self.term(body, bound | {name}))


def _is_negation(t):
    return isinstance(t, syntax.Implies) and isinstance(t.rhs, syntax.Bot)


def emit_thf(source, name, conjecture=None, sugar=True, mangler=None):
    """
    Prints an erased theory (with an optional conjecture) or an obligation as a THF problem
    :param source: ErasedTheory or Obligation
    :param name: str, problem name
    :param conjecture: Term or None, only used with an ErasedTheory
    :param sugar: bool, whether derived connectives are printed back as sugar
    :param mangler: Mangler or None
    :return: ThfProblem
    """

    mangler = mangler or Mangler()
    header = ['Problem : {}'.format(name)]
    if isinstance(source, kernel.Obligation):
        header.append('Obligation : {} {} {}'.format(source.id, source.kind.value, source.origin))
        declarations = list(source.hol_theory) + list(source.hol_context)
        conjecture = source.conjecture
    else:
        declarations = list(source.hol_theory) + list(source.hol_context)
    header.append('Generated by {}'.format(consts.LIB_ID))

    printer = _ThfPrinter(mangler, sugar=sugar)
    problem = ThfProblem(name, header=header, mangler=mangler)
    declared = set()

    def _check_symbols(term, where):
        for symbol in syntax.free_vars(term):
            if symbol not in declared:
                raise exceptions.ThfError('Symbol "{}" used in {} is not declared'.format(symbol, where))

    for decl in declarations:
        if isinstance(decl, syntax.BaseTypeDecl):
            if decl.arity:
                raise exceptions.ThfError('Dependent base type "{}" cannot be printed in THF'.format(decl.name))
            symbol = mangler.symbol(decl.name)
            problem.formulas.append('thf({}, type, {}: $tType).'.format(
                mangler.label('{}_type'.format(decl.name)), symbol))
            declared.add(decl.name)
        elif isinstance(decl, syntax.ConstDecl):
            problem.formulas.append('thf({}, type, {}: {}).'.format(
                mangler.label('{}_decl'.format(decl.name)), mangler.symbol(decl.name), printer.type(decl.type)))
            declared.add(decl.name)
        else:
            _check_symbols(decl.term, 'axiom "{}"'.format(decl.label))
            problem.formulas.append('thf({}, axiom, {}).'.format(mangler.label(decl.label), printer.term(decl.term)))

    if conjecture is not None:
        _check_symbols(conjecture, 'the conjecture')
        problem.conjecture = 'thf({}, conjecture, {}).'.format(mangler.label('goal'), printer.term(conjecture))

    logger.debug('Emitted THF problem "{}" ({} formulas)'.format(name, len(problem.formulas)))

    return problem


def emit_erased(thy, name, conjecture=None, variant=erasure.ErasureVariant.STRONG, sugar=True, mode=None):
    """
    Elaborates, erases and prints a DHOL theory with its conjecture
    :param thy: Theory
    :param name: str
    :param conjecture: Term or None
    :param variant: ErasureVariant
    :param sugar: bool
    :param mode: Mode or None, checking mode. Defaults to the mode paired with the variant
    :return: ThfProblem
    """

    if mode is None:
        mode = kernel.Mode.STRONG_EPSILON if variant == erasure.ErasureVariant.STRONG else kernel.Mode.WEAK_EPSILON
    report = kernel.check_theory(thy, conjecture, mode=mode, discharge_locally=False)
    if not report.well_formed:
        raise exceptions.ThfError('Cannot print an ill-formed theory: {}'.format(report.diagnostics[0]))
    erased = erasure.erase_theory(report.theory, variant=variant)
    hol_conjecture = erasure.erase_term(report.conjecture, variant) if report.conjecture is not None else None

    return emit_thf(erased, name, conjecture=hol_conjecture, sugar=sugar)


# =================================================================================================================
# READER
# =================================================================================================================

def _build_grammar():
    lpar, rpar, lbrack, rbrack, colon, comma, dot = map(pp.Suppress, '()[]:,.')
    symbol = pp.Regex(r'[a-z][A-Za-z0-9_]*')
    variable = pp.Regex(r'[A-Z][A-Za-z0-9_]*')

    type_ = pp.Forward()
    type_ <<= pp.MatchFirst([
        pp.Literal('$o'),
        symbol.copy().set_parse_action(lambda toks: ('base', toks[0])),
        pp.Group(lpar + type_ + pp.Suppress('>') + type_ + rpar).set_parse_action(lambda toks: ('arrow', ) + tuple(toks[0])),
    ])

    term = pp.Forward()
    binder = (
        pp.one_of('^ ! ? @+') + lbrack + variable + colon + type_ + rbrack + colon + term
    ).set_parse_action(lambda toks: ('binder', toks[0], toks[1], toks[2], toks[3]))
    negation = (pp.Suppress('~') + term).set_parse_action(lambda toks: ('not', toks[0]))
    binary = (term + pp.one_of('@ => != = & |') + term).set_parse_action(
        lambda toks: ('binary', toks[1], toks[0], toks[2]))
    term <<= pp.MatchFirst([
        pp.Literal('$false').set_parse_action(lambda: ('false', )),
        pp.Literal('$true').set_parse_action(lambda: ('true', )),
        variable.copy().set_parse_action(lambda toks: ('var', toks[0])),
        symbol.copy().set_parse_action(lambda toks: ('sym', toks[0])),
        pp.Group(lpar + pp.MatchFirst([binder, negation, binary]) + rpar).set_parse_action(lambda toks: toks[0][0]),
    ])

    type_decl = symbol + colon + pp.MatchFirst([pp.Literal('$tType'), type_])
    entry = pp.Group(
        pp.Suppress(pp.Keyword('thf')) + lpar + symbol + comma + pp.MatchFirst([
            pp.Keyword('type') + comma + pp.Group(type_decl),
            pp.Keyword('axiom') + comma + term,
            pp.Keyword('conjecture') + comma + term,
        ]) + rpar + dot)
    problem = pp.ZeroOrMore(entry) + pp.StringEnd()
    problem.ignore(pp.Regex(r'%[^\n]*'))

    return problem


_PROBLEM = _build_grammar()


class _Reader(object):
    def __init__(self, mangler):
        self.mangler = mangler or Mangler()

    def type(self, node):
        if node == '$o':
            return syntax.Bool()
        if node[0] == 'base':
            return syntax.Base(self.mangler.demangle_symbol(node[1]))
        return syntax.Pi('_', self.type(node[1]), self.type(node[2]))

    def term(self, node):
        tag = node[0]
        if tag == 'false':
            return syntax.Bot()
        if tag == 'true':
            return syntax.top()
        if tag == 'var':
            return syntax.Var(self.mangler.demangle_variable(node[1]))
        if tag == 'sym':
            return syntax.Var(self.mangler.demangle_symbol(node[1]))
        if tag == 'not':
            return syntax.neg(self.term(node[1]))
        if tag == 'binder':
            _, symbol, name, annot, body = node
            bound = self.mangler.demangle_variable(name)
            annot = self.type(annot)
            body = self.term(body)
            if symbol == '^':
                return syntax.Lambda(bound, annot, body)
            if symbol == '!':
                return syntax.Forall(bound, annot, body)
            if symbol == '?':
                return syntax.exists(bound, annot, body)
            return syntax.Choice(bound, annot, body)

        _, op, lhs, rhs = node
        lhs, rhs = self.term(lhs), self.term(rhs)
        if op == '@':
            return syntax.App(lhs, rhs)
        if op == '=>':
            return syntax.Implies(lhs, rhs)
        if op == '=':
            return syntax.Eq(None, lhs, rhs)
        if op == '!=':
            return syntax.neq(None, lhs, rhs)
        if op == '&':
            return syntax.conj(lhs, rhs)
        return syntax.disj(lhs, rhs)


def read_thf(text, mangler=None, elaborate=True):
    """
    Reads a THF problem printed by emit_thf back into a HOL theory and its conjecture
    :param text: str
    :param mangler: Mangler or None, the mangler used to print the problem, to recover the original names
    :param elaborate: bool, whether equalities get their types back through the simple HOL checker
    :return: tuple(Theory, Term or None)
    """

    try:
        entries = _PROBLEM.parse_string(text, parse_all=True)
    except pp.ParseBaseException as exc:
        raise exceptions.ThfError('Invalid THF near line {}: {}'.format(exc.lineno, exc.line.strip()))

    reader = _Reader(mangler)
    declarations = list()
    conjecture = None
    for entry in entries:
        label, role, body = entry[0], entry[1], entry[2]
        if role == 'type':
            name = reader.mangler.demangle_symbol(body[0])
            if body[1] == '$tType':
                declarations.append(syntax.BaseTypeDecl(name))
            else:
                declarations.append(syntax.ConstDecl(name, reader.type(body[1])))
        elif role == 'axiom':
            declarations.append(syntax.AxiomDecl(reader.mangler.demangle_label(label), reader.term(body)))
        else:
            conjecture = reader.term(body)

    theory = syntax.Theory(declarations)
    if not elaborate:
        return theory, conjecture

    report = kernel.check_theory(theory, conjecture, mode=kernel.Mode.SIMPLE_HOL, discharge_locally=False)
    if not report.well_formed:
        raise exceptions.ThfError('THF problem is not simply typed: {}'.format(report.diagnostics[0]))

    return report.theory, report.conjecture
