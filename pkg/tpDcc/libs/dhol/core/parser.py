#! /usr/bin/env python
# -*- coding: utf-8 -*-

"""
Module that contains the parser of the .dhol surface syntax

    type a : (pi x : A .)* tp .
    const c : A .
    axiom label : t .
    conjecture : t .

Terms use ^ (lambda), ! (forall), ? (exists), eps (choice), => = != ~ & | $false $true, and t =[A] u for
equality annotated with its type. Numerals stand for iterated s applied to 0. Comments start with %.
"""

from __future__ import print_function, division, absolute_import

import re
import logging

import pyparsing as pp

from tpDcc.libs.dhol.core import consts, exceptions, syntax

logger = logging.getLogger(consts.LIB_ID)

pp.ParserElement.enable_packrat()

_KEYWORDS = ('type', 'const', 'axiom', 'conjecture', 'eps', 'pi', 'tp', 'o')
_LEADING_SPACE = re.compile(r'(?:\s+|%[^\n]*)*')


def _position(text, loc):
    loc = _LEADING_SPACE.match(text, loc).end()
    return syntax.Pos(pp.lineno(loc, text), pp.col(loc, text))


def _fold_application(text, loc, toks):
    result = toks[0]
    for arg in toks[1:]:
        result = syntax.App(result, arg, pos=_position(text, loc))
    return result


def _make_name(text, loc, toks):
    name = toks[0]
    if name.isdigit():
        number = syntax.numeral(int(name))
        if isinstance(number, syntax.Var):
            return syntax.Var(number.name, pos=_position(text, loc))
        return number
    return syntax.Var(name, pos=_position(text, loc))


def _make_equality(text, loc, toks):
    if len(toks) == 1:
        return toks[0]
    lhs, op, rhs = toks[0], toks[1], toks[-1]
    pos = _position(text, loc)
    if op == '!=':
        return syntax.Implies(syntax.Eq(None, lhs, rhs, pos=pos), syntax.Bot(pos=pos), pos=pos)
    ty = toks[2] if len(toks) == 4 else None
    return syntax.Eq(ty, lhs, rhs, pos=pos)


def _make_binder(text, loc, toks):
    symbol, bindings, body = toks[0], toks[1], toks[2]
    pos = _position(text, loc)
    for name, ty in reversed(list(bindings)):
        if symbol == '^':
            body = syntax.Lambda(name, ty, body, pos=pos)
        elif symbol == '!':
            body = syntax.Forall(name, ty, body, pos=pos)
        elif symbol == '?':
            body = syntax.Implies(
                syntax.Forall(name, ty, syntax.Implies(body, syntax.Bot(pos=pos), pos=pos), pos=pos),
                syntax.Bot(pos=pos), pos=pos)
        else:
            body = syntax.Choice(name, ty, body, pos=pos)
    return body


def _make_negation(text, loc, toks):
    pos = _position(text, loc)
    return syntax.Implies(toks[1], syntax.Bot(pos=pos), pos=pos)


def _fold_left(builder):
    def _action(text, loc, toks):
        result = toks[0]
        for operand in toks[1:]:
            result = builder(result, operand)
        return result
    return _action


def _make_implication(text, loc, toks):
    if len(toks) == 1:
        return toks[0]
    return syntax.Implies(toks[0], toks[1], pos=_position(text, loc))


def _make_pi(text, loc, toks):
    bindings, codomain = toks[1], toks[2]
    for name, ty in reversed(list(bindings)):
        codomain = syntax.Pi(name, ty, codomain, pos=_position(text, loc))
    return codomain


def _make_arrow(text, loc, toks):
    if len(toks) == 1:
        return toks[0]
    return syntax.Pi('_', toks[0], toks[1], pos=_position(text, loc))


def _make_base(text, loc, toks):
    name = toks[0]
    if name == 'o':
        if len(toks) > 1:
            raise exceptions.ArityError('Type "o" takes no arguments', pos=_position(text, loc))
        return syntax.Bool(pos=_position(text, loc))
    return syntax.Base(name, tuple(toks[1:]), pos=_position(text, loc))


def _make_declaration(text, loc, toks):
    kind = toks[0]
    pos = _position(text, loc)
    if kind == 'type':
        telescope = [(name, ty) for bindings in toks[2] for name, ty in bindings]
        return syntax.BaseTypeDecl(toks[1], tuple(telescope), pos=pos)
    if kind == 'const':
        return syntax.ConstDecl(toks[1], toks[2], pos=pos)
    if kind == 'axiom':
        return syntax.AxiomDecl(toks[1], toks[2], pos=pos)
    return _Conjecture(toks[-1], pos)


class _Conjecture(object):
    def __init__(self, term, pos):
        self.term = term
        self.pos = pos


def _build_grammar():
    lpar, rpar, lbrack, rbrack, dot, colon = map(pp.Suppress, '()[].:')
    keyword = pp.MatchFirst([pp.Keyword(word, ident_chars=pp.alphanums + "_'*") for word in _KEYWORDS])
    name = (~keyword + pp.Regex(r"[A-Za-z0-9_][A-Za-z0-9_']*\*?")).set_name('identifier')

    term = pp.Forward().set_name('term')
    type_ = pp.Forward().set_name('type')

    atom = pp.MatchFirst([
        pp.Literal('$true').set_parse_action(lambda: syntax.top()),
        pp.Literal('$false').set_parse_action(lambda text, loc, toks: syntax.Bot(pos=_position(text, loc))),
        name.copy().set_parse_action(_make_name),
        lpar + term + rpar,
    ])
    application = pp.OneOrMore(atom).set_parse_action(_fold_application)

    eq_op = pp.MatchFirst([
        pp.Literal('!='),
        pp.Regex(r'=(?!>)') + pp.Optional(lbrack + type_ + rbrack),
    ])
    equality = (application + pp.Optional(eq_op + application)).set_parse_action(_make_equality)

    binding = pp.Group(name + colon + type_)
    bindings = pp.Group(pp.delimited_list(binding))
    binder_symbol = pp.MatchFirst([pp.Literal('^'), pp.Regex(r'!(?!=)'), pp.Literal('?'), pp.Keyword('eps')])
    binder = (binder_symbol + bindings + dot + term).set_parse_action(_make_binder)

    unary = pp.Forward()
    unary <<= pp.MatchFirst([
        (pp.Literal('~') + unary).set_parse_action(_make_negation),
        binder,
        equality,
    ])
    conjunction = (unary + pp.ZeroOrMore(pp.Suppress('&') + unary)).set_parse_action(_fold_left(syntax.conj))
    disjunction = (conjunction + pp.ZeroOrMore(pp.Suppress('|') + conjunction)).set_parse_action(
        _fold_left(syntax.disj))
    implication = pp.Forward()
    implication <<= (disjunction + pp.Optional(pp.Suppress('=>') + implication)).set_parse_action(_make_implication)
    term <<= implication

    type_atom = pp.MatchFirst([
        ((pp.Keyword('o') | name) + pp.ZeroOrMore(atom)).set_parse_action(_make_base),
        lpar + type_ + rpar,
    ])
    arrow = pp.Forward()
    arrow <<= (type_atom + pp.Optional(pp.Suppress('->') + arrow)).set_parse_action(_make_arrow)
    pi_type = (pp.Keyword('pi') + bindings + dot + type_).set_parse_action(_make_pi)
    type_ <<= pi_type | arrow

    telescope = pp.ZeroOrMore(pp.Suppress(pp.Keyword('pi')) + bindings + dot) + pp.Suppress(pp.Keyword('tp'))
    statement = pp.MatchFirst([
        pp.Keyword('type') + name + colon + pp.Group(telescope) + dot,
        pp.Keyword('const') + name + colon + type_ + dot,
        pp.Keyword('axiom') + name + colon + term + dot,
        pp.Keyword('conjecture') + pp.Optional(pp.Suppress(name)) + colon + term + dot,
    ]).set_parse_action(_make_declaration)

    program = pp.ZeroOrMore(statement) + pp.StringEnd()
    comment = pp.Regex(r'%[^\n]*')
    for element in (program, term, type_):
        element.ignore(comment)

    return program, term + pp.StringEnd(), type_ + pp.StringEnd()


_PROGRAM, _TERM, _TYPE = _build_grammar()


def _parse(element, text):
    try:
        return element.parse_string(text, parse_all=True)
    except pp.ParseBaseException as exc:
        raise exceptions.ParseError(
            'Syntax error near "{}"'.format(exc.line.strip()), pos=syntax.Pos(exc.lineno, exc.col))


def parse_theory(text):
    """
    Parses a .dhol document into a theory and its optional conjecture. Every identifier is resolved against the
    declarations preceding it and base type applications are checked against their declared arity
    :param text: str
    :return: tuple(Theory, Term or None)
    """

    items = _parse(_PROGRAM, text)
    declarations = list()
    conjecture = None
    for item in items:
        if isinstance(item, _Conjecture):
            if conjecture is not None:
                raise exceptions.ParseError('Only one conjecture is allowed', pos=item.pos)
            conjecture = item
        else:
            declarations.append(item)

    theory = syntax.Theory(declarations)
    resolver = _Resolver()
    for decl in theory:
        resolver.declaration(decl)
    if conjecture is not None:
        resolver.term(conjecture.term, frozenset())
        conjecture = conjecture.term

    logger.debug('Parsed {} declarations'.format(len(theory)))

    return theory, conjecture


def parse_term(text, theory=None, context=None):
    """
    Parses a single term. When a theory is given its identifiers are resolved against it (and the context)
    :param text: str
    :param theory: Theory or None
    :param context: Context or None
    :return: Term
    """

    term = _parse(_TERM, text)[0]
    if theory is not None:
        resolver = _Resolver.from_theory(theory, context)
        resolver.term(term, frozenset())

    return term


def parse_type(text, theory=None, context=None):
    ty = _parse(_TYPE, text)[0]
    if theory is not None:
        resolver = _Resolver.from_theory(theory, context)
        resolver.type(ty, frozenset())

    return ty


class _Resolver(object):
    """
    Checks that every name is introduced before it is used and that base types get as many arguments as their
    telescope declares
    """

    def __init__(self):
        self._arities = dict()
        self._constants = set()

    @classmethod
    def from_theory(cls, theory, context=None):
        resolver = cls()
        for decl in list(theory) + list(context or list()):
            resolver._register(decl)
        return resolver

    def declaration(self, decl):
        if isinstance(decl, syntax.BaseTypeDecl):
            bound = frozenset()
            for name, ty in decl.telescope:
                self.type(ty, bound)
                bound = bound | {name}
        elif isinstance(decl, syntax.ConstDecl):
            self.type(decl.type, frozenset())
        else:
            self.term(decl.term, frozenset())
        self._register(decl)

    def _register(self, decl):
        if isinstance(decl, syntax.BaseTypeDecl):
            self._arities[decl.name] = decl.arity
        elif isinstance(decl, syntax.ConstDecl):
            self._constants.add(decl.name)

    def term(self, t, bound):
        if isinstance(t, syntax.Var):
            if t.name not in bound and t.name not in self._constants:
                raise exceptions.UnknownIdentifierError('Unknown identifier "{}"'.format(t.name), pos=t.pos)
        elif isinstance(t, syntax.App):
            self.term(t.fun, bound)
            self.term(t.arg, bound)
        elif isinstance(t, syntax.Implies):
            self.term(t.lhs, bound)
            self.term(t.rhs, bound)
        elif isinstance(t, syntax.Eq):
            if t.ty is not None:
                self.type(t.ty, bound)
            self.term(t.lhs, bound)
            self.term(t.rhs, bound)
        elif isinstance(t, syntax.BINDERS):
            self.type(t.annot, bound)
            self.term(t.body, bound | {t.bound})

    def type(self, ty, bound):
        if isinstance(ty, syntax.Base):
            if ty.name not in self._arities:
                raise exceptions.UnknownIdentifierError('Unknown type "{}"'.format(ty.name), pos=ty.pos)
            arity = self._arities[ty.name]
            if len(ty.args) != arity:
                raise exceptions.ArityError(
                    'Type "{}" expects {} arguments but got {}'.format(ty.name, arity, len(ty.args)), pos=ty.pos)
            for arg in ty.args:
                self.term(arg, bound)
        elif isinstance(ty, syntax.Pi):
            self.type(ty.domain, bound)
            self.type(ty.codomain, bound | {ty.bound})
