#! /usr/bin/env python
# -*- coding: utf-8 -*-

"""
Module that contains the printer for the .dhol surface syntax. Derived connectives are never stored in the
syntax tree, so the printer recognizes their expansions and prints them back as sugar.
"""

from __future__ import print_function, division, absolute_import

from tpDcc.libs.dhol.core import syntax

# term precedences, loosest first
_BINDER, _IMP, _OR, _AND, _NOT, _EQ, _APP, _ATOM = range(8)

# type precedences
_TY_PI, _TY_ARROW, _TY_APP, _TY_ATOM = range(4)

_BINDER_SYMBOLS = {syntax.Lambda: '^', syntax.Forall: '!', syntax.Choice: 'eps'}


def format_term(t, numerals=True):
    """
    Returns the surface syntax of the given term
    :param t: Term
    :param numerals: bool, whether successor chains ending in 0 are printed as numerals
    :return: str
    """

    return _TermPrinter(numerals).term(t, _BINDER)


def format_type(ty, numerals=True):
    return _TermPrinter(numerals).type(ty, _TY_PI)


def format_declaration(decl, numerals=True):
    printer = _TermPrinter(numerals)
    if isinstance(decl, syntax.BaseTypeDecl):
        telescope = ''.join(
            'pi {} : {} . '.format(name, printer.type(ty, _TY_PI)) for name, ty in decl.telescope)
        return 'type {} : {}tp .'.format(decl.name, telescope)
    if isinstance(decl, syntax.ConstDecl):
        return 'const {} : {} .'.format(decl.name, printer.type(decl.type, _TY_PI))
    return 'axiom {} : {} .'.format(decl.label, printer.term(decl.term, _BINDER))


def format_theory(theory, conjecture=None, header=None, numerals=True):
    """
    Returns the .dhol source of a theory and its optional conjecture
    :param theory: Theory
    :param conjecture: Term or None
    :param header: list(str) or None, comment lines written at the top of the file
    :param numerals: bool
    :return: str
    """

    lines = ['% {}'.format(line) for line in (header or list())]
    lines.extend(format_declaration(decl, numerals=numerals) for decl in theory)
    if conjecture is not None:
        lines.append('conjecture : {} .'.format(format_term(conjecture, numerals=numerals)))

    return '\n'.join(lines) + '\n'


class _TermPrinter(object):
    def __init__(self, numerals=True):
        self._numerals = numerals

    def term(self, t, prec):
        text, own = self._term(t)
        return '({})'.format(text) if own < prec else text

    def type(self, ty, prec):
        text, own = self._type(ty)
        return '({})'.format(text) if own < prec else text

    def _term(self, t):
        if isinstance(t, syntax.Var):
            return t.name, _ATOM
        if isinstance(t, syntax.Bot):
            return '$false', _ATOM
        if isinstance(t, syntax.App):
            number = syntax.as_numeral(t) if self._numerals else None
            if number is not None:
                return str(number), _ATOM
            head, args = syntax.unapply(t)
            parts = [self.term(head, _ATOM)] + [self.term(arg, _ATOM) for arg in args]
            return ' '.join(parts), _APP
        if isinstance(t, syntax.Eq):
            op = '=' if t.ty is None else '=[{}]'.format(self.type(t.ty, _TY_PI))
            return '{} {} {}'.format(self.term(t.lhs, _APP), op, self.term(t.rhs, _APP)), _EQ
        if isinstance(t, syntax.Implies):
            return self._implication(t)
        if isinstance(t, syntax.BINDERS):
            return self._binder(_BINDER_SYMBOLS[type(t)], t.bound, t.annot, t.body), _BINDER

        raise TypeError('Not a term: {!r}'.format(t))

    def _implication(self, t):
        if isinstance(t.rhs, syntax.Bot):
            inner = t.lhs
            if isinstance(inner, syntax.Bot):
                return '$true', _ATOM
            if isinstance(inner, syntax.Forall) and _is_negation(inner.body):
                return self._binder('?', inner.bound, inner.annot, inner.body.lhs), _BINDER
            if isinstance(inner, syntax.Implies) and _is_negation(inner.rhs):
                return '{} & {}'.format(self.term(inner.lhs, _AND), self.term(inner.rhs.lhs, _NOT)), _AND
            if isinstance(inner, syntax.Eq) and inner.ty is None:
                return '{} != {}'.format(self.term(inner.lhs, _APP), self.term(inner.rhs, _APP)), _EQ
            return '~ {}'.format(self.term(inner, _NOT)), _NOT
        if _is_negation(t.lhs):
            return '{} | {}'.format(self.term(t.lhs.lhs, _OR), self.term(t.rhs, _AND)), _OR

        return '{} => {}'.format(self.term(t.lhs, _OR), self.term(t.rhs, _IMP)), _IMP

    def _binder(self, symbol, bound, annot, body):
        return '{} {} : {} . {}'.format(symbol, bound, self.type(annot, _TY_PI), self.term(body, _BINDER))

    def _type(self, ty):
        if isinstance(ty, syntax.Bool):
            return 'o', _TY_ATOM
        if isinstance(ty, syntax.Base):
            if not ty.args:
                return ty.name, _TY_ATOM
            return ' '.join([ty.name] + [self.term(arg, _ATOM) for arg in ty.args]), _TY_APP
        if isinstance(ty, syntax.Pi):
            if syntax.is_arrow(ty):
                return '{} -> {}'.format(self.type(ty.domain, _TY_APP), self.type(ty.codomain, _TY_ARROW)), _TY_ARROW
            return 'pi {} : {} . {}'.format(ty.bound, self.type(ty.domain, _TY_PI), self.type(ty.codomain, _TY_PI)), _TY_PI

        raise TypeError('Not a type: {!r}'.format(ty))


def _is_negation(t):
    return isinstance(t, syntax.Implies) and isinstance(t.rhs, syntax.Bot)
