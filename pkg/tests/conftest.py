#! /usr/bin/env python
# -*- coding: utf-8 -*-

"""
Shared fixtures for tpDcc-libs-dhol tests
"""

import random

import pytest

from tpDcc.libs.dhol.core import syntax, parser

NAT = syntax.Base('nat')

SIGNATURE = """\
type nat : tp .
const 0 : nat .
const s : nat -> nat .
type fin : pi n : nat . tp .
const q : nat -> o .
const r : pi n : nat . fin n -> o .
"""

COUNTEREXAMPLE = """\
type a : pi x : o . tp .
const c : a $false .
"""

_BINDER_NAMES = ('x', 'y', 'z', 'x1')


def fin(index):
    return syntax.Base('fin', (index, ))


class TermGenerator(object):
    """
    Seeded generator of elaborated boolean terms over SIGNATURE. Binder names are drawn from a small pool so
    shadowing and capture situations are frequent
    """

    def __init__(self, seed=0, max_depth=4, choice=True):
        self._random = random.Random(seed)
        self._max_depth = max_depth
        self._choice = choice

    def boolean(self, scope, depth=0):
        options = ['bot', 'q', 'eq']
        if depth < self._max_depth:
            options.extend(['implies', 'forall_nat', 'forall_fin'])
        fin_vars = [(name, ty) for name, ty in scope if isinstance(ty, syntax.Base) and ty.name == 'fin']
        if fin_vars:
            options.append('r')
            if self._choice and depth < self._max_depth:
                options.append('fin_choice')
        kind = self._random.choice(options)

        if kind == 'bot':
            return syntax.Bot()
        if kind == 'q':
            return syntax.App(syntax.Var('q'), self.nat(scope, depth + 1))
        if kind == 'eq':
            return syntax.Eq(NAT, self.nat(scope, depth + 1), self.nat(scope, depth + 1))
        if kind == 'implies':
            return syntax.Implies(self.boolean(scope, depth + 1), self.boolean(scope, depth + 1))
        if kind == 'forall_nat':
            name = self._random.choice(_BINDER_NAMES)
            return syntax.Forall(name, NAT, self.boolean(self._shadow(scope, name, NAT), depth + 1))
        if kind == 'forall_fin':
            ty = fin(self.nat(scope, depth + 1))
            name = self._random.choice(_BINDER_NAMES)
            return syntax.Forall(name, ty, self.boolean(self._shadow(scope, name, ty), depth + 1))

        name, ty = self._random.choice(fin_vars)
        if kind == 'r':
            return syntax.apply(syntax.Var('r'), ty.args[0], syntax.Var(name))
        bound = self._random.choice(_BINDER_NAMES)
        choice = syntax.Choice(bound, ty, self.boolean(self._shadow(scope, bound, ty), depth + 1))
        return syntax.Eq(ty, syntax.Var(name), choice)

    def nat(self, scope, depth=0):
        nat_vars = [name for name, ty in scope if ty == NAT]
        options = ['numeral']
        if nat_vars:
            options.append('var')
        if depth < self._max_depth:
            options.append('succ')
            if self._choice:
                options.append('choice')
        kind = self._random.choice(options)

        if kind == 'numeral':
            return syntax.numeral(self._random.randint(0, 2))
        if kind == 'var':
            return syntax.Var(self._random.choice(nat_vars))
        if kind == 'succ':
            return syntax.App(syntax.Var('s'), self.nat(scope, depth + 1))
        name = self._random.choice(_BINDER_NAMES)
        return syntax.Choice(name, NAT, self.boolean(self._shadow(scope, name, NAT), depth + 1))

    @staticmethod
    def _shadow(scope, name, ty):
        """
        Scope after binding name. Variables whose types mention the shadowed name are no longer usable, and neither
        is the new one when its own type does
        """

        kept = [
            (other, other_ty) for other, other_ty in scope
            if other != name and name not in syntax.type_free_vars(other_ty)]
        if name in syntax.type_free_vars(ty):
            return kept
        return kept + [(name, ty)]


@pytest.fixture
def signature():
    theory, _ = parser.parse_theory(SIGNATURE)
    return theory


@pytest.fixture
def counterexample():
    theory, _ = parser.parse_theory(COUNTEREXAMPLE)
    return theory


@pytest.fixture
def term_generator():
    return TermGenerator
