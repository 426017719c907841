#! /usr/bin/env python
# -*- coding: utf-8 -*-

"""
Module that contains tests for the .dhol printer
"""

import pytest

from tpDcc.libs.dhol.core import syntax, parser, printer

from conftest import NAT, SIGNATURE, fin


@pytest.mark.parametrize('text', [
    '~ a',
    '$true',
    'a & b',
    'a | b',
    'a => b => c',
    '(a => b) => c',
    'a != b',
    '~ (a & b)',
    '! x : nat . ? y : nat . x = y',
    '(! x : nat . a) => b',
    'f (eps x : nat . a) = f 2',
])
def test_print_restores_sugar(text):
    assert printer.format_term(parser.parse_term(text)) == text


def test_print_typed_equality():
    term = syntax.Eq(fin(syntax.numeral(1)), syntax.Var('a'), syntax.Var('b'))
    assert printer.format_term(term) == 'a =[fin 1] b'
    assert printer.format_term(syntax.neg(term)) == '~ a =[fin 1] b'


def test_print_numerals_can_be_disabled():
    assert printer.format_term(syntax.numeral(2), numerals=False) == 's (s 0)'


def test_print_types():
    ty = syntax.Pi('n', NAT, syntax.arrow(fin(syntax.Var('n')), fin(syntax.App(syntax.Var('s'), syntax.Var('n')))))
    assert printer.format_type(ty) == 'pi n : nat . fin n -> fin (s n)'
    assert printer.format_type(syntax.arrow(syntax.arrow(NAT, NAT), NAT)) == '(nat -> nat) -> nat'


def test_print_theory_round_trip():
    text = SIGNATURE + 'axiom ax : ! n : nat, y : fin n . r n y | q 1 .\nconjecture : q 0 .\n'
    theory, conjecture = parser.parse_theory(text)
    printed = printer.format_theory(theory, conjecture, header=['generated'])
    assert printed.startswith('% generated\n')
    again, again_conjecture = parser.parse_theory(printed)
    assert [syntax.declaration_key(decl) for decl in again] == [syntax.declaration_key(decl) for decl in theory]
    assert syntax.alpha_eq(again_conjecture, conjecture)


def test_print_parse_fuzz(signature, term_generator):
    generator = term_generator(seed=7)
    context = syntax.Context([syntax.ConstDecl('x', NAT)])
    for _ in range(200):
        term = generator.boolean([('x', NAT)])
        parsed = parser.parse_term(printer.format_term(term), signature, context)
        assert syntax.alpha_eq(parsed, term), printer.format_term(term)
