#! /usr/bin/env python
# -*- coding: utf-8 -*-

"""
Module that contains tests for the .dhol surface syntax parser
"""

import pytest

from tpDcc.libs.dhol.core import exceptions, syntax, parser

from conftest import NAT, SIGNATURE, fin


def test_parse_choice(signature):
    theory = signature.extend(syntax.ConstDecl('p', syntax.arrow(fin(syntax.numeral(2)), syntax.Bool())))
    term = parser.parse_term('eps x : fin 2 . p x', theory)
    assert term == syntax.Choice('x', fin(syntax.numeral(2)), syntax.App(syntax.Var('p'), syntax.Var('x')))


def test_parse_negation():
    assert parser.parse_term('~ t') == syntax.Implies(syntax.Var('t'), syntax.Bot())


def test_parse_exists_expands(signature):
    term = parser.parse_term('! x : nat . ? y : nat . x = y', signature)
    expected = syntax.Forall('x', NAT, syntax.exists('y', NAT, syntax.Eq(None, syntax.Var('x'), syntax.Var('y'))))
    assert term == expected


def test_parse_connectives():
    a, b, c = (syntax.Var(name) for name in 'abc')
    assert parser.parse_term('a & b | c') == syntax.disj(syntax.conj(a, b), c)
    assert parser.parse_term('a => b => c') == syntax.Implies(a, syntax.Implies(b, c))
    assert parser.parse_term('$true') == syntax.top()
    assert parser.parse_term('a != b') == syntax.neq(None, a, b)


def test_parse_typed_equality(signature):
    term = parser.parse_term('0 =[nat] s 0', signature)
    assert term == syntax.Eq(NAT, syntax.numeral(0), syntax.numeral(1))


def test_parse_multiple_binders():
    assert parser.parse_term('^ x : o, y : o . x') == parser.parse_term('^ x : o . ^ y : o . x')


def test_parse_theory():
    theory, conjecture = parser.parse_theory(SIGNATURE + 'axiom q0 : q 0 .\nconjecture : ? n : nat . q n .\n')
    assert [decl.label for decl in theory] == ['nat', '0', 's', 'fin', 'q', 'r', 'q0']
    assert theory.base_types['fin'].telescope == (('n', NAT), )
    assert theory.constants['r'] == syntax.Pi('n', NAT, syntax.arrow(fin(syntax.Var('n')), syntax.Bool()))
    assert conjecture == syntax.exists('n', NAT, syntax.App(syntax.Var('q'), syntax.Var('n')))


def test_parse_numerals_expand():
    theory, _ = parser.parse_theory(SIGNATURE + 'axiom q2 : q 2 .\n')
    assert theory.axioms[0].term == syntax.App(syntax.Var('q'), syntax.numeral(2))


def test_comments_are_ignored():
    theory, conjecture = parser.parse_theory('% header\ntype nat : tp . % trailing\n')
    assert len(theory) == 1
    assert conjecture is None


def test_positions_are_kept():
    theory, _ = parser.parse_theory('type nat : tp .\nconst zero : nat .\n')
    assert theory.constants and list(theory)[1].pos == syntax.Pos(2, 1)

    text = 'type nat : tp .\n% zero\n  const zero : nat .\nconjecture : zero = zero .\n'
    theory, conjecture = parser.parse_theory(text)
    assert list(theory)[1].pos == syntax.Pos(3, 3)
    assert conjecture.pos.line == 4


def test_syntax_error_reports_position():
    with pytest.raises(exceptions.ParseError) as exc:
        parser.parse_theory('type nat : tp .\nconst zero nat .\n')
    assert exc.value.pos.line == 2


def test_unknown_identifier():
    with pytest.raises(exceptions.UnknownIdentifierError):
        parser.parse_theory('type nat : tp .\naxiom bad : ! x : nat . p x .\n')


def test_unknown_type():
    with pytest.raises(exceptions.UnknownIdentifierError):
        parser.parse_theory('const c : nat .\n')


def test_arity_mismatch():
    with pytest.raises(exceptions.ArityError):
        parser.parse_theory(SIGNATURE + 'const bad : fin .\n')
    with pytest.raises(exceptions.ArityError):
        parser.parse_theory(SIGNATURE + 'const bad : fin 0 0 .\n')


def test_only_one_conjecture():
    with pytest.raises(exceptions.ParseError):
        parser.parse_theory('conjecture : $true .\nconjecture : $false .\n')


def test_parse_type(signature):
    ty = parser.parse_type('pi n : nat . fin n -> fin (s n)', signature)
    assert ty == syntax.Pi('n', NAT, syntax.arrow(
        fin(syntax.Var('n')), fin(syntax.App(syntax.Var('s'), syntax.Var('n')))))
