#! /usr/bin/env python
# -*- coding: utf-8 -*-

"""
Module that contains tests for the THF printer and reader
"""

import pytest

from tpDcc.libs.dhol.core import exceptions, syntax, kernel, erasure, thf, corpus

STRONG = erasure.ErasureVariant.STRONG
WEAK = erasure.ErasureVariant.WEAK

COUNTEREXAMPLE_THF = """\
% Problem : counterexample
% Generated by tpDcc-libs-dhol
thf(a_type, type, a: $tType).
thf(aSTAR_decl, type, aSTAR: ($o > (a > (a > $o)))).
thf(per_a, axiom, (![X:$o]: (![U:a]: (![V:a]: ((((aSTAR @ X) @ U) @ V) => (U = V)))))).
thf(c_decl, type, c: a).
thf(c_typing, axiom, (((aSTAR @ $false) @ c) @ c)).
"""


def test_emit_counterexample(counterexample):
    problem = thf.emit_erased(counterexample, 'counterexample')
    assert problem.text == COUNTEREXAMPLE_THF
    assert problem.conjecture is None


def test_emit_is_deterministic(counterexample):
    first = thf.emit_erased(counterexample, 'counterexample', variant=WEAK).text
    second = thf.emit_erased(counterexample, 'counterexample', variant=WEAK).text
    assert first == second


def test_mangler():
    mangler = thf.Mangler()
    assert mangler.symbol('0') == 'num0'
    assert mangler.symbol('fin*') == 'finSTAR'
    assert mangler.symbol('s') == 's'
    assert mangler.label('0_typing') == 'f0_typing'
    assert mangler.variable('x1') == 'X1'
    assert mangler.demangle_symbol('finSTAR') == 'fin*'
    assert mangler.demangle_variable('X1') == 'x1'
    assert mangler.demangle_symbol('unknown') == 'unknown'


def test_mangler_detects_collisions():
    mangler = thf.Mangler()
    mangler.symbol('aSTAR')
    with pytest.raises(exceptions.ThfError):
        mangler.symbol('a*')


@pytest.mark.parametrize('name', corpus.names())
@pytest.mark.parametrize('variant', [STRONG, WEAK])
def test_round_trip(name, variant):
    entry = corpus.gen_problem(name)
    mode = kernel.Mode.STRONG_EPSILON if variant == STRONG else kernel.Mode.WEAK_EPSILON
    report = kernel.check_theory(entry.theory, entry.conjecture, mode=mode, discharge_locally=False)
    erased = erasure.erase_theory(report.theory, variant=variant)
    conjecture = erasure.erase_term(report.conjecture, variant)

    problem = thf.emit_erased(entry.theory, name, entry.conjecture, variant=variant)
    theory, read_conjecture = thf.read_thf(problem.text, mangler=problem.mangler)

    assert [syntax.declaration_key(decl) for decl in theory] == \
        [syntax.declaration_key(decl) for decl in erased.hol_theory]
    assert syntax.alpha_eq(read_conjecture, conjecture)


def test_sugar_can_be_disabled():
    entry = corpus.gen_problem('choice_def1')
    sugared = thf.emit_erased(entry.theory, 'choice_def1', entry.conjecture).text
    plain = thf.emit_erased(entry.theory, 'choice_def1', entry.conjecture, sugar=False).text
    assert ' & ' in sugared
    assert ' & ' not in plain and '(~ ' not in plain and '$true' not in plain
    plain_theory, plain_conjecture = thf.read_thf(plain)
    sugared_theory, sugared_conjecture = thf.read_thf(sugared)
    assert syntax.alpha_eq(plain_conjecture, sugared_conjecture)


def test_emit_obligation():
    entry = corpus.gen_problem('choice_nq')
    report = kernel.check_theory(entry.theory, entry.conjecture, discharge_locally=False)
    obligation = report.obligations[0]
    problem = thf.emit_thf(obligation, 'choice_nq.o001')
    assert problem.header[1].startswith('Obligation : o001 ChoiceWitness')
    assert problem.conjecture.startswith('thf(goal, conjecture, ')


def test_emit_rejects_dependent_types(signature):
    with pytest.raises(exceptions.ThfError):
        thf.emit_thf(erasure.ErasedTheory(signature), 'signature')


def test_emit_rejects_ill_formed_theory():
    theory = syntax.Theory([syntax.BaseTypeDecl('nat'), syntax.BaseTypeDecl('nat')])
    with pytest.raises(exceptions.ThfError):
        thf.emit_erased(theory, 'duplicated')


def test_read_rejects_invalid_text():
    with pytest.raises(exceptions.ThfError):
        thf.read_thf('thf(broken, axiom, ).\n')


def test_read_rejects_ill_typed_problem():
    with pytest.raises(exceptions.ThfError):
        thf.read_thf('thf(c_decl, type, c: $o).\nthf(ax, axiom, (c @ c)).\n')


def test_read_without_elaboration():
    theory, conjecture = thf.read_thf(
        'thf(i_type, type, i: $tType).\nthf(c_decl, type, c: i).\nthf(goal, conjecture, (c = c)).\n',
        elaborate=False)
    assert len(theory) == 2
    assert conjecture == syntax.Eq(None, syntax.Var('c'), syntax.Var('c'))
