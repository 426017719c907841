#! /usr/bin/env python
# -*- coding: utf-8 -*-

"""
Module that contains tests for the DHOL to HOL erasure
"""

import pytest

from tpDcc.libs.dhol.core import exceptions, syntax, kernel, erasure

from conftest import NAT, fin

STRONG = erasure.ErasureVariant.STRONG
WEAK = erasure.ErasureVariant.WEAK

A_FALSE = syntax.Base('a', (syntax.Bot(), ))
A_STAR = syntax.Var('a*')


def _guard(bound):
    return syntax.apply(A_STAR, syntax.Bot(), syntax.Var(bound), syntax.Var(bound))


def test_erase_type_drops_arguments():
    assert erasure.erase_type(fin(syntax.numeral(3))) == syntax.Base('fin')
    assert erasure.erase_type(syntax.Pi('n', NAT, fin(syntax.Var('n')))) == syntax.arrow(NAT, syntax.Base('fin'))
    assert erasure.erase_type(syntax.Bool()) == syntax.Bool()


def test_per_of_base_type():
    expected = syntax.Lambda('u', NAT, syntax.Lambda('v', NAT, syntax.apply(
        syntax.Var('nat*'), syntax.Var('u'), syntax.Var('v'))))
    assert syntax.alpha_eq(erasure.per(NAT), expected)


def test_per_of_bool_is_equality():
    relation = erasure.per_apply(syntax.Bool(), syntax.Var('p'), syntax.Var('q'))
    assert relation == syntax.Eq(syntax.Bool(), syntax.Var('p'), syntax.Var('q'))


def test_per_of_function_type():
    f, g = syntax.Var('f'), syntax.Var('g')
    relation = erasure.per_apply(syntax.arrow(NAT, syntax.Bool()), f, g)
    expected = syntax.Forall('x', NAT, syntax.Forall('y', NAT, syntax.Implies(
        syntax.apply(syntax.Var('nat*'), syntax.Var('x'), syntax.Var('y')),
        syntax.Eq(syntax.Bool(), syntax.App(f, syntax.Var('x')), syntax.App(g, syntax.Var('y'))))))
    assert syntax.alpha_eq(relation, expected)


def test_per_of_dependent_function_type():
    relation = erasure.per_apply(syntax.Pi('n', NAT, fin(syntax.Var('n'))), syntax.Var('f'), syntax.Var('f'))
    premise = relation.body.body.lhs
    conclusion = relation.body.body.rhs
    assert premise == syntax.apply(syntax.Var('nat*'), syntax.Var(relation.bound), syntax.Var(relation.body.bound))
    head, args = syntax.unapply(conclusion)
    assert head == syntax.Var('fin*')
    assert args[0] == syntax.Var(relation.bound)


def test_strong_choice_is_guarded():
    term = syntax.Choice('x', A_FALSE, syntax.top())
    expected = syntax.Choice('x', syntax.Base('a'), syntax.conj(_guard('x'), syntax.top()))
    assert syntax.alpha_eq(erasure.erase_term(term, STRONG), expected)


def test_weak_choice_falls_back_to_guard():
    term = syntax.Choice('x', A_FALSE, syntax.top())
    a = syntax.Base('a')
    guarded = syntax.conj(_guard('x'), syntax.top())
    witness = syntax.exists('x', a, guarded)
    z = syntax.Var('x1')
    expected = syntax.Choice('x1', a, syntax.disj(
        syntax.conj(witness, syntax.Eq(a, z, syntax.Choice('x', a, guarded))),
        syntax.conj(syntax.neg(witness), syntax.Eq(a, z, syntax.Choice('x', a, _guard('x'))))))
    erased = erasure.erase_term(term, WEAK)
    assert erased.bound == 'x1'
    assert syntax.alpha_eq(erased, expected)


def test_naive_choice_has_no_guard():
    term = syntax.Choice('x', A_FALSE, syntax.top())
    assert erasure.naive_erase_term(term) == syntax.Choice('x', syntax.Base('a'), syntax.top())


def test_forall_is_guarded():
    term = syntax.Forall('n', NAT, syntax.Eq(NAT, syntax.Var('n'), syntax.Var('n')))
    nat_star = syntax.Var('nat*')
    expected = syntax.Forall('n', NAT, syntax.Implies(
        syntax.apply(nat_star, syntax.Var('n'), syntax.Var('n')),
        syntax.apply(nat_star, syntax.Var('n'), syntax.Var('n'))))
    assert erasure.erase_term(term) == expected


@pytest.mark.parametrize('variant', [STRONG, WEAK])
def test_binder_named_like_its_annotation_argument(variant):
    term = syntax.Forall('y', fin(syntax.Var('n')), syntax.top())
    left = erasure.erase_term(syntax.subst(term, 'n', syntax.Var('y')), variant)
    right = syntax.subst(erasure.erase_term(term, variant), 'n', syntax.Var('y'))
    assert syntax.alpha_eq(left, right)
    assert syntax.unapply(left.body.lhs)[1][0] == syntax.Var('y')
    assert left.bound != 'y'

    choice = syntax.Choice('y', fin(syntax.Var('y')), syntax.top())
    erased = erasure.erase_term(choice, variant)
    assert 'y' in syntax.free_vars(erased)
    assert erased.bound != 'y'


def test_erasure_rejects_unannotated_equality():
    with pytest.raises(exceptions.DholError):
        erasure.erase_term(syntax.Eq(None, syntax.Var('x'), syntax.Var('y')))


def test_erase_theory(counterexample):
    erased = erasure.erase_theory(counterexample)
    labels = [decl.label for decl in erased.hol_theory]
    assert labels == ['a', 'a*', 'per_a', 'c', 'c_typing']
    assert erased.per_names == {'a': 'a*'}
    assert erased.hol_theory.constants['a*'] == syntax.arrow(
        syntax.Bool(), syntax.Base('a'), syntax.Base('a'), syntax.Bool())
    assert erased.hol_theory.constants['c'] == syntax.Base('a')
    typing = erased.hol_theory.axioms[-1]
    assert typing.term == syntax.apply(A_STAR, syntax.Bot(), syntax.Var('c'), syntax.Var('c'))
    for decl in erased.hol_theory:
        assert erased.provenance[decl] in list(counterexample)


def test_erase_context_adds_typing_assumptions():
    context = syntax.Context([syntax.ConstDecl('x', fin(syntax.numeral(1)))])
    erased = erasure.erase_context(context)
    assert erased.constants == {'x': syntax.Base('fin')}
    assert erased.axioms[0].term == syntax.apply(
        syntax.Var('fin*'), syntax.numeral(1), syntax.Var('x'), syntax.Var('x'))


def test_erased_theory_is_simply_typed(signature):
    report = kernel.check_theory(erasure.erase_theory(signature).hol_theory, mode=kernel.Mode.SIMPLE_HOL)
    assert report.well_formed, report.diagnostics


@pytest.mark.parametrize('variant', [STRONG, WEAK])
def test_erasure_commutes_with_substitution(term_generator, variant):
    generator = term_generator(seed=11)
    for _ in range(1000):
        term = generator.boolean([('x', NAT)])
        value = generator.nat([('y', NAT), ('z', NAT)])
        left = erasure.erase_term(syntax.subst(term, 'x', value), variant)
        right = syntax.subst(erasure.erase_term(term, variant), 'x', erasure.erase_term(value, variant))
        assert syntax.alpha_eq(left, right)


def test_variants_agree_without_choice(term_generator):
    generator = term_generator(seed=3, choice=False)
    for _ in range(300):
        term = generator.boolean([('x', NAT)])
        assert erasure.erase_term(term, STRONG) == erasure.erase_term(term, WEAK)


@pytest.mark.parametrize('variant', [STRONG, WEAK])
def test_erased_terms_are_simply_typed(signature, term_generator, variant):
    generator = term_generator(seed=5)
    erased = erasure.erase_theory(signature, syntax.Context([syntax.ConstDecl('x', NAT)]), variant=variant)
    theory = erased.hol_theory.extend(*erased.hol_context)
    for _ in range(100):
        term = erasure.erase_term(generator.boolean([('x', NAT)]), variant)
        report = kernel.check_theory(theory, term, mode=kernel.Mode.SIMPLE_HOL, discharge_locally=False)
        assert report.well_formed, report.diagnostics
