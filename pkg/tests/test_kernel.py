#! /usr/bin/env python
# -*- coding: utf-8 -*-

"""
Module that contains tests for the DHOL type checker and its proof obligations
"""

import pytest

from tpDcc.libs.dhol.core import exceptions, syntax, parser, kernel, corpus

from conftest import NAT, SIGNATURE, fin

STRONG = kernel.Mode.STRONG_EPSILON
WEAK = kernel.Mode.WEAK_EPSILON
HOL = kernel.Mode.SIMPLE_HOL


def _theory(text):
    theory, _ = parser.parse_theory(text)
    return theory


def test_identity_has_no_obligations():
    term = syntax.Lambda('x', syntax.Bool(), syntax.Var('x'))
    ty, obligations = kernel.infer_type(syntax.Theory(), None, term, mode=HOL)
    assert syntax.alpha_eq_type(ty, syntax.arrow(syntax.Bool(), syntax.Bool()))
    assert obligations == []


def test_weak_choice_on_counterexample(counterexample):
    term = parser.parse_term('eps x : a $false . $true', counterexample)
    ty, obligations = kernel.infer_type(counterexample, None, term, mode=WEAK)
    assert ty == syntax.Base('a', (syntax.Bot(), ))
    assert [obligation.kind for obligation in obligations] == [kernel.ObligationKind.TYPE_INHABITED]
    assert kernel.auto_discharge(obligations[0])


def test_strong_choice_on_counterexample(counterexample):
    term = parser.parse_term('eps x : a $false . $true', counterexample)
    _, obligations = kernel.infer_type(counterexample, None, term, mode=STRONG)
    assert [obligation.kind for obligation in obligations] == [kernel.ObligationKind.CHOICE_WITNESS]
    assert obligations[0].origin.rule == 'eps1-type'
    assert kernel.auto_discharge(obligations[0])


def test_no_fixed_point_choice_depends_on_mode(signature):
    term = parser.parse_term('^ x : fin 1 . eps y : fin 1 . x != y', signature)

    _, strong = kernel.infer_type(signature, None, term, mode=STRONG)
    assert [obligation.kind for obligation in strong] == [kernel.ObligationKind.CHOICE_WITNESS]
    assert not kernel.auto_discharge(strong[0])

    _, weak = kernel.infer_type(signature, None, term, mode=WEAK)
    assert [obligation.kind for obligation in weak] == [kernel.ObligationKind.TYPE_INHABITED]
    assert kernel.auto_discharge(weak[0])


def test_obligations_are_simply_typed(signature):
    term = parser.parse_term('^ x : fin 1 . eps y : fin 1 . x != y', signature)
    for mode in (STRONG, WEAK):
        _, obligations = kernel.infer_type(signature, None, term, mode=mode)
        for obligation in obligations:
            report = kernel.check_theory(
                obligation.hol_theory.extend(*obligation.hol_context), obligation.conjecture, mode=HOL)
            assert report.well_formed, report.diagnostics


def test_type_equal_alpha_identical(signature):
    ty = fin(syntax.numeral(1))
    assert kernel.type_equal(signature, None, ty, ty) == []


def test_type_equal_emits_argument_equation(signature):
    theory = signature.extend(syntax.ConstDecl('two', NAT))
    obligations = kernel.type_equal(theory, None, fin(syntax.numeral(2)), fin(syntax.Var('two')))
    assert len(obligations) == 1
    obligation = obligations[0]
    assert obligation.kind == kernel.ObligationKind.TYPE_EQ
    expected = syntax.apply(syntax.Var('nat*'), syntax.numeral(2), syntax.Var('two'))
    assert syntax.alpha_eq(obligation.conjecture, expected)


def test_type_equal_recurses_into_pi(signature):
    theory = signature.extend(syntax.ConstDecl('two', NAT))
    left = syntax.arrow(fin(syntax.numeral(2)), syntax.Bool())
    right = syntax.arrow(fin(syntax.Var('two')), syntax.Bool())
    assert len(kernel.type_equal(theory, None, left, right)) == 1


def test_type_equal_head_mismatch(signature):
    with pytest.raises(exceptions.TypeMismatchError):
        kernel.type_equal(signature, None, syntax.Bool(), fin(syntax.numeral(0)))
    with pytest.raises(exceptions.TypeMismatchError):
        kernel.type_equal(signature, None, NAT, syntax.arrow(NAT, NAT))


def test_application_emits_type_eq_for_converted_argument(signature):
    theory = signature.extend(syntax.ConstDecl('two', NAT), syntax.ConstDecl('y', fin(syntax.Var('two'))))
    term = parser.parse_term('r 2 y', theory)
    ty, obligations = kernel.infer_type(theory, None, term)
    assert ty == syntax.Bool()
    assert [obligation.origin.rule for obligation in obligations] == ['app-conv']


def test_check_errors(signature):
    with pytest.raises(exceptions.UnboundNameError):
        kernel.infer_type(signature, None, syntax.Var('nope'))
    with pytest.raises(exceptions.NotAFunctionError):
        kernel.infer_type(signature, None, syntax.App(syntax.Var('0'), syntax.Var('0')))
    with pytest.raises(exceptions.TypeMismatchError):
        kernel.infer_type(signature, None, syntax.Implies(syntax.Var('0'), syntax.Bot()))


def test_simple_hol_rejects_dependent_types(signature):
    report = kernel.check_theory(signature, mode=HOL)
    assert not report.well_formed
    failed = [status.label for status in report.statuses if not status.ok]
    assert failed == ['fin', 'r']
    with pytest.raises(exceptions.ModeError):
        kernel.TypeChecker(signature, HOL).check_type(fin(syntax.numeral(0)), syntax.Context())


def test_check_theory_counterexample(counterexample):
    report = kernel.check_theory(counterexample)
    assert report.well_formed
    assert report.obligations == []
    assert [status.kind for status in report.statuses] == ['type', 'const']


def test_check_theory_trivial_conjecture():
    report = kernel.check_theory(syntax.Theory(), syntax.top())
    assert len(report.obligations) == 1
    assert report.obligations[0].kind == kernel.ObligationKind.CONJECTURE
    assert report.auto_discharged == {report.obligations[0].id}
    assert report.open_obligations == []


def test_check_theory_rejects_non_boolean_conjecture(signature):
    report = kernel.check_theory(signature, syntax.Var('0'))
    assert not report.well_formed
    assert report.conjecture is None


def test_check_theory_rejects_duplicates():
    theory = syntax.Theory([syntax.BaseTypeDecl('nat'), syntax.BaseTypeDecl('nat')])
    report = kernel.check_theory(theory)
    assert [status.ok for status in report.statuses] == [True, False]


def test_axiom_obligations_are_axiom_well_formed(signature):
    theory = _theory(SIGNATURE + 'axiom pick : q (eps n : nat . q n) .\n')
    report = kernel.check_theory(theory, mode=STRONG, discharge_locally=False)
    assert [obligation.kind for obligation in report.obligations] == [kernel.ObligationKind.AXIOM_WELL_FORMED]
    assert report.obligations[0].origin.rule == 'eps1-type'
    assert report.obligations[0].origin.declaration == 'pick'


def test_elaboration_annotates_equalities(signature):
    term = kernel.elaborate(signature, None, parser.parse_term('! n : nat . n = s n', signature), mode=STRONG)
    assert term.body.ty == NAT


def test_implication_assumes_left_hand_side():
    theory, conjecture = parser.parse_theory(SIGNATURE + 'conjecture : q 0 => q (eps n : nat . q n) .\n')
    report = kernel.check_theory(theory, conjecture, mode=STRONG)
    witness = [obligation for obligation in report.obligations
               if obligation.kind == kernel.ObligationKind.CHOICE_WITNESS]
    assert len(witness) == 1
    assert len(witness[0].hol_context.axioms) == 1
    assert witness[0].id in report.auto_discharged


def test_obligation_ids_are_deterministic():
    entry = corpus.gen_problem('no_fp_fin2_reg')
    first = kernel.check_theory(entry.theory, entry.conjecture, mode=STRONG)
    second = kernel.check_theory(entry.theory, entry.conjecture, mode=STRONG)
    assert [(obligation.id, obligation.kind) for obligation in first.obligations] == \
        [(obligation.id, obligation.kind) for obligation in second.obligations]
    assert [syntax.canonical_key(obligation.conjecture) for obligation in first.obligations] == \
        [syntax.canonical_key(obligation.conjecture) for obligation in second.obligations]


def test_duplicate_obligations_are_merged(signature):
    theory = _theory(SIGNATURE + 'axiom a1 : q (eps n : nat . q n) .\naxiom a2 : q (eps m : nat . q m) .\n')
    report = kernel.check_theory(theory, mode=STRONG, discharge_locally=False)
    assert len(report.obligations) == 1


def test_hol_conservativity():
    text = 'type i : tp .\nconst f : i -> i .\nconst c : i .\naxiom fc : f c = c .\nconjecture : f (f c) = c .\n'
    theory, conjecture = parser.parse_theory(text)
    report = kernel.check_theory(theory, conjecture, mode=STRONG)
    assert report.well_formed
    assert [obligation.kind for obligation in report.obligations] == [kernel.ObligationKind.CONJECTURE]
    assert kernel.check_theory(theory, conjecture, mode=HOL).well_formed


def test_choice_rule_instance():
    choice = syntax.Choice('x', NAT, syntax.App(syntax.Var('q'), syntax.Var('x')))
    assert kernel.choice_rule_instance(choice) == syntax.App(syntax.Var('q'), choice)


def test_local_prover_choice_def_witnesses():
    for name in ('choice_def1', 'choice_def2', 'choice_def3'):
        entry = corpus.gen_problem(name)
        report = kernel.check_theory(entry.theory, entry.conjecture, mode=STRONG)
        assert report.typing_obligations
        for obligation in report.typing_obligations:
            assert obligation.id in report.auto_discharged, obligation.describe()


def test_local_prover_is_monotone():
    entry = corpus.gen_problem('choice_def1')
    report = kernel.check_theory(entry.theory, entry.conjecture, mode=STRONG)
    obligation = report.typing_obligations[0]
    stronger = kernel.Obligation(
        obligation.id, obligation.kind,
        obligation.hol_theory.extend(syntax.AxiomDecl('extra', syntax.top())),
        obligation.hol_context, obligation.conjecture, obligation.origin)
    assert kernel.auto_discharge(obligation)
    assert kernel.auto_discharge(stronger)


@pytest.mark.parametrize('name', ['no_fp_fin2_min', 'no_fp_fin3_reg', 'no_fp_fin9_min'])
def test_local_prover_finds_a_second_element(name):
    entry = corpus.gen_problem(name)
    report = kernel.check_theory(entry.theory, entry.conjecture, mode=STRONG, discharge_locally=False)
    witness = [obligation for obligation in report.typing_obligations
               if obligation.kind == kernel.ObligationKind.CHOICE_WITNESS]
    assert len(witness) == 1
    assert kernel.auto_discharge(witness[0])


@pytest.mark.parametrize('name', ['no_fp_fin1_min', 'no_fp_fin1_reg', 'no_fp_fin0_min'])
def test_local_prover_does_not_invent_a_second_element(name):
    entry = corpus.gen_problem(name)
    report = kernel.check_theory(entry.theory, entry.conjecture, mode=STRONG, discharge_locally=False)
    witness = [obligation for obligation in report.typing_obligations
               if obligation.kind == kernel.ObligationKind.CHOICE_WITNESS]
    assert len(witness) == 1
    assert not kernel.auto_discharge(witness[0])


def test_local_prover_inhabits_type_with_applied_constant():
    entry = corpus.gen_problem('choice_def3')
    report = kernel.check_theory(entry.theory, entry.conjecture, mode=WEAK)
    inhabited = [obligation for obligation in report.typing_obligations
                 if obligation.kind == kernel.ObligationKind.TYPE_INHABITED]
    assert inhabited
    for obligation in inhabited:
        assert obligation.id in report.auto_discharged, obligation.describe()
