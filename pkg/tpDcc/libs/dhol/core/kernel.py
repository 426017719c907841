#! /usr/bin/env python
# -*- coding: utf-8 -*-

"""
Module that contains the DHOL type checker.

Type equality between dependent types is undecidable, and so are the premises of the choice rules. The checker
decides everything structural on its own and reifies every other step as an Obligation: a HOL conjecture, already
erased, whose provability justifies the step.
"""

from __future__ import print_function, division, absolute_import

import enum
import logging
from dataclasses import dataclass, field

from tpDcc.libs.dhol.core import consts, exceptions, syntax, printer, erasure, saturation

logger = logging.getLogger(consts.LIB_ID)


class Mode(enum.Enum):
    STRONG_EPSILON = 'eps1'
    WEAK_EPSILON = 'eps2'
    SIMPLE_HOL = 'hol'

    @property
    def variant(self):
        """
        Erasure paired with the mode. Simple HOL needs no erasure
        :return: ErasureVariant or None
        """

        if self == Mode.STRONG_EPSILON:
            return erasure.ErasureVariant.STRONG
        if self == Mode.WEAK_EPSILON:
            return erasure.ErasureVariant.WEAK
        return None


class ObligationKind(enum.Enum):
    TYPE_EQ = 'TypeEq'
    CHOICE_WITNESS = 'ChoiceWitness'
    TYPE_INHABITED = 'TypeInhabited'
    AXIOM_WELL_FORMED = 'AxiomWellFormed'
    CONJECTURE = 'Conjecture'


@dataclass(frozen=True)
class Origin(object):
    pos: syntax.Pos = None
    rule: str = ''
    declaration: str = None

    def __str__(self):
        location = str(self.pos) if self.pos is not None else '?'
        if self.declaration:
            return '{} [{}] in {}'.format(location, self.rule, self.declaration)
        return '{} [{}]'.format(location, self.rule)


@dataclass(frozen=True)
class Obligation(object):
    """
    HOL conjecture, with the HOL theory and context it must be proved from, that justifies one DHOL checking step
    """

    id: str
    kind: ObligationKind
    hol_theory: syntax.Theory
    hol_context: syntax.Context
    conjecture: syntax.Term
    origin: Origin = Origin()
    source: syntax.Term = field(default=None, compare=False, repr=False)

    def describe(self):
        return '{} {} {}: {}'.format(self.id, self.kind.value, self.origin, printer.format_term(self.conjecture))


@dataclass(frozen=True)
class DeclarationStatus(object):
    label: str
    kind: str
    ok: bool = True
    message: str = None


@dataclass
class CheckReport(object):
    mode: Mode
    statuses: list = field(default_factory=list)
    conjecture_type: syntax.Type = None
    obligations: list = field(default_factory=list)
    diagnostics: list = field(default_factory=list)
    theory: syntax.Theory = syntax.Theory()
    conjecture: syntax.Term = None
    auto_discharged: set = field(default_factory=set)

    @property
    def well_formed(self):
        return not self.diagnostics

    @property
    def typing_obligations(self):
        return [obligation for obligation in self.obligations if obligation.kind != ObligationKind.CONJECTURE]

    @property
    def open_obligations(self):
        return [obligation for obligation in self.obligations if obligation.id not in self.auto_discharged]


# =================================================================================================================
# CHECKER
# =================================================================================================================

@dataclass(frozen=True)
class _Pending(object):
    kind: ObligationKind
    context: syntax.Context
    conjecture: syntax.Term
    origin: Origin


class TypeChecker(object):
    """
    Bidirectional checker of declarations and terms against an already elaborated theory. Elaboration annotates
    every equality with its type. Obligations are collected in DHOL form in the pending list
    """

    def __init__(self, theory, mode=Mode.STRONG_EPSILON, label=None, in_axiom=False):
        self._theory = theory
        self._mode = mode
        self._label = label
        self._in_axiom = in_axiom
        self.pending = list()

    @property
    def mode(self):
        return self._mode

    def declaration(self, decl):
        """
        Checks a declaration and returns its elaborated form
        :param decl: Declaration
        :return: Declaration
        """

        name = getattr(decl, 'name', None)
        if name is not None and name in self._theory.names:
            raise exceptions.KernelError('"{}" is already declared'.format(name), pos=decl.pos)

        if isinstance(decl, syntax.BaseTypeDecl):
            if decl.telescope and self._mode == Mode.SIMPLE_HOL:
                raise exceptions.ModeError(
                    'Dependent base type "{}" is not allowed in simple HOL'.format(decl.name), pos=decl.pos)
            ctx = syntax.Context()
            telescope = list()
            for bound, ty in decl.telescope:
                ty = self.check_type(ty, ctx)
                telescope.append((bound, ty))
                ctx = ctx.extend(syntax.ConstDecl(bound, ty))
            return syntax.BaseTypeDecl(decl.name, tuple(telescope), pos=decl.pos)
        if isinstance(decl, syntax.ConstDecl):
            return syntax.ConstDecl(decl.name, self.check_type(decl.type, syntax.Context()), pos=decl.pos)

        return syntax.AxiomDecl(decl.label, self.check_bool(decl.term, syntax.Context()), pos=decl.pos)

    def context(self, ctx):
        """
        Checks a context entry by entry and returns it elaborated
        :param ctx: Context
        :return: Context
        """

        result = syntax.Context()
        for decl in ctx:
            if isinstance(decl, syntax.ConstDecl):
                result = result.extend(syntax.ConstDecl(decl.name, self.check_type(decl.type, result), pos=decl.pos))
            else:
                result = result.extend(syntax.AxiomDecl(decl.label, self.check_bool(decl.term, result), pos=decl.pos))

        return result

    def infer(self, t, ctx):
        """
        Returns the elaborated term and its type
        :param t: Term
        :param ctx: Context
        :return: tuple(Term, Type)
        """

        if isinstance(t, syntax.Var):
            ty = ctx.constants.get(t.name)
            if ty is None:
                ty = self._theory.constants.get(t.name)
            if ty is None:
                raise exceptions.UnboundNameError('Unbound name "{}"'.format(t.name), pos=t.pos)
            return t, ty

        if isinstance(t, syntax.App):
            fun, fun_type = self.infer(t.fun, ctx)
            if not isinstance(fun_type, syntax.Pi):
                raise exceptions.NotAFunctionError(
                    '"{}" of type "{}" cannot be applied'.format(
                        printer.format_term(fun), printer.format_type(fun_type)), pos=t.pos)
            arg = self.check(t.arg, fun_type.domain, ctx, 'app-conv')
            result = syntax.subst_type(fun_type.codomain, fun_type.bound, arg)
            if isinstance(arg, syntax.Lambda):
                result = syntax.beta_reduce_type(result)
            return syntax.App(fun, arg, pos=t.pos), result

        if isinstance(t, syntax.Bot):
            return t, syntax.Bool()

        if isinstance(t, syntax.Implies):
            lhs = self.check_bool(t.lhs, ctx)
            rhs = self.check_bool(t.rhs, self._assume(ctx, lhs))
            return syntax.Implies(lhs, rhs, pos=t.pos), syntax.Bool()

        if isinstance(t, syntax.Eq):
            if t.ty is not None:
                ty = self.check_type(t.ty, ctx)
                lhs = self.check(t.lhs, ty, ctx, 'eq-conv')
            else:
                lhs, ty = self.infer(t.lhs, ctx)
            rhs = self.check(t.rhs, ty, ctx, 'eq-conv')
            return syntax.Eq(ty, lhs, rhs, pos=t.pos), syntax.Bool()

        if isinstance(t, syntax.Lambda):
            annot = self.check_type(t.annot, ctx)
            bound, body, inner = self._bind(t.bound, annot, t.body, ctx)
            body, body_type = self.infer(body, inner)
            return syntax.Lambda(bound, annot, body, pos=t.pos), syntax.Pi(bound, annot, body_type)

        if isinstance(t, syntax.Forall):
            annot = self.check_type(t.annot, ctx)
            bound, body, inner = self._bind(t.bound, annot, t.body, ctx)
            return syntax.Forall(bound, annot, self.check_bool(body, inner), pos=t.pos), syntax.Bool()

        if isinstance(t, syntax.Choice):
            annot = self.check_type(t.annot, ctx)
            bound, body, inner = self._bind(t.bound, annot, t.body, ctx)
            body = self.check_bool(body, inner)
            if self._mode == Mode.STRONG_EPSILON:
                self._emit(
                    ObligationKind.CHOICE_WITNESS, ctx, syntax.exists(bound, annot, body), t.pos, 'eps1-type')
            elif self._mode == Mode.WEAK_EPSILON:
                self._emit(
                    ObligationKind.TYPE_INHABITED, ctx, syntax.neg(syntax.Forall(bound, annot, syntax.Bot())),
                    t.pos, 'eps2-type')
            return syntax.Choice(bound, annot, body, pos=t.pos), annot

        raise TypeError('Not a term: {!r}'.format(t))

    def check(self, t, expected, ctx, rule='conv'):
        term, actual = self.infer(t, ctx)
        self.type_equal(actual, expected, ctx, pos=t.pos, rule=rule)
        return term

    def check_bool(self, t, ctx):
        term, ty = self.infer(t, ctx)
        if not isinstance(ty, syntax.Bool):
            raise exceptions.TypeMismatchError(
                'Expected a boolean but "{}" has type "{}"'.format(printer.format_term(term), printer.format_type(ty)),
                pos=t.pos)
        return term

    def check_type(self, ty, ctx):
        """
        Checks that a type is well formed, base type arguments included, and returns it elaborated
        :param ty: Type
        :param ctx: Context
        :return: Type
        """

        if isinstance(ty, syntax.Bool):
            return ty

        if isinstance(ty, syntax.Base):
            decl = self._theory.base_types.get(ty.name)
            if decl is None:
                raise exceptions.UnboundNameError('Unknown base type "{}"'.format(ty.name), pos=ty.pos)
            if len(ty.args) != decl.arity:
                raise exceptions.TypeMismatchError(
                    'Type "{}" expects {} arguments but got {}'.format(ty.name, decl.arity, len(ty.args)), pos=ty.pos)
            if ty.args and self._mode == Mode.SIMPLE_HOL:
                raise exceptions.ModeError(
                    'Dependent type "{}" is not allowed in simple HOL'.format(printer.format_type(ty)), pos=ty.pos)
            mapping = dict()
            args = list()
            for (bound, expected), arg in zip(decl.telescope, ty.args):
                arg = self.check(arg, syntax.subst_type_many(expected, mapping), ctx, 'type-arg')
                mapping[bound] = arg
                args.append(arg)
            return syntax.Base(ty.name, tuple(args), pos=ty.pos)

        if isinstance(ty, syntax.Pi):
            if self._mode == Mode.SIMPLE_HOL and not syntax.is_arrow(ty):
                raise exceptions.ModeError(
                    'Dependent type "{}" is not allowed in simple HOL'.format(printer.format_type(ty)), pos=ty.pos)
            domain = self.check_type(ty.domain, ctx)
            bound, codomain, inner = self._bind(ty.bound, domain, ty.codomain, ctx, is_type=True)
            return syntax.Pi(bound, domain, self.check_type(codomain, inner), pos=ty.pos)

        raise TypeError('Not a type: {!r}'.format(ty))

    def type_equal(self, a, b, ctx, pos=None, rule='conv'):
        """
        Reduces the equality of two well formed types to obligations on base type arguments
        :param a: Type
        :param b: Type
        :param ctx: Context
        :param pos: Pos or None
        :param rule: str
        """

        if syntax.alpha_eq_type(a, b):
            return

        if isinstance(a, syntax.Base) and isinstance(b, syntax.Base) and a.name == b.name:
            decl = self._theory.base_types[a.name]
            mapping = dict()
            for (bound, ty), lhs, rhs in zip(decl.telescope, a.args, b.args):
                if not syntax.alpha_eq(syntax.beta_reduce(lhs), syntax.beta_reduce(rhs)):
                    self._emit(
                        ObligationKind.TYPE_EQ, ctx, syntax.Eq(syntax.subst_type_many(ty, mapping), lhs, rhs), pos, rule)
                mapping[bound] = lhs
            return

        if isinstance(a, syntax.Pi) and isinstance(b, syntax.Pi):
            self.type_equal(a.domain, b.domain, ctx, pos=pos, rule=rule)
            if a.bound == '_' and b.bound == '_':
                self.type_equal(a.codomain, b.codomain, ctx, pos=pos, rule=rule)
                return
            avoid = self._scope(ctx) | set(syntax.type_free_vars(a)) | set(syntax.type_free_vars(b))
            bound = syntax.fresh_name(a.bound if a.bound != '_' else b.bound, avoid)
            inner = ctx.extend(syntax.ConstDecl(bound, a.domain))
            self.type_equal(
                syntax.subst_type(a.codomain, a.bound, syntax.Var(bound)),
                syntax.subst_type(b.codomain, b.bound, syntax.Var(bound)), inner, pos=pos, rule=rule)
            return

        raise exceptions.TypeMismatchError(
            'Type "{}" does not match "{}"'.format(printer.format_type(a), printer.format_type(b)), pos=pos)

    def _scope(self, ctx):
        return set(ctx.constants) | self._theory.names

    def _bind(self, bound, annot, body, ctx, is_type=False):
        """
        Enters a binder. The bound name is renamed when it would shadow a name already in scope so contexts
        never hold two entries with the same name
        """

        if bound == '_':
            return bound, body, ctx

        scope = self._scope(ctx)
        if bound in scope:
            free = syntax.type_free_vars(body) if is_type else syntax.free_vars(body)
            new_bound = syntax.fresh_name(bound, scope | set(free))
            if is_type:
                body = syntax.subst_type(body, bound, syntax.Var(new_bound))
            else:
                body = syntax.subst(body, bound, syntax.Var(new_bound))
            bound = new_bound

        return bound, body, ctx.extend(syntax.ConstDecl(bound, annot))

    def _assume(self, ctx, hypothesis):
        return ctx.extend(syntax.AxiomDecl('hyp{}'.format(len(ctx.axioms) + 1), hypothesis))

    def _emit(self, kind, ctx, conjecture, pos, rule):
        if self._in_axiom:
            kind = ObligationKind.AXIOM_WELL_FORMED
        self.pending.append(_Pending(kind, ctx, conjecture, Origin(pos, rule, self._label)))


# =================================================================================================================
# OBLIGATIONS
# =================================================================================================================

_DECLARATION_KINDS = {syntax.BaseTypeDecl: 'type', syntax.ConstDecl: 'const', syntax.AxiomDecl: 'axiom'}


class _ObligationBuilder(object):
    """
    Erases pending obligations against the erased prefix of the theory, merging alpha-equal ones
    """

    def __init__(self, mode):
        self._mode = mode
        self._declarations = list()
        self._seen = set()
        self.obligations = list()

    def add_declaration(self, decl):
        variant = self._mode.variant
        if variant is None:
            self._declarations.append(decl)
        else:
            self._declarations.extend(erasure.erase_theory(syntax.Theory([decl]), variant=variant).hol_theory)

    def build(self, pending):
        hol_theory = syntax.Theory(self._declarations)
        variant = self._mode.variant
        built = list()
        for item in pending:
            if variant is None:
                hol_context, conjecture = item.context, item.conjecture
            else:
                hol_context = erasure.erase_context(item.context, variant)
                conjecture = erasure.erase_term(item.conjecture, variant)
            key = (syntax.canonical_key(conjecture), tuple(syntax.declaration_key(decl) for decl in hol_context))
            if key in self._seen:
                logger.debug('Merged duplicated obligation from {}'.format(item.origin))
                continue
            self._seen.add(key)
            obligation = Obligation(
                'o{:03d}'.format(len(self.obligations) + 1), item.kind, hol_theory, hol_context, conjecture,
                item.origin, source=item.conjecture)
            self.obligations.append(obligation)
            built.append(obligation)

        return built


def _prepare(thy, mode):
    report = check_theory(thy, mode=mode, discharge_locally=False)
    if not report.well_formed:
        raise exceptions.KernelError(report.diagnostics[0])
    builder = _ObligationBuilder(mode)
    for decl in report.theory:
        builder.add_declaration(decl)

    return report.theory, builder


def infer_type(thy, ctx, t, mode=Mode.STRONG_EPSILON):
    """
    Infers the type of a term in a theory and a context
    :param thy: Theory
    :param ctx: Context or None
    :param t: Term
    :param mode: Mode
    :return: tuple(Type, list(Obligation))
    """

    theory, builder = _prepare(thy, mode)
    checker = TypeChecker(theory, mode)
    _, ty = checker.infer(t, checker.context(ctx or syntax.Context()))

    return ty, builder.build(checker.pending)


def elaborate(thy, ctx, t, mode=Mode.SIMPLE_HOL):
    """
    Returns the term with every equality annotated with its type
    :param thy: Theory
    :param ctx: Context or None
    :param t: Term
    :param mode: Mode
    :return: Term
    """

    theory, _ = _prepare(thy, mode)
    checker = TypeChecker(theory, mode)
    term, _ = checker.infer(t, checker.context(ctx or syntax.Context()))

    return term


def type_equal(thy, ctx, a, b, mode=Mode.STRONG_EPSILON):
    """
    Returns the obligations that make two types equal. Raises TypeMismatchError when they differ structurally
    :param thy: Theory
    :param ctx: Context or None
    :param a: Type
    :param b: Type
    :param mode: Mode
    :return: list(Obligation)
    """

    theory, builder = _prepare(thy, mode)
    checker = TypeChecker(theory, mode)
    context = checker.context(ctx or syntax.Context())
    checker.type_equal(checker.check_type(a, context), checker.check_type(b, context), context)

    return builder.build(checker.pending)


def check_theory(thy, conjecture=None, mode=Mode.STRONG_EPSILON, discharge_locally=True):
    """
    Checks every declaration of a theory in order, then the conjecture. Declarations that fail structurally are
    reported and skipped. The provability of the conjecture becomes the last obligation
    :param thy: Theory
    :param conjecture: Term or None
    :param mode: Mode
    :param discharge_locally: bool, whether to run the local prover on every obligation
    :return: CheckReport
    """

    report = CheckReport(mode)
    builder = _ObligationBuilder(mode)
    elaborated = list()

    for decl in thy:
        kind = _DECLARATION_KINDS[type(decl)]
        checker = TypeChecker(
            syntax.Theory(elaborated), mode, label=decl.label, in_axiom=isinstance(decl, syntax.AxiomDecl))
        try:
            new_decl = checker.declaration(decl)
        except exceptions.KernelError as exc:
            logger.warning('Declaration "{}" is ill-formed: {}'.format(decl.label, exc))
            report.diagnostics.append('{} "{}": {}'.format(kind, decl.label, exc))
            report.statuses.append(DeclarationStatus(decl.label, kind, ok=False, message=str(exc)))
            continue
        builder.build(checker.pending)
        builder.add_declaration(new_decl)
        elaborated.append(new_decl)
        report.statuses.append(DeclarationStatus(decl.label, kind))

    report.theory = syntax.Theory(elaborated)

    if conjecture is not None:
        checker = TypeChecker(report.theory, mode, label='conjecture')
        try:
            term, ty = checker.infer(conjecture, syntax.Context())
            report.conjecture_type = ty
            if not isinstance(ty, syntax.Bool):
                raise exceptions.TypeMismatchError(
                    'The conjecture must be a boolean but has type "{}"'.format(printer.format_type(ty)),
                    pos=conjecture.pos)
        except exceptions.KernelError as exc:
            logger.warning('Conjecture is ill-formed: {}'.format(exc))
            report.diagnostics.append('conjecture: {}'.format(exc))
        else:
            report.conjecture = term
            builder.build(checker.pending)
            builder.build([_Pending(
                ObligationKind.CONJECTURE, syntax.Context(), term, Origin(conjecture.pos, 'conjecture', 'conjecture'))])

    report.obligations = list(builder.obligations)
    if discharge_locally:
        report.auto_discharged = {obligation.id for obligation in report.obligations if auto_discharge(obligation)}

    logger.debug('Checked {} declarations ({}): {} obligations, {} discharged locally'.format(
        len(thy), mode.value, len(report.obligations), len(report.auto_discharged)))

    return report


def choice_rule_instance(choice):
    """
    Returns t[x/eps x:A. t], the conclusion of the choice rule for eps x:A. t
    :param choice: Choice
    :return: Term
    """

    return syntax.subst(choice.body, choice.bound, choice)


# =================================================================================================================
# LOCAL PROVER
# =================================================================================================================

def auto_discharge(obligation, depth=consts.AUTO_DISCHARGE_DEPTH):
    """
    Tries to prove an obligation locally. A small goal directed prover handles reflexivity, hypothesis lookup,
    introduction of implications and universals, and refutation of the hypotheses by modus ponens and instantiation
    of universals with declared constants. When it fails, the Horn fragment of the hypotheses and the negated goal
    is saturated with equality reasoning (see saturation.refute)
    :param obligation: Obligation
    :param depth: int
    :return: bool
    """

    hypotheses = [decl.term for decl in list(obligation.hol_theory.axioms) + list(obligation.hol_context.axioms)]
    constants = dict(obligation.hol_theory.constants)
    constants.update(obligation.hol_context.constants)

    if _LocalProver(constants).holds(obligation.conjecture, _Hypotheses.from_terms(hypotheses), depth):
        return True

    return saturation.refute(hypotheses, obligation.conjecture, constants)


class _Hypotheses(object):
    def __init__(self, terms, keys):
        self.terms = terms
        self.keys = keys

    @classmethod
    def from_terms(cls, terms):
        return cls(tuple(terms), frozenset(syntax.canonical_key(t) for t in terms))

    def extend(self, term):
        key = syntax.canonical_key(term)
        if key in self.keys:
            return self
        return _Hypotheses(self.terms + (term, ), self.keys | {key})

    def __contains__(self, term):
        return syntax.canonical_key(term) in self.keys


class _LocalProver(object):
    def __init__(self, constants):
        self._constants = constants
        self._refuted = dict()

    def holds(self, goal, hypotheses, depth):
        if isinstance(goal, syntax.Eq) and syntax.alpha_eq(goal.lhs, goal.rhs):
            return True
        if goal in hypotheses:
            return True
        if isinstance(goal, syntax.Implies):
            return self.holds(goal.rhs, hypotheses.extend(goal.lhs), depth)
        if isinstance(goal, syntax.Forall):
            avoid = set(self._constants) | set(syntax.free_vars(goal))
            for term in hypotheses.terms:
                avoid.update(syntax.free_vars(term))
            name = syntax.fresh_name(goal.bound, avoid)
            constants = dict(self._constants)
            constants[name] = goal.annot
            return _LocalProver(constants).holds(syntax.rename_bound(goal, name), hypotheses, depth)

        return self.inconsistent(hypotheses, depth)

    def inconsistent(self, hypotheses, depth):
        key = (hypotheses.keys, depth)
        if key not in self._refuted:
            self._refuted[key] = False
            self._refuted[key] = any(self.refutes(term, hypotheses, depth) for term in hypotheses.terms)
        return self._refuted[key]

    def refutes(self, term, hypotheses, depth):
        if isinstance(term, syntax.Bot):
            return True
        if depth <= 0:
            return False
        if isinstance(term, syntax.Implies):
            return self.holds(term.lhs, hypotheses, depth - 1) and self.refutes(term.rhs, hypotheses, depth - 1)
        if isinstance(term, syntax.Forall):
            for name, ty in self._constants.items():
                if syntax.alpha_eq_type(ty, term.annot):
                    if self.refutes(syntax.subst(term.body, term.bound, syntax.Var(name)), hypotheses, depth - 1):
                        return True
        return False
