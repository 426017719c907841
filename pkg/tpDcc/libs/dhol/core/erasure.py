#! /usr/bin/env python
# -*- coding: utf-8 -*-

"""
Module that contains the translation from DHOL to HOL.

Dependent base types lose their arguments and every type A is paired with a partial equivalence relation A*
that remembers which erased values inhabit A. The strong and weak variants only disagree on how choice terms
are translated.
"""

from __future__ import print_function, division, absolute_import

import enum
import logging
from dataclasses import dataclass, field

from tpDcc.libs.dhol.core import consts, exceptions, syntax

logger = logging.getLogger(consts.LIB_ID)


class ErasureVariant(enum.Enum):
    STRONG = 'strong'
    WEAK = 'weak'


@dataclass(frozen=True)
class ErasedTheory(object):
    """
    Result of erasing a theory and a context
    """

    hol_theory: syntax.Theory
    hol_context: syntax.Context = syntax.Context()
    per_names: dict = field(default_factory=dict)
    provenance: dict = field(default_factory=dict, compare=False)


def per_name(base_name):
    return '{}{}'.format(base_name, consts.PER_SUFFIX)


def erase_type(ty):
    """
    Returns the simple HOL type of a DHOL type. Both variants erase types identically
    :param ty: Type
    :return: Type
    """

    if isinstance(ty, syntax.Bool):
        return ty
    if isinstance(ty, syntax.Base):
        return syntax.Base(ty.name, pos=ty.pos)
    if isinstance(ty, syntax.Pi):
        return syntax.Pi('_', erase_type(ty.domain), erase_type(ty.codomain), pos=ty.pos)

    raise TypeError('Not a type: {!r}'.format(ty))


def per(ty, variant=ErasureVariant.STRONG):
    """
    Returns the partial equivalence relation of a type as a binary predicate ^ u v . A* u v
    :param ty: Type
    :param variant: ErasureVariant
    :return: Term
    """

    avoid = set(syntax.type_free_vars(ty))
    u = syntax.fresh_name('u', avoid)
    v = syntax.fresh_name('v', avoid | {u})
    erased = erase_type(ty)
    body = per_apply(ty, syntax.Var(u), syntax.Var(v), variant)

    return syntax.Lambda(u, erased, syntax.Lambda(v, erased, body))


def per_apply(ty, lhs, rhs, variant=ErasureVariant.STRONG):
    """
    Returns A* lhs rhs with the relation already reduced against its arguments
    :param ty: Type
    :param lhs: Term, erased term
    :param rhs: Term, erased term
    :param variant: ErasureVariant
    :return: Term
    """

    return _eraser(variant).per_apply(ty, lhs, rhs)


def erase_term(t, variant=ErasureVariant.STRONG):
    """
    Erases an elaborated DHOL term (every equality carries its type)
    :param t: Term
    :param variant: ErasureVariant
    :return: Term
    """

    return _eraser(variant).term(t)


def naive_erase_term(t):
    """
    Strong erasure without the guard on choice terms: eps x:A. t becomes eps x:A'. t'. This translation is
    incomplete and is only kept to exhibit its counterexample
    :param t: Term
    :return: Term
    """

    return _NaiveEraser().term(t)


def erase_context(ctx, variant=ErasureVariant.STRONG):
    """
    Erases a context: typed variables keep their erased type plus their typing assumption
    :param ctx: Context
    :param variant: ErasureVariant
    :return: Context
    """

    declarations, _ = _eraser(variant).declarations(ctx)
    return syntax.Context(declarations)


def erase_theory(thy, ctx=None, variant=ErasureVariant.STRONG):
    """
    Erases a theory and an optional context
    :param thy: Theory
    :param ctx: Context or None
    :param variant: ErasureVariant
    :return: ErasedTheory
    """

    eraser = _eraser(variant)
    declarations, provenance = eraser.declarations(thy)
    context_declarations, context_provenance = eraser.declarations(ctx or syntax.Context())
    provenance.update(context_provenance)
    per_names = {name: per_name(name) for name in thy.base_types}

    logger.debug('Erased {} declarations into {} ({})'.format(len(thy), len(declarations), variant.value))

    return ErasedTheory(
        syntax.Theory(declarations), syntax.Context(context_declarations), per_names=per_names,
        provenance=provenance)


def _eraser(variant):
    return _WeakEraser() if variant == ErasureVariant.WEAK else _StrongEraser()


class _StrongEraser(object):
    variant = ErasureVariant.STRONG

    def term(self, t):
        if isinstance(t, (syntax.Var, syntax.Bot)):
            return t
        if isinstance(t, syntax.App):
            return syntax.App(self.term(t.fun), self.term(t.arg), pos=t.pos)
        if isinstance(t, syntax.Implies):
            return syntax.Implies(self.term(t.lhs), self.term(t.rhs), pos=t.pos)
        if isinstance(t, syntax.Lambda):
            return syntax.Lambda(t.bound, erase_type(t.annot), self.term(t.body), pos=t.pos)
        if isinstance(t, syntax.Eq):
            if t.ty is None:
                raise exceptions.DholError('Cannot erase an equality whose type is unknown', pos=t.pos)
            return self.per_apply(t.ty, self.term(t.lhs), self.term(t.rhs))
        if isinstance(t, syntax.Forall):
            t = self.unclash(t)
            guard = self.per_apply(t.annot, syntax.Var(t.bound), syntax.Var(t.bound))
            return syntax.Forall(
                t.bound, erase_type(t.annot), syntax.Implies(guard, self.term(t.body)), pos=t.pos)
        if isinstance(t, syntax.Choice):
            return self.choice(self.unclash(t))

        raise TypeError('Not a term: {!r}'.format(t))

    @staticmethod
    def unclash(t):
        """
        Renames the binder of a Forall or Choice whose annotation mentions a variable of the same name. The guard
        moves the annotation arguments under the binder
        """

        taken = set(syntax.type_free_vars(t.annot))
        if t.bound not in taken:
            return t
        name = syntax.fresh_name(t.bound, taken | set(syntax.free_vars(t.body)))
        return type(t)(name, t.annot, syntax.rename_bound(t, name), pos=t.pos)

    def choice(self, t):
        guard = self.per_apply(t.annot, syntax.Var(t.bound), syntax.Var(t.bound))
        return syntax.Choice(t.bound, erase_type(t.annot), syntax.conj(guard, self.term(t.body)), pos=t.pos)

    def per_apply(self, ty, lhs, rhs):
        if isinstance(ty, syntax.Bool):
            return syntax.Eq(ty, lhs, rhs)
        if isinstance(ty, syntax.Base):
            args = [self.term(arg) for arg in ty.args]
            return syntax.apply(syntax.Var(per_name(ty.name)), *(args + [lhs, rhs]))
        if isinstance(ty, syntax.Pi):
            avoid = set(syntax.free_vars(lhs)) | set(syntax.free_vars(rhs)) | set(syntax.type_free_vars(ty))
            x = syntax.fresh_name('x' if ty.bound == '_' else ty.bound, avoid)
            y = syntax.fresh_name(x, avoid | {x})
            domain = erase_type(ty.domain)
            codomain = syntax.subst_type(ty.codomain, ty.bound, syntax.Var(x))
            premise = self.per_apply(ty.domain, syntax.Var(x), syntax.Var(y))
            conclusion = self.per_apply(
                codomain, syntax.App(lhs, syntax.Var(x)), syntax.App(rhs, syntax.Var(y)))
            return syntax.Forall(x, domain, syntax.Forall(y, domain, syntax.Implies(premise, conclusion)))

        raise TypeError('Not a type: {!r}'.format(ty))

    def declarations(self, theory):
        result = list()
        provenance = dict()

        def _emit(source, *erased):
            for decl in erased:
                result.append(decl)
                provenance[decl] = source

        for decl in theory:
            if isinstance(decl, syntax.BaseTypeDecl):
                _emit(decl, *self.base_type(decl))
            elif isinstance(decl, syntax.ConstDecl):
                typing = self.per_apply(decl.type, syntax.Var(decl.name), syntax.Var(decl.name))
                _emit(
                    decl, syntax.ConstDecl(decl.name, erase_type(decl.type), pos=decl.pos),
                    syntax.AxiomDecl('{}{}'.format(decl.name, consts.TYPING_AXIOM_SUFFIX), typing, pos=decl.pos))
            else:
                _emit(decl, syntax.AxiomDecl(decl.label, self.term(decl.term), pos=decl.pos))

        return result, provenance

    def base_type(self, decl):
        """
        a : pi x1:A1 ... xn:An . tp becomes a : tp, a* : A1' -> ... -> An' -> a -> a -> o and the axiom
        ! x1 ... xn u v . a* x1 ... xn u v => u = v
        """

        carrier = syntax.Base(decl.name)
        domains = [erase_type(ty) for _, ty in decl.telescope]
        names = [name for name, _ in decl.telescope]
        u = syntax.fresh_name('u', set(names))
        v = syntax.fresh_name('v', set(names) | {u})
        relation = syntax.Var(per_name(decl.name))

        body = syntax.Implies(
            syntax.apply(relation, *[syntax.Var(name) for name in names + [u, v]]),
            syntax.Eq(carrier, syntax.Var(u), syntax.Var(v)))
        body = syntax.Forall(u, carrier, syntax.Forall(v, carrier, body))
        for name, domain in reversed(list(zip(names, domains))):
            body = syntax.Forall(name, domain, body)

        return [
            syntax.BaseTypeDecl(decl.name, pos=decl.pos),
            syntax.ConstDecl(relation.name, syntax.arrow(*(domains + [carrier, carrier, syntax.Bool()])), pos=decl.pos),
            syntax.AxiomDecl('{}{}'.format(consts.PER_AXIOM_PREFIX, decl.name), body, pos=decl.pos),
        ]


class _WeakEraser(_StrongEraser):
    variant = ErasureVariant.WEAK

    def choice(self, t):
        """
        eps z . (? x . G x & t) & z = (eps x . G x & t) | ~(? x . G x & t) & z = (eps x . G x)
        where G x is the relation of the annotation applied to x and x
        """

        erased = erase_type(t.annot)
        guard = self.per_apply(t.annot, syntax.Var(t.bound), syntax.Var(t.bound))
        guarded_body = syntax.conj(guard, self.term(t.body))
        witness = syntax.exists(t.bound, erased, guarded_body)
        preferred = syntax.Choice(t.bound, erased, guarded_body)
        fallback = syntax.Choice(t.bound, erased, guard)

        avoid = set(syntax.free_vars(preferred)) | set(syntax.free_vars(fallback)) | {t.bound}
        z = syntax.Var(syntax.fresh_name(t.bound, avoid))
        body = syntax.disj(
            syntax.conj(witness, syntax.Eq(erased, z, preferred)),
            syntax.conj(syntax.neg(witness), syntax.Eq(erased, z, fallback)))

        return syntax.Choice(z.name, erased, body, pos=t.pos)


class _NaiveEraser(_StrongEraser):
    def choice(self, t):
        return syntax.Choice(t.bound, erase_type(t.annot), self.term(t.body), pos=t.pos)
