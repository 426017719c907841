#! /usr/bin/env python
# -*- coding: utf-8 -*-

"""
Module that contains the abstract syntax shared by DHOL and HOL: terms, types, declarations, theories and
contexts, together with free variables, capture-avoiding substitution and alpha-equivalence.

Binders are named. Substitution renames a binder only when it would capture, and fresh names are derived
deterministically from the binder name (x -> x1 -> x2 ...), so printed output is stable across runs.
"""

from __future__ import print_function, division, absolute_import

import functools
from dataclasses import dataclass, field

from tpDcc.libs.dhol.core import consts


@dataclass(frozen=True)
class Pos(object):
    line: int
    col: int

    def __str__(self):
        return '{}:{}'.format(self.line, self.col)


def _pos_field():
    return field(default=None, compare=False, repr=False)


# =================================================================================================================
# TYPES
# =================================================================================================================

class Type(object):
    pass


@dataclass(frozen=True)
class Bool(Type):
    pos: Pos = _pos_field()


@dataclass(frozen=True)
class Base(Type):
    """
    Base type applied to its arguments: a t1 ... tn. Simple base types have no arguments.
    """

    name: str
    args: tuple = ()
    pos: Pos = _pos_field()

    def __post_init__(self):
        object.__setattr__(self, 'args', tuple(self.args))


@dataclass(frozen=True)
class Pi(Type):
    bound: str
    domain: Type
    codomain: Type
    pos: Pos = _pos_field()


# =================================================================================================================
# TERMS
# =================================================================================================================

class Term(object):
    pass


@dataclass(frozen=True)
class Var(Term):
    name: str
    pos: Pos = _pos_field()


@dataclass(frozen=True)
class Lambda(Term):
    bound: str
    annot: Type
    body: Term
    pos: Pos = _pos_field()


@dataclass(frozen=True)
class App(Term):
    fun: Term
    arg: Term
    pos: Pos = _pos_field()


@dataclass(frozen=True)
class Bot(Term):
    pos: Pos = _pos_field()


@dataclass(frozen=True)
class Implies(Term):
    lhs: Term
    rhs: Term
    pos: Pos = _pos_field()


@dataclass(frozen=True)
class Eq(Term):
    """
    Typed equality t =_A u. The type is None until the kernel elaborates the term.
    """

    ty: Type
    lhs: Term
    rhs: Term
    pos: Pos = _pos_field()


@dataclass(frozen=True)
class Forall(Term):
    bound: str
    annot: Type
    body: Term
    pos: Pos = _pos_field()


@dataclass(frozen=True)
class Choice(Term):
    bound: str
    annot: Type
    body: Term
    pos: Pos = _pos_field()


BINDERS = (Lambda, Forall, Choice)


# =================================================================================================================
# DECLARATIONS
# =================================================================================================================

class Declaration(object):
    pass


@dataclass(frozen=True)
class BaseTypeDecl(Declaration):
    """
    a : Pi x1:A1. ... Pi xn:An. tp
    """

    name: str
    telescope: tuple = ()
    pos: Pos = _pos_field()

    def __post_init__(self):
        object.__setattr__(self, 'telescope', tuple(tuple(entry) for entry in self.telescope))

    @property
    def arity(self):
        return len(self.telescope)

    @property
    def label(self):
        return self.name


@dataclass(frozen=True)
class ConstDecl(Declaration):
    name: str
    type: Type
    pos: Pos = _pos_field()

    @property
    def label(self):
        return self.name


@dataclass(frozen=True)
class AxiomDecl(Declaration):
    label: str
    term: Term
    pos: Pos = _pos_field()


@dataclass(frozen=True)
class Theory(object):
    """
    Ordered sequence of declarations. Later declarations may only mention names introduced earlier.
    """

    declarations: tuple = ()

    def __post_init__(self):
        object.__setattr__(self, 'declarations', tuple(self.declarations))

    def __iter__(self):
        return iter(self.declarations)

    def __len__(self):
        return len(self.declarations)

    def __bool__(self):
        return bool(self.declarations)

    def extend(self, *declarations):
        return type(self)(self.declarations + tuple(declarations))

    @functools.cached_property
    def base_types(self):
        return {decl.name: decl for decl in self.declarations if isinstance(decl, BaseTypeDecl)}

    @functools.cached_property
    def constants(self):
        return {decl.name: decl.type for decl in self.declarations if isinstance(decl, ConstDecl)}

    @property
    def axioms(self):
        return [decl for decl in self.declarations if isinstance(decl, AxiomDecl)]

    @property
    def names(self):
        names = set(self.base_types)
        names.update(self.constants)
        return names


@dataclass(frozen=True)
class Context(Theory):
    """
    Like a theory but without base type declarations: typed variables and assumptions.
    """

    def __post_init__(self):
        super(Context, self).__post_init__()
        for decl in self.declarations:
            if isinstance(decl, BaseTypeDecl):
                raise ValueError('Contexts cannot declare base types: "{}"'.format(decl.name))


# =================================================================================================================
# DERIVED CONNECTIVES
# =================================================================================================================

def neg(t):
    return Implies(t, Bot())


def top():
    return neg(Bot())


def conj(t, u):
    return neg(Implies(t, neg(u)))


def disj(t, u):
    return Implies(neg(t), u)


def exists(bound, annot, body):
    return neg(Forall(bound, annot, neg(body)))


def neq(ty, lhs, rhs):
    return neg(Eq(ty, lhs, rhs))


def arrow(*types):
    """
    Builds the non-dependent function type A1 -> ... -> An
    :param types: list(Type)
    :return: Type
    """

    result = types[-1]
    for domain in reversed(types[:-1]):
        result = Pi('_', domain, result)

    return result


def apply(fun, *args):
    for arg in args:
        fun = App(fun, arg)
    return fun


def unapply(t):
    """
    Splits an application spine into its head and its arguments
    :param t: Term
    :return: tuple(Term, list(Term))
    """

    args = list()
    while isinstance(t, App):
        args.append(t.arg)
        t = t.fun
    args.reverse()

    return t, args


def numeral(n):
    result = Var(consts.ZERO_NAME)
    for _ in range(n):
        result = App(Var(consts.SUCC_NAME), result)
    return result


def as_numeral(t):
    """
    Returns the natural number represented by an iterated successor chain, or None
    :param t: Term
    :return: int or None
    """

    count = 0
    while isinstance(t, App) and isinstance(t.fun, Var) and t.fun.name == consts.SUCC_NAME:
        count += 1
        t = t.arg
    if isinstance(t, Var) and t.name == consts.ZERO_NAME:
        return count

    return None


def is_arrow(ty):
    return isinstance(ty, Pi) and ty.bound not in type_free_vars(ty.codomain)


def is_simple(ty):
    if isinstance(ty, Bool):
        return True
    if isinstance(ty, Base):
        return not ty.args
    if isinstance(ty, Pi):
        return is_arrow(ty) and is_simple(ty.domain) and is_simple(ty.codomain)
    return False


# =================================================================================================================
# FREE VARIABLES
# =================================================================================================================

def free_vars(t):
    """
    Returns the free variables of a term, including the ones living inside type annotations,
    in order of first occurrence
    :param t: Term
    :return: tuple(str)
    """

    found = dict()
    _collect_term(t, frozenset(), found)
    return tuple(found)


def type_free_vars(ty):
    found = dict()
    _collect_type(ty, frozenset(), found)
    return tuple(found)


def _collect_term(t, bound, found):
    if isinstance(t, Var):
        if t.name not in bound:
            found.setdefault(t.name, None)
    elif isinstance(t, App):
        _collect_term(t.fun, bound, found)
        _collect_term(t.arg, bound, found)
    elif isinstance(t, Implies):
        _collect_term(t.lhs, bound, found)
        _collect_term(t.rhs, bound, found)
    elif isinstance(t, Eq):
        if t.ty is not None:
            _collect_type(t.ty, bound, found)
        _collect_term(t.lhs, bound, found)
        _collect_term(t.rhs, bound, found)
    elif isinstance(t, BINDERS):
        _collect_type(t.annot, bound, found)
        _collect_term(t.body, bound | {t.bound}, found)


def _collect_type(ty, bound, found):
    if isinstance(ty, Base):
        for arg in ty.args:
            _collect_term(arg, bound, found)
    elif isinstance(ty, Pi):
        _collect_type(ty.domain, bound, found)
        _collect_type(ty.codomain, bound | {ty.bound}, found)


# =================================================================================================================
# SUBSTITUTION
# =================================================================================================================

def fresh_name(name, avoid):
    """
    Returns the given name if it is not in avoid, otherwise the first numbered variant of its stem that is
    :param name: str
    :param avoid: set(str)
    :return: str
    """

    if name not in avoid:
        return name
    stem = name.rstrip('0123456789') or '{}_'.format(name)
    index = 1
    while True:
        candidate = '{}{}'.format(stem, index)
        if candidate not in avoid:
            return candidate
        index += 1


def subst(t, name, value):
    """
    Capture-avoiding substitution t[name/value]
    :param t: Term
    :param name: str
    :param value: Term
    :return: Term
    """

    return subst_many(t, {name: value})


def subst_many(t, mapping):
    """
    Simultaneous capture-avoiding substitution t[x1/u1, ..., xn/un]
    :param t: Term
    :param mapping: dict(str, Term)
    :return: Term
    """

    mapping = _clean_mapping(mapping)
    if not mapping:
        return t
    return _subst_term(t, mapping)


def subst_type(ty, name, value):
    return subst_type_many(ty, {name: value})


def subst_type_many(ty, mapping):
    mapping = _clean_mapping(mapping)
    if not mapping:
        return ty
    return _subst_type(ty, mapping)


def _clean_mapping(mapping):
    return {k: v for k, v in mapping.items() if not (isinstance(v, Var) and v.name == k)}


def _subst_term(t, mapping):
    if isinstance(t, Var):
        return mapping.get(t.name, t)
    if isinstance(t, App):
        return App(_subst_term(t.fun, mapping), _subst_term(t.arg, mapping), pos=t.pos)
    if isinstance(t, Bot):
        return t
    if isinstance(t, Implies):
        return Implies(_subst_term(t.lhs, mapping), _subst_term(t.rhs, mapping), pos=t.pos)
    if isinstance(t, Eq):
        ty = _subst_type(t.ty, mapping) if t.ty is not None else None
        return Eq(ty, _subst_term(t.lhs, mapping), _subst_term(t.rhs, mapping), pos=t.pos)
    if isinstance(t, BINDERS):
        annot = _subst_type(t.annot, mapping)
        bound, body = _subst_under_binder(t.bound, t.body, mapping, _subst_term, free_vars)
        return type(t)(bound, annot, body, pos=t.pos)

    raise TypeError('Not a term: {!r}'.format(t))


def _subst_type(ty, mapping):
    if isinstance(ty, Bool):
        return ty
    if isinstance(ty, Base):
        if not ty.args:
            return ty
        return Base(ty.name, tuple(_subst_term(arg, mapping) for arg in ty.args), pos=ty.pos)
    if isinstance(ty, Pi):
        domain = _subst_type(ty.domain, mapping)
        bound, codomain = _subst_under_binder(ty.bound, ty.codomain, mapping, _subst_type, type_free_vars)
        return Pi(bound, domain, codomain, pos=ty.pos)

    raise TypeError('Not a type: {!r}'.format(ty))


def _subst_under_binder(bound, body, mapping, subst_fn, fv_fn):
    body_fv = fv_fn(body)
    inner = {k: v for k, v in mapping.items() if k != bound and k in body_fv}
    if not inner:
        return bound, body

    clash = set()
    for value in inner.values():
        clash.update(free_vars(value))
    if bound in clash:
        new_bound = fresh_name(bound, clash | set(body_fv) | set(inner))
        inner[bound] = Var(new_bound)
        bound = new_bound

    return bound, subst_fn(body, inner)


def rename_bound(binder, new_name):
    """
    Returns the body of a binder with its bound variable renamed
    :param binder: Lambda or Forall or Choice or Pi
    :param new_name: str
    :return: Term or Type
    """

    if isinstance(binder, Pi):
        return subst_type(binder.codomain, binder.bound, Var(new_name))
    return subst(binder.body, binder.bound, Var(new_name))


def beta_reduce(t):
    """
    Normalizes every beta redex of the given term (normal order)
    :param t: Term
    :return: Term
    """

    if isinstance(t, App):
        fun = beta_reduce(t.fun)
        if isinstance(fun, Lambda):
            return beta_reduce(subst(fun.body, fun.bound, t.arg))
        return App(fun, beta_reduce(t.arg), pos=t.pos)
    if isinstance(t, Implies):
        return Implies(beta_reduce(t.lhs), beta_reduce(t.rhs), pos=t.pos)
    if isinstance(t, Eq):
        ty = beta_reduce_type(t.ty) if t.ty is not None else None
        return Eq(ty, beta_reduce(t.lhs), beta_reduce(t.rhs), pos=t.pos)
    if isinstance(t, BINDERS):
        return type(t)(t.bound, beta_reduce_type(t.annot), beta_reduce(t.body), pos=t.pos)

    return t


def beta_reduce_type(ty):
    if isinstance(ty, Base) and ty.args:
        return Base(ty.name, tuple(beta_reduce(arg) for arg in ty.args), pos=ty.pos)
    if isinstance(ty, Pi):
        return Pi(ty.bound, beta_reduce_type(ty.domain), beta_reduce_type(ty.codomain), pos=ty.pos)
    return ty


def head_beta(fun, *args):
    """
    Applies fun to args, contracting the redexes created at the head
    :param fun: Term
    :param args: list(Term)
    :return: Term
    """

    for arg in args:
        if isinstance(fun, Lambda):
            fun = subst(fun.body, fun.bound, arg)
        else:
            fun = App(fun, arg)

    return fun


# =================================================================================================================
# ALPHA-EQUIVALENCE
# =================================================================================================================

def canonical_key(t):
    """
    Returns a hashable key of the term that is identical for alpha-equivalent terms
    :param t: Term
    :return: tuple
    """

    return _key_term(t, {}, 0)


def canonical_type_key(ty):
    return _key_type(ty, {}, 0)


def alpha_eq(t, u):
    """
    Returns whether two terms are equal up to consistent renaming of bound variables
    :param t: Term
    :param u: Term
    :return: bool
    """

    return canonical_key(t) == canonical_key(u)


def alpha_eq_type(a, b):
    return canonical_type_key(a) == canonical_type_key(b)


def _bind(env, name, level):
    env = dict(env)
    env[name] = level
    return env


def _key_term(t, env, depth):
    if isinstance(t, Var):
        level = env.get(t.name)
        return ('free', t.name) if level is None else ('bound', level)
    if isinstance(t, App):
        return 'app', _key_term(t.fun, env, depth), _key_term(t.arg, env, depth)
    if isinstance(t, Bot):
        return ('bot', )
    if isinstance(t, Implies):
        return 'imp', _key_term(t.lhs, env, depth), _key_term(t.rhs, env, depth)
    if isinstance(t, Eq):
        ty = _key_type(t.ty, env, depth) if t.ty is not None else None
        return 'eq', ty, _key_term(t.lhs, env, depth), _key_term(t.rhs, env, depth)
    if isinstance(t, BINDERS):
        return (
            type(t).__name__, _key_type(t.annot, env, depth),
            _key_term(t.body, _bind(env, t.bound, depth), depth + 1))

    raise TypeError('Not a term: {!r}'.format(t))


def _key_type(ty, env, depth):
    if isinstance(ty, Bool):
        return ('o', )
    if isinstance(ty, Base):
        return ('base', ty.name) + tuple(_key_term(arg, env, depth) for arg in ty.args)
    if isinstance(ty, Pi):
        return 'pi', _key_type(ty.domain, env, depth), _key_type(ty.codomain, _bind(env, ty.bound, depth), depth + 1)

    raise TypeError('Not a type: {!r}'.format(ty))


def declaration_key(decl):
    if isinstance(decl, BaseTypeDecl):
        return 'type', decl.name, tuple((name, canonical_type_key(ty)) for name, ty in decl.telescope)
    if isinstance(decl, ConstDecl):
        return 'const', decl.name, canonical_type_key(decl.type)
    return 'axiom', canonical_key(decl.term)
