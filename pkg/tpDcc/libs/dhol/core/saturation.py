#! /usr/bin/env python
# -*- coding: utf-8 -*-

"""
Module that contains a bounded forward chaining prover for erased obligations.

Hypotheses and the negated goal are turned into Horn clauses over universally quantified variables. Clauses fire
when their premises match known ground facts modulo the equalities derived so far. New facts are only kept while
their terms stay below a depth bound computed from the input. Formulas outside the Horn fragment are dropped.
"""

from __future__ import print_function, division, absolute_import

import logging
from dataclasses import dataclass

from tpDcc.libs.dhol.core import consts, syntax

logger = logging.getLogger(consts.LIB_ID)


@dataclass(frozen=True)
class HornClause(object):
    """
    Premises (atoms and equalities) implying a head atom, or a contradiction when head is None
    """

    variables: frozenset
    body: tuple
    head: syntax.Term = None

    def with_premises(self, premises):
        return HornClause(self.variables, tuple(premises) + self.body, self.head)


def _is_negation(t):
    return isinstance(t, syntax.Implies) and isinstance(t.rhs, syntax.Bot)


def _is_atom(t):
    return not isinstance(t, (syntax.Bot, syntax.Implies, syntax.Forall))


class Clausifier(object):
    """
    Classical translation of HOL formulas into Horn clauses. Negated universals are skolemized with fresh
    functions of the variables in scope
    """

    def __init__(self, avoid):
        self._avoid = set(avoid)
        self.skolems = dict()

    def _fresh(self, name):
        name = syntax.fresh_name(name, self._avoid)
        self._avoid.add(name)
        return name

    def assume(self, t, variables=frozenset()):
        """
        Returns the clauses of a formula taken as true
        :param t: Term
        :param variables: frozenset(str), universally quantified names in scope
        :return: list(HornClause)
        """

        if isinstance(t, syntax.Bot):
            return [HornClause(variables, ())]
        if isinstance(t, syntax.Forall):
            name = self._fresh(t.bound)
            return self.assume(syntax.rename_bound(t, name), variables | {name})
        if _is_negation(t):
            return self.deny(t.lhs, variables)
        if isinstance(t, syntax.Implies):
            premises = self.premises(t.lhs)
            if premises is None:
                return []
            return [clause.with_premises(premises) for clause in self.assume(t.rhs, variables)]

        return [HornClause(variables, (), t)]

    def deny(self, t, variables=frozenset()):
        """
        Returns the clauses of the negation of a formula
        :param t: Term
        :param variables: frozenset(str)
        :return: list(HornClause)
        """

        if isinstance(t, syntax.Bot):
            return []
        if _is_negation(t):
            return self.assume(t.lhs, variables)
        if isinstance(t, syntax.Implies):
            return self.assume(t.lhs, variables) + self.deny(t.rhs, variables)
        if isinstance(t, syntax.Forall):
            name = self._fresh('sk_{}'.format(t.bound))
            self.skolems[name] = t.annot
            witness = syntax.apply(syntax.Var(name), *[syntax.Var(variable) for variable in sorted(variables)])
            return self.deny(syntax.subst(t.body, t.bound, witness), variables)

        return [HornClause(variables, (t, ))]

    def premises(self, t):
        """
        Returns the atoms whose conjunction is the formula, or None when it is not a conjunction of atoms
        """

        if _is_negation(t):
            inner = t.lhs
            if isinstance(inner, syntax.Bot):
                return []
            if _is_negation(inner):
                return self.premises(inner.lhs)
            if isinstance(inner, syntax.Implies) and _is_negation(inner.rhs):
                lhs, rhs = self.premises(inner.lhs), self.premises(inner.rhs.lhs)
                return None if lhs is None or rhs is None else lhs + rhs
            return None
        if _is_atom(t):
            return [t]

        return None


def term_depth(t):
    if isinstance(t, syntax.Eq):
        return max(term_depth(t.lhs), term_depth(t.rhs))
    _, args = syntax.unapply(t)
    if not args:
        return 0
    return 1 + max(term_depth(arg) for arg in args)


class _Classes(object):
    """
    Congruence closure over the ground terms registered so far. Classes are keyed by alpha-equivalence keys
    """

    def __init__(self):
        self._terms = dict()
        self._children = dict()
        self._parent = dict()
        self._members = dict()
        self._signatures = dict()
        self._pending = list()

    def _find(self, key):
        while key in self._parent:
            key = self._parent[key]
        return key

    def register(self, t):
        key = syntax.canonical_key(t)
        if key in self._terms:
            return key
        self._terms[key] = t
        self._members[key] = [t]
        if isinstance(t, syntax.App):
            children = (self.register(t.fun), self.register(t.arg))
            self._children[key] = children
            signature = (self._find(children[0]), self._find(children[1]))
            other = self._signatures.setdefault(signature, key)
            if other != key:
                self._pending.append((other, key))
        return key

    def lookup(self, t):
        """
        Returns the class of a term without registering it, or None when no known term is equal to it
        """

        key = syntax.canonical_key(t)
        if key in self._terms:
            return self._find(key)
        if isinstance(t, syntax.App):
            fun, arg = self.lookup(t.fun), self.lookup(t.arg)
            if fun is not None and arg is not None and (fun, arg) in self._signatures:
                return self._find(self._signatures[(fun, arg)])

        return None

    def same(self, lhs, rhs):
        if syntax.canonical_key(lhs) == syntax.canonical_key(rhs):
            return True
        root = self.lookup(lhs)
        return root is not None and root == self.lookup(rhs)

    def members(self, t):
        root = self.lookup(t)
        return [t] if root is None else list(self._members[root])

    def _union(self, left, right):
        left, right = self._find(left), self._find(right)
        if left == right:
            return False
        self._parent[right] = left
        self._members[left].extend(self._members.pop(right))
        return True

    def add(self, lhs, rhs):
        """
        Records an equation. Returns whether any class changed
        """

        self._pending.append((self.register(lhs), self.register(rhs)))
        return self.close()

    def close(self):
        """
        Applies the pending merges and merges congruent applications until stable. Returns whether any class
        changed
        """

        pending, self._pending = self._pending, list()
        changed = False
        for left, right in pending:
            changed = self._union(left, right) or changed
        if not changed:
            return False

        while True:
            self._signatures = dict()
            merged = False
            for key, (fun, arg) in self._children.items():
                other = self._signatures.setdefault((self._find(fun), self._find(arg)), key)
                merged = self._union(other, key) or merged
            if not merged:
                return True


class Saturation(object):
    """
    Forward chaining over Horn clauses until a contradiction, a fixed point or one of the limits. Premises are
    matched against known facts modulo the derived equalities
    """

    def __init__(self, clauses, depth_limit, max_rounds=consts.SATURATION_MAX_ROUNDS,
                 max_facts=consts.SATURATION_MAX_FACTS):
        self._clauses = list(clauses)
        self._depth_limit = depth_limit
        self._max_rounds = max_rounds
        self._max_facts = max_facts
        self._classes = _Classes()
        self._facts = dict()
        self._known = None
        self._count = 0

    @staticmethod
    def _symbol(t):
        head, args = syntax.unapply(t)
        return (head.name, len(args)) if isinstance(head, syntax.Var) else None

    def _signature(self, atom):
        roots = tuple(self._classes.lookup(arg) for arg in syntax.unapply(atom)[1])
        if None in roots:
            return None
        return self._symbol(atom), roots

    def _known_signatures(self):
        if self._known is None:
            self._known = {self._signature(fact) for facts in self._facts.values() for fact in facts}
        return self._known

    def _holds(self, atom):
        if isinstance(atom, syntax.Eq):
            return self._classes.same(atom.lhs, atom.rhs)
        signature = self._signature(atom)
        return signature is not None and signature in self._known_signatures()

    def _assert(self, atom):
        if isinstance(atom, syntax.Eq):
            if self._classes.add(atom.lhs, atom.rhs):
                self._known = None
                return True
            return False
        if self._symbol(atom) is None or self._holds(atom):
            return False

        for arg in syntax.unapply(atom)[1]:
            self._classes.register(arg)
        if self._classes.close():
            self._known = None
        self._facts.setdefault(self._symbol(atom), list()).append(atom)
        self._count += 1
        if self._known is not None:
            self._known.add(self._signature(atom))
        return True

    def _ematch(self, pattern, term, variables, binding):
        if isinstance(pattern, syntax.Var) and pattern.name in variables:
            bound = binding.get(pattern.name)
            if bound is None:
                extended = dict(binding)
                extended[pattern.name] = term
                yield extended
            elif self._classes.same(bound, term):
                yield binding
            return
        if not set(syntax.free_vars(pattern)) & variables:
            if self._classes.same(pattern, term):
                yield binding
            return
        if not isinstance(pattern, syntax.App):
            return

        for member in self._classes.members(term):
            if isinstance(member, syntax.App):
                for found in self._ematch(pattern.fun, member.fun, variables, binding):
                    for result in self._ematch(pattern.arg, member.arg, variables, found):
                        yield result

    def _matches(self, body, variables, binding):
        if not body:
            yield binding
            return

        instances = [syntax.subst_many(atom, binding) for atom in body]
        for index, atom in enumerate(instances):
            if not set(syntax.free_vars(atom)) & variables:
                if self._holds(atom):
                    for found in self._matches(body[:index] + body[index + 1:], variables, binding):
                        yield found
                return

        atom, rest = instances[0], body[1:]
        if isinstance(atom, syntax.Eq):
            for pattern, other in ((atom.lhs, atom.rhs), (atom.rhs, atom.lhs)):
                if not set(syntax.free_vars(other)) & variables:
                    for found in self._ematch(pattern, other, variables, binding):
                        for result in self._matches(rest, variables, found):
                            yield result
                    return
            return

        patterns = syntax.unapply(atom)[1]
        for fact in list(self._facts.get(self._symbol(atom), ())):
            bindings = [binding]
            for pattern, term in zip(patterns, syntax.unapply(fact)[1]):
                bindings = [found for current in bindings for found in self._ematch(pattern, term, variables, current)]
            for found in bindings:
                for result in self._matches(rest, variables, found):
                    yield result

    def refute(self):
        """
        Returns whether the clauses are contradictory. False means no contradiction was found within the limits
        :return: bool
        """

        for _ in range(self._max_rounds):
            changed = False
            for clause in self._clauses:
                for binding in list(self._matches(clause.body, clause.variables, dict())):
                    if clause.head is None:
                        return True
                    head = syntax.subst_many(clause.head, binding)
                    if set(syntax.free_vars(head)) & clause.variables or term_depth(head) > self._depth_limit:
                        continue
                    changed = self._assert(head) or changed
                if self._count > self._max_facts:
                    logger.debug('Saturation stopped after {} facts'.format(self._count))
                    return False
            if not changed:
                return False

        return False


def refute(hypotheses, goal, constants):
    """
    Tries to derive a contradiction from the hypotheses and the negation of the goal
    :param hypotheses: list(Term)
    :param goal: Term
    :param constants: iterable(str), names already in use
    :return: bool
    """

    avoid = set(constants) | set(syntax.free_vars(goal))
    for term in hypotheses:
        avoid.update(syntax.free_vars(term))

    clausifier = Clausifier(avoid)
    clauses = list()
    for term in hypotheses:
        clauses.extend(clausifier.assume(term))
    clauses.extend(clausifier.deny(goal))

    depth = 0
    for clause in clauses:
        for atom in clause.body + ((clause.head, ) if clause.head is not None else ()):
            depth = max(depth, term_depth(atom))

    return Saturation(clauses, depth + 1).refute()
