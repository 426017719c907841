#! /usr/bin/env python
# -*- coding: utf-8 -*-

"""
Module that contains the generator of the choice problem corpus: dependent choice over fixed-size finite sets
(fin n) and fixed-length lists (list n), together with the outcome expected for every problem under the strong
and the weak choice rules.
"""

from __future__ import print_function, division, absolute_import

import os
import enum
import logging
from dataclasses import dataclass, field

from tpDcc.libs.python import jsonio, path as path_utils

from tpDcc.libs.dhol.core import consts, exceptions, parser, printer, problemslib

logger = logging.getLogger(consts.LIB_ID)

# number of problems of the published collection
PUBLISHED_COUNT = 34

COLUMNS = ('eps1_typecheck', 'eps1_prove', 'eps2_typecheck', 'eps2_prove')

NAT_PRELUDE = """\
type nat : tp .
const 0 : nat .
const s : nat -> nat .
"""

FIN_PRELUDE = NAT_PRELUDE + """\
type fin : pi n : nat . tp .
const fz : pi n : nat . fin (s n) .
const fs : pi n : nat . fin n -> fin (s n) .
"""

LIST_PRELUDE = NAT_PRELUDE + """\
type list : pi n : nat . tp .
const nil : list 0 .
const cons : pi n : nat . nat -> list n -> list (s n) .
"""

_FIN_AT_LEAST = """\
axiom fz_fs_distinct : ! n : nat, x : fin n . fz n != fs n x .
axiom fs_injective : ! n : nat, x : fin n, y : fin n . fs n x = fs n y => x = y .
"""

_EMPTY = """\
const empty : pi n : nat . list n -> o .
axiom empty_nil : empty 0 nil .
axiom cons_not_empty : ! n : nat, h : nat, t : list n . ~ empty (s n) (cons n h t) .
"""

_SOURCES = {
    'choice_def1': FIN_PRELUDE + """\
const p : fin 2 -> o .
axiom p_witness : ? x : fin 2 . p x .
conjecture : p (eps x : fin 2 . p x) .
""",
    'choice_def2': FIN_PRELUDE + """\
const p : pi n : nat . fin n -> o .
axiom p_witness : ! n : nat . ? x : fin n . p n x .
conjecture : ! n : nat . p n (eps x : fin n . p n x) .
""",
    'choice_def3': FIN_PRELUDE + """\
type b : pi n : nat . tp .
const b0 : pi n : nat . b n .
const p : pi n : nat . b n -> o .
axiom p_witness : ! n : nat . ? x : b n . p n x .
conjecture : ! n : nat . p n (eps x : b n . p n x) .
""",
    'choice_eq1': FIN_PRELUDE + """\
conjecture : ! x : fin 1 . (eps y : fin 1 . y = x) = x .
""",
    'choice_eq2': FIN_PRELUDE + """\
conjecture : ! x : fin 2 . (eps y : fin 2 . y = x) = x .
""",
    'choice_nq': FIN_PRELUDE + """\
conjecture : (eps x : fin 2 . x != fz 1) != fz 1 .
""",
    'list_empty': LIST_PRELUDE + _EMPTY + """\
conjecture : empty 0 (eps l : list 0 . empty 0 l) .
""",
    'list_nonempty': LIST_PRELUDE + _EMPTY + """\
conjecture : ~ empty 1 (eps l : list 1 . empty 1 l) .
""",
    'list_head': LIST_PRELUDE + """\
const hd : pi n : nat . list (s n) -> nat .
axiom hd_cons : ! n : nat, h : nat, t : list n . hd n (cons n h t) = h .
conjecture : hd 0 (eps l : list 1 . hd 0 l = 0) = 0 .
""",
}


class Outcome(enum.Enum):
    YES = 'yes'
    NO = 'no'
    PROVER_DEPENDENT = 'prover-dependent'


Y, N, P = Outcome.YES, Outcome.NO, Outcome.PROVER_DEPENDENT


@dataclass
class CorpusEntry(object):
    name: str
    family: str
    source: str
    theory: object
    conjecture: object
    expected: dict = field(default_factory=dict)
    table_marks: dict = field(default_factory=dict)

    def expectation(self, column):
        return self.expected[column]

    def text(self):
        header = [self.name, 'family: {}'.format(self.family)]
        header.extend('expected {}: {}'.format(column, self.expected[column].value) for column in COLUMNS)
        return printer.format_theory(self.theory, self.conjecture, header=header)

    def to_dict(self):
        return {
            'family': self.family,
            'expected': {column: self.expected[column].value for column in COLUMNS},
            'table': {column: self.table_marks.get(column) for column in COLUMNS},
        }


def _marks(*values):
    return dict(zip(COLUMNS, values))


def _no_fp_source(size, regular):
    lines = [FIN_PRELUDE, _FIN_AT_LEAST]
    if regular:
        lines.append('axiom fin0_empty : ! x : fin 0 . $false .\n')
        for k in range(1, size + 1):
            lines.append(
                'axiom fin{k}_cases : ! x : fin {k} . x = fz {p} | ? y : fin {p} . x = fs {p} y .\n'.format(
                    k=k, p=k - 1))
    lines.append('conjecture : ! x0 : fin {n} . (^ x : fin {n} . eps y : fin {n} . x != y) x0 != x0 .\n'.format(
        n=size))
    return ''.join(lines)


def _no_fp_expectations(size, regular):
    """
    Returns (expected, table marks). Sizes 0 and 2..9 share a row of the results table; size 1 is absent from it.
    fin 1 has a single element, so the strong rule cannot type the choice and the conjecture is false. A possibly
    empty fin 0 can only be typed with the weak rule
    """

    if size == 1:
        return _marks(N, N, Y, N), _marks(None, None, None, None)
    if size == 0 and not regular:
        return _marks(N, P, Y, P), _marks(True, True, True, True)
    if size == 9 and not regular:
        return _marks(Y, Y, Y, P), _marks(True, True, True, False)
    return _marks(Y, Y, Y, Y), _marks(True, True, True, True)


def _catalog():
    catalog = [
        ('choice_def1', 'choice_def', _marks(Y, Y, Y, P), _marks(True, True, True, False)),
        ('choice_def2', 'choice_def', _marks(Y, Y, Y, P), _marks(True, True, True, False)),
        ('choice_def3', 'choice_def', _marks(Y, Y, Y, P), _marks(True, True, True, False)),
        ('choice_eq1', 'choice_eq', _marks(Y, Y, Y, P), _marks(True, True, True, False)),
        ('choice_eq2', 'choice_eq', _marks(Y, P, Y, P), _marks(True, False, True, False)),
        ('choice_nq', 'choice_nq', _marks(N, P, P, P), _marks(False, False, False, False)),
    ]
    for size in range(10):
        for regular in (True, False):
            name = 'no_fp_fin{}_{}'.format(size, 'reg' if regular else 'min')
            expected, table = _no_fp_expectations(size, regular)
            catalog.append((name, 'no_fp', expected, table))
    catalog.extend([
        ('list_empty', 'list', _marks(Y, Y, Y, P), _marks(True, True, True, False)),
        ('list_nonempty', 'list', _marks(N, P, P, P), _marks(False, False, False, False)),
        ('list_head', 'list', _marks(Y, P, Y, P), _marks(True, False, True, False)),
    ])
    return catalog


def names():
    """
    Returns the names of all problems of the corpus in generation order
    :return: list(str)
    """

    return [name for name, _, _, _ in _catalog()]


def problem_source(name):
    if name in _SOURCES:
        return _SOURCES[name]
    if name.startswith('no_fp_fin'):
        size, _, variant = name[len('no_fp_fin'):].partition('_')
        if size.isdigit() and int(size) <= 9 and variant in ('reg', 'min'):
            return _no_fp_source(int(size), variant == 'reg')

    raise exceptions.CorpusError('Unknown corpus problem "{}"'.format(name))


def gen_problem(name):
    """
    Generates a corpus problem by its name
    :param name: str
    :return: CorpusEntry
    """

    for entry_name, family, expected, table in _catalog():
        if entry_name == name:
            break
    else:
        raise exceptions.CorpusError('Unknown corpus problem "{}"'.format(name))

    source = problem_source(name)
    theory, conjecture = parser.parse_theory(source)

    return CorpusEntry(name, family, source, theory, conjecture, expected=expected, table_marks=table)


def gen_all():
    """
    Generates every problem of the corpus, in a fixed order
    :return: list(CorpusEntry)
    """

    entries = [gen_problem(name) for name in names()]
    if len(entries) != PUBLISHED_COUNT:
        logger.info('Generated {} problems; the published collection has {}'.format(len(entries), PUBLISHED_COUNT))

    return entries


def write_corpus(directory):
    """
    Writes every problem as <name>.dhol plus a JSON manifest with the expected outcomes
    :param directory: str
    :return: list(str), written file paths
    """

    directory = path_utils.clean_path(directory)
    if not os.path.isdir(directory):
        os.makedirs(directory)

    entries = gen_all()
    written = list()
    for entry in entries:
        written.append(problemslib.save_problem(entry.text(), entry.name, problems_path=directory))

    manifest = {
        'count': len(entries),
        'published_count': PUBLISHED_COUNT,
        'note': 'The published collection has {} problems; the {} problem descriptions yield {}'.format(
            PUBLISHED_COUNT, len(set(entry.family for entry in entries)), len(entries)),
        'columns': list(COLUMNS),
        'problems': {entry.name: entry.to_dict() for entry in entries},
    }
    manifest_path = path_utils.clean_path(os.path.join(directory, consts.MANIFEST_NAME))
    jsonio.write_to_file(manifest, manifest_path)
    written.append(manifest_path)

    logger.info('Wrote {} corpus problems into "{}"'.format(len(entries), directory))

    return written
