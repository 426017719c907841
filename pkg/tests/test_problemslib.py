#! /usr/bin/env python
# -*- coding: utf-8 -*-

"""
Module that contains tests for the location, loading and saving of problem files
"""

import os

from tpDcc.libs.dhol.core import consts, syntax, problemslib

PROBLEM = 'type i : tp .\nconst c : i .\nconjecture : c = c .\n'


def test_save_and_load(tmp_path):
    problem_path = problemslib.save_problem(PROBLEM, 'reflexivity', problems_path=str(tmp_path))
    assert problem_path.endswith('reflexivity.dhol')
    assert problemslib.save_problem(PROBLEM, 'reflexivity', problems_path=str(tmp_path), override=False) is None

    theory, conjecture = problemslib.load_problem_from_path(problem_path)
    assert [decl.label for decl in theory] == ['i', 'c']
    assert conjecture == syntax.Eq(None, syntax.Var('c'), syntax.Var('c'))
    assert problemslib.load_problem_from_path(str(tmp_path / 'missing.dhol')) is None


def test_problem_paths_from_environment(tmp_path, monkeypatch):
    first = tmp_path / 'first'
    second = tmp_path / 'second'
    nested = second / 'nested'
    nested.mkdir(parents=True)
    first.mkdir()
    (first / 'a.dhol').write_text(PROBLEM)
    (nested / 'b.dhol').write_text(PROBLEM)
    (nested / 'notes.txt').write_text('not a problem')

    monkeypatch.setenv(consts.PATHS_ENV_VAR, os.pathsep.join([str(second), str(tmp_path / 'missing')]))
    roots = list(problemslib.iterate_problem_root_paths([str(first), str(first)]))
    assert len(roots) == 2
    assert problemslib.get_problem_names(extra_paths=[str(first)]) == ['a', 'b']
    assert problemslib.find_problem_path_by_name('b', extra_paths=[str(first)]).endswith('b.dhol')
    assert problemslib.find_problem_path_by_name('c') is None


def test_load_problem_by_name_or_path(tmp_path, monkeypatch):
    problem_path = problemslib.save_problem(PROBLEM, 'reflexivity', problems_path=str(tmp_path))
    monkeypatch.setenv(consts.PATHS_ENV_VAR, str(tmp_path))

    name, theory, _ = problemslib.load_problem('reflexivity')
    assert name == 'reflexivity'
    assert len(theory) == 2
    assert problemslib.load_problem(problem_path)[0] == 'reflexivity'
    assert problemslib.load_problem('missing') is None


def test_save_without_location(monkeypatch):
    monkeypatch.delenv(consts.PATHS_ENV_VAR, raising=False)
    assert problemslib.save_problem(PROBLEM, 'nowhere') is None


def test_write_text_file_replaces_content(tmp_path):
    target = str(tmp_path / 'notes.p')
    written = problemslib.write_text_file(target, 'first\nsecond\n')
    assert os.path.isfile(written)
    problemslib.write_text_file(target, 'third\n')
    assert (tmp_path / 'notes.p').read_text().splitlines() == ['third']
