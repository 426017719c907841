#! /usr/bin/env python
# -*- coding: utf-8 -*-

"""
Module that contains functions to locate, load and save DHOL problem files (.dhol)
"""

from __future__ import print_function, division, absolute_import

import os
import logging

from tpDcc.libs.python import python, fileio, path as path_utils

from tpDcc.libs.dhol.core import consts, exceptions, parser

logger = logging.getLogger(consts.LIB_ID)


def iterate_problem_root_paths(extra_paths=None):
    """
    Returns generator that iterates the locations where problem files can be located
    :param extra_paths: list(str) or str, paths coming from the settings file
    :return: generator(str)
    """

    all_problem_paths = list()
    if extra_paths:
        all_problem_paths.extend(python.force_list(extra_paths))

    problem_paths = os.environ.get(consts.PATHS_ENV_VAR, '').split(os.pathsep)
    all_problem_paths.extend(problem_paths)

    visited = set()
    for problem_path in all_problem_paths:
        if not problem_path or not os.path.isdir(problem_path):
            continue
        problem_path = path_utils.clean_path(problem_path)
        if problem_path in visited:
            continue
        visited.add(problem_path)
        yield problem_path


def iterate_problem_files(problems_path=None, extra_paths=None):
    """
    Iterator function that loops over all problem files found in problem paths
    :param problems_path: str
    :param extra_paths: list(str)
    :return: generator(str)
    """

    if problems_path and os.path.isdir(problems_path):
        paths_to_find = [problems_path]
    else:
        paths_to_find = iterate_problem_root_paths(extra_paths)

    for problem_path in paths_to_find:
        for root_dir, _, filenames in os.walk(problem_path):
            for file_name in sorted(filenames):
                if file_name.endswith(consts.PROBLEM_EXT):
                    yield path_utils.clean_path(os.path.join(root_dir, file_name))


def get_problem_names(problems_path=None, extra_paths=None):
    """
    Returns a list of all available problem names found in problem paths
    :param problems_path: str
    :param extra_paths: list(str)
    :return: list(str)
    """

    return [
        os.path.splitext(os.path.basename(problem_path))[0]
        for problem_path in iterate_problem_files(problems_path, extra_paths)]


def find_problem_path_by_name(problem_name, problems_path=None, extra_paths=None):
    """
    Returns the absolute problem path with the given name
    :param problem_name: str, name of the problem to find, without extension
    :param problems_path: str
    :param extra_paths: list(str)
    :return: str or None
    """

    for problem_path in iterate_problem_files(problems_path=problems_path, extra_paths=extra_paths):
        if os.path.splitext(os.path.basename(problem_path))[0] == problem_name:
            return problem_path

    return None


def load_problem_from_path(problem_path):
    """
    Parses the problem stored in the given path
    :param problem_path: str
    :return: tuple(Theory, Term or None) or None
    """

    if not problem_path or not os.path.isfile(problem_path):
        return None

    return parser.parse_theory(fileio.get_file_text(problem_path))


def load_problem(problem, extra_paths=None):
    """
    Loads a problem given either its file path or its name in the problem paths
    :param problem: str
    :param extra_paths: list(str)
    :return: tuple(str, Theory, Term or None) or None, problem name, theory and conjecture
    """

    problem_path = problem if os.path.isfile(problem) else find_problem_path_by_name(problem, extra_paths=extra_paths)
    if not problem_path:
        logger.warning('Problem "{}" does not exists!'.format(problem))
        return None

    theory, conjecture = load_problem_from_path(problem_path)
    problem_name = os.path.splitext(os.path.basename(problem_path))[0]

    return problem_name, theory, conjecture


def save_problem(text, problem_name, problems_path=None, override=True, extra_paths=None):
    """
    Saves the given problem text into the given directory path
    :param text: str
    :param problem_name: str
    :param problems_path: str
    :param override: bool
    :param extra_paths: list(str)
    :return: str or None, saved file path
    """

    if not problems_path or not os.path.isdir(problems_path):
        problems_path = list(iterate_problem_root_paths(extra_paths))
        if not problems_path:
            logger.warning('Impossible to save problem because no path to save problem defined')
            return None
        problems_path = problems_path[0]

    problem_file_name = problem_name
    if not problem_name.endswith(consts.PROBLEM_EXT):
        problem_file_name = '{}{}'.format(problem_name, consts.PROBLEM_EXT)

    problem_path = path_utils.clean_path(os.path.join(problems_path, problem_file_name))
    if not override and os.path.isfile(problem_path):
        logger.warning('Problem "{}" already exists: "{}"'.format(problem_name, problem_path))
        return None

    return write_text_file(problem_path, text)


def write_text_file(file_path, text):
    """
    Writes the given text into a file, creating or replacing it
    :param file_path: str
    :param text: str
    :return: str, written file path
    """

    created = fileio.create_file(os.path.basename(file_path), os.path.dirname(file_path))
    if not created:
        raise exceptions.DholError('Impossible to create file "{}"'.format(file_path))
    fileio.write_lines(created, text.splitlines())

    return path_utils.clean_path(created)
