#! /usr/bin/env python
# -*- coding: utf-8 -*-

"""
Module that contains the toolchain settings: a key=value configuration file merged with the environment and
the command line flags. Flags override the file and the file overrides the environment
"""

from __future__ import print_function, division, absolute_import

import os
import logging
from dataclasses import dataclass, replace

from tpDcc.libs.python import python, fileio

from tpDcc.libs.dhol.core import consts, exceptions, bridge, oracle

logger = logging.getLogger(consts.LIB_ID)


def _paths(value):
    if isinstance(value, str):
        return tuple(path.strip() for path in value.split(os.pathsep) if path.strip())
    return tuple(python.force_list(value))


_CONVERTERS = {
    'prover_cmd': str,
    'time_limit': int,
    'max_size': int,
    'max_models': int,
    'time_cap': float,
    'jobs': int,
    'problem_paths': _paths,
}


@dataclass(frozen=True)
class Settings(object):
    prover_cmd: str = None
    time_limit: int = consts.DEFAULT_TIME_LIMIT
    max_size: int = consts.DEFAULT_MAX_SIZE
    max_models: int = consts.DEFAULT_MAX_MODELS
    time_cap: float = consts.DEFAULT_TIME_CAP
    jobs: int = 1
    problem_paths: tuple = ()

    def prover_config(self):
        """
        Returns the external prover configuration or None when no prover command is set
        :return: ProverConfig or None
        """

        if not self.prover_cmd:
            return None
        return bridge.ProverConfig(self.prover_cmd, time_limit=self.time_limit)

    def budget(self):
        return oracle.SearchBudget(max_size=self.max_size, max_models=self.max_models, time_cap=self.time_cap)


def _convert(key, value, source):
    if key not in _CONVERTERS:
        logger.warning('Ignoring unknown setting "{}" in {}'.format(key, source))
        return None
    try:
        return _CONVERTERS[key](value)
    except (TypeError, ValueError):
        raise exceptions.UsageError('Invalid value for setting "{}" in {}: {!r}'.format(key, source, value))


def read_settings_file(file_path):
    """
    Reads a key=value settings file. Blank lines and lines starting with # or ; are ignored
    :param file_path: str
    :return: dict
    """

    if not os.path.isfile(file_path):
        raise exceptions.UsageError('Settings file does not exists: "{}"'.format(file_path))

    values = dict()
    for line_number, line in enumerate(fileio.get_file_text(file_path).splitlines(), start=1):
        line = line.strip()
        if not line or line.startswith(('#', ';')):
            continue
        key, separator, value = line.partition('=')
        if not separator:
            raise exceptions.UsageError(
                'Expected key=value at "{}" line {}: {}'.format(file_path, line_number, line))
        key = key.strip()
        value = _convert(key, value.strip(), '"{}"'.format(file_path))
        if value is not None:
            values[key] = value

    return values


def environment_settings(environ=None):
    environ = os.environ if environ is None else environ
    values = dict()
    if environ.get(consts.PROVER_CMD_ENV_VAR):
        values['prover_cmd'] = environ[consts.PROVER_CMD_ENV_VAR]
    if environ.get(consts.PATHS_ENV_VAR):
        values['problem_paths'] = _paths(environ[consts.PATHS_ENV_VAR])

    return values


def resolve(flags=None, config_path=None, environ=None):
    """
    Merges environment, settings file and flags into a Settings instance. Flags with a None value are not set
    :param flags: dict or None
    :param config_path: str or None
    :param environ: dict or None
    :return: Settings
    """

    values = environment_settings(environ)
    if config_path:
        values.update(read_settings_file(config_path))
    for key, value in (flags or dict()).items():
        if value is None:
            continue
        converted = _convert(key, value, 'flags')
        if converted is not None:
            values[key] = converted

    settings = replace(Settings(), **values)
    if settings.jobs < 1:
        raise exceptions.UsageError('jobs must be at least 1, got {}'.format(settings.jobs))
    if settings.max_size < 1:
        raise exceptions.UsageError('max_size must be at least 1, got {}'.format(settings.max_size))
    if settings.time_limit <= 0:
        raise exceptions.UsageError('time_limit must be positive, got {}'.format(settings.time_limit))

    return settings
