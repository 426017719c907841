#!/usr/bin/env python
# -*- coding: utf-8 -*-

"""
Module that contains constant definitions used by tpDcc-libs-dhol
"""

from __future__ import print_function, division, absolute_import


LIB_ID = 'tpDcc-libs-dhol'
PROBLEM_EXT = '.dhol'
THF_EXT = '.p'
MANIFEST_NAME = 'manifest.json'

# environment variables
DEV_ENV_VAR = 'TPDCC_DEV'
PATHS_ENV_VAR = LIB_ID.replace('-', '_').upper()
PROVER_CMD_ENV_VAR = 'DHOL_PROVER_CMD'

# prover defaults
DEFAULT_TIME_LIMIT = 90
PROBLEM_PLACEHOLDER = '{problem}'
TIME_LIMIT_PLACEHOLDER = '{timeout}'

# finite model search defaults
DEFAULT_MAX_SIZE = 3
DEFAULT_MAX_MODELS = 2000000
DEFAULT_TIME_CAP = 60.0

# local prover search depth
AUTO_DISCHARGE_DEPTH = 3

# forward chaining limits of the local prover
SATURATION_MAX_ROUNDS = 64
SATURATION_MAX_FACTS = 5000

# names introduced by the erasure
PER_SUFFIX = '*'
PER_AXIOM_PREFIX = 'per_'
TYPING_AXIOM_SUFFIX = '_typing'

# surface syntax names used by numerals
ZERO_NAME = '0'
SUCC_NAME = 's'

# CLI exit codes
EXIT_OK = 0
EXIT_OPEN = 1
EXIT_STRUCTURAL = 2
EXIT_USAGE = 64
