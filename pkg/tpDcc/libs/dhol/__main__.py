#! /usr/bin/env python
# -*- coding: utf-8 -*-

"""
Allows running the DHOL toolchain with python -m tpDcc.libs.dhol
"""

from __future__ import print_function, division, absolute_import

import sys

from tpDcc.libs.dhol import cli

sys.exit(cli.main())
