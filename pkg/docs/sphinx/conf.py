#! /usr/bin/env python
# -*- coding: utf-8 -*-

"""
Sphinx configuration for tpDcc-libs-dhol documentation
"""

import os
import sys

sys.path.insert(0, os.path.abspath('./../../'))

from tpDcc.libs.dhol.__version__ import __version__

project = u'tpDcc-libs-dhol'
copyright = u'2026, Tomas Poveda'
author = u'Tomas Poveda'
version = __version__
release = __version__

extensions = [
    'sphinx_rtd_theme'
]

master_doc = 'index'
html_theme = 'sphinx_rtd_theme'
