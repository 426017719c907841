#!/usr/bin/env python
# -*- coding: utf-8 -*-

"""
Module that contains exceptions raised by tpDcc-libs-dhol
"""

from __future__ import print_function, division, absolute_import


class DholError(Exception):
    """
    Base exception for all errors raised by the library
    """

    def __init__(self, message, pos=None):
        self.message = message
        self.pos = pos
        super(DholError, self).__init__(self.__str__())

    def __str__(self):
        if self.pos is not None:
            return '{}: {}'.format(self.pos, self.message)
        return self.message


class ParseError(DholError):
    pass


class UnknownIdentifierError(ParseError):
    pass


class ArityError(ParseError):
    pass


class KernelError(DholError):
    """
    Structural failure found while type-checking a theory
    """

    pass


class UnboundNameError(KernelError):
    pass


class NotAFunctionError(KernelError):
    pass


class TypeMismatchError(KernelError):
    pass


class ModeError(KernelError):
    pass


class ThfError(DholError):
    pass


class OracleError(DholError):
    pass


class CorpusError(DholError):
    pass


class UsageError(DholError):
    pass
