#! /usr/bin/env python
# -*- coding: utf-8 -*-

"""
Module that contains the bridge to external THF provers and the batch discharge of obligations
"""

from __future__ import print_function, division, absolute_import

import os
import re
import time
import enum
import shlex
import logging
import tempfile
import subprocess
from concurrent import futures
from dataclasses import dataclass, field

from tpDcc.libs.python import jsonio, path as path_utils

from tpDcc.libs.dhol.core import consts, exceptions, kernel, oracle, thf, problemslib

logger = logging.getLogger(consts.LIB_ID)

_SZS_REGEX = re.compile(r'SZS status\s+(\w+)')


class SzsResult(enum.Enum):
    THEOREM = 'Theorem'
    COUNTER_SATISFIABLE = 'CounterSatisfiable'
    TIMEOUT = 'Timeout'
    GAVE_UP = 'GaveUp'
    ERROR = 'Error'


# SZS ontology values reported for problems with a conjecture, folded into the results we act upon
_SZS_ONTOLOGY = {
    'Theorem': SzsResult.THEOREM,
    'Equivalent': SzsResult.THEOREM,
    'TautologousConclusion': SzsResult.THEOREM,
    'WeakerConclusion': SzsResult.THEOREM,
    'EquivalentTheorem': SzsResult.THEOREM,
    'ContradictoryAxioms': SzsResult.THEOREM,
    'Unsatisfiable': SzsResult.THEOREM,
    'CounterSatisfiable': SzsResult.COUNTER_SATISFIABLE,
    'CounterTheorem': SzsResult.COUNTER_SATISFIABLE,
    'CounterEquivalent': SzsResult.COUNTER_SATISFIABLE,
    'Satisfiable': SzsResult.GAVE_UP,
    'Timeout': SzsResult.TIMEOUT,
    'ResourceOut': SzsResult.TIMEOUT,
    'GaveUp': SzsResult.GAVE_UP,
    'Unknown': SzsResult.GAVE_UP,
    'Incomplete': SzsResult.GAVE_UP,
    'Inappropriate': SzsResult.GAVE_UP,
    'MemoryOut': SzsResult.GAVE_UP,
    'Error': SzsResult.ERROR,
    'OSError': SzsResult.ERROR,
    'InputError': SzsResult.ERROR,
    'SyntaxError': SzsResult.ERROR,
    'SemanticError': SzsResult.ERROR,
    'TypeError': SzsResult.ERROR,
    'UsageError': SzsResult.ERROR,
}


@dataclass(frozen=True)
class SzsStatus(object):
    status: SzsResult
    time: float = 0.0
    detail: str = ''
    output: str = field(default='', repr=False)

    @property
    def proved(self):
        return self.status == SzsResult.THEOREM


@dataclass(frozen=True)
class ProverConfig(object):
    """
    External prover invocation. The command may use the {problem} and {timeout} placeholders; when {problem} is
    missing the problem path is appended as last argument
    """

    command: str
    time_limit: int = consts.DEFAULT_TIME_LIMIT
    success: tuple = (SzsResult.THEOREM, )

    def __post_init__(self):
        if self.time_limit <= 0:
            raise ValueError('Prover time limit must be positive, got {}'.format(self.time_limit))

    def arguments(self, problem_path):
        arguments = list()
        for argument in shlex.split(self.command):
            argument = argument.replace(consts.TIME_LIMIT_PLACEHOLDER, str(self.time_limit))
            arguments.append(argument.replace(consts.PROBLEM_PLACEHOLDER, problem_path))
        if consts.PROBLEM_PLACEHOLDER not in self.command:
            arguments.append(problem_path)
        return arguments


def parse_szs(output):
    """
    Returns the SZS result announced in prover output, or None when there is no SZS status line
    :param output: str
    :return: tuple(SzsResult, str) or None
    """

    match = _SZS_REGEX.search(output or '')
    if not match:
        return None
    value = match.group(1)

    return _SZS_ONTOLOGY.get(value, SzsResult.GAVE_UP), value


def run_atp(problem, cfg):
    """
    Runs the configured prover on a THF problem. Prover failures never raise: they are reported as statuses
    :param problem: ThfProblem
    :param cfg: ProverConfig
    :return: SzsStatus
    """

    start = time.monotonic()
    with tempfile.TemporaryDirectory() as temp_directory:
        problem_path = problemslib.write_text_file(
            os.path.join(temp_directory, '{}{}'.format(problem.name, consts.THF_EXT)), problem.text)
        arguments = cfg.arguments(problem_path)
        logger.debug('Running prover: {}'.format(' '.join(arguments)))
        try:
            process = subprocess.run(
                arguments, stdout=subprocess.PIPE, stderr=subprocess.STDOUT, universal_newlines=True,
                timeout=cfg.time_limit)
        except subprocess.TimeoutExpired as exc:
            output = exc.output if isinstance(exc.output, str) else ''
            return SzsStatus(SzsResult.TIMEOUT, time.monotonic() - start, 'time limit reached', output or '')
        except OSError as exc:
            logger.warning('Could not run prover "{}": {}'.format(cfg.command, exc))
            return SzsStatus(SzsResult.ERROR, time.monotonic() - start, 'spawn', str(exc))

    elapsed = time.monotonic() - start
    parsed = parse_szs(process.stdout)
    if parsed is None:
        return SzsStatus(SzsResult.GAVE_UP, elapsed, 'no SZS status line', process.stdout)

    result, value = parsed
    return SzsStatus(result, elapsed, value, process.stdout)


# =================================================================================================================
# DISCHARGE
# =================================================================================================================

class Method(enum.Enum):
    LOCAL = 'local'
    ORACLE = 'oracle'
    ATP = 'atp'
    NONE = 'none'


@dataclass
class Verdict(object):
    obligation: kernel.Obligation
    discharged: bool
    method: Method = Method.NONE
    status: str = 'Open'
    time: float = 0.0
    detail: str = ''
    countermodel: oracle.SearchResult = None

    @property
    def id(self):
        return self.obligation.id

    @property
    def refuted(self):
        return self.status == SzsResult.COUNTER_SATISFIABLE.value

    def line(self):
        state = 'discharged' if self.discharged else ('refuted' if self.refuted else 'open')
        text = '{} {} {} [{}] {} {:.2f}s'.format(
            self.id, self.obligation.kind.value, state, self.method.value, self.status, self.time)
        if self.detail:
            text = '{} ({})'.format(text, self.detail)
        return text


@dataclass
class DischargeReport(object):
    verdicts: list = field(default_factory=list)

    @property
    def success(self):
        return all(verdict.discharged for verdict in self.verdicts)

    @property
    def open(self):
        return [verdict for verdict in self.verdicts if not verdict.discharged]

    def lines(self):
        return [verdict.line() for verdict in self.verdicts]

    def to_dict(self):
        obligations = dict()
        for verdict in self.verdicts:
            entry = {
                'kind': verdict.obligation.kind.value,
                'status': verdict.status,
                'time': round(verdict.time, 3),
                'method': verdict.method.value,
                'discharged': verdict.discharged,
                'origin': str(verdict.obligation.origin),
            }
            if verdict.countermodel is not None and verdict.countermodel.model is not None:
                entry['countermodel'] = verdict.countermodel.to_dict()
            obligations[verdict.id] = entry

        return {'success': self.success, 'obligations': obligations}

    def write_summary(self, file_path):
        """
        Writes the machine readable summary: obligation id -> status, time, method
        :param file_path: str
        :return: str
        """

        file_path = path_utils.clean_path(file_path)
        jsonio.write_to_file(self.to_dict(), file_path)
        return file_path


def discharge_one(obligation, cfg=None, oracle_fallback=True, budget=None):
    """
    Tries, in order, the local prover, a countermodel search and the external prover
    :param obligation: Obligation
    :param cfg: ProverConfig or None
    :param oracle_fallback: bool
    :param budget: SearchBudget or None
    :return: Verdict
    """

    start = time.monotonic()
    if kernel.auto_discharge(obligation):
        return Verdict(obligation, True, Method.LOCAL, SzsResult.THEOREM.value, time.monotonic() - start)

    search = None
    if oracle_fallback:
        try:
            search = oracle.countermodel(
                obligation.hol_theory, obligation.conjecture, budget=budget, context=obligation.hol_context)
        except exceptions.OracleError as exc:
            logger.debug('Oracle cannot evaluate {}: {}'.format(obligation.id, exc))
        if search is not None and search.found:
            return Verdict(
                obligation, False, Method.ORACLE, SzsResult.COUNTER_SATISFIABLE.value, time.monotonic() - start,
                'countermodel with sizes {}'.format(search.model.sizes), countermodel=search)

    detail = ''
    if cfg is not None:
        try:
            problem = thf.emit_thf(obligation, obligation.id)
        except exceptions.ThfError as exc:
            status = SzsStatus(SzsResult.ERROR, detail=str(exc))
        else:
            status = run_atp(problem, cfg)
        if status.status in cfg.success:
            return Verdict(obligation, True, Method.ATP, status.status.value, time.monotonic() - start, status.detail)
        if status.status == SzsResult.COUNTER_SATISFIABLE:
            return Verdict(obligation, False, Method.ATP, status.status.value, time.monotonic() - start, status.detail)
        detail = 'prover: {} {}'.format(status.status.value, status.detail).strip()

    if search is not None and search.status == oracle.SearchStatus.NONE_UP_TO_BOUND:
        detail = '; '.join(filter(None, ['no countermodel up to the bound', detail]))
        return Verdict(
            obligation, True, Method.ORACLE, search.status.value, time.monotonic() - start, detail, countermodel=search)
    if search is not None:
        detail = '; '.join(filter(None, ['oracle: {}'.format(search.status.value), detail]))

    return Verdict(obligation, False, Method.NONE, 'Open', time.monotonic() - start, detail, countermodel=search)


def discharge(obligations, cfg=None, oracle_fallback=True, budget=None, jobs=1):
    """
    Discharges a batch of obligations, concurrently up to jobs workers. Verdicts keep the input order
    :param obligations: list(Obligation)
    :param cfg: ProverConfig or None
    :param oracle_fallback: bool
    :param budget: SearchBudget or None
    :param jobs: int
    :return: DischargeReport
    """

    obligations = list(obligations)
    if not obligations:
        return DischargeReport()

    def _discharge(obligation):
        return discharge_one(obligation, cfg=cfg, oracle_fallback=oracle_fallback, budget=budget)

    if jobs <= 1:
        verdicts = [_discharge(obligation) for obligation in obligations]
    else:
        with futures.ThreadPoolExecutor(max_workers=jobs) as executor:
            verdicts = list(executor.map(_discharge, obligations))

    report = DischargeReport(verdicts)
    logger.info('Discharged {} of {} obligations'.format(
        len(verdicts) - len(report.open), len(verdicts)))

    return report
