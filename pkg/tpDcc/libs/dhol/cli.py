#! /usr/bin/env python
# -*- coding: utf-8 -*-

"""
Command line entry point of the DHOL toolchain.

    dhol check PROBLEM... [--eps1 | --eps2]
    dhol erase PROBLEM... [--strong | --weak] -o DIR
    dhol emit PROBLEM... [--eps1 | --eps2] -o DIR
    dhol prove PROBLEM... [--strong] [--weak] -o DIR
    dhol oracle PROBLEM... [--strong | --weak] [--budget-size N]
    dhol gen-corpus [-o DIR]

Exit codes: 0 success, 1 open obligations or unproved conjecture, 2 structural errors, 64 usage errors.
Results go to standard output, diagnostics to standard error.
"""

from __future__ import print_function, division, absolute_import

import os
import sys
import logging
import argparse

from tpDcc.libs.python import jsonio, path as path_utils

from tpDcc.libs.dhol import __version__
from tpDcc.libs.dhol.core import consts, exceptions, syntax, kernel, erasure, thf, bridge, oracle, corpus
from tpDcc.libs.dhol.core import settings as settings_lib, problemslib

logger = logging.getLogger(consts.LIB_ID)

_MODES = {'eps1': kernel.Mode.STRONG_EPSILON, 'eps2': kernel.Mode.WEAK_EPSILON}
_PAIRED_MODES = {
    erasure.ErasureVariant.STRONG: kernel.Mode.STRONG_EPSILON,
    erasure.ErasureVariant.WEAK: kernel.Mode.WEAK_EPSILON,
}


class _ArgumentParser(argparse.ArgumentParser):
    def error(self, message):
        raise exceptions.UsageError(message)


def _error(message):
    print('dhol: {}'.format(message), file=sys.stderr)


def _worst(codes):
    codes = list(codes)
    for code in (consts.EXIT_STRUCTURAL, consts.EXIT_OPEN):
        if code in codes:
            return code
    return consts.EXIT_OK


# =================================================================================================================
# ARGUMENTS
# =================================================================================================================

def _common_parser():
    common = _ArgumentParser(add_help=False)
    common.add_argument('problems', nargs='+', metavar='PROBLEM', help='.dhol file path or problem name')
    common.add_argument('--config', help='key=value settings file')
    common.add_argument('--prover-cmd', help='external THF prover command, may use {problem} and {timeout}')
    common.add_argument('--time-limit', type=int, help='prover time limit in seconds')
    common.add_argument('--budget-size', type=int, help='largest carrier size tried by the countermodel search')
    common.add_argument('--jobs', type=int, help='obligations discharged concurrently')
    common.add_argument('--json-report', metavar='PATH', help='write a machine readable summary')
    common.add_argument('--no-oracle', action='store_true', help='do not use the countermodel search')
    common.add_argument('-o', '--output-dir', default='.', help='directory for generated files')
    modes = common.add_mutually_exclusive_group()
    modes.add_argument('--eps1', dest='mode', action='store_const', const='eps1', help='strong choice typing rule')
    modes.add_argument('--eps2', dest='mode', action='store_const', const='eps2', help='weak choice typing rule')
    common.add_argument('--strong', action='store_true', help='strong erasure')
    common.add_argument('--weak', action='store_true', help='weak erasure')
    common.add_argument(
        '--force-variant', action='store_true', help='allow an erasure not paired with the typing rule')

    return common


def build_parser():
    parser = _ArgumentParser(prog='dhol', description='Dependently typed higher-order logic toolchain')
    parser.add_argument('--version', action='version', version='%(prog)s {}'.format(__version__.get_version()))
    subparsers = parser.add_subparsers(dest='command', metavar='COMMAND')
    subparsers.required = True

    common = _common_parser()
    commands = {
        'check': 'type check problems and discharge their typing obligations',
        'erase': 'write the erased problems as THF files',
        'emit': 'write every proof obligation as a THF file',
        'prove': 'type check, erase and prove the conjectures',
        'oracle': 'search a finite countermodel of the erased conjectures',
    }
    for name, help_text in commands.items():
        subparsers.add_parser(name, parents=[common], help=help_text)

    gen_corpus = subparsers.add_parser('gen-corpus', help='write the choice problem corpus')
    gen_corpus.add_argument('-o', '--output-dir', default='corpus', help='corpus directory')

    return parser


def _settings(args):
    flags = {
        'prover_cmd': args.prover_cmd,
        'time_limit': args.time_limit,
        'max_size': args.budget_size,
        'jobs': args.jobs,
    }
    return settings_lib.resolve(flags, config_path=args.config)


def _pairs(args, allow_both=False):
    """
    Returns the (mode, erasure variant) pairs selected by the flags
    """

    variants = list()
    if args.strong:
        variants.append(erasure.ErasureVariant.STRONG)
    if args.weak:
        variants.append(erasure.ErasureVariant.WEAK)
    if len(variants) > 1 and not allow_both:
        raise exceptions.UsageError('--strong and --weak cannot be combined with "{}"'.format(args.command))

    mode = _MODES.get(args.mode)
    if not variants:
        variants.append(mode.variant if mode else erasure.ErasureVariant.STRONG)

    pairs = list()
    for variant in variants:
        paired = _PAIRED_MODES[variant]
        if mode is not None and mode != paired and not args.force_variant:
            raise exceptions.UsageError(
                'The {} erasure pairs with --{}; pass --force-variant to use it with --{}'.format(
                    variant.value, paired.value, mode.value))
        pairs.append((mode or paired, variant))

    return pairs


def _load(problem, settings):
    loaded = problemslib.load_problem(problem, extra_paths=settings.problem_paths)
    if loaded is None:
        raise exceptions.UsageError('Problem "{}" not found'.format(problem))
    return loaded


def _output_path(directory, file_name):
    directory = path_utils.clean_path(directory)
    if not os.path.isdir(directory):
        os.makedirs(directory)
    return path_utils.clean_path(os.path.join(directory, file_name))


def _write(path, text):
    return problemslib.write_text_file(path, text)


def _write_json_report(args, summary):
    if args.json_report:
        jsonio.write_to_file(summary, path_utils.clean_path(args.json_report))


# =================================================================================================================
# COMMANDS
# =================================================================================================================

def _check_report(name, report):
    print('{}: {} {}, {} obligations'.format(
        name, report.mode.value, 'well-formed' if report.well_formed else 'ill-formed', len(report.obligations)))
    for diagnostic in report.diagnostics:
        _error('{}: {}'.format(name, diagnostic))


def _discharge(report, obligations, args, settings):
    result = bridge.discharge(
        obligations, cfg=settings.prover_config(), oracle_fallback=not args.no_oracle, budget=settings.budget(),
        jobs=settings.jobs)
    for line in result.lines():
        print('  {}'.format(line))
    summary = result.to_dict()
    summary.update({'mode': report.mode.value, 'well_formed': report.well_formed, 'diagnostics': report.diagnostics})
    code = consts.EXIT_STRUCTURAL if not report.well_formed else (
        consts.EXIT_OK if result.success else consts.EXIT_OPEN)

    return code, summary


def _run_check(args, settings):
    mode = _pairs(args)[0][0]
    codes = list()
    summary = dict()
    for problem in args.problems:
        name, theory, conjecture = _load(problem, settings)
        report = kernel.check_theory(theory, conjecture, mode=mode, discharge_locally=False)
        _check_report(name, report)
        code, summary[name] = _discharge(report, report.typing_obligations, args, settings)
        codes.append(code)
    _write_json_report(args, summary)

    return _worst(codes)


def _run_prove(args, settings):
    codes = list()
    summary = dict()
    for problem in args.problems:
        name, theory, conjecture = _load(problem, settings)
        if conjecture is None:
            raise exceptions.UsageError('Problem "{}" has no conjecture to prove'.format(name))
        for mode, variant in _pairs(args, allow_both=True):
            report = kernel.check_theory(theory, conjecture, mode=mode, discharge_locally=False)
            _check_report(name, report)
            if not report.well_formed:
                codes.append(consts.EXIT_STRUCTURAL)
                continue
            problem_text = thf.emit_erased(theory, name, conjecture, variant=variant, mode=mode).text
            path = _write(_output_path(args.output_dir, '{}.{}{}'.format(name, variant.value, consts.THF_EXT)),
                          problem_text)
            print('  wrote {}'.format(path))
            code, summary['{}.{}'.format(name, variant.value)] = _discharge(
                report, report.obligations, args, settings)
            codes.append(code)
    _write_json_report(args, summary)

    return _worst(codes)


def _run_erase(args, settings):
    codes = list()
    for problem in args.problems:
        name, theory, conjecture = _load(problem, settings)
        for mode, variant in _pairs(args, allow_both=True):
            try:
                problem_text = thf.emit_erased(theory, name, conjecture, variant=variant, mode=mode).text
            except exceptions.ThfError as exc:
                _error('{}: {}'.format(name, exc))
                codes.append(consts.EXIT_STRUCTURAL)
                continue
            path = _output_path(args.output_dir, '{}.{}{}'.format(name, variant.value, consts.THF_EXT))
            print(_write(path, problem_text))
            codes.append(consts.EXIT_OK)

    return _worst(codes)


def _run_emit(args, settings):
    mode = _pairs(args)[0][0]
    codes = list()
    for problem in args.problems:
        name, theory, conjecture = _load(problem, settings)
        report = kernel.check_theory(theory, conjecture, mode=mode, discharge_locally=False)
        for diagnostic in report.diagnostics:
            _error('{}: {}'.format(name, diagnostic))
        for obligation in report.obligations:
            problem_name = '{}.{}.{}'.format(name, mode.value, obligation.id)
            path = _output_path(args.output_dir, '{}{}'.format(problem_name, consts.THF_EXT))
            print(_write(path, thf.emit_thf(obligation, problem_name).text))
        codes.append(consts.EXIT_OK if report.well_formed else consts.EXIT_STRUCTURAL)

    return _worst(codes)


def _run_oracle(args, settings):
    mode, variant = _pairs(args)[0]
    budget = settings.budget()
    codes = list()
    summary = dict()
    for problem in args.problems:
        name, theory, conjecture = _load(problem, settings)
        report = kernel.check_theory(theory, conjecture, mode=mode, discharge_locally=False)
        if not report.well_formed:
            _check_report(name, report)
            codes.append(consts.EXIT_STRUCTURAL)
            continue
        erased = erasure.erase_theory(report.theory, variant=variant)
        goal = erasure.erase_term(report.conjecture, variant) if report.conjecture is not None else syntax.Bot()
        try:
            result = oracle.countermodel(erased.hol_theory, goal, budget=budget)
        except exceptions.OracleError as exc:
            _error('{}: {}'.format(name, exc))
            codes.append(consts.EXIT_STRUCTURAL)
            continue
        print('{}: {} after {} candidates'.format(name, result.status.value, result.examined))
        if result.model is not None:
            print(result.model.format_table())
        summary[name] = result.to_dict()
        if report.conjecture is None:
            codes.append(consts.EXIT_OK if result.found else consts.EXIT_OPEN)
        else:
            codes.append(consts.EXIT_OPEN if result.status in (
                oracle.SearchStatus.FOUND, oracle.SearchStatus.BUDGET_EXHAUSTED) else consts.EXIT_OK)
    _write_json_report(args, summary)

    return _worst(codes)


def _run_gen_corpus(args):
    written = corpus.write_corpus(args.output_dir)
    count = len(written) - 1
    print('wrote {} problems and {} into {}'.format(count, consts.MANIFEST_NAME, args.output_dir))
    if count != corpus.PUBLISHED_COUNT:
        print('note: the published collection lists {} problems'.format(corpus.PUBLISHED_COUNT))

    return consts.EXIT_OK


_COMMANDS = {
    'check': _run_check,
    'erase': _run_erase,
    'emit': _run_emit,
    'prove': _run_prove,
    'oracle': _run_oracle,
}


def run_cli(argv):
    """
    Runs the toolchain with the given arguments
    :param argv: list(str)
    :return: int, exit code
    """

    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        if args.command == 'gen-corpus':
            return _run_gen_corpus(args)
        settings = _settings(args)
        return _COMMANDS[args.command](args, settings)
    except exceptions.UsageError as exc:
        print(parser.format_help(), file=sys.stderr)
        _error(exc)
        return consts.EXIT_USAGE
    except exceptions.DholError as exc:
        _error(exc)
        return consts.EXIT_STRUCTURAL
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else consts.EXIT_OK


def main(argv=None):
    return run_cli(sys.argv[1:] if argv is None else argv)
