# This file is part of qspectral, a library for the spectral theory
# of quaternionic right-linear operators.
#
# SPDX-FileCopyrightText: 2026 The qspectral developers
#
# SPDX-License-Identifier: Apache-2.0

"""This module contains the command-line tool qspectral.
To use it, instantiate "qspectral.cli.QSpectral"
and either call "instance.start(argv)" or "qspectral.cli.main(instance)".
"""

import argparse
import collections
import logging
import os
import sys

import yaml

from qspectral import __version__
from qspectral import QSpectralException
from qspectral import compact, formats, operators, spectral, util, verification
from qspectral.quaternion import DEFAULT_TOL, I

TOL_ENV_VAR = "QSPECTRAL_TOL"

EXIT_OK = 0
EXIT_INPUT_ERROR = 1
EXIT_VERIFICATION_FAILED = 2

COMMANDS = ["spectrum", "classify", "decompose", "synth", "verify", "simulate"]


class RunConfig(
    collections.namedtuple(
        "RunConfig",
        "command input output data slice tol seed random count levels parallel debug quiet",
    )
):
    """The configuration of one invocation of qspectral."""

    __slots__ = ()

    @classmethod
    def from_args(cls, args, environ=os.environ):
        tol = args.tol
        if tol is None:
            tol = float(environ[TOL_ENV_VAR]) if environ.get(TOL_ENV_VAR) else DEFAULT_TOL
        if not tol > 0:
            raise ValueError(f"Tolerance must be positive, got {tol}")
        return cls(
            command=args.command,
            input=args.input,
            output=args.output,
            data=args.data,
            slice=args.slice,
            tol=tol,
            seed=args.seed,
            random=args.random,
            count=args.count,
            levels=args.levels,
            parallel=args.parallel,
            debug=args.debug,
            quiet=args.quiet,
        )


class _ArgumentParser(argparse.ArgumentParser):
    """Argument parser that reports usage errors with exit code 1."""

    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_INPUT_ERROR, f"{self.prog}: error: {message}\n")


def parse_slice(value):
    try:
        return formats.imaginary_unit_from_json(value)
    except QSpectralException as e:
        raise argparse.ArgumentTypeError(str(e))


def parse_levels(value):
    try:
        levels = util.parse_int_list(value)
    except ValueError as e:
        raise argparse.ArgumentTypeError(str(e))
    if not levels or any(level < 1 for level in levels):
        raise argparse.ArgumentTypeError(f"invalid truncation levels: '{value}'")
    return levels


class QSpectral(object):
    """
    The main class of the tool qspectral.
    Every command reads one input file, runs the corresponding pipeline,
    and writes a JSON document or a verification report.
    """

    def __init__(self):
        self.config = None  # set by start()
        self.executor = None

    def start(self, argv):
        """
        Start qspectral.
        @param argv: command-line options (including the program name)
        @return: the exit code
        """
        parser = self.create_argument_parser()
        args = parser.parse_args(argv[1:])
        try:
            self.config = RunConfig.from_args(args)
        except ValueError as e:
            parser.error(str(e))
        if self.config.command != "verify" or self.config.random is None:
            if not self.config.input:
                parser.error(f"command '{self.config.command}' needs --input")
        if self.config.input and not os.path.isfile(self.config.input):
            parser.error(f"File {self.config.input!r} does not exist.")

        self.setup_logging()
        logging.debug("This is qspectral %s.", __version__)

        self.executor = util.create_executor(self.config.parallel)
        try:
            return getattr(self, "run_" + self.config.command)()
        finally:
            self.executor.shutdown(wait=True)

    def create_argument_parser(self):
        """
        Create a parser for the command-line options.
        @return: an argparse.ArgumentParser instance
        """
        parser = _ArgumentParser(
            prog="qspectral",
            fromfile_prefix_chars="@",
            description="""
                Spectral analysis of quaternionic right-linear operators:
                spherical spectra, A+JB decompositions, spectral decompositions
                and synthesis of normal operators, and numerical verification
                of the laws of quaternionic spectral theory.
                Input files are JSON or YAML documents.
                Command-line parameters can additionally be read from a file
                if file name prefixed with '@' is given as argument.
            """,
        )
        parser.add_argument("command", choices=COMMANDS, help="the command to run")
        parser.add_argument(
            "-i",
            "--input",
            metavar="FILE",
            help="input file (matrix, synthesis input, or compact model)",
        )
        parser.add_argument(
            "-o",
            "--output",
            metavar="FILE",
            help="write the result to FILE instead of stdout",
        )
        parser.add_argument(
            "--data",
            metavar="FILE",
            help="simulate: write the spectral data of every truncation as JSON to FILE",
        )
        parser.add_argument(
            "--slice",
            type=parse_slice,
            default=I,
            metavar="IOTA",
            help="imaginary unit of the slice as 4-array like [0,1,1,1] or one of "
            "i, j, k (default: i); it is normalized to norm 1",
        )
        parser.add_argument(
            "--tol",
            type=float,
            default=None,
            help=f"absolute tolerance (default: ${TOL_ENV_VAR} or {DEFAULT_TOL})",
        )
        parser.add_argument(
            "--seed",
            type=int,
            default=0,
            help="seed for all random choices (default: 0)",
        )
        parser.add_argument(
            "--random",
            type=int,
            metavar="N",
            help="verify random normal operators of dimension N instead of an input file",
        )
        parser.add_argument(
            "--count",
            type=int,
            default=1,
            help="number of random operators for --random (default: 1)",
        )
        parser.add_argument(
            "--levels",
            type=parse_levels,
            metavar="N,...",
            help="increasing truncation levels for simulate, "
            "e.g. '10,100,1000' (default: N of the model)",
        )
        parser.add_argument(
            "--parallel",
            type=int,
            default=1,
            metavar="N",
            help="number of worker processes for verify and simulate (default: 1)",
        )
        parser.add_argument(
            "-d", "--debug", action="store_true", help="Enable debug output"
        )
        parser.add_argument(
            "-q", "--quiet", action="store_true", help="Print only warnings and errors"
        )
        parser.add_argument(
            "--version", action="version", version="%(prog)s " + __version__
        )
        return parser

    def setup_logging(self):
        """
        Configure the logging framework.
        """
        if self.config.debug:
            util.setup_logging(level=logging.DEBUG)
        elif self.config.quiet:
            util.setup_logging(level=logging.WARNING)
        else:
            util.setup_logging(level=logging.INFO)

    def write_output(self, text):
        if self.config.output:
            util.write_file(text, self.config.output)
            logging.info("Result written to %s.", self.config.output)
        else:
            util.printOut(text, end="")

    def write_json(self, value):
        self.write_output(formats.dumps(value) + "\n")

    def read_matrix(self):
        return formats.matrix_from_json(formats.load(self.config.input))

    def run_spectrum(self):
        T = self.read_matrix()
        result = spectral.point_spectrum(T, self.config.slice, self.config.tol)
        logging.info("Spectral radius: %s", util.format_float(result.radius))
        if result.note:
            logging.info("Note: %s", result.note)
        self.write_json(formats.spectrum_to_json(result))
        return EXIT_OK

    def run_classify(self):
        T = self.read_matrix()
        cls = operators.classify(T, operators.scaled_tol(T, self.config.tol))
        logging.info("Operator is %s.", ", ".join(cls.names()) or "not normal")
        self.write_json(formats.classification_to_json(cls))
        return EXIT_OK

    def run_decompose(self):
        T = self.read_matrix()
        iota = self.config.slice
        operator_tol = operators.scaled_tol(T, self.config.tol)
        ajb = spectral.ajb_decompose(T, iota, operator_tol)
        dec = spectral.spectral_decomposition(T, iota, operator_tol)
        canonical = spectral.canonicalize(dec, iota, self.config.tol)
        logging.info(
            "Spectral decomposition with reconstruction residual %s.",
            util.format_float(dec.residual),
        )
        self.write_json(
            {
                "ajb": formats.ajb_to_json(ajb),
                "decomposition": formats.decomposition_to_json(dec),
                "canonical": formats.decomposition_to_json(canonical),
            }
        )
        return EXIT_OK

    def run_synth(self):
        data = formats.load(self.config.input)
        if isinstance(data, dict) and "iota" in data:
            dec = formats.decomposition_from_json(data)
            basis, lambdas = dec.basis, dec.lambdas
        else:
            basis, lambdas = formats.synthesis_input_from_json(data)
        T = spectral.synthesize(basis, lambdas, self.config.tol)
        self.write_json(formats.matrix_to_json(T))
        return EXIT_OK

    def _verification_config(self):
        return verification.VerificationConfig.create(
            tol=self.config.tol, iota=self.config.slice, seed=self.config.seed
        )

    def _report(self, results):
        self.write_output(verification.format_report(results))
        if verification.has_failures(results):
            logging.warning("Verification failed.")
            return EXIT_VERIFICATION_FAILED
        return EXIT_OK

    def run_verify(self):
        config = self._verification_config()
        if self.config.input:
            results = verification.verify_matrix(self.read_matrix(), config)
        else:
            if self.config.random < 1 or self.config.count < 1:
                raise ValueError("--random and --count need to be positive")
            logging.info(
                "Verifying %d random normal operators of dimension %d with seed %d.",
                self.config.count,
                self.config.random,
                self.config.seed,
            )
            results = verification.verify_random(
                self.config.random, self.config.count, config, self.executor
            )
        return self._report(results)

    def run_simulate(self):
        model = formats.model_from_json(formats.load(self.config.input))
        levels = self.config.levels or [model.N]
        reports = compact.verify_compact_laws(model, levels, self.executor, self.config.tol)
        results = verification.verify_model(
            model, levels, self._verification_config(), self.executor, reports
        )
        for report, rate in zip(reports, compact.min_modulus_rate(reports)):
            logging.info(
                "N=%d: tail norm %s, min modulus %s (times N: %s).",
                report.N,
                util.format_float(report.tail_norm),
                util.format_float(report.min_modulus),
                util.format_float(rate),
            )
        if self.config.data:
            util.write_file(
                formats.dumps([formats.report_to_json(r) for r in reports]) + "\n",
                self.config.data,
            )
            logging.info("Truncation data written to %s.", self.config.data)
        return self._report(results)


def main(qspectral=None, argv=None):
    """
    The main method of qspectral for use in a command-line script.
    It does not return but calls sys.exit().
    @param qspectral: An instance of QSpectral.
    @param argv: optionally the list of command-line options to use
    """
    if not qspectral:
        qspectral = QSpectral()
    try:
        sys.exit(qspectral.start(argv or sys.argv))
    except (QSpectralException, ValueError, OSError, yaml.YAMLError) as e:
        sys.exit(f"Error: {e}")
