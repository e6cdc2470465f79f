# This file is part of qspectral, a library for the spectral theory
# of quaternionic right-linear operators.
#
# SPDX-FileCopyrightText: 2026 The qspectral developers
#
# SPDX-License-Identifier: Apache-2.0

import json
import os
import shutil
import subprocess
import sys
import tempfile
import unittest

import qspectral

sys.dont_write_bytecode = True  # prevent creation of .pyc files

here = os.path.dirname(__file__)
base_dir = os.path.normpath(os.path.join(here, "..", ".."))
qspectral_cmd = [sys.executable, "-m", "qspectral"]

DIAGONAL_MATRIX = {"n": 2, "entries": [[[0, 1, 0, 0], 0], [0, [1, 0, 1, 0]]]}
NILPOTENT_MATRIX = {"entries": [[0, 1], [0, 0]]}


class QSpectralIntegrationTests(unittest.TestCase):
    @classmethod
    def setUpClass(cls):
        cls.longMessage = True
        cls.maxDiff = None

    def setUp(self):
        self.tmp = tempfile.mkdtemp(prefix="qspectral_integration_test")

    def tearDown(self):
        shutil.rmtree(self.tmp)

    def write_input(self, name, content):
        path = os.path.join(self.tmp, name)
        with open(path, "w") as f:
            if isinstance(content, str):
                f.write(content)
            else:
                json.dump(content, f)
        return path

    def run_cmd(self, *args, expected_returncode=0, env=None):
        environ = dict(os.environ)
        environ["PYTHONPATH"] = os.pathsep.join(
            filter(None, [base_dir, environ.get("PYTHONPATH")])
        )
        environ.pop("QSPECTRAL_TOL", None)
        environ.update(env or {})
        process = subprocess.run(
            qspectral_cmd + list(args),
            stdout=subprocess.PIPE,
            stderr=subprocess.PIPE,
            universal_newlines=True,
            cwd=self.tmp,
            env=environ,
        )
        self.assertEqual(
            process.returncode,
            expected_returncode,
            f"stdout:\n{process.stdout}\nstderr:\n{process.stderr}",
        )
        return process

    def run_json(self, *args):
        return json.loads(self.run_cmd(*args).stdout)

    def test_spectrum(self):
        matrix = self.write_input("matrix.json", DIAGONAL_MATRIX)
        self.assertEqual(
            self.run_json("spectrum", "--input", matrix),
            [
                {"re": 0, "im": 1, "mult": 1, "kind": "point"},
                {"re": 1, "im": 1, "mult": 1, "kind": "point"},
            ],
        )

    def test_spectrum_other_slice(self):
        matrix = self.write_input("matrix.json", DIAGONAL_MATRIX)
        points = self.run_json("spectrum", "-i", matrix, "--slice", "[0,1,1,1]")
        self.assertEqual([(p["re"], p["im"]) for p in points], [(0, 1), (1, 1)])

    def test_spectrum_yaml_input_and_output_file(self):
        matrix = self.write_input("matrix.yml", "entries:\n  - [2, 0]\n  - [0, -1]\n")
        output = os.path.join(self.tmp, "spectrum.json")
        process = self.run_cmd("spectrum", "-i", matrix, "-o", output)
        self.assertEqual(process.stdout, "")
        with open(output) as f:
            points = json.load(f)
        self.assertEqual([(p["re"], p["im"]) for p in points], [(-1, 0), (2, 0)])

    def test_spectrum_not_normal(self):
        matrix = self.write_input("matrix.json", NILPOTENT_MATRIX)
        process = self.run_cmd("spectrum", "-i", matrix)
        self.assertEqual(
            json.loads(process.stdout), [{"re": 0, "im": 0, "mult": 2, "kind": "point"}]
        )
        self.assertIn("not normal", process.stderr)

    def test_classify(self):
        matrix = self.write_input("matrix.json", {"entries": [[[0, 1, 0, 0], 0], [0, [0, 0, 1, 0]]]})
        data = self.run_json("classify", "-i", matrix)
        self.assertTrue(data["normal"])
        self.assertTrue(data["anti_self_adjoint"])
        self.assertTrue(data["unitary"])
        self.assertFalse(data["self_adjoint"])
        self.assertFalse(data["positive"])

    def test_decompose_and_synth(self):
        matrix = self.write_input("matrix.json", DIAGONAL_MATRIX)
        data = self.run_json("decompose", "-i", matrix)
        self.assertEqual(set(data), {"ajb", "decomposition", "canonical"})
        self.assertLessEqual(data["ajb"]["residual"], 1e-12)
        self.assertLessEqual(data["decomposition"]["residual"], 1e-12)
        self.assertEqual(len(data["canonical"]["lambdas"]), 2)

        decomposition = self.write_input("decomposition.json", data["canonical"])
        entries = self.run_json("synth", "-i", decomposition)["entries"]
        expected = DIAGONAL_MATRIX["entries"]
        for m in range(2):
            for k in range(2):
                value = expected[m][k]
                value = value if isinstance(value, list) else [value, 0, 0, 0]
                for actual, wanted in zip(entries[m][k], value):
                    self.assertAlmostEqual(actual, wanted, places=10)

    def test_synth_then_spectrum(self):
        synthesis = self.write_input(
            "synthesis.json", {"lambdas": [[0, 0, 1, 0], [1, 1, 0, 0], 3]}
        )
        output = os.path.join(self.tmp, "matrix.json")
        self.run_cmd("synth", "-i", synthesis, "-o", output)
        with open(output) as f:
            self.assertEqual(json.load(f)["n"], 3)
        points = self.run_json("spectrum", "-i", output)
        self.assertEqual(
            [(p["re"], p["im"], p["mult"]) for p in points], [(0, 1, 1), (1, 1, 1), (3, 0, 1)]
        )

    def test_synth_invalid_basis(self):
        synthesis = self.write_input(
            "synthesis.json", {"basis": [[1, 0], [1, 0]], "lambdas": [1, 2]}
        )
        process = self.run_cmd("synth", "-i", synthesis, expected_returncode=1)
        self.assertIn("Error:", process.stderr)

    def test_verify_matrix(self):
        matrix = self.write_input("matrix.json", NILPOTENT_MATRIX)
        lines = self.run_cmd("verify", "-i", matrix).stdout.splitlines()
        self.assertIn("SKIP eigen-oracle case=0 value=- limit=-", lines)
        self.assertEqual(lines[-1], "SUMMARY checks=5 passed=2 failed=0 skipped=3")

    def test_verify_random(self):
        args = ["verify", "--random", "2", "--count", "2", "--seed", "42"]
        first = self.run_cmd(*args).stdout
        self.assertRegex(first.splitlines()[-1], r"^SUMMARY checks=\d+ passed=\d+ failed=0 ")
        self.assertEqual(self.run_cmd(*args).stdout, first)
        parallel = self.run_cmd(*args, "--parallel", "2").stdout
        self.assertEqual(
            [line.split()[:3] for line in parallel.splitlines()],
            [line.split()[:3] for line in first.splitlines()],
        )

    def test_simulate(self):
        model = self.write_input(
            "model.yml", "tail:\n  family: harmonic\nN: 10\n"
        )
        process = self.run_cmd("simulate", "-i", model, "--levels", "10,100")
        lines = process.stdout.splitlines()
        self.assertIn("PASS tail-norm case=100", "\n".join(lines))
        self.assertRegex(lines[-1], r"^SUMMARY checks=\d+ passed=\d+ failed=0 skipped=0$")

    def test_simulate_data(self):
        model = self.write_input("model.yml", "tail:\n  family: harmonic\nN: 10\n")
        data_file = os.path.join(self.tmp, "truncations.json")
        self.run_cmd("simulate", "-i", model, "--levels", "10,100", "--data", data_file)
        with open(data_file) as f:
            data = json.load(f)
        self.assertEqual([entry["N"] for entry in data], [10, 100])
        self.assertEqual([entry["spectrum_size"] for entry in data], [10, 100])
        for entry in data:
            self.assertAlmostEqual(entry["min_modulus"] * entry["N"], 1.0, places=10)
            self.assertAlmostEqual(entry["min_modulus_rate"], 1.0, places=10)

    def test_simulate_invalid_model(self):
        model = self.write_input("model.json", {"tail": {"family": "geometric", "params": {"r": 1}}})
        process = self.run_cmd("simulate", "-i", model, expected_returncode=1)
        self.assertIn("Error:", process.stderr)

    def test_classify_tolerance(self):
        matrix = self.write_input("matrix.json", {"entries": [[1, 1e-4], [0, 2]]})
        data = self.run_json("classify", "-i", matrix)
        self.assertFalse(data["normal"])
        self.assertAlmostEqual(data["tol"], 2e-9, places=20)
        data = self.run_json("classify", "-i", matrix, "--tol", "1e-2")
        self.assertTrue(data["normal"])
        self.assertEqual(data["tol"], 0.02)
        process = self.run_cmd("classify", "-i", matrix, env={"QSPECTRAL_TOL": "1e-2"})
        self.assertTrue(json.loads(process.stdout)["normal"])

    def test_decompose_tolerance(self):
        matrix = self.write_input(
            "matrix.json", {"entries": [[[0, 1, 0, 0], 0], [1e-6, 2]]}
        )
        process = self.run_cmd("decompose", "-i", matrix, expected_returncode=1)
        self.assertIn("not normal", process.stderr)
        process = self.run_cmd("decompose", "-i", matrix, env={"QSPECTRAL_TOL": "1e-2"})
        self.assertEqual(
            sorted(json.loads(process.stdout)), ["ajb", "canonical", "decomposition"]
        )

    def test_version(self):
        self.assertEqual(
            self.run_cmd("--version").stdout.strip(), "qspectral " + qspectral.__version__
        )

    def test_usage_errors(self):
        matrix = self.write_input("matrix.json", DIAGONAL_MATRIX)
        self.run_cmd("eigenvalues", "-i", matrix, expected_returncode=1)
        self.run_cmd("spectrum", expected_returncode=1)
        self.run_cmd("spectrum", "-i", "missing.json", expected_returncode=1)
        self.run_cmd("spectrum", "-i", matrix, "--slice", "[1,0,0,0]", expected_returncode=1)
        self.run_cmd("spectrum", "-i", matrix, "--tol", "-1", expected_returncode=1)
        self.run_cmd(
            "spectrum", "-i", matrix, expected_returncode=1, env={"QSPECTRAL_TOL": "x"}
        )

    def test_invalid_input(self):
        for content in ["", "{[", '{"entries": [[1, 2]]}', '{"entries": [["x"]]}']:
            matrix = self.write_input("matrix.json", content)
            process = self.run_cmd("spectrum", "-i", matrix, expected_returncode=1)
            self.assertIn("Error:", process.stderr)
