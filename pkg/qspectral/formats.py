# This file is part of qspectral, a library for the spectral theory
# of quaternionic right-linear operators.
#
# SPDX-FileCopyrightText: 2026 The qspectral developers
#
# SPDX-License-Identifier: Apache-2.0

"""
Readers and writers for the file formats of qspectral.

Input files are parsed with yaml.safe_load, so JSON as well as YAML is accepted.
Output is JSON with all floats written with 17 significant digits,
which makes the round trip through a file lossless.
"""

import json
import numbers

import numpy as np
import yaml

from qspectral import FormatError, util
from qspectral.compact import CompactModel, TailRule
from qspectral.hilbert import SCALARS, SCALARS_H, HilbertBasis
from qspectral.quaternion import I, CircularPoint, CircularSet, ImaginaryUnit, Quaternion
from qspectral.spectral import KIND_POINT, SpectralDecomposition

STANDARD_BASIS = "standard"


def load(path):
    """Open and parse an input file in JSON or YAML format."""
    try:
        content = yaml.safe_load(util.read_file(path))
    except OSError as e:
        raise FormatError(f"Cannot open input file: {e}")
    except yaml.YAMLError as e:
        raise FormatError(f"Invalid input file {path}: {e}")
    if content is None:
        raise FormatError(f"Invalid input file: empty file {path}")
    return content


def loads(text):
    try:
        return yaml.safe_load(text)
    except yaml.YAMLError as e:
        raise FormatError(f"Invalid input: {e}")


def dumps(value, indent=0):
    """
    Serialize dicts, lists, strings, bools, None and numbers as JSON text.
    Lists of numbers are kept on one line.
    """
    pad = "  " * indent
    if isinstance(value, dict):
        if not value:
            return "{}"
        items = [
            f'{pad}  {json.dumps(str(key))}: {dumps(item, indent + 1)}'
            for key, item in value.items()
        ]
        return "{\n" + ",\n".join(items) + "\n" + pad + "}"
    if isinstance(value, (list, tuple)):
        if all(_is_scalar(item) for item in value):
            return "[" + ", ".join(dumps(item) for item in value) + "]"
        items = [pad + "  " + dumps(item, indent + 1) for item in value]
        return "[\n" + ",\n".join(items) + "\n" + pad + "]"
    if value is None or isinstance(value, (bool, str)):
        return json.dumps(value)
    if isinstance(value, numbers.Integral):
        return str(int(value))
    if isinstance(value, numbers.Real):
        return util.format_float(value)
    raise TypeError(f"Cannot serialize {type(value).__name__}")


def _is_scalar(value):
    return not isinstance(value, (dict, list, tuple))


def _float(value, what):
    if isinstance(value, bool):
        raise FormatError(f"Invalid number {value!r} in {what}")
    try:
        return float(value)
    except (TypeError, ValueError):
        raise FormatError(f"Invalid number {value!r} in {what}")


def _require_dict(data, what, required=(), optional=()):
    if not isinstance(data, dict):
        raise FormatError(f"{what} needs to be an object, got {type(data).__name__}")
    missing = [key for key in required if key not in data]
    if missing:
        raise FormatError(f"{what} is missing key(s) {', '.join(missing)}")
    unknown = set(data) - set(required) - set(optional)
    if unknown:
        raise FormatError(f"{what} has unknown key(s) {', '.join(sorted(unknown))}")


# Quaternions, vectors and matrices


def quaternion_to_json(q):
    return [float(c) for c in q]


def quaternion_from_json(value, what="quaternion"):
    if isinstance(value, (list, tuple)):
        if len(value) != 4:
            raise FormatError(f"A {what} needs 4 components, got {len(value)}")
        return Quaternion(*(_float(c, what) for c in value))
    return Quaternion(_float(value, what), 0.0, 0.0, 0.0)


def imaginary_unit_from_json(value):
    """Parse a slice as 4-array or as one of the names i, j, k; it gets normalized."""
    if isinstance(value, str):
        names = {"i": [0, 1, 0, 0], "j": [0, 0, 1, 0], "k": [0, 0, 0, 1]}
        if value.strip() in names:
            value = names[value.strip()]
        else:
            value = loads(value)
    try:
        return ImaginaryUnit.create(quaternion_from_json(value, "slice"), normalize=True)
    except ValueError as e:
        raise FormatError(f"Invalid slice: {e}")


def vector_to_json(u):
    return [quaternion_to_json(q) for q in u]


def vector_from_json(value, n=None):
    if not isinstance(value, list) or not value:
        raise FormatError("A vector needs to be a non-empty list of quaternions")
    if n is not None and len(value) != n:
        raise FormatError(f"A vector of H^{n} needs {n} entries, got {len(value)}")
    return np.array([quaternion_from_json(q, "vector entry") for q in value])


def matrix_to_json(T):
    return {"n": int(T.shape[0]), "entries": [vector_to_json(row) for row in T]}


def matrix_from_json(data):
    _require_dict(data, "Matrix", required=["entries"], optional=["n"])
    entries = data["entries"]
    if not isinstance(entries, list) or not entries:
        raise FormatError("Matrix entries need to be a non-empty list of rows")
    n = len(entries)
    if "n" in data and data["n"] != n:
        raise FormatError(f"Matrix declares n={data['n']} but has {n} rows")
    for row in entries:
        if not isinstance(row, list) or len(row) != n:
            raise FormatError(f"Matrix needs to be square with {n} entries per row")
    return np.array([vector_from_json(row, n) for row in entries])


# Spectra and classification


def spectrum_to_json(spectrum):
    points = spectrum.points if hasattr(spectrum, "points") else spectrum
    return [
        {"re": p.re, "im": p.im, "mult": p.mult, "kind": KIND_POINT} for p in points
    ]


def spectrum_from_json(data):
    if not isinstance(data, list):
        raise FormatError("A spectrum needs to be a list of points")
    points = []
    for entry in data:
        _require_dict(entry, "Spectrum point", ["re", "im"], ["mult", "kind"])
        mult = entry.get("mult", 1)
        if not isinstance(mult, int) or mult < 1:
            raise FormatError(f"Invalid multiplicity {mult!r}")
        im = _float(entry["im"], "spectrum point")
        if im < 0:
            raise FormatError(f"Imaginary modulus must not be negative, got {im}")
        points.append(CircularPoint(_float(entry["re"], "spectrum point"), im, mult))
    return CircularSet(points)


def classification_to_json(cls):
    return dict(cls._asdict())


def ajb_to_json(dec):
    return {
        "iota": quaternion_to_json(dec.iota),
        "A": matrix_to_json(dec.A),
        "B": matrix_to_json(dec.B),
        "J": matrix_to_json(dec.J),
        "residual": dec.residual,
    }


# Bases and decompositions


def basis_from_json(data, n=None):
    """
    Read a basis given as "standard", as list of vectors,
    or as object with keys "scalars" and "vectors".
    """
    scalars = SCALARS_H
    if isinstance(data, dict):
        _require_dict(data, "Basis", ["vectors"], ["scalars"])
        scalars = data.get("scalars", SCALARS_H)
        if scalars not in SCALARS:
            raise FormatError(f"Unknown scalars '{scalars}', expected one of {SCALARS}")
        data = data["vectors"]
    if data == STANDARD_BASIS:
        if n is None:
            raise FormatError("Dimension of the standard basis is unknown")
        return HilbertBasis.standard(n)
    if not isinstance(data, list) or not data:
        raise FormatError("A basis needs to be 'standard' or a non-empty list of vectors")
    dimension = len(data[0]) if isinstance(data[0], list) else None
    vectors = np.array([vector_from_json(v, dimension) for v in data])
    return HilbertBasis.create(vectors, scalars)


def decomposition_to_json(dec):
    return {
        "iota": quaternion_to_json(dec.iota),
        "basis": [vector_to_json(v) for v in dec.basis.vectors],
        "lambdas": [quaternion_to_json(lam) for lam in dec.lambdas],
        "residual": dec.residual,
    }


def decomposition_from_json(data):
    _require_dict(data, "Decomposition", ["basis", "lambdas"], ["iota", "residual"])
    basis = basis_from_json(data["basis"])
    lambdas = _lambdas_from_json(data["lambdas"], len(basis))
    iota = imaginary_unit_from_json(data["iota"]) if "iota" in data else I
    residual = _float(data.get("residual", 0.0), "residual")
    return SpectralDecomposition(basis, lambdas, iota, residual)


def _lambdas_from_json(data, count):
    if not isinstance(data, list) or len(data) != count:
        raise FormatError(f"Need a list of {count} eigenvalues")
    return np.array([quaternion_from_json(lam, "eigenvalue") for lam in data]).reshape(
        count, 4
    )


def synthesis_input_from_json(data):
    """Read {"basis": "standard" | [...], "lambdas": [...]} and return (basis, lambdas)."""
    _require_dict(data, "Synthesis input", ["lambdas"], ["basis"])
    if not isinstance(data["lambdas"], list) or not data["lambdas"]:
        raise FormatError("Synthesis input needs a non-empty list of lambdas")
    n = len(data["lambdas"])
    basis = basis_from_json(data.get("basis", STANDARD_BASIS), n)
    return basis, _lambdas_from_json(data["lambdas"], len(basis))


# Compact models


def model_from_json(data):
    _require_dict(data, "Compact model", [], ["head", "tail", "N"])
    head = data.get("head")
    if head is not None:
        head = matrix_from_json(head)
    tail = data.get("tail")
    if tail is not None:
        _require_dict(tail, "Tail rule", ["family"], ["params", "slice", "rotation_seed"])
        params = tail.get("params") or {}
        if not isinstance(params, dict):
            raise FormatError("Tail parameters need to be an object")
        iota = imaginary_unit_from_json(tail["slice"]) if "slice" in tail else I
        rotation_seed = tail.get("rotation_seed")
        if rotation_seed is not None and not isinstance(rotation_seed, int):
            raise FormatError(f"Invalid rotation seed {rotation_seed!r}")
        tail = TailRule.create(tail["family"], params, iota, rotation_seed)
    if head is None and tail is None:
        raise FormatError("Compact model needs a head or a tail")
    N = data.get("N", 1)
    if not isinstance(N, int) or isinstance(N, bool) or N < 1:
        raise FormatError(f"Truncation level N needs to be a positive integer, got {N!r}")
    return CompactModel(head, tail, N)


def model_to_json(model):
    tail = None
    if model.tail is not None:
        params = dict(model.tail.params)
        params["c"] = [params["c"].real, params["c"].imag]
        tail = {
            "family": model.tail.family,
            "params": params,
            "slice": quaternion_to_json(model.tail.iota),
        }
        if model.tail.rotation_seed is not None:
            tail["rotation_seed"] = model.tail.rotation_seed
    return {
        "head": matrix_to_json(model.head) if model.head is not None else None,
        "tail": tail,
        "N": model.N,
    }


def report_to_json(report):
    return {
        "N": report.N,
        "tail_norm": report.tail_norm,
        "norm": report.norm,
        "max_modulus": report.max_modulus,
        "min_modulus": report.min_modulus,
        "min_modulus_rate": report.min_modulus_rate,
        "spectrum_size": len(report.spectrum),
    }
