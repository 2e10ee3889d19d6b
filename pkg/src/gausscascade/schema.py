"""JSON and CSV serialization for states, systems, reports and trajectories.

Matrices are row-major nested lists. Complex scalars are ``[re, im]`` pairs.
Every float is rounded to 12 significant digits so output is reproducible
byte for byte.
"""

from __future__ import annotations

import io
import json
import math
from numbers import Real
from typing import Any

import numpy as np

from .errors import SchemaError
from .gaussian import CovarianceMatrix, PureGaussianState
from .slh import CascadeSystem, Oscillator, compose_cascade

SIG_DIGITS = 12


def fmt(x: float) -> str:
    """12-significant-digit text with lowercase exponent; ``-0`` prints as ``0``."""
    return f"{float(x) + 0.0:.{SIG_DIGITS}g}"


def num(x: float) -> float | None:
    x = float(x)
    if not math.isfinite(x):
        return None
    return float(fmt(x)) + 0.0


def real_matrix(M) -> list[list[float]]:
    return [[num(v) for v in row] for row in np.asarray(M, dtype=float)]


def complex_matrix(M) -> list[list[list[float]]]:
    return [[[num(v.real), num(v.imag)] for v in row] for row in np.asarray(M, dtype=complex)]


def _encode(obj: Any, level: int) -> str:
    pad = "  " * (level + 1)
    if isinstance(obj, dict):
        if not obj:
            return "{}"
        items = [f"{pad}{json.dumps(k)}: {_encode(v, level + 1)}" for k, v in obj.items()]
        return "{\n" + ",\n".join(items) + "\n" + "  " * level + "}"
    if isinstance(obj, list):
        if all(not isinstance(v, (dict, list)) for v in obj) or _is_complex_row(obj):
            return json.dumps(obj, separators=(", ", ": "))
        items = [f"{pad}{_encode(v, level + 1)}" for v in obj]
        return "[\n" + ",\n".join(items) + "\n" + "  " * level + "]"
    return json.dumps(obj)


def _is_complex_row(obj: list) -> bool:
    return all(isinstance(v, list) and len(v) == 2 and not isinstance(v[0], list) for v in obj)


def dumps(doc: Any) -> str:
    """Pretty JSON with each matrix row on a single line."""
    return _encode(doc, 0) + "\n"


# --- parsing helpers -------------------------------------------------------


def _field(doc: dict, key: str, where: str):
    if not isinstance(doc, dict):
        raise SchemaError(f"{where}: expected a JSON object")
    if key not in doc:
        raise SchemaError(f"{where}: missing field '{key}'")
    return doc[key]


def _scalar(v, where: str) -> float:
    if isinstance(v, bool) or not isinstance(v, Real):
        raise SchemaError(f"{where}: expected a number, got {v!r}")
    return float(v)


def _complex(v, where: str) -> complex:
    if isinstance(v, list):
        if len(v) != 2:
            raise SchemaError(f"{where}: complex entries must be [re, im] pairs")
        return complex(_scalar(v[0], where), _scalar(v[1], where))
    return complex(_scalar(v, where), 0.0)


def _matrix(rows, where: str, parse=_scalar, dtype=float) -> np.ndarray:
    if not isinstance(rows, list) or not rows or not all(isinstance(r, list) for r in rows):
        raise SchemaError(f"{where}: expected a non-empty list of rows")
    width = len(rows[0])
    if width == 0 or any(len(r) != width for r in rows):
        raise SchemaError(f"{where}: rows must be non-empty and of equal length")
    return np.array(
        [[parse(v, f"{where}[{i}][{j}]") for j, v in enumerate(r)] for i, r in enumerate(rows)],
        dtype=dtype,
    )


def _int(v, where: str) -> int:
    if isinstance(v, bool) or not isinstance(v, int) or v < 1:
        raise SchemaError(f"{where}: expected a positive integer, got {v!r}")
    return v


# --- states ----------------------------------------------------------------


def state_to_json(state: PureGaussianState) -> dict:
    return {"n": state.n, "X": real_matrix(state.X), "Y": real_matrix(state.Y)}


def covariance_to_json(cov: CovarianceMatrix) -> dict:
    return {"n": cov.n, "V": real_matrix(cov.V), "ordering": cov.ordering}


def state_from_json(doc: dict) -> PureGaussianState | CovarianceMatrix:
    """Parse either the ``(X, Y)`` or the covariance form of a state."""
    n = _int(_field(doc, "n", "state"), "state.n")
    if "V" in doc:
        V = _matrix(doc["V"], "state.V")
        if V.shape != (2 * n, 2 * n):
            raise SchemaError(f"state.V: expected {2 * n}x{2 * n}, got {V.shape[0]}x{V.shape[1]}")
        ordering = doc.get("ordering", "q-first")
        if ordering != "q-first":
            raise SchemaError(f"state.ordering: only 'q-first' is supported, got {ordering!r}")
        return CovarianceMatrix(V)
    X = _matrix(_field(doc, "X", "state"), "state.X")
    Y = _matrix(_field(doc, "Y", "state"), "state.Y")
    for name, M in (("X", X), ("Y", Y)):
        if M.shape != (n, n):
            raise SchemaError(f"state.{name}: expected {n}x{n}, got {M.shape[0]}x{M.shape[1]}")
    return PureGaussianState(X, Y)


# --- systems ---------------------------------------------------------------


def system_to_json(system: CascadeSystem) -> dict:
    return {
        "m": system.m,
        "oscillators": [
            {"K": complex_matrix(g.K), "R": real_matrix(g.R)} for g in system.oscillators
        ],
    }


def system_from_json(doc: dict) -> CascadeSystem:
    m = _int(_field(doc, "m", "system"), "system.m")
    items = _field(doc, "oscillators", "system")
    if not isinstance(items, list) or not items:
        raise SchemaError("system.oscillators: expected a non-empty list")
    oscillators = []
    for j, item in enumerate(items):
        where = f"system.oscillators[{j}]"
        K = _matrix(_field(item, "K", where), f"{where}.K", _complex, complex)
        if K.shape != (m, 2):
            raise SchemaError(f"{where}.K: expected {m}x2, got {K.shape[0]}x{K.shape[1]}")
        R = _matrix(item["R"], f"{where}.R") if "R" in item else np.zeros((2, 2))
        if R.shape != (2, 2):
            raise SchemaError(f"{where}.R: expected 2x2, got {R.shape[0]}x{R.shape[1]}")
        oscillators.append(Oscillator(K, R))
    return compose_cascade(oscillators)


def composed_to_json(system: CascadeSystem) -> dict:
    return {"n": system.n, "m": system.m, "K": complex_matrix(system.K), "R": real_matrix(system.R)}


# --- reports and trajectories ----------------------------------------------


def report_to_json(report) -> dict:
    return {
        "n": report.system.n,
        "m": report.system.m,
        "target_residual": num(report.target_residual),
        "hurwitz": report.hurwitz,
        "spectral_abscissa": num(report.spectral_abscissa),
        "drift_is_minus_identity": report.drift_is_minus_identity,
        "hamiltonian_is_zero": report.hamiltonian_is_zero,
        "purity": num(report.purity),
        "steady_covariance": covariance_to_json(report.steady_covariance),
    }


def trajectory_header(d: int) -> list[str]:
    sep = "_" if d >= 10 else ""
    cols = ["t"] + [f"mean_{i + 1}" for i in range(d)]
    cols += [f"V_{i + 1}{sep}{j + 1}" for i in range(d) for j in range(d)]
    return cols


def trajectory_to_csv(traj) -> str:
    """CSV text: ``t, mean_1..mean_2n, V_11..V_(2n)(2n)`` with row-major V."""
    d = traj.means.shape[1]
    buf = io.StringIO()
    buf.write(",".join(trajectory_header(d)) + "\n")
    for t, m, V in zip(traj.times, traj.means, traj.covariances):
        values = [t, *m, *V.reshape(-1)]
        buf.write(",".join(fmt(v) for v in values) + "\n")
    return buf.getvalue()
