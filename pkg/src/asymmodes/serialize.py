"""JSON interchange formats.

Complex matrices travel as {"rows": r, "cols": c, "re": [...], "im": [...]}
with row-major flattening; charges as {"charges": [...]}; block representations
as {"blocks": [{"twice_j": t, "mult": m}, ...]}.
"""

from __future__ import annotations

import json

import numpy as np

from .linalg import DensityMatrix, Superoperator, channel_from_kraus
from .rf import DegradationModel
from .su2 import SU2Representation
from .u1 import U1Representation


def matrix_to_json(a) -> dict:
    a = np.asarray(a, dtype=complex)
    if a.ndim != 2:
        raise ValueError(f"expected a matrix, got shape {a.shape}")
    return {
        "rows": a.shape[0],
        "cols": a.shape[1],
        "re": a.real.reshape(-1).tolist(),
        "im": a.imag.reshape(-1).tolist(),
    }


def matrix_from_json(obj) -> np.ndarray:
    try:
        rows, cols = int(obj["rows"]), int(obj["cols"])
        re = np.asarray(obj["re"], dtype=float)
        im = np.asarray(obj["im"], dtype=float)
    except (KeyError, TypeError) as exc:
        raise ValueError(f"malformed matrix object: {exc}") from exc
    if re.size != rows * cols or im.size != rows * cols:
        raise ValueError(f"matrix payload size {re.size}/{im.size} does not match {rows}x{cols}")
    return (re + 1j * im).reshape(rows, cols)


def state_from_json(obj, tol: float) -> DensityMatrix:
    return DensityMatrix.from_array(matrix_from_json(obj), tol=tol)


def charges_from_json(obj) -> U1Representation:
    try:
        return U1Representation(tuple(int(n) for n in obj["charges"]))
    except (KeyError, TypeError, ValueError) as exc:
        raise ValueError(f"malformed charges object: {exc}") from exc


def charges_to_json(rep: U1Representation) -> dict:
    return {"charges": list(rep.charges)}


def rep_from_json(obj) -> SU2Representation:
    try:
        blocks = tuple((int(b["twice_j"]), int(b["mult"])) for b in obj["blocks"])
    except (KeyError, TypeError, ValueError) as exc:
        raise ValueError(f"malformed representation object: {exc}") from exc
    return SU2Representation(blocks)


def rep_to_json(rep: SU2Representation) -> dict:
    return {"blocks": [{"twice_j": tj, "mult": mult} for tj, mult in rep.blocks]}


def _num(half_twice: int):
    return half_twice // 2 if half_twice % 2 == 0 else half_twice / 2


def basis_to_json(basis) -> list:
    out = []
    for (tmu, tm, alpha) in sorted(basis.ops):
        out.append({
            "mu": _num(tmu),
            "m": _num(tm),
            "alpha": alpha,
            "matrix": matrix_to_json(basis.ops[(tmu, tm, alpha)]),
        })
    return out


def channel_from_json(obj) -> Superoperator:
    if "kraus" in obj:
        kraus = [matrix_from_json(k) for k in obj["kraus"]]
        return channel_from_kraus(kraus)
    if "liouville" in obj:
        liou = matrix_from_json(obj["liouville"])
        dout = int(round(liou.shape[0] ** 0.5))
        din = int(round(liou.shape[1] ** 0.5))
        if dout * dout != liou.shape[0] or din * din != liou.shape[1]:
            raise ValueError(f"liouville shape {liou.shape} is not (out^2, in^2)")
        return Superoperator(liou, din, dout)
    raise ValueError("channel object needs a 'kraus' or 'liouville' entry")


def degradation_from_json(obj) -> DegradationModel:
    try:
        twice_j = int(obj["twice_j"])
        coeffs = {int(mu): float(c) for mu, c in obj["coefficients"].items()}
    except (KeyError, TypeError, ValueError) as exc:
        raise ValueError(f"malformed degradation object: {exc}") from exc
    return DegradationModel(twice_j, coeffs)


def load_json(path: str):
    with open(path, "r", encoding="utf-8") as fh:
        return json.load(fh)


def dump_json(obj, path: str | None = None) -> str:
    text = json.dumps(obj, indent=2, sort_keys=True) + "\n"
    if path is not None:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(text)
    return text
