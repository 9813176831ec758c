"""Versioned JSON schemas for every value the command line exchanges.

One schema per type, all tagged "shiftcalc/v1".  Matrices are
{"rows", "cols", "entries"} with entries in row order; block unitaries store
one complex matrix per nonempty block under the key "v,w" (index labels
joined by a comma), each entry as an [re, im] pair.  Shift and arrow bundles
describe their correspondences by integer matrices; the canonical bases are
rebuilt on load, so only atomic (edge) correspondences travel through files.
"""

from __future__ import annotations

import json
import numpy as np

from .aligned import AlignedShiftData
from .corr import (
    BlockUnitary,
    GraphCorrespondence,
    ObjectPair,
    OneArrow,
    from_matrix,
    object_pair,
    power_correspondence,
    tensor,
)
from .errors import DomainError, ParseError
from .exact import IntMatrix, from_rows
from .homotopy import ArrowHomotopy
from .witnesses import SEWitness

SCHEMA = "shiftcalc/v1"


def _require(cond: bool, message: str):
    if not cond:
        raise ParseError(message)


# ---------------------------------------------------------------------------
# Matrices
# ---------------------------------------------------------------------------


def matrix_to_json(m: IntMatrix) -> dict:
    return {
        "schema": SCHEMA,
        "rows": m.rows,
        "cols": m.cols,
        "entries": [list(r) for r in m.entries],
    }


def matrix_from_json(doc) -> IntMatrix:
    _require(isinstance(doc, dict), "matrix document must be a JSON object")
    for field in ("rows", "cols", "entries"):
        _require(field in doc, f"matrix document is missing '{field}'")
    rows, cols, entries = doc["rows"], doc["cols"], doc["entries"]
    _require(isinstance(rows, int) and isinstance(cols, int), "matrix shape must be integers")
    _require(isinstance(entries, list) and len(entries) == rows, "entry grid has the wrong number of rows")
    for i, row in enumerate(entries):
        _require(isinstance(row, list) and len(row) == cols, f"row {i} has the wrong length")
        for x in row:
            _require(isinstance(x, int) and not isinstance(x, bool), f"row {i} has a non-integer entry")
    return from_rows(entries)


def parse_matrix_file(path: str) -> IntMatrix:
    """Load a matrix JSON file, reporting position information on bad JSON."""
    with open(path, "r", encoding="utf-8") as fh:
        text = fh.read()
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"{path}: invalid JSON at line {exc.lineno}, column {exc.colno}") from exc
    try:
        return matrix_from_json(doc)
    except ParseError as exc:
        raise ParseError(f"{path}: {exc}") from exc


def nonnegative_matrix_from_file(path: str) -> IntMatrix:
    m = parse_matrix_file(path)
    for i, row in enumerate(m.entries):
        for j, x in enumerate(row):
            if x < 0:
                raise DomainError(f"{path}: entry ({i}, {j}) is negative ({x})")
    return m


# ---------------------------------------------------------------------------
# Witnesses
# ---------------------------------------------------------------------------


def witness_to_json(w: SEWitness) -> dict:
    return {
        "schema": SCHEMA,
        "a": matrix_to_json(w.a),
        "b": matrix_to_json(w.b),
        "r": matrix_to_json(w.r),
        "s": matrix_to_json(w.s),
        "lag": w.lag,
    }


def witness_from_json(doc) -> SEWitness:
    _require(isinstance(doc, dict), "witness document must be a JSON object")
    for field in ("a", "b", "r", "s", "lag"):
        _require(field in doc, f"witness document is missing '{field}'")
    _require(isinstance(doc["lag"], int), "witness lag must be an integer")
    return SEWitness(
        matrix_from_json(doc["a"]),
        matrix_from_json(doc["b"]),
        matrix_from_json(doc["r"]),
        matrix_from_json(doc["s"]),
        doc["lag"],
    )


# ---------------------------------------------------------------------------
# Block unitaries
# ---------------------------------------------------------------------------


def _complex_matrix_to_json(m: np.ndarray) -> list:
    return [[[float(x.real), float(x.imag)] for x in row] for row in m]


def _complex_matrix_from_json(doc, d: int, where: str) -> np.ndarray:
    _require(isinstance(doc, list) and len(doc) == d, f"{where}: block must have {d} rows")
    out = np.zeros((d, d), dtype=complex)
    for i, row in enumerate(doc):
        _require(isinstance(row, list) and len(row) == d, f"{where}: row {i} must have {d} entries")
        for j, pair in enumerate(row):
            _require(
                isinstance(pair, list) and len(pair) == 2,
                f"{where}: entry ({i}, {j}) must be an [re, im] pair",
            )
            out[i, j] = complex(pair[0], pair[1])
    return out


def block_unitary_to_json(u: BlockUnitary) -> dict:
    src = u.source
    blocks = {}
    for (i, j), m in sorted(u.blocks.items()):
        key = f"{src.left_index[i]},{src.right_index[j]}"
        blocks[key] = _complex_matrix_to_json(m)
    return {
        "schema": SCHEMA,
        "left_index": list(src.left_index),
        "right_index": list(src.right_index),
        "dims": [list(r) for r in src.dims.entries],
        "blocks": blocks,
    }


def block_unitary_from_json(
    doc, source: GraphCorrespondence, target: GraphCorrespondence
) -> BlockUnitary:
    """Attach stored blocks to the given source/target correspondences.

    The document's declared shape must match the source's; which structured
    correspondences the blocks act between is the caller's decision.
    """
    _require(isinstance(doc, dict), "block unitary document must be a JSON object")
    for field in ("left_index", "right_index", "dims", "blocks"):
        _require(field in doc, f"block unitary document is missing '{field}'")
    dims = from_rows(doc["dims"])
    _require(
        [str(x) for x in doc["left_index"]] == [str(x) for x in source.left_index]
        and [str(x) for x in doc["right_index"]] == [str(x) for x in source.right_index]
        and dims == source.dims,
        "block unitary shape does not match the expected correspondence",
    )
    blocks = {}
    for (i, j) in source.blocks():
        key = f"{source.left_index[i]},{source.right_index[j]}"
        _require(key in doc["blocks"], f"missing block '{key}'")
        blocks[(i, j)] = _complex_matrix_from_json(
            doc["blocks"][key], source.block_dim(i, j), f"block '{key}'"
        )
    return BlockUnitary(source, target, blocks)


# ---------------------------------------------------------------------------
# Object pairs, arrows, shift bundles
# ---------------------------------------------------------------------------


def object_to_json(obj: ObjectPair) -> dict:
    return {
        "labels": list(obj.algebra_index),
        "matrix": matrix_to_json(obj.x.dims),
    }


def object_from_json(doc) -> ObjectPair:
    _require(isinstance(doc, dict) and "matrix" in doc, "object document needs a 'matrix'")
    labels = doc.get("labels")
    return object_pair(matrix_from_json(doc["matrix"]), labels)


def arrow_to_json(arrow: OneArrow) -> dict:
    """Serialize an arrow whose correspondence is atomic (edge basis)."""
    return {
        "schema": SCHEMA,
        "source": object_to_json(arrow.source),
        "target": object_to_json(arrow.target),
        "f_dims": matrix_to_json(arrow.f.dims),
        "phi": block_unitary_to_json(arrow.phi),
    }


def arrow_from_json(doc) -> OneArrow:
    _require(isinstance(doc, dict), "arrow document must be a JSON object")
    for field in ("source", "target", "f_dims", "phi"):
        _require(field in doc, f"arrow document is missing '{field}'")
    source = object_from_json(doc["source"])
    target = object_from_json(doc["target"])
    f = from_matrix(matrix_from_json(doc["f_dims"]), target.algebra_index, source.algebra_index)
    phi = block_unitary_from_json(doc["phi"], tensor(target.x, f), tensor(f, source.x))
    return OneArrow(source, target, f, phi)


def shift_to_json(d: AlignedShiftData) -> dict:
    """Serialize a shift whose M and N are atomic correspondences."""
    return {
        "schema": SCHEMA,
        "x": object_to_json(d.x_obj),
        "y": object_to_json(d.y_obj),
        "lag": d.lag,
        "m_dims": matrix_to_json(d.m_arrow.f.dims),
        "n_dims": matrix_to_json(d.n_arrow.f.dims),
        "phi_m": block_unitary_to_json(d.m_arrow.phi),
        "phi_n": block_unitary_to_json(d.n_arrow.phi),
        "psi_x": block_unitary_to_json(d.psi_x),
        "psi_y": block_unitary_to_json(d.psi_y),
    }


def shift_from_json(doc) -> AlignedShiftData:
    _require(isinstance(doc, dict), "shift document must be a JSON object")
    for field in ("x", "y", "lag", "m_dims", "n_dims", "phi_m", "phi_n", "psi_x", "psi_y"):
        _require(field in doc, f"shift document is missing '{field}'")
    _require(isinstance(doc["lag"], int) and doc["lag"] >= 1, "lag must be a positive integer")
    x_obj = object_from_json(doc["x"])
    y_obj = object_from_json(doc["y"])
    m_corr = from_matrix(
        matrix_from_json(doc["m_dims"]), x_obj.algebra_index, y_obj.algebra_index
    )
    n_corr = from_matrix(
        matrix_from_json(doc["n_dims"]), y_obj.algebra_index, x_obj.algebra_index
    )
    phi_m = block_unitary_from_json(doc["phi_m"], tensor(x_obj.x, m_corr), tensor(m_corr, y_obj.x))
    phi_n = block_unitary_from_json(doc["phi_n"], tensor(y_obj.x, n_corr), tensor(n_corr, x_obj.x))
    psi_x = block_unitary_from_json(
        doc["psi_x"], tensor(m_corr, n_corr), power_correspondence(x_obj, doc["lag"])
    )
    psi_y = block_unitary_from_json(
        doc["psi_y"], tensor(n_corr, m_corr), power_correspondence(y_obj, doc["lag"])
    )
    m_arrow = OneArrow(y_obj, x_obj, m_corr, phi_m)
    n_arrow = OneArrow(x_obj, y_obj, n_corr, phi_n)
    return AlignedShiftData(x_obj, y_obj, m_arrow, n_arrow, psi_x, psi_y, doc["lag"])


def homotopy_to_json(h: ArrowHomotopy) -> dict:
    return {
        "schema": SCHEMA,
        "fiber_dims": matrix_to_json(h.fiber.dims),
        "samples": [
            {"t": t, "unitary": block_unitary_to_json(u)} for t, u in h.path.samples
        ],
        "h0": block_unitary_to_json(h.h0),
        "h1": block_unitary_to_json(h.h1),
    }


def load_json(path: str) -> dict:
    with open(path, "r", encoding="utf-8") as fh:
        text = fh.read()
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"{path}: invalid JSON at line {exc.lineno}, column {exc.colno}") from exc


def dump_json(doc) -> str:
    """Canonical serialization: sorted keys, fixed separators, trailing newline."""
    return json.dumps(doc, sort_keys=True, separators=(",", ": "), indent=1) + "\n"
