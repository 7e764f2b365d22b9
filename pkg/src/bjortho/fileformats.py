"""JSON and DOT serialization for matrices, algebras, chains, and digraphs.

Floating-point entries survive a serialize/parse round trip bit-exactly for
finite doubles (shortest-repr JSON floats).  All emitters order keys and
edges deterministically so equal inputs give byte-identical files.
"""

from __future__ import annotations

import json
import math

import numpy as np

from .classify import AlgebraSpec
from .errors import FormatError
from .matkernel import DIM_K, KMatrix
from .orthograph import Chain, DigraphSample

__all__ = [
    "matrix_to_dict", "matrix_from_dict",
    "algebra_to_dict", "algebra_from_dict",
    "chain_to_dict", "chain_from_dict",
    "digraph_to_dict", "digraph_to_dot",
    "dumps", "load_json", "save_json",
]


def dumps(obj) -> str:
    return json.dumps(obj, sort_keys=True, indent=1) + "\n"


def load_json(path: str):
    try:
        with open(path, "r", encoding="utf-8") as fh:
            return json.load(fh)
    except json.JSONDecodeError as exc:
        raise FormatError(f"{path}: invalid JSON ({exc})") from exc


def save_json(path: str, obj) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(dumps(obj))


def _entries_to_list(A: KMatrix) -> list:
    return A.comps.tolist()


def _entries_from_list(entries, algebra: str, n: int) -> np.ndarray:
    d = DIM_K[algebra]
    try:
        arr = np.asarray(entries, dtype=float)
    except (TypeError, ValueError) as exc:
        raise FormatError(f"entries are not numeric: {exc}") from exc
    if arr.shape != (n, n, d):
        raise FormatError(f"entries have shape {arr.shape}, expected {(n, n, d)}")
    if not np.all(np.isfinite(arr)):
        raise FormatError("entries must be finite")
    return arr


def matrix_to_dict(A: KMatrix) -> dict:
    return {
        "division_algebra": A.algebra,
        "base_field": A.field,
        "n": A.n,
        "entries": _entries_to_list(A),
    }


def matrix_from_dict(doc: dict) -> KMatrix:
    if not isinstance(doc, dict):
        raise FormatError("matrix document must be an object")
    for key in ("division_algebra", "base_field", "n", "entries"):
        if key not in doc:
            raise FormatError(f"matrix document misses {key!r}")
    alg, fld, n = doc["division_algebra"], doc["base_field"], doc["n"]
    if alg not in DIM_K:
        raise FormatError(f"unknown division algebra {alg!r}")
    if fld not in ("R", "C"):
        raise FormatError(f"unknown base field {fld!r}")
    if not isinstance(n, int) or n < 1:
        raise FormatError("n must be a positive integer")
    if fld == "C" and alg != "C":
        raise FormatError("base field C requires division algebra C")
    return KMatrix(alg, fld, n, _entries_from_list(doc["entries"], alg, n))


def algebra_to_dict(spec: AlgebraSpec) -> dict:
    return {
        "base_field": spec.base_field,
        "blocks": [{"division_algebra": alg, "n": n} for alg, n in spec.blocks],
    }


def algebra_from_dict(doc: dict) -> AlgebraSpec:
    if not isinstance(doc, dict) or "base_field" not in doc or "blocks" not in doc:
        raise FormatError("algebra document needs base_field and blocks")
    blocks = []
    for blk in doc["blocks"]:
        if not isinstance(blk, dict) or "division_algebra" not in blk or "n" not in blk:
            raise FormatError("each block needs division_algebra and n")
        if not isinstance(blk["n"], int):
            raise FormatError("block size must be an integer")
        blocks.append((blk["division_algebra"], blk["n"]))
    return AlgebraSpec(doc["base_field"], tuple(blocks))


def chain_to_dict(chain: Chain) -> dict:
    first = chain.elements[0]
    return {
        "kind": "chain",
        "algebra": {
            "division_algebra": first.algebra,
            "base_field": first.field,
            "n": first.n,
        },
        "elements": [_entries_to_list(E) for E in chain.elements],
        "witnesses": [_entries_to_list(W) for W in chain.witnesses],
    }


def chain_from_dict(doc: dict) -> Chain:
    if not isinstance(doc, dict) or doc.get("kind") != "chain":
        raise FormatError("expected a chain document")
    head = doc.get("algebra")
    if not isinstance(head, dict):
        raise FormatError("chain document misses its algebra header")
    alg = head.get("division_algebra")
    fld = head.get("base_field")
    n = head.get("n")
    if alg not in DIM_K or fld not in ("R", "C") or not isinstance(n, int):
        raise FormatError("bad algebra header in chain document")
    elements = [KMatrix(alg, fld, n, _entries_from_list(e, alg, n))
                for e in doc.get("elements", [])]
    witnesses = [KMatrix(alg, fld, n, _entries_from_list(e, alg, n))
                 for e in doc.get("witnesses", [])]
    if not elements:
        raise FormatError("chain document has no elements")
    return Chain(elements, witnesses)


def digraph_to_dict(sample: DigraphSample, classes: list | None = None) -> dict:
    doc = {
        "kind": "digraph",
        "algebra": {
            "division_algebra": sample.algebra,
            "base_field": sample.field,
            "n": sample.n,
        },
        "seed": sample.seed,
        "include_zero": sample.include_zero,
        "projective": sample.projective,
        "labels": list(sample.labels),
        "vertices": [_entries_to_list(v) for v in sample.vertices],
        "edges": sorted([list(e) for e in sample.edges]),
    }
    if classes is not None:
        doc["reduced_classes"] = [sorted(c) for c in classes]
    return doc


def digraph_to_dot(sample: DigraphSample) -> str:
    lines = ["digraph ortho {"]
    for label in sample.labels:
        lines.append(f"  {label};")
    for i, j in sorted(sample.edges):
        lines.append(f"  {sample.labels[i]} -> {sample.labels[j]};")
    lines.append("}")
    return "\n".join(lines) + "\n"
