"""Shipped regression fixtures.

* crossed_block_chain: a real 4x4 maximal chain whose displayed middle
  element carries a crossed off-diagonal block, so the given representatives
  admit no simultaneous singular frame even though the chain is valid.
* right_witness_pair: diag(1, 1/2) with its right-asymmetry witness.
* left_witness_pair: diag(1, 0) with the two-angle left-asymmetry witness.
* scalar_star_digraph: the 1x1 real algebra, where orthogonality means
  "at least one operand is zero" and the digraph is a star around zero.
"""

from __future__ import annotations

import json
from importlib.resources import files

from .fileformats import chain_from_dict, matrix_from_dict
from .orthograph import Chain

__all__ = [
    "fixture_names", "load_fixture", "crossed_block_chain",
    "right_witness_pair", "left_witness_pair", "scalar_star_digraph_doc",
]

_NAMES = (
    "crossed_block_chain",
    "right_witness_pair",
    "left_witness_pair",
    "scalar_star_digraph",
)


def fixture_names() -> tuple:
    return _NAMES


def load_fixture(name: str) -> dict:
    if name not in _NAMES:
        raise KeyError(f"unknown fixture {name!r}")
    resource = files(__package__) / "fixtures" / f"{name}.json"
    return json.loads(resource.read_text(encoding="utf-8"))


def crossed_block_chain() -> Chain:
    return chain_from_dict(load_fixture("crossed_block_chain"))


def right_witness_pair():
    doc = load_fixture("right_witness_pair")
    return matrix_from_dict(doc["a"]), matrix_from_dict(doc["b"])


def left_witness_pair():
    doc = load_fixture("left_witness_pair")
    return matrix_from_dict(doc["a"]), matrix_from_dict(doc["b"])


def scalar_star_digraph_doc() -> dict:
    return load_fixture("scalar_star_digraph")
