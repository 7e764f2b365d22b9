"""Recovering (base field, division algebra, n) from orthogonality data.

For a simple finite-dimensional algebra the vector-space dimension and the
maximal chain length pin down the classification, except that dimension n^2
is shared by M_n(R) over R and M_n(C) over C; those two are separated by
counting distinct outgoing neighborhoods strictly above the second-to-last
chain element (two over R, unboundedly many over C).

Direct sums of complex blocks get a projection chain and the simplicity
criterion: the algebra is simple iff its dimension equals the squared
maximal chain length.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field as dataclass_field

import numpy as np

from .errors import (
    BlockMismatch, DimensionOne, FieldNotComplex, FormatError, NotSimple,
    NotSimpleFiniteDimensional, ZeroDirection,
)
from .matkernel import (
    BASE_FIELDS, DIM_K, DIVISION_ALGEBRAS, KMatrix, norm_carrier,
    operator_norm, _sigma_max,
)
from .orthogonality import BRUTE_TOL, MIN_NORM_XTOL, _minimize_block_norm
from .orthograph import Chain, build_maximal_chain, random_kmatrix, successor_bucket_history

__all__ = [
    "AlgebraSpec", "ClassificationResult", "parse_algebra",
    "classify_from_invariants", "classify",
    "projection_chain", "simplicity_test", "direct_sum_bj",
]

_SHORTHAND = re.compile(r"^M(\d+)\(([RCH])\)(?:/([RC]))?$")


@dataclass(frozen=True)
class AlgebraSpec:
    """Finite-dimensional algebra: a base field and matrix blocks over it."""

    base_field: str
    blocks: tuple  # of (division_algebra, n)

    def __post_init__(self):
        if self.base_field not in BASE_FIELDS:
            raise FormatError(f"unknown base field {self.base_field!r}")
        if not self.blocks:
            raise FormatError("an algebra needs at least one block")
        for alg, n in self.blocks:
            if alg not in DIVISION_ALGEBRAS:
                raise FormatError(f"unknown division algebra {alg!r}")
            if n < 1:
                raise FormatError("block sizes must be positive")
            if self.base_field == "C" and alg != "C":
                raise FormatError("complex base field forces complex blocks")

    @property
    def simple(self) -> bool:
        return len(self.blocks) == 1

    @property
    def triple(self) -> tuple:
        if not self.simple:
            raise NotSimple("triple is defined for one-block algebras")
        alg, n = self.blocks[0]
        return alg, self.base_field, n

    @property
    def dim(self) -> int:
        d_f = DIM_K[self.base_field]
        total = sum(n * n * DIM_K[alg] for alg, n in self.blocks)
        if total % d_f:
            raise FormatError("dimension is not integral over the base field")
        return total // d_f

    @property
    def total_n(self) -> int:
        return sum(n for _, n in self.blocks)

    def __str__(self) -> str:
        body = " + ".join(f"M{n}({alg})" for alg, n in self.blocks)
        return f"{body}/{self.base_field}"


def parse_algebra(text: str) -> AlgebraSpec:
    """Parse the shorthand M<n>(<R|C|H>)[/<R|C>]; the base field defaults to R.

    Complex-base-field algebras must say /C explicitly: "M3(C)" is the real
    algebra of complex matrices, "M3(C)/C" the complex one.
    """
    m = _SHORTHAND.match(text.strip())
    if not m:
        raise FormatError(f"cannot parse algebra shorthand {text!r}")
    n = int(m.group(1))
    alg = m.group(2)
    fld = m.group(3) or "R"
    return AlgebraSpec(fld, ((alg, n),))


@dataclass
class ClassificationResult:
    base_field: str | None
    division_algebra: str | None
    n: int | None
    case: str  # "i" | "ii" | "iii" | "iv" | "ambiguous_dim_one"
    evidence: dict = dataclass_field(default_factory=dict)

    @property
    def triple(self):
        return self.base_field, self.division_algebra, self.n


def classify_from_invariants(dim: int, n: int, bucket_probe=None) -> ClassificationResult:
    """Decision on (dimension over F, maximal chain length n).

    ``bucket_probe`` is a deferred zero-argument query answering "does the
    successor bucket count stabilize at two"; it is consulted only in the
    dim == n^2 case.
    """
    if dim < 1 or n < 1:
        raise NotSimpleFiniteDimensional("dimension and chain length must be positive")
    if dim == 1:
        return ClassificationResult(None, None, None, "ambiguous_dim_one",
                                    {"dim": dim, "chain_length": n})
    evidence = {"dim": dim, "chain_length": n}
    root = int(np.sqrt(dim) + 0.5)
    is_square = root * root == dim
    if not is_square:
        if dim != 2 * n * n:
            raise NotSimpleFiniteDimensional(
                f"non-square dimension {dim} incompatible with chain length {n}")
        return ClassificationResult("R", "C", n, "i", evidence)
    if dim % 4 == 0 and n == root // 2 and root % 2 == 0:
        return ClassificationResult("R", "H", n, "ii", evidence)
    if dim == n * n:
        if bucket_probe is None:
            raise NotSimpleFiniteDimensional(
                "dimension n^2 needs the successor bucket probe")
        two = bool(bucket_probe())
        evidence["bucket_probe_two"] = two
        if two:
            return ClassificationResult("R", "R", n, "iii", evidence)
        return ClassificationResult("C", "C", n, "iv", evidence)
    raise NotSimpleFiniteDimensional(
        f"dimension {dim} and chain length {n} match no simple algebra")


def classify(algebra, samples: int = 200, seed: int = 0) -> ClassificationResult:
    """End-to-end classification of a simple algebra with dimension > 1.

    The dimension is taken from the algebra's vector-space structure; the
    chain length comes from a maximal chain built on a random element, and
    the bucket probe (dim == n^2 only) counts successor neighborhoods,
    requiring no growth over the last half of the draws to answer "two".
    """
    spec = algebra if isinstance(algebra, AlgebraSpec) else parse_algebra(algebra)
    if not spec.simple:
        raise NotSimple("classification needs a one-block algebra")
    dim = spec.dim
    if dim == 1:
        raise DimensionOne("one-dimensional algebras are indistinguishable")
    alg, fld, n_true = spec.triple
    rng = np.random.default_rng(seed)
    A = random_kmatrix(alg, fld, n_true, rng)
    chain = build_maximal_chain(A)
    n_len = len(chain)
    evidence_extra: dict = {}

    def bucket_probe() -> bool:
        history = successor_bucket_history(chain, samples, seed + 1)
        evidence_extra["bucket_count"] = history[-1]
        evidence_extra["bucket_count_half"] = history[len(history) // 2 - 1]
        return history[-1] == 2 and history[len(history) // 2 - 1] == history[-1]

    result = classify_from_invariants(dim, n_len, bucket_probe)
    result.evidence.update(evidence_extra)
    return result


# ---- direct sums of complex blocks ------------------------------------------


def _check_blocks(spec: AlgebraSpec, A) -> None:
    if len(A) != len(spec.blocks):
        raise BlockMismatch(f"expected {len(spec.blocks)} blocks, got {len(A)}")
    for blk, (alg, n) in zip(A, spec.blocks):
        if (blk.algebra, blk.field, blk.n) != (alg, spec.base_field, n):
            raise BlockMismatch(
                f"block {(blk.algebra, blk.field, blk.n)} does not match {(alg, spec.base_field, n)}")


def direct_sum_bj(spec: AlgebraSpec, A: list, B: list) -> bool:
    """BJ orthogonality in a block-diagonal algebra, straight from the norm.

    The direct-sum norm is the maximum of the block norms; orthogonality is
    decided by minimizing lambda |-> max_j ||A_j + lambda B_j|| over the base
    field.  The support-functional shortcut is deliberately not used here.
    """
    _check_blocks(spec, A)
    _check_blocks(spec, B)
    if all(blk.is_zero() for blk in B):
        return True
    if all(blk.is_zero() for blk in A):
        return True
    na = max(operator_norm(blk) for blk in A)
    nb = max(operator_norm(blk) for blk in B)
    bound = 2.0 * na / nb
    ca = [norm_carrier(blk) for blk in A]
    cb = [norm_carrier(blk) for blk in B]

    def norm_at(lam):
        return max(_sigma_max(x + lam * y) for x, y in zip(ca, cb))

    _, val, _ = _minimize_block_norm(norm_at, spec.base_field, bound, MIN_NORM_XTOL)
    return val >= na - BRUTE_TOL * max(1.0, na)


def _partial_projections(spec: AlgebraSpec) -> list:
    """P_k = sum of the first k diagonal unit projections, as block elements."""
    sizes = [n for _, n in spec.blocks]
    N = sum(sizes)
    out = []
    for k in range(1, N + 1):
        blocks = []
        offset = 0
        for n in sizes:
            diag = np.zeros(n)
            for i in range(n):
                if offset + i < k:
                    diag[i] = 1.0
            blocks.append(KMatrix.diag(diag, "C", spec.base_field))
            offset += n
        out.append(blocks)
    return out


def projection_chain(spec: AlgebraSpec) -> Chain:
    """The chain of partial identity sums P_1, ..., P_N across the blocks.

    Strictness of every step is certified brute-force: P_k lies in
    P_{k+1}^perp (P_{k+1} attains its norm on the (k+1)-st unit vector, which
    P_k kills) but never in its own P_k^perp.
    """
    if spec.base_field != "C":
        raise FieldNotComplex("projection chains are built over the complex field")
    projections = _partial_projections(spec)
    N = len(projections)
    for k in range(N - 1):
        if not direct_sum_bj(spec, projections[k + 1], projections[k]):
            raise RuntimeError(f"projection chain witness failed at step {k}")
        if direct_sum_bj(spec, projections[k], projections[k]):
            raise RuntimeError(f"projection {k} came out orthogonal to itself")
    return Chain(projections, [projections[k] for k in range(N - 1)])


def simplicity_test(spec: AlgebraSpec) -> bool:
    """Simplicity from orthogonality data: dim equals the squared chain length.

    sum n_j^2 = (sum n_j)^2 holds exactly for a single block.
    """
    if spec.base_field != "C":
        raise FieldNotComplex("the simplicity criterion is stated over C")
    dim = spec.dim
    N = len(projection_chain(spec).elements)
    return dim == N * N
