"""Graph-level structure of the orthogonality digraph on a matrix algebra.

Vertices are algebra elements, with an edge A -> B when A is BJ orthogonal
to B.  The outgoing neighborhood A^perp = {B : A -> B} of a nonzero A is
determined by the pair (norm-attaining subspace, action on it up to one
base-field scalar), which makes neighborhood comparison computable without
quantifying over the algebra.  Chain construction is white-box (it uses the
SVD), while every correctness claim is re-checked at the graph level.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dataclass_field

import numpy as np

from .errors import (
    AlgebraMismatch, ChainTooShort, DimensionTooSmall, NotMaximalChain,
    NotSimple, UnitaryInput, ZeroMatrix,
)
from .matkernel import (
    CLUSTER_TOL, DIM_K, KMatrix, _embed_array, _sigma_max, field_inner,
    gram_schmidt_k, norm_carrier, operator_norm, outer, svd, vec_matvec,
    vec_norm, vec_scale_right,
)
from .optimize import golden_min, pattern_search
from .orthogonality import (
    TOL_ORTH, _bj_core, bj_min_norm, is_bj_orthogonal, norm_attaining_space,
)

__all__ = [
    "SUBSET_TOL", "ALPHA_TOL",
    "Chain", "DigraphSample",
    "random_kmatrix", "random_unitary_multiple", "random_unimodular",
    "outgoing_subset", "outgoing_equal", "refine",
    "build_maximal_chain", "validate_chain",
    "simultaneous_chain_representatives",
    "is_right_symmetric", "right_asymmetry_witness", "left_asymmetry_witness",
    "successor_buckets", "successor_bucket_history",
    "sample_digraph", "build_digraph", "reduced_classes",
    "graph_dimension_search",
]

#: operator-norm tolerance on (I - P2) P1 for subspace inclusion
SUBSET_TOL = 1e-8

#: relative consistency tolerance for the shared scalar across a frame
ALPHA_TOL = 1e-7


# ---- random elements -------------------------------------------------------


def random_kmatrix(algebra: str, field: str, n: int, rng) -> KMatrix:
    """Gaussian element: every real component i.i.d. standard normal."""
    return KMatrix(algebra, field, n, rng.standard_normal((n, n, DIM_K[algebra])))


def random_unitary_multiple(algebra: str, field: str, n: int, rng,
                            scale: float | None = None) -> KMatrix:
    res = svd(random_kmatrix(algebra, field, n, rng))
    U = KMatrix.zeros(algebra, field, n)
    for i in range(n):
        U = U + outer(res.left[i], res.right[i], field)
    if scale is None:
        scale = float(np.exp(rng.standard_normal()))
    return U.scale(scale)


def random_unimodular(algebra: str, rng) -> np.ndarray:
    """Unit-modulus scalar of K as components."""
    if algebra == "R":
        return np.array([1.0 if rng.integers(2) else -1.0])
    comps = rng.standard_normal(DIM_K[algebra])
    return comps / np.linalg.norm(comps)


def _vec_scale_field(v: np.ndarray, lam, field: str) -> np.ndarray:
    lam = complex(lam)
    if lam.imag == 0.0:
        return v * lam.real
    if field != "C":
        raise ValueError("complex coefficient over a real base field")
    x, y = v[:, 0], v[:, 1]
    return np.stack([lam.real * x - lam.imag * y, lam.real * y + lam.imag * x], axis=-1)


# ---- neighborhood comparison -----------------------------------------------


def outgoing_subset(A1: KMatrix, A2: KMatrix) -> bool:
    """Whether A1^perp is contained in A2^perp.

    Holds iff the norm-attaining space of A1 sits inside that of A2 and one
    nonzero base-field scalar alpha has A1 u = alpha (A2 u) across it.  The
    scalar is extracted from the first frame vector and enforced on all.
    """
    if not A1.same_algebra(A2):
        raise AlgebraMismatch("operands live in different algebras")
    if A1.is_zero() or A2.is_zero():
        raise ZeroMatrix("neighborhood comparison needs nonzero elements")
    A1n = A1.scale(1.0 / operator_norm(A1))
    A2n = A2.scale(1.0 / operator_norm(A2))
    S1 = norm_attaining_space(A1n)
    S2 = norm_attaining_space(A2n)
    if S1.dim > S2.dim:
        return False
    P1 = _embed_array(S1.projector())
    P2 = _embed_array(S2.projector())
    if _sigma_max(P1 - P2 @ P1) >= SUBSET_TOL:
        return False
    u1 = S1.frame[0]
    w1 = vec_matvec(A1n, u1)
    w2 = vec_matvec(A2n, u1)
    denom = vec_norm(w2) ** 2
    if denom < 1e-18:
        return False
    alpha = field_inner(w1, w2, A1.field) / denom
    if abs(alpha) < 1e-12:
        return False
    for u in S1.frame:
        resid = vec_matvec(A1n, u) - _vec_scale_field(vec_matvec(A2n, u), alpha, A1.field)
        if vec_norm(resid) > ALPHA_TOL:
            return False
    return True


def outgoing_equal(A1: KMatrix, A2: KMatrix) -> bool:
    """Whether A1 and A2 have identical outgoing neighborhoods."""
    return outgoing_subset(A1, A2) and outgoing_subset(A2, A1)


# ---- chains ------------------------------------------------------------------


@dataclass
class Chain:
    """Ordered elements with strictly increasing outgoing neighborhoods.

    ``witnesses[i]`` certifies strictness of step i: it is orthogonal-from
    elements[i+1] but not from elements[i].
    """

    elements: list
    witnesses: list = dataclass_field(default_factory=list)

    def __len__(self) -> int:
        return len(self.elements)


def _partial_isometry(res, k: int, field: str) -> KMatrix:
    B = KMatrix.zeros(res.algebra, field, res.n)
    for i in range(k):
        B = B + outer(res.left[i], res.right[i], field)
    return B


def refine(A: KMatrix) -> KMatrix | None:
    """One step up the preorder: an element whose neighborhood strictly grows.

    Returns None when A is a scalar multiple of a unitary (nothing above it);
    otherwise the partial isometry on the top singular cluster extended by
    one more singular direction.
    """
    if A.is_zero():
        raise ZeroMatrix("cannot refine the zero matrix")
    res = svd(A)
    if res.sigma[0] - res.sigma[-1] <= CLUSTER_TOL * res.sigma[0]:
        return None
    k = res.top_cluster_dim()
    return _partial_isometry(res, k + 1, A.field)


def build_maximal_chain(A: KMatrix) -> Chain:
    """Maximal chain through (the class of) A; its length always equals n.

    Descends first: partial isometries on the leading singular directions of
    A, then A itself, then repeated :func:`refine` up to a unitary multiple.
    Strictness witnesses are the canonical partial-isometry representatives
    of the lower element of each step.
    """
    if A.is_zero():
        raise ZeroMatrix("chains consist of nonzero elements")
    n = A.n
    res = svd(A)
    k = res.top_cluster_dim()
    entries: list[tuple[KMatrix, KMatrix]] = []  # (element, canonical rep)
    for j in range(1, k):
        L = _partial_isometry(res, j, A.field)
        entries.append((L, L))
    entries.append((A, _partial_isometry(res, k, A.field)))
    cur = A
    while True:
        nxt = refine(cur)
        if nxt is None:
            break
        entries.append((nxt, nxt))
        cur = nxt
    # safety: drop accidental class duplicates
    cleaned = [entries[0]]
    for e in entries[1:]:
        if not outgoing_equal(cleaned[-1][0], e[0]):
            cleaned.append(e)
    if len(cleaned) != n:
        raise NotMaximalChain(f"built length {len(cleaned)}, expected {n}")
    elements = [e[0] for e in cleaned]
    witnesses = [e[1] for e in cleaned[:-1]]
    return Chain(elements, witnesses)


def validate_chain(chain: Chain, check_witnesses: bool = True):
    """Graph-level validation; returns (ok, list of failure strings)."""
    msgs: list[str] = []
    elems = chain.elements
    if not elems:
        return False, ["empty chain"]
    n = elems[0].n
    for i, E in enumerate(elems):
        if E.is_zero():
            msgs.append(f"element {i} is zero")
    if msgs:
        return False, msgs
    for i in range(len(elems) - 1):
        if not outgoing_subset(elems[i], elems[i + 1]):
            msgs.append(f"step {i}: neighborhood not contained in the next")
        elif outgoing_subset(elems[i + 1], elems[i]):
            msgs.append(f"step {i}: neighborhoods equal, chain not strict")
    if len(elems) > n:
        msgs.append(f"length {len(elems)} exceeds n = {n}")
    if len(elems) == n:
        for i, E in enumerate(elems):
            d = norm_attaining_space(E).dim
            if d != i + 1:
                msgs.append(f"norm-attaining dimension {d} at position {i}, expected {i + 1}")
    if check_witnesses and chain.witnesses:
        if len(chain.witnesses) != len(elems) - 1:
            msgs.append("witness count does not match steps")
        else:
            for i, W in enumerate(chain.witnesses):
                if not is_bj_orthogonal(elems[i + 1], W).orthogonal:
                    msgs.append(f"witness {i} not orthogonal-from element {i + 1}")
                if is_bj_orthogonal(elems[i], W).orthogonal:
                    msgs.append(f"witness {i} orthogonal-from element {i}, not strict")
    return not msgs, msgs


def _chain_frames(chain: Chain):
    """Adapted flag frames (U, V) of a maximal chain.

    u_1, ..., u_n with {u_1..u_i} spanning the norm-attaining space of the
    i-th element, and v_i the image of u_i under the normalized last element.
    """
    elems = chain.elements
    n = elems[0].n
    if len(elems) != n:
        raise NotMaximalChain(f"length {len(elems)}, expected {n}")
    alg, fld = elems[0].algebra, elems[0].field
    normalized = [E.scale(1.0 / operator_norm(E)) for E in elems]
    chosen: list[np.ndarray] = []
    for i, E in enumerate(normalized):
        sub = norm_attaining_space(E)
        if sub.dim != i + 1:
            raise NotMaximalChain(
                f"norm-attaining dimension {sub.dim} at position {i}, expected {i + 1}"
            )
        merged = gram_schmidt_k(chosen + list(sub.frame), alg, fld, ambient_n=n)
        if merged.dim != i + 1:
            raise NotMaximalChain("norm-attaining spaces are not nested")
        chosen = list(merged.frame)
    U = np.stack(chosen)
    last = normalized[-1]
    V = np.stack([vec_matvec(last, u) for u in chosen])
    return normalized, U, V


def simultaneous_chain_representatives(chain: Chain) -> list[KMatrix]:
    """Representatives B_i ~ elements[i] sharing one singular frame pair.

    B_i = sum_{l <= i} v_l u_l* on the adapted flag; the last representative
    is the normalized last element itself.  Every replacement is certified
    with outgoing_equal, and diagonality propagates: a diagonal last element
    forces a diagonal B_{n-1}.
    """
    normalized, U, V = _chain_frames(chain)
    n = len(normalized)
    alg, fld = normalized[0].algebra, normalized[0].field
    reps: list[KMatrix] = []
    acc = KMatrix.zeros(alg, fld, n)
    for i in range(n - 1):
        acc = acc + outer(V[i], U[i], fld)
        reps.append(acc.copy())
    reps.append(normalized[-1])
    for i, (rep, orig) in enumerate(zip(reps, chain.elements)):
        if not outgoing_equal(rep, orig):
            raise NotMaximalChain(f"representative {i} is not class-equal to the element")
    if normalized[-1].is_diagonal(atol=1e-9) and n >= 2:
        assert reps[n - 2].is_diagonal(atol=1e-8), \
            "diagonality failed to propagate to the second-to-last representative"
    return reps


# ---- symmetry of vertices -----------------------------------------------------


def is_right_symmetric(A: KMatrix) -> bool:
    """Whether every B orthogonal to A gets orthogonality back.

    Holds exactly for scalar multiples of unitaries, i.e. when all singular
    values coincide.
    """
    if A.is_zero():
        raise ZeroMatrix("symmetry is examined on nonzero elements")
    res = svd(A)
    return bool(res.sigma[0] - res.sigma[-1] <= CLUSTER_TOL * res.sigma[0])


def right_asymmetry_witness(A: KMatrix) -> KMatrix:
    """B with B orthogonal to A but A not orthogonal to B.

    In A's singular frame, with k the top-cluster dimension and
    sigma = s_{k+1}/s_1, the witness mixes directions k and k+1:
    B0 = sum_{j<k} e_j e_j* + u_k v_k* + u_{k+1} v_{k+1}* built from
    u_k = (e_k - e_{k+1})/sqrt(2), v_k = (sigma e_k + e_{k+1})/sqrt(1+sigma^2),
    u_{k+1} = (e_k + e_{k+1})/sqrt(2), v_{k+1} = (e_k - sigma e_{k+1})/sqrt(1+sigma^2),
    then conjugated back by the frame pair.
    """
    if A.is_zero():
        raise ZeroMatrix("witness needs a nonzero element")
    res = svd(A)
    if res.sigma[0] - res.sigma[-1] <= CLUSTER_TOL * res.sigma[0]:
        raise UnitaryInput("scalar multiples of unitaries are right-symmetric")
    n, fld = A.n, A.field
    k = res.top_cluster_dim()  # 1-based count; mixes 0-based indices k-1, k
    sigma = float(res.sigma[k] / res.sigma[0])
    d = DIM_K[A.algebra]

    def unit(idx):
        e = np.zeros((n, d))
        e[idx, 0] = 1.0
        return e

    ek, ek1 = unit(k - 1), unit(k)
    uk = (ek - ek1) / np.sqrt(2.0)
    vk = (sigma * ek + ek1) / np.sqrt(1.0 + sigma * sigma)
    uk1 = (ek + ek1) / np.sqrt(2.0)
    vk1 = (ek - sigma * ek1) / np.sqrt(1.0 + sigma * sigma)
    B0 = KMatrix.zeros(A.algebra, fld, n)
    for j in range(k - 1):
        B0 = B0 + outer(unit(j), unit(j), fld)
    B0 = B0 + outer(uk, vk, fld) + outer(uk1, vk1, fld)
    from .matkernel import frame_to_matrix
    Vl = frame_to_matrix(res.left, fld)
    Ur = frame_to_matrix(res.right, fld)
    return Vl @ B0 @ Ur.adjoint()


def left_asymmetry_witness(A: KMatrix) -> KMatrix:
    """B with A orthogonal to B but B not orthogonal to A.

    First candidate: the rank-one v_2 u_2* from A's singular frame, which A
    is always orthogonal to; it fails to reciprocate unless s_2 vanishes.
    Fallback for the (near) rank-one shape: with (c, s) = (-1/2, sqrt(3)/2),
    B = (c e_1 + s e_2)(c e_1 + s e_2)* - (1/3)(-s e_1 + c e_2)(-s e_1 + c e_2)*
    conjugated back; B attains its norm only along c e_1 + s e_2, where the
    pairing against A stays away from zero.
    """
    if A.is_zero():
        raise ZeroMatrix("witness needs a nonzero element")
    if A.n < 2:
        raise DimensionTooSmall("left-asymmetry witnesses need n >= 2")
    res = svd(A)
    fld = A.field
    B1 = outer(res.left[1], res.right[1], fld)
    if is_bj_orthogonal(A, B1).orthogonal and not is_bj_orthogonal(B1, A).orthogonal:
        return B1
    c, s = -0.5, np.sqrt(3.0) / 2.0
    d = DIM_K[A.algebra]
    e1 = np.zeros((A.n, d)); e1[0, 0] = 1.0
    e2 = np.zeros((A.n, d)); e2[1, 0] = 1.0
    x = c * e1 + s * e2
    y = -s * e1 + c * e2
    B0 = outer(x, x, fld) + outer(y, y, fld).scale(-1.0 / 3.0)
    from .matkernel import frame_to_matrix
    Vl = frame_to_matrix(res.left, fld)
    Ur = frame_to_matrix(res.right, fld)
    return Vl @ B0 @ Ur.adjoint()


# ---- successors of the second-to-last chain element ---------------------------


def successor_bucket_history(chain: Chain, sample_count: int, seed: int) -> list[int]:
    """Bucket count after each synthesized successor draw.

    Successors of the second-to-last element have the form (on the chain's
    simultaneous frame) identity on the flag plus a unimodular mu in the last
    direction; distinct mu give distinct neighborhoods, so buckets are keyed
    by mu and confirmed with outgoing_equal on key collisions.
    """
    elems = chain.elements
    n = elems[0].n
    if len(elems) != n:
        raise NotMaximalChain(f"length {len(elems)}, expected {n}")
    if n < 2:
        raise ChainTooShort("successor analysis needs n >= 2")
    alg, fld = elems[0].algebra, elems[0].field
    normalized, U, V = _chain_frames(chain)
    base = KMatrix.zeros(alg, fld, n)
    for l in range(n - 1):
        base = base + outer(V[l], U[l], fld)
    prev = elems[n - 2]
    rng = np.random.default_rng(seed)
    buckets: list[tuple[np.ndarray, KMatrix]] = []
    history: list[int] = []
    for t in range(sample_count):
        mu = random_unimodular(alg, rng)
        X = base + outer(vec_scale_right(V[n - 1], mu), U[n - 1], fld)
        if not outgoing_subset(prev, X) or outgoing_subset(X, prev):
            raise NotMaximalChain("synthesized successor failed the strict-inclusion check")
        placed = False
        for key, rep in buckets:
            if np.max(np.abs(key - mu)) < 1e-6:
                if outgoing_equal(X, rep):
                    placed = True
                    break
        if not placed:
            buckets.append((mu, X))
        history.append(len(buckets))
    # spot-check: distinct keys really are distinct classes
    check = min(len(buckets) - 1, 5)
    for i in range(check):
        if outgoing_equal(buckets[i][1], buckets[i + 1][1]):
            raise NotMaximalChain("distinct successor keys collapsed to one class")
    return history


def successor_buckets(chain: Chain, sample_count: int, seed: int) -> int:
    """Number of distinct outgoing neighborhoods among sampled successors."""
    return successor_bucket_history(chain, sample_count, seed)[-1]


# ---- digraph sampling -----------------------------------------------------------


@dataclass
class DigraphSample:
    """Sampled orthogonality digraph; edge (i, j) means vertex i -> vertex j."""

    algebra: str
    field: str
    n: int
    vertices: list
    labels: list
    edges: set
    seed: int
    include_zero: bool = False
    projective: bool = False

    @property
    def zero_index(self) -> int | None:
        for i, v in enumerate(self.vertices):
            if v.is_zero():
                return i
        return None


def _as_triple(algebra) -> tuple[str, str, int]:
    if isinstance(algebra, tuple):
        return algebra
    blocks = getattr(algebra, "blocks", None)
    if blocks is not None:
        if len(blocks) != 1:
            raise NotSimple("digraph sampling is defined for simple algebras")
        return blocks[0][0], algebra.base_field, blocks[0][1]
    raise TypeError("expected an algebra spec or a (K, F, n) triple")


def build_digraph(vertices: list, labels=None, seed: int = 0,
                  include_zero: bool = False, projective: bool = False) -> DigraphSample:
    """Compute all ordered orthogonality edges among the given vertices."""
    first = vertices[0]
    alg, fld, n = first.algebra, first.field, first.n
    if labels is None:
        labels = [f"v{i}" for i in range(len(vertices))]
    normalized = []
    frames = []
    for v in vertices:
        if v.is_zero():
            normalized.append(None)
            frames.append(None)
        else:
            vn = v.scale(1.0 / operator_norm(v))
            normalized.append(vn)
            frames.append(norm_attaining_space(vn).frame)
    edges = set()
    m = len(vertices)
    for i in range(m):
        for j in range(m):
            if normalized[i] is None or normalized[j] is None:
                edges.add((i, j))
                continue
            verdict = _bj_core(normalized[i], normalized[j], frames[i],
                               TOL_ORTH, want_witness=False)
            if verdict.orthogonal:
                edges.add((i, j))
    return DigraphSample(alg, fld, n, list(vertices), list(labels), edges,
                         seed, include_zero, projective)


def sample_digraph(algebra, count: int, seed: int,
                   include_zero: bool = False, projective: bool = False) -> DigraphSample:
    """Random vertices (Gaussian components) plus every orthogonality edge.

    Projective mode normalizes each vertex to norm one and rejects draws that
    are base-field multiples of an earlier draw.  Deterministic under seed.
    """
    if count < 1:
        raise ValueError("count must be >= 1")
    alg, fld, n = _as_triple(algebra)
    rng = np.random.default_rng(seed)
    vertices: list[KMatrix] = []
    while len(vertices) < count:
        A = random_kmatrix(alg, fld, n, rng)
        if A.is_zero():
            continue
        if projective:
            A = A.scale(1.0 / operator_norm(A))
            if any(_field_collinear(A, W) for W in vertices):
                continue
        vertices.append(A)
    if include_zero:
        vertices.append(KMatrix.zeros(alg, fld, n))
    labels = [f"v{i}" for i in range(len(vertices))]
    out = build_digraph(vertices, labels, seed, include_zero, projective)
    return out


def _field_collinear(A: KMatrix, B: KMatrix) -> bool:
    a = A.comps.reshape(-1)
    b = B.comps.reshape(-1)
    na, nb = np.linalg.norm(a), np.linalg.norm(b)
    if na == 0 or nb == 0:
        return False
    if A.field == "R":
        return abs(abs(a @ b) - na * nb) < 1e-10 * na * nb
    ac = A.to_complex().reshape(-1)
    bc = B.to_complex().reshape(-1)
    return abs(abs(np.vdot(ac, bc)) - na * nb) < 1e-10 * na * nb


def reduced_classes(sample: DigraphSample) -> list[list[int]]:
    """Partition of vertex indices by equality of both restricted neighborhoods.

    This is the sample-relative coarsening of the relation 'same incoming and
    same outgoing neighborhood'; base-field multiples always land together.
    """
    m = len(sample.vertices)
    outs = [set() for _ in range(m)]
    ins = [set() for _ in range(m)]
    for (i, j) in sample.edges:
        outs[i].add(j)
        ins[j].add(i)
    groups: dict = {}
    for i in range(m):
        key = (frozenset(outs[i]), frozenset(ins[i]))
        groups.setdefault(key, []).append(i)
    return sorted(groups.values(), key=lambda g: g[0])


# ---- graphological dimension (heuristic) ----------------------------------------


#: total brute-force defect below which a common member counts as found
_MEMBER_TOL = 5e-7

#: defect above which the search declares that no common member exists
_NO_MEMBER_TOL = 1e-4


def _support_rows(x: KMatrix) -> list[np.ndarray]:
    """Real-linear functional rows cutting out x^perp (top singular direction).

    With u the top right-singular vector and w = xu normalized, the value of
    B on the functional is <Bu, w>_F; the rows are its real components as
    linear forms on the flattened components of B.
    """
    res = svd(x.scale(1.0 / operator_norm(x)))
    u = res.right[0]
    w = vec_matvec(x, u)
    w = w / vec_norm(w)
    from .matkernel import _MUL, vec_conj
    mul = _MUL[x.algebra]
    # (e_b u_j)_e, then conj(w_i) * that, component c
    S = np.einsum("bfe,jf->jbe", mul, u)
    full = np.einsum("ia,jbe,aec->ijbc", vec_conj(w), S, mul)
    n_rows = 2 if x.field == "C" else 1
    return [full[..., comp].reshape(-1) for comp in range(n_rows)]


def _pair_defect(x: KMatrix, B: KMatrix) -> float:
    """max(0, ||x|| - min_lambda ||x + lambda B||) for a norm-one x."""
    res = bj_min_norm(x, B, xtol=1e-7)
    return max(0.0, 1.0 - res.min_value)


def _total_defect(omega: list[KMatrix], B: KMatrix) -> float:
    return sum(_pair_defect(x, B) for x in omega)


def _common_member(omega: list[KMatrix], alg: str, fld: str, n: int, rng,
                   restarts: int = 3):
    """Unit B orthogonal-from every element of omega, or None."""
    dim_real = n * n * DIM_K[alg]
    if not omega:
        B = random_kmatrix(alg, fld, n, rng)
        return B.scale(1.0 / operator_norm(B))
    tol = _MEMBER_TOL * max(1, len(omega))
    starts = []
    rows = []
    for x in omega:
        rows.extend(_support_rows(x))
    M = np.stack(rows)
    _, svals, Vt = np.linalg.svd(M, full_matrices=True)
    rank = int(np.sum(svals > 1e-8 * max(1.0, float(svals[0]))))
    basis = Vt[rank:]
    if basis.shape[0] > 0:
        vec = rng.standard_normal(basis.shape[0]) @ basis
        if np.linalg.norm(vec) > 1e-12:
            starts.append(vec / np.linalg.norm(vec))
    for _ in range(restarts):
        starts.append(rng.standard_normal(dim_real))

    def defect_of(vec: np.ndarray) -> float:
        B = KMatrix(alg, fld, n, vec.reshape(n, n, DIM_K[alg]))
        nb = operator_norm(B)
        if nb == 0.0:
            return float("inf")
        return _total_defect(omega, B.scale(1.0 / nb))

    best_vec, best_val = None, float("inf")
    for s in starts:
        v0 = s / np.linalg.norm(s)
        d0 = defect_of(v0)
        if d0 <= tol:
            best_vec, best_val = v0, d0
            break
        v1, d1 = pattern_search(defect_of, v0, step0=0.3, step_tol=2e-3,
                                max_iter=60 * dim_real)
        if d1 < best_val:
            best_vec, best_val = v1, d1
        if best_val <= tol:
            break
    if best_val <= tol:
        B = KMatrix(alg, fld, n, best_vec.reshape(n, n, DIM_K[alg]))
        return B.scale(1.0 / operator_norm(B))
    return None


def graph_dimension_search(algebra, pool: int, trials: int, seed: int):
    """Heuristic search for the graphological dimension.

    Greedily grows a set Omega of sampled elements until randomized
    minimization of the orthogonality defect sum_x max(0, ||x|| -
    min_lambda ||x + lambda B||) finds no nonzero common member of the
    outgoing neighborhoods, then tries to refute size |Omega| - 1 on random
    subsets (each must still admit a common member).  Returns
    (candidate_size, refuted_smaller).
    """
    alg, fld, n = _as_triple(algebra)
    rng = np.random.default_rng(seed)
    pool_elems = []
    for _ in range(pool):
        A = random_kmatrix(alg, fld, n, rng)
        pool_elems.append(A.scale(1.0 / operator_norm(A)))

    omega: list[KMatrix] = []
    used = set()
    while True:
        B = _common_member(omega, alg, fld, n, rng)
        if B is None:
            break
        best_i, best_d = None, -1.0
        for i, x in enumerate(pool_elems):
            if i in used:
                continue
            dxy = _pair_defect(x, B)
            if dxy > best_d:
                best_i, best_d = i, dxy
        if best_i is None or best_d <= _MEMBER_TOL:
            raise RuntimeError("pool too small: a common member survives the whole pool")
        used.add(best_i)
        omega.append(pool_elems[best_i])
    candidate = len(omega)

    refuted = True
    if candidate > 0:
        smaller = candidate - 1
        if smaller > 0:
            idx = np.arange(len(pool_elems))
            for _ in range(trials):
                subset = [pool_elems[i] for i in rng.choice(idx, size=smaller, replace=False)]
                if _common_member(subset, alg, fld, n, rng) is None:
                    refuted = False
                    break
    return candidate, refuted
