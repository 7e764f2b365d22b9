"""Scalar, vector, and matrix arithmetic over R, C, and the quaternions.

Matrices over a division algebra K in {R, C, H} act by left multiplication
on K^n viewed as a *right* K-module, so frames carry right-scalar
coefficients.  Everything spectral funnels through one trusted kernel:
represent the matrix as a real one (1x1, 2x2, or 4x4 block per entry),
run a dense symmetric eigensolver on it, and lift eigenspaces back to K^n.
The block for a complex entry a+bi is [[a, b], [-b, a]]; a quaternion
a+bi+cj+dk first becomes the 2x2 complex matrix [[a+bi, c+di], [-c+di, a-bi]]
and each complex entry is then expanded by the same 2x2 real pattern.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import NonSymmetricInput, ZeroMatrix, FieldMismatch

__all__ = [
    "DIVISION_ALGEBRAS", "BASE_FIELDS", "DIM_K",
    "CLUSTER_TOL", "GS_DROP_TOL", "SYM_TOL",
    "KScalar", "KMatrix", "KSubspace", "SVDResult",
    "adjoint", "real_embed", "real_coords", "real_lift",
    "sym_eigen", "svd", "operator_norm", "gram_schmidt_k",
    "vec_norm", "vec_inner", "vec_conj", "vec_matvec", "vec_scale_right",
    "outer", "field_inner", "frame_to_matrix", "complete_frame",
    "standard_frame", "norm_carrier",
]

DIVISION_ALGEBRAS = ("R", "C", "H")
BASE_FIELDS = ("R", "C")

#: real dimension of each division algebra
DIM_K = {"R": 1, "C": 2, "H": 4}

_ALG_BY_DIM = {1: "R", 2: "C", 4: "H"}

#: relative gap below which two singular values count as equal
CLUSTER_TOL = 1e-8

#: residual norm below which a vector is dropped during Gram-Schmidt
GS_DROP_TOL = 1e-10

#: relative tolerance for accepting a matrix as symmetric
SYM_TOL = 1e-12


def _build_mul_tables():
    mul_r = np.ones((1, 1, 1))
    # basis (1, i)
    mul_c = np.zeros((2, 2, 2))
    for (a, b), (c, s) in {
        (0, 0): (0, 1), (0, 1): (1, 1), (1, 0): (1, 1), (1, 1): (0, -1),
    }.items():
        mul_c[a, b, c] = float(s)
    # basis (1, i, j, k) with ij = k, jk = i, ki = j
    mul_h = np.zeros((4, 4, 4))
    for (a, b), (c, s) in {
        (0, 0): (0, 1), (0, 1): (1, 1), (0, 2): (2, 1), (0, 3): (3, 1),
        (1, 0): (1, 1), (1, 1): (0, -1), (1, 2): (3, 1), (1, 3): (2, -1),
        (2, 0): (2, 1), (2, 1): (3, -1), (2, 2): (0, -1), (2, 3): (1, 1),
        (3, 0): (3, 1), (3, 1): (2, 1), (3, 2): (1, -1), (3, 3): (0, -1),
    }.items():
        mul_h[a, b, c] = float(s)
    return {"R": mul_r, "C": mul_c, "H": mul_h}


_MUL = _build_mul_tables()

_CONJ = {
    "R": np.array([1.0]),
    "C": np.array([1.0, -1.0]),
    "H": np.array([1.0, -1.0, -1.0, -1.0]),
}

# real blocks of the basis elements, consistent with the entry patterns above
_RHO = {
    "R": np.ones((1, 1, 1)),
    "C": np.array([
        [[1.0, 0.0], [0.0, 1.0]],
        [[0.0, 1.0], [-1.0, 0.0]],
    ]),
    "H": np.array([
        [[1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 1, 0], [0, 0, 0, 1]],
        [[0, 1, 0, 0], [-1, 0, 0, 0], [0, 0, 0, -1], [0, 0, 1, 0]],
        [[0, 0, 1, 0], [0, 0, 0, 1], [-1, 0, 0, 0], [0, -1, 0, 0]],
        [[0, 0, 0, 1], [0, 0, -1, 0], [0, 1, 0, 0], [-1, 0, 0, 0]],
    ], dtype=float),
}


def _alg_of(comps: np.ndarray) -> str:
    return _ALG_BY_DIM[comps.shape[-1]]


class KScalar:
    """Element of R, C, or H stored as 1, 2, or 4 real components."""

    __slots__ = ("algebra", "comps")

    def __init__(self, algebra: str, comps) -> None:
        if algebra not in DIVISION_ALGEBRAS:
            raise ValueError(f"unknown division algebra {algebra!r}")
        comps = np.asarray(comps, dtype=float)
        if comps.shape != (DIM_K[algebra],):
            raise ValueError(f"expected {DIM_K[algebra]} components, got {comps.shape}")
        self.algebra = algebra
        self.comps = comps

    @classmethod
    def unit(cls, algebra: str, index: int = 0) -> "KScalar":
        comps = np.zeros(DIM_K[algebra])
        comps[index] = 1.0
        return cls(algebra, comps)

    def conj(self) -> "KScalar":
        return KScalar(self.algebra, self.comps * _CONJ[self.algebra])

    @property
    def real(self) -> float:
        return float(self.comps[0])

    def __mul__(self, other):
        if isinstance(other, KScalar):
            if other.algebra != self.algebra:
                raise ValueError("division algebras differ")
            out = np.einsum("a,b,abc->c", self.comps, other.comps, _MUL[self.algebra])
            return KScalar(self.algebra, out)
        return KScalar(self.algebra, self.comps * float(other))

    def __rmul__(self, other):
        return KScalar(self.algebra, self.comps * float(other))

    def __add__(self, other: "KScalar") -> "KScalar":
        return KScalar(self.algebra, self.comps + other.comps)

    def __sub__(self, other: "KScalar") -> "KScalar":
        return KScalar(self.algebra, self.comps - other.comps)

    def __neg__(self) -> "KScalar":
        return KScalar(self.algebra, -self.comps)

    def __abs__(self) -> float:
        return float(np.sqrt(self.comps @ self.comps))

    def allclose(self, other: "KScalar", atol: float = 1e-12) -> bool:
        return self.algebra == other.algebra and bool(
            np.allclose(self.comps, other.comps, atol=atol)
        )

    def __repr__(self) -> str:
        return f"KScalar({self.algebra}, {self.comps.tolist()})"


class KMatrix:
    """Dense n-by-n matrix over K with a declared base field F.

    The base field may be C only when K = C; everything else lives over R.
    Entries are stored row-major as an (n, n, d) array of real components.
    """

    __slots__ = ("algebra", "field", "n", "comps")

    def __init__(self, algebra: str, field: str, n: int, comps) -> None:
        if algebra not in DIVISION_ALGEBRAS:
            raise ValueError(f"unknown division algebra {algebra!r}")
        if field not in BASE_FIELDS:
            raise ValueError(f"unknown base field {field!r}")
        if field == "C" and algebra != "C":
            raise ValueError("base field C requires division algebra C")
        comps = np.asarray(comps, dtype=float)
        if comps.shape != (n, n, DIM_K[algebra]):
            raise ValueError(f"expected shape {(n, n, DIM_K[algebra])}, got {comps.shape}")
        self.algebra = algebra
        self.field = field
        self.n = n
        self.comps = comps

    # ---- constructors -------------------------------------------------

    @classmethod
    def zeros(cls, algebra: str, field: str, n: int) -> "KMatrix":
        return cls(algebra, field, n, np.zeros((n, n, DIM_K[algebra])))

    @classmethod
    def identity(cls, algebra: str, field: str, n: int) -> "KMatrix":
        comps = np.zeros((n, n, DIM_K[algebra]))
        comps[np.arange(n), np.arange(n), 0] = 1.0
        return cls(algebra, field, n, comps)

    @classmethod
    def from_real(cls, arr, algebra: str = "R", field: str = "R") -> "KMatrix":
        arr = np.asarray(arr, dtype=float)
        n = arr.shape[0]
        comps = np.zeros((n, n, DIM_K[algebra]))
        comps[:, :, 0] = arr
        return cls(algebra, field, n, comps)

    @classmethod
    def from_complex(cls, arr, field: str = "R") -> "KMatrix":
        arr = np.asarray(arr, dtype=complex)
        n = arr.shape[0]
        comps = np.stack([arr.real, arr.imag], axis=-1)
        return cls("C", field, n, comps)

    @classmethod
    def diag(cls, values, algebra: str = "R", field: str = "R") -> "KMatrix":
        values = np.asarray(values, dtype=float)
        n = values.shape[0]
        comps = np.zeros((n, n, DIM_K[algebra]))
        comps[np.arange(n), np.arange(n), 0] = values
        return cls(algebra, field, n, comps)

    # ---- basic structure ----------------------------------------------

    def copy(self) -> "KMatrix":
        return KMatrix(self.algebra, self.field, self.n, self.comps.copy())

    def entry(self, i: int, j: int) -> KScalar:
        return KScalar(self.algebra, self.comps[i, j].copy())

    def is_zero(self) -> bool:
        return not np.any(self.comps)

    def same_algebra(self, other: "KMatrix") -> bool:
        return (self.algebra, self.field, self.n) == (other.algebra, other.field, other.n)

    def to_complex(self) -> np.ndarray:
        """Entries as a complex array.  Defined for K in {R, C}."""
        if self.algebra == "R":
            return self.comps[:, :, 0].astype(complex)
        if self.algebra == "C":
            return self.comps[:, :, 0] + 1j * self.comps[:, :, 1]
        raise ValueError("quaternion matrix has no single complex carrier")

    def frob(self) -> float:
        return float(np.sqrt(np.sum(self.comps ** 2)))

    def allclose(self, other: "KMatrix", atol: float = 1e-9) -> bool:
        return self.same_algebra(other) and bool(
            np.allclose(self.comps, other.comps, atol=atol)
        )

    def is_diagonal(self, atol: float = 1e-9) -> bool:
        off = self.comps.copy()
        off[np.arange(self.n), np.arange(self.n), :] = 0.0
        return bool(np.max(np.abs(off), initial=0.0) <= atol)

    # ---- algebra -------------------------------------------------------

    def __add__(self, other: "KMatrix") -> "KMatrix":
        self._require_same(other)
        return KMatrix(self.algebra, self.field, self.n, self.comps + other.comps)

    def __sub__(self, other: "KMatrix") -> "KMatrix":
        self._require_same(other)
        return KMatrix(self.algebra, self.field, self.n, self.comps - other.comps)

    def __neg__(self) -> "KMatrix":
        return KMatrix(self.algebra, self.field, self.n, -self.comps)

    def __matmul__(self, other: "KMatrix") -> "KMatrix":
        self._require_same(other)
        comps = np.einsum("ika,kjb,abc->ijc", self.comps, other.comps, _MUL[self.algebra])
        return KMatrix(self.algebra, self.field, self.n, comps)

    def scale(self, lam) -> "KMatrix":
        """Multiply by a base-field scalar (float, or complex when F = C)."""
        lam = complex(lam)
        if lam.imag != 0.0:
            if self.field != "C":
                raise FieldMismatch("complex scalar on a real-base-field matrix")
            x, y = self.comps[:, :, 0], self.comps[:, :, 1]
            comps = np.stack(
                [lam.real * x - lam.imag * y, lam.real * y + lam.imag * x], axis=-1
            )
            return KMatrix(self.algebra, self.field, self.n, comps)
        return KMatrix(self.algebra, self.field, self.n, self.comps * lam.real)

    def adjoint(self) -> "KMatrix":
        comps = self.comps.transpose(1, 0, 2) * _CONJ[self.algebra]
        return KMatrix(self.algebra, self.field, self.n, comps)

    def _require_same(self, other: "KMatrix") -> None:
        if not self.same_algebra(other):
            raise ValueError("matrices live in different algebras")

    def __repr__(self) -> str:
        return f"KMatrix({self.algebra}/{self.field}, n={self.n})"


def adjoint(A: KMatrix) -> KMatrix:
    """Conjugate transpose."""
    return A.adjoint()


# ---- real embedding and the coordinate identification ------------------


def _embed_array(A: KMatrix) -> np.ndarray:
    d = DIM_K[A.algebra]
    if d == 1:
        return A.comps[:, :, 0].copy()
    blocks = np.einsum("ijc,cpq->ipjq", A.comps, _RHO[A.algebra])
    return blocks.reshape(A.n * d, A.n * d)


def real_embed(A: KMatrix) -> KMatrix:
    """The real matrix representation, as a KMatrix over R.

    A *-homomorphism: products map to products and adjoints to transposes,
    and the operator norm is preserved.
    """
    return KMatrix.from_real(_embed_array(A))


def real_coords(x: np.ndarray) -> np.ndarray:
    """Coordinates of x in R^{dn} compatible with the real embedding.

    Componentwise these are the components of the conjugate entries; with
    this choice embed(A) @ real_coords(x) == real_coords(A x) and the real
    dot product equals Re(x* y).
    """
    alg = _alg_of(x)
    return (x * _CONJ[alg]).reshape(-1)


def real_lift(w: np.ndarray, algebra: str) -> np.ndarray:
    """Inverse of :func:`real_coords`."""
    d = DIM_K[algebra]
    return w.reshape(-1, d) * _CONJ[algebra]


# ---- vector helpers (K^n columns as (n, d) arrays) ----------------------


def vec_conj(x: np.ndarray) -> np.ndarray:
    return x * _CONJ[_alg_of(x)]


def vec_norm(x: np.ndarray) -> float:
    return float(np.sqrt(np.sum(x * x)))


def vec_inner(u: np.ndarray, v: np.ndarray) -> np.ndarray:
    """K-valued inner product u* v, returned as components."""
    alg = _alg_of(u)
    return np.einsum("na,nb,abc->c", vec_conj(u), v, _MUL[alg])


def vec_matvec(A: KMatrix, x: np.ndarray) -> np.ndarray:
    return np.einsum("ika,kb,abc->ic", A.comps, x, _MUL[A.algebra])


def vec_scale_right(x: np.ndarray, q: np.ndarray) -> np.ndarray:
    """Right scalar action x . q, the K-linear one on a right module."""
    alg = _alg_of(x)
    return np.einsum("na,b,abc->nc", x, q, _MUL[alg])


def outer(u: np.ndarray, v: np.ndarray, field: str = "R") -> KMatrix:
    """Rank-one matrix u v*."""
    alg = _alg_of(u)
    comps = np.einsum("ia,jb,abc->ijc", u, vec_conj(v), _MUL[alg])
    return KMatrix(alg, field, u.shape[0], comps)


def field_inner(x: np.ndarray, y: np.ndarray, field: str):
    """Base-field inner product <x, y>_F: Re(y* x) over R, y* x over C."""
    if field == "R":
        return float(np.sum(x * y))
    if _alg_of(x) != "C":
        raise FieldMismatch("complex inner product needs K = C")
    xc = x[:, 0] + 1j * x[:, 1]
    yc = y[:, 0] + 1j * y[:, 1]
    return complex(np.vdot(yc, xc))


def standard_frame(algebra: str, n: int) -> np.ndarray:
    frame = np.zeros((n, n, DIM_K[algebra]))
    frame[np.arange(n), np.arange(n), 0] = 1.0
    return frame


def frame_to_matrix(frame: np.ndarray, field: str = "R") -> KMatrix:
    """Matrix whose j-th column is the j-th frame vector."""
    comps = np.ascontiguousarray(frame.transpose(1, 0, 2))
    return KMatrix(_alg_of(frame), field, frame.shape[1], comps)


# ---- the symmetric kernel ------------------------------------------------


def sym_eigen(S: np.ndarray):
    """Eigendecomposition of a real symmetric matrix.

    Returns eigenvalues in descending order and the matching orthonormal
    eigenvector columns.  Raises NonSymmetricInput when the symmetry defect
    exceeds the relative tolerance.
    """
    S = np.asarray(S, dtype=float)
    if S.ndim != 2 or S.shape[0] != S.shape[1]:
        raise NonSymmetricInput("expected a square matrix")
    scale = float(np.linalg.norm(S))
    defect = float(np.linalg.norm(S - S.T))
    if defect > SYM_TOL * max(scale, 1e-300):
        raise NonSymmetricInput(f"symmetry defect {defect:.3e} exceeds tolerance")
    evals, evecs = np.linalg.eigh(0.5 * (S + S.T))
    return evals[::-1].copy(), np.ascontiguousarray(evecs[:, ::-1])


def _sigma_max(M: np.ndarray) -> float:
    """Largest singular value of a real or complex matrix."""
    H = M.conj().T @ M
    w = np.linalg.eigvalsh(H)
    return float(np.sqrt(max(w[-1], 0.0)))


def norm_carrier(A: KMatrix) -> np.ndarray:
    """An ordinary array with the same operator norm as A.

    K = R gives the entries, K = C the complex entries, K = H the real
    embedding.  Base-field-linear combinations of carriers stay carriers.
    """
    if A.algebra == "R":
        return A.comps[:, :, 0].copy()
    if A.algebra == "C":
        return A.to_complex()
    return _embed_array(A)


def operator_norm(A: KMatrix) -> float:
    """Operator norm induced by the action on K^n, i.e. the top singular value."""
    if A.is_zero():
        return 0.0
    return _sigma_max(_embed_array(A))


# ---- frames, Gram-Schmidt, SVD -------------------------------------------


@dataclass
class KSubspace:
    """Right-K-subspace of K^n carried by a K-orthonormal column frame."""

    algebra: str
    field: str
    ambient_n: int
    frame: np.ndarray  # (k, n, d)

    @property
    def dim(self) -> int:
        return self.frame.shape[0]

    def projector(self) -> KMatrix:
        P = KMatrix.zeros(self.algebra, self.field, self.ambient_n)
        for u in self.frame:
            P = P + outer(u, u, self.field)
        return P

    def gram_defect(self) -> float:
        k = self.dim
        worst = 0.0
        for i in range(k):
            for j in range(k):
                g = vec_inner(self.frame[i], self.frame[j])
                g[0] -= 1.0 if i == j else 0.0
                worst = max(worst, float(np.max(np.abs(g))))
        return worst


def gram_schmidt_k(vectors, algebra: str, field: str = "R",
                   ambient_n: int | None = None) -> KSubspace:
    """K-orthonormalize a list of K^n columns with right coefficients.

    Vectors whose residual after projection falls below GS_DROP_TOL are
    dropped, so the frame size reveals the right-K rank of the input.
    """
    vectors = [np.asarray(v, dtype=float) for v in vectors]
    if ambient_n is None:
        if not vectors:
            raise ValueError("need ambient_n for an empty input")
        ambient_n = vectors[0].shape[0]
    frame: list[np.ndarray] = []
    for x in vectors:
        y = x.copy()
        for _ in range(2):  # re-orthogonalize once for stability
            for u in frame:
                y = y - vec_scale_right(u, vec_inner(u, y))
        r = vec_norm(y)
        if r >= GS_DROP_TOL:
            frame.append(y / r)
    stacked = np.stack(frame) if frame else np.zeros((0, ambient_n, DIM_K[algebra]))
    return KSubspace(algebra, field, ambient_n, stacked)


def complete_frame(frame: np.ndarray, algebra: str, field: str, n: int) -> np.ndarray:
    """Extend a K-orthonormal frame to a full basis of K^n.

    Completion candidates are the standard basis vectors in index order, so
    the result is deterministic.
    """
    vecs = list(frame)
    for i in range(n):
        e = np.zeros((n, DIM_K[algebra]))
        e[i, 0] = 1.0
        vecs.append(e)
    sub = gram_schmidt_k(vecs, algebra, field, ambient_n=n)
    if sub.dim != n:
        raise RuntimeError("frame completion failed to reach full dimension")
    return sub.frame


@dataclass
class SVDResult:
    """Singular value decomposition A = sum_i sigma_i v_i u_i*.

    ``left`` stacks the v_i and ``right`` the u_i, both K-orthonormal.
    Singular values are non-increasing; values inside one cluster (relative
    gap below CLUSTER_TOL) are averaged so equality within a cluster is exact.
    """

    sigma: np.ndarray
    left: np.ndarray   # (n, n, d)
    right: np.ndarray  # (n, n, d)
    algebra: str
    field: str
    n: int

    def reconstruct(self) -> KMatrix:
        M = KMatrix.zeros(self.algebra, self.field, self.n)
        for s, v, u in zip(self.sigma, self.left, self.right):
            if s != 0.0:
                M = M + outer(v, u, self.field).scale(float(s))
        return M

    def top_cluster_dim(self) -> int:
        if self.sigma[0] == 0.0:
            return self.n
        return int(np.sum(self.sigma >= self.sigma[0] * (1.0 - CLUSTER_TOL)))


def svd(A: KMatrix) -> SVDResult:
    """K-valued singular value decomposition.

    Eigenvectors of embed(A)^T embed(A) are grouped into clusters by
    relative gap, every cluster's real eigenspace is lifted back to K^n
    (the eigenspace of A*A is closed under the right scalar action, so the
    lift is safe) and K-orthonormalized.  Left vectors are A u_i / sigma_i,
    completed deterministically on the kernel.
    """
    n, d = A.n, DIM_K[A.algebra]
    if A.is_zero():
        basis = standard_frame(A.algebra, n)
        return SVDResult(np.zeros(n), basis, basis.copy(), A.algebra, A.field, n)
    M = _embed_array(A)
    G = M.T @ M
    evals, evecs = sym_eigen(0.5 * (G + G.T))
    # cluster on eigenvalues of A*A: near-zero noise there is O(eps) relative,
    # while the corresponding singular values smear up to sqrt(eps)
    gap_tol = CLUSTER_TOL * max(float(evals[0]), 1e-300)

    right_list: list[np.ndarray] = []
    sigma_list: list[float] = []
    start = 0
    total = n * d
    for stop in range(1, total + 1):
        if stop < total and evals[stop - 1] - evals[stop] <= gap_tol:
            continue
        svalue = float(np.sqrt(max(np.mean(evals[start:stop]), 0.0)))
        lifted = [real_lift(evecs[:, t], A.algebra) for t in range(start, stop)]
        sub = gram_schmidt_k(lifted, A.algebra, A.field, ambient_n=n)
        for vec in sub.frame:
            right_list.append(vec)
            sigma_list.append(svalue)
        start = stop
    if len(right_list) != n:
        raise RuntimeError("eigenspace lift lost the K-module structure")

    right = np.stack(right_list)
    sigma = np.asarray(sigma_list)
    left_vecs = []
    for i in range(n):
        if sigma[i] > sigma[0] * 1e-12:
            left_vecs.append(vec_matvec(A, right[i]) / sigma[i])
    sub = gram_schmidt_k(left_vecs, A.algebra, A.field, ambient_n=n)
    left = complete_frame(sub.frame, A.algebra, A.field, n)
    return SVDResult(sigma, left, right, A.algebra, A.field, A.n)
