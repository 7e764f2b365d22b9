"""Birkhoff-James orthogonality in M_n(K) via two independent routes.

The exact route uses the classical support-functional criterion: A is BJ
orthogonal to B iff some unit vector u on which A attains its norm has
<Au, Bu>_F = 0.  Ranging u over the norm-attaining subspace turns this into
a zero-inclusion test for the numerical range of a small compression.

The brute-force route minimizes lambda |-> ||A + lambda B|| straight from
the definition and serves as the independent oracle for the exact route.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import AlgebraMismatch, FieldMismatch, ZeroDirection, ZeroMatrix
from .matkernel import (
    CLUSTER_TOL, DIM_K, KMatrix, KSubspace, _embed_array, _sigma_max,
    field_inner, gram_schmidt_k, norm_carrier, operator_norm, real_lift,
    svd, vec_conj, vec_inner, vec_matvec, vec_norm, vec_scale_right, _MUL,
)
from .optimize import coordinate_min_2d, golden_max, golden_min

__all__ = [
    "TOL_ORTH", "THETA_GRID",
    "OrthogonalityVerdict", "MinNormResult", "SupportFunctional",
    "norm_attaining_space", "evaluate_functional",
    "numerical_range_contains_zero", "is_bj_orthogonal",
    "bj_min_norm", "is_bj_orthogonal_bruteforce",
]

#: zero counts as inside the numerical range up to this absolute tolerance
#: (verdicts are computed on norm-one representatives, so it is scale-free)
TOL_ORTH = 1e-7

#: angular resolution of the complex numerical-range boundary scan
THETA_GRID = 720

#: bracket width at which the real golden-section stops
MIN_NORM_XTOL = 1e-9

#: combined coordinate movement at which the complex alternation stops
MIN_NORM_STEP_TOL = 1e-8

#: brute-force orthogonality slack on the minimum value
BRUTE_TOL = 1e-6


@dataclass
class OrthogonalityVerdict:
    """Outcome of an exact orthogonality test.

    ``margin`` is TOL_ORTH minus the zero-inclusion decision quantity, so
    positive means comfortably orthogonal and negative comfortably not.
    ``witness``, when present, is a unit norm-attaining vector u of A with
    <Au, Bu>_F below tolerance (for the norm-one representatives).
    """

    orthogonal: bool
    witness: np.ndarray | None
    margin: float


@dataclass
class MinNormResult:
    lambda_star: complex | float
    min_value: float
    iterations: int


@dataclass
class SupportFunctional:
    """The functional B |-> <Bu, v>_F; its norm is ||u|| ||v||."""

    u: np.ndarray
    v: np.ndarray
    base_field: str


def evaluate_functional(f: SupportFunctional, B: KMatrix):
    if f.base_field != B.field:
        raise FieldMismatch(f"functional over {f.base_field}, matrix over {B.field}")
    return field_inner(vec_matvec(B, f.u), f.v, f.base_field)


def norm_attaining_space(A: KMatrix) -> KSubspace:
    """Unit-sphere directions where A attains its norm, as a K-subspace.

    Equals the kernel of A*A - ||A||^2 I; computed as the span of the right
    singular vectors in the top cluster.
    """
    if A.is_zero():
        raise ZeroMatrix("the zero matrix attains its norm everywhere")
    res = svd(A)
    k = res.top_cluster_dim()
    return KSubspace(A.algebra, A.field, A.n, res.right[:k].copy())


# ---- numerical range machinery -------------------------------------------


def _herm(C: np.ndarray) -> np.ndarray:
    return 0.5 * (C + C.conj().T)


def _zero_in_range_real(C: KMatrix, tol: float, want_witness: bool):
    """Zero-inclusion for the real numerical range {Re(x* C x) : ||x|| = 1}.

    Works over any K: the range is the interval of Rayleigh quotients of the
    symmetrized real embedding.  Returns (decision, witness_x) where the
    decision quantity is <= tol exactly when 0 is inside (inclusively).
    """
    S = _embed_array(C)
    S = 0.5 * (S + S.T)
    w, V = np.linalg.eigh(S)
    lam_min, lam_max = float(w[0]), float(w[-1])
    decision = max(lam_min, -lam_max)
    x = None
    if want_witness and decision <= tol:
        if lam_min >= 0.0:
            wvec = V[:, 0]
        elif lam_max <= 0.0:
            wvec = V[:, -1]
        else:
            c2 = -lam_min / (lam_max - lam_min)
            wvec = math.sqrt(c2) * V[:, -1] + math.sqrt(1.0 - c2) * V[:, 0]
        x = real_lift(wvec, C.algebra)
        x = x / vec_norm(x)
    return decision, x


def _grid_lambda_min(C: np.ndarray, thetas: np.ndarray):
    phases = np.exp(1j * thetas)
    H = 0.5 * (phases[:, None, None] * C[None]
               + np.conj(phases)[:, None, None] * C.conj().T[None])
    w, V = np.linalg.eigh(H)
    return w, V


def _inverse_range_2x2(C: np.ndarray, xa: np.ndarray, xb: np.ndarray,
                       target: complex):
    """Unit x in span{xa, xb} with x* C x = target (target in the range)."""
    y1 = xa / np.linalg.norm(xa)
    y2 = xb - y1 * np.vdot(y1, xb)
    n2 = np.linalg.norm(y2)
    if n2 < 1e-12:
        return None
    y2 = y2 / n2
    c11 = complex(np.vdot(y1, C @ y1))
    c12 = complex(np.vdot(y1, C @ y2))
    c21 = complex(np.vdot(y2, C @ y1))
    c22 = complex(np.vdot(y2, C @ y2))
    scale = 1.0 + abs(c11) + abs(c12) + abs(c21) + abs(c22) + abs(target)

    def value(s, phi):
        cs, sn = math.cos(s), math.sin(s)
        e = complex(math.cos(phi), math.sin(phi))
        return cs * cs * c11 + sn * sn * c22 + cs * sn * (e * c12 + e.conjugate() * c21)

    ss = np.linspace(0.0, math.pi / 2.0, 48)
    ps = np.linspace(0.0, 2.0 * math.pi, 48, endpoint=False)
    best = None
    for s in ss:
        for p in ps:
            r = abs(value(s, p) - target)
            if best is None or r < best[0]:
                best = (r, s, p)
    _, s, p = best
    # damped Newton on the two real equations
    for _ in range(60):
        f = value(s, p) - target
        if abs(f) <= 1e-12 * scale:
            break
        h = 1e-7
        ds = (value(s + h, p) - value(s - h, p)) / (2 * h)
        dp = (value(s, p + h) - value(s, p - h)) / (2 * h)
        J = np.array([[ds.real, dp.real], [ds.imag, dp.imag]])
        rhs = np.array([f.real, f.imag])
        try:
            step = np.linalg.lstsq(J, rhs, rcond=None)[0]
        except np.linalg.LinAlgError:
            return None
        norm_step = float(np.hypot(step[0], step[1]))
        if norm_step > 0.5:
            step = step * (0.5 / norm_step)
        s, p = s - step[0], p - step[1]
    if abs(value(s, p) - target) > 1e-9 * scale:
        return None
    e = complex(math.cos(p), math.sin(p))
    return y1 * math.cos(s) + y2 * (e * math.sin(s))


def _complex_zero_vector(C: np.ndarray, tol: float, theta_star: float,
                         grid_V: np.ndarray) -> np.ndarray | None:
    """Unit x with |x* C x| <= tol, assuming 0 lies in the numerical range."""
    e_star = complex(math.cos(theta_star), math.sin(theta_star))
    w2, V2 = np.linalg.eigh(_herm(e_star * C))
    x = V2[:, 0]
    if abs(np.vdot(x, C @ x)) <= tol:
        return x
    # rotate inside a (near-)degenerate bottom eigenspace to kill the
    # tangential component
    span = w2 - w2[0] <= 1e-9 * max(1.0, float(np.max(np.abs(w2))))
    if int(np.sum(span)) >= 2:
        E = V2[:, span]
        S2 = E.conj().T @ _herm(-1j * e_star * C) @ E
        S2 = _herm(S2)
        w3, V3 = np.linalg.eigh(S2)
        lo, hi = float(w3[0]), float(w3[-1])
        if lo <= tol and hi >= -tol:
            if lo >= 0.0:
                comb = V3[:, 0]
            elif hi <= 0.0:
                comb = V3[:, -1]
            else:
                c2 = -lo / (hi - lo)
                comb = math.sqrt(c2) * V3[:, -1] + math.sqrt(1.0 - c2) * V3[:, 0]
            y = E @ comb
            y = y / np.linalg.norm(y)
            if abs(np.vdot(y, C @ y)) <= tol:
                return y
    # interior case: walk the convex hull of boundary points down to zero
    xs = grid_V[:, :, 0]
    zs = np.einsum("tk,kl,tl->t", xs.conj(), C, xs)
    idx = int(np.argmin(np.abs(zs)))
    if abs(zs[idx]) <= tol:
        return xs[idx]
    z0, x0 = complex(zs[0]), xs[0]
    m = zs.shape[0]
    for t in range(1, m - 1):
        za, zb = complex(zs[t]), complex(zs[t + 1])
        M = np.array([
            [z0.real, za.real, zb.real],
            [z0.imag, za.imag, zb.imag],
            [1.0, 1.0, 1.0],
        ])
        try:
            coef = np.linalg.solve(M, np.array([0.0, 0.0, 1.0]))
        except np.linalg.LinAlgError:
            continue
        if np.min(coef) < -1e-12:
            continue
        b, c = float(coef[1]), float(coef[2])
        if b + c < 1e-14:
            continue
        p = (b * za + c * zb) / (b + c)
        xp = _inverse_range_2x2(C, xs[t], xs[t + 1], p)
        if xp is None:
            continue
        xw = _inverse_range_2x2(C, x0, xp, 0.0)
        if xw is None:
            continue
        if abs(np.vdot(xw, C @ xw)) <= tol:
            return xw
    return None


def _zero_in_range_complex(C: np.ndarray, tol: float, want_witness: bool):
    """Zero-inclusion for the (convex) complex numerical range of C.

    Zero lies in the range iff max over theta of the least eigenvalue of
    Herm(e^{i theta} C) is <= 0; the maximum is located on a THETA_GRID scan
    and polished by golden-section refinement.
    """
    thetas = np.linspace(0.0, 2.0 * math.pi, THETA_GRID, endpoint=False)
    w, V = _grid_lambda_min(C, thetas)
    g = w[:, 0]
    j = int(np.argmax(g))
    h = thetas[1] - thetas[0]

    def gmin(theta: float) -> float:
        e = complex(math.cos(theta), math.sin(theta))
        return float(np.linalg.eigvalsh(_herm(e * C))[0])

    t_star, m_star, _ = golden_max(gmin, thetas[j] - h, thetas[j] + h, 1e-10)
    if g[j] > m_star:
        t_star, m_star = float(thetas[j]), float(g[j])
    decision = m_star
    witness = None
    if want_witness and decision <= tol:
        witness = _complex_zero_vector(C, max(tol, 1e-10), t_star, V)
    return decision, witness


def numerical_range_contains_zero(C: KMatrix, field: str,
                                  tol: float = TOL_ORTH) -> bool:
    """Whether 0 belongs to the F-numerical range of the compression C.

    Over F = R (any K) the range is the real interval of Rayleigh quotients
    of the symmetrized embedding; over F = C it is the convex set
    {x* C x : ||x|| = 1} scanned by supporting half-planes.  Membership is
    inclusive within ``tol``.
    """
    if field == "R":
        decision, _ = _zero_in_range_real(C, tol, want_witness=False)
        return decision <= tol
    if C.algebra != "C":
        raise FieldMismatch("complex numerical range needs K = C")
    decision, _ = _zero_in_range_complex(C.to_complex(), tol, want_witness=False)
    return decision <= tol


# ---- the exact orthogonality path -----------------------------------------


def _compress(T: KMatrix, frame: np.ndarray) -> KMatrix:
    """Compression U* T U of T to the subspace spanned by the frame."""
    TU = np.einsum("ika,qkb,abc->qic", T.comps, frame, _MUL[T.algebra])
    comps = np.einsum("pna,qnb,abc->pqc", vec_conj(frame), TU, _MUL[T.algebra])
    return KMatrix(T.algebra, T.field, frame.shape[0], comps)


def _combine_frame(frame: np.ndarray, coeffs: np.ndarray) -> np.ndarray:
    """Right-linear combination sum_p frame_p . coeffs_p."""
    out = np.zeros_like(frame[0])
    for p in range(frame.shape[0]):
        out = out + vec_scale_right(frame[p], coeffs[p])
    return out


def _bj_core(An: KMatrix, Bn: KMatrix, frame: np.ndarray, tol: float,
             want_witness: bool = True) -> OrthogonalityVerdict:
    """Exact test for norm-one representatives with A's frame precomputed."""
    T = An.adjoint() @ Bn
    C = _compress(T, frame)
    if An.field == "R":
        decision, x = _zero_in_range_real(C, tol, want_witness)
        coeffs = x
    else:
        decision, xc = _zero_in_range_complex(C.to_complex(), tol, want_witness)
        coeffs = None
        if xc is not None:
            coeffs = np.stack([xc.real, xc.imag], axis=-1)
    orthogonal = decision <= tol
    witness = None
    if orthogonal and coeffs is not None:
        u = _combine_frame(frame, coeffs)
        nu = vec_norm(u)
        if nu > 0:
            u = u / nu
            val = field_inner(vec_matvec(An, u), vec_matvec(Bn, u), An.field)
            if abs(val) <= 10.0 * tol:
                witness = u
    return OrthogonalityVerdict(orthogonal, witness, tol - decision)


def is_bj_orthogonal(A: KMatrix, B: KMatrix, tol: float = TOL_ORTH) -> OrthogonalityVerdict:
    """Exact BJ orthogonality A -> B through the support-functional criterion.

    Both arguments are scaled to operator norm one first, so the verdict and
    its margin are homogeneous in either argument.  The zero matrix is
    orthogonal to everything, in both positions.
    """
    if not A.same_algebra(B):
        raise AlgebraMismatch("operands live in different algebras")
    if A.is_zero() or B.is_zero():
        return OrthogonalityVerdict(True, None, math.inf)
    An = A.scale(1.0 / operator_norm(A))
    Bn = B.scale(1.0 / operator_norm(B))
    frame = norm_attaining_space(An).frame
    return _bj_core(An, Bn, frame, tol)


# ---- the brute-force path --------------------------------------------------


def _minimize_block_norm(norm_at, field: str, bound: float,
                         xtol: float = MIN_NORM_XTOL):
    """Minimize a convex norm-like map over the base field on |lam| <= bound."""
    if field == "R":
        lam, val, evals = golden_min(norm_at, -bound, bound, xtol)
        return lam, val, evals
    x, y, val, evals = coordinate_min_2d(
        lambda a, b: norm_at(complex(a, b)), bound, xtol, MIN_NORM_STEP_TOL
    )
    return complex(x, y), val, evals


def bj_min_norm(A: KMatrix, B: KMatrix, xtol: float = MIN_NORM_XTOL) -> MinNormResult:
    """Global minimum of lambda |-> ||A + lambda B|| over the base field.

    Outside |lambda| <= 2 ||A|| / ||B|| the value already exceeds ||A||, so
    the search is confined there.  Over R a golden section suffices; over C
    the two real coordinates alternate golden sections (joint convexity),
    followed by a direction polish.
    """
    if not A.same_algebra(B):
        raise AlgebraMismatch("operands live in different algebras")
    if B.is_zero():
        raise ZeroDirection("direction matrix is zero")
    na = operator_norm(A)
    nb = operator_norm(B)
    bound = 2.0 * na / nb if na > 0.0 else 1.0
    ca = norm_carrier(A)
    cb = norm_carrier(B)

    def norm_at(lam):
        return _sigma_max(ca + lam * cb)

    lam, val, evals = _minimize_block_norm(norm_at, A.field, bound, xtol)
    return MinNormResult(lam, val, evals)


def is_bj_orthogonal_bruteforce(A: KMatrix, B: KMatrix) -> bool:
    """BJ orthogonality straight from the definition; oracle for the exact path."""
    if B.is_zero() or A.is_zero():
        return True
    res = bj_min_norm(A, B)
    na = operator_norm(A)
    return res.min_value >= na - BRUTE_TOL * max(1.0, na)
