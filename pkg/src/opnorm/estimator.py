"""Lower bounds, a brute-force oracle, and the certified bound combiner.

``ascent_lower_bound`` runs the classical fixed-point ascent for the operator
p-norm: xi <- Phi_q(A* Phi_p(A xi)) with Phi_r(z) = |z|^(r-1) sign(z); the
objective ||A xi||_p / ||xi||_p is nondecreasing along the iteration and the
returned value is always recomputed from the returned maximizer, so it is a
true attained lower bound regardless of convergence.  For 1 < p < 2 the
iteration runs on (A*, q) and maps the maximizer back through the duality
relation ||A||_p = ||A*||_q, which keeps the working exponent >= 2.

``certified_bound`` combines structural recognizers (block-diagonal splits,
doubly balanced matrices, circulants, cyclic Hankel forms, rank-one block
tensors, the log-affine anchor test) with interpolation upper bounds and the
best available lower bound into one interval with provenance tags.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .core import (
    INF,
    Exponent,
    adjoint,
    as_exponent,
    as_matrix,
    as_vector,
    dual_exponent,
    vec_norm,
)
from .exact import (
    AnchorNorms,
    anchor_norms,
    norm_inf_attained,
    norm_one_attained,
)
from .interp import (
    NormBound,
    UpperEstimate,
    la_envelope,
    la_report_from_anchors,
    upper_bound_from_anchors,
)
from .structured import (
    UnitaryPermutation,
    as_circulant,
    as_hankel,
    as_tensor_rank_one,
    circulant_two_norm,
    classify_circulant_la,
    densify,
    doubly_balanced_norm,
    hankel_factor,
    split_direct_sum,
)

__all__ = [
    "AscentResult",
    "CertificateError",
    "ascent_lower_bound",
    "best_lower_bound",
    "certified_bound",
    "eigen_lower_bound",
    "oracle_norm",
    "oracle_search",
]


class CertificateError(ValueError):
    """An eigen certificate failed its residual check."""


@dataclass(frozen=True)
class AscentResult:
    """Attained lower bound: value = ||A maximizer||_p / ||maximizer||_p.

    The value is recomputed from the maximizer before returning, so the
    self-certification identity holds to working precision by construction.
    ``objective_trace`` records the nondecreasing objective of the winning
    restart.
    """

    value: float
    maximizer: np.ndarray
    iterations: int
    converged: bool
    objective_trace: tuple[float, ...]


def eigen_lower_bound(A, xi, S, lam) -> float:
    """Certified lower bound |lam| valid at every exponent.

    Verifies A xi = lam * densify(S) * xi to 1e-9 relative (2-norm residual);
    S must be a phased permutation, which preserves every p-norm, so the
    eigen relation pins ||A||_p >= |lam| for all p.
    """
    M = as_matrix(A)
    x = as_vector(xi)
    if not isinstance(S, UnitaryPermutation):
        raise CertificateError("certificate requires a phased permutation")
    if M.shape[0] != M.shape[1] or M.shape[0] != x.size or S.n != x.size:
        raise ValueError("certificate shapes do not match")
    if not np.any(x):
        raise CertificateError("certificate vector is zero")
    lam = complex(lam)
    lhs = M @ x
    rhs = lam * (densify(S) @ x)
    scale = max(vec_norm(lhs, 2), vec_norm(rhs, 2)) if (np.any(lhs) or np.any(rhs)) else 0.0
    resid = vec_norm(lhs - rhs, 2)
    if resid > 1e-9 * max(scale, 1e-300):
        raise CertificateError(
            f"eigen certificate rejected: residual {resid:.3e} against scale {scale:.3e}")
    return abs(lam)


def _dual_direction(z: np.ndarray, r: float) -> np.ndarray:
    """Direction of Phi_r(z) = |z|^(r-1) sign(z), scaled to avoid overflow."""
    a = np.abs(z)
    top = a.max()
    if top == 0.0:
        return np.zeros_like(z)
    out = np.zeros_like(z)
    nz = a > 0.0
    out[nz] = (a[nz] / top) ** (r - 1.0) * (z[nz] / a[nz])
    return out


@dataclass(frozen=True)
class _Run:
    value: float
    x: np.ndarray
    iterations: int
    converged: bool
    trace: tuple[float, ...]


def _ascent_run(M: np.ndarray, r: Exponent, x0: np.ndarray,
                max_iter: int = 500, gain_tol: float = 1e-12) -> _Run:
    rv = r.value
    qv = dual_exponent(r).value
    Mh = np.conj(M.T)
    x = x0 / vec_norm(x0, r)
    trace: list[float] = []
    prev = None
    converged = False
    for _ in range(max_iter):
        y = M @ x
        obj = vec_norm(y, r)
        trace.append(obj)
        if obj == 0.0:
            converged = True
            break
        if prev is not None and obj - prev <= gain_tol * prev:
            converged = True
            break
        prev = obj
        u = _dual_direction(y, rv)
        z = Mh @ u
        xn = _dual_direction(z, qv)
        nrm = vec_norm(xn, r)
        if nrm == 0.0:
            break
        x = xn / nrm
    value = vec_norm(M @ x, r)
    return _Run(value, x, len(trace), converged, tuple(trace))


def _ascent_starts(M: np.ndarray, r: Exponent, restarts: int,
                   seed: int) -> list[tuple[np.ndarray, bool]]:
    """Start vectors as (vector, is_random) pairs.

    Deterministic: the ones vector, the unit vector of the largest-r-norm
    column, and — for real matrices of size <= 4 — one seed per sign orthant,
    since a real matrix attains its norm at a real vector and the ascent
    rarely crosses orthants.  Then restarts-2 seeded complex random starts.
    """
    n = M.shape[1]
    starts: list[tuple[np.ndarray, bool]] = [(np.ones(n, dtype=np.complex128), False)]
    if restarts < 2:
        return starts
    j = int(np.argmax([vec_norm(M[:, k], r) for k in range(n)]))
    e = np.zeros(n, dtype=np.complex128)
    e[j] = 1.0
    starts.append((e, False))
    if n <= 4 and float(np.abs(M.imag).max()) == 0.0:
        for bits in range(1, 2 ** (n - 1)):  # skip all-plus: already seeded
            signs = [1.0] + [-1.0 if bits >> k & 1 else 1.0 for k in range(n - 1)]
            starts.append((np.array(signs, dtype=np.complex128), False))
    for k in range(restarts - 2):
        rng = np.random.default_rng([seed, k])
        starts.append((rng.standard_normal(n) + 1j * rng.standard_normal(n), True))
    return starts


def ascent_lower_bound(A, p, restarts: int = 8, seed: int = 0) -> AscentResult:
    """Iterative ascent lower bound for the operator p-norm.

    Restarts from the ones vector, the unit vector of the largest-norm
    column, sign-orthant seeds for small real matrices, and seeded random
    complex vectors; a restart stops when the
    relative objective gain drops below 1e-12 (at most 500 iterations), and
    restarting stops early once a random start re-confirms the best value
    seen so far to 1e-10.  At p in {1, inf} the exact attaining coordinate
    formulas are used directly.
    """
    M = as_matrix(A)
    if M.shape[0] != M.shape[1]:
        raise ValueError("ascent_lower_bound requires a square matrix")
    if restarts < 1:
        raise ValueError("restarts must be at least 1")
    p = as_exponent(p)
    n = M.shape[0]

    if p.value == 1.0:
        value, j = norm_one_attained(M)
        x = np.zeros(n, dtype=np.complex128)
        x[j] = 1.0
        return AscentResult(value, x, 0, True, (value,))
    if p.is_inf:
        value, i = norm_inf_attained(M)
        row = M[i, :]
        x = np.where(np.abs(row) > 0.0, np.conj(row) / np.where(np.abs(row) > 0.0, np.abs(row), 1.0), 0.0)
        if not np.any(x):
            x = np.zeros(n, dtype=np.complex128)
            x[0] = 1.0
        return AscentResult(vec_norm(M @ x, INF) / vec_norm(x, INF), x, 0, True, (value,))

    dual_run = p.value < 2.0
    work = adjoint(M) if dual_run else M
    r = dual_exponent(p) if dual_run else p

    best: _Run | None = None
    for x0, is_random in _ascent_starts(work, r, restarts, seed):
        run = _ascent_run(work, r, x0)
        prev_best = best.value if best is not None else None
        if best is None or run.value > best.value:
            best = run
        # deterministic starts often share a basin, so agreement only counts
        # once a seeded random start confirms the incumbent value
        if (is_random and prev_best is not None
                and abs(run.value - prev_best) <= 1e-10 * max(1.0, prev_best)):
            break

    assert best is not None
    if not dual_run:
        return AscentResult(best.value, best.x, best.iterations, best.converged, best.trace)

    # map the dual maximizer eta back: xi = Phi_q(A* eta) attains at least
    # the dual objective, by the Hoelder equality of the duality map
    w = work @ best.x
    xi = _dual_direction(w, r.value)
    if not np.any(xi):
        xi = np.ones(n, dtype=np.complex128)
    xi = xi / vec_norm(xi, p)
    value = vec_norm(M @ xi, p)
    return AscentResult(value, xi, best.iterations, best.converged, best.trace + (value,))


def best_lower_bound(A, p, seed: int = 0, anchors: AnchorNorms | None = None,
                     eigen_certificates=(), extra=()) -> tuple[float, str]:
    """Largest available certified lower bound with its provenance tag."""
    M = as_matrix(A)
    p = as_exponent(p)
    cands: list[tuple[float, str]] = []
    if anchors is not None:
        if p.value == 1.0:
            cands.append((anchors.n1, "anchor"))
        elif p.value == 2.0:
            cands.append((anchors.n2, "anchor"))
        elif p.is_inf:
            cands.append((anchors.ninf, "anchor"))
    for xi, S, lam in eigen_certificates:
        cands.append((eigen_lower_bound(M, xi, S, lam), "eigen-certificate"))
    cands.extend(extra)
    cands.append((ascent_lower_bound(M, p, seed=seed).value, "boyd"))
    best_v, best_tag = cands[0]
    for v, tag in cands[1:]:
        if v > best_v:
            best_v, best_tag = v, tag
    return best_v, best_tag


# ---------------------------------------------------------------------------
# brute-force oracle (real 2x2 and 3x3 only)

def _col_pnorms(Y: np.ndarray, p: Exponent) -> np.ndarray:
    a = np.abs(Y)
    top = a.max(axis=0)
    if p.is_inf:
        return top
    safe = np.where(top > 0.0, top, 1.0)
    s = ((a / safe) ** p.value).sum(axis=0)
    return top * s ** (1.0 / p.value)


_GOLDEN = (math.sqrt(5.0) - 1.0) / 2.0


def _golden_max(f, a: float, b: float, tol: float) -> tuple[float, float]:
    h = b - a
    c = b - _GOLDEN * h
    d = a + _GOLDEN * h
    fc, fd = f(c), f(d)
    while h > tol:
        if fc > fd:
            b, d, fd = d, c, fc
            h = b - a
            c = b - _GOLDEN * h
            fc = f(c)
        else:
            a, c, fc = c, d, fd
            h = b - a
            d = a + _GOLDEN * h
            fd = f(d)
    mid = 0.5 * (a + b)
    return mid, f(mid)


def oracle_search(A, p, resolution: int = 360):
    """Grid search over the real unit sphere with golden-section refinement.

    Supports real 2x2 and 3x3 matrices.  Returns (value, angles, maximizer);
    the value is the maximum of ||A d||_p / ||d||_p over the angular grid
    (resolution points per angle, full sign-covering ranges) refined to an
    angular tolerance of 1e-8, hence always an attained lower bound.
    """
    M = as_matrix(A)
    p = as_exponent(p)
    if float(np.abs(M.imag).max()) != 0.0:
        raise ValueError("oracle supports real matrices only")
    n = M.shape[0]
    if M.shape[0] != M.shape[1] or n not in (2, 3):
        raise ValueError("oracle supports sizes 2 and 3 only")
    if resolution < 360:
        raise ValueError("resolution must be at least 360")
    R = M.real

    def objective(d: np.ndarray) -> float:
        return vec_norm(R @ d, p) / vec_norm(d, p)

    if n == 2:
        thetas = np.linspace(0.0, 2.0 * np.pi, resolution, endpoint=False)
        D = np.stack([np.cos(thetas), np.sin(thetas)])
        vals = _col_pnorms(R @ D, p) / _col_pnorms(D, p)
        i = int(np.argmax(vals))
        step = 2.0 * np.pi / resolution

        def f1(t: float) -> float:
            return objective(np.array([math.cos(t), math.sin(t)]))

        t_best, v_best = _golden_max(f1, thetas[i] - step, thetas[i] + step, 1e-8)
        if vals[i] > v_best:
            t_best, v_best = float(thetas[i]), float(vals[i])
        d = np.array([math.cos(t_best), math.sin(t_best)])
        return float(v_best), (float(t_best),), d / vec_norm(d, p)

    thetas = np.linspace(0.0, np.pi, resolution)
    phis = np.linspace(0.0, 2.0 * np.pi, resolution, endpoint=False)
    TH, PH = np.meshgrid(thetas, phis, indexing="ij")
    D = np.stack([
        (np.sin(TH) * np.cos(PH)).ravel(),
        (np.sin(TH) * np.sin(PH)).ravel(),
        np.cos(TH).ravel(),
    ])
    vals = _col_pnorms(R @ D, p) / _col_pnorms(D, p)
    i = int(np.argmax(vals))
    th0, ph0 = float(TH.ravel()[i]), float(PH.ravel()[i])
    v0 = float(vals[i])
    h_th = np.pi / (resolution - 1)
    h_ph = 2.0 * np.pi / resolution

    def direction(th: float, ph: float) -> np.ndarray:
        return np.array([
            math.sin(th) * math.cos(ph),
            math.sin(th) * math.sin(ph),
            math.cos(th),
        ])

    th_best, ph_best, v_best = th0, ph0, v0
    for _ in range(8):  # alternating 1-D refinements
        th_best, _v = _golden_max(
            lambda t: objective(direction(t, ph_best)), th_best - h_th, th_best + h_th, 1e-8)
        ph_best, v_new = _golden_max(
            lambda t: objective(direction(th_best, t)), ph_best - h_ph, ph_best + h_ph, 1e-8)
        if v_new <= v_best * (1.0 + 1e-14):
            v_best = max(v_best, v_new)
            break
        v_best = v_new
    if v0 > v_best:
        th_best, ph_best, v_best = th0, ph0, v0
    d = direction(th_best, ph_best)
    return float(v_best), (float(th_best), float(ph_best)), d / vec_norm(d, p)


def oracle_norm(A, p, resolution: int = 360) -> float:
    """Brute-force p-norm value for real 2x2/3x3 matrices (attained, hence a lower bound)."""
    return oracle_search(A, p, resolution)[0]


# ---------------------------------------------------------------------------
# certified interval combiner

def _is_anchor(p: Exponent) -> bool:
    return p.value in (1.0, 2.0) or p.is_inf


def _exact_interval(p: Exponent, value: float, lower_tag: str) -> NormBound:
    upper_tag = "anchor" if _is_anchor(p) else "riesz-thorin"
    return NormBound(p, value, value, lower_tag, upper_tag)


def _reconcile(lower: float, ltag: str, upper: UpperEstimate, p: Exponent) -> NormBound:
    if lower > upper.value * (1.0 + 1e-9):
        raise RuntimeError(
            f"bound inconsistency at p={p}: lower {lower} exceeds upper {upper.value}")
    return NormBound(p, min(lower, upper.value), upper.value, ltag, upper.provenance)


def certified_bound(A, p, seed: int = 0, eigen_certificates=()) -> NormBound:
    """Certified interval for the operator p-norm of a square complex matrix.

    Structure is used whenever it pins the value exactly: block-diagonal
    splits (max over the parts), doubly balanced matrices (the shared line
    sum at every p), circulants (log-affine witness, or exact anchors from
    the spectrum), cyclic Hankel layouts (delegated to the circulant factor,
    which shares all p-norms), rank-one block tensors (vector-norm factor
    times a recursive core interval), and the anchor equality test that
    certifies the log-affine envelope.  Otherwise the interval combines the
    interpolation upper bound with the best lower bound (exact anchors,
    supplied eigen certificates, iterative ascent).
    """
    M = as_matrix(A)
    if M.shape[0] != M.shape[1]:
        raise ValueError("certified_bound requires a square matrix")
    p = as_exponent(p)
    n = M.shape[0]

    if n == 1:
        v = abs(complex(M[0, 0]))
        return NormBound(p, v, v, "anchor", "anchor")

    blocks = split_direct_sum(M)
    if len(blocks) > 1:
        parts = [certified_bound(B, p, seed=seed) for B in blocks]
        lo_part = max(parts, key=lambda b: b.lower)
        hi_part = max(parts, key=lambda b: b.upper)
        return NormBound(p, lo_part.lower, hi_part.upper,
                         lo_part.lower_provenance, hi_part.upper_provenance)

    balanced = doubly_balanced_norm(M)
    if balanced is not None:
        return _exact_interval(p, balanced, "ones-vector")

    circ = as_circulant(M)
    if circ is not None:
        witness = classify_circulant_la(circ)
        total = float(np.abs(circ.coeffs).sum())
        if witness.is_la:
            return _exact_interval(p, total, "eigen-certificate")
        spectral = circulant_two_norm(circ)
        anchors = AnchorNorms(total, spectral, total)
        up = upper_bound_from_anchors(anchors, n, p, bool(np.array_equal(M, adjoint(M))))
        # the attaining root-of-unity eigenvector certifies the spectral
        # value as a lower bound at every exponent
        lo, ltag = best_lower_bound(M, p, seed=seed, anchors=anchors,
                                    eigen_certificates=eigen_certificates,
                                    extra=((spectral, "eigen-certificate"),))
        return _reconcile(lo, ltag, up, p)

    hank = as_hankel(M)
    if hank is not None:
        # H = P C with P a phase-free permutation, so H shares every p-norm
        # with its circulant factor
        _, circ_factor = hankel_factor(hank)
        return certified_bound(densify(circ_factor), p, seed=seed)

    tensor = as_tensor_rank_one(M)
    if tensor is not None:
        fac = vec_norm(tensor.alpha, p) * vec_norm(tensor.beta, dual_exponent(p))
        core = certified_bound(tensor.core, p, seed=seed)
        return NormBound(p, fac * core.lower, fac * core.upper,
                         core.lower_provenance, core.upper_provenance)

    anchors = anchor_norms(M)
    if la_report_from_anchors(anchors).is_la:
        return _exact_interval(p, la_envelope(anchors, p), "anchor")

    up = upper_bound_from_anchors(anchors, n, p, bool(np.array_equal(M, adjoint(M))))
    lo, ltag = best_lower_bound(M, p, seed=seed, anchors=anchors,
                                eigen_certificates=eigen_certificates)
    return _reconcile(lo, ltag, up, p)
