"""Pure-numpy implementations of the hot kernels.

Mirror of the compiled extension ``_ckernels``.  The public functions take
plain arrays (all randomness is drawn by the caller) and are written so
that per-element floating-point expressions match the C loops operation
for operation; with FMA contraction disabled in the extension build the
two backends produce bit-identical results for everything that avoids
``log2``/``exp2`` (whose numpy SIMD loops may differ from libm by an ulp).
"""

from __future__ import annotations

import numpy as np

TWO_PI = 2.0 * np.pi


def ks_sample_from_uniforms(
    e1: np.ndarray, e2: np.ndarray, v: np.ndarray, u: np.ndarray
) -> np.ndarray:
    """Map uniforms u (n, 2) to samples of the hemispheric cosine density
    around ``v`` (frame ``e1, e2, v`` orthonormal): cos(alpha) = sqrt(u0),
    azimuth 2*pi*u1."""
    c = np.sqrt(u[:, 0])
    s = np.sqrt(1.0 - u[:, 0])
    phi = TWO_PI * u[:, 1]
    sc = s * np.cos(phi)
    ss = s * np.sin(phi)
    return sc[:, None] * e1 + ss[:, None] * e2 + c[:, None] * v


def ks_born_plus_count(a1: float, a2: float, a3: float, u: np.ndarray) -> int:
    """Count samples (same transform as ``ks_sample_from_uniforms``) with
    positive projection on a fixed axis m, given the frame projections
    ``a = (e1.m, e2.m, v.m)``."""
    c = np.sqrt(u[:, 0])
    s = np.sqrt(1.0 - u[:, 0])
    phi = TWO_PI * u[:, 1]
    w = s * np.cos(phi) * a1 + s * np.sin(phi) * a2 + c * a3
    return int(np.count_nonzero(w > 0.0))


def plain_round_batch(
    v: np.ndarray, m: np.ndarray, dirs: np.ndarray, u: np.ndarray
) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """One chunk of plain rejection rounds.

    ``u`` has shape (B, C, 3): per trial a uniform-sphere proposal
    (z = 2*u0 - 1, azimuth 2*pi*u1) and an acceptance uniform u2.  Trial t
    is accepted iff u2 < v.x_t (the density/proposal ratio for the
    hemispheric cosine model with ratio bound 4).

    Returns per round: 1-based accepted trial index within the chunk (0 if
    none), outcome index (0 for +1, 1 for -1; -1 if none), and the index
    of the row of ``dirs`` closest to the accepted proposal (-1 if none).
    """
    z = 2.0 * u[:, :, 0] - 1.0
    r = np.sqrt(np.maximum(0.0, 1.0 - z * z))
    phi = TWO_PI * u[:, :, 1]
    xx = r * np.cos(phi)
    xy = r * np.sin(phi)
    xz = z
    wv = xx * v[0] + xy * v[1] + xz * v[2]
    accept = u[:, :, 2] < wv
    found = accept.any(axis=1)
    first = np.argmax(accept, axis=1)

    n_rounds = u.shape[0]
    idx = np.zeros(n_rounds, dtype=np.int64)
    outcome = np.full(n_rounds, -1, dtype=np.int64)
    bucket = np.full(n_rounds, -1, dtype=np.int64)

    rows = np.nonzero(found)[0]
    if rows.size:
        cols = first[rows]
        ax = xx[rows, cols]
        ay = xy[rows, cols]
        az = xz[rows, cols]
        idx[rows] = cols + 1
        wm = ax * m[0] + ay * m[1] + az * m[2]
        outcome[rows] = np.where(wm > 0.0, 0, 1)
        proj = ax[:, None] * dirs[:, 0] + ay[:, None] * dirs[:, 1] + az[:, None] * dirs[:, 2]
        bucket[rows] = np.argmax(proj, axis=1)
    return idx, outcome, bucket


def greedy_round_batch(
    q: np.ndarray,
    p: np.ndarray,
    cum_p: np.ndarray,
    a_prev: np.ndarray,
    s_prev: np.ndarray,
    force_last: bool,
    u: np.ndarray,
) -> tuple[np.ndarray, np.ndarray]:
    """One chunk of greedy channel-simulation rounds.

    ``u`` has shape (B, C, 2): per step a cell draw (inverse CDF on
    ``cum_p``) and an acceptance uniform.  Step j accepts cell x with
    probability clip((q[x] - min(q[x], a_prev[j]*p[x])) /
    ((1 - s_prev[j]) * p[x]), 0, 1); if ``force_last`` the final step of
    the chunk accepts unconditionally (schedule exhausted, residual mass
    below tolerance).

    Returns per round the 1-based accepting step within the chunk (0 if
    none) and the accepted cell (-1 if none).
    """
    n_rounds, n_steps = u.shape[0], u.shape[1]
    cells = np.searchsorted(cum_p, u[:, :, 0], side="right")
    pc = p[cells]
    qc = q[cells]
    cap = a_prev[None, :] * pc
    pstar = np.minimum(qc, cap)
    beta = (qc - pstar) / ((1.0 - s_prev)[None, :] * pc)
    accept = u[:, :, 1] < beta
    if force_last:
        accept[:, n_steps - 1] = True
    found = accept.any(axis=1)
    first = np.argmax(accept, axis=1)

    idx = np.zeros(n_rounds, dtype=np.int64)
    cell = np.full(n_rounds, -1, dtype=np.int64)
    rows = np.nonzero(found)[0]
    if rows.size:
        idx[rows] = first[rows] + 1
        cell[rows] = cells[rows, first[rows]]
    return idx, cell


def ba_iterate(
    channel: np.ndarray,
    neg_row_entropy: np.ndarray,
    tol_bits: float,
    max_iter: int,
) -> tuple[float, float, int, np.ndarray, np.ndarray, np.ndarray]:
    """Alternating-optimization capacity solver on a row-stochastic matrix.

    Per iteration, with current prior r and output marginal q:
    D_i = sum_j T_ij log2(T_ij / q_j) (relative entropy of row i from the
    marginal).  Then sum_i r_i D_i is a lower bound on the capacity and
    max_i D_i an upper bound; the prior update is r_i <- r_i 2^{D_i},
    renormalized.  Stops when upper - lower <= tol_bits.

    Returns (capacity lower bound, gap, iterations, prior, lower trace,
    upper trace).
    """
    n_in = channel.shape[0]
    r = np.full(n_in, 1.0 / n_in)
    lower_trace = []
    upper_trace = []
    lower = 0.0
    upper = np.inf
    iters = 0
    for iters in range(1, max_iter + 1):
        marg = r @ channel
        log_marg = np.where(marg > 0.0, np.log2(np.maximum(marg, 1e-300)), 0.0)
        d = neg_row_entropy - channel @ log_marg
        lower = float(np.dot(r, d))
        upper = float(np.max(d))
        lower_trace.append(lower)
        upper_trace.append(upper)
        if upper - lower <= tol_bits:
            break
        w = r * np.exp2(d - upper)
        r = w / np.sum(w)
    return lower, upper - lower, iters, r, np.array(lower_trace), np.array(upper_trace)
