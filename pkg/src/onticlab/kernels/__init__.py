"""Kernel dispatch: compiled extension when available, numpy otherwise.

The drivers below own all batching and random-number drawing so that both
backends consume an identical stream of uniforms; the backend modules are
pure array transforms.  Set ``ONTICLAB_PURE=1`` to force the numpy
fallback (used by the benchmark and the equivalence tests).
"""

from __future__ import annotations

import os

import numpy as np

from ..sphere import orthonormal_frame
from . import _pykernels

_impl = _pykernels
BACKEND = "python"
if os.environ.get("ONTICLAB_PURE", "") != "1":
    try:
        from . import _ckernels as _impl  # type: ignore[no-redef]

        BACKEND = "compiled"
    except ImportError:
        pass

# One chunk of trials is drawn per round at a time; the plain-protocol
# acceptance rate is 1/4, so 16 trials resolve ~99% of rounds.
TRIAL_CHUNK = 16
ROUND_BATCH = 1 << 16
SAMPLE_BATCH = 1 << 20
MAX_TRIALS = 10**6


def backend_module(name: str):
    """Return a backend module by name ("python" or "compiled")."""
    if name == "python":
        return _pykernels
    if name == "compiled":
        from . import _ckernels

        return _ckernels
    raise ValueError(f"unknown backend {name!r}")


def ks_sample(v: np.ndarray, n: int, rng: np.random.Generator) -> np.ndarray:
    """Draw ``n`` ontic states from the hemispheric cosine density around ``v``."""
    e1, e2 = orthonormal_frame(v)
    u = rng.random((n, 2))
    return _impl.ks_sample_from_uniforms(e1, e2, np.asarray(v, dtype=np.float64), u)


def ks_born_plus_fraction(
    v: np.ndarray, m: np.ndarray, n: int, rng: np.random.Generator
) -> float:
    """Monte Carlo estimate of the +1 outcome probability: fraction of
    density samples around ``v`` landing in the positive hemisphere of ``m``."""
    e1, e2 = orthonormal_frame(v)
    a1 = float(np.dot(e1, m))
    a2 = float(np.dot(e2, m))
    a3 = float(np.dot(v, m))
    count = 0
    done = 0
    while done < n:
        b = min(SAMPLE_BATCH, n - done)
        count += _impl.ks_born_plus_count(a1, a2, a3, rng.random((b, 2)))
        done += b
    return count / n


def plain_rounds(
    v: np.ndarray,
    m: np.ndarray,
    n_rounds: int,
    rng: np.random.Generator,
    bucket_dirs: np.ndarray,
) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Run plain rejection rounds; returns (accepted index, outcome, bucket).

    Accepted indices are 1-based positions in the round's proposal stream;
    outcomes are 0 (+1) / 1 (-1); buckets index ``bucket_dirs``.
    """
    v = np.asarray(v, dtype=np.float64)
    m = np.asarray(m, dtype=np.float64)
    bucket_dirs = np.ascontiguousarray(bucket_dirs, dtype=np.float64)
    idx = np.empty(n_rounds, dtype=np.int64)
    outcome = np.empty(n_rounds, dtype=np.int64)
    bucket = np.empty(n_rounds, dtype=np.int64)
    done = 0
    while done < n_rounds:
        b = min(ROUND_BATCH, n_rounds - done)
        rows = np.arange(done, done + b)
        offset = 0
        while rows.size:
            u = rng.random((rows.size, TRIAL_CHUNK, 3))
            t_loc, out_loc, buck_loc = _impl.plain_round_batch(v, m, bucket_dirs, u)
            hit = t_loc > 0
            accepted = rows[hit]
            idx[accepted] = offset + t_loc[hit]
            outcome[accepted] = out_loc[hit]
            bucket[accepted] = buck_loc[hit]
            rows = rows[~hit]
            offset += TRIAL_CHUNK
            if rows.size and offset >= MAX_TRIALS:
                raise RuntimeError(
                    f"proposal stream exhausted after {MAX_TRIALS} trials; "
                    "acceptance ratio bound violated"
                )
        done += b
    return idx, outcome, bucket


class GreedySchedule:
    """Deterministic acceptance schedule of the greedy channel simulator.

    For target row q and proposal p the accepted mass after step t is
    min(q[x], A_t * p[x]) per cell, with A_t = sum_{j<=t} (1 - s_{j-1}) and
    s_t the total accepted mass.  The schedule depends only on (q, p), so
    it is shared by every round of the same input node.
    """

    def __init__(self, q: np.ndarray, p: np.ndarray, residual_tol: float = 1e-15,
                 max_steps: int = 4096):
        q = np.asarray(q, dtype=np.float64)
        p = np.asarray(p, dtype=np.float64)
        if np.any((p <= 0.0) & (q > 0.0)):
            from ..errors import InfeasibleProposalError

            raise InfeasibleProposalError("proposal has zero mass on a target cell")
        live = p > 0.0
        ratio = np.full(q.shape, np.inf)
        ratio[live] = q[live] / p[live]
        order = np.argsort(ratio[live])
        q_sorted = q[live][order]
        p_sorted = p[live][order]
        self._ratio_sorted = ratio[live][order]
        self._cum_q = np.concatenate(([0.0], np.cumsum(q_sorted)))
        self._rev_cum_p = np.concatenate((np.cumsum(p_sorted[::-1])[::-1], [0.0]))

        a_prev = [0.0]
        s_prev = [0.0]
        a, s = 0.0, 0.0
        for _ in range(max_steps):
            a = a + (1.0 - s)
            s = self._accepted_mass(a)
            if 1.0 - s <= residual_tol:
                break
            a_prev.append(a)
            s_prev.append(s)
        # step t (1-based) uses a_prev[t-1], s_prev[t-1]; the final step is
        # forced, spending the residual mass (<= residual_tol, or the
        # recorded truncation mass if max_steps was hit).
        self.a_prev = np.array(a_prev)
        self.s_prev = np.array(s_prev)
        self.n_steps = len(a_prev)
        self.truncation_mass = 1.0 - s

    def _accepted_mass(self, a: float) -> float:
        k = int(np.searchsorted(self._ratio_sorted, a, side="right"))
        return float(self._cum_q[k] + a * self._rev_cum_p[k])


def greedy_rounds(
    q: np.ndarray,
    p: np.ndarray,
    schedule: GreedySchedule,
    n_rounds: int,
    rng: np.random.Generator,
) -> tuple[np.ndarray, np.ndarray]:
    """Run greedy channel-simulation rounds; returns (accepted index, cell)."""
    q = np.asarray(q, dtype=np.float64)
    p = np.asarray(p, dtype=np.float64)
    cum_p = np.cumsum(p)
    cum_p[-1] = 1.0
    idx = np.empty(n_rounds, dtype=np.int64)
    cell = np.empty(n_rounds, dtype=np.int64)
    done = 0
    while done < n_rounds:
        b = min(ROUND_BATCH, n_rounds - done)
        rows = np.arange(done, done + b)
        offset = 0
        while rows.size:
            n_steps = min(TRIAL_CHUNK, schedule.n_steps - offset)
            force_last = offset + n_steps >= schedule.n_steps
            u = rng.random((rows.size, n_steps, 2))
            t_loc, cell_loc = _impl.greedy_round_batch(
                q,
                p,
                cum_p,
                schedule.a_prev[offset : offset + n_steps],
                schedule.s_prev[offset : offset + n_steps],
                force_last,
                u,
            )
            hit = t_loc > 0
            accepted = rows[hit]
            idx[accepted] = offset + t_loc[hit]
            cell[accepted] = cell_loc[hit]
            rows = rows[~hit]
            offset += n_steps
        done += b
    return idx, cell


def ba_solve(
    channel: np.ndarray, tol_bits: float, max_iter: int
) -> tuple[float, float, int, np.ndarray, np.ndarray, np.ndarray]:
    """Capacity of a row-stochastic channel matrix by alternating optimization."""
    channel = np.ascontiguousarray(channel, dtype=np.float64)
    with np.errstate(divide="ignore", invalid="ignore"):
        logs = np.where(channel > 0.0, np.log2(np.maximum(channel, 1e-300)), 0.0)
    neg_row_entropy = np.einsum("ij,ij->i", channel, logs)
    return _impl.ba_iterate(channel, neg_row_entropy, tol_bits, max_iter)
