"""Fibonacci lattices and quadrature on the unit sphere.

The lattice is quasi-uniform, so every node carries the same weight
4*pi/M.  It is the workhorse grid for densities, overlaps and channel
discretization; accuracy is controlled by refinement (doubling M), not by
adaptive weights.
"""

from __future__ import annotations

import numpy as np

GOLDEN_RATIO = (1.0 + np.sqrt(5.0)) / 2.0
SPHERE_AREA = 4.0 * np.pi


def fibonacci_sphere(n_nodes: int) -> tuple[np.ndarray, np.ndarray]:
    """Return ``(nodes, weights)`` of an ``n_nodes``-point Fibonacci lattice.

    ``nodes`` has shape (n_nodes, 3) with unit rows; ``weights`` are the
    uniform quadrature weights 4*pi/n_nodes.
    """
    if n_nodes < 1:
        raise ValueError("n_nodes must be >= 1")
    i = np.arange(n_nodes, dtype=np.float64) + 0.5
    z = 1.0 - 2.0 * i / n_nodes
    r = np.sqrt(np.maximum(0.0, 1.0 - z * z))
    phi = (2.0 * np.pi / GOLDEN_RATIO) * i
    nodes = np.column_stack((r * np.cos(phi), r * np.sin(phi), z))
    weights = np.full(n_nodes, SPHERE_AREA / n_nodes)
    return nodes, weights


def integrate(values: np.ndarray, weights: np.ndarray) -> float:
    """Quadrature sum of node values against lattice weights."""
    return float(np.dot(values, weights))


def orthonormal_frame(axis: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Two unit vectors completing ``axis`` to a right-handed frame.

    Deterministic in ``axis``: the helper direction is the coordinate axis
    least aligned with it.
    """
    axis = np.asarray(axis, dtype=np.float64)
    helper = np.zeros(3)
    helper[int(np.argmin(np.abs(axis)))] = 1.0
    e1 = np.cross(helper, axis)
    e1 /= np.linalg.norm(e1)
    e2 = np.cross(axis, e1)
    return e1, e2


def uniform_sphere(n: int, rng: np.random.Generator) -> np.ndarray:
    """Draw ``n`` points uniformly on the unit sphere, shape (n, 3)."""
    u = rng.random((n, 2))
    z = 2.0 * u[:, 0] - 1.0
    phi = 2.0 * np.pi * u[:, 1]
    r = np.sqrt(np.maximum(0.0, 1.0 - z * z))
    return np.column_stack((r * np.cos(phi), r * np.sin(phi), z))
