"""Gauss-Legendre rules on the unit interval."""

from __future__ import annotations

import math
from functools import lru_cache

import numpy as np


@lru_cache(maxsize=None)
def gauss_legendre_unit(n_nodes: int) -> tuple[np.ndarray, np.ndarray]:
    """Nodes and weights of the ``n_nodes``-point rule mapped to [0, 1].

    Exact for polynomials of degree ``2 * n_nodes - 1``.
    """
    if n_nodes < 1:
        raise ValueError("n_nodes must be positive")
    x, w = np.polynomial.legendre.leggauss(n_nodes)
    nodes = 0.5 * (x + 1.0)
    weights = 0.5 * w
    nodes.setflags(write=False)
    weights.setflags(write=False)
    return nodes, weights


@lru_cache(maxsize=256)
def unit_rule(n_nodes: int, max_nodes: int) -> tuple[np.ndarray, np.ndarray]:
    """Rule with at least ``n_nodes`` points, split into equal panels above ``max_nodes``.

    Below the cap this is the plain ``n_nodes``-point rule. Above it,
    ``ceil(n_nodes / max_nodes)`` equal-width panels each carry a
    ``max_nodes``-point rule.
    """
    if n_nodes <= max_nodes:
        return gauss_legendre_unit(n_nodes)
    panels = math.ceil(n_nodes / max_nodes)
    x, w = gauss_legendre_unit(max_nodes)
    offsets = np.arange(panels, dtype=float)[:, None]
    nodes = ((offsets + x[None, :]) / panels).ravel()
    weights = np.tile(w / panels, panels)
    nodes.setflags(write=False)
    weights.setflags(write=False)
    return nodes, weights
