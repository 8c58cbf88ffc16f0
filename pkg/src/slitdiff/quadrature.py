"""Composite Gauss-Legendre rules for smooth oscillatory integrands."""

from __future__ import annotations

import functools
import math

import numpy as np
from numpy.polynomial.legendre import leggauss

DEFAULT_ORDER = 8


@functools.lru_cache(maxsize=32)
def _reference_rule(order: int):
    nodes, weights = leggauss(order)
    nodes.setflags(write=False)
    weights.setflags(write=False)
    return nodes, weights


def composite_gauss_legendre(lo: float, hi: float, panels: int, order: int = DEFAULT_ORDER):
    """Nodes and weights of an equal-panel Gauss-Legendre rule on [lo, hi].

    Returns
    -------
    nodes, weights : ndarray, shape (panels * order,)
        Ordered panel by panel, left to right.
    """
    if panels < 1:
        raise ValueError("need at least one panel")
    if order < 1:
        raise ValueError("quadrature order must be at least 1")
    x_ref, w_ref = _reference_rule(order)
    edges = np.linspace(lo, hi, panels + 1)
    half = 0.5 * np.diff(edges)
    mid = 0.5 * (edges[:-1] + edges[1:])
    nodes = (mid[:, None] + half[:, None] * x_ref[None, :]).ravel()
    weights = (half[:, None] * w_ref[None, :]).ravel()
    return nodes, weights


def panels_for_oscillation(
    frequency: float, length: float, per_period: int = 10, minimum: int = 2
) -> int:
    """Panel count giving ``per_period`` panels per period of ``exp(i*frequency*y)``."""
    periods = abs(frequency) * length / (2 * math.pi)
    return max(minimum, int(math.ceil(per_period * periods)))
