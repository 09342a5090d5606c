"""
Random graphs, weight matrices and states for property checks.

The seed comes from the ``SC_SEED`` environment variable when set, so a
failing randomized run can be replayed exactly.
"""

from __future__ import annotations

import os

import numpy as np

from .dynamics import WeightMatrix
from .signed_graph import SignedDigraph

__all__ = ["default_rng", "random_digraph", "random_valid_matrix"]

DEFAULT_SEED = 20131


def default_rng(seed: int | None = None) -> np.random.Generator:
    if seed is None:
        seed = int(os.environ.get("SC_SEED", DEFAULT_SEED))
    return np.random.default_rng(seed)


def random_digraph(rng, n: int, p: float = 0.4, max_in_degree: int | None = None) -> SignedDigraph:
    """Erdos-Renyi style signed digraph; each ordered pair present with probability ``p``."""
    arcs = []
    for i in range(1, n + 1):
        sources = [j for j in range(1, n + 1) if j != i and rng.random() < p]
        if max_in_degree is not None and len(sources) > max_in_degree:
            sources = sorted(rng.choice(sources, size=max_in_degree, replace=False).tolist())
        arcs += [(j, i, int(rng.choice((-1, 1)))) for j in sources]
    return SignedDigraph(n, arcs)


def random_valid_matrix(rng, g: SignedDigraph, lam: float) -> WeightMatrix:
    """Weight matrix satisfying the standing assumption on ``g`` with bound ``lam``.

    Requires ``(in_degree(i) + 1) * lam <= 1`` for every node. The diagonal
    sign is random; off-diagonal signs follow the arcs.
    """
    n = g.n
    a = np.zeros((n, n))
    for i in range(1, n + 1):
        src = g.in_neighbors(i)
        d = len(src) + 1
        slack = 1.0 - d * lam
        if slack < -1e-15:
            raise ValueError(f"node {i} has {d} neighbors, too many for lam={lam}")
        mods = lam + max(slack, 0.0) * rng.dirichlet(np.ones(d))
        a[i - 1, i - 1] = mods[0] * rng.choice((-1.0, 1.0))
        for j, m in zip(src, mods[1:]):
            a[i - 1, j - 1] = m * g.sign(j, i)
    return WeightMatrix(a)
