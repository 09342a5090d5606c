"""
Discrete-time Kuramoto oscillators with cooperative and antagonistic links.

    theta_i(k+1) = theta_i(k) - mu * sum_{j in N_i(k), j != i} sin(theta_i - R_ij theta_j)

where ``R_ij`` is the sign of arc ``j -> i``. Writing ``sin(u) = sinc(u) * u``
turns the update into the linear signed-weight form with state-dependent
weights ``w_ij = mu * sinc(theta_i - R_ij theta_j) * R_ij`` and
``w_ii = 1 - sum_{j != i} |w_ij|``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .dynamics import StateDependentProvider, WeightMatrix
from .signed_graph import CONFLICT, SignedDigraph

__all__ = [
    "sinc",
    "lambda_star",
    "KuramotoConfig",
    "kuramoto_step",
    "to_weight_matrix",
    "kuramoto_provider",
]

_SINC_SERIES = 1e-8


def sinc(u: float) -> float:
    """Unnormalized ``sin(u)/u`` with ``sinc(0) = 1``."""
    if abs(u) < _SINC_SERIES:
        return 1.0 - u * u / 6.0
    return math.sin(u) / u


def lambda_star(delta: float) -> float:
    """Lower bound of ``sinc`` on ``[-(pi - 2 delta), pi - 2 delta]``."""
    if not 0 < delta < math.pi / 2:
        raise ValueError(f"delta must lie in (0, pi/2), got {delta!r}")
    return sinc(math.pi - 2 * delta)


@dataclass(frozen=True)
class KuramotoConfig:
    """Oscillator parameters.

    ``mu`` must stay below ``(1 - lambda_star(delta)) / n`` so that the
    diagonal weights remain at least ``lambda_star``.
    """

    n: int
    delta: float
    mu: float

    def __post_init__(self):
        ls = lambda_star(self.delta)
        if self.n < 1:
            raise ValueError("n must be positive")
        if not 0 < self.mu < (1 - ls) / self.n:
            raise ValueError(
                f"mu={self.mu!r} violates 0 < mu < (1 - lambda*)/n = {(1 - ls) / self.n!r}"
            )

    @property
    def lambda_star(self) -> float:
        return lambda_star(self.delta)

    @property
    def lam(self) -> float:
        """Uniform lower bound on every nonzero weight modulus."""
        return self.mu * self.lambda_star

    def bound(self) -> float:
        """Admissible initial states lie strictly inside ``(-bound, bound)``."""
        return math.pi / 2 - self.delta

    def check_initial(self, theta) -> None:
        theta = np.asarray(theta, dtype=float)
        b = self.bound()
        if theta.shape != (self.n,):
            raise ValueError(f"expected {self.n} phases, got shape {theta.shape}")
        if np.any(np.abs(theta) >= b):
            raise ValueError(f"initial phases must lie in (-{b!r}, {b!r})")


def _arc_sign(g: SignedDigraph, j: int, i: int) -> int:
    r = g.sign(j, i)
    if r == CONFLICT:
        raise ValueError(f"arc {j}->{i} has no definite sign")
    return r


def _check(theta, g: SignedDigraph, cfg: KuramotoConfig) -> np.ndarray:
    theta = np.asarray(theta, dtype=float)
    if g.n != cfg.n or theta.shape != (cfg.n,):
        raise ValueError(f"dimension mismatch: theta {theta.shape}, graph n={g.n}, config n={cfg.n}")
    return theta


def kuramoto_step(theta, g: SignedDigraph, cfg: KuramotoConfig, k: int = 0) -> np.ndarray:
    """One oscillator update on graph ``g``; arc signs play the role of ``R_ij``."""
    theta = _check(theta, g, cfg)
    out = theta.copy()
    for i in range(1, g.n + 1):
        acc = 0.0
        for j in g.in_neighbors(i):
            acc += math.sin(theta[i - 1] - _arc_sign(g, j, i) * theta[j - 1])
        out[i - 1] = theta[i - 1] - cfg.mu * acc
    return out


def to_weight_matrix(theta, g: SignedDigraph, cfg: KuramotoConfig, k: int = 0) -> WeightMatrix:
    """Signed weight matrix reproducing :func:`kuramoto_step` as ``W @ theta``.

    The stepsize is folded into the off-diagonal weights, which keeps every
    row's moduli summing to one.
    """
    theta = _check(theta, g, cfg)
    n = g.n
    w = np.zeros((n, n))
    for i in range(1, n + 1):
        total = 0.0
        for j in g.in_neighbors(i):
            r = _arc_sign(g, j, i)
            wij = cfg.mu * sinc(theta[i - 1] - r * theta[j - 1]) * r
            w[i - 1, j - 1] = wij
            total += abs(wij)
        w[i - 1, i - 1] = 1.0 - total
    return WeightMatrix(w)


def kuramoto_provider(cfg: KuramotoConfig) -> StateDependentProvider:
    """State-dependent provider for :func:`modcon.dynamics.simulate`."""
    return StateDependentProvider(lambda x, k, g: to_weight_matrix(x, g, cfg, k), cfg.lam)
