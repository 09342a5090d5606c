"""
Distance to the equal-modulus set and classification of trajectory tails.

The equal-modulus set holds every vector whose coordinates share one absolute
value. Its Euclidean distance has a closed form: the nearest member keeps the
signs of ``x`` and uses the mean modulus, so the distance is the Euclidean
norm of the moduli minus their mean.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

__all__ = [
    "CONSENSUS",
    "BIPARTITE",
    "MODULUS_ONLY",
    "NOT_CONCLUDED",
    "DEFAULT_TOLERANCE",
    "DEFAULT_WINDOW",
    "distance_to_J",
    "max_modulus",
    "ConsensusVerdict",
    "classify",
    "check_monotone_M",
]

CONSENSUS = "Consensus"
BIPARTITE = "Bipartite"
MODULUS_ONLY = "ModulusOnly"
NOT_CONCLUDED = "NotConcluded"

DEFAULT_TOLERANCE = 1e-6
DEFAULT_WINDOW = 50


def distance_to_J(x):
    """Euclidean distance from ``x`` to the set of equal-modulus vectors.

    Works along the last axis, so a 2-D array gives one distance per row.
    """
    mod = np.abs(np.asarray(x, dtype=float))
    dev = mod - mod.mean(axis=-1, keepdims=True)
    d = np.sqrt(np.sum(dev * dev, axis=-1))
    return float(d) if d.ndim == 0 else d


def max_modulus(x) -> float:
    x = np.asarray(x, dtype=float)
    return float(np.max(np.abs(x))) if x.size else 0.0


@dataclass(frozen=True)
class ConsensusVerdict:
    kind: str
    common_modulus: float | None = None
    partition: tuple[tuple[int, ...], tuple[int, ...]] = ((), ())
    window: int = DEFAULT_WINDOW
    tolerance: float = DEFAULT_TOLERANCE
    detail: str = field(default="", compare=False)

    @property
    def concluded(self) -> bool:
        return self.kind != NOT_CONCLUDED

    def to_dict(self) -> dict:
        return {
            "kind": self.kind,
            "common_modulus": self.common_modulus,
            "partition": [list(self.partition[0]), list(self.partition[1])],
            "window": self.window,
            "tolerance": self.tolerance,
        }


def classify(t, tolerance: float = DEFAULT_TOLERANCE, window: int = DEFAULT_WINDOW) -> ConsensusVerdict:
    """Classify the last ``window`` recorded states of trajectory ``t``.

    Within tolerance of the equal-modulus set throughout the tail, the result
    is ``Consensus`` (all moduli below tolerance, or a single sign throughout),
    ``Bipartite`` (constant signs, both present) or ``ModulusOnly``.
    Otherwise ``NotConcluded``. The partition lists 1-based node ids with
    nonnegative and negative final states.
    """
    if window < 1:
        raise ValueError("window must be at least 1")
    if window > len(t.steps):
        raise ValueError(f"window {window} exceeds the {len(t.steps)} recorded steps")
    tail = t.states[-window:]
    dist = t.dist[-window:]
    kw = dict(window=window, tolerance=tolerance)
    if not np.all(dist < tolerance):
        worst = float(dist.max())
        return ConsensusVerdict(NOT_CONCLUDED, detail=f"max tail distance {worst!r}", **kw)

    final = tail[-1]
    modulus = float(np.abs(final).mean())
    nodes = range(1, tail.shape[1] + 1)
    if np.all(np.abs(final) < tolerance):
        return ConsensusVerdict(CONSENSUS, modulus, (tuple(nodes), ()), **kw)

    signs = np.sign(tail)
    steady = np.all(signs == signs[-1], axis=0) & (signs[-1] != 0)
    pos = tuple(i for i in nodes if final[i - 1] >= 0)
    neg = tuple(i for i in nodes if final[i - 1] < 0)
    if not np.all(steady):
        return ConsensusVerdict(MODULUS_ONLY, modulus, (pos, neg), **kw)
    if not pos or not neg:
        return ConsensusVerdict(CONSENSUS, modulus, (pos + neg, ()), **kw)
    return ConsensusVerdict(BIPARTITE, modulus, (pos, neg), **kw)


def check_monotone_M(t, slack: float = 1e-12) -> tuple[bool, int | None]:
    """Check ``M(k+1) <= M(k) + slack`` along a stride-1 trajectory.

    Returns ``(True, None)`` or ``(False, k)`` with the first step ``k+1``
    whose maximal modulus exceeds that of step ``k``.
    """
    if t.stride != 1:
        raise ValueError("monotonicity of M is only checked on stride-1 trajectories")
    M = np.asarray(t.M)
    bad = np.nonzero(M[1:] > M[:-1] + slack)[0]
    if bad.size:
        return False, int(t.steps[bad[0] + 1])
    return True, None
