"""
Switching schedules and joint-connectivity verdicts.

A schedule maps every step ``k >= 0`` to the graph active at that step.
Three finitely described variants are supported:

* :class:`FiniteTrace`: an explicit list of graphs, defined up to a horizon.
* :class:`Periodic`: a pattern cycled forever, each graph held for ``hold`` steps.
* :class:`SparseRecurrent`: a base graph, interrupted by a recurrent graph at
  single steps ``t_1 < t_2 < ...`` whose gaps grow without bound.

:func:`classify` decides uniform joint strong connectivity (UJSC), uniform
joint quasi-strong connectivity (UJQSC) and infinite joint connectivity (IJC)
exactly where the variant structure allows, and says "unknown" otherwise.
"""

from __future__ import annotations

import bisect
from dataclasses import dataclass, field
from typing import Callable, Sequence

from .signed_graph import (
    SignedDigraph,
    has_spanning_tree,
    is_bidirectional,
    is_connected_bidirectional,
    is_strongly_connected,
    union,
)

__all__ = [
    "Schedule",
    "FiniteTrace",
    "Periodic",
    "SparseRecurrent",
    "squares",
    "Verdict",
    "ConnectivityReport",
    "classify",
]


def squares(l: int) -> int:
    """Default recurrence times ``t_l = l**2``."""
    return l * l


class Schedule:
    """Common interface of the schedule variants."""

    n: int

    def graph_at(self, k: int) -> SignedDigraph:
        raise NotImplementedError

    def graphs(self) -> tuple[SignedDigraph, ...]:
        """Every distinct graph the schedule can produce."""
        raise NotImplementedError

    def joint_graph(self, k1: int, k2: int) -> SignedDigraph:
        """Union of the graphs active on steps ``k1 <= k < k2``."""
        if not (0 <= k1 < k2):
            raise ValueError(f"invalid interval [{k1}, {k2})")
        seen = {}
        for k in range(k1, k2):
            g = self.graph_at(k)
            seen.setdefault(g, g)
        return union(list(seen))


def _check_step(k) -> int:
    if int(k) != k or k < 0:
        raise ValueError(f"step must be a non-negative integer, got {k!r}")
    return int(k)


def _common_n(graphs: Sequence[SignedDigraph]) -> int:
    ns = {g.n for g in graphs}
    if len(ns) != 1:
        raise ValueError(f"schedule graphs disagree on node count: {sorted(ns)}")
    return ns.pop()


@dataclass(frozen=True)
class FiniteTrace(Schedule):
    """Graph at step ``k`` is ``trace[k]``, for ``k < len(trace)``."""

    trace: tuple[SignedDigraph, ...]

    def __post_init__(self):
        object.__setattr__(self, "trace", tuple(self.trace))
        if not self.trace:
            raise ValueError("finite trace needs at least one graph")
        object.__setattr__(self, "n", _common_n(self.trace))

    @property
    def horizon(self) -> int:
        return len(self.trace)

    def graph_at(self, k: int) -> SignedDigraph:
        k = _check_step(k)
        if k >= self.horizon:
            raise IndexError(f"step {k} is beyond the trace horizon {self.horizon}")
        return self.trace[k]

    def graphs(self):
        return tuple(dict.fromkeys(self.trace))

    def joint_graph(self, k1, k2):
        if k2 > self.horizon:
            raise ValueError(f"interval [{k1}, {k2}) leaves the trace horizon {self.horizon}")
        return super().joint_graph(k1, k2)


@dataclass(frozen=True)
class Periodic(Schedule):
    """Graph at step ``k`` is ``pattern[(k // hold) % len(pattern)]``."""

    pattern: tuple[SignedDigraph, ...]
    hold: int = 1

    def __post_init__(self):
        object.__setattr__(self, "pattern", tuple(self.pattern))
        if not self.pattern:
            raise ValueError("periodic pattern must be nonempty")
        if int(self.hold) != self.hold or self.hold < 1:
            raise ValueError(f"hold must be a positive integer, got {self.hold!r}")
        object.__setattr__(self, "n", _common_n(self.pattern))

    @property
    def period(self) -> int:
        return len(self.pattern) * self.hold

    def graph_at(self, k):
        k = _check_step(k)
        return self.pattern[(k // self.hold) % len(self.pattern)]

    def graphs(self):
        return tuple(dict.fromkeys(self.pattern))


@dataclass(frozen=True)
class SparseRecurrent(Schedule):
    """``recurrent`` on the single steps ``times(1), times(2), ...``, ``base`` elsewhere.

    ``times`` must be strictly increasing with unbounded gaps between
    consecutive values; the verdicts in :func:`classify` rely on that.
    """

    base: SignedDigraph
    recurrent: SignedDigraph
    times: Callable[[int], int] = squares
    _cache: list = field(default_factory=list, init=False, repr=False, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "n", _common_n([self.base, self.recurrent]))
        self._extend(8)

    def _extend(self, upto_index: int) -> None:
        cache = self._cache
        while len(cache) < upto_index:
            t = int(self.times(len(cache) + 1))
            if t < 0 or (cache and t <= cache[-1]):
                raise ValueError("recurrence times must be non-negative and strictly increasing")
            cache.append(t)

    def recurrence_times(self, count: int) -> list[int]:
        """First ``count`` recurrence times."""
        self._extend(count)
        return self._cache[:count]

    def is_recurrent(self, k: int) -> bool:
        k = _check_step(k)
        while self._cache[-1] < k:
            self._extend(len(self._cache) * 2)
        i = bisect.bisect_left(self._cache, k)
        return self._cache[i] == k

    def graph_at(self, k):
        return self.recurrent if self.is_recurrent(k) else self.base

    def graphs(self):
        return tuple(dict.fromkeys((self.base, self.recurrent)))


@dataclass(frozen=True)
class Verdict:
    """Outcome of one joint-connectivity property.

    ``holds`` is ``None`` when the property cannot be decided from the
    schedule description (beyond the search bound, or past a finite horizon).
    ``T`` is the minimal window length when ``holds`` is true.
    """

    holds: bool | None
    T: int | None = None
    reason: str = ""

    def to_dict(self) -> dict:
        d = {"holds": self.holds, "T": self.T}
        if self.reason:
            d["reason"] = self.reason
        return d


@dataclass(frozen=True)
class ConnectivityReport:
    ujsc: Verdict
    ujqsc: Verdict
    ijc: Verdict
    notes: tuple[tuple[str, str], ...] = ()

    def to_dict(self) -> dict:
        return {
            "ujsc": self.ujsc.to_dict(),
            "ujqsc": self.ujqsc.to_dict(),
            "ijc": self.ijc.to_dict(),
            "notes": [list(n) for n in self.notes],
        }


def _window_label(g: SignedDigraph) -> str:
    if is_strongly_connected(g):
        return "strong"
    if has_spanning_tree(g):
        return "quasi-strong"
    return "neither"


def _periodic_uniform(s: Periodic, pred, t_max: int, window_budget: int, notes, tag):
    period = s.period
    if period > window_budget:
        return Verdict(None, reason=f"period {period} exceeds window budget {window_budget}")
    full = union(list(s.graphs()))
    if not pred(full):
        notes.append((f"{tag}: joint graph of one full period", _window_label(full)))
        return Verdict(False, reason="joint graph over a full period fails, so every window fails")
    # Window joint graphs are periodic in their start, and any window of
    # length >= period covers the whole pattern, so T = period always works.
    for T in range(1, min(t_max, period) + 1):
        if all(pred(s.joint_graph(k, k + T)) for k in range(period)):
            notes.append((f"{tag}: every window of length {T}", "holds"))
            return Verdict(True, T)
    return Verdict(
        None,
        reason=f"unknown-beyond-bound: holds with T={period} but no witness <= t_max={t_max}",
    )


def _periodic_ijc(s: Periodic) -> Verdict:
    if not all(is_bidirectional(g) for g in s.graphs()):
        return Verdict(False, reason="not bidirectional")
    return Verdict(is_connected_bidirectional(union(list(s.graphs()))))


def _max_recurrent_run(s: SparseRecurrent, window_budget: int) -> int:
    ts = s.recurrence_times(max(window_budget, 2))
    run = best = 1
    for a, b in zip(ts, ts[1:]):
        run = run + 1 if b == a + 1 else 1
        best = max(best, run)
    return best


def _sparse_uniform(s: SparseRecurrent, pred, window_budget: int, notes, tag) -> Verdict:
    # Gaps between recurrences are unbounded, so for every T some window of
    # length T sees only the base graph.
    if not pred(s.base):
        notes.append((f"{tag}: base-only window (arbitrarily long)", _window_label(s.base)))
        return Verdict(False, reason="base-only windows of every length exist and the base graph fails")
    if pred(s.recurrent):
        return Verdict(True, 1)
    # A window fails only if it sits entirely inside a run of recurrent steps.
    run = _max_recurrent_run(s, window_budget)
    notes.append((f"{tag}: longest recurrent run in first {window_budget} recurrences", str(run)))
    return Verdict(True, run + 1, reason=f"run length scanned over {window_budget} recurrences")


def _sparse_ijc(s: SparseRecurrent) -> Verdict:
    if not (is_bidirectional(s.base) and is_bidirectional(s.recurrent)):
        return Verdict(False, reason="not bidirectional")
    # Both graphs occur infinitely often, so every suffix has the same joint graph.
    return Verdict(is_connected_bidirectional(union([s.base, s.recurrent])))


def _finite(s: FiniteTrace, t_max: int, window_budget: int, notes) -> ConnectivityReport:
    h = s.horizon
    out = {}
    for tag, pred in (("ujsc", is_strongly_connected), ("ujqsc", has_spanning_tree)):
        found = None
        for T in range(1, min(t_max, h) + 1):
            starts = range(0, min(h - T + 1, window_budget))
            if all(pred(s.joint_graph(k, k + T)) for k in starts):
                found = T
                break
        if found is None:
            reason = f"no window length <= {min(t_max, h)} works within horizon {h}"
        else:
            reason = f"holds with T={found} within horizon {h}"
        notes.append((f"{tag}: horizon {h}", reason))
        out[tag] = Verdict(None, reason=reason)
    if not all(is_bidirectional(g) for g in s.graphs()):
        out["ijc"] = Verdict(False, reason="not bidirectional")
    else:
        joint = is_connected_bidirectional(s.joint_graph(0, h))
        out["ijc"] = Verdict(None, reason=f"suffix joint graphs beyond horizon {h} are unknown")
        notes.append((f"ijc: joint graph of [0, {h})", "connected" if joint else "not connected"))
    return ConnectivityReport(out["ujsc"], out["ujqsc"], out["ijc"], tuple(notes))


def classify(s: Schedule, t_max: int = 64, window_budget: int = 10_000) -> ConnectivityReport:
    """Decide the three joint-connectivity properties of ``s``.

    Parameters
    ----------
    s : Schedule
        The switching schedule.
    t_max : int
        Largest window length tried as a UJSC/UJQSC witness.
    window_budget : int
        Cap on window starts per length (finite traces), on the period
        (periodic schedules) and on the recurrences scanned (sparse schedules).

    Returns
    -------
    ConnectivityReport
    """
    if t_max < 1:
        raise ValueError("t_max must be at least 1")
    notes: list[tuple[str, str]] = []
    if isinstance(s, Periodic):
        ujsc = _periodic_uniform(s, is_strongly_connected, t_max, window_budget, notes, "ujsc")
        ujqsc = _periodic_uniform(s, has_spanning_tree, t_max, window_budget, notes, "ujqsc")
        return ConnectivityReport(ujsc, ujqsc, _periodic_ijc(s), tuple(notes))
    if isinstance(s, SparseRecurrent):
        ujsc = _sparse_uniform(s, is_strongly_connected, window_budget, notes, "ujsc")
        ujqsc = _sparse_uniform(s, has_spanning_tree, window_budget, notes, "ujqsc")
        return ConnectivityReport(ujsc, ujqsc, _sparse_ijc(s), tuple(notes))
    if isinstance(s, FiniteTrace):
        return _finite(s, t_max, window_budget, notes)
    raise TypeError(f"unsupported schedule type {type(s).__name__}")
