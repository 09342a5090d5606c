"""
Built-in experiments and the JSON scenario format.

Three scenarios ship with the package:

``counterexample``
    Fixed quasi-strongly connected graph on which the states never move, so
    the moduli never agree.
``unidirectional_fig6``
    Three unidirectional graphs cycled periodically; every state decays to 0.
``bidirectional_fig9``
    A bidirectional base graph interrupted at steps ``l**2`` by a second
    bidirectional graph; the states split into two camps of equal modulus.

Each builtin graph is the off-diagonal support of its weight matrix, with
``a[i, j] != 0`` read as the arc ``j -> i``.
"""

from __future__ import annotations

import copy
import json
import os
from dataclasses import dataclass, field, replace
from fractions import Fraction
from typing import Any, Mapping

import numpy as np

from . import metrics
from .dynamics import StaticProvider, Trajectory, WeightMatrix, simulate
from .kuramoto import KuramotoConfig, kuramoto_provider
from .schedule import (
    ConnectivityReport,
    FiniteTrace,
    Periodic,
    Schedule,
    SparseRecurrent,
    classify,
    squares,
)
from .signed_graph import SignedDigraph

__all__ = [
    "BUILTIN_NAMES",
    "Scenario",
    "ScenarioError",
    "RunResult",
    "builtin",
    "from_dict",
    "load",
    "run",
]

BUILTIN_NAMES = ("counterexample", "unidirectional_fig6", "bidirectional_fig9")

# Used by the nonlinear variants: x0 = (-1.5, 1, 0) must sit inside
# (-pi/2 + delta, pi/2 - delta), and mu must stay below (1 - lambda*)/n.
KURAMOTO_DELTA = 0.05
KURAMOTO_MU = 0.1


class ScenarioError(ValueError):
    """Malformed scenario description."""


@dataclass(frozen=True)
class Scenario:
    name: str
    graphs: Mapping[str, SignedDigraph]
    schedule: Schedule
    x0: tuple[float, ...]
    horizon: int
    model: str = "linear"
    matrices: Mapping[str, WeightMatrix] = field(default_factory=dict)
    lam: float | None = None
    delta: float | None = None
    mu: float | None = None
    expected: str | None = None
    source: Mapping[str, Any] = field(default_factory=dict, repr=False, compare=False)

    @property
    def n(self) -> int:
        return self.schedule.n

    def kuramoto_config(self) -> KuramotoConfig:
        return KuramotoConfig(self.n, self.delta, self.mu)

    def provider(self):
        if self.model == "kuramoto":
            cfg = self.kuramoto_config()
            cfg.check_initial(self.x0)
            return kuramoto_provider(cfg)
        by_graph = {self.graphs[name]: m for name, m in self.matrices.items()}
        lam = self.lam if self.lam is not None else _min_modulus(self.matrices.values())
        return StaticProvider(by_graph, lam)

    def to_dict(self) -> dict:
        return copy.deepcopy(dict(self.source))


def _min_modulus(ms) -> float:
    vals = [abs(v) for m in ms for v in m.a.ravel() if v != 0]
    if not vals:
        raise ScenarioError("no nonzero weights to infer lambda from")
    return min(vals)


_A = {
    "tree": [["1", "0", "0"], ["1/3", "1/3", "1/3"], ["-1/2", "0", "1/2"]],
    "G1": [[1, 0, 0], [0, 1, 0], [-0.5, 0, 0.5]],
    "G2": [[1, 0, 0], [0, 0.5, -0.5], [0, 0, 1]],
    "G3": [[0.5, 0.5, 0], [0, 1, 0], [0, 0.5, 0.5]],
    "G4": [[0.5, 0, -0.5], [0, 1, 0], [-0.5, 0, 0.5]],
    "G5": [[1, 0, 0], [0, 0.5, 0.5], [0, 0.5, 0.5]],
}


def _builtin_dict(name: str) -> dict:
    def graph_of(key):
        g = SignedDigraph.from_matrix(WeightMatrix(_A[key]).a)
        return {"arcs": [[a.source, a.target, "+" if a.sign > 0 else "-"] for a in g.arcs]}

    if name == "counterexample":
        keys = ["tree"]
        schedule = {"type": "periodic", "pattern": ["tree"], "hold": 1}
        x0, horizon, lam, expected = [1, 0, -1], 1000, "1/3", metrics.NOT_CONCLUDED
    elif name == "unidirectional_fig6":
        keys = ["G1", "G2", "G3"]
        schedule = {"type": "periodic", "pattern": keys, "hold": 1}
        x0, horizon, lam, expected = [-1.5, 1, 0], 2000, "1/2", metrics.CONSENSUS
    elif name == "bidirectional_fig9":
        keys = ["G4", "G5"]
        schedule = {"type": "sparse_recurrent", "base": "G4", "recurrent": "G5", "times": "squares"}
        x0, horizon, lam, expected = [-1.5, 1, 0], 5000, "1/2", metrics.BIPARTITE
    else:
        raise KeyError(f"unknown builtin scenario {name!r}; choose from {', '.join(BUILTIN_NAMES)}")
    return {
        "name": name,
        "n": 3,
        "graphs": {k: graph_of(k) for k in keys},
        "schedule": schedule,
        "matrices": {k: _A[k] for k in keys},
        "model": "linear",
        "lambda": lam,
        "x0": x0,
        "horizon": horizon,
        "expected": expected,
    }


def builtin(name: str, model: str = "linear") -> Scenario:
    """Load a built-in scenario.

    With ``model="kuramoto"`` the same graphs and schedule drive the
    nonlinear oscillator instead of the fixed matrices.
    """
    d = _builtin_dict(name)
    if model == "kuramoto":
        d = dict(d, model="kuramoto", delta=KURAMOTO_DELTA, mu=KURAMOTO_MU)
        d.pop("matrices")
        d.pop("lambda")
    elif model != "linear":
        raise ValueError(f"unknown model {model!r}")
    return from_dict(d)


def _need(d: Mapping, key: str, where: str = "scenario"):
    if key not in d:
        raise ScenarioError(f"{where}: missing field {key!r}")
    return d[key]


def _parse_schedule(d: Mapping, graphs: Mapping[str, SignedDigraph]) -> Schedule:
    def ref(name):
        if name not in graphs:
            raise ScenarioError(f"schedule references unknown graph {name!r}")
        return graphs[name]

    kind = _need(d, "type", "schedule")
    if kind == "periodic":
        return Periodic(tuple(ref(g) for g in _need(d, "pattern", "schedule")), int(d.get("hold", 1)))
    if kind == "finite":
        trace = d.get("trace", d.get("graphs"))
        if trace is None:
            raise ScenarioError("schedule: finite schedules need a 'trace' list")
        return FiniteTrace(tuple(ref(g) for g in trace))
    if kind == "sparse_recurrent":
        times = d.get("times", "squares")
        if times != "squares":
            raise ScenarioError(f"schedule: unsupported recurrence times {times!r}")
        return SparseRecurrent(ref(_need(d, "base", "schedule")), ref(_need(d, "recurrent", "schedule")), squares)
    raise ScenarioError(f"schedule: unknown type {kind!r}")


def from_dict(d: Mapping[str, Any]) -> Scenario:
    """Build a scenario from its JSON-shaped description."""
    try:
        n = int(_need(d, "n"))
        graphs = {}
        for gname, gd in _need(d, "graphs").items():
            graphs[gname] = SignedDigraph(n, [tuple(a) for a in _need(gd, "arcs", f"graph {gname}")], name=gname)
        schedule = _parse_schedule(_need(d, "schedule"), graphs)
        model = d.get("model", "linear")
        matrices = {}
        if model == "linear":
            for gname, rows in _need(d, "matrices").items():
                if gname not in graphs:
                    raise ScenarioError(f"matrix for unknown graph {gname!r}")
                matrices[gname] = WeightMatrix(rows, name=gname)
                if matrices[gname].n != n:
                    raise ScenarioError(f"matrix {gname!r} is not {n}x{n}")
            missing = [g.name for g in schedule.graphs() if g.name not in matrices]
            if missing:
                raise ScenarioError(f"no matrix for scheduled graphs {missing}")
        elif model == "kuramoto":
            for key in ("delta", "mu"):
                _need(d, key)
        else:
            raise ScenarioError(f"unknown model {model!r}")
        lam = d.get("lambda")
        x0 = tuple(float(v) for v in _need(d, "x0"))
        if len(x0) != n:
            raise ScenarioError(f"x0 has {len(x0)} entries, expected {n}")
        horizon = int(_need(d, "horizon"))
        if horizon < 1:
            raise ScenarioError("horizon must be at least 1")
        expected = d.get("expected")
        kinds = (metrics.CONSENSUS, metrics.BIPARTITE, metrics.MODULUS_ONLY, metrics.NOT_CONCLUDED)
        if expected is not None and expected not in kinds:
            raise ScenarioError(f"expected must be one of {kinds}, got {expected!r}")
        return Scenario(
            name=str(d.get("name", "scenario")),
            graphs=graphs,
            schedule=schedule,
            x0=x0,
            horizon=horizon,
            model=model,
            matrices=matrices,
            lam=None if lam is None else float(Fraction(str(lam))),
            delta=None if d.get("delta") is None else float(d["delta"]),
            mu=None if d.get("mu") is None else float(d["mu"]),
            expected=expected,
            source=dict(d),
        )
    except ScenarioError:
        raise
    except (ValueError, TypeError, KeyError, AttributeError, ZeroDivisionError) as exc:
        raise ScenarioError(f"invalid scenario: {exc}") from exc


def load(path: str | os.PathLike) -> Scenario:
    try:
        with open(path) as fh:
            d = json.load(fh)
    except json.JSONDecodeError as exc:
        raise ScenarioError(f"{path}: not valid JSON ({exc})") from exc
    if not isinstance(d, dict):
        raise ScenarioError(f"{path}: top level must be an object")
    return from_dict(d)


@dataclass
class RunResult:
    scenario: Scenario
    trajectory: Trajectory
    report: ConnectivityReport
    verdict: metrics.ConsensusVerdict

    @property
    def expected_match(self) -> bool | None:
        if self.scenario.expected is None:
            return None
        return self.verdict.kind == self.scenario.expected

    def to_dict(self) -> dict:
        return {
            "scenario": self.scenario.name,
            "model": self.scenario.model,
            "horizon": int(self.trajectory.steps[-1]),
            "connectivity": self.report.to_dict(),
            "verdict": self.verdict.to_dict(),
            "expected": self.scenario.expected,
            "expected_match": self.expected_match,
        }


def run(
    sc: Scenario,
    horizon: int | None = None,
    stride: int = 1,
    tolerance: float = metrics.DEFAULT_TOLERANCE,
    window: int = metrics.DEFAULT_WINDOW,
    t_max: int = 64,
    window_budget: int = 10_000,
) -> RunResult:
    """Simulate ``sc`` and classify both its schedule and its outcome.

    A verdict differing from ``sc.expected`` is flagged through
    :attr:`RunResult.expected_match`, never raised.
    """
    if horizon is not None:
        sc = replace(sc, horizon=int(horizon))
    traj = simulate(np.array(sc.x0), sc.schedule, sc.provider(), sc.horizon, record_every=stride)
    report = classify(sc.schedule, t_max=t_max, window_budget=window_budget)
    verdict = metrics.classify(traj, tolerance=tolerance, window=min(window, len(traj)))
    return RunResult(sc, traj, report, verdict)
