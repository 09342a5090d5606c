"""
Signed-weight consensus dynamics ``x(k+1) = A(x, k) x(k)``.

A weight matrix is valid for a graph when each row's moduli sum to one, its
off-diagonal support is exactly the graph's in-arcs (with matching signs), the
diagonal is nonzero, and every nonzero entry has modulus at least ``lam``.
"""

from __future__ import annotations

import io
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Mapping, Sequence

import numpy as np

from .signed_graph import CONFLICT, SignedDigraph
from .metrics import distance_to_J
from .schedule import Schedule

__all__ = [
    "ROW_SUM_TOL",
    "WeightMatrix",
    "Violation",
    "ValidationResult",
    "validate",
    "step",
    "StaticProvider",
    "StateDependentProvider",
    "Trajectory",
    "SimulationError",
    "NumericError",
    "simulate",
]

ROW_SUM_TOL = 1e-9


def _parse_entry(v) -> float:
    if isinstance(v, str):
        return float(Fraction(v.strip()))
    return float(v)


class WeightMatrix:
    """Read-only square matrix; ``a[i, j]`` is node ``i+1``'s weight on node ``j+1``.

    Entries may be given as numbers, :class:`fractions.Fraction` or rational
    strings such as ``"1/3"``; each is converted to float exactly once.
    """

    __slots__ = ("a", "name")

    def __init__(self, entries, name: str | None = None):
        if isinstance(entries, np.ndarray):
            a = entries.astype(float, copy=True)
        else:
            a = np.array([[_parse_entry(v) for v in row] for row in entries], dtype=float)
        if a.ndim != 2 or a.shape[0] != a.shape[1]:
            raise ValueError(f"weight matrix must be square, got shape {a.shape}")
        a.setflags(write=False)
        self.a = a
        self.name = name

    @property
    def n(self) -> int:
        return self.a.shape[0]

    def row(self, i: int) -> np.ndarray:
        """Row of node ``i`` (1-based)."""
        return self.a[i - 1]

    def __eq__(self, other):
        if not isinstance(other, WeightMatrix):
            return NotImplemented
        return np.array_equal(self.a, other.a)

    __hash__ = None

    def __repr__(self):
        return f"WeightMatrix({self.a.tolist()!r})"


@dataclass(frozen=True)
class Violation:
    row: int
    condition: str
    detail: str

    def __str__(self):
        return f"row {self.row}: {self.condition} ({self.detail})"


@dataclass(frozen=True)
class ValidationResult:
    violations: tuple[Violation, ...] = ()

    @property
    def ok(self) -> bool:
        return not self.violations

    def __bool__(self):
        return self.ok

    def __str__(self):
        return "ok" if self.ok else "; ".join(map(str, self.violations))


def validate(m: WeightMatrix, g: SignedDigraph, lam: float) -> ValidationResult:
    """Check ``m`` against the standing assumption for graph ``g``.

    Never raises on bad matrices; every failed condition is reported per row.
    The lower bound ``lam`` applies to the entries on ``g``'s neighborhoods
    only, zero entries off the support are expected.
    """
    if lam <= 0:
        raise ValueError("lam must be positive")
    if m.n != g.n:
        return ValidationResult((Violation(0, "shape", f"matrix n={m.n}, graph n={g.n}"),))
    out = []
    a = m.a
    for i in range(1, g.n + 1):
        row = a[i - 1]
        if not np.all(np.isfinite(row)):
            out.append(Violation(i, "non_finite", "row has non-finite entries"))
            continue
        total = math.fsum(abs(v) for v in row)
        if abs(total - 1.0) > ROW_SUM_TOL:
            out.append(Violation(i, "row_modulus_sum", f"sum |a_ij| = {total!r}, expected 1"))
        if row[i - 1] == 0:
            out.append(Violation(i, "diagonal_zero", f"a_{i}{i} = 0"))
        expected = set(g.in_neighbors(i))
        actual = {j for j in range(1, g.n + 1) if j != i and row[j - 1] != 0}
        if actual != expected:
            out.append(
                Violation(
                    i,
                    "support_mismatch",
                    f"nonzero off-diagonal sources {sorted(actual)}, graph in-neighbors {sorted(expected)}",
                )
            )
        for j in sorted(actual & expected):
            arc_sign = g.sign(j, i)
            if arc_sign != CONFLICT and np.sign(row[j - 1]) != arc_sign:
                out.append(
                    Violation(i, "sign_mismatch", f"a_{i}{j} = {row[j - 1]!r} on arc sign {arc_sign:+d}")
                )
        small = [j for j in range(1, g.n + 1) if row[j - 1] != 0 and abs(row[j - 1]) < lam]
        if small:
            out.append(Violation(i, "below_lambda", f"|a_ij| < {lam!r} at j={small}"))
    return ValidationResult(tuple(out))


def step(x, m: WeightMatrix) -> np.ndarray:
    """One update ``x' = A x``.

    Each row is accumulated over sources in ascending order, so results are
    bit-reproducible regardless of the BLAS in use.
    """
    x = np.asarray(x, dtype=float)
    a = m.a
    if x.shape != (a.shape[0],):
        raise ValueError(f"state of shape {x.shape} does not match matrix n={a.shape[0]}")
    acc = a[:, 0] * x[0]
    for j in range(1, a.shape[1]):
        acc = acc + a[:, j] * x[j]
    return acc


@dataclass
class StaticProvider:
    """Fixed matrix per graph, looked up by graph equality."""

    matrices: Mapping[SignedDigraph, WeightMatrix]
    lam: float

    def __call__(self, x, k: int, g: SignedDigraph) -> WeightMatrix:
        try:
            return self.matrices[g]
        except KeyError:
            raise SimulationError(k, f"no weight matrix for scheduled graph {g!r}") from None


@dataclass
class StateDependentProvider:
    """Matrices built on the fly by ``rule(x, k, g)``."""

    rule: Callable[[np.ndarray, int, SignedDigraph], WeightMatrix]
    lam: float

    def __call__(self, x, k: int, g: SignedDigraph) -> WeightMatrix:
        return self.rule(x, k, g)


class SimulationError(RuntimeError):
    """Raised when a step cannot be taken; carries the offending step."""

    def __init__(self, k: int, message: str):
        super().__init__(f"step {k}: {message}")
        self.k = k


class NumericError(SimulationError):
    pass


@dataclass
class Trajectory:
    """Recorded states of one run.

    Row ``r`` of :attr:`states` is the state at step ``steps[r]``; ``M`` and
    ``dist`` hold the maximal modulus and the distance to the
    equal-modulus set at those steps.
    """

    steps: np.ndarray
    states: np.ndarray
    M: np.ndarray
    dist: np.ndarray
    stride: int = 1
    schedule: Schedule | None = field(default=None, repr=False)
    provider: object = field(default=None, repr=False)

    def __len__(self):
        return len(self.steps)

    @property
    def n(self) -> int:
        return self.states.shape[1]

    @property
    def final(self) -> np.ndarray:
        return self.states[-1]

    def write_csv(self, fh) -> None:
        """Write ``k,x_1,...,x_n,M,distJ`` rows with shortest round-trip floats."""
        header = ["k"] + [f"x_{i}" for i in range(1, self.n + 1)] + ["M", "distJ"]
        fh.write(",".join(header) + "\n")
        for k, x, mk, dk in zip(self.steps.tolist(), self.states.tolist(), self.M.tolist(), self.dist.tolist()):
            fh.write(",".join([str(k)] + [repr(v) for v in x] + [repr(mk), repr(dk)]) + "\n")

    def to_csv(self) -> str:
        buf = io.StringIO()
        self.write_csv(buf)
        return buf.getvalue()


def _validation_policy(provider, n: int, validate_every: int | None) -> int:
    if validate_every is not None:
        return validate_every
    if isinstance(provider, StaticProvider):
        return 0  # each distinct matrix is checked once instead
    return 1 if n <= 32 else 100


def simulate(
    x0: Sequence[float],
    schedule: Schedule,
    provider,
    horizon: int,
    record_every: int = 1,
    validate_every: int | None = None,
) -> Trajectory:
    """Iterate the update for ``horizon`` steps.

    Parameters
    ----------
    x0 : array_like
        Initial state, one entry per node.
    schedule : Schedule
        Graph active at each step.
    provider : StaticProvider or StateDependentProvider
        Returns the weight matrix for ``(x(k), k, graph_at(k))``.
    horizon : int
        Number of steps; the trajectory covers ``k = 0..horizon``.
    record_every : int
        Stride between recorded steps. The final step is always recorded.
    validate_every : int, optional
        Validate produced matrices every this many steps (0 disables). By
        default static matrices are validated once each, state-dependent ones
        every step for ``n <= 32`` and every 100 steps above.

    Raises
    ------
    SimulationError
        If a matrix is missing or fails validation at some step.
    NumericError
        If the state becomes non-finite.
    """
    x = np.array(x0, dtype=float)
    n = schedule.n
    if x.shape != (n,):
        raise ValueError(f"initial state has shape {x.shape}, schedule has n={n}")
    if not np.all(np.isfinite(x)):
        raise NumericError(0, "initial state is not finite")
    if horizon < 1:
        raise ValueError("horizon must be at least 1")
    if record_every < 1:
        raise ValueError("record_every must be at least 1")
    lam = provider.lam
    every = _validation_policy(provider, n, validate_every)
    checked: set[tuple[int, int]] = set()

    steps, states = [0], [x.copy()]
    for k in range(horizon):
        g = schedule.graph_at(k)
        m = provider(x, k, g)
        if isinstance(provider, StaticProvider) and every == 0:
            key = (id(g), id(m))
            if key not in checked:
                res = validate(m, g, lam)
                if not res:
                    raise SimulationError(k, f"invalid weight matrix for graph {g.name or g!r}: {res}")
                checked.add(key)
        elif every and k % every == 0:
            res = validate(m, g, lam)
            if not res:
                raise SimulationError(k, f"invalid weight matrix: {res}")
        x = step(x, m)
        if not np.all(np.isfinite(x)):
            raise NumericError(k + 1, "state became non-finite")
        if (k + 1) % record_every == 0 or k + 1 == horizon:
            steps.append(k + 1)
            states.append(x)

    st = np.vstack(states)
    return Trajectory(
        steps=np.array(steps, dtype=np.int64),
        states=st,
        M=np.abs(st).max(axis=1),
        dist=np.atleast_1d(distance_to_J(st)),
        stride=record_every,
        schedule=schedule,
        provider=provider,
    )
