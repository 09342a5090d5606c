"""
Signed directed interaction graphs.

Nodes are labelled ``1..n``. An arc ``(j, i)`` means node ``i`` receives the
state of node ``j``; its sign is ``+1`` for a cooperative link and ``-1`` for
an antagonistic one. Every node is implicitly its own neighbor, so self-loops
are never stored.

Connectivity queries ignore signs entirely.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

__all__ = [
    "CONFLICT",
    "SignedArc",
    "SignedDigraph",
    "union",
    "is_strongly_connected",
    "has_spanning_tree",
    "is_bidirectional",
    "is_connected_bidirectional",
    "parse_edgelist",
    "format_edgelist",
]

#: Sign marker for an ordered pair that carried both signs inside a union.
CONFLICT = 0

_SIGN_TOKENS = {"+": 1, "-": -1, "+1": 1, "-1": -1, "1": 1}


def _coerce_sign(sign) -> int:
    if isinstance(sign, str):
        try:
            return _SIGN_TOKENS[sign.strip()]
        except KeyError:
            raise ValueError(f"bad arc sign {sign!r}") from None
    if sign in (1, -1, CONFLICT):
        return int(sign)
    raise ValueError(f"bad arc sign {sign!r}")


@dataclass(frozen=True, order=True)
class SignedArc:
    source: int
    target: int
    sign: int


class SignedDigraph:
    """Immutable signed digraph on nodes ``1..n``.

    Parameters
    ----------
    n : int
        Number of nodes.
    arcs : iterable of (source, target, sign)
        Arcs; ``sign`` may be ``+1``/``-1`` or the strings ``"+"``/``"-"``.
    name : str, optional
        Label used in reports. Not part of equality.
    """

    __slots__ = ("_n", "_signs", "_in", "_key", "name")

    def __init__(self, n: int, arcs: Iterable = (), name: str | None = None):
        if int(n) != n or n < 1:
            raise ValueError(f"node count must be a positive integer, got {n!r}")
        n = int(n)
        signs: dict[tuple[int, int], int] = {}
        for arc in arcs:
            if isinstance(arc, SignedArc):
                src, dst, sg = arc.source, arc.target, arc.sign
            else:
                src, dst, sg = arc
            src, dst, sg = int(src), int(dst), _coerce_sign(sg)
            if not (1 <= src <= n and 1 <= dst <= n):
                raise ValueError(f"arc {src}->{dst} has an endpoint outside 1..{n}")
            if src == dst:
                raise ValueError(f"self-loop at node {src}; self-neighborhood is implicit")
            if (src, dst) in signs:
                raise ValueError(f"duplicate arc {src}->{dst}")
            signs[(src, dst)] = sg
        in_nbrs: list[list[int]] = [[] for _ in range(n + 1)]
        for src, dst in sorted(signs):
            in_nbrs[dst].append(src)
        object.__setattr__(self, "_n", n)
        object.__setattr__(self, "_signs", signs)
        object.__setattr__(self, "_in", tuple(tuple(v) for v in in_nbrs))
        object.__setattr__(self, "_key", (n, frozenset(signs.items())))
        object.__setattr__(self, "name", name)

    def __setattr__(self, key, value):
        raise AttributeError("SignedDigraph is immutable")

    @classmethod
    def from_matrix(cls, a, name: str | None = None, tol: float = 0.0) -> "SignedDigraph":
        """Graph whose arcs are the nonzero off-diagonal entries of ``a``.

        Entry ``a[i, j]`` (0-based) is the weight node ``i+1`` puts on node
        ``j+1``, i.e. the arc ``(j+1) -> (i+1)``, signed like the entry.
        """
        a = np.asarray(a, dtype=float)
        n = a.shape[0]
        arcs = [
            (j + 1, i + 1, 1 if a[i, j] > 0 else -1)
            for i in range(n)
            for j in range(n)
            if i != j and abs(a[i, j]) > tol
        ]
        return cls(n, arcs, name=name)

    @property
    def n(self) -> int:
        return self._n

    @property
    def arcs(self) -> tuple[SignedArc, ...]:
        return tuple(SignedArc(s, t, g) for (s, t), g in sorted(self._signs.items()))

    def __len__(self) -> int:
        return len(self._signs)

    def __eq__(self, other):
        if not isinstance(other, SignedDigraph):
            return NotImplemented
        return self._key == other._key

    def __hash__(self):
        return hash(self._key)

    def __repr__(self):
        body = ", ".join(
            f"{a.source}->{a.target}{'+' if a.sign > 0 else '-' if a.sign < 0 else '?'}"
            for a in self.arcs
        )
        label = f"{self.name}: " if self.name else ""
        return f"SignedDigraph({label}n={self._n}, [{body}])"

    def _check_node(self, i) -> int:
        if int(i) != i or not 1 <= i <= self._n:
            raise ValueError(f"node {i!r} is not in 1..{self._n}")
        return int(i)

    def has_arc(self, source: int, target: int) -> bool:
        return (source, target) in self._signs

    def sign(self, source: int, target: int) -> int:
        """Sign of arc ``source -> target``; raises ``KeyError`` if absent."""
        return self._signs[(source, target)]

    def in_neighbors(self, i: int) -> tuple[int, ...]:
        """Sources of arcs into ``i``, ascending, without ``i`` itself."""
        return self._in[self._check_node(i)]

    def neighbors(self, i: int) -> set[int]:
        """In-neighbors of ``i`` together with ``i``."""
        i = self._check_node(i)
        return set(self._in[i]) | {i}

    def out_adjacency(self) -> list[list[int]]:
        """0-based successor lists, used by the reachability routines."""
        out: list[list[int]] = [[] for _ in range(self._n)]
        for s, t in sorted(self._signs):
            out[s - 1].append(t - 1)
        return out

    def adjacency(self) -> np.ndarray:
        """Boolean matrix ``adj[s-1, t-1]`` set for each arc ``s -> t``."""
        adj = np.zeros((self._n, self._n), dtype=bool)
        for s, t in self._signs:
            adj[s - 1, t - 1] = True
        return adj

    def with_name(self, name: str) -> "SignedDigraph":
        return SignedDigraph(self._n, self.arcs, name=name)


def union(gs: Sequence[SignedDigraph]) -> SignedDigraph:
    """Joint graph of ``gs``.

    The same ordered pair seen with both signs is kept once with sign
    :data:`CONFLICT`.
    """
    gs = list(gs)
    if not gs:
        raise ValueError("union of an empty list of graphs")
    n = gs[0].n
    signs: dict[tuple[int, int], int] = {}
    for g in gs:
        if g.n != n:
            raise ValueError(f"cannot unite graphs with n={n} and n={g.n}")
        for pair, sg in g._signs.items():
            prev = signs.get(pair)
            signs[pair] = sg if prev is None or prev == sg else CONFLICT
    return SignedDigraph(n, [(s, t, g) for (s, t), g in signs.items()])


def _reach(out: list[list[int]], root: int) -> int:
    seen = [False] * len(out)
    seen[root] = True
    queue = deque([root])
    count = 1
    while queue:
        u = queue.popleft()
        for v in out[u]:
            if not seen[v]:
                seen[v] = True
                count += 1
                queue.append(v)
    return count


def is_strongly_connected(g: SignedDigraph) -> bool:
    """True iff every node reaches every other node (signs ignored)."""
    n = g.n
    if n == 1:
        return True
    out = g.out_adjacency()
    if _reach(out, 0) < n:
        return False
    rev: list[list[int]] = [[] for _ in range(n)]
    for u, vs in enumerate(out):
        for v in vs:
            rev[v].append(u)
    return _reach(rev, 0) == n


def has_spanning_tree(g: SignedDigraph) -> bool:
    """True iff some node reaches all others, i.e. the graph is quasi-strongly connected."""
    out = g.out_adjacency()
    return any(_reach(out, r) == g.n for r in range(g.n))


def is_bidirectional(g: SignedDigraph) -> bool:
    return all(g.has_arc(t, s) for s, t in g._signs)


def is_connected_bidirectional(g: SignedDigraph) -> bool:
    """Connectivity of the undirected closure of ``g``."""
    und: list[list[int]] = [[] for _ in range(g.n)]
    for s, t in g._signs:
        und[s - 1].append(t - 1)
        und[t - 1].append(s - 1)
    return _reach(und, 0) == g.n


def parse_edgelist(text: str, name: str | None = None) -> SignedDigraph:
    """Read the ``n`` / ``from to sign`` text format.

    Blank lines and ``#`` comments are skipped.
    """
    lines = []
    for raw in text.splitlines():
        line = raw.split("#", 1)[0].strip()
        if line:
            lines.append(line)
    if not lines:
        raise ValueError("empty edge list")
    try:
        n = int(lines[0])
    except ValueError:
        raise ValueError(f"first line must be the node count, got {lines[0]!r}") from None
    arcs = []
    for lineno, line in enumerate(lines[1:], start=2):
        parts = line.split()
        if len(parts) != 3 or parts[2] not in ("+", "-"):
            raise ValueError(f"line {lineno}: expected 'from to +|-', got {line!r}")
        arcs.append((int(parts[0]), int(parts[1]), parts[2]))
    return SignedDigraph(n, arcs, name=name)


def format_edgelist(g: SignedDigraph) -> str:
    rows = [str(g.n)]
    for a in g.arcs:
        if a.sign == CONFLICT:
            raise ValueError(f"arc {a.source}->{a.target} has a conflicted sign")
        rows.append(f"{a.source} {a.target} {'+' if a.sign > 0 else '-'}")
    return "\n".join(rows) + "\n"
