"""Deterministic constructions of FR codes and of the regular graphs behind them.

``fill_incidence`` fills an ``n x theta`` node-packet matrix row by row.
The remaining builders produce ``d``-regular graphs (or their adjacency
matrices); a ``d``-regular graph gives a ``rho = 2`` code by storing each edge
on its two endpoints, and a symmetric adjacency matrix can itself be read as an
``(n, n, d, d)`` incidence matrix.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Iterable

from .core import FRCode, FRParams, IncidenceMatrix, params_consistent
from .errors import (
    ConstructionStalled,
    InvalidCode,
    IterationBoundExceeded,
    NotCompletable,
)

__all__ = [
    "RegularGraph",
    "fill_incidence",
    "build_regular_graph_split",
    "adjacency_fill_transpose",
    "adjacency_fill_symmetric",
    "graph_to_fr",
    "adjacency_as_incidence",
    "adjacency_to_graph",
    "circulant_graph",
    "build_graph",
    "GRAPH_METHODS",
]


@dataclass(frozen=True)
class RegularGraph:
    """Simple undirected graph on vertices ``1..n``; edges stored as ``(a, b)`` with ``a < b``."""

    n: int
    edges: frozenset[tuple[int, int]]

    def __post_init__(self):
        norm = set()
        for e in self.edges:
            a, b = e
            if a == b:
                raise InvalidCode(f"self-loop at vertex {a}")
            if not (1 <= a <= self.n and 1 <= b <= self.n):
                raise InvalidCode(f"edge {e} outside vertices 1..{self.n}")
            norm.add((min(a, b), max(a, b)))
        object.__setattr__(self, "edges", frozenset(norm))

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[tuple[int, int]]) -> "RegularGraph":
        edges = list(edges)
        seen = set()
        for a, b in edges:
            key = (min(a, b), max(a, b))
            if key in seen:
                raise InvalidCode(f"duplicate edge {key}")
            seen.add(key)
        return cls(n, frozenset(seen))

    def sorted_edges(self) -> list[tuple[int, int]]:
        return sorted(self.edges)

    def degrees(self) -> list[int]:
        deg = [0] * (self.n + 1)
        for a, b in self.edges:
            deg[a] += 1
            deg[b] += 1
        return deg[1:]

    def degree(self) -> int | None:
        """Common vertex degree, or ``None`` if the graph is not regular."""
        degs = set(self.degrees())
        return degs.pop() if len(degs) == 1 else None

    def is_regular(self, d: int | None = None) -> bool:
        deg = self.degree()
        return deg is not None and (d is None or deg == d)

    def adjacency(self) -> tuple[tuple[int, ...], ...]:
        a = [[0] * self.n for _ in range(self.n)]
        for u, v in self.edges:
            a[u - 1][v - 1] = a[v - 1][u - 1] = 1
        return tuple(tuple(r) for r in a)

    def to_dot(self, name: str = "G") -> str:
        lines = [f"graph {name} {{"]
        lines += [f"  v{v};" for v in range(1, self.n + 1)]
        lines += [f"  v{a} -- v{b};" for a, b in self.sorted_edges()]
        lines.append("}")
        return "\n".join(lines) + "\n"


# -- incidence fill ---------------------------------------------------------

def fill_incidence(params: FRParams, max_placements: int | None = None) -> IncidenceMatrix:
    """Fill the node-packet matrix for ``params`` row by row.

    Row 1 takes packets ``1..d``.  Every later row repeatedly

    * takes the first column ``j`` that is not full and not yet used by
      the row,
    * then, looking at the columns right of ``j``: if their weights differ,
      fills them lightest first (ties by index), stopping once the row is
      full or column ``theta`` was just used; if the weights are all equal,
      finds the topmost earlier row holding ``j`` and places one 1 at the
      first column right of ``j`` where that row has a 0.

    The result is a deterministic function of ``params``.
    """
    n, theta, d, rho = params.n, params.theta, params.d, params.rho
    if not params_consistent(n, d, rho, theta):
        raise ValueError(f"inconsistent parameters {params}")
    bound = n * theta * d if max_placements is None else max_placements

    m = [[0] * theta for _ in range(n)]
    w = [0] * theta
    for c in range(d):
        m[0][c] = 1
        w[c] = 1
    placements = d
    first_open = 0  # column weights only grow, so nothing left of this is open

    def snapshot():
        return IncidenceMatrix(tuple(tuple(r) for r in m))

    for r in range(1, n):
        row = m[r]
        rw = 0

        def place(c):
            nonlocal rw, placements
            row[c] = 1
            w[c] += 1
            rw += 1
            placements += 1
            if placements > bound:
                raise IterationBoundExceeded(
                    f"more than {bound} placements for {params}", partial=snapshot()
                )

        while rw < d:
            while first_open < theta and w[first_open] >= rho:
                first_open += 1
            j = next((c for c in range(first_open, theta) if w[c] < rho and not row[c]), None)
            if j is None:
                raise ConstructionStalled(
                    f"row {r + 1} of {params}: no open column (weight {rw}/{d})",
                    partial=snapshot(), row=r + 1, step=2,
                )
            place(j)
            if rw == d or j == theta - 1:
                continue

            rest = range(j + 1, theta)
            snap = [w[c] for c in rest]
            if min(snap) != max(snap):
                for c in sorted(rest, key=lambda c: (w[c], c)):
                    if w[c] >= rho or row[c]:
                        continue
                    place(c)
                    if rw == d or c == theta - 1:
                        break
                continue

            ref = next((q for q in range(r) if m[q][j]), None)
            target = None
            if ref is not None:
                target = next(
                    (c for c in rest if not m[ref][c] and not row[c] and w[c] < rho), None
                )
            if target is None:
                eligible = [c for c in rest if not row[c] and w[c] < rho]
                if eligible:
                    target = min(eligible, key=lambda c: (w[c], c))
            if target is not None:
                place(target)

    return snapshot()


# -- regular graphs ---------------------------------------------------------

class _GraphBuilder:
    def __init__(self, n: int, d: int):
        self.n, self.d = n, d
        self.adj: list[set[int]] = [set() for _ in range(n + 1)]

    def deg(self, v: int) -> int:
        return len(self.adj[v])

    def has(self, a: int, b: int) -> bool:
        return b in self.adj[a]

    def add(self, a: int, b: int) -> None:
        self.adj[a].add(b)
        self.adj[b].add(a)

    def remove(self, a: int, b: int) -> None:
        self.adj[a].discard(b)
        self.adj[b].discard(a)

    def can_add(self, a: int, b: int) -> bool:
        return a != b and not self.has(a, b) and self.deg(a) < self.d and self.deg(b) < self.d

    def graph(self) -> RegularGraph:
        edges = {(a, b) for a in range(1, self.n + 1) for b in self.adj[a] if a < b}
        return RegularGraph(self.n, frozenset(edges))


def _cycle(b: _GraphBuilder, verts: list[int]) -> None:
    if len(verts) == 2:
        if b.can_add(*verts):
            b.add(*verts)
    elif len(verts) >= 3:
        for x, y in zip(verts, verts[1:] + verts[:1]):
            if b.can_add(x, y):
                b.add(x, y)


def _repair(b: _GraphBuilder) -> None:
    """Raise every vertex to degree ``d`` by adding edges, or by one edge swap when stuck."""
    while True:
        deficient = sorted(
            (v for v in range(1, b.n + 1) if b.deg(v) < b.d), key=lambda v: (b.deg(v), v)
        )
        if not deficient:
            return
        pair = next(((x, y) for x, y in combinations(deficient, 2) if not b.has(x, y)), None)
        if pair is not None:
            b.add(*pair)
            continue
        if not _swap(b, deficient):
            raise NotCompletable(
                f"cannot complete a {b.d}-regular graph on {b.n} vertices; "
                f"deficient vertices {deficient}",
                row=deficient[0],
            )


def _swap(b: _GraphBuilder, deficient: list[int]) -> bool:
    # remove {a, c}, add {a, x} and {c, y}; x == y allowed when x lacks two edges
    options = [(x, y) for x, y in combinations(deficient, 2)]
    options += [(x, x) for x in deficient if b.d - b.deg(x) >= 2]
    for x, y in options:
        for a in range(1, b.n + 1):
            if a in (x, y) or b.has(a, x):
                continue
            for c in sorted(b.adj[a]):
                if c in (x, y) or b.has(c, y) or (x == y and c == a):
                    continue
                b.remove(a, c)
                b.add(a, x)
                b.add(c, y)
                return True
    return False


def build_regular_graph_split(n: int, d: int) -> RegularGraph:
    """``d``-regular graph from two cycles joined by cross edges.

    Vertices ``1..n//2`` form one cycle and the rest another.  Each vertex
    aims for ``ceil(d/2)`` neighbours on its own side and ``floor(d/2)``
    across; cross edges go out round-robin, intra-side chords join the
    lowest-degree non-adjacent pairs, and any leftover deficit is repaired by
    pairing deficient vertices or a single edge swap.
    """
    if (n * d) % 2 or not 2 <= d < n - 1:
        raise ValueError(f"split-cycle construction needs n*d even and 2 <= d < n-1, got n={n}, d={d}")
    b = _GraphBuilder(n, d)
    left = list(range(1, n // 2 + 1))
    right = list(range(n // 2 + 1, n + 1))
    side = {v: 0 for v in left} | {v: 1 for v in right}
    cross_target, intra_target = d // 2, (d + 1) // 2

    _cycle(b, left)
    _cycle(b, right)
    if n % 2:
        chord = next(((x, y) for x, y in combinations(right, 2) if b.can_add(x, y)), None)
        if chord:
            b.add(*chord)

    def cross_deg(v):
        return sum(1 for u in b.adj[v] if side[u] != side[v])

    def intra_deg(v):
        return sum(1 for u in b.adj[v] if side[u] == side[v])

    for t in range(len(right)):
        if all(cross_deg(u) >= cross_target or b.deg(u) >= d for u in left):
            break
        for i, u in enumerate(left):
            v = right[(i + t) % len(right)]
            if cross_deg(u) < cross_target and cross_deg(v) < cross_target and b.can_add(u, v):
                b.add(u, v)

    for verts in (left, right):
        while True:
            cand = sorted(
                (v for v in verts if intra_deg(v) < intra_target and b.deg(v) < d),
                key=lambda v: (intra_deg(v), v),
            )
            pair = next(((x, y) for x, y in combinations(cand, 2) if b.can_add(x, y)), None)
            if pair is None:
                break
            b.add(*pair)

    _repair(b)
    return b.graph()


def circulant_graph(n: int, d: int) -> RegularGraph:
    """Join each vertex to offsets ``1..d//2`` around the cycle, plus the diameter when ``d`` is odd."""
    if (n * d) % 2 or not 1 <= d < n:
        raise ValueError(f"circulant graph needs n*d even and 1 <= d < n, got n={n}, d={d}")
    edges = set()
    for v in range(n):
        for off in range(1, d // 2 + 1):
            a, c = v + 1, (v + off) % n + 1
            edges.add((min(a, c), max(a, c)))
        if d % 2:
            a, c = v + 1, (v + n // 2) % n + 1
            edges.add((min(a, c), max(a, c)))
    return RegularGraph(n, frozenset(edges))


# -- adjacency fills --------------------------------------------------------

def _check_adj_args(n: int, d: int) -> None:
    if not 1 <= d < n:
        raise ValueError(f"adjacency fill needs 1 <= d < n, got n={n}, d={d}")


def adjacency_fill_transpose(n: int, d: int) -> tuple[tuple[int, ...], ...]:
    """Row ``i`` inherits column ``i`` from the rows above, then fills right to left up to weight ``d``."""
    _check_adj_args(n, d)
    a = [[0] * n for _ in range(n)]
    for j in range(1, d + 1):
        a[0][j] = a[j][0] = 1
    for i in range(1, n):
        row = a[i]
        weight = sum(row)
        if weight > d:
            raise NotCompletable(f"row {i + 1} inherits weight {weight} > {d}", row=i + 1)
        for j in range(n - 1, -1, -1):
            if weight == d:
                break
            if j != i and not row[j]:
                row[j] = 1
                weight += 1
        if weight < d:
            raise NotCompletable(f"row {i + 1} reaches only weight {weight} < {d}", row=i + 1)
        for j in range(n):
            a[j][i] = row[j]
    # right-to-left fills may land left of the diagonal and overfill a finished row
    over = next((i for i in range(n) if sum(a[i]) != d), None)
    if over is not None:
        raise NotCompletable(f"row {over + 1} ends with weight {sum(a[over])} != {d}", row=over + 1)
    return tuple(tuple(r) for r in a)


def adjacency_fill_symmetric(n: int, d: int) -> tuple[tuple[int, ...], ...]:
    """Sweep rows top-down and columns right-to-left, adding symmetric pairs while both rows lack weight."""
    _check_adj_args(n, d)
    a = [[0] * n for _ in range(n)]
    w = [0] * n
    for i in range(n):
        for j in range(n - 1, -1, -1):
            if i != j and not a[i][j] and w[i] < d and w[j] < d:
                a[i][j] = a[j][i] = 1
                w[i] += 1
                w[j] += 1
    short = [i + 1 for i in range(n) if w[i] < d]
    if short:
        raise NotCompletable(
            f"rows {short} end below weight {d} (first ends at {w[short[0] - 1]})", row=short[0]
        )
    return tuple(tuple(r) for r in a)


def _check_adjacency(a) -> int:
    n = len(a)
    if any(len(r) != n for r in a):
        raise InvalidCode("adjacency matrix is not square")
    for i in range(n):
        if a[i][i]:
            raise InvalidCode(f"nonzero diagonal at {i + 1}")
        for j in range(i + 1, n):
            if a[i][j] != a[j][i]:
                raise InvalidCode(f"asymmetric at ({i + 1}, {j + 1})")
    sums = {sum(r) for r in a}
    if len(sums) != 1:
        raise InvalidCode("adjacency rows have unequal weight")
    return sums.pop()


def adjacency_to_graph(a) -> RegularGraph:
    _check_adjacency(a)
    n = len(a)
    return RegularGraph(n, frozenset(
        (i + 1, j + 1) for i in range(n) for j in range(i + 1, n) if a[i][j]
    ))


def adjacency_as_incidence(a, d: int | None = None, provenance: str = "adjacency") -> FRCode:
    """Read a symmetric ``d``-regular adjacency matrix directly as an ``(n, n, d, d)`` code."""
    weight = _check_adjacency(a)
    if d is not None and weight != d:
        raise InvalidCode(f"adjacency rows have weight {weight}, expected {d}")
    if weight == 0:
        raise InvalidCode("empty adjacency matrix")
    n = len(a)
    nodes = tuple(tuple(j + 1 for j in range(n) if a[i][j]) for i in range(n))
    return FRCode(FRParams(n=n, theta=n, d=weight, rho=weight), nodes, provenance)


def graph_to_fr(graph: RegularGraph, provenance: str = "graph") -> FRCode:
    """Edges become packets (numbered in lexicographic edge order), stored on both endpoints."""
    d = graph.degree()
    if d is None or d == 0:
        raise InvalidCode("graph is not regular of positive degree")
    edges = graph.sorted_edges()
    nodes = [[] for _ in range(graph.n)]
    for p, (a, b) in enumerate(edges, 1):
        nodes[a - 1].append(p)
        nodes[b - 1].append(p)
    params = FRParams(n=graph.n, theta=len(edges), d=d, rho=2)
    return FRCode(params, tuple(tuple(u) for u in nodes), provenance)


GRAPH_METHODS = {
    "split-cycle": build_regular_graph_split,
    "adj3": lambda n, d: adjacency_to_graph(adjacency_fill_transpose(n, d)),
    "adj4": lambda n, d: adjacency_to_graph(adjacency_fill_symmetric(n, d)),
    "circulant": circulant_graph,
}


def build_graph(method: str, n: int, d: int) -> RegularGraph:
    try:
        builder = GRAPH_METHODS[method]
    except KeyError:
        raise ValueError(f"unknown graph method {method!r}") from None
    return builder(n, d)
