"""Domain types for fractional repetition (FR) codes.

An FR code ``(n, theta, d, rho)`` places ``theta`` packets on ``n`` nodes so
that every node stores ``d`` packets and every packet is stored on ``rho``
nodes.  It is held either as a set system (:class:`FRCode`) or as its binary
node-packet incidence matrix (:class:`IncidenceMatrix`).  Packets are numbered
from 1, nodes are numbered from 1.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from itertools import combinations
from typing import Iterable, Sequence

from .errors import DimensionMismatch, InvalidCode

__all__ = [
    "FRParams",
    "DSSParams",
    "IncidenceMatrix",
    "FRCode",
    "Violation",
    "ValidationReport",
    "params_consistent",
    "validate",
    "matrix_to_code",
    "code_to_matrix",
    "transpose_dual",
    "intersection_profile",
    "code_to_json",
    "code_from_json",
]


def _positive_int(name: str, value) -> None:
    if isinstance(value, bool) or not isinstance(value, int) or value < 1:
        raise ValueError(f"{name} must be a positive integer, got {value!r}")


def params_consistent(n: int, d: int, rho: int, theta: int) -> bool:
    """True iff ``n*d == rho*theta`` and the line sums are feasible."""
    return n * d == rho * theta and d <= theta and rho <= n


@dataclass(frozen=True, order=True)
class FRParams:
    n: int
    theta: int
    d: int
    rho: int

    def __post_init__(self):
        for name in ("n", "theta", "d", "rho"):
            _positive_int(name, getattr(self, name))

    @property
    def consistent(self) -> bool:
        return params_consistent(self.n, self.d, self.rho, self.theta)

    def dual(self) -> "FRParams":
        return FRParams(n=self.theta, theta=self.n, d=self.rho, rho=self.d)

    def as_tuple(self) -> tuple[int, int, int, int]:
        return (self.n, self.theta, self.d, self.rho)

    def __str__(self) -> str:
        return f"({self.n}, {self.theta}, {self.d}, {self.rho})"


@dataclass(frozen=True)
class DSSParams:
    """Storage-system metadata carried alongside a code.

    Only the FR/MBR operating point is modelled: one packet per helper
    (``beta == 1``) and ``alpha == d``.
    """

    k: int
    alpha: int
    beta: int = 1
    B: int | None = None

    def check(self, params: FRParams) -> list[str]:
        problems = []
        if self.beta != 1:
            problems.append(f"beta={self.beta}, expected 1")
        if self.alpha != params.d:
            problems.append(f"alpha={self.alpha}, expected d={params.d}")
        if not self.k < params.n:
            problems.append(f"k={self.k} must be < n={params.n}")
        return problems


@dataclass(frozen=True)
class IncidenceMatrix:
    """Binary ``n x theta`` matrix, rows are nodes and columns packets."""

    cells: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        cells = tuple(tuple(int(v) for v in row) for row in self.cells)
        if not cells or not cells[0]:
            raise InvalidCode("incidence matrix must have at least one row and column")
        width = len(cells[0])
        for i, row in enumerate(cells, 1):
            if len(row) != width:
                raise InvalidCode(f"row {i} has {len(row)} cells, expected {width}")
            if any(v not in (0, 1) for v in row):
                raise InvalidCode(f"row {i} contains a non-binary cell")
        object.__setattr__(self, "cells", cells)

    @classmethod
    def from_rows(cls, rows: Iterable[Iterable[int]]) -> "IncidenceMatrix":
        return cls(tuple(tuple(r) for r in rows))

    @classmethod
    def from_text(cls, text: str) -> "IncidenceMatrix":
        lines = [ln.strip() for ln in text.strip().splitlines() if ln.strip()]
        for ln in lines:
            if set(ln) - {"0", "1"}:
                raise InvalidCode(f"matrix text line {ln!r} is not a 0/1 string")
        return cls(tuple(tuple(int(ch) for ch in ln) for ln in lines))

    @property
    def rows(self) -> int:
        return len(self.cells)

    @property
    def cols(self) -> int:
        return len(self.cells[0])

    @property
    def shape(self) -> tuple[int, int]:
        return (self.rows, self.cols)

    def row_sums(self) -> list[int]:
        return [sum(r) for r in self.cells]

    def col_sums(self) -> list[int]:
        return [sum(c) for c in zip(*self.cells)]

    def transpose(self) -> "IncidenceMatrix":
        return IncidenceMatrix(tuple(zip(*self.cells)))

    def permuted(self, row_perm: Sequence[int], col_perm: Sequence[int]) -> "IncidenceMatrix":
        """Matrix whose row ``i`` is original row ``row_perm[i]`` (0-based), same for columns."""
        return IncidenceMatrix(
            tuple(tuple(self.cells[r][c] for c in col_perm) for r in row_perm)
        )

    def to_text(self) -> str:
        return "".join("".join(map(str, row)) + "\n" for row in self.cells)

    def __str__(self) -> str:
        return self.to_text()


@dataclass(frozen=True)
class Violation:
    kind: str  # row-weight | column-weight | parameter-arithmetic | index-range
    location: str
    observed: int | str
    expected: int | str


@dataclass(frozen=True)
class ValidationReport:
    violations: tuple[Violation, ...] = ()

    @property
    def valid(self) -> bool:
        return not self.violations

    def __bool__(self) -> bool:
        return self.valid

    def count(self, kind: str) -> int:
        return sum(1 for v in self.violations if v.kind == kind)

    def summary(self) -> str:
        if self.valid:
            return "valid"
        return "; ".join(
            f"{v.kind} at {v.location}: observed {v.observed}, expected {v.expected}"
            for v in self.violations
        )


def validate(matrix: IncidenceMatrix, params: FRParams) -> ValidationReport:
    """Check every row sum against ``d`` and every column sum against ``rho``.

    All violations are collected.  A shape mismatch raises
    :class:`DimensionMismatch` instead of producing a report.
    """
    if matrix.shape != (params.n, params.theta):
        raise DimensionMismatch(
            f"matrix is {matrix.rows}x{matrix.cols}, params need {params.n}x{params.theta}"
        )
    out: list[Violation] = []
    if params.n * params.d != params.rho * params.theta:
        out.append(Violation(
            "parameter-arithmetic", "n*d vs rho*theta",
            params.n * params.d, params.rho * params.theta,
        ))
    for i, s in enumerate(matrix.row_sums(), 1):
        if s != params.d:
            out.append(Violation("row-weight", f"row {i}", s, params.d))
    for j, s in enumerate(matrix.col_sums(), 1):
        if s != params.rho:
            out.append(Violation("column-weight", f"column {j}", s, params.rho))
    return ValidationReport(tuple(out))


@dataclass(frozen=True)
class FRCode:
    """Set-system view: ``nodes[i]`` is the sorted packet set of node ``i+1``."""

    params: FRParams
    nodes: tuple[tuple[int, ...], ...]
    provenance: str = field(default="", compare=False)

    def __post_init__(self):
        nodes = tuple(tuple(sorted(set(u))) for u in self.nodes)
        object.__setattr__(self, "nodes", nodes)
        report = _check_sets(self.params, nodes, raw=self.nodes)
        if not report.valid:
            raise InvalidCode(f"not an FR code {self.params}: {report.summary()}")

    @property
    def n(self) -> int:
        return self.params.n

    @property
    def theta(self) -> int:
        return self.params.theta

    @property
    def d(self) -> int:
        return self.params.d

    @property
    def rho(self) -> int:
        return self.params.rho

    def holders(self, packet: int) -> list[int]:
        """1-based node indices storing ``packet``."""
        return [i for i, u in enumerate(self.nodes, 1) if packet in u]

    def with_provenance(self, provenance: str) -> "FRCode":
        return FRCode(self.params, self.nodes, provenance)


def _check_sets(params: FRParams, nodes, raw=None) -> ValidationReport:
    out: list[Violation] = []
    if params.n * params.d != params.rho * params.theta:
        out.append(Violation(
            "parameter-arithmetic", "n*d vs rho*theta",
            params.n * params.d, params.rho * params.theta,
        ))
    if len(nodes) != params.n:
        out.append(Violation("row-weight", "node count", len(nodes), params.n))
    if raw is not None:
        for i, u in enumerate(raw, 1):
            if len(u) != len(set(u)):
                out.append(Violation("index-range", f"node {i}", "duplicate packet", "distinct"))
    counts = [0] * (params.theta + 1)
    for i, u in enumerate(nodes, 1):
        if len(u) != params.d:
            out.append(Violation("row-weight", f"node {i}", len(u), params.d))
        for p in u:
            if isinstance(p, bool) or not isinstance(p, int) or not 1 <= p <= params.theta:
                out.append(Violation("index-range", f"node {i}", p, f"1..{params.theta}"))
            else:
                counts[p] += 1
    for p in range(1, params.theta + 1):
        if counts[p] != params.rho:
            out.append(Violation("column-weight", f"packet {p}", counts[p], params.rho))
    return ValidationReport(tuple(out))


def matrix_to_code(matrix: IncidenceMatrix, params: FRParams | None = None,
                   provenance: str = "") -> FRCode:
    """Read off node packet sets.  ``params`` defaults to the matrix's own line sums."""
    if params is None:
        params = infer_params(matrix)
    report = validate(matrix, params)
    if not report.valid:
        raise InvalidCode(f"matrix is not an FR code {params}: {report.summary()}")
    nodes = tuple(tuple(j for j, v in enumerate(row, 1) if v) for row in matrix.cells)
    return FRCode(params, nodes, provenance)


def infer_params(matrix: IncidenceMatrix) -> FRParams:
    """Parameters implied by a matrix with constant line sums."""
    rs, cs = set(matrix.row_sums()), set(matrix.col_sums())
    if len(rs) != 1 or len(cs) != 1:
        raise InvalidCode("matrix does not have constant row and column sums")
    d, rho = rs.pop(), cs.pop()
    if d == 0 or rho == 0:
        raise InvalidCode("zero row or column weight")
    return FRParams(n=matrix.rows, theta=matrix.cols, d=d, rho=rho)


def code_to_matrix(code: FRCode) -> IncidenceMatrix:
    rows = []
    for u in code.nodes:
        row = [0] * code.theta
        for p in u:
            row[p - 1] = 1
        rows.append(tuple(row))
    return IncidenceMatrix(tuple(rows))


def transpose_dual(code: FRCode) -> FRCode:
    """Swap the roles of nodes and packets: dual node ``i`` holds the nodes storing packet ``i``."""
    dual_nodes = [[] for _ in range(code.theta)]
    for node, u in enumerate(code.nodes, 1):
        for p in u:
            dual_nodes[p - 1].append(node)
    prov = f"dual({code.provenance})" if code.provenance else "dual"
    return FRCode(code.params.dual(), tuple(tuple(u) for u in dual_nodes), prov)


def intersection_profile(code: FRCode) -> tuple[int, ...]:
    """Sorted sizes of ``U_i & U_j`` over all node pairs ``i < j``."""
    sets = [frozenset(u) for u in code.nodes]
    return tuple(sorted(len(a & b) for a, b in combinations(sets, 2)))


def code_to_json(code: FRCode, **extra) -> dict:
    obj = {
        "n": code.n,
        "theta": code.theta,
        "d": code.d,
        "rho": code.rho,
        "nodes": [list(u) for u in code.nodes],
        "provenance": code.provenance,
    }
    obj.update(extra)
    return obj


def code_from_json(obj: dict | str) -> FRCode:
    if isinstance(obj, str):
        obj = json.loads(obj)
    try:
        params = FRParams(n=obj["n"], theta=obj["theta"], d=obj["d"], rho=obj["rho"])
        nodes = tuple(tuple(u) for u in obj["nodes"])
    except (KeyError, TypeError) as exc:
        raise InvalidCode(f"malformed FR code JSON: {exc}") from exc
    return FRCode(params, nodes, obj.get("provenance", ""))
