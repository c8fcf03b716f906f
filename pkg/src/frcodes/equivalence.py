"""Equivalence of FR codes under renaming of nodes and packets.

Two codes are equivalent when one incidence matrix is a row and column
permutation of the other.  :func:`canonical_form` picks the
lexicographically smallest matrix in that orbit (rows concatenated, first row
most significant), so equal canonical forms decide equivalence.
"""

from __future__ import annotations

import hashlib
import math
import random
from collections import Counter
from dataclasses import dataclass
from itertools import permutations

from .core import (
    FRCode,
    FRParams,
    IncidenceMatrix,
    code_to_matrix,
    intersection_profile,
    transpose_dual,
)
from .errors import SearchBudgetExceeded, SizeTooLarge

__all__ = [
    "Fingerprint",
    "invariant_fingerprint",
    "canonical_form",
    "canonical_digest",
    "matrix_digest",
    "are_equivalent",
    "brute_force_equivalent",
    "shuffle_code",
    "DEFAULT_BUDGET",
    "DEFAULT_BRUTE_BOUND",
]

DEFAULT_BUDGET = 10**7
DEFAULT_BRUTE_BOUND = math.factorial(6) ** 2


@dataclass(frozen=True)
class Fingerprint:
    params: FRParams
    pair_profile: tuple[int, ...]
    column_profile: tuple[int, ...]


def invariant_fingerprint(code: FRCode) -> Fingerprint:
    return Fingerprint(
        params=code.params,
        pair_profile=intersection_profile(code),
        column_profile=intersection_profile(transpose_dual(code)),
    )


def _as_matrix(obj) -> IncidenceMatrix:
    return code_to_matrix(obj) if isinstance(obj, FRCode) else obj


class _Canonizer:
    """Depth-first search over row orders.

    For a fixed row order the best column order is the columns sorted by
    their top-down bit strings, so the search only branches on which row
    comes next.  The top ``k`` rows of the result depend only on the first
    ``k`` rows chosen, which gives the bound.  Row automorphisms found when a
    leaf repeats the best matrix prune symmetric siblings.
    """

    def __init__(self, matrix: IncidenceMatrix, budget: int):
        self.n, self.theta = matrix.shape
        self.rows = matrix.cells
        self.budget = budget
        self.nodes = 0
        self.best: list[int] | None = None
        self.best_order: list[int] | None = None
        self.generators: list[tuple[int, ...]] = []

    def _encode(self, r: int, cells: list[list[int]]) -> int:
        row = self.rows[r]
        val = 0
        for cell in cells:
            ones = sum(row[c] for c in cell)
            val = (val << len(cell)) | ((1 << ones) - 1)
        return val

    def _split(self, r: int, cells: list[list[int]]) -> list[list[int]]:
        row = self.rows[r]
        out = []
        for cell in cells:
            zeros = [c for c in cell if not row[c]]
            ones = [c for c in cell if row[c]]
            if zeros:
                out.append(zeros)
            if ones:
                out.append(ones)
        return out

    def _orbit(self, seeds: list[int], fixed: list[int]) -> set[int]:
        gens = [g for g in self.generators if all(g[p] == p for p in fixed)]
        orbit, stack = set(seeds), list(seeds)
        while stack:
            x = stack.pop()
            for g in gens:
                y = g[x]
                if y not in orbit:
                    orbit.add(y)
                    stack.append(y)
        return orbit

    def run(self) -> IncidenceMatrix:
        self._search([], [], [list(range(self.theta))], list(range(self.n)))
        return self._to_matrix(self.best)

    def _to_matrix(self, vals: list[int]) -> IncidenceMatrix:
        width = self.theta
        return IncidenceMatrix(tuple(
            tuple((v >> (width - 1 - c)) & 1 for c in range(width)) for v in vals
        ))

    def _search(self, prefix, order, cells, remaining) -> int:
        """Returns the depth to unwind to; ``len(order)`` or more means carry on."""
        self.nodes += 1
        if self.nodes > self.budget:
            partial = self._to_matrix(self.best) if self.best is not None else None
            raise SearchBudgetExceeded(
                f"canonical form search exceeded {self.budget} nodes", partial_best=partial
            )
        k = len(order)
        if self.best is not None and prefix > self.best[:k]:
            return k
        if not remaining:
            return self._leaf(prefix, order)

        vals = {r: self._encode(r, cells) for r in remaining}
        low = min(vals.values())
        if self.best is not None and prefix == self.best[:k] and low > self.best[k]:
            return k
        ties = [r for r in remaining if vals[r] == low]
        explored: list[int] = []
        for r in ties:
            if explored and r in self._orbit(explored, order):
                continue
            explored.append(r)
            jump = self._search(
                prefix + [low], order + [r], self._split(r, cells),
                [x for x in remaining if x != r],
            )
            if jump < k:
                return jump
        return k

    def _leaf(self, prefix, order) -> int:
        k = len(order)
        if self.best is None or prefix < self.best:
            self.best, self.best_order = list(prefix), list(order)
            return k
        # equal leaf: order relabels best_order, an automorphism of the rows
        g = [0] * self.n
        for a, b in zip(self.best_order, order):
            g[a] = b
        g = tuple(g)
        if any(i != x for i, x in enumerate(g)) and g not in self.generators:
            self.generators.append(g)
        # the subtree we diverged into is the image of the one holding best
        div = next(i for i, (a, b) in enumerate(zip(self.best_order, order)) if a != b)
        return div


def canonical_form(code, budget: int = DEFAULT_BUDGET) -> IncidenceMatrix:
    """Lexicographically smallest row/column permutation of the incidence matrix."""
    return _Canonizer(_as_matrix(code), budget).run()


def matrix_digest(matrix: IncidenceMatrix) -> str:
    """SHA-256 hex digest of the matrix text format."""
    return hashlib.sha256(matrix.to_text().encode()).hexdigest()


def canonical_digest(code, budget: int = DEFAULT_BUDGET) -> str:
    return matrix_digest(canonical_form(code, budget))


def are_equivalent(c1: FRCode, c2: FRCode, budget: int = DEFAULT_BUDGET) -> bool:
    if c1.params != c2.params:
        return False
    if invariant_fingerprint(c1) != invariant_fingerprint(c2):
        return False
    return canonical_form(c1, budget) == canonical_form(c2, budget)


def brute_force_equivalent(c1, c2, bound: int = DEFAULT_BRUTE_BOUND) -> bool:
    """Exhaustive check: try every row order of ``c1`` and compare column multisets with ``c2``."""
    m1, m2 = _as_matrix(c1), _as_matrix(c2)
    if m1.shape != m2.shape:
        return False
    n, theta = m1.shape
    if math.factorial(n) * math.factorial(theta) > bound:
        raise SizeTooLarge(f"{n}! * {theta}! exceeds brute-force bound {bound}")
    target = Counter(zip(*m2.cells))
    if sorted(map(sum, m1.cells)) != sorted(map(sum, m2.cells)):
        return False
    for perm in permutations(range(n)):
        cols = Counter(zip(*(m1.cells[r] for r in perm)))
        if cols == target:
            return True
    return False


def shuffle_code(code: FRCode, rng: random.Random) -> FRCode:
    """Random relabelling of nodes and packets."""
    node_order = list(range(code.n))
    rng.shuffle(node_order)
    relabel = list(range(1, code.theta + 1))
    rng.shuffle(relabel)
    nodes = tuple(tuple(relabel[p - 1] for p in code.nodes[i]) for i in node_order)
    return FRCode(code.params, nodes, f"shuffle({code.provenance})")
