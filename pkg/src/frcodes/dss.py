"""Single-failure repair and file recovery on top of an FR code.

A DRESS code stores MDS-coded packets according to an FR code.  A failed node
is rebuilt by downloading each of its ``d`` packets verbatim from a surviving
holder (uncoded repair), and a file of ``B`` coded packets is recoverable from
any ``k`` nodes as long as every ``k`` nodes jointly hold ``B`` distinct
packets.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from math import comb

from .core import FRCode
from .errors import NoReplica, SubsetBudgetExceeded

__all__ = [
    "RepairPlan",
    "RepairReport",
    "repair_plan",
    "simulate_failure",
    "supported_file_size",
    "mds_check",
    "DEFAULT_SUBSET_BUDGET",
]

DEFAULT_SUBSET_BUDGET = 10**6


@dataclass(frozen=True)
class RepairPlan:
    failed_node: int
    assignments: tuple[tuple[int, int], ...]  # (packet, helper)

    @property
    def helpers(self) -> tuple[int, ...]:
        return tuple(sorted({h for _, h in self.assignments}))


@dataclass(frozen=True)
class RepairReport:
    plan: RepairPlan
    helpers_contacted: int
    packets_downloaded: int
    bandwidth: int

    def to_json(self) -> dict:
        return {
            "failed": self.plan.failed_node,
            "assignments": [list(a) for a in self.plan.assignments],
            "helpers": self.helpers_contacted,
            "packets": self.packets_downloaded,
            "bandwidth": self.bandwidth,
        }


def repair_plan(code: FRCode, failed_node: int) -> RepairPlan:
    """Assign every lost packet to a surviving holder, using as many distinct helpers as possible.

    The distinct helpers come from the lexicographically smallest maximum
    matching between lost packets and surviving holders (packets in
    ascending order, each taking the lowest holder that keeps the matching
    maximum).  Packets left unmatched go to their lowest-index holder.
    """
    if not 1 <= failed_node <= code.n:
        raise ValueError(f"failed node {failed_node} outside 1..{code.n}")
    lost = code.nodes[failed_node - 1]
    holders = {}
    for p in lost:
        hs = [h for h in code.holders(p) if h != failed_node]
        if not hs:
            raise NoReplica(f"packet {p} has no copy outside node {failed_node}")
        holders[p] = hs

    target = _max_matching(lost, holders, frozenset())
    used: set[int] = set()
    helper_of = {}
    for i, p in enumerate(lost):
        later = lost[i + 1:]
        for h in holders[p]:
            if h not in used and 1 + _max_matching(later, holders, used | {h}) == target:
                helper_of[p] = h
                used.add(h)
                target -= 1
                break
    assignments = tuple((p, helper_of.get(p, holders[p][0])) for p in lost)
    return RepairPlan(failed_node, assignments)


def _max_matching(packets, holders, banned) -> int:
    """Size of a maximum packet-to-helper matching avoiding ``banned`` helpers."""
    owner: dict[int, int] = {}

    def augment(p, seen):
        for h in holders[p]:
            if h in banned or h in seen:
                continue
            seen.add(h)
            if h not in owner or augment(owner[h], seen):
                owner[h] = p
                return True
        return False

    return sum(1 for p in packets if augment(p, set()))


def simulate_failure(code: FRCode, failed_node: int, beta: int = 1) -> RepairReport:
    if beta < 1:
        raise ValueError(f"beta must be >= 1, got {beta}")
    plan = repair_plan(code, failed_node)
    packets = len(plan.assignments)
    return RepairReport(plan, len(plan.helpers), packets, packets * beta)


def supported_file_size(code: FRCode, k: int, budget: int = DEFAULT_SUBSET_BUDGET) -> int:
    """Fewest distinct packets held by any ``k`` nodes, by exhaustive search."""
    if not 1 <= k <= code.n:
        raise ValueError(f"k must be in 1..{code.n}, got {k}")
    if comb(code.n, k) > budget:
        raise SubsetBudgetExceeded(f"C({code.n}, {k}) exceeds subset budget {budget}")
    masks = [sum(1 << (p - 1) for p in u) for u in code.nodes]
    best = code.theta
    for subset in combinations(masks, k):
        union = 0
        for m in subset:
            union |= m
        best = min(best, union.bit_count())
    return best


def mds_check(code: FRCode, k: int, B: int, budget: int = DEFAULT_SUBSET_BUDGET) -> bool:
    """True iff any ``k`` nodes hold at least ``B`` distinct coded packets."""
    if B < 1:
        raise ValueError(f"B must be >= 1, got {B}")
    return B <= supported_file_size(code, k, budget)
