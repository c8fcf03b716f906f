"""Parameter enumeration, per-``n`` catalogs and count tables."""

from __future__ import annotations

import csv
import io
import json
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable

from .constructions import fill_incidence
from .core import FRCode, FRParams, IncidenceMatrix, code_to_json, matrix_to_code, validate
from .equivalence import DEFAULT_BUDGET, canonical_digest, canonical_form, matrix_digest
from .errors import ConstructionError

__all__ = [
    "FilterPolicy",
    "CatalogEntry",
    "CountRow",
    "admissible_params",
    "generate_catalog",
    "count_table",
    "count_table_csv",
    "dedupe_catalog",
    "EquivalenceClass",
    "catalog_to_jsonl",
]


@dataclass(frozen=True)
class FilterPolicy:
    """Which ``(d, rho)`` pairs count for a given ``n``.

    ``d <= theta`` is always required.  ``require_rho_lt_theta`` drops
    tuples with ``rho >= theta``; ``require_theta_gt_half_n`` drops tuples
    with ``2 * theta <= n``.
    """

    require_rho_lt_theta: bool = True
    require_theta_gt_half_n: bool = False

    @property
    def name(self) -> str:
        parts = []
        if self.require_rho_lt_theta:
            parts.append("rho-lt-theta")
        if self.require_theta_gt_half_n:
            parts.append("theta-gt-half-n")
        return "+".join(parts) or "none"

    @classmethod
    def from_name(cls, name: str) -> "FilterPolicy":
        flags = set(name.split("+"))
        if flags == {"none"}:
            return cls(False, False)
        unknown = flags - {"rho-lt-theta", "theta-gt-half-n"}
        if unknown:
            raise ValueError(f"unknown filter policy {name!r}")
        return cls("rho-lt-theta" in flags, "theta-gt-half-n" in flags)

    def admits(self, params: FRParams) -> bool:
        if params.d > params.theta:
            return False
        if self.require_rho_lt_theta and not params.rho < params.theta:
            return False
        if self.require_theta_gt_half_n and not 2 * params.theta > params.n:
            return False
        return True


def admissible_params(n: int, policy: FilterPolicy = FilterPolicy()) -> list[FRParams]:
    """All ``(d, rho)`` in ``2..n-1`` with integral ``theta = n*d/rho`` that pass ``policy``.

    Ordered by ``(d, rho)``.
    """
    if n < 3:
        raise ValueError(f"enumeration needs n >= 3, got {n}")
    out = []
    for d in range(2, n):
        for rho in range(2, n):
            if (n * d) % rho:
                continue
            params = FRParams(n=n, theta=n * d // rho, d=d, rho=rho)
            if policy.admits(params):
                out.append(params)
    return out


@dataclass
class CatalogEntry:
    params: FRParams
    matrix: IncidenceMatrix | None
    error: str | None = None
    provenance: str = "algorithm1"
    canonical_digest: str | None = None
    policy: str = "rho-lt-theta"

    @cached_property
    def valid(self) -> bool:
        return self.matrix is not None and validate(self.matrix, self.params).valid

    @cached_property
    def code(self) -> FRCode:
        if self.matrix is None:
            raise ValueError(f"no matrix for {self.params}: {self.error}")
        return matrix_to_code(self.matrix, self.params, self.provenance)

    def to_json(self) -> dict:
        base = {
            "n": self.params.n,
            "theta": self.params.theta,
            "d": self.params.d,
            "rho": self.params.rho,
        }
        if self.valid:
            base = code_to_json(self.code)
        else:
            base["nodes"] = None
            base["provenance"] = self.provenance
        base["canonical_digest"] = self.canonical_digest
        base["valid"] = self.valid
        base["error"] = self.error
        base["filter"] = self.policy
        return base


def generate_catalog(n: int, policy: FilterPolicy = FilterPolicy(), digests: bool = False,
                     budget: int = DEFAULT_BUDGET) -> list[CatalogEntry]:
    """Run the incidence fill on every admissible tuple; failures are recorded, never raised."""
    entries = []
    for params in admissible_params(n, policy):
        try:
            matrix = fill_incidence(params)
        except ConstructionError as exc:
            entries.append(CatalogEntry(params, None, error=f"{type(exc).__name__}: {exc}",
                                        policy=policy.name))
            continue
        entry = CatalogEntry(params, matrix, policy=policy.name)
        if not entry.valid:
            entry.error = validate(matrix, params).summary()
        elif digests:
            entry.canonical_digest = canonical_digest(matrix, budget)
        entries.append(entry)
    return entries


def catalog_to_jsonl(entries: Iterable[CatalogEntry]) -> str:
    return "".join(json.dumps(e.to_json(), separators=(",", ":")) + "\n" for e in entries)


@dataclass(frozen=True)
class EquivalenceClass:
    representative: IncidenceMatrix
    digest: str
    members: tuple[FRParams, ...] = field(default=())

    @property
    def size(self) -> int:
        return len(self.members)


def dedupe_catalog(entries: Iterable[CatalogEntry | FRCode],
                   budget: int = DEFAULT_BUDGET) -> list[EquivalenceClass]:
    """Group codes by canonical form; classes come out sorted by representative."""
    groups: dict[IncidenceMatrix, list[FRParams]] = {}
    for e in entries:
        if isinstance(e, CatalogEntry):
            if not e.valid:
                raise ValueError(f"cannot dedupe invalid entry {e.params}")
            code = e.code
        else:
            code = e
        groups.setdefault(canonical_form(code, budget), []).append(code.params)
    classes = [
        EquivalenceClass(form, matrix_digest(form), tuple(members))
        for form, members in groups.items()
    ]
    classes.sort(key=lambda c: (c.representative.shape, c.representative.cells))
    return classes


@dataclass(frozen=True)
class CountRow:
    n: int
    admissible: int
    constructed: int
    classes: int | None = None


def count_table(n_from: int, n_to: int, policy: FilterPolicy = FilterPolicy(),
                dedupe: bool = False, budget: int = DEFAULT_BUDGET) -> list[CountRow]:
    if not 3 <= n_from <= n_to:
        raise ValueError(f"need 3 <= n_from <= n_to, got {n_from}, {n_to}")
    rows = []
    for n in range(n_from, n_to + 1):
        catalog = generate_catalog(n, policy)
        ok = [e for e in catalog if e.valid]
        classes = len(dedupe_catalog(ok, budget)) if dedupe else None
        rows.append(CountRow(n, len(catalog), len(ok), classes))
    return rows


def count_table_csv(rows: Iterable[CountRow]) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["n", "admissible", "constructed", "classes"])
    for r in rows:
        writer.writerow([r.n, r.admissible, r.constructed, "" if r.classes is None else r.classes])
    return buf.getvalue()
