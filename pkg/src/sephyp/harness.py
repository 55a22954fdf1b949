"""Enumeration and verification harness.

Enumerates hypergraph corpora (optionally filtered to a structural class),
classifies every instance, and checks the combinatorial laws the library is
built around: the separable/equatable dichotomy, the swap-witness sufficient
condition, the 2-monotone equivalence, complement/dual invariance, the
loop-deletion and line laws, and the equatable-iff-exchangeable equivalence on the
proved classes. Any violation is a build-failing bug, not data.

The class filters run on edge-subset bitmasks with precomputed swap tables,
which keeps exhaustive scans (for example the million 3-hypergraphs on six
vertices) in the seconds range; instances surviving a filter are
re-materialized and checked with the ordinary public operations.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from math import comb
from typing import Iterable, Iterator, Optional

from .errors import BudgetExceeded, RankCollapse
from .feasibility import decide, verify_equatable
from .hypercore import (
    ENUMERATION_BIT_BUDGET,
    Hypergraph,
    KSet,
    all_ksets,
    complement,
    dual,
    find_summable_quadruple,
    graph_orderable,
    is_exchangeable,
    is_r_monotone,
)
from .matroid import BasisMatroid, circuits, delete, is_binary, is_paving, lines, loops

CLASSES = ("all", "graphs", "matroids", "paving", "binary", "multipartite")
ALL_CHECKS = frozenset(
    {"dichotomy", "quadruple", "monotone", "transforms", "theorems", "loops", "lines", "circuit_elimination"}
)


@dataclass
class EnumerationReport:
    n: int
    k: int
    klass: str
    counts: dict[str, int]
    violations: list[dict]

    def as_obj(self) -> dict:
        return {
            "n": self.n,
            "k": self.k,
            "class": self.klass,
            "counts": self.counts,
            "violations": self.violations,
        }


class MaskTables:
    """Precomputed structures for bitmask-level scans of all (n, k) instances."""

    def __init__(self, n: int, k: int):
        self.n = n
        self.k = k
        self.ksets = all_ksets(n, k)
        self.m = len(self.ksets)
        self.index = {g: i for i, g in enumerate(self.ksets)}
        self.vsets = [frozenset(g) for g in self.ksets]
        self.swaps: list[dict[int, list[tuple[int, int]]]] = []
        for g in self.ksets:
            s = set(g)
            per_v1: dict[int, list[tuple[int, int]]] = {}
            for v1 in g:
                base = s - {v1}
                per_v1[v1] = [
                    (v2, 1 << self.index[tuple(sorted(base | {v2}))])
                    for v2 in range(1, n + 1)
                    if v2 not in s
                ]
            self.swaps.append(per_v1)
        self.cover_masks = []
        for sub in combinations(range(1, n + 1), k - 1):
            cm = 0
            ss = set(sub)
            for i, g in enumerate(self.ksets):
                if ss <= set(g):
                    cm |= 1 << i
            self.cover_masks.append(cm)

    def edge_indices(self, mask: int) -> list[int]:
        out = []
        while mask:
            low = mask & -mask
            out.append(low.bit_length() - 1)
            mask ^= low
        return out

    def hypergraph(self, mask: int) -> Hypergraph:
        return Hypergraph(self.n, self.k, frozenset(self.ksets[i] for i in self.edge_indices(mask)))

    def is_matroid_mask(self, mask: int) -> bool:
        if mask == 0:
            return False
        idxs = self.edge_indices(mask)
        vsets, swaps = self.vsets, self.swaps
        for i1 in idxs:
            s1 = vsets[i1]
            sw1 = swaps[i1]
            for i2 in idxs:
                if i1 == i2:
                    continue
                s2 = vsets[i2]
                for v1 in s1 - s2:
                    for v2, bit in sw1[v1]:
                        if v2 in s2 and mask & bit:
                            break
                    else:
                        return False
        return True

    def is_paving_mask(self, mask: int) -> bool:
        return all(mask & cm for cm in self.cover_masks)


def canonical_partition(n: int, k: int) -> list[tuple[int, ...]]:
    """Split 1..n into k consecutive parts, sizes as even as possible."""
    base, extra = divmod(n, k)
    parts = []
    start = 1
    for i in range(k):
        size = base + (1 if i < extra else 0)
        parts.append(tuple(range(start, start + size)))
        start += size
    return parts


def _multipartite_masks(tables: MaskTables) -> Iterator[int]:
    """Masks whose edges are transversal to the canonical partition."""
    parts = canonical_partition(tables.n, tables.k)
    transversal = [
        i
        for i, g in enumerate(tables.ksets)
        if all(len(set(g) & set(p)) == 1 for p in parts)
    ]
    for sub in range(1 << len(transversal)):
        mask = 0
        for j, i in enumerate(transversal):
            if sub >> j & 1:
                mask |= 1 << i
        yield mask


def _check_circuit_elimination(m: BasisMatroid) -> Optional[str]:
    circ = [frozenset(c) for c in circuits(m)]
    for c1 in circ:
        for c2 in circ:
            if c1 == c2:
                continue
            for v in c1 & c2:
                for u in c1 - c2:
                    pool = (c1 | c2) - {v}
                    if not any(u in c and c <= pool for c in circ):
                        return f"no circuit with {u} inside {sorted(pool)}"
    return None


def run_enumeration(
    n: int,
    k: int,
    klass: str = "all",
    checks: Iterable[str] = (),
    budget: Optional[int] = None,
    fail_fast: bool = False,
) -> EnumerationReport:
    """Enumerate, filter, classify, and law-check one (n, k) corpus."""
    if klass not in CLASSES:
        raise ValueError(f"unknown class {klass!r}")
    if klass == "graphs" and k != 2:
        raise ValueError("class 'graphs' requires k = 2")
    check_set = frozenset(checks)
    unknown = check_set - ALL_CHECKS
    if unknown:
        raise ValueError(f"unknown checks {sorted(unknown)}")

    cap = ENUMERATION_BIT_BUDGET if budget is None else budget
    if comb(n, k) > cap:
        raise BudgetExceeded(f"C({n},{k}) = {comb(n, k)} potential edges exceeds budget {cap}")

    tables = MaskTables(n, k)
    counts = {
        "total": 0,
        "separable": 0,
        "equatable": 0,
        "exchangeable": 0,
        "matroids": 0,
        "paving": 0,
        "binary": 0,
    }
    violations: list[dict] = []

    if klass == "multipartite":
        masks: Iterable[int] = _multipartite_masks(tables)
    else:
        masks = range(1 << tables.m)

    for mask in masks:
        matroid_mask = tables.is_matroid_mask(mask)
        if klass in ("matroids", "paving", "binary") and not matroid_mask:
            continue
        if klass == "paving" and not tables.is_paving_mask(mask):
            continue
        h = tables.hypergraph(mask)
        basis_matroid = BasisMatroid(h) if matroid_mask else None
        binary = is_binary(basis_matroid) if basis_matroid is not None else False
        if klass == "binary" and not binary:
            continue

        counts["total"] += 1
        if matroid_mask:
            counts["matroids"] += 1
            if tables.is_paving_mask(mask):
                counts["paving"] += 1
            if binary:
                counts["binary"] += 1

        cert = decide(h)
        counts[cert.kind] += 1
        witness = is_exchangeable(h)
        if witness is not None:
            counts["exchangeable"] += 1

        def violate(check: str, detail: str) -> None:
            violations.append(
                {"check": check, "n": n, "k": k, "edges": [list(e) for e in h.sorted_edges()], "detail": detail}
            )

        if "quadruple" in check_set:
            quad = find_summable_quadruple(h)
            if witness is not None and quad is None:
                violate("quadruple", "exchange witness exists but no summable quadruple")
            if quad is not None:
                if cert.kind != "equatable":
                    violate("quadruple", f"summable quadruple {quad} on a separable instance")
                explicit = {g: Fraction(1) for g in (quad.e1, quad.e2, quad.f1, quad.f2)}
                if not verify_equatable(h, explicit):
                    violate("quadruple", f"explicit quadruple labeling fails for {quad}")

        if "monotone" in check_set:
            if is_r_monotone(h, 2) != (witness is None):
                violate("monotone", "2-monotone disagrees with not-exchangeable")

        if "transforms" in check_set:
            comp_kind = decide(complement(h)).kind
            dual_h = dual(h)
            dual_cert = decide(dual_h)
            if comp_kind != cert.kind or dual_cert.kind != cert.kind:
                violate("transforms", f"kinds differ: {cert.kind}/{comp_kind}/{dual_cert.kind}")
            if cert.kind == "equatable":
                universe = set(range(1, n + 1))
                transported = {
                    tuple(sorted(universe - set(g))): val for g, val in cert.y
                }
                if not verify_equatable(dual_h, transported):
                    violate("transforms", "transported dual labeling fails verification")
            comp_witness = is_exchangeable(complement(h))
            dual_witness = is_exchangeable(dual_h)
            if (witness is None) != (comp_witness is None) or (witness is None) != (dual_witness is None):
                violate("transforms", "exchangeability not preserved by complement/dual")

        if "theorems" in check_set:
            in_proved_class = (
                k <= 2
                or klass == "multipartite"
                or (matroid_mask and (k == 3 or tables.is_paving_mask(mask) or binary))
            )
            if in_proved_class and (cert.kind == "equatable") != (witness is not None):
                violate("theorems", f"{cert.kind} but exchangeable = {witness is not None}")
            if k == 2:
                ordering = graph_orderable(h)
                if (ordering is not None) != (cert.kind == "separable"):
                    violate("theorems", f"orderable = {ordering is not None} but {cert.kind}")

        if "loops" in check_set and basis_matroid is not None:
            loop_set = loops(basis_matroid)
            if loop_set:
                try:
                    minor, _ = delete(basis_matroid, min(loop_set))
                    if decide(minor.carrier).kind != cert.kind:
                        violate("loops", f"kind changes when deleting loop {min(loop_set)}")
                except RankCollapse:
                    pass  # k = n-1 minor not representable under 1 <= k < n

        if "lines" in check_set and basis_matroid is not None and not loops(basis_matroid):
            if lines(basis_matroid).nontrivial_count >= 2 and witness is None:
                violate("lines", "two nontrivial lines but no exchange witness")

        if "circuit_elimination" in check_set and basis_matroid is not None:
            problem = _check_circuit_elimination(basis_matroid)
            if problem is not None:
                violate("circuit_elimination", problem)

        if fail_fast and violations:
            break

    if "dichotomy" in check_set and counts["separable"] + counts["equatable"] != counts["total"]:
        violations.append(
            {
                "check": "dichotomy",
                "n": n,
                "k": k,
                "edges": None,
                "detail": f"separable {counts['separable']} + equatable {counts['equatable']} != total {counts['total']}",
            }
        )
    return EnumerationReport(n, k, klass, counts, violations)
