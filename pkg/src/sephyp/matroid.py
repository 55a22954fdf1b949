"""Matroid layer: basis-exchange checking, minors, circuits, lines, and
constructors from GF(2) matrices and multigraphs.

A matroid is carried as a Hypergraph whose edges are the bases. Everything
is computed from first principles at small scale (subset enumeration,
exhaustive exchange checks); independence oracles wrap a query function
with a deterministic cache and an ordered trace.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from itertools import combinations
from math import comb
from typing import Callable, Iterable, Optional

from .errors import (
    BudgetExceeded,
    FormatError,
    HasLoops,
    NotAMatroid,
    PreconditionViolated,
    RankCollapse,
    RankZero,
)
from .hypercore import Hypergraph, KSet

CIRCUIT_GROUND_BUDGET = 2 ** 22
BASIS_ENUM_BUDGET = 200_000


def exchange_violation(h: Hypergraph) -> Optional[tuple[KSet, KSet, int]]:
    """Lexicographically first (E1, E2, v1) with no valid exchange, or None."""
    edges = h.sorted_edges()
    for e1 in edges:
        s1 = set(e1)
        for e2 in edges:
            if e1 == e2:
                continue
            s2 = set(e2)
            diff2 = s2 - s1
            for v1 in sorted(s1 - s2):
                base = s1 - {v1}
                if not any(tuple(sorted(base | {v2})) in h.edges for v2 in diff2):
                    return (e1, e2, v1)
    return None


def is_matroid(h: Hypergraph) -> bool:
    """Nonempty edge set satisfying the basis-exchange axiom."""
    return bool(h.edges) and exchange_violation(h) is None


@dataclass(frozen=True)
class BasisMatroid:
    """A hypergraph whose edges are the bases of a rank-k matroid."""

    carrier: Hypergraph

    def __post_init__(self) -> None:
        if not self.carrier.edges:
            raise NotAMatroid("matroid requires a nonempty basis set")
        bad = exchange_violation(self.carrier)
        if bad is not None:
            raise NotAMatroid(f"basis exchange fails at (E1={bad[0]}, E2={bad[1]}, v1={bad[2]})")

    @classmethod
    def from_bases(cls, n: int, k: int, bases: Iterable[Iterable[int]]) -> "BasisMatroid":
        return cls(Hypergraph.from_edges(n, k, bases))

    @property
    def n(self) -> int:
        return self.carrier.n

    @property
    def k(self) -> int:
        return self.carrier.k

    @cached_property
    def base_sets(self) -> tuple[frozenset[int], ...]:
        return tuple(frozenset(e) for e in self.carrier.sorted_edges())


@dataclass(frozen=True)
class Circuit:
    """Minimal dependent vertex set."""

    elements: KSet


@dataclass(frozen=True)
class LineDecomposition:
    """Partition of the ground set into lines (maximal pairwise-dependent
    classes of a loopless matroid)."""

    lines: tuple[KSet, ...]
    nontrivial_count: int


@dataclass(frozen=True)
class Gf2Matrix:
    """Dense 0/1 matrix over GF(2); columns index matroid elements."""

    rows: int
    cols: int
    bits: tuple[tuple[int, ...], ...]

    def __post_init__(self) -> None:
        if len(self.bits) != self.rows:
            raise FormatError(f"expected {self.rows} rows, got {len(self.bits)}")
        for row in self.bits:
            if len(row) != self.cols:
                raise FormatError(f"row {row} has wrong width, expected {self.cols}")
            if any(b not in (0, 1) for b in row):
                raise FormatError(f"row {row} has entries outside {{0,1}}")

    def column_masks(self) -> list[int]:
        """Each column as an integer with bit r set when bits[r][col] is 1."""
        masks = []
        for c in range(self.cols):
            m = 0
            for r in range(self.rows):
                if self.bits[r][c]:
                    m |= 1 << r
            masks.append(m)
        return masks


@dataclass(frozen=True)
class Graph:
    """Multigraph on vertices 1..vertices; parallel edges and self-loops allowed."""

    vertices: int
    edges: tuple[tuple[int, int], ...]

    def __post_init__(self) -> None:
        if self.vertices < 1:
            raise FormatError("graph needs at least one vertex")
        for u, v in self.edges:
            if not (1 <= u <= self.vertices and 1 <= v <= self.vertices):
                raise FormatError(f"edge ({u},{v}) outside 1..{self.vertices}")


class IndependenceOracle:
    """Black-box independence interface with a deterministic cache.

    Repeated queries are answered from the cache and do not grow the trace;
    the query count is the number of distinct subsets asked about.
    """

    def __init__(self, fn: Callable[[KSet], bool]):
        self._fn = fn
        self._cache: dict[KSet, bool] = {}
        self.trace: list[tuple[KSet, bool]] = []

    def query(self, subset: Iterable[int]) -> bool:
        key = tuple(sorted(subset))
        if key in self._cache:
            return self._cache[key]
        answer = bool(self._fn(key))
        self._cache[key] = answer
        self.trace.append((key, answer))
        return answer

    @property
    def queries_used(self) -> int:
        return len(self.trace)


def is_independent(m: BasisMatroid, s: Iterable[int]) -> bool:
    """Whether s is contained in some basis."""
    sub = frozenset(s)
    if len(sub) > m.k:
        return False
    return any(sub <= b for b in m.base_sets)


def oracle_from_matroid(m: BasisMatroid) -> IndependenceOracle:
    return IndependenceOracle(lambda s: is_independent(m, s))


def loops(m: BasisMatroid) -> frozenset[int]:
    """Vertices contained in no basis."""
    covered: set[int] = set()
    for b in m.base_sets:
        covered |= b
    return frozenset(range(1, m.n + 1)) - covered


def coloops(m: BasisMatroid) -> frozenset[int]:
    """Vertices contained in every basis."""
    common = set(m.base_sets[0])
    for b in m.base_sets[1:]:
        common &= b
    return frozenset(common)


def _renumber(edges: Iterable[frozenset[int]], n: int, removed: int) -> tuple[set[KSet], dict[int, int]]:
    mapping = {w: (w if w < removed else w - 1) for w in range(1, n + 1) if w != removed}
    renamed = {tuple(sorted(mapping[w] for w in e)) for e in edges}
    return renamed, mapping


def delete(m: BasisMatroid, v: int) -> tuple[BasisMatroid, dict[int, int]]:
    """Deletion minor; drops rank by one exactly when v is a coloop.

    The ground set is renumbered densely (indices above v shift down) and the
    old-to-new vertex mapping is returned alongside the minor.
    """
    if not 1 <= v <= m.n:
        raise PreconditionViolated(f"vertex {v} outside 1..{m.n}")
    if v in coloops(m):
        new_k = m.k - 1
        kept = [b - {v} for b in m.base_sets]  # coloop: deletion equals contraction
    else:
        new_k = m.k
        kept = [b for b in m.base_sets if v not in b]
    new_n = m.n - 1
    if new_k < 1 or new_k >= new_n:
        raise RankCollapse(f"deletion leaves k={new_k} on {new_n} vertices")
    renamed, mapping = _renumber(kept, m.n, v)
    return BasisMatroid(Hypergraph(new_n, new_k, frozenset(renamed))), mapping


def contract(m: BasisMatroid, v: int) -> tuple[BasisMatroid, dict[int, int]]:
    """Contraction minor; keeps rank exactly when v is a loop."""
    if not 1 <= v <= m.n:
        raise PreconditionViolated(f"vertex {v} outside 1..{m.n}")
    if v in loops(m):
        new_k = m.k
        kept = list(m.base_sets)  # loop: contraction equals deletion, edges untouched
    else:
        new_k = m.k - 1
        kept = [b - {v} for b in m.base_sets if v in b]
    new_n = m.n - 1
    if new_k < 1 or new_k >= new_n:
        raise RankCollapse(f"contraction leaves k={new_k} on {new_n} vertices")
    renamed, mapping = _renumber(kept, m.n, v)
    return BasisMatroid(Hypergraph(new_n, new_k, frozenset(renamed))), mapping


def _circuits_within(m: BasisMatroid, ground: Iterable[int]) -> list[KSet]:
    """All circuits inside the given vertex pool, ascending by size then lex."""
    pool = sorted(ground)
    found: list[KSet] = []
    found_sets: list[frozenset[int]] = []
    for size in range(1, min(len(pool), m.k + 1) + 1):
        for cand in combinations(pool, size):
            cset = frozenset(cand)
            if any(c <= cset for c in found_sets):
                continue  # contains a smaller circuit, not minimal
            if not is_independent(m, cset):
                found.append(cand)
                found_sets.append(cset)
    return found


def circuits(m: BasisMatroid, budget: Optional[int] = None) -> tuple[KSet, ...]:
    """All circuits; none exceeds k+1 elements in a rank-k matroid."""
    cap = CIRCUIT_GROUND_BUDGET if budget is None else budget
    if 2 ** m.n > cap:
        raise BudgetExceeded(f"2^{m.n} exceeds circuit enumeration budget {cap}")
    return tuple(_circuits_within(m, range(1, m.n + 1)))


def fundamental_circuit(m: BasisMatroid, e: KSet, v: int) -> Circuit:
    """The unique circuit inside e + v, for a basis e and v outside it."""
    if tuple(sorted(e)) not in m.carrier.edges:
        raise PreconditionViolated(f"{e} is not a basis")
    if v in e:
        raise PreconditionViolated(f"{v} already in {e}")
    inside = _circuits_within(m, set(e) | {v})
    if len(inside) != 1:
        raise NotAMatroid(f"{len(inside)} circuits inside {tuple(sorted(e))} + {v}, expected 1")
    return Circuit(inside[0])


def is_paving(m: BasisMatroid) -> bool:
    """Whether every (k-1)-subset of the ground set is independent."""
    return all(
        is_independent(m, s) for s in combinations(range(1, m.n + 1), m.k - 1)
    )


def _peel_into_circuits(remainder: frozenset[int], circuit_sets: list[frozenset[int]]) -> bool:
    """Exhaustive backtracking partition of remainder into disjoint circuits."""
    if not remainder:
        return True
    anchor = min(remainder)
    for c in circuit_sets:
        if anchor in c and c <= remainder:
            if _peel_into_circuits(remainder - c, circuit_sets):
                return True
    return False


def is_binary(m: BasisMatroid, budget: Optional[int] = None) -> bool:
    """Whether every symmetric difference of two circuits splits into circuits."""
    circ = circuits(m, budget)
    circ_sets = [frozenset(c) for c in circ]
    for c1, c2 in combinations(circ_sets, 2):
        if not _peel_into_circuits(c1 ^ c2, circ_sets):
            return False
    return True


def _lines_from_dependence(elements: list[int], dependent: Callable[[int, int], bool]) -> list[KSet]:
    """Group elements into pairwise-dependent classes; raises NotAMatroid if
    the dependence relation is not transitive on this instance."""
    lines: list[list[int]] = []
    for v in elements:
        placed = False
        for line in lines:
            if dependent(line[0], v):
                line.append(v)
                placed = True
                break
        if not placed:
            lines.append([v])
    for line in lines:
        for u, v in combinations(line, 2):
            if not dependent(u, v):
                raise NotAMatroid(f"pairwise dependence not transitive at ({u},{v})")
    for a, b in combinations(range(len(lines)), 2):
        for u in lines[a]:
            for v in lines[b]:
                if dependent(u, v):
                    raise NotAMatroid(f"dependence links distinct lines at ({u},{v})")
    return [tuple(line) for line in lines]


def lines(m: BasisMatroid) -> LineDecomposition:
    """Line partition of a loopless matroid."""
    lp = loops(m)
    if lp:
        raise HasLoops(f"matroid has loops {sorted(lp)}")
    dep = lambda u, v: not is_independent(m, (u, v))
    parts = _lines_from_dependence(list(range(1, m.n + 1)), dep)
    return LineDecomposition(tuple(parts), sum(1 for p in parts if len(p) >= 2))


def gf2_rank(masks: Iterable[int]) -> int:
    """Rank of a set of GF(2) vectors given as bitmasks."""
    basis: dict[int, int] = {}
    rank = 0
    for vec in masks:
        cur = vec
        while cur:
            top = cur.bit_length() - 1
            if top in basis:
                cur ^= basis[top]
            else:
                basis[top] = cur
                rank += 1
                break
    return rank


def from_gf2_matrix(
    mat: Gf2Matrix, budget: Optional[int] = None
) -> tuple[Optional[BasisMatroid], IndependenceOracle]:
    """Matroid of GF(2) column independence, plus its oracle.

    The oracle always works. The materialized matroid is None when the rank
    equals the column count (free matroid): 1 <= k < n cannot hold, so no
    Hypergraph carrier exists; oracle-driven algorithms handle that case.
    """
    masks = mat.column_masks()
    n = mat.cols
    k = gf2_rank(masks)
    if k == 0:
        raise RankZero("matrix has GF(2) rank 0")
    oracle = IndependenceOracle(lambda s: gf2_rank(masks[v - 1] for v in s) == len(s))
    if k == n:
        return None, oracle
    cap = BASIS_ENUM_BUDGET if budget is None else budget
    if comb(n, k) > cap:
        raise BudgetExceeded(f"C({n},{k}) basis enumeration exceeds budget {cap}")
    bases = [
        s for s in combinations(range(1, n + 1), k)
        if gf2_rank(masks[v - 1] for v in s) == k
    ]
    return BasisMatroid(Hypergraph(n, k, frozenset(bases))), oracle


def _forest(graph: Graph, edge_indices: Iterable[int]) -> bool:
    parent = list(range(graph.vertices + 1))

    def find(a: int) -> int:
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    for i in edge_indices:
        u, v = graph.edges[i - 1]
        ru, rv = find(u), find(v)
        if ru == rv:
            return False
        parent[ru] = rv
    return True


def from_graph(graph: Graph, budget: Optional[int] = None) -> BasisMatroid:
    """Graphic matroid: ground set is the edge list (indexed 1..n in input
    order), bases are the maximal spanning forests."""
    n = len(graph.edges)
    if n == 0:
        raise FormatError("graph has no edges")
    components = graph.vertices
    parent = list(range(graph.vertices + 1))

    def find(a: int) -> int:
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    for u, v in graph.edges:
        ru, rv = find(u), find(v)
        if ru != rv:
            parent[ru] = rv
            components -= 1
    k = graph.vertices - components
    if k < 1 or k >= n:
        raise RankCollapse(f"graphic matroid has k={k} on {n} edges")
    cap = BASIS_ENUM_BUDGET if budget is None else budget
    if comb(n, k) > cap:
        raise BudgetExceeded(f"C({n},{k}) basis enumeration exceeds budget {cap}")
    bases = [s for s in combinations(range(1, n + 1), k) if _forest(graph, s)]
    return BasisMatroid(Hypergraph(n, k, frozenset(bases)))


def augment(m: BasisMatroid, independent: Iterable[int], basis: Iterable[int]) -> KSet:
    """Lexicographically smallest completion of an independent set to a basis
    using elements of the given basis."""
    i_set = frozenset(independent)
    b_tuple = tuple(sorted(basis))
    if b_tuple not in m.carrier.edges:
        raise PreconditionViolated(f"{b_tuple} is not a basis")
    if not is_independent(m, i_set):
        raise PreconditionViolated(f"{tuple(sorted(i_set))} is not independent")
    need = m.k - len(i_set)
    for j in combinations(sorted(set(b_tuple) - i_set), need):
        candidate = tuple(sorted(i_set | set(j)))
        if candidate in m.carrier.edges:
            return candidate
    raise NotAMatroid("augmentation failed; basis exchange must be broken")
