"""Query-complexity layer: the polynomial-query separability decision for
binary matroids, and the adversarial paving construction showing that no
sublinear-in-C(2k,k) strategy can decide separability in general.

The binary-matroid algorithm talks only to an IndependenceOracle: pair
queries reveal the loops and the line partition, and the verdict is read off
the line structure, with one extra query on the trivial-line elements in the
single boundary case the lines do not determine. The adversary machinery
runs an arbitrary strategy against an oracle answering as the complete
k-hypergraph on 2k vertices and then exhibits, whenever possible, a
complementary k-set pair the strategy never asked about, so its transcript
is equally consistent with an equatable paving matroid.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from math import comb
from typing import Callable, Optional, Union

from .errors import BudgetExceeded, InternalVerificationError, NotAMatroid, OracleInconsistent
from .feasibility import decide
from .hypercore import Hypergraph, KSet
from .matroid import BasisMatroid, IndependenceOracle, _lines_from_dependence, is_paving

SEPARABLE = "separable"
EQUATABLE = "equatable"

Strategy = Callable[[IndependenceOracle, int, int], Union[str, "OracleDecision"]]


@dataclass(frozen=True)
class OracleDecision:
    """Verdict of an oracle-driven decision, with the full query transcript."""

    verdict: str
    queries_used: int
    trace: tuple[tuple[KSet, bool], ...]


@dataclass(frozen=True)
class AdversaryInstance:
    """Complete k-hypergraph h1 on [2k] and its paving relaxation h2 missing
    one complementary basis pair f1, f2."""

    k: int
    h1: Hypergraph
    h2: Hypergraph
    f1: KSet
    f2: KSet


@dataclass(frozen=True)
class IndistinguishabilityReport:
    """Outcome of running a strategy against the adversary oracle."""

    verdict: Optional[str]
    queries: int
    trace: tuple[tuple[KSet, bool], ...]
    kset_queries: tuple[KSet, ...]
    consistent_with_h2: bool
    pairs_total: int
    pairs_touched: int
    query_threshold: int  # 2^k - 1
    pair_threshold: int  # C(2k,k)/2
    unqueried_pair: Optional[tuple[KSet, KSet]]
    alternative_kind: Optional[str]
    budget_exhausted: bool


def decide_binary_via_oracle(n: int, k: int, oracle: IndependenceOracle) -> OracleDecision:
    """Separability of a binary k-matroid using only independence queries.

    Rank-1 matroids are separable outright. Otherwise all pairs are queried;
    since a non-loop lies in a basis of size k >= 2, the loops are exactly
    the elements whose every pair is dependent, so no singleton queries are
    needed. With n' non-loops: n' <= k+1 is separable; two nontrivial lines
    force equatable; with at most one nontrivial line of size l, n' = l+k-1
    is separable and n' >= l+k+1 is equatable.

    The remaining case n' = l+k is not determined by pair answers at all
    (two binary matroids can agree on every singleton and pair yet differ
    in kind), so one further query resolves it: the set T of all
    trivial-line elements, of size k. The matroid is then equatable exactly
    when T is dependent. Total queries never exceed C(n,2) + 1 <= n + C(n,2).
    """
    if not 1 <= k <= n:
        raise OracleInconsistent(f"rank {k} impossible on {n} elements")
    if k == 1:
        # every 1-matroid is separable: label basis singletons 0, loops -1
        return OracleDecision(SEPARABLE, oracle.queries_used, tuple(oracle.trace))

    dep: dict[frozenset[int], bool] = {}
    for u, v in combinations(range(1, n + 1), 2):
        dep[frozenset((u, v))] = not oracle.query((u, v))
    nonloops = [
        v for v in range(1, n + 1)
        if any(not dep[frozenset((v, u))] for u in range(1, n + 1) if u != v)
    ]
    n2 = len(nonloops)
    if n2 < k:
        raise OracleInconsistent(f"only {n2} non-loops for promised rank {k}")
    if n2 <= k + 1:
        return OracleDecision(SEPARABLE, oracle.queries_used, tuple(oracle.trace))

    try:
        parts = _lines_from_dependence(nonloops, lambda a, b: dep[frozenset((a, b))])
    except NotAMatroid as exc:
        raise OracleInconsistent(str(exc)) from exc

    nontrivial = [p for p in parts if len(p) >= 2]
    if len(nontrivial) >= 2:
        return OracleDecision(EQUATABLE, oracle.queries_used, tuple(oracle.trace))
    largest = max(len(p) for p in parts)
    if n2 == largest + k - 1:
        return OracleDecision(SEPARABLE, oracle.queries_used, tuple(oracle.trace))
    if n2 > largest + k:
        return OracleDecision(EQUATABLE, oracle.queries_used, tuple(oracle.trace))
    if n2 == largest + k:
        trivials = tuple(v for p in parts if len(p) == 1 for v in p)
        verdict = EQUATABLE if not oracle.query(trivials) else SEPARABLE
        return OracleDecision(verdict, oracle.queries_used, tuple(oracle.trace))
    raise OracleInconsistent(
        f"{n2} non-loops with largest line {largest} impossible at rank {k}"
    )


def build_adversary(k: int, budget: Optional[int] = None) -> AdversaryInstance:
    """The two paving k-matroids on 2k vertices that agree on every subset
    query except the removed complementary pair."""
    if k < 2:
        raise ValueError("adversary construction needs k >= 2")
    n = 2 * k
    if budget is not None and comb(n, k) > budget:
        raise BudgetExceeded(f"C({n},{k}) exceeds budget {budget}")
    f1 = tuple(range(1, k + 1))
    f2 = tuple(range(k + 1, n + 1))
    full = frozenset(combinations(range(1, n + 1), k))
    h1 = Hypergraph(n, k, full)
    h2 = Hypergraph(n, k, full - {f1, f2})
    for h in (h1, h2):
        m = BasisMatroid(h)  # raises NotAMatroid if exchange fails
        if not is_paving(m):
            raise InternalVerificationError("adversary instance is not paving")
    if decide(h1, budget).kind != SEPARABLE:
        raise InternalVerificationError("complete hypergraph not separable")
    if decide(h2, budget).kind != EQUATABLE:
        raise InternalVerificationError("punctured hypergraph not equatable")
    return AdversaryInstance(k, h1, h2, f1, f2)


def independent_in(h: Hypergraph, subset: KSet) -> bool:
    """Independence of a subset when h's edges are read as matroid bases."""
    s = set(subset)
    if len(s) > h.k:
        return False
    return any(s <= set(e) for e in h.edges)


def replay_identical(inst: AdversaryInstance, queries: tuple[KSet, ...]) -> bool:
    """Whether h1 and h2 answer identically on every query in the transcript.

    They can differ only on the k-set queries f1 and f2, which is exactly
    what makes any strategy avoiding both unable to tell the instances apart.
    """
    return all(
        independent_in(inst.h1, q) == independent_in(inst.h2, q) for q in queries
    )


class _QueryBudgetExhausted(Exception):
    pass


def run_indistinguishability_check(
    inst: AdversaryInstance, strategy: Strategy, query_budget: int
) -> IndistinguishabilityReport:
    """Run a strategy against an oracle answering as h1 and audit its trace.

    The certification criterion is pair-based: each queried k-set touches
    exactly one complementary pair, so fewer touched pairs than C(2k,k)/2
    leaves a pair (F1', F2') no query can distinguish, and the instance h1
    minus that pair is an equatable paving matroid consistent with the whole
    transcript. The classical 2^k - 1 query threshold for this argument is
    reported alongside.
    """
    k, n = inst.k, 2 * inst.k

    def h1_answer(subset: KSet) -> bool:
        if len(oracle.trace) >= query_budget:
            raise _QueryBudgetExhausted
        return len(subset) <= k  # complete k-hypergraph: every small set is independent

    oracle = IndependenceOracle(h1_answer)
    verdict: Optional[str] = None
    budget_exhausted = False
    try:
        outcome = strategy(oracle, n, k)
        verdict = outcome.verdict if isinstance(outcome, OracleDecision) else str(outcome)
    except _QueryBudgetExhausted:
        budget_exhausted = True

    trace = tuple(oracle.trace)
    kset_queries = tuple(q for q, _ in trace if len(q) == k)
    queried = set(kset_queries)
    consistent = inst.f1 not in queried and inst.f2 not in queried

    all_ksets = list(combinations(range(1, n + 1), k))
    pairs_total = comb(n, k) // 2
    touched: set[tuple[KSet, ...]] = set()
    for q in queried:
        partner = tuple(sorted(set(range(1, n + 1)) - set(q)))
        touched.add(tuple(sorted((q, partner))))
    unqueried_pair = None
    for g in all_ksets:
        partner = tuple(sorted(set(range(1, n + 1)) - set(g)))
        pair = tuple(sorted((g, partner)))
        if pair not in touched:
            unqueried_pair = (pair[0], pair[1])
            break

    alternative_kind = None
    if unqueried_pair is not None:
        alt = Hypergraph(n, k, inst.h1.edges - set(unqueried_pair))
        alternative_kind = decide(alt).kind

    return IndistinguishabilityReport(
        verdict=verdict,
        queries=len(trace),
        trace=trace,
        kset_queries=kset_queries,
        consistent_with_h2=consistent,
        pairs_total=pairs_total,
        pairs_touched=len(touched),
        query_threshold=2 ** k - 1,
        pair_threshold=pairs_total,
        unqueried_pair=unqueried_pair,
        alternative_kind=alternative_kind,
        budget_exhausted=budget_exhausted,
    )


def strategy_no_queries(oracle: IndependenceOracle, n: int, k: int) -> str:
    """Baseline strategy: answer separable without asking anything."""
    return SEPARABLE


def strategy_binary_algorithm(oracle: IndependenceOracle, n: int, k: int) -> OracleDecision:
    """The binary-matroid algorithm used as an adversary strategy; it only
    ever queries singletons and pairs."""
    return decide_binary_via_oracle(n, k, oracle)
