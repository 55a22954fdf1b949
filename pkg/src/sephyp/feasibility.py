"""Exact rational separability decision with independently verifiable certificates.

Everything here runs over fractions.Fraction; there is no floating point and
no tolerance. A hypergraph is either separable (a vertex labeling x realizes
the edge set as the k-sets of nonnegative sum) or equatable (a nonnegative,
nonzero k-set labeling balances edge mass against non-edge mass at every
vertex), never both; decide() returns whichever certificate exists and always
self-checks it before returning.

Two independent deciders are provided: decide() runs an exact phase-I simplex
(Bland's rule, lexicographic column order), and decide_fm() runs
Fourier-Motzkin elimination with multiplier tracking. They share nothing but
the verifiers.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from math import comb, gcd, lcm
from typing import Optional, Union

from .errors import BudgetExceeded, InternalVerificationError
from .hypercore import Hypergraph, KSet

SetLabeling = dict[KSet, Fraction]

# decide() refuses above this many k-set rows.
DECIDE_ROW_BUDGET = 200_000
# decide_fm() refuses above this many vertices (variable-elimination blowup).
FM_VERTEX_BUDGET = 6
# find_binary_certificate() refuses above this many support-combinations.
CERT_SEARCH_BUDGET = 5_000_000

ZERO = Fraction(0)
ONE = Fraction(1)


@dataclass(frozen=True)
class SeparableCertificate:
    """Vertex labeling whose nonnegative-sum k-sets are exactly the edges."""

    x: tuple[Fraction, ...]

    kind = "separable"


@dataclass(frozen=True)
class EquatableCertificate:
    """Nonnegative nonzero k-set labeling balancing edges against non-edges
    at every vertex; stored sparsely as sorted (k-set, value) entries."""

    y: tuple[tuple[KSet, Fraction], ...]

    kind = "equatable"

    def as_dict(self) -> SetLabeling:
        return dict(self.y)


Certificate = Union[SeparableCertificate, EquatableCertificate]


@dataclass(frozen=True)
class FarkasSystem:
    """The inequality system Ax <= b whose feasibility is separability.

    Rows are indexed by all k-subsets G in lexicographic order. An edge row
    reads -x(G) <= 0 and a non-edge row reads x(G) <= -1, so a solution x
    satisfies x(E) >= 0 exactly on edges and x(F) < 0 strictly on non-edges.
    """

    rows: tuple[KSet, ...]
    matrix: tuple[tuple[int, ...], ...]
    rhs: tuple[int, ...]


def build_system(h: Hypergraph, budget: Optional[int] = None) -> FarkasSystem:
    cap = DECIDE_ROW_BUDGET if budget is None else budget
    m = comb(h.n, h.k)
    if m > cap:
        raise BudgetExceeded(f"C({h.n},{h.k}) = {m} rows exceeds budget {cap}")
    rows = []
    matrix = []
    rhs = []
    for g in combinations(range(1, h.n + 1), h.k):
        is_edge = g in h.edges
        sign = -1 if is_edge else 1
        row = [0] * h.n
        for v in g:
            row[v - 1] = sign
        rows.append(g)
        matrix.append(tuple(row))
        rhs.append(0 if is_edge else -1)
    return FarkasSystem(tuple(rows), tuple(matrix), tuple(rhs))


def _coprime_integer_scale(values: list[Fraction]) -> list[Fraction]:
    """Scale a rational vector by a positive rational to coprime integers."""
    nonzero = [v for v in values if v]
    if not nonzero:
        return values
    denom_lcm = 1
    for v in nonzero:
        denom_lcm = lcm(denom_lcm, v.denominator)
    scaled = [v * denom_lcm for v in values]
    g = 0
    for v in scaled:
        g = gcd(g, abs(v.numerator))
    if g > 1:
        scaled = [v / g for v in scaled]
    return scaled


def _package_separable(h: Hypergraph, x: list[Fraction]) -> SeparableCertificate:
    cert = SeparableCertificate(tuple(_coprime_integer_scale(x)))
    violation = separating_violation(h, cert.x)
    if violation is not None:
        raise InternalVerificationError(f"separable certificate fails at {violation}")
    return cert


def _package_equatable(h: Hypergraph, labeling: SetLabeling) -> EquatableCertificate:
    keys = sorted(g for g, v in labeling.items() if v)
    vals = _coprime_integer_scale([labeling[g] for g in keys])
    cert = EquatableCertificate(tuple(zip(keys, vals)))
    violation = equatable_violation(h, cert.as_dict())
    if violation is not None:
        raise InternalVerificationError(f"equatable certificate fails: {violation}")
    return cert


def separating_violation(h: Hypergraph, x) -> Optional[KSet]:
    """First k-set (lexicographic) violating the separability equation, or None."""
    vals = [Fraction(v) for v in x]
    if len(vals) != h.n:
        raise ValueError(f"labeling has length {len(vals)}, expected {h.n}")
    for g in combinations(range(1, h.n + 1), h.k):
        total = sum(vals[v - 1] for v in g)
        if (g in h.edges) != (total >= 0):
            return g
    return None


def verify_separating(h: Hypergraph, x) -> bool:
    return separating_violation(h, x) is None


def equatable_violation(h: Hypergraph, y: SetLabeling) -> Optional[str]:
    """Human-readable description of the first defect in y, or None if valid."""
    full = set(combinations(range(1, h.n + 1), h.k))
    for g in sorted(y):
        if g not in full:
            return f"set {g} is not a {h.k}-subset of 1..{h.n}"
        if y[g] < 0:
            return f"set {g} has negative value {y[g]}"
    if not any(y.values()):
        return "labeling is identically zero"
    for v in range(1, h.n + 1):
        edge_mass = sum((val for g, val in y.items() if v in g and g in h.edges), ZERO)
        non_mass = sum((val for g, val in y.items() if v in g and g not in h.edges), ZERO)
        if edge_mass != non_mass:
            return f"vertex {v} imbalanced: edge mass {edge_mass}, non-edge mass {non_mass}"
    return None


def verify_equatable(h: Hypergraph, y: SetLabeling) -> bool:
    return equatable_violation(h, y) is None


def decide(h: Hypergraph, budget: Optional[int] = None) -> Certificate:
    """Classify h, returning a certificate that has passed its verifier.

    Runs an exact phase-I simplex on the alternative (equatability) system
    y A = 0, y >= 0, y b = -1 in equality form: feasibility yields y directly,
    and on infeasibility the final dual values scale to a separating x. Bland's
    rule plus the fixed lexicographic column order make the result
    deterministic within a build.
    """
    system = build_system(h, budget)
    m = len(system.rows)
    n = h.n
    rows_count = n + 1
    width = m + rows_count + 1  # y columns, artificial columns, rhs

    # Equality rows: n vertex-balance rows (columns of A) plus the
    # normalization row -b . y = 1; rhs is 0 everywhere except that last row.
    tableau: list[list[Fraction]] = []
    for i in range(rows_count):
        row = [ZERO] * width
        if i < n:
            for g in range(m):
                a = system.matrix[g][i]
                if a:
                    row[g] = Fraction(a)
        else:
            for g in range(m):
                if system.rhs[g]:
                    row[g] = ONE  # -b entries: 1 on non-edges
            row[-1] = ONE
        row[m + i] = ONE
        tableau.append(row)

    basis = [m + i for i in range(rows_count)]
    # Phase-I objective row: reduced cost of column j is -sum of its entries
    # (cost 0 minus dual prices, all 1 on the artificial basis); artificial
    # columns themselves are basic with reduced cost 0. The rhs cell holds
    # minus the objective value.
    z = [ZERO] * width
    for j in range(width):
        total = ZERO
        for i in range(rows_count):
            total += tableau[i][j]
        z[j] = -total
    for i in range(rows_count):
        z[m + i] = ZERO

    while True:
        pivot_col = -1
        for j in range(width - 1):
            if z[j] < 0:
                pivot_col = j
                break
        if pivot_col < 0:
            break
        pivot_row = -1
        best = None
        for i in range(rows_count):
            coeff = tableau[i][pivot_col]
            if coeff > 0:
                ratio = tableau[i][-1] / coeff
                if best is None or ratio < best or (ratio == best and basis[i] < basis[pivot_row]):
                    best = ratio
                    pivot_row = i
        if pivot_row < 0:
            raise InternalVerificationError("phase-I simplex unbounded")
        prow = tableau[pivot_row]
        inv = ONE / prow[pivot_col]
        if inv != 1:
            for j in range(width):
                if prow[j]:
                    prow[j] *= inv
        for i in range(rows_count):
            if i == pivot_row:
                continue
            factor = tableau[i][pivot_col]
            if factor:
                target = tableau[i]
                for j in range(width):
                    if prow[j]:
                        target[j] -= factor * prow[j]
        factor = z[pivot_col]
        if factor:
            for j in range(width):
                if prow[j]:
                    z[j] -= factor * prow[j]
        basis[pivot_row] = pivot_col

    objective = -z[-1]
    if objective == 0:
        labeling: SetLabeling = {}
        for i, col in enumerate(basis):
            if col < m and tableau[i][-1]:
                labeling[system.rows[col]] = tableau[i][-1]
        return _package_equatable(h, labeling)

    # Infeasible: dual values u_i = 1 - reduced cost of artificial i satisfy
    # A (u[:n]) <= u[n] b with u[n] = objective > 0, so x = u[:n] / u[n].
    u = [ONE - z[m + i] for i in range(rows_count)]
    lam = u[n]
    if lam <= 0:
        raise InternalVerificationError("Farkas scaling factor not positive")
    x = [u[i] / lam for i in range(n)]
    return _package_separable(h, x)


def kind_of(cert: Certificate) -> str:
    return cert.kind


# ---------------------------------------------------------------------------
# Fourier-Motzkin route
# ---------------------------------------------------------------------------

_FmRow = tuple[list[Fraction], Fraction, list[Fraction]]  # coeffs, rhs, multiplier


def _fm_normalize(coeffs: list[Fraction], rhs: Fraction, mult: list[Fraction]) -> _FmRow:
    """Scale a derived inequality to coprime integer coefficients; the
    multiplier vector is scaled identically to stay a witness."""
    nonzero = [c for c in coeffs if c]
    if rhs:
        nonzero.append(rhs)
    if not nonzero:
        return coeffs, rhs, mult
    denom_lcm = 1
    for c in nonzero:
        denom_lcm = lcm(denom_lcm, c.denominator)
    g = 0
    for c in nonzero:
        g = gcd(g, abs(c.numerator) * (denom_lcm // c.denominator))
    scale = Fraction(denom_lcm, g if g else 1)
    if scale != 1:
        coeffs = [c * scale for c in coeffs]
        rhs = rhs * scale
        mult = [c * scale for c in mult]
    return coeffs, rhs, mult


def decide_fm(h: Hypergraph, max_vertices: Optional[int] = None) -> Certificate:
    """Same contract as decide(), via Fourier-Motzkin elimination on Ax <= b.

    Each surviving inequality carries the nonnegative multiplier vector that
    derives it from the original rows; an all-zero inequality with negative
    right-hand side therefore hands us the equatability labeling directly.
    """
    cap = FM_VERTEX_BUDGET if max_vertices is None else max_vertices
    if h.n > cap:
        raise BudgetExceeded(f"Fourier-Motzkin guard: n = {h.n} > {cap}")
    system = build_system(h)
    m = len(system.rows)
    n = h.n

    def unit(i: int) -> list[Fraction]:
        row = [ZERO] * m
        row[i] = ONE
        return row

    rows: list[_FmRow] = [
        ([Fraction(c) for c in system.matrix[i]], Fraction(system.rhs[i]), unit(i))
        for i in range(m)
    ]
    stages: list[list[_FmRow]] = []

    def contradiction(rows_list: list[_FmRow]) -> Optional[_FmRow]:
        for row in rows_list:
            if not any(row[0]) and row[1] < 0:
                return row
        return None

    for var in range(n):
        stages.append(rows)
        bad = contradiction(rows)
        if bad is not None:
            labeling = {system.rows[i]: bad[2][i] for i in range(m) if bad[2][i]}
            return _package_equatable(h, labeling)
        pos = [r for r in rows if r[0][var] > 0]
        neg = [r for r in rows if r[0][var] < 0]
        zero = [r for r in rows if r[0][var] == 0]
        combined: dict[tuple[Fraction, ...], _FmRow] = {}
        found_contradiction: list[_FmRow] = []

        def keep(row: _FmRow) -> None:
            coeffs, rhs, _ = row
            if not any(coeffs):
                if rhs < 0 and not found_contradiction:
                    found_contradiction.append(row)
                return  # all-zero rows are trivially true or a kept contradiction
            key = tuple(coeffs)
            old = combined.get(key)
            if old is None or rhs < old[1]:
                combined[key] = row

        for row in zero:
            keep(row)
        for p in pos:
            pc, prhs, pm = p
            pscale = ONE / pc[var]
            for q in neg:
                qc, qrhs, qm = q
                qscale = ONE / -qc[var]
                coeffs = [pc[j] * pscale + qc[j] * qscale for j in range(n)]
                coeffs[var] = ZERO
                rhs = prhs * pscale + qrhs * qscale
                mult = [pm[j] * pscale + qm[j] * qscale for j in range(m)]
                keep(_fm_normalize(coeffs, rhs, mult))
        rows = found_contradiction + list(combined.values())
        if len(rows) > 200_000:
            raise BudgetExceeded("Fourier-Motzkin row blowup")

    bad = contradiction(rows)
    if bad is not None:
        labeling = {system.rows[i]: bad[2][i] for i in range(m) if bad[2][i]}
        return _package_equatable(h, labeling)

    # Feasible: back-substitute, tightest lower bound first, else upper, else 0.
    x: list[Fraction] = [ZERO] * n
    for var in range(n - 1, -1, -1):
        lower = upper = None
        for coeffs, rhs, _ in stages[var]:
            c = coeffs[var]
            if not c:
                continue
            resid = rhs - sum((coeffs[w] * x[w] for w in range(var + 1, n)), ZERO)
            bound = resid / c
            if c > 0:
                upper = bound if upper is None else min(upper, bound)
            else:
                lower = bound if lower is None else max(lower, bound)
        if lower is not None:
            x[var] = lower
        elif upper is not None:
            x[var] = upper
    return _package_separable(h, x)


# ---------------------------------------------------------------------------
# 0/1 certificate search
# ---------------------------------------------------------------------------


def find_binary_certificate(
    h: Hypergraph, max_support: int, budget: Optional[int] = None
) -> Optional[SetLabeling]:
    """Smallest-support 0/1 labeling satisfying the balance equations, if any.

    Returns the lexicographically first support of the smallest feasible
    size, exactly as a naive (size, then lexicographic) scan would. Summing
    the balance equations over all vertices forces the support to contain
    equally many edges and non-edges, so odd sizes are skipped and each even
    size 2t is searched by matching vertex-count vectors of t-subsets of
    edges against t-subsets of non-edges.
    """
    if max_support < 1:
        raise ValueError("max_support must be positive")
    edges = h.sorted_edges()
    non = h.non_edges()
    cap = CERT_SEARCH_BUDGET if budget is None else budget
    cost = 0
    for s in range(2, max_support + 1, 2):
        t = s // 2
        cost += comb(len(edges), t) + comb(len(non), t)
    if cost > cap:
        raise BudgetExceeded(f"certificate search needs {cost} combinations, budget {cap}")

    def count_vector(sets: tuple[KSet, ...]) -> tuple[int, ...]:
        counts = [0] * h.n
        for g in sets:
            for v in g:
                counts[v - 1] += 1
        return tuple(counts)

    for s in range(2, max_support + 1, 2):
        t = s // 2
        if t > len(edges) or t > len(non):
            continue
        by_vector: dict[tuple[int, ...], list[tuple[KSet, ...]]] = {}
        for ec in combinations(edges, t):
            by_vector.setdefault(count_vector(ec), []).append(ec)
        best: Optional[tuple[KSet, ...]] = None
        for fc in combinations(non, t):
            for ec in by_vector.get(count_vector(fc), ()):
                support = tuple(sorted(ec + fc))
                if best is None or support < best:
                    best = support
        if best is not None:
            return {g: ONE for g in best}
    return None
