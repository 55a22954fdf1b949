"""Exact LP decision, verifiers, Fourier-Motzkin route, and 0/1 search."""

from fractions import Fraction
from itertools import combinations

import pytest

from sephyp.errors import BudgetExceeded
from sephyp.feasibility import (
    EquatableCertificate,
    SeparableCertificate,
    build_system,
    decide,
    decide_fm,
    equatable_violation,
    find_binary_certificate,
    separating_violation,
    verify_equatable,
    verify_separating,
)
from sephyp.hypercore import Hypergraph

ZERO6 = tuple(Fraction(0) for _ in range(6))


class TestBuildSystem:
    def test_smallest_legal_instance(self):
        h = Hypergraph.from_edges(3, 1, [(1,)])
        system = build_system(h)
        assert system.rows == ((1,), (2,), (3,))
        assert system.matrix == ((-1, 0, 0), (0, 1, 0), (0, 0, 1))
        assert system.rhs == (0, -1, -1)

    def test_separable_example_shape(self, sep_six):
        system = build_system(sep_six)
        assert len(system.rows) == 20 and len(system.matrix[0]) == 6
        i = system.rows.index((1, 2, 4))
        assert system.matrix[i] == (-1, -1, 0, -1, 0, 0)
        assert system.rhs[i] == 0

    def test_complete_all_zero_rhs(self, complete_two_four):
        system = build_system(complete_two_four)
        assert all(b == 0 for b in system.rhs)
        for row, g in zip(system.matrix, system.rows):
            assert all(row[v - 1] == -1 for v in g)
            assert sum(map(abs, row)) == 2

    def test_budget(self, sep_six):
        with pytest.raises(BudgetExceeded):
            build_system(sep_six, budget=5)


class TestVerifiers:
    def test_known_separating_labeling(self, sep_six, sep_six_x):
        assert verify_separating(sep_six, sep_six_x)

    def test_zero_labeling_fails_on_first_non_edge(self, sep_six):
        assert separating_violation(sep_six, ZERO6) == (1, 2, 3)

    def test_zero_labeling_on_complete(self, complete_two_four):
        assert verify_separating(complete_two_four, (Fraction(0),) * 4)

    def test_known_equatable_labelings(self, eq_six, eq_six_y, paving_five, paving_five_y, counterexample_nine, counterexample_nine_y):
        assert verify_equatable(eq_six, eq_six_y)
        assert verify_equatable(paving_five, paving_five_y)
        assert verify_equatable(counterexample_nine, counterexample_nine_y)

    def test_zero_labeling_rejected(self, eq_six):
        assert equatable_violation(eq_six, {}) == "labeling is identically zero"
        assert not verify_equatable(eq_six, {(1, 3, 5): Fraction(0)})

    def test_negative_value_rejected(self, eq_six, eq_six_y):
        bad = dict(eq_six_y)
        bad[(1, 3, 4)] = Fraction(-1)
        assert not verify_equatable(eq_six, bad)

    def test_imbalance_names_vertex(self, eq_six):
        problem = equatable_violation(eq_six, {(1, 3, 4): Fraction(1)})
        assert problem is not None and "vertex" in problem

    def test_balance_aggregate(self, eq_six, eq_six_y, paving_five, paving_five_y, counterexample_nine, counterexample_nine_y):
        # summing the balance equations over vertices forces equal total mass
        for h, y in [(eq_six, eq_six_y), (paving_five, paving_five_y), (counterexample_nine, counterexample_nine_y)]:
            edge_mass = sum(v for g, v in y.items() if g in h.edges)
            non_mass = sum(v for g, v in y.items() if g not in h.edges)
            assert edge_mass == non_mass


class TestDecide:
    def test_reference_fixture_kinds(self, sep_six, eq_six, paving_five, counterexample_nine):
        assert decide(sep_six).kind == "separable"
        assert decide(eq_six).kind == "equatable"
        assert decide(paving_five).kind == "equatable"
        assert decide(counterexample_nine).kind == "equatable"

    def test_certificates_verify(self, sep_six, eq_six):
        sep = decide(sep_six)
        assert isinstance(sep, SeparableCertificate)
        assert verify_separating(sep_six, sep.x)
        eq = decide(eq_six)
        assert isinstance(eq, EquatableCertificate)
        assert verify_equatable(eq_six, eq.as_dict())

    def test_complete_separable(self, complete_two_four):
        cert = decide(complete_two_four)
        assert cert.kind == "separable"
        assert verify_separating(complete_two_four, cert.x)

    def test_empty_separable(self):
        h = Hypergraph.from_edges(5, 2, [])
        cert = decide(h)
        assert cert.kind == "separable"
        assert all(sum(cert.x[v - 1] for v in g) < 0 for g in combinations(range(1, 6), 2))

    def test_certificates_are_coprime_integers(self, sep_six, eq_six):
        sep = decide(sep_six)
        assert all(v.denominator == 1 for v in sep.x)
        eq = decide(eq_six)
        assert all(v.denominator == 1 and v > 0 for _, v in eq.y)

    def test_deterministic(self, eq_six, sep_six):
        assert decide(eq_six) == decide(eq_six)
        assert decide(sep_six) == decide(sep_six)

    def test_budget(self, counterexample_nine):
        with pytest.raises(BudgetExceeded):
            decide(counterexample_nine, budget=10)


class TestDecideFm:
    def test_agrees_with_lp_on_fixtures(self, sep_six, eq_six, paving_five, complete_two_four):
        for h in (sep_six, eq_six, paving_five, complete_two_four):
            assert decide_fm(h).kind == decide(h).kind

    def test_path_four_equatable(self, path_four):
        cert = decide_fm(path_four)
        assert cert.kind == "equatable"
        assert verify_equatable(path_four, cert.as_dict())

    def test_certificates_verify(self, sep_six, eq_six):
        sep = decide_fm(sep_six)
        assert verify_separating(sep_six, sep.x)
        eq = decide_fm(eq_six)
        assert verify_equatable(eq_six, eq.as_dict())

    def test_vertex_guard(self, counterexample_nine):
        with pytest.raises(BudgetExceeded):
            decide_fm(counterexample_nine)

    def test_exhaustive_agreement_n4(self):
        from sephyp.hypercore import enumerate_hypergraphs

        for h in enumerate_hypergraphs(4, 2):
            assert decide(h).kind == decide_fm(h).kind


class TestBinaryCertificateSearch:
    def test_counterexample_nine_within_two_k(self, counterexample_nine):
        y = find_binary_certificate(counterexample_nine, 6)
        assert y is not None and len(y) <= 6
        assert all(v == 1 for v in y.values())
        assert verify_equatable(counterexample_nine, y)

    def test_equatable_example_four_ones(self, eq_six):
        y = find_binary_certificate(eq_six, 4)
        assert y is not None and len(y) == 4
        assert verify_equatable(eq_six, y)

    def test_complete_has_none(self, complete_two_four):
        assert find_binary_certificate(complete_two_four, 6) is None

    def test_separable_never_yields(self, sep_six):
        assert find_binary_certificate(sep_six, 6) is None

    def test_budget(self, counterexample_nine):
        with pytest.raises(BudgetExceeded):
            find_binary_certificate(counterexample_nine, 12, budget=100)

    def test_smallest_support_first(self, eq_six):
        # the quadruple construction guarantees support 4 exists, so a larger
        # bound must still return a 4-support labeling
        y = find_binary_certificate(eq_six, 8)
        assert y is not None and len(y) == 4


class TestDichotomy:
    def test_never_both_kinds(self, sep_six, eq_six, paving_five, counterexample_nine, complete_two_four, path_four):
        for h in (sep_six, eq_six, paving_five, counterexample_nine, complete_two_four, path_four):
            kind = decide(h).kind
            if kind == "separable":
                assert find_binary_certificate(h, 2 * h.k) is None
            if h.n <= 6:
                assert decide_fm(h).kind == kind
