"""
End-to-end acceptance checks: exact sweeps over the default catalog and
cross-checks against brute force.
"""

import pytest
import numpy as np
import os
import sys
import random
from fractions import Fraction

# Add parent directory to path
sys.path.insert(0, os.path.join(os.path.dirname(__file__), '..'))

from catalog import builtin, default_catalog
from tools.bounds import GapConstant, derivation_chain_holds, kst_bound_holds
from tools.property_check import (
    OverlapPolicy,
    PropertyQuery,
    has_wmn_property,
    naive_oracle,
    property_frontier,
    witness_is_valid,
)
from tools.theorem_sweep import empirical_gap, gustafson_check, run_sweep
from tools.wordgraph import WordGraph, build, satisfaction_probability
from word_engine import is_identity_in, named_word, parse


class TestGustafsonCeiling:
    """Commuting probability of non-abelian groups never exceeds 5/8"""

    def test_catalog_64(self):
        result = gustafson_check(64)
        assert result["holds"]
        assert result["exceeding"] == []
        assert result["maximum"] == "5/8"
        assert {"quaternion8", "dihedral(4)"} <= set(result["attaining"])


class TestCommutatorSweep:
    """Order bound with base 16/3 over the catalog up to order 128"""

    def test_no_violations(self):
        report = run_sweep(named_word("commutator"), GapConstant.gustafson(), 128, 3, 16)
        assert report.violations == []
        assert report.summary()["bound_rows"] > 0
        # 3^m |G| <= 16^m (n - 1) on every bound row
        for check in report.checks:
            if check.branch.value == "bound":
                assert 3 ** check.m * check.order <= 16 ** check.m * (check.n - 1)


class TestEngelSweep:
    """Second Engel word with the catalog supremum as gap constant"""

    def test_identity_pattern(self):
        w = named_word("engel2")
        for name, params in [("dihedral", (4,)), ("quaternion8", ()), ("heisenberg", (3,))]:
            assert is_identity_in(w, builtin(name, *params))
        for params in [(3,), (4,)]:
            assert not is_identity_in(w, builtin("symmetric", *params))

    def test_no_violations(self):
        w = named_word("engel2")
        gap = empirical_gap(w, 64)
        assert 0 < gap.gamma < 1
        report = run_sweep(w, gap, 64, 3, 16)
        assert report.violations == []
        assert report.metadata["gamma"]["source"] == "empirical-catalog-supremum"


class TestDirectedEdgeBound:
    """Loop-free digraphs without a disjoint complete bipartite piece obey the edge bound"""

    def test_random_digraphs(self):
        rng = np.random.default_rng(2024)
        checked = 0
        for _ in range(240):
            t = int(rng.integers(1, 13))
            density = float(rng.uniform(0.05, 0.95))
            matrix = rng.random((t, t)) < density
            np.fill_diagonal(matrix, False)
            graph = WordGraph.from_matrix(matrix)
            for r in range(1, 4):
                for s in range(1, 4):
                    q = PropertyQuery(r, s, OverlapPolicy.REQUIRE_DISJOINT)
                    exhaustive = naive_oracle(graph, q, max_order=12)
                    assert has_wmn_property(graph, q).has_property == exhaustive.has_property
                    if exhaustive.has_property:
                        assert kst_bound_holds(t, r, s, graph.arc_count).holds, (t, r, s, matrix.tolist())
                        checked += 1
        assert checked > 0


class TestOracleEquivalence:
    """Pruned search agrees with brute force on small catalog groups"""

    @pytest.mark.parametrize("word_name", ["commutator", "engel2"])
    def test_catalog_16(self, word_name):
        w = named_word(word_name)
        for entry in default_catalog(16):
            g = entry.build()
            graph = build(g, w)
            for policy in OverlapPolicy:
                for m in range(1, 4):
                    for n in range(1, 4):
                        q = PropertyQuery(m, n, policy)
                        fast = has_wmn_property(graph, q)
                        slow = naive_oracle(graph, q)
                        assert fast.has_property == slow.has_property, (entry.name, q)
                        assert witness_is_valid(g, w, fast, q)
                        assert witness_is_valid(g, w, slow, q)


class TestDerivationChain:
    """Random tuples never break the implication"""

    def test_random_tuples(self):
        rnd = random.Random(7)
        for _ in range(10 ** 4):
            t = rnd.randint(1, 10 ** 6)
            gamma = Fraction(rnd.randint(0, 99), 100)
            n = rnd.randint(1, 20)
            m = rnd.randint(1, n)
            # bias eta towards the dense end where the hypotheses can hold
            eta = rnd.choice([rnd.randint(0, t * t), t * t - rnd.randint(0, t)])
            report = derivation_chain_holds(t, max(eta, 0), gamma, m, n)
            assert report.holds, report.context


class TestFixedPoints:
    """Exact reference values"""

    def test_probabilities(self):
        commutator = named_word("commutator")
        assert satisfaction_probability(build(builtin("symmetric", 3), commutator)) == Fraction(1, 2)
        assert satisfaction_probability(build(builtin("quaternion8"), commutator)) == Fraction(5, 8)

    def test_frontier(self):
        assert property_frontier(build(builtin("symmetric", 3), named_word("commutator")), 1) == 4

    def test_engel2_length(self):
        assert len(parse("[x,y,y]")) == 10
