"""
Tests for tools/theorem_sweep - catalog surveys and sweeps.
"""

import os
import sys
from fractions import Fraction

# Add parent directory to path
sys.path.insert(0, os.path.join(os.path.dirname(__file__), '..'))

from catalog import default_catalog
from report_manager import ReportExporter
from tools.bounds import GapConstant, GapSource
from tools.property_check import OverlapPolicy
from tools.theorem_sweep import empirical_gap, gustafson_check, probability_survey, run_sweep
from word_engine import named_word


class TestProbabilitySurvey:
    """Test per-group probabilities"""

    def test_commutator_up_to_eight(self):
        survey = {r.group: r for r in probability_survey(named_word("commutator"), default_catalog(8))}
        assert survey["symmetric(3)"].probability == Fraction(1, 2)
        assert survey["quaternion8"].probability == Fraction(5, 8)
        assert survey["cyclic(5)"].identity
        assert survey["cyclic(5)"].probability == 1

    def test_record_dict(self):
        record = probability_survey(named_word("commutator"), default_catalog(6))[-1]
        assert set(record.to_dict()) == {"group", "order", "abelian", "identity", "probability"}


class TestEmpiricalGap:
    """Test the catalog supremum"""

    def test_commutator(self):
        gap = empirical_gap(named_word("commutator"), 16)
        assert gap.gamma == Fraction(5, 8)
        assert gap.source is GapSource.EMPIRICAL

    def test_identity_everywhere_defaults_to_zero(self):
        """Up to order 5 every group is abelian"""
        assert empirical_gap(named_word("commutator"), 5).gamma == 0


class TestGustafsonCheck:
    """Test the 5/8 ceiling"""

    def test_up_to_sixteen(self):
        result = gustafson_check(16)
        assert result["holds"]
        assert result["maximum"] == "5/8"
        assert "quaternion8" in result["attaining"]
        assert "dihedral(4)" in result["attaining"]
        assert result["exceeding"] == []


class TestRunSweep:
    """Test catalog sweeps"""

    def test_commutator_small(self):
        report = run_sweep(named_word("commutator"), GapConstant.gustafson(), 12, 2, 6)
        assert report.violations == []
        assert report.metadata["gamma"]["gamma"] == "5/8"
        assert report.metadata["policies"] == [p.value for p in OverlapPolicy]
        assert report.summary()["groups"] == len(default_catalog(12))

    def test_deterministic_rows(self):
        first = run_sweep(named_word("engel2"), GapConstant(Fraction(3, 4)), 10, 2, 4)
        second = run_sweep(named_word("engel2"), GapConstant(Fraction(3, 4)), 10, 2, 4)
        assert ReportExporter.to_csv(first) == ReportExporter.to_csv(second)

    def test_parallel_matches_serial(self):
        serial = run_sweep(named_word("commutator"), GapConstant.gustafson(), 8, 2, 4, workers=1)
        parallel = run_sweep(named_word("commutator"), GapConstant.gustafson(), 8, 2, 4, workers=2)
        assert ReportExporter.to_csv(serial) == ReportExporter.to_csv(parallel)
