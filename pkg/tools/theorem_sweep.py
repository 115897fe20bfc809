"""
Catalog-wide sweeps.

- probability_survey: exact satisfaction probability of a word on every
  catalog group, flagging groups where the word is an identity.
- empirical_gap: the supremum of those probabilities over non-identity
  cases, used as the gap constant when no proven value is available.
- gustafson_check: commuting probability of every non-abelian group
  against the 5/8 ceiling.
- run_sweep: theorem rows for every catalog group, assembled in a
  deterministic order whatever the number of workers.
"""

from concurrent.futures import ProcessPoolExecutor
from fractions import Fraction
from typing import Any, Callable, Dict, Iterable, List, Optional, Sequence
import logging

import config
from catalog import CatalogEntry, default_catalog
from group_core import is_abelian
from report_manager import SweepReport
from tools.bounds import GapConstant, format_number
from tools.property_check import OverlapPolicy, TheoremCheck, verify_theorem_on
from tools.wordgraph import build, satisfaction_probability
from word_engine import Word, is_identity_in, named_word

logger = logging.getLogger(__name__)

GUSTAFSON_CEILING = Fraction(5, 8)


def _map(func: Callable, items: Sequence, workers: Optional[int]) -> List:
    workers = config.SWEEP_WORKERS if workers is None else workers
    if workers <= 1 or len(items) <= 1:
        return [func(item) for item in items]
    with ProcessPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(func, items))


class ProbabilityRecord:
    def __init__(self, group: str, order: int, abelian: bool, identity: bool, probability: Fraction):
        self.group = group
        self.order = order
        self.abelian = abelian
        self.identity = identity
        self.probability = probability

    def to_dict(self) -> Dict[str, Any]:
        return {
            "group": self.group,
            "order": self.order,
            "abelian": self.abelian,
            "identity": self.identity,
            "probability": format_number(self.probability),
        }


def _survey_one(args) -> ProbabilityRecord:
    entry, word = args
    g = entry.build()
    identity = is_identity_in(word, g)
    probability = Fraction(1) if identity else satisfaction_probability(build(g, word))
    return ProbabilityRecord(g.name, g.order, is_abelian(g), identity, probability)


def probability_survey(word: Word, entries: Iterable[CatalogEntry], workers: Optional[int] = None) -> List[ProbabilityRecord]:
    entries = list(entries)
    return _map(_survey_one, [(e, word) for e in entries], workers)


def empirical_gap(word: Word, max_order: int, workers: Optional[int] = None) -> GapConstant:
    """Catalog supremum of satisfaction probabilities where the word is not an identity."""
    survey = probability_survey(word, default_catalog(max_order), workers)
    gap = GapConstant.empirical(r.probability for r in survey if not r.identity)
    attained = [r.group for r in survey if not r.identity and r.probability == gap.gamma]
    logger.info(f"Empirical gamma for {word.label} up to order {max_order}: {gap.gamma} (attained by {', '.join(attained) or 'none'})")
    return gap


def gustafson_check(max_order: int, workers: Optional[int] = None) -> Dict[str, Any]:
    """
    Commuting probability of every non-abelian catalog group, compared
    exactly with 5/8.
    """
    survey = probability_survey(named_word("commutator"), default_catalog(max_order), workers)
    non_abelian = [r for r in survey if not r.abelian]
    exceeding = [r for r in non_abelian if r.probability > GUSTAFSON_CEILING]
    return {
        "max_order": max_order,
        "non_abelian": len(non_abelian),
        "maximum": format_number(max((r.probability for r in non_abelian), default=Fraction(0))),
        "attaining": [r.group for r in non_abelian if r.probability == GUSTAFSON_CEILING],
        "exceeding": [r.group for r in exceeding],
        "holds": not exceeding,
    }


def _sweep_one(args) -> List[TheoremCheck]:
    entry, word, gamma, m_max, n_max, policies = args
    checks = verify_theorem_on(entry.build(), word, gamma, m_max, n_max, policies)
    logger.debug(f"Swept {entry.name}: {len(checks)} rows")
    return checks


def run_sweep(
    word: Word,
    gamma: GapConstant,
    max_order: int,
    m_max: int,
    n_max: int,
    policies: Sequence[OverlapPolicy] = (OverlapPolicy.ALLOW_OVERLAP, OverlapPolicy.REQUIRE_DISJOINT),
    workers: Optional[int] = None,
) -> SweepReport:
    """
    Theorem rows for every group of the default catalog up to max_order.
    """
    entries = default_catalog(max_order)
    policies = tuple(OverlapPolicy(p) for p in policies)
    jobs = [(e, word, gamma, m_max, n_max, policies) for e in entries]
    checks = [c for batch in _map(_sweep_one, jobs, workers) for c in batch]
    report = SweepReport(
        checks,
        metadata={
            "word": word.label,
            "reduced_word": str(word),
            "gamma": gamma.to_dict(),
            "max_order": max_order,
            "m_max": m_max,
            "n_max": n_max,
            "policies": [p.value for p in policies],
        },
    )
    summary = report.summary()
    logger.info(f"Sweep of {word.label}: {summary['groups']} groups, {summary['rows']} rows, {summary['violations']} violations")
    return report
