"""
Deciding the w_{m,n}-property on a word graph.

A group has the property when every m-set M and n-set N contain some
x in M, y in N with w(x, y) = 1. It fails exactly when the word graph
contains a complete bipartite configuration: an m-set whose common
out-neighbourhood holds n vertices (outside M when the policy asks for
disjoint parts).

The search walks m-subsets in lexicographic order, intersecting bit rows.
Two cuts keep it small:
    - a partial intersection that already has fewer than n bits is dropped
      (intersections only shrink);
    - at each depth a candidate whose row equals one already tried there is
      skipped, since its subtree maps onto the earlier one.
"""

from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from itertools import combinations
from typing import Any, Dict, Iterable, List, Optional, Sequence, Tuple
import logging

import config
from group_core import Group
from tools.bounds import BoundReport, GapConstant, format_number, kst_bound_holds, main_bound_holds
from tools.wordgraph import WordGraph, bits, build, satisfaction_probability
from word_engine import Assignment, Word, evaluate, is_identity_in

logger = logging.getLogger(__name__)


# ----------------------------------------------------------------------
# Errors
# ----------------------------------------------------------------------
class QueryError(ValueError):
    pass


class SearchCapExceeded(ValueError):
    pass


class InfeasibleEnumeration(ValueError):
    pass


# ----------------------------------------------------------------------
# Queries and results
# ----------------------------------------------------------------------
class OverlapPolicy(str, Enum):
    """Whether M and N may share elements"""
    ALLOW_OVERLAP = "allow_overlap"
    REQUIRE_DISJOINT = "require_disjoint"


@dataclass(frozen=True)
class PropertyQuery:
    m: int
    n: int
    overlap_policy: OverlapPolicy = OverlapPolicy.ALLOW_OVERLAP

    def __post_init__(self):
        if self.m < 1 or self.n < 1:
            raise QueryError(f"m and n must be positive, got m={self.m}, n={self.n}")
        object.__setattr__(self, "overlap_policy", OverlapPolicy(self.overlap_policy))


class PropertyResult:
    """Outcome of a property check; witnesses are present iff the property fails."""

    def __init__(
        self,
        has_property: bool,
        witness_M: Optional[Tuple[int, ...]] = None,
        witness_N: Optional[Tuple[int, ...]] = None,
        subsets_examined: int = 0,
    ):
        self.has_property = has_property
        self.witness_M = witness_M
        self.witness_N = witness_N
        self.subsets_examined = subsets_examined

    def to_dict(self) -> Dict[str, Any]:
        return {
            "has_property": self.has_property,
            "witness_M": list(self.witness_M) if self.witness_M is not None else None,
            "witness_N": list(self.witness_N) if self.witness_N is not None else None,
            "subsets_examined": self.subsets_examined,
        }

    def __repr__(self) -> str:
        return f"PropertyResult(has_property={self.has_property}, M={self.witness_M}, N={self.witness_N})"


def _check_caps(graph: WordGraph, m: int, max_m: Optional[int], max_order: Optional[int]) -> None:
    max_m = config.SEARCH_MAX_M if max_m is None else max_m
    max_order = config.SEARCH_MAX_ORDER if max_order is None else max_order
    if m > max_m:
        raise SearchCapExceeded(f"m={m} exceeds the search cap {max_m}")
    if graph.vertex_count > max_order:
        raise SearchCapExceeded(f"graph on {graph.vertex_count} vertices exceeds the search cap {max_order}")


# ----------------------------------------------------------------------
# Search
# ----------------------------------------------------------------------
def has_wmn_property(
    graph: WordGraph,
    q: PropertyQuery,
    max_m: Optional[int] = None,
    max_order: Optional[int] = None,
) -> PropertyResult:
    """
    Decide the property for (q.m, q.n).

    The witness, when the property fails, is the lexicographically first
    failing M together with the n smallest valid elements of N.
    """
    t = graph.vertex_count
    m, n = q.m, q.n
    if m > t or n > t:
        return PropertyResult(True)
    _check_caps(graph, m, max_m, max_order)

    rows = graph.rows
    allow = q.overlap_policy is OverlapPolicy.ALLOW_OVERLAP
    chosen: List[int] = []
    examined = 0

    def dfs(start: int, acc: int, mask: int) -> Optional[int]:
        nonlocal examined
        depth = len(chosen)
        if depth == m:
            examined += 1
            avail = acc if allow else acc & ~mask
            return avail if avail.bit_count() >= n else None
        tried = set()
        for v in range(start, t - (m - depth) + 1):
            row = rows[v]
            # Under the disjoint policy only vertices outside the running
            # intersection are interchangeable.
            collapsible = allow or not (acc >> v) & 1
            if collapsible and row in tried:
                continue
            new_acc = acc & row
            new_mask = mask | (1 << v)
            reach = new_acc if allow else new_acc & ~new_mask
            if reach.bit_count() >= n:
                chosen.append(v)
                found = dfs(v + 1, new_acc, new_mask)
                if found is not None:
                    return found
                chosen.pop()
            if collapsible:
                tried.add(row)
        return None

    avail = dfs(0, (1 << t) - 1, 0)
    if avail is None:
        return PropertyResult(True, subsets_examined=examined)
    return PropertyResult(False, tuple(chosen), tuple(bits(avail)[:n]), examined)


def property_frontier(
    graph: WordGraph,
    m: int,
    policy: OverlapPolicy = OverlapPolicy.ALLOW_OVERLAP,
    ceiling: Optional[int] = None,
    max_m: Optional[int] = None,
    max_order: Optional[int] = None,
) -> int:
    """
    Largest common out-neighbourhood over m-subsets (minus M when disjoint).

    The property holds exactly for n > frontier. `ceiling` is a known upper
    bound; the search stops as soon as it is reached.
    """
    if m < 1:
        raise QueryError(f"m must be positive, got {m}")
    t = graph.vertex_count
    if m > t:
        return 0
    _check_caps(graph, m, max_m, max_order)

    rows = graph.rows
    allow = OverlapPolicy(policy) is OverlapPolicy.ALLOW_OVERLAP
    best = 0

    def dfs(start: int, acc: int, mask: int, depth: int) -> bool:
        nonlocal best
        if depth == m:
            value = (acc if allow else acc & ~mask).bit_count()
            if value > best:
                best = value
            return ceiling is not None and best >= ceiling
        tried = set()
        for v in range(start, t - (m - depth) + 1):
            row = rows[v]
            collapsible = allow or not (acc >> v) & 1
            if collapsible and row in tried:
                continue
            new_acc = acc & row
            new_mask = mask | (1 << v)
            reach = new_acc if allow else new_acc & ~new_mask
            if reach.bit_count() > best and dfs(v + 1, new_acc, new_mask, depth + 1):
                return True
            if collapsible:
                tried.add(row)
        return False

    dfs(0, (1 << t) - 1, 0, 0)
    return best


def naive_oracle(
    graph: WordGraph,
    q: PropertyQuery,
    max_order: Optional[int] = None,
    max_set: Optional[int] = None,
) -> PropertyResult:
    """
    Brute-force check by enumerating (M, N) pairs with direct arc lookups.

    An M whose common out-neighbourhood is smaller than n cannot pair with
    any N, so its N loop is skipped; otherwise N runs over all n-subsets
    in lexicographic order until one passes.
    """
    max_order = config.ORACLE_MAX_ORDER if max_order is None else max_order
    max_set = config.ORACLE_MAX_SET if max_set is None else max_set
    t = graph.vertex_count
    if t > max_order or q.m > max_set or q.n > max_set:
        raise InfeasibleEnumeration(
            f"oracle limited to t <= {max_order} and m, n <= {max_set}; got t={t}, m={q.m}, n={q.n}"
        )

    disjoint = q.overlap_policy is OverlapPolicy.REQUIRE_DISJOINT
    examined = 0
    for M in combinations(range(t), q.m):
        common = [y for y in range(t) if all(graph.has_arc(x, y) for x in M) and not (disjoint and y in M)]
        if len(common) < q.n:
            continue
        for N in combinations(range(t), q.n):
            examined += 1
            if disjoint and set(M) & set(N):
                continue
            if all(graph.has_arc(x, y) for x in M for y in N):
                return PropertyResult(False, M, N, examined)
    return PropertyResult(True, subsets_examined=examined)


def witness_is_valid(g: Group, w: Word, result: PropertyResult, q: PropertyQuery) -> bool:
    """Re-check a failing result's witness by evaluating the word directly."""
    if result.has_property:
        return result.witness_M is None and result.witness_N is None
    M, N = result.witness_M, result.witness_N
    if M is None or N is None or len(set(M)) != q.m or len(set(N)) != q.n:
        return False
    if q.overlap_policy is OverlapPolicy.REQUIRE_DISJOINT and set(M) & set(N):
        return False
    return all(evaluate(w, g, Assignment(x, y)) != g.identity_index for x in M for y in N)


# ----------------------------------------------------------------------
# Theorem rows
# ----------------------------------------------------------------------
class Branch(str, Enum):
    IDENTITY = "identity"
    BOUND = "bound"
    NOT_APPLICABLE = "not_applicable"


RECORD_COLUMNS = [
    "group", "order", "word", "m", "n", "policy", "property_holds", "frontier",
    "eta", "probability", "bound_lhs", "bound_rhs", "bound_holds", "branch",
]


class TheoremCheck:
    """One (group, word, m, n, policy) row of a theorem sweep."""

    def __init__(
        self,
        group: str,
        order: int,
        word: str,
        m: int,
        n: int,
        policy: OverlapPolicy,
        branch: Branch,
        property_holds: bool,
        frontier: int,
        eta: int,
        probability: Fraction,
        report: Optional[BoundReport] = None,
        kst_holds: Optional[bool] = None,
    ):
        self.group = group
        self.order = order
        self.word = word
        self.m = m
        self.n = n
        self.policy = OverlapPolicy(policy)
        self.branch = Branch(branch)
        self.property_holds = property_holds
        self.frontier = frontier
        self.eta = eta
        self.probability = probability
        self.report = report
        self.kst_holds = kst_holds

    @property
    def violation(self) -> bool:
        return self.branch is Branch.BOUND and self.report is not None and not self.report.holds

    def sort_key(self):
        return (self.order, self.group, self.m, self.n, self.policy.value)

    def to_row(self) -> Dict[str, str]:
        if self.branch is Branch.BOUND:
            bound_holds = "true" if self.report.holds else "false"
        else:
            bound_holds = "n/a"
        return {
            "group": self.group,
            "order": str(self.order),
            "word": self.word,
            "m": str(self.m),
            "n": str(self.n),
            "policy": self.policy.value,
            "property_holds": "true" if self.property_holds else "false",
            "frontier": str(self.frontier),
            "eta": str(self.eta),
            "probability": format_number(self.probability),
            "bound_lhs": format_number(self.report.lhs) if self.report else "",
            "bound_rhs": format_number(self.report.rhs) if self.report else "",
            "bound_holds": bound_holds,
            "branch": self.branch.value,
        }


def verify_theorem_on(
    g: Group,
    w: Word,
    gamma: GapConstant,
    m_max: int,
    n_max: int,
    policies: Sequence[OverlapPolicy] = (OverlapPolicy.ALLOW_OVERLAP,),
    graph: Optional[WordGraph] = None,
) -> List[TheoremCheck]:
    """
    Rows for every 1 <= m <= n within the caps.

    Identity words give the trivial branch. Otherwise, where the property
    holds the order bound is checked (and must hold); where it fails the
    row is recorded as not applicable.
    """
    word = w.label
    if is_identity_in(w, g):
        return [
            TheoremCheck(g.name, g.order, word, m, n, policy, Branch.IDENTITY, True, 0, 0, Fraction(1))
            for policy in policies
            for m in range(1, min(m_max, n_max) + 1)
            for n in range(m, n_max + 1)
        ]

    graph = graph or build(g, w)
    probability = satisfaction_probability(graph)
    overlap_frontiers: Dict[int, int] = {}
    checks: List[TheoremCheck] = []
    for policy in policies:
        policy = OverlapPolicy(policy)
        for m in range(1, min(m_max, n_max) + 1):
            if policy is OverlapPolicy.ALLOW_OVERLAP:
                frontier = overlap_frontiers.setdefault(m, property_frontier(graph, m, policy))
            else:
                frontier = property_frontier(graph, m, policy, ceiling=overlap_frontiers.get(m))
            for n in range(m, n_max + 1):
                holds = n > frontier
                report = main_bound_holds(g.order, gamma, m, n)
                kst = kst_bound_holds(graph.vertex_count, m, n, graph.arc_count).holds if holds else None
                branch = Branch.BOUND if holds else Branch.NOT_APPLICABLE
                check = TheoremCheck(
                    g.name, g.order, word, m, n, policy, branch, holds, frontier,
                    graph.arc_count, probability, report, kst,
                )
                if check.violation:
                    logger.warning(f"Bound violated on {g.name} for {word} at m={m}, n={n}, {policy.value}")
                checks.append(check)
    return checks
