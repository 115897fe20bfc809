"""
Finite groups as dense Cayley tables.

A group is an indexed element set 0..t-1 together with its full
multiplication table, the index of the identity and an inverse lookup.
Every constructor funnels through the same validator, so a Group that
exists is a group: Latin square, two-sided identity, two-sided inverses
and associativity (exhaustive up to a configured order, sampled above).
"""

from typing import FrozenSet, List, Optional, Sequence
import logging

import numpy as np

import config

logger = logging.getLogger(__name__)


# ----------------------------------------------------------------------
# Errors
# ----------------------------------------------------------------------
class GroupError(ValueError):
    """Base class for malformed group input."""


class NotLatinSquare(GroupError):
    """`value` sits at both `positions` of the offending row (or column)."""

    def __init__(
        self,
        message: str,
        row: Optional[int] = None,
        column: Optional[int] = None,
        value: Optional[int] = None,
        positions: tuple = (),
    ):
        super().__init__(message)
        self.row = row
        self.column = column
        self.value = value
        self.positions = positions


class NoIdentity(GroupError):
    pass


class NoInverse(GroupError):
    def __init__(self, message: str, element: int):
        super().__init__(message)
        self.element = element


class NotAssociative(GroupError):
    def __init__(self, message: str, triple: tuple):
        super().__init__(message)
        self.triple = triple


class NotAPermutation(GroupError):
    def __init__(self, message: str, generator: int):
        super().__init__(message)
        self.generator = generator


class OrderCapExceeded(GroupError):
    def __init__(self, message: str, cap: int):
        super().__init__(message)
        self.cap = cap


class InvalidElement(GroupError):
    pass


# ----------------------------------------------------------------------
# Group
# ----------------------------------------------------------------------
class Group:
    """
    Immutable finite group backed by a Cayley table.

    table[a][b] is the index of a*b. The arrays are made read-only, so a
    Group can be shared freely between workers.
    """

    def __init__(self, table: np.ndarray, identity_index: int, inverse: np.ndarray, name: str = "group"):
        self.table = np.array(table, dtype=np.int64)
        self.table.setflags(write=False)
        self.inverse = np.array(inverse, dtype=np.int64)
        self.inverse.setflags(write=False)
        self.identity_index = int(identity_index)
        self.name = name

    @property
    def order(self) -> int:
        return int(self.table.shape[0])

    def __len__(self) -> int:
        return self.order

    def __repr__(self) -> str:
        return f"Group(name={self.name!r}, order={self.order})"

    def check_element(self, a: int) -> int:
        """Return a as a plain int, raising InvalidElement when out of range."""
        a = int(a)
        if not 0 <= a < self.order:
            raise InvalidElement(f"element {a} is not in [0, {self.order}) for {self.name}")
        return a

    def to_dict(self) -> dict:
        """Cayley table file object."""
        return {
            "name": self.name,
            "order": self.order,
            "table": self.table.tolist(),
        }


# ----------------------------------------------------------------------
# Validation
# ----------------------------------------------------------------------
def _first_repeat(line: np.ndarray) -> tuple:
    """(value, positions): a repeated value and where it occurs, or an out-of-range value."""
    t = line.shape[0]
    seen = {}
    for i, v in enumerate(line.tolist()):
        if not 0 <= v < t:
            return v, (i,)
        if v in seen:
            return v, (seen[v], i)
        seen[v] = i
    return None, ()


def _latin_error(kind: str, index: int, other: str, value: int, positions: tuple, t: int) -> str:
    if len(positions) == 2:
        return f"{kind} {index} repeats {value} at {other}s {positions[0]} and {positions[1]}"
    return f"{kind} {index} has {value} at {other} {positions[0]}, outside 0..{t - 1}"


def _check_latin(table: np.ndarray) -> None:
    t = table.shape[0]
    expected = np.arange(t)
    rows_ok = (np.sort(table, axis=1) == expected).all(axis=1)
    if not rows_ok.all():
        row = int(np.flatnonzero(~rows_ok)[0])
        value, positions = _first_repeat(table[row])
        raise NotLatinSquare(
            _latin_error("row", row, "column", value, positions, t), row=row, value=value, positions=positions
        )
    cols_ok = (np.sort(table, axis=0) == expected[:, None]).all(axis=0)
    if not cols_ok.all():
        column = int(np.flatnonzero(~cols_ok)[0])
        value, positions = _first_repeat(table[:, column])
        raise NotLatinSquare(
            _latin_error("column", column, "row", value, positions, t), column=column, value=value, positions=positions
        )


def _check_associativity(table: np.ndarray) -> None:
    t = table.shape[0]
    if t <= config.ASSOCIATIVITY_EXHAUSTIVE_MAX:
        for a in range(t):
            # lhs[b, c] = (a*b)*c, rhs[b, c] = a*(b*c)
            lhs = table[table[a]]
            rhs = table[a][table]
            mismatch = np.argwhere(lhs != rhs)
            if mismatch.size:
                b, c = (int(v) for v in mismatch[0])
                raise NotAssociative(f"({a}*{b})*{c} != {a}*({b}*{c})", triple=(a, b, c))
        return

    rng = np.random.default_rng(config.ASSOCIATIVITY_SEED)
    a, b, c = rng.integers(0, t, size=(3, config.ASSOCIATIVITY_SAMPLES))
    bad = np.flatnonzero(table[table[a, b], c] != table[a, table[b, c]])
    if bad.size:
        i = int(bad[0])
        triple = (int(a[i]), int(b[i]), int(c[i]))
        raise NotAssociative(f"({triple[0]}*{triple[1]})*{triple[2]} != {triple[0]}*({triple[1]}*{triple[2]})", triple=triple)


def validate_table(table: np.ndarray):
    """
    Check the group axioms on a square integer table.

    Args:
        table: t x t array of element indices

    Returns:
        (identity_index, inverse array)

    Raises:
        NotLatinSquare, NoIdentity, NoInverse, NotAssociative
    """
    t = table.shape[0]
    _check_latin(table)

    expected = np.arange(t)
    left = (table == expected).all(axis=1)
    right = (table == expected[:, None]).all(axis=0)
    candidates = np.flatnonzero(left & right)
    if candidates.size == 0:
        raise NoIdentity("no element acts as a two-sided identity")
    identity = int(candidates[0])

    # Latin rows hold the identity exactly once.
    inverse = np.argmax(table == identity, axis=1)
    bad = np.flatnonzero(table[inverse, expected] != identity)
    if bad.size:
        a = int(bad[0])
        raise NoInverse(f"element {a} has right inverse {int(inverse[a])} which is not a left inverse", element=a)

    _check_associativity(table)
    return identity, inverse


# ----------------------------------------------------------------------
# Constructors
# ----------------------------------------------------------------------
def from_cayley_table(table: Sequence[Sequence[int]], name: str = "group", cap: Optional[int] = None) -> Group:
    """
    Build a validated Group from a multiplication table.

    Args:
        table: square array, table[a][b] = index of a*b
        name: display name
        cap: order cap (defaults to GROUP_ORDER_CAP)

    Returns:
        Group with identity and inverses discovered from the table
    """
    cap = config.GROUP_ORDER_CAP if cap is None else cap
    size = len(table)
    if size == 0:
        raise NotLatinSquare("table is empty")
    for i, row in enumerate(table):
        if len(row) != size:
            raise NotLatinSquare(f"row {i} has {len(row)} entries, expected {size}", row=i)
    if size > cap:
        raise OrderCapExceeded(f"table of order {size} exceeds the cap {cap}", cap=cap)
    try:
        array = np.array(table, dtype=np.int64)
    except (TypeError, ValueError) as e:
        raise NotLatinSquare(f"table entries must be integers: {e}")

    identity, inverse = validate_table(array)
    logger.debug(f"Validated group {name} of order {size}")
    return Group(array, identity, inverse, name=name)


def from_permutation_generators(
    generators: Sequence[Sequence[int]],
    name: str = "group",
    points: Optional[int] = None,
    cap: Optional[int] = None,
) -> Group:
    """
    Close a set of permutations under composition.

    Permutations are image arrays; the product p*q maps x to p[q[x]].
    Elements are numbered in breadth-first discovery order from the
    identity (element 0), applying generators in list order, so the same
    generator list always yields the same table.

    Args:
        generators: image arrays on `points` points
        name: display name
        points: number of points (inferred from the first generator)
        cap: order cap (defaults to GROUP_ORDER_CAP)

    Returns:
        The generated Group
    """
    cap = config.GROUP_ORDER_CAP if cap is None else cap
    perms = [tuple(int(v) for v in gen) for gen in generators]
    if points is None:
        points = len(perms[0]) if perms else 0
    for i, perm in enumerate(perms):
        if len(perm) != points or sorted(perm) != list(range(points)):
            raise NotAPermutation(f"generator {i} is not a permutation of 0..{points - 1}", generator=i)

    identity = tuple(range(points))
    elements: List[tuple] = [identity]
    index = {identity: 0}
    parent = [-1]
    via = [-1]
    right: List[List[int]] = []

    i = 0
    while i < len(elements):
        current = elements[i]
        row = []
        for g, perm in enumerate(perms):
            product = tuple(current[p] for p in perm)
            j = index.get(product)
            if j is None:
                j = len(elements)
                if j + 1 > cap:
                    raise OrderCapExceeded(f"closure of {name} grew past the cap {cap}", cap=cap)
                index[product] = j
                elements.append(product)
                parent.append(i)
                via.append(g)
            row.append(j)
        right.append(row)
        i += 1

    t = len(elements)
    right_mult = np.array(right, dtype=np.int64).reshape(t, len(perms))
    table = np.empty((t, t), dtype=np.int64)
    table[:, 0] = np.arange(t)
    # e_j = e_parent * g, hence e_i * e_j = (e_i * e_parent) * g
    for j in range(1, t):
        table[:, j] = right_mult[table[:, parent[j]], via[j]]

    logger.info(f"Closed {len(perms)} generator(s) on {points} points into {name} of order {t}")
    return from_cayley_table(table, name=name, cap=cap)


def direct_product(g: Group, h: Group, name: Optional[str] = None, cap: Optional[int] = None) -> Group:
    """
    Componentwise product G x H.

    The pair (a, b) gets index a*|H| + b, i.e. lexicographic order by
    (g-index, h-index).
    """
    cap = config.GROUP_ORDER_CAP if cap is None else cap
    order = g.order * h.order
    if order > cap:
        raise OrderCapExceeded(f"{g.name} x {h.name} has order {order}, above the cap {cap}", cap=cap)
    gi = np.repeat(np.arange(g.order), h.order)
    hi = np.tile(np.arange(h.order), g.order)
    table = g.table[gi[:, None], gi[None, :]] * h.order + h.table[hi[:, None], hi[None, :]]
    return from_cayley_table(table, name=name or f"{g.name} x {h.name}", cap=cap)


# ----------------------------------------------------------------------
# Primitives
# ----------------------------------------------------------------------
def multiply(g: Group, a: int, b: int) -> int:
    return int(g.table[g.check_element(a), g.check_element(b)])


def is_abelian(g: Group) -> bool:
    return bool(np.array_equal(g.table, g.table.T))


def center(g: Group) -> FrozenSet[int]:
    """Elements commuting with every element; always contains the identity."""
    commuting = (g.table == g.table.T).all(axis=1)
    return frozenset(int(a) for a in np.flatnonzero(commuting))


def commuting_pairs(g: Group) -> int:
    """Number of ordered commuting pairs, i.e. the sum of centralizer sizes."""
    return int((g.table == g.table.T).sum())


def element_order(g: Group, a: int) -> int:
    a = g.check_element(a)
    x, n = a, 1
    while x != g.identity_index:
        x = int(g.table[x, a])
        n += 1
    return n
