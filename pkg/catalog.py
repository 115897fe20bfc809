"""
Built-in group families and the default sweep catalog.

Families: cyclic(n), dihedral(n) (symmetries of the n-gon, order 2n),
symmetric(k), alternating(k), quaternion8, heisenberg(p) (unitriangular
3x3 matrices over F_p, order p^3), elementary_abelian(p,k), and direct
products of two entries. Every entry is built deterministically through
group_core, so serialized tables are identical run to run.
"""

from enum import Enum
from math import factorial
from typing import Any, Dict, List, Optional, Sequence, Tuple
import logging
import re

import numpy as np

import config
from group_core import Group, direct_product, from_cayley_table, from_permutation_generators, is_abelian

logger = logging.getLogger(__name__)


class UnsupportedParams(ValueError):
    pass


class UnknownGroupName(ValueError):
    pass


class Family(str, Enum):
    """Built-in group families"""
    CYCLIC = "cyclic"
    DIHEDRAL = "dihedral"
    SYMMETRIC = "symmetric"
    ALTERNATING = "alternating"
    QUATERNION8 = "quaternion8"
    HEISENBERG = "heisenberg"
    ELEMENTARY_ABELIAN = "elementary_abelian"
    PRODUCT = "product"


_ARITY = {
    Family.CYCLIC: 1,
    Family.DIHEDRAL: 1,
    Family.SYMMETRIC: 1,
    Family.ALTERNATING: 1,
    Family.QUATERNION8: 0,
    Family.HEISENBERG: 1,
    Family.ELEMENTARY_ABELIAN: 2,
}

MAX_PERMUTATION_DEGREE = 7


def _is_prime(p: int) -> bool:
    return p >= 2 and all(p % d for d in range(2, int(p ** 0.5) + 1))


# ----------------------------------------------------------------------
# Family constructors
# ----------------------------------------------------------------------
def _cyclic(n: int, name: str) -> Group:
    return from_cayley_table(np.add.outer(np.arange(n), np.arange(n)) % n, name=name)


def _dihedral(n: int, name: str) -> Group:
    rotation = [(i + 1) % n for i in range(n)]
    reflection = [(-i) % n for i in range(n)]
    return from_permutation_generators([rotation, reflection], name=name, points=n)


def _symmetric(k: int, name: str) -> Group:
    generators = []
    if k >= 2:
        generators.append([1, 0] + list(range(2, k)))
    if k >= 3:
        generators.append([(i + 1) % k for i in range(k)])
    return from_permutation_generators(generators, name=name, points=k)


def _alternating(k: int, name: str) -> Group:
    generators = []
    for i in range(2, k):
        # the 3-cycle 0 -> 1 -> i -> 0
        image = list(range(k))
        image[0], image[1], image[i] = 1, i, 0
        generators.append(image)
    return from_permutation_generators(generators, name=name, points=k)


def _quaternion_product(p: Tuple[int, ...], q: Tuple[int, ...]) -> Tuple[int, ...]:
    a1, b1, c1, d1 = p
    a2, b2, c2, d2 = q
    return (
        a1 * a2 - b1 * b2 - c1 * c2 - d1 * d2,
        a1 * b2 + b1 * a2 + c1 * d2 - d1 * c2,
        a1 * c2 - b1 * d2 + c1 * a2 + d1 * b2,
        a1 * d2 + b1 * c2 - c1 * b2 + d1 * a2,
    )


def _quaternion8(name: str) -> Group:
    units = [(1, 0, 0, 0), (0, 1, 0, 0), (0, 0, 1, 0), (0, 0, 0, 1)]
    elements = units + [tuple(-v for v in u) for u in units]
    index = {e: i for i, e in enumerate(elements)}
    # left multiplication by i and by j, as permutations of the 8 units
    generators = [[index[_quaternion_product(g, e)] for e in elements] for g in (units[1], units[2])]
    return from_permutation_generators(generators, name=name, points=8)


def _heisenberg(p: int, name: str) -> Group:
    def idx(a: int, b: int, c: int) -> int:
        return (a % p) * p * p + (b % p) * p + (c % p)

    def left(ga: int, gb: int) -> List[int]:
        # (ga, gb, 0) * (a, b, c) = (ga + a, gb + b, c + ga * b)
        return [idx(ga + a, gb + b, c + ga * b) for a in range(p) for b in range(p) for c in range(p)]

    return from_permutation_generators([left(1, 0), left(0, 1)], name=name, points=p ** 3)


def _renamed(g: Group, name: str) -> Group:
    return Group(g.table, g.identity_index, g.inverse, name=name)


def _elementary_abelian(p: int, k: int, name: str) -> Group:
    factor = _cyclic(p, f"cyclic({p})")
    g = factor
    for _ in range(k - 1):
        g = direct_product(g, factor)
    return _renamed(g, name)


# ----------------------------------------------------------------------
# Entries
# ----------------------------------------------------------------------
class CatalogEntry:
    """A family tag plus parameters; builds (and caches) its group on demand."""

    def __init__(self, family: Family, params: Sequence[int] = (), factors: Sequence["CatalogEntry"] = ()):
        self.family = Family(family)
        self.params = tuple(int(p) for p in params)
        self.factors = tuple(factors)
        self._group: Optional[Group] = None
        self._check()

    def _check(self) -> None:
        family, params = self.family, self.params
        if family is Family.PRODUCT:
            if len(self.factors) != 2:
                raise UnsupportedParams("a product needs exactly two factors")
        elif len(params) != _ARITY[family]:
            raise UnsupportedParams(f"{family.value} takes {_ARITY[family]} parameter(s), got {len(params)}")
        elif family is Family.CYCLIC and params[0] < 1:
            raise UnsupportedParams(f"cyclic needs n >= 1, got {params[0]}")
        elif family is Family.DIHEDRAL and params[0] < 3:
            raise UnsupportedParams(f"dihedral needs n >= 3, got {params[0]}")
        elif family in (Family.SYMMETRIC, Family.ALTERNATING) and not 1 <= params[0] <= MAX_PERMUTATION_DEGREE:
            raise UnsupportedParams(f"{family.value} needs 1 <= k <= {MAX_PERMUTATION_DEGREE}, got {params[0]}")
        elif family in (Family.HEISENBERG, Family.ELEMENTARY_ABELIAN) and not _is_prime(params[0]):
            raise UnsupportedParams(f"{family.value} needs a prime p, got {params[0]}")
        elif family is Family.ELEMENTARY_ABELIAN and params[1] < 1:
            raise UnsupportedParams(f"elementary_abelian needs k >= 1, got {params[1]}")
        if self.expected_order > config.GROUP_ORDER_CAP:
            raise UnsupportedParams(f"{self.name} has order {self.expected_order}, above the cap {config.GROUP_ORDER_CAP}")

    @property
    def name(self) -> str:
        if self.family is Family.PRODUCT:
            return " x ".join(f.name for f in self.factors)
        if not self.params:
            return self.family.value
        return f"{self.family.value}({','.join(str(p) for p in self.params)})"

    @property
    def key(self) -> tuple:
        return (self.family.value, self.params, tuple(f.key for f in self.factors))

    @property
    def expected_order(self) -> int:
        family, params = self.family, self.params
        if family is Family.PRODUCT:
            return self.factors[0].expected_order * self.factors[1].expected_order
        if family is Family.CYCLIC:
            return params[0]
        if family is Family.DIHEDRAL:
            return 2 * params[0]
        if family is Family.SYMMETRIC:
            return factorial(params[0])
        if family is Family.ALTERNATING:
            return max(1, factorial(params[0]) // 2)
        if family is Family.QUATERNION8:
            return 8
        if family is Family.HEISENBERG:
            return params[0] ** 3
        return params[0] ** params[1]

    def build(self) -> Group:
        if self._group is None:
            self._group = self._construct()
            if self._group.order != self.expected_order:
                raise UnsupportedParams(f"{self.name} built with order {self._group.order}, expected {self.expected_order}")
        return self._group

    def _construct(self) -> Group:
        family, params, name = self.family, self.params, self.name
        if family is Family.PRODUCT:
            return direct_product(self.factors[0].build(), self.factors[1].build(), name=name)
        if family is Family.CYCLIC:
            return _cyclic(params[0], name)
        if family is Family.DIHEDRAL:
            return _dihedral(params[0], name)
        if family is Family.SYMMETRIC:
            return _symmetric(params[0], name)
        if family is Family.ALTERNATING:
            return _alternating(params[0], name)
        if family is Family.QUATERNION8:
            return _quaternion8(name)
        if family is Family.HEISENBERG:
            return _heisenberg(params[0], name)
        return _elementary_abelian(params[0], params[1], name)

    def to_dict(self) -> Dict[str, Any]:
        g = self.build()
        return {
            "name": self.name,
            "family": self.family.value,
            "params": list(self.params),
            "order": g.order,
            "abelian": is_abelian(g),
        }

    def __repr__(self) -> str:
        return f"CatalogEntry({self.name!r})"


def builtin(family: str, *params: int) -> Group:
    """
    Construct a built-in group, e.g. builtin("symmetric", 3).

    Raises:
        UnsupportedParams: unknown family or parameters out of range
    """
    try:
        tag = Family(family)
    except ValueError:
        raise UnsupportedParams(f"unknown family {family!r}")
    if tag is Family.PRODUCT:
        raise UnsupportedParams("use resolve('A x B') for products")
    return CatalogEntry(tag, params).build()


_FACTOR = re.compile(r"\s*([a-z_0-9]+)\s*(?:\(\s*(\d+(?:\s*,\s*\d+)*)\s*\))?\s*")


def _parse_entry(name: str) -> CatalogEntry:
    factors = re.split(r"\s+x\s+", name.strip().lower())
    entries = []
    for text in factors:
        match = _FACTOR.fullmatch(text)
        if not match:
            raise UnknownGroupName(f"cannot parse group name {text!r}")
        try:
            family = Family(match.group(1))
        except ValueError:
            raise UnknownGroupName(f"unknown family {match.group(1)!r} in {name!r}")
        params = [int(p) for p in re.split(r"\s*,\s*", match.group(2))] if match.group(2) else []
        entries.append(CatalogEntry(family, params))
    entry = entries[0]
    for factor in entries[1:]:
        entry = CatalogEntry(Family.PRODUCT, factors=(entry, factor))
    return entry


def resolve(name: str) -> CatalogEntry:
    """Catalog entry for a name such as 'quaternion8 x cyclic(2)'."""
    return _parse_entry(name)


# ----------------------------------------------------------------------
# Default catalog
# ----------------------------------------------------------------------
def _base_entries(max_order: int) -> List[CatalogEntry]:
    candidates: List[Tuple[Family, Tuple[int, ...]]] = []
    candidates += [(Family.SYMMETRIC, (k,)) for k in range(3, 6)]
    candidates += [(Family.ALTERNATING, (k,)) for k in range(4, 6)]
    candidates += [(Family.DIHEDRAL, (n,)) for n in range(3, max_order // 2 + 1)]
    candidates += [(Family.QUATERNION8, ())]
    candidates += [(Family.HEISENBERG, (p,)) for p in range(2, max_order + 1) if _is_prime(p) and p ** 3 <= max_order]
    candidates += [
        (Family.ELEMENTARY_ABELIAN, (p, k))
        for p in range(2, max_order + 1) if _is_prime(p)
        for k in range(2, max_order.bit_length() + 1) if p ** k <= max_order
    ]
    candidates += [(Family.CYCLIC, (n,)) for n in range(1, max_order + 1)]

    entries = []
    for family, params in candidates:
        entry = CatalogEntry(family, params)
        if entry.expected_order <= max_order:
            entries.append(entry)
    return entries


def default_catalog(max_order: int) -> List[CatalogEntry]:
    """
    Built-in families plus pairwise direct products of non-trivial members,
    all of order <= max_order, deduplicated by (family, params) and sorted
    by (order, name).
    """
    if max_order < 1:
        raise UnsupportedParams(f"max_order must be positive, got {max_order}")
    base = _base_entries(max_order)
    factors = [e for e in base if e.expected_order >= 2]
    entries: Dict[tuple, CatalogEntry] = {e.key: e for e in base}
    for i, left in enumerate(factors):
        for right in factors[i:]:
            if left.expected_order * right.expected_order <= max_order:
                product = CatalogEntry(Family.PRODUCT, factors=(left, right))
                entries.setdefault(product.key, product)
    catalog = sorted(entries.values(), key=lambda e: (e.expected_order, e.name))
    logger.info(f"Default catalog up to order {max_order}: {len(catalog)} entries")
    return catalog


class GroupCatalog:
    """
    Registry of named groups: catalog names resolve on demand, groups
    loaded from files are registered under their own names.
    """

    def __init__(self):
        self.groups: Dict[str, Group] = {}

    def register_group(self, key: str, group: Group) -> str:
        if key in self.groups:
            logger.warning(f"Group {key} already registered. Overwriting.")
        self.groups[key] = group
        logger.info(f"Registered group {key} ({group.name}, order {group.order})")
        return key

    def get(self, name: str) -> Group:
        if name in self.groups:
            return self.groups[name]
        return resolve(name).build()

    def list_registered(self) -> List[Dict[str, Any]]:
        return [
            {"id": key, "name": g.name, "order": g.order, "abelian": is_abelian(g)}
            for key, g in self.groups.items()
        ]
