#!/usr/bin/env python3
"""
Ring Catalog - curated finite local rings up to order 9 and the bounded
universe of non-local rings (products of 2..k catalog rings).

The local-ring lists for orders 4, 8 and 9 are the standard classification
tables; they are hard-coded rather than recomputed.
"""

from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations_with_replacement
from typing import Dict, Iterator, List, Optional, Sequence, Tuple

import numpy as np
import pandas as pd

from ring_core import (ElementSet, FiniteRing, Presentation, RingSpecError, build_local_ring,
                       build_product, is_prime_power, nonunits, principal_ideal)

MAX_CATALOG_ORDER = 9


class UnsupportedBoundError(ValueError):
    """Requested catalog bound lies outside the curated range."""


def _univariate(moduli: Sequence[int], tail: Sequence[int]) -> Presentation:
    """Quotient of Z_m[x] where x^d reduces to `tail` (d = len(moduli))."""
    d = len(moduli)
    powers = [tuple(1 if k == i else 0 for k in range(d)) for i in range(d)]
    current = powers[-1]
    for _ in range(d - 1):
        # multiply by x: shift up, fold the x^d coefficient back through tail
        top = current[-1]
        shifted = [0] + list(current[:-1])
        current = tuple((shifted[k] + top * tail[k]) % moduli[k] for k in range(d))
        powers.append(current)
    basis = tuple("1" if i == 0 else ("x" if i == 1 else f"x^{i}") for i in range(d))
    structure = tuple(tuple(powers[i + j] for j in range(d)) for i in range(d))
    return Presentation(basis=basis, moduli=tuple(moduli), structure=structure)


def _square_zero_pair() -> Presentation:
    """Z2[x,y]/(x^2, xy, y^2)."""
    zero = (0, 0, 0)
    structure = (
        ((1, 0, 0), (0, 1, 0), (0, 0, 1)),
        ((0, 1, 0), zero, zero),
        ((0, 0, 1), zero, zero),
    )
    return Presentation(basis=("1", "x", "y"), moduli=(2, 2, 2), structure=structure)


# id -> (presentation, characteristic)
_PRESENTATIONS: Dict[str, Tuple[Presentation, int]] = {
    "Z2": (Presentation.modular(2), 2),
    "Z3": (Presentation.modular(3), 3),
    "F4": (_univariate((2, 2), (1, 1)), 2),              # x^2 = x + 1
    "Z4": (Presentation.modular(4), 4),
    "Z2[x]/(x^2)": (_univariate((2, 2), (0, 0)), 2),
    "Z5": (Presentation.modular(5), 5),
    "Z7": (Presentation.modular(7), 7),
    "F8": (_univariate((2, 2, 2), (1, 1, 0)), 2),        # x^3 = x + 1
    "Z8": (Presentation.modular(8), 8),
    "Z2[x]/(x^3)": (_univariate((2, 2, 2), (0, 0, 0)), 2),
    "Z2[x,y]/(x^2,xy,y^2)": (_square_zero_pair(), 2),
    "Z4[x]/(2x,x^2)": (_univariate((4, 2), (0, 0)), 4),
    "Z4[x]/(2x,x^2-2)": (_univariate((4, 2), (2, 0)), 4),
    "F9": (_univariate((3, 3), (2, 0)), 3),              # x^2 = -1
    "Z9": (Presentation.modular(9), 9),
    "Z3[x]/(x^2)": (_univariate((3, 3), (0, 0)), 3),
}

CATALOG_IDS: Tuple[str, ...] = tuple(_PRESENTATIONS)
_POSITION = {rid: i for i, rid in enumerate(CATALOG_IDS)}


@dataclass(frozen=True)
class LocalRingSpec:
    id: str
    order: int
    characteristic: int
    is_field: bool
    maximal_ideal: ElementSet
    maximal_ideal_is_principal: bool
    presentation: Presentation

    def build(self) -> FiniteRing:
        return _build_cached(self.id)

    @property
    def unit_count(self) -> int:
        return self.order - len(self.maximal_ideal)


@lru_cache(maxsize=None)
def _build_cached(rid: str) -> FiniteRing:
    presentation, _ = _PRESENTATIONS[rid]
    return build_local_ring(rid, presentation)


@lru_cache(maxsize=None)
def get_local_ring(rid: str) -> LocalRingSpec:
    if rid not in _PRESENTATIONS:
        raise RingSpecError(f"unknown ring \"{rid}\"; valid ids: {' '.join(CATALOG_IDS)}")
    presentation, characteristic = _PRESENTATIONS[rid]
    r = _build_cached(rid)
    m = nonunits(r)
    principal = any(len(principal_ideal(r, z)) == len(m) for z in m)
    return LocalRingSpec(
        id=rid,
        order=r.order,
        characteristic=characteristic,
        is_field=len(m) == 1,
        maximal_ideal=m,
        maximal_ideal_is_principal=principal,
        presentation=presentation,
    )


def catalog_local_rings(max_order: int = MAX_CATALOG_ORDER) -> List[LocalRingSpec]:
    """
    CORE FEATURE: all catalog local rings of order <= max_order,
    ordered by ring order and then catalog position.
    """
    if max_order > MAX_CATALOG_ORDER:
        raise UnsupportedBoundError(
            f"the local ring catalog is curated up to order {MAX_CATALOG_ORDER}, got {max_order}")
    specs = [get_local_ring(rid) for rid in CATALOG_IDS]
    return [s for s in specs if s.order <= max_order]


def catalog_table(max_order: int = MAX_CATALOG_ORDER) -> pd.DataFrame:
    rows = []
    for spec in catalog_local_rings(max_order):
        rows.append({
            "id": spec.id,
            "order": spec.order,
            "characteristic": spec.characteristic,
            "field": spec.is_field,
            "|M|": len(spec.maximal_ideal),
            "M principal": spec.maximal_ideal_is_principal,
            # finite local rings are chain rings exactly when M is principal
            "chain ring": spec.maximal_ideal_is_principal,
            "units": spec.unit_count,
        })
    return pd.DataFrame(rows, columns=["id", "order", "characteristic", "field", "|M|",
                                       "M principal", "chain ring", "units"])


def split_expr(expr: str) -> List[str]:
    """Split a ring expression on '*' outside brackets and parentheses."""
    tokens, depth, current = [], 0, []
    for ch in expr:
        if ch in "([":
            depth += 1
        elif ch in ")]":
            depth -= 1
        if ch == "*" and depth == 0:
            tokens.append("".join(current))
            current = []
        else:
            current.append(ch)
    tokens.append("".join(current))
    return tokens


def parse_factor_ids(expr: str) -> List[str]:
    if expr is None or not expr.strip():
        raise RingSpecError(f"empty ring expression; valid ids: {' '.join(CATALOG_IDS)}")
    ids = split_expr(expr.strip())
    for token in ids:
        if token not in _POSITION:
            raise RingSpecError(
                f"unknown token \"{token}\" in \"{expr}\"; valid ids: {' '.join(CATALOG_IDS)}")
    return ids


def canonical_expr(ids: Sequence[str]) -> str:
    return "*".join(sorted(ids, key=lambda rid: _POSITION[rid]))


def ring_from_ids(ids: Sequence[str]) -> FiniteRing:
    """A single id gives the local ring itself; several give their product."""
    if len(ids) == 1:
        return get_local_ring(ids[0]).build()
    return build_product([get_local_ring(rid) for rid in ids])


def ring_from_expr(expr: str) -> FiniteRing:
    return ring_from_ids(parse_factor_ids(expr))


@dataclass(frozen=True)
class RingUniverseFilter:
    max_factor_order: int = MAX_CATALOG_ORDER
    max_factors: int = 4
    max_total_order: Optional[int] = 1024

    def __post_init__(self):
        if self.max_factors < 2:
            raise ValueError("the universe is non-local only: max_factors must be >= 2")
        if self.max_factor_order > MAX_CATALOG_ORDER:
            raise UnsupportedBoundError(
                f"factor order is limited to {MAX_CATALOG_ORDER}, got {self.max_factor_order}")

    def to_dict(self) -> Dict[str, Optional[int]]:
        return {
            "max_factor_order": self.max_factor_order,
            "max_factors": self.max_factors,
            "max_total_order": self.max_total_order,
        }


def enumerate_factor_shapes(flt: RingUniverseFilter) -> Iterator[Tuple[str, ...]]:
    """Sorted factor-id multisets of the universe, in a fixed order."""
    specs = catalog_local_rings(flt.max_factor_order)
    for k in range(2, flt.max_factors + 1):
        for combo in combinations_with_replacement(specs, k):
            total = int(np.prod([s.order for s in combo]))
            if flt.max_total_order is not None and total > flt.max_total_order:
                continue
            yield tuple(s.id for s in combo)


def enumerate_nonlocal_rings(flt: RingUniverseFilter) -> Iterator[FiniteRing]:
    """
    CORE FEATURE: one product ring per factor multiset of the universe.
    """
    for shape in enumerate_factor_shapes(flt):
        yield build_product([get_local_ring(rid) for rid in shape])


def check_catalog_invariants() -> List[str]:
    """Problems found in the curated catalog (empty when consistent)."""
    problems = []
    for spec in catalog_local_rings():
        if not is_prime_power(spec.order):
            problems.append(f"{spec.id}: order {spec.order} is not a prime power")
        if spec.is_field != (spec.maximal_ideal.members == (0,)):
            problems.append(f"{spec.id}: field flag disagrees with its maximal ideal")
    return problems
