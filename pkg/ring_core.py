#!/usr/bin/env python3
"""
Ring Core - arithmetic kernel for finite commutative rings with unity.
Local rings are built from a small presentation (coefficient moduli plus
structure constants of a monomial basis); products are built componentwise.
Every ring is materialised as add/mul tables over element indices 0..n-1.
"""

from dataclasses import dataclass, field
from itertools import product
from typing import TYPE_CHECKING, Dict, Iterator, List, Optional, Sequence, Tuple

import numpy as np

if TYPE_CHECKING:
    from ring_catalog import LocalRingSpec


class RingSpecError(ValueError):
    """Unknown catalog identifier or malformed ring expression."""


@dataclass(frozen=True)
class Presentation:
    """
    Z_m-style coefficient vectors over a monomial basis.

    moduli[i] is the additive order of the i-th basis coefficient and
    structure[i][j] is the coefficient vector of basis[i] * basis[j].
    basis[0] is always the identity monomial "1".
    """
    basis: Tuple[str, ...]
    moduli: Tuple[int, ...]
    structure: Tuple[Tuple[Tuple[int, ...], ...], ...]

    @classmethod
    def modular(cls, m: int) -> "Presentation":
        return cls(basis=("1",), moduli=(m,), structure=(((1,),),))

    @property
    def size(self) -> int:
        return int(np.prod(self.moduli))

    def coordinates(self) -> List[Tuple[int, ...]]:
        """All coefficient vectors, constant coefficient varying fastest."""
        ranges = [range(m) for m in reversed(self.moduli)]
        return [tuple(reversed(c)) for c in product(*ranges)]

    def label(self, coeffs: Sequence[int]) -> str:
        terms = []
        for coef, mono in zip(coeffs, self.basis):
            if coef == 0:
                continue
            if mono == "1":
                terms.append(str(coef))
            else:
                terms.append(mono if coef == 1 else f"{coef}{mono}")
        return "+".join(terms) if terms else "0"


@dataclass(frozen=True, eq=False)
class FiniteRing:
    """Element-indexed model of a finite commutative ring with unity."""
    name: str
    order: int
    add_table: np.ndarray
    mul_table: np.ndarray
    one: int
    labels: Tuple[str, ...]
    factor_shape: Tuple[str, ...] = ()
    element_coords: Optional[np.ndarray] = None
    _units_cache: Dict[str, np.ndarray] = field(default_factory=dict, repr=False)

    def __post_init__(self):
        for table in (self.add_table, self.mul_table):
            table.setflags(write=False)
        if self.element_coords is not None:
            self.element_coords.setflags(write=False)

    def add(self, a: int, b: int) -> int:
        return int(self.add_table[a, b])

    def multiply(self, a: int, b: int) -> int:
        return int(self.mul_table[a, b])

    def element_label(self, x: int) -> str:
        return self.labels[x]

    def index_of(self, label: str) -> int:
        try:
            return self.labels.index(label)
        except ValueError:
            raise RingSpecError(f"'{label}' is not an element of {self.name}") from None

    def unit_mask(self) -> np.ndarray:
        if "units" not in self._units_cache:
            mask = (self.mul_table == self.one).any(axis=1)
            mask.setflags(write=False)
            self._units_cache["units"] = mask
        return self._units_cache["units"]

    def __repr__(self) -> str:
        return f"FiniteRing({self.name!r}, order={self.order})"


@dataclass(frozen=True)
class ElementSet:
    """Sorted, duplicate-free set of element indices of one ring."""
    members: Tuple[int, ...]
    ring_order: int

    def __post_init__(self):
        if any(m < 0 or m >= self.ring_order for m in self.members):
            raise ValueError(f"element index out of range for ring of order {self.ring_order}")
        if list(self.members) != sorted(set(self.members)):
            raise ValueError("ElementSet members must be sorted and distinct")

    @classmethod
    def from_indices(cls, indices, ring_order: int) -> "ElementSet":
        return cls(tuple(sorted({int(i) for i in indices})), ring_order)

    def __len__(self) -> int:
        return len(self.members)

    def __iter__(self) -> Iterator[int]:
        return iter(self.members)

    def __contains__(self, x) -> bool:
        return x in set(self.members)

    def issubset(self, other: "ElementSet") -> bool:
        return set(self.members) <= set(other.members)

    def mask(self) -> np.ndarray:
        m = np.zeros(self.ring_order, dtype=bool)
        m[list(self.members)] = True
        return m

    def labels(self, r: FiniteRing) -> List[str]:
        return [r.labels[m] for m in self.members]


def build_local_ring(name: str, presentation: Presentation) -> FiniteRing:
    """Materialise the tables of a local ring from its presentation."""
    coords = presentation.coordinates()
    index = {c: i for i, c in enumerate(coords)}
    moduli = presentation.moduli
    d = len(moduli)
    n = len(coords)

    add_table = np.zeros((n, n), dtype=np.int32)
    mul_table = np.zeros((n, n), dtype=np.int32)
    for i, a in enumerate(coords):
        for j, b in enumerate(coords):
            add_table[i, j] = index[tuple((a[k] + b[k]) % moduli[k] for k in range(d))]
            acc = [0] * d
            for p in range(d):
                if a[p] == 0:
                    continue
                for q in range(d):
                    if b[q] == 0:
                        continue
                    for k, s in enumerate(presentation.structure[p][q]):
                        acc[k] += a[p] * b[q] * s
            mul_table[i, j] = index[tuple(acc[k] % moduli[k] for k in range(d))]

    one = index[tuple([1] + [0] * (d - 1))]
    labels = tuple(presentation.label(c) for c in coords)
    return FiniteRing(name=name, order=n, add_table=add_table, mul_table=mul_table,
                      one=one, labels=labels)


def build_product(factors: Sequence["LocalRingSpec"]) -> FiniteRing:
    """
    CORE FEATURE: direct product of catalog local rings.
    Elements are ordered lexicographically by factor coordinates.
    """
    if not factors:
        raise RingSpecError("a product needs at least one factor")
    rings = [spec.build() for spec in factors]
    orders = [f.order for f in rings]
    n = int(np.prod(orders))
    k = len(rings)

    coords = np.array(list(product(*[range(o) for o in orders])), dtype=np.int32).reshape(n, k)
    strides = np.ones(k, dtype=np.int64)
    for i in range(k - 2, -1, -1):
        strides[i] = strides[i + 1] * orders[i + 1]

    add_table = np.zeros((n, n), dtype=np.int64)
    mul_table = np.zeros((n, n), dtype=np.int64)
    for i, f in enumerate(rings):
        col = coords[:, i]
        add_table += f.add_table[col[:, None], col[None, :]].astype(np.int64) * strides[i]
        mul_table += f.mul_table[col[:, None], col[None, :]].astype(np.int64) * strides[i]

    one = int(sum(f.one * strides[i] for i, f in enumerate(rings)))
    labels = tuple(
        "(" + ",".join(rings[i].labels[c[i]] for i in range(k)) + ")" for c in coords
    )
    shape = tuple(spec.id for spec in factors)
    return FiniteRing(name="*".join(shape), order=n, add_table=add_table.astype(np.int32),
                      mul_table=mul_table.astype(np.int32), one=one, labels=labels,
                      factor_shape=shape, element_coords=coords)


def units(r: FiniteRing) -> ElementSet:
    return ElementSet.from_indices(np.flatnonzero(r.unit_mask()), r.order)


def nonunits(r: FiniteRing) -> ElementSet:
    return ElementSet.from_indices(np.flatnonzero(~r.unit_mask()), r.order)


def zero_divisors(r: FiniteRing) -> ElementSet:
    """Elements x with xy = 0 for some y != 0 (0 included)."""
    mask = (r.mul_table[:, 1:] == 0).any(axis=1)
    mask[0] = True
    return ElementSet.from_indices(np.flatnonzero(mask), r.order)


def is_local(r: FiniteRing) -> bool:
    """Finite rings are local exactly when the non-units are closed under addition."""
    nu = np.flatnonzero(~r.unit_mask())
    sums = r.add_table[np.ix_(nu, nu)]
    return bool((~r.unit_mask()[sums]).all())


def principal_ideal(r: FiniteRing, x: int) -> ElementSet:
    if not 0 <= x < r.order:
        raise ValueError(f"element index {x} out of range for {r.name}")
    return ElementSet.from_indices(np.unique(r.mul_table[x]), r.order)


def principal_ideal_masks(r: FiniteRing, generators: np.ndarray) -> np.ndarray:
    """Boolean membership rows, one per generator."""
    masks = np.zeros((len(generators), r.order), dtype=bool)
    rows = np.arange(len(generators))[:, None]
    masks[rows, r.mul_table[generators]] = True
    return masks


def maximal_proper_principal_ideals(r: FiniteRing) -> List[ElementSet]:
    """
    CORE FEATURE: maximal members, under inclusion, of {(z) : z a non-unit}.
    A field returns the single ideal {0}.
    """
    gens = np.flatnonzero(~r.unit_mask())
    masks = np.unique(principal_ideal_masks(r, gens), axis=0)
    sizes = masks.sum(axis=1)
    maximal = []
    for i in range(len(masks)):
        # I is contained in J iff I has no element outside J
        inside = ~(masks[i] & ~masks).any(axis=1)
        inside &= sizes > sizes[i]
        if not inside.any():
            maximal.append(ElementSet.from_indices(np.flatnonzero(masks[i]), r.order))
    return sorted(maximal, key=lambda s: s.members)


def ring_axioms_hold(r: FiniteRing) -> bool:
    """Exhaustive check of the commutative ring axioms; meant for small orders."""
    A, M = r.add_table, r.mul_table
    idx = np.arange(r.order)
    if not (np.array_equal(A, A.T) and np.array_equal(M, M.T)):
        return False
    if not (np.array_equal(A[0], idx) and np.array_equal(M[r.one], idx) and (M[0] == 0).all()):
        return False
    if not (A == 0).any(axis=1).all():
        return False
    # (a+b)+c == a+(b+c), (ab)c == a(bc), a(b+c) == ab+ac
    a, b, c = np.meshgrid(idx, idx, idx, indexing="ij")
    if not np.array_equal(A[A[a, b], c], A[a, A[b, c]]):
        return False
    if not np.array_equal(M[M[a, b], c], M[a, M[b, c]]):
        return False
    return bool(np.array_equal(M[a, A[b, c]], A[M[a, b], M[a, c]]))


def is_prime_power(n: int) -> bool:
    if n < 2:
        return False
    p = next(d for d in range(2, n + 1) if n % d == 0)
    while n % p == 0:
        n //= p
    return n == 1
