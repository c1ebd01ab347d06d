"""Collections of excluded coordinate planes: predicates and enumeration.

A collection C lists the coordinate planes NOT contained in a point variety.
Not every collection can arise this way; the adequacy predicate below is a
necessary condition, and denseness is the stronger condition driving the
constructive realization.  The enumerator sweeps all collections for a given
ambient dimension (bitmask-vectorized, so the million-subset case n = 5
stays in seconds) and groups them into orbits of the coordinate symmetry.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from math import factorial

import numpy as np

from .triples import (
    TripleSet,
    all_triples,
    num_triples,
    permutations,
    triple_index,
    _perm_mask_tables,
)

#: A collection is just a triple set; the alias marks intent (excluded
#: planes rather than contained ones).
Collection = TripleSet


def is_adequate(C: Collection) -> bool:
    """Necessary condition for C to be the excluded-plane set of an algebra.

    For every index i and every member plane, some pair inside the member
    must extend through i to another member.  When i lies in the member the
    member itself witnesses the condition.
    """
    n = C.n
    for i in range(n + 1):
        for (j, k, l) in C.triples:
            if i in (j, k, l):
                continue
            if not any(
                tuple(sorted((i, u, v))) in C.triples
                for (u, v) in ((j, k), (j, l), (k, l))
            ):
                return False
    return True


def is_dense(C: Collection) -> bool:
    """Whether some coordinate line lies in at least n - 2 members of C."""
    n = C.n
    if n - 2 <= 0:
        return n >= 1  # every coordinate line clears a threshold of zero
    counts: dict[tuple[int, int], int] = {}
    for (i, j, k) in C.triples:
        for pair in ((i, j), (i, k), (j, k)):
            counts[pair] = counts.get(pair, 0) + 1
    return any(c >= n - 2 for c in counts.values())


def canonical_form(C: Collection) -> Collection:
    """Orbit representative of C under all coordinate permutations."""
    return C.canonical()


@dataclass(frozen=True)
class OrbitCatalog:
    """All adequate collections of one ambient dimension, up to symmetry."""

    n: int
    representatives: tuple[Collection, ...]
    orbit_sizes: tuple[int, ...]
    total: int

    def __post_init__(self) -> None:
        assert sum(self.orbit_sizes) == self.total
        order = factorial(self.n + 1)
        assert all(order % s == 0 for s in self.orbit_sizes)

    def __len__(self) -> int:
        return len(self.representatives)

    def records(self) -> list[dict]:
        """JSON-ready rows: canonical triples, orbit size, dense flag."""
        return [
            {
                "triples": [list(t) for t in rep],
                "orbit_size": size,
                "dense": is_dense(rep),
            }
            for rep, size in zip(self.representatives, self.orbit_sizes)
        ]


@lru_cache(maxsize=None)
def _witness_masks(n: int) -> list[tuple[int, int]]:
    """Pairs (member_bit_mask_selector, witness_mask) flattened over all
    (index i, triple t) with i outside t.

    A collection mask C is adequate iff for every entry with C having the
    member bit set, C also meets the witness mask.
    """
    idx = triple_index(n)
    out = []
    for i in range(n + 1):
        for t, (a, b, c) in enumerate(all_triples(n)):
            if i in (a, b, c):
                continue
            witness = 0
            for (u, v) in ((a, b), (a, c), (b, c)):
                witness |= 1 << idx[tuple(sorted((i, u, v)))]
            out.append((t, witness))
    return out


def adequate_masks(n: int) -> np.ndarray:
    """Bitmasks of all adequate collections, ascending."""
    nt = num_triples(n)
    if nt > 25:
        raise ValueError(f"enumeration over 2^{nt} collections is out of budget")
    masks = np.arange(1 << nt, dtype=np.int64)
    bad = np.zeros(masks.shape, dtype=bool)
    for t, witness in _witness_masks(n):
        bad |= ((masks >> t) & 1).astype(bool) & ((masks & witness) == 0)
    return masks[~bad]


def _canonicalize_masks(n: int, masks: np.ndarray) -> np.ndarray:
    """Vectorized orbit-minimal image for an array of collection masks."""
    lo, hi, split = _perm_mask_tables(n)
    low = masks & ((1 << split) - 1)
    high = masks >> split
    canon = lo[0][low] | hi[0][high]
    for p in range(1, lo.shape[0]):
        np.minimum(canon, lo[p][low] | hi[p][high], out=canon)
    return canon


@lru_cache(maxsize=None)
def enumerate_adequate(n: int) -> OrbitCatalog:
    """Catalog of all adequate collections up to coordinate symmetry."""
    if n > 5:
        raise ValueError("adequate enumeration supported for n <= 5")
    masks = adequate_masks(n)
    canon = _canonicalize_masks(n, masks)
    reps, counts = np.unique(canon, return_counts=True)
    representatives = tuple(TripleSet.from_mask(n, int(m)) for m in reps)
    return OrbitCatalog(
        n=n,
        representatives=representatives,
        orbit_sizes=tuple(int(c) for c in counts),
        total=int(len(masks)),
    )


def non_dense_adequate(n: int) -> list[Collection]:
    """Canonical representatives of nonempty adequate classes that are not
    dense.  Empty for n <= 4; exactly two classes for n = 5."""
    catalog = enumerate_adequate(n)
    return [
        rep
        for rep in catalog.representatives
        if len(rep) > 0 and not is_dense(rep)
    ]


def orbit_of(C: Collection) -> set[Collection]:
    """Full orbit of a collection under coordinate permutations."""
    return {C.apply(p) for p in permutations(C.n)}
