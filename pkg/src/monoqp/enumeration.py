"""Catalogs of algebras up to isomorphism, and seeded random algebras.

Random algebras use ``random.Random(seed)`` (Mersenne Twister), drawing each
image with ``randrange(n)`` in element order.
"""
from __future__ import annotations

import hashlib
import itertools
import random
from dataclasses import dataclass
from functools import lru_cache
from pathlib import Path

from ._guard import check_size, size_limit
from .algebra import MonounaryAlgebra, canonical_form, dumps_map

DEFAULT_GUARD = 7


@dataclass(frozen=True)
class AlgebraCatalog:
    n: int
    algebras: tuple[MonounaryAlgebra, ...]
    keys: tuple[tuple, ...]

    def __iter__(self):
        return iter(self.algebras)

    def __len__(self):
        return len(self.algebras)


@lru_cache(maxsize=None)
def _catalog(n: int) -> AlgebraCatalog:
    reps: dict[tuple, MonounaryAlgebra] = {}
    for images in itertools.product(range(1, n + 1), repeat=n):
        a = MonounaryAlgebra(images)
        reps.setdefault(canonical_form(a), a)
    keys = sorted(reps)
    return AlgebraCatalog(n, tuple(reps[k] for k in keys), tuple(keys))


def all_algebras(n: int, max_n: int | None = None) -> AlgebraCatalog:
    """One representative per isomorphism class of n-element algebras.

    Every n^n map is canonicalized; the first map (lexicographically) seen
    for each key is kept. Entries are sorted by canonical key.
    """
    if n < 1:
        raise ValueError(f"n must be positive, got {n}")
    check_size(n, size_limit(DEFAULT_GUARD, max_n), "all_algebras")
    return _catalog(n)


def random_algebra(n: int, seed: int) -> MonounaryAlgebra:
    if n < 1:
        raise ValueError(f"n must be positive, got {n}")
    rng = random.Random(seed)
    return MonounaryAlgebra(tuple(rng.randrange(n) + 1 for _ in range(n)))


def key_digest(key) -> str:
    return hashlib.sha256(repr(key).encode()).hexdigest()[:16]


def export_catalog(catalog: AlgebraCatalog, directory: str | Path) -> list[Path]:
    """Write each representative as ``<key-hash>.map`` in the map file format."""
    d = Path(directory)
    d.mkdir(parents=True, exist_ok=True)
    paths = []
    for key, a in zip(catalog.keys, catalog.algebras):
        p = d / f"{key_digest(key)}.map"
        p.write_text(dumps_map(a))
        paths.append(p)
    return paths
