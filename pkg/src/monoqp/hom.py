"""Homomorphisms, congruences, quotients and subalgebras of finite algebras.

Maps are tuples with ``map[x - 1] == f(x)``. Composition is written
``compose(j, phi)`` for ``x -> j(phi(x))``.
"""
from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Iterable, Iterator, Sequence

from ._guard import check_size, size_limit
from .algebra import MonounaryAlgebra

DEFAULT_GUARD = 8


@dataclass(frozen=True)
class Homomorphism:
    source: MonounaryAlgebra
    target: MonounaryAlgebra
    map: tuple[int, ...]

    def __post_init__(self):
        if not is_homomorphism(self.source, self.target, self.map):
            raise ValueError(f"{self.map} is not a homomorphism")

    def __call__(self, x: int) -> int:
        return self.map[x - 1]

    @property
    def is_surjective(self) -> bool:
        return len(set(self.map)) == self.target.size

    @property
    def is_endomorphism(self) -> bool:
        return self.source == self.target


def _check_map(src: MonounaryAlgebra, tgt: MonounaryAlgebra, fmap: Sequence[int]) -> None:
    if len(fmap) != src.size:
        raise ValueError(f"map has length {len(fmap)}, source has {src.size} elements")
    for x, y in enumerate(fmap, start=1):
        if not 1 <= y <= tgt.size:
            raise ValueError(f"f({x}) = {y} is outside the target 1..{tgt.size}")


def is_homomorphism(src: MonounaryAlgebra, tgt: MonounaryAlgebra,
                    fmap: Sequence[int]) -> bool:
    _check_map(src, tgt, fmap)
    return all(tgt(fmap[x - 1]) == fmap[src(x) - 1] for x in src.elements)


def compose(outer: Homomorphism, inner: Homomorphism) -> Homomorphism:
    """The homomorphism x -> outer(inner(x))."""
    if inner.target != outer.source:
        raise ValueError("composition needs inner.target == outer.source")
    return Homomorphism(inner.source, outer.target,
                        tuple(outer(inner(x)) for x in inner.source.elements))


def identity(a: MonounaryAlgebra) -> Homomorphism:
    return Homomorphism(a, a, tuple(a.elements))


def hom_maps(src: MonounaryAlgebra, tgt: MonounaryAlgebra, *,
             surjective: bool = False,
             allowed: Sequence[Iterable[int]] | None = None) -> Iterator[tuple[int, ...]]:
    """Raw map tuples of every homomorphism src -> tgt, in lexicographic order.

    Elements are assigned in order 1..n; choosing f(x) forces f on the whole
    forward orbit of x, which is propagated before the next choice. With
    ``allowed``, f(x) is restricted to ``allowed[x - 1]``.
    """
    n, m = src.size, tgt.size
    a = [src(x) - 1 for x in src.elements]
    b = [tgt(y) - 1 for y in tgt.elements]
    if allowed is None:
        choices = [list(range(m))] * n
        ok = None
    else:
        choices = [sorted(y - 1 for y in allow) for allow in allowed]
        ok = [set(c) for c in choices]
    f = [-1] * n
    hits = [0] * m  # how many assigned elements map onto each target point
    missing = [m]

    def assign(x: int, y: int, trail: list[int]) -> bool:
        # set f(x) = y and follow the forward orbit; False on conflict
        while True:
            if f[x] >= 0:
                return f[x] == y
            if ok is not None and y not in ok[x]:
                return False
            f[x] = y
            trail.append(x)
            if hits[y] == 0:
                missing[0] -= 1
            hits[y] += 1
            x, y = a[x], b[y]

    def undo(trail: list[int]) -> None:
        for x in trail:
            y = f[x]
            hits[y] -= 1
            if hits[y] == 0:
                missing[0] += 1
            f[x] = -1

    def rec(x: int) -> Iterator[tuple[int, ...]]:
        while x < n and f[x] >= 0:
            x += 1
        if surjective and missing[0] > f.count(-1):
            return
        if x == n:
            if not surjective or missing[0] == 0:
                yield tuple(v + 1 for v in f)
            return
        for y in choices[x]:
            trail: list[int] = []
            if assign(x, y, trail):
                yield from rec(x + 1)
            undo(trail)

    yield from rec(0)


def enumerate_homs(src: MonounaryAlgebra, tgt: MonounaryAlgebra) -> Iterator[Homomorphism]:
    for fmap in hom_maps(src, tgt):
        yield Homomorphism(src, tgt, fmap)


def enumerate_epis(src: MonounaryAlgebra, tgt: MonounaryAlgebra) -> Iterator[Homomorphism]:
    for fmap in hom_maps(src, tgt, surjective=True):
        yield Homomorphism(src, tgt, fmap)


def enumerate_endos(a: MonounaryAlgebra) -> Iterator[Homomorphism]:
    return enumerate_homs(a, a)


# --- congruences ------------------------------------------------------------

@dataclass(frozen=True)
class Congruence:
    """A partition of the carrier closed under alpha.

    Classes are numbered from 1 in order of their least element;
    ``class_id[x - 1]`` is the class of x.
    """

    algebra: MonounaryAlgebra
    class_id: tuple[int, ...]

    def __post_init__(self):
        ids = _normalize_blocks(self.class_id)
        if len(ids) != self.algebra.size:
            raise ValueError("class_id must have one entry per element")
        object.__setattr__(self, "class_id", ids)
        a = self.algebra
        rep: dict[int, int] = {}
        for x in a.elements:
            k = ids[x - 1]
            img = ids[a(x) - 1]
            if rep.setdefault(k, img) != img:
                raise ValueError(
                    f"partition is not compatible with the operation at element {x}"
                )

    @property
    def classes(self) -> tuple[frozenset[int], ...]:
        blocks: dict[int, set[int]] = {}
        for x, k in enumerate(self.class_id, start=1):
            blocks.setdefault(k, set()).add(x)
        return tuple(frozenset(blocks[k]) for k in sorted(blocks))

    def __len__(self) -> int:
        return max(self.class_id)

    def related(self, x: int, y: int) -> bool:
        return self.class_id[x - 1] == self.class_id[y - 1]

    @classmethod
    def from_classes(cls, a: MonounaryAlgebra,
                     classes: Iterable[Iterable[int]]) -> Congruence:
        ids = [0] * a.size
        for k, block in enumerate(classes, start=1):
            for x in block:
                if ids[x - 1]:
                    raise ValueError(f"element {x} appears in two classes")
                ids[x - 1] = k
        if 0 in ids:
            raise ValueError(f"element {ids.index(0) + 1} is in no class")
        return cls(a, tuple(ids))

    @classmethod
    def discrete(cls, a: MonounaryAlgebra) -> Congruence:
        return cls(a, tuple(a.elements))

    @classmethod
    def total(cls, a: MonounaryAlgebra) -> Congruence:
        return cls(a, (1,) * a.size)

    def __str__(self) -> str:
        return " ".join("{" + ",".join(map(str, sorted(c))) + "}" for c in self.classes)


def _normalize_blocks(labels: Sequence[int]) -> tuple[int, ...]:
    """Relabel block labels so blocks are numbered 1, 2, ... by first appearance."""
    seen: dict[int, int] = {}
    return tuple(seen.setdefault(k, len(seen) + 1) for k in labels)


def set_partitions(n: int) -> Iterator[tuple[int, ...]]:
    """Restricted growth strings of length n (labels from 1), lexicographic."""
    rgs = [1] * n

    def rec(i: int, top: int) -> Iterator[tuple[int, ...]]:
        if i == n:
            yield tuple(rgs)
            return
        for k in range(1, top + 2):
            rgs[i] = k
            yield from rec(i + 1, max(top, k))

    if n == 0:
        yield ()
        return
    yield from rec(1, 1)


def _compatible(a: MonounaryAlgebra, ids: Sequence[int]) -> bool:
    rep: dict[int, int] = {}
    for x in a.elements:
        img = ids[a(x) - 1]
        if rep.setdefault(ids[x - 1], img) != img:
            return False
    return True


def congruences(a: MonounaryAlgebra, max_n: int | None = None) -> list[Congruence]:
    """Every congruence of a, by filtering all set partitions (RGS order)."""
    check_size(a.size, size_limit(DEFAULT_GUARD, max_n), "congruences")
    return [Congruence(a, ids) for ids in set_partitions(a.size) if _compatible(a, ids)]


def kernel(h: Homomorphism) -> Congruence:
    return Congruence(h.source, _normalize_blocks(h.map))


@dataclass(frozen=True)
class QuotientAlgebra:
    congruence: Congruence
    algebra: MonounaryAlgebra
    projection: Homomorphism


def quotient(a: MonounaryAlgebra, theta: Congruence | Sequence[int]) -> QuotientAlgebra:
    """The quotient A/theta on class indices 1..k."""
    if not isinstance(theta, Congruence):
        theta = Congruence(a, tuple(theta))
    elif theta.algebra != a:
        raise ValueError("congruence belongs to a different algebra")
    k = len(theta)
    images = [0] * k
    for x in a.elements:
        c, img = theta.class_id[x - 1], theta.class_id[a(x) - 1]
        assert images[c - 1] in (0, img), "quotient operation is not well defined"
        images[c - 1] = img
    q = MonounaryAlgebra(tuple(images))
    return QuotientAlgebra(theta, q, Homomorphism(a, q, theta.class_id))


# --- theta_U and subalgebras ------------------------------------------------

def is_subalgebra(a: MonounaryAlgebra, U: Iterable[int]) -> bool:
    U = set(U)
    return bool(U) and all(1 <= u <= a.size and a(u) in U for u in U)


def _check_subalgebra(a: MonounaryAlgebra, U: Iterable[int]) -> frozenset[int]:
    U = frozenset(U)
    if not U:
        raise ValueError("U must be nonempty")
    bad = [u for u in sorted(U) if not 1 <= u <= a.size]
    if bad:
        raise ValueError(f"elements {bad} are not in 1..{a.size}")
    open_ = [u for u in sorted(U) if a(u) not in U]
    if open_:
        u = open_[0]
        raise ValueError(f"U is not closed under the operation: alpha({u}) = {a(u)} not in U")
    return U


def theta_U(a: MonounaryAlgebra, U: Iterable[int]) -> Congruence:
    """The least congruence collapsing U inside each component.

    Two elements are related iff they are equal, or both lie in U and in the
    same component.
    """
    U = _check_subalgebra(a, U)
    an = a.analysis
    ids = []
    for x in a.elements:
        if x in U:
            ids.append(("U", an.component(x)))
        else:
            ids.append(("x", x))
    return Congruence(a, _normalize_blocks(ids))


def theta_U_closure(a: MonounaryAlgebra, U: Iterable[int]) -> Congruence:
    """theta_U built as a generated congruence: seed pairs, then close.

    Components are found here by undirected reachability, independently of
    ``analyze``.
    """
    U = _check_subalgebra(a, U)
    parent = list(range(a.size + 1))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    comp = list(range(a.size + 1))

    def cfind(x):
        while comp[x] != x:
            comp[x] = comp[comp[x]]
            x = comp[x]
        return x

    for x in a.elements:
        comp[cfind(x)] = cfind(a(x))

    seeds: dict[int, int] = {}
    for u in sorted(U):
        r = cfind(u)
        if r in seeds:
            parent[find(u)] = find(seeds[r])
        else:
            seeds[r] = u
    changed = True
    while changed:
        changed = False
        for x in a.elements:
            for y in a.elements:
                if find(x) == find(y) and find(a(x)) != find(a(y)):
                    parent[find(a(x))] = find(a(y))
                    changed = True
    return Congruence(a, _normalize_blocks([find(x) for x in a.elements]))


def subalgebras(a: MonounaryAlgebra, max_n: int | None = None) -> list[frozenset[int]]:
    """All nonempty alpha-closed subsets, ordered by size then elements."""
    check_size(a.size, size_limit(DEFAULT_GUARD + 4, max_n), "subalgebras")
    out = []
    for k in range(1, a.size + 1):
        for combo in combinations(a.elements, k):
            s = set(combo)
            if all(a(x) in s for x in combo):
                out.append(frozenset(combo))
    return out


def quotient_by_subalgebra(a: MonounaryAlgebra, U: Iterable[int]) -> QuotientAlgebra:
    """The algebra A/U, i.e. A / theta_U."""
    return quotient(a, theta_U(a, U))


__all__ = [
    "Homomorphism", "Congruence", "QuotientAlgebra",
    "is_homomorphism", "compose", "identity",
    "hom_maps", "enumerate_homs", "enumerate_epis", "enumerate_endos",
    "set_partitions", "congruences", "kernel", "quotient",
    "is_subalgebra", "theta_U", "theta_U_closure", "subalgebras",
    "quotient_by_subalgebra",
]
