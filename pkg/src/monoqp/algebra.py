"""Finite monounary algebras as explicit functional graphs.

Elements are the integers ``1..n``. The operation is stored as a tuple
``images`` with ``images[x - 1] == alpha(x)``.
"""
from __future__ import annotations

import re
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Sequence


class MapFormatError(ValueError):
    """A map file or image sequence does not describe a total unary operation."""


@dataclass(frozen=True)
class MonounaryAlgebra:
    images: tuple[int, ...]

    def __post_init__(self):
        n = len(self.images)
        if n == 0:
            raise MapFormatError("an algebra needs at least one element (n = 0)")
        for pos, y in enumerate(self.images, start=1):
            if not isinstance(y, int) or not 1 <= y <= n:
                raise MapFormatError(
                    f"image {y!r} at position {pos} is out of range 1..{n}"
                )

    @property
    def size(self) -> int:
        return len(self.images)

    @property
    def elements(self) -> range:
        return range(1, len(self.images) + 1)

    def __call__(self, x: int) -> int:
        return self.images[x - 1]

    def __len__(self) -> int:
        return len(self.images)

    @cached_property
    def preimages(self) -> tuple[tuple[int, ...], ...]:
        """``preimages[x - 1]`` lists every y with alpha(y) = x, ascending."""
        pre: list[list[int]] = [[] for _ in self.images]
        for y, x in enumerate(self.images, start=1):
            pre[x - 1].append(y)
        return tuple(tuple(p) for p in pre)

    @cached_property
    def analysis(self) -> ComponentAnalysis:
        return analyze(self)

    def relabel(self, perm: Sequence[int]) -> MonounaryAlgebra:
        """Isomorphic copy in which element x is renamed ``perm[x - 1]``."""
        n = self.size
        if sorted(perm) != list(range(1, n + 1)):
            raise ValueError("relabeling must be a permutation of 1..n")
        new = [0] * n
        for x in self.elements:
            new[perm[x - 1] - 1] = perm[self(x) - 1]
        return MonounaryAlgebra(tuple(new))

    def __str__(self) -> str:
        return f"{self.size}: [{' '.join(map(str, self.images))}]"


def parse_map(n: int, images: Iterable[int]) -> MonounaryAlgebra:
    images = tuple(images)
    if n <= 0:
        raise MapFormatError(f"n must be positive, got {n}")
    if len(images) != n:
        raise MapFormatError(f"expected {n} images, got {len(images)}")
    return MonounaryAlgebra(images)


def cycle(m: int) -> MonounaryAlgebra:
    """The m-element cycle 1 -> 2 -> ... -> m -> 1."""
    return MonounaryAlgebra(tuple(list(range(2, m + 1)) + [1]))


_COMMENT = re.compile(r"#.*")


def loads_map(text: str) -> MonounaryAlgebra:
    """Parse the two-line map format (n, then the n images); '#' starts a comment."""
    lines = [_COMMENT.sub("", ln).strip() for ln in text.splitlines()]
    lines = [ln for ln in lines if ln]
    if len(lines) != 2:
        raise MapFormatError(
            f"expected 2 non-comment lines (n and images), found {len(lines)}"
        )
    try:
        n = int(lines[0])
        images = [int(tok) for tok in lines[1].split()]
    except ValueError as exc:
        raise MapFormatError(f"non-integer token: {exc}") from None
    return parse_map(n, images)


def dumps_map(a: MonounaryAlgebra) -> str:
    return f"{a.size}\n{' '.join(map(str, a.images))}\n"


def iterate(a: MonounaryAlgebra, x: int, k: int) -> int:
    if not 1 <= x <= a.size:
        raise ValueError(f"element {x} not in 1..{a.size}")
    if k < 0:
        raise ValueError("k must be non-negative")
    if k > a.size:
        # every orbit is periodic after at most n steps
        h = a.analysis.height(x) or 0
        if k > h:
            m = a.analysis.cn_of(x)
            k = h + (k - h) % m
    for _ in range(k):
        x = a(x)
    return x


@dataclass(frozen=True)
class ComponentAnalysis:
    """Per-element structure of a finite algebra.

    Components are indexed from 0 in order of their least element. Each
    cycle is listed from its least element in traversal order, so the cyclic
    point at offset ``o`` of component ``i`` is ``cycles[i][o]``.
    """

    component_of: tuple[int, ...]
    cycles: tuple[tuple[int, ...], ...]
    cyclic: tuple[bool, ...]
    heights: tuple[int | None, ...]
    depths: tuple[int | None, ...]
    leaves: tuple[bool, ...]
    _offset: tuple[int | None, ...] = field(repr=False, compare=False)

    @property
    def n_components(self) -> int:
        return len(self.cycles)

    @property
    def cns(self) -> tuple[int, ...]:
        return tuple(len(c) for c in self.cycles)

    def component(self, x: int) -> int:
        return self.component_of[x - 1]

    def members(self, i: int) -> tuple[int, ...]:
        return tuple(x for x, c in enumerate(self.component_of, start=1) if c == i)

    def cn_of(self, x: int) -> int:
        return len(self.cycles[self.component_of[x - 1]])

    def is_cyclic(self, x: int) -> bool:
        return self.cyclic[x - 1]

    def is_leaf(self, x: int) -> bool:
        return self.leaves[x - 1]

    def height(self, x: int) -> int | None:
        """l_h(x), or None for cyclic x."""
        return self.heights[x - 1]

    def depth(self, x: int) -> int | None:
        """l_d(x), or None for cyclic x."""
        return self.depths[x - 1]

    def offset(self, c: int) -> int:
        """Position of cyclic element c within its stored cycle."""
        o = self._offset[c - 1]
        if o is None:
            raise ValueError(f"element {c} is not cyclic")
        return o

    def same_component(self, x: int, y: int) -> bool:
        return self.component_of[x - 1] == self.component_of[y - 1]


def analyze(a: MonounaryAlgebra) -> ComponentAnalysis:
    n = a.size
    cyclic = [False] * n
    # 0 = unvisited, 1 = on current walk, 2 = done
    state = [0] * n
    for start in a.elements:
        path = []
        x = start
        while state[x - 1] == 0:
            state[x - 1] = 1
            path.append(x)
            x = a(x)
        if state[x - 1] == 1:
            # closed a new cycle at x
            y = x
            while True:
                cyclic[y - 1] = True
                y = a(y)
                if y == x:
                    break
        for p in path:
            state[p - 1] = 2

    # cycles ordered by least element, each starting at its least element
    cycles: list[tuple[int, ...]] = []
    offset: list[int | None] = [None] * n
    seen = [False] * n
    for x in a.elements:
        if cyclic[x - 1] and not seen[x - 1]:
            cyc = [x]
            seen[x - 1] = True
            y = a(x)
            while y != x:
                cyc.append(y)
                seen[y - 1] = True
                y = a(y)
            for o, c in enumerate(cyc):
                offset[c - 1] = o
            cycles.append(tuple(cyc))
    cycle_index = {}
    for i, cyc in enumerate(cycles):
        for c in cyc:
            cycle_index[c] = i

    heights: list[int | None] = [None] * n
    root: list[int] = [0] * n  # the cyclic element each element eventually reaches
    for x in a.elements:
        if cyclic[x - 1]:
            root[x - 1] = x
            continue
        chain = []
        y = x
        while not cyclic[y - 1] and heights[y - 1] is None:
            chain.append(y)
            y = a(y)
        base = 0 if cyclic[y - 1] else heights[y - 1]
        r = y if cyclic[y - 1] else root[y - 1]
        for k, z in enumerate(reversed(chain), start=1):
            heights[z - 1] = base + k
            root[z - 1] = r
    # components are numbered by least element, which is not the same as
    # the order of their cycles
    comp_of_cycle = {}
    component_of = [0] * n
    for x in a.elements:
        ci = cycle_index[root[x - 1]]
        if ci not in comp_of_cycle:
            comp_of_cycle[ci] = len(comp_of_cycle)
        component_of[x - 1] = comp_of_cycle[ci]
    order = sorted(comp_of_cycle, key=comp_of_cycle.get)
    cycles = [cycles[ci] for ci in order]
    offset_t = tuple(offset)

    leaves = [not a.preimages[x - 1] for x in a.elements]
    depths: list[int | None] = [None] * n
    acyclic = sorted((x for x in a.elements if not cyclic[x - 1]),
                     key=lambda x: -heights[x - 1])
    for x in acyclic:
        # preimages of an acyclic element are acyclic and strictly higher
        pre = a.preimages[x - 1]
        depths[x - 1] = 0 if not pre else 1 + max(depths[y - 1] for y in pre)

    return ComponentAnalysis(
        component_of=tuple(component_of),
        cycles=tuple(cycles),
        cyclic=tuple(cyclic),
        heights=tuple(heights),
        depths=tuple(depths),
        leaves=tuple(leaves),
        _offset=offset_t,
    )


def cycle_distance(analysis: ComponentAnalysis, ci: int, cj: int) -> int:
    """Least k >= 0 with alpha^k(ci) = cj. Not symmetric."""
    if not (analysis.is_cyclic(ci) and analysis.is_cyclic(cj)):
        raise ValueError(f"cycle_distance needs cyclic elements, got {ci}, {cj}")
    if not analysis.same_component(ci, cj):
        raise ValueError(f"elements {ci} and {cj} lie in different components")
    m = analysis.cn_of(ci)
    return (analysis.offset(cj) - analysis.offset(ci)) % m


def bunch(a: MonounaryAlgebra, x: int) -> frozenset[int]:
    """All iterated preimages of the acyclic element x, x included."""
    if a.analysis.is_cyclic(x):
        raise ValueError(f"element {x} is cyclic; bunches hang off acyclic elements")
    out = {x}
    stack = [x]
    while stack:
        y = stack.pop()
        for z in a.preimages[y - 1]:
            out.add(z)
            stack.append(z)
    return frozenset(out)


def generated(a: MonounaryAlgebra, xs: Iterable[int]) -> frozenset[int]:
    """The carrier of the subalgebra generated by xs (forward closure)."""
    out: set[int] = set()
    for x in xs:
        while x not in out:
            out.add(x)
            x = a(x)
    return frozenset(out)


def _tree_code(a: MonounaryAlgebra, x: int) -> str:
    kids = sorted(_tree_code(a, y) for y in a.preimages[x - 1]
                  if not a.analysis.is_cyclic(y))
    return "(" + "".join(kids) + ")"


def _component_code(a: MonounaryAlgebra, cyc: tuple[int, ...]) -> tuple[str, ...]:
    codes = [_tree_code(a, c) for c in cyc]
    return min(tuple(codes[r:] + codes[:r]) for r in range(len(codes)))


def canonical_form(a: MonounaryAlgebra) -> tuple[tuple[str, ...], ...]:
    """Isomorphism-invariant key: equal exactly for isomorphic algebras.

    Each component is encoded as the least rotation of the sequence of
    rooted-tree codes hanging off its cycle points; components are sorted.
    """
    an = a.analysis
    return tuple(sorted(_component_code(a, cyc) for cyc in an.cycles))


def to_schema(a: MonounaryAlgebra):
    """Symbolic presentation with one WithCycle component per component of a."""
    from .schema import BranchTree, Schema, WithCycle

    an = a.analysis

    def tree(x: int) -> BranchTree:
        kids = [tree(y) for y in a.preimages[x - 1] if not an.is_cyclic(y)]
        return BranchTree(tuple(kids))

    comps = []
    for cyc in an.cycles:
        attachments = {}
        for o, c in enumerate(cyc):
            t = tree(c)
            if t.children:
                attachments[o] = t
        comps.append(WithCycle(len(cyc), attachments))
    return Schema(tuple(comps))
