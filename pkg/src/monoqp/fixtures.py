"""Concrete counterexamples (A, T, f, j) with no lift, one family per lemma.

Every target is a fixed point with one or two simple chains of equal length
hanging off it. ``lemma_fixture`` builds the lemma's algebra from size
parameters; ``counterexample`` runs the matching construction on a given
finite algebra, driven by the decider's verdict.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

from .algebra import MonounaryAlgebra, bunch
from .decider import QpVerdict, Violation, decide_finite
from .hom import is_homomorphism
from .oracle import lift_exists

LEMMAS = ("2.1", "2.3", "2.4", "2.5", "2.6", "split", "shift")


class FixtureError(ValueError):
    """Parameters outside the hypotheses of the requested construction."""


@dataclass(frozen=True)
class Fixture:
    lemma: str
    a: MonounaryAlgebra
    t: MonounaryAlgebra
    f: tuple[int, ...]
    j: tuple[int, ...]

    def check(self) -> bool:
        """f is a homomorphism, j an epimorphism, and no endomorphism lifts f."""
        return (is_homomorphism(self.a, self.t, self.f)
                and is_homomorphism(self.a, self.t, self.j)
                and len(set(self.j)) == self.t.size
                and lift_exists(self.a, self.t, self.j, self.f) is None)


class _Builder:
    def __init__(self):
        self.images: list[int] = []

    def _new(self, image: int | None) -> int:
        self.images.append(image if image is not None else 0)
        return len(self.images)

    def cycle(self, m: int) -> list[int]:
        first = len(self.images) + 1
        ids = list(range(first, first + m))
        for i, x in enumerate(ids):
            self._new(ids[(i + 1) % m])
        return ids

    def path(self, anchor: int, length: int) -> list[int]:
        """Chain b_1 .. b_length with b_1 -> anchor; returns [b_1, ...]."""
        ids, below = [], anchor
        for _ in range(length):
            below = self._new(below)
            ids.append(below)
        return ids

    def build(self) -> MonounaryAlgebra:
        return MonounaryAlgebra(tuple(self.images))


def _target(chains: int, length: int) -> tuple[MonounaryAlgebra, Callable[[int, int], int]]:
    """Fixed point 1 with ``chains`` chains of ``length`` nodes.

    ``node(p, i)`` is the i-th node (i >= 1, counted from the fixed point) of
    chain p; ``node(p, 0)`` is the fixed point.
    """
    b = _Builder()
    root = b.cycle(1)[0]
    ids = [b.path(root, length) for _ in range(chains)]

    def node(p: int, i: int) -> int:
        return root if i == 0 else ids[p][i - 1]

    return b.build(), node


def _levels(a: MonounaryAlgebra, start: int) -> dict[int, int]:
    """Elements of the bunch of ``start`` with their distance above it."""
    h0 = a.analysis.height(start)
    return {x: a.analysis.height(x) - h0 for x in bunch(a, start)}


def _branch_length(a: MonounaryAlgebra, start: int) -> int:
    return 1 + a.analysis.depth(start)


def _fixture(lemma, a, t, f, j) -> Fixture:
    return Fixture(lemma, a, t, tuple(f), tuple(j))


# --- constructions on an arbitrary finite algebra ---------------------------

def unequal_cycles(a: MonounaryAlgebra, small: int, large: int) -> Fixture:
    """Two components whose cycle lengths do not divide the right way.

    f sends the component of ``small`` to one fixed point of T and j sends the
    component of ``large`` there; every other element goes to the other point.
    """
    an = a.analysis
    s1, s2 = an.component(small), an.component(large)
    if s1 == s2:
        raise FixtureError("needs two different components")
    if an.cn_of(small) % an.cn_of(large) == 0:
        raise FixtureError("cycle of `large` must not divide the cycle of `small`")
    t = MonounaryAlgebra((1, 2))
    f = [1 if an.component(x) == s1 else 2 for x in a.elements]
    j = [1 if an.component(x) == s2 else 2 for x in a.elements]
    return _fixture("2.1", a, t, f, j)


def forked_bunch(a: MonounaryAlgebra, fork: int) -> Fixture:
    """A bunch that forks at the acyclic element ``fork``.

    T is one chain as long as the tallest subtree above the fork; f maps that
    subtree onto it, j maps every subtree above the fork onto it.
    """
    an = a.analysis
    kids = a.preimages[fork - 1]
    if an.is_cyclic(fork) or len(kids) < 2:
        raise FixtureError(f"element {fork} is not an acyclic fork")
    tall = max(kids, key=lambda y: (an.depth(y), -y))
    n = _branch_length(a, tall)
    t, node = _target(1, n)
    f = [node(0, 0)] * a.size
    for x, d in _levels(a, tall).items():
        f[x - 1] = node(0, d + 1)
    j = [node(0, 0)] * a.size
    for k in kids:
        for x, d in _levels(a, k).items():
            j[x - 1] = node(0, d + 1)
    return _fixture("2.3", a, t, f, j)


def unequal_branches(a: MonounaryAlgebra, short: int, long: int) -> Fixture:
    """Simple branches starting at ``short`` and ``long`` with different lengths.

    f maps the short branch onto a chain of its length; j maps the top part of
    the long branch onto the same chain.
    """
    n, m = _branch_length(a, short), _branch_length(a, long)
    if not n < m:
        raise FixtureError("the first branch must be strictly shorter")
    t, node = _target(1, n)
    f = [node(0, 0)] * a.size
    for x, d in _levels(a, short).items():
        f[x - 1] = node(0, d + 1)
    j = [node(0, 0)] * a.size
    for x, d in _levels(a, long).items():
        if d >= m - n:
            j[x - 1] = node(0, d - (m - n) + 1)
    return _fixture("2.4", a, t, f, j)


def swapped_pair(a: MonounaryAlgebra, s1: int, s2: int) -> Fixture:
    """Two equal branches in one component; f keeps them apart, j swaps them."""
    n = _branch_length(a, s1)
    t, node = _target(2, n)
    f = [node(0, 0)] * a.size
    j = [node(0, 0)] * a.size
    for x, d in _levels(a, s1).items():
        f[x - 1], j[x - 1] = node(0, d + 1), node(1, d + 1)
    for x, d in _levels(a, s2).items():
        f[x - 1], j[x - 1] = node(1, d + 1), node(0, d + 1)
    return _fixture("2.5", a, t, f, j)


def pair_and_third(a: MonounaryAlgebra, s1: int, s2: int, s3: int) -> Fixture:
    """Branches s1, s2 in one component and s3 in another.

    f sends s1, s2 to the two chains of T; j sends s1 to the second chain and
    s3 to the first, so a lift would have to split the first component.
    """
    n = _branch_length(a, s1)
    t, node = _target(2, n)
    f = [node(0, 0)] * a.size
    j = [node(0, 0)] * a.size
    for x, d in _levels(a, s1).items():
        f[x - 1], j[x - 1] = node(0, d + 1), node(1, d + 1)
    for x, d in _levels(a, s2).items():
        f[x - 1] = node(1, d + 1)
    for x, d in _levels(a, s3).items():
        j[x - 1] = node(0, d + 1)
    return _fixture("2.6", a, t, f, j)


def merged_pair(a: MonounaryAlgebra, s1: int, s2: int) -> Fixture:
    """Equal branches ending at distinct points of one cycle.

    f folds both onto one chain, j uses only the branch at s2; a lift would
    send both ending points to the ending point of s2.
    """
    n = _branch_length(a, s1)
    t, node = _target(1, n)
    f = [node(0, 0)] * a.size
    j = [node(0, 0)] * a.size
    for x, d in _levels(a, s1).items():
        f[x - 1] = node(0, d + 1)
    for x, d in _levels(a, s2).items():
        f[x - 1] = j[x - 1] = node(0, d + 1)
    return _fixture("split", a, t, f, j)


def shifted_pair(a: MonounaryAlgebra, s1: int, s2: int) -> Fixture:
    """Equal branches of length >= 2 ending at one point of a cycle of length >= 2.

    j maps the branch at s2 onto a chain; f does the same and also maps the
    branch at s1 one step lower. A lift must fix the shared ending point (to
    keep s2's branch in place) and move it one step along the cycle (because
    s1 lands on it).
    """
    n = _branch_length(a, s1)
    if n < 2 or _branch_length(a, s2) != n:
        raise FixtureError("needs two branches of equal length >= 2")
    t, node = _target(1, n)
    f = [node(0, 0)] * a.size
    j = [node(0, 0)] * a.size
    for x, d in _levels(a, s2).items():
        f[x - 1] = j[x - 1] = node(0, d + 1)
    for x, d in _levels(a, s1).items():
        f[x - 1] = node(0, d)
    return _fixture("shift", a, t, f, j)


# --- lemma-shaped algebras --------------------------------------------------

def lemma_fixture(lemma: str, **params) -> Fixture:
    """Build a lemma-shaped algebra together with a no-lift (T, f, j).

    Parameters (all lengths are node counts):
      2.1    cn1 < cn2: two bare cycles
      2.3    m, stem, n >= k: a bunch on an m-cycle that forks after ``stem``
             nodes into arms of n and k nodes
      2.4    cn, n < m: two components, each a cn-cycle with one branch
      2.5    m, k < l, n: one m-cycle with branches at offsets k and l, where
             the offsets are not antipodal
      2.6    m, k, l, n: branches at offsets k, l of one m-cycle, and a third
             branch on a second m-cycle
      split  m, k != l, n: branches at two distinct offsets of one m-cycle
      shift  m >= 2, n >= 2: two branches at one point of an m-cycle
    """
    b = _Builder()
    p = params
    try:
        if lemma == "2.1":
            cn1, cn2 = p["cn1"], p["cn2"]
            if not 1 <= cn1 < cn2:
                raise FixtureError("2.1 needs 1 <= cn1 < cn2")
            c1, c2 = b.cycle(cn1), b.cycle(cn2)
            return unequal_cycles(b.build(), c1[0], c2[0])
        if lemma == "2.3":
            m, stem, n, k = p.get("m", 1), p["stem"], p["n"], p["k"]
            if not (m >= 1 and stem >= 1 and n >= k >= 1):
                raise FixtureError("2.3 needs m >= 1, stem >= 1 and n >= k >= 1")
            c = b.cycle(m)
            trunk = b.path(c[0], stem)
            b.path(trunk[-1], n)
            b.path(trunk[-1], k)
            return forked_bunch(b.build(), trunk[-1])
        if lemma == "2.4":
            cn, n, m = p.get("cn", 1), p["n"], p["m"]
            if not (cn >= 1 and 1 <= n < m):
                raise FixtureError("2.4 needs cn >= 1 and 1 <= n < m")
            s1 = b.path(b.cycle(cn)[0], n)[0]
            s2 = b.path(b.cycle(cn)[0], m)[0]
            return unequal_branches(b.build(), s1, s2)
        if lemma == "2.5":
            m, k, l, n = p["m"], p["k"], p["l"], p.get("n", 1)
            if not (0 <= k < l < m and n >= 1):
                raise FixtureError("2.5 needs 0 <= k < l < m and n >= 1")
            if (2 * (l - k)) % m == 0:
                raise FixtureError("2.5 needs offsets that are not antipodal")
            c = b.cycle(m)
            s1 = b.path(c[k], n)[0]
            s2 = b.path(c[l], n)[0]
            return swapped_pair(b.build(), s1, s2)
        if lemma == "2.6":
            m, k, l, n = p["m"], p["k"], p["l"], p.get("n", 1)
            if not (0 <= k < m and 0 <= l < m and n >= 1):
                raise FixtureError("2.6 needs offsets in [0, m) and n >= 1")
            c = b.cycle(m)
            s1 = b.path(c[k], n)[0]
            s2 = b.path(c[l], n)[0]
            s3 = b.path(b.cycle(m)[0], n)[0]
            return pair_and_third(b.build(), s1, s2, s3)
        if lemma == "split":
            m, k, l, n = p["m"], p["k"], p["l"], p.get("n", 1)
            if not (0 <= k < m and 0 <= l < m and k != l and n >= 1):
                raise FixtureError("split needs two distinct offsets in [0, m)")
            c = b.cycle(m)
            s1 = b.path(c[k], n)[0]
            s2 = b.path(c[l], n)[0]
            return merged_pair(b.build(), s1, s2)
        if lemma == "shift":
            m, n = p["m"], p["n"]
            if not (m >= 2 and n >= 2):
                raise FixtureError("shift needs m >= 2 and n >= 2")
            c = b.cycle(m)
            s1 = b.path(c[0], n)[0]
            s2 = b.path(c[0], n)[0]
            return shifted_pair(b.build(), s1, s2)
    except KeyError as exc:
        raise FixtureError(f"lemma {lemma} needs parameter {exc}") from None
    if lemma in ("2.2", "2.91"):
        raise FixtureError(f"lemma {lemma} concerns infinite algebras; use the schema decider")
    raise FixtureError(f"unknown lemma {lemma!r}; choose from {', '.join(LEMMAS)}")


# --- counterexamples driven by the decider ------------------------------------

def _starts(a: MonounaryAlgebra) -> list[int]:
    """First element of every bunch: acyclic elements whose image is cyclic."""
    an = a.analysis
    return [x for x in a.elements if not an.is_cyclic(x) and an.is_cyclic(a(x))]


def counterexample(a: MonounaryAlgebra, verdict: QpVerdict | None = None) -> Fixture:
    """A concrete no-lift (T, f, j) on ``a`` for a negative decider verdict."""
    verdict = verdict or decide_finite(a)
    if verdict.quasi_projective:
        raise FixtureError("the algebra is quasi-projective; there is no counterexample")
    an = a.analysis
    v = verdict.violation
    if v is Violation.UNEQUAL_CYCLE_LENGTHS:
        cyc = sorted(an.cycles, key=len)
        return unequal_cycles(a, cyc[0][0], cyc[-1][0])
    if v is Violation.MULTI_BRANCH_BUNCH:
        forks = [x for x in a.elements
                 if not an.is_cyclic(x) and len(a.preimages[x - 1]) >= 2]
        return forked_bunch(a, forks[0])
    starts = _starts(a)
    if v is Violation.UNEQUAL_BRANCH_LENGTHS:
        ordered = sorted(starts, key=lambda s: (_branch_length(a, s), s))
        return unequal_branches(a, ordered[0], ordered[-1])
    if v in (Violation.TOO_MANY_BRANCHES_IN_COMPONENT,
             Violation.NON_ANTIPODAL_BRANCH_PAIR,
             Violation.SPLIT_BRANCH_ENDPOINTS):
        split = None
        for s1 in starts:
            for s2 in starts:
                if s1 >= s2 or not an.same_component(s1, s2):
                    continue
                k, l = an.offset(a(s1)), an.offset(a(s2))
                if k == l:
                    continue
                if (2 * (l - k)) % an.cn_of(s1):
                    return swapped_pair(a, s1, s2)
                split = split or (s1, s2)
        return merged_pair(a, *split)
    if v is Violation.SHARED_ENDPOINT_BRANCHES:
        for s1 in starts:
            for s2 in starts:
                if s1 < s2 and a(s1) == a(s2):
                    return shifted_pair(a, s1, s2)
    if v is Violation.EXTRA_BRANCHES_BESIDE_PAIR:
        for s1 in starts:
            for s2 in starts:
                if s1 < s2 and an.same_component(s1, s2):
                    s3 = next(s for s in starts if not an.same_component(s, s1))
                    return pair_and_third(a, s1, s2, s3)
    raise FixtureError(f"no finite construction for {v}")
