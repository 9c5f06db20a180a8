"""Structural quasi-projectivity test on schemas.

Conditions are checked in a fixed order and the first failure is reported
together with the components, offsets and lengths that exhibit it.

With cycles, a schema is quasi-projective iff every component has a cycle, all
cycles have one length, every bunch is a single finite branch, all branches
have one length, and either every component carries at most one branch, or a
single component carries branches, all of them end at the same cyclic point,
and that point is a fixed point or the branches are single elements. Without
cycles, every component must be a single branch.
"""
from __future__ import annotations

import enum
from dataclasses import dataclass, field

from .algebra import MonounaryAlgebra, to_schema
from .schema import INF, CycleFree, Schema, WithCycle, canonicalize


class Violation(enum.Enum):
    MIXED_CYCLICITY = "MixedCyclicity"
    UNEQUAL_CYCLE_LENGTHS = "UnequalCycleLengths"
    INFINITE_BRANCH = "InfiniteBranch"
    MULTI_BRANCH_BUNCH = "MultiBranchBunch"
    UNEQUAL_BRANCH_LENGTHS = "UnequalBranchLengths"
    TOO_MANY_BRANCHES_IN_COMPONENT = "TooManyBranchesInComponent"
    NON_ANTIPODAL_BRANCH_PAIR = "NonAntipodalBranchPair"
    SPLIT_BRANCH_ENDPOINTS = "SplitBranchEndpoints"
    SHARED_ENDPOINT_BRANCHES = "SharedEndpointBranches"
    EXTRA_BRANCHES_BESIDE_PAIR = "ExtraBranchesBesidePair"
    MULTI_BRANCH_CYCLE_FREE_COMPONENT = "MultiBranchCycleFreeComponent"

    def __str__(self) -> str:
        return self.value


@dataclass(frozen=True)
class QpVerdict:
    quasi_projective: bool
    violation: Violation | None = None
    witnesses: dict = field(default_factory=dict, compare=False)

    def __post_init__(self):
        if self.quasi_projective != (self.violation is None):
            raise ValueError("a violation is reported exactly when the verdict is negative")

    @property
    def result(self) -> str:
        return "QuasiProjective" if self.quasi_projective else "NotQuasiProjective"

    def describe(self) -> str:
        if self.quasi_projective:
            return self.result
        detail = ", ".join(f"{k}={_fmt(v)}" for k, v in self.witnesses.items())
        return f"{self.result}: {self.violation} ({detail})"


def _fmt(v) -> str:
    if v == INF:
        return "inf"
    if isinstance(v, (list, tuple)):
        return "[" + ", ".join(_fmt(x) for x in v) + "]"
    return str(v)


def _not(violation: Violation, **witnesses) -> QpVerdict:
    return QpVerdict(False, violation, witnesses)


def _branches(comp: WithCycle) -> list[tuple[int, int, float, bool]]:
    """(offset, bunch index, length, is simple path) for every bunch on the cycle."""
    out = []
    for o, t in comp.attachments:
        for b, sub in enumerate(t.bunches()):
            out.append((o, b, sub.length, sub.is_path))
    return out


def decide(s: Schema) -> QpVerdict:
    comps = s.components
    cyc = [i for i, c in enumerate(comps) if isinstance(c, WithCycle)]
    free = [i for i, c in enumerate(comps) if isinstance(c, CycleFree)]
    if cyc and free:
        return _not(Violation.MIXED_CYCLICITY, cycle_component=cyc[0],
                    cycle_free_component=free[0])
    if free:
        for i in free:
            c = comps[i]
            if c.decorations:
                idx, t = c.decorations[0]
                return _not(Violation.MULTI_BRANCH_CYCLE_FREE_COMPONENT,
                            component=i, spine_index=idx, extra_branches=t.branch_count
                            if not t.has_infinite else INF)
        return QpVerdict(True)

    cns = [comps[i].cn for i in cyc]
    if len(set(cns)) > 1:
        lo = min(range(len(cns)), key=lambda i: (cns[i], i))
        hi = max(range(len(cns)), key=lambda i: (cns[i], -i))
        return _not(Violation.UNEQUAL_CYCLE_LENGTHS, components=[lo, hi],
                    cycle_lengths=[cns[lo], cns[hi]])
    m = cns[0]

    branches = {i: _branches(comps[i]) for i in cyc}
    for i in cyc:
        for o, b, length, _ in branches[i]:
            if length == INF:
                return _not(Violation.INFINITE_BRANCH, component=i, offset=o, bunch=b)
    for i in cyc:
        for o, b, _, path in branches[i]:
            if not path:
                return _not(Violation.MULTI_BRANCH_BUNCH, component=i, offset=o, bunch=b)

    seen = None
    for i in cyc:
        for o, b, length, _ in branches[i]:
            if seen is None:
                seen = (i, o, length)
            elif length != seen[2]:
                return _not(Violation.UNEQUAL_BRANCH_LENGTHS,
                            components=[seen[0], i], offsets=[seen[1], o],
                            lengths=[seen[2], length])

    loaded = []  # components carrying at least two branches
    for i in cyc:
        ends = sorted({o for o, *_ in branches[i]})
        if len(ends) >= 3:
            return _not(Violation.TOO_MANY_BRANCHES_IN_COMPONENT, component=i,
                        offsets=ends, branches=len(branches[i]))
        if len(ends) == 2:
            k, l = ends
            kind = (Violation.SPLIT_BRANCH_ENDPOINTS if 2 * (l - k) == m
                    else Violation.NON_ANTIPODAL_BRANCH_PAIR)
            return _not(kind, component=i, offsets=[k, l], cycle_length=m)
        if len(branches[i]) >= 2:
            length = branches[i][0][2]
            if m > 1 and length > 1:
                return _not(Violation.SHARED_ENDPOINT_BRANCHES, component=i,
                            offsets=ends, branches=len(branches[i]),
                            cycle_length=m, length=length)
            loaded.append(i)
    if loaded:
        first = loaded[0]
        for i in cyc:
            if i != first and branches[i]:
                return _not(Violation.EXTRA_BRANCHES_BESIDE_PAIR,
                            components=[first, i],
                            branches=[len(branches[first]), len(branches[i])])
    return QpVerdict(True)


def decide_finite(a: MonounaryAlgebra) -> QpVerdict:
    return decide(canonicalize(to_schema(a)))
