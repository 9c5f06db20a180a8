"""Finitely presented component shapes, including infinite ones.

A ``BranchTree`` is rooted at an anchor point that is *not* itself part of the
tree's element count: for a ``WithCycle`` attachment the anchor is the cyclic
point at that offset, for a ``CycleFree`` decoration it is the spine node at
that index. Each child of the anchor starts one bunch. ``infinite_tail`` on a
node means an infinite simple preimage chain continues above that node, in
addition to its listed children.
"""
from __future__ import annotations

import json
import math
from dataclasses import dataclass
from functools import cached_property
from typing import Iterator, Mapping, Union

INF = math.inf


class SchemaError(ValueError):
    pass


@dataclass(frozen=True)
class BranchTree:
    children: tuple[BranchTree, ...] = ()
    infinite_tail: bool = False

    def __post_init__(self):
        if not isinstance(self.children, tuple):
            object.__setattr__(self, "children", tuple(self.children))

    @property
    def fanout(self) -> int:
        return len(self.children) + int(self.infinite_tail)

    @cached_property
    def size(self) -> int:
        """Number of nodes strictly below the anchor (finite part only)."""
        return sum(1 + c.size for c in self.children)

    @cached_property
    def has_infinite(self) -> bool:
        return self.infinite_tail or any(c.has_infinite for c in self.children)

    @cached_property
    def length(self) -> float:
        """Longest anchor-to-leaf path, counting non-anchor nodes; inf with a tail."""
        if self.has_infinite:
            return INF
        return max((1 + c.length for c in self.children), default=0)

    @cached_property
    def is_path(self) -> bool:
        return self.fanout <= 1 and all(c.is_path for c in self.children)

    @cached_property
    def branch_count(self) -> int:
        """Maximal branches above the anchor: leaves plus infinite tails."""
        if not self.children:
            return int(self.infinite_tail)
        return int(self.infinite_tail) + sum(c.branch_count or 1 for c in self.children)

    @cached_property
    def code(self) -> str:
        kids = "".join(sorted(c.code for c in self.children))
        return "(" + kids + ("*" if self.infinite_tail else "") + ")"

    def canonical(self) -> BranchTree:
        kids = sorted((c.canonical() for c in self.children), key=lambda t: t.code)
        return BranchTree(tuple(kids), self.infinite_tail)

    def bunches(self) -> list[BranchTree]:
        """One subtree per bunch hanging directly off the anchor.

        A tail on the anchor itself is reported as a bunch consisting of a
        single node with an infinite tail.
        """
        out = [BranchTree((c,)) for c in self.children]
        if self.infinite_tail:
            out.append(BranchTree((), True))
        return out

    @staticmethod
    def path(k: int, infinite: bool = False) -> BranchTree:
        """A simple chain of k nodes above the anchor."""
        t = BranchTree((), infinite)
        for _ in range(k):
            t = BranchTree((t,))
        return t


# offset -> tree, stored as sorted pairs so the dataclass stays hashable
Placement = tuple[tuple[int, BranchTree], ...]


def _placements(value) -> Placement:
    if isinstance(value, Mapping):
        items = list(value.items())
    else:
        items = list(value)
    keys = [k for k, _ in items]
    if len(set(keys)) != len(keys):
        raise SchemaError(f"duplicate positions {sorted(keys)}")
    for k, t in items:
        if not isinstance(k, int):
            raise SchemaError(f"position {k!r} is not an integer")
        if not isinstance(t, BranchTree):
            raise SchemaError(f"position {k}: expected a BranchTree")
        if t.fanout == 0:
            raise SchemaError(f"position {k}: empty tree (nothing attached)")
    return tuple(sorted(items, key=lambda kv: kv[0]))


@dataclass(frozen=True)
class WithCycle:
    cn: int
    attachments: Placement = ()

    def __post_init__(self):
        if not isinstance(self.cn, int) or self.cn < 1:
            raise SchemaError(f"cycle length must be a positive integer, got {self.cn!r}")
        att = _placements(self.attachments)
        for o, _ in att:
            if not 0 <= o < self.cn:
                raise SchemaError(f"attachment offset {o} outside [0, {self.cn})")
        object.__setattr__(self, "attachments", att)

    @property
    def size(self) -> float:
        if any(t.has_infinite for _, t in self.attachments):
            return INF
        return self.cn + sum(t.size for _, t in self.attachments)


@dataclass(frozen=True)
class CycleFree:
    backward_infinite: bool = False
    decorations: Placement = ()

    def __post_init__(self):
        dec = _placements(self.decorations)
        if not self.backward_infinite:
            for i, _ in dec:
                if i < 0:
                    raise SchemaError(
                        f"spine index {i} is negative on a chain with a leaf end"
                    )
        object.__setattr__(self, "decorations", dec)

    @property
    def size(self) -> float:
        return INF


ComponentSchema = Union[WithCycle, CycleFree]


@dataclass(frozen=True)
class Schema:
    components: tuple[ComponentSchema, ...]

    def __post_init__(self):
        comps = tuple(self.components)
        if not comps:
            raise SchemaError("a schema needs at least one component")
        for c in comps:
            if not isinstance(c, (WithCycle, CycleFree)):
                raise SchemaError(f"unknown component {c!r}")
        object.__setattr__(self, "components", comps)

    def __iter__(self) -> Iterator[ComponentSchema]:
        return iter(self.components)

    def __len__(self) -> int:
        return len(self.components)


def _rotation_key(c: WithCycle, r: int) -> tuple[str, ...]:
    codes = ["~"] * c.cn  # '~' sorts after '(' so occupied offsets come first
    for o, t in c.attachments:
        codes[(o - r) % c.cn] = t.code
    return tuple(codes)


def _canonical_component(c: ComponentSchema) -> ComponentSchema:
    if isinstance(c, WithCycle):
        r = min(range(c.cn), key=lambda r: _rotation_key(c, r))
        return WithCycle(c.cn, {(o - r) % c.cn: t.canonical() for o, t in c.attachments})
    dec = {i: t.canonical() for i, t in c.decorations}
    if c.backward_infinite and dec:
        # a Z-chain has no distinguished origin
        shift = min(dec)
        dec = {i - shift: t for i, t in dec.items()}
    return CycleFree(c.backward_infinite, dec)


def _component_key(c: ComponentSchema) -> tuple:
    if isinstance(c, WithCycle):
        return (0, c.cn, _rotation_key(c, 0))
    return (1, int(c.backward_infinite), tuple((i, t.code) for i, t in c.decorations))


def canonicalize(s: Schema) -> Schema:
    comps = [_canonical_component(c) for c in s.components]
    return Schema(tuple(sorted(comps, key=_component_key)))


@dataclass(frozen=True)
class BranchRecord:
    component: int
    kind: str  # "attachment" (on a cycle) or "decoration" (on a cycle-free spine)
    position: int  # cycle offset or spine index
    length: float
    is_simple_path: bool
    bunch_branch_count: float
    bunch_lengths: tuple[float, ...]
    bunch_paths: tuple[bool, ...]


def branch_inventory(s: Schema) -> list[BranchRecord]:
    out = []
    for ci, comp in enumerate(s.components):
        if isinstance(comp, WithCycle):
            kind, placed = "attachment", comp.attachments
        else:
            kind, placed = "decoration", comp.decorations
        for pos, t in placed:
            bs = t.bunches()
            out.append(BranchRecord(
                component=ci,
                kind=kind,
                position=pos,
                length=t.length,
                is_simple_path=t.is_path,
                bunch_branch_count=INF if t.has_infinite else t.branch_count,
                bunch_lengths=tuple(b.length for b in bs),
                bunch_paths=tuple(b.is_path for b in bs),
            ))
    return out


# --- JSON -------------------------------------------------------------------

def tree_to_json(t: BranchTree) -> dict:
    return {"children": [tree_to_json(c) for c in t.children],
            "infinite_tail": t.infinite_tail}


def tree_from_json(obj) -> BranchTree:
    if not isinstance(obj, dict):
        raise SchemaError(f"tree must be an object, got {type(obj).__name__}")
    kids = obj.get("children", [])
    tail = obj.get("infinite_tail", False)
    if not isinstance(kids, list) or not isinstance(tail, bool):
        raise SchemaError("tree needs a 'children' list and a boolean 'infinite_tail'")
    return BranchTree(tuple(tree_from_json(k) for k in kids), tail)


def schema_to_json(s: Schema) -> dict:
    comps = []
    for c in s.components:
        if isinstance(c, WithCycle):
            comps.append({"cycle": c.cn, "attachments": [
                {"offset": o, "tree": tree_to_json(t)} for o, t in c.attachments]})
        else:
            comps.append({"chain": {"backward_infinite": c.backward_infinite,
                                    "decorations": [
                                        {"index": i, "tree": tree_to_json(t)}
                                        for i, t in c.decorations]}})
    return {"components": comps}


def schema_from_json(obj) -> Schema:
    try:
        comps = []
        for c in obj["components"]:
            if "cycle" in c:
                comps.append(WithCycle(c["cycle"], [
                    (a["offset"], tree_from_json(a["tree"]))
                    for a in c.get("attachments", [])]))
            elif "chain" in c:
                ch = c["chain"]
                comps.append(CycleFree(bool(ch.get("backward_infinite", False)), [
                    (d["index"], tree_from_json(d["tree"]))
                    for d in ch.get("decorations", [])]))
            else:
                raise SchemaError(f"component needs 'cycle' or 'chain': {c!r}")
        return Schema(tuple(comps))
    except (KeyError, TypeError) as exc:
        raise SchemaError(f"malformed schema JSON: {exc!r}") from None


def loads_schema(text: str) -> Schema:
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise SchemaError(f"invalid JSON: {exc}") from None
    return schema_from_json(obj)


def dumps_schema(s: Schema) -> str:
    return json.dumps(schema_to_json(s), sort_keys=True)
