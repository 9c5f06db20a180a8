import itertools

from hypothesis import strategies as st

from monoqp.algebra import MonounaryAlgebra
from monoqp.schema import BranchTree, CycleFree, Schema, WithCycle


def A(*images):
    return MonounaryAlgebra(tuple(images))


def all_maps(n):
    for images in itertools.product(range(1, n + 1), repeat=n):
        yield MonounaryAlgebra(images)


@st.composite
def algebras(draw, min_n=1, max_n=6):
    n = draw(st.integers(min_n, max_n))
    return MonounaryAlgebra(tuple(draw(st.lists(st.integers(1, n), min_size=n, max_size=n))))


@st.composite
def relabeled(draw, max_n=7):
    a = draw(algebras(max_n=max_n))
    perm = draw(st.permutations(range(1, a.size + 1)))
    return a, a.relabel(perm)




def trees(max_leaves=4, tails=True):
    leaf = st.builds(lambda tail: BranchTree((), tail), st.booleans() if tails else st.just(False))
    return st.recursive(
        leaf,
        lambda kids: st.builds(lambda cs, tail: BranchTree(tuple(cs), tail),
                               st.lists(kids, min_size=1, max_size=3),
                               st.booleans() if tails else st.just(False)),
        max_leaves=max_leaves,
    )


def _anchored(tails=True):
    # a tree hung off an anchor needs something above the anchor
    return st.builds(lambda cs, tail: BranchTree(tuple(cs), tail),
                     st.lists(trees(tails=tails), min_size=1, max_size=3),
                     st.booleans() if tails else st.just(False))


_ANCHORED = {True: _anchored(True), False: _anchored(False)}


def anchored(tails=True):
    return _ANCHORED[tails]


@st.composite
def with_cycle(draw, max_cn=6, tails=True):
    cn = draw(st.integers(1, max_cn))
    offs = draw(st.lists(st.integers(0, cn - 1), unique=True, max_size=min(cn, 3)))
    return WithCycle(cn, {o: draw(anchored(tails)) for o in offs})


@st.composite
def cycle_free(draw):
    back = draw(st.booleans())
    lo = -5 if back else 0
    idx = draw(st.lists(st.integers(lo, 6), unique=True, max_size=3))
    return CycleFree(back, {i: draw(anchored()) for i in idx})


def schemas(cycles=True, chains=True, max_components=4):
    kinds = []
    if cycles:
        kinds.append(with_cycle())
    if chains:
        kinds.append(cycle_free())
    return st.builds(lambda cs: Schema(tuple(cs)),
                     st.lists(st.one_of(*kinds), min_size=1, max_size=max_components))
