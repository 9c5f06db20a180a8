"""Quasi-projectivity straight from the definition, by exhaustive search.

An algebra A is quasi-projective when for every target T, every
homomorphism f: A -> T and every epimorphism j: A -> T there is an
endomorphism phi of A with j(phi(x)) = f(x) for all x.

Only quotients of A need to be tried as targets. If j': A -> T' is onto, then
T' is isomorphic to A/ker(j') through some iso i, and for any f': A -> T' a
lift for (f', j') is exactly a lift for (i.f', i.j'), since j'.phi = f' iff
i.j'.phi = i.f'. ``oracle_all_targets`` checks this reduction by brute force.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field

from ._guard import check_size, size_limit
from .algebra import MonounaryAlgebra
from .hom import (
    Congruence,
    Homomorphism,
    hom_maps,
    is_homomorphism,
    quotient,
    subalgebras,
    theta_U,
)

DEFAULT_GUARD = 6
EXHAUSTIVE_RECHECK_MAX = 5


def lift_exists(a: MonounaryAlgebra, t: MonounaryAlgebra,
                j: Homomorphism | tuple[int, ...],
                f: Homomorphism | tuple[int, ...]) -> Homomorphism | None:
    """Some endomorphism phi of a with j(phi(x)) = f(x), or None.

    phi(x) is drawn from the fiber j^-1(f(x)); the forward orbit of every
    choice is propagated by ``hom_maps``.
    """
    jmap = j.map if isinstance(j, Homomorphism) else tuple(j)
    fmap = f.map if isinstance(f, Homomorphism) else tuple(f)
    if not is_homomorphism(a, t, jmap):
        raise ValueError("j is not a homomorphism")
    if not is_homomorphism(a, t, fmap):
        raise ValueError("f is not a homomorphism")
    if len(set(jmap)) != t.size:
        raise ValueError("j is not surjective")
    fiber: dict[int, list[int]] = {}
    for x, y in enumerate(jmap, start=1):
        fiber.setdefault(y, []).append(x)
    allowed = [fiber[fmap[x - 1]] for x in a.elements]
    for phi in hom_maps(a, a, allowed=allowed):
        return Homomorphism(a, a, phi)
    return None


def _no_lift_exhaustive(a: MonounaryAlgebra, jmap, fmap) -> bool:
    """True iff none of the n^n self-maps is an endomorphism lifting f through j."""
    n = a.size
    for phi in itertools.product(range(1, n + 1), repeat=n):
        if all(jmap[phi[x - 1] - 1] == fmap[x - 1] for x in a.elements) and all(
            a(phi[x - 1]) == phi[a(x) - 1] for x in a.elements
        ):
            return False
    return True


@dataclass(frozen=True)
class Witness:
    """A target T with f: A -> T and onto j: A -> T admitting no lift."""

    kind: str  # "congruence", "subalgebra" or "target"
    congruence: Congruence | None
    subalgebra: frozenset[int] | None
    target: MonounaryAlgebra
    j: tuple[int, ...]
    f: tuple[int, ...]

    def describe(self) -> str:
        if self.kind == "subalgebra":
            head = "U = {" + ",".join(map(str, sorted(self.subalgebra))) + "}"
            head += f", theta_U = {self.congruence}"
        elif self.kind == "congruence":
            head = f"theta = {self.congruence}"
        else:
            head = "abstract target"
        return (f"{head}; T = [{' '.join(map(str, self.target.images))}]; "
                f"j = {list(self.j)}; f = {list(self.f)}")


@dataclass(frozen=True)
class OracleVerdict:
    quasi_projective: bool
    witness: Witness | None = None
    stats: dict = field(default_factory=dict, compare=False)

    @property
    def result(self) -> str:
        return "QuasiProjective" if self.quasi_projective else "NotQuasiProjective"


class _Search:
    """Shared inner loop: for each target, compare Hom(A,T) with j.End(A)."""

    def __init__(self, a: MonounaryAlgebra, canonical_only: bool = False):
        self.a = a
        self.canonical_only = canonical_only
        self.endos = list(hom_maps(a, a))
        self.stats = {"targets": 0, "epis": 0, "homs": 0, "pairs": 0, "endos": len(self.endos)}

    def check(self, t: MonounaryAlgebra, epis):
        """First (j, f) pair without a lift, or None."""
        self.stats["targets"] += 1
        homs = list(hom_maps(self.a, t))
        self.stats["homs"] += len(homs)
        for jmap in epis:
            self.stats["epis"] += 1
            liftable = {tuple(jmap[p - 1] for p in phi) for phi in self.endos}
            for fmap in homs:
                self.stats["pairs"] += 1
                if fmap not in liftable:
                    return jmap, fmap
        return None

    def confirm(self, t, jmap, fmap) -> None:
        # re-verify the emitted counterexample by independent routes
        assert is_homomorphism(self.a, t, jmap) and len(set(jmap)) == t.size
        assert is_homomorphism(self.a, t, fmap)
        assert lift_exists(self.a, t, jmap, fmap) is None
        if self.a.size <= EXHAUSTIVE_RECHECK_MAX:
            assert _no_lift_exhaustive(self.a, jmap, fmap)


def oracle_general(a: MonounaryAlgebra, max_n: int | None = None,
                   canonical_only: bool = False) -> OracleVerdict:
    """Quasi-projectivity with all quotients A/theta as targets."""
    from .hom import congruences

    check_size(a.size, size_limit(DEFAULT_GUARD, max_n), "oracle_general")
    s = _Search(a, canonical_only)
    for theta in congruences(a, max_n=a.size):
        q = quotient(a, theta)
        t = q.algebra
        epis = [q.projection.map] if canonical_only else hom_maps(a, t, surjective=True)
        bad = s.check(t, epis)
        if bad:
            s.confirm(t, *bad)
            w = Witness("congruence", theta, None, t, *bad)
            return OracleVerdict(False, w, s.stats)
    return OracleVerdict(True, None, s.stats)


def oracle_js(a: MonounaryAlgebra, max_n: int | None = None,
              canonical_only: bool = False) -> OracleVerdict:
    """Quasi-projectivity with the quotients A/U (U a subalgebra) as targets."""
    check_size(a.size, size_limit(DEFAULT_GUARD, max_n), "oracle_js")
    s = _Search(a, canonical_only)
    done: set[tuple[int, ...]] = set()
    for U in subalgebras(a, max_n=a.size):
        theta = theta_U(a, U)
        if theta.class_id in done:
            continue  # same target as an earlier U
        done.add(theta.class_id)
        q = quotient(a, theta)
        t = q.algebra
        epis = [q.projection.map] if canonical_only else hom_maps(a, t, surjective=True)
        bad = s.check(t, epis)
        if bad:
            s.confirm(t, *bad)
            w = Witness("subalgebra", theta, U, t, *bad)
            return OracleVerdict(False, w, s.stats)
    return OracleVerdict(True, None, s.stats)


def oracle_all_targets(a: MonounaryAlgebra, max_n: int | None = None) -> OracleVerdict:
    """Quasi-projectivity against every abstract target of size <= |A|.

    Targets are taken up to isomorphism, which loses nothing because the
    lifting condition is transported along isomorphisms of T.
    """
    from .enumeration import all_algebras

    check_size(a.size, size_limit(4, max_n), "oracle_all_targets")
    s = _Search(a)
    for k in range(1, a.size + 1):
        for t in all_algebras(k, max_n=a.size):
            bad = s.check(t, hom_maps(a, t, surjective=True))
            if bad:
                s.confirm(t, *bad)
                return OracleVerdict(False, Witness("target", None, None, t, *bad), s.stats)
    return OracleVerdict(True, None, s.stats)
