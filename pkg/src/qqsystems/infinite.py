"""Enumeration of solutions of the infinite (t = 0) system.

At rank one every solution is a split of the master polynomial's root
multiset: q+ q- = Lambda in differential mode, or Q+(qz) Q-(z) = Lambda
in difference mode (where the plus-part shifts pick up a factor q).
The solution set is finite, so isolatedness is automatic; what matters
downstream is genericity, which decides the lifting tier.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator, List, Sequence, Tuple

from .scalar import Scalar
from .systems import ProblemSpec


@dataclass(frozen=True)
class InfiniteSolution:
    """One split of the root multiset, with its degeneracy data.

    l counts the distinct values of the multiset that controls the t=0
    Jacobian rank: x0 + y0 in differential mode, (x0/q) + y0 in
    difference mode.  The two differ only when q-scaling causes a
    collision between the two parts; scaled_collision records that.
    """

    x0: Tuple[Scalar, ...]
    y0: Tuple[Scalar, ...]
    l: int
    tier: str  # "generic" | "degenerate"
    scaled_collision: bool = False

    def to_json(self):
        return {"x0": [v.to_json() for v in self.x0],
                "y0": [v.to_json() for v in self.y0],
                "l": self.l, "tier": self.tier,
                "scaled_collision": self.scaled_collision}


def _canon(values: Sequence[Scalar]) -> Tuple[Scalar, ...]:
    return tuple(sorted(values, key=lambda v: v.sort_key()))


def _sub_multisets(counts: List[Tuple[Scalar, int]], size: int
                   ) -> Iterator[List[Scalar]]:
    """All sub-multisets of the given size, by per-value count vectors."""
    def rec(i: int, remaining: int, acc: List[Scalar]):
        if remaining == 0:
            yield list(acc)
            return
        if i == len(counts):
            return
        value, avail = counts[i]
        for take in range(min(avail, remaining), -1, -1):
            yield from rec(i + 1, remaining - take, acc + [value] * take)
    yield from rec(0, size, [])


def _make_solution(sub: Sequence[Scalar], rest: Sequence[Scalar],
                   spec: ProblemSpec) -> InfiniteSolution:
    if spec.is_difference:
        x0 = _canon([spec.q * a for a in sub])
    else:
        x0 = _canon(sub)
    y0 = _canon(rest)
    jac_multiset = list(sub) + list(rest)  # = (x0/q) + y0 in difference mode
    l = len({v.sort_key() for v in jac_multiset})
    tier = "generic" if l == spec.m + spec.n else "degenerate"
    collision = False
    if spec.is_difference:
        l_scaled = len({v.sort_key() for v in list(x0) + list(y0)})
        collision = l_scaled != l
    return InfiniteSolution(x0=x0, y0=y0, l=l, tier=tier,
                            scaled_collision=collision)


def enumerate_infinite_solutions(spec: ProblemSpec) -> List[InfiniteSolution]:
    """One solution per size-m sub-multiset of Lambda's root shifts.

    Deterministic order: lexicographic on the sorted plus-part shifts.
    Duplicate splits (only possible with repeated roots) appear once.
    """
    if spec.m + spec.n != spec.lam.degree:
        raise ValueError("m + n must equal deg Lambda")
    counts = list(spec.lam.shifts)
    total = spec.lam.root_shift_multiset()
    seen = set()
    out = []
    for sub in _sub_multisets(counts, spec.m):
        rest = list(total)
        for v in sub:
            rest.remove(v)
        sol = _make_solution(sub, rest, spec)
        key = (tuple(v.sort_key() for v in sol.x0),
               tuple(v.sort_key() for v in sol.y0))
        if key in seen:
            continue
        seen.add(key)
        out.append(sol)
    out.sort(key=lambda s: tuple(v.sort_key() for v in s.x0))
    return out


def classify_solution(sol: InfiniteSolution, spec: ProblemSpec) -> InfiniteSolution:
    """Recompute l and the tier for an externally constructed solution."""
    if spec.is_difference:
        base = [v / spec.q for v in sol.x0] + list(sol.y0)
    else:
        base = list(sol.x0) + list(sol.y0)
    l = len({v.sort_key() for v in base})
    tier = "generic" if l == spec.m + spec.n else "degenerate"
    collision = False
    if spec.is_difference:
        collision = len({v.sort_key() for v in list(sol.x0) + list(sol.y0)}) != l
    return InfiniteSolution(x0=_canon(sol.x0), y0=_canon(sol.y0), l=l,
                            tier=tier, scaled_collision=collision)
