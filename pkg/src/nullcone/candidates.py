"""Enumeration of candidate directions for null-cone strata.

A candidate is a nonzero vector l whose affine hyperplane {inner(l, .) = 1}
carries weights, such that the perpendicular foot from the origin lies in the
convex hull of those weights, the weight set on the hyperplane is saturated,
and the root-versus-weight counting bound holds.

Enumeration scans affinely independent weight subsets of size up to the
effective rank.  Any saturated weight set lives in an affine hyperplane, so
it has an affinely independent spanning subset within that size bound and
the scan cannot miss it; the brute-force oracle in `oracle` double-checks
this on every tested instance.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Protocol, Sequence

from .ratgeom import (
    GramSpace,
    ResourceError,
    Vec,
    affinely_independent_subsets,
    in_convex_hull,
    is_zero_vec,
    perp,
    vscale,
)


class ProblemLike(Protocol):
    """What enumeration needs: a validated problem or a nested restriction."""

    space: GramSpace
    roots: tuple[Vec, ...]
    weights: tuple[tuple[Vec, int], ...]
    effective_rank: int
    orbit_cap: int

    def orbit(self, v: Vec) -> tuple[Vec, ...]: ...


@dataclass(frozen=True)
class CountBound:
    """Counts for the bound: roots on the negative side of l versus total
    multiplicity of weights strictly below the level-1 hyperplane."""

    roots_negative: int
    weights_below: int

    @property
    def holds(self) -> bool:
        return self.roots_negative <= self.weights_below

    @property
    def is_equality(self) -> bool:
        return self.roots_negative == self.weights_below


def count_bound(problem: ProblemLike, l: Vec) -> CountBound:
    space = problem.space
    negative = sum(1 for alpha in problem.roots if space.inner(l, alpha) < 0)
    below = sum(m for v, m in problem.weights if space.inner(l, v) < 1)
    return CountBound(negative, below)


def saturate(problem: ProblemLike, l: Vec) -> tuple[int, ...]:
    """Indices of all weights exactly on the hyperplane {inner(l, .) = 1}."""
    space = problem.space
    return tuple(i for i, (v, _) in enumerate(problem.weights)
                 if space.inner(l, v) == 1)


@dataclass(frozen=True)
class Candidate:
    l: Vec
    member_indices: tuple[int, ...]
    perp_point: Vec
    bound: CountBound
    weights_at_least: int

    @property
    def roots_negative(self) -> int:
        return self.bound.roots_negative

    @property
    def weights_below(self) -> int:
        return self.bound.weights_below


def candidate_from_subset(problem: ProblemLike,
                          subset: Sequence[int]) -> Optional[Candidate]:
    """Build the candidate generated by a weight subset, or None.

    Rejections: the affine hull passes through the origin; the saturated set
    has a different affine hull than the subset (some other spanning subset
    regenerates that candidate); the foot leaves the convex hull; the
    counting bound fails.
    """
    space = problem.space
    points = [problem.weights[i][0] for i in subset]
    foot = perp(space, points)
    if is_zero_vec(foot):
        return None
    l = vscale(1 / space.norm_sq(foot), foot)
    members = saturate(problem, l)
    member_points = [problem.weights[i][0] for i in members]
    if perp(space, member_points) != foot:
        return None
    if not in_convex_hull(space, foot, member_points):
        return None
    bound = count_bound(problem, l)
    if not bound.holds:
        return None
    at_least = sum(m for v, m in problem.weights if space.inner(l, v) >= 1)
    return Candidate(l, members, foot, bound, at_least)


def enumerate_candidates(problem: ProblemLike,
                         dedup: bool = True) -> tuple[Candidate, ...]:
    """All candidates, sorted by l.

    With dedup enabled, Weyl-equivalent candidates are grouped and the
    lexicographically minimal orbit member represents each group.
    """
    points = tuple(v for v, _ in problem.weights)
    found: dict[Vec, Candidate] = {}
    if points and problem.effective_rank >= 1:
        for subset in affinely_independent_subsets(points, problem.effective_rank):
            cand = candidate_from_subset(problem, subset)
            if cand is not None and cand.l not in found:
                found[cand.l] = cand
    if not dedup:
        return tuple(found[l] for l in sorted(found))
    kept: dict[Vec, Candidate] = {}
    seen: set[Vec] = set()
    for l in sorted(found):
        if l in seen:
            continue
        try:
            orbit = problem.orbit(l)
        except ResourceError as exc:
            raise ResourceError(
                f"{exc} while grouping candidates into Weyl orbits; "
                "rerun with --no-dedup to skip the grouping") from exc
        seen.update(orbit)
        representative = min(orbit)
        # the Weyl group permutes candidates, so the minimum must be one
        assert representative in found, \
            f"Weyl image {representative} of candidate {l} was not enumerated"
        kept[representative] = found[representative]
    return tuple(kept[l] for l in sorted(kept))


def verify_candidate(problem: ProblemLike, cand: Candidate) -> list[str]:
    """Independent recheck of every defining property of a candidate."""
    space = problem.space
    out: list[str] = []
    if is_zero_vec(cand.perp_point):
        out.append(f"candidate {cand.l}: perpendicular foot is zero")
        return out
    expected_l = vscale(1 / space.norm_sq(cand.perp_point), cand.perp_point)
    if cand.l != expected_l:
        out.append(f"candidate {cand.l}: l is not foot/|foot|^2 = {expected_l}")
    member_points = [problem.weights[i][0] for i in cand.member_indices]
    for i, point in zip(cand.member_indices, member_points):
        if space.inner(cand.l, point) != 1:
            out.append(f"candidate {cand.l}: member weight {i} is off the hyperplane")
    if saturate(problem, cand.l) != tuple(cand.member_indices):
        out.append(f"candidate {cand.l}: member set is not saturated")
    if member_points and perp(space, member_points) != cand.perp_point:
        out.append(f"candidate {cand.l}: stored foot is not perp of the members")
    if member_points and not in_convex_hull(space, cand.perp_point, member_points):
        out.append(f"candidate {cand.l}: foot lies outside the member hull")
    bound = count_bound(problem, cand.l)
    if bound != cand.bound:
        out.append(f"candidate {cand.l}: stored counts {cand.bound} != {bound}")
    if not bound.holds:
        out.append(f"candidate {cand.l}: counting bound fails "
                   f"({bound.roots_negative} > {bound.weights_below})")
    at_least = sum(m for v, m in problem.weights if space.inner(cand.l, v) >= 1)
    if at_least != cand.weights_at_least:
        out.append(f"candidate {cand.l}: stored level-ge-1 multiplicity "
                   f"{cand.weights_at_least} != {at_least}")
    return out
