"""Recursive decision procedure for the stratification.

For a candidate l the problem is restricted to the hyperplane data along l:
roots orthogonal to l survive, weights on the level-1 hyperplane are
projected onto {l = 0}, and the process repeats with the equality candidates
of the restriction as children.  The resulting signed tree decides whether l
labels a stratum: a node is plus exactly when no child is plus, and l is
stratifying exactly when its root is plus.

Everything stays in ambient coordinates; a restriction just remembers the
chain of constraint vectors it is orthogonal to.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Union

from .candidates import Candidate, ProblemLike, count_bound, enumerate_candidates
from .ratgeom import (
    InputError,
    Matrix,
    Vec,
    is_zero_vec,
    project_hyperplane,
)
from .rootdata import (
    GramSpace,
    Problem,
    ValidatedProblem,
    orbit_closure,
    reflection_matrix,
    validate,
)

Cache = dict[tuple[tuple[Vec, ...], tuple[tuple[Vec, int], ...]], tuple[Vec, ...]]


@dataclass(frozen=True)
class SubProblem:
    """A nested restriction, in ambient coordinates.

    All roots and weights are orthogonal (under the form) to every vector in
    `constraints`; the effective rank is the ambient rank minus the number of
    constraints.
    """

    space: GramSpace
    roots: tuple[Vec, ...]
    weights: tuple[tuple[Vec, int], ...]
    constraints: tuple[Vec, ...]
    effective_rank: int
    generator_matrices: tuple[Matrix, ...]
    orbit_cap: int

    def orbit(self, v: Vec) -> tuple[Vec, ...]:
        return orbit_closure(self.generator_matrices, v, self.orbit_cap)


def root_subproblem(problem: ValidatedProblem) -> SubProblem:
    return SubProblem(
        space=problem.space,
        roots=problem.roots,
        weights=problem.weights,
        constraints=(),
        effective_rank=problem.rank,
        generator_matrices=problem.generator_matrices,
        orbit_cap=problem.orbit_cap,
    )


def restrict(problem: ProblemLike, l: Vec) -> SubProblem:
    """Restriction along a candidate l of the given problem."""
    space = problem.space
    if is_zero_vec(l):
        raise InputError("cannot restrict along the zero vector")
    assert all(space.inner(l, c) == 0 for c in problem.constraints), \
        "restriction vector must be orthogonal to the existing constraints"
    assert problem.effective_rank >= 1
    roots = tuple(alpha for alpha in problem.roots if space.inner(l, alpha) == 0)
    merged: dict[Vec, int] = {}
    for v, mult in problem.weights:
        if space.inner(l, v) == 1:
            w = project_hyperplane(space, l, v)
            merged[w] = merged.get(w, 0) + mult
    generators = tuple(sorted({reflection_matrix(space, alpha) for alpha in roots}))
    return SubProblem(
        space=space,
        roots=roots,
        weights=tuple(sorted(merged.items())),
        constraints=tuple(problem.constraints) + (l,),
        effective_rank=problem.effective_rank - 1,
        generator_matrices=generators,
        orbit_cap=problem.orbit_cap,
    )


def equality_set(sub: SubProblem, cache: Optional[Cache] = None,
                 fast: bool = False) -> tuple[Vec, ...]:
    """Candidates of `sub` whose counting bound is an equality.

    The memo key omits the constraint chain: enumeration only reads roots,
    weights and the subset-size limit, and the limit never binds because a
    saturated weight set spans at most its own affine hull.

    The fast path applies only to restrictions.  There the origin lies in
    the convex hull of the weights (it is the projected foot of the parent
    candidate), so once no roots remain every direction has a weight strictly
    below level 1 and the equality count 0 is unreachable.
    """
    key = (sub.roots, sub.weights)
    if cache is not None and key in cache:
        return cache[key]
    if fast and sub.constraints and not sub.roots:
        result: tuple[Vec, ...] = ()
    else:
        result = tuple(c.l for c in enumerate_candidates(sub)
                       if c.bound.is_equality)
    if cache is not None:
        cache[key] = result
    return result


@dataclass(frozen=True)
class SignedTree:
    l: Vec
    children: tuple["SignedTree", ...]
    plus: bool

    @property
    def sign(self) -> str:
        return "+" if self.plus else "-"

    def depth(self) -> int:
        return 1 + max((child.depth() for child in self.children), default=0)


def build_tree(problem: ProblemLike, l: Vec, cache: Optional[Cache] = None,
               fast: bool = False) -> SignedTree:
    sub = restrict(problem, l)
    children = tuple(build_tree(sub, a, cache, fast)
                     for a in equality_set(sub, cache, fast))
    plus_children = sum(1 for child in children if child.plus)
    assert plus_children <= 1, \
        f"node {l} has {plus_children} plus children; at most one is possible"
    return SignedTree(l, children, plus_children == 0)


def is_stratifying(problem: ProblemLike, l: Vec, cache: Optional[Cache] = None,
                   fast: bool = False) -> bool:
    return build_tree(problem, l, cache, fast).plus


def stratum_dimension(problem: ProblemLike, l: Vec) -> int:
    """Roots on the negative side plus total multiplicity at level >= 1."""
    space = problem.space
    negative = sum(1 for alpha in problem.roots if space.inner(l, alpha) < 0)
    at_least = sum(m for v, m in problem.weights if space.inner(l, v) >= 1)
    return negative + at_least


def openness_check(problem: ProblemLike, l: Vec) -> bool:
    """A stratum is open in V exactly when the counting bound is an equality."""
    return count_bound(problem, l).is_equality


def generic_representative(problem: ValidatedProblem,
                           l: Vec) -> tuple[tuple[int, str], ...]:
    """One fresh symbol per multiplicity unit over the level-1 weights.

    A sum of the corresponding weight vectors with these coefficients lies in
    the stratum of l whenever the coefficients are algebraically independent
    over the rationals; reports carry that caveat, it is not checkable here.
    """
    space = problem.space
    out: list[tuple[int, str]] = []
    counter = 0
    for i, (v, mult) in enumerate(problem.weights):
        if space.inner(l, v) == 1:
            for _ in range(mult):
                counter += 1
                out.append((i, f"c_{counter}"))
    return tuple(out)


@dataclass(frozen=True)
class StratumReport:
    l: Vec
    dim: int
    open_in_V: bool
    support_v_l: tuple[int, ...]
    support_v_l_plus: tuple[int, ...]
    levi_root_indices: tuple[int, ...]
    parabolic_root_indices: tuple[int, ...]
    generic_rep: tuple[tuple[int, str], ...]


@dataclass(frozen=True)
class CandidateDecision:
    candidate: Candidate
    tree: SignedTree
    stratifying: bool


@dataclass(frozen=True)
class NullconeSummary:
    problem: ValidatedProblem
    decisions: tuple[CandidateDecision, ...]
    strata: tuple[StratumReport, ...]
    dim_nullcone: int
    equals_V: bool
    max_component_indices: tuple[int, ...]


def stratum_report(problem: ValidatedProblem, cand: Candidate) -> StratumReport:
    space = problem.space
    l = cand.l
    support = tuple(i for i, (v, _) in enumerate(problem.weights)
                    if space.inner(l, v) == 1)
    support_plus = tuple(i for i, (v, _) in enumerate(problem.weights)
                         if space.inner(l, v) >= 1)
    levi = tuple(i for i, alpha in enumerate(problem.roots)
                 if space.inner(l, alpha) == 0)
    parabolic = tuple(i for i, alpha in enumerate(problem.roots)
                      if space.inner(l, alpha) >= 0)
    return StratumReport(
        l=l,
        dim=stratum_dimension(problem, l),
        open_in_V=openness_check(problem, l),
        support_v_l=support,
        support_v_l_plus=support_plus,
        levi_root_indices=levi,
        parabolic_root_indices=parabolic,
        generic_rep=generic_representative(problem, l),
    )


def stratify(problem: Union[Problem, ValidatedProblem], fast: bool = False,
             dedup: bool = True) -> NullconeSummary:
    """Full run: candidates, signed trees, strata, null-cone summary."""
    if isinstance(problem, Problem):
        problem = validate(problem)
    cache: Cache = {}
    decisions = []
    for cand in enumerate_candidates(problem, dedup=dedup):
        tree = build_tree(problem, cand.l, cache, fast)
        assert tree.depth() <= problem.rank, \
            f"tree of {cand.l} has depth {tree.depth()} > rank {problem.rank}"
        decisions.append(CandidateDecision(cand, tree, tree.plus))
    reports = [stratum_report(problem, d.candidate)
               for d in decisions if d.stratifying]
    strata = tuple(sorted(reports, key=lambda s: (-s.dim, s.l)))
    if dedup:
        open_count = sum(1 for s in strata if s.open_in_V)
        assert open_count <= 1, f"{open_count} open strata; at most one is possible"
    dim_nullcone = max((s.dim for s in strata), default=0)
    max_indices = tuple(i for i, s in enumerate(strata) if s.dim == dim_nullcone) \
        if strata else ()
    return NullconeSummary(
        problem=problem,
        decisions=tuple(decisions),
        strata=strata,
        dim_nullcone=dim_nullcone,
        equals_V=any(s.open_in_V for s in strata),
        max_component_indices=max_indices,
    )
