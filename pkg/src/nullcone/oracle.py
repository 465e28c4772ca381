"""Independent verifiers for the enumeration and the engine.

The naive enumeration here deliberately ignores the subset strategy of
`candidates`: it walks every nonempty subset of the distinct weights and
applies the defining conditions literally, with its own counting code.
Agreement between the two is the main correctness check of the package.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence, Union

from .candidates import enumerate_candidates
from .engine import stratify
from .ratgeom import (
    GramSpace,
    InputError,
    Q,
    ResourceError,
    Vec,
    in_convex_hull,
    is_zero_vec,
    parse_rational,
    parse_vector,
    perp,
    vscale,
    zero_vec,
)
from .rootdata import (
    Problem,
    RootSystem,
    ValidatedProblem,
    WeightSystem,
    matvec,
    orbit_closure,
    reflection_matrix,
    validate,
)

DEFAULT_MAX_WEIGHTS = 16


@dataclass
class OracleReport:
    candidate_set_match: bool
    mismatches: list[tuple[Vec, str]]
    law_violations: list[str]


def naive_candidates(problem: ValidatedProblem, dedup: bool = True,
                     max_weights: int = DEFAULT_MAX_WEIGHTS) -> tuple[Vec, ...]:
    """Candidate vectors from an exhaustive scan of all weight subsets."""
    entries = problem.weights
    n = len(entries)
    if n > max_weights:
        raise ResourceError(
            f"{n} distinct weights exceed the naive-subset bound {max_weights}")
    space = problem.space
    points = [v for v, _ in entries]
    found: set[Vec] = set()
    for mask in range(1, 1 << n):
        subset = [points[i] for i in range(n) if mask >> i & 1]
        foot = perp(space, subset)
        if is_zero_vec(foot):
            continue
        l = vscale(1 / space.norm_sq(foot), foot)
        on_hyperplane = {v for v in points if space.inner(l, v) == 1}
        if on_hyperplane != set(subset):
            continue
        if not in_convex_hull(space, foot, subset):
            continue
        negative_roots = sum(1 for alpha in problem.roots
                             if space.inner(l, alpha) < 0)
        below = sum(m for v, m in entries if space.inner(l, v) < 1)
        if negative_roots > below:
            continue
        found.add(l)
    if not dedup:
        return tuple(sorted(found))
    representatives: set[Vec] = set()
    seen: set[Vec] = set()
    for l in sorted(found):
        if l in seen:
            continue
        orbit = problem.orbit(l)
        seen.update(orbit)
        representatives.add(min(orbit))
    return tuple(sorted(representatives))


def compare_with_naive(problem: Union[Problem, ValidatedProblem],
                       dedup: bool = True,
                       max_weights: int = DEFAULT_MAX_WEIGHTS) -> OracleReport:
    if isinstance(problem, Problem):
        problem = validate(problem)
    engine_set = {c.l for c in enumerate_candidates(problem, dedup=dedup)}
    oracle_set = set(naive_candidates(problem, dedup=dedup, max_weights=max_weights))
    mismatches = [(l, "engine") for l in sorted(engine_set - oracle_set)]
    mismatches += [(l, "oracle") for l in sorted(oracle_set - engine_set)]
    return OracleReport(not mismatches, mismatches, [])


def rank2_non_stratifying(problem: ValidatedProblem, l: Vec) -> bool:
    """The rank-2 exclusion law for a candidate l.

    A candidate of a rank-2 problem fails to stratify exactly when its
    hyperplane {l = 1} is parallel to a root and carries exactly two distinct
    weights, each of multiplicity 1.
    """
    if problem.rank != 2:
        raise InputError(f"rank-2 law asked on a rank-{problem.rank} problem")
    space = problem.space
    parallel = any(space.inner(l, alpha) == 0 for alpha in problem.roots)
    if not parallel:
        return False
    carried = [m for v, m in problem.weights if space.inner(l, v) == 1]
    return len(carried) == 2 and all(m == 1 for m in carried)


def check_rank2_law(problem: Union[Problem, ValidatedProblem],
                    fast: bool = False) -> list[str]:
    """Engine decisions versus the rank-2 law; returns disagreement lines."""
    summary = stratify(problem, fast=fast)
    validated = summary.problem
    out = []
    for decision in summary.decisions:
        law = rank2_non_stratifying(validated, decision.candidate.l)
        if law == decision.stratifying:
            out.append(
                f"l={decision.candidate.l}: engine stratifying={decision.stratifying} "
                f"but the rank-2 law says non-stratifying={law}")
    return out


Transform = tuple[str, object]


def _generator_list(problem: Problem) -> list:
    if problem.weyl_generators is not None:
        return list(problem.weyl_generators)
    return sorted({reflection_matrix(problem.space, alpha)
                   for alpha in problem.roots.roots})


def standard_transforms(problem: Problem) -> list[Transform]:
    """Gram rescalings by 2, 1/3 and 7 plus every Weyl generator."""
    transforms: list[Transform] = [("gram-scale", Q(2)), ("gram-scale", Q(1, 3)),
                                   ("gram-scale", Q(7))]
    transforms += [("weyl-generator", i)
                   for i in range(len(_generator_list(problem)))]
    return transforms


def apply_transform(problem: Problem, transform: Transform) -> Problem:
    kind, arg = transform
    if kind == "gram-scale":
        c = parse_rational(arg)
        if c <= 0:
            raise InputError(f"gram scale must be positive, got {c}")
        gram = tuple(tuple(c * x for x in row) for row in problem.space.gram)
        space = GramSpace(problem.space.rank, gram)
        return Problem(space, problem.roots, problem.weights,
                       problem.weyl_generators, problem.orbit_cap)
    if kind == "weyl-generator":
        generators = _generator_list(problem)
        index = int(arg)
        if not 0 <= index < len(generators):
            raise InputError(
                f"generator index {index} out of range for {len(generators)} generators")
        g = generators[index]
        roots = RootSystem(tuple(sorted(matvec(g, alpha)
                                        for alpha in problem.roots.roots)))
        weights = WeightSystem(tuple(sorted((matvec(g, v), m)
                                            for v, m in problem.weights.entries)))
        return Problem(problem.space, roots, weights,
                       problem.weyl_generators, problem.orbit_cap)
    raise InputError(f"unknown transform kind {kind!r}")


def invariance_harness(problem: Problem,
                       transforms: Sequence[Transform]) -> OracleReport:
    """Stratify the problem and each transformed copy; compare the outputs
    that must not move: stratum dimension multiset, null-cone dimension, and
    whether the null-cone fills V."""
    base = stratify(problem)
    base_dims = sorted(s.dim for s in base.strata)
    violations = []
    for transform in transforms:
        other = stratify(apply_transform(problem, transform))
        dims = sorted(s.dim for s in other.strata)
        if dims != base_dims:
            violations.append(
                f"{transform}: stratum dimensions {dims} != {base_dims}")
        if other.dim_nullcone != base.dim_nullcone:
            violations.append(
                f"{transform}: null-cone dimension {other.dim_nullcone} "
                f"!= {base.dim_nullcone}")
        if other.equals_V != base.equals_V:
            violations.append(
                f"{transform}: equals_V {other.equals_V} != {base.equals_V}")
    return OracleReport(not violations, [], violations)


# ---------------------------------------------------------------------------
# seeded random instances

_SIMPLE_BLOCKS: dict[str, tuple[tuple[tuple[int, ...], ...], tuple[tuple[int, ...], ...]]] = {
    "a1": (((2,),), ((1,),)),
    "a2": (((2, -1), (-1, 2)), ((1, 0), (0, 1), (1, 1))),
    "b2": (((2, -1), (-1, 1)), ((1, 0), (0, 1), (1, 1), (1, 2))),
    "g2": (((2, -3), (-3, 6)), ((1, 0), (0, 1), (1, 1), (2, 1), (3, 1), (3, 2))),
    "a3": (((2, -1, 0), (-1, 2, -1), (0, -1, 2)),
           ((1, 0, 0), (0, 1, 0), (0, 0, 1), (1, 1, 0), (0, 1, 1), (1, 1, 1))),
}

_TEMPLATES: dict[str, tuple[str, ...]] = {
    # template -> simple blocks composed into a product
    "a1": ("a1",),
    "a1+a1": ("a1", "a1"),
    "a2": ("a2",),
    "b2": ("b2",),
    "g2": ("g2",),
    "a3": ("a3",),
    "a2+a1": ("a2", "a1"),
    "a1+a1+a1": ("a1", "a1", "a1"),
}

_RANK2_TEMPLATES = ("a1+a1", "a2", "b2", "g2")


def _compose_blocks(names: Sequence[str]) -> tuple[GramSpace, tuple[Vec, ...]]:
    grams = [_SIMPLE_BLOCKS[n][0] for n in names]
    ranks = [len(g) for g in grams]
    total = sum(ranks)
    rows: list[Vec] = []
    offset = 0
    for gram, rank in zip(grams, ranks):
        for row in gram:
            rows.append(zero_vec(offset) + parse_vector(row) + zero_vec(total - offset - rank))
        offset += rank
    positive: list[Vec] = []
    offset = 0
    for (gram, pos), rank in zip((_SIMPLE_BLOCKS[n] for n in names), ranks):
        for root in pos:
            positive.append(zero_vec(offset) + parse_vector(root)
                            + zero_vec(total - offset - rank))
        offset += rank
    return GramSpace(total, tuple(rows)), tuple(positive)


def random_gram(rng: random.Random, rank: int) -> tuple[Vec, ...]:
    """A random positive definite integer matrix, built as L^T L."""
    lower = [[Q(0)] * rank for _ in range(rank)]
    for i in range(rank):
        lower[i][i] = Q(rng.randint(1, 3))
        for j in range(i):
            lower[i][j] = Q(rng.randint(-1, 1))
    return tuple(
        tuple(sum(lower[k][i] * lower[k][j] for k in range(rank)) for j in range(rank))
        for i in range(rank))


def random_torus_problem(rng: random.Random, max_rank: int = 3) -> Problem:
    rank = rng.randint(1, max_rank)
    space = GramSpace(rank, random_gram(rng, rank))
    count = rng.randint(1, 4)
    pairs = []
    for _ in range(count):
        v = tuple(Q(rng.randint(-3, 3)) for _ in range(rank))
        pairs.append((v, rng.randint(1, 2)))
    return Problem(space, RootSystem.of([]), WeightSystem.accumulate(pairs))


def random_problem(rng: random.Random, max_distinct: int = 12,
                   rank2_only: bool = False) -> Problem:
    """A seeded random instance, valid by construction.

    Weights start from a few random seed vectors and are closed under the
    Weyl group of the chosen template, so invariance holds exactly.  Each
    orbit gets its own multiplicity.  If every seed orbit is too large the
    instance degrades to the single zero weight, which is still valid.
    """
    if rank2_only and rng.random() < 0.25:
        return _force_rank(random_torus_problem(rng, max_rank=2), 2, rng)
    if not rank2_only and rng.random() < 0.2:
        return random_torus_problem(rng)
    name = rng.choice(_RANK2_TEMPLATES if rank2_only else sorted(_TEMPLATES))
    space, positive = _compose_blocks(_TEMPLATES[name])
    scale = rng.choice([Q(1), Q(2), Q(1, 2), Q(3)])
    if scale != 1:
        space = GramSpace(space.rank,
                          tuple(tuple(scale * x for x in row) for row in space.gram))
    roots = tuple(positive) + tuple(vscale(Q(-1), r) for r in positive)
    reflections = tuple(sorted({reflection_matrix(space, alpha) for alpha in positive}))
    pairs: list[tuple[Vec, int]] = []
    covered: set[Vec] = set()
    for _ in range(rng.randint(1, 3)):
        seed = tuple(Q(rng.randint(-2, 2)) for _ in range(space.rank))
        orbit = orbit_closure(reflections, seed, 10 ** 4)
        if any(v in covered for v in orbit):
            continue
        if len(covered) + len(orbit) > max_distinct:
            continue
        covered.update(orbit)
        mult = rng.randint(1, 2)
        pairs.extend((v, mult) for v in orbit)
    if not pairs:
        pairs = [(zero_vec(space.rank), 1)]
    return Problem(space, RootSystem.of(roots), WeightSystem.accumulate(pairs))


def _force_rank(problem: Problem, rank: int, rng: random.Random) -> Problem:
    if problem.space.rank == rank:
        return problem
    space = GramSpace(rank, random_gram(rng, rank))
    pairs = [(tuple(v[i] if i < len(v) else Q(0) for i in range(rank)), m)
             for v, m in problem.weights.entries]
    return Problem(space, RootSystem.of([]), WeightSystem.accumulate(pairs))
