"""Problem instances: root system, weight system, Weyl action, catalog.

A problem is a rational space with a W-invariant positive definite form, a
finite reduced root set closed under negation, and a finite weight multiset
invariant under the Weyl generators.  Validation canonicalizes orderings so
downstream reports can refer to stable indices.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Optional, Sequence

from .ratgeom import (
    GramSpace,
    InputError,
    Matrix,
    Q,
    ResourceError,
    Vec,
    dot,
    gram_violations,
    is_zero_vec,
    parse_rational,
    parse_vector,
    rational_to_json,
    vector_to_json,
    vscale,
    vsub,
    zero_vec,
)

DEFAULT_ORBIT_CAP = 10 ** 6


# ---------------------------------------------------------------------------
# reflections and orbits

def reflect(space: GramSpace, alpha: Vec, v: Vec) -> Vec:
    """Reflection of v in the hyperplane orthogonal to the root alpha."""
    if is_zero_vec(alpha):
        raise InputError("cannot reflect in the zero vector")
    c = 2 * space.inner(v, alpha) / space.norm_sq(alpha)
    return vsub(v, vscale(c, alpha)) if c else v


def reflection_matrix(space: GramSpace, alpha: Vec) -> Matrix:
    """The reflection in alpha as a matrix acting on column vectors."""
    if is_zero_vec(alpha):
        raise InputError("cannot reflect in the zero vector")
    w = space.functional(alpha)
    scale = Q(2) / space.norm_sq(alpha)
    n = space.rank
    return tuple(
        tuple((Q(1) if i == j else Q(0)) - scale * alpha[i] * w[j]
              for j in range(n))
        for i in range(n))


def matvec(m: Matrix, v: Vec) -> Vec:
    return tuple(dot(row, v) for row in m)


def orbit_closure(generators: Sequence[Matrix], v: Vec, cap: int) -> tuple[Vec, ...]:
    """BFS closure of v under the generator matrices, capped at `cap` points."""
    seen = {v}
    frontier = [v]
    while frontier:
        new = []
        for x in frontier:
            for g in generators:
                y = matvec(g, x)
                if y not in seen:
                    seen.add(y)
                    if len(seen) > cap:
                        raise ResourceError(
                            f"orbit size exceeds orbit_cap={cap}")
                    new.append(y)
        frontier = new
    return tuple(sorted(seen))


# ---------------------------------------------------------------------------
# problem containers

@dataclass(frozen=True)
class RootSystem:
    roots: tuple[Vec, ...]

    @staticmethod
    def of(roots: Iterable[Sequence[object]]) -> "RootSystem":
        return RootSystem(tuple(sorted({parse_vector(r) for r in roots})))


@dataclass(frozen=True)
class WeightSystem:
    """Distinct weight vectors with positive multiplicities."""

    entries: tuple[tuple[Vec, int], ...]

    @staticmethod
    def accumulate(pairs: Iterable[tuple[Sequence[object], int]]) -> "WeightSystem":
        acc: dict[Vec, int] = {}
        for v, mult in pairs:
            vec = parse_vector(v)
            acc[vec] = acc.get(vec, 0) + int(mult)
        return WeightSystem(tuple(sorted(acc.items())))

    @property
    def total_dim(self) -> int:
        return sum(m for _, m in self.entries)

    @property
    def vectors(self) -> tuple[Vec, ...]:
        return tuple(v for v, _ in self.entries)


@dataclass(frozen=True)
class Problem:
    """Raw input instance; `validate` turns it into a ValidatedProblem."""

    space: GramSpace
    roots: RootSystem
    weights: WeightSystem
    weyl_generators: Optional[tuple[Matrix, ...]] = None  # None: reflections in roots
    orbit_cap: int = DEFAULT_ORBIT_CAP


@dataclass(frozen=True)
class ValidatedProblem:
    """A checked instance with canonical (sorted) root and weight orderings."""

    space: GramSpace
    roots: tuple[Vec, ...]
    weights: tuple[tuple[Vec, int], ...]
    generator_matrices: tuple[Matrix, ...]
    orbit_cap: int = DEFAULT_ORBIT_CAP

    @property
    def rank(self) -> int:
        return self.space.rank

    @property
    def effective_rank(self) -> int:
        return self.space.rank

    @property
    def constraints(self) -> tuple[Vec, ...]:
        return ()

    @property
    def total_dim(self) -> int:
        return sum(m for _, m in self.weights)

    def orbit(self, v: Vec) -> tuple[Vec, ...]:
        return orbit_closure(self.generator_matrices, v, self.orbit_cap)


class ValidationError(Exception):
    """Raised by `validate`; carries the full violation list."""

    def __init__(self, violations: Sequence[str]):
        super().__init__("; ".join(violations))
        self.violations = list(violations)


def weyl_orbit(problem: ValidatedProblem, v: Vec) -> tuple[Vec, ...]:
    return problem.orbit(v)


# ---------------------------------------------------------------------------
# validation

def _direction_key(v: Vec) -> Vec:
    """Canonical representative of the line through v, for proportionality tests."""
    lead = next(x for x in v if x)
    return vscale(1 / lead, v)


def problem_violations(problem: Problem) -> list[str]:
    out: list[str] = []
    space = problem.space
    rank = space.rank
    out.extend(gram_violations(space.gram))

    roots = problem.roots.roots
    root_set = set(roots)
    for alpha in roots:
        if len(alpha) != rank:
            out.append(f"root {alpha} has length {len(alpha)}, expected {rank}")
            return out
        if is_zero_vec(alpha):
            out.append("zero vector listed as a root")
    for alpha in roots:
        if not is_zero_vec(alpha) and vscale(Q(-1), alpha) not in root_set:
            out.append(f"root set is not closed under negation: missing -{alpha}")
    by_direction: dict[Vec, list[Vec]] = {}
    for alpha in roots:
        if not is_zero_vec(alpha):
            by_direction.setdefault(_direction_key(alpha), []).append(alpha)
    for line in by_direction.values():
        distinct = {alpha for alpha in line}
        if len(distinct) > 2:
            out.append(f"root set is not reduced on the line of {sorted(distinct)[0]}")

    entries = problem.weights.entries
    if not entries:
        out.append("weight system is empty")
    seen_weights: set[Vec] = set()
    for v, mult in entries:
        if len(v) != rank:
            out.append(f"weight {v} has length {len(v)}, expected {rank}")
            return out
        if v in seen_weights:
            out.append(f"duplicate weight vector {v}")
        seen_weights.add(v)
        if mult < 1:
            out.append(f"weight {v} has multiplicity {mult}, expected >= 1")

    if out:
        return out

    if problem.weyl_generators is None:
        gens = _reflection_generators(space, roots)
        explicit = False
    else:
        gens = problem.weyl_generators
        explicit = True
    weight_map = dict(entries)
    for k, g in enumerate(gens):
        if explicit:
            if len(g) != rank or any(len(row) != rank for row in g):
                out.append(f"generator {k} is not a {rank}x{rank} matrix")
                continue
            if not _is_gram_orthogonal(space, g):
                out.append(f"generator {k} does not preserve the gram form")
                continue
        image_roots = {matvec(g, alpha) for alpha in roots}
        if image_roots != root_set:
            out.append(f"generator {k} does not permute the root set")
        image_weights = {matvec(g, v): m for v, m in entries}
        if image_weights != weight_map:
            out.append(f"generator {k} does not preserve the weight multiset")
    return out


def _is_gram_orthogonal(space: GramSpace, g: Matrix) -> bool:
    n = space.rank
    cols = [tuple(g[i][j] for i in range(n)) for j in range(n)]
    for i in range(n):
        for j in range(i, n):
            if space.inner(cols[i], cols[j]) != space.gram[i][j]:
                return False
    return True


def _reflection_generators(space: GramSpace, roots: Sequence[Vec]) -> tuple[Matrix, ...]:
    # +alpha and -alpha give the same reflection; dedup keeps the set small
    return tuple(sorted({reflection_matrix(space, alpha) for alpha in roots}))


def validate(problem: Problem) -> ValidatedProblem:
    """Check all structural invariants; raise ValidationError listing failures."""
    bad = problem_violations(problem)
    if bad:
        raise ValidationError(bad)
    if problem.weyl_generators is None:
        gens = _reflection_generators(problem.space, problem.roots.roots)
    else:
        gens = tuple(problem.weyl_generators)
    return ValidatedProblem(
        space=problem.space,
        roots=tuple(sorted(problem.roots.roots)),
        weights=tuple(sorted(problem.weights.entries)),
        generator_matrices=gens,
        orbit_cap=problem.orbit_cap,
    )


# ---------------------------------------------------------------------------
# JSON instance schema

def problem_from_json(data: dict) -> Problem:
    """Build a Problem from the documented JSON schema."""
    try:
        rank = int(data["rank"])
        gram = tuple(parse_vector(row) for row in data["gram"])
        roots = RootSystem.of(data.get("roots", []))
        weights = WeightSystem.accumulate(
            (entry["v"], int(entry.get("mult", 1))) for entry in data["weights"])
    except KeyError as exc:
        raise InputError(f"problem JSON is missing key {exc}") from exc
    except TypeError as exc:
        raise InputError(f"malformed problem JSON: {exc}") from exc
    space = GramSpace(rank, gram)
    weyl = data.get("weyl", {"mode": "from_roots"})
    generators: Optional[tuple[Matrix, ...]]
    if "generators" in weyl:
        generators = tuple(
            tuple(parse_vector(row) for row in g) for g in weyl["generators"])
    elif weyl.get("mode", "from_roots") == "from_roots":
        generators = None
    else:
        raise InputError(f"unknown weyl mode {weyl.get('mode')!r}")
    cap = int(data.get("orbit_cap", DEFAULT_ORBIT_CAP))
    return Problem(space, roots, weights, generators, cap)


def problem_to_json(problem: Problem) -> dict:
    out: dict = {
        "rank": problem.space.rank,
        "gram": [vector_to_json(row) for row in problem.space.gram],
        "roots": [vector_to_json(r) for r in sorted(problem.roots.roots)],
        "weights": [{"v": vector_to_json(v), "mult": m}
                    for v, m in sorted(problem.weights.entries)],
    }
    if problem.weyl_generators is None:
        out["weyl"] = {"mode": "from_roots"}
    else:
        out["weyl"] = {"generators": [[vector_to_json(row) for row in g]
                                      for g in problem.weyl_generators]}
    if problem.orbit_cap != DEFAULT_ORBIT_CAP:
        out["orbit_cap"] = problem.orbit_cap
    return out


# ---------------------------------------------------------------------------
# catalog of standard instances

_ADJOINT_TABLES: dict[str, tuple[tuple[tuple[int, ...], ...], tuple[tuple[int, ...], ...]]] = {
    # type -> (gram rows, positive roots in the simple-root basis)
    "a1": (((2,),), ((1,),)),
    "a2": (((2, -1), (-1, 2)), ((1, 0), (0, 1), (1, 1))),
    "b2": (((2, -1), (-1, 1)), ((1, 0), (0, 1), (1, 1), (1, 2))),
    "g2": (((2, -3), (-3, 6)),
           ((1, 0), (0, 1), (1, 1), (2, 1), (3, 1), (3, 2))),
}


def _sl2_forms(degrees: Sequence[int]) -> Problem:
    if not degrees:
        raise InputError("sl2-forms needs at least one degree")
    degs = [int(d) for d in degrees]
    if any(d < 0 for d in degs):
        raise InputError(f"sl2-forms degrees must be >= 0, got {degs}")
    space = GramSpace(1, ((Q(1),),))
    roots = RootSystem.of([(2,), (-2,)])
    pairs = []
    for d in degs:
        pairs.extend(((m,), 1) for m in range(-d, d + 1, 2))
    return Problem(space, roots, WeightSystem.accumulate(pairs))


def _sl3_forms(degree: int) -> Problem:
    d = int(degree)
    if d < 1:
        raise InputError(f"sl3-forms degree must be >= 1, got {degree}")
    # coordinates in the basis (e1, e2) with e3 = -e1 - e2; all |ei| equal,
    # pairwise angles 2*pi/3
    space = GramSpace(2, ((Q(2), Q(-1)), (Q(-1), Q(2))))
    roots = RootSystem.of(
        [(1, -1), (-1, 1), (2, 1), (-2, -1), (1, 2), (-1, -2)])
    pairs = []
    for c1 in range(d + 1):
        for c2 in range(d + 1 - c1):
            c3 = d - c1 - c2
            pairs.append(((c1 - c3, c2 - c3), 1))
    return Problem(space, roots, WeightSystem.accumulate(pairs))


def _adjoint(type_name: str) -> Problem:
    key = str(type_name).lower()
    if key not in _ADJOINT_TABLES:
        raise InputError(
            f"unknown adjoint type {type_name!r}; choose from {sorted(_ADJOINT_TABLES)}")
    gram_rows, positive = _ADJOINT_TABLES[key]
    rank = len(gram_rows)
    space = GramSpace(rank, tuple(parse_vector(r) for r in gram_rows))
    all_roots = [tuple(Q(x) for x in r) for r in positive]
    all_roots += [vscale(Q(-1), r) for r in all_roots]
    roots = RootSystem.of(all_roots)
    pairs = [(r, 1) for r in all_roots]
    pairs.append((zero_vec(rank), rank))
    return Problem(space, roots, WeightSystem.accumulate(pairs))


def _gl2_ex3(a: object, b: object) -> Problem:
    qa, qb = parse_rational(a), parse_rational(b)
    if not (qa > 0 and qa * qa > qb * qb):
        raise InputError(
            f"gl2-ex3 needs a > 0 and a^2 > b^2, got a={qa}, b={qb}")
    space = GramSpace(2, ((qa, qb), (qb, qa)))
    roots = RootSystem.of([(1, -1), (-1, 1)])
    weights = WeightSystem.accumulate([((1, 0), 1), ((0, 1), 1), ((1, 1), 1)])
    return Problem(space, roots, weights)


def _torus(vectors: Sequence[Sequence[object]]) -> Problem:
    if not vectors:
        raise InputError("torus needs at least one weight vector")
    vecs = [parse_vector(v) for v in vectors]
    rank = len(vecs[0])
    if any(len(v) != rank for v in vecs):
        raise InputError("torus weight vectors must all have the same length")
    ident = tuple(tuple(Q(1) if i == j else Q(0) for j in range(rank))
                  for i in range(rank))
    space = GramSpace(rank, ident)
    return Problem(space, RootSystem.of([]),
                   WeightSystem.accumulate((v, 1) for v in vecs))


def direct_sum(p1: Problem, p2: Problem) -> Problem:
    """Outer direct sum: product group acting on the sum of the two modules."""
    if p1.weyl_generators is not None or p2.weyl_generators is not None:
        raise InputError("direct-sum supports from_roots instances only")
    r1, r2 = p1.space.rank, p2.space.rank
    gram = tuple(
        tuple(p1.space.gram[i]) + zero_vec(r2) for i in range(r1)) + tuple(
        zero_vec(r1) + tuple(p2.space.gram[i]) for i in range(r2))
    space = GramSpace(r1 + r2, gram)
    roots = [a + zero_vec(r2) for a in p1.roots.roots]
    roots += [zero_vec(r1) + b for b in p2.roots.roots]
    pairs = [(v + zero_vec(r2), m) for v, m in p1.weights.entries]
    pairs += [(zero_vec(r1) + v, m) for v, m in p2.weights.entries]
    return Problem(space, RootSystem.of(roots), WeightSystem.accumulate(pairs),
                   orbit_cap=max(p1.orbit_cap, p2.orbit_cap))


CATALOG_NAMES = ("torus", "sl2-forms", "sl3-forms", "adjoint", "gl2-ex3",
                 "g2-adjoint", "direct-sum")


def catalog(name: str, params: Sequence[object] = ()) -> Problem:
    """Build a named standard instance."""
    if name == "sl2-forms":
        return _sl2_forms([int(p) for p in params])
    if name == "sl3-forms":
        if len(params) != 1:
            raise InputError("sl3-forms takes exactly one degree")
        return _sl3_forms(int(params[0]))
    if name == "adjoint":
        if len(params) != 1:
            raise InputError("adjoint takes exactly one type name")
        return _adjoint(str(params[0]))
    if name == "gl2-ex3":
        if len(params) != 2:
            raise InputError("gl2-ex3 takes exactly two parameters a, b")
        return _gl2_ex3(params[0], params[1])
    if name == "g2-adjoint":
        if params:
            raise InputError("g2-adjoint takes no parameters")
        return _adjoint("g2")
    if name == "torus":
        return _torus(list(params))
    if name == "direct-sum":
        if len(params) != 2 or not all(isinstance(p, Problem) for p in params):
            raise InputError("direct-sum takes exactly two component problems")
        return direct_sum(params[0], params[1])
    raise InputError(f"unknown catalog name {name!r}; choose from {CATALOG_NAMES}")


def parse_catalog_spec(text: str) -> Problem:
    """Parse a CLI catalog spec like "sl2-forms:2,3,3,4,5" or "g2-adjoint".

    torus weight vectors are separated by "|": "torus:1,0|0,1|1,1".
    direct-sum components are separated by "+": "direct-sum:sl2-forms:2+sl2-forms:3".
    """
    name, _, arg = text.partition(":")
    name = name.strip()
    if name == "direct-sum":
        parts = arg.split("+")
        if len(parts) != 2:
            raise InputError(
                f"direct-sum spec needs two '+'-separated components, got {text!r}")
        return catalog("direct-sum",
                       [parse_catalog_spec(parts[0]), parse_catalog_spec(parts[1])])
    if name == "torus":
        vectors = [[tok for tok in group.split(",") if tok != ""]
                   for group in arg.split("|")]
        return catalog("torus", vectors)
    args = [tok.strip() for tok in arg.split(",") if tok.strip() != ""]
    return catalog(name, args)
