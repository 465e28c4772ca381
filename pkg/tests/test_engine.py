import pytest
from fractions import Fraction as Q

from nullcone.engine import (
    SignedTree,
    build_tree,
    equality_set,
    generic_representative,
    is_stratifying,
    openness_check,
    restrict,
    root_subproblem,
    stratify,
    stratum_dimension,
)
from nullcone.ratgeom import InputError, parse_vector
from nullcone.rootdata import catalog, parse_catalog_spec, validate


def _sub(spec, l):
    problem = validate(parse_catalog_spec(spec))
    return restrict(root_subproblem(problem), parse_vector(l))


class TestRestrict:
    def test_gl2_along_diagonal(self):
        sub = _sub("gl2-ex3:2,1", ["1/3", "1/3"])
        assert sub.roots == (parse_vector([-1, 1]), parse_vector([1, -1]))
        assert sub.weights == (
            (parse_vector(["-1/2", "1/2"]), 1),
            (parse_vector(["1/2", "-1/2"]), 1),
        )
        assert sub.constraints == (parse_vector(["1/3", "1/3"]),)
        assert sub.effective_rank == 1

    def test_g2_fourth_line(self):
        sub = _sub("g2-adjoint", [1, "2/3"])
        assert sub.roots == (parse_vector([-1, 0]), parse_vector([1, 0]))
        assert [v for v, _ in sub.weights] == [
            parse_vector(["-3/2", 0]),
            parse_vector(["-1/2", 0]),
            parse_vector(["1/2", 0]),
            parse_vector(["3/2", 0]),
        ]
        assert all(m == 1 for _, m in sub.weights)

    def test_projection_is_translation_on_slice(self):
        # on the level-1 slice the projection subtracts the foot l/|l|^2
        problem = validate(parse_catalog_spec("g2-adjoint"))
        base = root_subproblem(problem)
        l = parse_vector([1, "2/3"])
        foot = tuple(x / problem.space.norm_sq(l) for x in l)
        sub = restrict(base, l)
        members = [v for v, _ in problem.weights
                   if problem.space.inner(l, v) == 1]
        translated = sorted(tuple(a - b for a, b in zip(v, foot))
                            for v in members)
        assert [v for v, _ in sub.weights] == translated

    def test_zero_vector_rejected(self):
        problem = validate(catalog("adjoint", ["a1"]))
        with pytest.raises(InputError):
            restrict(root_subproblem(problem), parse_vector([0]))

    def test_orthogonality_to_constraints(self):
        sub = _sub("gl2-ex3:2,1", ["1/3", "1/3"])
        space = sub.space
        l = sub.constraints[0]
        for alpha in sub.roots:
            assert space.inner(l, alpha) == 0
        for v, _ in sub.weights:
            assert space.inner(l, v) == 0


class TestEqualitySet:
    def test_gl2_sub(self):
        sub = _sub("gl2-ex3:2,1", ["1/3", "1/3"])
        assert equality_set(sub) == (parse_vector([-1, 1]),)

    def test_fast_prunes_rootless_restrictions(self):
        sub = _sub("torus:1,0|0,1|1,1", ["1/2", "1/2"])
        assert sub.roots == ()
        assert equality_set(sub, fast=True) == ()
        assert equality_set(sub, fast=False) == ()

    def test_cache_reuse(self):
        sub = _sub("gl2-ex3:2,1", ["1/3", "1/3"])
        cache = {}
        first = equality_set(sub, cache)
        assert cache
        assert equality_set(sub, cache) == first


class TestTrees:
    def test_gl2_tree_shape(self):
        problem = validate(parse_catalog_spec("gl2-ex3:2,1"))
        tree = build_tree(root_subproblem(problem), parse_vector(["1/3", "1/3"]))
        assert tree.sign == "-"
        assert len(tree.children) == 1
        child = tree.children[0]
        assert child.l == parse_vector([-1, 1])
        assert child.sign == "+"
        assert child.children == ()
        assert tree.depth() == 2

    def test_stratifying_matches_summary(self):
        for spec in ("g2-adjoint", "sl3-forms:4", "gl2-ex3:2,0"):
            summary = stratify(parse_catalog_spec(spec))
            base = root_subproblem(summary.problem)
            for decision in summary.decisions:
                assert is_stratifying(base, decision.candidate.l) \
                    == decision.stratifying

    def test_fast_trees_identical(self):
        for spec in ("g2-adjoint", "sl3-forms:4", "torus:1,0|0,1|1,1",
                     "direct-sum:sl2-forms:2+sl2-forms:3"):
            full = stratify(parse_catalog_spec(spec))
            fast = stratify(parse_catalog_spec(spec), fast=True)
            assert [d.tree for d in full.decisions] == [d.tree for d in fast.decisions]

    def test_invariants_walk(self):
        def walk(node: SignedTree):
            plus_children = sum(1 for c in node.children if c.plus)
            assert plus_children <= 1
            assert node.plus == (plus_children == 0)
            for child in node.children:
                walk(child)

        for spec in ("g2-adjoint", "sl3-forms:4", "adjoint:b2"):
            summary = stratify(parse_catalog_spec(spec))
            for decision in summary.decisions:
                walk(decision.tree)
                assert decision.tree.depth() <= summary.problem.rank


class TestDimensions:
    def test_g2_frozen_values(self):
        problem = validate(parse_catalog_spec("g2-adjoint"))
        base = root_subproblem(problem)
        expected = {
            ("1/2", "1/3"): 6,
            ("1", "1/2"): 8,
            ("1", "2/3"): 10,
            ("3", "5/3"): 12,
        }
        for l, dim in expected.items():
            assert stratum_dimension(base, parse_vector(list(l))) == dim

    def test_orbit_independent(self):
        summary = stratify(parse_catalog_spec("adjoint:b2"))
        problem = summary.problem
        base = root_subproblem(problem)
        from nullcone.rootdata import weyl_orbit
        for stratum in summary.strata:
            for l in weyl_orbit(problem, stratum.l):
                assert stratum_dimension(base, l) == stratum.dim

    def test_openness(self):
        problem = validate(parse_catalog_spec("gl2-ex3:2,1"))
        base = root_subproblem(problem)
        assert openness_check(base, parse_vector([0, "1/2"]))
        assert not openness_check(base, parse_vector(["1/6", "1/6"]))


class TestGenericRepresentative:
    def test_g2_term_counts(self):
        problem = validate(parse_catalog_spec("g2-adjoint"))
        single = generic_representative(problem, parse_vector(["1/2", "1/3"]))
        assert len(single) == 1
        four = generic_representative(problem, parse_vector([1, "2/3"]))
        assert len(four) == 4
        symbols = [s for _, s in four]
        assert len(set(symbols)) == 4

    def test_multiplicity_expands(self):
        problem = validate(parse_catalog_spec("sl2-forms:2,3,3,4,5"))
        # l = (1,): level-1 slice is the weight (1,) with multiplicity 3
        rep = generic_representative(problem, parse_vector([1]))
        assert len(rep) == 3
        assert len({i for i, _ in rep}) == 1

    def test_indices_point_at_level_one(self):
        summary = stratify(parse_catalog_spec("adjoint:b2"))
        problem = summary.problem
        for stratum in summary.strata:
            for index, _ in stratum.generic_rep:
                v, _ = problem.weights[index]
                assert problem.space.inner(stratum.l, v) == 1


class TestStratify:
    def test_strata_sorted_by_descending_dimension(self):
        summary = stratify(parse_catalog_spec("sl3-forms:4"))
        dims = [s.dim for s in summary.strata]
        assert dims == sorted(dims, reverse=True)

    def test_direct_sum_top_stratum(self):
        summary = stratify(parse_catalog_spec("direct-sum:sl2-forms:2+sl2-forms:3"))
        assert summary.strata[0].dim == 5
        assert summary.strata[0].l == parse_vector(["-1/2", -1])
        assert summary.dim_nullcone == 5
        assert not summary.equals_V

    def test_max_components(self):
        summary = stratify(parse_catalog_spec("sl3-forms:4"))
        assert summary.max_component_indices == (0,)
        torus = stratify(parse_catalog_spec("torus:1,0|0,1|1,1"))
        assert torus.equals_V
        top = [i for i, s in enumerate(torus.strata) if s.dim == torus.dim_nullcone]
        assert list(torus.max_component_indices) == top

    def test_single_zero_weight_torus(self):
        summary = stratify(parse_catalog_spec("torus:0,0"))
        assert summary.decisions == ()
        assert summary.strata == ()
        assert summary.dim_nullcone == 0
        assert summary.max_component_indices == ()
        assert not summary.equals_V

    def test_no_dedup_keeps_orbit_mates(self):
        summary = stratify(parse_catalog_spec("adjoint:a1"), dedup=False)
        assert len(summary.decisions) == 2
        assert sorted(s.dim for s in summary.strata) == [2, 2]
        assert summary.dim_nullcone == 2

    def test_at_most_one_open_stratum(self):
        for spec in ("gl2-ex3:2,1", "gl2-ex3:2,-1", "gl2-ex3:2,0",
                     "torus:1,0|0,1|1,1"):
            summary = stratify(parse_catalog_spec(spec))
            assert sum(1 for s in summary.strata if s.open_in_V) <= 1

    def test_supports_and_root_sets(self):
        summary = stratify(parse_catalog_spec("adjoint:b2"))
        problem = summary.problem
        space = problem.space
        for stratum in summary.strata:
            l = stratum.l
            assert stratum.support_v_l == tuple(
                i for i, (v, _) in enumerate(problem.weights)
                if space.inner(l, v) == 1)
            assert stratum.support_v_l_plus == tuple(
                i for i, (v, _) in enumerate(problem.weights)
                if space.inner(l, v) >= 1)
            assert stratum.levi_root_indices == tuple(
                i for i, a in enumerate(problem.roots) if space.inner(l, a) == 0)
            assert stratum.parabolic_root_indices == tuple(
                i for i, a in enumerate(problem.roots) if space.inner(l, a) >= 0)
            assert set(stratum.levi_root_indices) <= set(stratum.parabolic_root_indices)
