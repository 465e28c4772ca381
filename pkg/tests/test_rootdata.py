import dataclasses
import pytest
from fractions import Fraction as Q

from nullcone.ratgeom import InputError, ResourceError, make_space, parse_vector
from nullcone.rootdata import (
    Problem,
    RootSystem,
    ValidationError,
    WeightSystem,
    catalog,
    orbit_closure,
    parse_catalog_spec,
    problem_from_json,
    problem_to_json,
    problem_violations,
    reflect,
    reflection_matrix,
    validate,
    weyl_orbit,
)


class TestReflections:
    def setup_method(self):
        self.space = make_space([[2, -1], [-1, 2]])

    def test_root_goes_to_negative(self):
        alpha = parse_vector([1, 0])
        assert reflect(self.space, alpha, alpha) == parse_vector([-1, 0])

    def test_orthogonal_fixed(self):
        alpha = parse_vector([1, 0])
        v = parse_vector([1, 2])  # <alpha, v> = 2 - 2 = 0
        assert reflect(self.space, alpha, v) == v

    def test_matrix_matches_pointwise(self):
        from nullcone.rootdata import matvec
        alpha = parse_vector([1, 1])
        m = reflection_matrix(self.space, alpha)
        for v in ([1, 0], [0, 1], [2, -3], ["1/2", "1/3"]):
            v = parse_vector(v)
            assert matvec(m, v) == reflect(self.space, alpha, v)

    def test_involution(self):
        alpha = parse_vector([0, 1])
        v = parse_vector([3, "5/7"])
        assert reflect(self.space, alpha, reflect(self.space, alpha, v)) == v


class TestOrbits:
    def test_a2_root_orbit(self):
        problem = validate(catalog("adjoint", ["a2"]))
        orbit = weyl_orbit(problem, parse_vector([1, 0]))
        assert len(orbit) == 6
        assert set(orbit) == set(problem.roots)

    def test_g2_orbit_sizes(self):
        problem = validate(catalog("g2-adjoint"))
        assert len(weyl_orbit(problem, parse_vector([5, 1]))) == 12
        assert len(weyl_orbit(problem, parse_vector([1, 1]))) == 6

    def test_cap(self):
        problem = validate(catalog("g2-adjoint"))
        with pytest.raises(ResourceError):
            orbit_closure(problem.generator_matrices, parse_vector([5, 1]), 7)

    def test_orbit_deterministic(self):
        problem = validate(catalog("adjoint", ["b2"]))
        v = parse_vector([1, 1])
        assert weyl_orbit(problem, v) == weyl_orbit(problem, v)


def _valid_problem():
    return catalog("adjoint", ["a2"])


class TestValidation:
    def test_catalog_instances_validate(self):
        for spec in ("adjoint:a1", "adjoint:b2", "g2-adjoint", "sl3-forms:3",
                     "sl2-forms:2,5", "gl2-ex3:3,2", "torus:1,2"):
            validated = validate(parse_catalog_spec(spec))
            assert validated.total_dim >= 1

    def test_sorted_and_deduped(self):
        problem = validate(_valid_problem())
        assert list(problem.roots) == sorted(problem.roots)
        assert list(problem.weights) == sorted(problem.weights)
        assert len(set(problem.roots)) == len(problem.roots)

    def test_root_not_negation_closed(self):
        base = _valid_problem()
        roots = RootSystem.of([r for r in base.roots.roots
                               if r != parse_vector([1, 0])])
        bad = dataclasses.replace(base, roots=roots)
        assert any("negation" in v or "-" in v for v in problem_violations(bad))
        with pytest.raises(ValidationError):
            validate(bad)

    def test_zero_root(self):
        base = _valid_problem()
        roots = RootSystem.of(list(base.roots.roots) + [parse_vector([0, 0])])
        with pytest.raises(ValidationError):
            validate(dataclasses.replace(base, roots=roots))

    def test_non_reduced_roots(self):
        base = _valid_problem()
        doubled = [parse_vector([2, 0]), parse_vector([-2, 0])]
        roots = RootSystem.of(list(base.roots.roots) + doubled)
        with pytest.raises(ValidationError):
            validate(dataclasses.replace(base, roots=roots))

    def test_empty_weights(self):
        base = _valid_problem()
        with pytest.raises(ValidationError):
            validate(dataclasses.replace(base, weights=WeightSystem(())))

    def test_bad_multiplicity(self):
        base = _valid_problem()
        entries = tuple((v, 0) for v, _ in base.weights.entries)
        with pytest.raises(ValidationError):
            validate(dataclasses.replace(base, weights=WeightSystem(entries)))

    def test_weights_not_reflection_closed(self):
        base = _valid_problem()
        entries = tuple((v, m) for v, m in base.weights.entries
                        if v != parse_vector([1, 1]))
        bad = dataclasses.replace(base, weights=WeightSystem(entries))
        messages = problem_violations(bad)
        assert any("weight" in v for v in messages)
        with pytest.raises(ValidationError):
            validate(bad)

    def test_validation_error_carries_all_violations(self):
        base = _valid_problem()
        bad = dataclasses.replace(
            base,
            roots=RootSystem.of([parse_vector([0, 0])]),
            weights=WeightSystem(()))
        with pytest.raises(ValidationError) as err:
            validate(bad)
        assert len(err.value.violations) >= 2

    def test_explicit_generators_checked(self):
        base = _valid_problem()
        shear = ((Q(1), Q(1)), (Q(0), Q(1)))
        bad = dataclasses.replace(base, weyl_generators=(shear,))
        with pytest.raises(ValidationError):
            validate(bad)

    def test_explicit_generators_accepted(self):
        base = _valid_problem()
        space = make_space([[2, -1], [-1, 2]])
        gens = tuple(reflection_matrix(space, parse_vector(a))
                     for a in ([1, 0], [0, 1]))
        validated = validate(dataclasses.replace(base, weyl_generators=gens))
        assert len(validated.generator_matrices) == 2


class TestJson:
    def test_round_trip(self):
        problem = catalog("gl2-ex3", ["2", "-1"])
        data = problem_to_json(problem)
        back = problem_from_json(data)
        assert validate(back).weights == validate(problem).weights
        assert problem_to_json(back) == data

    def test_missing_key(self):
        data = problem_to_json(_valid_problem())
        del data["gram"]
        with pytest.raises(InputError):
            problem_from_json(data)

    def test_unknown_weyl_mode(self):
        data = problem_to_json(_valid_problem())
        data["weyl"] = {"mode": "full-group"}
        with pytest.raises(InputError):
            problem_from_json(data)

    def test_float_weight_rejected(self):
        data = problem_to_json(_valid_problem())
        data["weights"][0]["v"] = [0.5, 1]
        with pytest.raises(InputError):
            problem_from_json(data)


class TestCatalog:
    def test_sl2_forms_weights(self):
        problem = validate(catalog("sl2-forms", [2, 3, 3, 4, 5]))
        assert len(problem.weights) == 11
        assert problem.total_dim == 22
        mults = dict(problem.weights)
        assert mults[parse_vector([0])] == 2
        assert mults[parse_vector([1])] == 3
        assert mults[parse_vector([5])] == 1
        assert set(problem.roots) == {parse_vector([2]), parse_vector([-2])}

    def test_sl3_forms_weights(self):
        problem = validate(catalog("sl3-forms", [4]))
        assert len(problem.weights) == 15
        assert all(m == 1 for _, m in problem.weights)
        assert len(problem.roots) == 6

    def test_adjoint_zero_multiplicity(self):
        problem = validate(catalog("adjoint", ["b2"]))
        mults = dict(problem.weights)
        assert mults[parse_vector([0, 0])] == 2
        assert problem.total_dim == 10  # dim so(5)

    def test_g2_adjoint(self):
        problem = validate(catalog("g2-adjoint"))
        assert len(problem.roots) == 12
        assert problem.total_dim == 14

    def test_gl2_ex3_guards(self):
        with pytest.raises(InputError):
            catalog("gl2-ex3", ["1", "1"])  # a^2 > b^2 fails
        with pytest.raises(InputError):
            catalog("gl2-ex3", ["0", "0"])
        with pytest.raises(InputError):
            catalog("gl2-ex3", ["2"])

    def test_unknown_name(self):
        with pytest.raises(InputError):
            catalog("so5-spin")

    def test_direct_sum_shape(self):
        problem = validate(parse_catalog_spec("direct-sum:sl2-forms:2+sl2-forms:3"))
        assert problem.rank == 2
        assert len(problem.roots) == 4
        assert problem.total_dim == 3 + 4

    def test_torus_spec(self):
        problem = validate(parse_catalog_spec("torus:1,0|0,1|1,1"))
        assert problem.rank == 2
        assert len(problem.roots) == 0
        assert len(problem.weights) == 3

    def test_bad_specs(self):
        for text in ("direct-sum:sl2-forms:2", "sl3-forms:1,2", "adjoint:",
                     "gl2-ex3:1,2"):
            with pytest.raises(InputError):
                parse_catalog_spec(text)
