import pytest

from fanolab.laurent import (LaurentPolynomial, format_polynomial,
                             parse_polynomial)
from fanolab.mutation import (InvalidFactorError, InvalidWeightError,
                              MutationBounds, MutationData, MutationWitness,
                              NotMutable, apply_shear, canonicalize_shear,
                              enumerate_mutations, exact_divide, is_mutable,
                              mutate, shear_equivalent, weight_decomposition)
from fanolab.periods import periods_agree


def test_weight_decomposition_levels():
    f = parse_polynomial("x + y + x^-1*y^-1")
    levels = weight_decomposition(f, (2, -1))
    assert [i for i, _ in levels] == [-1, 2]
    pieces = dict(levels)
    assert pieces[-1] == parse_polynomial("y + x^-1*y^-1")
    assert pieces[2] == parse_polynomial("x", rank_hint=2)


def test_weight_validation():
    f = parse_polynomial("x + y")
    with pytest.raises(InvalidWeightError):
        weight_decomposition(f, (0, 0))
    with pytest.raises(InvalidWeightError):
        weight_decomposition(f, (2, 4))
    with pytest.raises(InvalidWeightError):
        weight_decomposition(f, (1, 0, 0))


def test_mutation_data_validation():
    with pytest.raises(InvalidFactorError):
        MutationData((2, -1), parse_polynomial("1 + x", rank_hint=2))
    data = MutationData((2, -1), parse_polynomial("1 + x*y^2"))
    assert data.canonical().factor == data.factor
    shifted = MutationData((2, -1),
                           parse_polynomial("x*y^2 + x^2*y^4"))
    assert shifted.canonical().factor == parse_polynomial("1 + x*y^2")


def test_exact_divide():
    f = parse_polynomial("x^2*y^-1 - y")
    g = parse_polynomial("x - y")
    q = exact_divide(f, g)
    assert q is not None and q * g == f
    assert exact_divide(parse_polynomial("x + y + 1"), g) is None
    assert exact_divide(LaurentPolynomial.zero(2), g).is_zero()


def test_exact_divide_laurent_units():
    # monomials are units, so dividing by a shifted factor still works
    f = parse_polynomial("y + x^-1*y^-1")
    g = parse_polynomial("1 + x*y^2")
    q = exact_divide(f, g)
    assert q == parse_polynomial("x^-1*y^-1")


def test_is_mutable_and_witness():
    f = parse_polynomial("x + y + x^-1*y^-1")
    good = MutationData((2, -1), parse_polynomial("1 + x*y^2"))
    wit = is_mutable(f, good)
    assert isinstance(wit, MutationWitness)
    assert dict(wit.quotients)[-1] == parse_polynomial("x^-1*y^-1")
    bad = MutationData((2, -1), parse_polynomial("1 + 2*x*y^2"))
    res = is_mutable(f, bad)
    assert isinstance(res, NotMutable) and res.failing_level == -1


def test_mutate_worked_example():
    f = parse_polynomial("x + y + x^-1*y^-1")
    data = MutationData((2, -1), parse_polynomial("1 + x*y^2"))
    g = mutate(f, data)
    expected = parse_polynomial("x^-1*y^-1 + x*(1 + x*y^2)^2")
    assert g == canonicalize_shear(expected, (2, -1))
    assert periods_agree(f, g, 13) == (True, None)


def test_mutate_rejects_non_divisible():
    f = parse_polynomial("x + 2*y + x^-1*y^-1")
    data = MutationData((2, -1), parse_polynomial("1 + x*y^2"))
    with pytest.raises(ValueError):
        mutate(f, data)


def test_shear_canonicalization_invariant():
    f = parse_polynomial("x^-1*y^-1 + x*(1 + x*y^2)^2")
    w = (2, -1)
    canon = canonicalize_shear(f, w)
    assert canonicalize_shear(canon, w) == canon  # idempotent
    for s in [(1, 2), (-1, -2), (2, 4)]:
        assert canonicalize_shear(apply_shear(f, w, s), w) == canon


def test_apply_shear_validates_direction():
    f = parse_polynomial("x + y")
    with pytest.raises(InvalidFactorError):
        apply_shear(f, (2, -1), (1, 0))


def test_mutation_round_trip():
    f = parse_polynomial("x + y + x^-1*y^-1")
    data = MutationData((2, -1), parse_polynomial("1 + x*y^2"))
    g = mutate(f, data)
    back = mutate(g, data.inverse())
    assert shear_equivalent(back, f, (2, -1))


def test_enumerate_rank2_complete():
    f = parse_polynomial("x + y + x^-1*y^-1")
    result = enumerate_mutations(f)
    assert result.complete
    seeds = {(s.weight, format_polynomial(s.factor)) for s in result.seeds}
    assert ((2, -1), "x*y^2 + 1") in seeds
    assert len(seeds) == 3
    for s in result.seeds:
        assert isinstance(is_mutable(f, s), MutationWitness)


def test_enumerate_respects_bounds():
    f = parse_polynomial("x + y + x^-1*y^-1")
    g = mutate(f, MutationData((2, -1), parse_polynomial("1 + x*y^2")))
    wide = enumerate_mutations(g)
    narrow = enumerate_mutations(g, MutationBounds(w_max=1, deg_max=6))
    assert len(narrow.seeds) < len(wide.seeds)


def test_enumerate_higher_rank_partial():
    f = parse_polynomial("(x+y+1)^3/(x*y*z) + z")
    result = enumerate_mutations(f)
    assert not result.complete
    found = {(s.weight, format_polynomial(s.factor)) for s in result.seeds}
    assert ((0, 0, 1), "x + y + 1") in found


def test_cubic_threefold_mutation_matches_model():
    f = parse_polynomial("(x+y+1)^3/(x*y*z) + z")
    data = MutationData((0, 0, 1), parse_polynomial("1 + x + y",
                                                    rank_hint=3))
    g = mutate(f, data)
    expected = parse_polynomial("(a+b+1)^2/(a*b*c) + c*(a+b+1)")
    assert shear_equivalent(g, expected, (0, 0, 1))
    assert periods_agree(f, g, 9) == (True, None)
