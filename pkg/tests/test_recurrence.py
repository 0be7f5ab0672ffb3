import pytest

from fanolab.laurent import parse_polynomial
from fanolab.periods import classical_period
from fanolab.recurrence import (DifferentialOperator, PolynomialRecurrence,
                                fit_recurrence, to_differential_operator,
                                verify_recurrence)

P2 = "x + y + x^-1*y^-1"


def p2_terms(n):
    return list(classical_period(parse_polynomial(P2), n).coefficients)


def test_fit_constant_sequence():
    rec = fit_recurrence([1] * 30)
    assert rec.order == 1 and rec.degree == 0
    assert rec.coefficients == ((1,), (-1,))


def test_fit_factorials():
    import math
    rec = fit_recurrence([math.factorial(k) for k in range(30)])
    # c_k = k c_{k-1}
    assert rec.order == 1
    assert rec.coefficients == ((1,), (0, -1))


def test_fit_projective_plane():
    rec = fit_recurrence(p2_terms(40))
    assert rec.order == 3 and rec.degree == 2
    # k^2 c_k = 27 (k-1)(k-2) c_{k-3}
    assert rec.coefficients == ((0, 0, 1), (), (), (-54, 81, -27))
    assert verify_recurrence(rec, p2_terms(60)) == (True, None)


def test_fit_is_minimal_in_the_grading():
    rec = fit_recurrence(p2_terms(40))
    # nothing of strictly smaller order + degree fits
    assert fit_recurrence(p2_terms(40), r_max=3, d_max=1) is None
    assert fit_recurrence(p2_terms(40), r_max=2, d_max=2) is None


def test_verify_reports_first_failure():
    rec = fit_recurrence(p2_terms(40))
    other = list(classical_period(
        parse_polynomial("x + x^-1 + y + y^-1"), 20).coefficients)
    ok, where = verify_recurrence(rec, other)
    assert not ok and where == 3


def test_operator_projective_plane():
    rec = fit_recurrence(p2_terms(40))
    op = to_differential_operator(rec)
    # D^2 - 27 t^3 (D+1)(D+2)
    assert op == DifferentialOperator(((0, 0, 1), (), (), (-54, -81, -27)))
    assert op.annihilates(p2_terms(60))
    assert "D^2" in op.to_string()


def test_operator_boundary_factor():
    # the constant-one series needs no correction: D - t(D+1) kills it and
    # already vanishes at k = 0
    rec = fit_recurrence([1] * 30)
    op = to_differential_operator(rec)
    assert op.annihilates([1] * 50)
    # factorial-like growth: c_k = (k+1) c_{k-1}, c_0 = 1; the raw operator
    # misses zero at k = 0, so a (k - 0) factor must appear
    import math
    seq = [math.factorial(k + 1) for k in range(30)]
    rec2 = fit_recurrence(seq)
    assert rec2.check(0, seq) != 0  # truncated relation fails at the edge
    op2 = to_differential_operator(rec2)
    assert op2.annihilates(seq)


def test_operator_recurrence_round_trip():
    rec = fit_recurrence(p2_terms(40))
    op = to_differential_operator(rec)
    back = op.to_recurrence(p2_terms(3))
    assert back.coefficients == rec.coefficients
    assert verify_recurrence(back, p2_terms(50)) == (True, None)


def test_quadric_surface_recurrence():
    f = parse_polynomial("x + x^-1 + y + y^-1")
    terms = list(classical_period(f, 40).coefficients)
    rec = fit_recurrence(terms)
    assert rec.order == 2
    # k^2 c_k = 16 (k-1)^2 c_{k-2}
    assert rec.coefficients == ((0, 0, 1), (), (-16, 32, -16))
    op = to_differential_operator(rec)
    assert op.annihilates(list(classical_period(f, 60).coefficients))


def test_fit_returns_none_for_random_noise():
    import random
    rng = random.Random(7)
    noise = [rng.randint(1, 10 ** 6) for _ in range(40)]
    assert fit_recurrence(noise, r_max=3, d_max=3) is None


def test_recurrence_needs_initial_terms_for_operator():
    rec = PolynomialRecurrence(2, 0, ((1,), (), (-1,)), ())
    with pytest.raises(ValueError):
        to_differential_operator(rec)
