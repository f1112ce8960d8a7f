from fractions import Fraction

import pytest

from qpairs import AlgebraError, ParamPoly, QSeries, TruncationError
from qpairs import builders


def poly(params, exps, c=1):
    return ParamPoly.monomial(tuple(params), exps, c)


# -- construction ---------------------------------------------------------


def test_from_terms_literal():
    s = QSeries.from_terms((), [(0, 1), (1, -24)], 3)
    assert s.valuation == 0
    assert s.order == 3
    assert s.coefficient(2).constant_value() == 0
    assert s.coefficient(1).constant_value() == -24


def test_from_terms_zero_sentinel():
    s = QSeries.from_terms((), [], 5)
    assert s.is_zero()
    assert s.valuation == 6


def test_from_terms_laurent():
    s = QSeries.from_terms((), [(-1, 1)], 2)
    assert s.valuation == -1
    assert s.coefficient(-1).constant_value() == 1


def test_from_terms_duplicate_rejected():
    with pytest.raises(AlgebraError):
        QSeries.from_terms((), [(0, 1), (0, 2)], 3)


def test_from_terms_exponent_above_order_rejected():
    with pytest.raises(AlgebraError):
        QSeries.from_terms((), [(4, 1)], 3)


# -- addition -------------------------------------------------------------


def test_add_cancellation():
    a = QSeries.from_terms((), [(0, 1), (1, 1)], 4)
    b = QSeries.from_terms((), [(0, 1), (1, -1)], 4)
    s = a + b
    assert s.coefficient(0).constant_value() == 2
    assert s.coefficient(1).constant_value() == 0


def test_add_zero_identity():
    a = QSeries.from_terms((), [(2, 5)], 4)
    assert (a + QSeries.zero((), 4)).coefficient(2).constant_value() == 5


def test_add_laurent_valuation_update():
    a = QSeries.from_terms((), [(-1, 1)], 3)
    b = QSeries.from_terms((), [(-1, -1), (0, 1)], 3)
    s = a + b
    assert s.valuation == 0
    assert s.coefficient(0).constant_value() == 1


# -- multiplication -------------------------------------------------------


def test_mul_telescoping_truncated():
    a = QSeries.from_terms((), [(0, 1), (1, -1)], 3)
    b = QSeries.from_terms((), [(0, 1), (1, 1), (2, 1), (3, 1)], 3)
    s = a * b
    assert s.order == 3
    for n in range(4):
        assert s.coefficient(n).constant_value() == (1 if n == 0 else 0)


def test_mul_valuation_arithmetic():
    a = QSeries.from_terms((), [(-1, 1)], 2)
    b = QSeries.from_terms((), [(1, 1)], 2)
    s = a * b
    assert s.coefficient(0).constant_value() == 1


def test_mul_parameter_product():
    p = ("d", "e")
    a = QSeries.from_terms(p, [(0, 1), (1, poly(p, {"d": 1}))], 2)
    b = QSeries.from_terms(p, [(0, 1), (1, poly(p, {"e": 1}))], 2)
    s = a * b
    assert s.coefficient(1).terms == {(1, 0): 1, (0, 1): 1}
    assert s.coefficient(2).terms == {(1, 1): 1}


# -- inversion ------------------------------------------------------------


def test_invert_geometric():
    a = QSeries.from_terms((), [(0, 1), (1, -1)], 4)
    inv = a.invert()
    for n in range(5):
        assert inv.coefficient(n).constant_value() == 1


def test_invert_pure_power():
    a = QSeries.from_terms((), [(2, 1)], 4)
    assert a.invert().valuation == -2


def test_invert_non_unit_leading_rejected():
    p = ("x",)
    lead = ParamPoly.const(p, 1) - ParamPoly.var(p, "x")
    a = QSeries.from_terms(p, [(0, lead)], 4)
    with pytest.raises(AlgebraError, match="evaluate parameters first"):
        a.invert()


def test_invert_zero_rejected():
    with pytest.raises(AlgebraError):
        QSeries.zero((), 3).invert()


# -- substitutions --------------------------------------------------------


def test_substitute_q_power():
    s = QSeries.from_terms((), [(0, 1), (1, 1), (2, 1)], 2)
    t = s.substitute_q_power(2)
    assert t.order == 5
    assert [t.coefficient(n).constant_value() for n in range(6)] == [1, 0, 1, 0, 1, 0]


def test_substitute_q_power_identity_and_zero():
    s = QSeries.from_terms((), [(1, 3)], 2)
    assert s.substitute_q_power(1).coefficient(1).constant_value() == 3
    assert QSeries.zero((), 4).substitute_q_power(3).is_zero()


def test_substitute_param_negative_exponent():
    # (1 + e*Q) in base Q = q^2, e -> 1/q gives 1 + q
    p = ("e",)
    s = QSeries.from_terms(p, [(0, 1), (2, poly(p, {"e": 1}))], 4)
    s = s.with_bounds({"e": Fraction(1, 2)})
    t = s.substitute_param("e", 1, -1)
    assert t.coefficient(1).terms == {(0,): 1}


def test_substitute_param_requires_bound():
    p = ("e",)
    s = QSeries.from_terms(p, [(0, 1), (2, poly(p, {"e": 1}))], 4)
    with pytest.raises(AlgebraError):
        s.substitute_param("e", 1, -1)


def test_substitute_param_bound_violation_rejected():
    # e^2 against deg_e <= n/2 at n=2: declaring the bound must fail
    p = ("e",)
    s = QSeries.from_terms(p, [(0, 1), (2, poly(p, {"e": 2}))], 4)
    with pytest.raises(AlgebraError):
        s.with_bounds({"e": Fraction(1, 2)})


def test_rank_specialization_constant_term():
    s = builders.rank_gf(8, base=2).substitute_param("e", 1, -1)
    s = builders.drop_param(s, "e").eval_param("d", 1)
    assert s.coefficient(0).eval("x", 2).constant_value() == 1


# -- parameter evaluation and derivatives ---------------------------------


def test_eval_param():
    p = ("d", "e")
    s = QSeries.from_terms(p, [(0, 1), (1, poly(p, {"d": 1}) + poly(p, {"e": 1}))], 3)
    t = s.eval_param("d", 1)
    assert t.coefficient(1).terms == {(0, 0): 1, (0, 1): 1}


def test_eval_param_pole_at_zero():
    p = ("d",)
    s = QSeries.from_terms(p, [(0, poly(p, {"d": -1}))], 3)
    with pytest.raises(AlgebraError, match="pole"):
        s.eval_param("d", 0)


def test_eval_param_kills_factor():
    p = ("x",)
    fac = ParamPoly.const(p, 1) - ParamPoly.var(p, "x")
    s = QSeries.from_terms(p, [(0, fac), (1, fac)], 3)
    assert s.eval_param("x", 1).is_zero()


def test_delta_q():
    s = QSeries.from_terms((), [(3, 1)], 5)
    assert s.delta_q().coefficient(3).constant_value() == 3
    assert QSeries.one((), 5).delta_q().is_zero()


def test_delta_q_of_euler_product():
    qinf = builders.q_inf(10)
    lhs = qinf.delta_q()
    rhs = -(builders.phi1(1, 10) * qinf)
    ok, report = lhs.equal_to_order(rhs, 10)
    assert ok, report
    assert lhs.coefficient(1).constant_value() == -1
    assert lhs.coefficient(2).constant_value() == -2


def test_d_dparam_and_delta_param():
    p = ("x",)
    s = QSeries.from_terms(p, [(1, poly(p, {"x": 2}))], 3)
    assert s.d_dparam("x").coefficient(1).terms == {(1,): 2}
    t = QSeries.from_terms(p, [(0, poly(p, {"x": -1}))], 3)
    assert t.delta_param("x").coefficient(0).terms == {(-1,): -1}


# -- access and comparison ------------------------------------------------


def test_coefficient_pentagonal():
    assert builders.q_inf(7).coefficient(5).constant_value() == 1
    assert builders.q_inf(7).coefficient(7).constant_value() == 1


def test_coefficient_outside_window():
    s = QSeries.from_terms((), [(0, 1)], 3)
    with pytest.raises(TruncationError):
        s.coefficient(4)


def test_equal_to_order_self():
    s = builders.q_inf(6)
    ok, report = s.equal_to_order(s, 6)
    assert ok and report is None


def test_equal_to_order_first_mismatch():
    a = QSeries.from_terms((), [(0, 1), (1, 1)], 5)
    b = QSeries.from_terms((), [(0, 1), (1, -1)], 5)
    ok, report = a.equal_to_order(b, 5)
    assert not ok
    assert report[0] == 1


# -- serialization --------------------------------------------------------


def test_json_round_trip_bit_exact():
    s = builders.rank_gf(5)
    t = QSeries.from_json(s.to_json())
    assert t.params == s.params
    assert t.order == s.order
    assert t.coeffs == s.coeffs
    assert t.to_json() == s.to_json()


def test_json_shape():
    import json
    s = QSeries.from_terms((), [(1, Fraction(-1, 2))], 2)
    obj = json.loads(s.to_json())
    assert obj["valuation"] == 1
    assert obj["order"] == 2
    assert obj["coeffs"]["1"] == [[[], "-1/2"]]
