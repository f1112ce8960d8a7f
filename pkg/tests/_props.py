"""Randomized property helpers shared by the property and acceptance tests.

Everything is driven by a seeded Random instance so failures replay
exactly.  Instances are deliberately tiny: the point is coverage of the
arithmetic paths, not stress testing.
"""

from __future__ import annotations

import random
from fractions import Fraction

from qpairs import AlgebraError, ParamPoly, QSeries

PARAMS = ("d", "e")


def random_poly(rng: random.Random, params=PARAMS, max_terms: int = 3,
                exp_range=(-2, 2)) -> ParamPoly:
    acc = ParamPoly.zero(params)
    for _ in range(rng.randint(0, max_terms)):
        exps = {p: rng.randint(*exp_range) for p in params}
        c = Fraction(rng.randint(-4, 4), rng.randint(1, 3))
        acc = acc + ParamPoly.monomial(params, exps, c)
    return acc


def random_series(rng: random.Random, params=PARAMS) -> QSeries:
    val = rng.randint(-2, 2)
    order = val + rng.randint(0, 5)
    terms = []
    for n in range(val, order + 1):
        if rng.random() < 0.7:
            p = random_poly(rng, params)
            if p.terms:
                terms.append((n, p))
    return QSeries.from_terms(params, terms, order)


def random_unit_series(rng: random.Random, params=PARAMS) -> QSeries:
    """Series whose leading coefficient is a single invertible monomial."""
    val = rng.randint(-2, 2)
    order = val + rng.randint(1, 5)
    c = Fraction(rng.choice([-3, -2, -1, 1, 2, 3]), rng.randint(1, 3))
    lead = ParamPoly.monomial(params, {p: rng.randint(-1, 1) for p in params}, c)
    terms = [(val, lead)]
    for n in range(val + 1, order + 1):
        if rng.random() < 0.7:
            p = random_poly(rng, params)
            if p.terms:
                terms.append((n, p))
    return QSeries.from_terms(params, terms, order)


def check_ring_axioms(rng: random.Random, rounds: int) -> int:
    done = 0
    for _ in range(rounds):
        a, b, c = (random_series(rng) for _ in range(3))
        lhs = (a + b) + c
        rhs = a + (b + c)
        ok, _ = lhs.equal_to_order(rhs, min(lhs.order, rhs.order))
        assert ok
        lhs = a * (b + c)
        rhs = a * b + a * c
        n = min(lhs.order, rhs.order)
        if n >= min(lhs.valuation, rhs.valuation):
            ok, report = lhs.equal_to_order(rhs, n)
            assert ok, report
        done += 1
    return done


def check_inverse(rng: random.Random, rounds: int) -> int:
    done = 0
    for _ in range(rounds):
        a = random_unit_series(rng)
        inv = a.invert()
        for prod in (a * inv, inv * a):
            one = QSeries.one(PARAMS, prod.order)
            ok, report = prod.equal_to_order(one, prod.order)
            assert ok, report
        done += 1
    return done


def check_derivation(rng: random.Random, rounds: int) -> int:
    done = 0
    for _ in range(rounds):
        a, b = random_series(rng), random_series(rng)
        lhs = (a * b).delta_q()
        rhs = a.delta_q() * b + a * b.delta_q()
        n = min(lhs.order, rhs.order)
        if n >= min(lhs.valuation, rhs.valuation):
            ok, report = lhs.equal_to_order(rhs, n)
            assert ok, report
        done += 1
    return done


def check_truncation_soundness(rng: random.Random, rounds: int) -> int:
    """Product at guard order then truncated agrees with the direct product."""
    done = 0
    for _ in range(rounds):
        a, b = random_unit_series(rng), random_unit_series(rng)
        extra = rng.randint(1, 4)
        wide_a = QSeries.from_terms(PARAMS, list(a.coeffs.items()), a.order + extra)
        wide_b = QSeries.from_terms(PARAMS, list(b.coeffs.items()), b.order + extra)
        direct = a * b
        wide = wide_a * wide_b
        n = min(direct.order, wide.order)
        ok, report = direct.equal_to_order(wide, n)
        assert ok, report
        done += 1
    return done


def check_bound_validation(rng: random.Random, rounds: int) -> int:
    done = 0
    for _ in range(rounds):
        order = rng.randint(2, 6)
        terms = [(n, ParamPoly.monomial(("d",), {"d": rng.randint(0, n)}))
                 for n in range(1, order + 1)]
        s = QSeries.from_terms(("d",), terms, order)
        s.with_bounds({"d": 1})
        bad = s + QSeries.monomial(("d",), order, 1, 1, {"d": 2})
        try:
            bad.with_bounds({"d": 1})
        except AlgebraError:
            pass
        else:
            raise AssertionError("bound violation not detected")
        done += 1
    return done


def check_substitution_resummation(rng: random.Random, rounds: int) -> int:
    """substitute_param then a rational q surrogate equals direct resummation."""
    done = 0
    q0 = Fraction(1, 2)
    for _ in range(rounds):
        order = rng.randint(2, 6)
        terms = []
        for n in range(order + 1):
            p = ParamPoly.zero(("d",))
            for k in range(rng.randint(0, 2) + 1):
                if rng.random() < 0.6:
                    p = p + ParamPoly.monomial(("d",), {"d": rng.randint(0, n)},
                                               Fraction(rng.randint(-3, 3)))
            if p.terms:
                terms.append((n, p))
        s = QSeries.from_terms(("d",), terms, order).with_bounds({"d": 1})
        c = Fraction(rng.choice([1, 2, -1]), rng.choice([1, 3]))
        j = rng.choice([0, 1])
        t = s.substitute_param("d", c, j)
        total = Fraction(0)
        for n in range(t.valuation, t.order + 1):
            coeff = t.coefficient(n)
            for vec, cc in coeff.sorted_terms():
                total += cc * c ** vec[coeff.params.index("d")] * q0 ** n
        expected = Fraction(0)
        for n, p in s.coeffs.items():
            for vec, cc in p.sorted_terms():
                k = vec[p.params.index("d")]
                if n + j * k <= t.order:
                    expected += cc * c ** k * q0 ** (n + j * k)
        assert total == expected
        done += 1
    return done


def run_all(seed: int = 20260825, scale: int = 1) -> int:
    """Run every property family; returns the total instance count."""
    rng = random.Random(seed)
    total = 0
    total += check_ring_axioms(rng, 150 * scale)
    total += check_inverse(rng, 1000 * scale)
    total += check_derivation(rng, 150 * scale)
    total += check_truncation_soundness(rng, 150 * scale)
    total += check_bound_validation(rng, 50 * scale)
    total += check_substitution_resummation(rng, 100 * scale)
    return total
