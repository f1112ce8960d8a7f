"""Exact truncated Laurent series in q with Laurent-polynomial coefficients.

A :class:`QSeries` stores a sparse map ``exponent -> ParamPoly`` together
with the largest exponent whose coefficient it can certify (``order``).
Truncation order is data, not convention: every operation computes the
exact provable order of its result, so bilateral sums and ``q -> q^m``
substitutions cannot silently report unproven coefficients.

The zero series carries the sentinel valuation ``order + 1``.

Optional per-parameter degree bounds record machine-checked facts of the
form ``deg_p(coeff of q^n) <= slope * n`` (and all p-exponents >= 0).
They are what makes substitutions like ``e -> 1/q`` on a base-``q^2``
series sound: the bound caps how far any exponent can fall.
"""

from __future__ import annotations

import json
import math
from fractions import Fraction
from typing import Iterable, Mapping, Optional, Sequence, Tuple, Union

from .poly import AlgebraError, ParamPoly, Scalar, _as_fraction

CoeffLike = Union[int, Fraction, ParamPoly]


class TruncationError(AlgebraError):
    """An operation was asked for coefficients beyond its provable window."""


class QSeries:
    """Truncated Laurent series in q over :class:`ParamPoly` coefficients."""

    __slots__ = ("params", "order", "coeffs", "bounds")

    def __init__(
        self,
        params: Iterable[str],
        order: int,
        coeffs: Optional[Mapping[int, CoeffLike]] = None,
        bounds: Optional[Mapping[str, Scalar]] = None,
    ):
        self.params: Tuple[str, ...] = tuple(params)
        self.order = int(order)
        clean: dict[int, ParamPoly] = {}
        if coeffs:
            for n, c in coeffs.items():
                n = int(n)
                if n > self.order:
                    continue  # beyond the provable window: not storable
                if not isinstance(c, ParamPoly):
                    c = ParamPoly.const(self.params, c)
                elif c.params != self.params:
                    raise AlgebraError(
                        f"coefficient parameters {c.params} != series parameters {self.params}"
                    )
                if not c.is_zero():
                    clean[n] = c
        self.coeffs = clean
        self.bounds: dict[str, Fraction] = {}
        if bounds:
            self.bounds = {p: _as_fraction(s) for p, s in bounds.items()}

    # -- basic views ----------------------------------------------------

    @property
    def valuation(self) -> int:
        """Lowest stored exponent; ``order + 1`` for the zero series."""
        return min(self.coeffs) if self.coeffs else self.order + 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def coefficient(self, n: int) -> ParamPoly:
        """Exact coefficient of q^n; n must lie at or below the provable order."""
        if n > self.order:
            raise TruncationError(
                f"coefficient of q^{n} requested but series is only exact to q^{self.order}"
            )
        return self.coeffs.get(n, ParamPoly.zero(self.params))

    def sorted_items(self) -> list[Tuple[int, ParamPoly]]:
        return sorted(self.coeffs.items())

    # -- constructors ---------------------------------------------------

    @classmethod
    def zero(cls, params: Iterable[str], order: int) -> "QSeries":
        return cls(params, order)

    @classmethod
    def one(cls, params: Iterable[str], order: int) -> "QSeries":
        return cls(params, order, {0: 1})

    @classmethod
    def from_terms(
        cls,
        params: Iterable[str],
        terms: Sequence[Tuple[int, CoeffLike]],
        order: int,
    ) -> "QSeries":
        """Series from an explicit (exponent, coefficient) list.

        Duplicate exponents and exponents above ``order`` are rejected.
        """
        seen = set()
        for n, _ in terms:
            if n in seen:
                raise AlgebraError(f"duplicate exponent {n} in term list")
            seen.add(n)
            if n > order:
                raise AlgebraError(f"exponent {n} exceeds requested order {order}")
        return cls(params, order, dict(terms))

    @classmethod
    def monomial(
        cls,
        params: Iterable[str],
        order: int,
        c: Scalar = 1,
        qexp: int = 0,
        pexps: Optional[Mapping[str, int]] = None,
    ) -> "QSeries":
        params = tuple(params)
        poly = ParamPoly.monomial(params, pexps or {}, c)
        return cls(params, order, {qexp: poly})

    # -- ring operations ------------------------------------------------

    def _check_params(self, other: "QSeries") -> None:
        if self.params != other.params:
            raise AlgebraError(
                f"parameter mismatch: {self.params} vs {other.params}"
            )

    def _coerce(self, other) -> "QSeries":
        if isinstance(other, QSeries):
            self._check_params(other)
            return other
        # scalars are exact at every order
        return QSeries(self.params, self.order, {0: other})

    def __add__(self, other) -> "QSeries":
        other = self._coerce(other)
        order = min(self.order, other.order)
        coeffs: dict[int, ParamPoly] = {}
        for n in set(self.coeffs) | set(other.coeffs):
            if n > order:
                continue
            a = self.coeffs.get(n)
            b = other.coeffs.get(n)
            c = b if a is None else (a if b is None else a + b)
            if not c.is_zero():
                coeffs[n] = c
        bounds = {
            p: max(self.bounds[p], other.bounds[p])
            for p in self.bounds
            if p in other.bounds
        }
        return QSeries(self.params, order, coeffs, bounds)

    __radd__ = __add__

    def __neg__(self) -> "QSeries":
        return QSeries(
            self.params, self.order, {n: -c for n, c in self.coeffs.items()}, self.bounds
        )

    def __sub__(self, other) -> "QSeries":
        return self + (-self._coerce(other))

    def __rsub__(self, other) -> "QSeries":
        return self._coerce(other) + (-self)

    def __mul__(self, other) -> "QSeries":
        if isinstance(other, (int, Fraction, ParamPoly)):
            coeffs = {n: c * other for n, c in self.coeffs.items()}
            bounds = self.bounds
            if isinstance(other, ParamPoly):
                touched = {
                    p for p in self.params
                    if any(vec[self.params.index(p)] for vec in other.terms)
                }
                bounds = {p: s for p, s in bounds.items() if p not in touched}
            return QSeries(self.params, self.order, coeffs, bounds)
        self._check_params(other)
        order = min(self.order + other.valuation, other.order + self.valuation)
        coeffs: dict[int, ParamPoly] = {}
        for i, a in self.coeffs.items():
            for j, b in other.coeffs.items():
                n = i + j
                if n > order:
                    continue
                prod = a * b
                acc = coeffs.get(n)
                coeffs[n] = prod if acc is None else acc + prod
        bounds = {}
        if self.valuation >= 0 and other.valuation >= 0:
            bounds = {
                p: max(self.bounds[p], other.bounds[p])
                for p in self.bounds
                if p in other.bounds
            }
        return QSeries(self.params, order, coeffs, bounds)

    __rmul__ = __mul__

    def __truediv__(self, other) -> "QSeries":
        if isinstance(other, (int, Fraction)):
            inv = Fraction(1) / _as_fraction(other)
            return self * inv
        if isinstance(other, QSeries):
            return self * other.invert()
        return NotImplemented

    def __pow__(self, n: int) -> "QSeries":
        if n < 0:
            return self.invert() ** (-n)
        # generous starting order; each multiply tightens it to the provable one
        result = QSeries.one(self.params, self.order + abs(self.valuation) * (n + 1) + 1)
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def invert(self) -> "QSeries":
        """Multiplicative inverse, valid when the leading coefficient is a unit.

        The leading coefficient must be a single monomial; anything else is
        not invertible inside the Laurent-polynomial coefficient ring.
        """
        if self.is_zero():
            raise AlgebraError("zero series is not invertible")
        v = self.valuation
        lead = self.coeffs[v]
        mono = lead.as_monomial()
        if mono is None:
            raise AlgebraError(
                "not invertible symbolically; evaluate parameters first "
                f"(leading coefficient {lead})"
            )
        lead_inv = lead.monomial_inverse()
        width = self.order - v  # window length in shifted exponents
        shifted = {n - v: c for n, c in self.coeffs.items()}
        out: dict[int, ParamPoly] = {0: lead_inv}
        for n in range(1, width + 1):
            acc = ParamPoly.zero(self.params)
            for k, a in shifted.items():
                if 1 <= k <= n:
                    b = out.get(n - k)
                    if b is not None:
                        acc = acc + a * b
            if not acc.is_zero():
                out[n] = -(lead_inv * acc)
        return QSeries(self.params, self.order - 2 * v, {n - v: c for n, c in out.items()})

    # -- reshaping ------------------------------------------------------

    def truncate(self, order: int) -> "QSeries":
        if order > self.order:
            raise TruncationError(
                f"cannot extend provable order from {self.order} to {order}"
            )
        return QSeries(self.params, order, self.coeffs, self.bounds)

    def shift(self, j: int) -> "QSeries":
        """Multiply by q^j (exact for any integer j)."""
        return QSeries(
            self.params,
            self.order + j,
            {n + j: c for n, c in self.coeffs.items()},
        )

    def with_params(self, params: Iterable[str]) -> "QSeries":
        params = tuple(params)
        return QSeries(
            params,
            self.order,
            {n: c.with_params(params) for n, c in self.coeffs.items()},
            {p: s for p, s in self.bounds.items() if p in params},
        )

    def with_bounds(self, bounds: Mapping[str, Scalar]) -> "QSeries":
        """Declare degree bounds, validating them on every stored coefficient.

        A bound ``p: slope`` asserts ``0 <= deg_p(coeff of q^n) <= slope*n``
        for every exponent n in the window; construction fails otherwise.
        """
        declared = {p: _as_fraction(s) for p, s in bounds.items()}
        if declared and self.valuation < 0:
            raise AlgebraError("degree bounds require nonnegative valuation")
        for p, slope in declared.items():
            for n, c in self.coeffs.items():
                if c.min_degree(p) < 0:
                    raise AlgebraError(
                        f"bound violated: negative {p}-exponent in coeff of q^{n}"
                    )
                if c.degree(p) > slope * n:
                    raise AlgebraError(
                        f"bound violated: deg_{p} of coeff of q^{n} is "
                        f"{c.degree(p)} > {slope}*{n}"
                    )
        merged = dict(self.bounds)
        merged.update(declared)
        return QSeries(self.params, self.order, self.coeffs, merged)

    # -- substitution and differentiation -------------------------------

    def substitute_q_power(self, m: int) -> "QSeries":
        """Replace q by q^m (m >= 1); exponents scale, the window is exact."""
        if m < 1:
            raise AlgebraError(f"q-power substitution needs m >= 1, got {m}")
        if m == 1:
            return self
        # first unknown input exponent is order+1, landing at m*(order+1)
        order = m * (self.order + 1) - 1
        return QSeries(
            self.params,
            order,
            {m * n: c for n, c in self.coeffs.items()},
            {p: s / m for p, s in self.bounds.items()},
        )

    def eval_param(self, name: str, r: Scalar) -> "QSeries":
        """Replace one parameter by a rational number."""
        coeffs = {n: c.eval(name, r) for n, c in self.coeffs.items()}
        bounds = {p: s for p, s in self.bounds.items() if p != name}
        return QSeries(self.params, self.order, coeffs, bounds)

    def substitute_param(self, name: str, c: Scalar, qexp: int) -> "QSeries":
        """Replace a parameter by the q-monomial ``c * q^qexp``.

        For ``qexp < 0`` a declared degree bound for the parameter is
        required; it caps how far exponents can drop, which is what makes
        the output order provable.
        """
        c = _as_fraction(c)
        if qexp == 0 or c == 0:
            return self.eval_param(name, c if qexp == 0 else 0)
        if qexp < 0:
            slope = self.bounds.get(name)
            if slope is None:
                raise AlgebraError(
                    f"substituting {name} -> {c}*q^{qexp} needs a declared "
                    f"degree bound for {name}"
                )
            if self.valuation < 0:
                raise AlgebraError("negative-power substitution needs valuation >= 0")
            shrink = 1 + qexp * slope  # qexp < 0
            if shrink <= 0:
                raise AlgebraError(
                    f"substitution {name} -> q^{qexp} underflows the provable "
                    f"window (bound slope {slope})"
                )
            order = math.ceil((self.order + 1) * shrink) - 1
        else:
            order = self.order
        i = self.params.index(name)
        coeffs: dict[int, ParamPoly] = {}
        for n, poly in self.coeffs.items():
            for vec, v in poly.terms.items():
                k = vec[i]
                if k < 0:
                    raise AlgebraError(
                        f"substitution of {name} requires nonnegative exponents; "
                        f"found {name}^{k} in coeff of q^{n}"
                    )
                ne = n + qexp * k
                if ne > order:
                    continue
                if ne < 0:
                    raise AlgebraError(
                        f"exponent underflow: term {name}^{k} q^{n} lands at q^{ne}"
                    )
                nvec = vec[:i] + (0,) + vec[i + 1:]
                term = ParamPoly(self.params, {nvec: v * c ** k})
                acc = coeffs.get(ne)
                coeffs[ne] = term if acc is None else acc + term
        return QSeries(self.params, order, coeffs)

    def delta_q(self) -> "QSeries":
        """The Euler operator q d/dq: multiplies the coeff of q^n by n."""
        return QSeries(
            self.params,
            self.order,
            {n: c * n for n, c in self.coeffs.items() if n},
            self.bounds,
        )

    def d_dparam(self, name: str) -> "QSeries":
        """Formal partial derivative with respect to a parameter."""
        return QSeries(
            self.params,
            self.order,
            {n: c.derivative(name) for n, c in self.coeffs.items()},
            self.bounds,
        )

    def delta_param(self, name: str) -> "QSeries":
        """The Euler operator p d/dp applied coefficientwise."""
        return QSeries(
            self.params,
            self.order,
            {n: c.delta(name) for n, c in self.coeffs.items()},
            self.bounds,
        )

    # -- comparison -----------------------------------------------------

    def equal_to_order(
        self, other: "QSeries", order: Optional[int] = None
    ) -> Tuple[bool, Optional[Tuple[int, Tuple[int, ...], Fraction, Fraction]]]:
        """Exact comparison up to ``order`` (default: the mutual window).

        Returns ``(True, None)`` or ``(False, (n, exponent_vector, a, b))``
        for the smallest failing q-exponent and a monomial where the
        coefficients differ.
        """
        self._check_params(other)
        window = min(self.order, other.order)
        if order is None:
            order = window
        elif order > window:
            raise TruncationError(
                f"comparison to order {order} exceeds mutual window {window}"
            )
        lo = min(self.valuation, other.valuation)
        for n in range(lo, order + 1):
            a = self.coeffs.get(n, ParamPoly.zero(self.params))
            b = other.coeffs.get(n, ParamPoly.zero(self.params))
            if a != b:
                for vec in sorted(set(a.terms) | set(b.terms)):
                    ca = a.terms.get(vec, Fraction(0))
                    cb = b.terms.get(vec, Fraction(0))
                    if ca != cb:
                        return False, (n, vec, ca, cb)
        return True, None

    def __eq__(self, other) -> bool:
        if not isinstance(other, QSeries):
            return NotImplemented
        return (
            self.params == other.params
            and self.order == other.order
            and self.coeffs == other.coeffs
        )

    def __hash__(self):  # pragma: no cover - not used as dict keys in practice
        return hash((self.params, self.order, frozenset(self.coeffs)))

    # -- formatting and serialization -----------------------------------

    def __str__(self) -> str:
        if self.is_zero():
            return f"0 + O(q^{self.order + 1})"
        parts = []
        for n, c in self.sorted_items():
            cs = str(c)
            if len(c.terms) > 1:
                cs = f"({cs})"
            parts.append(f"{cs}*q^{n}" if n else cs)
        return " + ".join(parts) + f" + O(q^{self.order + 1})"

    def __repr__(self) -> str:
        return f"QSeries[{', '.join(self.params) or 'q only'}]({self})"

    def to_obj(self) -> dict:
        obj = {
            "params": list(self.params),
            "valuation": self.valuation,
            "order": self.order,
            "coeffs": {str(n): c.to_obj() for n, c in self.sorted_items()},
        }
        if self.bounds:
            obj["bounds"] = {
                p: f"{s.numerator}/{s.denominator}" for p, s in sorted(self.bounds.items())
            }
        return obj

    def to_json(self) -> str:
        return json.dumps(self.to_obj(), sort_keys=True, separators=(",", ":"))

    @classmethod
    def from_obj(cls, obj: Mapping) -> "QSeries":
        params = tuple(obj["params"])
        coeffs = {
            int(n): ParamPoly.from_obj(params, terms)
            for n, terms in obj["coeffs"].items()
        }
        bounds = {p: Fraction(s) for p, s in obj.get("bounds", {}).items()}
        return cls(params, obj["order"], coeffs, bounds)

    @classmethod
    def from_json(cls, text: str) -> "QSeries":
        return cls.from_obj(json.loads(text))
