"""Sparse multivariate Laurent polynomials over exact rationals.

These are the coefficient objects for the truncated q-series kernel: a
fixed, ordered tuple of parameter names (e.g. ``("d", "e", "x")``) and a
sparse map from integer exponent vectors to nonzero ``Fraction`` values.
The coefficient domain is deliberately a ring, not a field; expressions
with genuinely rational parameter dependence are handled by evaluating
the parameters at rational points before any division happens.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Mapping, Optional, Tuple, Union

Scalar = Union[int, Fraction]
ExpVec = Tuple[int, ...]


class AlgebraError(ValueError):
    """Raised for operations that leave the exact-arithmetic ring."""


def _as_fraction(c: Scalar) -> Fraction:
    if isinstance(c, Fraction):
        return c
    if isinstance(c, int):
        return Fraction(c)
    raise TypeError(f"expected int or Fraction, got {type(c).__name__}")


class ParamPoly:
    """Laurent polynomial in a fixed tuple of named parameters.

    Invariants: no stored zero coefficients; every exponent vector has
    arity ``len(params)``.  Instances are immutable by convention: no
    method mutates ``self``.
    """

    __slots__ = ("params", "terms")

    def __init__(self, params: Iterable[str], terms: Optional[Mapping[ExpVec, Scalar]] = None):
        self.params: Tuple[str, ...] = tuple(params)
        clean: dict[ExpVec, Fraction] = {}
        if terms:
            arity = len(self.params)
            for exps, c in terms.items():
                vec = tuple(int(e) for e in exps)
                if len(vec) != arity:
                    raise AlgebraError(
                        f"exponent vector {vec} has arity {len(vec)}, expected {arity}"
                    )
                c = _as_fraction(c)
                if c:
                    acc = clean.get(vec)
                    if acc is None:
                        clean[vec] = c
                    else:
                        acc = acc + c
                        if acc:
                            clean[vec] = acc
                        else:
                            del clean[vec]
        self.terms = clean

    # -- constructors ---------------------------------------------------

    @classmethod
    def zero(cls, params: Iterable[str]) -> "ParamPoly":
        return cls(params)

    @classmethod
    def const(cls, params: Iterable[str], c: Scalar) -> "ParamPoly":
        params = tuple(params)
        return cls(params, {(0,) * len(params): _as_fraction(c)})

    @classmethod
    def monomial(cls, params: Iterable[str], exps: Mapping[str, int], c: Scalar = 1) -> "ParamPoly":
        params = tuple(params)
        vec = [0] * len(params)
        for name, e in exps.items():
            if name not in params:
                raise AlgebraError(f"unknown parameter {name!r} (declared: {params})")
            vec[params.index(name)] = int(e)
        return cls(params, {tuple(vec): _as_fraction(c)})

    @classmethod
    def var(cls, params: Iterable[str], name: str, power: int = 1) -> "ParamPoly":
        return cls.monomial(params, {name: power})

    # -- predicates and views -------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def as_monomial(self) -> Optional[Tuple[Fraction, ExpVec]]:
        """Return ``(coeff, exponents)`` if this is a single term, else None."""
        if len(self.terms) != 1:
            return None
        ((vec, c),) = self.terms.items()
        return c, vec

    def constant_value(self) -> Fraction:
        """The value of a parameter-free polynomial; error if parameters occur."""
        if not self.terms:
            return Fraction(0)
        mono = self.as_monomial()
        if mono is None or any(mono[1]):
            raise AlgebraError(f"not a constant: {self}")
        return mono[0]

    def degree(self, name: str) -> int:
        """Largest exponent of ``name`` over all terms (0 for the zero poly)."""
        i = self.params.index(name)
        return max((vec[i] for vec in self.terms), default=0)

    def min_degree(self, name: str) -> int:
        i = self.params.index(name)
        return min((vec[i] for vec in self.terms), default=0)

    # -- ring operations ------------------------------------------------

    def _coerce(self, other) -> "ParamPoly":
        if isinstance(other, ParamPoly):
            if other.params != self.params:
                raise AlgebraError(
                    f"parameter mismatch: {self.params} vs {other.params}"
                )
            return other
        return ParamPoly.const(self.params, other)

    def __add__(self, other) -> "ParamPoly":
        other = self._coerce(other)
        terms = dict(self.terms)
        for vec, c in other.terms.items():
            acc = terms.get(vec)
            if acc is None:
                terms[vec] = c
            else:
                acc = acc + c
                if acc:
                    terms[vec] = acc
                else:
                    del terms[vec]
        out = ParamPoly.__new__(ParamPoly)
        out.params = self.params
        out.terms = terms
        return out

    __radd__ = __add__

    def __neg__(self) -> "ParamPoly":
        out = ParamPoly.__new__(ParamPoly)
        out.params = self.params
        out.terms = {vec: -c for vec, c in self.terms.items()}
        return out

    def __sub__(self, other) -> "ParamPoly":
        return self + (-self._coerce(other))

    def __rsub__(self, other) -> "ParamPoly":
        return self._coerce(other) + (-self)

    def __mul__(self, other) -> "ParamPoly":
        if isinstance(other, (int, Fraction)):
            c = _as_fraction(other)
            out = ParamPoly.__new__(ParamPoly)
            out.params = self.params
            out.terms = {vec: v * c for vec, v in self.terms.items()} if c else {}
            return out
        other = self._coerce(other)
        terms: dict[ExpVec, Fraction] = {}
        for v1, c1 in self.terms.items():
            for v2, c2 in other.terms.items():
                vec = tuple(a + b for a, b in zip(v1, v2))
                acc = terms.get(vec)
                if acc is None:
                    terms[vec] = c1 * c2
                else:
                    acc = acc + c1 * c2
                    if acc:
                        terms[vec] = acc
                    else:
                        del terms[vec]
        out = ParamPoly.__new__(ParamPoly)
        out.params = self.params
        out.terms = terms
        return out

    __rmul__ = __mul__

    def __pow__(self, n: int) -> "ParamPoly":
        if n < 0:
            return self.monomial_inverse() ** (-n)
        result = ParamPoly.const(self.params, 1)
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def monomial_inverse(self) -> "ParamPoly":
        """Inverse of a single-term polynomial (a unit of the Laurent ring)."""
        mono = self.as_monomial()
        if mono is None:
            raise AlgebraError(f"not a unit in the Laurent polynomial ring: {self}")
        c, vec = mono
        return ParamPoly(self.params, {tuple(-e for e in vec): Fraction(1) / c})

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction)):
            other = ParamPoly.const(self.params, other)
        if not isinstance(other, ParamPoly):
            return NotImplemented
        return self.params == other.params and self.terms == other.terms

    def __hash__(self):
        return hash((self.params, frozenset(self.terms.items())))

    # -- calculus and substitution --------------------------------------

    def derivative(self, name: str) -> "ParamPoly":
        """Formal partial derivative with respect to one parameter."""
        i = self.params.index(name)
        terms: dict[ExpVec, Fraction] = {}
        for vec, c in self.terms.items():
            k = vec[i]
            if k == 0:
                continue
            nvec = vec[:i] + (k - 1,) + vec[i + 1:]
            acc = terms.get(nvec, Fraction(0)) + c * k
            if acc:
                terms[nvec] = acc
            else:
                terms.pop(nvec, None)
        return ParamPoly(self.params, terms)

    def delta(self, name: str) -> "ParamPoly":
        """The Euler operator p * d/dp: multiplies each term by its p-exponent."""
        i = self.params.index(name)
        return ParamPoly(
            self.params,
            {vec: c * vec[i] for vec, c in self.terms.items() if vec[i]},
        )

    def eval(self, name: str, r: Scalar) -> "ParamPoly":
        """Replace ``name`` by the rational ``r``; arity is preserved."""
        r = _as_fraction(r)
        i = self.params.index(name)
        terms: dict[ExpVec, Fraction] = {}
        for vec, c in self.terms.items():
            k = vec[i]
            if k < 0 and r == 0:
                raise AlgebraError(f"pole at 0: {name}^{k} evaluated at 0")
            val = c * r ** k
            if not val:
                continue
            nvec = vec[:i] + (0,) + vec[i + 1:]
            acc = terms.get(nvec, Fraction(0)) + val
            if acc:
                terms[nvec] = acc
            else:
                terms.pop(nvec, None)
        return ParamPoly(self.params, terms)

    def with_params(self, params: Iterable[str]) -> "ParamPoly":
        """Re-express over a new parameter tuple (a superset, possibly reordered)."""
        params = tuple(params)
        try:
            idx = [params.index(p) for p in self.params]
        except ValueError as exc:
            raise AlgebraError(f"cannot lift {self.params} to {params}") from exc
        terms: dict[ExpVec, Fraction] = {}
        for vec, c in self.terms.items():
            nvec = [0] * len(params)
            for pos, e in zip(idx, vec):
                nvec[pos] = e
            terms[tuple(nvec)] = c
        return ParamPoly(params, terms)

    # -- formatting and serialization -----------------------------------

    def sorted_terms(self) -> list[Tuple[ExpVec, Fraction]]:
        return sorted(self.terms.items())

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for vec, c in self.sorted_terms():
            names = "*".join(
                f"{p}^{e}" if e != 1 else p
                for p, e in zip(self.params, vec)
                if e
            )
            if names:
                parts.append(f"{c}*{names}" if c != 1 else names)
            else:
                parts.append(str(c))
        return " + ".join(parts)

    def __repr__(self) -> str:
        return f"ParamPoly({self.params!r}, {{{self}}})"

    def to_obj(self) -> list:
        return [[list(vec), f"{c.numerator}/{c.denominator}"] for vec, c in self.sorted_terms()]

    @classmethod
    def from_obj(cls, params: Iterable[str], obj: list) -> "ParamPoly":
        terms = {tuple(vec): Fraction(s) for vec, s in obj}
        return cls(params, terms)
