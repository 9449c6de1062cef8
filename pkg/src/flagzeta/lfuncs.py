"""L-functions of cellular schemes: factorizations, orders, zeta series.

A cell of dimension d over a base contributes the shifted base zeta
function L_base(s - d) to the L-function of the total scheme, so the
L-function of any scheme expression here is a finite product

    L(X, s) = prod_i L_{base_i}(s - d_i)^(e_i)

recorded as an ``LFactorization``.  Exponents may be negative: quotients
arise from open covers and excision, and the group structure under
multiplication is exact.  The vanishing order at an integer k is then
the exact integer sum of the factor orders, with the base orders coming
from the functional-equation table in ``fields.ord_at_integer`` (number
fields) or from the single simple pole of 1/(1 - q^(d-s)) (finite
fields).

Over a finite field the same cell data also gives the zeta function as a
rational function of t = q^(-s), prod (1 - q^d t)^(-l); this module
both expands that closed form and rebuilds the series transcendentally
as exp(sum_r N_r t^r / r) from point counts, so the two can be compared
coefficient by coefficient.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Union

from .cells import CellDecomposition, SchemeExpr, cells_of, point_count
from .fields import (
    BaseField,
    FiniteField,
    NumberField,
    SpecialValue,
    UnsupportedFieldError,
    base_sort_key,
    ord_at_integer,
    special_value_even,
    special_value_rational,
    zeta_partial_eval,
)
from .series import TruncSeries

__all__ = [
    "LFactor",
    "LFactorization",
    "RationalZeta",
    "lfactorization_of",
    "weil_zeta_series",
    "weil_zeta_rational",
    "lfun_partial_eval",
    "special_value_product",
]


@dataclass(frozen=True)
class LFactor:
    """L_base(s - shift) raised to an integer power."""

    base: BaseField
    shift: int
    exponent: int

    def ord_at(self, k: int) -> int:
        point = k - self.shift
        if isinstance(self.base, NumberField):
            return self.exponent * ord_at_integer(self.base, point)
        # 1/(1 - q^(-(s - shift))) has its only integer pole at s = shift
        return -self.exponent if point == 0 else 0

    def __str__(self) -> str:
        if self.shift == 0:
            arg = "s"
        elif self.shift > 0:
            arg = f"s-{self.shift}"
        else:
            arg = f"s+{-self.shift}"
        body = f"L({self.base.label}, {arg})"
        return body if self.exponent == 1 else f"{body}^{self.exponent}"


@dataclass(frozen=True)
class LFactorization:
    """A finite product of shifted base L-functions with integer exponents.

    Canonical form: factors sorted by (base, shift), exponents merged,
    zero exponents dropped; so equal products compare equal.
    """

    factors: tuple[LFactor, ...]

    @classmethod
    def build(cls, raw: Iterable[LFactor]) -> "LFactorization":
        acc: dict[tuple, tuple[BaseField, int, int]] = {}
        for f in raw:
            key = (base_sort_key(f.base), f.shift)
            if key in acc:
                base, shift, e = acc[key]
                acc[key] = (base, shift, e + f.exponent)
            else:
                acc[key] = (f.base, f.shift, f.exponent)
        factors = tuple(
            LFactor(base, shift, e)
            for key, (base, shift, e) in sorted(acc.items())
            if e != 0
        )
        return cls(factors)

    @classmethod
    def one(cls) -> "LFactorization":
        return cls(())

    def __mul__(self, other: "LFactorization") -> "LFactorization":
        return LFactorization.build(self.factors + other.factors)

    def inverse(self) -> "LFactorization":
        return LFactorization(
            tuple(LFactor(f.base, f.shift, -f.exponent) for f in self.factors)
        )

    def __truediv__(self, other: "LFactorization") -> "LFactorization":
        return self * other.inverse()

    def ord_at(self, k: int) -> int:
        """Exact vanishing order at s = k (negative at a pole)."""
        return sum(f.ord_at(k) for f in self.factors)

    def shifted(self, d: int) -> "LFactorization":
        return LFactorization(
            tuple(LFactor(f.base, f.shift + d, f.exponent) for f in self.factors)
        )

    def __str__(self) -> str:
        if not self.factors:
            return "1"
        return " * ".join(str(f) for f in self.factors)


CellsOrScheme = Union[CellDecomposition, SchemeExpr]


def _as_cells(x: CellsOrScheme) -> CellDecomposition:
    return x if isinstance(x, CellDecomposition) else cells_of(x)


def lfactorization_of(x: CellsOrScheme) -> LFactorization:
    """L(X, s) = prod over cells of L_base(s - dimension)^multiplicity."""
    return LFactorization.build(
        LFactor(s.base, s.shift, s.multiplicity) for s in _as_cells(x)
    )


# -- zeta functions over finite fields ----------------------------------------


@dataclass(frozen=True)
class RationalZeta:
    """Z(X, t) = prod (1 - q^d t)^m over numer, / prod over denom.

    Kept with numerator and denominator factor lists disjoint (no shared
    (d, m) content); for cellular schemes the numerator is empty.
    """

    q: int
    numer: tuple[tuple[int, int], ...]
    denom: tuple[tuple[int, int], ...]

    @classmethod
    def build(
        cls,
        q: int,
        numer: Iterable[tuple[int, int]] = (),
        denom: Iterable[tuple[int, int]] = (),
    ) -> "RationalZeta":
        top: dict[int, int] = {}
        for d, m in numer:
            top[d] = top.get(d, 0) + m
        for d, m in denom:
            top[d] = top.get(d, 0) - m
        numer_out = tuple(sorted((d, m) for d, m in top.items() if m > 0))
        denom_out = tuple(sorted((d, -m) for d, m in top.items() if m < 0))
        return cls(q, numer_out, denom_out)

    def expand(self, order: int) -> TruncSeries:
        out = TruncSeries.one(order)
        for d, m in self.numer:
            out = out * TruncSeries(order, [1, -(self.q**d)]) ** m
        for d, m in self.denom:
            out = out * TruncSeries(order, [1, -(self.q**d)]) ** (-m)
        return out

    def __str__(self) -> str:
        def side(factors: tuple[tuple[int, int], ...]) -> str:
            parts = []
            for d, m in factors:
                f = f"(1 - {self.q ** d}*t)" if d else "(1 - t)"
                parts.append(f if m == 1 else f + f"^{m}")
            return "".join(parts)

        top = side(self.numer) or "1"
        if not self.denom:
            return top
        return f"{top} / ({side(self.denom)})"


def weil_zeta_series(x: SchemeExpr, order: int) -> TruncSeries:
    """exp(sum_{r=1}^{order} N_r t^r / r) with N_r the point counts of x.

    This is the transcendental route to the zeta function; it never looks
    at the rational form, so agreement with ``weil_zeta_rational`` is a
    genuine consistency check.
    """
    if order < 1:
        raise ValueError("series order must be >= 1")
    u = TruncSeries(
        order, [0] + [Fraction(point_count(x, r), r) for r in range(1, order + 1)]
    )
    return u.exp()


def weil_zeta_rational(x: CellsOrScheme) -> RationalZeta:
    """The closed rational form prod (1 - q^d t)^(-mult) from the cells.

    All cells must live over one and the same finite field.
    """
    cells = _as_cells(x)
    if not cells.strata:
        raise ValueError("no cells")
    qs = set()
    for s in cells:
        if not isinstance(s.base, FiniteField):
            raise ValueError(f"zeta over finite fields only, found {s.base}")
        qs.add(s.base.q)
    if len(qs) != 1:
        raise ValueError(f"mixed finite bases {sorted(qs)}; no single q")
    return RationalZeta.build(
        qs.pop(), denom=[(s.shift, s.multiplicity) for s in cells]
    )


# -- numeric and special values -------------------------------------------------


def lfun_partial_eval(
    f: LFactorization, s: float, prime_bound: int
) -> float:
    """Finite Euler-product evaluation of every factor at real s.

    Requires s - shift > 1 for each factor so all the partial products
    sit in the convergence region.  Finite-field factors are closed
    forms and are evaluated exactly.
    """
    for factor in f.factors:
        if s - factor.shift <= 1:
            raise ValueError(
                f"s = {s} puts factor {factor} outside the convergence "
                f"region s - {factor.shift} > 1"
            )
    out = 1.0
    for factor in f.factors:
        if isinstance(factor.base, NumberField):
            v = zeta_partial_eval(factor.base, s - factor.shift, prime_bound)
        else:
            v = 1.0 / (1.0 - factor.base.q ** (factor.shift - s))
        out *= v**factor.exponent
    return out


def _zeta_q_value_at(point: int) -> SpecialValue | None:
    """Exact value of the Riemann zeta function at an integer, when classical.

    Known exactly at integers <= 0 and at positive even integers; odd
    integers >= 3 (and the pole at 1) return None and stay symbolic.
    """
    if point <= -1:
        return special_value_rational(1 - point)
    if point == 0:
        return SpecialValue("exact-rational", rational=Fraction(-1, 2))
    if point >= 2 and point % 2 == 0:
        return special_value_even(point // 2)
    return None


def special_value_product(f: LFactorization, m: int) -> SpecialValue:
    """The value of the factorization at s = m, as exactly as possible.

    If the total vanishing order at m is positive the value is exactly 0
    (order reported); a negative total order is a pole and the result
    stays symbolic with the order attached.  Otherwise factors over Q at
    evaluable points multiply into rational * pi^k and anything else
    (odd positive points, non-rational base fields) is kept as a
    symbolic (label, point, exponent) triple, the whole product being
    well defined modulo nonzero rationals.  Finite-field factors have no
    special-value convention here and are rejected.
    """
    for factor in f.factors:
        if not isinstance(factor.base, NumberField):
            raise UnsupportedFieldError(
                f"special values need number-field bases, found {factor.base}"
            )
    total_order = f.ord_at(m)
    if total_order > 0:
        return SpecialValue("exact-rational", rational=Fraction(0), order=total_order)
    if total_order < 0:
        return SpecialValue(
            "symbolic-product",
            rational=Fraction(1),
            factors=tuple(
                (fc.base.label, m - fc.shift, fc.exponent) for fc in f.factors
            ),
            order=total_order,
        )
    symbolic: list[tuple[str, int, int]] = []
    rational = Fraction(1)
    pi_power = 0
    for factor in f.factors:
        point = m - factor.shift
        if factor.base.degree == 1:  # the Riemann zeta function itself
            if ord_at_integer(factor.base, point) != 0:
                # an individually vanishing (or polar) factor cancelled in
                # the total: the finite limit value is beyond this table
                symbolic.append((factor.base.label, point, factor.exponent))
                continue
            value = _zeta_q_value_at(point)
            if value is None:
                symbolic.append((factor.base.label, point, factor.exponent))
                continue
            rational *= value.rational**factor.exponent
            pi_power += value.pi_power * factor.exponent
        else:
            symbolic.append((factor.base.label, point, factor.exponent))
    if symbolic or pi_power < 0:
        return SpecialValue(
            "symbolic-product",
            rational=rational,
            pi_power=pi_power,
            factors=tuple(symbolic),
        )
    if pi_power > 0:
        return SpecialValue(
            "rational-times-pi-power", rational=rational, pi_power=pi_power
        )
    return SpecialValue("exact-rational", rational=rational)
