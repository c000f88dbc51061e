# local_field.py

"""
The local field K = F_p(x)((t)), modelled by its subfield F_p(x)(t).

Elements are RatFunc over the variables (t, x); t plays the uniformizer.
Every routine here works on any function field containing ``t``, which is
how the dilatation ring reuses the valuation and tail machinery.
"""

import logging
import math
from dataclasses import dataclass, field
from typing import Dict, Mapping, Tuple, Union

from sympy.polys.rings import PolyElement

from base_algebra import (
    LOCAL_VARIABLES,
    RatFunc,
    derivative,
    function_ring,
    ratfunc_normalize,
    ring_names,
    transfer,
)
from errors import PreconditionError

logger = logging.getLogger(__name__)

UNIFORMIZER = "t"
INFINITY = math.inf

# Elements of K are rational functions in (t, x).
LocalElem = RatFunc
Valuation = Union[int, float]


def local_zero(p: int) -> LocalElem:
    return RatFunc.zero(p, LOCAL_VARIABLES)


def uniformizer(p: int) -> LocalElem:
    return RatFunc.gen(UNIFORMIZER, p, LOCAL_VARIABLES)


def lift(c: RatFunc, names=LOCAL_VARIABLES) -> RatFunc:
    """Embed a coefficient (a function of the non-uniformizer variables) into the field."""
    return transfer(c, names)


def monomial(c: RatFunc, exponent: int, names=LOCAL_VARIABLES) -> RatFunc:
    """c * t^exponent."""
    t = RatFunc.gen(UNIFORMIZER, c.p, names)
    return lift(c, names) * t ** exponent


@dataclass(frozen=True)
class LaurentTail:
    """Exact coefficients of t^e for e in [window[0], window[1])."""

    coefficients: Dict[int, RatFunc]
    window: Tuple[int, int]
    p: int
    coefficient_names: Tuple[str, ...] = field(default=("x",))

    def coefficient(self, exponent: int) -> RatFunc:
        lo, hi = self.window
        if not lo <= exponent < hi:
            raise PreconditionError(f"exponent {exponent} outside window [{lo}, {hi})")
        if exponent in self.coefficients:
            return self.coefficients[exponent]
        return RatFunc.zero(self.p, self.coefficient_names)

    def is_zero(self) -> bool:
        return not self.coefficients

    def __add__(self, other: "LaurentTail") -> "LaurentTail":
        if self.window != other.window:
            raise PreconditionError("tails over different windows")
        merged = dict(self.coefficients)
        for e, c in other.coefficients.items():
            total = merged[e] + c if e in merged else c
            if total:
                merged[e] = total
            else:
                merged.pop(e, None)
        return LaurentTail(merged, self.window, self.p, self.coefficient_names)


def _split_by_variable(
    poly: PolyElement, index: int, rest_ring
) -> Dict[int, PolyElement]:
    """Group the terms of poly by the exponent of variable ``index``."""
    groups: Dict[int, dict] = {}
    for monom, coeff in poly.iterterms():
        rest = monom[:index] + monom[index + 1:]
        groups.setdefault(monom[index], {})[rest] = coeff
    return {k: rest_ring.from_dict(terms) for k, terms in groups.items()}


def _variable_index(poly: PolyElement, var: str) -> int:
    names = ring_names(poly.ring)
    if var not in names:
        raise PreconditionError(f"{var!r} is not a variable of F_p({', '.join(names)})")
    return names.index(var)


def _poly_order(poly: PolyElement, index: int) -> int:
    return min(monom[index] for monom in poly.itermonoms())


def fraction_valuation(
    numer: PolyElement, denom: PolyElement, var: str = UNIFORMIZER
) -> Valuation:
    """t-adic valuation of numer/denom; the pair need not be reduced."""
    if not numer:
        return INFINITY
    index = _variable_index(numer, var)
    return _poly_order(numer, index) - _poly_order(denom, index)


def valuation(a: RatFunc, var: str = UNIFORMIZER) -> Valuation:
    """
    ord_K(a): the exponent v with a = t^v * g/h, g and h units at t = 0.

    Returns INFINITY for a = 0.
    """
    return fraction_valuation(a.numer, a.denom, var)


def fraction_tail(
    numer: PolyElement,
    denom: PolyElement,
    e_lo: int,
    e_hi: int,
    var: str = UNIFORMIZER,
) -> LaurentTail:
    """
    Coefficients of t^e, e_lo <= e < e_hi, of the expansion of numer/denom.

    The unit part of the denominator is inverted as a power series, keeping
    the j-th coefficient over d0^(j+1) until the end so that only the
    returned coefficients are reduced.
    """
    if e_lo > e_hi:
        raise PreconditionError(f"empty window [{e_lo}, {e_hi})")
    names = ring_names(numer.ring)
    index = _variable_index(numer, var)
    rest_names = names[:index] + names[index + 1:]
    p = numer.ring.domain.mod
    empty = LaurentTail({}, (e_lo, e_hi), p, rest_names)
    if not numer:
        return empty

    rest_ring = function_ring(p, rest_names)
    num_parts = _split_by_variable(numer, index, rest_ring)
    den_parts = _split_by_variable(denom, index, rest_ring)
    kn, kd = min(num_parts), min(den_parts)
    v = kn - kd
    if e_hi <= v or e_lo == e_hi:
        return empty

    d0 = den_parts[kd]
    count = e_hi - v
    scaled = []
    d0_powers = [rest_ring.one]
    for j in range(count):
        d0_powers.append(d0_powers[-1] * d0)
        acc = num_parts.get(kn + j, rest_ring.zero) * d0_powers[j]
        for i in range(1, j + 1):
            di = den_parts.get(kd + i)
            if di:
                acc -= di * scaled[j - i] * d0_powers[i - 1]
        scaled.append(acc)

    coefficients = {}
    for j in range(max(0, e_lo - v), count):
        if scaled[j]:
            coefficients[v + j] = ratfunc_normalize(scaled[j], d0_powers[j + 1])
    return LaurentTail(coefficients, (e_lo, e_hi), p, rest_names)


def tail(a: RatFunc, e_lo: int, e_hi: int, var: str = UNIFORMIZER) -> LaurentTail:
    """Exact t-adic expansion of ``a`` restricted to the window [e_lo, e_hi)."""
    return fraction_tail(a.numer, a.denom, e_lo, e_hi, var)


def coefficient(a: RatFunc, exponent: int, var: str = UNIFORMIZER) -> RatFunc:
    """Coefficient of t^exponent in the expansion of ``a``."""
    return tail(a, exponent, exponent + 1, var).coefficient(exponent)


def leading_coefficient(a: RatFunc, var: str = UNIFORMIZER) -> RatFunc:
    v = valuation(a, var)
    if v == INFINITY:
        raise PreconditionError("the zero element has no leading coefficient")
    return coefficient(a, v, var)


def principal_part(a: RatFunc, var: str = UNIFORMIZER) -> Dict[int, RatFunc]:
    """Coefficients of the negative powers of t."""
    v = valuation(a, var)
    if v == INFINITY or v >= 0:
        return {}
    return dict(tail(a, v, 0, var).coefficients)


def laurent_polynomial(
    coefficients: Mapping[int, RatFunc], p: int, names=LOCAL_VARIABLES
) -> RatFunc:
    """Sum of c * t^e over the given coefficients."""
    total = RatFunc.zero(p, names)
    for e, c in sorted(coefficients.items()):
        total = total + monomial(c, e, names)
    return total


def d_form(a: RatFunc) -> Tuple[RatFunc, RatFunc]:
    """da = (da/dt) dt + (da/dx) dx over the p-basis {t, x}."""
    return derivative(a, UNIFORMIZER), derivative(a, "x")
