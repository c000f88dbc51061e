# dilatation.py

"""
Coordinate model of the dilatation ring L^(r) and the geometric side of
the characteristic form.

L^(r) is modelled inside F_p(t, x, w, wp): the first projection u is the
identity on (t, x), the second one v sends t to t(1 + t^{r-1} w) and x to
x + t^r wp. Reducing the Artin-Schreier right-hand side
sum u(a_j)^{p^j-1} (v(a_j) - u(a_j)) modulo t gives a polynomial in w, wp
whose canonical linear part is the characteristic form up to sign.
"""

import logging
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Dict, List, Optional, Tuple

from sympy.polys.rings import PolyElement

from base_algebra import (
    DILATATION_VARIABLES,
    RESIDUE_VARIABLES,
    RadicialElem,
    RatFunc,
    format_ratfunc,
    function_ring,
    is_pth_power,
    pth_root,
    radicial_root,
    ratfunc_normalize,
    substitute_fraction,
    transfer,
)
from conductors import (
    Character,
    GradedNonLogForm,
    nonlog_graded_form,
    total_dimension,
)
from errors import (
    DivisionByZeroError,
    ExactnessViolation,
    NonReducibleMonomialError,
    NotRegularError,
    PreconditionError,
)
from local_field import (
    UNIFORMIZER,
    Valuation,
    coefficient,
    fraction_tail,
    fraction_valuation,
    valuation,
)
from witt import WittVec, evaluate_q, in_fil_prime, witt_sub

logger = logging.getLogger(__name__)


def _strip_monomial(numer: PolyElement, denom: PolyElement) -> Tuple[PolyElement, PolyElement]:
    """Cancel the largest monomial dividing both numer and denom."""
    if not numer:
        return numer, denom.ring.one
    monoms = list(numer.itermonoms()) + list(denom.itermonoms())
    common = tuple(min(column) for column in zip(*monoms))
    if not any(common):
        return numer, denom
    ring = numer.ring
    shift = ring.from_dict({common: ring.domain.one})
    return numer.exquo(shift), denom.exquo(shift)


class DilatElem:
    """
    Element of L^(r) as an unreduced fraction over F_p[t, x, w, wp].

    No gcd is taken; equality is decided by cross-multiplication.
    """

    __slots__ = ("numer", "denom", "radius")

    def __init__(self, numer: PolyElement, denom: PolyElement, radius: int):
        if not denom:
            raise DivisionByZeroError()
        self.numer, self.denom = _strip_monomial(numer, denom)
        self.radius = radius

    @property
    def ring(self):
        return self.numer.ring

    @property
    def p(self) -> int:
        return self.ring.domain.mod

    def as_fraction(self) -> Tuple[PolyElement, PolyElement]:
        return self.numer, self.denom

    def from_fraction(self, numer: PolyElement, denom: PolyElement) -> "DilatElem":
        return DilatElem(numer, denom, self.radius)

    def _coerce(self, other) -> Optional["DilatElem"]:
        if isinstance(other, DilatElem):
            if other.radius != self.radius or other.ring != self.ring:
                raise PreconditionError("cannot combine elements of different dilatations")
            return other
        if isinstance(other, int):
            return DilatElem(self.ring(other % self.p), self.ring.one, self.radius)
        return None

    def __add__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        if not other.numer:
            return self
        if not self.numer:
            return other
        if self.denom == other.denom:
            return self.from_fraction(self.numer + other.numer, self.denom)
        return self.from_fraction(
            self.numer * other.denom + other.numer * self.denom,
            self.denom * other.denom,
        )

    __radd__ = __add__

    def __neg__(self):
        return DilatElem(-self.numer, self.denom, self.radius)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return -self + other

    def __mul__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self.from_fraction(self.numer * other.numer, self.denom * other.denom)

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        if not other.numer:
            raise DivisionByZeroError()
        return self.from_fraction(self.numer * other.denom, self.denom * other.numer)

    def __pow__(self, exponent: int):
        if exponent < 0:
            if not self.numer:
                raise DivisionByZeroError()
            return DilatElem(self.denom ** -exponent, self.numer ** -exponent, self.radius)
        return DilatElem(self.numer ** exponent, self.denom ** exponent, self.radius)

    def __eq__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self.numer * other.denom == other.numer * self.denom

    def __ne__(self, other):
        result = self.__eq__(other)
        return result if result is NotImplemented else not result

    __hash__ = None

    def __bool__(self):
        return bool(self.numer)

    def valuation(self) -> Valuation:
        """ord_t, with t = u(t) a uniformizer of L^(r)."""
        return fraction_valuation(self.numer, self.denom, UNIFORMIZER)

    def to_ratfunc(self) -> RatFunc:
        return ratfunc_normalize(self.numer, self.denom)

    def residue(self) -> RatFunc:
        """Image in F_p(x, w, wp) of an element with ord_t >= 0."""
        v = self.valuation()
        if v < 0:
            raise PreconditionError(f"element with a pole of order {-v} has no residue")
        return fraction_tail(self.numer, self.denom, 0, 1).coefficient(0)

    def __repr__(self):
        return f"DilatElem({format_ratfunc(self.to_ratfunc())!r}, r={self.radius})"


@lru_cache(maxsize=None)
def _v_images(p: int, radius: int) -> Tuple[Tuple[PolyElement, PolyElement], ...]:
    ring = function_ring(p, DILATATION_VARIABLES)
    t, x, w, wp = ring.gens
    return (
        (t + t ** radius * w, ring.one),
        (x + t ** radius * wp, ring.one),
    )


def _check_local(a: RatFunc, radius: int) -> None:
    if radius < 1:
        raise PreconditionError(f"dilatation radius must be >= 1, got {radius}")
    if a.names != ("t", "x"):
        raise PreconditionError(f"expected an element of F_p(t, x), got one of {a.names}")


def embed_u(a: RatFunc, radius: int) -> DilatElem:
    """u(a): (t, x) -> (t, x)."""
    _check_local(a, radius)
    image = transfer(a, DILATATION_VARIABLES)
    return DilatElem(image.numer, image.denom, radius)


def embed_v(a: RatFunc, radius: int) -> DilatElem:
    """v(a): t -> t (1 + t^{r-1} w), x -> x + t^r wp."""
    _check_local(a, radius)
    numer, denom = substitute_fraction(a, _v_images(a.p, radius))
    return DilatElem(numer, denom, radius)


def dilatation_gen(name: str, p: int, radius: int) -> DilatElem:
    ring = function_ring(p, DILATATION_VARIABLES)
    return DilatElem(ring.gens[DILATATION_VARIABLES.index(name)], ring.one, radius)


# -- valuation lemmas ----------------------------------------------------------


@dataclass
class ValuationReport:
    """Outcome of a lemma check; ``failures`` names each violated bound."""

    passed: bool = True
    failures: List[str] = field(default_factory=list)
    valuations: Dict[str, Valuation] = field(default_factory=dict)

    def fail(self, message: str) -> None:
        self.passed = False
        self.failures.append(message)


def _ratios(a: WittVec, radius: int):
    u_parts, v_parts, b_parts = [], [], []
    for c in a.components:
        ui, vi = embed_u(c, radius), embed_v(c, radius)
        u_parts.append(ui)
        v_parts.append(vi)
        b_parts.append(vi / ui - 1 if c else ui * 0)
    p = a.p
    return WittVec(p, tuple(u_parts)), WittVec(p, tuple(v_parts)), WittVec(p, tuple(b_parts))


def check_valuation_lemmas(a: WittVec, r: int, m: int) -> ValuationReport:
    """
    Check the valuation bounds on Q_d(u(a), b) for a in fil'_m and radius r.

    b_i = v(a_i)/u(a_i) - 1, or 0 when a_i = 0. Also checks the identity
    v(a) - u(a) = (Q_{s-1}(u(a), b), ..., Q_0(u(a), b)) in W_s(L^(r)).
    """
    if m < 1 or not in_fil_prime(a, m):
        raise PreconditionError(f"valuation lemmas need a in fil'_{m} with m >= 1")
    report = ValuationReport()
    if not a.length:
        return report
    p, s = a.p, a.length
    ua, va, b = _ratios(a, r)
    q = evaluate_q(ua, b)
    if witt_sub(va, ua) != q:
        report.fail("v(a) - u(a) differs from Q(u(a), b)")

    for d in range(s):
        v = q.component(d).valuation()
        report.valuations[f"Q_{d}"] = v
        weighted = p ** d * v
        if (m, r) == (1, 1) and weighted < 0:
            report.fail(f"(m, r) = (1, 1): p^{d} ord(Q_{d}) = {weighted} < 0")
        if r > 1 and d > 0 and not weighted > -m + r:
            report.fail(f"r > 1: p^{d} ord(Q_{d}) = {weighted} <= {-m + r}")
        if r > 1 and d == 0 and v < -m + r:
            report.fail(f"r > 1: ord(Q_0) = {v} < {-m + r}")

    if r == m >= 2:
        linear = q.component(0)
        for i in range(s):
            linear = linear - ua.component(i) ** (p ** i) * b.component(i)
        v = linear.valuation()
        report.valuations["Q_0 - linear"] = v
        if not v > 0:
            report.fail(f"r = m: ord(Q_0 - sum u(a_i)^(p^i) b_i) = {v} <= 0")
    if not report.passed:
        logger.debug("valuation lemmas failed for r=%d, m=%d: %s", r, m, report.failures)
    return report


def check_unit_ratio_lemma(a: RatFunc, r: int) -> ValuationReport:
    """
    Valuation of v(a)/u(a) - 1 for a = a' t^n, a' a unit.

    ord(v(a)/u(a)) = 0 for n = 0, r = 1; otherwise ord(v(a)/u(a) - 1) = r - 1 if
    p does not divide n or r = 1, and >= r else, with equality when the leading
    coefficient of a is not a p-th power.
    """
    if not a:
        raise PreconditionError("unit ratio undefined for a = 0")
    report = ValuationReport()
    p = a.p
    n = valuation(a)
    ratio = embed_v(a, r) / embed_u(a, r)
    shifted = (ratio - 1).valuation()
    report.valuations["ratio - 1"] = shifted
    if n == 0 and r == 1:
        v = ratio.valuation()
        report.valuations["ratio"] = v
        if v != 0:
            report.fail(f"n = 0, r = 1: ord(v(a)/u(a)) = {v} != 0")
        # v(a)/u(a) = 1 + t wp / a' here, so the shift has order >= 1
        if shifted < 1:
            report.fail(f"n = 0, r = 1: ord(v(a)/u(a) - 1) = {shifted} < 1")
    elif n % p or r == 1:
        if shifted != r - 1:
            report.fail(f"ord(v(a)/u(a) - 1) = {shifted} != {r - 1}")
    else:
        if shifted < r:
            report.fail(f"p | n, r > 1: ord(v(a)/u(a) - 1) = {shifted} < {r}")
        elif shifted != r and not is_pth_power(coefficient(a, n)):
            report.fail(f"leading coefficient not a p-th power but ord = {shifted} > {r}")
    return report


# -- Artin-Schreier reduction --------------------------------------------------------


@dataclass(frozen=True)
class ASLinearForm:
    """
    Artin-Schreier class of c_w w + c_wp wp over F_p(x, w, wp).

    ``order`` is ord_t of the right-hand side the form was read from; it is 0
    whenever the radius equals dt.
    """

    c_w: RadicialElem
    c_wp: RatFunc
    order: int = 0

    def is_zero(self) -> bool:
        return not self.c_w and not self.c_wp


def _as_coefficients(residue: RatFunc) -> Dict[Tuple[int, int], RatFunc]:
    """Write residue = sum c_{ij}(x) w^i wp^j, denominator in x only."""
    # residue lives in F_p(x, w, wp)
    if any(monom[1] or monom[2] for monom in residue.denom.itermonoms()):
        raise NonReducibleMonomialError(f"denominator {format_ratfunc(residue)} involves w, wp")
    denom = transfer(RatFunc(residue.denom, residue.ring.one), RESIDUE_VARIABLES)
    x_ring = denom.ring
    groups: Dict[Tuple[int, int], dict] = {}
    for (ex, ew, ewp), coeff in residue.numer.iterterms():
        groups.setdefault((ew, ewp), {})[(ex,)] = coeff
    return {
        key: ratfunc_normalize(x_ring.from_dict(terms), denom.numer)
        for key, terms in groups.items()
    }


def _power_of_p(n: int, p: int) -> Optional[int]:
    k = 0
    while n > 1 and n % p == 0:
        n //= p
        k += 1
    return k if n == 1 else None


def _canonical_term(c: RatFunc, ew: int, ewp: int, p: int):
    """Linear representative (c_w, c_wp) of c w^ew wp^ewp modulo t^p - t."""
    monom = f"({c}) * w^{ew} * wp^{ewp}"
    if ew and ewp:
        raise NonReducibleMonomialError(monom)
    if not ew and not ewp:
        raise NonReducibleMonomialError(f"constant term {c}")
    k = _power_of_p(ew or ewp, p)
    if k is None:
        raise NonReducibleMonomialError(monom)
    if ew:
        for _ in range(k - 1):
            if not is_pth_power(c):
                raise NonReducibleMonomialError(monom)
            c = pth_root(c)
        root = radicial_root(c) if k else RadicialElem.embed(c)
        return root, None
    for _ in range(k):
        if not is_pth_power(c):
            raise NonReducibleMonomialError(monom)
        c = pth_root(c)
    return None, c


def as_reduction(a: WittVec, m: int) -> ASLinearForm:
    """
    Artin-Schreier equation of the dilatation fiber at radius m, made linear.

    Monomials c w^{p^k} are replaced by c^{1/p^k} w through t -> t + l
    (and likewise for wp, whose coefficient must stay in F_p(x)).
    """
    if m < 2 or not in_fil_prime(a, m):
        raise PreconditionError(f"as_reduction needs a in fil'_{m} with m >= 2")
    if not nonlog_graded_form(a, m):
        raise PreconditionError(f"as_reduction needs a nonzero graded form at level {m}")
    p = a.p
    rhs = dilatation_gen("t", p, m) * 0
    for j in range(a.length):
        aj = a.component(j)
        if not aj:
            continue
        uj = embed_u(aj, m)
        rhs = rhs + uj ** (p ** j - 1) * (embed_v(aj, m) - uj)
    v = rhs.valuation()
    if v < 0:
        raise NotRegularError(v)
    if v != 0:
        # the graded form at level m is nonzero, so R is nonzero mod t
        raise ExactnessViolation(f"right-hand side has ord_t = {v} at radius {m}, expected 0")

    c_w = RadicialElem.zero(p)
    c_wp = RatFunc.zero(p, RESIDUE_VARIABLES)
    residue = rhs.residue()
    logger.debug("Artin-Schreier residue at radius %d: %s", m, residue)
    for (ew, ewp), c in sorted(_as_coefficients(residue).items()):
        w_part, wp_part = _canonical_term(c, ew, ewp, p)
        if w_part is not None:
            c_w = c_w + w_part
        if wp_part is not None:
            c_wp = c_wp + wp_part
    return ASLinearForm(c_w, c_wp, order=v)


def geometric_cform(chi: Character) -> Optional[GradedNonLogForm]:
    """
    Characteristic form read off the dilatation fiber; None when dt = 1.

    w and wp stand for dt/t^m and dx/t^m; the form is -(c_w dt + c_wp dx)/t^m.
    """
    m, reduced = total_dimension(chi)
    if m == 1:
        return None
    form = as_reduction(reduced, m)
    return GradedNonLogForm(level=m, c_pi=-form.c_w, c_x=-form.c_wp)
