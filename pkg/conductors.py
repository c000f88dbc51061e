# conductors.py

"""
Ramification invariants of characters chi = delta_s(a) of K = F_p(x)((t)).

Swan conductor and refined Swan conductor come from the logarithmic
filtration fil_n; total dimension and characteristic form from the
non-logarithmic filtration fil'_m. Both conductors are found by reducing
the representative: while the graded form at the current level vanishes,
the leading part is a Frobenius image and (F - 1)(b) is subtracted.

Characters only exist through a Witt representative; the returned
representatives depend on the reduction order, the invariants do not.
"""

import logging
from dataclasses import dataclass
from typing import Dict, Optional, Sequence, Tuple

from base_algebra import (
    LOCAL_VARIABLES,
    RadicialElem,
    RatFunc,
    as_residue,
    is_pth_power,
    pth_root,
    radicial_root,
)
from errors import ExactnessViolation, PreconditionError
from local_field import (
    INFINITY,
    coefficient,
    d_form,
    local_zero,
    monomial,
    principal_part,
    tail,
    valuation,
)
from witt import (
    WittVec,
    check_witt_size,
    frobenius_minus_one,
    in_fil,
    in_fil_prime,
    least_prime_level,
    ord_w,
    prime_bound,
    single_component,
    witt_add,
    witt_sub,
)

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class Character:
    """chi = delta_s(a), carried by its representative a in W_s(K)."""

    representative: WittVec

    def __post_init__(self):
        check_witt_size(self.p, self.length)
        for c in self.representative.components:
            if not isinstance(c, RatFunc) or c.names != LOCAL_VARIABLES or c.p != self.p:
                raise PreconditionError(
                    f"representative components must lie in F_{self.p}(t, x), got {c!r}"
                )

    @classmethod
    def from_components(cls, p: int, components: Sequence[RatFunc]) -> "Character":
        return cls(WittVec(p, tuple(components)))

    @property
    def p(self) -> int:
        return self.representative.p

    @property
    def length(self) -> int:
        return self.representative.length

    def twist(self, b: WittVec) -> "Character":
        """The same character presented by a + (F - 1)(b)."""
        return Character(witt_add(self.representative, frobenius_minus_one(b)))


@dataclass(frozen=True)
class GradedLogForm:
    """(alpha dt/t + beta dx) / t^level in gr_level of the log differentials."""

    level: int
    alpha: RatFunc
    beta: RatFunc

    def is_zero(self) -> bool:
        return not self.alpha and not self.beta

    def __bool__(self):
        return not self.is_zero()


@dataclass(frozen=True)
class GradedNonLogForm:
    """(c_pi dt + c_x dx) / t^level with c_pi in F_p(x)^{1/p}."""

    level: int
    c_pi: RadicialElem
    c_x: RatFunc

    def is_zero(self) -> bool:
        return not self.c_pi and not self.c_x

    def __bool__(self):
        return not self.is_zero()

    @property
    def radicial(self) -> bool:
        """True when c_pi does not lie in F_p(x)."""
        return not self.c_pi.descends()


def _omega(a: WittVec) -> Tuple[RatFunc, RatFunc]:
    """-sum a_i^{p^i - 1} da_i as its (dt, dx) coefficients."""
    p = a.p
    form_t = local_zero(p)
    form_x = local_zero(p)
    for i in range(a.length):
        ai = a.component(i)
        if not ai:
            continue
        weight = ai ** (p ** i - 1)
        d_t, d_x = d_form(ai)
        form_t = form_t - weight * d_t
        form_x = form_x - weight * d_x
    return form_t, form_x


def _pole_level(a: WittVec) -> int:
    v = ord_w(a)
    return 0 if v == INFINITY or v >= 0 else int(-v)


def log_graded_form(a: WittVec, n: int) -> GradedLogForm:
    """Class of -sum a_i^{p^i-1} da_i in gr_n of the log differentials."""
    if n < 1 or not in_fil(a, n):
        raise PreconditionError(f"log_graded_form needs a in fil_{n} with n >= 1")
    form_t, form_x = _omega(a)
    if valuation(form_t) < -n - 1 or valuation(form_x) < -n:
        raise ExactnessViolation(f"differential of a fil_{n} vector has a deeper pole")
    return GradedLogForm(
        level=n,
        alpha=coefficient(form_t, -n - 1),
        beta=coefficient(form_x, -n),
    )


def _exceptional(p: int, m: int) -> bool:
    return p == 2 and m == 2


def nonlog_graded_form(a: WittVec, m: int) -> GradedNonLogForm:
    """
    Class of -sum a_i^{p^i-1} da_i in gr'_m, tensored with F_p(x)^{1/p}.

    At (p, m) = (2, 2) only a_0 carries a pole, and the class picks up the
    square root of the leading coefficient of a_0.
    """
    if m < 2 or not in_fil_prime(a, m):
        raise PreconditionError(f"nonlog_graded_form needs a in fil'_{m} with m >= 2")
    if _exceptional(a.p, m):
        a0 = a.component(0)
        d_t, d_x = d_form(a0)
        c_pi = RadicialElem.embed(coefficient(-d_t, -2)) + radicial_root(coefficient(a0, -2))
        return GradedNonLogForm(level=m, c_pi=c_pi, c_x=coefficient(-d_x, -2))
    form_t, form_x = _omega(a)
    if valuation(form_t) < -m or valuation(form_x) < -m:
        raise ExactnessViolation(f"differential of a fil'_{m} vector has a deeper pole")
    return GradedNonLogForm(
        level=m,
        c_pi=RadicialElem.embed(coefficient(form_t, -m)),
        c_x=coefficient(form_x, -m),
    )


def _root_monomial(c: RatFunc, e: int, p: int, where: str) -> RatFunc:
    """pth_root(c) * t^{e/p}, the Frobenius preimage of the monomial c t^e."""
    if e % p or not is_pth_power(c):
        raise ExactnessViolation(f"{where}: {c} * t^{e} is not a p-th power")
    return monomial(pth_root(c), e // p)


def _subtract_frobenius_image(a: WittVec, j: int, b_j: RatFunc) -> WittVec:
    """a - (F - 1)(b) for the vector b whose only entry is b_j at index j."""
    return witt_sub(a, frobenius_minus_one(single_component(a.p, a.length, j, b_j)))


def _swan_step(a: WittVec, n: int) -> WittVec:
    p = a.p
    for j in range(a.length - 1, -1, -1):
        aj = a.component(j)
        v = valuation(aj)
        if v == INFINITY or p ** j * v > -n:
            continue
        if p ** j * v < -n:
            raise ExactnessViolation(f"component a_{j} left fil_{n}")
        lead = coefficient(aj, v)
        b_j = _root_monomial(lead, v, p, f"level {n}, a_{j}")
        logger.debug("sw step at level %d: subtracting (F-1) of b_%d = %s", n, j, b_j)
        a = _subtract_frobenius_image(a, j, b_j)
    return a


def swan_conductor(chi: Character) -> Tuple[int, WittVec]:
    """sw(chi) and a representative in fil_sw."""
    a = chi.representative
    n = _pole_level(a)
    while n >= 1 and not log_graded_form(a, n):
        a = _swan_step(a, n)
        lower = _pole_level(a)
        if lower >= n:
            raise ExactnessViolation(f"reduction at level {n} did not lower the level")
        n = lower
    logger.debug("sw = %d", n)
    return n, a


def rsw(chi: Character) -> Optional[GradedLogForm]:
    """Refined Swan conductor; None when sw = 0."""
    n, reduced = swan_conductor(chi)
    if n == 0:
        return None
    return log_graded_form(reduced, n)


def _ceil_div(a: int, b: int) -> int:
    return -((-a) // b)


def _dt_window(p: int, s: int, m: int, j: int) -> Tuple[int, int]:
    """Exponents e of a_j that are in fil'_m but not in fil'_{m-1}."""
    q = p ** j
    return (
        _ceil_div(prime_bound(p, s, m, j), q),
        _ceil_div(prime_bound(p, s, m - 1, j), q),
    )


def _dt_step(a: WittVec, m: int) -> WittVec:
    p, s = a.p, a.length
    if _exceptional(p, m):
        lead = coefficient(a.component(0), -2)
        if not is_pth_power(lead):
            raise ExactnessViolation(f"level 2: {lead} is not a square")
        b_0 = monomial(pth_root(lead), -1)
        logger.debug("dt step at level 2: subtracting (F-1) of b_0 = %s", b_0)
        a = _subtract_frobenius_image(a, 0, b_0)
        if not in_fil(a, 0):
            raise ExactnessViolation("exceptional reduction did not land in fil_0")
        return a
    for j in range(s - 1, -1, -1):
        lo, hi = _dt_window(p, s, m, j)
        if lo >= hi:
            continue
        window = tail(a.component(j), lo, hi)
        if window.is_zero():
            continue
        b_j = local_zero(p)
        for e, c in sorted(window.coefficients.items()):
            b_j = b_j + _root_monomial(c, e, p, f"level {m}, a_{j}")
        logger.debug("dt step at level %d: subtracting (F-1) of b_%d = %s", m, j, b_j)
        a = _subtract_frobenius_image(a, j, b_j)
    return a


def total_dimension(chi: Character) -> Tuple[int, WittVec]:
    """dt(chi) and a representative in fil'_dt."""
    a = chi.representative
    m = least_prime_level(a)
    while m >= 2 and not nonlog_graded_form(a, m):
        a = _dt_step(a, m)
        lower = least_prime_level(a)
        if lower >= m:
            raise ExactnessViolation(f"reduction at level {m} did not lower the level")
        m = lower
    logger.debug("dt = %d", m)
    return m, a


def cform(chi: Character) -> Optional[GradedNonLogForm]:
    """Characteristic form; None when dt = 1."""
    m, reduced = total_dimension(chi)
    if m == 1:
        return None
    return nonlog_graded_form(reduced, m)


def perfect_residue_swan(chi: Character) -> int:
    """
    Swan conductor of delta_1(a) for a free of x, by naive pole reduction.

    Over the perfect residue field F_p a monomial c t^{-n} with p | n is
    equivalent to c t^{-n/p}; the answer is the deepest pole that survives.
    """
    if chi.length != 1:
        raise PreconditionError("perfect-residue reduction handles length 1 only")
    a = chi.representative.component(0)
    if "x" in a.used_variables():
        raise PreconditionError(f"{a} involves the residue variable x")
    p = chi.p
    poles: Dict[int, int] = {
        e: as_residue(c).constant_value() for e, c in principal_part(a).items()
    }
    poles = {e: c for e, c in poles.items() if c}
    while poles:
        e = min(poles)
        if e % p:
            return -e
        c = poles.pop(e)
        moved = (poles.get(e // p, 0) + c) % p
        if moved:
            poles[e // p] = moved
        else:
            poles.pop(e // p, None)
    return 0


@dataclass(frozen=True)
class ConductorReport:
    """All invariants of one character, with both reduced representatives."""

    sw: int
    dt: int
    rsw: Optional[GradedLogForm]
    cform: Optional[GradedNonLogForm]
    swan_representative: WittVec
    dt_representative: WittVec


def check_compatibility(report: ConductorReport) -> None:
    """Raise ExactnessViolation if sw, dt, rsw and cform are inconsistent."""
    sw, dt = report.sw, report.dt
    if dt not in (sw, sw + 1):
        raise ExactnessViolation(f"dt = {dt} not in {{sw, sw+1}} with sw = {sw}")
    if (dt == 1) != (sw == 0):
        raise ExactnessViolation(f"dt = 1 and sw = 0 disagree (sw={sw}, dt={dt})")
    if sw >= 1 and not report.rsw:
        raise ExactnessViolation("rsw vanishes at level sw")
    if dt >= 2 and not report.cform:
        raise ExactnessViolation("cform vanishes at level dt")
    if dt < 2:
        return
    alpha, beta = report.rsw.alpha, report.rsw.beta
    if dt == sw + 1:
        if not alpha or report.cform.c_pi != alpha or report.cform.c_x:
            raise ExactnessViolation("dt = sw + 1 but cform is not alpha dt / t^dt")
    elif alpha or report.cform.c_x != beta:
        raise ExactnessViolation("dt = sw but the dx parts of rsw and cform differ")


def analyze(chi: Character) -> ConductorReport:
    """sw, dt, rsw and cform of chi, cross-checked against each other."""
    sw, swan_rep = swan_conductor(chi)
    dt, dt_rep = total_dimension(chi)
    report = ConductorReport(
        sw=sw,
        dt=dt,
        rsw=log_graded_form(swan_rep, sw) if sw else None,
        cform=nonlog_graded_form(dt_rep, dt) if dt >= 2 else None,
        swan_representative=swan_rep,
        dt_representative=dt_rep,
    )
    check_compatibility(report)
    logger.info("sw = %d, dt = %d", sw, dt)
    return report
