# snc_global.py

"""
Divisor-level invariants on X = A^2 with D = {x1 = 0} + {x2 = 0}.

A global character is a Witt vector of rational functions in (x1, x2)
with poles only along D. Restricting to the local field K_i of D_i makes
x_i the uniformizer t and x_{3-i} the residue variable x.
"""

import logging
from dataclasses import dataclass, field
from typing import Dict, Mapping, Sequence, Tuple

from base_algebra import (
    GLOBAL_VARIABLES,
    LOCAL_VARIABLES,
    RadicialElem,
    RatFunc,
    derivative,
    radicial_root,
    transfer,
)
from conductors import (
    Character,
    GradedNonLogForm,
    cform,
    swan_conductor,
    total_dimension,
)
from errors import PreconditionError
from local_field import coefficient
from witt import WittVec, check_witt_size, in_fil_prime

logger = logging.getLogger(__name__)

COMPONENTS = (1, 2)


def _poles_along_d(f: RatFunc) -> bool:
    """Denominator = monomial * h with h a nonzero constant on both axes."""
    monoms = list(f.denom.itermonoms())
    s1, s2 = (min(column) for column in zip(*monoms))
    rest = [(e1 - s1, e2 - s2) for e1, e2 in monoms]
    return (0, 0) in rest and all(e == (0, 0) or (e[0] and e[1]) for e in rest)


@dataclass(frozen=True)
class GlobalCharacter:
    """a in W_s(F_p(x1, x2)), regular on U = A^2 - D."""

    representative: WittVec

    def __post_init__(self):
        check_witt_size(self.p, self.length)
        for c in self.representative.components:
            if not isinstance(c, RatFunc) or c.names != GLOBAL_VARIABLES or c.p != self.p:
                raise PreconditionError(
                    f"global components must lie in F_{self.p}(x1, x2), got {c!r}"
                )
            if not _poles_along_d(c):
                raise PreconditionError(f"{c} has poles outside D")

    @classmethod
    def from_components(cls, p: int, components: Sequence[RatFunc]) -> "GlobalCharacter":
        return cls(WittVec(p, tuple(components)))

    @property
    def p(self) -> int:
        return self.representative.p

    @property
    def length(self) -> int:
        return self.representative.length


@dataclass(frozen=True)
class ConductorDivisor:
    """sum_i n_i D_i, keyed by component index."""

    multiplicities: Mapping[int, int]

    def __getitem__(self, i: int) -> int:
        return self.multiplicities[i]

    def support(self) -> Tuple[int, ...]:
        return tuple(i for i in COMPONENTS if self.multiplicities[i])

    def minus_boundary(self) -> "ConductorDivisor":
        """The divisor minus D."""
        return ConductorDivisor({i: self.multiplicities[i] - 1 for i in COMPONENTS})

    def swapped(self) -> "ConductorDivisor":
        return ConductorDivisor({1: self.multiplicities[2], 2: self.multiplicities[1]})

    def as_dict(self) -> Dict[str, int]:
        return {f"D{i}": self.multiplicities[i] for i in COMPONENTS}


def _check_component(i: int) -> None:
    if i not in COMPONENTS:
        raise PreconditionError(f"component index must be 1 or 2, got {i}")


def _to_local(f: RatFunc, i: int) -> RatFunc:
    return transfer(f, LOCAL_VARIABLES, {f"x{i}": "t", f"x{3 - i}": "x"})


def restrict(a: GlobalCharacter, i: int) -> Character:
    """chi restricted to K_i: x_i becomes t and x_{3-i} becomes x."""
    _check_component(i)
    return Character.from_components(
        a.p, [_to_local(c, i) for c in a.representative.components]
    )


def swan_divisor(a: GlobalCharacter) -> ConductorDivisor:
    """R_chi = sum sw(chi|K_i) D_i."""
    return ConductorDivisor({i: swan_conductor(restrict(a, i))[0] for i in COMPONENTS})


def dt_divisor(a: GlobalCharacter) -> ConductorDivisor:
    """R'_chi = sum dt(chi|K_i) D_i."""
    return ConductorDivisor({i: total_dimension(restrict(a, i))[0] for i in COMPONENTS})


def swap_coordinates(a: GlobalCharacter) -> GlobalCharacter:
    """The involution x1 <-> x2."""
    swap = {"x1": "x2", "x2": "x1"}
    return GlobalCharacter.from_components(
        a.p, [transfer(c, GLOBAL_VARIABLES, swap) for c in a.representative.components]
    )


@dataclass
class GlobalFormReport:
    """
    Local characteristic forms on Supp(R'_chi - D) with germ statuses.

    A status is "consistent" or "inconsistent" when the global differential
    of the representative could be compared with the local form, and
    "skipped" when the representative first needs local reduction.
    """

    forms: Dict[int, GradedNonLogForm] = field(default_factory=dict)
    statuses: Dict[int, str] = field(default_factory=dict)

    @property
    def consistent(self) -> bool:
        return "inconsistent" not in self.statuses.values()


def _global_omega(a: GlobalCharacter) -> Dict[int, RatFunc]:
    """dx_i coefficients of -sum a_j^{p^j-1} da_j."""
    p = a.p
    omega = {i: RatFunc.zero(p, GLOBAL_VARIABLES) for i in COMPONENTS}
    for j in range(a.length):
        aj = a.representative.component(j)
        if not aj:
            continue
        weight = aj ** (p ** j - 1)
        for i in COMPONENTS:
            omega[i] = omega[i] - weight * derivative(aj, f"x{i}")
    return omega


def _germ_form(a: GlobalCharacter, omega: Dict[int, RatFunc], i: int, m: int) -> GradedNonLogForm:
    c_pi = RadicialElem.embed(coefficient(_to_local(omega[i], i), -m))
    c_x = coefficient(_to_local(omega[3 - i], i), -m)
    if a.p == 2 and m == 2:
        a0 = _to_local(a.representative.component(0), i)
        c_pi = c_pi + radicial_root(coefficient(a0, -2))
    return GradedNonLogForm(level=m, c_pi=c_pi, c_x=c_x)


def global_cform(a: GlobalCharacter) -> GlobalFormReport:
    """cform of chi|K_i for every D_i with dt_i > 1, checked against the global differential."""
    dt = dt_divisor(a)
    support = dt.minus_boundary().support()
    if not support:
        raise PreconditionError("global_cform needs a component with dt > 1")
    omega = _global_omega(a)
    report = GlobalFormReport()
    for i in support:
        local = restrict(a, i)
        m = dt[i]
        report.forms[i] = cform(local)
        if not in_fil_prime(local.representative, m):
            report.statuses[i] = "skipped"
            continue
        germ = _germ_form(a, omega, i, m)
        report.statuses[i] = "consistent" if germ == report.forms[i] else "inconsistent"
        if report.statuses[i] == "inconsistent":
            logger.warning("germ of the global form disagrees with cform on D%d", i)
    return report
