# base_algebra.py

"""
Exact arithmetic over prime fields F_p.

Polynomials are sympy sparse polynomials (``PolyElement``) over ``GF(p)`` with
graded lexicographic order. ``RatFunc`` wraps a numerator/denominator pair in
canonical form: coprime, denominator monic under grlex. Two RatFuncs are equal
exactly when their representations are equal.

The radicial extension F_p(x)^{1/p} is modelled as F_p(y) with y^p = x.
"""

import logging
from functools import lru_cache
from typing import Dict, List, Mapping, Optional, Sequence, Tuple

from sympy.polys.domains import GF
from sympy.polys.orderings import grlex
from sympy.polys.rings import PolyElement, PolyRing

from errors import (
    DivisionByZeroError,
    ExactnessViolation,
    NotPthPowerError,
    PreconditionError,
    UnsupportedError,
)

logger = logging.getLogger(__name__)

SUPPORTED_PRIMES = (2, 3, 5, 7)

RESIDUE_VARIABLES = ("x",)
RADICIAL_VARIABLES = ("y",)
LOCAL_VARIABLES = ("t", "x")
DILATATION_VARIABLES = ("t", "x", "w", "wp")
GLOBAL_VARIABLES = ("x1", "x2")

# Sparse multivariate polynomial over F_p; sympy already stores no zero terms.
MultiPoly = PolyElement


def prime_field(p: int):
    """Return the sympy domain GF(p) for a supported prime."""
    if p not in SUPPORTED_PRIMES:
        raise UnsupportedError(f"p must be prime in {{2,3,5,7}}, got {p}")
    return GF(p)


@lru_cache(maxsize=None)
def function_ring(p: int, names: Tuple[str, ...]) -> PolyRing:
    """Polynomial ring F_p[names] with grlex order (cached)."""
    if not names:
        raise UnsupportedError("a function field needs at least one variable")
    poly_ring = PolyRing(",".join(names), prime_field(p), grlex)
    logger.debug("created ring F_%d[%s]", p, ", ".join(names))
    return poly_ring


def ring_names(poly_ring: PolyRing) -> Tuple[str, ...]:
    return tuple(str(symbol) for symbol in poly_ring.symbols)


def coefficient_int(coeff, p: int) -> int:
    """Representative of a GF(p) coefficient in 0..p-1."""
    return int(coeff) % p


class RatFunc:
    """
    Element of the rational function field F_p(names) in canonical form.

    Build instances with ``ratfunc_normalize`` or the class helpers; the plain
    constructor trusts that the pair is already canonical.
    """

    __slots__ = ("numer", "denom", "_hash")

    def __init__(self, numer: PolyElement, denom: PolyElement):
        self.numer = numer
        self.denom = denom
        self._hash = None

    # -- constructors -------------------------------------------------------

    @classmethod
    def zero(cls, p: int, names: Sequence[str]) -> "RatFunc":
        poly_ring = function_ring(p, tuple(names))
        return cls(poly_ring.zero, poly_ring.one)

    @classmethod
    def one(cls, p: int, names: Sequence[str]) -> "RatFunc":
        poly_ring = function_ring(p, tuple(names))
        return cls(poly_ring.one, poly_ring.one)

    @classmethod
    def constant(cls, value: int, p: int, names: Sequence[str]) -> "RatFunc":
        poly_ring = function_ring(p, tuple(names))
        return cls(poly_ring(value % p), poly_ring.one)

    @classmethod
    def gen(cls, name: str, p: int, names: Sequence[str]) -> "RatFunc":
        """The variable ``name`` as an element of F_p(names)."""
        names = tuple(names)
        if name not in names:
            raise UnsupportedError(f"unknown variable {name!r}; expected one of {names}")
        poly_ring = function_ring(p, names)
        return cls(poly_ring.gens[names.index(name)], poly_ring.one)

    @classmethod
    def from_poly(cls, poly: PolyElement) -> "RatFunc":
        return cls(poly, poly.ring.one)

    # -- structure ----------------------------------------------------------

    @property
    def ring(self) -> PolyRing:
        return self.numer.ring

    @property
    def p(self) -> int:
        return self.numer.ring.domain.mod

    @property
    def names(self) -> Tuple[str, ...]:
        return ring_names(self.numer.ring)

    def used_variables(self) -> Tuple[str, ...]:
        """Variables that actually occur in the numerator or denominator."""
        used = set()
        for poly in (self.numer, self.denom):
            for monom in poly.itermonoms():
                used.update(i for i, e in enumerate(monom) if e)
        names = self.names
        return tuple(names[i] for i in sorted(used))

    def is_constant(self) -> bool:
        return not self.used_variables()

    def constant_value(self) -> int:
        """Value in 0..p-1 of a constant element."""
        if not self.is_constant():
            raise PreconditionError(f"{self} is not a constant")
        if not self.numer:
            return 0
        # canonical constants have denominator 1
        return coefficient_int(self.numer.LC, self.p)

    # -- arithmetic ---------------------------------------------------------

    def _coerce(self, other) -> Optional["RatFunc"]:
        if isinstance(other, RatFunc):
            if other.ring != self.ring:
                raise PreconditionError(
                    f"cannot combine elements of F_{self.p}({', '.join(self.names)}) "
                    f"and F_{other.p}({', '.join(other.names)})"
                )
            return other
        if isinstance(other, int):
            return RatFunc(self.ring(other % self.p), self.ring.one)
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
            return ratfunc_normalize(self.numer + other.numer, self.denom)
        return ratfunc_normalize(
            self.numer * other.denom + other.numer * self.denom,
            self.denom * other.denom,
        )

    __radd__ = __add__

    def __neg__(self):
        return RatFunc(-self.numer, self.denom)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return other + (-self)

    def __mul__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        if not self.numer or not other.numer:
            return RatFunc(self.ring.zero, self.ring.one)
        return ratfunc_normalize(self.numer * other.numer, self.denom * other.denom)

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        if not other.numer:
            raise DivisionByZeroError()
        return ratfunc_normalize(self.numer * other.denom, self.denom * other.numer)

    def __rtruediv__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return other / self

    def __pow__(self, exponent: int):
        if not isinstance(exponent, int):
            return NotImplemented
        if exponent < 0:
            if not self.numer:
                raise DivisionByZeroError()
            return _from_coprime(self.denom, self.numer) ** (-exponent)
        # powers of a coprime pair stay coprime and monic
        return RatFunc(self.numer ** exponent, self.denom ** exponent)

    # -- comparison ---------------------------------------------------------

    def __eq__(self, other):
        if isinstance(other, int):
            other = RatFunc(self.ring(other % self.p), self.ring.one)
        if not isinstance(other, RatFunc):
            return NotImplemented
        return (
            self.ring == other.ring
            and self.numer == other.numer
            and self.denom == other.denom
        )

    def __ne__(self, other):
        result = self.__eq__(other)
        return result if result is NotImplemented else not result

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.numer, self.denom))
        return self._hash

    def __bool__(self):
        return bool(self.numer)

    def __repr__(self):
        return f"RatFunc({format_ratfunc(self)!r}, p={self.p})"

    def __str__(self):
        return format_ratfunc(self)

    # -- fraction protocol used by the universal-polynomial evaluator --------

    def as_fraction(self) -> Tuple[PolyElement, PolyElement]:
        return self.numer, self.denom

    def from_fraction(self, numer: PolyElement, denom: PolyElement) -> "RatFunc":
        return ratfunc_normalize(numer, denom)


def _from_coprime(numer: PolyElement, denom: PolyElement) -> RatFunc:
    """Canonical form of a pair already known to be coprime."""
    if not denom:
        raise DivisionByZeroError()
    if not numer:
        return RatFunc(numer.ring.zero, numer.ring.one)
    lc = denom.LC
    if lc != denom.ring.domain.one:
        numer = numer.quo_ground(lc)
        denom = denom.quo_ground(lc)
    return RatFunc(numer, denom)


def ratfunc_normalize(num: PolyElement, den: PolyElement) -> RatFunc:
    """
    Return the canonical reduced form of num/den.

    The gcd is cancelled and the denominator is scaled to leading
    coefficient 1 under grlex order.
    """
    if not den:
        raise DivisionByZeroError()
    if not num:
        return RatFunc(num.ring.zero, num.ring.one)
    num, den = num.cancel(den)
    return _from_coprime(num, den)


# -- moving between function fields -----------------------------------------


def _transfer_poly(
    poly: PolyElement,
    target: PolyRing,
    rename: Mapping[str, str],
    scale: int = 1,
) -> PolyElement:
    source_names = ring_names(poly.ring)
    target_index = {name: i for i, name in enumerate(ring_names(target))}
    p = target.domain.mod
    terms: Dict[Tuple[int, ...], int] = {}
    for monom, coeff in poly.iterterms():
        exponents = [0] * target.ngens
        for name, e in zip(source_names, monom):
            if not e:
                continue
            name = rename.get(name, name)
            if name not in target_index:
                raise UnsupportedError(
                    f"variable {name!r} has no counterpart in F_p({', '.join(ring_names(target))})"
                )
            exponents[target_index[name]] += e * scale
        key = tuple(exponents)
        terms[key] = (terms.get(key, 0) + coefficient_int(coeff, p)) % p
    return target.from_dict({k: v for k, v in terms.items() if v})


def transfer(
    f: RatFunc,
    names: Sequence[str],
    rename: Optional[Mapping[str, str]] = None,
) -> RatFunc:
    """
    Re-express ``f`` over F_p(names), optionally renaming variables.

    Renaming must be injective on the variables ``f`` uses.
    """
    target = function_ring(f.p, tuple(names))
    rename = rename or {}
    return _from_coprime(
        _transfer_poly(f.numer, target, rename),
        _transfer_poly(f.denom, target, rename),
    )


def substitute(f: RatFunc, images: Mapping[str, RatFunc]) -> RatFunc:
    """
    Substitute rational functions for the variables of ``f``.

    Every variable of ``f`` needs an image; all images share one field.
    """
    missing = [name for name in f.names if name not in images]
    if missing:
        raise PreconditionError(f"no image given for variables {missing}")
    pairs = [images[name].as_fraction() for name in f.names]
    return ratfunc_normalize(*substitute_fraction(f, pairs))


def substitute_fraction(
    f: RatFunc, pairs: Sequence[Tuple[PolyElement, PolyElement]]
) -> Tuple[PolyElement, PolyElement]:
    """Unreduced numerator/denominator of f evaluated at the given fractions."""
    top_num, top_den = evaluate_fraction(f.numer, pairs)
    bottom_num, bottom_den = evaluate_fraction(f.denom, pairs)
    if not bottom_num:
        raise DivisionByZeroError()
    return top_num * bottom_den, top_den * bottom_num


# -- universal polynomial evaluation ----------------------------------------

# A factored denominator: pairwise coprime monic bases with their exponents.
Factors = List[Tuple[PolyElement, int]]


def _divide_out(
    f: PolyElement, b: PolyElement, limit: Optional[int] = None
) -> Tuple[PolyElement, int]:
    """Divide f by b as often as it goes, at most ``limit`` times."""
    if not f:
        return f, 0
    if b.is_generator:
        index = b.ring.gens.index(b)
        count = min(monom[index] for monom in f.itermonoms())
        if limit is not None:
            count = min(count, limit)
        if count:
            f = f.ring.from_dict(
                {
                    monom[:index] + (monom[index] - count,) + monom[index + 1:]: coeff
                    for monom, coeff in f.iterterms()
                }
            )
        return f, count
    count = 0
    while limit is None or count < limit:
        quotient, remainder = f.div(b)
        if remainder:
            break
        f, count = quotient, count + 1
    return f, count


def _split_monomial(d: PolyElement) -> List[PolyElement]:
    """The variables dividing d, then d with its monomial content removed."""
    ring = d.ring
    content = [min(column) for column in zip(*d.itermonoms())]
    parts = [ring.gens[i] for i, e in enumerate(content) if e]
    if any(content):
        d = ring.from_dict(
            {tuple(a - b for a, b in zip(monom, content)): coeff for monom, coeff in d.iterterms()}
        )
    parts.append(d)
    return parts


def coprime_basis(polys: Sequence[PolyElement]) -> List[PolyElement]:
    """
    Pairwise coprime monic polynomials such that every nonzero input is a
    constant times a product of their powers.
    """
    basis: List[PolyElement] = []
    pending = [part for f in polys if f for part in _split_monomial(f)]
    while pending:
        g = pending.pop()
        for i, b in enumerate(basis):
            g, _ = _divide_out(g, b)
            if g.is_ground:
                break
            h = g.gcd(b)
            if not h.is_ground:
                del basis[i]
                pending.extend((h, b.exquo(h), g.exquo(h)))
                break
        else:
            if not g.is_ground:
                basis.append(g.monic())
    return basis


def _factor_over(d: PolyElement, basis: Sequence[PolyElement]):
    """(unit, exponents) with d = unit * prod basis[j]^exponents[j]."""
    exponents = []
    for b in basis:
        d, k = _divide_out(d, b)
        exponents.append(k)
    if not d.is_ground:
        raise ExactnessViolation(f"{d} does not factor over the denominator basis")
    return d.LC, exponents


def _evidently_irreducible(b: PolyElement) -> bool:
    """True when b has degree 1 in some variable and is primitive in it."""
    ring = b.ring
    for index in range(ring.ngens):
        if b.degree(index) != 1:
            continue
        lead: Dict[Tuple[int, ...], object] = {}
        rest: Dict[Tuple[int, ...], object] = {}
        for monom, coeff in b.iterterms():
            part = lead if monom[index] else rest
            part[monom[:index] + (0,) + monom[index + 1:]] = coeff
        lead_poly, rest_poly = ring.from_dict(lead), ring.from_dict(rest)
        if not rest_poly:
            return lead_poly.is_ground
        if lead_poly.gcd(rest_poly).is_ground:
            return True
    return False


def evaluate_factored(
    poly: PolyElement, pairs: Sequence[Tuple[PolyElement, PolyElement]]
) -> Tuple[PolyElement, Factors]:
    """
    Evaluate ``poly`` (over any GF(p) ring) at fractions n_i/d_i.

    The d_i are factored over a common coprime basis and every basis element
    gets the largest exponent a single term of ``poly`` needs, so the
    returned denominator is the lcm of the term denominators. The numerator
    is not reduced against it.
    """
    if len(pairs) != poly.ring.ngens:
        raise PreconditionError(
            f"expected {poly.ring.ngens} values, got {len(pairs)}"
        )
    target = pairs[0][0].ring
    p = target.domain.mod
    used = sorted({i for monom in poly.itermonoms() for i, e in enumerate(monom) if e})
    basis = coprime_basis([pairs[i][1] for i in used])

    numers: Dict[int, PolyElement] = {}
    weights: Dict[int, List[int]] = {}
    for i in used:
        numer, denom = pairs[i]
        unit, weights[i] = _factor_over(denom, basis)
        numers[i] = numer if unit == target.domain.one else numer.quo_ground(unit)

    terms = []
    exponents = [0] * len(basis)
    for monom, coeff in poly.iterterms():
        c = coefficient_int(coeff, p)
        if not c:
            continue
        weight = [0] * len(basis)
        for i in used:
            if monom[i]:
                for j, k in enumerate(weights[i]):
                    weight[j] += monom[i] * k
        exponents = [max(a, b) for a, b in zip(exponents, weight)]
        terms.append((monom, c, weight))

    powers: Dict[Tuple[str, int, int], PolyElement] = {}

    def power(kind: str, index: int, base: PolyElement, k: int) -> PolyElement:
        key = (kind, index, k)
        if key not in powers:
            powers[key] = base ** k
        return powers[key]

    total = target.zero
    for monom, c, weight in terms:
        term = target(c)
        for i in used:
            if monom[i]:
                term *= power("n", i, numers[i], monom[i])
        for j, b in enumerate(basis):
            if exponents[j] > weight[j]:
                term *= power("b", j, b, exponents[j] - weight[j])
        total += term
    return total, [(b, e) for b, e in zip(basis, exponents) if e]


def expand_factors(factors: Factors, ring: PolyRing) -> PolyElement:
    denom = ring.one
    for b, e in factors:
        denom *= b ** e
    return denom


def cancel_factors(numer: PolyElement, factors: Factors) -> Tuple[PolyElement, PolyElement]:
    """
    Reduce numer / prod b^e to a coprime pair.

    Bases of degree 1 in some variable and primitive in it are irreducible
    and only need exact division; other bases are split by a gcd with the
    numerator when they share a factor with it.
    """
    ring = numer.ring
    if not numer:
        return numer, ring.one
    denom = ring.one
    pending = [(b, e) for b, e in factors if e]
    while pending:
        b, e = pending.pop()
        numer, k = _divide_out(numer, b, e)
        e -= k
        if e and not _evidently_irreducible(b):
            h = numer.gcd(b)
            if not h.is_ground:
                pending.extend(((h, e), (b.exquo(h), e)))
                continue
        if e:
            denom *= b ** e
    return numer, denom


def evaluate_fraction(
    poly: PolyElement, pairs: Sequence[Tuple[PolyElement, PolyElement]]
) -> Tuple[PolyElement, PolyElement]:
    """Unreduced numerator and lcm denominator of ``poly`` at fractions n_i/d_i."""
    numer, factors = evaluate_factored(poly, pairs)
    return numer, expand_factors(factors, numer.ring)


def evaluate_polynomial(poly: PolyElement, values: Sequence):
    """
    Evaluate ``poly`` at ring elements following the fraction protocol.

    ``values`` are RatFunc (result is canonical) or any element type with
    ``as_fraction``/``from_fraction`` such as dilatation elements.
    """
    if not values:
        raise PreconditionError("cannot evaluate without values")
    pairs = [v.as_fraction() for v in values]
    numer, factors = evaluate_factored(poly, pairs)
    head = values[0]
    if isinstance(head, RatFunc):
        return _from_coprime(*cancel_factors(numer, factors))
    return head.from_fraction(numer, expand_factors(factors, numer.ring))


# -- derivations and p-th powers --------------------------------------------


def derivative(f: RatFunc, var: str) -> RatFunc:
    """Partial derivative of ``f`` in ``var`` by the quotient rule."""
    names = f.names
    if var not in names:
        raise UnsupportedError(f"unknown variable {var!r}; expected one of {names}")
    gen = f.ring.gens[names.index(var)]
    numer = f.numer.diff(gen) * f.denom - f.numer * f.denom.diff(gen)
    return ratfunc_normalize(numer, f.denom ** 2)


def is_pth_power(f: RatFunc) -> bool:
    """
    Decide whether f = g^p in its own field.

    Only defined for one non-constant variable, where a vanishing derivative
    characterises p-th powers.
    """
    used = f.used_variables()
    if len(used) > 1:
        raise UnsupportedError(
            f"p-th power test needs a single variable, {f} uses {', '.join(used)}"
        )
    if not used:
        return True
    return not derivative(f, used[0])


def _root_poly(poly: PolyElement, p: int) -> PolyElement:
    return poly.ring.from_dict(
        {tuple(e // p for e in monom): coeff for monom, coeff in poly.iterterms()}
    )


def pth_root(f: RatFunc) -> RatFunc:
    """
    Return g with g^p = f.

    Coefficients of F_p are fixed by Frobenius, so the root divides every
    exponent by p. The result is canonical because f is.
    """
    if not is_pth_power(f):
        raise NotPthPowerError(f"not a p-th power: {f}")
    p = f.p
    return RatFunc(_root_poly(f.numer, p), _root_poly(f.denom, p))


def frobenius_power(f: RatFunc) -> RatFunc:
    """f^p computed by scaling exponents; valid in characteristic p."""
    p = f.p

    def scale(poly):
        return poly.ring.from_dict(
            {tuple(e * p for e in monom): coeff for monom, coeff in poly.iterterms()}
        )

    return RatFunc(scale(f.numer), scale(f.denom))


# -- radicial extension -----------------------------------------------------


class RadicialElem:
    """
    Element of F_p(x)^{1/p}, stored as a RatFunc in y where y^p = x.

    F_p(x) sits inside through ``embed`` (x -> y^p).
    """

    __slots__ = ("base",)

    def __init__(self, base: RatFunc):
        if base.names != RADICIAL_VARIABLES:
            raise PreconditionError(f"radicial elements live in F_p(y), got {base.names}")
        self.base = base

    @classmethod
    def zero(cls, p: int) -> "RadicialElem":
        return cls(RatFunc.zero(p, RADICIAL_VARIABLES))

    @classmethod
    def embed(cls, f: RatFunc) -> "RadicialElem":
        """Image of f in F_p(x) under x -> y^p."""
        _require_residue(f)
        target = function_ring(f.p, RADICIAL_VARIABLES)
        rename = {"x": "y"}
        return cls(
            RatFunc(
                _transfer_poly(f.numer, target, rename, scale=f.p),
                _transfer_poly(f.denom, target, rename, scale=f.p),
            )
        )

    @property
    def p(self) -> int:
        return self.base.p

    @property
    def degree(self) -> int:
        return self.base.p

    def descends(self) -> bool:
        """True when the element already lies in F_p(x)."""
        p = self.p
        return all(
            monom[0] % p == 0
            for poly in (self.base.numer, self.base.denom)
            for monom in poly.itermonoms()
        )

    def descend(self) -> RatFunc:
        if not self.descends():
            raise PreconditionError(f"{self} does not lie in F_p(x)")
        root = pth_root(self.base)
        return transfer(root, RESIDUE_VARIABLES, {"y": "x"})

    def _coerce(self, other):
        if isinstance(other, RadicialElem):
            return other.base
        if isinstance(other, RatFunc):
            return RadicialElem.embed(other).base
        if isinstance(other, int):
            return other
        return None

    def __add__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return RadicialElem(self.base + other)

    __radd__ = __add__

    def __sub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return RadicialElem(self.base - other)

    def __neg__(self):
        return RadicialElem(-self.base)

    def __mul__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return RadicialElem(self.base * other)

    __rmul__ = __mul__

    def __pow__(self, exponent: int):
        return RadicialElem(self.base ** exponent)

    def __eq__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self.base == other

    def __hash__(self):
        return hash(("radicial", self.base))

    def __bool__(self):
        return bool(self.base)

    def __repr__(self):
        return f"RadicialElem({format_ratfunc(self.base)!r}, p={self.p})"

    def __str__(self):
        return format_ratfunc(self.base)


def _require_residue(f: RatFunc) -> None:
    extra = set(f.used_variables()) - set(RESIDUE_VARIABLES)
    if extra:
        raise PreconditionError(f"{f} is not in F_p(x): uses {', '.join(sorted(extra))}")


def radicial_root(f: RatFunc) -> RadicialElem:
    """
    p-th root of f in F_p(x)^{1/p}: f with x replaced by y.

    radicial_root(f) ** p == RadicialElem.embed(f).
    """
    _require_residue(f)
    return RadicialElem(transfer(f, RADICIAL_VARIABLES, {"x": "y"}))


def as_residue(f: RatFunc) -> RatFunc:
    """View an element using only x as an element of F_p(x)."""
    _require_residue(f)
    if f.names == RESIDUE_VARIABLES:
        return f
    return transfer(f, RESIDUE_VARIABLES)


# -- formatting --------------------------------------------------------------


def _format_poly(poly: PolyElement, p: int) -> str:
    names = ring_names(poly.ring)
    if not poly:
        return "0"
    parts = []
    for monom, coeff in poly.terms():
        c = coefficient_int(coeff, p)
        factors = []
        for name, e in zip(names, monom):
            if e == 1:
                factors.append(name)
            elif e:
                factors.append(f"{name}^{e}")
        if not factors:
            parts.append(str(c))
        elif c == 1:
            parts.append("*".join(factors))
        else:
            parts.append("*".join([str(c)] + factors))
    return " + ".join(parts)


def format_ratfunc(f: RatFunc) -> str:
    """
    Canonical expression string with coefficients in 0..p-1.

    The string parses back to an equal RatFunc.
    """
    numer = _format_poly(f.numer, f.p)
    if f.denom == f.ring.one:
        return numer
    denom = _format_poly(f.denom, f.p)
    if len(f.numer) > 1:
        numer = f"({numer})"
    if len(f.denom) > 1 or "*" in denom:
        denom = f"({denom})"
    return f"{numer}/{denom}"
