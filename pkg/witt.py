# witt.py

"""
Truncated Witt vectors W_s over rings of characteristic p.

A vector is written a = (a_{s-1}, ..., a_0) with a_i of weight p^i, so the
leftmost entry is the deepest one; Verschiebung prepends a zero and pr_t
keeps the t leftmost entries. Arithmetic evaluates universal polynomials,
built once per (p, s) over QQ from the ghost components, checked integral
and reduced mod p.

Components are RatFunc (local field, residue field) or any element type
that follows the fraction protocol of base_algebra (dilatation elements).
"""

import logging
import threading
from dataclasses import dataclass
from typing import Dict, List, Optional, Sequence, Tuple

from sympy.polys.domains import QQ
from sympy.polys.orderings import grlex
from sympy.polys.rings import PolyElement, PolyRing

from base_algebra import (
    RatFunc,
    evaluate_polynomial,
    frobenius_power,
    prime_field,
)
from errors import PreconditionError, UnsupportedError
from local_field import INFINITY, Valuation, fraction_valuation

logger = logging.getLogger(__name__)

# Largest supported Witt length per prime.
WITT_LENGTH_CAPS = {2: 3, 3: 3, 5: 2, 7: 2}


def check_witt_size(p: int, s: int) -> None:
    prime_field(p)
    if s < 0:
        raise PreconditionError(f"Witt length must be non-negative, got {s}")
    cap = WITT_LENGTH_CAPS[p]
    if s > cap:
        raise UnsupportedError(f"Witt length {s} exceeds the cap {cap} for p={p}")


def ord_p(m: int, p: int) -> int:
    """p-adic valuation of a positive integer."""
    if m <= 0:
        raise PreconditionError(f"ord_p needs a positive integer, got {m}")
    count = 0
    while m % p == 0:
        m //= p
        count += 1
    return count


def floor_identities_hold(m: int, p: int, r: int) -> bool:
    """
    Check [m/p^r] = [(m-1)/p^r] + 1 iff p^r | m, and [[m/p^r]/p] = [m/p^{r+1}].
    """
    q = p ** r
    step = (m // q == (m - 1) // q + 1) == (m % q == 0)
    nested = (m // q) // p == m // (q * p)
    return step and nested


# -- universal polynomials ---------------------------------------------------


@dataclass(frozen=True)
class UniversalWittTables:
    """
    Sum, difference and negation polynomials for W_s over F_p.

    Variables X_k, Y_k index tuple positions: X_0 is the leftmost entry
    (component a_{s-1}). ``integral_*`` keep the integer versions.
    """

    p: int
    length: int
    sum_polys: Tuple[PolyElement, ...]
    difference_polys: Tuple[PolyElement, ...]
    negation_polys: Tuple[PolyElement, ...]
    integral_sums: Tuple[PolyElement, ...]
    integral_negations: Tuple[PolyElement, ...]


def _ghost(gens: Sequence[PolyElement], k: int, p: int) -> PolyElement:
    return sum((p ** j * gens[j] ** (p ** (k - j)) for j in range(k + 1)), gens[0].ring.zero)


def _solve_ghost(targets: List[PolyElement], p: int) -> List[PolyElement]:
    """Witt components whose ghost components are ``targets``."""
    components: List[PolyElement] = []
    for k, target in enumerate(targets):
        acc = target
        for j, c in enumerate(components):
            acc -= p ** j * c ** (p ** (k - j))
        components.append(acc.mul_ground(QQ(1, p ** k)))
    return components


def _assert_integral(poly: PolyElement, label: str) -> None:
    for coeff in poly.itercoeffs():
        if QQ.denom(coeff) != 1:
            raise UnsupportedError(f"{label} has a non-integral coefficient {coeff}")


def _reduce_mod_p(poly: PolyElement, target: PolyRing) -> PolyElement:
    p = target.domain.mod
    terms = {monom: int(QQ.numer(c)) % p for monom, c in poly.iterterms()}
    return target.from_dict({m: c for m, c in terms.items() if c})


def _ghost_rings(p: int, s: int) -> Tuple[PolyRing, PolyRing]:
    names = [f"X{k}" for k in range(s)] + [f"Y{k}" for k in range(s)]
    return PolyRing(names, QQ, grlex), PolyRing(names, prime_field(p), grlex)


def _build_tables(p: int, s: int) -> UniversalWittTables:
    if not s:
        return UniversalWittTables(p, 0, (), (), (), (), ())
    rational, modular = _ghost_rings(p, s)
    xs, ys = rational.gens[:s], rational.gens[s:]
    sums = _solve_ghost([_ghost(xs, k, p) + _ghost(ys, k, p) for k in range(s)], p)
    diffs = _solve_ghost([_ghost(xs, k, p) - _ghost(ys, k, p) for k in range(s)], p)
    negs = _solve_ghost([-_ghost(xs, k, p) for k in range(s)], p)
    for label, polys in (("sum", sums), ("difference", diffs), ("negation", negs)):
        for k, poly in enumerate(polys):
            _assert_integral(poly, f"{label} polynomial {k} (p={p}, s={s})")
    return UniversalWittTables(
        p=p,
        length=s,
        sum_polys=tuple(_reduce_mod_p(poly, modular) for poly in sums),
        difference_polys=tuple(_reduce_mod_p(poly, modular) for poly in diffs),
        negation_polys=tuple(_reduce_mod_p(poly, modular) for poly in negs),
        integral_sums=tuple(sums),
        integral_negations=tuple(negs),
    )


# Process-wide caches, filled once per key under the lock.
_tables_cache: Dict[Tuple[int, int], UniversalWittTables] = {}
_q_cache: Dict[Tuple[int, int], "QPolynomials"] = {}
_cache_lock = threading.Lock()


def build_universal_tables(p: int, s: int) -> UniversalWittTables:
    """Get or build the universal Witt tables for (p, s)."""
    check_witt_size(p, s)
    key = (p, s)
    tables = _tables_cache.get(key)
    if tables is None:
        with _cache_lock:
            tables = _tables_cache.get(key)
            if tables is None:
                logger.debug("building universal Witt tables for p=%d, s=%d", p, s)
                tables = _build_tables(p, s)
                _tables_cache[key] = tables
    return tables


# -- Q polynomials -------------------------------------------------------------


@dataclass(frozen=True)
class QPolynomials:
    """
    Q_d(T, S) for 0 <= d <= s-1, indexed by component weight.

    Variables are T_0..T_{s-1}, S_0..S_{s-1}; ``integral[d]`` lives over QQ
    with integer coefficients, ``reduced[d]`` over F_p.
    """

    p: int
    length: int
    integral: Tuple[PolyElement, ...]
    reduced: Tuple[PolyElement, ...]

    def check_lemmas(self) -> Dict[str, bool]:
        """Ideal membership and homogeneity of every Q_d."""
        p, s = self.p, self.length
        results = {
            "top_is_TS": True,
            "in_S_ideal": True,
            "linear_part": True,
            "homogeneous": True,
        }
        if s == 0:
            return results
        ring = self.integral[0].ring
        t_gens, s_gens = ring.gens[:s], ring.gens[s:]
        results["top_is_TS"] = self.integral[s - 1] == t_gens[s - 1] * s_gens[s - 1]
        for d, q in enumerate(self.integral):
            linear = sum(
                (t_gens[i] ** (p ** (i - d)) * s_gens[i] for i in range(d, s)),
                ring.zero,
            )
            for monom in q.itermonoms():
                s_degree = sum(monom[s:])
                weight = sum(monom[i] * p ** (s - 1 - i) for i in range(s))
                if s_degree == 0:
                    results["in_S_ideal"] = False
                if weight != p ** (s - 1 - d):
                    results["homogeneous"] = False
            for monom in (q - linear).itermonoms():
                if sum(monom[s:]) < 2:
                    results["linear_part"] = False
        return results


def _build_q(p: int, s: int) -> QPolynomials:
    if not s:
        return QPolynomials(p, 0, (), ())
    names = [f"T{i}" for i in range(s)] + [f"S{i}" for i in range(s)]
    rational = PolyRing(names, QQ, grlex)
    modular = PolyRing(names, prime_field(p), grlex)
    T, S = rational.gens[:s], rational.gens[s:]
    q: Dict[int, PolyElement] = {}
    for d in range(s - 1, -1, -1):
        acc = rational.zero
        for i in range(d, s):
            e = p ** (i - d)
            acc += p ** (s - 1 - i) * T[i] ** e * ((1 + S[i]) ** e - 1)
        for i in range(d + 1, s):
            acc -= p ** (s - 1 - i) * q[i] ** (p ** (i - d))
        q[d] = acc.mul_ground(QQ(1, p ** (s - 1 - d)))
        _assert_integral(q[d], f"Q_{d} (p={p}, s={s})")
    integral = tuple(q[d] for d in range(s))
    return QPolynomials(p, s, integral, tuple(_reduce_mod_p(poly, modular) for poly in integral))


def q_polys(p: int, s: int) -> QPolynomials:
    """Get or build the Q polynomials for (p, s), solved top-down from d = s-1."""
    check_witt_size(p, s)
    key = (p, s)
    polys = _q_cache.get(key)
    if polys is None:
        with _cache_lock:
            polys = _q_cache.get(key)
            if polys is None:
                logger.debug("building Q polynomials for p=%d, s=%d", p, s)
                polys = _build_q(p, s)
                _q_cache[key] = polys
    return polys


# -- Witt vectors ------------------------------------------------------------------


@dataclass(frozen=True)
class WittVec:
    """a = (a_{s-1}, ..., a_0) over a ring of characteristic p."""

    p: int
    components: Tuple

    @property
    def length(self) -> int:
        return len(self.components)

    def component(self, i: int):
        """a_i, the entry of weight p^i."""
        if not 0 <= i < self.length:
            raise PreconditionError(f"no component a_{i} in a vector of length {self.length}")
        return self.components[self.length - 1 - i]

    def zero_component(self):
        if not self.components:
            raise PreconditionError("a length-0 vector has no coefficient ring")
        return self.components[0] * 0

    def is_zero(self) -> bool:
        return not any(self.components)

    def __add__(self, other):
        return witt_add(self, other)

    def __sub__(self, other):
        return witt_sub(self, other)

    def __neg__(self):
        return witt_neg(self)

    def __str__(self):
        return "(" + ", ".join(str(c) for c in self.components) + ")"


def witt_vector(p: int, components: Sequence) -> WittVec:
    """Build a vector from entries listed as (a_{s-1}, ..., a_0)."""
    return WittVec(p, tuple(components))


def witt_zero(p: int, s: int, zero) -> WittVec:
    return WittVec(p, (zero,) * s)


def single_component(p: int, s: int, i: int, value) -> WittVec:
    """The vector whose only nonzero entry is a_i = value."""
    zero = value * 0
    components = [zero] * s
    components[s - 1 - i] = value
    return WittVec(p, tuple(components))


def _check_compatible(a: WittVec, b: WittVec) -> None:
    if a.p != b.p:
        raise PreconditionError(f"Witt vectors over different primes {a.p} and {b.p}")
    if a.length != b.length:
        raise PreconditionError(f"length mismatch: {a.length} != {b.length}")


def _apply(polys: Sequence[PolyElement], p: int, values: List) -> WittVec:
    return WittVec(p, tuple(evaluate_polynomial(poly, values) for poly in polys))


def witt_add(a: WittVec, b: WittVec) -> WittVec:
    _check_compatible(a, b)
    if b.is_zero():
        return a
    if a.is_zero():
        return b
    tables = build_universal_tables(a.p, a.length)
    return _apply(tables.sum_polys, a.p, list(a.components) + list(b.components))


def witt_sub(a: WittVec, b: WittVec) -> WittVec:
    _check_compatible(a, b)
    if b.is_zero():
        return a
    tables = build_universal_tables(a.p, a.length)
    return _apply(tables.difference_polys, a.p, list(a.components) + list(b.components))


def witt_neg(a: WittVec) -> WittVec:
    if a.is_zero():
        return a
    tables = build_universal_tables(a.p, a.length)
    values = list(a.components) * 2
    return _apply(tables.negation_polys, a.p, values)


def _component_power(c, p: int):
    if isinstance(c, RatFunc):
        return frobenius_power(c)
    return c ** p


def frobenius(a: WittVec) -> WittVec:
    """F: componentwise p-th power."""
    return WittVec(a.p, tuple(_component_power(c, a.p) for c in a.components))


def frobenius_minus_one(b: WittVec) -> WittVec:
    """(F - 1)(b)."""
    return witt_sub(frobenius(b), b)


def verschiebung(a: WittVec, times: int = 1, zero=None) -> WittVec:
    """V^times: prepend zeros. ``zero`` is required when ``a`` is empty."""
    if zero is None:
        zero = a.zero_component()
    return WittVec(a.p, (zero,) * times + a.components)


def project(a: WittVec, t: int) -> WittVec:
    """pr_t: keep the t leftmost entries."""
    if not 0 <= t <= a.length:
        raise PreconditionError(f"pr_{t} undefined on W_{a.length}")
    return WittVec(a.p, a.components[:t])


def component_valuation(c) -> Valuation:
    if isinstance(c, RatFunc):
        return fraction_valuation(c.numer, c.denom)
    return fraction_valuation(*c.as_fraction())


def weighted_valuations(a: WittVec) -> List[Valuation]:
    """p^i * ord(a_i) for i = 0..s-1 (index i = weight exponent)."""
    return [a.p ** i * component_valuation(a.component(i)) for i in range(a.length)]


def ord_w(a: WittVec) -> Valuation:
    """ord_K(a) = min_i p^i ord_K(a_i); INFINITY for the zero vector."""
    return min(weighted_valuations(a), default=INFINITY)


def in_fil(a: WittVec, n: int) -> bool:
    """a in fil_n W_s(K): ord_K(a) >= -n."""
    if n < 0:
        raise PreconditionError(f"filtration index must be >= 0, got {n}")
    return ord_w(a) >= -n


def in_fil_r(a: WittVec, n: int, r: int) -> bool:
    """a in fil_n^(r) = fil_[n/p^r]."""
    if n < 0 or r < 0:
        raise PreconditionError(f"need n >= 0 and r >= 0, got n={n}, r={r}")
    return ord_w(a) >= -(n // a.p ** r)


def split_length(p: int, s: int, m: int, r: int = 0) -> int:
    """s'' = max(0, min(ord_p m, s + r) - r); equals s' = min(ord_p m, s) for r = 0."""
    return max(0, min(ord_p(m, p), s + r) - r)


def prime_bound(p: int, s: int, m: int, i: int, r: int = 0) -> int:
    """Lower bound on p^i ord(a_i) for a in fil'^(r)_m W_s."""
    q = p ** r
    if i < split_length(p, s, m, r):
        return -(m // q)
    return -((m - 1) // q)


def dprime_bound(p: int, s: int, m: int, i: int, r: int = 0) -> int:
    """Lower bound on p^i ord(a_i) for a in fil''^(r)_m W_s."""
    q = p ** r
    if i < split_length(p, s, m, r):
        return -((m // p) // q)
    return -(((m - 1) // p) // q)


def _componentwise(a: WittVec, bound) -> bool:
    return all(v >= bound(i) for i, v in enumerate(weighted_valuations(a)))


def in_fil_prime_r(a: WittVec, m: int, r: int) -> bool:
    """a in fil'^(r)_m W_s(K) = fil^(r)_{m-1} W_s + V^{s-s''} fil^(r)_m W_{s''}."""
    if m < 1 or r < 0:
        raise PreconditionError(f"need m >= 1 and r >= 0, got m={m}, r={r}")
    return _componentwise(a, lambda i: prime_bound(a.p, a.length, m, i, r))


def in_fil_dprime_r(a: WittVec, m: int, r: int) -> bool:
    """a in fil''^(r)_m W_s(K) = fil^(r)_[(m-1)/p] W_s + V^{s-s''} fil^(r)_[m/p] W_{s''}."""
    if m < 1 or r < 0:
        raise PreconditionError(f"need m >= 1 and r >= 0, got m={m}, r={r}")
    return _componentwise(a, lambda i: dprime_bound(a.p, a.length, m, i, r))


def in_fil_prime(a: WittVec, m: int) -> bool:
    """a in fil'_m W_s(K) = fil_{m-1} W_s + V^{s-s'} fil_m W_{s'}."""
    return in_fil_prime_r(a, m, 0)


def in_fil_dprime(a: WittVec, m: int) -> bool:
    """a in fil''_m W_s(K) = fil_[(m-1)/p] W_s + V^{s-s'} fil_[m/p] W_{s'}."""
    return in_fil_dprime_r(a, m, 0)


def least_prime_level(a: WittVec) -> int:
    """The least m >= 1 with a in fil'_m."""
    v = ord_w(a)
    top = 1 if v == INFINITY or v >= 0 else 1 - v
    for m in range(1, top + 1):
        if in_fil_prime(a, m):
            return m
    # fil_n is contained in fil'_{n+1}
    raise PreconditionError(f"{a} is in no fil'_m with m <= {top}")


def least_dprime_level(a: WittVec) -> int:
    """The least m >= 1 with a in fil''_m."""
    v = ord_w(a)
    # fil_n is contained in fil''_{pn+1}
    top = 1 if v == INFINITY or v >= 0 else 1 - a.p * v
    for m in range(1, top + 1):
        if in_fil_dprime(a, m):
            return m
    raise PreconditionError(f"{a} is in no fil''_m with m <= {top}")


# -- Q identity ----------------------------------------------------------------


def evaluate_q(x: WittVec, y: WittVec) -> WittVec:
    """(Q_{s-1}(x, y), ..., Q_0(x, y)) with T_i = x_i and S_i = y_i."""
    _check_compatible(x, y)
    s = x.length
    if not s:
        return x
    polys = q_polys(x.p, s)
    values = [x.component(i) for i in range(s)] + [y.component(i) for i in range(s)]
    return WittVec(
        x.p,
        tuple(evaluate_polynomial(polys.reduced[d], values) for d in range(s - 1, -1, -1)),
    )


def scaled_vector(x: WittVec, y: WittVec) -> WittVec:
    """x' with x'_i = x_i (1 + y_i)."""
    _check_compatible(x, y)
    return WittVec(x.p, tuple(a * (b + 1) for a, b in zip(x.components, y.components)))


def q_ideal_lemmas(p: int, s: int) -> Dict[str, bool]:
    """Ideal membership and homogeneity checks of the Q polynomials for (p, s)."""
    return q_polys(p, s).check_lemmas()
