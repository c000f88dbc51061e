# verification.py

"""
Deterministic verification suites.

    qpolys      Q polynomial integrality, ideal and homogeneity lemmas, and
                v - u = Q(u, b) on random Witt vectors for every (p, s)
    lemmas      filtration laws (closure of fil' and fil'' under addition
                included), floor identities, Frobenius valuations, the
                unit-ratio lemma and the valuation bounds on random vectors
    crosscheck  conductor sanity, the character corpus (cform against the
                dilatation oracle, valuation bounds and ord_t(R) = 0 at the
                conductor), twist invariance, the divisor-level example and
                the support and bound laws on a global corpus

Every suite draws from one ``random.Random(seed)``, so results only depend
on the seed and the case count.
"""

import logging
import random
from dataclasses import dataclass, field
from typing import Callable, Dict, List, Optional, Sequence, Tuple

from base_algebra import (
    GLOBAL_VARIABLES,
    LOCAL_VARIABLES,
    RESIDUE_VARIABLES,
    SUPPORTED_PRIMES,
    RatFunc,
)
from conductors import (
    Character,
    analyze,
    perfect_residue_swan,
    swan_conductor,
    total_dimension,
)
from dilatation import (
    as_reduction,
    check_unit_ratio_lemma,
    check_valuation_lemmas,
    geometric_cform,
)
from errors import RamificationError
from expression_parser import parse_expression
from local_field import INFINITY, monomial, uniformizer
from snc_global import GlobalCharacter, dt_divisor, global_cform, swan_divisor, swap_coordinates
from witt import (
    WITT_LENGTH_CAPS,
    WittVec,
    evaluate_q,
    floor_identities_hold,
    frobenius,
    frobenius_minus_one,
    in_fil,
    in_fil_dprime,
    in_fil_dprime_r,
    in_fil_prime,
    in_fil_prime_r,
    in_fil_r,
    least_dprime_level,
    least_prime_level,
    ord_w,
    project,
    q_ideal_lemmas,
    scaled_vector,
    witt_add,
    witt_sub,
)

logger = logging.getLogger(__name__)

SUITES = ("lemmas", "qpolys", "crosscheck")
DEFAULT_SEED = 0
DEFAULT_CASES = {"lemmas": 500, "qpolys": 200, "crosscheck": 50}

# Characters over F_p(x)((t)) with p in {2, 3}, s <= 2 and dt <= 6; components
# are listed leftmost first. The first block has (p, dt) = (2, 2).
CORPUS: Tuple[Tuple[int, Tuple[str, ...]], ...] = (
    (2, ("x/t^2",)),
    (2, ("x^2/t^2",)),
    (2, ("(x^3+x)/t^2",)),
    (2, ("1/(x*t^2)",)),
    (2, ("x/t^2 + 1/t",)),
    (2, ("(x+1)/t^2 + x/t",)),
    (2, ("x^3/t^2 + t",)),
    (2, ("x/(t^2*(1+x*t))",)),
    (2, ("(x^2+x)/t^2",)),
    (2, ("x^5/t^2 + x/t",)),
    (2, ("1/t",)),
    (2, ("x/t",)),
    (2, ("x/t + t",)),
    (2, ("x", "x/t^2")),
    (2, ("1/(1+t)", "x^2/t^2 + 1/t")),
    (2, ("x*t", "x/t^2")),
    (2, ("x/t^3",)),
    (2, ("1/t^3",)),
    (2, ("x/t^4",)),
    (2, ("x^2/t^4",)),
    (2, ("1/t^5",)),
    (2, ("x/t^5",)),
    (2, ("(x+1)/t^3 + x^2/t",)),
    (2, ("x^3/t^5",)),
    (2, ("1/(x*t^3)",)),
    (2, ("x^2/t^3",)),
    (2, ("(x^2+1)/t^3",)),
    (2, ("x/t", "1/t^3")),
    (2, ("1/t", "0")),
    (2, ("x/t", "0")),
    (2, ("0", "x/t^3")),
    (2, ("x/t", "x/t^2")),
    (2, ("x/t^2", "0")),
    (2, ("t", "1/t")),
    (2, ("x", "x/t^3")),
    (3, ("x/t^3",)),
    (3, ("x/t",)),
    (3, ("1/t",)),
    (3, ("x/t^2",)),
    (3, ("1/t^2",)),
    (3, ("x^2/t^4",)),
    (3, ("x/t^4 + 1/t",)),
    (3, ("(x+1)/t^5",)),
    (3, ("x^3/t^3 + x/t",)),
    (3, ("1/(x*t^2)",)),
    (3, ("x/t^3 + 1/t^2",)),
    (3, ("2*x/t^5",)),
    (3, ("x^2/t",)),
    (3, ("(x+2)/t^2 + x/t",)),
    (3, ("x^4/t^5",)),
    (3, ("x/t", "0")),
    (3, ("1/t", "0")),
    (3, ("x/t", "1/t")),
    (3, ("0", "x/t^2")),
    (3, ("1/t", "x/t^2")),
)

# Bases for the twist-invariance check: ten corpus entries, s = 2 included.
TWIST_BASES = (0, 1, 11, 13, 16, 19, 28, 35, 41, 52)

# Characters of A^2 - D in (x1, x2), poles only along x1 x2 = 0.
GLOBAL_CORPUS: Tuple[Tuple[int, Tuple[str, ...]], ...] = (
    (2, ("x2/x1^3",)),
    (2, ("1/(x1*x2)",)),
    (2, ("x1/x2^2 + 1/x1",)),
    (2, ("1/(x1*x2*(1 + x1*x2))",)),
    (2, ("x2", "x2/x1^3")),
    (2, ("x1^2 + x2",)),
    (3, ("1/(x1^2*x2^2)",)),
    (3, ("x2/x1^3 + x1/x2",)),
    (3, ("1/x1", "x2/x1^2")),
)


@dataclass
class SuiteResult:
    """Per-check pass/fail counts of one suite run."""

    name: str
    seed: int
    cases: int
    checks: Dict[str, Dict[str, int]] = field(default_factory=dict)
    failures: List[str] = field(default_factory=list)

    def record(self, check: str, ok: bool, detail: str = "") -> bool:
        counts = self.checks.setdefault(check, {"passed": 0, "failed": 0})
        counts["passed" if ok else "failed"] += 1
        if not ok:
            self.failures.append(f"{check}: {detail}" if detail else check)
            logger.debug("%s failed: %s", check, detail)
        return ok

    @property
    def vacuous(self) -> bool:
        return not self.checks

    @property
    def passed(self) -> bool:
        return all(counts["failed"] == 0 for counts in self.checks.values())

    def to_dict(self) -> dict:
        return {
            "suite": self.name,
            "seed": self.seed,
            "cases": self.cases,
            "passed": self.passed,
            "vacuous": self.vacuous,
            "checks": {name: dict(counts) for name, counts in sorted(self.checks.items())},
            "failures": list(self.failures),
        }


def _guarded(
    result: SuiteResult, check: str, fn: Callable[[], Optional[bool]], detail: str
) -> None:
    """
    Run one check; a library error counts as a failure of ``check``.

    Functions that record their own checks return None.
    """
    try:
        ok = fn()
    except RamificationError as exc:
        result.record(check, False, f"{detail}: {exc}")
        return
    if ok is not None:
        result.record(check, ok, detail)


# -- random elements ---------------------------------------------------------------


def random_residue_poly(rng: random.Random, p: int, max_degree: int = 2) -> RatFunc:
    """A random polynomial in F_p[x] of degree <= max_degree."""
    x = RatFunc.gen("x", p, RESIDUE_VARIABLES)
    total = RatFunc.zero(p, RESIDUE_VARIABLES)
    for e in range(max_degree + 1):
        total = total + rng.randrange(p) * x ** e
    return total


def random_local(rng: random.Random, p: int, lowest: int, highest: int = 1) -> RatFunc:
    """Random element of F_p(x)(t) with poles of order <= -lowest."""
    total = RatFunc.zero(p, LOCAL_VARIABLES)
    for e in range(lowest, highest + 1):
        if rng.random() < 0.5:
            total = total + monomial(random_residue_poly(rng, p), e)
    if rng.random() < 0.25:
        x = RatFunc.gen("x", p, LOCAL_VARIABLES)
        total = total / (1 + x * uniformizer(p))
    return total


def random_witt(rng: random.Random, p: int, s: int, depth: int) -> WittVec:
    """Random vector with ord_W >= -depth."""
    components = []
    for i in range(s - 1, -1, -1):
        lowest = -(depth // p ** i)
        components.append(random_local(rng, p, lowest))
    return WittVec(p, tuple(components))


def corpus_characters(limit: Optional[int] = None) -> List[Character]:
    entries = CORPUS if limit is None else CORPUS[:limit]
    return [
        Character.from_components(p, [parse_expression(c, p) for c in components])
        for p, components in entries
    ]


def global_corpus_characters() -> List[GlobalCharacter]:
    return [
        GlobalCharacter.from_components(
            p, [parse_expression(c, p, GLOBAL_VARIABLES) for c in components]
        )
        for p, components in GLOBAL_CORPUS
    ]


# -- qpolys ------------------------------------------------------------------------


def _q_sample(rng: random.Random, p: int, s: int, local: bool) -> WittVec:
    if local:
        return WittVec(p, tuple(random_local(rng, p, -1) for _ in range(s)))
    return WittVec(p, tuple(random_residue_poly(rng, p) for _ in range(s)))


def _qpolys(result: SuiteResult, rng: random.Random, cases: int) -> None:
    for p in SUPPORTED_PRIMES:
        for s in range(1, WITT_LENGTH_CAPS[p] + 1):
            label = f"p={p}, s={s}"
            for name, ok in q_ideal_lemmas(p, s).items():
                result.record(f"q_{name}", ok, label)
            for k in range(cases):
                # every other sample has components in F_p(x)(t)
                x = _q_sample(rng, p, s, bool(k % 2))
                y = _q_sample(rng, p, s, bool(k % 2))
                _guarded(
                    result,
                    "q_identity",
                    lambda: witt_sub(scaled_vector(x, y), x) == evaluate_q(x, y),
                    f"{label}, x={x}, y={y}",
                )


# -- lemmas ------------------------------------------------------------------------


def _floor_identities(result: SuiteResult) -> None:
    ok = all(
        floor_identities_hold(m, p, r)
        for p in SUPPORTED_PRIMES
        for m in range(0, 501)
        for r in range(0, 5)
    )
    result.record("floor_identities", ok)


def _filtration_laws(result: SuiteResult, a: WittVec, rng: random.Random) -> None:
    p, s = a.p, a.length
    v = ord_w(a)
    label = f"a={a}"
    result.record("ord_frobenius", ord_w(frobenius(a)) == (v if v == INFINITY else p * v), label)
    image = frobenius_minus_one(a)
    if v < 0:
        result.record("ord_f_minus_one", ord_w(image) == p * v, label)
    else:
        result.record("ord_f_minus_one", in_fil(image, 0), label)
    n = rng.randrange(0, 3 * p)
    result.record("f_minus_one_preimage", in_fil(image, n) == in_fil(a, n // p), f"{label}, n={n}")
    m = rng.randrange(1, 3 * p)
    result.record(
        "dprime_preimage", in_fil_dprime(a, m) == in_fil_prime(image, m), f"{label}, m={m}"
    )
    result.record("fil0_is_fil_prime1", in_fil(a, 0) == in_fil_prime(a, 1), label)
    result.record(
        "prime_r0",
        in_fil_prime_r(a, m, 0) == in_fil_prime(a, m)
        and in_fil_dprime_r(a, m, 0) == in_fil_dprime(a, m),
        f"{label}, m={m}",
    )
    depth = 0 if v == INFINITY or v >= 0 else int(-v)
    level = least_prime_level(a)
    other = random_witt(rng, p, s, rng.randrange(0, 2 * p + 1))
    total = witt_add(a, other)
    m = max(level, least_prime_level(other))
    result.record("fil_prime_closed", in_fil_prime(total, m), f"{label}, b={other}, m={m}")
    m = max(least_dprime_level(a), least_dprime_level(other))
    result.record("fil_dprime_closed", in_fil_dprime(total, m), f"{label}, b={other}, m={m}")
    for t in range(s + 1):
        b = project(a, t)
        r = s - t
        result.record("pr_fil", in_fil_r(b, depth, r), f"{label}, t={t}")
        result.record("pr_fil_prime", in_fil_prime_r(b, level, r), f"{label}, t={t}")
        if in_fil_dprime(a, level):
            result.record("pr_fil_dprime", in_fil_dprime_r(b, level, r), f"{label}, t={t}")
        padded = WittVec(p, b.components + (a.zero_component(),) * r)
        result.record("pr_witness", in_fil(padded, depth), f"{label}, t={t}")


def _lemmas(result: SuiteResult, rng: random.Random, cases: int) -> None:
    _floor_identities(result)
    for _ in range(cases):
        p = rng.choice((2, 3))
        s = rng.randrange(1, 3)
        a = random_witt(rng, p, s, rng.randrange(0, 2 * p + 1))
        _guarded(result, "filtration_laws", lambda: _filtration_laws(result, a, rng), f"a={a}")
        element = random_local(rng, p, -3)
        if element:
            r = rng.randrange(1, 4)
            _guarded(
                result,
                "unit_ratio_lemma",
                lambda: check_unit_ratio_lemma(element, r).passed,
                f"a={element}, r={r}",
            )
        if rng.random() < 0.1:
            m = least_prime_level(a)
            r = rng.randrange(1, m + 1) if m > 1 else 1
            _guarded(
                result,
                "valuation_lemmas",
                lambda: check_valuation_lemmas(a, r, m).passed,
                f"a={a}, r={r}, m={m}",
            )


# -- crosscheck --------------------------------------------------------------------


def _sanity(result: SuiteResult) -> None:
    for p in (2, 3, 5):
        t = uniformizer(p)
        for n in range(1, 21):
            if n % p == 0:
                continue
            chi = Character.from_components(p, [t ** -n])
            result.record("sanity_sw", swan_conductor(chi)[0] == n, f"p={p}, n={n}")
            result.record("sanity_dt", total_dimension(chi)[0] == n + 1, f"p={p}, n={n}")
        chi = Character.from_components(p, [t ** -p])
        result.record("sanity_sw_p", swan_conductor(chi)[0] == 1, f"p={p}")
        result.record("sanity_perfect", perfect_residue_swan(chi) == 1, f"p={p}")
    t = uniformizer(2)
    for n in range(1, 10, 2):
        chi = Character.from_components(2, [t ** -n, RatFunc.zero(2, LOCAL_VARIABLES)])
        result.record("sanity_sw_length2", swan_conductor(chi)[0] == 2 * n, f"n={n}")


def _integral_sanity(result: SuiteResult, rng: random.Random) -> None:
    for _ in range(50):
        p = rng.choice((2, 3))
        a = random_local(rng, p, 0)
        chi = Character.from_components(p, [a])
        result.record("sanity_integral", swan_conductor(chi)[0] == 0, f"a={a}")


def _cross_oracle(result: SuiteResult, chi: Character, label: str) -> None:
    report = analyze(chi)
    result.record("compatibility", True, label)
    geometric = geometric_cform(chi)
    result.record("cform_matches_geometric", geometric == report.cform, label)
    if report.dt >= 2:
        form = as_reduction(report.dt_representative, report.dt)
        result.record("boundary_order", form.order == 0, f"{label}: ord_t(R) = {form.order}")
        for r in range(1, report.dt + 1):
            lemmas = check_valuation_lemmas(report.dt_representative, r, report.dt)
            result.record("corpus_valuation_lemmas", lemmas.passed, f"{label}, r={r}: {lemmas.failures}")
    if chi.length == 1 and "x" not in chi.representative.component(0).used_variables():
        result.record("perfect_residue_swan", perfect_residue_swan(chi) == report.sw, label)


def _twists(result: SuiteResult, rng: random.Random, chi: Character, count: int, label: str) -> None:
    base = analyze(chi)
    for _ in range(count):
        b = random_witt(rng, chi.p, chi.length, 2)
        twisted = analyze(chi.twist(b))
        same = (
            twisted.sw == base.sw
            and twisted.dt == base.dt
            and twisted.rsw == base.rsw
            and twisted.cform == base.cform
        )
        result.record("twist_invariance", same, f"{label}, b={b}")


def _divisor_laws(result: SuiteResult, a: GlobalCharacter, label: str) -> None:
    sw, dt = swan_divisor(a), dt_divisor(a)
    result.record("divisor_support", dt.minus_boundary().support() == sw.support(), label)
    result.record("divisor_bounds", all(1 <= dt[i] <= sw[i] + 1 for i in (1, 2)), label)


def _divisor_example(result: SuiteResult) -> None:
    p = 2
    a = GlobalCharacter.from_components(p, [parse_expression("x2/x1^3", p, ("x1", "x2"))])
    result.record("divisor_swan", swan_divisor(a).as_dict() == {"D1": 3, "D2": 0})
    result.record("divisor_dt", dt_divisor(a).as_dict() == {"D1": 4, "D2": 1})
    result.record("divisor_germs", global_cform(a).consistent)
    symmetric = GlobalCharacter.from_components(
        3, [parse_expression("1/(x1^2*x2^2)", 3, ("x1", "x2"))]
    )
    forms = global_cform(symmetric).forms
    swapped = global_cform(swap_coordinates(symmetric)).forms
    result.record("divisor_swap", forms[1] == swapped[2] and forms[2] == swapped[1])
    result.record(
        "divisor_swap_conductors",
        swan_divisor(swap_coordinates(a)) == swan_divisor(a).swapped(),
    )


def _crosscheck(
    result: SuiteResult, rng: random.Random, cases: int, corpus_limit: Optional[int] = None
) -> None:
    _guarded(result, "sanity", lambda: _sanity(result), "conductor sanity")
    _integral_sanity(result, rng)
    characters = corpus_characters(corpus_limit)
    for index, chi in enumerate(characters):
        _guarded(result, "cross_oracle", lambda: _cross_oracle(result, chi, f"case {index}"), f"case {index}")
    for index in TWIST_BASES:
        if index < len(characters):
            chi = characters[index]
            _guarded(
                result,
                "twists",
                lambda: _twists(result, rng, chi, cases, f"case {index}"),
                f"case {index}",
            )
    _guarded(result, "divisor", lambda: _divisor_example(result), "x2/x1^3")
    for index, a in enumerate(global_corpus_characters()):
        _guarded(
            result,
            "divisor_laws",
            lambda: _divisor_laws(result, a, f"global case {index}"),
            f"global case {index}",
        )


def run_suite(
    name: str,
    seed: int = DEFAULT_SEED,
    cases: Optional[int] = None,
    corpus_limit: Optional[int] = None,
) -> SuiteResult:
    """Run one suite; ``cases = 0`` runs nothing and yields a vacuous pass."""
    if name not in SUITES:
        raise ValueError(f"unknown suite {name!r}; expected one of {', '.join(SUITES)}")
    cases = DEFAULT_CASES[name] if cases is None else cases
    result = SuiteResult(name=name, seed=seed, cases=cases)
    if cases <= 0:
        logger.warning("suite %s ran with --cases %d: nothing checked", name, cases)
        return result
    rng = random.Random(seed)
    logger.info("running suite %s (seed=%d, cases=%d)", name, seed, cases)
    if name == "qpolys":
        _qpolys(result, rng, cases)
    elif name == "lemmas":
        _lemmas(result, rng, cases)
    else:
        _crosscheck(result, rng, cases, corpus_limit)
    logger.info("suite %s: %s", name, "passed" if result.passed else "FAILED")
    return result


def run_suites(names: Sequence[str], seed: int = DEFAULT_SEED, cases: Optional[int] = None):
    return [run_suite(name, seed, cases) for name in names]
