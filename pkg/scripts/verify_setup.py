"""
Check that the dependencies import and that the library computes known values.

Exits 1 when any check fails.
"""

import importlib
import sys
import time
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parent.parent))

DEPENDENCIES = ("sympy", "pytest", "hypothesis")
PROJECT_MODULES = (
    "base_algebra",
    "witt",
    "conductors",
    "dilatation",
    "snc_global",
    "verification",
    "conductor_cli",
)


def dependency_versions():
    found = []
    for name in DEPENDENCIES:
        module = importlib.import_module(name)
        found.append(f"{name} {getattr(module, '__version__', '?')}")
    return ", ".join(found)


def project_imports():
    for name in PROJECT_MODULES:
        importlib.import_module(name)
    return f"{len(PROJECT_MODULES)} modules"


def local_conductors():
    from conductors import Character, swan_conductor, total_dimension
    from expression_parser import parse_expression

    chi = Character.from_components(2, [parse_expression("x/t^2", 2)])
    got = (swan_conductor(chi)[0], total_dimension(chi)[0])
    assert got == (2, 2), f"sw, dt of x/t^2 over F_2 = {got}, expected (2, 2)"
    return "x/t^2 over F_2: sw = dt = 2"


def frobenius_minus_one_speed():
    from expression_parser import parse_expression
    from witt import WittVec, build_universal_tables, frobenius, frobenius_minus_one, witt_add

    b = WittVec(
        3,
        (
            parse_expression("(x^2+x)/(t*(1+x*t))", 3),
            parse_expression("(2*x^2+1)/(t^4*(1+x*t))", 3),
        ),
    )
    build_universal_tables(3, 2)
    start = time.perf_counter()
    image = frobenius_minus_one(b)
    elapsed = time.perf_counter() - start
    assert witt_add(image, b) == frobenius(b), "(F - 1)(b) + b != F(b)"
    return f"(F - 1) on W_2 over F_3 in {elapsed:.2f}s"


def global_divisors():
    from base_algebra import GLOBAL_VARIABLES
    from expression_parser import parse_expression
    from snc_global import GlobalCharacter, dt_divisor, swan_divisor

    a = GlobalCharacter.from_components(2, [parse_expression("x2/x1^3", 2, GLOBAL_VARIABLES)])
    got = (swan_divisor(a).as_dict(), dt_divisor(a).as_dict())
    assert got == ({"D1": 3, "D2": 0}, {"D1": 4, "D2": 1}), f"divisors of x2/x1^3: {got}"
    return "x2/x1^3 over F_2: R = 3 D1, R' = 4 D1 + D2"


CHECKS = (
    ("dependencies", dependency_versions),
    ("project modules", project_imports),
    ("local conductors", local_conductors),
    ("Witt arithmetic", frobenius_minus_one_speed),
    ("global divisors", global_divisors),
)


def run_checks():
    failed = []
    for label, check in CHECKS:
        try:
            detail = check()
        except (ImportError, AssertionError) as exc:
            print(f"✗ {label}: {exc}")
            failed.append(label)
            if label == "dependencies":
                # nothing else can run
                break
        else:
            print(f"✓ {label}: {detail}")
    return failed


def main():
    print(f"Python {sys.version.split()[0]}")
    failed = run_checks()
    if failed:
        print(f"\n{len(failed)} check(s) failed; try: pip install -r requirements.txt")
        sys.exit(1)
    print("\nSetup OK. Next: python conductor_cli.py verify --suite all")


if __name__ == "__main__":
    main()
