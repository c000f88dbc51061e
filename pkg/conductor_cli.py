# conductor_cli.py

"""
Command-line front end.

    python conductor_cli.py conductor spec.txt
    python conductor_cli.py divisor spec.txt
    python conductor_cli.py verify --suite all --seed 0 --cases 50

Results go to stdout (JSON or plain text), the ✓/✗ summary and logs to
stderr. Exit status: 0 ok, 1 failure, 2 usage or parse error.
"""

import argparse
import json
import logging
import sys
from pathlib import Path
from typing import Optional, Sequence

from base_algebra import RadicialElem, format_ratfunc
from conductors import Character, GradedLogForm, GradedNonLogForm, analyze
from errors import PreconditionError, RamificationError, SpecSyntaxError, SpecValidationError
from expression_parser import CharacterSpec, parse_spec
from snc_global import GlobalCharacter, dt_divisor, global_cform, swan_divisor
from verification import DEFAULT_SEED, SUITES, run_suite

logger = logging.getLogger(__name__)

LOG_FORMAT = "%(asctime)s %(levelname)s %(name)s: %(message)s"

EXIT_OK = 0
EXIT_FAILURE = 1
EXIT_USAGE = 2


# -- serialization -----------------------------------------------------------------


def radicial_to_str(c: RadicialElem) -> str:
    """An element of F_p(x) is written in x, anything else in y (y^p = x)."""
    if c.descends():
        return format_ratfunc(c.descend())
    return format_ratfunc(c.base)


def rsw_to_dict(form: Optional[GradedLogForm]) -> Optional[dict]:
    if form is None:
        return None
    return {
        "alpha": format_ratfunc(form.alpha),
        "beta": format_ratfunc(form.beta),
        "level": form.level,
    }


def cform_to_dict(form: Optional[GradedNonLogForm]) -> Optional[dict]:
    if form is None:
        return None
    return {
        "c_pi": radicial_to_str(form.c_pi),
        "c_x": format_ratfunc(form.c_x),
        "level": form.level,
        "radicial": form.radicial,
    }


def _load_spec(path: str, mode: str) -> CharacterSpec:
    text = Path(path).read_text(encoding="utf-8")
    spec = parse_spec(text)
    if spec.mode != mode:
        raise SpecValidationError(f"expected a {mode} spec, got mode={spec.mode}")
    return spec


def conductor_document(spec: CharacterSpec) -> dict:
    chi = Character.from_components(spec.p, spec.elements())
    report = analyze(chi)
    return {
        "p": spec.p,
        "s": spec.s,
        "sw": report.sw,
        "dt": report.dt,
        "rsw": rsw_to_dict(report.rsw),
        "cform": cform_to_dict(report.cform),
    }


def divisor_document(spec: CharacterSpec) -> dict:
    try:
        a = GlobalCharacter.from_components(spec.p, spec.elements())
    except PreconditionError as exc:
        # poles outside D
        raise SpecValidationError(str(exc)) from exc
    swan, dt = swan_divisor(a), dt_divisor(a)
    document = {
        "p": spec.p,
        "s": spec.s,
        "R_chi": swan.as_dict(),
        "R_chi_prime": dt.as_dict(),
        "forms": {},
        "germs": {},
    }
    if not dt.minus_boundary().support():
        # R'_chi = D: no characteristic form anywhere
        return document
    report = global_cform(a)
    for i, form in sorted(report.forms.items()):
        document["forms"][f"D{i}"] = cform_to_dict(form)
        document["germs"][f"D{i}"] = report.statuses[i]
    return document


def _emit(document: dict, fmt: str) -> None:
    if fmt == "json":
        print(json.dumps(document, indent=2, sort_keys=True, ensure_ascii=False))
        return
    for key in sorted(document):
        print(f"{key}: {json.dumps(document[key], sort_keys=True, ensure_ascii=False)}")


# -- commands ------------------------------------------------------------------------


def run_conductor(args) -> int:
    spec = _load_spec(args.spec, "local")
    document = conductor_document(spec)
    _emit(document, args.format)
    print(f"✓ sw = {document['sw']}, dt = {document['dt']}", file=sys.stderr)
    return EXIT_OK


def run_divisor(args) -> int:
    spec = _load_spec(args.spec, "global")
    document = divisor_document(spec)
    _emit(document, args.format)
    inconsistent = [d for d, status in document["germs"].items() if status == "inconsistent"]
    if inconsistent:
        print(f"✗ germ mismatch on {', '.join(inconsistent)}", file=sys.stderr)
        return EXIT_FAILURE
    print(f"✓ R_chi = {document['R_chi']}, R'_chi = {document['R_chi_prime']}", file=sys.stderr)
    return EXIT_OK


def run_verify(args) -> int:
    names = SUITES if args.suite == "all" else (args.suite,)
    results = [run_suite(name, seed=args.seed, cases=args.cases) for name in names]
    _emit(
        {
            "passed": all(r.passed for r in results),
            "suites": [r.to_dict() for r in results],
        },
        args.format,
    )
    for r in results:
        total = sum(c["passed"] + c["failed"] for c in r.checks.values())
        failed = sum(c["failed"] for c in r.checks.values())
        if r.vacuous:
            print(f"⚠ {r.name}: no cases run (vacuous pass)", file=sys.stderr)
        elif r.passed:
            print(f"✓ {r.name}: {total} checks passed", file=sys.stderr)
        else:
            print(f"✗ {r.name}: {failed} of {total} checks failed", file=sys.stderr)
            for failure in r.failures[:10]:
                print(f"    {failure}", file=sys.stderr)
    return EXIT_OK if all(r.passed for r in results) else EXIT_FAILURE


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        description="Ramification invariants of Artin-Schreier-Witt characters"
    )
    parser.add_argument(
        "--format",
        action="store",
        default="json",
        choices=["text", "json"],
        help="Output format on stdout (default: json)",
    )
    parser.add_argument(
        "--log-level",
        action="store",
        default="WARNING",
        choices=["DEBUG", "INFO", "WARNING", "ERROR"],
        help="Logging level for stderr (default: WARNING)",
    )
    commands = parser.add_subparsers(dest="command", required=True)

    conductor = commands.add_parser("conductor", help="sw, dt, rsw and cform of a local character")
    conductor.add_argument("spec", help="Path to a spec file with mode=local")
    conductor.set_defaults(handler=run_conductor)

    divisor = commands.add_parser("divisor", help="Conductor divisors of a global character")
    divisor.add_argument("spec", help="Path to a spec file with mode=global")
    divisor.set_defaults(handler=run_divisor)

    verify = commands.add_parser("verify", help="Run the verification suites")
    verify.add_argument(
        "--suite",
        action="store",
        default="all",
        choices=list(SUITES) + ["all"],
        help="Which suite to run (default: all)",
    )
    verify.add_argument(
        "--seed", action="store", type=int, default=DEFAULT_SEED, help="Random seed (default: 0)"
    )
    verify.add_argument(
        "--cases",
        action="store",
        type=int,
        default=None,
        help="Cases per suite (default: per-suite default; 0 runs nothing)",
    )
    verify.set_defaults(handler=run_verify)
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code in (0, None) else EXIT_USAGE
    logging.basicConfig(level=getattr(logging, args.log_level), format=LOG_FORMAT, stream=sys.stderr)

    try:
        return args.handler(args)
    except (SpecSyntaxError, SpecValidationError, OSError) as exc:
        print(f"✗ {exc}", file=sys.stderr)
        return EXIT_USAGE
    except RamificationError as exc:
        logger.error("%s", exc)
        print(f"✗ {exc}", file=sys.stderr)
        return EXIT_FAILURE


if __name__ == "__main__":
    sys.exit(main())
