"""``verify`` command line: scenarios, built-in examples and property suites."""

import argparse
import sys
from importlib import resources

from .errors import GradalgError
from .homology import DEFAULT_MAX_RES
from .properties import SUITES, ALIASES, run_property_suite
from .scenario import load_scenario_file, parse_scenario, run_scenario

EXIT_PASS, EXIT_FAIL, EXIT_ERROR = 0, 1, 2

BUILTIN = {
    "hypersurface-mcm": "hypersurface_mcm.scn",
    "hypersurface-syzygy": "hypersurface_syzygy.scn",
    "torsionless-gap": "torsionless_gap.scn",
    "prime-transpose-theorem": "prime_transpose_theorem.scn",
}
EXAMPLE_ALIASES = {
    "2.4": "hypersurface-mcm", "ex-2.4": "hypersurface-mcm", "paper/ex-2.4": "hypersurface-mcm",
    "2.5": "hypersurface-syzygy", "ex-2.5": "hypersurface-syzygy", "paper/ex-2.5": "hypersurface-syzygy",
    "vasconcelos": "torsionless-gap", "paper/vasconcelos": "torsionless-gap",
    "thm-2.3-generic": "prime-transpose-theorem", "paper/thm-2.3-generic": "prime-transpose-theorem",
}


def builtin_text(example):
    key = EXAMPLE_ALIASES.get(example, example)
    if key not in BUILTIN:
        choices = sorted(set(BUILTIN) | set(EXAMPLE_ALIASES))
        raise ValueError(f"unknown example {example!r} (choose from {', '.join(choices)})")
    return key, resources.files("gradalg").joinpath("scenarios", BUILTIN[key]).read_text("utf-8")


def run_builtin(example, field=None, max_degree=None, max_res=DEFAULT_MAX_RES, jobs=1):
    key, text = builtin_text(example)
    return run_scenario(parse_scenario(text, name=f"paper/{key}"), field=field,
                        max_degree=max_degree, max_res=max_res, jobs=jobs)


def _parser():
    ap = argparse.ArgumentParser(prog="verify", description="Scenario verifier for graded module computations.")
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--field", choices=["gf32003", "qq"], default=None,
                        help="coefficient field (default: the scenario's, else gf32003)")
    common.add_argument("--max-degree", type=int, default=None, metavar="D",
                        help="degree bound for Hilbert-function checks (default: max twist + 10)")
    common.add_argument("--max-res", type=int, default=DEFAULT_MAX_RES, metavar="L",
                        help="resolution length bound (default: %(default)s)")
    common.add_argument("--report", choices=["json", "text"], default="text")
    common.add_argument("--out", default=None, help="write the report here instead of stdout")
    common.add_argument("--no-timing", action="store_true", help="zero the millis fields")
    common.add_argument("--jobs", type=int, default=1,
                        help="parallel workers (threads for scenario checks, processes for trials)")
    sub = ap.add_subparsers(dest="command", required=True)
    p_run = sub.add_parser("run", parents=[common], help="run a scenario file")
    p_run.add_argument("file")
    p_paper = sub.add_parser("paper", parents=[common], help="run a built-in golden scenario")
    p_paper.add_argument("--example", required=True)
    p_prop = sub.add_parser("property", parents=[common], help="run a randomized property suite")
    p_prop.add_argument("--suite", required=True, choices=list(SUITES) + list(ALIASES))
    p_prop.add_argument("--trials", type=int, default=50)
    p_prop.add_argument("--seed", type=int, default=0)
    return ap


def main(argv=None):
    ap = _parser()
    args = ap.parse_args(argv)
    if args.max_res < 1:
        print("error: --max-res must be >= 1", file=sys.stderr)
        return EXIT_ERROR
    try:
        if args.command == "run":
            report = run_scenario(load_scenario_file(args.file), field=args.field,
                                  max_degree=args.max_degree, max_res=args.max_res, jobs=args.jobs)
        elif args.command == "paper":
            report = run_builtin(args.example, args.field, args.max_degree, args.max_res, args.jobs)
        else:
            if args.trials < 1:
                raise ValueError("--trials must be >= 1")
            report = run_property_suite(args.suite, args.trials, args.seed, args.field or "gf32003",
                                        args.max_res, args.jobs, args.max_degree)
    except (GradalgError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_ERROR
    text = report.dumps(timing=not args.no_timing) if args.report == "json" else report.text()
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return EXIT_PASS if report.verdict == "pass" else EXIT_FAIL


if __name__ == "__main__":
    sys.exit(main())
