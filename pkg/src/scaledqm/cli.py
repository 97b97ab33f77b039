"""Command-line experiment runner.

Subcommands ``fig1`` .. ``fig5`` emit the study tables as CSV plus a rendered
image alongside; ``checks`` runs every property suite and oracle comparison
and writes a plain-text report plus a machine-readable summary; ``oracle``
runs only the grid-PDE comparisons.  Identical invocations produce
byte-identical CSV output (fixed quadrature orders, fixed seeds).
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from . import __version__, checks, figures
from .report import parse_config_file


def _add_common(parser):
    parser.add_argument("--out", default="out", help="output directory (default: ./out)")
    parser.add_argument("--config", default=None,
                        help="flat key=value file overriding the experiment defaults")
    parser.add_argument("--eps", default=None,
                        help="comma-separated quantumness values overriding the default set")
    parser.add_argument("--tol", type=float, default=None,
                        help="tolerance override: expansion/quadrature tolerance for figures, "
                             "replacement pass bound for checks")
    parser.add_argument("--samples", type=int, default=None,
                        help="sample count override for figure time/space grids")


def build_parser():
    parser = argparse.ArgumentParser(
        prog="scaledqm",
        description="quantum-to-classical transition experiments: closed-form "
                    "Gaussian dynamics, bouncing-ball solvers, and PDE cross-checks",
    )
    parser.add_argument("--version", action="version", version=f"scaledqm {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)
    descriptions = {
        "fig1": "half-space reflection: <x> and dispersion, classical vs quantum",
        "fig2": "gravitational bouncer expansion weights per quantumness",
        "fig3": "gravitational bouncer density snapshots",
        "fig4": "gravitational bouncer <z>(t) and autocorrelation",
        "fig5": "harmonic bouncer <z>(t) in trap units",
    }
    for name, help_text in descriptions.items():
        _add_common(sub.add_parser(name, help=help_text))
    p_checks = sub.add_parser("checks", help="run all property suites and oracle comparisons")
    _add_common(p_checks)
    p_checks.add_argument("--only", default=None,
                          help="substring filter on check names (e.g. 'harm.')")
    p_oracle = sub.add_parser("oracle", help="run only the grid-oracle comparisons")
    _add_common(p_oracle)
    p_oracle.add_argument("--only", default=None, help="substring filter on check names")
    return parser


def _write_check_reports(results, out_dir: Path):
    out_dir.mkdir(parents=True, exist_ok=True)
    n_fail = sum(not r.passed for r in results)
    lines = [r.line() for r in results]
    summary = f"{len(results) - n_fail}/{len(results)} checks passed"
    (out_dir / "checks_report.txt").write_text("\n".join(lines + ["", summary]) + "\n")
    rows = ["check,measured,tolerance,status"]
    rows += [
        f"{r.name},{r.measured:.17g},{r.tolerance:.17g},{'pass' if r.passed else 'fail'}"
        for r in results
    ]
    (out_dir / "checks_report.csv").write_text("\n".join(rows) + "\n")
    return summary


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    out_dir = Path(args.out)
    config = parse_config_file(args.config) if args.config else None

    if args.command in figures.RUNNERS:
        overrides = {"eps": args.eps, "tol": args.tol, "samples": args.samples}
        written = figures.RUNNERS[args.command](out_dir, config=config, **overrides)
        for path in written:
            print(path)
        return 0

    group = "all" if args.command == "checks" else "oracle"
    results = checks.run_checks(group=group, tol_override=args.tol,
                                name_filter=args.only)
    if not results:
        print(f"no checks match {args.only!r}", file=sys.stderr)
        return 2
    summary = _write_check_reports(results, out_dir)
    for result in results:
        print(result.line())
    print(summary)
    return 0 if all(r.passed for r in results) else 1


if __name__ == "__main__":
    sys.exit(main())
