"""Command line front end.

    colored-eulerian table      --n 2..6 --alpha 2 [--route closed|descents|complex|gamma]
    colored-eulerian verify     --n 1..6 --alpha 1..3 [--jobs 4]
    colored-eulerian enumerate  --n 3 --alpha 2 --kind partitions|permutations
    colored-eulerian complex    --n 3 --alpha 2 [--export-geometry out.off]
    colored-eulerian roots      --n 2..10 --alpha 1..5
    colored-eulerian recurrence --n 3 --alpha 3 [--variant printed|amended]

Exit codes: 0 ok, 1 verification failure, 2 usage error, 3 budget exceeded.
"""

from __future__ import annotations

import argparse
import csv
import json
import sys
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from pathlib import Path

from . import checks
from .errors import BudgetExceeded
from .eulerian import ENUMERATION_BUDGET, ROUTES, colored_eulerian, colored_eulerian_descents, \
    colored_eulerian_recurrence, colored_permutation_count, real_rootedness_report
from .permutohedron import FACE_BUDGET, build_complex, q_size, write_geometry_json, write_off
from .structures import enumerate_colored_permutations, enumerate_Q

COMMANDS = ("table", "verify", "enumerate", "complex", "roots", "recurrence")
FORMATS = ("csv", "json", "jsonl", "latex")

DEFAULTS = {
    # command: (n range, alpha range, format, allowed formats)
    "table": ((2, 6), (2, 2), "csv", ("csv", "json", "latex")),
    "verify": ((1, 6), (1, 3), "json", ("json",)),
    "enumerate": ((3, 3), (2, 2), "jsonl", ("jsonl",)),
    "complex": ((3, 3), (2, 2), "json", ("json", "jsonl")),
    "roots": ((2, 6), (1, 3), "json", ("json", "csv")),
    "recurrence": ((2, 6), (1, 3), "json", ("json",)),
}

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_BUDGET = 0, 1, 2, 3


@dataclass(frozen=True)
class RunConfig:
    command: str
    n_range: tuple[int, int]
    alpha_range: tuple[int, int]
    format: str
    output: str | None = None      # None means standard output
    parallelism: int = 1
    budget: int = ENUMERATION_BUDGET
    route: str = "closed"
    kind: str = "partitions"
    variant: str = "printed"
    oracle: str = "closed"
    export_geometry: str | None = None
    precision: int = 6

    @property
    def ns(self) -> range:
        return range(self.n_range[0], self.n_range[1] + 1)

    @property
    def alphas(self) -> range:
        return range(self.alpha_range[0], self.alpha_range[1] + 1)


def int_range(token: str) -> tuple[int, int]:
    """Parse ``a..b`` or a single integer ``a``."""
    lo, sep, hi = token.partition("..")
    try:
        a = int(lo)
        b = int(hi) if sep else a
    except ValueError:
        raise argparse.ArgumentTypeError(f"bad range {token!r}; expected A..B or A") from None
    if a > b:
        raise argparse.ArgumentTypeError(f"empty range {token!r}")
    return a, b


def _positive(token: str) -> int:
    try:
        v = int(token)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected an integer, got {token!r}") from None
    if v < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {token!r}")
    return v


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--n", type=int_range, metavar="A..B", help="range of n")
    common.add_argument("--alpha", type=int_range, metavar="A..B", help="range of alpha (number of colors)")
    common.add_argument("--format", choices=FORMATS)
    common.add_argument("--output", "-o", metavar="PATH", help="write here instead of standard output")
    common.add_argument("--jobs", type=_positive, default=1, help="worker processes")
    common.add_argument("--budget", type=_positive, default=ENUMERATION_BUDGET,
                        help="maximum number of enumerated objects")

    parser = argparse.ArgumentParser(
        prog="colored-eulerian",
        description="Colored Eulerian polynomials and the colored permutohedron.",
        epilog="exit codes: 0 ok, 1 verification failure, 2 usage error, 3 budget exceeded",
    )
    sub = parser.add_subparsers(dest="command", required=True, metavar="COMMAND")

    p = sub.add_parser("table", parents=[common], help="coefficient rows of A_n^alpha(t)")
    p.add_argument("--route", choices=ROUTES, default="closed")
    sub.add_parser("verify", parents=[common], help="run the identity suite")
    p = sub.add_parser("enumerate", parents=[common], help="stream elements as JSON lines")
    p.add_argument("--kind", choices=("partitions", "permutations"), default="partitions")
    p = sub.add_parser("complex", parents=[common], help="census of the colored permutohedron")
    p.add_argument("--export-geometry", metavar="PATH",
                   help="write an OFF file here and a lossless JSON twin next to it")
    p.add_argument("--precision", type=int, default=6, help="decimal places in the OFF file")
    sub.add_parser("roots", parents=[common], help="real-rootedness report")
    p = sub.add_parser("recurrence", parents=[common], help="audit the three-term recurrence")
    p.add_argument("--variant", choices=("printed", "amended"), default="printed")
    p.add_argument("--oracle", choices=("closed", "descents"), default="closed")
    return parser


def parse_args(argv: list[str]) -> RunConfig:
    parser = build_parser()
    ns = parser.parse_args(argv)
    n_default, a_default, f_default, allowed = DEFAULTS[ns.command]
    fmt = ns.format or f_default
    if fmt not in allowed:
        parser.error(f"--format {fmt} is not available for {ns.command} (choose from {', '.join(allowed)})")
    n_range = ns.n or n_default
    alpha_range = ns.alpha or a_default
    if n_range[0] < 1:
        parser.error(f"--n must start at 1 or above, got {n_range[0]}")
    if alpha_range[0] < 1:
        parser.error(f"--alpha must start at 1 or above, got {alpha_range[0]}")
    if ns.command == "recurrence" and n_range[0] < 2:
        n_range = (2, max(2, n_range[1]))
    if ns.command == "roots" and n_range[0] < 2:
        parser.error("roots needs n >= 2")
    geometry = getattr(ns, "export_geometry", None)
    if geometry and (n_range[0] != n_range[1] or alpha_range[0] != alpha_range[1]):
        parser.error("--export-geometry needs a single n and a single alpha")
    return RunConfig(
        command=ns.command,
        n_range=n_range,
        alpha_range=alpha_range,
        format=fmt,
        output=ns.output,
        parallelism=ns.jobs,
        budget=ns.budget,
        route=getattr(ns, "route", "closed"),
        kind=getattr(ns, "kind", "partitions"),
        variant=getattr(ns, "variant", "printed"),
        oracle=getattr(ns, "oracle", "closed"),
        export_geometry=geometry,
        precision=getattr(ns, "precision", 6),
    )


# ---------------------------------------------------------------------------
# Commands. Each writes to ``out`` and returns an exit code.
# ---------------------------------------------------------------------------

def _dump(obj, out):
    json.dump(obj, out, indent=1)
    out.write("\n")


def _table(cfg: RunConfig, out) -> int:
    rows = []
    for alpha in cfg.alphas:
        for n in cfg.ns:
            if cfg.route == "descents":
                poly = colored_eulerian_descents(n, alpha, budget=cfg.budget)
            else:
                poly = colored_eulerian(n, alpha, cfg.route)
            rows.append(poly)
    if cfg.format == "csv":
        w = csv.writer(out, lineterminator="\n")
        w.writerow(["n", "alpha", "k", "coefficient"])
        for p in rows:
            for k, c in enumerate(p.coefficients):
                w.writerow([p.n, p.alpha, k, c])
    elif cfg.format == "json":
        _dump([{"n": p.n, "alpha": p.alpha, "route": cfg.route, "coefficients": p.coefficients,
                "poly": p.poly.to_json()} for p in rows], out)
    else:
        for alpha in cfg.alphas:
            out.write("\\begin{tabular}{c | c }\n")
            out.write(f"$n$ & $A_n^{{{alpha}}}(t)$\\\\\n")
            for p in rows:
                if p.alpha == alpha:
                    out.write("\\hline\n")
                    out.write(f"{p.n} & ${p.poly.pretty('t', descending=True)}$\\\\\n")
            out.write("\\end{tabular}\n")
    return EXIT_OK


def _verify(cfg: RunConfig, out) -> int:
    tasks = checks.plan(cfg.ns, cfg.alphas)
    args = [(name, n, alpha, cfg.budget) for name, n, alpha in tasks]
    if cfg.parallelism > 1:
        with ProcessPoolExecutor(cfg.parallelism) as pool:
            records = list(pool.map(checks.run_task, args))
    else:
        records = [checks.run_task(a) for a in args]
    report = checks.VerificationReport(records)
    _dump(report.to_json(), out)
    return EXIT_OK if report.passed else EXIT_FAIL


def _enumerate(cfg: RunConfig, out) -> int:
    if cfg.kind == "partitions":
        gen, size = enumerate_Q, q_size
    else:
        gen, size = enumerate_colored_permutations, colored_permutation_count
    pairs = [(n, alpha) for n in cfg.ns for alpha in cfg.alphas]
    total = sum(size(n, alpha) for n, alpha in pairs)
    if total > cfg.budget:
        raise BudgetExceeded(f"enumerating {cfg.kind}", total, cfg.budget)
    for n, alpha in pairs:
        for item in gen(n, alpha):
            out.write(json.dumps(item.to_json(), separators=(",", ":")) + "\n")
    return EXIT_OK


def _complex(cfg: RunConfig, out) -> int:
    budget = min(cfg.budget, FACE_BUDGET)
    census = []
    for n in cfg.ns:
        for alpha in cfg.alphas:
            cx = build_complex(n, alpha, budget=budget)
            census.append(cx.census())
            if cfg.export_geometry:
                path = Path(cfg.export_geometry)
                write_off(cx, path, precision=cfg.precision)
                write_geometry_json(cx, path.with_suffix(".json"))
    if cfg.format == "jsonl":
        for c in census:
            out.write(json.dumps(c) + "\n")
    else:
        _dump(census[0] if len(census) == 1 else census, out)
    return EXIT_OK


def _roots(cfg: RunConfig, out) -> int:
    rows = []
    for alpha in cfg.alphas:
        for n in cfg.ns:
            sqf, count = real_rootedness_report(n, alpha)
            rows.append({"n": n, "alpha": alpha, "squarefree": sqf, "distinct_real_roots": count,
                         "all_real_rooted": sqf and count == n - 1})
    if cfg.format == "csv":
        w = csv.DictWriter(out, fieldnames=list(rows[0]), lineterminator="\n")
        w.writeheader()
        w.writerows(rows)
    else:
        _dump(rows, out)
    return EXIT_OK


def _recurrence(cfg: RunConfig, out) -> int:
    reports = []
    for alpha in cfg.alphas:
        _, report = colored_eulerian_recurrence(
            cfg.n_range[1], alpha, n_min=cfg.n_range[0], variant=cfg.variant, oracle=cfg.oracle
        )
        reports.append(report.to_json())
    _dump({"reports": reports}, out)
    return EXIT_OK


HANDLERS = {
    "table": _table,
    "verify": _verify,
    "enumerate": _enumerate,
    "complex": _complex,
    "roots": _roots,
    "recurrence": _recurrence,
}


def run(cfg: RunConfig, stdout=None) -> int:
    stdout = stdout if stdout is not None else sys.stdout
    out = open(cfg.output, "w") if cfg.output else stdout
    try:
        return HANDLERS[cfg.command](cfg, out)
    except BudgetExceeded as exc:
        print(f"colored-eulerian: refused: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    finally:
        if cfg.output:
            out.close()


def main(argv: list[str] | None = None) -> int:
    cfg = parse_args(sys.argv[1:] if argv is None else argv)
    return run(cfg)


if __name__ == "__main__":
    sys.exit(main())
