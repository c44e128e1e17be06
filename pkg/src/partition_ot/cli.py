"""Command line front end: ``partition-ot {enumerate,distance,verify,conjecture}``.

Every output carries a header recording the command, its parameters and the
seed.  For JSON it is the ``header`` object, for CSV a leading ``#`` line.
Plain text written to standard output sends the header to standard error so
the listing itself stays clean; text written with ``--out`` keeps it as the
first ``#`` line.

Exit codes: 0 when every check passes, 1 when a verification row fails,
2 for usage and domain errors.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys
from dataclasses import dataclass, field
from typing import Sequence

from . import __version__
from .errors import DomainError, FormatError, SearchLimitError
from .partitions import (
    CLASS_TAGS,
    MPartition,
    Partition,
    classify,
    count_by_generating_function,
    enumerate_m_partitions,
    enumerate_partitions,
    parse_mpartition_json,
    parse_partition,
    render_ferrer,
)
from .measures import delta_center
from .suites import SUITES, run_suite
from .transport import EUCLIDEAN, CostFunction, scan_sigma_conjecture, scan_summary, solve_monge
from .transport.theorems import SCAN_COLUMNS, SCAN_MAX_N

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2

# largest n that each enumeration dimension accepts
ENUMERATE_MAX_N = {1: 60, 2: 16}
ENUMERATE_MAX_N_HIGHER = 10
# atoms per measure accepted by the distance command
DISTANCE_MAX_N = 400


class UsageError(Exception):
    pass


@dataclass
class RunConfig:
    command: str
    n: int | None = None
    m: int = 1
    costs: list[CostFunction] = field(default_factory=list)
    n_max: int | None = None
    format: str = "text"
    out: str | None = None
    seed: int = 0
    emit_plan: str | None = None
    render: bool = False
    count_only: bool = False
    filter: str | None = None

    def header(self, **extra) -> dict:
        h = {"tool": "partition-ot", "version": __version__, "command": self.command, "seed": self.seed}
        for key in ("n", "m", "n_max", "filter"):
            value = getattr(self, key)
            if value is not None:
                h[key] = value
        if self.costs:
            h["cost"] = [c.name for c in self.costs]
        h.update(extra)
        return h


def _header_line(header: dict) -> str:
    return "# " + " ".join(f"{k}={','.join(v) if isinstance(v, list) else v}" for k, v in header.items())


class Output:
    """Collects one command's output and writes it atomically at the end."""

    def __init__(self, cfg: RunConfig, header: dict):
        self.cfg = cfg
        self.header = header
        self.lines: list[str] = []

    def text(self, line: str = "") -> None:
        self.lines.append(line)

    def emit_json(self, payload: dict) -> None:
        self.lines = [json.dumps({"header": self.header, **payload}, indent=2, sort_keys=False)]

    def emit_csv(self, columns: Sequence[str], rows: Sequence[dict], trailer: Sequence[str] = ()) -> None:
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(columns)
        for row in rows:
            writer.writerow([_cell(row.get(c)) for c in columns])
        self.lines = [_header_line(self.header), buf.getvalue().rstrip("\n"), *trailer]

    def flush(self, stdout, stderr) -> None:
        body = "\n".join(self.lines) + "\n"
        if self.cfg.format == "text":
            if self.cfg.out:
                body = _header_line(self.header) + "\n" + body
            else:
                stderr.write(_header_line(self.header) + "\n")
        if self.cfg.out:
            with open(self.cfg.out, "w", encoding="utf-8", newline="") as fh:
                fh.write(body)
        else:
            stdout.write(body)


def _cell(v) -> str:
    if v is None:
        return ""
    if isinstance(v, float):
        return repr(v)
    return str(v)


# -- partition literals -----------------------------------------------------------------------


def parse_literal(text: str) -> Partition | MPartition:
    """``"a+b+c"`` for one dimension, otherwise the path of a JSON file."""
    if os.path.isfile(text):
        with open(text, encoding="utf-8") as fh:
            mp = parse_mpartition_json(fh.read())
        return mp.to_partition() if mp.dim == 1 else mp
    return parse_partition(text)


def _shown(p) -> str:
    return str(p)


# -- commands --------------------------------------------------------------------------------------


def cmd_enumerate(cfg: RunConfig, stdout, stderr) -> int:
    if cfg.n is None:
        raise UsageError("enumerate needs --n")
    cap = ENUMERATE_MAX_N.get(cfg.m, ENUMERATE_MAX_N_HIGHER)
    if not 1 <= cfg.n <= cap:
        raise DomainError(f"--n for m={cfg.m} must lie in 1..{cap}")
    if cfg.filter and cfg.m != 1:
        raise DomainError("class filters apply to one dimensional partitions only")
    if cfg.m == 1:
        items = enumerate_partitions(cfg.n, cfg.filter)
    else:
        items = enumerate_m_partitions(cfg.n, cfg.m)
    out = Output(cfg, cfg.header())
    status = EXIT_OK
    if cfg.count_only:
        count = len(items)
        expected = None
        if cfg.filter is None and cfg.m in (1, 2):
            expected = count_by_generating_function(cfg.n, cfg.m)
            if expected != count:
                status = EXIT_FAIL
        if cfg.format == "json":
            out.emit_json({"count": count, "generating_function": expected, "agrees": status == EXIT_OK})
        elif cfg.format == "csv":
            out.emit_csv(("n", "m", "count", "generating_function"),
                         [dict(n=cfg.n, m=cfg.m, count=count, generating_function=expected)])
        else:
            out.text(str(count))
            if status:
                out.text(f"MISMATCH: generating function gives {expected}")
        out.flush(stdout, stderr)
        return status

    def tags(p):
        return sorted(classify(p)) if cfg.m == 1 else []

    if cfg.format == "json":
        out.emit_json({
            "count": len(items),
            "partitions": [
                {"parts": list(p.parts), "tags": tags(p)} if cfg.m == 1 else {"entries": p.to_nested(), "dim": p.dim}
                for p in items
            ],
        })
    elif cfg.format == "csv":
        columns = ("partition",) + (CLASS_TAGS if cfg.m == 1 else ())
        rows = []
        for p in items:
            row = {"partition": str(p)}
            if cfg.m == 1:
                row.update({t: t in classify(p) for t in CLASS_TAGS})
            rows.append(row)
        out.emit_csv(columns, rows)
    else:
        for p in items:
            out.text(str(p))
            if cfg.render:
                out.text(render_ferrer(p) if cfg.m == 1 else json.dumps(p.to_nested()))
                out.text()
    out.flush(stdout, stderr)
    return status


def _matching_lines(plan) -> list[str]:
    def pt(z):
        return "(" + ", ".join(str(x / 2).rstrip("0").rstrip(".") if x % 2 else str(x // 2) for x in z) + ")"

    return [f"{pt(x)} -> {pt(y)}" for x, y in plan.pairs]


def cmd_distance(cfg: RunConfig, p_minus: str, p_plus: str, stdout, stderr) -> int:
    a, b = parse_literal(p_minus), parse_literal(p_plus)
    if a.n != b.n:
        raise DomainError(
            f"the partitions have n={a.n} and n={b.n}; transport needs equal total mass, so both must partition the same n"
        )
    dim_a = 1 if isinstance(a, Partition) else a.dim
    dim_b = 1 if isinstance(b, Partition) else b.dim
    if dim_a != dim_b:
        raise DomainError(f"dimensions differ: m={dim_a} and m={dim_b}")
    if a.n > DISTANCE_MAX_N:
        raise DomainError(f"n={a.n} exceeds the distance bound {DISTANCE_MAX_N}")
    costs = cfg.costs or [EUCLIDEAN]
    mu, nu = delta_center(a), delta_center(b)
    results = []
    for c in costs:
        if not c.metric_like:
            stderr.write(f"note: cost {c.name} is not metric-like; the value is a transport cost, not a distance\n")
        results.append((c, solve_monge(mu, nu, c)))
    out = Output(cfg, cfg.header(p_minus=_shown(a), p_plus=_shown(b)))
    if cfg.format == "json":
        out.emit_json({
            "p_minus": _shown(a),
            "p_plus": _shown(b),
            "results": [
                {"cost": c.name, "value": plan.cost, "exact": None if plan.cost_exact is None else str(plan.cost_exact)}
                for c, plan in results
            ],
        })
    elif cfg.format == "csv":
        out.emit_csv(("p_minus", "p_plus", "cost", "value", "exact"), [
            dict(p_minus=_shown(a), p_plus=_shown(b), cost=c.name, value=plan.cost, exact=plan.cost_exact)
            for c, plan in results
        ])
    else:
        for c, plan in results:
            value = str(plan.cost_exact) if plan.cost_exact is not None else repr(plan.cost)
            out.text(value if len(results) == 1 else f"{c.name}: {value}")
        if cfg.render:
            for label, p in (("p_minus", a), ("p_plus", b)):
                out.text(f"{label} = {_shown(p)}")
                out.text(render_ferrer(p) if dim_a == 1 else json.dumps(p.to_nested()))
            out.text("matching:")
            for line in _matching_lines(results[0][1]):
                out.text("  " + line)
    out.flush(stdout, stderr)
    if cfg.emit_plan:
        plans = [dict(plan.to_json(), cost_kind=c.name) for c, plan in results]
        payload = {"header": out.header, "plans": plans}
        with open(cfg.emit_plan, "w", encoding="utf-8") as fh:
            json.dump(payload, fh, indent=2)
            fh.write("\n")
    return EXIT_OK


def cmd_verify(cfg: RunConfig, suite: str, stdout, stderr) -> int:
    if suite not in SUITES:
        raise UsageError(f"unknown suite {suite!r}; choose from {', '.join(SUITES)}")
    result = run_suite(suite, cfg.n_max, cfg.costs or None)
    out = Output(cfg, cfg.header(suite=suite))
    summary = result.summary()
    if cfg.format == "json":
        out.emit_json({"suite": suite, "columns": list(result.columns), "rows": result.rows,
                       "notes": result.notes, "summary": summary, "passed": result.passed})
    elif cfg.format == "csv":
        out.emit_csv(result.columns, result.rows, [f"# {note}" for note in result.notes] + [f"# {summary}"])
    else:
        for row in result.failures:
            out.text("FAIL " + " ".join(f"{k}={_cell(v)}" for k, v in row.items() if k != "pass"))
        for note in result.notes:
            out.text(f"note: {note}")
        out.text(summary)
    out.flush(stdout, stderr)
    return EXIT_OK if result.passed else EXIT_FAIL


def cmd_conjecture(cfg: RunConfig, stdout, stderr) -> int:
    if cfg.n is None:
        raise UsageError("conjecture needs --n")
    if cfg.m not in SCAN_MAX_N:
        raise DomainError(f"the conjecture scan supports m in {sorted(SCAN_MAX_N)}")
    if not 1 <= cfg.n <= SCAN_MAX_N[cfg.m]:
        raise DomainError(f"refusing n={cfg.n}: the scan cap for m={cfg.m} is {SCAN_MAX_N[cfg.m]}")
    rows = scan_sigma_conjecture(cfg.n, cfg.m, cfg.costs or (EUCLIDEAN,) + (CostFunction("l1"),))
    counts = scan_summary(rows)
    summary = "conjecture scan (evidence, not proof): " + " ".join(f"{k}={v}" for k, v in counts.items())
    dict_rows = [{k: getattr(r, k) for k in SCAN_COLUMNS} for r in rows]
    out = Output(cfg, cfg.header())
    if cfg.format == "json":
        out.emit_json({"columns": list(SCAN_COLUMNS), "rows": dict_rows, "summary": counts})
    elif cfg.format == "csv":
        out.emit_csv(SCAN_COLUMNS, dict_rows, [f"# {summary}"])
    else:
        for r in rows:
            if not r.passed:
                verdict = "REJECTED" if r.rejected else "FAIL"
                out.text(f"{verdict} partition={r.partition} sigma={r.sigma} cost={r.cost}")
        out.text(summary)
    out.flush(stdout, stderr)
    # the scan gathers evidence on an open statement, so failing cells are data
    return EXIT_OK


# -- argument handling ------------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--n", type=int)
    common.add_argument("--m", type=int, default=1)
    common.add_argument("--cost", action="append", default=[], metavar="KIND",
                        help="euclidean, l1, linf, sqeuclidean or power:P (repeatable)")
    common.add_argument("--n-max", type=int, dest="n_max")
    common.add_argument("--format", choices=("json", "csv", "text"))
    common.add_argument("--out", metavar="PATH")
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--emit-plan", nargs="?", const="plan.json", metavar="PATH", dest="emit_plan")
    common.add_argument("--render", action="store_true")
    common.add_argument("--count-only", action="store_true", dest="count_only")
    common.add_argument("--filter", choices=CLASS_TAGS)

    parser = argparse.ArgumentParser(prog="partition-ot", description="Optimal transport between integer partitions.")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)
    sub.add_parser("enumerate", parents=[common], help="list partitions of n")
    dist = sub.add_parser("distance", parents=[common], help="transport cost between two partitions")
    dist.add_argument("p_minus")
    dist.add_argument("p_plus")
    ver = sub.add_parser("verify", parents=[common], help="run a desk-scale verification suite")
    ver.add_argument("suite", help=", ".join(SUITES))
    sub.add_parser("conjecture", parents=[common], help="sigma-symmetry evidence scan")
    return parser


DEFAULT_FORMAT = {"enumerate": "text", "distance": "text", "verify": "csv", "conjecture": "csv"}


def main(argv: Sequence[str] | None = None, stdout=None, stderr=None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code == 0 else EXIT_USAGE
    try:
        costs = [CostFunction.parse(s) for s in args.cost]
        cfg = RunConfig(
            command=args.command, n=args.n, m=args.m, costs=costs, n_max=args.n_max,
            format=args.format or DEFAULT_FORMAT[args.command], out=args.out, seed=args.seed,
            emit_plan=args.emit_plan, render=args.render, count_only=args.count_only, filter=args.filter,
        )
        if cfg.m < 1:
            raise DomainError("--m must be at least 1")
        if args.command == "enumerate":
            return cmd_enumerate(cfg, stdout, stderr)
        if args.command == "distance":
            return cmd_distance(cfg, args.p_minus, args.p_plus, stdout, stderr)
        if args.command == "verify":
            return cmd_verify(cfg, args.suite, stdout, stderr)
        return cmd_conjecture(cfg, stdout, stderr)
    except UsageError as exc:
        stderr.write(f"usage error: {exc}\n")
        return EXIT_USAGE
    except FormatError as exc:
        stderr.write(f"format error: {exc}\n")
        return EXIT_USAGE
    except (DomainError, SearchLimitError) as exc:
        stderr.write(f"error: {exc}\n")
        return EXIT_USAGE


def main_entry() -> None:
    sys.exit(main())


if __name__ == "__main__":  # pragma: no cover
    main_entry()
