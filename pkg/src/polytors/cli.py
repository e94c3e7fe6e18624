"""Command line front end: ``polytors {homology,torsion,table,verify}``.

Exit codes: 0 success, 1 usage error, 2 internal consistency error,
3 documented ambiguity under ``--strict``.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from dataclasses import dataclass

from . import arnold, oracle, torsion
from .digits import is_prime
from .errors import ConsistencyError, PolytorsError
from .graded import render

DEFAULT_MAX_L = 10**6


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(1, f"{self.prog}: error: {message}\n")


def max_l() -> int:
    raw = os.environ.get("POLYTORS_MAX_L")
    if raw is None:
        return DEFAULT_MAX_L
    try:
        return int(raw)
    except ValueError:
        raise UsageError(f"POLYTORS_MAX_L must be an integer, got {raw!r}")


def parse_range(text: str) -> range:
    """``"7"`` or ``"1..2000"`` (inclusive) as a nonempty range."""
    try:
        if ".." in text:
            lo, hi = text.split("..", 1)
            out = range(int(lo), int(hi) + 1)
        else:
            out = range(int(text), int(text) + 1)
    except ValueError:
        raise UsageError(f"bad integer or range {text!r}")
    if not out:
        raise UsageError(f"empty range {text!r}")
    return out


@dataclass
class RunConfig:
    command: str
    l: range
    n: int = 2
    k: int | None = None
    p: range | None = None
    max_degree: int | None = None
    fmt: str = "text"
    strict: bool = False
    show_omitted: bool = False
    workers: int = 1
    output: str | None = None

    def __post_init__(self):
        cap = max_l()
        if self.l.start < 1:
            raise UsageError("l must be >= 1")
        if self.l[-1] > cap:
            raise UsageError(f"l={self.l[-1]} exceeds the cap {cap} (set POLYTORS_MAX_L)")
        if self.n < 2:
            raise UsageError("n must be >= 2")
        if self.k is not None and self.k < 1:
            raise UsageError("k must be >= 1 or 'inf'")
        if self.max_degree is not None and self.max_degree < 0:
            raise UsageError("max-degree must be >= 0")
        if self.workers < 1:
            raise UsageError("workers must be >= 1")

    def single_l(self) -> int:
        if len(self.l) != 1:
            raise UsageError(f"{self.command} takes a single l, not a range")
        return self.l.start


def cmd_homology(cfg: RunConfig) -> str:
    l = cfg.single_l()
    if cfg.max_degree is None:
        summands = torsion.all_higher_torsion(l, cfg.n)
        top = max([torsion.free_degree(l, cfg.n)] + [s.degree for s in summands])
        max_degree = top
    else:
        max_degree = cfg.max_degree
    if cfg.k is None:
        p = None
        if cfg.p is not None:
            if len(cfg.p) != 1 or not is_prime(cfg.p.start):
                raise UsageError("homology --p takes a single prime")
            p = cfg.p.start
        g = torsion.homology_of_W(l, cfg.n, p, max_degree)
    else:
        g = torsion.homology_of_P(cfg.k, cfg.n, l, max_degree)
    return render(g, cfg.fmt)


def cmd_torsion(cfg: RunConfig) -> str:
    l = cfg.single_l()
    summands = torsion.all_higher_torsion(l, cfg.n, include_omitted=cfg.show_omitted)
    if cfg.p is not None:
        summands = [s for s in summands if s.p in cfg.p]
    if cfg.fmt == "json":
        return json.dumps(
            {"l": l, "n": cfg.n, "summands": [s.as_dict() for s in summands]},
            indent=2,
            ensure_ascii=False,
        )
    kept = [s for s in summands if not s.omitted]
    if cfg.fmt == "md":
        lines = [
            f"### Higher torsion, l={l}, n={cfg.n}",
            "",
            "| p | alpha | degree | summand | least k | omitted |",
            "|---:|---:|---:|---|---:|---|",
        ]
        for s in summands:
            lines.append(
                f"| {s.p} | {s.alpha} | {s.degree} | Z/{s.order} | {s.least_k} | {'yes' if s.omitted else ''} |"
            )
        return "\n".join(lines)
    lines = [f"l={l} n={cfg.n}: {len(kept)} higher-torsion summand{'s' if len(kept) != 1 else ''}"]
    for s in summands:
        line = f"  p={s.p} alpha={s.alpha}  H_{s.degree} ⊇ Z/{s.order} (= Z/{s.p}^{s.exponent})  for k >= {s.least_k}"
        if s.omitted:
            line += f"  [omitted: {s.omit_reason}]"
        lines.append(line)
    return "\n".join(lines)


def cmd_table(cfg: RunConfig) -> str:
    l = cfg.single_l()
    rows = arnold.all_rows(l)
    degrees = list(rows[0].degrees)

    def k_label(index):
        lo = arnold.bracket_start(l, index)
        return f">= {lo}" if index == 4 else f"{lo}, {lo + 1}"

    if cfg.fmt == "json":
        return json.dumps(
            {
                "l": l,
                "degrees": degrees,
                "rows": [
                    {
                        "bracket": r.label,
                        "k_min": arnold.bracket_start(l, r.bracket),
                        "k_max": None if r.bracket == 4 else arnold.bracket_start(l, r.bracket) + 1,
                        "orders": ["inf" if o == arnold.INF else o for o in r.orders],
                    }
                    for r in rows
                ],
            },
            indent=2,
        )
    cells = [["k \\ j"] + [str(d) for d in degrees]]
    for r in rows:
        cells.append([k_label(r.bracket)] + [arnold.format_order(o) for o in r.orders])
    if cfg.fmt == "md":
        out = [f"| {' | '.join(c)} |" for c in cells]
        out.insert(1, "|" + "|".join(["---"] + ["---:"] * len(degrees)) + "|")
        return f"### Orders of H_j(P_{{k,2}}^{l}; Z)\n\n" + "\n".join(out)
    widths = [max(len(row[c]) for row in cells) for c in range(len(cells[0]))]
    lines = [f"Orders of H_j(P_{{k,2}}^{l}; Z), j = {degrees[0]}..{degrees[-1]}"]
    for row in cells:
        lines.append("  ".join(cell.rjust(w) if c else cell.ljust(w) for c, (cell, w) in enumerate(zip(row, widths))).rstrip())
    return "\n".join(lines)


def cmd_verify(cfg: RunConfig) -> tuple[str, oracle.VerificationReport]:
    p_range = cfg.p if cfg.p is not None else range(2, cfg.l[-1] + 2)
    ps = [p for p in p_range if is_prime(p)]
    if not ps:
        raise UsageError("no primes in the --p range")
    report = oracle.verify_sweep(cfg.l, ps, strict=cfg.strict, workers=cfg.workers)
    if cfg.fmt == "json":
        data = report.as_dict()
        data["l"] = [cfg.l.start, cfg.l[-1]]
        data["p"] = ps
        return json.dumps(data, indent=2, ensure_ascii=False), report
    header = f"verify: l in {cfg.l.start}..{cfg.l[-1]}, p in {{{', '.join(map(str, ps))}}}"
    return header + "\n" + report.summary(), report


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="polytors", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def common(sp, need_l=True):
        sp.add_argument("--l", required=need_l, help="l, or a range a..b for verify")
        sp.add_argument("--n", type=int, default=2, help="root multiplicity n >= 2")
        sp.add_argument("--format", dest="fmt", choices=("text", "md", "json"), default="text")
        sp.add_argument("--output", "-o", help="write results to this file instead of stdout")

    h = sub.add_parser("homology", help="homology groups of P_{k,n}^l (k=inf: stable space)")
    common(h)
    h.add_argument("--k", default="inf", help="polynomial degree k, or 'inf'")
    h.add_argument("--p", help="restrict the stable computation to one prime")
    h.add_argument("--max-degree", type=int)

    t = sub.add_parser("torsion", help="higher torsion summands and their least k")
    common(t)
    t.add_argument("--p", help="prime or range of primes to keep")
    t.add_argument("--show-omitted", action="store_true")

    tb = sub.add_parser("table", help="low-degree table of cyclic orders (n = 2)")
    common(tb)

    v = sub.add_parser("verify", help="check every torsion exponent against the cokernel oracle")
    common(v)
    v.add_argument("--p", help="range of primes, default 2..l+1")
    v.add_argument("--strict", action="store_true", help="treat documented ambiguities as failures")
    v.add_argument("--workers", type=int, default=1)
    return parser


def _config(args) -> RunConfig:
    k = getattr(args, "k", None)
    if k is not None and k != "inf":
        try:
            k = int(k)
        except ValueError:
            raise UsageError(f"--k must be an integer or 'inf', got {k!r}")
    elif k == "inf":
        k = None
    p = getattr(args, "p", None)
    return RunConfig(
        command=args.command,
        l=parse_range(args.l),
        n=args.n,
        k=k,
        p=parse_range(p) if p is not None else None,
        max_degree=getattr(args, "max_degree", None),
        fmt=args.fmt,
        strict=getattr(args, "strict", False),
        show_omitted=getattr(args, "show_omitted", False),
        workers=getattr(args, "workers", 1),
        output=args.output,
    )


def _emit(text: str, path: str | None) -> None:
    if path:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(text + "\n")
    else:
        print(text)


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        cfg = _config(args)
        if cfg.command == "table" and cfg.n != 2:
            raise UsageError("the table only covers n = 2")
        if cfg.command == "verify":
            text, report = cmd_verify(cfg)
            _emit(text, cfg.output)
            for check in report.ambiguities + report.mismatches:
                print(check.describe(), file=sys.stderr)
            return report.exit_code
        handler = {"homology": cmd_homology, "torsion": cmd_torsion, "table": cmd_table}[cfg.command]
        _emit(handler(cfg), cfg.output)
        return 0
    except UsageError as exc:
        print(f"polytors: error: {exc}", file=sys.stderr)
        return 1
    except ConsistencyError as exc:
        print(f"polytors: consistency error: {exc}", file=sys.stderr)
        return 2
    except PolytorsError as exc:
        print(f"polytors: error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
