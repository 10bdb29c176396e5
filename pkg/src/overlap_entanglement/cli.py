"""Command-line entry point: ``curve``, ``stationary`` and ``verify``.

Exit codes: 0 success, 1 verification failure, 2 usage error, 3 I/O error.
"""

from __future__ import annotations

import argparse
import io
import json
import math
import sys
from dataclasses import dataclass, field

import numpy as np

from . import __version__
from .core import ConfigError, EnsembleConfig, ExcitationCase, validate_config
from .dynamics import coeff_closed
from .negativity import negativity, stationary_negativity
from . import oracle

EXIT_OK, EXIT_FAILED, EXIT_USAGE, EXIT_IO = 0, 1, 2, 3


class OutputError(OSError):
    pass


@dataclass
class ResultTable:
    columns: list[str]
    rows: list[list[float]]
    metadata: dict[str, object] = field(default_factory=dict)

    def __post_init__(self):
        width = len(self.columns)
        for row in self.rows:
            if len(row) != width:
                raise ValueError(f"row has {len(row)} values, expected {width}")
            if not all(math.isfinite(x) for x in row):
                raise ValueError(f"non-finite value in row {row}")


def _fmt(x: float) -> str:
    return f"{x:.17g}"


def render(table: ResultTable, fmt: str) -> str:
    if fmt == "json":
        payload = {"metadata": table.metadata, "columns": table.columns, "rows": table.rows}
        return json.dumps(payload, indent=2) + "\n"
    buf = io.StringIO()
    for key, value in table.metadata.items():
        buf.write(f"# {key}: {value}\n")
    buf.write(",".join(table.columns) + "\n")
    for row in table.rows:
        buf.write(",".join(_fmt(x) for x in row) + "\n")
    return buf.getvalue()


def emit(table: ResultTable, fmt: str = "csv", path: str | None = None) -> int:
    """Write ``table`` to ``path`` (stdout when ``None``); returns bytes written."""
    data = render(table, fmt).encode()
    if path is None or path == "-":
        sys.stdout.write(data.decode())
        sys.stdout.flush()
        return len(data)
    try:
        with open(path, "wb") as fh:
            fh.write(data)
    except OSError as exc:
        raise OutputError(f"cannot write {path}: {exc}") from exc
    return len(data)


def parse_range(text: str) -> list[int]:
    """``"3"`` -> [3], ``"1..8"`` -> [1, ..., 8]."""
    try:
        if ".." in text:
            lo, hi = (int(part) for part in text.split("..", 1))
        else:
            lo = hi = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected an integer or lo..hi range, got {text!r}") from None
    if hi < lo:
        raise argparse.ArgumentTypeError(f"empty range {text!r}")
    return list(range(lo, hi + 1))


def _positive_float(text: str) -> float:
    value = float(text)
    if not value > 0 or not math.isfinite(value):
        raise argparse.ArgumentTypeError(f"expected a positive number, got {text!r}")
    return value


def _base_metadata(args, command: str) -> dict[str, object]:
    return {"tool": "overlap-entanglement", "version": __version__, "command": command}


def cmd_curve(args) -> ResultTable:
    case = ExcitationCase.parse(args.case)
    cfg = validate_config(EnsembleConfig(args.N, args.n), case,
                          oracle=args.oracle, max_total_qubits=args.max_total_qubits)
    times = np.linspace(0.0, args.t_max, args.samples)
    values = negativity(case, times, cfg.N, cfg.n)
    columns = ["t", "negativity"]
    rows = [[float(t), float(v)] for t, v in zip(times, values)]
    if args.oracle:
        columns += ["oracle_negativity", "abs_diff"]
        reference = oracle.oracle_negativities(cfg, case, times,
                                               max_total_qubits=args.max_total_qubits)
        for row, ref in zip(rows, reference):
            row += [ref, abs(ref - row[1])]
    if args.coeffs:
        prefix = "c" if case is ExcitationCase.COMMON else "a"
        columns += [f"{prefix}{j}" for j in range(11)]
        coeffs = coeff_closed(case, times, cfg.N, cfg.n).values
        for row, col in zip(rows, coeffs.T):
            row += [float(x) for x in col]
    meta = _base_metadata(args, "curve")
    meta.update(case=case.value, N=cfg.N, n=cfg.n, t_max=args.t_max, samples=args.samples,
                grid="uniform", oracle=args.oracle)
    return ResultTable(columns, rows, meta)


def cmd_stationary(args) -> ResultTable:
    case = ExcitationCase.parse(args.case)
    rows = []
    for n in args.n:
        for N in args.N:
            validate_config(EnsembleConfig(N, n), case)
            rows.append([N, n, stationary_negativity(case, N, n)])
    meta = _base_metadata(args, "stationary")
    meta.update(case=case.value, N=f"{args.N[0]}..{args.N[-1]}", n=f"{args.n[0]}..{args.n[-1]}")
    if args.argmax:
        for n in args.n:
            # ties go to the smaller N, as in argmax_over_N
            best = max((row for row in rows if row[1] == n), key=lambda row: (row[2], -row[0]))
            meta[f"argmax_N[n={n}]"] = best[0]
    return ResultTable(["N", "n", "stationary_negativity"], rows, meta)


def cmd_verify(args) -> int:
    from .verification import run_checks

    results = run_checks(
        tol=args.tol,
        max_total_qubits=args.max_total_qubits,
        progress=lambda r: print(r.line(), flush=True),
    )
    failed = [r for r in results if not r.passed]
    print(f"{len(results) - len(failed)}/{len(results)} checks passed "
          f"(oracle cap 2N+n <= {args.max_total_qubits})")
    return EXIT_FAILED if failed else EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="overlap-entanglement",
        description="Negativity between two qubit ensembles dissipating into overlapping environments.",
    )
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)

    def output_flags(p):
        p.add_argument("--format", choices=("csv", "json"), default="csv")
        p.add_argument("--out", default=None, help="output path (default: stdout)")

    curve = sub.add_parser("curve", help="negativity versus time")
    curve.add_argument("--case", choices=("common", "side"), required=True)
    curve.add_argument("--N", type=int, required=True)
    curve.add_argument("--n", type=int, required=True)
    curve.add_argument("--t-max", type=_positive_float, default=10.0)
    curve.add_argument("--samples", type=int, default=101)
    curve.add_argument("--oracle", action="store_true", help="add brute-force reference columns")
    curve.add_argument("--coeffs", action="store_true", help="add the 11 expansion coefficients")
    curve.add_argument("--max-total-qubits", type=int, default=12)
    output_flags(curve)

    stat = sub.add_parser("stationary", help="t -> infinity negativity over an (N, n) grid")
    stat.add_argument("--case", choices=("common", "side"), required=True)
    stat.add_argument("--N", type=parse_range, required=True)
    stat.add_argument("--n", type=parse_range, required=True)
    stat.add_argument("--argmax", action="store_true", help="record the maximising N per n in metadata")
    output_flags(stat)

    verify = sub.add_parser("verify", help="run the full check suite")
    verify.add_argument("--tol", type=_positive_float, default=None,
                        help="override every numeric tolerance")
    verify.add_argument("--max-total-qubits", type=int, default=8)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        if args.command == "verify":
            if args.max_total_qubits < 2:
                parser.error("--max-total-qubits must be at least 2")
            return cmd_verify(args)
        if args.command == "curve":
            if args.samples < 2:
                parser.error("--samples must be at least 2")
            table = cmd_curve(args)
        else:
            table = cmd_stationary(args)
    except ConfigError as exc:
        parser.error(str(exc))
    try:
        emit(table, args.format, args.out)
    except OutputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_IO
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
