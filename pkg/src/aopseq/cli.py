"""Command line surface and the bit-exact file formats behind it.

All objects are stored as line-oriented "key: value" text with a leading
format tag, integer lists as comma-separated fields, and a provenance block
recording the command, its parameters, and the tool version.  Exact
verdicts alone decide exit codes; float output is advisory.

Exit codes: 0 all requested predicates hold, 1 a predicate fails, 2 input
error, 3 invariant violation (a self-check or a sweep bound failed, which
is worth a loud, distinct signal).
"""

from __future__ import annotations

import argparse
import sys
from dataclasses import dataclass
from pathlib import Path
from typing import Optional, TextIO, Union

from . import __version__
from .aop import (
    check_aop,
    is_perfect_array,
    is_perfect_projection,
    is_perfect_sequence,
)
from .correlation import autocorrelate_2d_float, autocorrelate_float
from .cyclotomic import CyclotomicInt
from .indexfn import frank_array
from .quaternion import QuaternionSequence, quat_is_perfect
from .scatter import BiQuadraticSpec, collapse_check, trace_crosscorrelation, write_trace_csv
from .search import BudgetExceeded, SearchSpec, run_search
from .seqmodel import (
    PhaseArray,
    PhaseSequence,
    ProjectionSequence,
    column_sum,
    flatten,
    row_sum,
    unflatten,
)

__all__ = [
    "CliInputError",
    "RunConfig",
    "read_object",
    "write_object",
    "main",
]

EXIT_OK = 0
EXIT_PREDICATE_FAILED = 1
EXIT_INPUT_ERROR = 2
EXIT_INVARIANT_VIOLATION = 3

FileObject = Union[PhaseSequence, PhaseArray, QuaternionSequence, ProjectionSequence]


class CliInputError(ValueError):
    """Malformed file or inconsistent command inputs."""


@dataclass(frozen=True)
class RunConfig:
    """Resolved settings of one invocation, echoed into report output."""

    command: str
    mode: str = "exact"
    jobs: int = 1
    budget: int = 10**8
    seed: int = 0
    out: str = ""

    def echo_lines(self) -> list[str]:
        return [
            f"config-command: {self.command}",
            f"config-mode: {self.mode}",
            f"config-jobs: {self.jobs}",
            f"config-budget: {self.budget}",
            f"config-seed: {self.seed}",
            f"config-tool-version: aopseq {__version__}",
        ]


def _provenance_lines(command: str, parameters: dict) -> list[str]:
    rendered = " ".join(f"{k}={parameters[k]}" for k in sorted(parameters))
    return [
        f"provenance-command: {command}",
        f"provenance-parameters: {rendered}",
        f"provenance-tool-version: aopseq {__version__}",
    ]


def _int_list(text: str) -> list[int]:
    try:
        return [int(f) for f in text.split(",")] if text else []
    except ValueError:
        raise CliInputError(f"expected a comma-separated integer list, got {text!r}")


def write_object(obj: FileObject, stream: TextIO, command: str, parameters: dict) -> None:
    if isinstance(obj, PhaseSequence):
        lines = [
            "format: phase-sequence/1",
            f"order: {obj.order}",
            f"length: {len(obj)}",
            "exponents: " + ",".join(str(e) for e in obj.exponents),
        ]
    elif isinstance(obj, PhaseArray):
        lines = [
            "format: phase-array/1",
            f"order: {obj.order}",
            f"rows: {obj.rows}",
            f"cols: {obj.cols}",
            "exponents: " + ",".join(str(e) for e in obj.exponents),
        ]
    elif isinstance(obj, QuaternionSequence):
        lines = [
            "format: quaternion-sequence/1",
            f"length: {obj.length}",
            "symbols: " + ",".join(obj.symbols()),
        ]
    elif isinstance(obj, ProjectionSequence):
        lines = [
            "format: projection/1",
            f"order: {obj.order}",
            f"length: {len(obj)}",
            "values: "
            + ";".join(",".join(str(c) for c in v.coeffs) for v in obj.values),
        ]
    else:
        raise TypeError(f"cannot serialize {type(obj).__name__}")
    lines += _provenance_lines(command, parameters)
    stream.write("\n".join(lines) + "\n")


def _parse_kv(text: str) -> dict[str, str]:
    fields: dict[str, str] = {}
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        if ":" not in line:
            raise CliInputError(f"line {lineno} is not a 'key: value' field: {raw!r}")
        key, value = line.split(":", 1)
        fields[key.strip()] = value.strip()
    return fields


def _field(fields: dict[str, str], key: str) -> str:
    if key not in fields:
        raise CliInputError(f"missing field {key!r}")
    return fields[key]


def read_object(path: Union[str, Path]) -> FileObject:
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise CliInputError(f"cannot read {path}: {exc}")
    fields = _parse_kv(text)
    tag = _field(fields, "format")
    try:
        if tag == "phase-sequence/1":
            seq = PhaseSequence(
                int(_field(fields, "order")),
                tuple(_int_list(_field(fields, "exponents"))),
            )
            if len(seq) != int(_field(fields, "length")):
                raise CliInputError("length field disagrees with the exponent list")
            return seq
        if tag == "phase-array/1":
            arr = PhaseArray(
                int(_field(fields, "order")),
                int(_field(fields, "rows")),
                int(_field(fields, "cols")),
                tuple(_int_list(_field(fields, "exponents"))),
            )
            return arr
        if tag == "quaternion-sequence/1":
            seq = QuaternionSequence.from_symbols(
                _field(fields, "symbols").split(",")
            )
            if seq.length != int(_field(fields, "length")):
                raise CliInputError("length field disagrees with the symbol list")
            return seq
        if tag == "projection/1":
            order = int(_field(fields, "order"))
            values = tuple(
                CyclotomicInt(order, tuple(int(c) for c in chunk.split(",")))
                for chunk in _field(fields, "values").split(";")
            )
            proj = ProjectionSequence(order, values)
            if len(proj) != int(_field(fields, "length")):
                raise CliInputError("length field disagrees with the value list")
            return proj
    except CliInputError:
        raise
    except (ValueError, TypeError) as exc:
        raise CliInputError(f"malformed {tag} file: {exc}")
    raise CliInputError(f"unknown format tag {tag!r}")


def _write_report(path: str, lines: list[str]) -> None:
    if path:
        Path(path).write_text("\n".join(lines) + "\n")
    else:
        print("\n".join(lines))


def cmd_construct(args: argparse.Namespace) -> int:
    if args.family != "frank":
        print(f"unknown family {args.family!r}", file=sys.stderr)
        return EXIT_INPUT_ERROR
    if args.n < 1:
        print("--n must be positive", file=sys.stderr)
        return EXIT_INPUT_ERROR
    array = frank_array(args.n)
    seq = flatten(array)
    # the formula is transcribed from the literature; never write a file
    # that fails its own predicates
    if not check_aop(array).holds or not is_perfect_sequence(seq):
        print("self-validation failed for the constructed object", file=sys.stderr)
        return EXIT_INVARIANT_VIOLATION
    obj: FileObject = array if args.as_array else seq
    params = {"family": args.family, "n": args.n, "as_array": args.as_array}
    if args.out:
        with open(args.out, "w") as fh:
            write_object(obj, fh, "construct", params)
    else:
        write_object(obj, sys.stdout, "construct", params)
    return EXIT_OK


def _float_advisory(obj: FileObject) -> list[str]:
    if isinstance(obj, PhaseSequence):
        profile = autocorrelate_float(obj)
    elif isinstance(obj, PhaseArray):
        profile = autocorrelate_2d_float(obj)
    else:
        return []
    offpeak = [abs(v) for i, v in enumerate(profile.values) if i != 0]
    worst = max(offpeak) if offpeak else 0.0
    return [f"float-offpeak-max: {worst!r}"]


def cmd_verify(args: argparse.Namespace) -> int:
    config = RunConfig("verify", mode=args.mode, out=args.out or "")
    try:
        obj = read_object(args.path)
    except CliInputError as exc:
        print(str(exc), file=sys.stderr)
        return EXIT_INPUT_ERROR
    lines = config.echo_lines()
    holds = True
    if isinstance(obj, PhaseSequence):
        perfect = is_perfect_sequence(obj)
        holds &= perfect
        lines.append(f"perfect: {str(perfect).lower()}")
        if args.divisor:
            if len(obj) % args.divisor:
                print(
                    f"divisor {args.divisor} does not divide length {len(obj)}",
                    file=sys.stderr,
                )
                return EXIT_INPUT_ERROR
            verdict = check_aop(unflatten(obj, len(obj) // args.divisor, args.divisor))
            holds &= verdict.holds
            lines.append(f"aop: {str(verdict.holds).lower()}")
            if not verdict.holds:
                lines.append(f"aop-failing-condition: {verdict.failing_condition}")
                lines.append(
                    "aop-witness: " + ",".join(str(w) for w in verdict.witness)
                )
    elif isinstance(obj, PhaseArray):
        verdict = check_aop(obj)
        perfect = is_perfect_array(obj)
        holds &= verdict.holds and perfect
        lines.append(f"aop: {str(verdict.holds).lower()}")
        if not verdict.holds:
            lines.append(f"aop-failing-condition: {verdict.failing_condition}")
            lines.append("aop-witness: " + ",".join(str(w) for w in verdict.witness))
        lines.append(f"perfect-array: {str(perfect).lower()}")
    elif isinstance(obj, QuaternionSequence):
        wanted = ("right", "left") if args.convention == "both" else (args.convention,)
        for conv in wanted:
            ok = quat_is_perfect(obj, conv)
            holds &= ok
            lines.append(f"perfect-{conv}: {str(ok).lower()}")
    else:
        perfect = is_perfect_projection(obj)
        holds &= perfect
        lines.append(f"perfect-projection: {str(perfect).lower()}")
    if args.mode == "float":
        lines += _float_advisory(obj)
    lines.append(f"verdict: {'holds' if holds else 'fails'}")
    _write_report(args.out or "", lines)
    return EXIT_OK if holds else EXIT_PREDICATE_FAILED


def cmd_search(args: argparse.Namespace) -> int:
    try:
        spec = SearchSpec(
            family=args.family,
            n=args.n,
            k=args.k,
            deg_x=args.deg_x,
            deg_y=args.deg_y,
            r_range=(args.min_r, args.max_r),
            c_range=(args.min_c, args.max_c),
            length=args.length,
            workers=args.jobs,
            budget=args.budget,
            restriction=args.restriction,
            symmetry=args.symmetry,
            audit=args.audit,
            hit_limit=args.hit_limit,
            filter_mod=args.filter_mod,
            filter_residue=args.filter_residue,
            progress_every=args.progress_every,
        )
    except ValueError as exc:
        print(str(exc), file=sys.stderr)
        return EXIT_INPUT_ERROR
    try:
        report = run_search(spec)
    except BudgetExceeded as exc:
        print(str(exc), file=sys.stderr)
        return EXIT_INPUT_ERROR
    text = report.canonical_json()
    if args.out:
        Path(args.out).write_text(text)
    else:
        sys.stdout.write(text)
    print(
        f"searched {report.total_candidates} candidates in "
        f"{report.wall_time_s:.2f}s with {spec.workers} worker(s)",
        file=sys.stderr,
    )
    if report.bound_violated:
        print(
            f"bound violation: hit of length {report.max_hit_length} "
            f"exceeds {report.bound_limit}",
            file=sys.stderr,
        )
        return EXIT_INVARIANT_VIOLATION
    return EXIT_OK


def cmd_scatter(args: argparse.Namespace) -> int:
    try:
        a = _int_list(args.a)
        b = _int_list(args.b)
        cc = _int_list(args.cc)
        spec = BiQuadraticSpec(args.n, args.k, tuple(a), tuple(b), tuple(cc), args.rows)
    except (CliInputError, ValueError) as exc:
        print(str(exc), file=sys.stderr)
        return EXIT_INPUT_ERROR
    report = collapse_check(spec)
    print(f"collapse: {str(report.collapsed).lower()}")
    print(f"period-verified: {str(report.period_verified).lower()}")
    print(f"checked-pairs: {report.checked_pairs}")
    out_dir = Path(args.out_dir) if args.out_dir else None
    if out_dir is not None:
        out_dir.mkdir(parents=True, exist_ok=True)
    for j1 in range(spec.cols):
        for j2 in range(j1 + 1, spec.cols):
            trace = trace_crosscorrelation(spec, j1, j2, args.tau)
            s = trace.final_sum
            print(f"final-sum {j1},{j2}: {s.real!r} {s.imag!r} abs={abs(s)!r}")
            if out_dir is not None:
                with open(out_dir / f"trace_{j1}_{j2}.csv", "w") as fh:
                    write_trace_csv(trace, fh)
    return EXIT_OK


def cmd_project(args: argparse.Namespace) -> int:
    try:
        obj = read_object(args.path)
    except CliInputError as exc:
        print(str(exc), file=sys.stderr)
        return EXIT_INPUT_ERROR
    if not isinstance(obj, PhaseArray):
        print("projection needs a phase-array file", file=sys.stderr)
        return EXIT_INPUT_ERROR
    proj = column_sum(obj) if args.axis == "cols" else row_sum(obj)
    perfect = is_perfect_projection(proj)
    peak = sum(complex(v).real**2 + complex(v).imag**2 for v in proj.values)
    params = {"axis": args.axis, "source": str(args.path)}
    if args.out:
        with open(args.out, "w") as fh:
            write_object(proj, fh, "project", params)
    else:
        write_object(proj, sys.stdout, "project", params)
    print(f"perfect-projection: {str(perfect).lower()}", file=sys.stderr)
    print(f"peak-energy: {peak!r}", file=sys.stderr)
    return EXIT_OK if perfect else EXIT_PREDICATE_FAILED


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="aopseq",
        description="construct, verify, search, and analyze perfect sequences "
        "and arrays with orthogonal columns",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("construct", help="generate a validated known-family object")
    p.add_argument("--family", default="frank")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--as-array", action="store_true", dest="as_array")
    p.add_argument("--out", default="")
    p.set_defaults(func=cmd_construct)

    p = sub.add_parser("verify", help="check perfection/orthogonality predicates")
    p.add_argument("path")
    p.add_argument("--divisor", type=int, default=0)
    p.add_argument("--mode", choices=("exact", "float"), default="exact")
    p.add_argument("--convention", choices=("right", "left", "both"), default="right")
    p.add_argument("--out", default="")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("search", help="exhaustively sweep a candidate space")
    p.add_argument("--family", required=True)
    p.add_argument("--n", type=int, default=0)
    p.add_argument("--k", type=int, default=0)
    p.add_argument("--deg-x", type=int, default=2, dest="deg_x")
    p.add_argument("--deg-y", type=int, default=2, dest="deg_y")
    p.add_argument("--min-r", type=int, default=1, dest="min_r")
    p.add_argument("--max-r", type=int, default=1, dest="max_r")
    p.add_argument("--min-c", type=int, default=1, dest="min_c")
    p.add_argument("--max-c", type=int, default=1, dest="max_c")
    p.add_argument("--length", type=int, default=0)
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("--budget", type=int, default=10**8)
    p.add_argument("--restriction", default="")
    p.add_argument("--symmetry", default="")
    p.add_argument("--audit", action="store_true")
    p.add_argument("--hit-limit", type=int, default=4096, dest="hit_limit")
    p.add_argument("--filter-mod", type=int, default=1, dest="filter_mod")
    p.add_argument("--filter-residue", type=int, default=0, dest="filter_residue")
    p.add_argument("--progress-every", type=int, default=0, dest="progress_every")
    p.add_argument("--out", default="")
    p.set_defaults(func=cmd_search)

    p = sub.add_parser("scatter", help="factor column correlations of a "
                       "floored bi-quadratic array")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--a", required=True, help="comma list, quadratic coefficient per column")
    p.add_argument("--b", required=True, help="comma list, linear coefficient per column")
    p.add_argument("--cc", required=True, help="comma list, constant per column")
    p.add_argument("--rows", type=int, required=True)
    p.add_argument("--tau", type=int, default=0)
    p.add_argument("--out-dir", default="", dest="out_dir")
    p.set_defaults(func=cmd_scatter)

    p = sub.add_parser("project", help="sum an array along one axis and test "
                       "the projection's perfection")
    p.add_argument("path")
    p.add_argument("--axis", choices=("rows", "cols"), default="cols")
    p.add_argument("--out", default="")
    p.set_defaults(func=cmd_project)

    return parser


def main(argv: Optional[list[str]] = None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except AssertionError as exc:
        # internal cross-checks speak up with the refutation-grade code
        print(f"invariant violation: {exc}", file=sys.stderr)
        return EXIT_INVARIANT_VIOLATION


def console_entry() -> None:
    sys.exit(main())
