"""Command line front end.

Reads an smodels program from a file or standard input, detects syntactic
symmetries, and writes the program with breaking constraints appended to
standard output (or a file), so the tool drops into a
``grounder | symbreak | solver`` pipe unchanged.  Diagnostics and
statistics go to standard error, never the output stream.

Exit codes: 0 ok, 1 parse or validation failure, 2 budget exceeded in
verify mode, 3 I/O failure, 4 verification found a violation.
"""

import argparse
import sys

from .encoding import dump_graph
from .oracle import OracleBudgetError, answer_sets, check_soundness
from .pipeline import BreakConfig, RunStats, break_program, detect_symmetries
from .smodels import GroundProgram, ParseError, parse_program, validate, write_program
from .symmetry import AtomPermutation


def emit_stats(stats: RunStats) -> str:
    lines = [
        f"generators={stats.generators}",
        f"rules={stats.rules}",
        f"aux={stats.aux}",
        f"seconds={stats.seconds:.3f}",
        f"rows={stats.rows}",
        f"binpairs={stats.binpairs}",
    ]
    return "\n".join(lines) + "\n"


def format_generator(perm: AtomPermutation, program: GroundProgram) -> str:
    """Cycle notation over atom names; hidden atoms print as _<index>."""
    if perm.is_identity:
        return "()"
    return "".join(
        "(" + " ".join(program.name_of(a) for a in cycle) + ")"
        for cycle in perm.cycles()
    )


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="symbreak",
        description="Append symmetry breaking constraints to a ground "
                    "answer set program in the lparse-smodels format.")
    parser.add_argument("input", nargs="?", default="-",
                        help="input file, or - for standard input (default)")
    parser.add_argument("-o", dest="output", default="-", metavar="PATH",
                        help="output file, or - for standard output (default)")
    parser.add_argument("--mode", choices=("break", "detect", "verify"),
                        default="break",
                        help="break: write the augmented program; detect: only "
                             "print generators; verify: oracle-check the "
                             "pipeline on a small input")
    parser.add_argument("--limit", type=int, default=50, metavar="N",
                        help="auxiliary atoms allowed per symmetry (default 50)")
    parser.add_argument("--budget", type=int, default=10 ** 6, metavar="N",
                        help="automorphism search tree node budget")
    parser.add_argument("--stab-levels", type=int, default=5, metavar="N",
                        help="pointwise-stabilizer chain depth for binary "
                             "clauses (default 5)")
    parser.add_argument("--no-rows", action="store_true",
                        help="disable row-interchangeability detection")
    parser.add_argument("--no-binary", action="store_true",
                        help="disable binary prefix clauses")
    parser.add_argument("--stats", action="store_true",
                        help="print statistics on standard error")
    parser.add_argument("--dump-graph", action="store_true",
                        help="dump the colored graph on standard error")
    return parser


def _read_input(path: str) -> str:
    if path == "-":
        stream = getattr(sys.stdin, "buffer", sys.stdin)
        data = stream.read()
        return data.decode() if isinstance(data, bytes) else data
    with open(path, "r") as handle:
        return handle.read()


def _write_output(path: str, text: str):
    if path == "-":
        sys.stdout.write(text)
    else:
        with open(path, "w") as handle:
            handle.write(text)


def _verify(program: GroundProgram, config: BreakConfig) -> int:
    result = break_program(program, config)
    violations = []
    if result.detection.rejected:
        violations.append(f"{result.detection.rejected} automorphism(s) failed "
                          "the syntactic symmetry check")
    if not result.detection.search.complete:
        print("symbreak: search budget exceeded", file=sys.stderr)
        return 2
    try:
        base = answer_sets(program, config.oracle_budget)
        verdict = check_soundness(program, result.detection.generators,
                                  result.program, config.oracle_budget)
    except OracleBudgetError as exc:
        print(f"symbreak: {exc}", file=sys.stderr)
        return 2
    surviving = {frozenset(a for a in interp if a <= program.max_atom)
                 for interp in answer_sets(result.program, config.oracle_budget)}
    if not surviving <= set(base):
        violations.append("augmented program admits a non-answer-set")
    if not verdict.ok:
        violations.append(f"{len(verdict.missing)} orbit(s) lost every representative")
    for g in result.detection.generators:
        mapped = {g.apply_to_set(interp) for interp in base}
        if mapped != set(base):
            violations.append(f"generator {g} does not preserve the answer sets")
    print(f"symbreak: answer sets {len(base)} -> {len(surviving)}"
          + (" (unsat preserved)" if not base and not surviving else ""),
          file=sys.stderr)
    if violations:
        for v in violations:
            print(f"symbreak: VIOLATION: {v}", file=sys.stderr)
        return 4
    print("symbreak: verification passed", file=sys.stderr)
    return 0


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    config = BreakConfig(
        aux_limit=args.limit,
        search_budget=args.budget,
        stabilizer_levels=args.stab_levels,
        row_detection=not args.no_rows,
        binary_clauses=not args.no_binary,
    )
    try:
        text = _read_input(args.input)
    except OSError as exc:
        print(f"symbreak: cannot read input: {exc}", file=sys.stderr)
        return 3
    try:
        program = parse_program(text)
    except ParseError as exc:
        print(f"symbreak: parse error: {exc}", file=sys.stderr)
        return 1
    problems = validate(program)
    if problems:
        for p in problems:
            print(f"symbreak: invalid program: {p}", file=sys.stderr)
        return 1

    if args.mode == "detect":
        detection = detect_symmetries(program, config)
        if args.dump_graph:
            sys.stderr.write(dump_graph(detection.graph))
        if not detection.search.complete:
            print("symbreak: warning: search budget exceeded, "
                  "generator list may be incomplete", file=sys.stderr)
        out = "".join(format_generator(g, program) + "\n"
                      for g in detection.generators)
        try:
            _write_output(args.output, out)
        except OSError as exc:
            print(f"symbreak: cannot write output: {exc}", file=sys.stderr)
            return 3
        if args.stats:
            print(f"generators={len(detection.generators)}", file=sys.stderr)
        return 0

    if args.mode == "verify":
        return _verify(program, config)

    result = break_program(program, config)
    if args.dump_graph:
        sys.stderr.write(dump_graph(result.detection.graph))
    if not result.detection.search.complete:
        print("symbreak: warning: search budget exceeded, "
              "breaking may be incomplete", file=sys.stderr)
    try:
        _write_output(args.output, write_program(result.program))
    except OSError as exc:
        print(f"symbreak: cannot write output: {exc}", file=sys.stderr)
        return 3
    if args.stats:
        sys.stderr.write(emit_stats(result.stats))
    return 0


def run():
    sys.exit(main())
