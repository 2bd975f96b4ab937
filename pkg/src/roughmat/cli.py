"""Command-line front end and the plain-text matrix and covering formats.

Exit codes: 0 success, 1 negative domain result (infeasible, reject,
invalid covering), 2 input or usage error.
"""
from __future__ import annotations

import argparse
import sys

from .approx import OpKind, matrix_approx, oracle_approx
from .axioms import check_fifth_upper, check_second_upper, check_sixth_upper
from .boolmat import BoolMatrix
from .covering import (
    CoveringError,
    SetFamily,
    Universe,
    gamma,
    gir,
    pi,
    reduct,
    validate_covering,
)
from .decompose import (
    ExactBoundError,
    NotDecomposableError,
    decompose_exact,
    decompose_greedy,
    decompose_paper,
)

EXIT_OK, EXIT_NEGATIVE, EXIT_USAGE = 0, 1, 2


class ParseError(ValueError):
    def __init__(self, line: int, col: int, msg: str):
        super().__init__(f"line {line}, column {col}: {msg}")
        self.line = line
        self.col = col


def _data_lines(text: str):
    """Yield (line number, line) for lines that are neither blank nor comments."""
    for no, line in enumerate(text.splitlines(), 1):
        stripped = line.strip()
        if stripped and not stripped.startswith("#"):
            yield no, line


def _tokens(line: str):
    """Yield (column, token) with 1-based columns."""
    col = 0
    for tok in line.split():
        col = line.index(tok, col)
        yield col + 1, tok
        col += len(tok)


def parse_matrix(text: str) -> BoolMatrix:
    lines = list(_data_lines(text))
    if not lines:
        raise ParseError(1, 1, "missing 'n m' header")
    no, header = lines[0]
    toks = list(_tokens(header))
    if len(toks) != 2:
        raise ParseError(no, 1, "header must be 'n m'")
    dims = []
    for col, tok in toks:
        if not tok.isdigit() or int(tok) < 1:
            raise ParseError(no, col, f"expected a positive integer, got {tok!r}")
        dims.append(int(tok))
    n, m = dims
    body = lines[1:]
    if len(body) < n:
        last = body[-1][0] + 1 if body else no + 1
        raise ParseError(last, 1, f"expected {n} rows, found {len(body)}")
    if len(body) > n:
        raise ParseError(body[n][0], 1, f"unexpected data after {n} rows")
    rows = []
    for no, line in body:
        toks = list(_tokens(line))
        row = []
        for col, tok in toks:
            if tok not in ("0", "1"):
                raise ParseError(no, col, f"expected 0 or 1, got {tok!r}")
            row.append(int(tok))
        if len(row) != m:
            col = toks[m][0] if len(toks) > m else len(line) + 1
            raise ParseError(no, col, f"expected {m} entries, found {len(row)}")
        rows.append(row)
    return BoolMatrix.from_rows(rows)


def format_matrix(a: BoolMatrix) -> str:
    lines = [f"{a.rows} {a.cols}"]
    lines += [" ".join(str(v) for v in row) for row in a.to_lists()]
    return "\n".join(lines) + "\n"


def parse_family(text: str) -> SetFamily:
    """Universe line, then one block per line. A lone ``-`` is an empty block."""
    lines = list(_data_lines(text))
    if not lines:
        raise ParseError(1, 1, "missing universe line")
    no, head = lines[0]
    names = []
    for col, tok in _tokens(head):
        if tok in names:
            raise ParseError(no, col, f"duplicate element {tok!r}")
        if tok == "-":
            raise ParseError(no, col, "'-' is not a valid element name")
        names.append(tok)
    universe = Universe.of(names)
    if len(lines) < 2:
        raise ParseError(no + 1, 1, "at least one block is required")
    blocks = []
    for no, line in lines[1:]:
        toks = list(_tokens(line))
        if [t for _, t in toks] == ["-"]:
            blocks.append(0)
            continue
        bits = 0
        for col, tok in toks:
            try:
                bits |= 1 << universe.index(tok)
            except KeyError:
                raise ParseError(no, col, f"unknown element {tok!r}") from None
        blocks.append(bits)
    return SetFamily(universe, tuple(blocks))


def format_family(f: SetFamily) -> str:
    lines = [" ".join(f.universe.names)]
    lines += [" ".join(names) if names else "-" for names in f.block_names()]
    return "\n".join(lines) + "\n"


def _read(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    with open(path, encoding="utf-8") as fh:
        return fh.read()


def _fail(code: int, msg: str) -> int:
    print(msg, file=sys.stderr)
    return code


def _load_covering(path: str):
    return validate_covering(parse_family(_read(path)))


def cmd_characteristic(args) -> int:
    c = _load_covering(args.file)
    m = gamma(c) if args.which == "gamma" else pi(c)
    sys.stdout.write(format_matrix(m))
    return EXIT_OK


def cmd_approx(args) -> int:
    # validate names before the covering so unknown elements stay a usage error
    fam = parse_family(_read(args.file))
    names = [s.strip() for s in args.set.split(",") if s.strip()]
    unknown = [s for s in names if s not in fam.universe.names]
    if unknown:
        return _fail(EXIT_USAGE, f"unknown element {unknown[0]!r}")
    c = validate_covering(fam)
    x = c.universe.setvec(names)
    kind = OpKind.parse(args.op)
    result = matrix_approx(c, kind, x)
    if __debug__:
        expected = oracle_approx(c, kind, x)
        assert result == expected, f"matrix and set routes disagree for {kind.value}"
    sys.stdout.write(",".join(c.universe.names_of(result.bits)) + "\n")
    return EXIT_OK


def _block_line(bits: int, universe: Universe) -> str:
    return " ".join(universe.names_of(bits))


def cmd_decompose(args) -> int:
    b = parse_matrix(_read(args.file))
    if b.rows != b.cols:
        return _fail(EXIT_USAGE, f"matrix must be square, got {b.rows}x{b.cols}")
    solver = {"paper": decompose_paper, "exact": decompose_exact, "greedy": decompose_greedy}[args.mode]
    d = solver(b)
    universe = Universe.numbered(b.rows)
    out = format_matrix(d.matrix)
    out += "".join(_block_line(v, universe) + "\n" for v in d.blocks)
    sys.stdout.write(out)
    return EXIT_OK


def cmd_check(args) -> int:
    a = parse_matrix(_read(args.file))
    if a.rows != a.cols:
        return _fail(EXIT_USAGE, f"matrix must be square, got {a.rows}x{a.cols}")
    if args.names:
        names = [s.strip() for s in args.names.split(",")]
        if len(names) != a.rows:
            return _fail(EXIT_USAGE, f"--names lists {len(names)} elements, matrix has {a.rows}")
        try:
            universe = Universe.of(names)
        except ValueError as exc:
            return _fail(EXIT_USAGE, str(exc))
    else:
        universe = Universe.numbered(a.rows)
    checker = {"second": check_second_upper, "fifth": check_fifth_upper, "sixth": check_sixth_upper}
    try:
        res = checker[args.axiom](a, universe=universe)
    except ValueError as exc:
        return _fail(EXIT_NEGATIVE, str(exc))
    if not res.accepted:
        sys.stdout.write(f"REJECT {res.reason}\n")
        return EXIT_NEGATIVE
    out = "ACCEPT\n"
    if res.relation is not None:
        out += format_matrix(res.relation)
    out += format_family(res.covering)
    sys.stdout.write(out)
    return EXIT_OK


def cmd_reduct(args) -> int:
    fam = parse_family(_read(args.file))
    if args.kind == "union":
        out = reduct(validate_covering(fam))
    else:
        out = gir(fam)
    sys.stdout.write(format_family(out))
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="roughmat", description="Covering approximation operators and B = A·Aᵀ decomposition."
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("characteristic", help="print the type-1 (gamma) or type-2 (pi) matrix")
    p.add_argument("file", help="covering file, or - for stdin")
    p.add_argument("--which", choices=["gamma", "pi"], required=True)
    p.set_defaults(func=cmd_characteristic)

    p = sub.add_parser("approx", help="apply an approximation operator to a set")
    p.add_argument("file")
    p.add_argument("--op", required=True, choices=[k.value.lower() for k in OpKind])
    p.add_argument("--set", required=True, help='comma-separated element names, e.g. "a,b"')
    p.set_defaults(func=cmd_approx)

    p = sub.add_parser("decompose", help="factor a square matrix as A·Aᵀ")
    p.add_argument("file", help="matrix file, or - for stdin")
    p.add_argument("--mode", choices=["paper", "exact", "greedy"], default="paper")
    p.set_defaults(func=cmd_decompose)

    p = sub.add_parser("check", help="test a singleton matrix against an upper-operator axiom")
    p.add_argument("file")
    p.add_argument("--axiom", choices=["second", "fifth", "sixth"], required=True)
    p.add_argument("--names", help="comma-separated element names (default x1..xn)")
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("reduct", help="remove reducible blocks")
    p.add_argument("file")
    p.add_argument("--kind", choices=["union", "gir"], default="union")
    p.set_defaults(func=cmd_reduct)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code == 0 else EXIT_USAGE
    try:
        return args.func(args)
    except ParseError as exc:
        return _fail(EXIT_USAGE, f"parse error: {exc}")
    except OSError as exc:
        return _fail(EXIT_USAGE, str(exc))
    except CoveringError as exc:
        return _fail(EXIT_NEGATIVE, f"invalid covering: {exc}")
    except NotDecomposableError as exc:
        return _fail(EXIT_NEGATIVE, f"no decomposition exists: {exc.reason}")
    except ExactBoundError as exc:
        return _fail(EXIT_NEGATIVE, str(exc))


if __name__ == "__main__":
    sys.exit(main())
