"""Command-line interface.

Exit codes: 0 success or equal, 1 distinct (or failed longitude check),
2 link or file not found, 3 invalid input, 4 incomparable.
"""

from __future__ import annotations

import argparse
import sys
from typing import Optional, Sequence

from .invariant import IncomparableError, classical_mu, invariants_equal, quotient_for, realize_family, total_invariant
from .linkfile import LinkData, ParseError, parse_link_file, serialize_link
from .nilpotent import check_longitude_identity, emit_presentation, longitude_word, magnus_of_word
from .system import (CComplexData, SurfaceSystemData, ValidationError, linking_matrix,
                     m_vector, ordered_form, t_vector, to_surface_system, validate_ccomplex,
                     validate_system)
from .wedge import triples

EXIT_OK, EXIT_DISTINCT, EXIT_NOT_FOUND, EXIT_INVALID, EXIT_INCOMPARABLE = 0, 1, 2, 3, 4


class CliError(Exception):
    def __init__(self, code: int, message: str):
        self.code = code
        super().__init__(message)


def _read(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    try:
        with open(path, encoding="utf-8") as fh:
            return fh.read()
    except FileNotFoundError:
        raise CliError(EXIT_NOT_FOUND, f"{path}: no such file") from None


def load_link(path: str, name: Optional[str], strict: bool = False) -> tuple[str, LinkData]:
    try:
        links = parse_link_file(_read(path))
    except ParseError as exc:
        raise CliError(EXIT_INVALID, f"{path}: {exc}") from None
    if name is None:
        if len(links) != 1:
            raise CliError(EXIT_NOT_FOUND, f"{path}: {len(links)} links in file, name one of them")
        name, data = links[0]
    else:
        found = dict(links)
        if name not in found:
            raise CliError(EXIT_NOT_FOUND, f"{path}: no link named {name!r}")
        data = found[name]
    diags = validate_ccomplex(data) if isinstance(data, CComplexData) else []
    if not diags:
        system = to_surface_system(data) if isinstance(data, CComplexData) else data
        diags = validate_system(system, strict)
    if diags:
        raise CliError(EXIT_INVALID, f"{path}: link {name!r} is invalid:\n  " + "\n  ".join(diags))
    return name, data


def _system(data: LinkData) -> SurfaceSystemData:
    return to_surface_system(data) if isinstance(data, CComplexData) else data


def _need_three(name: str, data: LinkData) -> None:
    if data.n < 3:
        raise CliError(EXIT_INVALID, f"link {name!r}: needs at least three components")


def invariant_report(name: str, data: LinkData, fmt: str = "plain") -> str:
    _need_three(name, data)
    s = _system(data)
    lk = linking_matrix(s)
    m, t = m_vector(s), t_vector(s)
    cls = total_invariant(s)
    q = cls.quotient
    free, torsion = q.structure()
    f = cls.functional_value() if s.n == 4 and all(
        lk[i][j] == 1 for i in range(4) for j in range(4) if i != j) else None
    mubar = [(key, classical_mu(s, *key)) for key in triples(s.n)]
    if fmt == "tsv":
        rows = []
        for i in range(s.n):
            for j in range(i + 1, s.n):
                rows.append(("lk", i + 1, j + 1, "-", lk[i][j]))
        rows += [("m", *key, v) for key, v in m.items()]
        rows += [("t", *key, v) for key, v in t.items()]
        rows += [("mu", *key, v) for key, v in cls.rep.items()]
        for key, (res, delta) in mubar:
            rows.append(("mubar", *key, res))
            rows.append(("delta", *key, delta))
        rows.append(("rank", "-", "-", "-", free))
        rows += [("torsion", "-", "-", "-", d) for d in torsion]
        if f is not None:
            rows.append(("f", "-", "-", "-", f))
        return "".join("\t".join(map(str, row)) + "\n" for row in rows)
    width = max(len(str(x)) for row in lk for x in row)
    lines = [f"link {name}", f"components {s.n}", "linking matrix"]
    lines += ["  " + " ".join(str(x).rjust(width) for x in row) for row in lk]
    lines += [f"m[{i},{j},{k}] = {v}" for (i, j, k), v in m.items()]
    lines += [f"t[{i},{j},{k}] = {v}" for (i, j, k), v in t.items()]
    for (i, j, k), (res, delta) in mubar:
        lines.append(f"mubar[{i},{j},{k}] = {res}" + (f" mod {delta}" if delta else ""))
    lines.append(q.describe())
    lines.append(f"mu = {cls.rep}")
    if f is not None:
        lines.append(f"f = {f}")
    return "\n".join(lines) + "\n"


def cmd_invariant(args) -> int:
    name, data = load_link(args.file, args.name, args.strict)
    print(invariant_report(name, data, args.format), end="")
    return EXIT_OK


def compare_verdict(a: tuple[str, LinkData], b: tuple[str, LinkData]) -> tuple[int, str]:
    for name, data in (a, b):
        _need_three(name, data)
    if a[1].n != b[1].n:
        return EXIT_INCOMPARABLE, "INCOMPARABLE (component counts differ)"
    ca, cb = total_invariant(_system(a[1])), total_invariant(_system(b[1]))
    try:
        equal = invariants_equal(ca, cb)
    except IncomparableError:
        return EXIT_INCOMPARABLE, "INCOMPARABLE (linking numbers differ)"
    if equal:
        return EXIT_OK, "EQUAL in M"
    q = ca.quotient
    fa, fb = ca.functional_value(), cb.functional_value()
    if fa is not None:
        return EXIT_DISTINCT, f"DISTINCT in M (f = {fa} vs {fb})"
    for pos, ((d, x), (_, y)) in enumerate(zip(q.coordinates(ca.rep), q.coordinates(cb.rep))):
        if x != y:
            where = "free coordinate" if d == 0 else f"Z/{d} coordinate"
            return EXIT_DISTINCT, f"DISTINCT in M ({where} {pos + 1}: {x} vs {y})"
    return EXIT_DISTINCT, "DISTINCT in M"


def cmd_compare(args) -> int:
    a = load_link(args.file_a, args.name_a, args.strict)
    b = load_link(args.file_b, args.name_b, args.strict)
    code, text = compare_verdict(a, b)
    print(text)
    return code


def normalize_report(name: str, data: LinkData) -> str:
    _need_three(name, data)
    result, log = ordered_form(_system(data))
    lines = [f"# ordered form of {name}: {len(log)} moves"]
    lines += [f"# {step}. {move}" for step, move in enumerate(log, start=1)]
    return "\n".join(lines) + "\n" + serialize_link(name, result)


def cmd_normalize(args) -> int:
    name, data = load_link(args.file, args.name, args.strict)
    print(normalize_report(name, data), end="")
    return EXIT_OK


def _require_ccomplex(name: str, data: LinkData) -> CComplexData:
    if not isinstance(data, CComplexData):
        raise CliError(EXIT_INVALID, f"link {name!r}: longitudes need a clasp (C-complex) body")
    return data


def longitudes_report(name: str, data: LinkData, degree: int = 2) -> tuple[bool, str]:
    c = _require_ccomplex(name, data)
    lines = [f"link {name}"]
    for k in range(1, c.n + 1):
        w = longitude_word(c, k).word
        lines.append(f"l_{k} = {w.reduced()}")
        series = magnus_of_word(w, degree, c.n)
        for mono, coeff in series.items():
            if mono:
                lines.append(f"  {''.join(f'X{i}' for i in mono)} = {coeff}")
    ok = True
    if c.n >= 3:
        report = check_longitude_identity(c)
        ok = report.ok
        lines.append(report.summary())
    return ok, "\n".join(lines) + "\n"


def cmd_longitudes(args) -> int:
    name, data = load_link(args.file, args.name, args.strict)
    ok, text = longitudes_report(name, data, args.degree)
    print(text, end="")
    return EXIT_OK if ok else EXIT_DISTINCT


def cmd_presentation(args) -> int:
    name, data = load_link(args.file, args.name, args.strict)
    c = _require_ccomplex(name, data)
    if args.k < 2:
        raise CliError(EXIT_INVALID, "--k must be >= 2")
    print(emit_presentation(c, args.k), end="")
    return EXIT_OK


def _parse_lk(text: str, n: int) -> list[list[int]]:
    lk = [[0] * n for _ in range(n)]
    if text in ("ones", "zero"):
        value = 1 if text == "ones" else 0
        return [[0 if i == j else value for j in range(n)] for i in range(n)]
    try:
        values = [int(x) for x in text.replace(",", " ").split()]
    except ValueError:
        raise CliError(EXIT_INVALID, f"bad --lk value {text!r}") from None
    if len(values) != n * (n - 1) // 2:
        raise CliError(EXIT_INVALID, f"--lk needs {n * (n - 1) // 2} upper-triangle entries for n={n}")
    it = iter(values)
    for i in range(n):
        for j in range(i + 1, n):
            lk[i][j] = lk[j][i] = next(it)
    return lk


def cmd_quotient(args) -> int:
    if args.n < 3:
        raise CliError(EXIT_INVALID, "--n must be >= 3")
    q = quotient_for(_parse_lk(args.lk, args.n))
    lines = [f"n = {q.n}", f"generators {q.V.rows}, relations {q.V.cols}", q.describe()]
    f = q.rank_one_functional()
    if f is not None:
        lines.append("functional " + " ".join(
            f"{c:+d}*x[{i},{j},{k}]" for (i, j, k), c in zip(triples(q.n), f) if c))
    print("\n".join(lines))
    return EXIT_OK


def cmd_realize(args) -> int:
    name = args.name or f"L_{args.m}"
    text = f"# realization family member m = {args.m}\n" + serialize_link(name, realize_family(args.m))
    if args.output:
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        print(text, end="")
    return EXIT_OK


def cmd_validate(args) -> int:
    try:
        links = parse_link_file(_read(args.file))
    except ParseError as exc:
        raise CliError(EXIT_INVALID, f"{args.file}: {exc}") from None
    bad = False
    for name, data in links:
        diags = validate_ccomplex(data) if isinstance(data, CComplexData) else []
        if not diags:
            diags = validate_system(_system(data), args.strict)
        print(f"{name}: " + ("ok" if not diags else "invalid"))
        for d in diags:
            print(f"  {d}")
        bad = bad or bool(diags)
    return EXIT_INVALID if bad else EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="totalmilnor",
                                     description="Total Milnor invariants of links from clasp-word data.")
    sub = parser.add_subparsers(dest="command", required=True)

    def link_args(p, strict=True):
        p.add_argument("file", help="link file, or - for stdin")
        p.add_argument("name", nargs="?", help="link name (optional if the file holds one link)")
        if strict:
            p.add_argument("--strict", action="store_true", help="C-complex-strength validation")

    p = sub.add_parser("invariant", help="linking matrix, m, t, quotient and invariant")
    link_args(p)
    p.add_argument("--format", choices=("plain", "tsv"), default="plain")
    p.set_defaults(func=cmd_invariant)

    p = sub.add_parser("compare", help="decide equality of two invariants")
    p.add_argument("file_a")
    p.add_argument("name_a")
    p.add_argument("file_b")
    p.add_argument("name_b")
    p.add_argument("--strict", action="store_true")
    p.set_defaults(func=cmd_compare)

    p = sub.add_parser("normalize", help="ordered form with move log")
    link_args(p)
    p.set_defaults(func=cmd_normalize)

    p = sub.add_parser("longitudes", help="longitude words modulo F_3 and their check")
    link_args(p)
    p.add_argument("--degree", type=int, choices=(2, 3), default=2)
    p.set_defaults(func=cmd_longitudes)

    p = sub.add_parser("presentation", help="Milnor presentation of pi/pi_k")
    link_args(p)
    p.add_argument("--k", type=int, default=3)
    p.set_defaults(func=cmd_presentation)

    p = sub.add_parser("quotient", help="structure of the total Milnor quotient")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--lk", default="ones",
                   help="ones, zero, or upper-triangle entries lk12,lk13,...,lk(n-1)n")
    p.set_defaults(func=cmd_quotient)

    p = sub.add_parser("realize", help="write the realization family member for m")
    p.add_argument("m", type=int)
    p.add_argument("-o", "--output")
    p.add_argument("--name")
    p.set_defaults(func=cmd_realize)

    p = sub.add_parser("validate", help="validate every link in a file")
    p.add_argument("file")
    p.add_argument("--strict", action="store_true")
    p.set_defaults(func=cmd_validate)
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except CliError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return exc.code
    except (ValidationError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INVALID


if __name__ == "__main__":
    sys.exit(main())
