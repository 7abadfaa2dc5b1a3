"""``bredon`` command-line front end.

Exit status: 0 on success, 1 on a domain error (invalid complex, violated
hypothesis), 2 on usage or parse errors.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from .cohomology import cohomology_table
from .corpus import builtin
from .errors import DomainError, InvalidComplex, SchemaError
from .gcw import GCWComplex, fixed_points, quotient, restrict, smash, validate_complex, wedge
from .homotopy import lgood_check, mapping_decomposition, nullification_truncate
from .orbitcat import CoefficientSystem, constant_system, validate_system

VERBS = ("validate", "cohomology", "quotient", "restrict", "fixed-points", "map-decompose",
         "lgood-check", "builtin", "smash", "wedge")


class UsageError(Exception):
    pass


def _load_json(path: str, what: str):
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise UsageError(f"cannot read {what} {path!r}: {exc.strerror}") from None
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise SchemaError(f"{path}:{exc.lineno}", f"invalid JSON: {exc.msg}") from None


def parse_complex(path: str, validate: bool = True) -> GCWComplex:
    """Read a complex file; schema errors raise SchemaError, and with
    ``validate`` algebraic violations raise InvalidComplex."""
    x = GCWComplex.from_json(_load_json(path, "complex"))
    if validate:
        violations = validate_complex(x)
        if violations:
            raise InvalidComplex(violations)
    return x


def parse_system(path: str) -> CoefficientSystem:
    m = CoefficientSystem.from_json(_load_json(path, "coefficient system"))
    violations = validate_system(m)
    if violations:
        raise DomainError("invalid coefficient system: " + "; ".join(v.message for v in violations))
    return m


def dumps(data) -> str:
    return json.dumps(data, indent=2, sort_keys=False) + "\n"


def _inputs(args, count: int, validate: bool = True) -> list:
    xs = [parse_complex(p, validate) for p in args.inputs]
    xs += [builtin(b) for b in args.builtin or ()]
    if len(xs) != count:
        raise UsageError(f"{args.verb} takes {count} complex(es), got {len(xs)}")
    return xs


def _table(header, rows) -> str:
    cols = [header] + [[str(c) for c in r] for r in rows]
    widths = [max(len(r[i]) for r in cols) for i in range(len(header))]
    return "\n".join("  ".join(c.ljust(w) for c, w in zip(r, widths)).rstrip() for r in cols) + "\n"


def _describe_complex(x: GCWComplex) -> str:
    rows = []
    for d, layer in enumerate(x.cells):
        stabs = {}
        for k in layer:
            stabs[k] = stabs.get(k, 0) + 1
        rows.append([d, len(layer), ", ".join(f"{c}x stab {k}" for k, c in sorted(stabs.items()))])
    head = f"group {x.group}, basepoint: {'0-cell %d' % x.basepoint if x.is_based else 'none'}\n"
    return head + _table(["dim", "orbit cells", "stabilizers"], rows)


def _levels(args, x: GCWComplex) -> list:
    if getattr(args, "all_levels", False):
        return list(reversed(x.group.levels))
    if getattr(args, "level", None) is not None:
        if not 0 <= args.level <= x.group.n:
            raise UsageError(f"--level {args.level} outside 0..{x.group.n}")
        return [args.level]
    return [x.group.n]


def cmd_validate(args) -> tuple:
    (x,) = _inputs(args, 1, validate=False)
    violations = validate_complex(x)
    data = {"ok": not violations, "violations": [v.to_json() for v in violations]}
    text = "ok\n" if not violations else "".join(f"{v.message}\n" for v in violations)
    return (1 if violations else 0), data, text


def cmd_cohomology(args) -> tuple:
    (x,) = _inputs(args, 1)
    if args.coeff in (None, "constant-q", "constant-Q"):
        m, label = constant_system(x.group), "constant-Q"
    else:
        m, label = parse_system(args.coeff), args.coeff
        if m.group != x.group:
            raise DomainError(f"coefficients over {m.group} for a complex over {x.group}")
    table = cohomology_table(x, m, _levels(args, x), args.reduced, label, args.jobs)
    top = max(len(r.dims) for r in table.rows)
    head = ["level"] + [f"H^{d}" for d in range(top)]
    text = _table(head, [[r.level] + list(r.dims) for r in table.rows])
    if args.reduced:
        text = "reduced\n" + text
    return 0, table.to_json(), text


def cmd_construct(args) -> tuple:
    verb = args.verb
    if verb in ("smash", "wedge"):
        x, y = _inputs(args, 2)
        result = smash(x, y) if verb == "smash" else wedge(x, y)
    else:
        (x,) = _inputs(args, 1)
        if verb == "quotient":
            result = quotient(x)
        elif verb == "restrict":
            result = restrict(x, _levels(args, x)[0])
        elif verb == "fixed-points":
            result = fixed_points(x, _levels(args, x)[0])
        else:
            result = x
    return 0, result.to_json(), _describe_complex(result)


def cmd_map_decompose(args) -> tuple:
    (x,) = _inputs(args, 1)
    if args.target_dim is None:
        raise UsageError("map-decompose needs --target-dim m")
    d = mapping_decomposition(x, args.target_dim, args.restrictions, args.jobs)
    if args.truncate is not None:
        d = nullification_truncate(d, args.truncate)
    levels = list(x.group.levels)
    rows = [[f.degree, args.target_dim - f.degree] + list(f.values) for f in d.factors]
    text = f"m = {d.target_dim}, r = {d.top_degree}" + (
        f", truncated at degree {args.truncate}" if args.truncate is not None else "") + "\n"
    text += _table(["degree i", "from H~^(m-i)"] + [f"P{k}" for k in levels], rows)
    data = d.to_json()
    if args.truncate is not None:
        data["truncated_at"] = args.truncate
    return 0, data, text


def cmd_lgood(args) -> tuple:
    (x,) = _inputs(args, 1)
    v = lgood_check(x)
    if v.is_obstructed:
        text = f"not-l-good: witness degrees r={v.witness[0]}, s={v.witness[1]}\n"
    elif v.k is None:
        text = "necessary-condition-holds: no positive-degree cohomology\n"
    else:
        text = f"necessary-condition-holds: cohomology concentrated in degree k={v.k}\n"
    text += f"top-level dims: {list(v.dims)}\n"
    return 0, v.to_json(), text


HANDLERS = {
    "validate": cmd_validate, "cohomology": cmd_cohomology, "quotient": cmd_construct,
    "restrict": cmd_construct, "fixed-points": cmd_construct, "builtin": cmd_construct,
    "smash": cmd_construct, "wedge": cmd_construct, "map-decompose": cmd_map_decompose,
    "lgood-check": cmd_lgood,
}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="bredon", description="Bredon cohomology of finite C_{p^n}-CW complexes.")
    sub = parser.add_subparsers(dest="verb", required=True, metavar="verb")
    for verb in VERBS:
        sp = sub.add_parser(verb)
        sp.add_argument("inputs", nargs="*", metavar="complex.json")
        sp.add_argument("--builtin", action="append", metavar="DESC",
                        help='builtin complex, e.g. "C8:lambda(1)+2eps"')
        sp.add_argument("--json", nargs="?", const="-", default=None, metavar="PATH",
                        help="write JSON to PATH (standard output if omitted)")
        sp.add_argument("--jobs", type=int, default=1, help="worker threads for level computations")
        if verb in ("cohomology", "restrict", "fixed-points"):
            sp.add_argument("--level", type=int)
        if verb == "cohomology":
            sp.add_argument("--all-levels", action="store_true")
            sp.add_argument("--reduced", action="store_true")
            sp.add_argument("--coeff", default="constant-q", metavar="constant-q|FILE")
        if verb == "map-decompose":
            sp.add_argument("--target-dim", type=int, metavar="m")
            sp.add_argument("--truncate", type=int, metavar="d")
            sp.add_argument("--restrictions", action="store_true",
                            help="also compute induced restriction maps (tool extension)")
    return parser


def run(argv=None, stdout=None, stderr=None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        status, data, text = HANDLERS[args.verb](args)
    except (UsageError, SchemaError) as exc:
        print(f"bredon {args.verb}: {exc}", file=stderr)
        return 2
    except DomainError as exc:
        print(f"bredon {args.verb}: {exc}", file=stderr)
        return 1
    if args.json is None:
        stdout.write(text)
    elif args.json == "-":
        stdout.write(dumps(data))
    else:
        Path(args.json).write_text(dumps(data))
    return status


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
