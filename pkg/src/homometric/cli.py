"""Command-line front end.

Subcommands: find, haircomb, verify, profile, oracle, gen.  Exit codes
follow the usual convention: 0 success, 1 domain failure (no pair, not
homometric, not a haircomb), 2 usage or input errors.  --porcelain
switches every subcommand to a single key=value record line.
"""

from __future__ import annotations

import argparse
import sys

from .graphs import (
    ParseError,
    distance_profile,
    is_homometric,
    parse_graph,
    parse_tree,
    serialize_pair,
    serialize_tree,
)
from .haircomb import (
    Haircomb,
    find_in_haircomb,
    parse_haircomb,
    recognize_haircomb,
    serialize_haircomb,
)
from .oracle import (
    DEFAULT_SEED,
    GENERATOR_KINDS,
    ORACLE_CUTOFF,
    GeneratorSpec,
    generate,
    oracle_max_homometric,
)
from .pairing import find_in_tree

__all__ = ["main", "run"]


class _CliError(Exception):
    def __init__(self, code: int, message: str):
        self.code = code
        self.message = message
        super().__init__(message)


def _read_document(path: str, stdin_text: str | None) -> str:
    if path == "-":
        return stdin_text if stdin_text is not None else sys.stdin.read()
    try:
        with open(path, "r", encoding="utf-8") as fh:
            return fh.read()
    except OSError as e:
        raise _CliError(2, f"cannot read {path}: {e.strerror or e}") from None


def _parse_ids(text: str) -> tuple[int, ...]:
    parts = [p for p in text.replace(",", " ").split() if p]
    try:
        return tuple(int(p) for p in parts)
    except ValueError:
        raise _CliError(2, f"vertex list {text!r} must be comma-separated integers") from None


def _ids(vals) -> str:
    return ",".join(map(str, vals))


def _build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="homometric",
        description="Homometric vertex-set pairs in trees and haircombs.")
    ap.add_argument("--porcelain", action="store_true",
                    help="one machine-readable key=value line per command")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("find", help="guaranteed-size pair in a tree")
    p.add_argument("file", help="edge-list tree file, or - for stdin")

    p = sub.add_parser("haircomb", help="pair in a haircomb via overlaps")
    p.add_argument("file", help="haircomb or edge-list tree file, or -")

    p = sub.add_parser("verify", help="check two sets for homometry")
    p.add_argument("file", help="edge-list graph file, or -")
    p.add_argument("--a", help="first vertex set, comma separated")
    p.add_argument("--b", help="second vertex set, comma separated")
    p.add_argument("--sets-file", help="two-line file holding both sets")

    p = sub.add_parser("profile", help="distance profile of one set")
    p.add_argument("file", help="edge-list graph file, or -")
    p.add_argument("--set", required=True, dest="vertex_set",
                   help="vertex set, comma separated")

    p = sub.add_parser("oracle", help="exhaustive maximum (small inputs)")
    p.add_argument("file", help="edge-list graph file, or -")
    p.add_argument("--limit", type=int, default=ORACLE_CUTOFF,
                   help=f"size cutoff (default {ORACLE_CUTOFF})")

    p = sub.add_parser("gen", help="emit a generated instance")
    p.add_argument("--kind", required=True, choices=GENERATOR_KINDS)
    p.add_argument("--n", type=int)
    p.add_argument("--index", type=int)
    p.add_argument("--seed", type=int, default=DEFAULT_SEED)
    p.add_argument("--format", choices=("edges", "haircomb"), default="edges",
                   help="haircomb format is only valid for random-haircomb")
    return ap


def _cmd_find(args, stdin_text) -> int:
    t = parse_tree(_read_document(args.file, stdin_text))
    if t.n < 2:
        raise _CliError(1, "no homometric pair exists on a single vertex")
    pair = find_in_tree(t)
    if not is_homometric(t, pair.a, pair.b):
        raise _CliError(1, "internal verification failed")
    lhs = (2 * pair.size + 1) ** 2
    rhs = 2 * t.n
    if args.porcelain:
        print(f"find n={t.n} size={pair.size} a={_ids(pair.a)} b={_ids(pair.b)} "
              f"profile_sha={pair.profile_sha} guarantee_lhs={lhs} guarantee_rhs={rhs}")
    else:
        print(serialize_pair(pair), end="")
        print(f"(2k+1)^2 >= 2n: {lhs} >= {rhs}")
    return 0


def _load_haircomb(text: str) -> Haircomb:
    for raw in text.splitlines():
        s = raw.strip()
        if not s or s.startswith("#"):
            continue
        if s.split()[0] == "haircomb":
            return parse_haircomb(text)
        break
    t = parse_tree(text)
    h = recognize_haircomb(t)
    if h is None:
        raise _CliError(1, "the input tree is not a haircomb")
    return h


def _cmd_haircomb(args, stdin_text) -> int:
    h = _load_haircomb(_read_document(args.file, stdin_text))
    if h.n < 2:
        raise _CliError(1, "no homometric pair exists on a single vertex")
    pair = find_in_haircomb(h)
    if not is_homometric(h.tree, pair.a, pair.b):
        raise _CliError(1, "internal verification failed")
    s = h.s
    ell = max(h.leg_lengths)
    threshold = max(s // 2, ell // 2, h.n * h.n // (32 * ell * s))
    if args.porcelain:
        print(f"haircomb n={h.n} s={s} l={ell} size={pair.size} "
              f"a={_ids(pair.a)} b={_ids(pair.b)} "
              f"profile_sha={pair.profile_sha} threshold={threshold}")
    else:
        print(f"s={s} l={ell} n={h.n}")
        print(serialize_pair(pair), end="")
        print(f"threshold: size {pair.size} >= {threshold}")
    return 0


def _cmd_verify(args, stdin_text) -> int:
    g = parse_graph(_read_document(args.file, stdin_text))
    if args.sets_file is not None:
        if args.a is not None or args.b is not None:
            raise _CliError(2, "give either --sets-file or --a/--b, not both")
        rows = [s for s in _read_document(args.sets_file, None).splitlines()
                if s.strip() and not s.strip().startswith("#")]
        if len(rows) != 2:
            raise _CliError(2, "sets file must hold exactly two lines")
        a, b = _parse_ids(rows[0]), _parse_ids(rows[1])
    else:
        if args.a is None or args.b is None:
            raise _CliError(2, "verify needs --a and --b (or --sets-file)")
        a, b = _parse_ids(args.a), _parse_ids(args.b)
    try:
        pa = distance_profile(g, a)
        pb = distance_profile(g, b)
    except ValueError as e:
        raise _CliError(2, str(e)) from None
    disjoint = not (set(a) & set(b))
    same_size = len(set(a)) == len(set(b))
    profiles_equal = pa == pb
    ok = disjoint and same_size and profiles_equal
    if ok:
        reason = ""
    elif profiles_equal and same_size and not disjoint:
        reason = "profiles equal but sets intersect"
    elif not same_size:
        reason = "sizes differ"
    elif not disjoint:
        reason = "sets intersect"
    else:
        reason = "profiles differ"
    if args.porcelain:
        slug = reason.replace(" ", "-")
        tail = "" if ok else f" reason={slug}"
        print(f"verify homometric={'true' if ok else 'false'}"
              f" size_a={len(set(a))} size_b={len(set(b))}{tail}")
    else:
        print("A profile: " + " ".join(map(str, pa)) if pa else "A profile:")
        print("B profile: " + " ".join(map(str, pb)) if pb else "B profile:")
        print("homometric: yes" if ok else f"homometric: no ({reason})")
    return 0 if ok else 1


def _cmd_profile(args, stdin_text) -> int:
    g = parse_graph(_read_document(args.file, stdin_text))
    try:
        prof = distance_profile(g, _parse_ids(args.vertex_set))
    except ValueError as e:
        raise _CliError(2, str(e)) from None
    if args.porcelain:
        print(f"profile size={len(prof)} distances={_ids(prof)}")
    else:
        print(" ".join(map(str, prof)))
    return 0


def _cmd_oracle(args, stdin_text) -> int:
    g = parse_graph(_read_document(args.file, stdin_text))
    try:
        res = oracle_max_homometric(g, limit=args.limit)
    except ValueError as e:
        raise _CliError(2, str(e)) from None
    if args.porcelain:
        w = res.witness
        tail = (f" a={_ids(w.a)} b={_ids(w.b)} profile_sha={w.profile_sha}"
                if w else " a= b=")
        print(f"oracle n={g.n} max_size={res.max_size}{tail}")
    else:
        print(f"max_size={res.max_size}")
        if res.witness:
            print(serialize_pair(res.witness), end="")
    return 0


def _cmd_gen(args, stdin_text) -> int:
    try:
        spec = GeneratorSpec(kind=args.kind, n=args.n, index=args.index,
                             seed=args.seed)
        inst = generate(spec)
    except ValueError as e:
        raise _CliError(2, str(e)) from None
    if args.format == "haircomb":
        if not isinstance(inst, Haircomb):
            raise _CliError(2, "--format haircomb needs --kind random-haircomb")
        doc = serialize_haircomb(inst)
    else:
        tree = inst.tree if isinstance(inst, Haircomb) else inst
        doc = serialize_tree(tree)
    extra = f" index={spec.index}" if spec.index is not None else f" n={spec.n}"
    print(f"# gen kind={spec.kind}{extra} seed={spec.seed}")
    print(doc, end="")
    return 0


_COMMANDS = {
    "find": _cmd_find,
    "haircomb": _cmd_haircomb,
    "verify": _cmd_verify,
    "profile": _cmd_profile,
    "oracle": _cmd_oracle,
    "gen": _cmd_gen,
}


def run(argv: list[str], stdin: str | None = None) -> int:
    """Parse argv and execute; returns the exit code.

    stdin, when given, substitutes for the real standard input of
    file arguments passed as '-'.
    """
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return int(e.code) if e.code else 0
    try:
        return _COMMANDS[args.command](args, stdin)
    except _CliError as e:
        print(f"error: {e.message}", file=sys.stderr)
        return e.code
    except ParseError as e:
        print(f"error: {e}", file=sys.stderr)
        return 2
    except ValueError as e:
        print(f"error: {e}", file=sys.stderr)
        return 1


def main() -> None:
    sys.exit(run(sys.argv[1:]))
