"""Batch command-line front end.

Exit codes: 0 on success or a passing check, 1 when a check fails, 2 on bad
input or usage.  Every number printed is an exact rational string.
"""
from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import verify
from .algebraic import identity_report
from .balancing import CLASSIC, WEIGHTED, audit_all
from .combinat import enumerate_cubes
from .dissim import d2, d_classic, d_weighted, vector_from_json
from .membership import ALL_A, SINGLE_A, recover_tree
from .tree import parse_newick, to_newick

DEFAULT_SEED = 0


class InputError(Exception):
    """Bad user input; reported with exit code 2."""


def _read(path: str) -> str:
    try:
        return Path(path).read_text()
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror}") from None


def _emit(text: str, out: str | None):
    if not text.endswith("\n"):
        text += "\n"
    if out:
        Path(out).write_text(text)
    else:
        sys.stdout.write(text)


def _dumps(obj) -> str:
    return json.dumps(obj, indent=2)


def _load_vector(args):
    try:
        return vector_from_json(_read(args.vector_file), promote_decimals=args.promote_decimals)
    except ValueError as exc:
        raise InputError(str(exc)) from None


def cmd_dissim(args) -> int:
    try:
        tree = parse_newick(_read(args.tree_file))
    except ValueError as exc:
        raise InputError(f"{args.tree_file}: {exc}") from None
    try:
        if args.kind == "d2":
            vec = d2(tree)
        else:
            vec = (d_classic if args.kind == CLASSIC else d_weighted)(tree, args.r)
    except ValueError as exc:
        raise InputError(str(exc)) from None
    _emit(vec.to_json(indent=2), args.output)
    return 0


def cmd_check(args) -> int:
    w = _load_vector(args)
    mode = ALL_A if args.all_A else SINGLE_A
    try:
        cert = recover_tree(w, mode)
    except ValueError as exc:
        raise InputError(str(exc)) from None
    _emit(_dumps(cert.to_dict()), args.output)
    return 0 if cert.passed else 1


def cmd_recover(args) -> int:
    w = _load_vector(args)
    mode = ALL_A if args.all_A else SINGLE_A
    try:
        cert = recover_tree(w, mode)
    except ValueError as exc:
        raise InputError(str(exc)) from None
    if cert.passed:
        Path(args.out_tree_file).write_text(to_newick(cert.witness_tree) + "\n")
    _emit(_dumps(cert.to_dict()), args.output)
    return 0 if cert.passed else 1


def cmd_paper_verify(args) -> int:
    checks = verify.run_all(args.golden_dir)
    failed = [c.name for c in checks if not c.ok]
    if args.json:
        report = {"status": "fail" if failed else "ok", "failed": failed, "checks": [c.to_dict() for c in checks]}
        _emit(_dumps(report), None)
    else:
        lines = [f"{'ok  ' if c.ok else 'FAIL'}  {c.name}  {json.dumps(c.details)}" for c in checks]
        _emit("\n".join(lines), None)
    for name in failed:
        print(f"verification failed: {name}", file=sys.stderr)
    return 1 if failed else 0


def cmd_audit(args) -> int:
    try:
        reports = audit_all(args.n, args.r, args.kind)
    except ValueError as exc:
        raise InputError(str(exc)) from None
    _emit(_dumps([rep.to_dict() for rep in reports]), args.output)
    bad = sum(1 for rep in reports if not rep.dependent_mod_base)
    print(f"{len(reports)} cones, {bad} not dependent modulo the base", file=sys.stderr)
    if args.assert_balanced and bad:
        return 1
    return 0


def cmd_algebra(args) -> int:
    if args.trials < 1:
        raise InputError("--trials must be positive")
    if not 3 <= args.r <= args.n - 3:
        raise InputError(f"need 3 <= r <= n-3, got n={args.n}, r={args.r}")
    report = identity_report(args.n, args.r, args.trials, args.seed)
    _emit(_dumps(report), args.output)
    return 0 if report["ok"] else 1


def cmd_cubes(args) -> int:
    cubes = enumerate_cubes()
    if args.json:
        data = [{"id": c.id, "black": [list(t) for t in c.black], "white": [list(t) for t in c.white]} for c in cubes]
        _emit(_dumps(data), None)
        return 0

    def word(ts):
        return " ".join("".join(map(str, t)) for t in ts)

    _emit("\n".join(f"{c.id:2d}  B: {word(c.black)}  W: {word(c.white)}" for c in cubes), None)
    return 0


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="treetrop", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("dissim", help="dissimilarity vector of a Newick tree")
    s.add_argument("tree_file")
    s.add_argument("r", type=int)
    s.add_argument("--kind", choices=[CLASSIC, WEIGHTED, "d2"], default=WEIGHTED)
    s.add_argument("-o", "--output")
    s.set_defaults(func=cmd_dissim)

    for name, func, help_ in (
        ("check", cmd_check, "membership certificate for a vector"),
        ("recover", cmd_recover, "rebuild the tree behind a vector"),
    ):
        s = sub.add_parser(name, help=help_)
        s.add_argument("vector_file")
        if name == "recover":
            s.add_argument("out_tree_file")
        s.add_argument("--all-A", dest="all_A", action="store_true", help="run the four-point test for every A")
        s.add_argument("--promote-decimals", action="store_true", help="accept decimal entries as exact rationals")
        s.add_argument("-o", "--output", help="write the certificate here")
        s.set_defaults(func=func)

    s = sub.add_parser("paper-verify", help="reproduce the reference matrices, ranks and cubes")
    s.add_argument("--golden-dir", default=None)
    s.add_argument("--json", action="store_true")
    s.set_defaults(func=cmd_paper_verify)

    s = sub.add_parser("audit", help="balancing audit over all one-degree-4 topologies")
    s.add_argument("n", type=int)
    s.add_argument("r", type=int)
    s.add_argument("--kind", choices=[CLASSIC, WEIGHTED], default=CLASSIC)
    s.add_argument("--assert-balanced", action="store_true", help="exit 1 if any cone is not dependent")
    s.add_argument("-o", "--output")
    s.set_defaults(func=cmd_audit)

    s = sub.add_parser("algebra", help="evaluate the polynomial identities on random points")
    s.add_argument("--trials", type=int, default=10)
    s.add_argument("--seed", type=int, default=DEFAULT_SEED)
    s.add_argument("--n", type=int, default=7)
    s.add_argument("--r", type=int, default=4)
    s.add_argument("-o", "--output")
    s.set_defaults(func=cmd_algebra)

    s = sub.add_parser("cubes", help="list the 15 cubes")
    s.add_argument("--json", action="store_true")
    s.set_defaults(func=cmd_cubes)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
