"""Command-line front door.

Verbs: ``graph simplify|reduce|measure|dot``, ``project
tensor|cut|ortho|success``, ``proof check|interpret|normalize|tests`` and
``verify adjunction|invariance|assoc|category|matrix``.  Exit codes: 0 on
success or all-pass, 1 on a check failure or bad input file, 2 on usage
errors.  GOI_SEED provides the default seed.
"""

from __future__ import annotations

import argparse
import math
import os
import sys

from . import io as gio
from . import verify
from .errors import GoimllError
from .graphs import WeightedGraph, as_multigraph, reduce_truncated, simplify
from .logic import (
    check_proof,
    eliminate_cuts,
    format_sequent,
    interpret,
    parse_proof,
    serialize_proof,
    switching_tests,
)
from .matrix import reduce_exact
from .measure import measure_exact, measure_truncated
from .projects import Project, cut, orthogonal, tensor
from .truth import is_successful


def _sig(x: float) -> str:
    return "inf" if math.isinf(x) else f"{x:.12g}"


def _read(path: str) -> str:
    try:
        with open(path, "r", encoding="utf-8") as fh:
            return fh.read()
    except OSError as exc:
        raise GoimllError(f"cannot read {path}: {exc.strerror}") from None


def _load_graph(path: str) -> WeightedGraph:
    return gio.parse_graph(_read(path))


def _load_project(path: str) -> Project:
    return gio.parse_project(_read(path))


def _emit_graph(g: WeightedGraph, fmt: str) -> None:
    sys.stdout.write(gio.to_dot(g) if fmt == "dot" else gio.write_graph(g))


def _cmd_graph(args) -> int:
    if args.action == "simplify":
        g = _load_graph(args.files[0])
        _emit_graph(as_multigraph(simplify(g)), args.format)
        return 0
    if args.action == "dot":
        sys.stdout.write(gio.to_dot(_load_graph(args.files[0])))
        return 0
    if len(args.files) != 2:
        raise GoimllError(f"graph {args.action} takes two graph files")
    g, h = _load_graph(args.files[0]), _load_graph(args.files[1])
    if args.action == "measure":
        if args.route == "exact":
            m = measure_exact(g, h)
        else:
            m = measure_truncated(g, h, args.max_len)
        truncated = bool(m.truncated) if m.truncated is not None else False
        print(f"value={_sig(m.value)} route={m.route} truncated={str(truncated).lower()}")
        return 0
    if args.action == "reduce":
        if args.route == "exact":
            _emit_graph(as_multigraph(reduce_exact(g, h)), args.format)
        else:
            reduced, truncated = reduce_truncated(g, h, args.max_len)
            if truncated:
                print("# truncated at max-len; longer paths exist", file=sys.stderr)
            _emit_graph(reduced, args.format)
        return 0
    raise GoimllError(f"unknown graph action {args.action!r}")


def _cmd_project(args) -> int:
    a, b = _load_project(args.files[0]), _load_project(args.files[1])
    if args.action == "tensor":
        sys.stdout.write(gio.write_project(tensor(a, b)))
        return 0
    if args.action == "cut":
        sys.stdout.write(gio.write_project(cut(a, b)))
        return 0
    if args.action == "ortho":
        result = orthogonal(a, b)
        print("orthogonal" if result else "not orthogonal")
        return 0 if result else 1
    raise GoimllError(f"unknown project action {args.action!r}")


def _cmd_project_success(args) -> int:
    a = _load_project(args.files[0])
    verdict = is_successful(a)
    if verdict.successful:
        print("successful")
        return 0
    print("not successful: " + "; ".join(verdict.reasons))
    return 1


def _cmd_proof(args) -> int:
    parsed = parse_proof(_read(args.file))
    if args.action == "check":
        print(format_sequent(check_proof(parsed.tree, parsed.basis)))
        return 0
    if args.action == "interpret":
        check_proof(parsed.tree, parsed.basis)
        sys.stdout.write(gio.write_project(interpret(parsed.tree, parsed.basis)))
        return 0
    if args.action == "normalize":
        check_proof(parsed.tree, parsed.basis)
        sys.stdout.write(serialize_proof(eliminate_cuts(parsed.tree), parsed.basis))
        return 0
    if args.action == "tests":
        tests = switching_tests(parsed.tree, parsed.basis)
        for k, t in enumerate(tests):
            print(f"# test {k}")
            sys.stdout.write(gio.write_project(t))
        print(f"# {len(tests)} switching tests")
        return 0
    raise GoimllError(f"unknown proof action {args.action!r}")


def _cmd_verify(args) -> int:
    if args.suite == "adjunction":
        report = verify.verify_adjunction(args.trials, args.seed, args.max_vertices)
    elif args.suite == "invariance":
        report = verify.verify_invariance(args.trials, args.seed, min(args.max_vertices, 4))
    elif args.suite == "assoc":
        report = verify.verify_assoc(args.trials, args.seed, args.max_vertices)
    elif args.suite == "category":
        report = verify.verify_category(args.seed, trials=args.trials)
    else:
        report = verify.verify_matrix(args.trials, args.seed, min(args.max_vertices, 5))
    print(report.format())
    return 0 if report.ok else 1


def _build_parser() -> argparse.ArgumentParser:
    default_seed = int(os.environ.get("GOI_SEED", "0"))
    parser = argparse.ArgumentParser(prog="goimll")
    sub = parser.add_subparsers(dest="command", required=True)

    graph = sub.add_parser("graph", help="graph file operations")
    graph.add_argument("action", choices=["simplify", "reduce", "measure", "dot"])
    graph.add_argument("files", nargs="+")
    graph.add_argument("--route", choices=["exact", "enum", "trunc"], default="exact")
    graph.add_argument("--max-len", type=int, default=16)
    graph.add_argument("--format", choices=["text", "dot"], default="text")
    graph.set_defaults(func=_cmd_graph)

    project = sub.add_parser("project", help="project file operations")
    project.add_argument("action", choices=["tensor", "cut", "ortho", "success"])
    project.add_argument("files", nargs="+")
    project.set_defaults(
        func=lambda args: _cmd_project_success(args) if args.action == "success" else _cmd_project(args)
    )

    proof = sub.add_parser("proof", help="proof file operations")
    proof.add_argument("action", choices=["check", "interpret", "normalize", "tests"])
    proof.add_argument("file")
    proof.set_defaults(func=_cmd_proof)

    ver = sub.add_parser("verify", help="run a verification suite")
    ver.add_argument("suite", choices=["adjunction", "invariance", "assoc", "category", "matrix"])
    ver.add_argument("--trials", type=int, default=100)
    ver.add_argument("--seed", type=int, default=default_seed)
    ver.add_argument("--max-vertices", type=int, default=6)
    ver.set_defaults(func=_cmd_verify)

    return parser


def run(argv: list[str] | None = None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 2 if exc.code not in (0, None) else 0
    try:
        return args.func(args)
    except GoimllError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
