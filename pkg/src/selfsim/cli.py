"""Command-line entry point: ``selfsim check|eval|dot|matrix-demo``."""
from __future__ import annotations

import argparse
import sys

from selfsim import model_matrix, model_nat
from selfsim.coherence import DEFAULT_BOUND, DiagramError, decide
from selfsim.diagram_file import DiagramFileError, parse_diagram_file
from selfsim.model_nat import MapLiteralError, MissingAtomBinding
from selfsim.terms import TermSyntaxError, parse_monoid_term, print_term

EXIT_OK, EXIT_OTHER, EXIT_REFUTED = 0, 1, 2


def _load_env(path):
    if path is None:
        return {}
    with open(path) as fh:
        return model_nat.parse_env(fh.read())


def _read(path):
    with open(path) as fh:
        return fh.read()


def cmd_check(args) -> int:
    try:
        df = parse_diagram_file(_read(args.path))
        env = _load_env(args.env)
    except (OSError, DiagramFileError, MapLiteralError) as e:
        print(f"{args.path}: {e}", file=sys.stderr)
        return EXIT_OTHER
    checks = df.checks or [("all", None, 0)]
    worst = 0
    for lhs, rhs, lineno in checks:
        label = "all" if lhs == "all" else f"{';'.join(lhs) or '()'} = {';'.join(rhs) or '()'}"
        try:
            verdict = decide(df.diagram, env, args.refute_bound,
                             None if lhs == "all" else [(lhs, rhs)])
        except (MissingAtomBinding, DiagramError, ValueError) as e:
            msg = f"missing binding for atom {e.args[0]!r}" if isinstance(e, MissingAtomBinding) else str(e)
            print(f"{args.path}: line {lineno}: {msg}", file=sys.stderr)
            worst = max(worst, 1)
            continue
        line = verdict.render()
        if verdict.kind == "REFUTED" and lhs == "all":
            label += f": {';'.join(verdict.lhs) or '()'} vs {';'.join(verdict.rhs) or '()'}"
        if lhs == "all":
            label += ", simple paths"
        print(f"{line}  [{label}]")
        worst = max(worst, verdict.severity)
    return worst


def _parse_range(text: str) -> range:
    lo, _, hi = text.partition(":")
    return range(int(lo or 0), int(hi))


def cmd_eval(args) -> int:
    try:
        env = _load_env(args.env)
        term = parse_monoid_term(args.term, {name: (True,) for name in env})
        m = model_nat.eval_monoid_term(term, env)
    except (OSError, TermSyntaxError, MapLiteralError, ValueError) as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_OTHER
    except MissingAtomBinding as e:
        print(f"error: missing binding for atom {e.args[0]!r}", file=sys.stderr)
        return EXIT_OTHER
    for n in _parse_range(args.range):
        v = model_nat.apply(m, n)
        print(f"{n}\t{'-' if v is None else v}")
    return EXIT_OK


def _dot_quote(s: str) -> str:
    return '"' + s.replace("\\", "\\\\").replace('"', '\\"') + '"'


def render_dot(df) -> str:
    d = df.diagram
    out = ["digraph diagram {"]
    for n, obj in d.nodes.items():
        out.append(f"  {_dot_quote(n)} [label={_dot_quote(str(obj) if d.typed else n)}];")
    for e in d.edges:
        label = f"{e.id}: {print_term(e.term)}"
        out.append(f"  {_dot_quote(e.src)} -> {_dot_quote(e.tgt)} [label={_dot_quote(label)}];")
    out.append("}")
    return "\n".join(out) + "\n"


def cmd_dot(args) -> int:
    try:
        df = parse_diagram_file(_read(args.path))
    except (OSError, DiagramFileError) as e:
        print(f"{args.path}: {e}", file=sys.stderr)
        return EXIT_OTHER
    sys.stdout.write(render_dot(df))
    return EXIT_OK


def cmd_matrix_demo(args) -> int:
    size = args.size
    hits = sum(model_matrix.non_strictness_witness(seed, size) for seed in range(args.trials))
    print(f"seed {args.seed}: nestings differ = {model_matrix.non_strictness_witness(args.seed, size)}")
    print(f"non-associative on {hits}/{args.trials} seeded 0/1 triples at size {size}")
    a, b, c = (model_matrix.identity(size) for _ in range(3))
    left, right = model_matrix.nestings(a, b, c, size)
    print(f"identity triple: nestings differ = {left != right}")
    perm = model_matrix.relating_permutation(size)
    alpha = model_nat.alpha_map()
    for i in sorted(perm):
        print(f"index {i}: a+(b+c) -> (a+b)+c at {perm[i]}; alpha({i}) = {alpha(i)}")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="selfsim", description=__doc__)
    sub = p.add_subparsers(dest="command", required=True)

    c = sub.add_parser("check", help="decide the checks in a diagram file")
    c.add_argument("path")
    c.add_argument("--refute-bound", type=int, default=DEFAULT_BOUND)
    c.add_argument("--env", help="atom environment file")
    c.set_defaults(func=cmd_check)

    e = sub.add_parser("eval", help="tabulate a monoid term on a range of naturals")
    e.add_argument("term")
    e.add_argument("--range", default="0:16", help="half-open range lo:hi (default 0:16)")
    e.add_argument("--env", help="atom environment file")
    e.set_defaults(func=cmd_eval)

    d = sub.add_parser("dot", help="render a diagram file as Graphviz DOT")
    d.add_argument("path")
    d.set_defaults(func=cmd_dot)

    m = sub.add_parser("matrix-demo", help="interleaved matrix sums are not strictly associative")
    m.add_argument("--seed", type=int, default=0)
    m.add_argument("--size", type=int, default=8)
    m.add_argument("--trials", type=int, default=100)
    m.set_defaults(func=cmd_matrix_demo)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
