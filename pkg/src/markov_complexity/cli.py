"""Command-line front end.

Exit codes: 0 success, 2 invalid input, 3 matrix not positively graded,
4 resource cap exceeded.  Diagnostics go to stderr, results to stdout.
"""

from __future__ import annotations

import argparse
import json
import random
import sys
from typing import Optional, Sequence

from . import bases, complexity, intlin, lawrence
from .bases import NotPositivelyGraded, ResourceLimit
from .bouquet import bouquets
from .intlin import IntMatrix, InvalidInput, format_matrix, parse_matrix
from .lawrence import Tableau

EXIT_OK, EXIT_INVALID, EXIT_NOT_GRADED, EXIT_RESOURCE = 0, 2, 3, 4


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        raise InvalidInput(message)


def _vector(text: str) -> tuple:
    try:
        return tuple(int(x) for x in text.split(","))
    except ValueError:
        raise InvalidInput(f"bad integer vector {text!r}") from None


def _read_text(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    try:
        with open(path, encoding="utf-8") as fh:
            return fh.read()
    except OSError as exc:
        raise InvalidInput(f"cannot read {path}: {exc.strerror}") from None


def _matrix(args) -> IntMatrix:
    if args.input is None:
        raise InvalidInput(f"`{args.command}` needs an input matrix (-i FILE)")
    return parse_matrix(_read_text(args.input))


def _vec_lines(vectors) -> str:
    return "".join(",".join(map(str, v)) + "\n" for v in vectors)


# ---------------------------------------------------------------------------
# Subcommand handlers: each returns (text, document)
# ---------------------------------------------------------------------------

def cmd_kernel(args):
    K = intlin.kernel_basis(_matrix(args))
    return format_matrix(K.as_matrix()), {"kernel_basis": [list(v) for v in K.basis_rows]}


def cmd_gale(args):
    A = _matrix(args)
    G = intlin.gale_transforms(A)
    M = IntMatrix(G, ncols=len(G[0]) if G else 0)
    return format_matrix(M), {"gale": [list(v) for v in G]}


def cmd_bouquet(args):
    dec = bouquets(_matrix(args))
    text = dec.describe() + "\n" + format_matrix(dec.AB)
    doc = {"bouquets": [{"columns": [c + 1 for c in cols], "free": free, "cB": list(cb)}
                        for cols, free, cb in zip(dec.bouquets, dec.free_flags, dec.cB)],
           "AB": [list(r) for r in dec.AB.rows]}
    return text, doc


def _matrix_result(M: IntMatrix, comment: Optional[str] = None):
    return format_matrix(M, comment), {"matrix": [list(r) for r in M.rows], "shape": list(M.shape)}


def cmd_lift(args):
    return _matrix_result(lawrence.lawrence_lift(_matrix(args), args.r))


def cmd_gen_lawrence(args):
    base = parse_matrix(_read_text(args.base))
    specs = lawrence.parse_specs(_read_text(args.specs))
    solved = []
    for i, sp in enumerate(specs):
        if not sp.lam:
            if not args.solve_lambda:
                raise InvalidInput(f"bouquet {i + 1} has no lambda; pass --solve-lambda to compute one")
            sp = lawrence.BouquetSpec.solved(sp.cprime)
        solved.append(sp)
    L = lawrence.generalized_lawrence(base, solved)
    comment = lawrence.format_specs(solved).rstrip("\n")
    text, doc = _matrix_result(L, comment)
    doc["specs"] = [{"cprime": list(sp.cprime), "lambda": list(sp.lam)} for sp in solved]
    return text, doc


def cmd_family_as(args):
    return _matrix_result(lawrence.family_As(args.s))


def cmd_family_kt(args):
    return _matrix_result(lawrence.family_KT(args.s, args.k))


def cmd_witness(args):
    t = lawrence.witness_matrix(args.s)
    doc = {"s": args.s, "tableau": t.format(), "type": t.type}
    lines = [t.format()]
    if args.verify:
        ok = complexity.certify_witness(lawrence.family_As(args.s), t, fiber_cap=args.fiber_cap)
        doc["indispensable"] = ok
        doc["lower_bound"] = t.type if ok else None
        lines.append(f"indispensable: {'yes' if ok else 'no'}")
        if ok:
            lines.append(f"lower_bound: {t.type}")
    return "\n".join(lines) + "\n", doc


def cmd_fiber(args):
    A = _matrix(args)
    if (args.u is None) == (args.degree is None):
        raise InvalidInput("give exactly one of -u and --degree")
    if args.u is not None:
        F = bases.fiber_of(A, _vector(args.u), cap=args.fiber_cap)
    else:
        F = bases.fiber_by_degree(A, _vector(args.degree), cap=args.fiber_cap)
    members = sorted(F.members)
    text = f"# degree={','.join(map(str, F.degree))} size={len(members)}\n" + _vec_lines(members)
    return text, {"degree": list(F.degree), "size": len(members), "members": [list(v) for v in members]}


def _basis_result(S: bases.BasisSet, extra: Optional[dict] = None):
    doc = {"kind": S.kind, "matrix_digest": S.matrix.digest(), "size": len(S),
           "elements": [list(v) for v in S.elements]}
    doc.update(extra or {})
    return S.format(), doc


def cmd_graver(args):
    A = _matrix(args)
    if args.oracle:
        cap = args.cap if args.cap is not None else bases.graver_norm_cap(A)
        return _basis_result(bases.graver_bruteforce(A, cap), {"norm_cap": cap})
    return _basis_result(bases.graver(A, cap=args.graver_cap))


def cmd_markov(args):
    A = _matrix(args)
    if args.verify_against:
        S = bases.parse_basis(_read_text(args.verify_against), A, kind="markov")
        ok = bases.is_markov_basis(A, S, fiber_cap=args.fiber_cap)
        doc = {"matrix_digest": A.digest(), "size": len(S), "is_markov_basis": ok}
        return f"markov basis: {'yes' if ok else 'no'} ({len(S)} elements)\n", doc
    M = bases.minimal_markov(A, fiber_cap=args.fiber_cap, graver_cap=args.graver_cap)
    y = intlin.integer_grading(A)   # degrees were processed in increasing y-value
    text, doc = _basis_result(M, {"grading": list(y)})
    head, body = text.split("\n", 1)
    return f"{head}\n# grading={','.join(map(str, y))}\n{body}", doc


def cmd_indispensable(args):
    A = _matrix(args)
    if args.element is not None:
        u = _vector(args.element)
        ok = bases.is_indispensable(A, u, fiber_cap=args.fiber_cap)
        return f"indispensable: {'yes' if ok else 'no'}\n", {"element": list(u), "indispensable": ok}
    G = bases.graver(A, cap=args.graver_cap)
    return _basis_result(bases.indispensable_set(A, fiber_cap=args.fiber_cap, graver_basis=G))


def cmd_complexity(args):
    A = _matrix(args)
    if args.max_r is None and args.witness is None:
        raise InvalidInput("complexity needs --max-r, --witness, or both")
    if args.max_r is not None:
        report = complexity.markov_complexity_upto(A, args.max_r, with_graver=args.graver, jobs=args.jobs,
                                                   fiber_cap=args.fiber_cap, graver_cap=args.graver_cap)
    else:
        report = complexity.empty_report(A)
    witness = None
    if args.witness is not None:
        t = Tableau.parse(args.witness)
        ok = complexity.certify_witness(A, t, fiber_cap=args.fiber_cap)
        witness = {"tableau": t.format(), "r": t.r, "type": t.type, "indispensable": ok}
    doc = complexity.report_document(report, witness)
    lines = [f"matrix {doc['matrix_digest']}"]
    for i, r in enumerate(doc["r"]):
        g = doc["graver_max_type"]
        lines.append(f"r={r} markov_max_type={doc['markov_max_type'][i]}"
                     + (f" graver_max_type={g[i]}" if g is not None else ""))
    if witness is not None:
        lines.append(f"witness r={witness['r']} type={witness['type']} "
                     f"indispensable={'yes' if witness['indispensable'] else 'no'}")
    lines.append(f"lower_bound {doc['lower_bound']}")
    lines.append(f"upper_bound_closed_form {doc['upper_bound_closed_form']}")
    td = doc["tree_depth"]
    lines.append(f"tree_depth forest={td['forest']} single_tree={td['single_tree']}")
    return "\n".join(lines) + "\n", doc


def cmd_treedepth(args):
    A = _matrix(args)
    G = complexity.matrix_graph(A.transpose() if args.transpose else A)
    td = complexity.tree_depth(G, args.convention)
    return f"{td}\n", {"convention": args.convention, "transpose": args.transpose, "tree_depth": td}


def cmd_bound(args):
    A = _matrix(args)
    a = A.max_abs()
    t = complexity.tree_depth(complexity.matrix_graph(A.transpose()), "forest") if A.m else 1
    norm = complexity.graver_norm_bound(a, t)
    closed = complexity.complexity_bound(a, A.n, sharp=args.sharp)
    text = (f"graver_norm_bound a={a} t={t} {norm}\n"
            f"complexity_bound a={a} n={A.n} {closed}\n")
    return text, {"a": a, "t": t, "n": A.n, "graver_norm_bound": str(norm), "complexity_bound": str(closed)}


def cmd_selftest(args):
    """Compare the completion against the brute-force oracle on random small matrices."""
    rng = random.Random(args.seed)
    failures = []
    for k in range(args.count):
        m, n = rng.randint(1, 3), rng.randint(2, 4)
        A = IntMatrix([[rng.randint(-3, 3) for _ in range(n)] for _ in range(m)])
        if bases.graver(A) != bases.graver_bruteforce(A, bases.graver_norm_cap(A)):
            failures.append(format_matrix(A))
    text = f"selftest seed={args.seed} count={args.count} failures={len(failures)}\n" + "".join(failures)
    return text, {"seed": args.seed, "count": args.count, "failures": failures}


# ---------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("-i", "--input", metavar="FILE", help="input matrix file ('-' for stdin)")
    common.add_argument("--json", action="store_true", help="emit one JSON document")
    common.add_argument("--jobs", type=int, default=1, metavar="N", help="worker processes")
    common.add_argument("--fiber-cap", type=int, default=bases.DEFAULT_FIBER_CAP, metavar="N")
    common.add_argument("--graver-cap", type=int, default=bases.DEFAULT_GRAVER_CAP, metavar="N")
    common.add_argument("--seed", type=int, default=0, metavar="N", help="seed for randomized self-tests")

    parser = _Parser(prog="markov-complexity", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def add(name, func, help_):
        p = sub.add_parser(name, parents=[common], help=help_)
        p.set_defaults(func=func)
        return p

    add("kernel", cmd_kernel, "HNF basis of the integer kernel")
    add("gale", cmd_gale, "Gale transforms of the columns")
    add("bouquet", cmd_bouquet, "bouquet decomposition and bouquet matrix")
    add("lift", cmd_lift, "Lawrence lifting").add_argument("-r", type=int, required=True)
    p = add("gen-lawrence", cmd_gen_lawrence, "generalized Lawrence matrix")
    p.add_argument("--base", required=True, metavar="FILE")
    p.add_argument("--specs", required=True, metavar="FILE")
    p.add_argument("--solve-lambda", action="store_true", help="fill missing lambda by extended Euclid")
    add("family-as", cmd_family_as, "the matrix A_s").add_argument("-s", type=int, required=True)
    p = add("family-kt", cmd_family_kt, "the matrix [1, s, s^2-s, s^2-1] padded with k ones")
    p.add_argument("-s", type=int, required=True)
    p.add_argument("-k", type=int, default=0)
    p = add("witness", cmd_witness, "type-s witness tableau for A_s")
    p.add_argument("-s", type=int, required=True)
    p.add_argument("--verify", action="store_true", help="check indispensability by fiber enumeration")
    p = add("fiber", cmd_fiber, "fiber of a kernel vector or of a degree")
    p.add_argument("-u", metavar="V")
    p.add_argument("--degree", metavar="B")
    p = add("graver", cmd_graver, "Graver basis")
    p.add_argument("--oracle", action="store_true", help="brute-force enumeration instead of completion")
    p.add_argument("--cap", type=int, metavar="N", help="1-norm cap for --oracle")
    p = add("markov", cmd_markov, "minimal Markov basis")
    p.add_argument("--verify-against", metavar="FILE", help="check a basis file instead")
    p = add("indispensable", cmd_indispensable, "indispensable elements")
    p.add_argument("--element", metavar="V")
    p = add("complexity", cmd_complexity, "Markov complexity lower bound and closed-form upper bound")
    p.add_argument("--max-r", type=int, metavar="R")
    p.add_argument("--graver", action="store_true", help="also report Graver max types")
    p.add_argument("--witness", metavar="TABLEAU", help="certify a tableau as indispensable")
    p = add("treedepth", cmd_treedepth, "tree-depth of the column graph")
    p.add_argument("--convention", choices=("forest", "single-tree"), default="forest")
    p.add_argument("--transpose", action="store_true", help="use the graph of the transpose")
    p = add("bound", cmd_bound, "Graver norm bound and complexity bound")
    p.add_argument("--sharp", action="store_true", help="return 2 for the zero matrix")
    p = add("selftest", cmd_selftest, "completion vs brute force on random matrices")
    p.add_argument("--count", type=int, default=20)
    return parser


def run(argv: Optional[Sequence[str]] = None, out=None, err=None) -> int:
    out = out if out is not None else sys.stdout
    err = err if err is not None else sys.stderr
    try:
        args = build_parser().parse_args(argv)
        if args.jobs < 1:
            raise InvalidInput("--jobs must be positive")
        text, doc = args.func(args)
    except NotPositivelyGraded as exc:
        print(f"error: {exc}", file=err)
        return EXIT_NOT_GRADED
    except ResourceLimit as exc:
        print(f"error: {exc}", file=err)
        return EXIT_RESOURCE
    except InvalidInput as exc:
        print(f"error: {exc}", file=err)
        return EXIT_INVALID
    out.write(json.dumps(doc, indent=2) + "\n" if args.json else text)
    return EXIT_OK


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
