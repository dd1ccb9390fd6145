"""Command-line front end.

Exit codes: 0 success; 1 verification failure; 2 usage error; 3 parse error
in a tree expression; 4 an enumeration guard was exceeded.
"""

from __future__ import annotations

import argparse
import json
import random
import re
import sys
from fractions import Fraction

from .coalgebra import trunk_coproduct
from .dual import (
    admissible_families,
    dual_combinatorial,
    dual_oracle,
    dual_recursive,
    graft_leaves,
    graft_linear,
)
from .forest import GuardExceeded, TreeSyntaxError, parse_forest, parse_tree
from .linalg import LinComb, lincomb_json, render_lincomb, render_tensor, tensor_json
from .primitives import SHAPE_GUARD, enumerate_shapes, primitive_count_recursive
from .rota_baxter import (
    corrupted_forest_algebra,
    forest_algebra,
    forest_rb_operator,
    phi_bar,
    rb_verify,
    word_algebra,
    word_embedding,
)
from .sampling import default_alphabet, random_forest, random_word
from .shuffle import diamond_product, forest_shuffle, shuffle_coefficient, star_product
from .suites import SuiteConfig, run_suite

_RATIONAL_RE = re.compile(r"[+-]?\d+(/[1-9]\d*)?$")


def _rational(text: str) -> Fraction:
    if not _RATIONAL_RE.fullmatch(text):
        raise argparse.ArgumentTypeError(f"expected a rational like 2/3, got {text!r}")
    return Fraction(text)


def _build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--lambda", dest="weight", type=_rational, default=Fraction(0),
                        help="quasi-shuffle weight as p/q (default 0)")
    common.add_argument("--json", action="store_true", help="emit machine-readable JSON")
    common.add_argument("--max-degree", type=int, default=None, help="cap exhaustive degrees")
    common.add_argument("--seed", type=int, default=0, help="seed for sampled cases")
    common.add_argument("--samples", type=int, default=None, help="cap sampled case counts")

    parser = argparse.ArgumentParser(
        prog="forestshuffle",
        description="Exact shuffle products, coproducts and Rota-Baxter checks on decorated rooted forests.",
    )
    sub = parser.add_subparsers(dest="verb", required=True)

    p = sub.add_parser("shuffle", parents=[common], help="shuffle of two forests")
    p.add_argument("first")
    p.add_argument("second")
    p.add_argument("--product", choices=("shuffle", "star", "diamond"), default="shuffle")

    p = sub.add_parser("coproduct", parents=[common], help="trunk coproduct of a tree")
    p.add_argument("tree")

    p = sub.add_parser("dual", parents=[common], help="dual coproduct of a forest")
    p.add_argument("forest")
    p.add_argument("--mode", choices=("recursive", "combinatorial", "oracle"), default="recursive")

    p = sub.add_parser("families", parents=[common], help="admissible vertex families of a tree")
    p.add_argument("tree")

    p = sub.add_parser("pair", parents=[common], help="coefficient of FOREST in F1 shuffle F2")
    p.add_argument("forest")
    p.add_argument("first")
    p.add_argument("second")

    p = sub.add_parser("graft", parents=[common], help="grafting products")
    p.add_argument("base")
    p.add_argument("scion")
    p.add_argument("--op", choices=("leaves", "linear"), default="leaves",
                   help="graft on every leaf, or only when the base has a single leaf")

    p = sub.add_parser("primitives", parents=[common], help="primitive-tree counts and shapes")
    group = p.add_mutually_exclusive_group(required=True)
    group.add_argument("--count", type=int, metavar="N", help="print p_0..p_N, one per line")
    group.add_argument("--list", type=int, metavar="N", dest="list_size",
                       help="print the primitive shapes with N vertices")
    p.add_argument("--csv", metavar="PATH", help="also write n,p_n rows to PATH")

    p = sub.add_parser("rb", parents=[common], help="quasi-universal Rota-Baxter checks")
    p.add_argument("--backend", choices=("words", "forests"), default="forests")
    p.add_argument("--check", choices=("identity", "morphism"), default="identity")
    p.add_argument("--corrupt", action="store_true", help="use the corrupted negative-control operator")

    p = sub.add_parser("verify", parents=[common], help="run verification suites")
    p.add_argument("--suite", default="all", help="suite name or 'all'")
    return parser


def _emit_lincomb(x: LinComb, as_json: bool) -> None:
    if as_json:
        print(json.dumps(lincomb_json(x), indent=2, sort_keys=True))
    else:
        print(render_lincomb(x))


def _cmd_shuffle(args) -> int:
    first, second = parse_forest(args.first), parse_forest(args.second)
    op = {"shuffle": forest_shuffle, "star": star_product, "diamond": diamond_product}[args.product]
    _emit_lincomb(op(first, second, args.weight), args.json)
    return 0


def _cmd_coproduct(args) -> int:
    result = trunk_coproduct(parse_forest(args.tree))
    if args.json:
        print(json.dumps(tensor_json(result), indent=2, sort_keys=True))
    else:
        print(render_tensor(result))
    return 0


def _cmd_dual(args) -> int:
    forest = parse_forest(args.forest)
    mode = {"recursive": dual_recursive, "combinatorial": dual_combinatorial, "oracle": dual_oracle}
    result = mode[args.mode](forest)
    if args.json:
        print(json.dumps(tensor_json(result), indent=2, sort_keys=True))
    else:
        print(render_tensor(result))
    return 0


def _cmd_families(args) -> int:
    tree = parse_tree(args.tree)
    rows = [
        {
            "gamma": [list(ref) for ref in sorted(fam.gamma)],
            "t_gamma": fam.t_gamma.key,
            "t_complement": fam.t_complement.key,
            "c_gamma": fam.c_gamma,
        }
        for fam in admissible_families(tree)
    ]
    if args.json:
        print(json.dumps(rows, indent=2, sort_keys=True))
    else:
        for row in rows:
            print(
                f"gamma={row['gamma']} c={row['c_gamma']} "
                f"t_gamma={row['t_gamma']} t_complement={row['t_complement']}"
            )
    return 0


def _cmd_pair(args) -> int:
    c = shuffle_coefficient(
        parse_forest(args.forest), parse_forest(args.first), parse_forest(args.second), args.weight
    )
    if args.json:
        print(json.dumps({"coeff": str(c)}))
    else:
        print(c)
    return 0


def _cmd_graft(args) -> int:
    op = graft_leaves if args.op == "leaves" else graft_linear
    _emit_lincomb(op(parse_forest(args.base), parse_forest(args.scion)), args.json)
    return 0


def _cmd_primitives(args) -> int:
    if args.list_size is not None:
        from .primitives import is_primitive

        if args.list_size > SHAPE_GUARD:
            raise GuardExceeded(
                f"shape listing is guarded to {SHAPE_GUARD} vertices, got {args.list_size}"
            )
        shapes = [s for s in enumerate_shapes(args.list_size) if is_primitive(s)]
        if args.json:
            print(json.dumps([s.key for s in shapes], indent=2))
        else:
            for s in shapes:
                print(s.key)
        return 0

    values = [primitive_count_recursive(n) for n in range(args.count + 1)]
    if args.json:
        print(json.dumps(values))
    else:
        for v in values:
            print(v)
    if args.csv:
        with open(args.csv, "w", encoding="utf-8") as fh:
            for n, v in enumerate(values):
                fh.write(f"{n},{v}\n")
    return 0


def _cmd_rb(args) -> int:
    samples = args.samples if args.samples is not None else 100
    degree = args.max_degree if args.max_degree is not None else 5
    rng = random.Random(args.seed)
    alphabet = default_alphabet(("a", "b"))

    if args.check == "identity":
        if args.backend == "words":
            algebra = word_algebra(args.weight)
            pairs = [
                (
                    LinComb.of(random_word(rng, rng.randint(1, max(1, degree // 2)), alphabet)),
                    LinComb.of(random_word(rng, rng.randint(1, max(1, degree // 2)), alphabet)),
                )
                for _ in range(samples)
            ]
        else:
            algebra = (
                corrupted_forest_algebra(args.weight, "a") if args.corrupt else forest_algebra(args.weight)
            )
            pairs = [
                (
                    LinComb.of(random_forest(rng, rng.randint(1, max(1, degree - 1)), alphabet)),
                    LinComb.of(random_forest(rng, rng.randint(1, max(1, degree - 1)), alphabet)),
                )
                for _ in range(samples)
            ]
        report = rb_verify(algebra, pairs)
        payload = {
            "kind": "quasi-universal checks",
            "algebra": report.algebra,
            "weight": report.weight,
            "check": "identity",
            "cases": len(report.cases),
            "failed": len(report.failures),
            "failures": [
                {"left": c.left, "right": c.right, "residual": c.residual}
                for c in report.failures
            ],
            "seed": args.seed,
        }
    else:
        from .shuffle import diamond_product

        walg = word_algebra(args.weight)
        failures = []
        cases = 0
        for _ in range(samples):
            f = random_forest(rng, rng.randint(1, max(1, degree - 1)), alphabet)
            lhs = phi_bar(forest_rb_operator(f).as_forest(), walg, word_embedding)
            rhs = walg.operator(phi_bar(f, walg, word_embedding))
            cases += 1
            if lhs != rhs:
                failures.append({"forest": f.key, "lhs": render_lincomb(lhs), "rhs": render_lincomb(rhs)})
            g = random_forest(rng, rng.randint(1, 3), alphabet)
            image = LinComb.zero()
            for h, c in diamond_product(f, g, args.weight).items():
                image = image + phi_bar(h, walg, word_embedding).scale(c)
            direct = walg.product(
                phi_bar(f, walg, word_embedding), phi_bar(g, walg, word_embedding)
            )
            cases += 1
            if image != direct:
                failures.append(
                    {"forest": f"{f.key} | {g.key}", "lhs": render_lincomb(image), "rhs": render_lincomb(direct)}
                )
        payload = {
            "kind": "quasi-universal checks",
            "algebra": "forests -> words",
            "weight": str(args.weight),
            "check": "morphism",
            "cases": cases,
            "failed": len(failures),
            "failures": failures,
            "seed": args.seed,
        }

    if args.json:
        print(json.dumps(payload, indent=2, sort_keys=True))
    else:
        print(
            f"quasi-universal checks [{payload['algebra']}, weight {payload['weight']}, "
            f"{payload['check']}]: {payload['cases'] - payload['failed']}/{payload['cases']} passed"
        )
        for failure in payload["failures"]:
            print(f"  FAIL {failure}")
    return 1 if payload["failed"] else 0


def _cmd_verify(args) -> int:
    cfg = SuiteConfig(max_degree=args.max_degree, samples=args.samples, seed=args.seed)
    try:
        reports = run_suite(args.suite, cfg)
    except KeyError as exc:
        print(exc.args[0], file=sys.stderr)
        return 2
    if args.json:
        print(json.dumps([r.to_json() for r in reports], indent=2, sort_keys=True))
    else:
        for r in reports:
            status = "ok" if r.failed == 0 else "FAILED"
            print(
                f"suite {r.suite}: {r.passed}/{r.cases} passed, {r.failed} failed "
                f"[{status}] ({r.duration:.2f}s, seed {r.seed})"
            )
            for note in r.notes:
                print(f"  note: {note}")
            for f in r.failures[:20]:
                print(f"  FAIL {f.case} on {f.inputs}")
                print(f"       expected: {f.expected}")
                print(f"       actual:   {f.actual}")
    return 1 if any(r.failed for r in reports) else 0


_COMMANDS = {
    "shuffle": _cmd_shuffle,
    "coproduct": _cmd_coproduct,
    "dual": _cmd_dual,
    "families": _cmd_families,
    "pair": _cmd_pair,
    "graft": _cmd_graft,
    "primitives": _cmd_primitives,
    "rb": _cmd_rb,
    "verify": _cmd_verify,
}


def main(argv: list[str] | None = None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        return _COMMANDS[args.verb](args)
    except TreeSyntaxError as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return 3
    except GuardExceeded as exc:
        print(f"guard exceeded: {exc}", file=sys.stderr)
        return 4
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
