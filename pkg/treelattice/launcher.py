import argparse
import logging
import sys
from typing import Optional, Sequence

from treelattice.core import anticyclic, coxeter, dendriform, poset
from treelattice.core.base import CapacityError, VerificationError
from treelattice.core.dendriform import LinComb
from treelattice.core.linalg import matrix_order
from treelattice.core.tree import enumerate_trees
from treelattice.rendering import renderer
from treelattice.runtime import settings
from treelattice.runtime.runner import GROUPS, VerificationRunner
from treelattice.syntax.parser import parse_tree

log = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_CHECK_FAILED = 1
EXIT_USAGE = 2
EXIT_CAPACITY = 3

MATRIX_KINDS = ("zeta", "mobius", "coxeter", "coxeter-inverse", "tau", "theta2")

PRODUCTS = {
    "star": dendriform.star,
    "star-recursive": dendriform.star_recursive,
    "prec": dendriform.prec,
    "succ": dendriform.succ,
    "under": dendriform.under_lin,
    "over": dendriform.over_lin,
    "wedge": dendriform.wedge_lin,
}


def _matrix(kind: str, n: int):
    if kind == "zeta":
        return poset.zeta_matrix(poset.build(n))
    if kind == "mobius":
        return poset.mobius_matrix(poset.build(n))
    if kind == "coxeter":
        return coxeter.coxeter_matrix(n).theta
    if kind == "coxeter-inverse":
        return coxeter.coxeter_matrix(n).theta_inv
    if kind == "tau":
        return anticyclic.tau_matrix(n).matrix
    if kind == "theta2":
        return coxeter.coxeter_matrix(n).theta_squared()
    raise ValueError(f"unknown matrix kind {kind!r}")


# ═══════════════════════════════════════════════════════════
#  COMMANDS
# ═══════════════════════════════════════════════════════════


def cmd_trees(args) -> int:
    print(renderer.render_trees(args.n, enumerate_trees(args.n), args.format))
    return EXIT_OK


def cmd_poset(args) -> int:
    print(renderer.render_poset(poset.build(args.n), args.format))
    return EXIT_OK


def cmd_matrix(args) -> int:
    m = _matrix(args.kind, args.n)
    print(renderer.render_matrix(m, args.n, enumerate_trees(args.n), args.format))
    return EXIT_OK


def cmd_verify(args) -> int:
    groups = [g.strip() for g in args.checks.split(",") if g.strip()]
    runner = VerificationRunner(args.n, groups)
    reports = runner.run()
    print(renderer.render_reports(reports))
    return EXIT_OK if runner.passed else EXIT_CHECK_FAILED


def cmd_order(args) -> int:
    n = args.n
    tau_order = matrix_order(anticyclic.tau_matrix(n).matrix, n + 1)
    theta_order = matrix_order(coxeter.coxeter_matrix(n).theta, 2 * n + 2)
    print(f"tau {tau_order if tau_order is not None else 'none'}")
    print(f"theta {theta_order if theta_order is not None else 'none'}")
    return EXIT_OK if tau_order is not None and theta_order is not None else EXIT_CHECK_FAILED


def cmd_product(args) -> int:
    a = LinComb.of(parse_tree(args.left))
    b = LinComb.of(parse_tree(args.right))
    print(PRODUCTS[args.op](a, b))
    return EXIT_OK


# ═══════════════════════════════════════════════════════════
#  ARGUMENTS
# ═══════════════════════════════════════════════════════════


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument(
        "--max-degree",
        type=int,
        default=None,
        help="raise or lower every degree limit (enumeration, poset, matrix, verify)",
    )
    common.add_argument(
        "--integers",
        choices=[p.value for p in settings.IntegerPolicy],
        default=settings.IntegerPolicy.CHECKED.value,
        help="checked int64 arithmetic or exact python integers",
    )
    common.add_argument("-v", "--verbose", action="count", default=0)

    parser = argparse.ArgumentParser(
        prog="tamari_cli",
        description="Tamari lattices, Coxeter transformations and dendriform identities",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("trees", parents=[common], help="enumerate Y(n) in canonical order")
    p.add_argument("n", type=int)
    p.add_argument("--format", choices=renderer.TREE_FORMATS, default="text")
    p.set_defaults(func=cmd_trees)

    p = sub.add_parser("poset", parents=[common], help="covering relations of T(n)")
    p.add_argument("n", type=int)
    p.add_argument("--format", choices=renderer.POSET_FORMATS, default="dot")
    p.set_defaults(func=cmd_poset)

    p = sub.add_parser("matrix", parents=[common], help="export a matrix in the tree basis")
    p.add_argument("kind", choices=MATRIX_KINDS)
    p.add_argument("n", type=int)
    p.add_argument("--format", choices=renderer.MATRIX_FORMATS, default="json")
    p.set_defaults(func=cmd_matrix)

    p = sub.add_parser("verify", parents=[common], help="run the verification battery")
    p.add_argument("n", type=int)
    p.add_argument(
        "--checks",
        default="all",
        help=f"comma separated subset of {','.join(GROUPS)} or all",
    )
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("order", parents=[common], help="least orders of tau and theta")
    p.add_argument("n", type=int)
    p.set_defaults(func=cmd_order)

    p = sub.add_parser("product", parents=[common], help="evaluate a product of two trees")
    p.add_argument("op", choices=list(PRODUCTS))
    p.add_argument("left")
    p.add_argument("right")
    p.set_defaults(func=cmd_product)

    return parser


def _configure(args) -> None:
    level = logging.WARNING
    if args.verbose == 1:
        level = logging.INFO
    elif args.verbose >= 2:
        level = logging.DEBUG
    logging.basicConfig(
        stream=sys.stderr,
        level=level,
        format="%(levelname)s %(name)s: %(message)s",
        force=True,
    )

    overrides: dict = {"integers": settings.IntegerPolicy(args.integers)}
    if args.max_degree is not None:
        overrides.update(
            enumeration_limit=args.max_degree,
            poset_limit=args.max_degree,
            matrix_limit=args.max_degree,
            verify_limit=args.max_degree,
        )
    settings.reset()
    settings.configure(**overrides)


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return e.code if isinstance(e.code, int) else EXIT_USAGE

    _configure(args)
    try:
        return args.func(args)
    except CapacityError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_CAPACITY
    except VerificationError as e:
        log.error("internal exactness check failed: %s", e)
        return EXIT_CHECK_FAILED
    except ValueError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_USAGE
