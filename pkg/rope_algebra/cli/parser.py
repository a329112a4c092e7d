# =============================================================================
# rope_algebra/cli/parser.py - Command-Line Arguments
# =============================================================================

import argparse

from rope_algebra.ortho.models import OrthoKind


def _positive_int(text: str) -> int:
    value = int(text)
    if value < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {text}")
    return value


def _common_parent() -> argparse.ArgumentParser:
    parent = argparse.ArgumentParser(add_help=False)
    parent.add_argument("--seed", type=int, default=None, help="RNG seed (default: ROPE_ALGEBRA_SEED)")
    parent.add_argument("-o", "--output", default=None, help="output file (default: stdout)")
    return parent


def _input_parent() -> argparse.ArgumentParser:
    parent = argparse.ArgumentParser(add_help=False)
    parent.add_argument("-i", "--input", required=True, help="generator-set JSON file")
    return parent


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="rope-algebra",
        description="Build, validate and apply N-dimensional rotary position embeddings.",
        allow_abbrev=False,
    )
    common, needs_input = _common_parent(), _input_parent()
    sub = parser.add_subparsers(dest="command", required=True)

    gen = sub.add_parser(
        "gen", parents=[common], allow_abbrev=False, help="write a generator set"
    )
    gen.add_argument("--construction", choices=["toral", "mixed"], default="toral")
    gen.add_argument("--axes", dest="n_axes", type=_positive_int, default=None)
    gen.add_argument("--blocks", dest="blocks_per_axis", type=_positive_int, default=None)
    gen.add_argument("--base", type=float, default=None)
    gen.add_argument("--theta", type=float, default=1.0)
    gen.add_argument("--theta2", type=float, default=None, help="second frequency (mixed only)")
    gen.add_argument("--d", dest="d", type=int, default=None, help="target dimension")
    gen.add_argument("--conjugate", choices=[k.value for k in OrthoKind], default=None)
    gen.add_argument("--ortho-param", dest="ortho_param", default=None, help="OrthoParam JSON file")

    verify = sub.add_parser(
        "verify", parents=[common, needs_input], allow_abbrev=False, help="validate a generator set"
    )
    verify.add_argument("--samples", type=_positive_int, default=None)
    verify.add_argument("--tol-relativity", dest="tol_relativity", type=float, default=None)
    verify.add_argument("--grid", type=int, default=None)

    bench = sub.add_parser(
        "bench", parents=[common, needs_input], allow_abbrev=False, help="time fast vs dense rotation"
    )
    bench.add_argument("--positions", type=int, default=None)

    demo = sub.add_parser(
        "demo", parents=[common, needs_input], allow_abbrev=False, help="end-to-end attention demo"
    )
    demo.add_argument("--tokens", type=int, default=None)
    demo.add_argument("--tol-relativity", dest="tol_relativity", type=float, default=None)

    return parser
