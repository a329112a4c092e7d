# =============================================================================
# rope_algebra/main.py - Command-Line Entry Point
# =============================================================================

import sys
from typing import Optional, Sequence

from rope_algebra.cli.commands import run_command
from rope_algebra.cli.models import CliConfig
from rope_algebra.cli.parser import build_parser
from rope_algebra.exceptions import RopeAlgebraError
from rope_algebra.utils.logging import cli_logger as logger
from rope_algebra.utils.logging import setup_logging


def main(argv: Optional[Sequence[str]] = None) -> int:
    """Run one command; returns 0 (all checks pass), 1 (a check or domain
    error failed) or 2 (usage or parse error)."""
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        # argparse exits 2 on bad flags and 0 on --help
        return int(e.code or 0)

    setup_logging()
    config = CliConfig.from_namespace(args)
    try:
        return run_command(config)
    except RopeAlgebraError as e:
        logger.debug("command failed", command=config.command, error=type(e).__name__, detail=e.detail)
        print(f"error: {e}", file=sys.stderr)
        return e.exit_code


if __name__ == "__main__":
    sys.exit(main())
