from rope_algebra.cli.commands import COMMANDS, cmd_bench, cmd_demo, cmd_gen, cmd_verify, run_command
from rope_algebra.cli.models import BenchReport, CliConfig, DemoReport, Latency
from rope_algebra.cli.parser import build_parser

__all__ = [
    "BenchReport",
    "COMMANDS",
    "CliConfig",
    "DemoReport",
    "Latency",
    "build_parser",
    "cmd_bench",
    "cmd_demo",
    "cmd_gen",
    "cmd_verify",
    "run_command",
]
