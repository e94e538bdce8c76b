import argparse
import logging
import sys

from GenFlag.config import KERNEL_CHECK_MAX_BOUND
from GenFlag.dsl.printer import render_report
from GenFlag.errors import SemanticRefusal, UsageError
from GenFlag.utils import ReportSaver, configure_logging

from .command_factory import COMMANDS, get_command
from .command_interface import EXIT_ERROR, EXIT_REFUSED, CommandOptions
from .command_orchestrator import CommandOrchestrator, load_document

logger = logging.getLogger(__name__)


class _ArgumentParser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def build_parser() -> argparse.ArgumentParser:
    parser = _ArgumentParser(prog="genflag", description="GenFlag generalized flag CLI")
    parser.add_argument("command", type=str, help=f"One of: {', '.join(sorted(COMMANDS))}")
    parser.add_argument("files", nargs="+", help="Input .flag documents")
    parser.add_argument("--level", type=int, default=None, help="Truncation level (defaults to the spec level)")
    parser.add_argument("--bound", type=int, default=KERNEL_CHECK_MAX_BOUND, help="Weight bound for kernel-check")
    parser.add_argument("--cell-basis", dest="cell_basis", type=str, default=None,
                        help="Document whose basis defines the big cell")
    parser.add_argument("--output_dir", type=str, default=None, help="Directory to also save the report in")
    parser.add_argument("--verbose", action="store_true", help="Log at debug level")
    return parser


def run_command(argv: list[str]) -> tuple[str, int]:
    """Runs one subcommand and returns its report text and exit code; never configures logging."""
    try:
        args = build_parser().parse_args(argv)
        command = get_command(args.command)
        cell_basis = load_document(args.cell_basis) if args.cell_basis else None
        options = CommandOptions(args.level, args.bound, cell_basis)
        saver = ReportSaver(output_dir=args.output_dir) if args.output_dir else None
        return CommandOrchestrator(command, saver).execute(args.files, options)
    except SemanticRefusal as e:
        logger.warning(f"Refused: {e}")
        return render_report({"error": str(e)}), EXIT_REFUSED
    except (ValueError, OSError) as e:
        logger.error(f"Error: {e}")
        return render_report({"error": str(e)}), EXIT_ERROR


def main(argv: list[str] | None = None) -> int:
    argv = sys.argv[1:] if argv is None else argv
    configure_logging(logging.DEBUG if "--verbose" in argv else logging.INFO)
    text, code = run_command(argv)
    sys.stdout.write(text)
    return code
