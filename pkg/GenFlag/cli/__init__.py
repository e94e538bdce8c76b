# cli/__init__.py

from .command_interface import CommandInterface, CommandOptions, CommandResult
from .command_factory import get_command
from .command_orchestrator import CommandOrchestrator
from .main import build_parser, main, run_command

__all__ = [
    'CommandInterface',
    'CommandOptions',
    'CommandResult',
    'get_command',
    'CommandOrchestrator',
    'build_parser',
    'main',
    'run_command'
]
