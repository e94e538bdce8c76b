from GenFlag.errors import UsageError

from .command_interface import CommandInterface
from .flag_commands import (
    CheckFlagCommand,
    CheckMaximalCommand,
    DualCommand,
    EmbedCommand,
    LiftCommand,
    NormalizeCommand,
    ProjectiveCommand,
    StabilizerDimCommand,
    TruncateCommand,
)
from .isotropic_commands import GramSchmidtCommand, IsotropicCheckCommand
from .picard_commands import KernelCheckCommand, PicardCommand, RestrictCommand, VeryAmpleCommand
from .relation_commands import BigCellCommand, CommensurableCommand, CoverCommand, MapElementCommand

COMMANDS = {
    command.name: command
    for command in (
        NormalizeCommand,
        CheckMaximalCommand,
        CheckFlagCommand,
        CommensurableCommand,
        TruncateCommand,
        EmbedCommand,
        LiftCommand,
        MapElementCommand,
        StabilizerDimCommand,
        BigCellCommand,
        CoverCommand,
        IsotropicCheckCommand,
        GramSchmidtCommand,
        PicardCommand,
        RestrictCommand,
        KernelCheckCommand,
        VeryAmpleCommand,
        ProjectiveCommand,
        DualCommand,
    )
}


def get_command(name: str) -> CommandInterface:
    """
    Determine the command implementation for a subcommand name.
    """
    if name in COMMANDS:
        return COMMANDS[name]()
    raise UsageError(f"Unsupported command {name!r}, expected one of: {', '.join(sorted(COMMANDS))}")
