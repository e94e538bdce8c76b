from __future__ import annotations

from abc import ABC, abstractmethod
from dataclasses import dataclass, field

from GenFlag.config import KERNEL_CHECK_MAX_BOUND
from GenFlag.dsl.document import SpecDocument

EXIT_OK = 0
EXIT_ERROR = 1
EXIT_REFUSED = 2


@dataclass(frozen=True)
class CommandOptions:
    level: int | None = None
    bound: int = KERNEL_CHECK_MAX_BOUND
    cell_basis: SpecDocument | None = None


@dataclass(frozen=True)
class CommandResult:
    """Either report entries (printed as sorted ``key: value`` lines) or a document to print."""

    entries: dict = field(default_factory=dict)
    document: SpecDocument | None = None
    code: int = EXIT_OK


class CommandInterface(ABC):
    name: str = ""
    arity: int = 1

    @abstractmethod
    def run(self, documents: list[SpecDocument], options: CommandOptions) -> CommandResult:
        """Runs the command on parsed input documents.

        Args:
            documents (list[SpecDocument]): The documents named on the command line, in order.
            options (CommandOptions): Level, bound and cell basis overrides.

        Returns:
            CommandResult: Report entries or a document, and the exit code.
        """
        pass
