import logging
import os
from pathlib import Path

from GenFlag.config import FIXTURE_DIR, FLAG_FILE_EXTENSION
from GenFlag.dsl.document import SpecDocument
from GenFlag.dsl.parser import load_spec
from GenFlag.dsl.printer import print_spec, render_report
from GenFlag.errors import UsageError
from GenFlag.utils import ReportSaver, timer

from .command_interface import CommandInterface, CommandOptions

logger = logging.getLogger(__name__)


def resolve_document(name: str) -> Path:
    """The path as given, else the file of that name in the fixture corpus.

    Names without the document extension are tried with it as well.
    """
    path = Path(name)
    candidates = [path] if path.suffix == FLAG_FILE_EXTENSION else [path, path.with_name(path.name + FLAG_FILE_EXTENSION)]
    for candidate in candidates:
        if candidate.is_file():
            return candidate
    if not path.is_absolute():
        for candidate in candidates:
            fallback = Path(FIXTURE_DIR) / candidate
            if fallback.is_file():
                logger.debug(f"Using fixture {fallback}")
                return fallback
    raise FileNotFoundError(f"No such document: {name}")


def load_document(name: str) -> SpecDocument:
    return load_spec(resolve_document(name))


class CommandOrchestrator:
    def __init__(self, command: CommandInterface, saver: ReportSaver | None = None):
        self.command = command
        self.saver = saver

    @timer
    def execute(self, names: list[str], options: CommandOptions) -> tuple[str, int]:
        if len(names) != self.command.arity:
            raise UsageError(f"{self.command.name} expects {self.command.arity} document(s), got {len(names)}")
        logger.debug(f"Loading {len(names)} document(s) for {self.command.name}...")
        documents = [load_document(name) for name in names]
        result = self.command.run(documents, options)
        text = print_spec(result.document) if result.document is not None else render_report(result.entries)
        logger.info(f"{self.command.name} finished with exit code {result.code}")

        if self.saver is not None:
            stem = os.path.splitext(os.path.basename(names[0]))[0]
            self.saver.save_report(f"{stem}.{self.command.name}.txt", text)
        return text, result.code
