"""Picard group commands; very-ample on a plain flag document reports its constructed witness class."""
from __future__ import annotations

import logging

from GenFlag.cli.command_interface import CommandInterface, CommandResult
from GenFlag.cli.flag_commands import level_for
from GenFlag.dsl.document import DocumentKind, SpecDocument
from GenFlag.errors import TypeMismatchError
from GenFlag.varieties.picard import (
    PicElement,
    is_very_ample,
    kernel_check,
    pic_presentation,
    restrict_pic,
    very_ample_witness,
)

logger = logging.getLogger(__name__)


def pic_element(document: SpecDocument) -> PicElement:
    if document.kind is not DocumentKind.PIC:
        raise TypeMismatchError(f"{document.name} is not a pic document")
    return document.body


def describe_weights(p: PicElement) -> str:
    explicit = [f"{a}={m}" for a, m in p.explicit]
    rule = " ".join(f"[{r}: {u}, {v}]" for r, (u, v) in enumerate(p.rule.residues))
    return ", ".join(explicit + [f"mod {p.rule.modulus} {rule}"])


class PicardCommand(CommandInterface):
    name = "picard"

    def run(self, documents, options):
        presentation = pic_presentation(documents[0].spec)
        generators = [str(a) for a in presentation.generators]
        if presentation.infinite:
            generators.append("...")
        return CommandResult({
            "generators": generators,
            "infinite": presentation.infinite,
            "rank": presentation.rank if presentation.rank is not None else "infinite",
            "relation": presentation.relation or "none",
        })


class RestrictCommand(CommandInterface):
    name = "restrict"

    def run(self, documents, options):
        p = pic_element(documents[0])
        n = level_for(p.spec, options)
        return CommandResult({"coords": restrict_pic(p, n) or "none", "level": n})


class KernelCheckCommand(CommandInterface):
    name = "kernel-check"

    def run(self, documents, options):
        spec = documents[0].spec
        n = level_for(spec, options)
        return CommandResult({"bound": options.bound, "kernel": kernel_check(spec, n, options.bound), "level": n})


class VeryAmpleCommand(CommandInterface):
    name = "very-ample"

    def run(self, documents, options):
        document = documents[0]
        if document.kind is DocumentKind.PIC:
            return CommandResult({"very_ample": is_very_ample(document.body)})
        witness = very_ample_witness(document.spec)
        if witness is None:
            logger.info(f"{document.name} is not a flag, no class is very ample")
            return CommandResult({"very_ample": False, "witness": None})
        return CommandResult({"very_ample": is_very_ample(witness), "witness": describe_weights(witness)})
