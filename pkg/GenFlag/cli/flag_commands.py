"""Commands on a single flag: normalization, order checks and the finite-level tower."""
from __future__ import annotations

import logging

from GenFlag.algebra.chains import chain_of, fl
from GenFlag.algebra.flag_checks import dual, is_flag, is_maximal, reconstruct_check
from GenFlag.algebra.flag_spec import FlagSpecBase, GeneralizedFlagSpec
from GenFlag.cli.command_interface import CommandInterface, CommandOptions, CommandResult
from GenFlag.dsl.document import DocumentKind, SpecDocument
from GenFlag.errors import TypeMismatchError
from GenFlag.varieties.group import stabilizer_dim
from GenFlag.varieties.picard import is_projective
from GenFlag.varieties.tower import embed_step, embedding_data, lift, truncate

logger = logging.getLogger(__name__)


def level_for(spec: FlagSpecBase, options: CommandOptions) -> int:
    """The requested level, or the spec level when none was given."""
    n = options.level if options.level is not None else spec.n_spec
    spec.check_level(n)
    return n


def linear_spec(document: SpecDocument) -> GeneralizedFlagSpec:
    spec = document.spec
    if not isinstance(spec, GeneralizedFlagSpec):
        raise TypeMismatchError(f"{document.name} is not a type A flag document")
    return spec


class NormalizeCommand(CommandInterface):
    name = "normalize"

    def run(self, documents, options):
        document = documents[0]
        if document.kind is DocumentKind.CHAIN:
            spec = fl(document.body)
        else:
            spec = fl(chain_of(linear_spec(document)))
        logger.info(f"normalized {document.name}")
        return CommandResult(document=SpecDocument(DocumentKind.FLAG, document.name, spec))


class CheckMaximalCommand(CommandInterface):
    name = "check-maximal"

    def run(self, documents, options):
        return CommandResult({"maximal": is_maximal(documents[0].spec)})


class CheckFlagCommand(CommandInterface):
    name = "check-flag"

    def run(self, documents, options):
        spec = documents[0].spec
        n = level_for(spec, options)
        return CommandResult({"flag": is_flag(spec), "level": n, "reconstructs": reconstruct_check(spec, n)})


class TruncateCommand(CommandInterface):
    name = "truncate"

    def run(self, documents, options):
        spec = documents[0].spec
        flag = truncate(spec, level_for(spec, options))
        return CommandResult({"d": list(flag.dims), "labels": list(flag.labels), "level": flag.level, "s": flag.length})


class EmbedCommand(CommandInterface):
    name = "embed"

    def run(self, documents, options):
        spec = documents[0].spec
        n = level_for(spec, options)
        image = embed_step(truncate(spec, n), spec)
        j, s_n, s_next = embedding_data(spec, n)
        return CommandResult({
            "commutes": image == truncate(spec, n + 1),
            "d": list(image.dims),
            "j": j,
            "level": image.level,
            "s": s_n,
            "s_next": s_next,
        })


class LiftCommand(CommandInterface):
    name = "lift"
    arity = 2

    def run(self, documents, options):
        finite, reference = documents
        if finite.kind is not DocumentKind.FINITE:
            raise TypeMismatchError(f"{finite.name} is not a finite flag document")
        spec = lift(finite.body, linear_spec(reference))
        return CommandResult(document=SpecDocument(DocumentKind.FLAG, finite.name, spec))


class DualCommand(CommandInterface):
    name = "dual"

    def run(self, documents, options):
        document = documents[0]
        return CommandResult(document=SpecDocument(DocumentKind.FLAG, document.name, dual(linear_spec(document))))


class ProjectiveCommand(CommandInterface):
    name = "projective"

    def run(self, documents, options):
        return CommandResult({"projective": is_projective(documents[0].spec)})


class StabilizerDimCommand(CommandInterface):
    name = "stabilizer-dim"

    def run(self, documents, options):
        spec = documents[0].spec
        n = level_for(spec, options)
        return CommandResult({"dim": stabilizer_dim(spec, n), "level": n})
