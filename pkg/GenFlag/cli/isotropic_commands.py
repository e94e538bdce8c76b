from __future__ import annotations

from GenFlag.cli.command_interface import CommandInterface, CommandResult
from GenFlag.cli.flag_commands import level_for
from GenFlag.dsl.printer import format_vector
from GenFlag.errors import TypeMismatchError
from GenFlag.varieties.isotropic import (
    IsotropicFlagSpec,
    default_generators,
    isotropic_gram_schmidt,
    validate_isotropic,
)


def isotropic_spec(document) -> IsotropicFlagSpec:
    spec = document.spec
    if not isinstance(spec, IsotropicFlagSpec):
        raise TypeMismatchError(f"{document.name} is not an isotropic flag document")
    return spec


class IsotropicCheckCommand(CommandInterface):
    name = "isotropic-check"

    def run(self, documents, options):
        spec = isotropic_spec(documents[0])
        n = level_for(spec, options)
        report = validate_isotropic(spec, n)
        entries = {
            "level": n,
            "middle_dim": report.middle_dim,
            "ok": report.ok,
            "tau_prime_dim": len(report.tau_prime),
        }
        if report.failure is not None:
            entries["failure"] = report.failure
        return CommandResult(entries)


class GramSchmidtCommand(CommandInterface):
    name = "gram-schmidt"

    def run(self, documents, options):
        spec = isotropic_spec(documents[0])
        n = level_for(spec, options)
        generators, center = default_generators(spec, n)
        result = isotropic_gram_schmidt(generators, spec, center)
        entries = {"level": n, "pairs": len(result.pairs)}
        for k, (e, e_dual) in enumerate(result.pairs, start=1):
            entries[f"pair {k:02d}"] = f"{format_vector(e)} | {format_vector(e_dual)}"
        if result.center is not None:
            entries["center"] = result.center
        return CommandResult(entries)
