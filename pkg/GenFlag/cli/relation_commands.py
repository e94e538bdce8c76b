"""Commands relating two flags: commensurability, group elements and big cells."""
from __future__ import annotations

import logging

from GenFlag.cli.command_interface import EXIT_REFUSED, CommandInterface, CommandResult
from GenFlag.cli.flag_commands import linear_spec
from GenFlag.dsl.printer import format_number, format_vector
from GenFlag.varieties.cells import big_cell_coords, find_covering_cell
from GenFlag.varieties.commens import commensurable
from GenFlag.varieties.group import mapping_element, maps_onto

logger = logging.getLogger(__name__)


def _rows(matrix) -> str:
    return "; ".join(" ".join(format_number(matrix[r, c]) for c in range(matrix.cols)) for r in range(matrix.rows))


class CommensurableCommand(CommandInterface):
    name = "commensurable"
    arity = 2

    def run(self, documents, options):
        first, second = documents
        found = commensurable(first.spec, second.spec)
        if not found.commensurable:
            logger.warning(f"{first.name} and {second.name}: {found.reason}: {found.detail}")
            return CommandResult({"commensurable": False}, code=EXIT_REFUSED)
        moved = [f"{a}->{b}" for a, b in found.correspondence] or "none"
        return CommandResult({"commensurable": True, "level": found.level, "moved": moved})


class MapElementCommand(CommandInterface):
    name = "map-element"
    arity = 2

    def run(self, documents, options):
        first, second = documents
        g = mapping_element(first.spec, second.spec)
        return CommandResult({
            "det": g.det,
            "level": g.window,
            "maps": maps_onto(g, first.spec, second.spec, g.window),
            "matrix": _rows(g.block),
            "support": list(g.support) or "none",
        })


class BigCellCommand(CommandInterface):
    name = "big-cell"
    arity = 2

    def run(self, documents, options):
        flag, reference = linear_spec(documents[0]), linear_spec(documents[1])
        basis = options.cell_basis.spec.basis if options.cell_basis is not None else reference.basis
        found = big_cell_coords(flag, basis, reference)
        if not found.in_cell:
            return CommandResult({
                "in_cell": False,
                "intersection_dim": found.intersection_dim,
                "position": found.position,
            }, code=EXIT_REFUSED)
        entries = {"in_cell": True, "level": found.level, "maps": len(found.maps)}
        for m in found.maps:
            entries[f"map {m.position}"] = f"{list(m.sources)} -> {list(m.targets)}: {_rows(m.matrix)}"
        return CommandResult(entries)


class CoverCommand(CommandInterface):
    name = "cover"
    arity = 2

    def run(self, documents, options):
        flag, reference = linear_spec(documents[0]), linear_spec(documents[1])
        basis = find_covering_cell(flag, reference)
        replaced = "; ".join(f"l{k} = {format_vector(v)}" for k, v in basis.replacements) or "E"
        return CommandResult({"basis": replaced, "in_cell": True})
