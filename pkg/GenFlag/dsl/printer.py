"""Deterministic printing of documents and command reports through jinja2 templates."""
from __future__ import annotations

import logging
from fractions import Fraction
from typing import Iterable

from jinja2 import Environment, PackageLoader, StrictUndefined

from GenFlag.algebra.exactlin import VectorFS
from GenFlag.algebra.labels import DenseInTier, ResidueAffine, TailRule
from GenFlag.dsl.document import DocumentKind, SpecDocument
from GenFlag.varieties.isotropic import MIDDLE, IsotropicFlagSpec

logger = logging.getLogger(__name__)


def format_number(value) -> str:
    return str(Fraction(value))


def format_slot(key: int) -> str:
    return f"e^{-key}" if key < 0 else f"e{key}"


def format_vector(v: VectorFS) -> str:
    parts = []
    for key, c in v.items():
        sign = "-" if c < 0 else "+"
        magnitude = abs(c)
        term = format_slot(key) if magnitude == 1 else f"{format_number(magnitude)}*{format_slot(key)}"
        if not parts:
            parts.append(term if sign == "+" else f"-{term}")
        else:
            parts.append(f"{sign} {term}")
    return " ".join(parts) if parts else "0"


def format_tail(tail: TailRule) -> str:
    if isinstance(tail, DenseInTier):
        return f"tail dense {tail.tier}" + (" desc" if tail.descending else "")
    if isinstance(tail, ResidueAffine):
        residues = " ".join(
            f"[{r}: {rule.tier}, {format_number(rule.slope)}, {format_number(rule.intercept)}]"
            for r, rule in enumerate(tail.residues)
        )
        return f"tail affine mod {tail.modulus} {residues}"
    raise TypeError(f"no printed form for tail rule {tail!r}")


def format_indices(values: Iterable[int]) -> str:
    return "{" + ", ".join(str(v) for v in sorted(values)) + "}"


def format_value(value) -> str:
    """Report values: lowercase booleans, reduced fractions, comma separated sequences."""
    if isinstance(value, bool):
        return "true" if value else "false"
    if value is None:
        return "none"
    if isinstance(value, (int, Fraction)):
        return format_number(value)
    if isinstance(value, VectorFS):
        return format_vector(value)
    if isinstance(value, (list, tuple)):
        return ",".join(format_value(v) for v in value)
    return str(value)


_environment = Environment(
    loader=PackageLoader("GenFlag.dsl", "templates"),
    trim_blocks=True,
    lstrip_blocks=True,
    keep_trailing_newline=True,
    undefined=StrictUndefined,
    autoescape=False,
)
_environment.filters.update(
    vector=format_vector,
    tail=format_tail,
    indices=format_indices,
    number=format_number,
)


def print_spec(document: SpecDocument) -> str:
    """Canonical text of a document; parsing it back yields an equal document."""
    template = _environment.get_template(f"{document.kind.value}.j2")
    context = {"name": document.name, "middle": MIDDLE}
    if document.kind is DocumentKind.CHAIN:
        context["chain"] = document.body
    elif document.kind is DocumentKind.FINITE:
        context["flag"] = document.body
        context["steps"] = list(zip(document.body.labels, document.body.steps))
    elif document.kind is DocumentKind.PIC:
        context["element"] = document.body
        context["spec"] = document.body.spec
        context["isotropic"] = isinstance(document.body.spec, IsotropicFlagSpec)
    else:
        context["spec"] = document.body
    text = template.render(**context)
    logger.debug(f"printed {document.kind.value} document {document.name}: {len(text.splitlines())} lines")
    return text


def render_report(entries: dict[str, object]) -> str:
    """``key: value`` lines sorted by key."""
    rows = sorted((key, format_value(value)) for key, value in entries.items())
    return _environment.get_template("report.j2").render(entries=rows)
