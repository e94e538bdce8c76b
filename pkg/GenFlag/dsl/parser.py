"""Parser for line-oriented ``.flag`` documents.

    flag NAME | isotropic NAME | chain NAME | finite NAME | pic NAME
    basis replace SLOT = VECTOR
    window I -> LABEL                     lower window I -> LABEL
    tail affine mod M [r: TIER, A, B]...  lower tail ...
    tail dense TIER [desc]
    form B|C|D                            center -> LABEL
    member upto W {i, ...} [mod M {r, ...}]
    family
    level N                               step LABEL = VECTOR, VECTOR, ...
    weight LABEL = INT                    weights mod M [r: U, V]...

A LABEL is ``(TIER, P/Q)``. A VECTOR is a signed sum of rational multiples of
``e<i>``, ``e^<i>`` and ``e0``; SLOT is the integer key of a basis vector (-i for e^i).
Everything after ``#`` is a comment.
"""
from __future__ import annotations

import logging
import re
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path

from GenFlag.algebra.basis import BasisSpec
from GenFlag.algebra.chains import ChainSpec, SubspaceSpec, ordered_members
from GenFlag.algebra.exactlin import VectorFS
from GenFlag.algebra.flag_spec import GeneralizedFlagSpec, validate_spec
from GenFlag.algebra.labels import AffineResidue, Coloring, DenseInTier, PositionLabel, ResidueAffine, TailRule
from GenFlag.dsl.document import DocumentKind, SpecDocument
from GenFlag.errors import SpecSemanticError, SpecSyntaxError
from GenFlag.varieties.isotropic import MIDDLE, FormKind, FormSpec, IsotropicFlagSpec, validate_isotropic_spec
from GenFlag.varieties.picard import PicElement, WeightRule
from GenFlag.varieties.tower import FiniteFlag

logger = logging.getLogger(__name__)

TOKEN_PATTERN = re.compile(r"""
    (?P<WS>\s+)
  | (?P<COMMENT>\#.*)
  | (?P<BASIS>e\^\d+|e\d+)(?![A-Za-z0-9_])
  | (?P<NUMBER>\d+(?:/\d+)?)
  | (?P<NAME>[A-Za-z_][A-Za-z0-9_.\-]*)
  | (?P<ARROW>->)
  | (?P<PUNCT>[()\[\]{},:=*+\-])
""", re.VERBOSE)

KEYWORDS = {
    DocumentKind.FLAG: ("basis", "window", "tail"),
    DocumentKind.ISOTROPIC: ("basis", "window", "tail", "lower", "form", "center"),
    DocumentKind.CHAIN: ("basis", "member", "family", "window", "tail"),
    DocumentKind.FINITE: ("level", "step"),
    DocumentKind.PIC: ("basis", "window", "tail", "lower", "form", "center", "weight", "weights"),
}


@dataclass(frozen=True)
class Token:
    kind: str
    text: str
    column: int


def tokenize(line: str, lineno: int) -> list[Token]:
    tokens = []
    position = 0
    while position < len(line):
        match = TOKEN_PATTERN.match(line, position)
        if match is None:
            raise SpecSyntaxError(f"unexpected character {line[position]!r}", lineno, position + 1)
        kind = match.lastgroup
        if kind not in ("WS", "COMMENT"):
            tokens.append(Token(kind, match.group(kind), position + 1))
        position = match.end()
    return tokens


class _Cursor:
    """Reads the tokens of one line."""

    def __init__(self, tokens: list[Token], line: str, lineno: int):
        self.tokens = tokens
        self.index = 0
        self.line = line
        self.lineno = lineno

    def peek(self) -> Token | None:
        return self.tokens[self.index] if self.index < len(self.tokens) else None

    def fail(self, message: str, expected=()) -> SpecSyntaxError:
        token = self.peek()
        column = token.column if token is not None else len(self.line.rstrip()) + 1
        found = f"{token.text!r}" if token is not None else "end of line"
        return SpecSyntaxError(f"{message}, found {found}", self.lineno, column, expected)

    def next(self) -> Token:
        token = self.peek()
        if token is None:
            raise self.fail("unexpected end of line")
        self.index += 1
        return token

    def accept(self, text: str) -> bool:
        token = self.peek()
        if token is not None and token.text == text:
            self.index += 1
            return True
        return False

    def expect(self, text: str) -> None:
        if not self.accept(text):
            raise self.fail(f"expected {text!r}", (text,))

    def keyword(self, *choices: str) -> str:
        token = self.peek()
        if token is None or token.text not in choices:
            raise self.fail("unknown keyword", choices)
        self.index += 1
        return token.text

    def name(self) -> str:
        token = self.peek()
        if token is None or token.kind not in ("NAME", "NUMBER"):
            raise self.fail("expected a name", ("NAME",))
        self.index += 1
        return token.text

    def _sign(self) -> int:
        if self.accept("-"):
            return -1
        self.accept("+")
        return 1

    def number(self) -> Fraction:
        sign = self._sign()
        token = self.peek()
        if token is None or token.kind != "NUMBER":
            raise self.fail("expected a number", ("NUMBER",))
        self.index += 1
        return sign * Fraction(token.text)

    def integer(self) -> int:
        value = self.number()
        if value.denominator != 1:
            raise SpecSyntaxError(f"expected an integer, found {value}", self.lineno,
                                  self.tokens[self.index - 1].column, ("INTEGER",))
        return int(value)

    def label(self) -> PositionLabel:
        self.expect("(")
        tier = self.integer()
        self.expect(",")
        offset = self.number()
        self.expect(")")
        return PositionLabel(tier, offset)

    def basis_slot(self) -> int:
        token = self.peek()
        if token is None or token.kind != "BASIS":
            raise self.fail("expected a basis vector", ("e<i>", "e^<i>"))
        self.index += 1
        if token.text.startswith("e^"):
            return -int(token.text[2:])
        return int(token.text[1:])

    def vector(self) -> VectorFS:
        entries: list[tuple[int, Fraction]] = []
        sign = self._sign()
        while True:
            coefficient = Fraction(1)
            token = self.peek()
            if token is not None and token.kind == "NUMBER":
                self.index += 1
                coefficient = Fraction(token.text)
                self.accept("*")
            entries.append((self.basis_slot(), sign * coefficient))
            if self.accept("+"):
                sign = 1
            elif self.accept("-"):
                sign = -1
            else:
                return VectorFS.of(entries)

    def index_set(self) -> frozenset[int]:
        self.expect("{")
        found = set()
        if self.accept("}"):
            return frozenset()
        while True:
            found.add(self.integer())
            if self.accept("}"):
                return frozenset(found)
            self.expect(",")

    def end(self) -> None:
        if self.peek() is not None:
            raise self.fail("unexpected trailing input")


@dataclass
class _Draft:
    kind: DocumentKind
    name: str
    header: int
    replacements: dict[int, VectorFS] = field(default_factory=dict)
    window: dict[int, PositionLabel] = field(default_factory=dict)
    tail: TailRule | None = None
    lower_window: dict[int, PositionLabel] = field(default_factory=dict)
    lower_tail: TailRule | None = None
    form: FormKind | None = None
    center: PositionLabel | None = None
    members: list[SubspaceSpec] = field(default_factory=list)
    family: bool = False
    level: int | None = None
    steps: list[tuple[PositionLabel, list[VectorFS]]] = field(default_factory=list)
    weights: dict[PositionLabel, int] = field(default_factory=dict)
    rule: WeightRule | None = None


def _tail(cursor: _Cursor) -> TailRule:
    if cursor.keyword("affine", "dense") == "dense":
        tier = cursor.integer()
        return DenseInTier(tier, cursor.accept("desc"))
    cursor.expect("mod")
    modulus = cursor.integer()
    residues: dict[int, AffineResidue] = {}
    cursor.expect("[")
    while True:
        r = cursor.integer()
        cursor.expect(":")
        tier = cursor.integer()
        cursor.expect(",")
        slope = cursor.number()
        cursor.expect(",")
        intercept = cursor.number()
        cursor.expect("]")
        if r in residues:
            raise SpecSemanticError(f"residue {r} is given twice", cursor.lineno)
        residues[r] = AffineResidue(tier, slope, intercept)
        if not cursor.accept("["):
            break
    if modulus < 1 or set(residues) != set(range(modulus)):
        raise SpecSemanticError(f"a tail mod {modulus} needs exactly the residues 0..{modulus - 1}", cursor.lineno)
    return ResidueAffine(modulus, tuple(residues[r] for r in range(modulus)))


def _weight_rule(cursor: _Cursor) -> WeightRule:
    cursor.expect("mod")
    modulus = cursor.integer()
    pairs: dict[int, tuple[int, int]] = {}
    cursor.expect("[")
    while True:
        r = cursor.integer()
        cursor.expect(":")
        u = cursor.integer()
        cursor.expect(",")
        v = cursor.integer()
        cursor.expect("]")
        pairs[r] = (u, v)
        if not cursor.accept("["):
            break
    if modulus < 1 or set(pairs) != set(range(modulus)):
        raise SpecSemanticError(f"weights mod {modulus} need exactly the residues 0..{modulus - 1}", cursor.lineno)
    return WeightRule(modulus, tuple(pairs[r] for r in range(modulus)))


def _window_entry(cursor: _Cursor, window: dict[int, PositionLabel]) -> None:
    index = cursor.integer()
    cursor.expect("->")
    label = cursor.label()
    if index in window:
        raise SpecSemanticError(f"window index {index} is given twice", cursor.lineno)
    window[index] = label


def _set_tail(cursor: _Cursor, current: TailRule | None) -> TailRule:
    if current is not None:
        raise SpecSemanticError("only one tail line is allowed", cursor.lineno)
    return _tail(cursor)


def _parse_line(draft: _Draft, cursor: _Cursor) -> None:
    keyword = cursor.keyword(*KEYWORDS[draft.kind])
    if keyword == "basis":
        cursor.expect("replace")
        slot = cursor.integer()
        cursor.expect("=")
        draft.replacements[slot] = cursor.vector()
    elif keyword in ("window", "tail") and draft.kind is DocumentKind.CHAIN and not draft.family:
        raise SpecSemanticError("window and tail lines of a chain follow its 'family' line", cursor.lineno)
    elif keyword == "window":
        _window_entry(cursor, draft.window)
    elif keyword == "tail":
        draft.tail = _set_tail(cursor, draft.tail)
    elif keyword == "lower":
        if cursor.keyword("window", "tail") == "window":
            _window_entry(cursor, draft.lower_window)
        else:
            draft.lower_tail = _set_tail(cursor, draft.lower_tail)
    elif keyword == "form":
        draft.form = FormKind(cursor.keyword("B", "C", "D"))
    elif keyword == "center":
        cursor.expect("->")
        draft.center = cursor.label()
    elif keyword == "member":
        cursor.expect("upto")
        upto = cursor.integer()
        indices = cursor.index_set()
        modulus, residues = 1, frozenset()
        if cursor.accept("mod"):
            modulus = cursor.integer()
            residues = cursor.index_set()
        draft.members.append(SubspaceSpec(upto, indices, modulus, residues))
    elif keyword == "family":
        draft.family = True
    elif keyword == "level":
        draft.level = cursor.integer()
    elif keyword == "step":
        label = cursor.label()
        cursor.expect("=")
        vectors = [cursor.vector()]
        while cursor.accept(","):
            vectors.append(cursor.vector())
        draft.steps.append((label, vectors))
    elif keyword == "weight":
        label = cursor.label()
        cursor.expect("=")
        draft.weights[label] = cursor.integer()
    elif keyword == "weights":
        draft.rule = _weight_rule(cursor)
    cursor.end()


def _require_tail(draft: _Draft) -> TailRule:
    if draft.tail is None:
        raise SpecSemanticError("a tail line is required", draft.header)
    return draft.tail


def _flag(draft: _Draft) -> GeneralizedFlagSpec | IsotropicFlagSpec:
    basis = BasisSpec.build(draft.replacements)
    upper = Coloring.build(draft.window, _require_tail(draft))
    if draft.form is None:
        if draft.lower_window or draft.lower_tail or draft.center is not None:
            raise SpecSemanticError("lower and center lines need a form line", draft.header)
        return validate_spec(GeneralizedFlagSpec(basis, upper))
    lower = None
    if draft.lower_window or draft.lower_tail is not None:
        lower_tail = draft.lower_tail if draft.lower_tail is not None else upper.tail.negated()
        lower = Coloring.build(draft.lower_window, lower_tail)
    center = draft.center if draft.center is not None else MIDDLE
    return validate_isotropic_spec(IsotropicFlagSpec(FormSpec(draft.form), basis, upper, lower, center))


def _chain(draft: _Draft) -> ChainSpec:
    family = None
    if draft.family:
        family = Coloring.build(draft.window, _require_tail(draft)).validated()
    chain = ChainSpec(BasisSpec.build(draft.replacements), tuple(draft.members), family)
    chain.basis.validate()
    ordered_members(chain)
    return chain


def _finite(draft: _Draft) -> FiniteFlag:
    if draft.level is None:
        raise SpecSemanticError("a level line is required", draft.header)
    return FiniteFlag.build(draft.level, [vectors for _, vectors in draft.steps], [label for label, _ in draft.steps])


def _build(draft: _Draft) -> SpecDocument:
    if draft.kind is DocumentKind.CHAIN:
        body = _chain(draft)
    elif draft.kind is DocumentKind.FINITE:
        body = _finite(draft)
    elif draft.kind is DocumentKind.PIC:
        body = PicElement.build(_flag(draft), draft.weights, draft.rule)
    else:
        body = _flag(draft)
        if (draft.kind is DocumentKind.ISOTROPIC) != isinstance(body, IsotropicFlagSpec):
            raise SpecSemanticError("isotropic documents need a form line, flag documents must not have one",
                                    draft.header)
    return SpecDocument(draft.kind, draft.name, body)


def parse_spec(text: str) -> SpecDocument:
    """Parses and validates one document; errors carry the offending line."""
    draft = None
    for lineno, line in enumerate(text.splitlines(), start=1):
        tokens = tokenize(line, lineno)
        if not tokens:
            continue
        cursor = _Cursor(tokens, line, lineno)
        try:
            if draft is None:
                kind = DocumentKind(cursor.keyword(*(k.value for k in DocumentKind)))
                draft = _Draft(kind, cursor.name(), lineno)
                cursor.end()
            else:
                _parse_line(draft, cursor)
        except (SpecSyntaxError, SpecSemanticError):
            raise
        except ValueError as e:
            raise SpecSemanticError(str(e), lineno) from e
    if draft is None:
        raise SpecSyntaxError("empty document", 1, 1, tuple(k.value for k in DocumentKind))
    try:
        document = _build(draft)
    except SpecSemanticError:
        raise
    except ValueError as e:
        raise SpecSemanticError(str(e), draft.header) from e
    logger.debug(f"parsed {document.kind.value} document {document.name}")
    return document


def load_spec(path: str | Path) -> SpecDocument:
    path = Path(path)
    logger.debug(f"Reading {path}")
    return parse_spec(path.read_text(encoding="utf-8"))
