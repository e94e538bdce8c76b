from fractions import Fraction

import pytest

from GenFlag.algebra.exactlin import VectorFS
from GenFlag.algebra.fixtures import asc, dense, grassmannian, zeta
from GenFlag.algebra.flag_checks import dual
from GenFlag.dsl.document import DocumentKind, SpecDocument
from GenFlag.dsl.parser import parse_spec
from GenFlag.dsl.printer import format_vector, print_spec, render_report
from GenFlag.errors import SpecSemanticError, SpecSyntaxError, TypeMismatchError
from GenFlag.varieties.isotropic import FormKind, isotropic_ascending, validate_isotropic_spec

from tests.corpus import FIXTURE_NAMES, fixture_document, fixture_spec


class TestSpecDocuments:

    def test_every_fixture_parses(self):
        """Test that the whole corpus loads and keeps its header name"""
        for name in FIXTURE_NAMES:
            assert fixture_document(name).name == name

    def test_print_then_parse_gives_the_same_document(self):
        for name in FIXTURE_NAMES:
            document = fixture_document(name)
            text = print_spec(document)
            assert parse_spec(text) == document
            assert print_spec(parse_spec(text)) == text

    def test_fixtures_match_the_named_flags(self):
        cases = [
            ("ASC", asc()),
            ("ZETA", zeta()),
            ("DENSE", dense()),
            ("GR1", grassmannian(1)),
            ("GR2", grassmannian(2)),
            ("GR3", grassmannian(3)),
            ("C-ASC", validate_isotropic_spec(isotropic_ascending(FormKind.C))),
        ]

        for name, expected in cases:
            assert fixture_spec(name) == expected

    def test_swapped_basis_keeps_its_determinant(self):
        assert fixture_spec("GR2-SWAP").basis_det == -1

    def test_document_kinds(self):
        cases = [("ASC", DocumentKind.FLAG), ("C-ASC", DocumentKind.ISOTROPIC), ("EVEN-CHAIN", DocumentKind.CHAIN),
                 ("GR2-LEVEL3", DocumentKind.FINITE), ("PIC-GR2-01", DocumentKind.PIC)]

        for name, kind in cases:
            assert fixture_document(name).kind is kind

    def test_spec_of_a_pic_document_is_its_flag(self):
        assert fixture_document("PIC-GR2-01").spec == grassmannian(2)

    def test_spec_of_a_chain_document_raises(self):
        with pytest.raises(TypeMismatchError):
            fixture_document("EVEN-CHAIN").spec

    def test_printed_forms(self):
        """Test the canonical text of flags, isotropic flags and duals"""
        assert print_spec(fixture_document("ASC")) == "flag ASC\ntail affine mod 1 [0: 0, 1, 0]\n"
        assert print_spec(fixture_document("C-ASC")) == "isotropic C-ASC\nform C\ntail affine mod 1 [0: 0, 1, 0]\n"
        assert print_spec(SpecDocument(DocumentKind.FLAG, "ASC", dual(asc()))) == \
            "flag ASC\ntail affine mod 1 [0: 0, -1, 0]\n"

    def test_comments_and_blank_lines_are_ignored(self):
        text = "# header comment\n\nflag ASC   # trailing\n\ntail affine mod 1 [0: 0, 1, 0]\n"

        assert parse_spec(text).spec == asc()

    def test_vector_syntax(self):
        document = parse_spec("finite V\nlevel 3\nstep (0,1) = e1 - 1/2*e3 + 2 e2\nstep (0,2) = e1, e2, e3\n")
        v = VectorFS.of([(1, 1), (2, 2), (3, Fraction(-1, 2))])

        assert document.body.steps[0] == (v,)
        assert format_vector(v) == "e1 + 2*e2 - 1/2*e3"
        assert format_vector(VectorFS.unit(-2) - VectorFS.unit(0)) == "e^2 - e0"

    def test_syntax_error_location(self):
        """Test the reported line, column and expected tokens of a bad tail"""
        with pytest.raises(SpecSyntaxError) as raised:
            parse_spec("flag X\ntail spiral\n")

        assert raised.value.line == 2
        assert raised.value.column == 6
        assert raised.value.expected == ("affine", "dense")

    def test_syntax_errors(self):
        cases = [
            "",
            "frame X\n",
            "flag X\nform C\ntail affine mod 1 [0: 0, 1, 0]\n",
            "flag X\nwindow 1 -> (0,1\ntail affine mod 1 [0: 0, 0, 2]\n",
            "flag X\ntail affine mod 1 [0: 0, 1, 0] extra\n",
            "flag X\ntail affine mod 1 [0: 1/2, 1, 0]\n",
            "flag X\nwindow 1 -> (0,1) $\n",
        ]

        for text in cases:
            with pytest.raises(SpecSyntaxError):
                parse_spec(text)

    def test_semantic_errors(self):
        """Test well formed documents that do not describe a valid object"""
        cases = [
            # no tail
            "flag X\nwindow 1 -> (0,1)\n",
            "flag X\nwindow 1 -> (0,1)\nwindow 1 -> (0,2)\ntail affine mod 1 [0: 0, 0, 2]\n",
            "flag X\ntail affine mod 2 [0: 0, 1, 0]\n",
            "flag X\ntail affine mod 1 [0: 0, 1, 0]\ntail affine mod 1 [0: 0, 2, 0]\n",
            "flag X\ntail affine mod 2 [0: 0, 1, 0] [1: 0, 1, 1]\n",
            "flag X\nbasis replace 1 = e2\ntail affine mod 1 [0: 0, 1, 0]\n",
            "isotropic X\ntail affine mod 1 [0: 0, 1, 0]\n",
            "isotropic X\nform C\nbasis replace 1 = 2*e1\ntail affine mod 1 [0: 0, 1, 0]\n",
            "chain X\nwindow 1 -> (0,1)\nfamily\ntail affine mod 1 [0: 0, 1, 0]\n",
            "chain X\nmember upto 2 {1}\nmember upto 2 {2}\n",
            "finite X\nstep (0,1) = e1\n",
            "pic X\nwindow 1 -> (0,1)\ntail affine mod 1 [0: 0, 0, 2]\nweight (3,0) = 1\n",
        ]

        for text in cases:
            with pytest.raises(SpecSemanticError):
                parse_spec(text)

    def test_report_rendering(self):
        text = render_report({"zeta": [1, 2], "alpha": True, "beta": None, "gamma": 3})

        assert text == "alpha: true\nbeta: none\ngamma: 3\nzeta: 1,2\n"
