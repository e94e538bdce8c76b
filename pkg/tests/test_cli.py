import os
import tempfile

from GenFlag.cli.main import run_command


def lines(text):
    return text.splitlines()


class TestCommandLine:

    def setup_method(self):
        """Setup a scratch directory for saved reports"""
        self.temp_dir = tempfile.mkdtemp()

    def test_projective_report(self):
        assert run_command(["projective", "ZETA.flag"]) == ("projective: false\n", 0)
        assert run_command(["projective", "ASC.flag"]) == ("projective: true\n", 0)

    def test_commensurable_exit_codes(self):
        """Test that a negative answer is a refusal with exit code 2"""
        assert run_command(["commensurable", "GR2.flag", "GR3.flag"]) == ("commensurable: false\n", 2)

        text, code = run_command(["commensurable", "GR2.flag", "GR2-SHIFT.flag"])

        assert code == 0
        assert "commensurable: true" in lines(text)
        assert "level: 3" in lines(text)

    def test_truncate_report(self):
        text, code = run_command(["truncate", "ASC.flag", "--level", "3"])

        assert code == 0
        assert text == "d: 0,1,2,3\nlabels: (0,1),(0,2),(0,3)\nlevel: 3\ns: 3\n"

    def test_embed_commutes(self):
        text, code = run_command(["embed", "ZETA.flag", "--level", "3"])

        assert code == 0
        assert "commutes: true" in lines(text)

    def test_documents_printed_by_commands(self):
        """Test commands whose output is a canonical document"""
        cases = [
            (["dual", "ASC.flag"], "flag ASC\ntail affine mod 1 [0: 0, -1, 0]\n"),
            (["normalize", "GR2-CHAIN.flag"],
             "flag GR2-CHAIN\nwindow 1 -> (0,1)\nwindow 2 -> (0,1)\ntail affine mod 1 [0: 0, 0, 2]\n"),
            (["lift", "GR2-LEVEL3.flag", "GR2.flag"],
             "flag GR2-LEVEL3\nbasis replace 1 = e1 + e3\nwindow 1 -> (0,1)\nwindow 2 -> (0,1)\n"
             "tail affine mod 1 [0: 0, 0, 2]\n"),
        ]

        for argv, expected in cases:
            assert run_command(argv) == (expected, 0)

    def test_big_cell_reports(self):
        text, code = run_command(["big-cell", "GR2-TILT.flag", "GR2.flag"])

        assert code == 0
        assert "in_cell: true" in lines(text)
        assert "level: 3" in lines(text)
        assert "map (0,2): [1, 2] -> [3]: 1 0" in lines(text)
        assert "maps: 1" in lines(text)

    def test_flag_outside_the_big_cell_is_refused(self):
        """Test that span{e2, e3} meets the opposite flag of span{e1, e2}"""
        text, code = run_command(["big-cell", "GR2-SHIFT.flag", "GR2.flag"])

        assert code == 2
        assert "in_cell: false" in lines(text)

        text, code = run_command(["cover", "GR2-SHIFT.flag", "GR2.flag"])

        assert code == 0
        assert "in_cell: true" in lines(text)

    def test_isotropic_commands(self):
        text, code = run_command(["gram-schmidt", "C-ASC.flag", "--level", "2"])

        assert code == 0
        assert "pairs: 2" in lines(text)
        assert "pair 01: e^2 | -e2" in lines(text)

        text, code = run_command(["isotropic-check", "B-ASC.flag"])

        assert code == 0
        assert "ok: true" in lines(text)
        assert "middle_dim: 1" in lines(text)

    def test_picard_commands(self):
        """Test the Picard presentation, restriction and kernel reports"""
        text, _ = run_command(["picard", "GR2.flag"])
        assert "rank: 1" in lines(text)
        assert "relation: diagonal" in lines(text)

        text, _ = run_command(["restrict", "PIC-GR2-01.flag", "--level", "4"])
        assert "coords: -1" in lines(text)

        text, _ = run_command(["kernel-check", "ASC.flag", "--level", "3"])
        assert "kernel: true" in lines(text)

    def test_very_ample_reports(self):
        cases = [("PIC-GR2-01.flag", "very_ample: true"),
                 ("PIC-GR2-11.flag", "very_ample: false"),
                 ("PIC-ASC.flag", "very_ample: true"),
                 ("PIC-C-ASC.flag", "very_ample: true"),
                 ("ZETA.flag", "very_ample: false")]

        for name, expected in cases:
            text, code = run_command(["very-ample", name])
            assert code == 0
            assert expected in lines(text)
        assert "witness: none" in lines(run_command(["very-ample", "ZETA.flag"])[0])

    def test_stabilizer_dimension(self):
        assert run_command(["stabilizer-dim", "GR2.flag", "--level", "4"]) == ("dim: 11\nlevel: 4\n", 0)

    def test_map_element_between_incommensurable_flags_is_refused(self):
        text, code = run_command(["map-element", "GR2.flag", "GR3.flag"])

        assert code == 2
        assert text.startswith("error: ")

    def test_errors_exit_with_code_one(self):
        """Test unknown commands, missing files, wrong arity and kind mismatches"""
        cases = [
            ["frobnicate", "ASC.flag"],
            ["projective", "NO-SUCH-FLAG.flag"],
            ["commensurable", "ASC.flag"],
            ["gram-schmidt", "ASC.flag"],
            ["truncate", "GR3.flag", "--level", "2"],
            ["truncate"],
        ]

        for argv in cases:
            text, code = run_command(argv)
            assert code == 1
            assert text.startswith("error: ")

    def test_paths_are_used_before_the_fixture_corpus(self):
        path = os.path.join(self.temp_dir, "MINE.flag")
        with open(path, "w", encoding="utf-8") as f:
            f.write("flag MINE\ntail affine mod 1 [0: 0, 1, 0]\n")

        assert run_command(["check-maximal", path]) == ("maximal: true\n", 0)

    def test_document_extension_is_optional(self):
        """Test that bare names resolve to .flag files, in place and in the fixture corpus"""
        with open(os.path.join(self.temp_dir, "MINE.flag"), "w", encoding="utf-8") as f:
            f.write("flag MINE\ntail affine mod 1 [0: 0, 1, 0]\n")

        assert run_command(["projective", "ZETA"]) == ("projective: false\n", 0)
        assert run_command(["check-maximal", os.path.join(self.temp_dir, "MINE")]) == ("maximal: true\n", 0)

        text, code = run_command(["projective", os.path.join(self.temp_dir, "ZETA")])
        assert code == 1

    def test_report_is_saved_to_the_output_directory(self):
        text, code = run_command(["projective", "ZETA.flag", "--output_dir", self.temp_dir])

        saved = os.path.join(self.temp_dir, "ZETA.projective.txt")
        assert code == 0
        assert os.path.exists(saved)
        with open(saved, encoding="utf-8") as f:
            assert f.read() == text
