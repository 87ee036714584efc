"""
Behavior tests for the khecke command line

🎯 Test Coverage:
- JSON and text output of the insertion commands
- Exit codes for positive, negative and unknown verdicts
- Class, product and coproduct commands
- Generating functions and LR coefficients
- The verify command and its selection options
- Usage and input errors
"""

import orjson
import pytest

from khecke.infrastructure.constants import EXIT_NEGATIVE, EXIT_OK, EXIT_UNKNOWN, EXIT_USAGE
from khecke.presentation.cli import build_parser, render_table, run


@pytest.fixture
def invoke(capsys, monkeypatch):
    """Run the CLI and return (exit code, parsed JSON or text, stderr)."""

    def _invoke(*argv: str):
        code = run(list(argv))
        captured = capsys.readouterr()
        out = captured.out
        if "--format" not in argv and out.strip():
            return code, orjson.loads(out), captured.err
        return code, out, captured.err

    return _invoke


class TestInsertionCommandsBehavior:
    """Test insert, reverse and roundtrip."""

    def test_insert_json(self, invoke):
        """Should print P and Q as JSON."""
        code, payload, _ = invoke("insert", "15133")
        assert code == EXIT_OK
        assert payload["P"] == [[1, 3], [5]]
        assert payload["Q"] == [[[1], [2, 5]], [[3, 4]]]
        assert payload["word"] == [1, 5, 1, 3, 3]

    def test_insert_trace(self, invoke):
        """Should include one step per letter."""
        _, payload, _ = invoke("insert", "15133", "--trace")
        assert [step["alpha"] for step in payload["steps"]] == [1, 1, 1, 0, 0]
        assert payload["steps"][-1]["corner"] == [1, 2]

    def test_insert_text(self, invoke):
        """Should print P and Q as text."""
        code, out, _ = invoke("insert", "15133", "--format", "text")
        assert code == EXIT_OK
        assert out.splitlines()[0] == "P = [[1, 3], [5]]"

    def test_reverse(self, invoke):
        """Should recover the word from inline JSON."""
        _, payload, _ = invoke("reverse", "[[1,3],[5]]", "[[[1],[2,5]],[[3,4]]]")
        assert payload == {"word": [1, 5, 1, 3, 3]}

    def test_reverse_shape_mismatch_is_a_usage_error(self, invoke):
        """Should exit 3 and explain on standard error."""
        code, out, err = invoke("reverse", "[[1]]", "[[[1]],[[2]]]")
        assert code == EXIT_USAGE
        assert out == ""
        assert "different shapes" in err

    def test_roundtrip(self, invoke):
        """Should report a passing roundtrip."""
        code, payload, _ = invoke("roundtrip", "2,1,2")
        assert code == EXIT_OK
        assert payload["pass"] is True

    def test_tableau_from_a_file(self, invoke, tmp_path):
        """Should read tableaux from JSON files."""
        (tmp_path / "p.json").write_text("[[1,3],[5]]")
        (tmp_path / "q.json").write_text("[[[1],[2,5]],[[3,4]]]")
        _, payload, _ = invoke("reverse", str(tmp_path / "p.json"), str(tmp_path / "q.json"))
        assert payload["word"] == [1, 5, 1, 3, 3]


class TestKKnuthCommandsBehavior:
    """Test equiv, class and urt."""

    def test_distinct_words_exit_negative(self, invoke):
        """Should exit 1 with the separating certificate."""
        code, payload, _ = invoke("equiv", "12", "21")
        assert code == EXIT_NEGATIVE
        assert payload["verdict"] == "distinct"
        assert payload["certificate"] == "lis 2 vs 1"

    def test_equivalent_words_print_a_chain(self, invoke):
        """Should exit 0 with the chain in text form."""
        code, out, _ = invoke("equiv", "121", "212", "--format", "text")
        assert code == EXIT_OK
        assert out.strip() == "equivalent: 121 -> 212"

    def test_class_slice(self, invoke):
        """Should list the words of the slice."""
        code, payload, _ = invoke("class", "1", "--max-len", "3")
        assert code == EXIT_OK
        assert payload["words"] == [[1], [1, 1], [1, 1, 1]]
        assert payload["complete"] is True
        assert payload["saturated"] is False

    def test_class_bound_below_the_word_is_unknown(self, invoke):
        """Should exit 2 when the bound cannot hold the word."""
        code, _, err = invoke("class", "12", "--max-len", "1")
        assert code == EXIT_UNKNOWN
        assert "max_len" in err

    def test_urt(self, invoke):
        """Should certify a single row."""
        code, payload, _ = invoke("urt", "[[1,2]]", "--max-len", "6")
        assert code == EXIT_OK
        assert payload["status"] == "urt-within-bound"
        assert payload["certified"] is True

    def test_capped_urt_search_is_unknown(self, invoke, monkeypatch):
        """Should exit 2 when the visited-word cap stops the URT test."""
        monkeypatch.setenv("KHECKE_MAX_VISITED_WORDS", "5")
        code, payload, _ = invoke("urt", "[[1,2,4],[3]]", "--max-len", "8")
        assert code == EXIT_UNKNOWN
        assert payload["status"] == "unknown"


class TestBialgebraCommandsBehavior:
    """Test products and coproducts."""

    def test_product(self, invoke):
        """Should list the three classes of [[1]].[[1]]."""
        _, payload, _ = invoke("product", "1", "1", "--bound", "6")
        assert [cls["representative"] for cls in payload["classes"]] == [[1, 2], [2, 1], [2, 1, 2]]

    def test_coproduct(self, invoke):
        """Should list three terms for a single letter."""
        _, payload, _ = invoke("coproduct", "1", "--bound", "6")
        assert len(payload["terms"]) == 3
        assert {term["multiplicity"] for term in payload["terms"]} == {1}

    def test_urt_product(self, invoke):
        """Should list the tableaux of the URT product."""
        _, payload, _ = invoke("urt-product", "[[1]]", "[[1]]", "--bound", "6")
        assert payload["tableaux"] == [[[1, 2]], [[1], [2]], [[1, 2], [2]]]

    def test_urt_product_refuses_unsettled_targets(self, invoke, monkeypatch):
        """Should exit 1 when a factor fails the URT test."""
        monkeypatch.setenv("KHECKE_MAX_VISITED_WORDS", "5")
        code, _, err = invoke("urt-product", "[[1,2,4],[3]]", "[[1]]", "--bound", "8")
        assert code == EXIT_NEGATIVE
        assert "unique rectification" in err


class TestGeneratingFunctionCommandsBehavior:
    """Test gpoly, expand-product, coproduct-g and phi."""

    def test_gpoly(self, invoke):
        """Should print G1 in two variables."""
        _, payload, _ = invoke("gpoly", "1", "--deg", "3", "--vars", "2")
        assert payload["terms"] == [
            {"exponents": [0, 1], "coefficient": 1},
            {"exponents": [1, 0], "coefficient": 1},
            {"exponents": [1, 1], "coefficient": -1},
        ]

    def test_expand_product(self, invoke):
        """Should give G1^2 = G2 + G11 - G21."""
        _, payload, _ = invoke("expand-product", "1", "1", "--deg", "3")
        assert payload["exact"] is True
        assert {tuple(row["shape"]): row["coefficient"] for row in payload["coefficients"]} == {
            (2,): 1,
            (1, 1): 1,
            (2, 1): -1,
        }

    def test_coproduct_g(self, invoke):
        """Should give three terms for Delta G1."""
        _, payload, _ = invoke("coproduct-g", "1", "--deg", "2")
        assert {(tuple(t["left"]), tuple(t["right"])): t["coefficient"] for t in payload["terms"]} == {
            ((), (1,)): 1,
            ((1,), ()): 1,
            ((1,), (1,)): -1,
        }

    def test_phi(self, invoke):
        """Should agree with J1 and exit 0."""
        code, payload, _ = invoke("phi", "1", "--deg", "3", "--vars", "2")
        assert code == EXIT_OK
        assert payload["consistent"] is True

    def test_window_is_required(self, invoke):
        """Should exit 3 without --deg."""
        code, _, _ = invoke("gpoly", "2,1")
        assert code == EXIT_USAGE


class TestLRCommandsBehavior:
    """Test lr and dual-lr."""

    def test_single_coefficient(self, invoke):
        """Should count three fillings for (4,3,1)/(3,1) against (2,1)."""
        code, payload, _ = invoke("lr", "3,1", "2,1", "--nu", "4,3,1")
        assert code == EXIT_OK
        assert payload["count"] == 3
        assert payload["coefficient"] == -3

    def test_table(self, invoke):
        """Should tabulate G1 G1."""
        _, payload, _ = invoke("lr-table", "1", "1", "--max-extra", "1")
        assert [(row["nu"], row["coefficient"]) for row in payload["table"]] == [
            ([1, 1], 1),
            ([2], 1),
            ([2, 1], -1),
        ]

    def test_minimal_target(self, invoke):
        """Should accept a named URT choice."""
        _, payload, _ = invoke("lr", "1", "1", "--max-extra", "1", "--urt", "minimal")
        assert len(payload["table"]) == 3

    def test_verify_against_the_oracle(self, invoke):
        """Should nest the oracle report and exit 0 on agreement."""
        code, payload, _ = invoke("lr", "1", "1", "--max-extra", "1", "--verify", "--deg", "4")
        assert code == EXIT_OK
        assert payload["oracle"]["agree"] is True

    def test_dual_coefficient(self, invoke):
        """Should count three fillings of (2,1) (+) (2,1) for S_(3,2)."""
        _, payload, _ = invoke("dual-lr", "3,2", "2,1", "2,1")
        assert payload["count"] == 3
        assert payload["coefficient"] == -3

    def test_dual_table(self, invoke):
        """Should tabulate Delta G1 over pairs of shapes."""
        _, payload, _ = invoke("dual-lr-table", "1")
        assert [(row["lam"], row["mu"], row["coefficient"]) for row in payload["table"]] == [
            ([], [1], 1),
            ([1], [], 1),
            ([1], [1], -1),
        ]


class TestVerifyCommandBehavior:
    """Test the named worked examples."""

    def test_selected_checks(self, invoke):
        """Should run only the named checks and pass."""
        code, payload, _ = invoke("verify", "--check", "insert-15133", "--check", "weak-21", "--jobs", "1")
        assert code == EXIT_OK
        assert payload["passed"] is True
        assert [check["name"] for check in payload["checks"]] == ["insert-15133", "weak-21"]

    @pytest.mark.parametrize("flags,include_slow", [((), False), (("--reference-examples",), True)])
    def test_slow_checks_need_the_reference_flag(self, invoke, mocker, flags, include_slow):
        """Should run the quick suite by default and everything with --reference-examples."""
        run_checks = mocker.patch("khecke.presentation.cli.run_checks", return_value=[])

        code, payload, _ = invoke("verify", *flags, "--jobs", "1")

        assert code == EXIT_OK
        assert payload == {"passed": True, "checks": []}
        run_checks.assert_called_once_with(None, include_slow=include_slow, jobs=1)

    def test_paper_examples_spelling(self):
        """Should accept --paper-examples as the same flag."""
        args = build_parser().parse_args(["verify", "--paper-examples"])
        assert args.reference_examples is True

    def test_list(self, invoke):
        """Should list every check with its speed."""
        _, payload, _ = invoke("verify", "--list")
        names = {check["name"]: check["slow"] for check in payload["checks"]}
        assert names["insert-15133"] is False
        assert names["lr-431-oracle"] is True

    def test_unknown_check(self, invoke):
        """Should exit 3 for an unknown check name."""
        code, _, err = invoke("verify", "--check", "no-such-check")
        assert code == EXIT_USAGE
        assert "unknown checks" in err


class TestParserBehavior:
    """Test parsing and helpers."""

    def test_bad_word_is_a_usage_error(self, invoke):
        """Should exit 3 when a word cannot be parsed."""
        code, _, _ = invoke("insert", "1x")
        assert code == EXIT_USAGE

    def test_version(self, invoke):
        """Should exit 0 after printing the version."""
        code, out, _ = invoke("--version", "--format", "text")
        assert code == EXIT_OK
        assert out.startswith("khecke ")

    def test_global_options_after_the_command(self):
        """Should accept --format and --jobs on either side of the command."""
        args = build_parser().parse_args(["insert", "12", "--format", "text", "--jobs", "2"])
        assert args.format == "text"
        assert args.jobs == 2

    def test_render_table(self):
        """Should left-align columns and trim trailing space."""
        assert render_table(["a", "bb"], [(1, 2), (333, "")]) == "a    bb\n1    2\n333"
