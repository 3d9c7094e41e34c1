import json

import pytest

from exptree.cli import main, parse_address, parse_itinerary
from exptree.errors import ParseError
from exptree.partition import Plain, PreSingular
from exptree.sequences import canonicalize
from exptree.treebuild import check_tree_invariants, tree_from_json


class TestParsing:
    def test_examples(self):
        assert parse_address("0(1)") == canonicalize([0], [1])
        assert parse_address("0 (0 1)") == canonicalize([0], [0, 1])
        assert parse_address("-2,0(1)") == canonicalize([-2, 0], [1])
        assert parse_address("(1,2)") == canonicalize([], [1, 2])

    def test_canonicalizes(self):
        assert parse_address("1(2,1)") == canonicalize([], [1, 2])

    def test_unbalanced(self):
        with pytest.raises(ParseError):
            parse_address("(1")
        with pytest.raises(ParseError) as exc:
            parse_address("0(1))")
        assert exc.value.offset == 4

    def test_garbage(self):
        for bad in ("", "()", "0", "0(1)x", "0(1)(2)", "(1)2"):
            with pytest.raises(ParseError):
                parse_address(bad)

    def test_itineraries(self):
        assert parse_itinerary("0(1)") == Plain(canonicalize([0], [1]))
        assert parse_itinerary("2,*") == PreSingular((2,))
        assert parse_itinerary("*") == PreSingular(())
        assert parse_itinerary("-1 2 *") == PreSingular((-1, 2))
        with pytest.raises(ParseError):
            parse_itinerary("*,2")


class TestCommands:
    def test_kneading(self, capsys):
        assert main(["kneading", "0(0,1)"]) == 0
        assert capsys.readouterr().out.strip() == "0(0,1)"

    def test_kneading_periodic_base(self, capsys):
        assert main(["kneading", "(1)"]) == 3
        assert capsys.readouterr().out.strip() == "PeriodicBase"

    def test_parse_error_exit(self, capsys):
        assert main(["kneading", "(1"]) == 2
        assert capsys.readouterr().out.strip() == "ParseError"

    def test_itinerary(self, capsys):
        assert main(["itinerary", "--base", "0(1)", "2,3,0(1)"]) == 0
        assert capsys.readouterr().out.strip() == "2,*"

    def test_same_map_exit_codes(self, capsys):
        assert main(["same-map", "0(1)", "0(1)"]) == 0
        assert capsys.readouterr().out.strip() == "true"
        assert main(["same-map", "0(1)", "0,2(1)"]) == 1
        assert capsys.readouterr().out.strip() == "false"

    def test_tree_json(self, capsys):
        assert main(["tree", "0(1)", "--format", "json"]) == 0
        doc = json.loads(capsys.readouterr().out)
        assert len(doc["vertices"]) == 3
        assert doc["kneading"] == "0(1)"
        tree = tree_from_json(json.dumps(doc))
        check_tree_invariants(tree)

    def test_tree_check_flag(self, capsys):
        assert main(["tree", "0(0,1)", "--check"]) == 0
        out = capsys.readouterr()
        assert "check: ok" in out.err
        json.loads(out.out)

    def test_tree_dot(self, capsys):
        assert main(["tree", "0(0,1)", "--format", "dot"]) == 0
        assert capsys.readouterr().out.startswith("digraph")

    def test_entropy_format(self, capsys):
        assert main(["entropy", "0(1)"]) == 0
        out = capsys.readouterr().out.strip()
        assert out == "0.693147181"

    def test_addresses_of(self, capsys):
        assert main(["addresses-of", "--base", "0(0,1)", "(0)"]) == 0
        lines = capsys.readouterr().out.split()
        assert lines == ["(0,0,1)", "(0,1,0)", "(1,0,0)"]

    def test_addresses_of_bound_exceeded_exit_code(self, capsys):
        rc = main(["addresses-of", "--base", "0(0,1)", "(0)", "--m-max", "2"])
        assert rc == 4
        assert capsys.readouterr().out.strip() == "RealizationBoundExceeded"

    def test_addresses_of_presingular_needs_range(self, capsys):
        assert main(["addresses-of", "--base", "0(1)", "*"]) == 3
        assert capsys.readouterr().out.strip() == "EmptyRange"
        assert main(["addresses-of", "--base", "0(1)", "*", "--m-range", "-1", "1"]) == 0
        lines = capsys.readouterr().out.split()
        assert lines == ["-1,0(1)", "0,0(1)", "1,0(1)"]

    def test_separate(self, capsys):
        rc = main(["separate", "--base", "0(0,1)", "0(0,1)", "(0,1)", "(1,0)"])
        assert rc == 0
        out = capsys.readouterr().out
        assert "shape: branched" in out
        assert "gap 1: (0,1,0)" in out
        assert "gap 2: (1,0,0)" in out
        assert "gap 3: (0,0,1)" in out

    def test_triod(self, capsys):
        rc = main(["triod", "--base", "0(0,1)", "*", "0(0,1)", "(0,1)"])
        assert rc == 0
        out = capsys.readouterr().out
        assert "middle: (0)" in out and "shape: branched" in out

    def test_usage_error(self, capsys):
        assert main(["tree"]) == 2
        assert main(["no-such-command"]) == 2

    def test_verify_deterministic(self, capsys):
        args = ["verify", "--count", "4", "--seed", "11"]
        assert main(args) == 0
        first = capsys.readouterr().out
        assert main(args) == 0
        assert capsys.readouterr().out == first
        assert "classification: ok" in first
