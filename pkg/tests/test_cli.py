from __future__ import annotations

import json

import pytest

from catbase import CapacityError, InputError, PointSet
from catbase.cli import (
    EXIT_CAPACITY,
    EXIT_CHECK_FAILED,
    EXIT_INPUT,
    EXIT_OK,
    InputDocument,
    main,
    parse_input,
    serialize_document,
    subset_key,
)
from catbase.doperator import OperatorTable
from catbase.core import SetFamily

SIER_DOC = '{"n":2,"regions":[[1],[0,1]]}'
SIER_WITH_OPERATOR = (
    '{"n":2,"regions":[[1],[0,1]],'
    '"operator":{"[]":[],"[0]":[],"[1]":[0,1],"[0,1]":[0,1]}}'
)
BAD3_DOC = '{"n":3,"regions":[[0,1],[1,2],[0,1,2]]}'
DISC3_DOC = '{"n":3,"regions":[[0],[1],[2],[0,1,2]]}'


def run(capsys, argv, stdin=None, monkeypatch=None):
    if stdin is not None:
        import io
        import sys

        monkeypatch.setattr(sys, "stdin", io.StringIO(stdin))
    code = main(argv)
    out = capsys.readouterr()
    return code, out.out, out.err


class TestParseInput:
    def test_sier(self):
        doc = parse_input(SIER_DOC)
        assert doc.n == 2
        assert [r.bits for r in doc.regions] == [2, 3]
        assert doc.operator is None and doc.topology is None

    def test_embedded_operator_matches_cluster(self):
        from catbase import cluster_operator
        from conftest import make_base, SIER_MASKS

        doc = parse_input(SIER_WITH_OPERATOR)
        assert doc.operator.table == cluster_operator(make_base(2, SIER_MASKS)).table

    def test_out_of_range_element(self):
        with pytest.raises(InputError, match=r"regions\[0\]\[0\].*element 2"):
            parse_input('{"n":2,"regions":[[2]]}')

    def test_unknown_field_rejected(self):
        with pytest.raises(InputError, match="unknown field"):
            parse_input('{"n":2,"regions":[],"extra":1}')

    def test_malformed_json_reports_line(self):
        with pytest.raises(InputError, match="line 2"):
            parse_input('{"n": 2,\n "regions": [[0],]}')

    def test_non_ascending_subset_rejected(self):
        with pytest.raises(InputError, match="ascending"):
            parse_input('{"n":2,"regions":[[1,0]]}')
        with pytest.raises(InputError, match="ascending"):
            parse_input('{"n":2,"regions":[[0,0]]}')

    def test_operator_must_be_total(self):
        with pytest.raises(InputError, match="missing key"):
            parse_input('{"n":2,"regions":[[0]],"operator":{"[]":[]}}')

    def test_operator_unexpected_key(self):
        with pytest.raises(InputError, match="unexpected key"):
            parse_input(
                '{"n":1,"regions":[[0]],"operator":{"[]":[],"[0]":[0],"[1]":[]}}'
            )

    def test_n_cap(self):
        with pytest.raises(CapacityError):
            parse_input('{"n":25,"regions":[]}')

    def test_topology_field(self):
        doc = parse_input('{"n":2,"regions":[[0,1]],"topology":[[],[0,1]]}')
        assert doc.topology.masks() == (0, 3)

    def test_round_trip(self):
        doc = InputDocument(
            n=2,
            regions=(PointSet(2, 2), PointSet(2, 3)),
            operator=OperatorTable(2, (0, 0, 3, 3)),
            topology=SetFamily.from_masks(2, [0, 2, 3]),
        )
        assert parse_input(serialize_document(doc)) == doc

    def test_subset_key(self):
        assert subset_key(0) == "[]"
        assert subset_key(5) == "[0,2]"


class TestValidateCommand:
    def test_valid_base(self, capsys, tmp_path):
        p = tmp_path / "sier.json"
        p.write_text(SIER_DOC)
        code, out, _ = run(capsys, ["validate", str(p)])
        assert code == EXIT_OK
        assert "valid: yes" in out

    def test_invalid_base_reports_witness(self, capsys, tmp_path):
        p = tmp_path / "bad3.json"
        p.write_text(BAD3_DOC)
        code, out, _ = run(capsys, ["validate", str(p), "--json"])
        assert code == EXIT_CHECK_FAILED
        rep = json.loads(out)
        assert rep["valid"] is False
        first = rep["violations"][0]
        assert first["kind"] == "axiom2ii"
        assert first["region"] == [0, 1]
        assert first["family"] == [[1, 2]]

    def test_stdin_input(self, capsys, monkeypatch):
        code, out, _ = run(
            capsys, ["validate"], stdin=SIER_DOC, monkeypatch=monkeypatch
        )
        assert code == EXIT_OK

    def test_malformed_input_exit_2(self, capsys, monkeypatch):
        code, _, err = run(
            capsys, ["validate"], stdin="{nope", monkeypatch=monkeypatch
        )
        assert code == EXIT_INPUT
        assert "line 1" in err

    def test_budget_exit_3(self, capsys, tmp_path):
        p = tmp_path / "bad3.json"
        p.write_text(BAD3_DOC)
        code, _, err = run(capsys, ["validate", str(p), "--budget", "2"])
        assert code == EXIT_CAPACITY

    def test_budget_env_var_default(self, capsys, tmp_path, monkeypatch):
        p = tmp_path / "bad3.json"
        p.write_text(BAD3_DOC)
        monkeypatch.setenv("CATBASE_BUDGET", "2")
        code, _, _ = run(capsys, ["validate", str(p)])
        assert code == EXIT_CAPACITY
        monkeypatch.setenv("CATBASE_BUDGET", "1000")
        code, _, _ = run(capsys, ["validate", str(p)])
        assert code == EXIT_CHECK_FAILED


class TestClassifyCommand:
    def test_sier_json(self, capsys, monkeypatch):
        code, out, _ = run(
            capsys, ["classify", "--json"], stdin=SIER_DOC, monkeypatch=monkeypatch
        )
        assert code == EXIT_OK
        rep = json.loads(out)
        verdicts = {tuple(r["set"]): (r["singular"], r["meager"], r["baire"]) for r in rep["sets"]}
        assert verdicts[()] == (True, True, True)
        assert verdicts[(0,)] == (True, True, True)
        assert verdicts[(1,)] == (False, False, True)
        assert verdicts[(0, 1)] == (False, False, True)

    def test_invalid_base_is_input_error(self, capsys, monkeypatch):
        code, _, err = run(
            capsys, ["classify"], stdin=BAD3_DOC, monkeypatch=monkeypatch
        )
        assert code == EXIT_INPUT
        assert "not a category base" in err


class TestTopologyCommand:
    def test_basic_topology_default(self, capsys, monkeypatch):
        code, out, _ = run(
            capsys, ["topology", "--json"], stdin=SIER_DOC, monkeypatch=monkeypatch
        )
        assert code == EXIT_OK
        rep = json.loads(out)
        assert rep["operator"] == "cluster"
        assert rep["opens"] == [[], [1], [0, 1]]

    def test_embedded_operator_used(self, capsys, monkeypatch):
        code, out, _ = run(
            capsys,
            ["topology", "--json"],
            stdin=SIER_WITH_OPERATOR,
            monkeypatch=monkeypatch,
        )
        assert code == EXIT_OK
        rep = json.loads(out)
        assert rep["operator"] == "embedded"
        assert rep["opens"] == [[], [1], [0, 1]]

    def test_operator_file_bare_map(self, capsys, tmp_path):
        doc = tmp_path / "disc3.json"
        doc.write_text(DISC3_DOC)
        opfile = tmp_path / "op.json"
        table = {subset_key(s): ([] if s == 0 else [0, 1, 2]) for s in range(8)}
        opfile.write_text(json.dumps(table))
        code, out, _ = run(
            capsys, ["topology", str(doc), "--operator", str(opfile), "--json"]
        )
        assert code == EXIT_OK
        rep = json.loads(out)
        assert rep["opens"] == [[], [0, 1, 2]]

    def test_operator_file_in_document_form(self, capsys, tmp_path):
        doc = tmp_path / "sier.json"
        doc.write_text(SIER_DOC)
        opfile = tmp_path / "op.json"
        opfile.write_text(SIER_WITH_OPERATOR)
        code, out, _ = run(
            capsys, ["topology", str(doc), "--operator", str(opfile), "--json"]
        )
        assert code == EXIT_OK
        assert json.loads(out)["opens"] == [[], [1], [0, 1]]

    def test_operator_file_size_mismatch(self, capsys, tmp_path):
        doc = tmp_path / "disc3.json"
        doc.write_text(DISC3_DOC)
        opfile = tmp_path / "op.json"
        opfile.write_text(SIER_WITH_OPERATOR)
        code, _, err = run(
            capsys, ["topology", str(doc), "--operator", str(opfile)]
        )
        assert code == EXIT_INPUT
        assert "n=2" in err

    def test_inadmissible_operator_file(self, capsys, tmp_path):
        doc = tmp_path / "sier.json"
        doc.write_text(SIER_DOC)
        opfile = tmp_path / "op.json"
        # identity: D({0}) must be empty on this base but is not
        table = {subset_key(s): sorted(i for i in range(2) if s >> i & 1) for s in range(4)}
        opfile.write_text(json.dumps(table))
        code, out, _ = run(
            capsys, ["topology", str(doc), "--operator", str(opfile), "--json"]
        )
        assert code == EXIT_CHECK_FAILED
        rep = json.loads(out)
        assert rep["operator_valid"] is False


class TestEquivCommand:
    def test_sier_cluster_exit_0(self, capsys, monkeypatch):
        code, out, _ = run(
            capsys, ["equiv", "--json"], stdin=SIER_DOC, monkeypatch=monkeypatch
        )
        assert code == EXIT_OK
        rep = json.loads(out)
        assert rep["meager_equal"] and rep["baire_equal"]
        assert rep["hypothesis"] and rep["opens_abundant_baire"]

    def test_disc3_constant_full_operator_exit_1(self, capsys, tmp_path):
        doc = tmp_path / "disc3.json"
        doc.write_text(DISC3_DOC)
        opfile = tmp_path / "op.json"
        table = {subset_key(s): ([] if s == 0 else [0, 1, 2]) for s in range(8)}
        opfile.write_text(json.dumps(table))
        code, out, _ = run(
            capsys, ["equiv", str(doc), "--operator", str(opfile), "--json"]
        )
        assert code == EXIT_CHECK_FAILED
        rep = json.loads(out)
        assert rep["hypothesis"] is False
        assert rep["baire_equal"] is False
        assert rep["witnesses"]["baire_base_only"][0] == [0]

    def test_text_mode_stable(self, capsys, monkeypatch):
        code1, out1, _ = run(
            capsys, ["equiv"], stdin=SIER_DOC, monkeypatch=monkeypatch
        )
        code2, out2, _ = run(
            capsys, ["equiv"], stdin=SIER_DOC, monkeypatch=monkeypatch
        )
        assert (code1, out1) == (code2, out2)


class TestSweepCommand:
    def test_n2_exhaustive(self, capsys):
        code, out, _ = run(capsys, ["sweep", "--n", "2", "--exhaustive", "--json"])
        assert code == EXIT_OK
        rep = json.loads(out)
        assert rep["counts"]["candidates"] == 7
        assert rep["counts"]["valid_bases"] == 5
        assert rep["violations"] == []
        assert "timing" not in rep

    def test_timing_flag_adds_volatile_section(self, capsys):
        code, out, _ = run(
            capsys, ["sweep", "--n", "2", "--exhaustive", "--json", "--timing"]
        )
        assert code == EXIT_OK
        rep = json.loads(out)
        assert "timing" in rep and rep["timing"]["workers"] == 1

    def test_byte_identical_across_workers(self, capsys):
        argv = ["sweep", "--n", "3", "--exhaustive", "--operators", "3", "--json"]
        _, out1, _ = run(capsys, argv + ["--workers", "1"])
        _, out2, _ = run(capsys, argv + ["--workers", "2"])
        assert out1 == out2

    def test_random_mode(self, capsys):
        code, out, _ = run(
            capsys,
            ["sweep", "--n", "4", "--random", "--samples", "40", "--seed", "7", "--json"],
        )
        assert code == EXIT_OK
        rep = json.loads(out)
        assert rep["counts"]["candidates"] == 40

    def test_budget_truncation_exit_3(self, capsys):
        code, out, _ = run(
            capsys, ["sweep", "--n", "3", "--exhaustive", "--budget", "3", "--json"]
        )
        assert code == EXIT_CAPACITY
        rep = json.loads(out)
        assert rep["truncated"] is True


class TestWitnessCommand:
    def test_fundamental(self, capsys, monkeypatch):
        code, out, _ = run(
            capsys,
            ["witness", "--set", "[1]", "--kind", "fundamental", "--json"],
            stdin=SIER_DOC,
            monkeypatch=monkeypatch,
        )
        assert code == EXIT_OK
        assert json.loads(out)["region"] == [1]

    def test_fundamental_meager_set(self, capsys, monkeypatch):
        code, out, _ = run(
            capsys,
            ["witness", "--set", "[0]", "--kind", "fundamental", "--json"],
            stdin=SIER_DOC,
            monkeypatch=monkeypatch,
        )
        assert code == EXIT_OK
        assert json.loads(out)["region"] is None

    def test_comeager(self, capsys, monkeypatch):
        code, out, _ = run(
            capsys,
            ["witness", "--set", "[1]", "--kind", "comeager", "--json"],
            stdin=SIER_DOC,
            monkeypatch=monkeypatch,
        )
        assert code == EXIT_OK
        assert json.loads(out)["region"] == [1]

    def test_comeager_precondition_exit_2(self, capsys, monkeypatch):
        code, _, err = run(
            capsys,
            ["witness", "--set", "[0]", "--kind", "comeager"],
            stdin=SIER_DOC,
            monkeypatch=monkeypatch,
        )
        assert code == EXIT_INPUT
        assert "meager" in err

    def test_decomposition_over_basic_topology(self, capsys, monkeypatch):
        code, out, _ = run(
            capsys,
            ["witness", "--set", "[0]", "--kind", "decomposition", "--json"],
            stdin=SIER_DOC,
            monkeypatch=monkeypatch,
        )
        assert code == EXIT_OK
        dec = json.loads(out)["decomposition"]
        assert dec == {"h": [], "q": [], "r": [0], "degenerate": True}

    def test_decomposition_none_on_indiscrete_document_topology(
        self, capsys, monkeypatch
    ):
        doc = '{"n":2,"regions":[[0,1]],"topology":[[],[0,1]]}'
        code, out, _ = run(
            capsys,
            ["witness", "--set", "[0]", "--kind", "decomposition", "--json"],
            stdin=doc,
            monkeypatch=monkeypatch,
        )
        assert code == EXIT_OK
        assert json.loads(out)["decomposition"] is None
