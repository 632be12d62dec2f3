import json

import pytest

from spinorcalc.cli import parse_bundle_expr, run, verify_suite


def invoke(capsys, *argv):
    code = run(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


class TestParseExport:
    def test_tree_shapes(self):
        assert parse_bundle_expr("dual(U)*U(-1)") == (
            "tensor", ("dual", ("atom", "U")), ("twist", ("atom", "U"), -1))
        assert parse_bundle_expr("O(-8)") == ("twist", ("atom", "O"), -8)


class TestBBWCommand:
    def test_table_output(self, capsys):
        code, out, _ = invoke(capsys, "bbw", "--bundle", "O(1)")
        assert code == 0
        assert out.strip() == "{0: 16}"

    def test_weight_input(self, capsys):
        code, out, _ = invoke(capsys, "bbw", "--weight", "1/2,1/2,1/2,1/2,1/2")
        assert code == 0
        assert out.strip() == "{0: 16}"

    def test_json_output(self, capsys):
        code, out, _ = invoke(capsys, "bbw", "--bundle", "dual(U)", "--format", "json")
        assert code == 0
        assert json.loads(out) == {"h": {"0": 10}, "euler": 10}

    def test_syntax_error_exit_2(self, capsys):
        code, _, err = invoke(capsys, "bbw", "--bundle", "Q")
        assert code == 2
        assert "offset 0" in err

    def test_usage_error_exit_2(self, capsys):
        assert invoke(capsys, "bbw")[0] == 2
        assert invoke(capsys, "nonsense")[0] == 2


class TestKoszulCommand:
    def test_vanishing_table(self, capsys):
        code, out, _ = invoke(capsys, "koszul", "--codim", "7", "--bundle", "U")
        assert code == 0
        assert "status: exact" in out and "h: {}" in out

    def test_twist_flag(self, capsys):
        code, out, _ = invoke(capsys, "koszul", "--codim", "7", "--bundle",
                              "dual(U)*U", "--twist", "-1", "--format", "json")
        assert code == 0
        assert json.loads(out) == {"status": "exact", "h": {"3": 1}, "euler": -1}

    def test_codim_error_exit_1(self, capsys):
        code, _, err = invoke(capsys, "koszul", "--codim", "12", "--bundle", "O")
        assert code == 1
        assert "codim" in err

    def test_json_round_trip(self, capsys):
        _, out, _ = invoke(capsys, "koszul", "--codim", "8", "--bundle", "O",
                           "--format", "json")
        assert json.dumps(json.loads(out)) == out.strip()


class TestChernCommand:
    def test_eta2(self, capsys):
        code, out, _ = invoke(capsys, "chern", "--target", "eta2")
        assert code == 0
        assert out.strip() == "eta^2 = 14"

    def test_universal_json(self, capsys):
        code, out, _ = invoke(capsys, "chern", "--target", "E1", "--format", "json")
        assert code == 0
        payload = json.loads(out)
        assert payload["rank"] == 2
        assert payload["c"]["2"] == {"H*pt": "7", "L*1": "5", "eta": "1"}
        assert json.dumps(payload) == out.strip()

    def test_tautological(self, capsys):
        code, out, _ = invoke(capsys, "chern", "--target", "U-plus", "--format", "json")
        assert code == 0
        payload = json.loads(out)
        assert payload["rank"] == 5
        assert payload["ch"] == {"1": "5", "H": "-2", "P": "1"}


class TestFMCommand:
    def test_named_class(self, capsys):
        code, out, _ = invoke(capsys, "fm", "--kernel", "phi1-shriek", "--apply", "O_R")
        assert code == 0
        assert out.strip() == "2*pt (on C)"

    def test_json_class_input(self, capsys):
        code, out, _ = invoke(capsys, "fm", "--kernel", "phi1-shriek",
                              "--apply", '{"L": "2"}', "--format", "json")
        assert code == 0
        assert json.loads(out) == {"model": "C", "class": {"pt": "2"}}

    def test_gram(self, capsys):
        code, out, _ = invoke(capsys, "fm", "--gram", "u,o,phi1", "--format", "json")
        assert code == 0
        payload = json.loads(out)
        assert payload["semiorthogonal"] is True
        assert payload["matrix"][0][0] == "1" and payload["matrix"][1][0] == "0"

    def test_bad_token_exit_1(self, capsys):
        code, _, err = invoke(capsys, "fm", "--gram", "u,bogus")
        assert code == 1
        assert "bogus" in err

    def test_missing_args_exit_1(self, capsys):
        assert invoke(capsys, "fm", "--kernel", "phi1")[0] == 1


class TestVerifyCommand:
    def test_all_passes(self, capsys):
        code, out, _ = invoke(capsys, "verify", "--suite", "all")
        assert code == 0
        assert "FAIL" not in out

    def test_suite_union(self):
        union = []
        for name in ("bbw", "koszul", "cherns", "sod", "conics"):
            union.extend(c.name for c in verify_suite(name).checks)
        assert union == [c.name for c in verify_suite("all").checks]

    def test_named_suite_json(self, capsys):
        code, out, _ = invoke(capsys, "verify", "--suite", "conics", "--format", "json")
        assert code == 0
        payload = json.loads(out)
        assert payload["pass"] is True
        assert any(c["name"] == "conic-right-transform" for c in payload["checks"])
