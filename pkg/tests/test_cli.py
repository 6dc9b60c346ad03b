import json

import pytest

from qhyper.cli import main
from qhyper.constants import degree_one_row
from qhyper.exact import format_rational
from qhyper.verify import SUITES, Check


def run(capsys, argv, env=None, monkeypatch=None, cache_dir=None):
    full = []
    if cache_dir is not None:
        full += ["--cache-dir", str(cache_dir)]
    full += argv
    code = main(full)
    captured = capsys.readouterr()
    return code, captured.out, captured.err


class TestVsc:
    def test_degree_one_csv(self, capsys, tmp_path):
        code, out, _ = run(capsys, ["vsc", "--N", "8", "--k", "9", "--dmax", "1",
                                    "--format", "csv"], cache_dir=tmp_path)
        assert code == 0
        lines = out.strip().splitlines()
        assert lines[0] == "N,k,d,m,value"
        values = [line.split(",")[4] for line in lines[1:]]
        assert values == [format_rational(x) for x in degree_one_row(9)]

    def test_json_uses_cache_schema(self, capsys, tmp_path):
        code, out, _ = run(capsys, ["vsc", "--N", "8", "--k", "9", "--dmax", "1",
                                    "--format", "json"], cache_dir=tmp_path)
        assert code == 0
        payload = json.loads(out)
        assert payload["schema"] == 1 and payload["N"] == 8 and payload["k"] == 9
        assert payload["entries"][0] == {"d": 1, "m": 0, "value": "362880"}

    def test_dmax_zero_empty_table(self, capsys, tmp_path):
        code, out, _ = run(capsys, ["vsc", "--N", "8", "--k", "9", "--dmax", "0",
                                    "--format", "csv"], cache_dir=tmp_path)
        assert code == 0
        assert out.strip() == "N,k,d,m,value"

    def test_bad_regime_exits_2(self, capsys, tmp_path):
        code, _, err = run(capsys, ["vsc", "--N", "8", "--k", "7", "--dmax", "1"],
                           cache_dir=tmp_path)
        assert code == 2
        assert "k must exceed N" in err

    def test_cap_enforced(self, capsys, tmp_path):
        code, _, err = run(capsys, ["vsc", "--N", "8", "--k", "9", "--dmax", "9"],
                           cache_dir=tmp_path)
        assert code == 2
        code, _, _ = run(capsys, ["vsc", "--N", "8", "--k", "9", "--dmax", "9",
                                  "--cap", "9", "--format", "csv"], cache_dir=tmp_path)
        assert code == 0

    def test_warm_cache_byte_identical(self, capsys, tmp_path):
        argv = ["vsc", "--N", "8", "--k", "9", "--dmax", "2", "--format", "json"]
        code1, out1, _ = run(capsys, argv, cache_dir=tmp_path)
        cache_file = tmp_path / "vsc_N8_k9.json"
        first = cache_file.read_bytes()
        code2, out2, _ = run(capsys, argv, cache_dir=tmp_path)
        assert (code1, code2) == (0, 0)
        assert out1 == out2
        assert cache_file.read_bytes() == first

    def test_cache_env_variable(self, capsys, tmp_path, monkeypatch):
        monkeypatch.setenv("GW_CACHE_DIR", str(tmp_path / "envcache"))
        code = main(["vsc", "--N", "8", "--k", "9", "--dmax", "1", "--format", "csv"])
        capsys.readouterr()
        assert code == 0
        assert (tmp_path / "envcache" / "vsc_N8_k9.json").exists()

    def test_corrupt_cache_exits_3(self, capsys, tmp_path):
        bad = tmp_path / "vsc_N8_k9.json"
        bad.write_text("{not json")
        code, _, err = run(capsys, ["vsc", "--N", "8", "--k", "9", "--dmax", "1"],
                           cache_dir=tmp_path)
        assert code == 3
        assert "cache error" in err

    def test_unwritable_cache_exits_3(self, capsys, tmp_path):
        blocker = tmp_path / "blocker"
        blocker.write_text("")
        code, _, err = run(capsys, ["vsc", "--N", "8", "--k", "9", "--dmax", "1"],
                           cache_dir=blocker / "sub")
        assert code == 3


class TestReal:
    def test_degree_one_value(self, capsys, tmp_path, ws1012):
        code, out, _ = run(capsys, ["real", "--N", "10", "--k", "12", "--d", "1",
                                    "--n", "5", "--format", "json"], cache_dir=tmp_path)
        assert code == 0
        rec = json.loads(out)["L"][0]
        table = ws1012["table"]
        assert rec["value"] == format_rational(table.value(1, 5) - table.value(1, 3))

    def test_out_of_window_annotated_zero(self, capsys, tmp_path):
        code, out, _ = run(capsys, ["real", "--N", "10", "--k", "12", "--d", "2",
                                    "--n", "5", "--format", "json"], cache_dir=tmp_path)
        assert code == 0
        rec = json.loads(out)["L"][0]
        assert rec["value"] == "0"
        assert "outside window" in rec["note"]

    def test_default_targets_cover_window(self, capsys, tmp_path):
        code, out, _ = run(capsys, ["real", "--N", "10", "--k", "12", "--d", "1",
                                    "--format", "csv"], cache_dir=tmp_path)
        assert code == 0
        rows = out.strip().splitlines()[1:]
        assert [int(r.split(",")[3]) for r in rows] == [4, 5, 6, 7]

    def test_bad_regime_exits_2(self, capsys, tmp_path):
        code, _, _ = run(capsys, ["real", "--N", "12", "--k", "12", "--d", "1"],
                         cache_dir=tmp_path)
        assert code == 2


class TestVerify:
    def test_passing_suite_exits_0(self, capsys, tmp_path):
        code, out, _ = run(capsys, ["verify", "hi-vanishing"], cache_dir=tmp_path)
        assert code == 0
        assert "suite hi-vanishing: pass" in out

    def test_failing_suite_exits_1(self, capsys, tmp_path, monkeypatch):
        monkeypatch.setitem(SUITES, "hi-vanishing",
                            lambda: [Check("forced failure", False, "synthetic")])
        code, out, _ = run(capsys, ["verify", "hi-vanishing"], cache_dir=tmp_path)
        assert code == 1
        assert "FAIL" in out
