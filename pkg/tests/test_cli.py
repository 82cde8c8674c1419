"""
End-to-end tests for the build, ascend and verify commands
"""

import json

import pytest

from src.commands import CommandManager
from src.main import main
from src.utils import read_json, read_jsonl
from src.vcsp import VcspInstance


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


class TestManager:
    def test_registered_commands(self):
        assert CommandManager().get_command_names() == ["ascend", "build", "verify"]

    def test_missing_command_is_a_usage_error(self):
        with pytest.raises(SystemExit) as info:
            main([])
        assert info.value.code == 2


class TestBuild:
    def test_chain_file(self, capsys, isolated_paths):
        code, _, err = run(
            capsys, "build", "cd-chain", "--n", "2", "--m", "2", "-o", "c.json"
        )
        assert code == 0
        instance = VcspInstance.from_dict(read_json(isolated_paths / "out" / "c.json"))
        assert instance.num_vars == 16
        assert "cd-chain" in err

    def test_gadget_dot(self, capsys):
        code, out, _ = run(
            capsys, "build", "cd-gadget", "--n=3", "--k=2", "--P=1", "--format=dot"
        )
        assert code == 0
        assert "2.1" in out and "--" in out

    def test_ms_scopes_to_stdout(self, capsys):
        code, out, _ = run(capsys, "build", "ms-scopes", "--n", "1")
        assert code == 0
        assert json.loads(out)["num_vars"] == 12

    def test_gadget_needs_index(self, capsys):
        code, _, err = run(capsys, "build", "cd-gadget", "--n", "3")
        assert code == 2
        assert "--k" in err

    def test_parameter_out_of_range(self, capsys):
        code, _, _ = run(capsys, "build", "cd-chain", "--n", "2", "--m", "3")
        assert code == 2


class TestAscend:
    def test_audited_chain(self, capsys):
        code, out, _ = run(
            capsys, "ascend", "--m", "4", "--audit", "--expect-steps", "150"
        )
        assert code == 0
        lines = [json.loads(line) for line in out.splitlines()]
        header, steps = lines[0], lines[1:]
        assert header["steps"] == 150
        assert header["audited_unique"] == "yes"
        assert len(steps) == 150
        assert {step["improving_count"] for step in steps} == {1}

    def test_wrong_expectation_fails(self, capsys):
        code, _, err = run(capsys, "ascend", "--m", "2", "--expect-steps", "31")
        assert code == 1
        assert "expected 31 steps" in err

    def test_instance_file_and_random_rule(self, capsys, isolated_paths):
        run(capsys, "build", "cd-chain", "--m", "3", "-o", "chain.json")
        code, _, _ = run(
            capsys,
            "ascend",
            "--instance",
            str(isolated_paths / "out" / "chain.json"),
            "--rule",
            "random",
            "--seed",
            "9",
            "-o",
            "trace.jsonl",
        )
        assert code == 0
        records = read_jsonl(isolated_paths / "out" / "trace.jsonl")
        assert records[0]["rule"] == "random"
        assert records[0]["seed"] == 9
        assert records[0]["steps"] == 70

    def test_step_budget(self, capsys):
        code, out, _ = run(
            capsys, "ascend", "--m", "2", "--max-steps", "4", "--format", "json"
        )
        assert code == 3
        document = json.loads(out)
        assert document["truncated"] is True
        assert len(document["trace"]) == 4

    def test_text_table(self, capsys):
        code, out, _ = run(capsys, "ascend", "--m", "1", "--format", "text-table")
        assert code == 0
        assert "Step" in out
        assert "1.1" in out

    def test_bad_start(self, capsys):
        code, _, _ = run(capsys, "ascend", "--m", "2", "--start", "0101")
        assert code == 2

    def test_config_file_sets_rule(self, capsys, isolated_paths):
        path = isolated_paths / "run.yaml"
        path.write_text("rule: steepest\n")
        code, out, _ = run(capsys, "--config", str(path), "ascend", "--m", "2")
        assert code == 0
        assert json.loads(out.splitlines()[0])["rule"] == "steepest"


class TestVerify:
    def test_explore(self, capsys):
        code, out, _ = run(
            capsys,
            "verify",
            "explore",
            "--n",
            "2",
            "--m",
            "2",
            "--variant",
            "p10",
            "--start",
            "designated",
            "--expect-steps",
            "30",
        )
        assert code == 0
        document = json.loads(out)
        assert document["ok"] is True
        assert document["path_length"] == 30

    def test_explore_budget(self, capsys):
        code, _, _ = run(capsys, "verify", "explore", "--m", "2", "--node-limit", "3")
        assert code == 3

    @pytest.mark.parametrize(
        "target,cert,expected",
        [
            ("decomposition", "cd-path", 0),
            ("decomposition", "ms-path", 0),
            ("decomposition", "ms-path-printed", 1),
            ("minor", "cd-k4", 0),
            ("minor", "ms-k5", 0),
            ("minor", "ms-k5-printed", 1),
        ],
    )
    def test_bundled_certificates(self, capsys, target, cert, expected):
        code, out, _ = run(capsys, "verify", target, "--cert", cert)
        assert code == expected
        assert json.loads(out)["valid"] is (expected == 0)

    @pytest.mark.parametrize(
        "target,alias,name",
        [
            ("decomposition", "prop3", "cd-path"),
            ("minor", "prop3-k4", "cd-k4"),
            ("decomposition", "prop2", "ms-path"),
            ("minor", "prop2-k5", "ms-k5"),
        ],
    )
    def test_short_certificate_names(self, capsys, target, alias, name):
        code, out, _ = run(capsys, "verify", target, "--cert", alias)
        assert code == 0
        document = json.loads(out)
        assert document["certificate"] == name
        assert document["valid"] is True

    def test_short_name_width(self, capsys):
        _, out, _ = run(capsys, "verify", "decomposition", "--cert", "prop3")
        assert json.loads(out)["width"] == 3

    def test_chain_decomposition(self, capsys):
        code, out, _ = run(
            capsys, "verify", "decomposition", "--cert", "cd-chain-path", "--m", "3"
        )
        assert code == 0
        assert json.loads(out)["width"] == 3

    def test_unknown_certificate(self, capsys):
        code, _, err = run(capsys, "verify", "minor", "--cert", "cd-path")
        assert code == 2
        assert "cd-k4" in err

    def test_certificate_file(self, capsys, isolated_paths):
        run(capsys, "build", "cd-gadget", "--n", "2", "--k", "1", "-o", "g.json")
        bins = {"bins": [["1.1", "1.2"]]}
        (isolated_paths / "pd.json").write_text(json.dumps(bins))
        code, out, _ = run(
            capsys,
            "verify",
            "decomposition",
            "--instance",
            str(isolated_paths / "out" / "g.json"),
            "--cert-file",
            str(isolated_paths / "pd.json"),
        )
        assert code == 1
        assert json.loads(out)["violations"]

    def test_pathwidth(self, capsys):
        code, out, _ = run(capsys, "verify", "pathwidth", "--m", "1")
        assert code == 0
        assert json.loads(out)["pathwidth"] == 3

    def test_pathwidth_limit(self, capsys):
        code, _, _ = run(capsys, "verify", "pathwidth", "--m", "3")
        assert code == 3

    def test_peak_table(self, capsys):
        code, out, _ = run(capsys, "verify", "peaks", "--n", "4", "--k", "2")
        assert code == 1
        document = json.loads(out)
        assert document["all_match"] is False
        assert len(document["rows"]) == 8

    def test_peak_enumeration(self, capsys):
        code, out, _ = run(capsys, "verify", "peaks", "--m", "1")
        assert code == 0
        assert "11111001" in json.loads(out)["peaks"]

    def test_delta_table(self, capsys):
        code, out, _ = run(
            capsys, "verify", "delta-table", "--n", "4", "--m", "4", "--k", "2"
        )
        assert code == 0
        document = json.loads(out)
        assert document["steps"] == 150
        assert document["slots"] == ["1", "2", "3", "4", "5", "6", "A", "B"]
        assert document["rows"][0]["bits"] == "00000000"

    def test_unknown_gadget(self, capsys):
        code, _, _ = run(capsys, "verify", "delta-table", "--m", "2", "--k", "5")
        assert code == 2
