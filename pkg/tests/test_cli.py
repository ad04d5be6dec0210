import json

import pytest

from src.cli import (
    EXIT_INVALID_SPEC, EXIT_ORACLE_MISMATCH, EXIT_REALIZABLE, EXIT_RESOURCE_LIMIT, EXIT_UNREALIZABLE, main
)
from src.core.aiger import read_circuit

from conftest import ECHO_SPEC, GRANT_SPEC


@pytest.fixture
def spec_path(tmp_path):
    def write(text, name="spec.ltl"):
        path = tmp_path / name
        path.write_text(text)
        return str(path)
    return write


def test_realizable_spec(spec_path, capsys):
    assert main(["synth", spec_path(GRANT_SPEC)]) == EXIT_REALIZABLE
    assert capsys.readouterr().out.splitlines()[0] == "REALIZABLE"


def test_unrealizable_spec(spec_path, capsys):
    assert main(["synth", spec_path(".inputs u\n.outputs\nG(u)\n")]) == EXIT_UNREALIZABLE
    assert capsys.readouterr().out.splitlines()[0] == "UNREALIZABLE"


@pytest.mark.parametrize("text", [
    ".inputs r\n.outputs g\nG(r -> \n",
    ".inputs r\n.outputs g\nF g\n",
    ".inputs r\n.outputs g\nG(r -> h)\n",
    "G(r -> g)\n",
    ".inputs r\n.outputs r\nG r\n",
    ".inputs r\n.outputs g\n.latches x\nG g\n",
])
def test_invalid_specs(spec_path, capsys, text):
    assert main(["synth", spec_path(text)]) == EXIT_INVALID_SPEC
    assert "error:" in capsys.readouterr().err


def test_missing_spec_file(tmp_path):
    assert main(["synth", str(tmp_path / "absent.ltl")]) == EXIT_INVALID_SPEC


@pytest.mark.parametrize("backend", [[], ["--backend", "explicit"], ["--backend", "symbolic"]])
def test_state_budget_exceeded(spec_path, backend):
    args = ["synth", spec_path(ECHO_SPEC), "--state-budget", "4"] + backend
    assert main(args) == EXIT_RESOURCE_LIMIT


def test_symbolic_backend(spec_path):
    assert main(["synth", spec_path(ECHO_SPEC), "--backend", "symbolic"]) == EXIT_REALIZABLE


def test_malformed_oracle_check_argument(spec_path):
    with pytest.raises(SystemExit):
        main(["synth", spec_path(GRANT_SPEC), "--oracle-check", "3"])


def test_oracle_check_agrees(spec_path):
    assert main(["synth", spec_path(GRANT_SPEC), "--oracle-check", "2,1"]) == EXIT_REALIZABLE


def test_oracle_mismatch_stops_before_solving(spec_path, capsys, monkeypatch):
    def solve_not_reached(*args, **kwargs):
        raise AssertionError("solved despite an oracle mismatch")

    monkeypatch.setattr("src.services.synthesis_service.accepts", lambda automaton, word: False)
    monkeypatch.setattr("src.services.synthesis_service.solve", solve_not_reached)
    assert main(["synth", spec_path(GRANT_SPEC), "--oracle-check", "1,1"]) == EXIT_ORACLE_MISMATCH
    captured = capsys.readouterr()
    assert captured.out == ""
    assert "Oracle mismatch" in captured.err


def _dumped(output, header):
    lines = output.splitlines()
    return lines[lines.index(header) + 1]


@pytest.mark.parametrize("flag, header, stage", [
    ("--dump-pastified", "# pastified", "pastified"),
    ("--dump-canonical", "# canonical", "canonical"),
])
def test_dumps_replay_to_the_same_verdict(spec_path, capsys, flag, header, stage):
    assert main(["synth", spec_path(ECHO_SPEC), flag]) == EXIT_REALIZABLE
    formula = _dumped(capsys.readouterr().out, header)
    replay = spec_path(f".inputs u1 u2\n.outputs c1 c2\n{formula}\n", name="replay.ltl")
    assert main(["synth", replay, "--from-stage", stage]) == EXIT_REALIZABLE


def test_from_stage_rejects_future_formulas(spec_path):
    path = spec_path(".inputs r\n.outputs g\nG(r -> X g)\n")
    assert main(["synth", path, "--from-stage", "pastified"]) == EXIT_INVALID_SPEC


def test_dump_automaton(spec_path, capsys):
    main(["synth", spec_path(GRANT_SPEC), "--dump-automaton"])
    output = capsys.readouterr().out
    assert "# automaton" in output
    assert "safe := " in output


def test_circuits_are_written(spec_path, tmp_path):
    monitor, strategy = tmp_path / "monitor.aag", tmp_path / "strategy.aag"
    args = ["synth", spec_path(ECHO_SPEC), "--aiger", str(monitor), "--strategy", str(strategy)]
    assert main(args) == EXIT_REALIZABLE
    monitor_circuit = read_circuit(monitor.read_text())
    assert monitor_circuit.outputs == {"bad"}
    assert monitor_circuit.inputs == {"u1", "u2", "c1", "c2"}
    strategy_circuit = read_circuit(strategy.read_text())
    assert strategy_circuit.outputs == {"c1", "c2"}
    assert strategy_circuit.inputs == {"u1", "u2"}


def test_no_strategy_for_unrealizable_spec(spec_path, tmp_path):
    strategy = tmp_path / "strategy.aag"
    args = ["synth", spec_path(".inputs u\n.outputs\nG(u)\n"), "--strategy", str(strategy)]
    assert main(args) == EXIT_UNREALIZABLE
    assert not strategy.exists()


def test_json_report(spec_path, capsys):
    assert main(["synth", spec_path(GRANT_SPEC), "--json"]) == EXIT_REALIZABLE
    output = capsys.readouterr().out
    report = json.loads(output.split("\n", 1)[1])
    assert report["verdict"] == "REALIZABLE"
    assert report["sizes"]["latches"] > 0
    assert report["iterations"] >= 1


def test_gen_prints_spec(capsys):
    assert main(["gen", "4", "2"]) == 0
    assert capsys.readouterr().out == ".inputs u1 u2 u3\n.outputs c\nc & X(u1 | u2) & XX(u2 | u3)\n"


def test_gen_writes_file(tmp_path):
    path = tmp_path / "bench.ltl"
    assert main(["gen", "3", "2", "-o", str(path)]) == 0
    assert path.read_text().splitlines()[-1] == "G(c) & (G(u1) | G(u2))"


def test_gen_rejects_empty_instances():
    assert main(["gen", "1", "0"]) == EXIT_INVALID_SPEC


def test_generated_benchmark_round_trip(tmp_path):
    path = tmp_path / "bench.ltl"
    main(["gen", "2", "2", "-o", str(path)])
    assert main(["synth", str(path)]) == EXIT_REALIZABLE
