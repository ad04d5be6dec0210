import random

import pytest

from src.core.aiger import AigBuilder, AigerError, export_monitor, export_strategy, read_circuit
from src.core.automaton import is_safe, run, step
from src.core.game import UnrealizableError, solve


DELAYED_ECHO = "G(u1 -> X X c1) & G(u2 -> X c2)"
BACKENDS = ["explicit", "symbolic"]


def random_inputs(names, length, rng):
    return [{name: rng.random() < 0.5 for name in names} for _ in range(length)]


def test_monitor_of_controllable_invariant(automaton_for):
    text = export_monitor(automaton_for("G c", outputs=["c"]))
    assert text.splitlines()[0] == "aag 3 1 1 1 1"
    circuit = read_circuit(text)
    assert circuit.inputs == {"c"}
    assert circuit.latches == {"error_0"}
    assert circuit.outputs == {"bad"}


def test_monitor_of_constant_safe_automaton(automaton_for):
    circuit = read_circuit(export_monitor(automaton_for("G true")))
    assert circuit.latches == set()
    assert [outputs for outputs, _ in circuit.simulate([{}, {}])] == [{"bad": False}, {"bad": False}]


@pytest.mark.parametrize("text, inputs, outputs", [
    (DELAYED_ECHO, ["u1", "u2"], ["c1", "c2"]),
    ("G(r -> F[0,2] g)", ["r"], ["g"]),
    ("q R X p", ["q"], ["p"]),
])
def test_monitor_simulation_matches_automaton(automaton_for, text, inputs, outputs):
    automaton = automaton_for(text, inputs=inputs, outputs=outputs)
    circuit = read_circuit(export_monitor(automaton))
    rng = random.Random(3)
    for _ in range(20):
        sequence = random_inputs(automaton.inputs, 8, rng)
        states = run(automaton, sequence)
        for t, (outputs, latches) in enumerate(circuit.simulate(sequence)):
            assert outputs["bad"] == (not is_safe(automaton, states[t]))
            assert latches == states[t + 1]


@pytest.mark.parametrize("backend", BACKENDS)
def test_strategy_of_controllable_invariant_is_constant_true(automaton_for, backend):
    automaton = automaton_for("G c", outputs=["c"])
    circuit = read_circuit(export_strategy(solve(automaton, backend=backend), automaton))
    assert circuit.inputs == set()
    assert circuit.outputs == {"c"}
    assert all(outputs == {"c": True} for outputs, _ in circuit.simulate([{}] * 4))


@pytest.mark.parametrize("backend", BACKENDS)
@pytest.mark.parametrize("text, inputs, outputs", [
    (DELAYED_ECHO, ["u1", "u2"], ["c1", "c2"]),
    ("G(r -> F[0,2] g)", ["r"], ["g"]),
])
def test_strategy_circuit_agrees_with_the_strategy(automaton_for, backend, text, inputs, outputs):
    automaton = automaton_for(text, inputs=inputs, outputs=outputs)
    result = solve(automaton, backend=backend)
    circuit = read_circuit(export_strategy(result, automaton))
    assert circuit.inputs == set(automaton.uncontrollable)
    assert circuit.outputs == set(automaton.controllable)
    rng = random.Random(5)
    for _ in range(100):
        sequence = random_inputs(automaton.uncontrollable, 10, rng)
        state = automaton.init
        for u, (chosen, latches) in zip(sequence, circuit.simulate(sequence)):
            assert chosen == result.strategy.choose(state, u)
            state = step(automaton, state, {**u, **chosen})
            assert latches == state
            assert is_safe(automaton, state)


def test_strategy_export_rejects_unrealizable_games(automaton_for):
    automaton = automaton_for("G u", inputs=["u"])
    with pytest.raises(UnrealizableError):
        export_strategy(solve(automaton), automaton)


def test_builder_folds_and_hashes_gates():
    builder = AigBuilder()
    a, c = builder.add_input("a"), builder.add_input("c")
    assert builder.and_gate(a, 1) == a
    assert builder.and_gate(a, a ^ 1) == 0
    gate = builder.and_gate(a, c)
    assert builder.and_gate(c, a) == gate
    assert len(builder.ands) == 1
    with pytest.raises(AigerError):
        builder.add_input("late")


@pytest.mark.parametrize("text", [
    "aig 0 0 0 0 0\n",
    "aag 1 1 0 0 0\nx\n",
    "not an aiger file\n",
])
def test_malformed_circuits_are_rejected(text):
    with pytest.raises(AigerError):
        read_circuit(text)
