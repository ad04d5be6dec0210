import pytest
from fastapi.testclient import TestClient

from src.main import app

from conftest import ECHO_SPEC, GRANT_SPEC


@pytest.fixture
def client():
    return TestClient(app)


def test_root(client):
    response = client.get("/")
    assert response.status_code == 200
    assert "version" in response.json()


def test_health(client):
    response = client.get("/health")
    assert response.status_code == 200
    assert response.json()["status"] == "healthy"


def test_synthesis_realizable(client):
    response = client.post("/api/v1/synthesis", json={"spec": GRANT_SPEC})
    assert response.status_code == 200
    body = response.json()
    assert body["verdict"] == "REALIZABLE"
    assert body["realizable"] is True
    assert body["strategy_aiger"] is None


def test_synthesis_with_dumps_and_circuits(client):
    payload = {"spec": ECHO_SPEC, "include_dumps": True, "include_aiger": True, "include_strategy": True}
    body = client.post("/api/v1/synthesis", json=payload).json()
    assert body["canonical"] == "(X X G (! Y Y u1 | c1) & X G (! Y u2 | c2))"
    assert body["automaton"].startswith("-- inputs: u1 u2 c1 c2")
    assert body["monitor_aiger"].startswith("aag ")
    assert body["strategy_aiger"].startswith("aag ")


def test_synthesis_oracle_check(client):
    payload = {"spec": GRANT_SPEC, "oracle_check": [2, 1]}
    body = client.post("/api/v1/synthesis", json=payload).json()
    assert body["oracle"]["mismatches"] == 0
    assert body["oracle"]["words"] > 0


def test_synthesis_oracle_mismatch(client, monkeypatch):
    monkeypatch.setattr("src.services.synthesis_service.accepts", lambda automaton, word: False)
    payload = {"spec": GRANT_SPEC, "oracle_check": [1, 1]}
    response = client.post("/api/v1/synthesis", json=payload)
    assert response.status_code == 500
    assert "Oracle mismatch" in response.json()["detail"]


def test_synthesis_unrealizable(client):
    response = client.post("/api/v1/synthesis", json={"spec": ".inputs u\n.outputs\nG(u)\n"})
    assert response.status_code == 200
    assert response.json()["verdict"] == "UNREALIZABLE"


def test_strategy_of_unrealizable_spec_conflicts(client):
    payload = {"spec": ".inputs u\n.outputs\nG(u)\n", "include_strategy": True}
    assert client.post("/api/v1/synthesis", json=payload).status_code == 409


@pytest.mark.parametrize("spec", [
    ".inputs r\n.outputs g\nG(r ->\n",
    ".inputs r\n.outputs g\nF g\n",
    "G(r -> g)\n",
])
def test_invalid_specification(client, spec):
    response = client.post("/api/v1/synthesis", json={"spec": spec})
    assert response.status_code == 400
    assert response.json()["detail"]


def test_state_budget_exceeded(client):
    payload = {"spec": ECHO_SPEC, "backend": "explicit", "state_budget": 4}
    assert client.post("/api/v1/synthesis", json=payload).status_code == 413


@pytest.mark.parametrize("payload", [
    {"spec": GRANT_SPEC, "backend": "quantum"},
    {"spec": GRANT_SPEC, "oracle_check": [1]},
    {"spec": GRANT_SPEC, "state_budget": 0},
    {"spec": ""},
])
def test_request_validation(client, payload):
    assert client.post("/api/v1/synthesis", json=payload).status_code == 422


def test_benchmark(client):
    response = client.get("/api/v1/benchmarks/4/2")
    assert response.status_code == 200
    body = response.json()
    assert body["formula"] == "c & X(u1 | u2) & XX(u2 | u3)"
    assert body["expected_realizable"] is False


def test_unknown_benchmark_category(client):
    assert client.get("/api/v1/benchmarks/9/1").status_code == 404


def test_benchmark_size_must_be_positive(client):
    assert client.get("/api/v1/benchmarks/1/0").status_code == 422
