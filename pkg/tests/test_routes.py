import pytest
from fastapi.testclient import TestClient

from flatcomp.main import app


@pytest.fixture
def client():
    return TestClient(app)


def test_ping(client):
    response = client.get("/ping")
    assert response.status_code == 200
    assert response.json()["message"] == "pong from flatcomp"


def test_root_lists_endpoints(client):
    body = client.get("/").json()
    assert body["status"] == "operational"
    assert "completions" in body["endpoints"]


def test_validate_document(client, t3_text):
    body = client.post("/spaces/validate", json={"text": t3_text}).json()
    assert body["valid"] is True
    assert body["spaces"][0]["points"] == ["a", "b", "c"]
    assert body["modules"] == ["M", "N", "R"]


def test_validate_broken_space(client, broken_text):
    response = client.post("/spaces/validate", json={"text": broken_text})
    assert response.status_code == 200
    body = response.json()
    assert body["valid"] is False
    assert body["spaces"][0]["violations"] == ["triangle (a,b,c): 5 > 1+1"]


def test_validate_parse_error(client):
    response = client.post("/spaces/validate", json={"text": "points a b\n"})
    assert response.status_code == 400
    assert response.json()["detail"].startswith("line 1: ")


def test_validate_blank_text(client):
    assert client.post("/spaces/validate", json={"text": "   "}).status_code == 422


def test_completion(client, t3_text):
    response = client.post("/completions", json={"text": t3_text, "notion": "p1"})
    assert response.status_code == 200
    body = response.json()
    assert body["points"] == 7
    assert body["embedding"] == {"a": "{a}", "b": "{b}", "c": "{c}"}
    assert body["table"][3] == {"point": "{a,b}", "generator": ["a", "b"], "values": ["0", "0", "4"]}


def test_completion_errors(client, t3_text):
    assert client.post("/completions", json={"text": t3_text, "notion": "dmn"}).status_code == 400
    assert client.post("/completions", json={"text": t3_text, "notion": "p9"}).status_code == 422
    assert client.post("/completions", json={"text": t3_text, "notion": "p1", "space": "X"}).status_code == 400


def test_flatness(client, t3_text):
    body = client.post("/flatness", json={"text": t3_text, "module": "M"}).json()
    assert body["agree"] is True
    verdicts = {r["notion"]: r["closed_form"] for r in body["results"]}
    assert verdicts == {"p1": True, "p2": False, "p0": False}


def test_flatness_rejects_right_module(client, t3_text):
    response = client.post("/flatness", json={"text": t3_text, "module": "R"})
    assert response.status_code == 400
    assert "not a left module" in response.json()["detail"]


def test_flatness_rejects_empty_notion(client, t3_text):
    assert client.post("/flatness", json={"text": t3_text, "module": "M", "notion": "empty"}).status_code == 422


def test_distance(client, t3_text):
    body = client.post("/distance", json={"text": t3_text, "first": "{a,b}", "second": "{b}"}).json()
    assert body["distance"] == "1"
    reverse = client.post("/distance", json={"text": t3_text, "first": "N", "second": "F"}).json()
    assert reverse["distance"] == "0"


def test_verify_and_runs(client, ledger):
    response = client.post("/verify", json={"max_points": 1, "suites": ["fac_r"], "mutations": ["hom"]})
    assert response.status_code == 200
    body = response.json()
    assert body["exit_status"] == 1
    assert body["ok"] is False
    assert body["parameters"]["mutations"] == "hom"

    runs = client.get("/verify/runs").json()
    assert len(runs) == 1
    assert runs[0]["id"] == body["id"]
    assert client.get("/verify/runs", params={"failed_only": True}).json()[0]["exit_status"] == 1


def test_verify_rejects_bad_parameters(client, ledger):
    assert client.post("/verify", json={"max_points": 9}).status_code == 400
    assert client.post("/verify", json={"max_points": 1, "suites": ["nope"]}).status_code == 400
    assert client.post("/verify", json={"budget": 0}).status_code == 422


def test_health(client, ledger):
    body = client.get("/health").json()
    assert body["status"] == "healthy"
    assert body["database"]["runs"] == 0
    assert body["database"]["path"] == str(ledger)
