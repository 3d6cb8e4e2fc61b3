"""HTTP endpoints."""

import json

import pytest
from fastapi.testclient import TestClient

from web_app import app


@pytest.fixture
def client():
    return TestClient(app)


@pytest.fixture
def ex34_body(fixtures_dir):
    return json.loads((fixtures_dir / "ex34_pencil.json").read_text(encoding="utf-8"))


@pytest.fixture
def ex36_body(fixtures_dir):
    return json.loads((fixtures_dir / "ex36_pencil.json").read_text(encoding="utf-8"))


def test_status(client):
    response = client.get("/api/status")
    assert response.status_code == 200
    assert set(response.json()["field_modes"]) == {"real", "closed"}


def test_invariants(client, ex36_body):
    response = client.post("/api/invariants", json=ex36_body)
    assert response.status_code == 200
    assert response.json()["minimal_indices"] == [2]


@pytest.mark.parametrize("field, expected", [("real", 8), ("closed", 4)])
def test_aid(client, ex34_body, field, expected):
    response = client.post(f"/api/aid?field={field}", json=ex34_body)
    assert response.status_code == 200
    assert response.json()["dim_aid"] == expected


def test_formula(client):
    body = {"n": 4, "pairs": [{"type": "quad", "modulus": ["1", "0", "1"], "exp": 1}], "minimal_indices": []}
    response = client.post("/api/formula?field=real", json=body)
    assert response.json() == {"mode": "real", "dim_inn": 4, "dim_aid": 8}


def test_canonical_and_congruent(client, ex34_body):
    invariants = client.post("/api/invariants", json=ex34_body).json()
    canonical = client.post("/api/canonical", json=invariants).json()
    response = client.post("/api/congruent", json={"first": canonical, "second": ex34_body})
    assert response.json()["congruent"] is True


def test_randomize(client, ex36_body):
    response = client.post("/api/randomize?seed=3", json=ex36_body)
    assert response.status_code == 200
    assert response.json()["n"] == 5


def test_check(client, ex36_body):
    response = client.post("/api/check?field=closed&seeds=1", json=ex36_body)
    data = response.json()
    assert data["agree"] is True
    assert len(data["results"]) == 2
    assert data["results"][0]["solver"] == {"dim_inn": 5, "dim_aid": 6}


class TestErrors:
    def test_non_skew_is_422(self, client):
        body = {"n": 2, "A": [[0, 1], [1, 0]], "B": [[0, 0], [0, 0]]}
        response = client.post("/api/invariants", json=body)
        assert response.status_code == 422
        assert "skew" in response.json()["error"]

    def test_malformed_is_400(self, client):
        body = {"n": 3, "A": [[0, 1], [-1, 0]], "B": [[0, 1], [-1, 0]]}
        assert client.post("/api/invariants", json=body).status_code == 400

    def test_genus_violation_is_422(self, client, ex34_body):
        body = dict(ex34_body, B=ex34_body["A"])
        assert client.post("/api/aid", json=body).status_code == 422

    def test_unknown_mode_is_400(self, client, ex34_body):
        assert client.post("/api/aid?field=complex", json=ex34_body).status_code == 400
