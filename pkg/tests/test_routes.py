"""Tests for the REST routes."""

import time

import pytest
from fastapi.testclient import TestClient

from api import run_manager
from server import app

PATH_FILE = "4 3\n0 1\n1 2\n2 3\n"
DIAMOND_FILE = "4 5\n0 1\n0 2\n0 3\n1 2\n1 3\n"


class TestRoutes:
    """Test the API surface end to end."""

    @pytest.fixture
    def client(self):
        """Create a test client over an empty run store."""
        run_manager.clear_runs()
        yield TestClient(app)
        run_manager.clear_runs()

    def _wait(self, client, run_id, timeout=10.0):
        deadline = time.monotonic() + timeout
        while time.monotonic() < deadline:
            status = client.get(f"/api/runs/{run_id}/status").json()
            if status["status"] in ("completed", "failed"):
                return status
            time.sleep(0.01)
        pytest.fail(f"run {run_id} did not finish")

    def test_solve_round_trip(self, client):
        """Test submit, poll, and fetch results."""
        response = client.post("/api/runs/solve", json={"problem": "stvd", "k": 1, "edge_list": PATH_FILE})
        assert response.status_code == 200
        body = response.json()
        assert body["problem"] == "stvd"
        assert body["status"] in ("pending", "running", "completed")

        status = self._wait(client, body["run_id"])
        assert status["status"] == "completed"
        assert status["k"] == 1

        results = client.get(f"/api/runs/{body['run_id']}/results").json()
        assert results["result"]["decision"] is True
        assert results["result"]["witness"] == [1]
        assert results["result"]["stats"]["rule_counts"] == {"B1": 1, "R2": 1, "R3": 1}

    def test_failed_run_has_no_result(self, client):
        """Test a non-split input."""
        run_id = client.post(
            "/api/runs/solve",
            json={"problem": "sbvd", "k": 1, "edge_list": "4 2\n0 1\n2 3\n"},
        ).json()["run_id"]
        status = self._wait(client, run_id)
        assert status["status"] == "failed"
        assert "not a split graph" in status["error"]
        assert client.get(f"/api/runs/{run_id}/results").json()["result"] is None

    def test_history(self, client):
        """Test completed runs show up with their decision."""
        run_id = client.post(
            "/api/runs/solve",
            json={"problem": "sbvd", "k": 0, "edge_list": DIAMOND_FILE, "verify": True},
        ).json()["run_id"]
        self._wait(client, run_id)
        history = client.get("/api/runs/history").json()
        assert history["total"] == 1
        assert history["runs"][0]["run_id"] == run_id
        assert history["runs"][0]["decision"] is False

    def test_unknown_run(self, client):
        """Test 404 for unknown run ids."""
        assert client.get("/api/runs/nope/status").status_code == 404
        assert client.get("/api/runs/nope/results").status_code == 404

    @pytest.mark.parametrize(
        "body",
        [
            {"problem": "vc", "k": 1, "edge_list": PATH_FILE},
            {"problem": "stvd", "k": -1, "edge_list": PATH_FILE},
            {"problem": "stvd", "k": 1},
        ],
    )
    def test_invalid_solve_request(self, client, body):
        """Test pydantic validation rejects bad bodies."""
        assert client.post("/api/runs/solve", json=body).status_code == 422

    def test_recognize(self, client):
        """Test partition and witnesses for the diamond."""
        body = client.post("/api/recognize", json={"edge_list": DIAMOND_FILE}).json()
        assert body["clique"] == [0, 1, 2]
        assert body["independent"] == [3]
        assert body["threshold"] is True
        assert body["block"] is False
        assert body["diamond"] == [0, 1, 2, 3]
        assert body["p4"] is None

    def test_recognize_not_split(self, client):
        """Test 422 for non-split input."""
        response = client.post("/api/recognize", json={"edge_list": "4 2\n0 1\n2 3\n"})
        assert response.status_code == 422
        assert "not a split graph" in response.json()["detail"]

    def test_vector_table(self, client):
        """Test the rule table endpoint."""
        entries = client.get("/api/analysis/vectors").json()["entries"]
        assert [entry["rule"] for entry in entries] == ["B1", "B2", "B3", "B4", "B5", "B6", "B7"]
        assert entries[2]["vector"] == [1, 1, 2, 2]
        assert entries[2]["branching_number"] == pytest.approx(2.7320508, abs=1e-6)

    def test_branching_number(self, client):
        """Test an arbitrary vector."""
        body = client.post("/api/analysis/branching-number", json={"vector": [1, 2, 2]}).json()
        assert body["branching_number"] == pytest.approx(2.0)

    def test_branching_number_invalid(self, client):
        """Test too-short and non-positive vectors."""
        assert client.post("/api/analysis/branching-number", json={"vector": [1]}).status_code == 422
        assert client.post("/api/analysis/branching-number", json={"vector": [0, 1]}).status_code == 422

    def test_solve_refused_at_active_limit(self, client, mocker):
        """Test 429 once the active-run limit is reached."""
        mocker.patch.object(run_manager, "MAX_ACTIVE_RUNS", 1)
        mocker.patch.object(run_manager, "_run_solve")
        body = {"problem": "stvd", "k": 1, "edge_list": PATH_FILE}
        assert client.post("/api/runs/solve", json=body).status_code == 200
        response = client.post("/api/runs/solve", json=body)
        assert response.status_code == 429
        assert "limit 1" in response.json()["detail"]
