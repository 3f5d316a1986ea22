import pytest
from fastapi.testclient import TestClient

from sccheck import config
from sccheck.server import app

client = TestClient(app)

TWO_CYCLE_TAIL = {"vertex_count": 3, "edges": [[0, 1], [1, 0], [1, 2]]}


def test_health():
    response = client.get("/health")
    assert response.status_code == 200
    body = response.json()
    assert body["status"] == "healthy"
    assert body["service"] == "sccheck"


@pytest.mark.parametrize("algo", ["functional", "fast", "oracle"])
def test_sccs(algo):
    response = client.post("/api/sccs", json={"graph": TWO_CYCLE_TAIL, "algo": algo})
    assert response.status_code == 200
    body = response.json()
    assert body["components"] == [[0, 1], [2]]
    assert body["labels"] is None
    assert body["algo"] == algo


def test_sccs_compacts_sparse_ids():
    graph = {"edges": [[10, 20], [20, 10], [20, 30]]}
    response = client.post("/api/sccs", json={"graph": graph})
    assert response.status_code == 200
    body = response.json()
    assert body["labels"] == [10, 20, 30]
    assert body["components"] == [[10, 20], [30]]


def test_condensation():
    response = client.post("/api/condensation", json={"graph": TWO_CYCLE_TAIL})
    assert response.status_code == 200
    body = response.json()
    assert body["text"] == "C0: 0 1\nC2: 2\nC0 -> C2\n"
    assert body["nodes"] == [0, 2]
    assert body["edges"] == [[0, 2]]


def test_check():
    response = client.post("/api/check", json={"graph": TWO_CYCLE_TAIL})
    assert response.status_code == 200
    body = response.json()
    assert body["components"] == [[0, 1], [2]]
    assert body["summary"]["failed"] == 0
    assert body["summary"]["evaluated"] > 0
    assert body["failures"] == []


def test_check_with_one_suite():
    response = client.post("/api/check", json={"graph": TWO_CYCLE_TAIL, "suites": ["assertions"]})
    assert response.status_code == 200
    assert response.json()["summary"]["failed"] == 0


@pytest.mark.parametrize(
    "path,payload",
    [
        ("/api/sccs", {"graph": {"vertex_count": 2, "edges": [[0, 5]]}}),
        ("/api/sccs", {"graph": TWO_CYCLE_TAIL, "order": "max"}),
        ("/api/check", {"graph": TWO_CYCLE_TAIL, "suites": []}),
        ("/api/generate", {"spec": "gnp:n=5,p=2"}),
        ("/api/generate", {"spec": "nonsense"}),
    ],
)
def test_bad_requests(path, payload):
    assert client.post(path, json=payload).status_code == 400


def test_size_limits():
    big = {"vertex_count": config.MAX_API_VERTICES + 1, "edges": []}
    assert client.post("/api/sccs", json={"graph": big}).status_code == 413
    checked = {"vertex_count": config.MAX_CHECKED_VERTICES + 1, "edges": []}
    assert client.post("/api/check", json={"graph": checked}).status_code == 413
    spec = f"empty:n={config.MAX_API_VERTICES + 1}"
    assert client.post("/api/generate", json={"spec": spec}).status_code == 413


def test_generate():
    response = client.post("/api/generate", json={"spec": "gnp:n=5,p=1,seed=3"})
    assert response.status_code == 200
    body = response.json()
    assert body["spec"] == "gnp:n=5,p=1,seed=3"
    assert body["vertex_count"] == 5
    assert len(body["edges"]) == 20


def test_generated_graph_round_trips_through_sccs():
    generated = client.post("/api/generate", json={"spec": "cycle_chain:n=6,k=3"}).json()
    graph = {"vertex_count": generated["vertex_count"], "edges": generated["edges"]}
    response = client.post("/api/sccs", json={"graph": graph, "algo": "fast"})
    assert response.json()["components"] == [[0, 1], [2, 3], [4, 5]]
