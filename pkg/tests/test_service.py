import pytest
from fastapi.testclient import TestClient

from hilbsq import reports
from hilbsq.service import app

client = TestClient(app)


def test_healthz():
    response = client.get("/healthz")
    assert response.status_code == 200
    assert response.json()["status"] == "ok"


def test_pell_endpoint_accepts_strings_and_ints():
    response = client.post("/pell", json={"d": "61", "m": 1})
    assert response.status_code == 200
    data = response.json()
    assert data["results"]["fundamental_solution"]["x"] == "1766319049"
    assert all(c["status"] == "pass" for c in data["checks"])


def test_pell_endpoint_square_d():
    response = client.post("/pell", json={"d": 4, "m": 1})
    assert response.status_code == 422


def test_bcns_endpoint():
    response = client.post("/bcns", json={"t": 62002})
    assert response.status_code == 200
    data = response.json()
    assert data["results"]["exists"] is True
    assert data["results"]["minimal_solution"] == {"x": "249", "y": "1"}


def test_bcns_endpoint_matches_local_report():
    remote = client.post("/bcns", json={"t": "2"}).json()
    local = reports.bcns_report(2).to_dict()
    assert remote == local


def test_family_endpoint():
    response = client.post("/family", json={"family": "B", "bound": 1})
    assert response.status_code == 200
    data = response.json()
    assert data["results"]["rows"][0]["t"] == "101506"
    assert any(c["status"] == "discrepancy" for c in data["checks"])
    bad = client.post("/family", json={"family": "C", "bound": 1})
    assert bad.status_code == 422


def test_theorem2_endpoint():
    response = client.post("/theorem2", json={"n": 1})
    assert response.status_code == 200
    data = response.json()
    assert data["results"]["rank23"]["complement_rank"] == "21"


def test_lattice_info_endpoint():
    by_name = client.post("/lattice-info", json={"name": "U"})
    assert by_name.status_code == 200
    assert by_name.json()["results"]["discriminant"] == "-1"

    by_gram = client.post("/lattice-info", json={"gram": [[0, 1], [1, 0]]})
    assert by_gram.status_code == 200
    assert by_gram.json()["results"]["discriminant"] == "-1"

    neither = client.post("/lattice-info", json={})
    assert neither.status_code == 422
    both = client.post(
        "/lattice-info", json={"name": "U", "gram": [[2]]}
    )
    assert both.status_code == 422


def test_beauville_endpoint():
    response = client.post("/beauville", json={"n": "2"})
    assert response.status_code == 200
    data = response.json()
    assert data["results"]["kappa2"]["generator"] == "251*H - 16*W - 249*delta"


@pytest.mark.parametrize("payload", [{"t": "x"}, {"t": 1.5}, {}])
def test_bcns_endpoint_rejects_bad_input(payload):
    response = client.post("/bcns", json=payload)
    assert response.status_code == 422
