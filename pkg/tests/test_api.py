import inspect

import pytest
from fastapi.routing import APIRoute
from fastapi.testclient import TestClient

from infdef.core.config import settings
from infdef.main import app

API = settings.api_v1_str


@pytest.fixture(scope="module")
def client() -> TestClient:
    return TestClient(app)


def test_health(client):
    response = client.get("/health")
    assert response.status_code == 200
    assert response.json() == {"status": "healthy"}


def test_root(client):
    assert client.get("/").json()["docs"] == "/docs"


def test_algebra_check(client):
    response = client.post(f"{API}/algebra/check", json={"fixture": "ex1"})
    assert response.status_code == 200
    body = response.json()
    assert body["dim"] == 9
    assert body["radical_dims"][:2] == [5, 1]


def test_inline_session(client, session_text):
    response = client.post(f"{API}/algebra/check", json={"session": session_text})
    assert response.status_code == 200
    assert response.json()["dim"] == 3


def test_needs_exactly_one_source(client, session_text):
    assert client.post(f"{API}/algebra/check", json={}).status_code == 422
    both = {"fixture": "ex1", "session": session_text}
    assert client.post(f"{API}/algebra/check", json=both).status_code == 422


def test_malformed_session_is_422(client):
    response = client.post(f"{API}/algebra/check", json={"session": '[quiver]\nvertices = ["1" "2"]\n'})
    assert response.status_code == 422
    assert response.json()["detail"]["error"] == "ParseError"


def test_unknown_fixture_is_422(client):
    response = client.post(f"{API}/algebra/check", json={"fixture": "nope"})
    assert response.status_code == 422
    assert response.json()["detail"]["fixture"] == "nope"


def test_failed_cocycle_check_answers_200(client):
    session = (
        '[quiver]\nvertices = ["1", "2"]\narrows = [{ name = "a", source = "1", target = "2" }]\n'
        '[cocycle]\nentries = [{ left = "e_1", right = "a", value = "a" }]\n'
    )
    response = client.post(f"{API}/algebra/cocycle", json={"session": session})
    assert response.status_code == 200
    assert response.json()["passed"] is False

    response = client.post(f"{API}/algebra/deform", json={"session": session})
    assert response.status_code == 409
    assert response.json()["detail"]["error"] == "NotACocycle"


def test_deform_with_hom_dims(client):
    response = client.post(f"{API}/algebra/deform", json={"fixture": "ex1", "hom_dims": True})
    assert response.status_code == 200
    body = response.json()
    assert body["dim"] == 18
    assert body["hat_hom_dims"]["1,1"] >= 1


def test_dot(client):
    response = client.post(f"{API}/algebra/dot", json={"fixture": "ex2"})
    assert response.json()["dot"].startswith("digraph ex2 {")


def test_resolve(client):
    payload = {"fixture": "ex1", "simple": "4", "degree": 3}
    response = client.post(f"{API}/homology/resolve", json=payload)
    assert response.status_code == 200
    terms = response.json()["terms"]
    assert sorted(terms[1]["vertices"]) == ["2", "3"]


def test_resolve_theorem_over_base_is_422(client):
    payload = {"fixture": "ex1", "method": "theorem", "over": "base"}
    assert client.post(f"{API}/homology/resolve", json=payload).status_code == 422


def test_theorem_without_star_is_409(client):
    payload = {"fixture": "ex3_r3", "simple": "1", "method": "theorem", "over": "deformed", "degree": 2}
    response = client.post(f"{API}/homology/resolve", json=payload)
    assert response.status_code == 409
    assert response.json()["detail"]["error"] == "StarNotCertified"


def test_ext_dims(client):
    response = client.post(f"{API}/homology/ext-dims", json={"fixture": "ex2", "simple": "1", "degree": 4})
    body = response.json()
    assert body["base"] == [1, 1, 1, 1, 1]
    assert body["deformed"] == [1, 2, 3, 4, 5]
    assert body["partial_sums_hold"] is True


def test_yoneda(client):
    payload = {"fixture": "ex2", "h": "0:[1 0]", "g": "1:[1 0|0 1]", "check": True}
    response = client.post(f"{API}/homology/yoneda", json=payload)
    assert response.status_code == 200
    assert response.json()["agree"] is True


def test_yoneda_bad_class(client):
    payload = {"fixture": "ex2", "h": "0:[1]", "g": "0:[1 0]"}
    response = client.post(f"{API}/homology/yoneda", json=payload)
    assert response.status_code == 422
    assert response.json()["detail"]["error"] == "DimensionMismatch"


def test_ext_dims_over_base(client):
    payload = {"fixture": "ex2", "simple": "2", "degree": 3, "over": "base"}
    body = client.post(f"{API}/homology/ext-dims", json=payload).json()
    assert body["base"] == [1, 1, 1, 1]
    assert body["deformed"] is None
    assert body["partial_sums_hold"] is None


def test_ext_dims_unknown_side_is_422(client):
    payload = {"fixture": "ex2", "over": "both"}
    assert client.post(f"{API}/homology/ext-dims", json=payload).status_code == 422


def test_routes_are_coroutines():
    routes = [r for r in app.routes if isinstance(r, APIRoute)]
    assert any(r.path == f"{API}/homology/ext-dims" for r in routes)
    assert all(inspect.iscoroutinefunction(r.endpoint) for r in routes)
