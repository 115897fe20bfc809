import pytest
from fastapi.testclient import TestClient
import os
import sys
import json

# Add parent directory to path
sys.path.insert(0, os.path.join(os.path.dirname(__file__), '..'))

from api.index import app
from api.groups import registry

client = TestClient(app)


class TestRootEndpoint:
    """Test root and health endpoints"""

    def test_root_lists_endpoints(self):
        response = client.get("/")
        assert response.status_code == 200
        data = response.json()
        assert "endpoints" in data
        assert data["endpoints"]["probability"] == "POST /words/probability"

    def test_health(self):
        response = client.get("/health")
        assert response.status_code == 200
        assert response.json()["status"] == "healthy"


class TestGroupEndpoints:
    """Test catalog and group info"""

    def test_catalog(self):
        response = client.get("/groups/catalog?max_order=8")
        assert response.status_code == 200
        data = response.json()
        names = [e["name"] for e in data["entries"]]
        assert "quaternion8" in names
        assert data["count"] == len(names)

    def test_catalog_range(self):
        response = client.get("/groups/catalog?max_order=0")
        assert response.status_code == 400

    def test_info(self):
        response = client.post("/groups/info", json={"group": "symmetric(3)"})
        assert response.status_code == 200
        assert response.json() == {"group": "symmetric(3)", "order": 6, "abelian": False, "center": 1}

    def test_unknown_group(self):
        response = client.post("/groups/info", json={"group": "monster(1)"})
        assert response.status_code == 400


class TestWordEndpoints:
    """Test probability and property checks"""

    def test_probability(self):
        response = client.post("/words/probability", json={"group": "quaternion8", "named": "commutator"})
        assert response.status_code == 200
        assert response.json()["probability"] == "5/8"

    def test_probability_from_text(self):
        response = client.post("/words/probability", json={"group": "symmetric(3)", "word": "[x,y]"})
        assert response.status_code == 200
        assert response.json()["probability"] == "1/2"

    def test_word_and_named_are_exclusive(self):
        response = client.post("/words/probability", json={"group": "symmetric(3)", "word": "x", "named": "commutator"})
        assert response.status_code == 400

    def test_bad_word(self):
        response = client.post("/words/probability", json={"group": "symmetric(3)", "word": "[x"})
        assert response.status_code == 400

    def test_oversized_word(self):
        response = client.post("/words/probability", json={"group": "cyclic(5)", "word": "x^1000000000000"})
        assert response.status_code == 400

    def test_property_fails(self):
        response = client.post("/property/check", json={"group": "symmetric(3)", "named": "commutator", "m": 1, "n": 3})
        assert response.status_code == 200
        data = response.json()
        assert data["has_property"] is False
        assert len(data["witness_N"]) == 3

    def test_property_holds(self):
        response = client.post("/property/check", json={
            "group": "symmetric(3)", "named": "commutator", "m": 1, "n": 5, "policy": "require_disjoint",
        })
        assert response.status_code == 200
        assert response.json()["has_property"] is True

    def test_property_validation(self):
        response = client.post("/property/check", json={"group": "symmetric(3)", "named": "commutator", "m": 0, "n": 1})
        assert response.status_code == 422


class TestBoundEndpoint:
    """Test the main bound"""

    def test_bound(self):
        response = client.post("/bounds/main", json={"gamma": "5/8", "m": 2, "n": 10})
        assert response.status_code == 200
        assert response.json()["bound"] == "256"

    def test_bound_with_order(self):
        response = client.post("/bounds/main", json={"gamma": "5/8", "m": 1, "n": 2, "order": 1000000})
        assert response.json()["holds"] is False

    def test_bad_gamma(self):
        response = client.post("/bounds/main", json={"gamma": "3/2", "m": 1, "n": 2})
        assert response.status_code == 400


class TestGroupUpload:
    """Test the /api/groups router"""

    def setup_method(self):
        registry.groups.clear()

    def teardown_method(self):
        registry.groups.clear()

    def upload(self, payload):
        files = {"file": ("group.json", json.dumps(payload), "application/json")}
        return client.post("/api/groups/upload", files=files)

    def test_upload_table(self):
        response = self.upload({"name": "Z3", "order": 3, "table": [[0, 1, 2], [1, 2, 0], [2, 0, 1]]})
        assert response.status_code == 200
        data = response.json()
        assert data["order"] == 3
        assert data["abelian"] is True
        assert data["center"] == 3

    def test_upload_generators_then_use(self):
        response = self.upload({"name": "S3", "points": 3, "generators": [[1, 0, 2], [1, 2, 0]]})
        group_id = response.json()["id"]
        response = client.post("/words/probability", json={"group": group_id, "named": "commutator"})
        assert response.json()["probability"] == "1/2"

    def test_upload_invalid(self):
        response = self.upload({"name": "bad", "order": 2, "table": [[0, 1], [1, 1]]})
        assert response.status_code == 400

    def test_list(self):
        self.upload({"name": "Z2", "order": 2, "table": [[0, 1], [1, 0]]})
        response = client.get("/api/groups/list")
        assert response.status_code == 200
        assert [g["name"] for g in response.json()] == ["Z2"]

    def test_download(self):
        group_id = self.upload({"name": "Z2", "order": 2, "table": [[0, 1], [1, 0]]}).json()["id"]
        response = client.get(f"/api/groups/download/{group_id}")
        assert response.status_code == 200
        assert json.loads(response.text)["table"] == [[0, 1], [1, 0]]

    def test_download_unknown(self):
        response = client.get("/api/groups/download/nope")
        assert response.status_code == 404
