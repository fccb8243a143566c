import json
import random
import urllib.error
import urllib.request

import pytest

from helpers import finished_session, inject_step_jump, make_template
from corae.codec import encode_canonical
from corae.model import ProjectState
from corae.server import CoraeServer, load_config, parse_listen, parse_range
from corae.store import ProjectStore

MEDIA_BYTES = bytes(range(256)) * 40  # 10240 bytes


@pytest.fixture
def store(tmp_path):
    store = ProjectStore(tmp_path / "data")
    store.create_project(make_template(project_id="study", state=ProjectState.DRAFT))
    store.transition("study", ProjectState.STAGED)
    store.transition("study", ProjectState.PUBLISHED)
    (store.media_dir("study") / "a.mp4").write_bytes(MEDIA_BYTES)
    return store


@pytest.fixture
def server(store):
    server = CoraeServer(("127.0.0.1", 0), store)
    server.start_background()
    yield server
    server.shutdown()
    server.server_close()


def request(server, path, method="GET", data=None, headers=None):
    req = urllib.request.Request(
        server.url + path, data=data, method=method, headers=headers or {}
    )
    try:
        with urllib.request.urlopen(req, timeout=10) as resp:
            return resp.status, dict(resp.headers), resp.read()
    except urllib.error.HTTPError as err:
        return err.code, dict(err.headers), err.read()


def get_json(server, path):
    status, _, body = request(server, path)
    return status, json.loads(body) if body else None


def submission(store, slot="A", seed=1):
    record = store.create_session("study", slot)
    engine = finished_session(
        random.Random(seed), template=store.load_template("study"), token=record.token
    )
    return record, engine.to_log()


class TestSessionBundle:
    def test_bundle_round_trip(self, store, server):
        record, _ = submission(store)
        status, bundle = get_json(server, f"/api/v1/session/{record.token}")
        assert status == 200
        assert bundle["session_token"] == record.token
        assert bundle["scale"]["neutral_value"] == 0
        assert bundle["media_url"] == "/media/study/a.mp4"

    def test_unknown_token_404(self, server):
        status, body = get_json(server, "/api/v1/session/doesnotexist")
        assert status == 404
        assert "error" in body

    def test_bundle_does_not_consume(self, store, server):
        record, _ = submission(store)
        get_json(server, f"/api/v1/session/{record.token}")
        assert store.find_token(record.token).consumed is False


class TestAnnotatePage:
    def test_fallback_page(self, store, server):
        record, _ = submission(store)
        status, headers, body = request(server, f"/annotate/{record.token}")
        assert status == 200
        assert headers["Content-Type"].startswith("text/html")
        assert b"corae" in body

    def test_unknown_token_404(self, server):
        status, _, _ = request(server, "/annotate/unknown")
        assert status == 404

    def test_static_index_served_when_configured(self, store, tmp_path):
        static = tmp_path / "static"
        static.mkdir()
        (static / "index.html").write_text("<html>dashboard build</html>")
        (static / "app.js").write_text("console.log('hi')")
        server = CoraeServer(("127.0.0.1", 0), store, static_dir=static)
        server.start_background()
        try:
            record, _ = submission(store)
            _, _, body = request(server, f"/annotate/{record.token}")
            assert b"dashboard build" in body
            status, _, asset = request(server, "/static/app.js")
            assert status == 200 and b"console" in asset
            status, _, _ = request(server, "/static/../secrets")
            assert status == 404
        finally:
            server.shutdown()
            server.server_close()


class TestMedia:
    def test_full_body(self, server):
        status, headers, body = request(server, "/media/study/a.mp4")
        assert status == 200
        assert body == MEDIA_BYTES
        assert headers["Accept-Ranges"] == "bytes"

    def test_range_prefix(self, server):
        status, headers, body = request(
            server, "/media/study/a.mp4", headers={"Range": "bytes=0-99"}
        )
        assert status == 206
        assert body == MEDIA_BYTES[:100]
        assert headers["Content-Range"] == f"bytes 0-99/{len(MEDIA_BYTES)}"

    def test_range_open_ended(self, server):
        status, _, body = request(
            server, "/media/study/a.mp4", headers={"Range": "bytes=10000-"}
        )
        assert status == 206
        assert body == MEDIA_BYTES[10000:]

    def test_range_suffix(self, server):
        status, headers, body = request(
            server, "/media/study/a.mp4", headers={"Range": "bytes=-50"}
        )
        assert status == 206
        assert body == MEDIA_BYTES[-50:]

    def test_range_past_end_416(self, server):
        status, headers, _ = request(
            server, "/media/study/a.mp4", headers={"Range": "bytes=99999-"}
        )
        assert status == 416
        assert headers["Content-Range"] == f"bytes */{len(MEDIA_BYTES)}"

    def test_missing_file_404(self, server):
        status, _, _ = request(server, "/media/study/nope.mp4")
        assert status == 404

    def test_traversal_blocked(self, server):
        status, _, _ = request(server, "/media/study/../../etc/passwd")
        assert status == 404


class TestIngestEndpoint:
    def post(self, server, token, data):
        return request(
            server,
            f"/api/v1/session/{token}/log",
            method="POST",
            data=data,
            headers={"Content-Type": "application/json"},
        )

    def test_valid_log_accepted(self, store, server):
        record, log = submission(store, seed=2)
        status, _, body = self.post(server, record.token, encode_canonical(log))
        doc = json.loads(body)
        assert status == 200
        assert doc["accepted"] is True
        assert doc["violations"] == []
        assert store.find_token(record.token).consumed is True

    def test_step_jump_rejected(self, store, server):
        record, log = submission(store, seed=3)
        bad = encode_canonical(inject_step_jump(log), validate=False)
        status, _, body = self.post(server, record.token, bad)
        doc = json.loads(body)
        assert status == 400
        assert doc["accepted"] is False
        assert any(v["kind"] == "step_jump" for v in doc["violations"])

    def test_duplicate_identical_ok(self, store, server):
        record, log = submission(store, seed=4)
        data = encode_canonical(log)
        assert self.post(server, record.token, data)[0] == 200
        assert self.post(server, record.token, data)[0] == 200
        assert len(list(store.logs_dir("study").glob("*.corae.json"))) == 1

    def test_conflicting_resubmission_409(self, store, server):
        record, log = submission(store, seed=5)
        assert self.post(server, record.token, encode_canonical(log))[0] == 200
        _, other = submission(store, seed=6)
        other.session_token = record.token
        status, _, _ = self.post(server, record.token, encode_canonical(other))
        assert status == 409

    def test_unknown_token_404(self, store, server):
        _, log = submission(store, seed=7)
        status, _, _ = self.post(server, "missing", encode_canonical(log))
        assert status == 404

    def test_garbage_400(self, store, server):
        record, _ = submission(store, seed=8)
        status, _, body = self.post(server, record.token, b"newline soup")
        assert status == 400
        assert json.loads(body)["accepted"] is False


def test_unknown_route_404(server):
    status, _, _ = request(server, "/api/v2/whatever")
    assert status == 404


class TestHelpers:
    def test_parse_listen(self):
        assert parse_listen("0.0.0.0:8080") == ("0.0.0.0", 8080)
        with pytest.raises(ValueError):
            parse_listen("8080")

    def test_parse_range(self):
        assert parse_range("bytes=0-9", 100) == (0, 9)
        assert parse_range("bytes=90-", 100) == (90, 99)
        assert parse_range("bytes=-10", 100) == (90, 99)
        assert parse_range("bytes=0-500", 100) == (0, 99)
        assert parse_range("bytes=200-", 100) is None
        assert parse_range("bytes=a-b", 100) is None

    def test_load_config(self, tmp_path):
        cfg = tmp_path / "corae.conf"
        cfg.write_text("# comment\nlisten = 127.0.0.1:9999\ndata_dir = /srv/corae\n")
        assert load_config(cfg) == {"listen": "127.0.0.1:9999", "data_dir": "/srv/corae"}
        cfg.write_text("broken line\n")
        with pytest.raises(ValueError):
            load_config(cfg)
