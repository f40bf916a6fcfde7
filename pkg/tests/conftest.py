import pytest


@pytest.fixture(autouse=True)
def _isolated_cache(tmp_path, monkeypatch):
    # keep every test away from the user's real cache
    monkeypatch.setenv("RPS_CACHE_DIR", str(tmp_path / "cache"))
