from infdef.core.config import Settings
from infdef.services.session import SessionContext


def test_defaults():
    s = Settings(_env_file=None)
    assert s.project_name == "infdef"
    assert s.api_v1_str == "/api/v1"
    assert s.default_degree == 6
    assert s.selftest_jobs == 1


def test_prefixed_environment(monkeypatch):
    monkeypatch.setenv("INFDEF_DEFAULT_DEGREE", "3")
    monkeypatch.setenv("infdef_log_level", "DEBUG")
    s = Settings(_env_file=None)
    assert s.default_degree == 3
    assert s.log_level == "DEBUG"


def test_session_degree_falls_back_to_settings(monkeypatch, session_text):
    monkeypatch.setattr("infdef.services.session.settings", Settings(_env_file=None, default_degree=2))
    assert SessionContext.from_text(session_text).degree == 2
    assert SessionContext.from_text(session_text, degree=4).degree == 4
