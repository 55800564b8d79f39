import pytest

from infdef.services.session import SessionContext

FIXTURES = ["ex1", "ex2", "ex3_r3", "ex3_r4", "ex3_r5", "ex4", "ex5"]


@pytest.fixture(scope="session")
def ex1() -> SessionContext:
    return SessionContext.fixture("ex1")


@pytest.fixture(scope="session")
def ex2() -> SessionContext:
    return SessionContext.fixture("ex2")


@pytest.fixture(scope="session")
def ex3() -> SessionContext:
    return SessionContext.fixture("ex3_r3")


@pytest.fixture(scope="session")
def ex4() -> SessionContext:
    return SessionContext.fixture("ex4")


@pytest.fixture(scope="session")
def ex5() -> SessionContext:
    return SessionContext.fixture("ex5")


@pytest.fixture(scope="session", params=FIXTURES)
def any_fixture(request) -> SessionContext:
    return SessionContext.fixture(request.param)


@pytest.fixture
def session_text():
    """Minimal session: the A2 quiver with no relations."""
    return """
title = "A2"

[quiver]
vertices = ["1", "2"]
arrows = [{ name = "a", source = "1", target = "2" }]
"""
