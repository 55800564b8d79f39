import json
import logging
from typing import Callable, TypeVar

from fastapi import HTTPException
from fastapi.concurrency import run_in_threadpool

from ..core.errors import InfdefError
from ..schemas.requests import SessionRequest
from ..services.session import SessionContext

logger = logging.getLogger(__name__)

T = TypeVar("T")


def _http_error(exc: InfdefError) -> HTTPException:
    detail = json.loads(json.dumps(exc.as_dict(), default=str))
    return HTTPException(status_code=exc.status_code, detail=detail)


def session_context(request: SessionRequest) -> SessionContext:
    """Parse the inline session or load the named fixture."""
    try:
        if request.fixture is not None:
            return SessionContext.fixture(request.fixture, request.degree)
        return SessionContext.from_text(request.session, request.degree)
    except InfdefError as exc:
        raise _http_error(exc)


async def run(fn: Callable[..., T], *args, **kwargs) -> T:
    """Run a command in the threadpool; input errors become 422, mathematical failures 409."""
    try:
        return await run_in_threadpool(fn, *args, **kwargs)
    except InfdefError as exc:
        logger.info("request failed: %s", exc.message)
        raise _http_error(exc)
