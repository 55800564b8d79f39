from typing import Any

from fastapi import APIRouter

from ....api.deps import run, session_context
from ....schemas.report import AlgebraReport, CocycleCheckReport, DeformReport, DotReport
from ....schemas.requests import DeformRequest, SessionRequest
from ....services import commands

router = APIRouter()


@router.post("/check", response_model=AlgebraReport)
async def check_algebra(request: SessionRequest) -> Any:
    """
    Dimension, normal-form basis and rewriting rules of A
    """
    return await run(commands.algebra_check, session_context(request))


@router.post("/cocycle", response_model=CocycleCheckReport)
async def check_cocycle(request: SessionRequest) -> Any:
    """
    Cocycle identity on all basis triples; a failing check still answers 200 with passed = false
    """
    return await run(commands.cocycle_check, session_context(request))


@router.post("/deform", response_model=DeformReport)
async def deform_info(request: DeformRequest) -> Any:
    return await run(commands.deform_info, session_context(request), hom_dims=request.hom_dims)


@router.post("/dot", response_model=DotReport)
async def quiver_dot(request: SessionRequest) -> Any:
    return await run(commands.emit_dot, session_context(request))
