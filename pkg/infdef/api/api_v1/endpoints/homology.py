from typing import Any

from fastapi import APIRouter

from ....api.deps import run, session_context
from ....schemas.report import CorollaryCheckReport, ExtBasisReport, ExtDimsReport, ResolveReport, StarReport, YonedaReport
from ....schemas.requests import CorollaryRequest, ExtBasisRequest, ExtDimsRequest, ResolveRequest, SimpleRequest, YonedaRequest
from ....services import commands

router = APIRouter()


@router.post("/resolve", response_model=ResolveReport)
async def resolve(request: ResolveRequest) -> Any:
    """
    Minimal projective resolution of S_v (or the sum of simples) over A or A_f
    """
    ctx = session_context(request)
    return await run(
        commands.resolve,
        ctx,
        request.simple,
        request.over.value,
        request.method.value,
        ctx.degree,
        compare=request.compare,
        witnesses=request.witnesses,
    )


@router.post("/star", response_model=StarReport)
async def star_check(request: SimpleRequest) -> Any:
    ctx = session_context(request)
    return await run(commands.star_check, ctx, request.simple, ctx.degree)


@router.post("/ext-dims", response_model=ExtDimsReport)
async def ext_dims(request: ExtDimsRequest) -> Any:
    ctx = session_context(request)
    over = request.over.value if request.over else None
    return await run(commands.ext_dims, ctx, request.simple, ctx.degree, over=over)


@router.post("/ext-basis", response_model=ExtBasisReport)
async def ext_basis(request: ExtBasisRequest) -> Any:
    return await run(commands.ext_basis, session_context(request), request.n)


@router.post("/yoneda", response_model=YonedaReport)
async def yoneda(request: YonedaRequest) -> Any:
    """
    Yoneda product h o g; classes use the CLI syntax, e.g. "1:[1 0|0 1]"
    """
    return await run(commands.yoneda, session_context(request), request.h, request.g, request.method.value, check=request.check)


@router.post("/corollary", response_model=CorollaryCheckReport)
async def corollary(request: CorollaryRequest) -> Any:
    ctx = session_context(request)
    return await run(commands.corollary, ctx, ctx.degree, associativity=request.associativity)
