from fastapi import APIRouter

from .endpoints import algebra, homology

api_router = APIRouter()

# Algebra, cochain and deformation reports
api_router.include_router(algebra.router, prefix="/algebra", tags=["algebra"])

# Resolutions, condition (*), Ext and Yoneda products
api_router.include_router(homology.router, prefix="/homology", tags=["homology"])
