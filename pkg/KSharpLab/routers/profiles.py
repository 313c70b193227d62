from fastapi import APIRouter, HTTPException, Query
from starlette import status
from .. import travwave
from ..exceptions import DomainError
from ..models import HierarchyParams

router = APIRouter(
    prefix='/profile',
    tags=['profile']
)


@router.get("/", status_code=status.HTTP_200_OK)
def read_profile(n: int = Query(1, ge=1), m: int = Query(3, ge=1), c: float = Query(0.75),
                 samples: int = Query(401, ge=2, le=20001)):
    try:
        w = travwave.build(HierarchyParams(n=n, m=m), c)
        xi, u = travwave.tabulate(w, samples)
    except DomainError as exc:
        raise HTTPException(status_code=status.HTTP_422_UNPROCESSABLE_ENTITY, detail=str(exc))
    return {**travwave.describe(w), 'xi': xi.tolist(), 'u': u.tolist()}


@router.get("/behavior", status_code=status.HTTP_200_OK)
def read_behavior(n: int = Query(1, ge=1), m: int = Query(3, ge=1), c: float = Query(0.75, gt=0)):
    p = HierarchyParams(n=n, m=m)
    try:
        edge = travwave.edge_behavior(p, c)
        peak = travwave.peak_behavior(p)
    except DomainError as exc:
        raise HTTPException(status_code=status.HTTP_422_UNPROCESSABLE_ENTITY, detail=str(exc))
    return {'edge': edge.model_dump(), 'peak': peak.model_dump()}
