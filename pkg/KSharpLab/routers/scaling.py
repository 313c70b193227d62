from fastapi import APIRouter, Query
from starlette import status
from .. import hierarchy
from ..models import HierarchyParams

router = APIRouter(
    prefix='/scale',
    tags=['scale']
)


@router.get("/", status_code=status.HTTP_200_OK)
def read_scales(epsilon: float = Query(gt=0), delta: float = Query(gt=0),
                n: int = Query(ge=1), m: int = Query(ge=1), vee: float = Query(1.0, gt=0)):
    p = HierarchyParams(n=n, m=m)
    form = hierarchy.scales_from_coefficients(epsilon, delta, p, vee)
    eps_back, delta_back = hierarchy.coefficients_from_scales(form, p)
    error = max(abs(eps_back - epsilon) / epsilon, abs(delta_back - delta) / delta)
    return {**form.model_dump(), 'max_relative_error': error}
