from typing import Literal
import numpy as np
from fastapi import APIRouter, HTTPException
from pydantic import BaseModel, Field
from starlette import status
from .. import diagnostics
from ..exceptions import DomainError
from ..models import Grid, State, WaveParams

router = APIRouter(
    prefix='/invariants',
    tags=['invariants']
)


class InvariantsRequest(BaseModel):
    """A snapshot document plus the I_k orders to evaluate."""
    grid: Grid
    params: WaveParams
    times: list[float]
    fields: list[list[float]]
    k: list[int] = Field(default_factory=list)
    scheme: Literal['fourier_collocation', 'centered_fd4'] = 'fourier_collocation'


@router.post("/", status_code=status.HTTP_200_OK)
def evaluate_invariants(request: InvariantsRequest):
    if len(request.times) != len(request.fields) \
            or any(len(field) != request.grid.npoints for field in request.fields):
        raise HTTPException(status_code=status.HTTP_422_UNPROCESSABLE_ENTITY,
                            detail='times and fields do not match the grid')
    states = [State(t, np.asarray(field, dtype=float))
              for t, field in zip(request.times, request.fields)]
    try:
        header, rows = diagnostics.invariants_table(states, request.grid,
                                                    request.params.hierarchy(),
                                                    request.k, request.scheme)
    except DomainError as exc:
        raise HTTPException(status_code=status.HTTP_422_UNPROCESSABLE_ENTITY, detail=str(exc))
    return [dict(zip(header, row)) for row in rows]
