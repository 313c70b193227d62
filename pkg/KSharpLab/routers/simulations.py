import math
from typing import Annotated
from fastapi import APIRouter, Depends, HTTPException
from starlette import status
from .. import diagnostics
from ..config import API_MAX_STEPS
from ..exceptions import DomainError, SimulationBlowUp
from ..models import RunManifest
from ..simulate import run_manifest

router = APIRouter(
    prefix='/simulate',
    tags=['simulate']
)


def get_max_steps() -> int:
    return API_MAX_STEPS


max_steps_dependency = Annotated[int, Depends(get_max_steps)]


@router.post("/", status_code=status.HTTP_200_OK)
def simulate(manifest: RunManifest, max_steps: max_steps_dependency):
    steps = math.ceil(manifest.t_end / manifest.solver.dt - 1e-9)
    if steps > max_steps:
        raise HTTPException(status_code=status.HTTP_422_UNPROCESSABLE_ENTITY,
                            detail=f'run needs {steps} steps, the limit is {max_steps}')
    try:
        record, final, error = run_manifest(manifest)
    except DomainError as exc:
        raise HTTPException(status_code=status.HTTP_422_UNPROCESSABLE_ENTITY, detail=str(exc))
    except SimulationBlowUp as exc:
        raise HTTPException(status_code=status.HTTP_409_CONFLICT, detail=str(exc))
    document = record.model_dump()
    document['ik'] = {str(k): v for k, v in sorted(document['ik'].items())}
    return {
        'status': 'ok',
        'final_time': final.time,
        'mollification_error': error,
        'drift': diagnostics.drift_summary(record),
        'record': document,
    }
