from typing import List

from fastapi import APIRouter, HTTPException, Query as QueryParam

from ..db.database import list_runs, record_run
from ..errors import FlatcompError
from ..models.api import VerifyRequest
from ..models.quantale import Base, parse_value
from ..services.catalog_service import Catalog
from ..services.verification_service import verification_service

router = APIRouter(prefix="/verify", tags=["Verification"])


@router.post("", response_model=dict)
def run_verification(request: VerifyRequest):
    """
    Run the property suites over a generated catalog and store the run

    - **max_points**: largest catalog space (1 to 4; default 2 keeps requests short)
    - **grid**: distance grid, e.g. ``["0", "1", "2", "inf"]``
    - **suites**: restrict to these suites
    - **mutations**: inject a known bug, e.g. ``["hom"]``

    ``exit_status`` follows the command line: 0 ok, 1 violation, 3 budget exceeded.
    """
    try:
        catalog = Catalog(
            max_points=request.max_points,
            grid=tuple(parse_value(token, Base.RPLUS) for token in request.grid),
            symmetric_only=request.symmetric_only,
            seed=request.seed,
        )
        report = verification_service.run(
            catalog=catalog, budget=request.budget, mutations=request.mutations, only=request.suites
        )
        if not report.ok:
            exit_status = 1
        elif report.budget_exceeded:
            exit_status = 3
        else:
            exit_status = 0
        run_id = record_run(report, exit_status)
        return {
            "id": run_id,
            "ok": report.ok,
            "exit_status": exit_status,
            "parameters": report.parameters,
            "suites": [s.model_dump() for s in report.suites],
        }

    except HTTPException:
        raise
    except (FlatcompError, ValueError) as e:
        raise HTTPException(status_code=400, detail=str(e))
    except Exception as e:
        raise HTTPException(status_code=500, detail=f"Failed to run verification: {str(e)}")


@router.get("/runs", response_model=List[dict])
def get_runs(
    limit: int = QueryParam(20, ge=1, description="Maximum number of runs"),
    failed_only: bool = QueryParam(False, description="Only runs with property violations"),
):
    """Stored verification runs, newest first"""
    try:
        return list_runs(limit=limit, failed_only=failed_only)
    except Exception as e:
        raise HTTPException(status_code=500, detail=f"Failed to list runs: {str(e)}")
