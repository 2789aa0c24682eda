from fastapi import APIRouter, HTTPException

from ..errors import BudgetExceededError, FlatcompError
from ..models.api import DistanceRequest, FlatnessRequest
from ..models.module import LeftModule
from ..models.report import FlatnessClass
from ..services.enriched_service import enriched_service
from ..services.filter_service import filter_service
from ..services.flatness_service import flatness_service
from ..services.parser_service import parser_service

router = APIRouter(tags=["Flatness"])


@router.post("/flatness", response_model=dict)
def check_flatness(request: FlatnessRequest):
    """
    Compare the closed-form flatness tests with the definitional oracle

    - **module**: name of a left module declared in the document
    - **notion**: p1, p2 or p0; all three when omitted

    ``agree`` is false when a closed form and the oracle disagree on a notion.
    """
    try:
        doc = parser_service.parse_document(request.text)
        space = enriched_service.require_valid(doc.space(request.space))
        module = doc.module(request.module)
        if not isinstance(module, LeftModule):
            raise HTTPException(status_code=400, detail=f"'{request.module}' is not a left module")
        if module.space != space:
            raise HTTPException(status_code=400, detail=f"'{request.module}' does not live on '{space.name}'")

        notions = [request.notion] if request.notion else [FlatnessClass.P1, FlatnessClass.P2, FlatnessClass.P0]
        results = []
        for notion in notions:
            report = flatness_service.oracle_report(module, notion)
            results.append(
                {
                    "notion": notion.value,
                    "closed_form": flatness_service.is_flat(module, notion),
                    "oracle": report.flat,
                    "checked": report.checked,
                    "witness": report.witness,
                }
            )
        return {
            "module": request.module,
            "space": space.name,
            "agree": all(r["closed_form"] == r["oracle"] for r in results),
            "results": results,
        }

    except HTTPException:
        raise
    except BudgetExceededError as e:
        raise HTTPException(status_code=413, detail=str(e))
    except (FlatcompError, ValueError) as e:
        raise HTTPException(status_code=400, detail=str(e))
    except Exception as e:
        raise HTTPException(status_code=500, detail=f"Failed to check flatness: {str(e)}")


@router.post("/distance", response_model=dict)
def distance(request: DistanceRequest):
    """
    Distance between two filters or left modules of one space

    A filter operand is either a declared filter name or an inline generator
    such as ``{a,b}``. A filter stands for its M- module when paired with a
    module.
    """
    try:
        doc = parser_service.parse_document(request.text)
        space = enriched_service.require_valid(doc.space(request.space))
        first = parser_service.operand(doc, space, request.first)
        second = parser_service.operand(doc, space, request.second)
        return {
            "space": space.name,
            "first": request.first,
            "second": request.second,
            "distance": str(filter_service.operand_distance(first, second)),
        }

    except HTTPException:
        raise
    except (FlatcompError, ValueError) as e:
        raise HTTPException(status_code=400, detail=str(e))
    except Exception as e:
        raise HTTPException(status_code=500, detail=f"Failed to compute distance: {str(e)}")
