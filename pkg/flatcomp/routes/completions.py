from fastapi import APIRouter, HTTPException

from ..errors import BudgetExceededError, FlatcompError
from ..models.api import CompletionRequest
from ..services.completion_service import completion_service
from ..services.enriched_service import enriched_service
from ..services.parser_service import parser_service

router = APIRouter(prefix="/completions", tags=["Completions"])


@router.post("", response_model=dict)
def create_completion(request: CompletionRequest):
    """
    Build the completion of a space for one notion

    - **text**: document declaring the space
    - **space**: which space to complete (optional with a single space)
    - **notion**: p0, p1, p2, or one of free, ideals, downsets, dmn over bool

    Returns the completion space in the text format, its point table and the
    embedding of the source points.
    """
    try:
        doc = parser_service.parse_document(request.text)
        space = enriched_service.require_valid(doc.space(request.space))
        completion = completion_service.complete(space, request.notion)
        return {
            "source": space.name,
            "notion": completion.notion.value,
            "points": completion.result.size,
            "space": parser_service.format_space(completion.result),
            "table": [
                {"point": row.name, "generator": list(row.generator), "values": [str(v) for v in row.values]}
                for row in completion.table
            ],
            "embedding": {x: completion.embedding(x) for x in space.points},
        }

    except HTTPException:
        raise
    except BudgetExceededError as e:
        raise HTTPException(status_code=413, detail=str(e))
    except (FlatcompError, ValueError) as e:
        raise HTTPException(status_code=400, detail=str(e))
    except Exception as e:
        raise HTTPException(status_code=500, detail=f"Failed to build completion: {str(e)}")
