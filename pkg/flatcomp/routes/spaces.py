from fastapi import APIRouter, HTTPException

from ..errors import FlatcompError
from ..models.api import DocumentRequest
from ..services.enriched_service import enriched_service
from ..services.parser_service import parser_service

router = APIRouter(prefix="/spaces", tags=["Spaces"])


@router.post("/validate", response_model=dict)
def validate_spaces(request: DocumentRequest):
    """
    Check the unit and triangle laws of every space in a document

    - **text**: document in the line format (``space NAME over rplus|bool``, ``points``, ``d`` lines)

    Parse errors answer 400 with the offending line number; broken laws are
    reported in the body, not as an error.
    """
    try:
        doc = parser_service.parse_document(request.text)
        if not doc.spaces:
            raise HTTPException(status_code=400, detail="document declares no space")
        spaces = []
        for space in doc.spaces.values():
            spaces.append(
                {
                    "name": space.name,
                    "base": space.base.value,
                    "points": list(space.points),
                    "violations": enriched_service.validate_space(space),
                }
            )
        return {
            "valid": all(not s["violations"] for s in spaces),
            "spaces": spaces,
            "modules": sorted(doc.modules),
        }

    except HTTPException:
        raise
    except (FlatcompError, ValueError) as e:
        raise HTTPException(status_code=400, detail=str(e))
    except Exception as e:
        raise HTTPException(status_code=500, detail=f"Failed to validate document: {str(e)}")
