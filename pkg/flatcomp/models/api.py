"""Request bodies for the HTTP routes; every body carries a document in the text format"""

from typing import List, Optional

from pydantic import BaseModel, Field, field_validator

from .completion import Notion
from .report import FlatnessClass


class DocumentRequest(BaseModel):
    text: str = Field(..., description="Space, module, filter and sequence blocks")

    @field_validator("text")
    @classmethod
    def validate_text(cls, v):
        if not v.strip():
            raise ValueError("document text is required")
        return v


class CompletionRequest(DocumentRequest):
    space: Optional[str] = Field(None, description="Space to complete; optional when the document has one")
    notion: Notion


class FlatnessRequest(DocumentRequest):
    space: Optional[str] = None
    module: str
    notion: Optional[FlatnessClass] = Field(None, description="Defaults to p1, p2 and p0")

    @field_validator("notion")
    @classmethod
    def validate_notion(cls, v):
        if v is FlatnessClass.EMPTY:
            raise ValueError("notion must be one of p0, p1, p2")
        return v


class DistanceRequest(DocumentRequest):
    space: Optional[str] = None
    first: str = Field(..., description="Filter name, left module name or inline generator like {a,b}")
    second: str


class VerifyRequest(BaseModel):
    max_points: int = 2
    grid: List[str] = ["0", "1", "2", "inf"]
    symmetric_only: bool = False
    seed: int = 0
    budget: Optional[int] = Field(None, gt=0)
    suites: Optional[List[str]] = None
    mutations: List[str] = []
