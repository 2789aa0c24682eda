from enum import Enum
from typing import Tuple

from pydantic import BaseModel, ConfigDict

from .quantale import QValue
from .space import Map, Space


class Notion(str, Enum):
    """Completion notions; the last four only exist over bool"""

    P0 = "p0"
    P1 = "p1"
    P2 = "p2"
    FREE = "free"
    IDEALS = "ideals"
    DOWNSETS = "downsets"
    DMN = "dmn"

    @property
    def bool_only(self) -> bool:
        return self in (Notion.FREE, Notion.IDEALS, Notion.DOWNSETS, Notion.DMN)


class PointRow(BaseModel):
    """One completion point: its name, generator subset and module values"""

    model_config = ConfigDict(frozen=True)

    name: str
    generator: Tuple[str, ...]
    values: Tuple[QValue, ...]


class Completion(BaseModel):
    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    source: Space
    notion: Notion
    result: Space
    embedding: Map
    table: Tuple[PointRow, ...]

    def row(self, name: str) -> PointRow:
        for r in self.table:
            if r.name == name:
                return r
        raise KeyError(name)
