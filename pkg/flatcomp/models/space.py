"""
Finite enriched categories and maps between them.

A Space is a named list of points with a distance matrix over one base. The
matrix is checked for shape and base on construction; the unit and triangle
laws are reported by EnrichedService.validate_space so that broken inputs
can be described instead of only rejected.
"""

from typing import Dict, List, Tuple

from pydantic import BaseModel, ConfigDict, PrivateAttr, field_validator, model_validator

from ..errors import UnknownPointError
from ..services.quantale_service import quantale_service
from .quantale import Base, QValue


class Space(BaseModel):
    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    name: str
    base: Base
    points: Tuple[str, ...]
    matrix: Tuple[Tuple[QValue, ...], ...]

    _index: Dict[str, int] = PrivateAttr(default_factory=dict)

    @field_validator("name")
    @classmethod
    def validate_name(cls, v):
        if not v or any(ch.isspace() for ch in v):
            raise ValueError("space name must be a nonempty token without whitespace")
        return v

    @field_validator("points")
    @classmethod
    def validate_points(cls, v):
        for p in v:
            if not p or any(ch.isspace() for ch in p):
                raise ValueError(f"invalid point name '{p}'")
        if len(set(v)) != len(v):
            raise ValueError("point names must be unique")
        return v

    @model_validator(mode="after")
    def validate_matrix(self):
        n = len(self.points)
        if len(self.matrix) != n or any(len(row) != n for row in self.matrix):
            raise ValueError(f"distance matrix must be {n}x{n}")
        for row in self.matrix:
            for value in row:
                if value.base is not self.base:
                    raise ValueError(f"distance {value} is not over {self.base.value}")
        return self

    def model_post_init(self, __context) -> None:
        self._index = {p: i for i, p in enumerate(self.points)}

    @property
    def size(self) -> int:
        return len(self.points)

    def index(self, point: str) -> int:
        try:
            return self._index[point]
        except KeyError:
            raise UnknownPointError(point, self.name)

    def __contains__(self, point: str) -> bool:
        return point in self._index

    def d(self, x: str, y: str) -> QValue:
        """Distance A(x, y)"""
        return self.matrix[self.index(x)][self.index(y)]

    def di(self, i: int, j: int) -> QValue:
        return self.matrix[i][j]

    def row(self, x: str) -> Tuple[QValue, ...]:
        """A(x, -)"""
        return self.matrix[self.index(x)]

    def column(self, y: str) -> Tuple[QValue, ...]:
        """A(-, y)"""
        j = self.index(y)
        return tuple(row[j] for row in self.matrix)

    def is_symmetric(self) -> bool:
        n = self.size
        return all(self.matrix[i][j] == self.matrix[j][i] for i in range(n) for j in range(n))

    def ordered(self, subset) -> Tuple[str, ...]:
        """Members of subset in declared point order"""
        wanted = set(subset)
        for p in wanted:
            self.index(p)
        return tuple(p for p in self.points if p in wanted)

    def fingerprint(self) -> Tuple:
        return (self.base.value, self.points, tuple(tuple(str(v) for v in row) for row in self.matrix))

    def renamed(self, name: str) -> "Space":
        return Space(name=name, base=self.base, points=self.points, matrix=self.matrix)


def subset_name(points: List[str]) -> str:
    """Canonical completion point name, e.g. '{a,b}'"""
    return "{" + ",".join(points) + "}"


class Map(BaseModel):
    """
    A nonexpansive map between spaces over the same base, stored as the image
    of each source point in declared order.
    """

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    source: Space
    target: Space
    assignment: Tuple[str, ...]

    @model_validator(mode="after")
    def validate_map(self):
        if self.source.base is not self.target.base:
            raise ValueError("map between spaces over different bases")
        if len(self.assignment) != self.source.size:
            raise ValueError("assignment must give one image per source point")
        for image in self.assignment:
            if image not in self.target:
                raise ValueError(f"image '{image}' is not a point of '{self.target.name}'")
        if not is_nonexpansive(self.source, self.target, self.assignment):
            raise ValueError("map is not nonexpansive")
        return self

    def __call__(self, x: str) -> str:
        return self.assignment[self.source.index(x)]


def is_nonexpansive(source: Space, target: Space, assignment: Tuple[str, ...]) -> bool:
    """A(x, y) -> B(Fx, Fy) in the categorical order for every pair"""
    ops = quantale_service.ops(source.base)
    idx = [target.index(b) for b in assignment]
    n = source.size
    return all(ops.leq(source.di(i, j), target.di(idx[i], idx[j])) for i in range(n) for j in range(n))
