"""
Modules (presheaves and copresheaves) on a finite space, and diagrams.

Value tables are validated eagerly: a table that breaks the module
inequality never becomes a LeftModule or RightModule.
"""

from enum import Enum
from typing import ClassVar, Sequence, Tuple, Union

from pydantic import BaseModel, ConfigDict, model_validator

from ..services.quantale_service import quantale_service
from .quantale import QValue
from .space import Space


class Variance(str, Enum):
    LEFT = "left"
    RIGHT = "right"


def module_violations(space: Space, values: Sequence[QValue], variance: Variance) -> Tuple[Tuple[str, str], ...]:
    """
    Pairs (x, y) at which the module inequality fails.

    Left:  M(y) (x) A(x, y) -> M(x)
    Right: A(x, y) (x) N(x) -> N(y)
    """
    ops = quantale_service.ops(space.base)
    bad = []
    n = space.size
    for i in range(n):
        for j in range(n):
            if variance is Variance.LEFT:
                ok = ops.leq(ops.tensor(values[j], space.di(i, j)), values[i])
            else:
                ok = ops.leq(ops.tensor(space.di(i, j), values[i]), values[j])
            if not ok:
                bad.append((space.points[i], space.points[j]))
    return tuple(bad)


class _Module(BaseModel):
    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    variance: ClassVar[Variance]

    space: Space
    values: Tuple[QValue, ...]
    name: str = ""

    @model_validator(mode="after")
    def validate_values(self):
        if len(self.values) != self.space.size:
            raise ValueError(f"module needs {self.space.size} values, got {len(self.values)}")
        for value in self.values:
            if value.base is not self.space.base:
                raise ValueError(f"module value {value} is not over {self.space.base.value}")
        bad = module_violations(self.space, self.values, self.variance)
        if bad:
            x, y = bad[0]
            raise ValueError(f"{self.variance.value} module inequality fails at ({x}, {y})")
        return self

    def __call__(self, x: str) -> QValue:
        return self.values[self.space.index(x)]

    def describe(self) -> str:
        return "[" + ", ".join(f"{p}:{v}" for p, v in zip(self.space.points, self.values)) + "]"


class LeftModule(_Module):
    """A presheaf M on the space: M(y) (x) A(x, y) -> M(x)"""

    variance: ClassVar[Variance] = Variance.LEFT


class RightModule(_Module):
    """A copresheaf N on the space: A(x, y) (x) N(x) -> N(y)"""

    variance: ClassVar[Variance] = Variance.RIGHT


# A weight is a module on an index space: right modules weight limits,
# left modules weight colimits.
Weight = Union[LeftModule, RightModule]


class Diagram(BaseModel):
    """
    A functor H from the index space K into modules on the target space.

    ``rows[k]`` is H(k), a module of ``variance`` on ``target``; for every
    target point the column k -> H(k)(a) is a right module on K.
    """

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    index: Space
    target: Space
    rows: Tuple[Tuple[QValue, ...], ...]
    variance: Variance = Variance.RIGHT

    @model_validator(mode="after")
    def validate_diagram(self):
        if self.index.base is not self.target.base:
            raise ValueError("diagram index and target over different bases")
        if len(self.rows) != self.index.size:
            raise ValueError("diagram needs one row per index point")
        for k, row in enumerate(self.rows):
            if len(row) != self.target.size:
                raise ValueError(f"diagram row {self.index.points[k]} has the wrong length")
            if module_violations(self.target, row, self.variance):
                raise ValueError(f"diagram row {self.index.points[k]} is not a {self.variance.value} module")
        for a in range(self.target.size):
            column = tuple(row[a] for row in self.rows)
            if module_violations(self.index, column, Variance.RIGHT):
                raise ValueError(f"diagram is not functorial at target point {self.target.points[a]}")
        return self

    def column(self, a: int) -> Tuple[QValue, ...]:
        return tuple(row[a] for row in self.rows)
