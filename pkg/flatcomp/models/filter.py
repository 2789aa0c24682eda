"""
Filters and eventually periodic sequences on a finite space.

Every filter on a finite carrier is the set of supersets of one nonempty
generator, so a PrincipalFilter stores just that generator (kept in the
space's declared point order).
"""

from typing import List, Tuple

from pydantic import BaseModel, ConfigDict, field_validator, model_validator

from .quantale import Base, QValue
from .space import Space, subset_name


class PrincipalFilter(BaseModel):
    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    space: Space
    generator: Tuple[str, ...]
    name: str = ""

    @model_validator(mode="after")
    def validate_generator(self):
        if not self.generator:
            raise ValueError("filter generator must be nonempty")
        for p in self.generator:
            if p not in self.space:
                raise ValueError(f"generator point '{p}' is not in space '{self.space.name}'")
        ordered = self.space.ordered(self.generator)
        if ordered != self.generator:
            object.__setattr__(self, "generator", ordered)
        return self

    @property
    def indices(self) -> List[int]:
        return [self.space.index(p) for p in self.generator]

    def label(self) -> str:
        return self.name or subset_name(list(self.generator))

    def same_generator(self, other: "PrincipalFilter") -> bool:
        return self.space == other.space and self.generator == other.generator


class EvPeriodicSequence(BaseModel):
    """The infinite sequence preperiod ++ cycle ++ cycle ++ ..."""

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    space: Space
    preperiod: Tuple[str, ...] = ()
    cycle: Tuple[str, ...]
    name: str = ""

    @model_validator(mode="after")
    def validate_sequence(self):
        if not self.cycle:
            raise ValueError("sequence cycle must be nonempty")
        for p in self.preperiod + self.cycle:
            if p not in self.space:
                raise ValueError(f"sequence point '{p}' is not in space '{self.space.name}'")
        return self

    def at(self, n: int) -> str:
        if n < len(self.preperiod):
            return self.preperiod[n]
        return self.cycle[(n - len(self.preperiod)) % len(self.cycle)]

    def tail_values(self, start: int) -> Tuple[str, ...]:
        """Values taken from position start onwards, in declared point order"""
        span = max(start, len(self.preperiod)) + len(self.cycle)
        return self.space.ordered({self.at(n) for n in range(start, span)})

    def describe(self) -> str:
        pre = " ".join(self.preperiod) or "-"
        return f"pre {pre} cycle {' '.join(self.cycle)}"


class Tolerance(BaseModel):
    """Positive tolerances used by the sequence constructions"""

    epsilon: QValue
    alpha: QValue

    @field_validator("epsilon", "alpha")
    @classmethod
    def validate_positive(cls, v):
        if v.base is not Base.RPLUS or v.is_inf or v.value <= 0:
            raise ValueError("tolerances are positive finite rationals")
        return v
