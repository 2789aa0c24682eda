"""
Values of the two base quantales.

A QValue is either an extended non-negative rational (base RPLUS, where
``value is None`` stands for infinity) or a truth value (base BOOL, stored as
the rationals 0 and 1). All arithmetic is exact; floats are rejected.
"""

from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from typing import Any, Optional, Tuple, Union

from pydantic_core import core_schema

Number = Union[int, Fraction, str]


class Base(str, Enum):
    RPLUS = "rplus"
    BOOL = "bool"


@dataclass(frozen=True)
class QValue:
    base: Base
    value: Optional[Fraction]

    def __post_init__(self):
        if self.value is None:
            if self.base is not Base.RPLUS:
                raise ValueError("infinity only exists over rplus")
            return
        if isinstance(self.value, float) or isinstance(self.value, bool):
            raise ValueError("QValue needs an exact rational, not a float or bool")
        value = Fraction(self.value)
        if self.base is Base.RPLUS and value < 0:
            raise ValueError(f"rplus values are non-negative, got {value}")
        if self.base is Base.BOOL and value not in (0, 1):
            raise ValueError(f"bool values are 0 or 1, got {value}")
        object.__setattr__(self, "value", value)

    @classmethod
    def rplus(cls, x: Number) -> "QValue":
        if isinstance(x, str):
            return parse_value(x, Base.RPLUS)
        return cls(Base.RPLUS, Fraction(x))

    @classmethod
    def inf(cls) -> "QValue":
        return cls(Base.RPLUS, None)

    @classmethod
    def boolean(cls, b: Union[bool, int]) -> "QValue":
        return cls(Base.BOOL, Fraction(1 if b else 0))

    @classmethod
    def __get_pydantic_core_schema__(cls, source: Any, handler: Any) -> core_schema.CoreSchema:
        return core_schema.is_instance_schema(
            cls, serialization=core_schema.plain_serializer_function_ser_schema(str)
        )

    @property
    def is_inf(self) -> bool:
        return self.value is None

    def sort_key(self) -> Tuple[int, Fraction]:
        """Numeric order key, infinity last"""
        return (1, Fraction(0)) if self.value is None else (0, self.value)

    def __str__(self) -> str:
        if self.value is None:
            return "inf"
        if self.value.denominator == 1:
            return str(self.value.numerator)
        return f"{self.value.numerator}/{self.value.denominator}"

    def __repr__(self) -> str:
        return f"QValue({self.base.value}, {self})"


def parse_value(token: str, base: Base) -> QValue:
    """
    Parse a text literal into a QValue.

    rplus accepts integers, ``p/q`` fractions and ``inf``; bool accepts 0 and 1.
    Raises ValueError on anything else.
    """
    text = token.strip()
    if base is Base.BOOL:
        if text not in ("0", "1"):
            raise ValueError(f"bool literal must be 0 or 1, got '{token}'")
        return QValue.boolean(text == "1")
    if text == "inf":
        return QValue.inf()
    if "." in text or "e" in text.lower():
        raise ValueError(f"decimal literals are not exact, write '{token}' as p/q")
    try:
        value = Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise ValueError(f"not a rational literal: '{token}'")
    return QValue(Base.RPLUS, value)


ZERO = QValue(Base.RPLUS, Fraction(0))
INF = QValue(Base.RPLUS, None)
FALSE = QValue(Base.BOOL, Fraction(0))
TRUE = QValue(Base.BOOL, Fraction(1))
