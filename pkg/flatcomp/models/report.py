from enum import Enum
from typing import Dict, List, Optional, Tuple

from pydantic import BaseModel


class FlatnessClass(str, Enum):
    """Index classes for flatness: all weights, empty/unit index, finite index, none"""

    P0 = "p0"
    P1 = "p1"
    P2 = "p2"
    EMPTY = "empty"


class FlatnessReport(BaseModel):
    notion: FlatnessClass
    flat: bool
    checked: int = 0
    witness: Optional[str] = None


class CoflatSample(BaseModel):
    shape: int
    weight: Tuple[str, ...]
    diagram: Tuple[Tuple[str, ...], ...]
    preserved: bool


class CoflatReport(BaseModel):
    coflat: bool
    samples: List[CoflatSample] = []

    def table(self) -> str:
        lines = ["shape\tweight\tdiagram\tpreserved"]
        for s in self.samples:
            weight = ",".join(s.weight) or "-"
            diagram = ";".join(",".join(row) for row in s.diagram) or "-"
            lines.append(f"{s.shape}\t{weight}\t{diagram}\t{'yes' if s.preserved else 'no'}")
        return "\n".join(lines) + "\n"


class SuiteResult(BaseModel):
    name: str
    checked: int = 0
    failures: int = 0
    skipped: bool = False
    first_failure: Optional[str] = None

    @property
    def passed(self) -> bool:
        return self.failures == 0 and not self.skipped


class VerifyReport(BaseModel):
    parameters: Dict[str, str]
    suites: List[SuiteResult]

    @property
    def ok(self) -> bool:
        return all(s.failures == 0 for s in self.suites)

    @property
    def budget_exceeded(self) -> bool:
        return any(s.skipped for s in self.suites)


class UniversalPropertyReport(BaseModel):
    source: str
    target: str
    notion: str
    maps: int = 0
    extended: int = 0
    unique: int = 0
    failures: List[str] = []
    partial: bool = False

    @property
    def ok(self) -> bool:
        return not self.failures and not self.partial
