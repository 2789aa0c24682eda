from typing import Optional

from ..config import settings
from ..errors import BudgetExceededError


class Budget:
    """Counts enumeration steps and stops at the configured cap"""

    def __init__(self, limit: Optional[int] = None, what: str = "samples"):
        self.limit = limit if limit is not None else settings.budget
        self.what = what
        self.used = 0

    def tick(self, n: int = 1) -> None:
        self.used += n
        if self.used > self.limit:
            raise BudgetExceededError(self.what, self.limit)
