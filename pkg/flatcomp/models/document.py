from typing import Dict, Union

from pydantic import BaseModel, ConfigDict

from ..errors import FlatcompError
from .filter import EvPeriodicSequence, PrincipalFilter
from .module import LeftModule, RightModule
from .space import Space


class Document(BaseModel):
    """Everything declared in one input file, keyed by name"""

    model_config = ConfigDict(arbitrary_types_allowed=True)

    spaces: Dict[str, Space] = {}
    modules: Dict[str, Union[LeftModule, RightModule]] = {}
    filters: Dict[str, PrincipalFilter] = {}
    sequences: Dict[str, EvPeriodicSequence] = {}

    def space(self, name: str = None) -> Space:
        """The named space, or the only space when no name is given"""
        if name is None:
            if len(self.spaces) != 1:
                raise FlatcompError(f"expected exactly one space, found {len(self.spaces)}; name one")
            return next(iter(self.spaces.values()))
        if name not in self.spaces:
            raise FlatcompError(f"no space named '{name}'")
        return self.spaces[name]

    def module(self, name: str) -> Union[LeftModule, RightModule]:
        if name not in self.modules:
            raise FlatcompError(f"no module named '{name}'")
        return self.modules[name]
