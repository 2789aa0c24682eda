"""
Test catalog: enumerated small spaces and the named example spaces.

RPLUS spaces are enumerated over a distance grid and pruned up to
isomorphism; BOOL preorders are enumerated as reflexive transitive relations,
also up to isomorphism. Enumeration order depends only on the parameters.
"""

from fractions import Fraction
from itertools import permutations, product
from typing import Dict, List, Optional, Sequence, Tuple

import structlog
from pydantic import BaseModel, ConfigDict, field_validator

from ..models.module import LeftModule, RightModule, Variance
from ..models.quantale import FALSE, INF, TRUE, ZERO, Base, QValue
from ..models.space import Map, Space, is_nonexpansive
from .enriched_service import enriched_service
from .flatness_service import grid_modules
from .quantale_service import quantale_service

logger = structlog.get_logger(__name__)

POINT_NAMES = ("a", "b", "c", "d")


def _r(x) -> QValue:
    return INF if x == "inf" else QValue.rplus(Fraction(x))


class Catalog(BaseModel):
    """Generation parameters for the verification catalog"""

    model_config = ConfigDict(frozen=True)

    max_points: int = 3
    grid: Tuple[QValue, ...] = (ZERO, QValue.rplus(1), QValue.rplus(2), INF)
    symmetric_only: bool = False
    seed: int = 0

    @field_validator("max_points")
    @classmethod
    def validate_max_points(cls, v):
        if not 1 <= v <= 4:
            raise ValueError("max_points must be between 1 and 4")
        return v

    @field_validator("grid")
    @classmethod
    def validate_grid(cls, v):
        if not v:
            raise ValueError("distance grid must be nonempty")
        if any(x.base is not Base.RPLUS for x in v):
            raise ValueError("distance grid values must be over rplus")
        if ZERO not in v:
            v = (ZERO,) + tuple(v)
        return tuple(sorted(set(v), key=QValue.sort_key))

    def describe(self) -> Dict[str, str]:
        return {
            "max_points": str(self.max_points),
            "grid": ",".join(str(x) for x in self.grid),
            "symmetric_only": str(self.symmetric_only).lower(),
            "seed": str(self.seed),
        }


class CatalogService:
    # -- enumeration ---------------------------------------------------------

    def _canonical(self, matrix: Tuple[Tuple[QValue, ...], ...]) -> Tuple:
        n = len(matrix)
        return min(
            tuple(matrix[perm[i]][perm[j]].sort_key() for i in range(n) for j in range(n))
            for perm in permutations(range(n))
        )

    def _matrices(self, n: int, values: Sequence[QValue], unit: QValue, symmetric: bool = False):
        off = [(i, j) for i in range(n) for j in range(n) if i != j and (not symmetric or i < j)]
        for choice in product(values, repeat=len(off)):
            entries = dict(zip(off, choice))
            if symmetric:
                entries.update({(j, i): v for (i, j), v in list(entries.items())})
            yield tuple(tuple(unit if i == j else entries[(i, j)] for j in range(n)) for i in range(n))

    def rplus_spaces(self, catalog: Optional[Catalog] = None) -> List[Space]:
        """Every rplus space up to isomorphism with at most max_points points and distances in the grid"""
        catalog = catalog or Catalog()
        spaces: List[Space] = []
        for n in range(1, catalog.max_points + 1):
            seen = set()
            for matrix in self._matrices(n, catalog.grid, ZERO, catalog.symmetric_only):
                s = Space(name=f"r{n}_{len(seen)}", base=Base.RPLUS, points=POINT_NAMES[:n], matrix=matrix)
                if enriched_service.validate_space(s):
                    continue
                key = self._canonical(matrix)
                if key in seen:
                    continue
                seen.add(key)
                spaces.append(s)
        logger.info("catalog_rplus", spaces=len(spaces), max_points=catalog.max_points)
        return spaces

    def bool_preorders(self, max_points: int = 4) -> List[Space]:
        """Every preorder with at most max_points elements, up to isomorphism"""
        spaces: List[Space] = []
        for n in range(1, max_points + 1):
            seen = set()
            for matrix in self._matrices(n, (FALSE, TRUE), TRUE):
                s = Space(name=f"p{n}_{len(seen)}", base=Base.BOOL, points=POINT_NAMES[:n], matrix=matrix)
                if enriched_service.validate_space(s):
                    continue
                key = self._canonical(matrix)
                if key in seen:
                    continue
                seen.add(key)
                spaces.append(s)
        logger.info("catalog_bool", spaces=len(spaces), max_points=max_points)
        return spaces

    def left_modules(self, s: Space, grid: Optional[Sequence[QValue]] = None) -> List[LeftModule]:
        grid = tuple(grid) if grid is not None else tuple(quantale_service.ops(s.base).default_grid())
        return [LeftModule(space=s, values=values) for values in grid_modules(s, grid, Variance.LEFT)]

    def right_modules(self, s: Space, grid: Optional[Sequence[QValue]] = None) -> List[RightModule]:
        grid = tuple(grid) if grid is not None else tuple(quantale_service.ops(s.base).default_grid())
        return [RightModule(space=s, values=values) for values in grid_modules(s, grid, Variance.RIGHT)]

    def maps(self, source: Space, target: Space) -> List[Map]:
        """Every nonexpansive map, in lexicographic order of the images"""
        return [
            Map(source=source, target=target, assignment=images)
            for images in product(target.points, repeat=source.size)
            if is_nonexpansive(source, target, images)
        ]

    # -- named spaces --------------------------------------------------------

    def _rplus(self, name: str, points: Sequence[str], rows: Sequence[Sequence]) -> Space:
        matrix = tuple(tuple(_r(x) for x in row) for row in rows)
        return Space(name=name, base=Base.RPLUS, points=tuple(points), matrix=matrix)

    def _bool(self, name: str, points: Sequence[str], rows: Sequence[Sequence[int]]) -> Space:
        matrix = tuple(tuple(QValue.boolean(x) for x in row) for row in rows)
        return Space(name=name, base=Base.BOOL, points=tuple(points), matrix=matrix)

    def t3(self) -> Space:
        """Asymmetric three-point space used as the running example"""
        return self._rplus("T3", "abc", [[0, 1, 2], [2, 0, 1], [5, 4, 0]])

    def z2(self) -> Space:
        """Two points at distance zero both ways"""
        return self._rplus("Z2", "pq", [[0, 0], [0, 0]])

    def d2(self) -> Space:
        """Two points at distance one both ways"""
        return self._rplus("D2", "xy", [[0, 1], [1, 0]])

    def asymmetric_pair(self) -> Space:
        """p -> q at distance zero, q -> p at distance one"""
        return self._rplus("A2", "pq", [[0, 0], [1, 0]])

    def one_point(self, base: Base = Base.RPLUS) -> Space:
        if base is Base.RPLUS:
            return self._rplus("ONE", "o", [[0]])
        return self._bool("ONEB", "o", [[1]])

    def antichain(self) -> Space:
        return self._bool("AC2", "xy", [[1, 0], [0, 1]])

    def chain(self) -> Space:
        """x below y"""
        return self._bool("CH2", "xy", [[1, 1], [0, 1]])

    def fixtures(self) -> Dict[str, Space]:
        return {
            s.name: s
            for s in (
                self.t3(),
                self.z2(),
                self.d2(),
                self.asymmetric_pair(),
                self.one_point(Base.RPLUS),
                self.one_point(Base.BOOL),
                self.antichain(),
                self.chain(),
            )
        }

    def fixture(self, name: str) -> Space:
        spaces = self.fixtures()
        if name not in spaces:
            raise KeyError(f"unknown fixture '{name}'; known: {', '.join(spaces)}")
        return spaces[name]


catalog_service = CatalogService()
