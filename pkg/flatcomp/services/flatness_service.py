"""
Flatness of presheaves on finite spaces.

Two independent routes are provided for each notion:
- closed forms computed from the zero set of the module
- a definitional oracle that enumerates weighted limits over a value grid
  and checks that M * - preserves them

The closed forms are what the completions use; the oracle exists to keep
them honest.
"""

from itertools import combinations_with_replacement, product
from typing import List, Optional, Sequence, Tuple

import structlog
from cachetools import LRUCache, cached
from cachetools.keys import hashkey

from ..config import settings
from ..errors import PreconditionError
from ..models.module import LeftModule, RightModule, Variance, module_violations
from ..models.quantale import QValue
from ..models.report import CoflatReport, CoflatSample, FlatnessClass, FlatnessReport
from ..models.space import Map, Space
from .budget import Budget
from .enriched_service import enriched_service
from .quantale_service import BaseOps, quantale_service

logger = structlog.get_logger(__name__)

Row = Tuple[QValue, ...]
ZeroSet = Tuple[str, ...]


@cached(
    cache=LRUCache(maxsize=settings.cache_size),
    key=lambda s, grid, variance: hashkey(s.fingerprint(), tuple(grid), variance),
)
def grid_modules(s: Space, grid: Tuple[QValue, ...], variance: Variance) -> Tuple[Row, ...]:
    """Every module of the given variance on s with values drawn from grid"""
    return tuple(
        values
        for values in product(grid, repeat=s.size)
        if not module_violations(s, values, variance)
    )


def _fmt(values: Sequence[QValue]) -> str:
    return "[" + ", ".join(str(v) for v in values) + "]"


def _dedupe(rows) -> List:
    seen, out = set(), []
    for row in rows:
        if row not in seen:
            seen.add(row)
            out.append(row)
    return out


class FlatnessService:
    # -- closed forms --------------------------------------------------------

    def zero_set(self, m: LeftModule) -> ZeroSet:
        """Points where M takes the unit value (0 over rplus, 1 over bool)"""
        unit = quantale_service.ops(m.space.base).unit
        return tuple(p for p, v in zip(m.space.points, m.values) if v == unit)

    def preserves_terminal(self, m: LeftModule) -> bool:
        ops = quantale_service.ops(m.space.base)
        return ops.join(m.values) == ops.unit

    def preserves_cotensor(self, m: LeftModule, v: QValue, n: RightModule) -> bool:
        """M * hom(v, N) == hom(v, M * N)"""
        enriched_service.same_space(m, n)
        ops = quantale_service.ops(m.space.base)
        return self._cotensor_ok(ops, m.values, v, n.values)

    def preserves_finite_meet(self, m: LeftModule, ns: Sequence[RightModule]) -> bool:
        """M * (meet_i N_i) == meet_i (M * N_i)"""
        if ns:
            enriched_service.same_space(m, *ns)
        ops = quantale_service.ops(m.space.base)
        return self._meet_ok(ops, m.values, [n.values for n in ns])

    def is_p1_flat(self, m: LeftModule) -> bool:
        """
        Zero set nonempty and M equal to the join of the representables on it:
        M(x) = join over y in Z of A(x, y).
        """
        s = m.space
        ops = quantale_service.ops(s.base)
        zero = [s.index(p) for p in self.zero_set(m)]
        if not zero:
            return False
        return all(m.values[x] == ops.join(s.di(x, y) for y in zero) for x in range(s.size))

    def is_directed(self, s: Space, subset: Sequence[str]) -> bool:
        """Nonempty and every pair has an upper bound inside subset in the zero-preorder"""
        if not subset:
            return False
        unit = quantale_service.ops(s.base).unit
        idx = [s.index(p) for p in subset]
        return all(
            any(s.di(a, z) == unit and s.di(b, z) == unit for z in idx)
            for a in idx
            for b in idx
        )

    def is_p2_flat(self, m: LeftModule) -> bool:
        return self.is_p1_flat(m) and self.is_directed(m.space, self.zero_set(m))

    def is_p0_flat(self, m: LeftModule) -> bool:
        """Left adjointness of M, as a module from the unit space"""
        return enriched_service.is_left_adjoint(m)

    def is_flat(self, m: LeftModule, notion: FlatnessClass) -> bool:
        if notion is FlatnessClass.EMPTY:
            return True
        if notion is FlatnessClass.P1:
            return self.is_p1_flat(m)
        if notion is FlatnessClass.P2:
            return self.is_p2_flat(m)
        return self.is_p0_flat(m)

    def kan_preserves_flatness(self, m: LeftModule, g: Map, notion: FlatnessClass) -> bool:
        if not self.is_flat(m, notion):
            raise PreconditionError(f"module {m.describe()} is not {notion.value}-flat")
        return self.is_flat(enriched_service.kan_extend(m, g), notion)

    # -- oracle --------------------------------------------------------------

    def _compose(self, ops: BaseOps, mv: Row, nv: Row) -> QValue:
        return ops.join(ops.tensor(a, b) for a, b in zip(mv, nv))

    def _cotensor_ok(self, ops: BaseOps, mv: Row, v: QValue, nv: Row) -> bool:
        lhs = self._compose(ops, mv, tuple(ops.hom(v, x) for x in nv))
        rhs = ops.hom(v, self._compose(ops, mv, nv))
        return lhs == rhs

    def _meet_ok(self, ops: BaseOps, mv: Row, rows: Sequence[Row]) -> bool:
        n = len(mv)
        met = tuple(ops.meet(row[i] for row in rows) for i in range(n))
        return self._compose(ops, mv, met) == ops.meet(self._compose(ops, mv, row) for row in rows)

    def oracle_report(
        self,
        m: LeftModule,
        notion: FlatnessClass,
        grid: Optional[Sequence[QValue]] = None,
        max_k: int = 2,
        budget: Optional[Budget] = None,
    ) -> FlatnessReport:
        """
        Definitional flatness check: enumerate weighted limits of right modules
        and test that M * - preserves each one.

        Args:
            m: Module under test
            notion: Which index class to enumerate
            grid: Values for weights and diagrams (default: the base's grid)
            max_k: Largest discrete index space for the finite-limit part
            budget: Enumeration budget, shared with the caller if given

        Returns:
            FlatnessReport with the first failing sample as witness

        Raises:
            BudgetExceededError: more samples than the budget allows
        """
        s = m.space
        ops = quantale_service.ops(s.base)
        grid = tuple(grid) if grid is not None else tuple(ops.default_grid())
        budget = budget or Budget(what="flatness oracle samples")
        mv = m.values
        checked = 0

        def report(flat: bool, witness: Optional[str] = None) -> FlatnessReport:
            logger.debug("flatness_oracle", notion=notion.value, flat=flat, checked=checked)
            return FlatnessReport(notion=notion, flat=flat, checked=checked, witness=witness)

        if notion is FlatnessClass.EMPTY:
            return report(True)

        # empty index: the terminal right module
        budget.tick()
        checked += 1
        if not self.preserves_terminal(m):
            return report(False, f"terminal: M * 1 = {ops.join(mv)}, expected {ops.unit}")

        representables = [s.row(p) for p in s.points]
        rights = _dedupe(representables + list(grid_modules(s, grid, Variance.RIGHT)))
        scalars = _dedupe(list(grid) + list(mv))

        # one-point index: cotensors
        for v in scalars:
            for nv in rights:
                budget.tick()
                checked += 1
                if not self._cotensor_ok(ops, mv, v, nv):
                    lhs = self._compose(ops, mv, tuple(ops.hom(v, x) for x in nv))
                    rhs = ops.hom(v, self._compose(ops, mv, nv))
                    return report(False, f"cotensor v={v} N={_fmt(nv)}: M*{{v,N}}={lhs} vs {{v,M*N}}={rhs}")
        if notion is FlatnessClass.P1:
            return report(True)

        # finite discrete index: meets of cotensors
        limits = _dedupe(representables + [tuple(ops.hom(v, x) for x in nv) for v in scalars for nv in rights])
        composed = {row: self._compose(ops, mv, row) for row in limits}
        for k in range(2, max_k + 1):
            for family in combinations_with_replacement(limits, k):
                budget.tick()
                checked += 1
                met = tuple(ops.meet(row[i] for row in family) for i in range(s.size))
                lhs = self._compose(ops, mv, met)
                rhs = ops.meet(composed[row] for row in family)
                if lhs != rhs:
                    pair = " and ".join(_fmt(row) for row in family)
                    return report(False, f"meet of {pair}: M*meet={lhs} vs meet of M*={rhs}")
        if notion is FlatnessClass.P2:
            return report(True)

        # absoluteness samples: index A^op, weight W, Yoneda diagram k -> A(k, -)
        weights = _dedupe([mv] + [s.column(p) for p in s.points] + list(grid_modules(s, grid, Variance.LEFT)))
        for wv in weights:
            budget.tick()
            checked += 1
            limit = tuple(ops.meet(ops.hom(wv[k], s.di(k, a)) for k in range(s.size)) for a in range(s.size))
            lhs = self._compose(ops, mv, limit)
            rhs = ops.meet(ops.hom(wv[k], mv[k]) for k in range(s.size))
            if lhs != rhs:
                return report(False, f"absolute limit with weight W={_fmt(wv)}: M*{{W,Y}}={lhs} vs {{W,M*Y}}={rhs}")
        return report(True)

    def flatness_oracle(
        self,
        m: LeftModule,
        notion: FlatnessClass,
        grid: Optional[Sequence[QValue]] = None,
        max_k: int = 2,
        budget: Optional[Budget] = None,
    ) -> bool:
        return self.oracle_report(m, notion, grid, max_k, budget).flat

    # -- coflatness ----------------------------------------------------------

    def coflat_report(
        self,
        p: RightModule,
        grid: Optional[Sequence[QValue]] = None,
        max_a: int = 2,
        conical: bool = False,
        budget: Optional[Budget] = None,
    ) -> CoflatReport:
        """
        Sampled check that {P, -} on right modules over K preserves colimits.

        Colimit shapes are discrete of size 0..max_a (1..max_a when conical);
        conical colimits use the unit weight, otherwise every grid weight is
        tried. Each sample is recorded in the returned table.
        """
        k_space = p.space
        ops = quantale_service.ops(k_space.base)
        grid = tuple(grid) if grid is not None else tuple(ops.default_grid())
        budget = budget or Budget(what="coflatness oracle samples")
        rows = grid_modules(k_space, grid, Variance.RIGHT)
        samples: List[CoflatSample] = []

        def lim(row: Row) -> QValue:
            return ops.meet(ops.hom(a, b) for a, b in zip(p.values, row))

        sizes = range(1, max_a + 1) if conical else range(0, max_a + 1)
        for j in sizes:
            weights = [tuple(ops.unit for _ in range(j))] if conical else list(product(grid, repeat=j))
            for weight in weights:
                for diagram in product(rows, repeat=j):
                    budget.tick()
                    colim = tuple(
                        ops.join(ops.tensor(weight[i], diagram[i][k]) for i in range(j))
                        for k in range(k_space.size)
                    )
                    lhs = lim(colim)
                    rhs = ops.join(ops.tensor(weight[i], lim(diagram[i])) for i in range(j))
                    samples.append(
                        CoflatSample(
                            shape=j,
                            weight=tuple(str(w) for w in weight),
                            diagram=tuple(tuple(str(v) for v in row) for row in diagram),
                            preserved=lhs == rhs,
                        )
                    )
        coflat = all(s.preserved for s in samples)
        logger.debug("coflat_oracle", samples=len(samples), coflat=coflat)
        return CoflatReport(coflat=coflat, samples=samples)

    def is_coflat_oracle(
        self,
        p: RightModule,
        grid: Optional[Sequence[QValue]] = None,
        max_a: int = 2,
        conical: bool = False,
        budget: Optional[Budget] = None,
    ) -> bool:
        return self.coflat_report(p, grid, max_a, conical, budget).coflat


flatness_service = FlatnessService()
