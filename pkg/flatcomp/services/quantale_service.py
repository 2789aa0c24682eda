"""
Base quantale operations for flatcomp.

Two realizations of one contract:
- RPLUS: extended non-negative rationals, reversed order, tensor = addition
- BOOL: truth values, tensor = conjunction, hom = implication

Order vocabulary is categorical throughout. ``leq(x, y)`` means there is an
arrow x -> y; over RPLUS that is ``x >= y`` numerically, so the categorical
meet is the numeric maximum and the categorical join the numeric minimum.
"""

from abc import ABC, abstractmethod
from fractions import Fraction
from typing import Iterable, List, Optional, Sequence

from ..errors import BaseMismatchError, PreconditionError
from ..models.quantale import FALSE, INF, TRUE, ZERO, Base, QValue, parse_value


class BaseOps(ABC):
    """One base quantale: tensor, residual hom and categorical meets and joins"""

    base: Base

    @property
    @abstractmethod
    def unit(self) -> QValue:
        """Tensor unit, which is also the terminal element for both bases"""

    @property
    @abstractmethod
    def initial(self) -> QValue:
        """Value of the empty join"""

    @property
    def terminal(self) -> QValue:
        """Value of the empty meet"""
        return self.unit

    @abstractmethod
    def tensor(self, x: QValue, y: QValue) -> QValue:
        pass

    @abstractmethod
    def hom(self, x: QValue, y: QValue) -> QValue:
        pass

    @abstractmethod
    def leq(self, x: QValue, y: QValue) -> bool:
        """Categorical order: True when there is an arrow x -> y"""

    def meet(self, xs: Iterable[QValue]) -> QValue:
        result = self.terminal
        for x in xs:
            if not self.leq(result, x):
                result = x
        return result

    def join(self, xs: Iterable[QValue]) -> QValue:
        result = self.initial
        for x in xs:
            if not self.leq(x, result):
                result = x
        return result

    def parse(self, token: str) -> QValue:
        return parse_value(token, self.base)

    @abstractmethod
    def default_grid(self) -> List[QValue]:
        """Value grid used for oracle enumerations"""


class RPlusOps(BaseOps):
    base = Base.RPLUS

    @property
    def unit(self) -> QValue:
        return ZERO

    @property
    def initial(self) -> QValue:
        return INF

    def tensor(self, x: QValue, y: QValue) -> QValue:
        if x.value is None or y.value is None:
            return INF
        return QValue(Base.RPLUS, x.value + y.value)

    def hom(self, x: QValue, y: QValue) -> QValue:
        # least z with z + x >= y
        if y.value is None:
            return ZERO if x.value is None else INF
        if x.value is None:
            return ZERO
        return QValue(Base.RPLUS, max(y.value - x.value, Fraction(0)))

    def leq(self, x: QValue, y: QValue) -> bool:
        if x.value is None:
            return True
        if y.value is None:
            return False
        return x.value >= y.value

    def default_grid(self) -> List[QValue]:
        return [QValue.rplus(0), QValue.rplus(Fraction(1, 2)), QValue.rplus(1), QValue.rplus(2), INF]


class BoolOps(BaseOps):
    base = Base.BOOL

    @property
    def unit(self) -> QValue:
        return TRUE

    @property
    def initial(self) -> QValue:
        return FALSE

    def tensor(self, x: QValue, y: QValue) -> QValue:
        return QValue.boolean(x == TRUE and y == TRUE)

    def hom(self, x: QValue, y: QValue) -> QValue:
        return QValue.boolean(x == FALSE or y == TRUE)

    def leq(self, x: QValue, y: QValue) -> bool:
        return x == FALSE or y == TRUE

    def default_grid(self) -> List[QValue]:
        return [FALSE, TRUE]


class QuantaleService:
    """
    Base-agnostic entry points. Every binary operation checks that its
    arguments share a base and raises BaseMismatchError otherwise.
    """

    def __init__(self, rplus_ops: Optional[BaseOps] = None):
        self._ops = {Base.RPLUS: rplus_ops or RPlusOps(), Base.BOOL: BoolOps()}

    def ops(self, base: Base) -> BaseOps:
        return self._ops[base]

    def _common_base(self, xs: Sequence[QValue], base: Optional[Base] = None) -> Base:
        bases = {x.base for x in xs}
        if base is not None:
            bases.add(base)
        if len(bases) > 1:
            raise BaseMismatchError(f"values over different bases: {sorted(b.value for b in bases)}")
        if not bases:
            raise BaseMismatchError("empty family needs an explicit base")
        return bases.pop()

    def tensor(self, x: QValue, y: QValue) -> QValue:
        return self.ops(self._common_base([x, y])).tensor(x, y)

    def hom(self, x: QValue, y: QValue) -> QValue:
        return self.ops(self._common_base([x, y])).hom(x, y)

    def leq(self, x: QValue, y: QValue) -> bool:
        return self.ops(self._common_base([x, y])).leq(x, y)

    def meet_fin(self, xs: Sequence[QValue], base: Optional[Base] = None) -> QValue:
        """Categorical meet; over RPLUS the numeric maximum, empty gives the terminal 0"""
        xs = list(xs)
        return self.ops(self._common_base(xs, base)).meet(xs)

    def join_fin(self, xs: Sequence[QValue], base: Optional[Base] = None) -> QValue:
        """Categorical join; over RPLUS the numeric minimum, empty gives infinity"""
        xs = list(xs)
        return self.ops(self._common_base(xs, base)).join(xs)

    def residuation_holds(self, x: QValue, y: QValue, z: QValue) -> bool:
        """z (x) x -> y  iff  z -> hom(x, y)"""
        ops = self.ops(self._common_base([x, y, z]))
        return ops.leq(ops.tensor(z, x), y) == ops.leq(z, ops.hom(x, y))

    def check_fac_r(self, v: QValue, values: Sequence[QValue]) -> bool:
        """
        hom(v, inf_i a_i) == inf_i hom(v, a_i) for a nonempty family over RPLUS.

        Args:
            v: Scalar in the first argument of hom
            values: Nonempty family a_i

        Returns:
            Whether both sides are equal
        """
        values = list(values)
        if not values:
            raise PreconditionError("check_fac_r needs a nonempty family")
        if self._common_base(values + [v]) is not Base.RPLUS:
            raise BaseMismatchError("check_fac_r is an rplus identity")
        ops = self.ops(Base.RPLUS)
        lhs = ops.hom(v, ops.join(values))
        rhs = ops.join(ops.hom(v, a) for a in values)
        return lhs == rhs

    def check_fac_r2(self, v: QValue, values: Sequence[QValue]) -> Optional[bool]:
        """
        hom(sup_i a_i, v) == inf_i hom(a_i, v) over RPLUS.

        Returns None when the side condition fails: the supremum is infinite
        but no member of the family is.
        """
        values = list(values)
        if not values:
            raise PreconditionError("check_fac_r2 needs a nonempty family")
        if self._common_base(values + [v]) is not Base.RPLUS:
            raise BaseMismatchError("check_fac_r2 is an rplus identity")
        ops = self.ops(Base.RPLUS)
        sup = ops.meet(values)
        if sup.is_inf and not any(a.is_inf for a in values):
            return None
        lhs = ops.hom(sup, v)
        rhs = ops.join(ops.hom(a, v) for a in values)
        return lhs == rhs


quantale_service = QuantaleService()
