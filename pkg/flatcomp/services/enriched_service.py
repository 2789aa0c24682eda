"""
Enriched-category core: spaces, modules, homs, weighted limits and colimits
and Kan extensions over a base quantale.

Formulas use categorical meets and joins only. Over RPLUS a categorical meet
is a numeric maximum and a join a numeric minimum, so for instance
``presheaf_hom`` is the maximum over x of max(N(x) - M(x), 0).
"""

from typing import List, Optional, Sequence, Tuple, Union

import structlog
from pydantic import ValidationError

from ..errors import InvalidModuleError, PreconditionError, SpaceMismatchError
from ..models.module import Diagram, LeftModule, RightModule
from ..models.quantale import ZERO, Base, QValue
from ..models.space import Map, Space
from .quantale_service import BaseOps, quantale_service

logger = structlog.get_logger(__name__)

Values = Union[LeftModule, RightModule, Sequence[QValue]]


def _values(v: Values) -> Tuple[QValue, ...]:
    if isinstance(v, (LeftModule, RightModule)):
        return v.values
    return tuple(v)


def _base_of(*families: Values, base: Optional[Base] = None) -> Base:
    if base is not None:
        return base
    for family in families:
        if isinstance(family, (LeftModule, RightModule)):
            return family.space.base
        for value in family:
            return value.base
    raise PreconditionError("empty index needs an explicit base")


class EnrichedService:
    def ops(self, space: Space) -> BaseOps:
        return quantale_service.ops(space.base)

    def same_space(self, *modules) -> Space:
        space = modules[0].space
        for m in modules[1:]:
            if m.space != space:
                raise SpaceMismatchError(f"modules live on '{space.name}' and '{m.space.name}'")
        return space

    # -- spaces --------------------------------------------------------------

    def validate_space(self, s: Space) -> List[str]:
        """
        Describe every broken unit or triangle law of a space.

        Returns:
            Empty list when the space is a valid enriched category
        """
        ops = self.ops(s)
        violations = []
        n = s.size
        for i in range(n):
            if s.di(i, i) != ops.unit:
                violations.append(f"unit ({s.points[i]}): d({s.points[i]},{s.points[i]})={s.di(i, i)}")
        for i in range(n):
            for j in range(n):
                for k in range(n):
                    xy, yz, xz = s.di(i, j), s.di(j, k), s.di(i, k)
                    if ops.leq(ops.tensor(yz, xy), xz):
                        continue
                    x, y, z = s.points[i], s.points[j], s.points[k]
                    if s.base is Base.RPLUS:
                        violations.append(f"triangle ({x},{y},{z}): {xz} > {xy}+{yz}")
                    else:
                        violations.append(f"transitivity ({x},{y},{z}): {x}<={y} and {y}<={z} but not {x}<={z}")
        return violations

    def require_valid(self, s: Space) -> Space:
        """Return s unchanged, or raise PreconditionError naming its first broken law"""
        violations = self.validate_space(s)
        if violations:
            raise PreconditionError(f"space '{s.name}' is not valid: {violations[0]}")
        return s

    def underlying_preorder(self, s: Space) -> Space:
        if s.base is Base.BOOL:
            return s
        matrix = tuple(tuple(QValue.boolean(v == ZERO) for v in row) for row in s.matrix)
        return Space(name=f"{s.name}_0", base=Base.BOOL, points=s.points, matrix=matrix)

    def identity_map(self, s: Space) -> Map:
        return Map(source=s, target=s, assignment=s.points)

    def constant_map(self, source: Space, target: Space, point: str) -> Map:
        target.index(point)
        return Map(source=source, target=target, assignment=tuple(point for _ in source.points))

    # -- modules -------------------------------------------------------------

    def left_module(self, s: Space, values: Sequence[QValue], name: str = "") -> LeftModule:
        try:
            return LeftModule(space=s, values=tuple(values), name=name)
        except ValidationError as e:
            raise InvalidModuleError(e.errors()[0]["msg"].removeprefix("Value error, "))

    def right_module(self, s: Space, values: Sequence[QValue], name: str = "") -> RightModule:
        try:
            return RightModule(space=s, values=tuple(values), name=name)
        except ValidationError as e:
            raise InvalidModuleError(e.errors()[0]["msg"].removeprefix("Value error, "))

    def yoneda(self, s: Space, a: str) -> LeftModule:
        """The representable presheaf A(-, a)"""
        return LeftModule(space=s, values=s.column(a), name=f"y({a})")

    def representable_right(self, s: Space, a: str) -> RightModule:
        """The representable copresheaf A(a, -)"""
        return RightModule(space=s, values=s.row(a), name=f"A({a},-)")

    def presheaf_hom(self, m: LeftModule, n: LeftModule) -> QValue:
        """Meet over x of hom(M(x), N(x))"""
        s = self.same_space(m, n)
        ops = self.ops(s)
        return ops.meet(ops.hom(a, b) for a, b in zip(m.values, n.values))

    def implies(self, m: LeftModule, n: LeftModule) -> bool:
        """M => N: the presheaf hom from M to N is the unit"""
        return self.presheaf_hom(m, n) == self.ops(m.space).unit

    def compose_modules(self, m: LeftModule, n: RightModule) -> QValue:
        """N * M: join over x of M(x) (x) N(x)"""
        s = self.same_space(m, n)
        ops = self.ops(s)
        return ops.join(ops.tensor(a, b) for a, b in zip(m.values, n.values))

    def lan_yoneda_apply(self, m: LeftModule, g: RightModule) -> QValue:
        """Left Kan extension of M along Yoneda, evaluated at G"""
        return self.compose_modules(m, g)

    def weighted_limit(self, p: Values, g: Values, base: Optional[Base] = None) -> QValue:
        """{P, G}: meet over k of hom(P(k), G(k))"""
        pv, gv = _values(p), _values(g)
        if len(pv) != len(gv):
            raise SpaceMismatchError(f"weight has {len(pv)} entries, diagram has {len(gv)}")
        ops = quantale_service.ops(_base_of(p, g, base=base))
        return ops.meet(ops.hom(a, b) for a, b in zip(pv, gv))

    def weighted_colimit(self, f: Values, g: Values, base: Optional[Base] = None) -> QValue:
        """F * G: join over k of F(k) (x) G(k)"""
        fv, gv = _values(f), _values(g)
        if len(fv) != len(gv):
            raise SpaceMismatchError(f"weight has {len(fv)} entries, diagram has {len(gv)}")
        ops = quantale_service.ops(_base_of(f, g, base=base))
        return ops.join(ops.tensor(a, b) for a, b in zip(fv, gv))

    def pointwise_join(self, modules: Sequence[LeftModule]) -> LeftModule:
        """Pointwise join of a nonempty family (numeric minimum over RPLUS)"""
        if not modules:
            raise PreconditionError("pointwise join of an empty family")
        s = self.same_space(*modules)
        ops = self.ops(s)
        values = tuple(ops.join(m.values[i] for m in modules) for i in range(s.size))
        return LeftModule(space=s, values=values)

    # -- Kan extensions ------------------------------------------------------

    def kan_extend(self, m: LeftModule, g: Map) -> LeftModule:
        """b -> join over x of M(x) (x) B(b, Gx)"""
        if g.source != m.space:
            raise SpaceMismatchError(f"map starts at '{g.source.name}', module lives on '{m.space.name}'")
        b_space = g.target
        ops = self.ops(b_space)
        images = [b_space.index(y) for y in g.assignment]
        values = tuple(
            ops.join(ops.tensor(mx, b_space.di(b, gx)) for mx, gx in zip(m.values, images))
            for b in range(b_space.size)
        )
        return LeftModule(space=b_space, values=values)

    def restrict(self, m: LeftModule, g: Map) -> LeftModule:
        """x -> M(Gx)"""
        if g.target != m.space:
            raise SpaceMismatchError(f"map ends at '{g.target.name}', module lives on '{m.space.name}'")
        return LeftModule(space=g.source, values=tuple(m(y) for y in g.assignment))

    # -- adjoints ------------------------------------------------------------

    def right_adjoint_candidate(self, m: LeftModule) -> RightModule:
        """a -> presheaf_hom(M, A(-, a)); the only possible right adjoint of M"""
        s = m.space
        ops = self.ops(s)
        values = tuple(
            ops.meet(ops.hom(m.values[x], s.di(x, a)) for x in range(s.size))
            for a in range(s.size)
        )
        return RightModule(space=s, values=values)

    def is_adjoint_pair(self, m: LeftModule, n: RightModule) -> bool:
        s = self.same_space(m, n)
        ops = self.ops(s)
        if self.compose_modules(m, n) != ops.unit:
            return False
        return all(
            ops.leq(ops.tensor(n.values[y], m.values[x]), s.di(x, y))
            for x in range(s.size)
            for y in range(s.size)
        )

    def is_left_adjoint(self, m: LeftModule) -> bool:
        return self.is_adjoint_pair(m, self.right_adjoint_candidate(m))

    def hom_via_adjoint(self, m: LeftModule, n: LeftModule) -> QValue:
        """
        Presheaf hom out of a left adjoint, computed as a composite with its
        right adjoint: join over x of N~(x) (x) N(x).

        Raises:
            PreconditionError: M has no right adjoint
        """
        self.same_space(m, n)
        adjoint = self.right_adjoint_candidate(m)
        if not self.is_adjoint_pair(m, adjoint):
            raise PreconditionError(f"module {m.describe()} is not a left adjoint")
        return self.compose_modules(n, adjoint)

    # -- instance checks -----------------------------------------------------

    def lkcoc_check(self, modules: Sequence[LeftModule], g: Map) -> bool:
        """Kan extension along G commutes with pointwise joins of a nonempty family"""
        joined = self.kan_extend(self.pointwise_join(modules), g)
        separate = self.pointwise_join([self.kan_extend(m, g) for m in modules])
        return joined.values == separate.values

    def _cone_vertex(self, ops: BaseOps, weight: Sequence[QValue], values: Sequence[QValue]) -> QValue:
        """Greatest v with v (x) P(k) <= G(k) for every k, searched among the candidate homs"""
        candidates = [ops.terminal, ops.initial, *(ops.hom(w, x) for w, x in zip(weight, values))]
        cones = [v for v in candidates if all(ops.leq(ops.tensor(v, w), x) for w, x in zip(weight, values))]
        return next(v for v in cones if all(ops.leq(c, v) for c in cones))

    def _cocone_vertex(self, ops: BaseOps, weight: Sequence[QValue], values: Sequence[QValue]) -> QValue:
        """Least v with F(a) (x) G(a) <= v for every a"""
        candidates = [ops.terminal, ops.initial, *(ops.tensor(w, x) for w, x in zip(weight, values))]
        cocones = [v for v in candidates if all(ops.leq(ops.tensor(w, x), v) for w, x in zip(weight, values))]
        return next(v for v in cocones if all(ops.leq(v, c) for c in cocones))

    def commutation_check(
        self, f: LeftModule, p: RightModule, h: Diagram, ops: Optional[BaseOps] = None
    ) -> bool:
        """
        For a two-variable diagram G(k, a), "F * - preserves {P, G}" holds
        exactly when "{P, -} preserves F * G".

        The first condition is read off the meet/join formulas, the second
        off the cone and cocone conditions, which only use tensor and order.
        Passing ops evaluates both over a replacement quantale.
        """
        if h.target != f.space or h.index != p.space:
            raise SpaceMismatchError("diagram does not match the weights")
        ops = ops or self.ops(f.space)
        a_size, k_size = h.target.size, h.index.size

        def limit(weight, values):
            return ops.meet(ops.hom(w, x) for w, x in zip(weight, values))

        def colimit(weight, values):
            return ops.join(ops.tensor(w, x) for w, x in zip(weight, values))

        f_preserves = colimit(f.values, [limit(p.values, h.column(a)) for a in range(a_size)]) == limit(
            p.values, [colimit(f.values, h.rows[k]) for k in range(k_size)]
        )

        colimits = [self._cocone_vertex(ops, f.values, h.rows[k]) for k in range(k_size)]
        limits = [self._cone_vertex(ops, p.values, h.column(a)) for a in range(a_size)]
        p_preserves = self._cone_vertex(ops, p.values, colimits) == self._cocone_vertex(ops, f.values, limits)

        if f_preserves != p_preserves:
            logger.debug("commutation_mismatch", f=f.describe(), p=p.describe(), f_preserves=f_preserves)
        return f_preserves == p_preserves


enriched_service = EnrichedService()
