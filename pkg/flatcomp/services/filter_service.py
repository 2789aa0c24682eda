"""
Filters on finite spaces and their modules.

Operations:
- lim+ / lim- of a point function along a filter, M- and M+ of a filter
- sublevel sets and the filter of a module
- weakly flat / flat / Cauchy, by closed form and by the tolerance definitions
- closure, the morphism relation and convergence
- direct images, suprema and representatives
- forward Cauchy sequences and the sequence constructions that separate a
  filter from a module and interpolate between two sequences

Over RPLUS lim+ is the maximum over the generator and lim- the minimum.
"""

from fractions import Fraction
from itertools import combinations
from typing import Dict, List, Optional, Sequence, Tuple, Union

import structlog

from ..errors import PreconditionError, SpaceMismatchError
from ..models.filter import EvPeriodicSequence, PrincipalFilter, Tolerance
from ..models.module import LeftModule, RightModule
from ..models.quantale import ZERO, Base, QValue
from ..models.space import Map, Space
from .enriched_service import enriched_service
from .flatness_service import flatness_service
from .quantale_service import quantale_service

logger = structlog.get_logger(__name__)

PointFunction = Union[LeftModule, RightModule, Sequence[QValue]]


def _numeric(s: Space, i: int, j: int) -> Optional[Fraction]:
    """Distance as an extended rational; bool spaces read 1 as 0 and 0 as infinity"""
    v = s.di(i, j)
    if s.base is Base.BOOL:
        return Fraction(0) if v.value == 1 else None
    return v.value


def _within(d: Optional[Fraction], eps: Fraction) -> bool:
    return d is not None and d <= eps


class FilterService:
    def make(self, s: Space, generator: Sequence[str], name: str = "") -> PrincipalFilter:
        return PrincipalFilter(space=s, generator=tuple(generator), name=name)

    def _unit(self, s: Space) -> QValue:
        return quantale_service.ops(s.base).unit

    def _same(self, f1: PrincipalFilter, f2: PrincipalFilter) -> Space:
        if f1.space != f2.space:
            raise SpaceMismatchError(f"filters live on '{f1.space.name}' and '{f2.space.name}'")
        return f1.space

    def _zero_subset(self, s: Space, values: Sequence[QValue]) -> Tuple[str, ...]:
        unit = self._unit(s)
        return tuple(p for p, v in zip(s.points, values) if v == unit)

    # -- limits along a filter -----------------------------------------------

    def lim_plus(self, f: PrincipalFilter, t: PointFunction) -> QValue:
        values = t.values if isinstance(t, (LeftModule, RightModule)) else tuple(t)
        ops = quantale_service.ops(f.space.base)
        return ops.meet(values[i] for i in f.indices)

    def lim_minus(self, f: PrincipalFilter, t: PointFunction) -> QValue:
        values = t.values if isinstance(t, (LeftModule, RightModule)) else tuple(t)
        ops = quantale_service.ops(f.space.base)
        return ops.join(values[i] for i in f.indices)

    def m_minus(self, f: PrincipalFilter) -> LeftModule:
        """x -> lim- over the filter of A(x, -)"""
        s = f.space
        ops = quantale_service.ops(s.base)
        values = tuple(ops.join(s.di(x, y) for y in f.indices) for x in range(s.size))
        return LeftModule(space=s, values=values, name=f"M-{f.label()}")

    def m_plus(self, f: PrincipalFilter) -> LeftModule:
        """x -> lim+ over the filter of A(x, -)"""
        s = f.space
        ops = quantale_service.ops(s.base)
        values = tuple(ops.meet(s.di(x, y) for y in f.indices) for x in range(s.size))
        return LeftModule(space=s, values=values, name=f"M+{f.label()}")

    def gamma(self, m: LeftModule, eps: QValue) -> Tuple[str, ...]:
        """Sublevel set {x : M(x) <= eps}"""
        ops = quantale_service.ops(m.space.base)
        if eps == ZERO:
            raise PreconditionError("gamma needs a positive tolerance")
        return tuple(p for p, v in zip(m.space.points, m.values) if ops.leq(eps, v))

    def filter_of_module(self, m: LeftModule) -> PrincipalFilter:
        """
        The filter generated by the sublevel sets of M. Below the least nonzero
        value of M every sublevel set is the zero set, so that is the generator.

        Raises:
            PreconditionError: M has an empty zero set
        """
        zero = flatness_service.zero_set(m)
        if not zero:
            raise PreconditionError(f"module {m.describe()} has no kernel, its sublevel sets do not form a filter")
        return PrincipalFilter(space=m.space, generator=zero)

    def neighborhood(self, s: Space, x: str) -> PrincipalFilter:
        return self.filter_of_module(enriched_service.yoneda(s, x))

    def contains_filter(self, f1: PrincipalFilter, f2: PrincipalFilter) -> bool:
        """f1 as a family of sets contains f2: generator of f1 inside generator of f2"""
        self._same(f1, f2)
        return set(f1.generator) <= set(f2.generator)

    # -- hierarchy -----------------------------------------------------------

    def is_weakly_flat(self, f: PrincipalFilter) -> bool:
        """lim+ over f of M-(f) is the unit"""
        return self.lim_plus(f, self.m_minus(f)) == self._unit(f.space)

    def is_flat(self, f: PrincipalFilter) -> bool:
        """The generator is directed in the zero-preorder"""
        return flatness_service.is_directed(f.space, f.generator)

    def is_cauchy(self, f: PrincipalFilter) -> bool:
        s = f.space
        ops = quantale_service.ops(s.base)
        return ops.meet(s.di(x, y) for x in f.indices for y in f.indices) == ops.unit

    def is_lim_plus_filter(self, f: PrincipalFilter) -> bool:
        """lim+ over f of M+(f) is the unit"""
        return self.lim_plus(f, self.m_plus(f)) == self._unit(f.space)

    def tolerances(self, s: Space) -> List[Fraction]:
        """{d, d/2 : d a positive finite distance of s} together with 1, ascending"""
        values = {Fraction(1)}
        for i in range(s.size):
            for j in range(s.size):
                d = _numeric(s, i, j)
                if d is not None and d > 0:
                    values.update({d, d / 2})
        return sorted(values)

    def _p_property(self, s: Space, f: Sequence[int], eps: Fraction, generator: Sequence[int]) -> bool:
        """Every x in f has some y in the generator with A(x, y) <= eps"""
        return all(any(_within(_numeric(s, x, y), eps) for y in generator) for x in f)

    def _q_property(self, s: Space, f: Sequence[int], eps: Fraction, generator: Sequence[int]) -> bool:
        """Every finite family in f has a common y in the generator within eps"""
        for size in range(1, len(f) + 1):
            for family in combinations(f, size):
                if not any(all(_within(_numeric(s, x, y), eps) for x in family) for y in generator):
                    return False
        return True

    def is_weakly_flat_by_definition(self, f: PrincipalFilter) -> bool:
        s, b = f.space, f.indices
        return all(self._p_property(s, b, eps, b) for eps in self.tolerances(s))

    def is_flat_by_definition(self, f: PrincipalFilter) -> bool:
        s, b = f.space, f.indices
        return all(self._q_property(s, b, eps, b) for eps in self.tolerances(s))

    def is_cauchy_by_definition(self, f: PrincipalFilter) -> bool:
        s, b = f.space, f.indices
        return all(
            all(_within(_numeric(s, x, y), eps) for x in b for y in b)
            for eps in self.tolerances(s)
        )

    # -- closure and morphisms -----------------------------------------------

    def closure(self, f: PrincipalFilter) -> PrincipalFilter:
        """Generator Z(M-(f)): points at distance zero from the generator"""
        return PrincipalFilter(space=f.space, generator=self._zero_subset(f.space, self.m_minus(f).values))

    def is_closed(self, f: PrincipalFilter) -> bool:
        return self.closure(f).generator == f.generator

    def filter_morphism(self, f1: PrincipalFilter, f2: PrincipalFilter) -> bool:
        """f1 -> f2: the generator of f1 lies in the closure of f2"""
        self._same(f1, f2)
        return set(f1.generator) <= set(self.closure(f2).generator)

    def converges(self, f: PrincipalFilter, x: str) -> bool:
        return self.convergence_routes(f, x)[0]

    def convergence_routes(self, f: PrincipalFilter, x: str) -> Tuple[bool, bool, bool]:
        """
        Three independent evaluations of "f converges to x":
        f contains the neighborhood filter of x; M-(f) => A(-, x);
        A(x, a) is below lim+ over f of A(-, a) in the categorical order for every a.
        """
        s = f.space
        ops = quantale_service.ops(s.base)
        by_neighborhood = self.contains_filter(f, self.neighborhood(s, x))
        by_module = enriched_service.implies(self.m_minus(f), enriched_service.yoneda(s, x))
        by_limits = all(ops.leq(s.d(x, a), self.lim_plus(f, s.column(a))) for a in s.points)
        return by_neighborhood, by_module, by_limits

    def representative(self, f: PrincipalFilter) -> Tuple[str, ...]:
        """All x0 with A(x0, a) = lim+ over f of A(-, a) for every a; empty when none"""
        s = f.space
        target = tuple(self.lim_plus(f, s.column(a)) for a in s.points)
        return tuple(p for p in s.points if s.row(p) == target)

    def direct_image(self, f: PrincipalFilter, g: Map) -> PrincipalFilter:
        if g.source != f.space:
            raise SpaceMismatchError(f"map starts at '{g.source.name}', filter lives on '{f.space.name}'")
        return PrincipalFilter(space=g.target, generator=g.target.ordered({g(p) for p in f.generator}))

    def image_routes_agree(self, f: PrincipalFilter, g: Map) -> bool:
        """Kan extension of M-(f) along g equals M- of the direct image"""
        extended = enriched_service.kan_extend(self.m_minus(f), g)
        return extended.values == self.m_minus(self.direct_image(f, g)).values

    def sup_filters(self, filters: Sequence[PrincipalFilter]) -> PrincipalFilter:
        """Least upper bound under reverse inclusion: the union of the generators"""
        if not filters:
            raise PreconditionError("supremum of an empty family of filters")
        s = filters[0].space
        for f in filters[1:]:
            self._same(filters[0], f)
        return PrincipalFilter(space=s, generator=s.ordered({p for f in filters for p in f.generator}))

    def colimit_closed(self, filters: Sequence[PrincipalFilter]) -> PrincipalFilter:
        return self.closure(self.sup_filters(filters))

    # -- reflection checks ---------------------------------------------------

    def zoi_check(self, f: PrincipalFilter, m: LeftModule) -> bool:
        """f contains F(M) iff M-(f) => M"""
        zero = flatness_service.zero_set(m)
        contains = set(f.generator) <= set(zero)
        implies = enriched_service.implies(self.m_minus(f), m)
        return contains == implies

    def fac22_check(self, f: PrincipalFilter, n: RightModule) -> bool:
        """N * M-(f) sits above lim- over f of N, with equality for weakly flat f"""
        ops = quantale_service.ops(f.space.base)
        composite = enriched_service.compose_modules(self.m_minus(f), n)
        limit = self.lim_minus(f, n)
        if not ops.leq(composite, limit):
            return False
        return composite == limit or not self.is_weakly_flat(f)

    def dwflat2_check(self, f: PrincipalFilter, m: LeftModule) -> bool:
        """hom(M-(f), M) against lim+ over f of M: below it, equal for weakly flat f"""
        ops = quantale_service.ops(f.space.base)
        hom = enriched_service.presheaf_hom(self.m_minus(f), m)
        limit = self.lim_plus(f, m)
        if not ops.leq(limit, hom):
            return False
        return hom == limit or not self.is_weakly_flat(f)

    def colimit_along_map(self, f: PrincipalFilter, g: Map) -> Tuple[str, ...]:
        """Points c of the target with B(c, b) = hom(M-(f), B(G-, b)) for every b"""
        b_space = g.target
        m = self.m_minus(f)
        homs = tuple(
            enriched_service.presheaf_hom(m, enriched_service.restrict(enriched_service.yoneda(b_space, b), g))
            for b in b_space.points
        )
        return tuple(c for c in b_space.points if b_space.row(c) == homs)

    def image_hom_check(self, f: PrincipalFilter, g: Map, m: LeftModule) -> bool:
        """hom(M-(G f), M) equals hom(M-(f), M restricted along G)"""
        lhs = enriched_service.presheaf_hom(self.m_minus(self.direct_image(f, g)), m)
        rhs = enriched_service.presheaf_hom(self.m_minus(f), enriched_service.restrict(m, g))
        return lhs == rhs

    def liminf_check(self, f: PrincipalFilter, parts: Sequence[PrincipalFilter], t: PointFunction) -> bool:
        """lim- over f equals the join of lim- over the parts, when f is their supremum"""
        if not self.sup_filters(parts).same_generator(f):
            raise PreconditionError("filter is not the supremum of the given parts")
        ops = quantale_service.ops(f.space.base)
        return self.lim_minus(f, t) == ops.join(self.lim_minus(p, t) for p in parts)

    # -- distances between filters -------------------------------------------

    def wf_hom_routes(self, f1: PrincipalFilter, f2: PrincipalFilter) -> Tuple[QValue, QValue, Optional[QValue]]:
        """
        Distance from f1 to f2 three ways: presheaf hom of the M- modules,
        lim+ over f1 of lim- over f2 of A, and (for Cauchy f1 only) the
        swapped double limit.
        """
        s = self._same(f1, f2)
        if not (self.is_weakly_flat(f1) and self.is_weakly_flat(f2)):
            raise PreconditionError("distance is defined between weakly flat filters")
        ops = quantale_service.ops(s.base)
        hom = enriched_service.presheaf_hom(self.m_minus(f1), self.m_minus(f2))
        double = ops.meet(ops.join(s.di(x, y) for y in f2.indices) for x in f1.indices)
        swapped = None
        if self.is_cauchy(f1):
            swapped = ops.join(ops.meet(s.di(x, y) for x in f1.indices) for y in f2.indices)
        return hom, double, swapped

    def wf_hom_distance(self, f1: PrincipalFilter, f2: PrincipalFilter) -> QValue:
        return self.wf_hom_routes(f1, f2)[0]

    def operand_distance(
        self, first: Union[PrincipalFilter, LeftModule], second: Union[PrincipalFilter, LeftModule]
    ) -> QValue:
        """Distance between filters or modules; a filter stands for its M- module"""
        if isinstance(first, PrincipalFilter) and isinstance(second, PrincipalFilter):
            return self.wf_hom_distance(first, second)
        m1 = self.m_minus(first) if isinstance(first, PrincipalFilter) else first
        m2 = self.m_minus(second) if isinstance(second, PrincipalFilter) else second
        return enriched_service.presheaf_hom(m1, m2)

    def wf_hom_check(self, f1: PrincipalFilter, f2: PrincipalFilter) -> bool:
        hom, double, swapped = self.wf_hom_routes(f1, f2)
        return hom == double and (swapped is None or swapped == hom)

    # -- sequences -----------------------------------------------------------

    def is_forward_cauchy(self, seq: EvPeriodicSequence) -> bool:
        """The cycle values form a zero clique"""
        s = seq.space
        unit = self._unit(s)
        cycle = [s.index(p) for p in set(seq.cycle)]
        return all(s.di(u, v) == unit for u in cycle for v in cycle)

    def is_forward_cauchy_by_definition(self, seq: EvPeriodicSequence) -> bool:
        """For every tolerance some N makes A(x_n, x_m) small for all m >= n >= N"""
        s = seq.space
        period = len(seq.cycle)
        horizon = len(seq.preperiod) + period
        for eps in self.tolerances(s):
            found = False
            for start in range(horizon + 1):
                # past the preperiod two full cycles cover every pair that recurs
                end = max(start, len(seq.preperiod)) + 2 * period
                window = [s.index(seq.at(n)) for n in range(start, end)]
                if all(
                    _within(_numeric(s, window[n], window[m]), eps)
                    for n in range(len(window))
                    for m in range(n, len(window))
                ):
                    found = True
                    break
            if not found:
                return False
        return True

    def tail_filter(self, seq: EvPeriodicSequence) -> PrincipalFilter:
        return PrincipalFilter(space=seq.space, generator=seq.space.ordered(set(seq.cycle)))

    def _least_positive(self, s: Space) -> Optional[Fraction]:
        positive = [d for d in (_numeric(s, i, j) for i in range(s.size) for j in range(s.size)) if d]
        return min(positive) if positive else None

    def _periodic(self, s: Space, run: List[str], steady_from: int) -> EvPeriodicSequence:
        """Split a run whose last entry repeats an entry at or after steady_from"""
        last = run[-1]
        first = run.index(last, steady_from)
        return EvPeriodicSequence(space=s, preperiod=tuple(run[:first]), cycle=tuple(run[first:-1]))

    def separating_sequence(
        self, f: PrincipalFilter, m: LeftModule, tolerance: Optional[Tolerance] = None
    ) -> EvPeriodicSequence:
        """
        Forward Cauchy sequence y with tail(y) -> f and M-(tail(y)) not => M.

        Picks the first x where M-(f)(x) is numerically below M(x), a gap
        alpha with A(x, y0) + alpha < M(x), then greedily the first y_(n+1) in
        the generator with A(y_n, y_(n+1)) <= alpha * 2^(-2-n). Once the
        tolerance drops under every positive distance the choice only depends
        on y_n, so the run is cut at the first repeat.

        Raises:
            PreconditionError: M-(f) => M, so there is no separating witness
        """
        s = f.space
        if m.space != s:
            raise SpaceMismatchError("module and filter live on different spaces")
        if s.base is not Base.RPLUS:
            raise PreconditionError("sequence constructions need an rplus space")
        low = self.m_minus(f)
        ops = quantale_service.ops(s.base)
        witness = next((x for x in range(s.size) if not ops.leq(low.values[x], m.values[x])), None)
        if witness is None:
            raise PreconditionError("no separating witness: M-(f) => M")
        target = m.values[witness]
        if tolerance is not None:
            alpha = tolerance.alpha.value
        elif target.is_inf:
            alpha = Fraction(1)
        else:
            alpha = (target.value - low.values[witness].value) / 2

        def below_target(d: Optional[Fraction]) -> bool:
            return d is not None and (target.is_inf or d + alpha < target.value)

        gen = f.indices
        y = next((y for y in gen if below_target(_numeric(s, witness, y))), None)
        if y is None:
            raise PreconditionError(f"gap {alpha} is too wide for witness {s.points[witness]}")
        least = self._least_positive(s)
        run = [s.points[y]]
        seen: Dict[str, int] = {}
        n = 0
        while True:
            eps = alpha * Fraction(1, 2 ** (2 + n))
            steady = least is None or eps < least
            if steady:
                if run[-1] in seen:
                    break
                seen[run[-1]] = len(run) - 1
            y = next(c for c in gen if _within(_numeric(s, y, c), eps))
            run.append(s.points[y])
            n += 1
        steady_from = min(seen.values())
        seq = self._periodic(s, run, steady_from)
        logger.debug("separating_sequence", witness=s.points[witness], sequence=seq.describe())
        return seq

    def interpolate_sequences(
        self, s1: EvPeriodicSequence, s2: EvPeriodicSequence, f: PrincipalFilter
    ) -> EvPeriodicSequence:
        """
        Forward Cauchy z with s1 -> z, s2 -> z and z -> f, for a flat f that
        both sequences map to.

        Blocks X_i, Y_i of each sequence are cut at positions N_i where the
        tail lies within 2^-i of the generator; z_(i+1) is the first generator
        point within 2^(1-i) of X_i, Y_i and z_i.
        """
        s = f.space
        if s1.space != s or s2.space != s:
            raise SpaceMismatchError("sequences and filter live on different spaces")
        if not self.is_flat(f):
            raise PreconditionError(f"filter {f.label()} is not flat")
        for seq in (s1, s2):
            if not self.filter_morphism(self.tail_filter(seq), f):
                raise PreconditionError(f"sequence {seq.describe()} does not map to {f.label()}")
        gen = f.indices
        least = self._least_positive(s)

        def cuts(seq: EvPeriodicSequence):
            period = len(seq.cycle)
            previous = None
            i = 0
            while True:
                eps = Fraction(1, 2 ** i)
                start = 0
                while not self._p_property(s, [s.index(p) for p in seq.tail_values(start)], eps, gen):
                    start += 1
                if previous is not None:
                    start = max(start, previous + period)
                yield start
                previous = start
                i += 1

        def blocks(seq: EvPeriodicSequence):
            positions = cuts(seq)
            lo = next(positions)
            for hi in positions:
                yield lo, {s.index(seq.at(n)) for n in range(lo, hi)}
                lo = hi

        xs, ys = blocks(s1), blocks(s2)
        z = gen[0]
        run = [s.points[z]]
        seen: Dict[str, int] = {}
        i = 0
        while True:
            x_lo, x_block = next(xs)
            y_lo, y_block = next(ys)
            eps = Fraction(2, 2 ** i)
            steady = (
                (least is None or eps < least)
                and x_lo >= len(s1.preperiod)
                and y_lo >= len(s2.preperiod)
            )
            if steady:
                if run[-1] in seen:
                    break
                seen[run[-1]] = len(run) - 1
            anchors = x_block | y_block | {z}
            z = next(
                (c for c in gen if all(_within(_numeric(s, w, c), eps) for w in anchors)),
                None,
            )
            if z is None:
                raise PreconditionError("no interpolating point within tolerance")
            run.append(s.points[z])
            i += 1
        seq = self._periodic(s, run, min(seen.values()))
        logger.debug("interpolated_sequence", sequence=seq.describe())
        return seq

    def charffil_finite_check(self, s: Space) -> bool:
        """Every closed flat filter is the closure of one of its points"""
        for size in range(1, s.size + 1):
            for generator in combinations(s.points, size):
                f = PrincipalFilter(space=s, generator=generator)
                if not (self.is_closed(f) and self.is_flat(f)):
                    continue
                if not any(self.closure(PrincipalFilter(space=s, generator=(y,))).generator == f.generator for y in generator):
                    return False
        return True

    def all_filters(self, s: Space) -> List[PrincipalFilter]:
        """Every filter of s, by generator size then declared order"""
        return [
            PrincipalFilter(space=s, generator=generator)
            for size in range(1, s.size + 1)
            for generator in combinations(s.points, size)
        ]

    def principality_check(self, n: int) -> bool:
        """
        Every proper, upward closed, intersection-stable family of subsets of
        an n-point set is the up-closure of its intersection.
        """
        if n > 4:
            raise PreconditionError("principality check is limited to 4 points")
        subsets = 1 << n
        full = subsets - 1
        for family in range(1, 1 << subsets):
            if family & 1:
                continue  # contains the empty set
            members = [a for a in range(subsets) if family >> a & 1]
            if any(not family >> (a | (1 << i)) & 1 for a in members for i in range(n)):
                continue
            if any(not family >> (a & b) & 1 for a in members for b in members):
                continue
            core = full
            for a in members:
                core &= a
            if any((a & core == core) != bool(family >> a & 1) for a in range(subsets)):
                return False
        return True


filter_service = FilterService()
