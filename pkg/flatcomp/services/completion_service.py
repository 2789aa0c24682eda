"""
Completions of finite spaces.

Every completion is materialized as a finite Space whose points are modules
on the source, named by their generator subset (``{a,b}``), with the
presheaf hom as distance. Supported notions:
- p1: closed nonempty subsets (weakly flat filters)
- p2: closed directed subsets (flat filters)
- p0: left adjoint modules
- free / downsets / ideals / dmn over bool: all downsets, nonempty downsets,
  nonempty directed downsets and Dedekind-MacNeille cuts

The service also extends maps into complete targets, checks the universal
property by exhaustive search, and builds the hyperspace of a symmetric space.
"""

from itertools import combinations, product
from typing import Dict, List, Optional, Sequence, Tuple

import structlog
from cachetools import LRUCache

from ..config import settings
from ..errors import BaseMismatchError, BudgetExceededError, PreconditionError
from ..models.completion import Completion, Notion, PointRow
from ..models.filter import PrincipalFilter
from ..models.quantale import INF, ZERO, Base, QValue
from ..models.report import UniversalPropertyReport
from ..models.space import Map, Space, is_nonexpansive, subset_name
from .budget import Budget
from .filter_service import filter_service
from .flatness_service import flatness_service
from .quantale_service import quantale_service

logger = structlog.get_logger(__name__)

Subset = Tuple[str, ...]


class CompletionService:
    def __init__(self):
        self._cache: LRUCache = LRUCache(maxsize=settings.cache_size)

    # -- generator enumeration -----------------------------------------------

    def _subsets(self, s: Space, include_empty: bool = False) -> List[Subset]:
        start = 0 if include_empty else 1
        return [c for size in range(start, s.size + 1) for c in combinations(s.points, size)]

    def _is_downset(self, s: Space, subset: Subset) -> bool:
        unit = quantale_service.ops(s.base).unit
        members = set(subset)
        return all(x in members for y in subset for x in s.points if s.d(x, y) == unit)

    def _dmn_cuts(self, s: Space) -> List[Subset]:
        unit = quantale_service.ops(s.base).unit

        def upper(subset):
            return [u for u in s.points if all(s.d(x, u) == unit for x in subset)]

        def lower(subset):
            return [l for l in s.points if all(s.d(l, x) == unit for x in subset)]

        cuts = {s.ordered(lower(upper(subset))) for subset in self._subsets(s, include_empty=True)}
        return sorted(cuts, key=lambda c: (len(c), [s.index(p) for p in c]))

    def generators(self, s: Space, notion: Notion) -> List[Subset]:
        """Generator subsets of the completion points, in output order"""
        if notion.bool_only and s.base is not Base.BOOL:
            raise BaseMismatchError(f"notion '{notion.value}' needs a bool space")
        if notion is Notion.DMN:
            return self._dmn_cuts(s)
        if notion is Notion.FREE:
            return [c for c in self._subsets(s, include_empty=True) if self._is_downset(s, c)]
        if notion is Notion.DOWNSETS:
            return [c for c in self._subsets(s) if self._is_downset(s, c)]
        if notion is Notion.IDEALS:
            return [
                c for c in self._subsets(s)
                if self._is_downset(s, c) and flatness_service.is_directed(s, c)
            ]
        closed = []
        for subset in self._subsets(s):
            f = PrincipalFilter(space=s, generator=subset)
            if not filter_service.is_closed(f):
                continue
            if notion is Notion.P2 and not filter_service.is_flat(f):
                continue
            if notion is Notion.P0 and not flatness_service.is_p0_flat(filter_service.m_minus(f)):
                continue
            closed.append(subset)
        return closed

    def _module_values(self, s: Space, subset: Subset) -> Tuple[QValue, ...]:
        """x -> join over y in subset of A(x, y); the empty join for the empty subset"""
        ops = quantale_service.ops(s.base)
        return tuple(ops.join(s.d(x, y) for y in subset) for x in s.points)

    # -- completions ---------------------------------------------------------

    def complete(self, s: Space, notion: Notion) -> Completion:
        """
        Materialize the completion of s for a notion.

        Args:
            s: Source space
            notion: Completion notion

        Returns:
            Completion with result space, embedding and point table

        Raises:
            BaseMismatchError: a bool-only notion on an rplus space
        """
        key = (s.fingerprint(), s.name, notion)
        if key in self._cache:
            return self._cache[key]
        ops = quantale_service.ops(s.base)
        generators = self.generators(s, notion)
        rows = [PointRow(name=subset_name(list(g)), generator=g, values=self._module_values(s, g)) for g in generators]
        matrix = tuple(
            tuple(ops.meet(ops.hom(a, b) for a, b in zip(r1.values, r2.values)) for r2 in rows)
            for r1 in rows
        )
        result = Space(name=f"{s.name}_{notion.value}", base=s.base, points=tuple(r.name for r in rows), matrix=matrix)
        by_values = {r.values: r.name for r in rows}
        assignment = tuple(by_values[s.column(a)] for a in s.points)
        embedding = Map(source=s, target=result, assignment=assignment)
        completion = Completion(source=s, notion=notion, result=result, embedding=embedding, table=tuple(rows))
        self._cache[key] = completion
        logger.info("completion_built", space=s.name, notion=notion.value, points=result.size)
        return completion

    def dedekind_macneille(self, p: Space) -> Completion:
        return self.complete(p, Notion.DMN)

    # -- completeness --------------------------------------------------------

    def _filter_admissible(self, f: PrincipalFilter, notion: Notion) -> bool:
        if notion in (Notion.P1, Notion.DOWNSETS):
            return filter_service.is_weakly_flat(f)
        if notion in (Notion.P2, Notion.IDEALS):
            return filter_service.is_flat(f)
        if notion is Notion.P0:
            return filter_service.is_cauchy(f)
        raise PreconditionError(f"completeness is not defined for notion '{notion.value}'")

    def admissible_filters(self, s: Space, notion: Notion) -> List[PrincipalFilter]:
        return [f for f in filter_service.all_filters(s) if self._filter_admissible(f, notion)]

    def completeness_witness(self, s: Space, notion: Notion) -> Optional[PrincipalFilter]:
        """First admissible filter without a representative, or None"""
        for f in self.admissible_filters(s, notion):
            if not filter_service.representative(f):
                return f
        return None

    def is_complete(self, s: Space, notion: Notion) -> bool:
        return self.completeness_witness(s, notion) is None

    # -- extensions ----------------------------------------------------------

    def _extension_assignment(self, f: Map, c: Completion) -> Tuple[str, ...]:
        preimage = {}
        for x, p in zip(c.source.points, c.embedding.assignment):
            preimage.setdefault(p, (x,))
        assignment = []
        for row in c.table:
            generator = preimage.get(row.name, row.generator)
            image = filter_service.direct_image(PrincipalFilter(space=c.source, generator=generator), f)
            reps = filter_service.representative(image)
            if not reps:
                raise PreconditionError(f"filter {image.label()} has no representative in '{f.target.name}'")
            assignment.append(reps[0])
        return tuple(assignment)

    def extend_map(self, f: Map, c: Completion) -> Map:
        """
        Extend f: A -> B along the embedding of A into its completion, sending
        each completion point to the first representative of the direct image
        of its filter.

        Raises:
            PreconditionError: B is not complete for the notion
        """
        if f.source != c.source:
            raise PreconditionError("map does not start at the completed space")
        witness = self.completeness_witness(f.target, c.notion)
        if witness is not None:
            raise PreconditionError(
                f"target '{f.target.name}' is not {c.notion.value}-complete: filter {witness.label()} has no representative"
            )
        return Map(source=c.result, target=f.target, assignment=self._extension_assignment(f, c))

    def _iso(self, s: Space, x: str, y: str) -> bool:
        unit = quantale_service.ops(s.base).unit
        return s.d(x, y) == unit and s.d(y, x) == unit

    def _preserves_representatives(
        self, c_space: Space, target: Space, assignment: Dict[str, str], filters: Sequence[Tuple[PrincipalFilter, str]]
    ) -> Optional[str]:
        for phi, rep in filters:
            image = PrincipalFilter(space=target, generator=target.ordered({assignment[p] for p in phi.generator}))
            if assignment[rep] not in filter_service.representative(image):
                return phi.label()
        return None

    def check_universal_property(
        self, a: Space, notion: Notion, b: Space, budget: Optional[Budget] = None
    ) -> UniversalPropertyReport:
        """
        For every nonexpansive f: A -> B, check that the extension exists,
        commutes with the embedding, preserves representatives, and is the only
        such map up to zero-isomorphism.

        A budget overrun stops the enumeration and flags the report as partial.
        """
        budget = budget or Budget(what="universal property candidates")
        report = UniversalPropertyReport(source=a.name, target=b.name, notion=notion.value)
        c = self.complete(a, notion)
        witness = self.completeness_witness(b, notion)
        if witness is not None:
            raise PreconditionError(f"target '{b.name}' is not {notion.value}-complete: {witness.label()}")

        # embedded points first, so representative constraints fire early
        embedded = list(dict.fromkeys(c.embedding.assignment))
        order = embedded + [p for p in c.result.points if p not in embedded]
        position = {p: i for i, p in enumerate(order)}
        filters = []
        for phi in self.admissible_filters(c.result, notion):
            reps = filter_service.representative(phi)
            if reps:
                filters.append((phi, reps[0]))
        by_last: Dict[int, List[Tuple[PrincipalFilter, str]]] = {}
        for phi, rep in filters:
            last = max(position[p] for p in phi.generator + (rep,))
            by_last.setdefault(last, []).append((phi, rep))

        try:
            for images in product(b.points, repeat=a.size):
                budget.tick()
                if not is_nonexpansive(a, b, images):
                    continue
                report.maps += 1
                f = Map(source=a, target=b, assignment=images)
                label = ",".join(images)
                ext = dict(zip(c.result.points, self._extension_assignment(f, c)))
                if not is_nonexpansive(c.result, b, tuple(ext[p] for p in c.result.points)):
                    report.failures.append(f"f=({label}): extension is not nonexpansive")
                    continue
                if not all(self._iso(b, ext[c.embedding(x)], f(x)) for x in a.points):
                    report.failures.append(f"f=({label}): extension does not restrict to f")
                    continue
                bad = self._preserves_representatives(c.result, b, ext, filters)
                if bad is not None:
                    report.failures.append(f"f=({label}): extension loses the representative of {bad}")
                    continue
                report.extended += 1
                rivals = self._rival_extensions(c, f, b, ext, order, by_last, budget)
                if rivals:
                    report.failures.append(f"f=({label}): {rivals} other representative-preserving extensions")
                else:
                    report.unique += 1
        except BudgetExceededError:
            report.partial = True
            logger.warning("universal_property_partial", source=a.name, target=b.name, budget=budget.limit)
        return report

    def _rival_extensions(self, c, f: Map, b: Space, ext: Dict[str, str], order, by_last, budget: Budget) -> int:
        """Count representative-preserving nonexpansive maps extending f that differ from ext"""
        result = c.result
        forced: Dict[str, List[str]] = {}
        for x in c.source.points:
            p = c.embedding(x)
            options = [y for y in b.points if self._iso(b, y, f(x))]
            forced[p] = [y for y in forced.get(p, options) if y in options]
        ops = quantale_service.ops(b.base)
        assignment: Dict[str, str] = {}
        rivals = 0

        def extend(k: int) -> None:
            nonlocal rivals
            if k == len(order):
                if any(not self._iso(b, assignment[p], ext[p]) for p in order):
                    rivals += 1
                return
            p = order[k]
            for y in forced.get(p, b.points):
                budget.tick()
                ok = all(
                    ops.leq(result.d(p, q), b.d(y, assignment[q])) and ops.leq(result.d(q, p), b.d(assignment[q], y))
                    for q in order[:k]
                ) and ops.leq(result.d(p, p), b.d(y, y))
                if not ok:
                    continue
                assignment[p] = y
                if self._preserves_representatives(result, b, assignment, by_last.get(k, [])) is None:
                    extend(k + 1)
                del assignment[p]

        extend(0)
        return rivals

    # -- constructions -------------------------------------------------------

    def zero_quotient(self, s: Space) -> Space:
        """Identify mutually zero points; each class is named by its members"""
        classes: List[List[str]] = []
        for p in s.points:
            for cls in classes:
                if self._iso(s, cls[0], p):
                    cls.append(p)
                    break
            else:
                classes.append([p])
        names = tuple(subset_name(cls) for cls in classes)
        matrix = tuple(tuple(s.d(c1[0], c2[0]) for c2 in classes) for c1 in classes)
        return Space(name=f"{s.name}_zq", base=s.base, points=names, matrix=matrix)

    def find_isomorphism(self, s1: Space, s2: Space) -> Optional[Dict[str, str]]:
        """
        Distance-preserving bijection from s1 to s2, or None.

        Candidates are pruned by a per-point signature (diagonal plus sorted
        row and column values) before backtracking.
        """
        if s1.base is not s2.base or s1.size != s2.size:
            return None
        if s1.points == s2.points and s1.matrix == s2.matrix:
            return dict(zip(s1.points, s2.points))

        def signature(s: Space, p: str):
            return (
                s.d(p, p),
                tuple(sorted(s.row(p), key=QValue.sort_key)),
                tuple(sorted(s.column(p), key=QValue.sort_key)),
            )

        sig2 = {q: signature(s2, q) for q in s2.points}
        candidates = {p: [q for q in s2.points if sig2[q] == signature(s1, p)] for p in s1.points}
        mapping: Dict[str, str] = {}
        used = set()

        def search(k: int) -> bool:
            if k == s1.size:
                return True
            p = s1.points[k]
            for q in candidates[p]:
                if q in used:
                    continue
                if all(s1.d(p, r) == s2.d(q, mapping[r]) and s1.d(r, p) == s2.d(mapping[r], q) for r in mapping):
                    mapping[p] = q
                    used.add(q)
                    if search(k + 1):
                        return True
                    del mapping[p]
                    used.discard(q)
            return False

        return dict(mapping) if search(0) else None

    def isomorphic(self, s1: Space, s2: Space) -> bool:
        return self.find_isomorphism(s1, s2) is not None

    def hausdorff_construction(self, s: Space) -> Space:
        """
        Nonempty subsets of the Cauchy completion of a symmetric space with
        d(X, Y) = max over x in X of min over y in Y of d(x, y).

        Raises:
            PreconditionError: s is not symmetric
        """
        if not s.is_symmetric():
            raise PreconditionError(f"space '{s.name}' is not symmetric")
        cauchy = self.complete(s, Notion.P0)
        ops = quantale_service.ops(s.base)
        subsets = self._subsets(cauchy.result)
        names = []
        for subset in subsets:
            members = {p for name in subset for p in cauchy.row(name).generator}
            names.append(subset_name(list(s.ordered(members))))
        matrix = tuple(
            tuple(
                ops.meet(ops.join(cauchy.result.d(x, y) for y in ys) for x in xs)
                for ys in subsets
            )
            for xs in subsets
        )
        return Space(name=f"{s.name}_hausdorff", base=s.base, points=tuple(names), matrix=matrix)

    def bool_bridge(self, p: Space) -> Space:
        """Encode a preorder as an rplus space: related pairs at 0, others at infinity"""
        if p.base is not Base.BOOL:
            raise BaseMismatchError(f"space '{p.name}' is not over bool")
        matrix = tuple(tuple(ZERO if v.value == 1 else INF for v in row) for row in p.matrix)
        return Space(name=f"{p.name}_r", base=Base.RPLUS, points=p.points, matrix=matrix)

    def bridge_check(self, p: Space, notion: Notion) -> bool:
        """The rplus completion of the encoded preorder matches the encoded bool completion"""
        counterpart = {Notion.P1: Notion.DOWNSETS, Notion.P2: Notion.IDEALS}
        if notion not in counterpart:
            raise PreconditionError("bridge check covers p1 and p2")
        encoded = self.complete(self.bool_bridge(p), notion).result
        via_bool = self.bool_bridge(self.complete(p, counterpart[notion]).result)
        return self.isomorphic(encoded, via_bool)


completion_service = CompletionService()
