"""
Property sweeps over the generated catalog.

Each suite walks one family of identities over every catalog input and
counts checks and failures. A suite whose enumeration passes the budget is
marked skipped instead of passing. Only the quantale sampling is random
(seeded); everything else is exhaustive over the catalog.

Suites:
- quantale: residuation, laws, fac_r
- enriched: space_laws, yoneda, hom_via_adjoint, kan_extension, commutation
- flatness: flatness_oracle, flatness_hierarchy, bool_flatness
- filters: filter_hierarchy, filter_definitions, reflection, bridge_theorems,
  symmetric_filters, wf_hom, convergence, closure, images, sequences
- completions: embedding, completeness, cauchy_completion, inclusions,
  hausdorff, bool_completions, dmn, universal_property
"""

import random
from fractions import Fraction
from itertools import combinations, product
from typing import Callable, Dict, Iterable, List, Optional, Sequence, Tuple

import structlog

from ..config import settings
from ..errors import BudgetExceededError
from ..models.completion import Notion
from ..models.filter import EvPeriodicSequence, PrincipalFilter
from ..models.module import Diagram, LeftModule, RightModule
from ..models.quantale import FALSE, INF, TRUE, ZERO, Base, QValue
from ..models.report import FlatnessClass, SuiteResult, VerifyReport
from ..models.space import Map, Space
from .budget import Budget
from .catalog_service import Catalog, catalog_service
from .completion_service import completion_service
from .enriched_service import enriched_service
from .filter_service import filter_service
from .flatness_service import flatness_service
from .quantale_service import QuantaleService, RPlusOps

logger = structlog.get_logger(__name__)

RESIDUATION_SAMPLES = 10_000
COMMUTATION_GRID = (ZERO, QValue.rplus(1), INF)


class AbsHomOps(RPlusOps):
    """RPLUS with hom(x, y) = |y - x| on finite values; only used to mutation-test the suites"""

    def hom(self, x: QValue, y: QValue) -> QValue:
        if x.value is None or y.value is None:
            return super().hom(x, y)
        return QValue(Base.RPLUS, abs(y.value - x.value))


MUTATIONS = {"hom": AbsHomOps}


class Sweep:
    """Counts the checks of one suite and keeps the first failure"""

    def __init__(self, name: str, budget_limit: int):
        self.result = SuiteResult(name=name)
        self.budget_limit = budget_limit

    def check(self, ok: bool, label: Callable[[], str]) -> None:
        self.result.checked += 1
        if not ok:
            self.result.failures += 1
            if self.result.first_failure is None:
                self.result.first_failure = label()

    def budget(self) -> Budget:
        return Budget(self.budget_limit, what=self.result.name)


class Universe:
    """Everything a run enumerates, built once per run"""

    def __init__(self, catalog: Catalog, quantale: QuantaleService):
        self.catalog = catalog
        self.quantale = quantale
        self.rplus = catalog_service.rplus_spaces(catalog)
        self.bool_points = min(4, catalog.max_points + 1)
        self.bools = catalog_service.bool_preorders(self.bool_points)
        self.small_bools = [p for p in self.bools if p.size <= 3]
        self.spaces = self.rplus + self.bools
        self.small = [s for s in self.rplus if s.size <= 2]
        self._modules: Dict[Tuple, List[LeftModule]] = {}
        self._rights: Dict[Tuple, List[RightModule]] = {}

    def modules(self, s: Space) -> List[LeftModule]:
        key = (s.name, s.fingerprint())
        if key not in self._modules:
            self._modules[key] = catalog_service.left_modules(s)
        return self._modules[key]

    def rights(self, s: Space) -> List[RightModule]:
        key = (s.name, s.fingerprint())
        if key not in self._rights:
            self._rights[key] = catalog_service.right_modules(s)
        return self._rights[key]

    def filters(self, s: Space) -> List[PrincipalFilter]:
        return filter_service.all_filters(s)


def _fmt(values: Iterable[QValue]) -> str:
    return "[" + ",".join(str(v) for v in values) + "]"


class VerificationService:
    def __init__(self):
        self.suites: List[Tuple[str, Callable[[Universe, Sweep], None]]] = [
            ("residuation", self.residuation),
            ("quantale_laws", self.quantale_laws),
            ("fac_r", self.fac_r),
            ("space_laws", self.space_laws),
            ("yoneda", self.yoneda),
            ("hom_via_adjoint", self.hom_via_adjoint),
            ("kan_extension", self.kan_extension),
            ("commutation", self.commutation),
            ("flatness_oracle", self.flatness_oracle),
            ("flatness_hierarchy", self.flatness_hierarchy),
            ("bool_flatness", self.bool_flatness),
            ("filter_hierarchy", self.filter_hierarchy),
            ("filter_definitions", self.filter_definitions),
            ("reflection", self.reflection),
            ("bridge_theorems", self.bridge_theorems),
            ("symmetric_filters", self.symmetric_filters),
            ("wf_hom", self.wf_hom),
            ("convergence", self.convergence),
            ("closure", self.closure),
            ("images", self.images),
            ("sequences", self.sequences),
            ("completion_embedding", self.completion_embedding),
            ("completion_completeness", self.completion_completeness),
            ("cauchy_completion", self.cauchy_completion),
            ("completion_inclusions", self.completion_inclusions),
            ("hausdorff", self.hausdorff),
            ("bool_completions", self.bool_completions),
            ("dmn", self.dmn),
            ("universal_property", self.universal_property),
        ]

    @property
    def suite_names(self) -> List[str]:
        return [name for name, _ in self.suites]

    def run(
        self,
        catalog: Optional[Catalog] = None,
        budget: Optional[int] = None,
        mutations: Sequence[str] = (),
        only: Optional[Sequence[str]] = None,
    ) -> VerifyReport:
        """
        Run the property suites over the catalog.

        Args:
            catalog: Generation parameters (defaults apply when omitted)
            budget: Per-enumeration cap, defaulting to settings.budget
            mutations: Names from MUTATIONS to inject into the quantale and commutation suites
            only: Restrict the run to these suite names

        Returns:
            VerifyReport with one SuiteResult per suite, in run order

        Raises:
            ValueError: unknown suite or mutation name
        """
        catalog = catalog or Catalog()
        limit = budget if budget is not None else settings.budget
        unknown = [m for m in mutations if m not in MUTATIONS]
        if unknown:
            raise ValueError(f"unknown mutation: {', '.join(unknown)}")
        if only:
            missing = [n for n in only if n not in self.suite_names]
            if missing:
                raise ValueError(f"unknown suite: {', '.join(missing)}")
        rplus_ops = MUTATIONS[mutations[0]]() if mutations else None
        universe = Universe(catalog, QuantaleService(rplus_ops))

        results: List[SuiteResult] = []
        for name, suite in self.suites:
            if only and name not in only:
                continue
            sweep = Sweep(name, limit)
            try:
                suite(universe, sweep)
            except BudgetExceededError as e:
                sweep.result.skipped = True
                sweep.result.first_failure = sweep.result.first_failure or str(e)
            logger.info(
                "suite_finished",
                suite=name,
                checked=sweep.result.checked,
                failures=sweep.result.failures,
                skipped=sweep.result.skipped,
            )
            results.append(sweep.result)

        parameters = catalog.describe()
        parameters["budget"] = str(limit)
        if mutations:
            parameters["mutations"] = ",".join(mutations)
        return VerifyReport(parameters=parameters, suites=results)

    def format_report(self, report: VerifyReport) -> str:
        lines = ["suite\tchecked\tfailures\tstatus"]
        for s in report.suites:
            status = "skipped" if s.skipped else ("ok" if s.failures == 0 else "FAIL")
            lines.append(f"{s.name}\t{s.checked}\t{s.failures}\t{status}")
        for s in report.suites:
            if s.first_failure:
                lines.append(f"# {s.name}: {s.first_failure}")
        return "\n".join(lines) + "\n"

    # -- quantale ------------------------------------------------------------

    def _sampler(self, seed: int) -> Callable[[], QValue]:
        rng = random.Random(seed)

        def sample() -> QValue:
            r = rng.random()
            if r < 0.1:
                return INF
            if r < 0.2:
                return ZERO
            return QValue.rplus(Fraction(rng.randint(0, 40), rng.randint(1, 8)))

        return sample

    def residuation(self, u: Universe, sweep: Sweep) -> None:
        q = u.quantale
        sample = self._sampler(u.catalog.seed)
        for _ in range(RESIDUATION_SAMPLES):
            x, y, z = sample(), sample(), sample()
            sweep.check(q.residuation_holds(x, y, z), lambda: f"x={x} y={y} z={z}")
        for x, y, z in product((FALSE, TRUE), repeat=3):
            sweep.check(q.residuation_holds(x, y, z), lambda: f"bool x={x} y={y} z={z}")

    def quantale_laws(self, u: Universe, sweep: Sweep) -> None:
        rplus = list(u.catalog.grid) + [QValue.rplus(Fraction(1, 2)), QValue.rplus(Fraction(3, 2)), QValue.rplus(Fraction(7, 3))]
        for base, values in ((Base.RPLUS, rplus), (Base.BOOL, [FALSE, TRUE])):
            ops = u.quantale.ops(base)
            for x in values:
                sweep.check(ops.tensor(x, ops.unit) == x == ops.tensor(ops.unit, x), lambda: f"unit law at {x}")
                sweep.check(ops.hom(ops.unit, x) == x, lambda: f"hom(unit, {x}) = {ops.hom(ops.unit, x)}")
            for x, y in product(values, repeat=2):
                sweep.check(ops.tensor(x, y) == ops.tensor(y, x), lambda: f"tensor not commutative at {x},{y}")
            for x, y, z in product(values, repeat=3):
                sweep.check(
                    ops.tensor(ops.tensor(x, y), z) == ops.tensor(x, ops.tensor(y, z)),
                    lambda: f"tensor not associative at {x},{y},{z}",
                )
                if ops.leq(x, y):
                    sweep.check(ops.leq(ops.hom(y, z), ops.hom(x, z)), lambda: f"hom not antitone: {x}->{y}, second {z}")
                    sweep.check(ops.leq(ops.hom(z, x), ops.hom(z, y)), lambda: f"hom not monotone: {x}->{y}, first {z}")
            sweep.check(ops.meet([]) == ops.terminal and ops.join([]) == ops.initial, lambda: f"empty {base.value} conventions")

    def fac_r(self, u: Universe, sweep: Sweep) -> None:
        q = u.quantale
        sample = self._sampler(u.catalog.seed + 1)
        rng = random.Random(u.catalog.seed + 2)
        for _ in range(RESIDUATION_SAMPLES):
            v = sample()
            family = [sample() for _ in range(rng.randint(1, 4))]
            sweep.check(q.check_fac_r(v, family), lambda: f"fac_r v={v} family={_fmt(family)}")
            verdict = q.check_fac_r2(v, family)
            if verdict is not None:
                sweep.check(verdict, lambda: f"fac_r2 v={v} family={_fmt(family)}")

    # -- enriched core -------------------------------------------------------

    def space_laws(self, u: Universe, sweep: Sweep) -> None:
        for s in u.spaces:
            violations = enriched_service.validate_space(s)
            sweep.check(not violations, lambda: f"{s.name}: {violations[0]}")

    def yoneda(self, u: Universe, sweep: Sweep) -> None:
        for s in u.spaces:
            for a, b in product(s.points, repeat=2):
                hom = enriched_service.presheaf_hom(enriched_service.yoneda(s, a), enriched_service.yoneda(s, b))
                sweep.check(hom == s.d(a, b), lambda: f"{s.name}: hom(y{a}, y{b})={hom}, distance {s.d(a, b)}")

    def hom_via_adjoint(self, u: Universe, sweep: Sweep) -> None:
        for s in u.spaces:
            modules = u.modules(s)
            for m in modules:
                if not enriched_service.is_left_adjoint(m):
                    continue
                for n in modules:
                    lhs = enriched_service.hom_via_adjoint(m, n)
                    rhs = enriched_service.presheaf_hom(m, n)
                    sweep.check(lhs == rhs, lambda: f"{s.name}: M={m.describe()} N={n.describe()}: {lhs} vs {rhs}")

    def _map_pairs(self, u: Universe) -> Iterable[Tuple[Space, Space, Map]]:
        targets = list(u.small)
        if u.catalog.max_points >= 3:
            targets.append(catalog_service.t3())
        for a in u.small:
            for b in targets:
                for g in catalog_service.maps(a, b):
                    yield a, b, g

    def kan_extension(self, u: Universe, sweep: Sweep) -> None:
        for a in u.small:
            identity = enriched_service.identity_map(a)
            for m in u.modules(a):
                same = enriched_service.kan_extend(m, identity)
                sweep.check(same.values == m.values, lambda: f"{a.name}: Kan along identity moved {m.describe()}")
        for a, b, g in self._map_pairs(u):
            label = f"{a.name}->{b.name} {','.join(g.assignment)}"
            for x in a.points:
                extended = enriched_service.kan_extend(enriched_service.yoneda(a, x), g)
                sweep.check(
                    extended.values == b.column(g(x)),
                    lambda: f"{label}: Kan of y{x} is {extended.describe()}",
                )
            modules = u.modules(a)
            for m in modules:
                try:
                    extended = enriched_service.kan_extend(m, g)
                except ValueError as e:
                    sweep.check(False, lambda: f"{label}: Kan of {m.describe()} invalid: {e}")
                    continue
                back = enriched_service.restrict(extended, g)
                sweep.check(enriched_service.implies(m, back), lambda: f"{label}: unit fails for {m.describe()}")
                for notion in (FlatnessClass.P1, FlatnessClass.P2, FlatnessClass.P0):
                    if flatness_service.is_flat(m, notion):
                        sweep.check(
                            flatness_service.kan_preserves_flatness(m, g, notion),
                            lambda: f"{label}: Kan of {notion.value}-flat {m.describe()} is not flat",
                        )
            if a.size <= 2 and b.size <= 2:
                for m1, m2 in combinations(modules, 2):
                    sweep.check(
                        enriched_service.lkcoc_check([m1, m2], g),
                        lambda: f"{label}: Kan does not commute with the join of {m1.describe()} and {m2.describe()}",
                    )

    def commutation(self, u: Universe, sweep: Sweep) -> None:
        shapes = [catalog_service.one_point(), catalog_service.z2(), catalog_service.d2(), catalog_service.asymmetric_pair()]
        for a_space, k_space in product(shapes, repeat=2):
            weights = catalog_service.left_modules(a_space, COMMUTATION_GRID)
            index_weights = catalog_service.right_modules(k_space, COMMUTATION_GRID)
            rows = [r.values for r in catalog_service.right_modules(a_space, COMMUTATION_GRID)]
            diagrams = []
            for choice in product(rows, repeat=k_space.size):
                try:
                    diagrams.append(Diagram(index=k_space, target=a_space, rows=choice))
                except ValueError:
                    continue
            for f, p, h in product(weights, index_weights, diagrams):
                sweep.check(
                    enriched_service.commutation_check(f, p, h, ops=u.quantale.ops(Base.RPLUS)),
                    lambda: f"A={a_space.name} K={k_space.name} F={f.describe()} P={p.describe()} H={h.rows}",
                )

    # -- flatness ------------------------------------------------------------

    def flatness_oracle(self, u: Universe, sweep: Sweep) -> None:
        for s in u.rplus:
            for m in u.modules(s):
                for notion in (FlatnessClass.P1, FlatnessClass.P2, FlatnessClass.P0):
                    closed = flatness_service.is_flat(m, notion)
                    report = flatness_service.oracle_report(m, notion, budget=sweep.budget())
                    sweep.check(
                        closed == report.flat,
                        lambda: f"{s.name} {m.describe()} {notion.value}: closed form {closed}, oracle {report.flat} ({report.witness})",
                    )

    def flatness_hierarchy(self, u: Universe, sweep: Sweep) -> None:
        for s in u.spaces:
            for x in s.points:
                y = enriched_service.yoneda(s, x)
                for notion in (FlatnessClass.P0, FlatnessClass.P1, FlatnessClass.P2):
                    sweep.check(flatness_service.is_flat(y, notion), lambda: f"{s.name}: y{x} not {notion.value}-flat")
            p1_flat = []
            for m in u.modules(s):
                p0 = flatness_service.is_p0_flat(m)
                p2 = flatness_service.is_p2_flat(m)
                p1 = flatness_service.is_p1_flat(m)
                sweep.check((not p0 or p2) and (not p2 or p1), lambda: f"{s.name} {m.describe()}: p0={p0} p2={p2} p1={p1}")
                if p1:
                    p1_flat.append(m)
            for m1, m2 in combinations(p1_flat, 2):
                joined = enriched_service.pointwise_join([m1, m2])
                sweep.check(
                    flatness_service.is_p1_flat(joined),
                    lambda: f"{s.name}: join of {m1.describe()} and {m2.describe()} not p1-flat",
                )

    def bool_flatness(self, u: Universe, sweep: Sweep) -> None:
        for p in u.bools:
            for m in u.modules(p):
                zero = flatness_service.zero_set(m)
                downset = bool(zero) and all(x in zero for y in zero for x in p.points if p.d(x, y) == TRUE)
                ideal = downset and flatness_service.is_directed(p, zero)
                sweep.check(flatness_service.is_p1_flat(m) == downset, lambda: f"{p.name} {m.describe()}: p1 vs downset")
                sweep.check(flatness_service.is_p2_flat(m) == ideal, lambda: f"{p.name} {m.describe()}: p2 vs ideal")

    # -- filters -------------------------------------------------------------

    def filter_hierarchy(self, u: Universe, sweep: Sweep) -> None:
        for s in u.spaces:
            for f in u.filters(s):
                cauchy, flat, weak = filter_service.is_cauchy(f), filter_service.is_flat(f), filter_service.is_weakly_flat(f)
                sweep.check((not cauchy or flat) and (not flat or weak), lambda: f"{s.name} {f.label()}: {cauchy} {flat} {weak}")

    def _sequences(self, s: Space) -> List[EvPeriodicSequence]:
        cycles = [(p,) for p in s.points] + [(p, q) for p, q in product(s.points, repeat=2) if p != q]
        pres = [()] + [(p,) for p in s.points]
        return [EvPeriodicSequence(space=s, preperiod=pre, cycle=cycle) for pre in pres for cycle in cycles]

    def filter_definitions(self, u: Universe, sweep: Sweep) -> None:
        for s in u.spaces:
            for f in u.filters(s):
                pairs = (
                    ("weakly flat", filter_service.is_weakly_flat(f), filter_service.is_weakly_flat_by_definition(f)),
                    ("flat", filter_service.is_flat(f), filter_service.is_flat_by_definition(f)),
                    ("cauchy", filter_service.is_cauchy(f), filter_service.is_cauchy_by_definition(f)),
                )
                for what, closed, by_definition in pairs:
                    sweep.check(closed == by_definition, lambda: f"{s.name} {f.label()} {what}: {closed} vs {by_definition}")
            for seq in self._sequences(s):
                closed = filter_service.is_forward_cauchy(seq)
                by_definition = filter_service.is_forward_cauchy_by_definition(seq)
                sweep.check(closed == by_definition, lambda: f"{s.name} {seq.describe()}: {closed} vs {by_definition}")

    def reflection(self, u: Universe, sweep: Sweep) -> None:
        for s in u.spaces:
            filters = u.filters(s)
            modules = u.modules(s)
            kernels = [m for m in modules if flatness_service.zero_set(m)]
            for f in filters:
                low = filter_service.m_minus(f)
                if filter_service.is_weakly_flat(f):
                    back = filter_service.filter_of_module(low)
                    sweep.check(filter_service.contains_filter(f, back), lambda: f"{s.name} {f.label()}: unit fails")
                for m in modules:
                    sweep.check(filter_service.zoi_check(f, m), lambda: f"{s.name} {f.label()} {m.describe()}: zoi")
                    sweep.check(filter_service.dwflat2_check(f, m), lambda: f"{s.name} {f.label()} {m.describe()}: hom vs lim+")
                for n in u.rights(s):
                    sweep.check(filter_service.fac22_check(f, n), lambda: f"{s.name} {f.label()} {n.describe()}: fac22")
                if len(f.generator) >= 2:
                    self._liminf(s, f, modules, sweep)
                for g in filters:
                    if filter_service.contains_filter(f, g):
                        sweep.check(
                            enriched_service.implies(low, filter_service.m_minus(g)),
                            lambda: f"{s.name}: {f.label()} contains {g.label()} but M- does not follow",
                        )
            for m in kernels:
                counit = filter_service.m_minus(filter_service.filter_of_module(m))
                sweep.check(enriched_service.implies(counit, m), lambda: f"{s.name} {m.describe()}: counit")
                iso = counit.values == m.values
                sweep.check(iso == flatness_service.is_p1_flat(m), lambda: f"{s.name} {m.describe()}: counit iso {iso}")
            for m1, m2 in product(kernels, repeat=2):
                if enriched_service.implies(m1, m2):
                    sweep.check(
                        filter_service.contains_filter(filter_service.filter_of_module(m1), filter_service.filter_of_module(m2)),
                        lambda: f"{s.name}: {m1.describe()} => {m2.describe()} but filters are not nested",
                    )

    def _liminf(self, s: Space, f: PrincipalFilter, modules: Sequence[LeftModule], sweep: Sweep) -> None:
        gen = f.generator
        subsets = [c for size in range(1, len(gen) + 1) for c in combinations(gen, size)]
        for x1, x2 in combinations(subsets, 2):
            if set(x1) | set(x2) != set(gen):
                continue
            parts = [PrincipalFilter(space=s, generator=x1), PrincipalFilter(space=s, generator=x2)]
            for m in modules:
                sweep.check(
                    filter_service.liminf_check(f, parts, m),
                    lambda: f"{s.name} {f.label()} split {x1}/{x2}: lim- of {m.describe()}",
                )

    def bridge_theorems(self, u: Universe, sweep: Sweep) -> None:
        for s in u.spaces:
            for f in u.filters(s):
                low = filter_service.m_minus(f)
                if filter_service.is_weakly_flat(f):
                    sweep.check(flatness_service.is_p1_flat(low), lambda: f"{s.name} {f.label()}: M- not p1-flat")
                if filter_service.is_flat(f):
                    sweep.check(flatness_service.is_p2_flat(low), lambda: f"{s.name} {f.label()}: M- not p2-flat")
            for m in u.modules(s):
                if flatness_service.is_p1_flat(m):
                    f = filter_service.filter_of_module(m)
                    sweep.check(filter_service.is_weakly_flat(f), lambda: f"{s.name} {m.describe()}: filter not weakly flat")
                if flatness_service.is_p2_flat(m):
                    f = filter_service.filter_of_module(m)
                    sweep.check(filter_service.is_flat(f), lambda: f"{s.name} {m.describe()}: filter not flat")

    def symmetric_filters(self, u: Universe, sweep: Sweep) -> None:
        for s in u.spaces:
            if not s.is_symmetric():
                continue
            filters = u.filters(s)
            for f in filters:
                if filter_service.is_flat(f):
                    sweep.check(filter_service.is_cauchy(f), lambda: f"{s.name} {f.label()}: flat but not Cauchy")
            for m in u.modules(s):
                p2, p0 = flatness_service.is_p2_flat(m), flatness_service.is_p0_flat(m)
                sweep.check(p2 == p0, lambda: f"{s.name} {m.describe()}: p2={p2} p0={p0}")
            closed = [f for f in filters if filter_service.is_cauchy(f) and filter_service.is_closed(f)]
            unit = u.quantale.ops(s.base).unit
            for f1, f2 in combinations(closed, 2):
                there = filter_service.wf_hom_distance(f1, f2)
                back = filter_service.wf_hom_distance(f2, f1)
                sweep.check(not (there == unit and back == unit), lambda: f"{s.name}: {f1.label()} and {f2.label()} at distance zero")

    def wf_hom(self, u: Universe, sweep: Sweep) -> None:
        for s in u.spaces:
            weak = [f for f in u.filters(s) if filter_service.is_weakly_flat(f)]
            for f1, f2 in product(weak, repeat=2):
                sweep.check(
                    filter_service.wf_hom_check(f1, f2),
                    lambda: f"{s.name} {f1.label()} {f2.label()}: {filter_service.wf_hom_routes(f1, f2)}",
                )

    def convergence(self, u: Universe, sweep: Sweep) -> None:
        for s in u.spaces:
            for f in u.filters(s):
                for x in s.points:
                    routes = filter_service.convergence_routes(f, x)
                    sweep.check(len(set(routes)) == 1, lambda: f"{s.name} {f.label()} -> {x}: routes {routes}")

    def closure(self, u: Universe, sweep: Sweep) -> None:
        for s in u.spaces:
            for f in u.filters(s):
                c = filter_service.closure(f)
                sweep.check(filter_service.closure(c).same_generator(c), lambda: f"{s.name} {f.label()}: closure not idempotent")
                sweep.check(filter_service.filter_morphism(f, c), lambda: f"{s.name} {f.label()}: no morphism into closure")
            sweep.check(filter_service.charffil_finite_check(s), lambda: f"{s.name}: closed flat filter is not a point closure")
        for n in range(1, 5):
            sweep.check(filter_service.principality_check(n), lambda: f"principality fails on {n} points")

    def images(self, u: Universe, sweep: Sweep) -> None:
        for a, b, g in self._map_pairs(u):
            label = f"{a.name}->{b.name} {','.join(g.assignment)}"
            for f in u.filters(a):
                sweep.check(filter_service.image_routes_agree(f, g), lambda: f"{label} {f.label()}: image routes differ")
                colimits = filter_service.colimit_along_map(f, g)
                reps = filter_service.representative(filter_service.direct_image(f, g))
                sweep.check(colimits == reps, lambda: f"{label} {f.label()}: colimit {colimits} vs representatives {reps}")
                for m in u.modules(b):
                    sweep.check(filter_service.image_hom_check(f, g, m), lambda: f"{label} {f.label()} {m.describe()}: image hom")

    def sequences(self, u: Universe, sweep: Sweep) -> None:
        for s in u.rplus:
            filters = u.filters(s)
            for f in filters:
                if not filter_service.is_weakly_flat(f):
                    continue
                low = filter_service.m_minus(f)
                for m in u.modules(s):
                    if enriched_service.implies(low, m):
                        continue
                    seq = filter_service.separating_sequence(f, m)
                    tail = filter_service.tail_filter(seq)
                    sweep.check(
                        filter_service.is_forward_cauchy(seq)
                        and filter_service.filter_morphism(tail, f)
                        and not enriched_service.implies(filter_service.m_minus(tail), m),
                        lambda: f"{s.name} {f.label()} {m.describe()}: separating sequence {seq.describe()}",
                    )
            for f in filters:
                if not filter_service.is_flat(f):
                    continue
                near = filter_service.closure(f).generator
                candidates = [
                    EvPeriodicSequence(space=s, preperiod=pre, cycle=(p,))
                    for p in near
                    for pre in [()] + [(x,) for x in s.points]
                ]
                for s1, s2 in product(candidates, repeat=2):
                    z = filter_service.interpolate_sequences(s1, s2, f)
                    tail = filter_service.tail_filter(z)
                    sweep.check(
                        filter_service.is_forward_cauchy(z)
                        and filter_service.filter_morphism(filter_service.tail_filter(s1), tail)
                        and filter_service.filter_morphism(filter_service.tail_filter(s2), tail)
                        and filter_service.filter_morphism(tail, f),
                        lambda: f"{s.name} {f.label()}: interpolating {s1.describe()} / {s2.describe()} gave {z.describe()}",
                    )

    # -- completions ---------------------------------------------------------

    def _notions(self, s: Space) -> List[Notion]:
        if s.base is Base.RPLUS:
            return [Notion.P0, Notion.P1, Notion.P2]
        return list(Notion)

    def completion_embedding(self, u: Universe, sweep: Sweep) -> None:
        for s in u.spaces:
            for notion in self._notions(s):
                c = completion_service.complete(s, notion)
                for a, b in product(s.points, repeat=2):
                    d = c.result.d(c.embedding(a), c.embedding(b))
                    sweep.check(d == s.d(a, b), lambda: f"{s.name} {notion.value}: d({a},{b}) became {d}")
                sweep.check(
                    completion_service.zero_quotient(c.result).size == c.result.size,
                    lambda: f"{s.name} {notion.value}: completion has isomorphic points",
                )

    def completion_completeness(self, u: Universe, sweep: Sweep) -> None:
        for s in u.rplus + u.small_bools:
            for notion in (Notion.P1, Notion.P2):
                c = completion_service.complete(s, notion)
                witness = completion_service.completeness_witness(c.result, notion)
                sweep.check(witness is None, lambda: f"{s.name} {notion.value}: {witness.label()} has no representative")

    def cauchy_completion(self, u: Universe, sweep: Sweep) -> None:
        for s in u.rplus:
            p2 = completion_service.complete(s, Notion.P2).result
            p0 = completion_service.complete(s, Notion.P0).result
            sweep.check(completion_service.isomorphic(p2, p0), lambda: f"{s.name}: p2 and p0 completions differ")
            sweep.check(
                completion_service.isomorphic(p2, completion_service.zero_quotient(s)),
                lambda: f"{s.name}: p2 completion is not the zero quotient",
            )

    def completion_inclusions(self, u: Universe, sweep: Sweep) -> None:
        for s in u.spaces:
            p0, p1, p2 = (set(completion_service.generators(s, n)) for n in (Notion.P0, Notion.P1, Notion.P2))
            sweep.check(p0 <= p2 <= p1, lambda: f"{s.name}: generators not nested p0 <= p2 <= p1")

    def hausdorff(self, u: Universe, sweep: Sweep) -> None:
        for s in u.rplus:
            if not s.is_symmetric():
                continue
            hyperspace = completion_service.hausdorff_construction(s)
            p1 = completion_service.complete(s, Notion.P1).result
            sweep.check(completion_service.isomorphic(hyperspace, p1), lambda: f"{s.name}: hyperspace differs from p1 completion")

    def bool_completions(self, u: Universe, sweep: Sweep) -> None:
        for p in u.bools:
            for notion, counterpart in ((Notion.P1, Notion.DOWNSETS), (Notion.P2, Notion.IDEALS)):
                ours = completion_service.complete(p, notion).result
                theirs = completion_service.complete(p, counterpart).result
                sweep.check(completion_service.isomorphic(ours, theirs), lambda: f"{p.name}: {notion.value} vs {counterpart.value}")
                sweep.check(completion_service.bridge_check(p, notion), lambda: f"{p.name}: bridge fails for {notion.value}")

    def dmn(self, u: Universe, sweep: Sweep) -> None:
        for p in u.bools:
            cuts = completion_service.generators(p, Notion.DMN)
            for cut in cuts:
                upper = [x for x in p.points if all(p.d(y, x) == TRUE for y in cut)]
                lower = p.ordered([x for x in p.points if all(p.d(x, y) == TRUE for y in upper)])
                sweep.check(lower == cut, lambda: f"{p.name}: cut {cut} is not closed")
            p0 = completion_service.complete(p, Notion.P0).result.size
            logger.debug("dmn_vs_p0", space=p.name, dmn=len(cuts), p0=p0)

    def _targets(self, notion: Notion) -> List[Space]:
        if notion is Notion.P1:
            return [
                catalog_service.one_point(),
                completion_service.complete(catalog_service.asymmetric_pair(), Notion.P1).result,
                completion_service.complete(catalog_service.d2(), Notion.P1).result,
            ]
        return [catalog_service.one_point(), catalog_service.asymmetric_pair(), catalog_service.t3()]

    def universal_property(self, u: Universe, sweep: Sweep) -> None:
        for notion in (Notion.P1, Notion.P2):
            targets = self._targets(notion)
            for a in u.rplus:
                for b in targets:
                    report = completion_service.check_universal_property(a, notion, b, budget=sweep.budget())
                    if report.partial:
                        raise BudgetExceededError(f"universal property {a.name} -> {b.name}", sweep.budget_limit)
                    sweep.check(
                        not report.failures and report.unique == report.maps,
                        lambda: f"{a.name} {notion.value} -> {b.name}: {report.failures[:1] or report.unique}",
                    )


verification_service = VerificationService()
