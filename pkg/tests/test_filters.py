from fractions import Fraction

import pytest

from flatcomp.errors import PreconditionError
from flatcomp.models.filter import EvPeriodicSequence, PrincipalFilter
from flatcomp.models.module import LeftModule
from flatcomp.models.quantale import INF, ZERO, QValue
from flatcomp.services.enriched_service import enriched_service
from flatcomp.services.filter_service import filter_service


def r(*xs):
    return tuple(INF if x == "inf" else QValue.rplus(x) for x in xs)


def pf(s, *points):
    return PrincipalFilter(space=s, generator=points)


def test_generator_kept_in_point_order(t3):
    assert pf(t3, "b", "a").generator == ("a", "b")
    with pytest.raises(ValueError):
        pf(t3)


def test_limits_along_a_filter(t3):
    f = pf(t3, "a", "b")
    column_c = t3.column("c")  # (2, 1, 0)
    assert filter_service.lim_plus(f, column_c) == QValue.rplus(2)
    assert filter_service.lim_minus(f, column_c) == QValue.rplus(1)


def test_m_minus_and_m_plus(t3):
    f = pf(t3, "a", "b")
    assert filter_service.m_minus(f).values == r(0, 0, 4)
    assert filter_service.m_plus(f).values == r(1, 2, 5)


def test_hierarchy_on_t3(t3):
    f = pf(t3, "a", "b")
    assert filter_service.is_weakly_flat(f)
    assert not filter_service.is_flat(f)
    assert not filter_service.is_cauchy(f)
    single = pf(t3, "c")
    assert filter_service.is_cauchy(single) and filter_service.is_flat(single)


def test_zero_distances_make_cauchy(z2):
    f = pf(z2, "p", "q")
    assert filter_service.is_cauchy(f)
    assert filter_service.is_cauchy_by_definition(f)


def test_closed_forms_match_definitions(t3, d2, a2, antichain):
    for s in (t3, d2, a2, antichain):
        for f in filter_service.all_filters(s):
            assert filter_service.is_weakly_flat(f) == filter_service.is_weakly_flat_by_definition(f)
            assert filter_service.is_flat(f) == filter_service.is_flat_by_definition(f)
            assert filter_service.is_cauchy(f) == filter_service.is_cauchy_by_definition(f)


def test_tolerances(t3):
    assert filter_service.tolerances(t3)[0] == Fraction(1, 2)
    assert Fraction(5) in filter_service.tolerances(t3)


def test_distance_between_filters(t3):
    f1, f2 = pf(t3, "a", "b"), pf(t3, "b")
    assert filter_service.wf_hom_distance(f1, f2) == QValue.rplus(1)
    assert filter_service.wf_hom_distance(f1, f1) == ZERO
    assert filter_service.wf_hom_check(f1, f2)
    assert filter_service.wf_hom_check(f2, f1)


def test_distance_on_z2(z2):
    assert filter_service.wf_hom_distance(pf(z2, "p"), pf(z2, "q")) == ZERO


def test_operand_distance_mixes_filters_and_modules(t3):
    f = pf(t3, "a", "b")
    m = LeftModule(space=t3, values=r(0, 1, 4))
    assert filter_service.operand_distance(f, m) == QValue.rplus(1)
    assert filter_service.operand_distance(m, f) == ZERO


def test_gamma_and_filter_of_module(t3):
    m = LeftModule(space=t3, values=r(0, 1, 4))
    assert filter_service.gamma(m, QValue.rplus(1)) == ("a", "b")
    assert filter_service.filter_of_module(m).generator == ("a",)
    with pytest.raises(PreconditionError):
        filter_service.gamma(m, ZERO)
    with pytest.raises(PreconditionError):
        filter_service.filter_of_module(LeftModule(space=t3, values=r(1, 1, 1)))


def test_closure_follows_zero_distances(z2, t3):
    assert filter_service.closure(pf(z2, "p")).generator == ("p", "q")
    assert filter_service.is_closed(pf(t3, "a", "c"))
    assert not filter_service.is_closed(pf(z2, "q"))


def test_filter_morphism(t3, z2):
    assert filter_service.filter_morphism(pf(t3, "a"), pf(t3, "a", "b"))
    assert not filter_service.filter_morphism(pf(t3, "a", "b"), pf(t3, "a"))
    assert filter_service.filter_morphism(pf(z2, "q"), pf(z2, "p"))


def test_convergence_routes_agree(t3, a2):
    for s in (t3, a2):
        for f in filter_service.all_filters(s):
            for x in s.points:
                routes = filter_service.convergence_routes(f, x)
                assert len(set(routes)) == 1
    assert filter_service.converges(pf(t3, "a"), "a")
    assert not filter_service.converges(pf(t3, "a", "b"), "a")


def test_representatives(t3):
    assert filter_service.representative(pf(t3, "a")) == ("a",)
    assert filter_service.representative(pf(t3, "a", "b")) == ()


def test_lim_plus_filter_class_excludes_a_neighborhood(a2):
    neighborhood = filter_service.neighborhood(a2, "q")
    assert neighborhood.generator == ("p", "q")
    assert filter_service.is_weakly_flat(neighborhood)
    assert not filter_service.is_lim_plus_filter(neighborhood)


def test_reflection_identities(t3):
    modules = [LeftModule(space=t3, values=r(0, 1, 4)), LeftModule(space=t3, values=r(0, 0, 4))]
    rights = [enriched_service.representable_right(t3, p) for p in t3.points]
    for f in filter_service.all_filters(t3):
        for m in modules:
            assert filter_service.zoi_check(f, m)
            assert filter_service.dwflat2_check(f, m)
        for n in rights:
            assert filter_service.fac22_check(f, n)


def test_direct_image_to_a_point(t3, one):
    g = enriched_service.constant_map(t3, one, "o")
    f = pf(t3, "a", "c")
    assert filter_service.direct_image(f, g).generator == ("o",)
    assert filter_service.image_routes_agree(f, g)
    assert filter_service.colimit_along_map(f, g) == ("o",)
    assert filter_service.image_hom_check(f, g, enriched_service.yoneda(one, "o"))


def test_liminf_splits_over_parts(t3):
    f = pf(t3, "a", "b")
    parts = [pf(t3, "a"), pf(t3, "b")]
    assert filter_service.liminf_check(f, parts, t3.column("c"))
    with pytest.raises(PreconditionError):
        filter_service.liminf_check(f, [pf(t3, "a")], t3.column("c"))


def test_supremum_and_closed_colimit(z2):
    sup = filter_service.sup_filters([pf(z2, "p"), pf(z2, "q")])
    assert sup.generator == ("p", "q")
    assert filter_service.colimit_closed([pf(z2, "p")]).generator == ("p", "q")
    with pytest.raises(PreconditionError):
        filter_service.sup_filters([])


def test_forward_cauchy_sequences(t3, z2):
    settled = EvPeriodicSequence(space=t3, preperiod=("c",), cycle=("b",))
    wandering = EvPeriodicSequence(space=t3, cycle=("a", "b"))
    hopping = EvPeriodicSequence(space=z2, cycle=("p", "q"))
    for seq, expected in ((settled, True), (wandering, False), (hopping, True)):
        assert filter_service.is_forward_cauchy(seq) is expected
        assert filter_service.is_forward_cauchy_by_definition(seq) is expected
    assert filter_service.tail_filter(settled).generator == ("b",)


def test_forward_cauchy_sees_pairs_across_cycles(a2, chain):
    # q is followed by p one step later, and A2(q, p) = 1
    for seq in (
        EvPeriodicSequence(space=a2, preperiod=("p",), cycle=("p", "q")),
        EvPeriodicSequence(space=chain, preperiod=("x",), cycle=("x", "y")),
    ):
        assert not filter_service.is_forward_cauchy(seq)
        assert not filter_service.is_forward_cauchy_by_definition(seq)
    settled = EvPeriodicSequence(space=a2, preperiod=("q",), cycle=("p",))
    assert filter_service.is_forward_cauchy(settled)
    assert filter_service.is_forward_cauchy_by_definition(settled)


def test_separating_sequence(t3):
    f = pf(t3, "a", "b")
    m = LeftModule(space=t3, values=r(0, 1, 4))
    seq = filter_service.separating_sequence(f, m)
    assert seq.cycle == ("b",)
    assert filter_service.is_forward_cauchy(seq)
    tail = filter_service.tail_filter(seq)
    assert filter_service.filter_morphism(tail, f)
    assert not enriched_service.implies(filter_service.m_minus(tail), m)


def test_separating_sequence_needs_a_witness(t3):
    f = pf(t3, "a", "b")
    with pytest.raises(PreconditionError):
        filter_service.separating_sequence(f, filter_service.m_minus(f))


def test_interpolating_sequence(z2):
    f = pf(z2, "p", "q")
    s1 = EvPeriodicSequence(space=z2, cycle=("p",))
    s2 = EvPeriodicSequence(space=z2, cycle=("q",))
    z = filter_service.interpolate_sequences(s1, s2, f)
    assert filter_service.is_forward_cauchy(z)
    assert filter_service.filter_morphism(filter_service.tail_filter(z), f)
    assert filter_service.filter_morphism(filter_service.tail_filter(s1), filter_service.tail_filter(z))


def test_interpolation_needs_flat_filter(t3):
    f = pf(t3, "a", "b")
    s1 = EvPeriodicSequence(space=t3, cycle=("a",))
    with pytest.raises(PreconditionError):
        filter_service.interpolate_sequences(s1, s1, f)


def test_finite_characterisations(t3, z2, antichain):
    for s in (t3, z2, antichain):
        assert filter_service.charffil_finite_check(s)
    for n in range(1, 5):
        assert filter_service.principality_check(n)
    with pytest.raises(PreconditionError):
        filter_service.principality_check(5)
