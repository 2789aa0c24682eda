import pytest

from flatcomp.errors import BaseMismatchError, PreconditionError
from flatcomp.models.completion import Notion
from flatcomp.models.quantale import Base, QValue
from flatcomp.models.space import Map
from flatcomp.services.budget import Budget
from flatcomp.services.catalog_service import catalog_service
from flatcomp.services.completion_service import completion_service
from flatcomp.services.enriched_service import enriched_service


def test_t3_p1_has_seven_points(t3):
    c = completion_service.complete(t3, Notion.P1)
    assert c.result.points == ("{a}", "{b}", "{c}", "{a,b}", "{a,c}", "{b,c}", "{a,b,c}")
    assert c.embedding.assignment == ("{a}", "{b}", "{c}")
    assert c.row("{a,b}").values == tuple(QValue.rplus(x) for x in (0, 0, 4))
    assert enriched_service.validate_space(c.result) == []


def test_t3_p2_is_t3(t3):
    c = completion_service.complete(t3, Notion.P2)
    assert c.result.size == 3
    assert completion_service.find_isomorphism(t3, c.result) == {"a": "{a}", "b": "{b}", "c": "{c}"}


def test_z2_collapses_to_one_point(z2):
    for notion in (Notion.P1, Notion.P2, Notion.P0):
        c = completion_service.complete(z2, notion)
        assert c.result.points == ("{p,q}",)
        assert c.embedding.assignment == ("{p,q}", "{p,q}")


@pytest.mark.parametrize("notion", [Notion.P0, Notion.P1, Notion.P2])
def test_one_point_is_its_own_completion(one, notion):
    c = completion_service.complete(one, notion)
    assert completion_service.isomorphic(one, c.result)


@pytest.mark.parametrize(
    "notion, points",
    [
        (Notion.FREE, 4),
        (Notion.P1, 3),
        (Notion.DOWNSETS, 3),
        (Notion.IDEALS, 2),
        (Notion.DMN, 4),
        (Notion.P0, 2),
        (Notion.P2, 2),
    ],
)
def test_antichain_completions(antichain, notion, points):
    assert completion_service.complete(antichain, notion).result.size == points


def test_free_completion_includes_empty_downset(antichain):
    assert completion_service.complete(antichain, Notion.FREE).result.points[0] == "{}"


def test_dedekind_macneille(chain):
    assert completion_service.dedekind_macneille(chain).result.size == 2
    assert completion_service.dedekind_macneille(catalog_service.one_point(Base.BOOL)).result.size == 1


def test_bool_notion_on_rplus_space(t3):
    with pytest.raises(BaseMismatchError):
        completion_service.complete(t3, Notion.DMN)


def test_completion_is_deterministic(t3):
    first = completion_service.complete(t3, Notion.P1)
    again = completion_service.complete(t3.renamed("T3copy"), Notion.P1)
    assert first.result.matrix == again.result.matrix
    assert first.table == again.table


def test_completeness(t3):
    assert completion_service.is_complete(t3, Notion.P2)
    assert not completion_service.is_complete(t3, Notion.P1)
    assert completion_service.completeness_witness(t3, Notion.P1).label() == "{a,b}"
    assert completion_service.is_complete(completion_service.complete(t3, Notion.P1).result, Notion.P1)


def test_finite_spaces_are_cauchy_complete_up_to_zero_quotient(z2, t3):
    for s in (z2, t3):
        cauchy = completion_service.complete(s, Notion.P0).result
        assert completion_service.isomorphic(cauchy, completion_service.zero_quotient(s))
        assert completion_service.isomorphic(cauchy, completion_service.complete(s, Notion.P2).result)


def test_zero_quotient(z2):
    q = completion_service.zero_quotient(z2)
    assert q.points == ("{p,q}",)


def test_find_isomorphism_rejects_different_spaces(t3, d2, z2):
    assert completion_service.find_isomorphism(t3, d2) is None
    assert completion_service.find_isomorphism(d2, z2) is None


def test_hausdorff_matches_p1_on_symmetric_space(d2):
    assert completion_service.isomorphic(
        completion_service.hausdorff_construction(d2), completion_service.complete(d2, Notion.P1).result
    )


def test_hausdorff_needs_symmetry(t3):
    with pytest.raises(PreconditionError):
        completion_service.hausdorff_construction(t3)


def test_bridge_to_rplus(antichain, chain):
    for p in (antichain, chain):
        assert completion_service.bridge_check(p, Notion.P1)
        assert completion_service.bridge_check(p, Notion.P2)
    with pytest.raises(PreconditionError):
        completion_service.bridge_check(chain, Notion.DMN)


def test_extend_map_to_a_point(t3, one):
    c = completion_service.complete(t3, Notion.P1)
    f = enriched_service.constant_map(t3, one, "o")
    extension = completion_service.extend_map(f, c)
    assert set(extension.assignment) == {"o"}


def test_extend_map_needs_complete_target(a2, t3):
    c = completion_service.complete(a2, Notion.P1)
    f = enriched_service.constant_map(a2, t3, "a")
    with pytest.raises(PreconditionError):
        completion_service.extend_map(f, c)


def test_extend_map_into_the_powerset_lattice(antichain):
    lattice = completion_service.complete(antichain, Notion.FREE).result
    assert lattice.points == ("{}", "{x}", "{y}", "{x,y}")
    assert completion_service.is_complete(lattice, Notion.P1)
    c = completion_service.complete(antichain, Notion.P1)
    assert c.result.points == ("{x}", "{y}", "{x,y}")
    f = Map(source=antichain, target=lattice, assignment=("{x}", "{y}"))
    # each downset goes to the join of its points
    assert completion_service.extend_map(f, c).assignment == ("{x}", "{y}", "{x,y}")


def test_universal_property(d2, t3, one):
    assert completion_service.check_universal_property(d2, Notion.P1, one).ok
    report = completion_service.check_universal_property(one, Notion.P2, t3)
    assert report.ok
    assert report.maps == report.unique == 3


def test_universal_property_budget(one, t3):
    report = completion_service.check_universal_property(one, Notion.P2, t3, budget=Budget(1))
    assert report.partial
    assert not report.ok


def test_universal_property_needs_complete_target(one, t3):
    with pytest.raises(PreconditionError):
        completion_service.check_universal_property(one, Notion.P1, t3)
