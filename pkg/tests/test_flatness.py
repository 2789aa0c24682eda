import pytest

from flatcomp.errors import BudgetExceededError, PreconditionError
from flatcomp.models.module import LeftModule, RightModule
from flatcomp.models.quantale import FALSE, INF, TRUE, QValue
from flatcomp.models.report import FlatnessClass
from flatcomp.services.budget import Budget
from flatcomp.services.enriched_service import enriched_service
from flatcomp.services.flatness_service import flatness_service

NOTIONS = (FlatnessClass.P1, FlatnessClass.P2, FlatnessClass.P0)


def r(*xs):
    return tuple(INF if x == "inf" else QValue.rplus(x) for x in xs)


@pytest.fixture
def m004(t3):
    return LeftModule(space=t3, values=r(0, 0, 4), name="M")


def test_zero_set(m004):
    assert flatness_service.zero_set(m004) == ("a", "b")


def test_finite_meet_can_fail(t3, m004):
    rows = [enriched_service.representable_right(t3, "a"), enriched_service.representable_right(t3, "b")]
    # M * (meet) = 1 while the meet of M * A(a,-) and M * A(b,-) is 0
    assert not flatness_service.preserves_finite_meet(m004, rows)


def test_p1_but_not_p2(m004):
    assert flatness_service.is_p1_flat(m004)
    assert not flatness_service.is_p2_flat(m004)
    assert not flatness_service.is_p0_flat(m004)


@pytest.mark.parametrize("notion", NOTIONS)
def test_oracle_agrees_with_closed_form(m004, notion):
    report = flatness_service.oracle_report(m004, notion)
    assert report.flat == flatness_service.is_flat(m004, notion)
    assert report.checked > 0


def test_oracle_names_a_witness(m004):
    report = flatness_service.oracle_report(m004, FlatnessClass.P2)
    assert not report.flat
    assert report.witness.startswith("meet of")


@pytest.mark.parametrize("notion", NOTIONS)
def test_representables_flat_everywhere(t3, notion):
    for a in t3.points:
        y = enriched_service.yoneda(t3, a)
        assert flatness_service.is_flat(y, notion)
        assert flatness_service.flatness_oracle(y, notion)


def test_module_without_kernel_is_not_flat(t3):
    m = LeftModule(space=t3, values=r("inf", "inf", "inf"))
    assert not flatness_service.is_p1_flat(m)
    report = flatness_service.oracle_report(m, FlatnessClass.P1)
    assert not report.flat
    assert report.witness.startswith("terminal")


def test_mutually_zero_points_give_p0_flat(z2):
    m = LeftModule(space=z2, values=r(0, 0))
    assert flatness_service.is_p2_flat(m)
    assert flatness_service.is_p0_flat(m)
    assert flatness_service.flatness_oracle(m, FlatnessClass.P0)


def test_bool_antichain_top_is_downset_not_ideal(antichain):
    m = LeftModule(space=antichain, values=(TRUE, TRUE))
    assert flatness_service.is_p1_flat(m)
    assert not flatness_service.is_p2_flat(m)
    assert not flatness_service.oracle_report(m, FlatnessClass.P2).flat


def test_bool_chain_principal_downset(chain):
    m = LeftModule(space=chain, values=(TRUE, FALSE))
    for notion in NOTIONS:
        assert flatness_service.is_flat(m, notion)


def test_empty_index_is_always_preserved(t3):
    m = LeftModule(space=t3, values=r("inf", "inf", "inf"))
    assert flatness_service.is_flat(m, FlatnessClass.EMPTY)
    assert flatness_service.flatness_oracle(m, FlatnessClass.EMPTY)


def test_cotensor_and_meet_preservation(m004, t3):
    n = enriched_service.representable_right(t3, "a")
    assert flatness_service.preserves_cotensor(m004, QValue.rplus(1), n)
    assert flatness_service.preserves_finite_meet(m004, [n])


def test_oracle_respects_budget(m004):
    with pytest.raises(BudgetExceededError):
        flatness_service.oracle_report(m004, FlatnessClass.P2, budget=Budget(3))


def test_kan_extension_keeps_flatness(m004, t3):
    g = enriched_service.identity_map(t3)
    assert flatness_service.kan_preserves_flatness(m004, g, FlatnessClass.P1)
    with pytest.raises(PreconditionError):
        flatness_service.kan_preserves_flatness(m004, g, FlatnessClass.P2)


def test_coflat_report_table(one):
    p = RightModule(space=one, values=r(0))
    report = flatness_service.coflat_report(p, max_a=1)
    assert report.coflat
    assert report.samples
    assert report.table().startswith("shape\tweight\tdiagram\tpreserved\n")


def test_terminal_preservation(m004, t3):
    assert flatness_service.preserves_terminal(m004)
    assert not flatness_service.preserves_terminal(LeftModule(space=t3, values=r(1, 1, 2)))


def test_point_weight_is_coflat(one):
    assert flatness_service.is_coflat_oracle(RightModule(space=one, values=r(0)), max_a=1)
