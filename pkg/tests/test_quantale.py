from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from flatcomp.errors import BaseMismatchError, PreconditionError
from flatcomp.models.quantale import FALSE, INF, TRUE, ZERO, Base, QValue, parse_value
from flatcomp.services.quantale_service import QuantaleService, quantale_service
from flatcomp.services.verification_service import AbsHomOps

rplus_values = st.one_of(
    st.just(INF),
    st.just(ZERO),
    st.fractions(min_value=0, max_value=100, max_denominator=12).map(QValue.rplus),
)
bool_values = st.sampled_from([FALSE, TRUE])


def r(x) -> QValue:
    return QValue.rplus(x)


@settings(max_examples=10_000, deadline=None)
@given(rplus_values, rplus_values, rplus_values)
def test_residuation_rplus(x, y, z):
    assert quantale_service.residuation_holds(x, y, z)


@given(bool_values, bool_values, bool_values)
def test_residuation_bool(x, y, z):
    assert quantale_service.residuation_holds(x, y, z)


@settings(max_examples=2_000, deadline=None)
@given(rplus_values, st.lists(rplus_values, min_size=1, max_size=5))
def test_fac_r_holds(v, family):
    assert quantale_service.check_fac_r(v, family)
    assert quantale_service.check_fac_r2(v, family) is not False


@given(rplus_values, rplus_values)
def test_tensor_commutes_and_has_unit(x, y):
    assert quantale_service.tensor(x, y) == quantale_service.tensor(y, x)
    assert quantale_service.tensor(x, ZERO) == x


def test_rplus_arithmetic():
    assert quantale_service.tensor(r(1), r(Fraction(1, 2))) == r(Fraction(3, 2))
    assert quantale_service.tensor(r(3), INF) == INF
    assert quantale_service.hom(r(1), r(3)) == r(2)
    assert quantale_service.hom(r(3), r(1)) == ZERO
    assert quantale_service.hom(INF, INF) == ZERO
    assert quantale_service.hom(r(2), INF) == INF


def test_rplus_order_is_reversed():
    # an arrow x -> y exists when x >= y numerically
    assert quantale_service.leq(r(2), r(1))
    assert not quantale_service.leq(r(1), r(2))
    assert quantale_service.leq(INF, ZERO)


def test_meet_and_join_conventions():
    assert quantale_service.meet_fin([r(1), r(3)]) == r(3)
    assert quantale_service.join_fin([r(1), r(3)]) == r(1)
    assert quantale_service.meet_fin([], base=Base.RPLUS) == ZERO
    assert quantale_service.join_fin([], base=Base.RPLUS) == INF
    assert quantale_service.meet_fin([], base=Base.BOOL) == TRUE
    assert quantale_service.join_fin([], base=Base.BOOL) == FALSE


def test_empty_family_needs_base():
    with pytest.raises(BaseMismatchError):
        quantale_service.meet_fin([])


def test_bool_operations():
    assert quantale_service.tensor(TRUE, FALSE) == FALSE
    assert quantale_service.hom(TRUE, FALSE) == FALSE
    assert quantale_service.hom(FALSE, FALSE) == TRUE


def test_mixed_bases_rejected():
    with pytest.raises(BaseMismatchError):
        quantale_service.tensor(ZERO, TRUE)


def test_fac_r_needs_a_family():
    with pytest.raises(PreconditionError):
        quantale_service.check_fac_r(ZERO, [])


def test_abs_hom_breaks_fac_r():
    mutated = QuantaleService(AbsHomOps())
    assert not mutated.check_fac_r(r(2), [r(0), r(1)])
    assert not mutated.residuation_holds(r(3), r(1), ZERO)


@pytest.mark.parametrize(
    "token, base, expected",
    [
        ("3", Base.RPLUS, QValue.rplus(3)),
        ("1/2", Base.RPLUS, QValue.rplus(Fraction(1, 2))),
        ("inf", Base.RPLUS, INF),
        ("1", Base.BOOL, TRUE),
        ("0", Base.BOOL, FALSE),
    ],
)
def test_parse_value(token, base, expected):
    assert parse_value(token, base) == expected


@pytest.mark.parametrize("token, base", [("0.5", Base.RPLUS), ("-1", Base.RPLUS), ("x", Base.RPLUS), ("2", Base.BOOL)])
def test_parse_value_rejects(token, base):
    with pytest.raises(ValueError):
        parse_value(token, base)


def test_qvalue_rejects_floats_and_bool_infinity():
    with pytest.raises(ValueError):
        QValue(Base.RPLUS, 0.5)
    with pytest.raises(ValueError):
        QValue(Base.BOOL, None)


def test_qvalue_text():
    assert str(QValue.rplus(Fraction(3, 4))) == "3/4"
    assert str(INF) == "inf"
    assert str(TRUE) == "1"
