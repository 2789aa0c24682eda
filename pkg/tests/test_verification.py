import pytest

from flatcomp.db.database import list_runs, record_run
from flatcomp.services.catalog_service import Catalog
from flatcomp.services.verification_service import verification_service

SMALL = Catalog(max_points=1)


def test_suite_order():
    names = verification_service.suite_names
    assert names[:3] == ["residuation", "quantale_laws", "fac_r"]
    assert names[-1] == "universal_property"
    assert len(names) == len(set(names))


def test_hom_mutation_is_caught():
    report = verification_service.run(catalog=SMALL, mutations=["hom"], only=["residuation", "fac_r"])
    assert not report.ok
    assert all(s.failures > 0 for s in report.suites)
    assert report.suites[0].first_failure.startswith("x=")
    assert report.parameters["mutations"] == "hom"


def test_unknown_names_rejected():
    with pytest.raises(ValueError, match="unknown suite"):
        verification_service.run(catalog=SMALL, only=["nope"])
    with pytest.raises(ValueError, match="unknown mutation"):
        verification_service.run(catalog=SMALL, mutations=["sign"])


def test_budget_marks_suite_skipped():
    report = verification_service.run(catalog=SMALL, budget=1, only=["flatness_oracle"])
    suite = report.suites[0]
    assert suite.skipped
    assert not suite.passed
    assert report.ok
    assert report.budget_exceeded
    text = verification_service.format_report(report)
    assert "flatness_oracle\t" in text and "\tskipped" in text
    assert "budget exceeded" in text


def test_small_catalog_passes():
    report = verification_service.run(catalog=SMALL)
    failed = [(s.name, s.first_failure) for s in report.suites if s.failures]
    assert failed == []
    assert not report.budget_exceeded
    assert report.parameters["max_points"] == "1"


def test_run_ledger(ledger):
    report = verification_service.run(catalog=SMALL, only=["space_laws"])
    run_id = record_run(report, 0)
    bad = verification_service.run(catalog=SMALL, mutations=["hom"], only=["fac_r"])
    bad_id = record_run(bad, 1)
    runs = list_runs()
    assert [r["id"] for r in runs] == [bad_id, run_id]
    assert [r["id"] for r in list_runs(failed_only=True)] == [bad_id]
    assert len(list_runs(limit=1)) == 1


def test_hom_mutation_breaks_commutation():
    report = verification_service.run(catalog=SMALL, mutations=["hom"], only=["commutation"])
    assert report.suites[0].failures > 0
    assert verification_service.run(catalog=SMALL, only=["commutation"]).ok


def test_two_point_catalog_passes():
    suites = ["commutation", "filter_definitions", "flatness_oracle", "sequences", "universal_property"]
    report = verification_service.run(catalog=Catalog(max_points=2), only=suites)
    assert [s.name for s in report.suites] == [n for n in verification_service.suite_names if n in suites]
    assert [(s.name, s.first_failure) for s in report.suites if s.failures] == []
    assert not any(s.skipped for s in report.suites)
    assert all(s.checked > 0 for s in report.suites)
