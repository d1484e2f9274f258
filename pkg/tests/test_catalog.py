"""Catalog dispatch, best-radius selection, and the published-table diff."""

import json

import pytest

from cretan.catalog import (
    TABLE2_EXPECTED,
    catalog_structured,
    catalog_table,
    construct_best,
    format_catalog_text,
    methods_for,
)
from cretan.scalar import Scalar


@pytest.fixture(scope="module")
def full_report():
    return catalog_table(199)


def test_methods_for_examples():
    assert methods_for(13) == ["sbibd-ds", "basic"]
    assert methods_for(21) == ["sbibd-ds", "kronecker", "basic"]
    assert methods_for(15) == ["kronecker", "basic"]
    assert methods_for(5) == ["regular-hadamard", "basic"]
    assert methods_for(19) == ["paley-sbibd", "basic"]
    # fixture gap stays visible
    assert methods_for(101) == ["fixture-missing", "sbibd-ds", "basic"]
    assert methods_for(3) == ["paley-sbibd", "basic"]


def test_methods_for_range():
    for bad in (1, 2, 14, 1001, -3):
        with pytest.raises(ValueError):
            methods_for(bad)


def test_best_small_orders():
    assert construct_best(3).best.matrix.omega == Scalar(9, 0, 0, 4)
    e5 = construct_best(5)
    assert e5.best.method == "basic"
    assert e5.best.matrix.omega == Scalar(25, 0, 0, 9)
    # the radius-1 bordered candidate is recorded even though it loses
    assert any(c.method == "regular-hadamard" and c.ok
               and c.omega_float == 1.0 for c in e5.candidates)


def test_best_45_is_design_route():
    e = construct_best(45)
    assert e.best.method == "sbibd-ds"
    assert e.best.matrix.omega == Scalar(81, 0, 0, 4)
    assert e.best.verdict == "strict"


def test_best_13_is_design_route():
    e = construct_best(13)
    assert e.best.method == "sbibd-ds"
    assert e.best.matrix.omega == Scalar(14, 3, 3, 2)


def test_kronecker_can_beat_design_route():
    e = construct_best(21)
    assert e.best.method == "kronecker"
    assert abs(e.best.omega_float - 2.25 * (22 - 12 * 2 ** 0.5)) < 1e-9
    # the design route is still among the candidates
    assert any(c.method == "sbibd-ds" and c.ok for c in e.candidates)


def test_construct_best_memoized():
    assert construct_best(9) is construct_best(9)


def test_expected_table_shape():
    assert len(TABLE2_EXPECTED) == 99
    assert set(TABLE2_EXPECTED) == set(range(3, 200, 2))
    for labels in TABLE2_EXPECTED.values():
        assert set(labels) <= {"BM", "P2", "DS", "K"}


def test_catalog_covers_every_order(full_report):
    assert len(full_report.entries) == 99
    for e in full_report.entries:
        assert e.best is not None, "order %d uncovered" % e.order
        assert e.best.verdict == "strict"
        assert e.best.omega_float <= e.order + 1e-9
        assert e.best.certificate.passed


def test_diff_has_no_conflicts(full_report):
    assert full_report.diff.conflicts == []


def test_diff_paper_extra_is_exactly_the_known_gaps(full_report):
    rows = {(tag, v) for tag, v, _ in full_report.diff.paper_extra}
    assert rows == {
        ("table2:P2", 81), ("table2:P2", 171), ("table2:P2", 195),
        ("table1-rh", 45), ("table1-rh", 101), ("table1-rh", 197),
    }


def test_diff_our_extra_only_fills_blanks(full_report):
    blanks = {v for v, labels in TABLE2_EXPECTED.items() if not labels}
    ours = {v for v, _ in full_report.diff.our_extra}
    assert ours == blanks


def test_diff_agreements_cover_all_nonblank_labels(full_report):
    want = sum(len(l) for l in TABLE2_EXPECTED.values()) \
        - 3                       # the three P2 errata
    table2 = [r for r in full_report.diff.agreements if r[0] == "table2"]
    assert len(table2) == want
    t1ds = [r for r in full_report.diff.agreements if r[0] == "table1-ds"]
    assert len(t1ds) == 12
    t1rh = {v for tag, v, _ in full_report.diff.agreements
            if tag == "table1-rh"}
    assert t1rh == {5, 17, 37, 65, 145}


def test_text_output(full_report):
    text = format_catalog_text(full_report, show_diff=True)
    assert "order  best-method" in text
    assert "conflicts: 0" in text
    lines = text.splitlines()
    assert any(l.startswith("   45  sbibd-ds") for l in lines)
    # deterministic
    assert text == format_catalog_text(full_report, show_diff=True)


def test_structured_output_is_json_ready(full_report):
    doc = catalog_structured(full_report)
    blob = json.dumps(doc, sort_keys=True)
    again = json.loads(blob)
    assert again["v_max"] == 199
    assert len(again["entries"]) == 99
    assert again["diff"]["conflicts"] == []


def test_catalog_rejects_out_of_range():
    with pytest.raises(ValueError):
        catalog_table(1001)
