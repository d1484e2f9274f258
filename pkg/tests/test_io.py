"""Serialization round trips, parse failures, and rendering."""

import numpy as np
import pytest

from cretan.constructions import (
    basic_family,
    bordered_solver,
    conference_complex,
    from_values,
    gw_z3_order5,
    sbibd_two_level,
)
from cretan.designs import qr_difference_set, singer_difference_set
from cretan.files import (
    MATRIX_MAGIC,
    ParseError,
    load_matrix,
    parse_matrix,
    save_matrix,
    serialize_matrix,
)
from cretan.hadamard import paley_conference
from cretan.render import render, render_pgm, render_svg, shade_grid
from cretan.scalar import Scalar


def identity2():
    vals = [[Scalar(1), Scalar(0)], [Scalar(0), Scalar(1)]]
    return from_values(vals, Scalar(1), "identity")


def test_exact_round_trip_rational():
    m = basic_family(9)
    text = serialize_matrix(m)
    assert "-2/7" in text
    again = parse_matrix(text)
    assert again == m
    assert serialize_matrix(again) == text


def test_exact_round_trip_quadratic():
    m = sbibd_two_level(singer_difference_set(2, 3).develop())[0]
    text = serialize_matrix(m)
    assert "sqrt(3)" in text
    again = parse_matrix(text)
    assert again == m
    assert again.omega == Scalar(14, 3, 3, 2)


def test_float_round_trip():
    m = bordered_solver(qr_difference_set(7).develop())[0]
    assert m.mode == "float"
    text = serialize_matrix(m)
    again = parse_matrix(text)
    assert again == m
    assert serialize_matrix(again) == text


def test_complex_round_trip():
    m = conference_complex(paley_conference(5))
    text = serialize_matrix(m)
    again = parse_matrix(text)
    assert again.order == m.order and again.omega == m.omega
    assert np.array_equal(again.entries, m.entries)
    assert serialize_matrix(again) == text


def test_group_round_trip():
    m = gw_z3_order5()
    text = serialize_matrix(m)
    assert "⋆" in text
    again = parse_matrix(text)
    assert (again.kind, again.group_order, again.weight) == ("GW", 3, 4)
    assert np.array_equal(again.entries, m.entries)
    assert serialize_matrix(again) == text


def test_golden_file_shape():
    want = (
        "cretan-matrix 1\n"
        "mode exact\n"
        "order 2\n"
        "tau 2\n"
        "omega 1\n"
        "method identity\n"
        "entries\n"
        "1 0\n"
        "0 1\n"
    )
    assert serialize_matrix(identity2()) == want


def test_save_and_load(tmp_path):
    p = tmp_path / "m.cm"
    m = basic_family(5)
    save_matrix(m, p)
    assert load_matrix(p) == m


def test_parse_bad_magic():
    with pytest.raises(ParseError) as err:
        parse_matrix("something else\n")
    assert err.value.line == 1


def test_parse_truncated_grid():
    text = serialize_matrix(basic_family(5))
    clipped = "\n".join(text.splitlines()[:-1]) + "\n"
    with pytest.raises(ParseError) as err:
        parse_matrix(clipped)
    assert "entry rows" in str(err.value)


def test_parse_bad_token_reports_line():
    text = serialize_matrix(identity2())
    broken = text.replace("0 1", "0 wat")
    with pytest.raises(ParseError) as err:
        parse_matrix(broken)
    assert err.value.line == 9
    assert "line 9" in str(err.value)


def test_parse_missing_entries_marker():
    with pytest.raises(ParseError):
        parse_matrix(MATRIX_MAGIC + "\nmode exact\norder 1\nomega 1\n")


def test_parse_unknown_mode():
    text = serialize_matrix(identity2()).replace("mode exact", "mode iffy")
    with pytest.raises(ParseError) as err:
        parse_matrix(text)
    assert "mode" in str(err.value)


def test_parse_empty():
    with pytest.raises(ParseError):
        parse_matrix("")


def test_parse_bad_complex_pair():
    text = serialize_matrix(conference_complex(paley_conference(5)))
    broken = text.replace("1.0,0.0", "1.0;0.0", 1)
    with pytest.raises(ParseError):
        parse_matrix(broken)


def test_parse_group_range_check():
    text = serialize_matrix(gw_z3_order5()).replace(" 2", " 7", 1)
    with pytest.raises(ParseError):
        parse_matrix(text)


def test_pgm_golden_unit():
    unit = from_values([[Scalar(1)]], Scalar(1), "unit")
    assert render_pgm(unit) == "P2\n1 1\n255\n255\n"


def test_pgm_identity_shades():
    out = render_pgm(identity2())
    assert out == "P2\n2 2\n255\n255 128\n128 255\n"


def test_shades_interpolate():
    m = sbibd_two_level(qr_difference_set(3).develop().complement())[0]
    shades = shade_grid(m)
    # levels 1 and -1/2 only
    assert set(shades.ravel().tolist()) == {64, 255}


def test_shades_complex_and_group():
    c = conference_complex(paley_conference(5))
    assert shade_grid(c)[0, 0] == 128          # i on the diagonal
    g = gw_z3_order5()
    sg = shade_grid(g)
    assert sg[0, 0] == 128                     # star cell
    assert sg[0, 1] == 255                     # exponent 0 -> +1


def test_svg_structure():
    unit = from_values([[Scalar(1)]], Scalar(1), "unit")
    svg = render_svg(unit)
    assert svg.startswith('<svg xmlns="http://www.w3.org/2000/svg"')
    assert svg.count("<rect") == 1
    assert 'fill="#ffffff"' in svg
    m13 = sbibd_two_level(singer_difference_set(2, 3).develop())[0]
    svg13 = render_svg(m13)
    assert svg13.count("<rect") == 169
    assert svg13 == render_svg(m13)


def test_render_dispatch():
    unit = from_values([[Scalar(1)]], Scalar(1), "unit")
    assert render(unit, "pgm").startswith("P2")
    assert render(unit).startswith("<svg")
    with pytest.raises(ValueError):
        render(unit, "png")


def test_certificate_report():
    import json

    from cretan.files import serialize_certificate
    from cretan.verify import verify_cretan

    cert = verify_cretan(basic_family(9))
    doc = json.loads(serialize_certificate(cert))
    assert doc["strict"] is True
    assert doc["radius"] == "81/49"
    assert doc["tau"] == 2
    assert doc["bounds"]["hadamard_log"] > doc["det"]["log_abs_det"] / 1e9
