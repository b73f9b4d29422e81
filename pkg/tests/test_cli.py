"""Command-line workbench: file format round-trips, commands, exit codes."""

import json

import pytest

from confspace import catalog
from confspace.algebra import TruncatedFreeCDGA
from confspace.cli import (
    ParseError, parse_algebra_text, serialize_algebra, main,
)

CATALOG_NAMES = ["point", "s2", "s3", "t2", "cp2", "s2xs2", "cs_s5",
                 "heis3", "heis3_s2", "cs_heis3_s2", "stb_s2xs2"]


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


# -- algebra file format -------------------------------------------------------

@pytest.mark.parametrize("nm", CATALOG_NAMES)
def test_round_trip_catalog(nm):
    a = catalog.load(nm)
    b = parse_algebra_text(serialize_algebra(a))
    assert type(b) is type(a)
    if isinstance(a, TruncatedFreeCDGA):
        assert b.gen_labels == a.gen_labels
        assert b.gen_degrees == a.gen_degrees
        assert b.bound == a.bound
        assert b.d_on_gens == a.d_on_gens
    assert b.labels == a.labels
    assert b.degrees == a.degrees
    assert b.unit == a.unit
    assert b.top == a.top
    from confspace.algebra import Overflow
    for i in range(a.dim):
        for j in range(a.dim):
            try:
                want = a.mul_basis(i, j)
            except Overflow:
                with pytest.raises(Overflow):
                    b.mul_basis(i, j)
                continue
            assert b.mul_basis(i, j) == want
        try:
            dwant = a.d_basis(i)
        except Overflow:
            with pytest.raises(Overflow):
                b.d_basis(i)
            continue
        assert b.d_basis(i) == dwant


def test_spaced_labels_cannot_be_serialized():
    # derived cohomology labels carry spaces; the format rejects them loudly
    with pytest.raises(ValueError):
        serialize_algebra(catalog.load("stb_s2xs2_h"))


def test_parse_minimal_algebra():
    a = parse_algebra_text("""
algebra two-sphere
field Q
basis 1 degree 0
basis w degree 2
unit 1
top w
product w w = 0
end
""")
    assert a.labels == ["1", "w"]
    assert a.mul_basis(1, 1) == {}


def test_parse_free_form_with_powers():
    c = parse_algebra_text("""
cdga-free model
field Q
generator x degree 2
generator u degree 3
d u = 1*x^2
truncate 6
end
""")
    assert isinstance(c, TruncatedFreeCDGA)
    assert "x^2" in c.labels


def test_comments_and_bare_coefficients():
    a = parse_algebra_text("""
# leading comment
algebra demo   # trailing comment
field Q
basis 1 degree 0
basis a#b degree 2
basis top degree 4
unit 1
product a#b a#b = top
end
""")
    # '#' inside a label is not a comment; a bare label means coefficient 1
    assert a.labels == ["1", "a#b", "top"]
    assert a.mul_basis(1, 1) == {2: a.field.one}


def test_parse_error_carries_line_number():
    with pytest.raises(ParseError) as e:
        parse_algebra_text("algebra x\nfield Q\nbogus line\nend\n")
    assert e.value.line_no == 3


@pytest.mark.parametrize("text,fragment", [
    ("algebra x\nfield Z\nend\n", "field"),
    ("algebra x\nalgebra y\nend\n", "duplicate header"),
    ("field Q\nend\n", "must start"),
    ("algebra x\nbasis 1 degree 0\nunit 1\n", "missing end"),
    ("algebra x\nbasis 1 degree 0\nunit 1\nend\nmore\n", "after end"),
    ("algebra x\ngenerator y degree 2\nend\n", "other form"),
    ("algebra x\ntruncate 5\nend\n", "free form"),
    ("algebra x\nbasis 1 degree 0\nbasis a degree 2\nunit 1\n"
     "product a a = 3*zz\nend\n", "unknown label"),
    ("cdga-free x\ngenerator a degree 2\nend\n", "truncate"),
    ("cdga-free x\ngenerator a degree 2\nd b = 1*a\ntruncate 4\nend\n",
     "unknown generator"),
])
def test_parse_failures(text, fragment):
    with pytest.raises(ParseError) as e:
        parse_algebra_text(text)
    assert fragment in str(e.value)


def test_field_fp_round_trip():
    a = parse_algebra_text("""
algebra modfive
field F5
basis 1 degree 0
basis w degree 2
basis v degree 4
unit 1
product w w = 3*v
end
""")
    assert a.field.p == 5
    assert "field F5" in serialize_algebra(a)


# -- commands and exit codes -----------------------------------------------------

def test_check_collapse_passes(capsys):
    code, out, err = run(capsys, "check", "thm2", "--catalog", "s2", "--n", "3")
    assert code == 0
    assert "pass" in out


def test_point_guard_exit_two(capsys):
    code, out, err = run(capsys, "pages", "--catalog", "s2", "--n", "5")
    assert code == 2
    assert "error" in err


def test_missing_algebra_exit_two(capsys):
    code, out, err = run(capsys, "pages", "--n", "3")
    assert code == 2


def test_unknown_suite_exit_two(capsys):
    code, out, err = run(capsys, "check", "nope", "--catalog", "s2", "--n", "3")
    assert code == 2


def test_undefined_massey_exit_one(capsys):
    code, out, err = run(capsys, "massey", "--catalog", "cp2",
                         "--format", "json", "h", "h", "h")
    assert code == 1
    assert json.loads(out)["defined"] is False


def test_massey_on_tangent_bundle(capsys):
    code, out, err = run(capsys, "massey", "--catalog", "stb_s2xs2",
                         "--format", "json", "x", "x", "y")
    assert code == 0
    data = json.loads(out)
    assert data["defined"] is True
    assert data["class"] == "[-1*x*t + y*u]"
    assert data["indeterminacy_dim"] == 0


def test_formal_negative_guard_exit_two(capsys):
    code, out, err = run(capsys, "check", "formal-negative",
                         "--catalog", "stb_s2xs2")
    assert code == 2


def test_json_output_is_byte_identical(capsys):
    args = ("check", "prop5", "--catalog", "t2", "--format", "json")
    code1, out1, _ = run(capsys, *args)
    code2, out2, _ = run(capsys, *args)
    assert code1 == code2 == 0
    assert out1 == out2
    assert "duration" not in out1 or json.loads(out1)["duration_ms"] == 0


def test_pages_reports_second_page(capsys):
    code, out, err = run(capsys, "pages", "--catalog", "s2", "--n", "3",
                         "--format", "json")
    assert code == 0
    data = json.loads(out)
    assert data["pages"]["E2"] == {"(0,6)": 1, "(1,2)": 1}
    assert data["pages"]["E3"] == data["pages"]["E2"]


def test_ct_e2_known_dims(capsys):
    code, out, err = run(capsys, "ct-e2", "--catalog", "t2", "--n", "2",
                         "--format", "json")
    assert code == 0
    data = json.loads(out)
    assert data["total_by_degree"] == {"0": 1, "1": 4, "2": 5, "3": 2}


def test_ct_e2_rejects_differential_carrier(capsys):
    code, out, err = run(capsys, "ct-e2", "--catalog", "stb_s2xs2", "--n", "2")
    assert code == 2


def test_total_reduced_kind(capsys):
    code, out, err = run(capsys, "total", "--catalog", "s2", "--n", "2",
                         "--kind", "c", "--format", "json")
    assert code == 0
    data = json.loads(out)
    assert data["cohomology"] == {"2": 1, "4": 1}


def test_d2_command_detects_nonzero_differential(capsys):
    code, out, err = run(capsys, "d2", "--catalog", "stb_s2xs2", "--n", "4",
                         "--format", "json", "x", "x", "y", "y")
    assert code == 0
    data = json.loads(out)
    assert data["verdict"] == "nonzero in E2^{2,*}"
    assert data["zigzag_cross_validation"] == "agree"
    assert len(data["e23e34_component"]) == 3
    assert data["e23e24_component"] == {}
    assert any(k.startswith("Q") for k in data["residuals"]["e2334"])


def test_catalog_command(capsys):
    code, out, err = run(capsys, "catalog", "--format", "json")
    assert code == 0
    assert "stb_s2xs2" in json.loads(out)["names"]


def test_input_file_loading(tmp_path, capsys):
    path = tmp_path / "sphere.alg"
    path.write_text(serialize_algebra(catalog.load("s2")))
    code, out, err = run(capsys, "total", "--input", str(path), "--n", "2",
                         "--kind", "bar", "--format", "json")
    assert code == 0
    assert json.loads(out)["cohomology"] == {"2": 1, "4": 1}


def test_input_and_catalog_conflict(capsys, tmp_path):
    path = tmp_path / "x.alg"
    path.write_text(serialize_algebra(catalog.load("s2")))
    code, out, err = run(capsys, "pages", "--input", str(path),
                         "--catalog", "s2", "--n", "2")
    assert code == 2


def test_table_format_prints_duration(capsys):
    code, out, err = run(capsys, "check", "anchors")
    assert code == 0
    assert "duration:" in out
