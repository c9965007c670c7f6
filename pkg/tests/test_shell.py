import pytest

from polaris.catalog import (
    ALIASES,
    PRESETS,
    build_preset,
    point_cap,
    preset_text,
    resolve_preset,
)
from polaris.errors import SpecError, UsageError
from polaris.specfile import (
    build_form,
    build_space_from_spec,
    format_spec,
    parse_spec,
)


def test_w32_spec_round_trip():
    text = preset_text("W3_2")
    spec = parse_spec(text)
    assert (spec.p, spec.k, spec.kind, spec.dim) == (2, 1, "alternating", 4)
    assert parse_spec(format_spec(spec)) == spec
    assert format_spec(spec) == text  # preset texts are canonical


@pytest.mark.parametrize("name", sorted(PRESETS))
def test_all_presets_round_trip_and_build(name):
    text = preset_text(name)
    spec = parse_spec(text)
    assert parse_spec(format_spec(spec)) == spec
    assert format_spec(spec) == text
    sp = build_preset(name)
    sp2 = build_space_from_spec(spec, cap=point_cap(), label=name)
    assert sp.points == sp2.points
    assert sp.lines == sp2.lines


def test_w32_spec_builds_15_points():
    sp = build_space_from_spec(parse_spec(preset_text("W3_2")))
    assert len(sp.points) == 15


def test_hermitian_spec_defaults_sigma():
    spec = parse_spec(preset_text("H3_4"))
    assert spec.sigma == 1 and spec.epsilon == 1
    form = build_form(spec)
    assert form.kind == "hermitian"


def test_parse_errors():
    with pytest.raises(SpecError, match="missing field block"):
        parse_spec("")
    with pytest.raises(SpecError, match="missing form block"):
        parse_spec("field p=2 k=1\n")
    with pytest.raises(SpecError, match="unknown kind"):
        parse_spec("field p=2 k=1\nform kind=weird dim=2\nrow 0 1\nrow 1 0\n")
    with pytest.raises(SpecError, match="expected 2 row lines"):
        parse_spec("field p=2 k=1\nform kind=symmetric dim=2\nrow 1 0\n")
    with pytest.raises(SpecError, match="out of range for GF"):
        parse_spec("field p=2 k=1\nform kind=symmetric dim=2\nrow 1 0\nrow 0 7\n")
    with pytest.raises(SpecError, match="not prime"):
        parse_spec("field p=6 k=1\nform kind=symmetric dim=2\nrow 1 0\nrow 0 1\n")


def test_parse_error_names_subdiagonal_entry():
    bad = ("field p=2 k=1\n"
           "form kind=quadratic dim=3\n"
           "row 1 0 0\n"
           "row 0 1 0\n"
           "row 0 1 1\n")
    with pytest.raises(SpecError, match=r"row 2 col 1.*below the diagonal"):
        parse_spec(bad)


def test_parse_error_carries_line_number():
    bad = "field p=2 k=1\nform kind=symmetric dim=2\nrow 1 0\nrow 0 x\n"
    with pytest.raises(SpecError) as exc:
        parse_spec(bad)
    assert exc.value.line == 4


def test_comments_and_blanks_ignored():
    text = "# a space\n\n" + preset_text("Qp3_2") + "\n# trailing\n"
    assert parse_spec(text) == parse_spec(preset_text("Qp3_2"))


def test_duplicate_blocks_rejected():
    text = preset_text("W3_2") + "field p=2 k=1\n"
    with pytest.raises(SpecError, match="duplicate field"):
        parse_spec(text)


def test_aliases():
    assert resolve_preset("W3_3") == "Sp4_3"
    assert ALIASES["W3_3"] == "Sp4_3"
    with pytest.raises(UsageError, match="unknown preset"):
        resolve_preset("nope")


def test_point_cap_env(monkeypatch):
    monkeypatch.setenv("POLARIS_POINT_CAP", "123")
    assert point_cap() == 123
    monkeypatch.setenv("POLARIS_POINT_CAP", "junk")
    with pytest.raises(UsageError):
        point_cap()
    monkeypatch.delenv("POLARIS_POINT_CAP")
    assert point_cap() == 1000


def test_build_is_deterministic_across_rebuilds():
    spec = parse_spec(preset_text("Qm5_2"))
    a = build_space_from_spec(spec)
    b = build_space_from_spec(spec)
    assert a.points == b.points and a.lines == b.lines and a.adj == b.adj
