import pytest

from thurstonquad import fixtures
from thurstonquad.errors import ParseError
from thurstonquad.quad import dyn_equivalent, validate_admissible, validate_dynamic
from thurstonquad.quadfile import parse_quad, parse_quad_text, serialize_quad, write_quad


def _text(name):
    return serialize_quad(fixtures.load(name))


def test_round_trip_is_byte_stable(fixture_name):
    text = _text(fixture_name)
    q = parse_quad_text(text)
    assert serialize_quad(q) == text


def test_cycle3_file_validates(tmp_path):
    path = tmp_path / "cycle3.quad"
    write_quad(fixtures.load("cycle3"), path)
    q = parse_quad(path)
    assert validate_dynamic(q).ok
    assert dyn_equivalent(q, fixtures.load("cycle3"))


def test_generator_files_keep_their_structure(tmp_path):
    for name in ("exp", "g1", "g2"):
        path = tmp_path / f"{name}.quad"
        write_quad(fixtures.load(name), path)
        q = parse_quad(path)
        assert not q.is_finite
        assert validate_admissible(q).ok


def _replace_line(text, prefix, new):
    lines = text.splitlines()
    i = next(k for k, ln in enumerate(lines) if ln.startswith(prefix))
    lines[i] = new
    return "\n".join(lines) + "\n", i + 1


def test_edge_with_unknown_vertex_reports_its_line():
    text, lineno = _replace_line(_text("cycle3"), "EDGE 1 ", "EDGE 1 1 9 1")
    with pytest.raises(ParseError) as err:
        parse_quad_text(text)
    assert err.value.line == lineno
    assert f"line {lineno}" in str(err.value)


def test_unknown_section():
    text = _text("cycle3") + "EXTRAS\nFOO 1\n"
    with pytest.raises(ParseError, match="EXTRAS|unknown"):
        parse_quad_text(text)


def test_bad_number():
    text, lineno = _replace_line(_text("cycle3"), "VERTEX 1 ", "VERTEX 1 abc 0.5")
    with pytest.raises(ParseError) as err:
        parse_quad_text(text)
    assert err.value.line == lineno


def test_graph_and_generator_are_exclusive():
    gen_part = _text("exp").split("GENERATOR", 1)[1]
    with pytest.raises(ParseError):
        parse_quad_text(_text("cycle3") + "GENERATOR" + gen_part)


def test_missing_graph():
    text = _text("cycle3").split("GRAPH", 1)[0]
    with pytest.raises(ParseError):
        parse_quad_text(text)


def test_comments_and_blank_lines_are_ignored():
    text = _text("cycle3")
    noisy = "# cycle of length three\n\n" + text.replace("GRAPH\n", "GRAPH\n# vertices follow\n\n")
    assert serialize_quad(parse_quad_text(noisy)) == text


def test_meta_note_survives():
    text = _text("g2")
    assert "PARABOLIC yes" in text
    q = parse_quad_text(text)
    assert q.declared_parabolic
