import pytest

from infdef.core.errors import DimensionMismatch, ParseError, SessionError
from infdef.core.field import Field
from infdef.schemas.ext import ClassSpec
from infdef.schemas.requests import SessionRequest
from infdef.schemas.session import FieldKind, load_session, parse_session
from infdef.services.session import SessionContext


def test_parse_minimal_session(session_text):
    session = parse_session(session_text)
    assert session.title == "A2"
    assert session.field.kind == FieldKind.RATIONAL
    assert [a.name for a in session.quiver.arrows] == ["a"]
    assert session.options.degree is None


def test_toml_error_has_location():
    with pytest.raises(ParseError) as info:
        parse_session('[quiver]\nvertices = ["1" "2"]\n')
    assert info.value.line is not None
    assert info.value.exit_code == 2


def test_unknown_section_rejected(session_text):
    with pytest.raises(SessionError):
        parse_session(session_text + "\n[extras]\nx = 1\n")


def test_prime_field_needs_prime(session_text):
    with pytest.raises(SessionError):
        parse_session(session_text + '\n[field]\nkind = "prime"\np = 9\n')


def test_arrow_names_cannot_shadow_idempotents():
    text = '[quiver]\nvertices = ["1"]\narrows = [{ name = "e_1", source = "1", target = "1" }]\n'
    with pytest.raises(SessionError):
        parse_session(text)


def test_undeclared_endpoint():
    text = '[quiver]\nvertices = ["1"]\narrows = [{ name = "a", source = "1", target = "2" }]\n'
    with pytest.raises(SessionError):
        parse_session(text)


def test_missing_file(tmp_path):
    with pytest.raises(SessionError):
        load_session(tmp_path / "nope.toml")


def test_degree_precedence(session_text):
    assert SessionContext.from_text(session_text).degree == 6
    assert SessionContext.from_text(session_text + "\n[options]\ndegree = 3\n").degree == 3
    assert SessionContext.from_text(session_text + "\n[options]\ndegree = 3\n", degree=1).degree == 1


def test_session_context_builds_the_pipeline(session_text):
    ctx = SessionContext.from_text(session_text)
    assert ctx.algebra.dim == 3
    assert ctx.cochain.is_zero()
    assert ctx.deformed.dim == 6


def test_duplicate_cocycle_entry(session_text):
    text = session_text + (
        '\n[cocycle]\nentries = [\n'
        '  { left = "e_1", right = "a", value = "a" },\n'
        '  { left = "e_1", right = "a", value = "a" },\n]\n'
    )
    with pytest.raises(SessionError):
        SessionContext.from_text(text).cochain


def test_unknown_fixture():
    with pytest.raises(SessionError):
        SessionContext.fixture("ex9")


# class syntax


def test_class_spec_parse():
    spec = ClassSpec.parse("1:[1 0|0, -1/2]")
    assert spec.degree == 1
    assert spec.blocks == [["1", "0"], ["0", "-1/2"]]
    K = Field()
    comps = spec.components(K, [2, 2])
    assert comps == [{0: K.one}, {1: K.ratio(-1, 2)}]
    assert str(spec) == "1:[1 0|0 -1/2]"


@pytest.mark.parametrize("text", ["1[1 0]", "1:[1 0]", "0:[x]", "a:[1]"])
def test_class_spec_errors(text):
    with pytest.raises(ParseError):
        ClassSpec.parse(text)


def test_class_spec_dimension_mismatch():
    with pytest.raises(DimensionMismatch):
        ClassSpec.parse("0:[1 0 0]").components(Field(), [2])


def test_class_spec_from_components():
    K = Field()
    spec = ClassSpec.from_components(1, [{1: K(3)}, {}], [2, 1], K)
    assert str(spec) == "1:[0 3|0]"


def test_request_needs_one_source():
    with pytest.raises(ValueError):
        SessionRequest()
    with pytest.raises(ValueError):
        SessionRequest(fixture="ex1", session="x")
    assert SessionRequest(fixture="ex1").fixture == "ex1"
