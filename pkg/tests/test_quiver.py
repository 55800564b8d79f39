import pytest

from infdef.core.errors import ParseError, SessionError
from infdef.core.field import Field
from infdef.models.expression import format_terms, parse_combination, tokenize
from infdef.models.quiver import Arrow, Path, Quiver, compose_paths, emit_dot, enumerate_paths


@pytest.fixture
def square() -> Quiver:
    return Quiver(
        ("1", "2", "3", "4"),
        (Arrow("a1", "1", "2"), Arrow("a2", "2", "4"), Arrow("a3", "1", "3"), Arrow("a4", "3", "4")),
    )


def test_path_composes_in_diagram_order(square):
    p = square.path(["a1", "a2"])
    assert (p.source, p.target) == ("1", "4")
    assert p.label() == "a1*a2"
    assert square.path(["a2", "a1"]) is None


def test_compose_paths_zero_marker(square):
    a1, a2 = square.path(["a1"]), square.path(["a2"])
    assert compose_paths(a1, a2) == square.path(["a1", "a2"])
    assert compose_paths(a2, a1) is None
    assert compose_paths(square.stationary("1"), a1) == a1


def test_stationary_label(square):
    e = square.stationary("3")
    assert e.is_stationary and e.label() == "e_3"
    with pytest.raises(SessionError):
        square.stationary("9")


def test_enumerate_paths_by_length(square):
    paths = enumerate_paths(square, 2)
    assert [p.length for p in paths] == sorted(p.length for p in paths)
    assert len(paths) == 4 + 4 + 2


def test_undeclared_vertex_rejected():
    with pytest.raises(SessionError):
        Quiver(("1",), (Arrow("a", "1", "2"),))


def test_duplicate_arrow_rejected():
    with pytest.raises(SessionError):
        Quiver(("1", "2"), (Arrow("a", "1", "2"), Arrow("a", "2", "1")))


def test_adjacency_counts_parallel_arrows():
    Q = Quiver(("1", "2"), (Arrow("a", "1", "2"), Arrow("b", "1", "2")))
    assert Q.adjacency() == [[0, 2], [0, 0]]


def test_emit_dot(square):
    dot = emit_dot(square, name="ex1")
    assert dot.startswith("digraph ex1 {")
    assert '"1" -> "2" [label="a1"];' in dot
    assert dot.rstrip().endswith("}")


# expressions


def test_parse_combination_with_scalars(square):
    K = Field()
    comb = parse_combination("2*a1*a2 - 1/2*a3*a4 + e_1", square, K)
    assert comb == {
        square.path(["a1", "a2"]): K(2),
        square.path(["a3", "a4"]): K.ratio(-1, 2),
        Path("1", "1"): K.one,
    }


def test_parse_zero_and_cancellation(square):
    K = Field()
    assert parse_combination("0", square, K) == {}
    assert parse_combination("a1 - a1", square, K) == {}


def test_non_composable_product_is_zero(square):
    assert parse_combination("a2*a1", square, Field()) == {}


def test_parse_error_reports_column(square):
    with pytest.raises(ParseError) as info:
        parse_combination("a1 + b7", square, Field())
    assert info.value.column == 6


def test_unexpected_character(square):
    with pytest.raises(ParseError):
        tokenize("a1 ^ a2")


def test_prime_field_scalars(square):
    K = Field("prime", 5)
    comb = parse_combination("7*a1", square, K)
    assert comb[square.path(["a1"])] == K(2)
    with pytest.raises(ParseError):
        parse_combination("1/5*a1", square, K)


def test_format_terms_round_trip(square):
    K = Field()
    text = format_terms([("a1*a2", K(1)), ("a3*a4", K(-3))], K)
    comb = parse_combination(text, square, K)
    assert comb == {square.path(["a1", "a2"]): K(1), square.path(["a3", "a4"]): K(-3)}


def test_field_rejects_composite_characteristic():
    with pytest.raises(SessionError):
        Field("prime", 6)
