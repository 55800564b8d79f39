import pytest

from infdef.core.errors import AlgebraMismatch, DimensionMismatch, FinitenessNotCertified, NonParallelRelation, SessionError
from infdef.core.field import Field
from infdef.models.algebra import QuotientAlgebra
from infdef.models.expression import parse_combination
from infdef.models.matrix import MatrixOverA
from infdef.models.quiver import Arrow, Quiver

DIMS = {"ex1": 9, "ex2": 6, "ex3_r3": 3, "ex3_r4": 4, "ex3_r5": 5, "ex4": 13, "ex5": 11}


def algebra(Q: Quiver, *relations: str, K: Field = None) -> QuotientAlgebra:
    K = K or Field()
    return QuotientAlgebra(Q, K, [parse_combination(r, Q, K) for r in relations])


@pytest.fixture
def square() -> Quiver:
    return Quiver(
        ("1", "2", "3", "4"),
        (Arrow("a1", "1", "2"), Arrow("a2", "2", "4"), Arrow("a3", "1", "3"), Arrow("a4", "3", "4")),
    )


def test_example_dimensions(any_fixture):
    assert any_fixture.algebra.dim == DIMS[any_fixture.name]


def test_ex1_basis_and_radical(ex1):
    A = ex1.algebra
    labels = [A.label(k) for k in range(A.dim)]
    assert labels[:4] == ["e_1", "e_2", "e_3", "e_4"]
    assert "a3*a4" in labels and "a1*a2" not in labels
    assert A.structured.radical_power_dims() == [5, 1]
    assert A.structured.loewy_length() == 3


def test_ex1_products(ex1):
    A = ex1.algebra
    a1, a2, a3, a4 = (A.element(x) for x in ("a1", "a2", "a3", "a4"))
    assert a1 * a2 == 0
    assert a3 * a4 == A.element("a3*a4")
    assert a2 * a1 == 0
    assert A.idempotent("1") * a1 == a1
    assert A.one() * a3 == a3


def test_commutativity_relation_identifies_paths(square):
    A = algebra(square, "a1*a2 - a3*a4")
    assert A.dim == 8
    assert A.element("a1*a2") == A.element("a3*a4")
    assert len(A.hom_basis("1", "4")) == 1


def test_free_algebra_on_a_cycle_is_rejected():
    loop = Quiver(("1",), (Arrow("a", "1", "1"),))
    with pytest.raises(FinitenessNotCertified):
        algebra(loop)


def test_truncated_loop(ex3):
    A = ex3.algebra
    a = A.element("a")
    assert a * a * a == 0
    assert a * a == A.element("a*a")


def test_non_parallel_relation(square):
    with pytest.raises(NonParallelRelation):
        algebra(square, "a1*a2 - a3")


def test_relation_outside_arrow_square(square):
    with pytest.raises(SessionError):
        algebra(square, "a1")


def test_elements_of_different_algebras(square):
    A, B = algebra(square, "a1*a2"), algebra(square, "a3*a4")
    with pytest.raises(AlgebraMismatch):
        A.element("a1") + B.element("a1")


def test_hom_basis_by_endpoints(ex1):
    A = ex1.algebra
    assert [str(b) for b in A.hom_basis("1", "4")] == ["a3*a4"]
    assert A.hom_basis("2", "1") == []


def test_structured_view_is_associative(any_fixture):
    any_fixture.algebra.structured.verify()


def test_matrix_product_and_frame(ex1):
    A = ex1.algebra
    z = A.zero()
    M = MatrixOverA(A, [[A.element("a1"), z]], row_frame=["1"], col_frame=["2", "3"])
    N = MatrixOverA(A, [[A.element("a2")], [A.element("a4")]], row_frame=["2", "3"], col_frame=["4"])
    product = M @ N
    assert product.shape == (1, 1)
    assert product[0, 0] == 0
    assert M.respects_frame()
    with pytest.raises(DimensionMismatch):
        M + N


def test_prime_field_algebra(square):
    A = algebra(square, "a1*a2 + a3*a4", K=Field("prime", 3))
    assert A.dim == 8
    assert A.element("a1*a2") == A.element("2*a3*a4")
