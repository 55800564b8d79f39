import pytest

from infdef.core import linalg
from infdef.core.errors import DegreeMismatch
from infdef.homology.ext_deformed import DeformedExtClass, a_coeff, corollary_check, ext_table


@pytest.mark.parametrize(
    "k, r, i, expected",
    [
        (0, 0, 0, 1),
        (0, 3, 0, 1),
        (0, 3, 1, 0),
        (4, 0, 0, 1),
        (1, 1, 0, 0),
        (1, 1, 1, 1),
        (2, 1, 0, 1),
        (2, 1, 1, 0),
        (2, 3, 4, 0),
        (2, 3, -1, 0),
    ],
)
def test_a_coeff(k, r, i, expected):
    assert a_coeff(k, r, i) == expected


@pytest.fixture(scope="module")
def ext1(ex1):
    return ex1.ext(3)


@pytest.fixture(scope="module")
def ext2(ex2):
    return ex2.ext(3)


def test_dimensions_are_partial_sums(ext1):
    assert [ext1.dim(n) for n in range(4)] == [4, 8, 9, 9]
    assert len(ext1.basis(2)) == 9


def test_class_needs_one_component_per_degree():
    with pytest.raises(DegreeMismatch):
        DeformedExtClass.of(2, [{}, {}])


def test_unit_is_neutral(ext2):
    unit = ext2.unit()
    for n in range(3):
        for k, b in ext2.basis(n):
            g = ext2.basis_class(n, k, b)
            assert ext2.product(unit, g) == g
            assert ext2.product(g, unit) == g


def test_multiplying_by_x_shifts_components(ext1):
    x = ext1.x_class()
    for m in range(3):
        for k, a in ext1.basis(m):
            h = ext1.basis_class(m, k, a)
            got = ext1.product(h, x)
            assert got.degree == m + 1
            assert [got.component(i) for i in range(m + 1)] == [h.component(i) for i in range(m + 1)]
            assert got.component(m + 1) == {}


def test_x_shift_on_ex2_in_degree_one(ext2):
    x = ext2.x_class()
    for k, a in ext2.basis(1):
        h = ext2.basis_class(1, k, a)
        got = ext2.product(h, x)
        assert [got.component(i) for i in range(2)] == [h.component(0), h.component(1)]
        assert got.component(2) == {}


@pytest.mark.parametrize("method", ["structured", "generic"])
def test_methods_agree_on_ex2(ext2, method):
    for m in range(3):
        for n in range(3 - m):
            for k, a in ext2.basis(m):
                h = ext2.basis_class(m, k, a)
                for l, b in ext2.basis(n):
                    g = ext2.basis_class(n, l, b)
                    assert ext2.product(h, g, method) == ext2.yoneda_formula(h, g)


def test_methods_agree_on_ex1(ext1):
    for m in range(3):
        for n in range(3 - m):
            for k, a in ext1.basis(m):
                h = ext1.basis_class(m, k, a)
                for l, b in ext1.basis(n):
                    g = ext1.basis_class(n, l, b)
                    formula = ext1.yoneda_formula(h, g)
                    assert ext1.yoneda_generic(h, g) == formula
                    assert ext1.yoneda_structured(h, g) == formula


def test_printed_degree_one_product(ext2, ex2):
    star, one = ext2.base.multiply, ex2.field.one
    for k, a in ext2.basis(1):
        h = ext2.basis_class(1, k, a)
        for l, b in ext2.basis(1):
            g = ext2.basis_class(1, l, b)
            got = ext2.yoneda_formula(h, g)
            assert got.component(0) == star(0, h.component(0), 0, g.component(0))
            linear = linalg.add_vectors(star(1, h.component(1), 0, g.component(0)), star(0, h.component(0), 1, g.component(1)), -one)
            assert got.component(1) == linear
            through_alpha = ext2.alpha_composite(1, g.component(1), 2)
            constant = linalg.add_vectors(star(1, h.component(1), 1, g.component(1)), star(0, h.component(0), 2, through_alpha), -one)
            assert got.component(2) == constant
            assert got == ext2.yoneda_generic(h, g)


def test_alpha_two_fixes_degree_one_classes_on_ex2(ext2):
    # g_1 alpha_2 = g_1 under the slot identification Q_1 = Q_2 = P2 + P1
    one = ext2.K.one
    for b in range(ext2.base.dim(1)):
        assert ext2.alpha_composite(1, {b: one}, 2) == {b: one}


def test_lifting_family_and_representative_oracle(ext2):
    for n in range(2):
        for k, b in ext2.basis(n):
            g = ext2.basis_class(n, k, b)
            family = ext2.lifting_family(g, 3 - n)
            assert family.checked
            assert ext2.representative_oracle(g, 3 - n)


def test_corollary_on_ex1(ext1):
    report = corollary_check(ext1, 3)
    assert report.hypothesis
    assert report.match
    assert report.compared > 0


def test_table_is_associative(ext1):
    assert ext_table(ext1, 3).associative


def test_product_beyond_computed_degree(ext1):
    g = ext1.basis_class(2, 0, 0)
    with pytest.raises(DegreeMismatch):
        ext1.product(g, g)


def test_corrections_account_for_the_twist(ext2, ex2):
    one = ex2.field.one
    for k, a in ext2.basis(1):
        h = ext2.basis_class(1, k, a)
        for l, b in ext2.basis(1):
            g = ext2.basis_class(1, l, b)
            formula, twisted = ext2.yoneda_formula(h, g), ext2.twisted_product(h, g)
            summed = [{} for _ in range(3)]
            for c in ext2.corrections(h, g):
                summed[c.component] = linalg.add_vectors(summed[c.component], c.vector)
            for j in range(3):
                assert linalg.add_vectors(formula.component(j), twisted.component(j), -one) == summed[j]
