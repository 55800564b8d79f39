import pytest

from infdef.core import linalg
from infdef.core.errors import DegreeMismatch, StarNotCertified, VerificationFailed
from infdef.homology.deformed_resolution import (
    build_deformed_complex,
    compare_with_generic,
    ext_dims_deformed,
    kernel_witness_check,
)


def counts(vertices):
    out = {}
    for v in vertices:
        out[v] = out.get(v, 0) + 1
    return out


@pytest.mark.parametrize("v", ["1", "2", "3", "4"])
def test_star_holds_on_ex1(ex1, v):
    star = ex1.star(v, 4)
    assert star.holds
    assert all(star.correction_identities.values())


def test_star_holds_on_ex2(ex2):
    for v in ex2.vertices():
        star = ex2.star(v, 4)
        assert star.holds and all(star.correction_identities.values())


def test_star_fails_on_truncated_loop(ex3):
    star = ex3.star("1", 3)
    assert not star.holds
    assert star.witness["vertex"] == "1"
    with pytest.raises(StarNotCertified):
        ex3.deformed_complex("1", 3)


def test_alphas_land_in_radical_on_ex1(ex1):
    assert all(ex1.star(None, 4).radical_images().values())


def test_theorem_terms_on_ex1_simple_four(ex1):
    cx = ex1.deformed_complex("4", 4)
    assert [counts(cx.summands(m)) for m in range(4)] == [
        {"4": 1},
        {"4": 1, "2": 1, "3": 1},
        {"4": 1, "2": 1, "3": 1, "1": 1},
        {"4": 1, "2": 1, "3": 1, "1": 1},
    ]


@pytest.mark.parametrize("v", ["1", "2"])
def test_theorem_complex_matches_generic_on_ex2(ex2, v):
    rows = compare_with_generic(ex2.deformed_complex(v, 4), 4)
    assert [r.degree for r in rows] == list(range(5))
    assert all(r.theorem == r.generic for r in rows)


def test_theorem_complex_matches_generic_on_ex1(ex1):
    compare_with_generic(ex1.deformed_complex(None, 4), 4)


def test_realized_differentials_compose_to_zero(ex2):
    cx = ex2.deformed_complex(None, 3)
    for m in range(1, cx.degree + 1):
        assert linalg.is_zero(cx.realized[m - 1] * cx.realized[m])


def test_kernel_witnesses(ex1):
    cx = ex1.deformed_complex("4", 3)
    assert sum(kernel_witness_check(cx, m) for m in range(3)) > 0


def test_compare_beyond_range(ex1):
    cx = ex1.deformed_complex("4", 2)
    with pytest.raises(DegreeMismatch):
        compare_with_generic(cx, 5)


def test_all_plus_row_signs_break_composition(ex1):
    with pytest.raises(VerificationFailed) as info:
        build_deformed_complex(ex1.star(None, 3), ex1.deformed, 3, row_signs=lambda j: 1)
    assert info.value.detail["invariant"] == "composition"


def test_partial_sums_on_ex1(ex1):
    N = 4
    dims = ext_dims_deformed(ex1.deformed_resolution(None, N), ex1.base_resolution(None, N), ex1.vertices(), N)
    assert dims.base == [4, 4, 1, 0, 0]
    assert dims.deformed == [4, 8, 9, 9, 9]
    assert dims.partial_sums_hold


def test_partial_sums_per_simple_on_ex2(ex2):
    N = 4
    dims = ext_dims_deformed(ex2.deformed_resolution("1", N), ex2.base_resolution("1", N), ex2.vertices(), N)
    assert dims.base == [1, 1, 1, 1, 1]
    assert dims.deformed == [1, 2, 3, 4, 5]


def test_truncated_loop_resolves_with_one_summand_per_degree(ex3):
    res = ex3.deformed_resolution("1", 5)
    assert [res.vertices(n) for n in range(6)] == [["1"]] * 6


def test_ex4_deformed_resolution(ex4):
    res = ex4.deformed_resolution("2", 4)
    assert [counts(res.vertices(n)) for n in range(5)] == [
        {"2": 1},
        {"1": 2},
        {"1": 2, "2": 3},
        {"1": 3, "2": 3},
        {"1": 3, "2": 3},
    ]


def test_ex5_deformed_resolution(ex5):
    res = ex5.deformed_resolution("1", 4)
    assert [counts(res.vertices(n)) for n in range(5)] == [
        {"1": 1},
        {"3": 1},
        {"3": 1, "1": 1},
        {"3": 1, "2": 1},
        {"3": 1, "2": 1, "1": 1},
    ]
