import pytest

from infdef.core import linalg
from infdef.core.errors import DegreeMismatch
from infdef.homology.engine import ExtAlgebra, ExtClass, check_associativity, differential_matrix, lift_chain_map


def summands(res, n):
    return sorted(res.vertices(n))


def test_ex1_simple_four(ex1):
    res = ex1.base_resolution("4", 4)
    assert [summands(res, n) for n in range(5)] == [["4"], ["2", "3"], ["1"], [], []]


@pytest.mark.parametrize("v, first", [("1", ["1"]), ("2", ["2", "1"]), ("3", ["3", "1"])])
def test_ex1_other_simples(ex1, v, first):
    res = ex1.base_resolution(v, 3)
    got = [summands(res, n) for n in range(len(first))]
    assert got == [[w] for w in first]
    assert res.vertices(len(first)) == []


def test_ex2_periodic(ex2):
    res = ex2.base_resolution("1", 5)
    assert [res.vertices(n) for n in range(6)] == [["1"], ["2"], ["2"], ["1"], ["1"], ["2"]]


def test_differentials_compose_to_zero(ex2):
    res = ex2.base_resolution(None, 4)
    d = res.differentials
    for n in range(1, 5):
        assert linalg.is_zero(d[n - 1] * d[n])
    res.verify(exact_through=3)


def test_differentials_land_in_radical(ex1):
    res = ex1.base_resolution("4", 3)
    for n in range(1, 3):
        B = differential_matrix(res, n, ex1.algebra)
        assert all(e == 0 or all(ex1.algebra.basis[k].length > 0 for k in e.vector) for r in B.rows for e in r)


def test_sum_resolution_sources(ex1):
    res = ex1.base_resolution(None, 2)
    assert sorted(res.vertices(1)) == ["1", "1", "2", "3"]
    assert sorted(res.sources[1]) == ["2", "3", "4", "4"]


def test_ext_dims_over_base(ex1):
    ext = ExtAlgebra(ex1.base_resolution(None, 3), ex1.vertices())
    assert ext.dims() == [4, 4, 1, 0]
    assert ext.labels(2) == ["Ext^2(S_4,S_1)#0"]


def test_ext_unit_acts_trivially(ex2):
    ext = ExtAlgebra(ex2.base_resolution(None, 3), ex2.vertices())
    one = ext.algebra.K.one
    unit = ExtClass.of(0, ext.unit())
    for n in range(3):
        for b in range(ext.dim(n)):
            g = ExtClass.of(n, {b: one})
            assert ext.product(unit, g) == g
            assert ext.product(g, unit) == g


def test_ext_associative(ex2):
    ext = ExtAlgebra(ex2.base_resolution(None, 3), ex2.vertices())
    assert check_associativity(ext, 3) == []


def test_product_beyond_range(ex2):
    ext = ExtAlgebra(ex2.base_resolution(None, 2), ex2.vertices())
    one = ext.algebra.K.one
    g = ExtClass.of(2, {0: one})
    with pytest.raises(DegreeMismatch):
        ext.product(g, g)


def test_lift_chain_map_commutes(ex2):
    res = ex2.base_resolution(None, 4)
    ext = ExtAlgebra(res, ex2.vertices())
    g = ext.class_map(1, {0: ext.algebra.K.one})
    lifts = lift_chain_map(g, res, res, 1, 2)
    assert linalg.equal(res.differentials[0] * lifts[0], g)
    for t in range(1, 3):
        assert linalg.equal(res.differentials[t] * lifts[t], lifts[t - 1] * res.differentials[1 + t])


def test_lift_needs_enough_degrees(ex2):
    res = ex2.base_resolution(None, 2)
    ext = ExtAlgebra(res, ex2.vertices())
    g = ext.class_map(1, {0: ext.algebra.K.one})
    with pytest.raises(DegreeMismatch):
        lift_chain_map(g, res, res, 1, 2)
