import pytest

from infdef.core import linalg
from infdef.core.errors import NotAMorphism
from infdef.homology.deformation import (
    compose,
    hat_projective,
    hom_hat_basis,
    identity_morphism,
    minimal_polynomial_degree,
    realize_morphism,
    realize_tuple,
)
from infdef.models.module import Representation, hom_dimension


def test_dimension_doubles(any_fixture):
    Af = any_fixture.deformed
    assert Af.dim == 2 * any_fixture.algebra.dim
    assert Af.base_dim == any_fixture.algebra.dim


def test_deformed_algebra_is_associative(ex1, ex2):
    ex1.deformed.verify()
    ex2.deformed.verify()


def test_t_is_central_and_squares_to_zero(ex1):
    Af = ex1.deformed
    one = Af.K.one
    t = Af.times_t(Af.unit)
    assert Af.multiply(t, t) == {}
    for x in range(Af.dim):
        assert Af.multiply(t, {x: one}) == Af.multiply({x: one}, t)


def test_deformed_product_picks_up_the_cochain(ex1):
    Af, A = ex1.deformed, ex1.algebra
    one = Af.K.one
    a1 = A.index[ex1.quiver.path(["a1"])]
    a2 = A.index[ex1.quiver.path(["a2"])]
    a34 = A.index[ex1.quiver.path(["a3", "a4"])]
    assert Af.multiply({a1: one}, {a2: one}) == Af.times_t({a34: one})
    assert Af.format(Af.multiply({a1: one}, {a2: one})) == "(a3*a4)t"


@pytest.mark.parametrize("name", ["ex3_r3", "ex3_r4", "ex3_r5"])
def test_loop_generator_has_doubled_nilpotency(name):
    from infdef.services.session import SessionContext

    ctx = SessionContext.fixture(name)
    r = ctx.algebra.dim
    a = ctx.algebra.index[ctx.quiver.path(["a"])]
    assert minimal_polynomial_degree(ctx.deformed, {a: ctx.deformed.K.one}) == 2 * r


def test_radical_generators_of_deformation(ex1):
    Af = ex1.deformed
    labels = sorted(Af.labels[x] for x in Af.radical_generators)
    assert labels == sorted(["a1", "a2", "a3", "a4", "(e_1)t", "(e_2)t", "(e_3)t", "(e_4)t"])


def test_hat_projectives_realize_to_modules(ex1):
    A, f, Af = ex1.algebra, ex1.cochain, ex1.deformed
    for v in ex1.vertices():
        M = hat_projective(A, f, [v]).verify()
        rep = realize_tuple(M, Af)
        assert rep.dim == 2 * len(A.structured.with_target(v))


def test_hat_hom_dimensions(ex1):
    A, f, Af = ex1.algebra, ex1.cochain, ex1.deformed
    hats = {v: realize_tuple(hat_projective(A, f, [v]), Af) for v in ex1.vertices()}
    for i in ex1.vertices():
        for j in ex1.vertices():
            assert hom_dimension(hats[i], hats[j]) == 2 * len(A.hom_basis(i, j))


def test_hom_hat_basis_morphisms_are_valid(ex1):
    A, f, Af = ex1.algebra, ex1.cochain, ex1.deformed
    basis = hom_hat_basis(A, f, "1", "4")
    assert len(basis) == 2 * len(A.hom_basis("1", "4"))
    for u in basis:
        u.verify()
        realize_morphism(u, realize_tuple(u.source, Af), realize_tuple(u.target, Af))


def test_identity_and_composition(ex2):
    A, f = ex2.algebra, ex2.cochain
    M = hat_projective(A, f, ["1"])
    ident = identity_morphism(M).verify()
    both = compose(ident, ident)
    assert linalg.equal(both.u0, ident.u0) and linalg.equal(both.u2, ident.u2)


def test_broken_morphism_is_rejected(ex1):
    A, f = ex1.algebra, ex1.cochain
    u = hom_hat_basis(A, f, "1", "4")[0]
    u.u0 = linalg.scale(u.u0, A.field(2))
    with pytest.raises(NotAMorphism):
        u.verify()


def test_simple_module_of_deformation(ex1):
    S = Representation.semisimple(ex1.deformed, ["4"])
    assert S.dim == 1
    S.verify()
