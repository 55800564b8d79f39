import pytest

from infdef.core.errors import AmbiguousPattern, FrameNotPreserved, NotACocycle, SessionError
from infdef.homology.deformation import build_deformed_algebra
from infdef.homology.hochschild import Cochain2, PatternRule, check_cocycle, tilde_f
from infdef.models.matrix import MatrixOverA


def index(ctx, *names):
    return ctx.algebra.index[ctx.quiver.path(list(names))]


def test_example_cochains_are_cocycles(any_fixture):
    assert check_cocycle(any_fixture.cochain).passed


def test_example_cochains_vanish_on_frame(any_fixture):
    assert any_fixture.cochain.vanishes_on_frame()


def test_ex1_entry_value(ex1):
    f = ex1.cochain
    A = ex1.algebra
    assert f(A.element("a1"), A.element("a2")) == A.element("a3*a4")
    assert f(A.element("a3"), A.element("a4")) == 0


def test_pattern_rule_on_ex2(ex2):
    A, f = ex2.algebra, ex2.cochain
    assert f(A.element("a1"), A.element("a2*a1")) == A.element("a1")
    assert f(A.element("a1*a2"), A.element("a1")) == A.element("a1")
    assert f(A.element("a1"), A.element("a2")) == 0


def test_pattern_rule_on_truncated_loop(ex3):
    A, f = ex3.algebra, ex3.cochain
    assert f(A.element("a"), A.element("a*a")) == A.element("e_1")
    assert f(A.element("a*a"), A.element("a")) == A.element("e_1")
    assert f(A.element("a"), A.element("a")) == 0


def test_perturbed_entry_fails_at_expected_triple(ex1):
    A = ex1.algebra
    bad = Cochain2(A, entries={(index(ex1, "a1"), index(ex1, "a2")): A.element("e_4")})
    report = check_cocycle(bad)
    assert not report.passed
    assert ("e_1", "a1", "a2") in [v.triple for v in report.violations]
    with pytest.raises(NotACocycle) as info:
        build_deformed_algebra(A, bad)
    assert info.value.exit_code == 1


def test_zero_cochain(ex1):
    f = Cochain2.zero(ex1.algebra)
    assert f.is_zero()
    assert check_cocycle(f).passed


def test_frame_value_rejected_when_deforming(ex1):
    A, Q = ex1.algebra, ex1.quiver
    e1, e4 = A.index[Q.stationary("1")], A.index[Q.stationary("4")]
    # coboundary of g(e_4) = a3*a4: a cocycle that does not vanish on the frame
    f = Cochain2(A, entries={(e1, e4): A.element("a3*a4")})
    assert check_cocycle(f).passed
    assert not f.vanishes_on_frame()
    with pytest.raises(FrameNotPreserved):
        build_deformed_algebra(A, f)


def test_pattern_must_straddle(ex1):
    with pytest.raises(SessionError):
        PatternRule(ex1.quiver.path(["a1"]), {})


def test_pattern_value_must_be_parallel(ex1):
    Q = ex1.quiver
    with pytest.raises(SessionError):
        PatternRule(Q.path(["a1", "a2"]), {Q.path(["a3"]): ex1.field.one})


def test_ambiguous_patterns(ex2):
    Q, K = ex2.quiver, ex2.field
    rules = [
        PatternRule(Q.path(["a1", "a2", "a1"]), {Q.path(["a1"]): K.one}),
        PatternRule(Q.path(["a1", "a2", "a1"]), {Q.path(["a1"]): K(2)}),
    ]
    with pytest.raises(AmbiguousPattern):
        Cochain2(ex2.algebra, rules)


def test_tilde_f_sums_over_the_inner_index(ex1):
    A = ex1.algebra
    B = MatrixOverA(A, [[A.element("a1"), A.element("a3")]])
    Bp = MatrixOverA(A, [[A.element("a2")], [A.element("a4")]])
    assert tilde_f(ex1.cochain, B, Bp)[0, 0] == A.element("a3*a4")
