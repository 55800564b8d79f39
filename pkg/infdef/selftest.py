"""Acceptance suite over the packaged example sessions.

Checks of one fixture share a SessionContext and run in order; fixtures run
in a thread pool when more than one job is requested.
"""
import logging
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Callable, Dict, List, Optional, Sequence

from .core import linalg
from .core.errors import InfdefError, SessionError, VerificationFailed
from .homology.deformation import hat_projective, minimal_polynomial_degree, realize_tuple
from .homology.deformed_resolution import compare_with_generic, ext_dims_deformed
from .homology.ext_deformed import corollary_check, ext_table
from .homology.hochschild import Cochain2, check_cocycle
from .models.module import hom_dimension
from .schemas.report import CheckResult, SelftestReport
from .services.session import SessionContext

logger = logging.getLogger(__name__)

# Projective summands per degree as vertex multisets; degrees past the list are zero.
BASE_RESOLUTIONS = {
    "ex1": {"1": [["1"]], "2": [["2"], ["1"]], "3": [["3"], ["1"]], "4": [["4"], ["2", "3"], ["1"]]},
    "ex2": {
        "1": [["1"], ["2"], ["2"], ["1"], ["1"], ["2"]],
        "2": [["2"], ["1"], ["1"], ["2"], ["2"], ["1"]],
    },
}
DEFORMED_RESOLUTIONS = {
    "ex4": ("2", [["2"], ["1", "1"], ["1", "1", "2", "2", "2"], ["1", "1", "1", "2", "2", "2"], ["1", "1", "1", "2", "2", "2"]]),
    "ex5": ("1", [["1"], ["3"], ["3", "1"], ["3", "2"], ["3", "2", "1"]]),
}
ALGEBRA_DIMS = {"ex1": 9, "ex2": 6, "ex3_r3": 3, "ex3_r4": 4, "ex3_r5": 5, "ex4": 13, "ex5": 11}
SYZYGY_DEPTH = 6
PRODUCT_DEPTH = 4


class CheckFailed(Exception):
    pass


def expect(condition: bool, message: str) -> None:
    if not condition:
        raise CheckFailed(message)


def _counts(vertices: Sequence[str]) -> Dict[str, int]:
    out: Dict[str, int] = {}
    for v in vertices:
        out[v] = out.get(v, 0) + 1
    return out


def _match_terms(res, expected: List[List[str]], N: int, what: str) -> None:
    for n in range(N + 1):
        want = _counts(expected[n]) if n < len(expected) else {}
        got = {v: c for v, c in res.multiplicities(n).items() if c}
        expect(got == want, f"{what}, degree {n}: expected {want}, got {got}")


# algebra and cochain


def check_dimension(ctx: SessionContext) -> None:
    want = ALGEBRA_DIMS[ctx.name]
    expect(ctx.algebra.dim == want, f"dim A = {ctx.algebra.dim}, expected {want}")


def check_cocycle_gate(ctx: SessionContext) -> None:
    report = check_cocycle(ctx.cochain)
    expect(report.passed, f"cochain is not a cocycle ({len(report.violations)} violations)")


def check_perturbed_cocycle(ctx: SessionContext) -> None:
    A, Q = ctx.algebra, ctx.quiver
    key = (A.index[Q.path(["a1"])], A.index[Q.path(["a2"])])
    report = check_cocycle(Cochain2(A, entries={key: A.element("e_4")}))
    expect(not report.passed, "perturbed cochain passes the cocycle check")
    expect(
        any(v.triple == ("e_1", "a1", "a2") for v in report.violations),
        "perturbed cochain has no violation at (e_1, a1, a2)",
    )


def check_hat_hom(ctx: SessionContext) -> None:
    A, f, Af = ctx.algebra, ctx.cochain, ctx.deformed
    hats = {v: realize_tuple(hat_projective(A, f, [v], name=f"P_{v}"), Af) for v in ctx.vertices()}
    for i in ctx.vertices():
        for j in ctx.vertices():
            got, want = hom_dimension(hats[i], hats[j]), 2 * len(A.hom_basis(i, j))
            expect(got == want, f"dim Hom(P^{i}, P^{j}) = {got}, expected {want}")


def check_loop_structure(ctx: SessionContext) -> None:
    r = ctx.algebra.dim
    Af = ctx.deformed
    expect(Af.dim == 2 * r, f"dim A_f = {Af.dim}, expected {2 * r}")
    a = ctx.algebra.index[ctx.quiver.path(["a"])]
    degree = minimal_polynomial_degree(Af, {a: Af.K.one})
    expect(degree == 2 * r, f"minimal polynomial of (a, 0) has degree {degree}, expected {2 * r}")


# resolutions


def check_base_resolutions(ctx: SessionContext) -> None:
    for v, expected in BASE_RESOLUTIONS[ctx.name].items():
        _match_terms(ctx.base_resolution(v, 5), expected, 5, f"S_{v} over A")


def check_star(ctx: SessionContext) -> None:
    for v in ctx.vertices():
        star = ctx.star(v, 5)
        expect(star.holds, f"(*) fails for S_{v}: {star.witness}")
        failing = [i for i, ok in star.correction_identities.items() if not ok]
        expect(not failing, f"correction identity fails for S_{v} at {failing}")


def check_theorem_complex(ctx: SessionContext) -> None:
    for v in ctx.vertices():
        compare_with_generic(ctx.deformed_complex(v, 5), 5)


def check_mutated_signs(ctx: SessionContext) -> None:
    try:
        ctx.deformed_complex(None, 3, row_signs=lambda j: 1)
    except VerificationFailed as exc:
        expect(exc.detail.get("invariant") == "composition", f"mutation caught by {exc.detail.get('invariant')!r}")
        return
    raise CheckFailed("all-plus row signs were not rejected")


def check_loop_resolution(ctx: SessionContext) -> None:
    _match_terms(ctx.deformed_resolution("1", SYZYGY_DEPTH), [["1"]] * (SYZYGY_DEPTH + 1), SYZYGY_DEPTH, "S_1 over A_f")


def check_deformed_resolution(ctx: SessionContext) -> None:
    v, expected = DEFORMED_RESOLUTIONS[ctx.name]
    N = len(expected) - 1
    _match_terms(ctx.deformed_resolution(v, N), expected, N, f"S_{v} over A_f")


def check_syzygies(ctx: SessionContext) -> None:
    for v in ctx.vertices():
        res = ctx.deformed_resolution(v, SYZYGY_DEPTH)
        for n in range(SYZYGY_DEPTH + 1):
            expect(res.terms[n].dim > 0, f"S_{v} over A_f has a zero term in degree {n}")


def check_partial_sums(ctx: SessionContext) -> None:
    N = SYZYGY_DEPTH
    dims = ext_dims_deformed(ctx.deformed_resolution(None, N), ctx.base_resolution(None, N), ctx.vertices(), N)
    expect(dims.partial_sums_hold, f"deformed Ext dims {dims.deformed} are not partial sums of {dims.base}")


# products


def check_triple_agreement(ctx: SessionContext) -> None:
    ext = ctx.ext(PRODUCT_DEPTH)
    for m in range(PRODUCT_DEPTH + 1):
        for n in range(PRODUCT_DEPTH + 1 - m):
            for k, a in ext.basis(m):
                h = ext.basis_class(m, k, a)
                for l, b in ext.basis(n):
                    g = ext.basis_class(n, l, b)
                    where = f"({m},{k},{a}) x ({n},{l},{b})"
                    formula = ext.yoneda_formula(h, g)
                    expect(ext.yoneda_generic(h, g) == formula, f"generic product differs at {where}")
                    expect(ext.yoneda_structured(h, g) == formula, f"structured product differs at {where}")


def check_x_shift(ctx: SessionContext) -> None:
    ext = ctx.ext(PRODUCT_DEPTH)
    x = ext.x_class()
    for m in range(PRODUCT_DEPTH):
        for k, a in ext.basis(m):
            h = ext.basis_class(m, k, a)
            got = ext.product(h, x)
            want = [h.component(i) for i in range(m + 1)] + [{}]
            expect([got.component(i) for i in range(m + 2)] == want, f"h o x is not a shift at ({m},{k},{a})")


def check_printed_product(ctx: SessionContext) -> None:
    """n = m = 1: h0*g0 x^2 + (h1*g0 - h0*g1) x + (h1*g1 - h0*(g1 alpha_2)).

    The constant term lives in degree 2, so its second product reads g1 through alpha_2.
    """
    ext = ctx.ext(2)
    star, one = ext.base.multiply, ctx.field.one
    for k, a in ext.basis(1):
        h = ext.basis_class(1, k, a)
        for l, b in ext.basis(1):
            g = ext.basis_class(1, l, b)
            h0, h1, g0, g1 = h.component(0), h.component(1), g.component(0), g.component(1)
            got = ext.yoneda_formula(h, g)
            expect(got.component(0) == star(0, h0, 0, g0), f"x^2 coefficient differs at ({k},{a}) x ({l},{b})")
            linear = linalg.add_vectors(star(1, h1, 0, g0), star(0, h0, 1, g1), -one)
            expect(got.component(1) == linear, f"x coefficient differs at ({k},{a}) x ({l},{b})")
            constant = linalg.add_vectors(star(1, h1, 1, g1), star(0, h0, 2, ext.alpha_composite(1, g1, 2)), -one)
            expect(got.component(2) == constant, f"constant term differs at ({k},{a}) x ({l},{b})")
            expect(got == ext.yoneda_generic(h, g), f"generic product differs at ({k},{a}) x ({l},{b})")


def check_corollary(ctx: SessionContext) -> None:
    ext = ctx.ext(PRODUCT_DEPTH)
    report = corollary_check(ext, PRODUCT_DEPTH)
    expect(report.hypothesis, f"Im alpha_i leaves the radical: {report.radical_images}")
    expect(bool(report.match), f"{len(report.mismatches)} products differ from the twisted tensor product")
    table = ext_table(ext, PRODUCT_DEPTH)
    expect(table.associative, f"{len(table.failures)} non-associative triples")


@dataclass
class Check:
    name: str
    run: Callable[[SessionContext], None]


SUITE: Dict[str, List[Check]] = {
    "ex1": [
        Check("dimension", check_dimension),
        Check("cocycle", check_cocycle_gate),
        Check("perturbed cocycle", check_perturbed_cocycle),
        Check("base resolutions", check_base_resolutions),
        Check("condition (*)", check_star),
        Check("theorem complex", check_theorem_complex),
        Check("mutated signs", check_mutated_signs),
        Check("partial sums", check_partial_sums),
        Check("hat hom dims", check_hat_hom),
        Check("product agreement", check_triple_agreement),
        Check("x shift", check_x_shift),
        Check("corollary", check_corollary),
        Check("syzygies", check_syzygies),
    ],
    "ex2": [
        Check("dimension", check_dimension),
        Check("cocycle", check_cocycle_gate),
        Check("base resolutions", check_base_resolutions),
        Check("condition (*)", check_star),
        Check("theorem complex", check_theorem_complex),
        Check("partial sums", check_partial_sums),
        Check("product agreement", check_triple_agreement),
        Check("printed product", check_printed_product),
        Check("syzygies", check_syzygies),
    ],
    **{
        name: [
            Check("dimension", check_dimension),
            Check("cocycle", check_cocycle_gate),
            Check("loop resolution", check_loop_resolution),
            Check("loop structure", check_loop_structure),
        ]
        for name in ("ex3_r3", "ex3_r4", "ex3_r5")
    },
    **{
        name: [
            Check("dimension", check_dimension),
            Check("cocycle", check_cocycle_gate),
            Check("deformed resolution", check_deformed_resolution),
            Check("syzygies", check_syzygies),
        ]
        for name in ("ex4", "ex5")
    },
}


def run_fixture(name: str) -> List[CheckResult]:
    """Run one fixture's checks in order; a failure does not stop the later checks."""
    results = []
    ctx = SessionContext.fixture(name)
    for check in SUITE[name]:
        start = time.perf_counter()
        detail: Optional[str] = None
        try:
            check.run(ctx)
            passed = True
        except CheckFailed as exc:
            passed, detail = False, str(exc)
        except InfdefError as exc:
            passed, detail = False, f"{type(exc).__name__}: {exc.message}"
        elapsed = time.perf_counter() - start
        logger.info("selftest %s / %s: %s (%.2fs)", name, check.name, "pass" if passed else "FAIL", elapsed)
        results.append(CheckResult(fixture=name, name=check.name, passed=passed, seconds=round(elapsed, 3), detail=detail))
    return results


def run_selftest(only: Optional[Sequence[str]] = None, jobs: int = 1) -> SelftestReport:
    names = list(only) if only else list(SUITE)
    unknown = [n for n in names if n not in SUITE]
    if unknown:
        raise SessionError(f"unknown fixture(s): {', '.join(unknown)}", known=list(SUITE))
    if jobs > 1:
        with ThreadPoolExecutor(max_workers=jobs) as pool:
            batches = list(pool.map(run_fixture, names))
    else:
        batches = [run_fixture(n) for n in names]
    checks = [c for batch in batches for c in batch]
    return SelftestReport(checks=checks, passed=all(c.passed for c in checks))
