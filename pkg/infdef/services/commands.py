"""One function per command; each returns a report model. Shared by the CLI and the API."""
import logging
from typing import List, Optional

from ..core.errors import DegreeMismatch, SessionError
from ..core.linalg import Vector
from ..homology.deformation import hat_projective, realize_tuple
from ..homology.deformed_resolution import compare_with_generic, ext_dims_deformed, hom_to_simples, kernel_witness_check
from ..homology.engine import Resolution
from ..homology.ext_deformed import DeformedExtAlgebra, DeformedExtClass, corollary_check, ext_table
from ..homology.hochschild import check_cocycle
from ..models.expression import format_terms
from ..models.module import hom_dimension
from ..models.quiver import emit_dot as render_dot
from ..schemas.ext import ClassSpec
from ..schemas.report import (
    AlgebraReport,
    BasisEntry,
    CocycleCheckReport,
    CorollaryCheckReport,
    CorrectionSchema,
    DeformReport,
    DotReport,
    ExtBasisReport,
    ExtDimsReport,
    ResolveReport,
    StarReport,
    TermSchema,
    ViolationSchema,
    YonedaReport,
)
from .session import SessionContext

logger = logging.getLogger(__name__)

MAX_VIOLATIONS = 20
OVER = ("base", "deformed")
METHODS = ("generic", "theorem")
PRODUCTS = ("formula", "structured", "generic")


def algebra_check(ctx: SessionContext) -> AlgebraReport:
    A = ctx.algebra
    S = A.structured
    rules = []
    for r in A.system.rules:
        tail = sorted(r.tail.items(), key=lambda pc: ctx.quiver.sort_key(pc[0]))
        rules.append(f"{r.lead} -> {format_terms(((p.label(), c) for p, c in tail), ctx.field)}")
    return AlgebraReport(
        title=ctx.session.title,
        field=repr(ctx.field),
        vertices=list(ctx.quiver.vertices),
        arrows=[f"{a.name}:{a.source}->{a.target}" for a in ctx.quiver.arrows],
        relations=list(ctx.session.algebra.relations),
        rules=rules,
        dim=A.dim,
        basis=[A.label(k) for k in range(A.dim)],
        radical_dims=S.radical_power_dims(),
        loewy_length=S.loewy_length(),
    )


def cocycle_check(ctx: SessionContext) -> CocycleCheckReport:
    f = ctx.cochain
    result = check_cocycle(f)
    violations = [
        ViolationSchema(triple=list(v.triple), residual=ctx.algebra.format(v.residual.vector))
        for v in result.violations[:MAX_VIOLATIONS]
    ]
    return CocycleCheckReport(
        passed=result.passed,
        nonzero_values=len(f.table),
        frame_preserved=f.vanishes_on_frame(),
        violations=violations,
        total_violations=len(result.violations),
    )


def deform_info(ctx: SessionContext, hom_dims: bool = False) -> DeformReport:
    Af = ctx.deformed
    dims = {}
    if hom_dims:
        A, f = ctx.algebra, ctx.cochain
        hats = {v: realize_tuple(hat_projective(A, f, [v], name=f"P_{v}"), Af) for v in ctx.vertices()}
        for i in ctx.vertices():
            for j in ctx.vertices():
                dims[f"{i},{j}"] = hom_dimension(hats[i], hats[j])
    return DeformReport(
        dim=Af.dim,
        base_dim=Af.base_dim,
        radical_dim=len(Af.radical),
        radical_generators=[Af.labels[x] for x in Af.radical_generators],
        loewy_length=Af.loewy_length(),
        frame_preserved=ctx.cochain.vanishes_on_frame(),
        hat_hom_dims=dims,
    )


def _terms(res: Resolution, N: int) -> List[TermSchema]:
    return [
        TermSchema(degree=i, vertices=res.vertices(i), multiplicities=res.multiplicities(i))
        for i in range(N + 1)
    ]


def resolve(
    ctx: SessionContext,
    simple: Optional[str],
    over: str = "base",
    method: str = "generic",
    N: Optional[int] = None,
    compare: bool = False,
    witnesses: bool = False,
) -> ResolveReport:
    if over not in OVER:
        raise SessionError(f"--over must be one of {', '.join(OVER)}", over=over)
    if method not in METHODS:
        raise SessionError(f"--method must be one of {', '.join(METHODS)}", method=method)
    N = ctx.degree if N is None else N
    name = f"S_{simple}" if simple else "S"
    if method == "theorem":
        if over != "deformed":
            raise SessionError("the theorem construction resolves over A_f; use --over deformed")
        cx = ctx.deformed_complex(simple, N)
        matches = None
        if compare:
            compare_with_generic(cx, N)
            matches = True
        checked = None
        if witnesses:
            checked = sum(kernel_witness_check(cx, m) for m in range(N + 1))
        return ResolveReport(
            module=name, over=over, method=method, degree=N, terms=_terms(cx.resolution, N),
            verified=True, matches_generic=matches, kernel_vectors_checked=checked,
        )
    res = ctx.base_resolution(simple, N) if over == "base" else ctx.deformed_resolution(simple, N)
    return ResolveReport(module=name, over=over, method=method, degree=N, terms=_terms(res, N), verified=True)


def star_check(ctx: SessionContext, simple: Optional[str], N: Optional[int] = None) -> StarReport:
    N = ctx.degree if N is None else N
    star = ctx.star(simple, N)
    witness = {k: str(v) for k, v in star.witness.items()} if star.witness else None
    return StarReport(
        module=star.name,
        holds=star.holds,
        witness=witness,
        correction_identities=star.correction_identities,
        radical_images=star.radical_images() if star.holds else {},
        corrections={i: C.to_strings() for i, C in star.C.items() if not C.is_zero()},
    )


def ext_dims(ctx: SessionContext, simple: Optional[str], N: Optional[int] = None, over: Optional[str] = None) -> ExtDimsReport:
    """Both sides and the partial-sum check, or one side when `over` is given."""
    if over is not None and over not in OVER:
        raise SessionError(f"--over must be one of {', '.join(OVER)}", over=over)
    N = ctx.degree if N is None else N
    module = f"S_{simple}" if simple else "S"
    if over == "base":
        base = hom_to_simples(ctx.base_resolution(simple, N), ctx.vertices(), N)
        return ExtDimsReport(module=module, degree=N, over=over, base=base)
    if over == "deformed":
        deformed = hom_to_simples(ctx.deformed_resolution(simple, N), ctx.vertices(), N)
        return ExtDimsReport(module=module, degree=N, over=over, deformed=deformed)
    dims = ext_dims_deformed(ctx.deformed_resolution(simple, N), ctx.base_resolution(simple, N), ctx.vertices(), N)
    return ExtDimsReport(
        module=module,
        degree=N,
        base=dims.base,
        deformed=dims.deformed,
        partial_sums_hold=dims.partial_sums_hold,
    )


def ext_basis(ctx: SessionContext, n: int) -> ExtBasisReport:
    ext = ctx.ext(n)
    entries = [
        BasisEntry(component=k, index=b, label=ext.base.labels(k)[b]) for k, b in ext.basis(n)
    ]
    return ExtBasisReport(degree=n, dim=ext.dim(n), basis=entries)


def _dims(ext: DeformedExtAlgebra, n: int) -> List[int]:
    return [ext.base.dim(k) for k in range(n + 1)]


def parse_class(ctx: SessionContext, ext: DeformedExtAlgebra, text: str) -> DeformedExtClass:
    spec = ClassSpec.parse(text)
    if spec.degree > ext.degree:
        raise DegreeMismatch(f"class degree {spec.degree} is beyond {ext.degree}")
    return DeformedExtClass.of(spec.degree, spec.components(ctx.field, _dims(ext, spec.degree)))


def format_class(ctx: SessionContext, ext: DeformedExtAlgebra, g: DeformedExtClass) -> str:
    comps = [g.component(k) for k in range(g.degree + 1)]
    return str(ClassSpec.from_components(g.degree, comps, _dims(ext, g.degree), ctx.field))


def _format_vector(ctx: SessionContext, vec: Vector, dim: int) -> str:
    return "(" + " ".join(ctx.field.format(vec.get(b, ctx.field.zero)) for b in range(dim)) + ")"


def polynomial(ctx: SessionContext, ext: DeformedExtAlgebra, g: DeformedExtClass) -> str:
    parts = []
    for k in range(g.degree + 1):
        comp = g.component(k)
        if not comp:
            continue
        power = g.degree - k
        x = "" if power == 0 else ("x" if power == 1 else f"x^{power}")
        parts.append(_format_vector(ctx, comp, ext.base.dim(k)) + x)
    return " + ".join(parts) if parts else "0"


def yoneda(ctx: SessionContext, h_text: str, g_text: str, method: str = "formula", check: bool = False) -> YonedaReport:
    if method not in PRODUCTS:
        raise SessionError(f"--method must be one of {', '.join(PRODUCTS)}", method=method)
    degree = max(ClassSpec.parse(h_text).degree + ClassSpec.parse(g_text).degree, 0)
    ext = ctx.ext(degree)
    h, g = parse_class(ctx, ext, h_text), parse_class(ctx, ext, g_text)
    product = ext.product(h, g, method)
    corrections = []
    if method == "formula":
        corrections = [
            CorrectionSchema(i=c.i, s=c.s, component=c.component, vector=_format_vector(ctx, c.vector, ext.base.dim(c.component)))
            for c in ext.corrections(h, g)
        ]
    agree = None
    if check:
        agree = all(ext.product(h, g, other) == product for other in PRODUCTS if other != method)
    return YonedaReport(
        h=format_class(ctx, ext, h),
        g=format_class(ctx, ext, g),
        method=method,
        product=format_class(ctx, ext, product),
        polynomial=polynomial(ctx, ext, product),
        corrections=corrections,
        agree=agree,
    )


def corollary(ctx: SessionContext, N: Optional[int] = None, associativity: bool = False) -> CorollaryCheckReport:
    N = ctx.degree if N is None else N
    ext = ctx.ext(N)
    report = corollary_check(ext, N)
    associative = None
    if associativity:
        associative = ext_table(ext, N).associative
    return CorollaryCheckReport(
        degree=N,
        radical_images=report.radical_images,
        hypothesis=report.hypothesis,
        compared=report.compared,
        mismatches=len(report.mismatches),
        match=report.match,
        associative=associative,
    )


def emit_dot(ctx: SessionContext) -> DotReport:
    name = ctx.name if ctx.name.isidentifier() else "quiver"
    return DotReport(dot=render_dot(ctx.quiver, name=name))
