"""Report models shared by the CLI (text or --json) and the HTTP endpoints."""
from typing import Dict, List, Optional

from pydantic import BaseModel


class Report(BaseModel):
    """Base for command reports; ``lines`` gives the plain-text rendering."""

    def ok(self) -> bool:
        """False when a check the command performs did not pass (exit code 1)."""
        return True

    def lines(self) -> List[str]:
        return [f"{k}: {v}" for k, v in self.model_dump().items()]

    def text(self) -> str:
        return "\n".join(self.lines()) + "\n"


def _verdict(ok: Optional[bool]) -> str:
    if ok is None:
        return "n/a"
    return "PASS" if ok else "FAIL"


def _sum(vertices: List[str], hat: bool) -> str:
    mark = "̂" if hat else ""
    return "[" + ",".join(f"P{mark}{v}" for v in vertices) + "]"


class AlgebraReport(Report):
    title: Optional[str] = None
    field: str
    vertices: List[str]
    arrows: List[str]
    relations: List[str]
    rules: List[str]
    dim: int
    basis: List[str]
    radical_dims: List[int]
    loewy_length: int

    def lines(self) -> List[str]:
        out = [f"algebra: {self.title}"] if self.title else []
        out += [
            f"field: {self.field}",
            f"quiver: {len(self.vertices)} vertices, {len(self.arrows)} arrows",
            f"relations: {', '.join(self.relations) or 'none'}",
            f"rewriting rules: {len(self.rules)}",
        ]
        out += [f"  {r}" for r in self.rules]
        out += [
            f"dim A = {self.dim}",
            f"basis: {' '.join(self.basis)}",
            f"dim rad^k A: {' '.join(map(str, self.radical_dims))}",
            f"Loewy length: {self.loewy_length}",
        ]
        return out


class ViolationSchema(BaseModel):
    triple: List[str]
    residual: str


class CocycleCheckReport(Report):
    passed: bool
    nonzero_values: int
    frame_preserved: bool
    violations: List[ViolationSchema] = []
    total_violations: int = 0

    def ok(self) -> bool:
        return self.passed

    def lines(self) -> List[str]:
        out = [f"cocycle: {_verdict(self.passed)}", f"nonzero basis values: {self.nonzero_values}"]
        out.append(f"vanishes on the frame: {'yes' if self.frame_preserved else 'no'}")
        for v in self.violations:
            out.append(f"  violation at ({', '.join(v.triple)}): {v.residual}")
        if self.total_violations > len(self.violations):
            out.append(f"  … {self.total_violations - len(self.violations)} more")
        return out


class DeformReport(Report):
    dim: int
    base_dim: int
    radical_dim: int
    radical_generators: List[str]
    loewy_length: int
    frame_preserved: bool
    hat_hom_dims: Dict[str, int] = {}

    def lines(self) -> List[str]:
        out = [
            f"dim A_f = {self.dim} (= 2 x {self.base_dim})",
            f"dim rad A_f = {self.radical_dim}",
            f"radical generators: {' '.join(self.radical_generators)}",
            f"Loewy length: {self.loewy_length}",
            f"frame preserved: {'yes' if self.frame_preserved else 'no'}",
        ]
        for pair, d in self.hat_hom_dims.items():
            out.append(f"  dim Hom(P^{pair}) = {d}")
        return out


class TermSchema(BaseModel):
    degree: int
    vertices: List[str]
    multiplicities: Dict[str, int]


class ResolveReport(Report):
    module: str
    over: str
    method: str
    degree: int
    terms: List[TermSchema]
    verified: bool
    matches_generic: Optional[bool] = None
    kernel_vectors_checked: Optional[int] = None

    def ok(self) -> bool:
        return self.verified and self.matches_generic is not False

    def lines(self) -> List[str]:
        hat = self.over == "deformed"
        out = [f"resolution of {self.module} over {'A_f' if hat else 'A'} ({self.method}), degrees 0..{self.degree}"]
        for t in self.terms:
            out.append(f"  {t.degree}: {_sum(t.vertices, hat)}")
        out.append(f"verified: {_verdict(self.verified)}")
        if self.matches_generic is not None:
            out.append(f"matches generic engine: {_verdict(self.matches_generic)}")
        if self.kernel_vectors_checked is not None:
            out.append(f"kernel witnesses checked: {self.kernel_vectors_checked}")
        return out


class StarReport(Report):
    module: str
    holds: bool
    witness: Optional[Dict[str, str]] = None
    correction_identities: Dict[int, bool] = {}
    radical_images: Dict[int, bool] = {}
    corrections: Dict[int, List[List[str]]] = {}

    def ok(self) -> bool:
        return self.holds and all(self.correction_identities.values())

    def lines(self) -> List[str]:
        out = [f"condition (*) for {self.module}: {_verdict(self.holds)}"]
        if self.witness:
            out.append(f"  witness: {self.witness}")
        for i, ok in self.correction_identities.items():
            out.append(f"  correction identity at {i}: {_verdict(ok)}")
        for i, ok in self.radical_images.items():
            out.append(f"  Im alpha_{i} in radical: {'yes' if ok else 'no'}")
        for i, rows in self.corrections.items():
            out.append(f"  C_{i} = {rows}")
        return out


class ExtDimsReport(Report):
    module: str
    degree: int
    over: Optional[str] = None
    base: Optional[List[int]] = None
    deformed: Optional[List[int]] = None
    partial_sums_hold: Optional[bool] = None

    def ok(self) -> bool:
        return self.partial_sums_hold is not False

    def lines(self) -> List[str]:
        out = [f"dim Ext^n({self.module}, S) for n = 0..{self.degree}"]
        if self.base is not None:
            out.append("  over A:   " + " ".join(map(str, self.base)))
        if self.deformed is not None:
            out.append("  over A_f: " + " ".join(map(str, self.deformed)))
        if self.partial_sums_hold is not None:
            out.append(f"partial sums: {_verdict(self.partial_sums_hold)}")
        return out


class BasisEntry(BaseModel):
    component: int
    index: int
    label: str


class ExtBasisReport(Report):
    degree: int
    dim: int
    basis: List[BasisEntry]

    def lines(self) -> List[str]:
        out = [f"Ext^{self.degree}_(A_f)(S,S): dimension {self.dim}"]
        for e in self.basis:
            power = self.degree - e.component
            out.append(f"  [{e.component}:{e.index}] {e.label} x^{power}")
        return out


class CorrectionSchema(BaseModel):
    i: int
    s: int
    component: int
    vector: str


class YonedaReport(Report):
    h: str
    g: str
    method: str
    product: str
    polynomial: str
    corrections: List[CorrectionSchema] = []
    agree: Optional[bool] = None

    def ok(self) -> bool:
        return self.agree is not False

    def lines(self) -> List[str]:
        out = [f"h = {self.h}", f"g = {self.g}", f"h o g ({self.method}) = {self.product}", f"  = {self.polynomial}"]
        for c in self.corrections:
            out.append(f"  correction (i={c.i}, s={c.s}) in component {c.component}: {c.vector}")
        if self.agree is not None:
            out.append(f"methods agree: {_verdict(self.agree)}")
        return out


class CorollaryCheckReport(Report):
    degree: int
    radical_images: Dict[int, bool]
    hypothesis: bool
    compared: int
    mismatches: int
    match: Optional[bool] = None
    associative: Optional[bool] = None

    def ok(self) -> bool:
        return self.match is not False and self.associative is not False

    def lines(self) -> List[str]:
        out = [f"Im alpha_i in rad Q_(i-1) for i <= {self.degree}: {'yes' if self.hypothesis else 'no'}"]
        failing = [i for i, ok in self.radical_images.items() if not ok]
        if failing:
            out.append(f"  fails at i = {', '.join(map(str, failing))}")
        if self.hypothesis:
            out.append(f"twisted tensor product: {_verdict(self.match)} ({self.compared} products, {self.mismatches} mismatches)")
        if self.associative is not None:
            out.append(f"associativity: {_verdict(self.associative)}")
        return out


class DotReport(Report):
    dot: str

    def text(self) -> str:
        return self.dot


class CheckResult(BaseModel):
    fixture: str
    name: str
    passed: bool
    seconds: float
    detail: Optional[str] = None


class SelftestReport(Report):
    checks: List[CheckResult]
    passed: bool

    def ok(self) -> bool:
        return self.passed

    def lines(self) -> List[str]:
        out = []
        for c in self.checks:
            line = f"[{_verdict(c.passed)}] {c.fixture}: {c.name} ({c.seconds:.2f}s)"
            if c.detail and not c.passed:
                line += f" - {c.detail}"
            out.append(line)
        failed = sum(not c.passed for c in self.checks)
        out.append(f"{len(self.checks) - failed}/{len(self.checks)} checks passed")
        return out
