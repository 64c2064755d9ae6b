"""Theorem gates deciding which conclusions about W_s(b;a) a computation has earned.

Each ``verdict_*`` function checks its hypotheses on a :class:`HypothesisRecord` and returns
the verdict fields it is entitled to set. A hypothesis that fails, or that could not be
decided within the truncation bounds, raises :class:`HypothesisNotVerified`; no verdict field
is ever filled from an unverified hypothesis. :func:`evaluate` runs every gate and keeps one
provenance entry per theorem.

Verdicts attach to the sampled algebra. The hypotheses checked here are open conditions, so
they transfer to the general element of the stratum.
"""

import logging
from collections.abc import Callable, Iterable, Sequence
from dataclasses import dataclass, field
from typing import Any

import msgspec

from .config import Bounds
from .determinantal import DegreeMatrixSpec, DeterminantalAlgebra, sample_standard_matrix
from .exceptions import EmptyStratum, HypothesisNotVerified, TruncationExceeded
from .formulas import (
    StratumInvariants,
    dimension_formula,
    linear_exception,
    nonempty,
    zero_dimensional_clause,
)
from .homext import (
    ext1_A_conormal,
    ext_A_MM_truncated,
    five_term_degree_zero,
    homAMM_is_k,
)
from .types import Measured, Method

logger = logging.getLogger(__name__)

REPORT_VERSION = 1

# Evaluation order; earlier theorems win when two set the same field
THEOREMS = ("elling_c2", "Amodulethm5", "compthmvar", "compthm", "Amodulethm3", "glicci")


class HypothesisRecord(msgspec.Struct, kw_only=True):
    """Computed hypotheses; ``None`` means not computed or not decidable within bounds."""

    homAMM_is_k: bool | None = None
    ext1A_MM: int | None = None
    ext2A_MM: int | None = None
    delta0_injective: bool | None = None
    delta0_surjective: bool | None = None
    ext1A_conormal: int | None = None
    hom_I_A: int | None = None
    ext1R_MM: int | None = None
    e2_01: int | None = None
    rank_delta0: int | None = None
    ext2_kernel: int | None = None
    ext1A_MM_resolution: int | None = None
    krull_dim: int | None = None
    depth: int | None = None
    h1_condition: bool | None = None
    undecided: list[str] = msgspec.field(default_factory=list)
    methods: dict[str, Method] = msgspec.field(default_factory=dict)

    def record(self, name: str, value: Any, method: Method) -> None:
        setattr(self, name, value)
        self.methods[name] = method


class Verdicts(msgspec.Struct, kw_only=True):
    dim_Ws: int | None = None
    codim_exact: int | None = None
    codim_interval: tuple[int, int] | None = None
    generically_smooth: bool | None = None
    is_component: bool | None = None
    every_def_from_matrix: bool | None = None
    glicci_general_element: bool | None = None
    methods: dict[str, Method] = msgspec.field(default_factory=dict)


VERDICT_FIELDS = tuple(f for f in Verdicts.__struct_fields__ if f != "methods")


class PartialReport(msgspec.Struct, kw_only=True):
    """The verdict fields one theorem sets, with the hypotheses it checked."""

    theorem: str
    verdicts: Verdicts
    verified: list[str]
    note: str = ""


class Provenance(msgspec.Struct, kw_only=True):
    theorem: str
    fired: bool
    verified: list[str] = msgspec.field(default_factory=list)
    missing: list[str] = msgspec.field(default_factory=list)
    undecided: list[str] = msgspec.field(default_factory=list)
    note: str = ""


class SufficientConditions(msgspec.Struct, kw_only=True):
    """Purely combinatorial conditions on (b;a) under which a theorem applies to general A."""

    krull_dimension: int
    degree_gap_2: bool
    degree_gap_3: bool
    singular_codim_bounds: list[int]
    dimension_formula: bool
    zero_dimensional_clause: bool
    upgraded_dimension_clause: bool
    linear_exception: bool
    hilbert_component: bool
    Amodulethm3: bool
    Amodulethm5: bool
    compthmvar: bool
    glicci: bool


class StratumReport(msgspec.Struct, kw_only=True):
    version: int
    spec: DegreeMatrixSpec
    invariants: StratumInvariants
    hypotheses: HypothesisRecord
    verdicts: Verdicts
    provenance: list[Provenance]
    conditions: SufficientConditions | None = None
    findings: list[str] = msgspec.field(default_factory=list)

    def fired(self) -> list[str]:
        return [entry.theorem for entry in self.provenance if entry.fired]

    def undecided(self, theorems: Iterable[str] | None = None) -> list[Provenance]:
        """Provenance entries of the given theorems that failed on an undecided hypothesis."""
        wanted = set(theorems) if theorems is not None else None
        return [
            entry
            for entry in self.provenance
            if entry.undecided and (wanted is None or entry.theorem in wanted)
        ]


@dataclass(slots=True)
class _Gate:
    theorem: str
    hypotheses: HypothesisRecord
    verified: list[str] = field(default_factory=list[str])

    def require(self, name: str, holds: Callable[[Any], bool], label: str | None = None) -> None:
        label = label or name
        value = getattr(self.hypotheses, name)
        if value is None:
            raise HypothesisNotVerified(
                self.theorem, label, undecided=True, verified=tuple(self.verified)
            )
        if not holds(value):
            raise HypothesisNotVerified(self.theorem, label, verified=tuple(self.verified))
        self.verified.append(label)

    def refuse(self, label: str) -> HypothesisNotVerified:
        return HypothesisNotVerified(self.theorem, label, verified=tuple(self.verified))


def _is_true(value: Any) -> bool:
    return value is True


def _is_zero(value: Any) -> bool:
    return value == 0


def _require_matrix_hypotheses(gate: _Gate, spec: DegreeMatrixSpec) -> None:
    """₀Hom_A(M, M) = k and ₀Ext¹_A(M, M) = 0; both hold for c = 2 (M is a twisted K_A)."""
    if spec.c == 2:
        gate.verified.append("c = 2")
        return
    gate.require("homAMM_is_k", _is_true)
    gate.require("ext1A_MM", _is_zero, "ext1A_MM = 0")


def verdict_compthm(
    spec: DegreeMatrixSpec, invariants: StratumInvariants, hypotheses: HypothesisRecord
) -> PartialReport:
    """Deformations of A inside W_s(b;a) are those of M, so dim W_s = λ.

    With ₀Ext²_A(M, M) = 0 as well, every deformation of A comes from deforming 𝒜.

    Raises:
        HypothesisNotVerified: If ₀Hom_A(M, M) ≠ k or ₀Ext¹_A(M, M) ≠ 0 (or undecided)
    """
    gate = _Gate("compthm", hypotheses)
    _require_matrix_hypotheses(gate, spec)
    verdicts = Verdicts(dim_Ws=invariants.total, methods={"dim_Ws": "closed-form"})
    if spec.c == 2 or hypotheses.ext2A_MM == 0:
        if spec.c != 2:
            gate.verified.append("ext2A_MM = 0")
        verdicts.every_def_from_matrix = True
    return PartialReport(theorem="compthm", verdicts=verdicts, verified=gate.verified)


def verdict_Amodulethm3(
    spec: DegreeMatrixSpec, invariants: StratumInvariants, hypotheses: HypothesisRecord
) -> PartialReport:
    """dim W_s = λ and codim W_s ≤ ₀hom(I, A) - λ ≤ ext²(M, M).

    The first inequality is an equality exactly when GradAlg(H) is smooth at (A), which
    ₀Ext¹_A(I/I², A) = 0 guarantees.

    Raises:
        HypothesisNotVerified: If the matrix hypotheses fail or ₀hom(I, A) is unknown
    """
    gate = _Gate("Amodulethm3", hypotheses)
    _require_matrix_hypotheses(gate, spec)
    gate.require("hom_I_A", lambda value: value is not None, "₀hom(I, A) computed")
    assert hypotheses.hom_I_A is not None
    upper = hypotheses.hom_I_A - invariants.total
    notes: list[str] = []
    if upper < 0:
        notes.append(f"₀hom(I, A) = {hypotheses.hom_I_A} is smaller than λ")
        upper = 0
    if hypotheses.ext2_kernel is not None and upper > hypotheses.ext2_kernel:
        notes.append(f"₀hom(I, A) - λ = {upper} exceeds ext²(M, M) = {hypotheses.ext2_kernel}")
    verdicts = Verdicts(
        dim_Ws=invariants.total,
        codim_interval=(0, upper),
        methods={"dim_Ws": "closed-form", "codim_interval": "linear-algebra"},
    )
    if hypotheses.ext1A_conormal == 0:
        gate.verified.append("ext1A_conormal = 0")
        verdicts.codim_exact = upper
        verdicts.generically_smooth = True
        verdicts.is_component = upper == 0
        for name in ("codim_exact", "generically_smooth", "is_component"):
            verdicts.methods[name] = hypotheses.methods.get("ext1A_conormal", "linear-algebra")
    return PartialReport(
        theorem="Amodulethm3", verdicts=verdicts, verified=gate.verified, note="; ".join(notes)
    )


def verdict_Amodulethm5(
    spec: DegreeMatrixSpec, invariants: StratumInvariants, hypotheses: HypothesisRecord
) -> PartialReport:
    """GradAlg(H) is smooth at (A) of dimension λ and W̄_s is a component.

    Raises:
        HypothesisNotVerified: If ₀Hom_A(M, M) ≠ k or ₀Ext^i_A(M, M) ≠ 0 for i = 1, 2
    """
    gate = _Gate("Amodulethm5", hypotheses)
    _require_matrix_hypotheses(gate, spec)
    if spec.c != 2:
        gate.require("ext2A_MM", _is_zero, "ext2A_MM = 0")
    return PartialReport(
        theorem="Amodulethm5",
        verdicts=_component_verdicts(invariants.total, "closed-form"),
        verified=gate.verified,
    )


def verdict_compthmvar(
    spec: DegreeMatrixSpec, invariants: StratumInvariants, hypotheses: HypothesisRecord
) -> PartialReport:
    """e_M: Def_{M/R} → Def_{A/R} is smooth; W̄_s is a component of dim λ - ₀ext¹_A(M, M).

    Injectivity of ₀Ext²_A(M, M) → ₀Ext²_R(M, M) is checked as surjectivity of δ₀ onto
    (E₂^{0,1})₀, which is the same condition by exactness of the five-term sequence.

    Raises:
        HypothesisNotVerified: If ₀Hom_A(M, M) ≠ k or δ₀ is not surjective (or undecided)
    """
    gate = _Gate("compthmvar", hypotheses)
    if spec.c == 2:
        gate.verified.append("c = 2")
        ext1 = 0
    else:
        gate.require("homAMM_is_k", _is_true)
        gate.require("delta0_surjective", _is_true)
        gate.require("ext1A_MM", lambda value: value >= 0, "ext1A_MM computed")
        assert hypotheses.ext1A_MM is not None
        ext1 = hypotheses.ext1A_MM
    return PartialReport(
        theorem="compthmvar",
        verdicts=_component_verdicts(
            invariants.total - ext1, "closed-form" if ext1 == 0 else "linear-algebra"
        ),
        verified=gate.verified,
        note=f"dim = λ - ₀ext¹_A(M, M) = {invariants.total} - {ext1}",
    )


def verdict_elling_c2(
    spec: DegreeMatrixSpec, invariants: StratumInvariants, hypotheses: HypothesisRecord
) -> PartialReport:
    """For c = 2 GradAlg(H) is smooth at every point of W_s, a component of dim λ_2.

    Raises:
        HypothesisNotVerified: If c ≠ 2
    """
    gate = _Gate("elling_c2", hypotheses)
    if spec.c != 2:
        raise gate.refuse("c = 2")
    gate.verified.append("c = 2")
    return PartialReport(
        theorem="elling_c2",
        verdicts=_component_verdicts(invariants.lambda_c, "closed-form"),
        verified=gate.verified,
    )


def verdict_glicci(
    spec: DegreeMatrixSpec, invariants: StratumInvariants, hypotheses: HypothesisRecord
) -> PartialReport:
    """X = Proj(A) lies on a unique component whose general element is glicci.

    ₀Hom_R(I_X, H¹_m(A)) = 0 is attested when depth A ≥ 2.

    Raises:
        HypothesisNotVerified: If A is artinian, the H¹ condition is unattested, or
            ₀Ext²_A(M, M) → ₀Ext²_R(M, M) is not known to be injective
    """
    gate = _Gate("glicci", hypotheses)
    gate.require("krull_dim", lambda value: value >= 2, "dim X >= 1")
    gate.require("h1_condition", _is_true, "₀Hom_R(I_X, H¹_m(A)) = 0")
    if spec.c == 2:
        gate.verified.append("c = 2")
    else:
        gate.require("delta0_surjective", _is_true)
    return PartialReport(
        theorem="glicci",
        verdicts=Verdicts(
            glicci_general_element=True, methods={"glicci_general_element": "linear-algebra"}
        ),
        verified=gate.verified,
    )


def _component_verdicts(dimension: int, method: Method) -> Verdicts:
    return Verdicts(
        dim_Ws=dimension,
        codim_exact=0,
        codim_interval=(0, 0),
        generically_smooth=True,
        is_component=True,
        every_def_from_matrix=True,
        methods={"dim_Ws": method, "codim_exact": method},
    )


VERDICT_FUNCTIONS: dict[
    str, Callable[[DegreeMatrixSpec, StratumInvariants, HypothesisRecord], PartialReport]
] = {
    "compthm": verdict_compthm,
    "Amodulethm3": verdict_Amodulethm3,
    "Amodulethm5": verdict_Amodulethm5,
    "compthmvar": verdict_compthmvar,
    "elling_c2": verdict_elling_c2,
    "glicci": verdict_glicci,
}


def degree_gap(spec: DegreeMatrixSpec, alpha: int) -> bool:
    """a_{i - min(α, t)} ≥ b_i for min(α, t) ≤ i ≤ t (rows counted from 1)."""
    t = spec.t
    shift = min(alpha, t)
    return all(spec.a[i - shift] >= spec.b[i - 1] for i in range(shift, t + 1))


def sufficient_condition_scan(spec: DegreeMatrixSpec) -> SufficientConditions:
    """Evaluate the degree-only conditions under which each theorem applies to general A."""
    t, c, n = spec.t, spec.c, spec.n
    krull = n + 1 - c
    gap_2 = degree_gap(spec, 2)
    gap_3 = degree_gap(spec, 3)
    alpha = 3 if gap_3 else 2 if gap_2 else 0
    # codim_{X_j} Sing(X_j) ≥ min(2α - 1, j + 2) along the flag
    singular = [min(2 * alpha - 1, j + 2) for j in range(2, c + 1)] if alpha else []
    upgraded = spec.a[0] > spec.b[-1] and spec.a[t + c - 2] > spec.a[t - 2]
    conditions = SufficientConditions(
        krull_dimension=krull,
        degree_gap_2=gap_2,
        degree_gap_3=gap_3,
        singular_codim_bounds=singular,
        dimension_formula=(n - c >= 1 and gap_2) or zero_dimensional_clause(spec),
        zero_dimensional_clause=zero_dimensional_clause(spec),
        upgraded_dimension_clause=upgraded,
        linear_exception=linear_exception(spec),
        hilbert_component=n - c >= 2 and gap_3,
        Amodulethm3=krull >= 2 and gap_2,
        Amodulethm5=krull >= 3 and gap_3,
        compthmvar=krull >= 3 and gap_3,
        glicci=krull >= 3 and gap_3,
    )
    logger.debug(f"sufficient conditions for {spec.describe()}: {conditions}")
    return conditions


def _near_linear(spec: DegreeMatrixSpec) -> bool:
    """Linear except possibly in the last column."""
    return all(x - y == 1 for x in spec.a[:-1] for y in spec.b)


def _merge(verdicts: Verdicts, partial: PartialReport) -> list[str]:
    findings: list[str] = []
    for name in VERDICT_FIELDS:
        new = getattr(partial.verdicts, name)
        if new is None:
            continue
        old = getattr(verdicts, name)
        if old is None:
            setattr(verdicts, name, new)
            if name in partial.verdicts.methods:
                verdicts.methods[name] = partial.verdicts.methods[name]
        elif name == "codim_interval":
            low, high = max(old[0], new[0]), min(old[1], new[1])
            if low > high:
                findings.append(f"codim intervals {old} and {new} from {partial.theorem} disagree")
            else:
                verdicts.codim_interval = (low, high)
        elif old != new:
            findings.append(f"{name}: {partial.theorem} gives {new}, an earlier theorem gave {old}")
    return findings


def evaluate(
    spec: DegreeMatrixSpec,
    invariants: StratumInvariants,
    hypotheses: HypothesisRecord,
    *,
    theorems: Sequence[str] = THEOREMS,
    conditions: SufficientConditions | None = None,
) -> StratumReport:
    """Run the theorem gates in order and assemble the report.

    Args:
        spec: The degree matrix
        invariants: Closed-form invariants of the stratum
        hypotheses: Hypotheses computed on a standard sample
        theorems: Gates to run, from :data:`THEOREMS`
        conditions: Result of :func:`sufficient_condition_scan`, attached as is

    Returns:
        The report; refused theorems appear in the provenance with the failing hypothesis
    """
    verdicts = Verdicts()
    provenance: list[Provenance] = []
    findings: list[str] = []
    for name in (theorem for theorem in THEOREMS if theorem in theorems):
        try:
            partial = VERDICT_FUNCTIONS[name](spec, invariants, hypotheses)
        except HypothesisNotVerified as e:
            note = ""
            if name == "compthm" and e.hypothesis == "ext1A_MM = 0":
                note = "₀Ext¹_A(M, M) ≠ 0: see compthmvar"
            provenance.append(
                Provenance(
                    theorem=name,
                    fired=False,
                    verified=list(e.verified),
                    missing=[] if e.undecided else [e.hypothesis],
                    undecided=[e.hypothesis] if e.undecided else [],
                    note=note,
                )
            )
            logger.info(f"✗ {e}")
            if (
                name == "compthm"
                and not e.undecided
                and spec.n == spec.c
                and spec.a[0] > spec.b[-1]
                and not _near_linear(spec)
            ):
                findings.append(
                    f"{spec.describe()} fails '{e.hypothesis}' without being near-linear"
                )
            continue
        provenance.append(
            Provenance(theorem=name, fired=True, verified=partial.verified, note=partial.note)
        )
        logger.info(f"✓ {name}: {', '.join(partial.verified)}")
        findings.extend(_merge(verdicts, partial))

    exact, interval = verdicts.codim_exact, verdicts.codim_interval
    if exact is not None and interval is not None and not interval[0] <= exact <= interval[1]:
        findings.append(f"exact codim {exact} lies outside the interval {interval}")
    if linear_exception(spec) and verdicts.dim_Ws == invariants.total:
        findings.append("linear 2 × (c + 1) matrix with n = c, yet dim W_s = λ was derived")
    for finding in findings:
        logger.warning(finding)
    return StratumReport(
        version=REPORT_VERSION,
        spec=spec,
        invariants=invariants,
        hypotheses=hypotheses,
        verdicts=verdicts,
        provenance=provenance,
        conditions=conditions,
        findings=findings,
    )


def _needs(theorems: Iterable[str], *names: str) -> bool:
    return any(name in theorems for name in names)


def collect_hypotheses(
    alg: DeterminantalAlgebra,
    bounds: Bounds | None = None,
    *,
    theorems: Sequence[str] = THEOREMS,
    cross_check: bool = False,
) -> HypothesisRecord:
    """Compute the hypotheses the requested theorems depend on.

    Quantities cut off by the truncation bounds are left as ``None`` and listed in
    ``undecided``.

    Args:
        alg: A standard determinantal sample
        bounds: Truncation bounds for resolutions over A
        theorems: Theorems whose hypotheses are wanted
        cross_check: Also compute ₀ext¹_A(M, M) from a truncated A-resolution
    """
    bounds = bounds or Bounds()
    spec = alg.spec
    record = HypothesisRecord()
    record.record("krull_dim", alg.krull_dimension(), "closed-form")
    record.record("depth", alg.depth(), "closed-form")
    if alg.depth() >= 2:
        record.record("h1_condition", True, "closed-form")
    exact = alg.top_degree() is not None and bounds.degree is None
    resolution_method: Method = "groebner" if exact else "truncated"

    if spec.c == 2:
        for name, value in (
            ("homAMM_is_k", True),
            ("ext1A_MM", 0),
            ("ext2A_MM", 0),
            ("delta0_injective", True),
            ("delta0_surjective", True),
        ):
            record.record(name, value, "closed-form")
    elif _needs(theorems, "compthm", "Amodulethm3", "Amodulethm5", "compthmvar"):
        record.record("homAMM_is_k", homAMM_is_k(alg), "linear-algebra")

    needs_five_term = spec.c != 2 and _needs(
        theorems, "compthm", "Amodulethm3", "Amodulethm5", "compthmvar", "glicci"
    )
    if needs_five_term or _needs(theorems, "Amodulethm3"):
        five = five_term_degree_zero(alg)
        if spec.c != 2:
            record.record("ext1A_MM", five.ext1_A, "linear-algebra")
            record.record("delta0_injective", five.delta0_injective, "linear-algebra")
            record.record("delta0_surjective", five.delta0_surjective, "linear-algebra")
        record.record("ext1R_MM", five.ext1_R, "linear-algebra")
        record.record("e2_01", five.e2_01, "linear-algebra")
        record.record("rank_delta0", five.rank_delta0, "linear-algebra")
        record.record("ext2_kernel", five.ext2_kernel, "linear-algebra")
        record.record("hom_I_A", five.hom_I_A, "linear-algebra")

    def attempt(name: str, compute: Callable[[], int]) -> None:
        try:
            record.record(name, compute(), resolution_method)
        except TruncationExceeded as e:
            logger.warning(f"{name} undecided: {e}")
            record.undecided.append(name)

    if spec.c != 2 and _needs(theorems, "compthm", "Amodulethm5"):
        attempt("ext2A_MM", lambda: ext_A_MM_truncated(alg, 2, bounds))
    if _needs(theorems, "Amodulethm3"):
        attempt("ext1A_conormal", lambda: ext1_A_conormal(alg, bounds).ext1)
    if cross_check:
        attempt("ext1A_MM_resolution", lambda: ext_A_MM_truncated(alg, 1, bounds))
    return record


def verify(
    spec: DegreeMatrixSpec,
    bounds: Bounds | None = None,
    *,
    theorems: Sequence[str] = THEOREMS,
    cross_check: bool = False,
) -> StratumReport:
    """Sample, check standardness, compute the hypotheses and run the verdict engine.

    Raises:
        EmptyStratum: If (b;a) defines an empty stratum
        NotStandard: If no standard sample was found
    """
    if not nonempty(spec):
        raise EmptyStratum(f"W_s{spec.describe()} is empty")
    sample = sample_standard_matrix(spec)
    invariants = dimension_formula(spec, sample.matrix)
    alg = DeterminantalAlgebra(sample.matrix)
    hypotheses = collect_hypotheses(alg, bounds, theorems=theorems, cross_check=cross_check)
    report = evaluate(
        spec,
        invariants,
        hypotheses,
        theorems=theorems,
        conditions=sufficient_condition_scan(spec),
    )
    if cross_check and hypotheses.ext1A_MM_resolution is not None:
        if hypotheses.ext1A_MM_resolution != hypotheses.ext1A_MM:
            report.findings.append(
                f"₀ext¹_A(M, M): five-term {hypotheses.ext1A_MM}, "
                + f"resolution {hypotheses.ext1A_MM_resolution}"
            )
    if not sample.report.good:
        report.findings.append("sample is standard but not good determinantal")
    return report


def report_payload(report: StratumReport) -> dict[str, Any]:
    """JSON-ready form of a report in which every number carries its method tag."""
    inv = report.invariants
    invariants: dict[str, Measured] = {
        "lambda_c": Measured(inv.lambda_c, "closed-form"),
        "K": Measured(inv.K, "closed-form"),
        "ell": Measured(inv.ell, "closed-form"),
        "h": Measured(inv.h, "closed-form"),
        "lambda": Measured(inv.total, "closed-form"),
    }
    if inv.dim_via_HM is not None:
        invariants["dim_via_HM"] = Measured(inv.dim_via_HM, "linear-algebra")
    hypotheses = {
        name: Measured(getattr(report.hypotheses, name), method)
        for name, method in report.hypotheses.methods.items()
    }
    verdicts = {
        name: Measured(
            getattr(report.verdicts, name), report.verdicts.methods.get(name, "linear-algebra")
        )
        for name in VERDICT_FIELDS
        if getattr(report.verdicts, name) is not None
    }
    return {
        "version": report.version,
        "spec": msgspec.to_builtins(report.spec),
        "nonempty": report.invariants.nonempty,
        "invariants": msgspec.to_builtins(invariants),
        "hypotheses": msgspec.to_builtins(hypotheses),
        "undecided": report.hypotheses.undecided,
        "verdicts": msgspec.to_builtins(verdicts),
        "provenance": msgspec.to_builtins(report.provenance),
        "conditions": msgspec.to_builtins(report.conditions),
        "findings": report.findings,
    }


def render_report(report: StratumReport) -> str:
    """Human-readable rendering of a report."""
    inv = report.invariants
    lines = [
        f"W_s{report.spec.describe()}",
        f"  λ_c = {inv.lambda_c}, K = {inv.K}, λ = {inv.total}"
        + (f", Σ H_M(a) - Σ H_M(b) + 1 = {inv.dim_via_HM}" if inv.dim_via_HM is not None else ""),
        "hypotheses:",
    ]
    for name, method in report.hypotheses.methods.items():
        lines.append(f"  {name}: {getattr(report.hypotheses, name)} [{method}]")
    for name in report.hypotheses.undecided:
        lines.append(f"  {name}: undecided within bounds")
    lines.append("verdicts:")
    for name in VERDICT_FIELDS:
        value = getattr(report.verdicts, name)
        if value is not None:
            method = report.verdicts.methods.get(name, "linear-algebra")
            lines.append(f"  {name}: {value} [{method}]")
    lines.append("provenance:")
    for entry in report.provenance:
        if entry.fired:
            lines.append(f"  ✓ {entry.theorem}: {', '.join(entry.verified) or '-'}")
        else:
            reason = entry.missing or [f"{h} (undecided)" for h in entry.undecided]
            lines.append(f"  ✗ {entry.theorem}: {', '.join(reason)}")
        if entry.note:
            lines.append(f"      {entry.note}")
    if report.findings:
        lines.append("findings:")
        lines.extend(f"  - {finding}" for finding in report.findings)
    return "\n".join(lines)
