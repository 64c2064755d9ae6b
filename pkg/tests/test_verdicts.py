"""Tests for the verdicts module."""

import msgspec
import pytest

from detstrata.determinantal import DegreeMatrixSpec
from detstrata.exceptions import EmptyStratum, HypothesisNotVerified
from detstrata.formulas import stratum_invariants
from detstrata.verdicts import (
    THEOREMS,
    HypothesisRecord,
    degree_gap,
    evaluate,
    render_report,
    report_payload,
    sufficient_condition_scan,
    verdict_Amodulethm3,
    verdict_Amodulethm5,
    verdict_compthm,
    verdict_compthmvar,
    verdict_elling_c2,
    verdict_glicci,
    verify,
)

BOIJ_I = DegreeMatrixSpec(n=2, b=(-1, 0), a=(1, 1, 1, 1))
BLIN_I = DegreeMatrixSpec(n=2, b=(0, 0), a=(1, 1, 1, 3))
THREE_POINTS = DegreeMatrixSpec(n=2, b=(0, 0), a=(1, 1, 1))


def record(**values):
    return HypothesisRecord(**values)


class TestGates:
    def test_undecided_hypothesis(self):
        """Test that a missing hypothesis refuses the theorem as undecided."""
        with pytest.raises(HypothesisNotVerified) as excinfo:
            verdict_compthm(BOIJ_I, stratum_invariants(BOIJ_I), record())
        assert excinfo.value.undecided
        assert excinfo.value.hypothesis == "homAMM_is_k"

    def test_failing_hypothesis(self):
        """Test that a false hypothesis refuses the theorem and keeps what was verified."""
        with pytest.raises(HypothesisNotVerified) as excinfo:
            verdict_compthm(
                BLIN_I, stratum_invariants(BLIN_I), record(homAMM_is_k=True, ext1A_MM=2)
            )
        assert not excinfo.value.undecided
        assert excinfo.value.hypothesis == "ext1A_MM = 0"
        assert excinfo.value.verified == ("homAMM_is_k",)

    def test_compthm(self):
        """Test dim W_s = λ and deformations from the matrix when ₀Ext²_A(M, M) = 0."""
        partial = verdict_compthm(
            BOIJ_I,
            stratum_invariants(BOIJ_I),
            record(homAMM_is_k=True, ext1A_MM=0, ext2A_MM=0),
        )
        assert partial.verdicts.dim_Ws == 16
        assert partial.verdicts.every_def_from_matrix
        assert partial.verified == ["homAMM_is_k", "ext1A_MM = 0", "ext2A_MM = 0"]

    def test_compthm_without_ext2(self):
        """Test that an unknown ₀Ext²_A(M, M) leaves every_def_from_matrix unset."""
        partial = verdict_compthm(
            BOIJ_I, stratum_invariants(BOIJ_I), record(homAMM_is_k=True, ext1A_MM=0)
        )
        assert partial.verdicts.every_def_from_matrix is None

    def test_Amodulethm3_codimension(self):
        """Test codim W_s = ₀hom(I, A) - λ = 4 when ₀Ext¹_A(I/I², A) = 0."""
        partial = verdict_Amodulethm3(
            BOIJ_I,
            stratum_invariants(BOIJ_I),
            record(homAMM_is_k=True, ext1A_MM=0, hom_I_A=20, ext1A_conormal=0),
        )
        assert partial.verdicts.codim_interval == (0, 4)
        assert partial.verdicts.codim_exact == 4
        assert partial.verdicts.generically_smooth
        assert partial.verdicts.is_component is False

    def test_Amodulethm3_interval_only(self):
        """Test that without the conormal condition only the interval is reported."""
        partial = verdict_Amodulethm3(
            BOIJ_I,
            stratum_invariants(BOIJ_I),
            record(homAMM_is_k=True, ext1A_MM=0, hom_I_A=20, ext2_kernel=3),
        )
        assert partial.verdicts.codim_interval == (0, 4)
        assert partial.verdicts.codim_exact is None
        assert "exceeds" in partial.note

    def test_Amodulethm5(self):
        """Test that vanishing ₀Ext¹ and ₀Ext² make W̄_s a smooth component of dim λ."""
        partial = verdict_Amodulethm5(
            BOIJ_I,
            stratum_invariants(BOIJ_I),
            record(homAMM_is_k=True, ext1A_MM=0, ext2A_MM=0),
        )
        assert partial.verdicts.dim_Ws == 16
        assert partial.verdicts.is_component
        with pytest.raises(HypothesisNotVerified) as excinfo:
            verdict_Amodulethm5(
                BOIJ_I,
                stratum_invariants(BOIJ_I),
                record(homAMM_is_k=True, ext1A_MM=0, ext2A_MM=10),
            )
        assert excinfo.value.hypothesis == "ext2A_MM = 0"

    def test_compthmvar(self):
        """Test dim W_s = λ - ₀ext¹_A(M, M) for the cubic-column example."""
        partial = verdict_compthmvar(
            BLIN_I,
            stratum_invariants(BLIN_I),
            record(homAMM_is_k=True, delta0_surjective=True, ext1A_MM=2),
        )
        assert partial.verdicts.dim_Ws == 6
        assert partial.verdicts.is_component
        assert partial.verdicts.methods["dim_Ws"] == "linear-algebra"

    def test_compthmvar_needs_surjective_delta(self):
        """Test that δ₀ not onto refuses the theorem."""
        with pytest.raises(HypothesisNotVerified):
            verdict_compthmvar(
                BLIN_I,
                stratum_invariants(BLIN_I),
                record(homAMM_is_k=True, delta0_surjective=False, ext1A_MM=2),
            )

    def test_elling_c2(self):
        """Test that the c = 2 theorem only fires for c = 2."""
        partial = verdict_elling_c2(THREE_POINTS, stratum_invariants(THREE_POINTS), record())
        assert partial.verdicts.dim_Ws == 6
        with pytest.raises(HypothesisNotVerified):
            verdict_elling_c2(BLIN_I, stratum_invariants(BLIN_I), record())

    def test_glicci_needs_positive_dimension(self):
        """Test that artinian A is refused."""
        with pytest.raises(HypothesisNotVerified) as excinfo:
            verdict_glicci(BLIN_I, stratum_invariants(BLIN_I), record(krull_dim=0))
        assert excinfo.value.hypothesis == "dim X >= 1"


class TestEvaluate:
    def test_provenance_per_theorem(self):
        """Test one provenance entry per requested theorem, in evaluation order."""
        report = evaluate(
            BLIN_I,
            stratum_invariants(BLIN_I),
            record(homAMM_is_k=True, ext1A_MM=2, delta0_surjective=True, krull_dim=0),
        )
        assert [entry.theorem for entry in report.provenance] == list(THEOREMS)
        assert report.fired() == ["compthmvar"]
        assert report.verdicts.dim_Ws == 6
        compthm = next(entry for entry in report.provenance if entry.theorem == "compthm")
        assert compthm.missing == ["ext1A_MM = 0"]
        assert "compthmvar" in compthm.note

    def test_theorem_subset(self):
        """Test that only the requested gates run."""
        report = evaluate(
            BLIN_I, stratum_invariants(BLIN_I), record(), theorems=["compthmvar", "compthm"]
        )
        assert [entry.theorem for entry in report.provenance] == ["compthmvar", "compthm"]
        assert len(report.undecided()) == 2
        assert [entry.theorem for entry in report.undecided(["compthm"])] == ["compthm"]

    def test_disagreement_is_a_finding(self):
        """Test that two theorems setting different values produce a finding."""
        report = evaluate(
            BOIJ_I,
            stratum_invariants(BOIJ_I),
            record(
                homAMM_is_k=True,
                ext1A_MM=0,
                ext2A_MM=0,
                delta0_surjective=True,
                hom_I_A=20,
                ext1A_conormal=0,
            ),
            theorems=["compthmvar", "Amodulethm3"],
        )
        assert report.verdicts.codim_exact == 0
        assert any("codim_exact" in finding for finding in report.findings)

    def test_linear_exception_finding(self):
        """Test the warning when dim W_s = λ is derived for a linear 2 x (c + 1) matrix."""
        points = DegreeMatrixSpec(n=3, b=(0, 0), a=(1, 1, 1, 1))
        report = evaluate(
            points,
            stratum_invariants(points),
            record(homAMM_is_k=True, ext1A_MM=0),
            theorems=["compthm"],
        )
        assert report.fired() == ["compthm"]
        assert any("linear 2 × (c + 1)" in finding for finding in report.findings)

    def test_payload_and_rendering(self):
        """Test the JSON payload tags and the text rendering."""
        report = evaluate(
            BLIN_I,
            stratum_invariants(BLIN_I),
            record(homAMM_is_k=True, ext1A_MM=2, delta0_surjective=True),
            theorems=["compthmvar", "compthm"],
        )
        payload = msgspec.json.decode(msgspec.json.encode(report_payload(report)))
        assert payload["invariants"]["lambda"] == {"value": 8, "method": "closed-form"}
        assert payload["verdicts"]["dim_Ws"]["value"] == 6
        assert payload["spec"]["a"] == [1, 1, 1, 3]
        text = render_report(report)
        assert "✓ compthmvar" in text
        assert "✗ compthm: ext1A_MM = 0" in text


class TestSufficientConditions:
    def test_degree_gap(self):
        """Test a_{i - α} ≥ b_i along the rows."""
        assert degree_gap(BOIJ_I, 2)
        assert not degree_gap(DegreeMatrixSpec(n=2, b=(0, 2), a=(1, 1, 3)), 2)

    def test_high_dimension(self):
        """Test that a linear 2 x 3 matrix in k[x0..x4] meets every degree condition."""
        conditions = sufficient_condition_scan(DegreeMatrixSpec(n=4, b=(0, 0), a=(1, 1, 1)))
        assert conditions.krull_dimension == 3
        assert conditions.singular_codim_bounds == [4]
        assert conditions.Amodulethm5
        assert conditions.glicci
        assert conditions.hilbert_component
        assert conditions.dimension_formula

    def test_artinian(self):
        """Test that no component theorem is promised for artinian A."""
        conditions = sufficient_condition_scan(BLIN_I)
        assert conditions.krull_dimension == 0
        assert not conditions.Amodulethm3
        assert not conditions.compthmvar


@pytest.mark.slow
class TestVerify:
    def test_three_points(self):
        """Test the full pipeline on three points in the plane."""
        report = verify(THREE_POINTS)
        assert report.verdicts.dim_Ws == 6
        assert "elling_c2" in report.fired()
        assert "glicci" not in report.fired()
        assert report.invariants.dim_via_HM == 6
        assert report.hypotheses.hom_I_A == 6

    def test_empty(self):
        """Test that an empty stratum is refused."""
        with pytest.raises(EmptyStratum):
            verify(DegreeMatrixSpec(n=2, b=(0, 5), a=(1, 1, 1)))
