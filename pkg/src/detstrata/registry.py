"""Reproduction registry: worked examples recomputed and diffed against golden files.

``data/registry.yaml`` lists each example with one instance per materialised parameter value;
``data/goldens/<id>.yaml`` holds the expected numbers per instance together with a
provenance tag per field (``stated`` values come from the literature, ``derived`` ones from a
closed form).
"""

import logging
from collections.abc import Callable
from dataclasses import dataclass
from functools import cached_property
from typing import Any, Literal

import msgspec
import yaml

from .config import FALLBACK_PRIME, Bounds, WorkspaceConfig
from .determinantal import DegreeMatrixSpec, DeterminantalAlgebra, load_spec
from .exceptions import InvalidSpecError
from .formulas import StratumInvariants, stratum_invariants
from .ghost import GenerizationReport, GhostOverlap, verify_generization
from .groebner.resolution import BettiTable
from .verdicts import THEOREMS, StratumReport, verify

logger = logging.getLogger(__name__)

Provenance = Literal["stated", "derived"]


class RegistryInstance(msgspec.Struct, kw_only=True, forbid_unknown_fields=True):
    label: str
    spec: dict[str, Any]


class RegistryExample(msgspec.Struct, kw_only=True, forbid_unknown_fields=True):
    kind: Literal["stratum", "ghost"]
    summary: str
    instances: list[RegistryInstance]
    corner: tuple[int, int] | None = None
    theorems: list[str] | None = None
    bounds: str | None = None


class Golden(msgspec.Struct, kw_only=True, forbid_unknown_fields=True):
    example: str
    provenance: dict[str, Provenance]
    instances: dict[str, dict[str, Any]]


class FieldDiff(msgspec.Struct, frozen=True, kw_only=True):
    instance: str
    field: str
    expected: Any
    actual: Any

    def describe(self) -> str:
        return f"{self.instance}.{self.field}: expected {self.expected!r}, got {self.actual!r}"


class InstanceResult(msgspec.Struct, kw_only=True):
    label: str
    prime: int
    checked: list[str] = msgspec.field(default_factory=list)
    diffs: list[FieldDiff] = msgspec.field(default_factory=list)
    notes: list[str] = msgspec.field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.diffs


class ReproductionResult(msgspec.Struct, kw_only=True):
    example: str
    instances: list[InstanceResult]

    @property
    def passed(self) -> bool:
        return all(instance.passed for instance in self.instances)

    @property
    def diffs(self) -> list[FieldDiff]:
        return [d for instance in self.instances for d in instance.diffs]


def load_registry(workspace: WorkspaceConfig) -> dict[str, RegistryExample]:
    """Read ``registry.yaml``.

    Raises:
        FileNotFoundError: If the registry file is missing
        InvalidSpecError: If the registry does not have the expected shape
    """
    path = workspace.registry_path
    if not path.exists():
        raise FileNotFoundError(f"Registry not found: {path}")
    with open(path, encoding="utf-8") as f:
        data = yaml.safe_load(f)
    try:
        return msgspec.convert(data["examples"], type=dict[str, RegistryExample])
    except (KeyError, TypeError, msgspec.ValidationError) as e:
        raise InvalidSpecError(f"Invalid registry {path.name}: {e}") from e


def load_golden(workspace: WorkspaceConfig, example_id: str) -> Golden:
    path = workspace.goldens_dir / f"{example_id}.yaml"
    if not path.exists():
        raise FileNotFoundError(f"Golden file not found: {path}")
    with open(path, encoding="utf-8") as f:
        data = yaml.safe_load(f)
    try:
        golden = msgspec.convert(data, type=Golden)
    except msgspec.ValidationError as e:
        raise InvalidSpecError(f"Invalid golden file {path.name}: {e}") from e
    if golden.example != example_id:
        raise InvalidSpecError(f"{path.name} describes '{golden.example}', not '{example_id}'")
    missing = {name for values in golden.instances.values() for name in values} - set(
        golden.provenance
    )
    if missing:
        raise InvalidSpecError(f"{path.name}: no provenance for {sorted(missing)}")
    return golden


def ideal_steps(table: BettiTable) -> list[str]:
    """Steps of the resolution of I (the table of R/I shifted down) as summand strings."""
    ideal = table.shifted(-1)
    return [ideal.summands(i) for i in range(ideal.length + 1)]


def _ghost_triples(overlaps: list[GhostOverlap], attribute: str) -> list[list[int]]:
    """[step of I, j, count] for every overlap with a nonzero ``attribute``."""
    triples: list[list[int]] = []
    for overlap in overlaps:
        count = getattr(overlap, attribute)
        if count:
            triples.append([overlap.i - 1, overlap.j, count])
    return triples


@dataclass
class _Run:
    """Lazily computed quantities for one instance; each field is computed on first use."""

    spec: DegreeMatrixSpec
    example: RegistryExample
    bounds: Bounds

    @cached_property
    def invariants(self) -> StratumInvariants:
        return stratum_invariants(self.spec)

    @cached_property
    def report(self) -> StratumReport:
        return verify(self.spec, self.bounds, theorems=self.example.theorems or THEOREMS)

    @cached_property
    def algebra(self) -> DeterminantalAlgebra:
        return DeterminantalAlgebra.sample(self.spec)

    @cached_property
    def generization(self) -> GenerizationReport:
        if self.example.corner is None:
            raise InvalidSpecError("ghost examples need a corner")
        i, j = self.example.corner
        return verify_generization(self.spec, i, j)


FIELDS: dict[str, Callable[[_Run], Any]] = {
    "lambda_c": lambda run: run.invariants.lambda_c,
    "K": lambda run: run.invariants.K,
    "lambda": lambda run: run.invariants.total,
    "h_vector": lambda run: (
        run.generization.h_vector if run.example.kind == "ghost" else run.algebra.h_vector()
    ),
    "dim_Ws": lambda run: run.report.verdicts.dim_Ws,
    "codim": lambda run: run.report.verdicts.codim_exact,
    "hom_I_A": lambda run: run.report.hypotheses.hom_I_A,
    "ext1A_conormal": lambda run: run.report.hypotheses.ext1A_conormal,
    "ext1R_MM": lambda run: run.report.hypotheses.ext1R_MM,
    "ext1A_MM": lambda run: run.report.hypotheses.ext1A_MM,
    "ext2A_MM": lambda run: run.report.hypotheses.ext2A_MM,
    "betti_I_special": lambda run: ideal_steps(run.generization.special),
    "betti_I_general": lambda run: ideal_steps(run.generization.general),
    "removed_ghosts": lambda run: _ghost_triples(
        run.generization.special_ghosts.overlaps, "removable"
    ),
    "persistent_ghosts": lambda run: _ghost_triples(
        run.generization.general_ghosts.overlaps, "persistent"
    ),
    "generization_ok": lambda run: run.generization.ok,
}


def _normalize(value: Any) -> Any:
    """Tuples and lists compare equal; YAML only has lists."""
    if isinstance(value, tuple | list):
        return [_normalize(v) for v in value]
    return value


def check_instance(
    example: RegistryExample,
    instance: RegistryInstance,
    expected: dict[str, Any],
    workspace: WorkspaceConfig,
    prime: int | None = None,
) -> InstanceResult:
    """Recompute the fields named in ``expected`` and diff them."""
    spec = load_spec(instance.spec, workspace.schema_path)
    if prime is not None:
        spec = spec.with_prime(prime)
    run = _Run(spec, example, Bounds.parse(example.bounds))
    result = InstanceResult(label=instance.label, prime=spec.p)
    for name, value in expected.items():
        if name not in FIELDS:
            raise InvalidSpecError(f"Golden field '{name}' has no computation")
        actual = _normalize(FIELDS[name](run))
        result.checked.append(name)
        if actual != _normalize(value):
            result.diffs.append(
                FieldDiff(instance=instance.label, field=name, expected=value, actual=actual)
            )
        logger.debug(f"{instance.label}.{name} = {actual!r}")
    if run.example.kind == "ghost":
        result.notes.extend(run.generization.findings)
    return result


def reproduce(example_id: str, workspace: WorkspaceConfig) -> ReproductionResult:
    """Recompute every golden value of one example.

    An instance that disagrees at its own prime is recomputed at ``FALLBACK_PRIME``; if it
    agrees there the instance passes with a note that the value is characteristic-sensitive.

    Raises:
        KeyError: If ``example_id`` is not in the registry
    """
    registry = load_registry(workspace)
    if example_id not in registry:
        raise KeyError(f"Unknown example '{example_id}' (known: {', '.join(registry)})")
    example = registry[example_id]
    golden = load_golden(workspace, example_id)
    results: list[InstanceResult] = []
    for instance in example.instances:
        expected = golden.instances.get(instance.label)
        if expected is None:
            raise InvalidSpecError(f"{example_id}: no golden values for '{instance.label}'")
        logger.info(f"Reproducing {example_id} [{instance.label}]")
        result = check_instance(example, instance, expected, workspace)
        if not result.passed:
            logger.warning(
                f"{example_id} [{instance.label}] differs at p = {result.prime}; "
                + f"retrying at p = {FALLBACK_PRIME}"
            )
            retry = check_instance(example, instance, expected, workspace, FALLBACK_PRIME)
            if retry.passed:
                retry.notes.append(
                    f"characteristic-sensitive: mismatch at p = {result.prime}: "
                    + "; ".join(d.describe() for d in result.diffs)
                )
            result = retry
        results.append(result)
    return ReproductionResult(example=example_id, instances=results)


def example_ids(workspace: WorkspaceConfig) -> list[str]:
    return list(load_registry(workspace))

