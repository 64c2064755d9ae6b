"""Run configuration and default bounds for detstrata operations."""

import argparse
import os
from dataclasses import dataclass, field
from pathlib import Path
from typing import Literal

from .exceptions import InvalidSpecError

DEFAULT_PRIME = 10007
# Second characteristic used when a golden value disagrees at DEFAULT_PRIME
FALLBACK_PRIME = 32003
SAMPLE_ATTEMPTS = 8
SEED_ENV_VAR = "DETSTRATA_SEED"
DEFAULT_HOMOLOGICAL_BOUND = 3

OutputFormat = Literal["json", "text"]


@dataclass(frozen=True, slots=True)
class Bounds:
    """Truncation bounds for resolutions and Ext computations.

    ``degree`` of ``None`` means "derive a bound from the data" (largest twist plus n + 3).
    """

    homological: int = DEFAULT_HOMOLOGICAL_BOUND
    degree: int | None = None

    @classmethod
    def parse(cls, text: str | None) -> "Bounds":
        """Parse the CLI form ``hom=3,deg=12``.

        Args:
            text: Comma-separated ``key=value`` pairs, or None for defaults

        Returns:
            Parsed bounds

        Raises:
            InvalidSpecError: If a key is unknown or a value is not an integer
        """
        if not text:
            return cls()
        values: dict[str, int] = {}
        for part in text.split(","):
            key, sep, raw = part.partition("=")
            key = key.strip()
            if not sep or key not in ("hom", "deg"):
                raise InvalidSpecError(f"Invalid bounds item '{part}' (expected hom=N or deg=N)")
            try:
                values[key] = int(raw)
            except ValueError as e:
                raise InvalidSpecError(f"Bound '{key}' is not an integer: {raw!r}") from e
        return cls(
            homological=values.get("hom", DEFAULT_HOMOLOGICAL_BOUND),
            degree=values.get("deg"),
        )

    def degree_for(self, max_twist: int, n: int) -> int:
        """Internal-degree bound to use when the caller gave none."""
        if self.degree is not None:
            return self.degree
        return max_twist + n + 3

    def describe(self) -> str:
        degree = "auto" if self.degree is None else str(self.degree)
        return f"hom={self.homological},deg={degree}"


def resolve_seed(explicit: int | None) -> int:
    """Seed precedence: explicit flag, then ``DETSTRATA_SEED``, then 0."""
    if explicit is not None:
        return explicit
    raw = os.environ.get(SEED_ENV_VAR)
    if raw is None or not raw.strip():
        return 0
    try:
        return int(raw)
    except ValueError as e:
        raise InvalidSpecError(f"{SEED_ENV_VAR} must be an integer, got {raw!r}") from e


@dataclass
class WorkspaceConfig:
    """Configuration for workspace file paths."""

    schema_path: Path
    registry_path: Path
    goldens_dir: Path

    @classmethod
    def from_workspace(cls, workspace: Path) -> "WorkspaceConfig":
        """Create configuration from workspace root path.

        Args:
            workspace: Path to workspace root directory

        Returns:
            WorkspaceConfig with standard file paths
        """
        data = workspace / "data"
        return cls(
            schema_path=data / "degree_matrix_spec.schema.json",
            registry_path=data / "registry.yaml",
            goldens_dir=data / "goldens",
        )


@dataclass
class RunConfig:
    """Resolved settings for one CLI command."""

    command: str
    workspace: WorkspaceConfig
    prime: int | None = None
    seed: int = 0
    bounds: Bounds = field(default_factory=Bounds)
    output_format: OutputFormat = "text"
    example_id: str | None = None

    @classmethod
    def from_args(cls, args: argparse.Namespace) -> "RunConfig":
        """Build the run configuration from parsed CLI arguments.

        Args:
            args: Namespace produced by the detstrata argument parser

        Returns:
            RunConfig with seed and bounds resolved
        """
        return cls(
            command=str(getattr(args, "command", "")),
            workspace=WorkspaceConfig.from_workspace(Path(getattr(args, "workspace", "."))),
            prime=getattr(args, "p", None),
            seed=resolve_seed(getattr(args, "seed", None)),
            bounds=Bounds.parse(getattr(args, "bounds", None)),
            output_format=getattr(args, "format", "text"),
            example_id=getattr(args, "example_id", None),
        )
