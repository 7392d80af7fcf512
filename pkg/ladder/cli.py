"""
Helium Ladder CLI

Command-line front end for the two-level ladder-operator model.

Commands:
- solve:     stationary η, ground state, mean-field energy and diagnostics
- scan:      E(η), D±, Λ₊+Λ₋ on a uniform η grid
- density:   radial electron density with its integral
- verify:    canonical anticommutators and the ladder operator identities
- integrals: quoted coefficients beside the literally evaluated integrals

Defaults come from config/hydra/config.yaml; flags are turned into Hydra
overrides and trailing key=value arguments are passed through unchanged.
Documents go to standard output (or --output), diagnostics to standard error.

Usage:
    python -m ladder.cli solve --coefficients paper --unit hartree
    python -m ladder.cli scan --eta-points 201 --format csv
    python -m ladder.cli density --grid 40:2000 --format csv
    python -m ladder.cli verify
    python -m ladder.cli integrals quadrature.nodes=600
"""

from __future__ import annotations

import argparse
import math
import sys
from dataclasses import dataclass, field
from enum import Enum
from pathlib import Path
from typing import Callable, Sequence

import numpy as np
import pandas as pd
from dotenv import load_dotenv
from hydra import compose, initialize_config_dir
from hydra.errors import HydraException
from omegaconf import DictConfig
from omegaconf.errors import OmegaConfBaseException

from ladder import __version__
from ladder.errors import IdentityFailure, LadderError, UsageError
from ladder.fock import IdentityCheck, canonical_relation_checks, failed_checks
from ladder.integrals import (
    ModelCoefficients,
    QuadratureSettings,
    Unit,
    UnitSystem,
    compare_coefficients,
    literal_integrals,
    paper_coefficients,
    quadrature_coefficients,
)
from ladder.model import (
    IDENTITY_PROBE,
    derivative_identity_deviation,
    endpoint_consistency,
    ladder_data,
    mixing_angle,
    printed_form_checks,
    verify_identity_suite,
)
from ladder.solver import density_profile, ground_energy, radial_grid, solve, stationary_eta
from utils.coefficient_utils import load_coefficient_file
from utils.report_utils import flatten_document, frame_to_csv, to_json, write_output

CONFIG_DIR = Path(__file__).resolve().parent.parent / "config" / "hydra"

TOOL_NAME = "helium-ladder"


def log(message: str) -> None:
    print(message, file=sys.stderr)


class Command(str, Enum):
    SOLVE = "solve"
    SCAN = "scan"
    DENSITY = "density"
    VERIFY = "verify"
    INTEGRALS = "integrals"


class CoefficientSource(str, Enum):
    PAPER = "paper"
    QUADRATURE = "quadrature"
    FILE = "file"


class OutputFormat(str, Enum):
    JSON = "json"
    CSV = "csv"


@dataclass(frozen=True)
class GridSpec:
    """Uniform radial grid from 0 to r_max (units of a) with `points` radii."""

    r_max: float = 40.0
    points: int = 2000

    def __post_init__(self):
        if not (math.isfinite(self.r_max) and self.r_max > 0):
            raise UsageError(f"grid r_max must be positive, got {self.r_max!r}")
        if self.points < 2:
            raise UsageError(f"grid needs at least 2 points, got {self.points!r}")

    @classmethod
    def parse(cls, text: str) -> "GridSpec":
        """Parse "RMAX:NPOINTS", e.g. "40:2000"."""
        r_max, sep, points = text.partition(":")
        if not sep:
            raise UsageError(f"grid must look like RMAX:NPOINTS, got {text!r}")
        try:
            return cls(r_max=float(r_max), points=int(points))
        except ValueError:
            raise UsageError(f"grid must look like RMAX:NPOINTS, got {text!r}") from None

    def radii(self) -> np.ndarray:
        return radial_grid(self.r_max, self.points)


@dataclass(frozen=True)
class RunConfig:
    command: Command
    coefficient_source: CoefficientSource = CoefficientSource.PAPER
    coefficient_file: Path | None = None
    eta_override: float | None = None
    unit: Unit = Unit.E2A
    output_format: OutputFormat = OutputFormat.JSON
    grid: GridSpec = field(default_factory=GridSpec)
    eta_points: int = 101
    output: Path | None = None
    quadrature: QuadratureSettings = field(default_factory=QuadratureSettings)
    units: UnitSystem = field(default_factory=UnitSystem)
    fermion_signs: bool = True

    def __post_init__(self):
        if self.eta_override is not None and not 0.0 <= self.eta_override <= 1.0:
            raise UsageError(f"--eta must lie in [0, 1], got {self.eta_override!r}")
        if self.eta_points < 2:
            raise UsageError(f"--eta-points must be at least 2, got {self.eta_points!r}")
        if self.coefficient_source is CoefficientSource.FILE and self.coefficient_file is None:
            raise UsageError("the file coefficient source needs a path: --coefficients file:PATH")


@dataclass(frozen=True)
class CommandOutput:
    document: str
    error: LadderError | None = None


class LadderArgumentParser(argparse.ArgumentParser):
    """ArgumentParser that reports bad usage as UsageError instead of exiting with status 2."""

    def error(self, message):
        self.print_usage(sys.stderr)
        raise UsageError(message)


def parse_coefficients_flag(value: str) -> tuple[CoefficientSource, Path | None]:
    """Split --coefficients into a source and, for file:PATH, the path."""
    if value.startswith("file:"):
        path = value[len("file:"):]
        if not path:
            raise UsageError("--coefficients file: needs a path after the colon")
        return CoefficientSource.FILE, Path(path)
    try:
        return CoefficientSource(value), None
    except ValueError:
        raise UsageError(f"--coefficients must be paper, quadrature or file:PATH, got {value!r}") from None


def build_parser() -> LadderArgumentParser:
    common = LadderArgumentParser(add_help=False)
    common.add_argument(
        "--coefficients",
        metavar="{paper,quadrature,file:PATH}",
        help="Coefficient source (default from config: paper)",
    )
    common.add_argument("--eta", type=float, help="Evaluate at this occupation parameter instead of the stationary one")
    common.add_argument("--unit", choices=[u.value for u in Unit], help="Energy unit of the report")
    common.add_argument("--format", dest="output_format", choices=[f.value for f in OutputFormat], help="Document format")
    common.add_argument("--grid", metavar="RMAX:NPOINTS", help="Radial grid for the density")
    common.add_argument("--eta-points", type=int, help="Number of points in the η scan")
    common.add_argument("--output", type=Path, help="Write the document here instead of standard output")
    common.add_argument("--drop-fermion-signs", action="store_true", help=argparse.SUPPRESS)
    common.add_argument("overrides", nargs="*", metavar="key=value", help="Hydra config overrides")

    parser = LadderArgumentParser(
        prog="python -m ladder.cli",
        description="Ladder-operator ground state of a two-level, two-electron model (helium)",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    subparsers = parser.add_subparsers(dest="command", required=True, parser_class=LadderArgumentParser)
    for command in Command:
        subparsers.add_parser(command.value, parents=[common], help=f"Run {command.value}")
    return parser


def hydra_overrides(args: argparse.Namespace) -> list[str]:
    """Translate parsed flags to Hydra overrides, followed by the user's own."""
    overrides = []
    if args.coefficients is not None:
        source, _ = parse_coefficients_flag(args.coefficients)
        overrides.append(f"source={source.value}")
    if args.unit is not None:
        overrides.append(f"report.unit={args.unit}")
    if args.output_format is not None:
        overrides.append(f"report.format={args.output_format}")
    if args.grid is not None:
        grid = GridSpec.parse(args.grid)
        overrides += [f"density.r_max={grid.r_max!r}", f"density.points={grid.points}"]
    if args.eta_points is not None:
        overrides.append(f"scan.points={args.eta_points}")

    for override in args.overrides:
        if "=" not in override:
            raise UsageError(f"config override must look like key=value, got {override!r}")
    return overrides + list(args.overrides)


def load_config(overrides: Sequence[str] = ()) -> DictConfig:
    """
    Compose config/hydra/config.yaml with overrides.

    Raises:
        UsageError: Unknown key, bad override syntax, or missing config group option
    """
    try:
        with initialize_config_dir(config_dir=str(CONFIG_DIR), version_base=None):
            return compose(config_name="config", overrides=list(overrides))
    except (HydraException, OmegaConfBaseException) as e:
        raise UsageError(f"invalid configuration: {e}") from None


def run_config_from(args: argparse.Namespace, cfg: DictConfig) -> RunConfig:
    coefficient_file = cfg.coefficients.file
    if args.coefficients is not None:
        _, path = parse_coefficients_flag(args.coefficients)
        coefficient_file = path or coefficient_file

    try:
        return RunConfig(
            command=Command(args.command),
            coefficient_source=CoefficientSource(cfg.coefficients.source),
            coefficient_file=Path(coefficient_file) if coefficient_file else None,
            eta_override=args.eta,
            unit=Unit.parse(cfg.report.unit),
            output_format=OutputFormat(cfg.report.format),
            grid=GridSpec(r_max=float(cfg.density.r_max), points=int(cfg.density.points)),
            eta_points=int(cfg.scan.points),
            output=args.output,
            quadrature=QuadratureSettings.from_config(cfg.quadrature),
            units=UnitSystem(**cfg.units),
            fermion_signs=not args.drop_fermion_signs,
        )
    except UsageError:
        raise
    except (ValueError, TypeError, OmegaConfBaseException) as e:
        raise UsageError(f"invalid configuration: {e}") from None


def parse_run_config(argv: Sequence[str] | None = None) -> RunConfig:
    args = build_parser().parse_args(argv)
    cfg = load_config(hydra_overrides(args))
    return run_config_from(args, cfg)


def resolve_coefficients(cfg: RunConfig) -> ModelCoefficients:
    if cfg.coefficient_source is CoefficientSource.PAPER:
        return paper_coefficients()
    if cfg.coefficient_source is CoefficientSource.QUADRATURE:
        log(f"-> Evaluating literal integrals ({cfg.quadrature.nodes} nodes to r = {cfg.quadrature.r_max:g} a)...")
        return quadrature_coefficients(cfg.quadrature)
    return load_coefficient_file(cfg.coefficient_file)


def metadata(cfg: RunConfig, source: str | None) -> dict:
    return {
        "tool": TOOL_NAME,
        "version": __version__,
        "command": cfg.command.value,
        "coefficient_source": source,
        "unit": cfg.unit.value,
    }


def _render(cfg: RunConfig, source: str | None, payload: dict, frame: pd.DataFrame) -> str:
    if cfg.output_format is OutputFormat.CSV:
        log(f"-> {TOOL_NAME} {__version__} {cfg.command.value}, coefficients: {source}, unit: {cfg.unit.value}")
        return frame_to_csv(frame)
    return to_json({"metadata": metadata(cfg, source), **payload})


def cmd_solve(cfg: RunConfig) -> CommandOutput:
    c = resolve_coefficients(cfg)
    log(f"-> Solving with {c.source} coefficients...")
    report = solve(c, eta=cfg.eta_override, units=cfg.units)

    point = report.stationary_point
    if report.stationary and not point.is_minimum:
        log(f"⚠️  Stationary point η* = {report.eta_star:.6g} is not a minimum (curvature {point.curvature:.6g} e^2/a)")
    if point.at_boundary:
        log(f"⚠️  Stationary point clamped to η = {point.eta:g} (linear model: {point.linear})")
    log(f"✅ E = {report.energy_in(cfg.unit):.6f} {cfg.unit.value} at η = {report.eta_star:.6g}")

    document = report.to_dict(cfg.unit)
    return CommandOutput(_render(cfg, c.source, {"report": document}, pd.DataFrame([flatten_document(document)])))


def cmd_scan(cfg: RunConfig) -> CommandOutput:
    c = resolve_coefficients(cfg)
    scale = cfg.units.factor(cfg.unit)
    if cfg.eta_override is not None:
        log(f"⚠️  --eta {cfg.eta_override:g} ignored: scan covers the whole of [0, 1]")
    log(f"-> Scanning {cfg.eta_points} values of η in [0, 1]...")

    rows = []
    for eta in np.linspace(0.0, 1.0, cfg.eta_points):
        ld = ladder_data(c, eta)
        full, quadratic = ground_energy(c, eta)
        rows.append(
            {
                "eta": float(eta),
                "E43": quadratic * scale,
                "E41": full * scale,
                "Dplus": ld.Dplus * scale,
                "Dminus": ld.Dminus * scale,
                "Lambda_sum": ld.lambda_sum,
            }
        )

    frame = pd.DataFrame(rows, columns=["eta", "E43", "E41", "Dplus", "Dminus", "Lambda_sum"])
    log(f"✅ Scanned {len(frame)} points; stationary η* = {stationary_eta(c):.6g}")
    payload = {"columns": list(frame.columns), "rows": frame.to_dict(orient="records")}
    return CommandOutput(_render(cfg, c.source, payload, frame))


def cmd_density(cfg: RunConfig) -> CommandOutput:
    c = resolve_coefficients(cfg)
    eta = cfg.eta_override if cfg.eta_override is not None else stationary_eta(c)
    log(f"-> Density on {cfg.grid.points} radii to r = {cfg.grid.r_max:g} a at η = {eta:.6g}...")

    profile = density_profile(c, eta, cfg.grid.radii())
    if abs(profile.integral - 2.0) > 1e-6:
        log(f"⚠️  Density integrates to {profile.integral:.9f}, expected 2 (grid too coarse or too short?)")
    else:
        log(f"✅ Density integrates to {profile.integral:.9f}")

    frame = pd.DataFrame({"r": profile.radii, "rho": profile.density})
    if cfg.output_format is OutputFormat.CSV:
        text = _render(cfg, c.source, {}, frame) + f"integral,{profile.integral:.12g}\n"
        return CommandOutput(text)

    payload = {
        "eta": float(eta),
        "theta": mixing_angle(c, eta),
        "integral": profile.integral,
        "r": [float(r) for r in profile.radii],
        "rho": [float(rho) for rho in profile.density],
    }
    return CommandOutput(_render(cfg, c.source, payload, frame))


def identity_table(fermion_signs: bool = True) -> list[IdentityCheck]:
    """Every check cmd_verify reports, in order."""
    checks = canonical_relation_checks(fermion_signs=fermion_signs)
    checks += verify_identity_suite(fermion_signs=fermion_signs)
    checks.append(
        IdentityCheck(
            name="derivative identity on a truncated ladder",
            relation="[A,f(B)] = f'(B), deg f = 6",
            deviation=derivative_identity_deviation(),
        )
    )
    checks += [
        IdentityCheck(name=f"mean-field {check.name}", relation="mean field = exact bracket", deviation=check.deviation)
        for check in endpoint_consistency(IDENTITY_PROBE)
    ]
    checks += printed_form_checks(fermion_signs=fermion_signs)
    return checks


def cmd_verify(cfg: RunConfig) -> CommandOutput:
    if not cfg.fermion_signs:
        log("⚠️  Fermion signs dropped: hard-core boson matrices, expect failures")
    log("-> Checking operator identities...")

    checks = identity_table(cfg.fermion_signs)
    failed = failed_checks(checks)
    for check in checks:
        if not check.gating and not check.passed:
            log(f"⚠️  {check.name}: {check.relation} does not hold (deviation {check.deviation:g}), reported only")
    for check in failed:
        log(f"❌ {check.name}: {check.relation} (deviation {check.deviation:g})")
    gating = [check for check in checks if check.gating]
    if not failed:
        log(f"✅ All {len(gating)} identities hold exactly")

    frame = pd.DataFrame(
        [
            {
                "name": check.name,
                "relation": check.relation,
                "deviation": check.deviation,
                "passed": check.passed,
                "gating": check.gating,
            }
            for check in checks
        ],
        columns=["name", "relation", "deviation", "passed", "gating"],
    )
    payload = {"passed": not failed, "checks": frame.to_dict(orient="records")}
    error = IdentityFailure(failed) if failed else None
    return CommandOutput(_render(cfg, None, payload, frame), error)


def cmd_integrals(cfg: RunConfig) -> CommandOutput:
    log(f"-> Evaluating literal integrals ({cfg.quadrature.nodes} nodes to r = {cfg.quadrature.r_max:g} a)...")
    integrals = literal_integrals(cfg.quadrature)
    rows = compare_coefficients(paper_coefficients(), quadrature_coefficients(cfg.quadrature), integrals)

    for row in rows:
        if row.sign_mismatch:
            log(f"⚠️  {row.name}: quoted {row.quoted:.6g} and literal {row.literal:.6g} differ in sign")

    records = [
        {
            "name": row.name,
            "quoted": row.quoted,
            "literal": row.literal,
            "error_estimate": row.error_estimate,
            "ratio": None if math.isnan(row.ratio) else row.ratio,
            "sign_mismatch": row.sign_mismatch,
        }
        for row in rows
    ]
    frame = pd.DataFrame(records, columns=["name", "quoted", "literal", "error_estimate", "ratio", "sign_mismatch"])
    log(f"✅ Compared {len(rows)} coefficients")
    return CommandOutput(_render(cfg, "quoted,literal", {"rows": records}, frame))


COMMANDS: dict[Command, Callable[[RunConfig], CommandOutput]] = {
    Command.SOLVE: cmd_solve,
    Command.SCAN: cmd_scan,
    Command.DENSITY: cmd_density,
    Command.VERIFY: cmd_verify,
    Command.INTEGRALS: cmd_integrals,
}


def main(argv: Sequence[str] | None = None) -> int:
    """
    Run one command.

    Returns:
        Exit code: 0 success, 1 identity failure, 2 degenerate model,
        3 quadrature failure, 64 bad usage
    """
    load_dotenv()

    try:
        cfg = parse_run_config(argv)
        output = COMMANDS[cfg.command](cfg)
        write_output(output.document, cfg.output)
    except SystemExit as e:
        return int(e.code or 0)
    except LadderError as e:
        log(f"❌ {e}")
        return e.exit_code
    except (ValueError, OSError) as e:
        log(f"❌ {e}")
        return UsageError.exit_code

    if output.error is not None:
        log(f"❌ {output.error}")
        return output.error.exit_code
    return 0


if __name__ == "__main__":
    sys.exit(main())
