"""
Helium Ladder Pipeline DAG

This module defines a Prefect flow that reproduces every result of the
ladder-operator model and writes the documents to the data directory.

Pipeline Structure:
1. Integrals: quoted coefficients vs literal quadrature (once)
2. Verify: canonical anticommutators and ladder identities (once)
3. For each coefficient source:
   Save coefficients → Solve → Scan η → Density

Every command runs as `python -m ladder.cli` in a subprocess, so a document
on disk is byte-for-byte what the CLI prints.
"""

import os
import subprocess
import sys
from pathlib import Path
from typing import Optional

from dotenv import load_dotenv
from omegaconf import OmegaConf
from prefect import flow, task

# Add project root to path
project_root = Path(__file__).parent.parent
if str(project_root) not in sys.path:
    sys.path.insert(0, str(project_root))

from ladder.cli import load_config
from ladder.integrals import QuadratureSettings, paper_coefficients, quadrature_coefficients
from utils.coefficient_utils import load_coefficient_file, save_coefficient_file
from utils.report_utils import timestamped_path

SOURCES = ("paper", "quadrature", "file")


def coefficients_flag(source, coefficient_file=None):
    """--coefficients value for a source name."""
    if source not in SOURCES:
        raise ValueError(f"unknown coefficient source {source!r} (expected one of: {', '.join(SOURCES)})")
    if source == "file":
        if not coefficient_file:
            raise ValueError("the file source needs LADDER_COEFFICIENTS or coefficients.file set")
        return f"file:{coefficient_file}"
    return source


@task(name="skip_placeholder", log_prints=True)
def skip_placeholder():
    """Placeholder task that returns None when a phase is skipped."""
    return None


@task(name="save_coefficients", log_prints=True)
def save_coefficients(source, data_dir, quadrature, coefficient_file=None):
    """Write the coefficient set a source resolves to as coefficients_<source>.txt."""
    if source == "paper":
        coefficients = paper_coefficients()
    elif source == "quadrature":
        print("-> Evaluating literal integrals...")
        coefficients = quadrature_coefficients(QuadratureSettings.from_config(quadrature))
    else:
        coefficients = load_coefficient_file(coefficient_file)

    path = save_coefficient_file(coefficients, os.path.join(data_dir, f"coefficients_{source}.txt"))
    print(f"✅ Coefficients ({coefficients.source}) saved to: {path}")
    return path


@task(name="run_command", log_prints=True)
def run_command(command, output_path, extra_args=()):
    """
    Run one CLI command and write its document to output_path.

    Args:
        command: CLI command (solve, scan, density, verify, integrals)
        output_path: Document destination
        extra_args: Further CLI flags

    Returns:
        Path of the written document
    """
    cmd = [sys.executable, "-m", "ladder.cli", command, *extra_args, "--output", str(output_path)]
    print(f"-> {' '.join(cmd[1:])}")
    result = subprocess.run(
        cmd,
        cwd=str(project_root),
        capture_output=False,
        text=True
    )
    if result.returncode != 0:
        raise RuntimeError(f"Failed to run {command} (exit code: {result.returncode})")
    return str(output_path)


@flow(name="helium_ladder_pipeline", log_prints=True)
def helium_ladder_pipeline(
    sources: Optional[list[str]] = None,
    run_integrals: bool = True,
    run_verify: bool = True,
    run_reports: bool = True,
    run_scan: bool = True,
    run_density: bool = True,
    timestamp: Optional[int] = None,
):
    """
    Main reproduction flow.

    Args:
        sources: Coefficient sources to report on. Defaults to ["paper", "quadrature"].
        run_integrals: If True, write the quoted-vs-literal coefficient table.
        run_verify: If True, write the identity table; a failed identity fails the flow.
        run_reports: If True, save coefficients and run solve for each source.
        run_scan: If True (and run_reports), scan η for each source.
        run_density: If True (and run_reports), write the density for each source.
        timestamp: Unix timestamp for file names. Defaults to now.

    Returns:
        Nested dict of written document paths
    """
    load_dotenv()
    cfg = load_config()
    data_dir = os.path.abspath(cfg.paths.data_dir)
    coefficient_file = cfg.coefficients.file
    sources = list(sources or ["paper", "quadrature"])
    for source in sources:
        coefficients_flag(source, coefficient_file)

    print("=" * 80)
    print("Starting Helium Ladder Pipeline")
    print("=" * 80)
    print(f"Configuration: sources={sources}, integrals={run_integrals}, verify={run_verify}, "
          f"reports={run_reports}, scan={run_scan}, density={run_density}, data_dir={data_dir}")
    print("=" * 80)

    def document(name, extension):
        return timestamped_path(data_dir, name, extension, timestamp)

    # Step 1: Coefficient table
    if run_integrals:
        print("\n[Step 1] Comparing quoted and literal integrals...")
        integrals_task = run_command("integrals", document("integrals", "csv"), ["--format", "csv"])
    else:
        print("\n[Step 1] Skipping integrals (run_integrals=False)")
        integrals_task = skip_placeholder()

    # Step 2: Identity table
    if run_verify:
        print("\n[Step 2] Verifying operator identities...")
        verify_task = run_command("verify", document("verify", "json"))
    else:
        print("\n[Step 2] Skipping verify (run_verify=False)")
        verify_task = skip_placeholder()

    # Step 3: Per-source reports
    reports = {}
    if run_reports:
        for source in sources:
            print(f"\n[Step 3] Reports for {source} coefficients...")
            args = ["--coefficients", coefficients_flag(source, coefficient_file)]
            reports[source] = {
                "coefficients": save_coefficients(source, data_dir, OmegaConf.to_container(cfg.quadrature), coefficient_file),
                "solve": run_command("solve", document(f"solve_{source}", "json"), args),
                "scan": (
                    run_command("scan", document(f"scan_{source}", "csv"), args + ["--format", "csv"])
                    if run_scan else skip_placeholder()
                ),
                "density": (
                    run_command("density", document(f"density_{source}", "csv"), args + ["--format", "csv"])
                    if run_density else skip_placeholder()
                ),
            }
    else:
        print("\n[Step 3] Skipping reports (run_reports=False)")

    print("\n" + "=" * 80)
    print("✅ Helium Ladder Pipeline completed successfully!")
    print("=" * 80)

    return {
        "integrals": integrals_task,
        "verify": verify_task,
        "reports": reports,
    }


if __name__ == "__main__":
    # Allow running with various flags to control pipeline execution
    import argparse
    parser = argparse.ArgumentParser(description="Run Helium Ladder Pipeline")
    parser.add_argument(
        "--source",
        action="append",
        choices=SOURCES,
        help="Coefficient source to report on (repeatable; default: paper and quadrature)"
    )
    parser.add_argument(
        "--integrals-only",
        action="store_true",
        help="Run only the integrals table"
    )
    parser.add_argument(
        "--verify-only",
        action="store_true",
        help="Run only the identity verification"
    )
    parser.add_argument(
        "--reports-only",
        action="store_true",
        help="Run only the per-source reports (skip integrals and verify)"
    )
    parser.add_argument(
        "--no-integrals",
        action="store_true",
        help="Skip the integrals table"
    )
    parser.add_argument(
        "--no-verify",
        action="store_true",
        help="Skip identity verification"
    )
    parser.add_argument(
        "--no-scan",
        action="store_true",
        help="Skip the η scans"
    )
    parser.add_argument(
        "--no-density",
        action="store_true",
        help="Skip the density profiles"
    )
    args = parser.parse_args()

    # If a "*-only" flag is set, only run that phase
    if args.integrals_only:
        phases = dict(run_integrals=True, run_verify=False, run_reports=False)
    elif args.verify_only:
        phases = dict(run_integrals=False, run_verify=True, run_reports=False)
    elif args.reports_only:
        phases = dict(run_integrals=False, run_verify=False, run_reports=True)
    else:
        phases = dict(run_integrals=not args.no_integrals, run_verify=not args.no_verify, run_reports=True)

    helium_ladder_pipeline(
        sources=args.source,
        run_scan=not args.no_scan,
        run_density=not args.no_density,
        **phases
    )
