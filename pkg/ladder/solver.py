"""
Ground-State Solver

Stationary occupation parameter, the explicit ground-state vector, the
mean-field energy, the radial electron density, and diagnostics that set the
mean-field result beside the exact matrix representation.

The mean-field energy is
    E(η) = 2ε₁+2V₁ + (−2ε₁+2ε₂−4V₁+4U)η + 2(V₁+V₂−2U)η²
and the ground state is |g⟩ = exp[−θ(ψ̃†−ψ̃)]|d₁⟩ = cosθ|d₁⟩ − sinθ|d₂⟩ with
θ = Ū/D₋. E(η) is reported as the ground energy; the exact expectation
⟨g|H|g⟩ and the exact sector spectrum are reported next to it, never in its
place.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Any

import numpy as np
from scipy.integrate import trapezoid

from ladder.fock import (
    DOWN2,
    UP2,
    StateVector,
    apply,
    number_operator,
    operator_exponential,
)
from ladder.integrals import ONE_S, TWO_S, UNITS, ModelCoefficients, Unit, UnitSystem
from ladder.model import (
    LadderData,
    build_hamiltonian,
    build_phi_tilde,
    build_psi_tilde,
    ladder_data,
    mixing_angle,
    occupation_factor,
    pair_states,
    phi_commutator_coefficient,
    step_energies,
)

LINEAR_TOLERANCE = 1e-12

# Fock indices of c†₁↑c†₁↓|0⟩, c†₁↑c†₂↓|0⟩, c†₂↑c†₁↓|0⟩, c†₂↑c†₂↓|0⟩.
SECTOR_STATES = (3, 9, 6, 12)


@dataclass(frozen=True)
class ReferenceEnergy:
    name: str
    hartree: float
    citation: str


KOROBOV = ReferenceEnergy(
    "korobov",
    -2.90372,
    "V. I. Korobov, nonrelativistic variational energy of the helium ground state (5200 basis functions)",
)
EXPERIMENT = ReferenceEnergy("experiment", -2.9034, "measured helium ground-state energy")
HARTREE_FOCK = ReferenceEnergy("hartree_fock", -2.8617, "Hartree-Fock limit for the helium ground state")

REFERENCES = (KOROBOV, EXPERIMENT, HARTREE_FOCK)


def _check_eta(eta: float) -> float:
    eta = float(eta)
    if not 0.0 <= eta <= 1.0:
        raise ValueError(f"eta must lie in [0, 1], got {eta!r}")
    return eta


def energy_quadratic(c: ModelCoefficients, eta: float) -> float:
    """Mean-field energy E(η) in e²/a with the Ū² terms dropped."""
    eta = _check_eta(eta)
    return (
        2 * c.eps1
        + 2 * c.V1
        + (-2 * c.eps1 + 2 * c.eps2 - 4 * c.V1 + 4 * c.U) * eta
        + 2 * (c.V1 + c.V2 - 2 * c.U) * eta**2
    )


@dataclass(frozen=True)
class StationaryPoint:
    """
    Stationary point of E(η) on [0, 1].

    Attributes:
        eta: Reported occupation parameter, always in [0, 1]
        unclamped: Root of dE/dη before clamping; None for a linear model
        at_boundary: The root fell outside [0, 1] and was clamped
        linear: The quadratic coefficient vanished and the better endpoint was chosen
        curvature: d²E/dη² = 4(V₁+V₂−2U)
    """

    eta: float
    unclamped: float | None
    at_boundary: bool
    linear: bool
    curvature: float

    @property
    def is_minimum(self) -> bool:
        return self.curvature > 0

    def as_dict(self) -> dict[str, Any]:
        return {
            "eta": self.eta,
            "unclamped": self.unclamped,
            "at_boundary": self.at_boundary,
            "linear": self.linear,
            "curvature": self.curvature,
            "is_minimum": self.is_minimum,
        }


def stationary_point(c: ModelCoefficients) -> StationaryPoint:
    quadratic = c.V1 + c.V2 - 2 * c.U
    curvature = 4 * quadratic

    if abs(quadratic) < LINEAR_TOLERANCE:
        eta = 1.0 if energy_quadratic(c, 1.0) < energy_quadratic(c, 0.0) else 0.0
        return StationaryPoint(eta=eta, unclamped=None, at_boundary=True, linear=True, curvature=curvature)

    root = (2 * c.eps1 - 2 * c.eps2 + 4 * c.V1 - 4 * c.U) / (4 * quadratic)
    eta = min(max(root, 0.0), 1.0)
    return StationaryPoint(eta=eta, unclamped=root, at_boundary=eta != root, linear=False, curvature=curvature)


def stationary_eta(c: ModelCoefficients) -> float:
    """
    Closed-form stationary point η* of E(η), clamped to [0, 1].

    See stationary_point for the boundary and linear-model flags.
    """
    return stationary_point(c).eta


def rotation_state(theta: float) -> StateVector:
    """cosθ|d₁⟩ − sinθ|d₂⟩."""
    d1, d2 = pair_states()
    return math.cos(theta) * d1 - math.sin(theta) * d2


def ground_state_vector(c: ModelCoefficients, eta: float) -> StateVector:
    """
    Build |g⟩ = exp[−θ(ψ̃†−ψ̃)]|d₁⟩ with the operator exponential.

    The Λ₋ scalars of ψ₋ and ψ₋† cancel in their difference, so the generator
    is −θ(ψ̃†−ψ̃) with θ = Ū/D₋.

    Raises:
        DegenerateModelError: D₋ vanishes while Ū ≠ 0
    """
    theta = mixing_angle(c, eta)
    psi = build_psi_tilde()
    d1, _ = pair_states()
    return apply(operator_exponential(-theta * (psi.T - psi)), d1)


def ground_energy(c: ModelCoefficients, eta: float) -> tuple[float, float]:
    """
    Mean-field ground energy at η, with and without the ladder shift term.

    Args:
        c: Model coefficients
        eta: Occupation parameter in [0, 1]

    Returns:
        (E_full, E_quadratic) in e²/a, where E_full includes −Ū(Λ₊+Λ₋)
    """
    ld = ladder_data(c, eta)
    eta = ld.eta
    full = (
        2 * (1 - eta) * c.eps1
        + 2 * eta * c.eps2
        + 2 * c.V1 * (1 - eta) ** 2
        + 2 * c.V2 * eta**2
        + 4 * c.U * eta * (1 - eta)
        - c.Ubar * ld.lambda_sum
    )
    return full, energy_quadratic(c, eta)


def residual_norm(c: ModelCoefficients, eta: float) -> float:
    """‖(ψ̃ + Λ₋)|g⟩‖ in the exact representation: the closure defect of the mean-field annihilation condition."""
    lambda_minus = occupation_factor(eta) * mixing_angle(c, eta)
    g = ground_state_vector(c, eta)
    return float(np.linalg.norm(apply(build_psi_tilde(), g) + lambda_minus * g))


def exact_sector_spectrum(c: ModelCoefficients) -> tuple[float, ...]:
    """Ascending eigenvalues of H restricted to N = 2, S_z = 0, in e²/a."""
    h = build_hamiltonian(c)
    block = h[np.ix_(SECTOR_STATES, SECTOR_STATES)]
    return tuple(float(value) for value in np.linalg.eigvalsh(block))


@dataclass(frozen=True)
class RadialDensityProfile:
    """
    Spherically averaged electron density on a radial grid.

    Attributes:
        radii: Grid in units of a
        density: ρ(r) in a⁻³
        integral: Trapezoid value of ∫ρ·4πr²dr on the grid
    """

    radii: np.ndarray
    density: np.ndarray
    integral: float

    def at_origin(self) -> float:
        return float(self.density[0])


def radial_grid(r_max: float = 40.0, points: int = 2000) -> np.ndarray:
    """Uniform grid of `points` radii from 0 to r_max (units of a)."""
    if not (math.isfinite(r_max) and r_max > 0):
        raise ValueError(f"r_max must be positive, got {r_max!r}")
    if int(points) != points or points < 2:
        raise ValueError(f"a radial grid needs at least 2 points, got {points!r}")
    return np.linspace(0.0, float(r_max), int(points))


def _check_grid(grid) -> np.ndarray:
    radii = np.asarray(grid, dtype=float)
    if radii.ndim != 1 or radii.size < 2:
        raise ValueError("radial grid must be one-dimensional with at least 2 points")
    if not np.all(np.isfinite(radii)) or radii[0] < 0:
        raise ValueError("radial grid must be finite and non-negative")
    if np.any(np.diff(radii) <= 0):
        raise ValueError("radial grid must be strictly increasing")
    return radii


def density_profile(c: ModelCoefficients, eta: float, grid) -> RadialDensityProfile:
    """
    ρ(r) = 2cos²θ|u₁ₛ(r)|² + 2sin²θ|u₂ₛ(r)|² on a radial grid.

    Args:
        c: Model coefficients
        eta: Occupation parameter in [0, 1]
        grid: Strictly increasing, non-negative radii

    Returns:
        RadialDensityProfile whose integral is the electron count on the grid

    Raises:
        ValueError: Malformed grid or eta outside [0, 1]
        DegenerateModelError: D₋ vanishes while Ū ≠ 0
    """
    radii = _check_grid(grid)
    theta = mixing_angle(c, eta)
    density = (
        2 * math.cos(theta) ** 2 * ONE_S.amplitude(radii) ** 2
        + 2 * math.sin(theta) ** 2 * TWO_S.amplitude(radii) ** 2
    )
    integral = float(trapezoid(4 * np.pi * radii**2 * density, radii))
    return RadialDensityProfile(radii=radii, density=density, integral=integral)


@dataclass(frozen=True)
class ReferenceDelta:
    reference: ReferenceEnergy
    delta_hartree: float

    @property
    def relative_error(self) -> float:
        return abs(self.delta_hartree) / abs(self.reference.hartree)

    def as_dict(self) -> dict[str, Any]:
        return {
            "reference_hartree": self.reference.hartree,
            "delta_hartree": self.delta_hartree,
            "relative_error": self.relative_error,
            "citation": self.reference.citation,
        }


@dataclass(frozen=True)
class GroundStateReport:
    """
    Everything solve() computes for one coefficient set.

    Energies are stored in e²/a; to_dict converts them. `energy` is the
    mean-field functional including the ladder shift term, which equals the
    quadratic form at the stationary point.
    """

    coefficients: ModelCoefficients
    eta_star: float
    stationary: bool
    stationary_point: StationaryPoint
    ladder: LadderData
    energy: float
    energy_quadratic: float
    state: StateVector
    residual_norm: float
    exact_sector_spectrum: tuple[float, ...]
    exact_expectation: float
    level2_occupation: float
    phi_norms: tuple[float, float]
    step_energies: tuple[float, float]
    phi_coefficient: float
    reference_deltas: tuple[ReferenceDelta, ...]
    units: UnitSystem = field(default=UNITS)

    @property
    def theta(self) -> float:
        return self.ladder.theta

    @property
    def lambda_term(self) -> float:
        """−Ū(Λ₊+Λ₋) in e²/a."""
        return -self.coefficients.Ubar * self.ladder.lambda_sum

    def energy_in(self, unit: Unit | str) -> float:
        return self.energy * self.units.factor(unit)

    def to_dict(self, unit: Unit | str = Unit.E2A) -> dict[str, Any]:
        unit = Unit.parse(unit)
        scale = self.units.factor(unit)
        return {
            "coefficients": {**self.coefficients.as_dict(), "source": self.coefficients.source},
            "eta_star": self.eta_star,
            "stationary": self.stationary,
            "stationary_point": self.stationary_point.as_dict(),
            "unit": unit.value,
            "energy": self.energy * scale,
            "energy_quadratic": self.energy_quadratic * scale,
            "lambda_term": self.lambda_term * scale,
            "energies": {u.value: self.energy_in(u) for u in Unit},
            "theta": self.theta,
            "ladder": self.ladder.as_dict(),
            "lambda_sum": self.ladder.lambda_sum,
            "state": [float(x) for x in self.state],
            "residual_norm": self.residual_norm,
            "exact_sector_spectrum": [value * scale for value in self.exact_sector_spectrum],
            "exact_expectation": self.exact_expectation * scale,
            "level2_occupation": self.level2_occupation,
            "phi_norms": {"phi": self.phi_norms[0], "phi_dagger": self.phi_norms[1]},
            "step_energies": {
                "raising": self.step_energies[0] * scale,
                "lowering": self.step_energies[1] * scale,
            },
            "phi_coefficient": self.phi_coefficient * scale,
            "reference_deltas": {d.reference.name: d.as_dict() for d in self.reference_deltas},
        }


def solve(c: ModelCoefficients, eta: float | None = None, units: UnitSystem = UNITS) -> GroundStateReport:
    """
    Run the full ground-state pipeline for one coefficient set.

    Args:
        c: Model coefficients
        eta: Evaluate at this η instead of the stationary point
        units: Conversion constants for the reference comparison

    Returns:
        GroundStateReport

    Raises:
        ValueError: eta outside [0, 1]
        DegenerateModelError: A ladder denominator vanishes while Ū ≠ 0
    """
    point = stationary_point(c)
    eta_used = point.eta if eta is None else _check_eta(eta)

    ld = ladder_data(c, eta_used)
    full, quadratic = ground_energy(c, eta_used)
    g = ground_state_vector(c, eta_used)

    h = build_hamiltonian(c)
    phi = build_phi_tilde()
    n2 = number_operator(UP2) + number_operator(DOWN2)

    energy_hartree = full * units.hartree_per_e2a
    deltas = tuple(ReferenceDelta(ref, energy_hartree - ref.hartree) for ref in REFERENCES)

    return GroundStateReport(
        coefficients=c,
        eta_star=eta_used,
        stationary=eta is None,
        stationary_point=point,
        ladder=ld,
        energy=full,
        energy_quadratic=quadratic,
        state=g,
        residual_norm=residual_norm(c, eta_used),
        exact_sector_spectrum=exact_sector_spectrum(c),
        exact_expectation=float(g @ h @ g),
        level2_occupation=float(g @ n2 @ g) / 2,
        phi_norms=(float(np.linalg.norm(phi @ g)), float(np.linalg.norm(phi.T @ g))),
        step_energies=step_energies(c, eta_used),
        phi_coefficient=phi_commutator_coefficient(c, eta_used),
        reference_deltas=deltas,
        units=units,
    )
