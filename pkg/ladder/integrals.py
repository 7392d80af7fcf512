"""
Coulomb Integrals

Hydrogenic 1s/2s orbitals and the two-electron Coulomb and exchange integrals
of the two-level model. Two coefficient sources are provided:

- "paper": the quoted closed-form values, exact rationals times e²/a.
- "literal": numerical quadrature of the defining six-dimensional integrals,
  reduced for s orbitals to a two-dimensional radial integral with kernel
  1/max(r, r').

Lengths are in units of a = ħ²/(2me²) (half the Bohr radius) and energies in
e²/a. Conversion to hartree and eV happens only at the reporting boundary.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, fields, replace
from enum import Enum
from fractions import Fraction
from functools import lru_cache
from typing import Callable, ClassVar, Mapping

import numpy as np

from ladder.errors import QuadratureError, UsageError


class OrbitalKind(str, Enum):
    ONE_S = "one_s"
    TWO_S = "two_s"

    @property
    def principal(self) -> int:
        return 1 if self is OrbitalKind.ONE_S else 2


@dataclass(frozen=True)
class HydrogenicOrbital:
    """
    Hydrogenic s orbital.

    Attributes:
        kind: one_s or two_s
        length_scale: Radial scale in units of a (1.0 for the helium basis)
    """

    kind: OrbitalKind
    length_scale: float = 1.0

    def __post_init__(self):
        object.__setattr__(self, "kind", OrbitalKind(self.kind))
        if not (math.isfinite(self.length_scale) and self.length_scale > 0):
            raise ValueError(f"length_scale must be positive, got {self.length_scale!r}")

    @property
    def energy(self) -> float:
        """One-electron energy −1/(n²s²) in e²/a."""
        return -1.0 / (self.kind.principal**2 * self.length_scale**2)

    def amplitude(self, r):
        return orbital_amplitude(self, r)

    def __str__(self) -> str:
        return f"{self.kind.principal}s"


ONE_S = HydrogenicOrbital(OrbitalKind.ONE_S)
TWO_S = HydrogenicOrbital(OrbitalKind.TWO_S)


def orbital_amplitude(orb: HydrogenicOrbital, r):
    """
    Evaluate the orbital at radius r (units of a).

    u₁ₛ(r) = exp(−r)/√π and u₂ₛ(r) = (1 − r/2)exp(−r/2)/(2√(2π)), in units of
    a^(-3/2), with r measured in units of the orbital's length scale.

    Args:
        orb: Orbital to evaluate
        r: Radius or array of radii, all ≥ 0

    Returns:
        Amplitude with the same shape as r (a float for scalar input)

    Raises:
        ValueError: Any radius is negative or not a number
    """
    radii = np.asarray(r, dtype=float)
    if np.any(~(radii >= 0)):
        raise ValueError("orbital_amplitude requires non-negative radii")

    x = radii / orb.length_scale
    if orb.kind is OrbitalKind.ONE_S:
        value = np.exp(-x) / np.sqrt(np.pi)
    else:
        value = (1.0 - x / 2.0) * np.exp(-x / 2.0) / (2.0 * np.sqrt(2.0 * np.pi))
    value = value / orb.length_scale**1.5

    return float(value) if np.ndim(r) == 0 else value


@dataclass(frozen=True)
class QuadratureSettings:
    """
    Gauss–Legendre radial quadrature on [0, r_max] (units of a).

    Each integral is evaluated with `nodes` and `2 * nodes` points per
    dimension; their difference is the error estimate.
    """

    r_max: float = 60.0
    nodes: int = 400
    rel_tol: float = 1e-6

    def __post_init__(self):
        if not self.r_max > 0:
            raise ValueError(f"quadrature r_max must be positive, got {self.r_max!r}")
        if self.nodes < 2:
            raise ValueError(f"quadrature needs at least 2 nodes, got {self.nodes!r}")
        if not self.rel_tol > 0:
            raise ValueError(f"quadrature rel_tol must be positive, got {self.rel_tol!r}")

    @classmethod
    def from_config(cls, section: Mapping) -> "QuadratureSettings":
        return cls(
            r_max=float(section["r_max"]),
            nodes=int(section["nodes"]),
            rel_tol=float(section["rel_tol"]),
        )


DEFAULT_QUADRATURE = QuadratureSettings()


@dataclass(frozen=True)
class QuadratureResult:
    value: float
    error_estimate: float
    nodes: int

    @property
    def relative_error(self) -> float:
        return self.error_estimate / abs(self.value) if self.value else math.inf


@lru_cache(maxsize=8)
def _legendre(nodes: int) -> tuple[np.ndarray, np.ndarray]:
    return np.polynomial.legendre.leggauss(nodes)


def _gauss_legendre(lower, upper, nodes: int) -> tuple[np.ndarray, np.ndarray]:
    """Nodes and weights on [lower, upper]; array bounds give one rule per row."""
    x, w = _legendre(nodes)
    lower = np.asarray(lower, dtype=float)[..., None]
    half = (np.asarray(upper, dtype=float)[..., None] - lower) / 2.0
    return lower + half * (x + 1.0), half * w


def _radial_product(orb_a: HydrogenicOrbital, orb_b: HydrogenicOrbital) -> Callable:
    """Return r -> 4πr² u_a(r) u_b(r)."""

    def density(r):
        return 4.0 * np.pi * r**2 * orbital_amplitude(orb_a, r) * orbital_amplitude(orb_b, r)

    return density


def _one_electron(f: Callable, r_max: float, nodes: int) -> float:
    r, w = _gauss_legendre(0.0, r_max, nodes)
    return float(np.sum(w * f(r)))


def _two_electron(f_outer: Callable, f_inner: Callable, r_max: float, nodes: int) -> float:
    """∫∫ f_outer(r) f_inner(r') / max(r, r') dr' dr over [0, r_max]², split at r' = r."""
    r, w = _gauss_legendre(0.0, r_max, nodes)
    below, w_below = _gauss_legendre(np.zeros_like(r), r, nodes)
    above, w_above = _gauss_legendre(r, np.full_like(r, r_max), nodes)

    potential = np.sum(w_below * f_inner(below), axis=1) / r
    potential += np.sum(w_above * f_inner(above) / above, axis=1)
    return float(np.sum(w * f_outer(r) * potential))


def _converged(name: str, evaluate: Callable[[int], float], settings: QuadratureSettings) -> QuadratureResult:
    coarse = evaluate(settings.nodes)
    fine = evaluate(2 * settings.nodes)
    error = abs(fine - coarse)

    scale = abs(fine)
    relative = error / scale if scale > 0 else (0.0 if error == 0 else math.inf)
    if not math.isfinite(fine) or relative > settings.rel_tol:
        raise QuadratureError(name, relative, settings.rel_tol)
    return QuadratureResult(value=fine, error_estimate=error, nodes=2 * settings.nodes)


def _extent(settings: QuadratureSettings, *orbitals: HydrogenicOrbital) -> float:
    return settings.r_max * max(orb.length_scale for orb in orbitals)


def norm_integral(orb: HydrogenicOrbital, settings: QuadratureSettings = DEFAULT_QUADRATURE) -> QuadratureResult:
    """∫|u|² d³r, which is 1 for a normalized orbital."""
    return overlap_integral(orb, orb, settings)


def overlap_integral(
    orb_a: HydrogenicOrbital,
    orb_b: HydrogenicOrbital,
    settings: QuadratureSettings = DEFAULT_QUADRATURE,
) -> QuadratureResult:
    """⟨u_a|u_b⟩. The 1s-2s overlap vanishes, so only its absolute error is meaningful."""
    r_max = _extent(settings, orb_a, orb_b)
    f = _radial_product(orb_a, orb_b)
    coarse = _one_electron(f, r_max, settings.nodes)
    fine = _one_electron(f, r_max, 2 * settings.nodes)
    return QuadratureResult(value=fine, error_estimate=abs(fine - coarse), nodes=2 * settings.nodes)


def coulomb_direct(
    orb_a: HydrogenicOrbital,
    orb_b: HydrogenicOrbital,
    settings: QuadratureSettings = DEFAULT_QUADRATURE,
) -> QuadratureResult:
    """
    Direct Coulomb integral ∫∫|u_a(r)|²|u_b(r')|² e²/|r−r'| in e²/a.

    Args:
        orb_a: Orbital of the first electron
        orb_b: Orbital of the second electron
        settings: Radial quadrature settings

    Returns:
        QuadratureResult with the grid-doubling error estimate

    Raises:
        QuadratureError: Relative error estimate above settings.rel_tol
    """
    r_max = _extent(settings, orb_a, orb_b)
    outer = _radial_product(orb_a, orb_a)
    inner = _radial_product(orb_b, orb_b)
    return _converged(
        f"direct({orb_a},{orb_b})",
        lambda nodes: _two_electron(outer, inner, r_max, nodes),
        settings,
    )


def coulomb_exchange(
    orb_a: HydrogenicOrbital,
    orb_b: HydrogenicOrbital,
    settings: QuadratureSettings = DEFAULT_QUADRATURE,
) -> QuadratureResult:
    """
    Exchange integral ∫∫u_a(r)u_b(r') e²/|r−r'| u_a(r')u_b(r) in e²/a.

    For identical orbitals this is the direct integral.
    """
    r_max = _extent(settings, orb_a, orb_b)
    pair = _radial_product(orb_a, orb_b)
    return _converged(
        f"exchange({orb_a},{orb_b})",
        lambda nodes: _two_electron(pair, pair, r_max, nodes),
        settings,
    )


@dataclass(frozen=True)
class ModelCoefficients:
    """
    Scalar inputs of the two-level model, all in e²/a.

    Attributes:
        eps1, eps2: One-electron level energies
        V1, V2: On-level pair repulsions
        U: Inter-level direct (correlation) integral
        Ubar: Inter-level exchange integral
        source: Where the values came from ("paper", "literal", "file", ...)
    """

    eps1: float
    eps2: float
    V1: float
    V2: float
    U: float
    Ubar: float
    source: str = "custom"

    NAMES: ClassVar[tuple[str, ...]] = ("eps1", "eps2", "V1", "V2", "U", "Ubar")

    def __post_init__(self):
        for name in self.NAMES:
            value = float(getattr(self, name))
            if not math.isfinite(value):
                raise ValueError(f"coefficient {name} must be finite, got {value!r}")
            object.__setattr__(self, name, value)

    def as_dict(self) -> dict[str, float]:
        return {name: getattr(self, name) for name in self.NAMES}

    @classmethod
    def from_mapping(cls, values: Mapping[str, float], source: str = "custom") -> "ModelCoefficients":
        missing = [name for name in cls.NAMES if name not in values]
        if missing:
            raise UsageError(f"missing coefficient(s): {', '.join(missing)}")
        return cls(**{name: values[name] for name in cls.NAMES}, source=source)

    def with_values(self, **changes: float) -> "ModelCoefficients":
        return replace(self, **changes)


PAPER_FRACTIONS: dict[str, Fraction] = {
    "eps1": Fraction(-1),
    "eps2": Fraction(-1, 4),
    "V1": Fraction(-2),
    "V2": Fraction(-1, 2),
    "U": Fraction(17, 162),
    "Ubar": Fraction(8, 729),
}


def paper_coefficients() -> ModelCoefficients:
    """The quoted helium coefficients, exact rationals rounded once to float."""
    return ModelCoefficients(**{name: float(value) for name, value in PAPER_FRACTIONS.items()}, source="paper")


@lru_cache(maxsize=4)
def literal_integrals(settings: QuadratureSettings = DEFAULT_QUADRATURE) -> dict[str, QuadratureResult]:
    """Quadrature of the four defining integrals, keyed by coefficient name."""
    return {
        "V1": coulomb_direct(ONE_S, ONE_S, settings),
        "V2": coulomb_direct(TWO_S, TWO_S, settings),
        "U": coulomb_direct(ONE_S, TWO_S, settings),
        "Ubar": coulomb_exchange(ONE_S, TWO_S, settings),
    }


def quadrature_coefficients(settings: QuadratureSettings = DEFAULT_QUADRATURE) -> ModelCoefficients:
    """
    Coefficients from the defining integrals evaluated literally.

    Level energies come from the orbitals; V1, V2 and U from coulomb_direct and
    Ubar from coulomb_exchange. The result is tagged source="literal".
    """
    integrals = literal_integrals(settings)
    return ModelCoefficients(
        eps1=ONE_S.energy,
        eps2=TWO_S.energy,
        **{name: result.value for name, result in integrals.items()},
        source="literal",
    )


@dataclass(frozen=True)
class CoefficientComparison:
    name: str
    quoted: float
    literal: float
    error_estimate: float
    ratio: float
    sign_mismatch: bool


def compare_coefficients(
    quoted: ModelCoefficients,
    literal: ModelCoefficients,
    errors: Mapping[str, QuadratureResult] | None = None,
) -> list[CoefficientComparison]:
    """Side-by-side rows of two coefficient sets, with quoted/literal ratio."""
    errors = errors or {}
    rows = []
    for name in ModelCoefficients.NAMES:
        p, q = getattr(quoted, name), getattr(literal, name)
        estimate = errors[name].error_estimate if name in errors else 0.0
        rows.append(
            CoefficientComparison(
                name=name,
                quoted=p,
                literal=q,
                error_estimate=estimate,
                ratio=p / q if q else math.nan,
                sign_mismatch=(p < 0) != (q < 0) and p != 0 and q != 0,
            )
        )
    return rows


class Unit(str, Enum):
    E2A = "e2a"
    HARTREE = "hartree"
    EV = "ev"

    @classmethod
    def parse(cls, value: "Unit | str") -> "Unit":
        try:
            return cls(value)
        except ValueError:
            choices = ", ".join(unit.value for unit in cls)
            raise UsageError(f"unknown energy unit {value!r} (expected one of: {choices})") from None


@dataclass(frozen=True)
class UnitSystem:
    """
    Conversion constants relative to e²/a.

    a is half the Bohr radius, so 1 e²/a = 2 hartree exactly, and
    1 hartree = 27.211 eV.
    """

    hartree_per_e2a: float = 2.0
    ev_per_hartree: float = 27.211

    @property
    def ev_per_e2a(self) -> float:
        return self.hartree_per_e2a * self.ev_per_hartree

    def factor(self, unit: Unit | str) -> float:
        """Multiplier taking an energy in e²/a to `unit`."""
        unit = Unit.parse(unit)
        if unit is Unit.E2A:
            return 1.0
        if unit is Unit.HARTREE:
            return self.hartree_per_e2a
        return self.ev_per_e2a

    def as_dict(self) -> dict[str, float]:
        return {field.name: getattr(self, field.name) for field in fields(self)}


UNITS = UnitSystem()


def convert_energy(x: float, from_unit: Unit | str, to_unit: Unit | str, units: UnitSystem = UNITS) -> float:
    """
    Convert an energy between e²/a, hartree and eV.

    Raises:
        UsageError: Unknown unit name
    """
    source, target = Unit.parse(from_unit), Unit.parse(to_unit)
    if source is target:
        return float(x)
    if source is Unit.E2A:
        return float(x) * units.factor(target)
    return float(x) / units.factor(source) * units.factor(target)
