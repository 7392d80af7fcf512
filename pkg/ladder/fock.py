"""
Fock Space Operators

Exact dense matrices for fermionic creation and annihilation operators on the
16-dimensional Fock space of four spin-orbitals 1↑, 1↓, 2↑, 2↓.

Conventions:
- A basis state is a 4-bit occupation mask: bit b is set iff mode b is occupied.
- Mode ordering is fixed: 1↑ -> 0, 1↓ -> 1, 2↑ -> 2, 2↓ -> 3.
- c†_k maps a state with bit k clear to the state with bit k set, with sign
  (-1)^(number of occupied modes with index < k). The annihilation matrix is
  the transpose.

Every creation/annihilation matrix has entries in {-1, 0, +1}, so products and
commutators of them are exact in floating point. Returned matrices are
read-only and shared between callers.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from functools import lru_cache
from typing import Iterable

import numpy as np
import numpy.typing as npt

OperatorMatrix = npt.NDArray[np.float64]
StateVector = npt.NDArray[np.float64]
FockState = int

N_MODES = 4
DIM = 2**N_MODES

# Truncated Taylor series used after scaling the argument below this 1-norm.
_TAYLOR_DEGREE = 18
_SCALED_NORM = 0.5


class Spin(str, Enum):
    UP = "up"
    DOWN = "down"

    @property
    def arrow(self) -> str:
        return "↑" if self is Spin.UP else "↓"


@dataclass(frozen=True)
class SpinOrbital:
    """One-electron basis function labeled by level (1 or 2) and spin."""

    level: int
    spin: Spin

    def __post_init__(self):
        if self.level not in (1, 2):
            raise ValueError(f"level must be 1 or 2, got {self.level!r}")
        object.__setattr__(self, "spin", Spin(self.spin))

    def __str__(self) -> str:
        return f"{self.level}{self.spin.arrow}"


UP1 = SpinOrbital(1, Spin.UP)
DOWN1 = SpinOrbital(1, Spin.DOWN)
UP2 = SpinOrbital(2, Spin.UP)
DOWN2 = SpinOrbital(2, Spin.DOWN)

# Listed in mode order.
ORBITALS = (UP1, DOWN1, UP2, DOWN2)


def mode_index(orb: SpinOrbital) -> int:
    """Return the fixed mode index of a spin-orbital (1↑=0, 1↓=1, 2↑=2, 2↓=3)."""
    return 2 * (orb.level - 1) + (0 if orb.spin is Spin.UP else 1)


def _check_state(state: FockState) -> None:
    if not 0 <= state < DIM:
        raise ValueError(f"Fock state must lie in 0..{DIM - 1}, got {state!r}")


def occupations(state: FockState) -> tuple[int, ...]:
    """Occupation numbers of a basis state, in mode order."""
    _check_state(state)
    return tuple((state >> mode) & 1 for mode in range(N_MODES))


def particle_number(state: FockState) -> int:
    _check_state(state)
    return state.bit_count()


def spin_z(state: FockState) -> float:
    """S_z = (n₁↑ + n₂↑ − n₁↓ − n₂↓) / 2 of a basis state."""
    n = occupations(state)
    return (n[0] + n[2] - n[1] - n[3]) / 2


def jordan_wigner_sign(state: FockState, mode: int) -> int:
    """Return (-1)^(number of occupied modes with index < mode)."""
    mask = (1 << mode) - 1
    return -1 if (state & mask).bit_count() % 2 else 1


def _readonly(matrix: np.ndarray) -> np.ndarray:
    matrix.flags.writeable = False
    return matrix


@lru_cache(maxsize=None)
def _creation(mode: int, fermion_signs: bool) -> OperatorMatrix:
    matrix = np.zeros((DIM, DIM))
    for state in range(DIM):
        if (state >> mode) & 1:
            continue
        sign = jordan_wigner_sign(state, mode) if fermion_signs else 1
        matrix[state | (1 << mode), state] = sign
    return _readonly(matrix)


@lru_cache(maxsize=None)
def _annihilation(mode: int, fermion_signs: bool) -> OperatorMatrix:
    return _readonly(_creation(mode, fermion_signs).T.copy())


def creation_matrix(orb: SpinOrbital, *, fermion_signs: bool = True) -> OperatorMatrix:
    """
    Matrix of the creation operator c†ₖ for a spin-orbital.

    Args:
        orb: Spin-orbital whose mode is filled
        fermion_signs: Attach the Jordan-Wigner string sign. False builds
                       hard-core boson matrices, which break the canonical
                       anticommutation relations; used only as a negative control.

    Returns:
        Read-only 16x16 matrix with entries in {-1, 0, +1}
    """
    return _creation(mode_index(orb), fermion_signs)


def annihilation_matrix(orb: SpinOrbital, *, fermion_signs: bool = True) -> OperatorMatrix:
    """Matrix of cₖ, the transpose of the creation matrix."""
    return _annihilation(mode_index(orb), fermion_signs)


def commutator(a: OperatorMatrix, b: OperatorMatrix) -> OperatorMatrix:
    """[A, B] = AB − BA."""
    return a @ b - b @ a


def anticommutator(a: OperatorMatrix, b: OperatorMatrix) -> OperatorMatrix:
    """{A, B} = AB + BA."""
    return a @ b + b @ a


@lru_cache(maxsize=None)
def _number(mode: int) -> OperatorMatrix:
    diagonal = [(state >> mode) & 1 for state in range(DIM)]
    return _readonly(np.diag(np.asarray(diagonal, dtype=float)))


def number_operator(orb: SpinOrbital) -> OperatorMatrix:
    """Diagonal occupation matrix nₖ = c†ₖcₖ, eigenvalues 0 and 1."""
    return _number(mode_index(orb))


def identity_matrix() -> OperatorMatrix:
    return np.eye(DIM)


def total_number_operator() -> OperatorMatrix:
    return sum(number_operator(orb) for orb in ORBITALS)


def spin_z_operator() -> OperatorMatrix:
    return np.diag([spin_z(state) for state in range(DIM)])


def operator_product(*factors: OperatorMatrix) -> OperatorMatrix:
    """Ordered product of operator matrices (leftmost factor applied last)."""
    result = identity_matrix()
    for factor in factors:
        result = result @ factor
    return result


def operator_exponential(a: OperatorMatrix) -> OperatorMatrix:
    """
    Matrix exponential by scaling and squaring with a truncated Taylor series.

    The argument is scaled by 2^-s so that its 1-norm is at most 0.5, the
    exponential of the scaled matrix is summed to degree 18 by Horner's rule,
    and the result is squared s times.

    Args:
        a: Square real matrix with finite entries

    Returns:
        exp(a) as a new array

    Raises:
        ValueError: a is not square or has non-finite entries
    """
    a = np.asarray(a, dtype=float)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise ValueError(f"operator_exponential needs a square matrix, got shape {a.shape}")
    if not np.all(np.isfinite(a)):
        raise ValueError("operator_exponential requires finite matrix entries")

    norm = float(np.linalg.norm(a, 1))
    squarings = int(np.ceil(np.log2(norm / _SCALED_NORM))) if norm > _SCALED_NORM else 0
    scaled = a / 2.0**squarings

    eye = np.eye(a.shape[0])
    result = eye.copy()
    for k in range(_TAYLOR_DEGREE, 0, -1):
        result = eye + (scaled @ result) / k

    for _ in range(squarings):
        result = result @ result
    return result


def apply(a: OperatorMatrix, v: StateVector) -> StateVector:
    """Matrix-vector product A|v⟩."""
    return a @ v


def basis_vector(state: FockState) -> StateVector:
    _check_state(state)
    v = np.zeros(DIM)
    v[state] = 1.0
    return v


def vacuum() -> StateVector:
    return basis_vector(0)


def create_state(*orbitals: SpinOrbital, fermion_signs: bool = True) -> StateVector:
    """
    Apply a product of creation operators to the vacuum.

    create_state(a, b) is c†_a c†_b |0⟩: the rightmost orbital is filled first.
    """
    v = vacuum()
    for orb in reversed(orbitals):
        v = apply(creation_matrix(orb, fermion_signs=fermion_signs), v)
    return v


def max_deviation(lhs: np.ndarray, rhs: np.ndarray) -> float:
    """Largest absolute elementwise difference between two arrays."""
    return float(np.max(np.abs(np.asarray(lhs) - np.asarray(rhs))))


@dataclass(frozen=True)
class IdentityCheck:
    """
    One operator identity with its maximum elementwise deviation.

    Checks with gating=False are reported but never counted as failures.
    """

    name: str
    relation: str
    deviation: float
    gating: bool = True

    @property
    def passed(self) -> bool:
        return self.deviation == 0.0


def canonical_relation_checks(*, fermion_signs: bool = True) -> list[IdentityCheck]:
    """
    Check the canonical anticommutation relations as matrix identities.

    Covers {cₖ, cₖ'} = 0 for the ten unordered mode pairs, {cₖ, cₖ'†} = δₖₖ'
    for all sixteen ordered pairs, and the ordering sign c†₁↑c†₁↓|0⟩ = −c†₁↓c†₁↑|0⟩.

    Args:
        fermion_signs: Passed to the matrix builders; False is the negative control

    Returns:
        List of IdentityCheck, one per relation
    """
    checks = []
    zero = np.zeros((DIM, DIM))

    for i, a in enumerate(ORBITALS):
        for b in ORBITALS[i:]:
            lhs = anticommutator(
                annihilation_matrix(a, fermion_signs=fermion_signs),
                annihilation_matrix(b, fermion_signs=fermion_signs),
            )
            checks.append(
                IdentityCheck(
                    name=f"anticommutator c{a} c{b}",
                    relation=f"{{c_{a}, c_{b}}} = 0",
                    deviation=max_deviation(lhs, zero),
                )
            )

    for a in ORBITALS:
        for b in ORBITALS:
            lhs = anticommutator(
                annihilation_matrix(a, fermion_signs=fermion_signs),
                creation_matrix(b, fermion_signs=fermion_signs),
            )
            rhs = identity_matrix() if a == b else zero
            checks.append(
                IdentityCheck(
                    name=f"anticommutator c{a} c{b}†",
                    relation=f"{{c_{a}, c_{b}†}} = {'1' if a == b else '0'}",
                    deviation=max_deviation(lhs, rhs),
                )
            )

    forward = create_state(UP1, DOWN1, fermion_signs=fermion_signs)
    backward = create_state(DOWN1, UP1, fermion_signs=fermion_signs)
    checks.append(
        IdentityCheck(
            name="creation ordering sign",
            relation="c†_1↑ c†_1↓|0⟩ = −c†_1↓ c†_1↑|0⟩",
            deviation=max_deviation(forward, -backward),
        )
    )
    return checks


def failed_checks(checks: Iterable[IdentityCheck]) -> list[IdentityCheck]:
    return [check for check in checks if check.gating and not check.passed]
