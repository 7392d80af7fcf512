"""
Two-Level Model

The Hamiltonian and pair-transfer operators of the two-level model as exact
16x16 matrices, the mean-field ladder algebra built on them, and a machine
check of every operator identity the ladder construction relies on.

Operators:
- ψ̃ = c†₁↑c†₁↓c₂↓c₂↑ moves a level-2 pair into level 1.
- φ̃ = c†₁↑c†₂↓c₂↑c₁↓ exchanges the levels of a 1↓/2↑ pair.
- H = ε₁(n₁↑+n₁↓) + ε₂(n₂↑+n₂↓) + V₁n₁↑n₁↓ + V₂n₂↑n₂↓
      + U(n₁↑n₂↓+n₁↓n₂↑) + Ū(ψ̃+ψ̃†−φ̃−φ̃†)

Mean-field substitution replaces ⟨n₁σ⟩ by 1−η and ⟨n₂σ⟩ by η. The ladder
denominators are
    D₋ = ε₁−ε₂+V₁(1−2η)−V₂(1+2η)+4Uη
    D₊ = −ε₁+ε₂−V₁(3−2η)−V₂(1−2η)+4U(1−η)
so that [H, ψ₊†] = 2D₊ψ₊† and [H, ψ₋] = 2D₋ψ₋.
"""

from __future__ import annotations

from dataclasses import asdict, dataclass
from typing import Sequence

import numpy as np

from ladder.errors import DegenerateModelError
from ladder.fock import (
    DOWN1,
    DOWN2,
    UP1,
    UP2,
    IdentityCheck,
    OperatorMatrix,
    StateVector,
    annihilation_matrix,
    anticommutator,
    commutator,
    create_state,
    creation_matrix,
    identity_matrix,
    max_deviation,
    number_operator,
    operator_product,
    spin_z_operator,
    total_number_operator,
)
from ladder.integrals import ModelCoefficients

DEGENERATE_TOLERANCE = 1e-10

# Small distinct integers: every matrix entry in the identity checks stays an
# exactly representable integer, so deviations are exactly 0.0.
IDENTITY_PROBE = ModelCoefficients(eps1=-3, eps2=-1, V1=5, V2=2, U=1, Ubar=4, source="probe")


def _check_eta(eta: float) -> float:
    eta = float(eta)
    if not 0.0 <= eta <= 1.0:
        raise ValueError(f"eta must lie in [0, 1], got {eta!r}")
    return eta


def build_psi_tilde(*, fermion_signs: bool = True) -> OperatorMatrix:
    """ψ̃ = c†₁↑c†₁↓c₂↓c₂↑."""
    return operator_product(
        creation_matrix(UP1, fermion_signs=fermion_signs),
        creation_matrix(DOWN1, fermion_signs=fermion_signs),
        annihilation_matrix(DOWN2, fermion_signs=fermion_signs),
        annihilation_matrix(UP2, fermion_signs=fermion_signs),
    )


def build_phi_tilde(*, fermion_signs: bool = True) -> OperatorMatrix:
    """φ̃ = c†₁↑c†₂↓c₂↑c₁↓."""
    return operator_product(
        creation_matrix(UP1, fermion_signs=fermion_signs),
        creation_matrix(DOWN2, fermion_signs=fermion_signs),
        annihilation_matrix(UP2, fermion_signs=fermion_signs),
        annihilation_matrix(DOWN1, fermion_signs=fermion_signs),
    )


def build_hamiltonian(
    c: ModelCoefficients,
    *,
    interaction_weight: int = 1,
    fermion_signs: bool = True,
) -> OperatorMatrix:
    """
    Assemble the two-level Hamiltonian as a symmetric 16x16 matrix.

    Args:
        c: Model coefficients in e²/a
        interaction_weight: Multiplier on every two-body term. 1 counts each
                            interacting pair once; 2 counts both orders of the
                            pair, as an unrestricted sum over k, l, m, n does.
        fermion_signs: Passed to the ladder matrix builders

    Returns:
        Real symmetric matrix of H
    """
    n1u, n1d = number_operator(UP1), number_operator(DOWN1)
    n2u, n2d = number_operator(UP2), number_operator(DOWN2)
    psi = build_psi_tilde(fermion_signs=fermion_signs)
    phi = build_phi_tilde(fermion_signs=fermion_signs)

    one_body = c.eps1 * (n1u + n1d) + c.eps2 * (n2u + n2d)
    two_body = (
        c.V1 * (n1u @ n1d)
        + c.V2 * (n2u @ n2d)
        + c.U * (n1u @ n2d + n1d @ n2u)
        + c.Ubar * (psi + psi.T - phi - phi.T)
    )
    return one_body + interaction_weight * two_body


def pair_states(*, fermion_signs: bool = True) -> tuple[StateVector, StateVector]:
    """The doubly occupied configurations |d₁⟩ = c†₁↑c†₁↓|0⟩ and |d₂⟩ = c†₂↑c†₂↓|0⟩."""
    return (
        create_state(UP1, DOWN1, fermion_signs=fermion_signs),
        create_state(UP2, DOWN2, fermion_signs=fermion_signs),
    )


def pair_imbalance() -> OperatorMatrix:
    """n₁↑n₁↓(1−n₂↑−n₂↓) − n₂↑n₂↓(1−n₁↑−n₁↓), the value of [ψ̃, ψ̃†]."""
    eye = identity_matrix()
    n1u, n1d = number_operator(UP1), number_operator(DOWN1)
    n2u, n2d = number_operator(UP2), number_operator(DOWN2)
    return n1u @ n1d @ (eye - n2u - n2d) - n2u @ n2d @ (eye - n1u - n1d)


def exchange_imbalance() -> OperatorMatrix:
    """n₁↑n₂↓(1−n₁↓−n₂↑) − n₁↓n₂↑(1−n₁↑−n₂↓), the value of [φ̃, φ̃†]."""
    eye = identity_matrix()
    n1u, n1d = number_operator(UP1), number_operator(DOWN1)
    n2u, n2d = number_operator(UP2), number_operator(DOWN2)
    return n1u @ n2d @ (eye - n1d - n2u) - n1d @ n2u @ (eye - n1u - n2d)


def raising_bracket(c: ModelCoefficients, interaction_weight: int = 2) -> OperatorMatrix:
    """
    Number-operator multiplier of ψ̃† in [H, ψ̃†], placed to the left of ψ̃†.

    2(ε₂−ε₁) + w[−V₁(n₁↑+n₁↓+1) + V₂(n₂↑+n₂↓−1) + U(n₁↑+n₁↓−n₂↑−n₂↓+2)]
    """
    eye = identity_matrix()
    n1 = number_operator(UP1) + number_operator(DOWN1)
    n2 = number_operator(UP2) + number_operator(DOWN2)
    interaction = -c.V1 * (n1 + eye) + c.V2 * (n2 - eye) + c.U * (n1 - n2 + 2 * eye)
    return 2 * (c.eps2 - c.eps1) * eye + interaction_weight * interaction


def lowering_bracket(c: ModelCoefficients, interaction_weight: int = 2) -> OperatorMatrix:
    """
    Number-operator multiplier of ψ̃ in [H, ψ̃], placed to the left of ψ̃.

    2(ε₁−ε₂) + w[V₁(n₁↑+n₁↓−1) − V₂(n₂↑+n₂↓+1) − U(n₁↑+n₁↓−n₂↑−n₂↓−2)]
    """
    eye = identity_matrix()
    n1 = number_operator(UP1) + number_operator(DOWN1)
    n2 = number_operator(UP2) + number_operator(DOWN2)
    interaction = c.V1 * (n1 - eye) - c.V2 * (n2 + eye) - c.U * (n1 - n2 - 2 * eye)
    return 2 * (c.eps1 - c.eps2) * eye + interaction_weight * interaction


def _check(name: str, relation: str, lhs: np.ndarray, rhs: np.ndarray) -> IdentityCheck:
    return IdentityCheck(name=name, relation=relation, deviation=max_deviation(lhs, rhs))


def _product_rule_checks(fermion_signs: bool) -> list[IdentityCheck]:
    a = build_psi_tilde(fermion_signs=fermion_signs) + creation_matrix(UP2, fermion_signs=fermion_signs)
    b = annihilation_matrix(DOWN1, fermion_signs=fermion_signs) + number_operator(DOWN2)
    c = creation_matrix(UP1, fermion_signs=fermion_signs) @ annihilation_matrix(DOWN2, fermion_signs=fermion_signs)
    return [
        _check("product rule, left commutator", "[AB,C] = A[B,C] + [A,C]B",
               commutator(a @ b, c), a @ commutator(b, c) + commutator(a, c) @ b),
        _check("product rule, right commutator", "[A,BC] = [A,B]C + B[A,C]",
               commutator(a, b @ c), commutator(a, b) @ c + b @ commutator(a, c)),
        _check("product rule, left anticommutator", "[AB,C] = A{B,C} − {A,C}B",
               commutator(a @ b, c), a @ anticommutator(b, c) - anticommutator(a, c) @ b),
        _check("product rule, right anticommutator", "[A,BC] = {A,B}C − B{A,C}",
               commutator(a, b @ c), anticommutator(a, b) @ c - b @ anticommutator(a, c)),
    ]


def verify_identity_suite(
    *,
    fermion_signs: bool = True,
    probe: ModelCoefficients = IDENTITY_PROBE,
) -> list[IdentityCheck]:
    """
    Check the commutator identities of ψ̃, φ̃ and H as exact matrix identities.

    Left sides are computed with commutator products of the ladder matrices,
    right sides are assembled from number-operator matrices. Hamiltonian
    relations are checked at interaction weight 1 (each pair once) and at
    weight 2 (both orders of each pair, where every interaction term of the
    commutator carries a factor 2).

    Args:
        fermion_signs: Passed to the matrix builders
        probe: Coefficients for the Hamiltonian relations. The default uses
               small integers so that deviations are exactly zero.

    Returns:
        List of IdentityCheck, one per relation
    """
    eye = identity_matrix()
    zero = np.zeros_like(eye)
    psi = build_psi_tilde(fermion_signs=fermion_signs)
    phi = build_phi_tilde(fermion_signs=fermion_signs)
    psi_dag, phi_dag = psi.T, phi.T
    n = {orb: number_operator(orb) for orb in (UP1, DOWN1, UP2, DOWN2)}
    n1 = n[UP1] + n[DOWN1]
    n2 = n[UP2] + n[DOWN2]

    checks = _product_rule_checks(fermion_signs)

    checks += [
        _check("phi commutator", "[φ̃,φ̃†] = n₁↑n₂↓(1−n₁↓−n₂↑) − n₁↓n₂↑(1−n₁↑−n₂↓)",
               commutator(phi, phi_dag), exchange_imbalance()),
        _check("psi commutator", "[ψ̃,ψ̃†] = n₁↑n₁↓(1−n₂↑−n₂↓) − n₂↑n₂↓(1−n₁↑−n₁↓)",
               commutator(psi, psi_dag), pair_imbalance()),
    ]

    for orb, sign in ((UP1, -1), (DOWN1, -1), (UP2, 1), (DOWN2, 1)):
        checks.append(
            _check(f"number n{orb} with psi†", f"[n{orb},ψ̃†] = {'−' if sign < 0 else ''}ψ̃†",
                   commutator(n[orb], psi_dag), sign * psi_dag)
        )

    pair_1 = n[UP1] @ n[DOWN1]
    pair_2 = n[UP2] @ n[DOWN2]
    checks += [
        _check("level-1 pair with psi†, right form", "[n₁↑n₁↓,ψ̃†] = −ψ̃†(n₁↑+n₁↓−1)",
               commutator(pair_1, psi_dag), -psi_dag @ (n1 - eye)),
        _check("level-1 pair with psi†, left form", "[n₁↑n₁↓,ψ̃†] = −(n₁↑+n₁↓+1)ψ̃†",
               commutator(pair_1, psi_dag), -(n1 + eye) @ psi_dag),
        _check("level-2 pair with psi†, right form", "[n₂↑n₂↓,ψ̃†] = ψ̃†(n₂↑+n₂↓+1)",
               commutator(pair_2, psi_dag), psi_dag @ (n2 + eye)),
        _check("level-2 pair with psi†, left form", "[n₂↑n₂↓,ψ̃†] = (n₂↑+n₂↓−1)ψ̃†",
               commutator(pair_2, psi_dag), (n2 - eye) @ psi_dag),
    ]

    for lower, upper in ((UP1, UP2), (DOWN1, DOWN2), (UP1, DOWN2), (DOWN1, UP2)):
        cross = n[lower] @ n[upper]
        difference = n[lower] - n[upper]
        checks += [
            _check(f"cross pair n{lower}n{upper} with psi†, right form",
                   f"[n{lower}n{upper},ψ̃†] = ψ̃†(n{lower}−n{upper}−1)",
                   commutator(cross, psi_dag), psi_dag @ (difference - eye)),
            _check(f"cross pair n{lower}n{upper} with psi†, left form",
                   f"[n{lower}n{upper},ψ̃†] = (n{lower}−n{upper}+1)ψ̃†",
                   commutator(cross, psi_dag), (difference + eye) @ psi_dag),
        ]

    checks += [
        _check("phi with psi†", "[φ̃,ψ̃†] = 0", commutator(phi, psi_dag), zero),
        _check("phi† with psi†", "[φ̃†,ψ̃†] = 0", commutator(phi_dag, psi_dag), zero),
        _check("phi with psi", "[φ̃,ψ̃] = 0", commutator(phi, psi), zero),
        _check("phi† with psi", "[φ̃†,ψ̃] = 0", commutator(phi_dag, psi), zero),
    ]

    for orb, sign in ((UP1, 1), (UP2, -1), (DOWN1, -1), (DOWN2, 1)):
        checks.append(
            _check(f"number n{orb} with phi", f"[n{orb},φ̃] = {'−' if sign < 0 else ''}φ̃",
                   commutator(n[orb], phi), sign * phi)
        )

    imbalance = pair_imbalance()
    for weight in (1, 2):
        h = build_hamiltonian(probe, interaction_weight=weight, fermion_signs=fermion_signs)
        ubar = weight * probe.Ubar
        checks += [
            _check(f"hamiltonian with psi†, interaction weight {weight}",
                   f"[H,ψ̃†] = R₊ψ̃† + {weight}Ū[ψ̃,ψ̃†]",
                   commutator(h, psi_dag), raising_bracket(probe, weight) @ psi_dag + ubar * imbalance),
            _check(f"hamiltonian with psi, interaction weight {weight}",
                   f"[H,ψ̃] = R₋ψ̃ − {weight}Ū[ψ̃,ψ̃†]",
                   commutator(h, psi), lowering_bracket(probe, weight) @ psi - ubar * imbalance),
        ]

    h = build_hamiltonian(probe, fermion_signs=fermion_signs)
    checks += [
        _check("particle number conservation", "[H,N] = 0", commutator(h, total_number_operator()), zero),
        _check("spin conservation", "[H,S_z] = 0", commutator(h, spin_z_operator()), zero),
    ]
    return checks


def printed_form_checks(
    *,
    fermion_signs: bool = True,
    probe: ModelCoefficients = IDENTITY_PROBE,
) -> list[IdentityCheck]:
    """
    The quoted forms that do not hold for the operators as built, as non-gating rows.

    The quoted [φ̃,φ̃†] has the opposite sign: φ̃φ̃† and φ̃†φ̃ are projectors on
    |1↑2↓⟩ and |1↓2↑⟩ with or without fermion signs. The quoted Hamiltonian
    relation carries interaction weight 2 in both the bracket and the Ū term,
    which the weight-1 Hamiltonian does not satisfy.
    """
    psi = build_psi_tilde(fermion_signs=fermion_signs)
    phi = build_phi_tilde(fermion_signs=fermion_signs)
    h = build_hamiltonian(probe, fermion_signs=fermion_signs)
    return [
        IdentityCheck(
            name="quoted phi commutator sign",
            relation="[φ̃,φ̃†] = n₁↓n₂↑(1−n₁↑−n₂↓) − n₁↑n₂↓(1−n₁↓−n₂↑)",
            deviation=max_deviation(commutator(phi, phi.T), -exchange_imbalance()),
            gating=False,
        ),
        IdentityCheck(
            name="quoted factor-2 form on the weight-1 hamiltonian",
            relation="[H,ψ̃†] = R₊ψ̃† + 2Ū[ψ̃,ψ̃†]",
            deviation=max_deviation(
                commutator(h, psi.T), raising_bracket(probe, 2) @ psi.T + 2 * probe.Ubar * pair_imbalance()
            ),
            gating=False,
        ),
    ]


def derivative_identity_deviation(
    polynomial: Sequence[int] = (3, -1, 2, 5, -4, 1, 2),
    dim: int = 16,
) -> float:
    """
    Check [A, f(B)] = f'(B) for a polynomial f on a truncated ladder.

    A is differentiation and B multiplication by x on the monomial basis
    1, x, ..., x^(dim-1), so [A, B] = 1 except where B truncates. The identity
    is compared on monomials x^j with j + deg f ≤ dim − 1.

    Args:
        polynomial: Integer coefficients of f, lowest degree first
        dim: Size of the truncated monomial basis

    Returns:
        Maximum elementwise deviation on the untruncated columns
    """
    degree = len(polynomial) - 1
    if degree < 1 or degree >= dim:
        raise ValueError(f"polynomial degree must lie in 1..{dim - 1}, got {degree}")

    a = np.diag(np.arange(1, dim, dtype=float), k=1)
    b = np.diag(np.ones(dim - 1), k=-1)

    f_b = sum(coef * np.linalg.matrix_power(b, k) for k, coef in enumerate(polynomial))
    df_b = sum(k * coef * np.linalg.matrix_power(b, k - 1) for k, coef in enumerate(polynomial) if k > 0)

    valid = dim - degree
    return max_deviation(commutator(a, f_b)[:, :valid], df_b[:, :valid])


def occupation_factor(eta: float) -> float:
    """K = (1−2η)(1−2η+2η²)."""
    return (1 - 2 * eta) * (1 - 2 * eta + 2 * eta**2)


def mean_field_pair_commutator(eta: float) -> float:
    """[ψ̃, ψ̃†] with ⟨n₁σ⟩ = 1−η and ⟨n₂σ⟩ = η substituted; equals K."""
    eta = _check_eta(eta)
    n1, n2 = 1 - eta, eta
    return n1 * n1 * (1 - 2 * n2) - n2 * n2 * (1 - 2 * n1)


def lowering_denominator(c: ModelCoefficients, eta: float) -> float:
    return c.eps1 - c.eps2 + c.V1 * (1 - 2 * eta) - c.V2 * (1 + 2 * eta) + 4 * c.U * eta


def raising_denominator(c: ModelCoefficients, eta: float) -> float:
    return -c.eps1 + c.eps2 - c.V1 * (3 - 2 * eta) - c.V2 * (1 - 2 * eta) + 4 * c.U * (1 - eta)


@dataclass(frozen=True)
class LadderData:
    """
    Derived ladder scalars at one value of η.

    Attributes:
        eta: Occupation parameter in [0, 1]
        K: (1−2η)(1−2η+2η²)
        Dplus, Dminus: Ladder denominators in e²/a
        LambdaPlus, LambdaMinus: Shifts of ψ₊† and ψ₋
        theta: Mixing angle Ū/D₋
    """

    eta: float
    K: float
    Dplus: float
    Dminus: float
    LambdaPlus: float
    LambdaMinus: float
    theta: float

    @property
    def lambda_sum(self) -> float:
        return self.LambdaPlus + self.LambdaMinus

    def as_dict(self) -> dict[str, float]:
        return asdict(self)


def ladder_data(c: ModelCoefficients, eta: float) -> LadderData:
    """
    Evaluate K, D±, Λ± and the mixing angle at η.

    Λ₋ = KŪ/D₋, Λ₊ = −KŪ/D₊ and θ = Ū/D₋, with the K factor of Λ₋/K cancelled
    analytically so η = 1/2 is regular. When Ū = 0 the shifts and the angle
    vanish identically and no denominator is divided by.

    Args:
        c: Model coefficients
        eta: Occupation parameter in [0, 1]

    Returns:
        LadderData

    Raises:
        ValueError: eta outside [0, 1]
        DegenerateModelError: Ū ≠ 0 and |D₋| or |D₊| is below 1e-10 e²/a
    """
    eta = _check_eta(eta)
    k = occupation_factor(eta)
    d_plus = raising_denominator(c, eta)
    d_minus = lowering_denominator(c, eta)

    if c.Ubar == 0:
        return LadderData(eta, k, d_plus, d_minus, 0.0, 0.0, 0.0)

    for quantity, value in (("D-", d_minus), ("D+", d_plus)):
        if abs(value) < DEGENERATE_TOLERANCE:
            raise DegenerateModelError(quantity, value, eta)

    return LadderData(
        eta=eta,
        K=k,
        Dplus=d_plus,
        Dminus=d_minus,
        LambdaPlus=-k * c.Ubar / d_plus,
        LambdaMinus=k * c.Ubar / d_minus,
        theta=c.Ubar / d_minus,
    )


def mixing_angle(c: ModelCoefficients, eta: float) -> float:
    """
    θ = Ū/D₋, the rotation angle of the ground state. Only D₋ has to be nondegenerate.

    Raises:
        ValueError: eta outside [0, 1]
        DegenerateModelError: Ū ≠ 0 and |D₋| is below 1e-10 e²/a
    """
    eta = _check_eta(eta)
    if c.Ubar == 0:
        return 0.0
    d_minus = lowering_denominator(c, eta)
    if abs(d_minus) < DEGENERATE_TOLERANCE:
        raise DegenerateModelError("D-", d_minus, eta)
    return c.Ubar / d_minus


@dataclass(frozen=True)
class MeanFieldCommutators:
    """[H,ψ̃†] = raising·ψ̃† + inhomogeneity and [H,ψ̃] = lowering·ψ̃ − inhomogeneity."""

    raising: float
    lowering: float
    inhomogeneity: float


def mean_field_commutators(c: ModelCoefficients, eta: float) -> MeanFieldCommutators:
    eta = _check_eta(eta)
    return MeanFieldCommutators(
        raising=2 * raising_denominator(c, eta),
        lowering=2 * lowering_denominator(c, eta),
        inhomogeneity=2 * c.Ubar * occupation_factor(eta),
    )


def step_energies(c: ModelCoefficients, eta: float) -> tuple[float, float]:
    """
    Energy steps of the raising and lowering ladder operators, in e²/a.

    Returns:
        (E_{n+1} − E_n, E_{n−1} − E_n)
    """
    eta = _check_eta(eta)
    raising = 2 * raising_denominator(c, eta)
    lowering = 2 * (c.eps1 - c.eps2 + c.V1 * (1 - 2 * eta) - c.V2 * (1 + 2 * eta) - 4 * c.U * eta)
    return raising, lowering


def phi_commutator_coefficient(c: ModelCoefficients, eta: float) -> float:
    """Mean-field multiplier in [H, φ̃] = (V₁ − V₂ + 2U(1−η))φ̃."""
    eta = _check_eta(eta)
    return c.V1 - c.V2 + 2 * c.U * (1 - eta)


@dataclass(frozen=True)
class EndpointCheck:
    name: str
    mean_field: float
    exact: float

    @property
    def deviation(self) -> float:
        return abs(self.mean_field - self.exact)


def endpoint_consistency(c: ModelCoefficients) -> list[EndpointCheck]:
    """
    Compare mean-field commutator scalars with exact brackets at η = 0 and η = 1.

    At η = 0 the occupations are those of |d₁⟩ and at η = 1 those of |d₂⟩. The
    exact side evaluates the printed-form brackets (interaction weight 2)
    on that configuration, ⟨d|R|d⟩.
    """
    d1, d2 = pair_states()
    imbalance = pair_imbalance()
    at_zero = mean_field_commutators(c, 0.0)
    at_one = mean_field_commutators(c, 1.0)
    return [
        EndpointCheck("raising multiplier at eta=0", at_zero.raising, float(d1 @ raising_bracket(c) @ d1)),
        EndpointCheck("raising inhomogeneity at eta=0", at_zero.inhomogeneity,
                      float(2 * c.Ubar * (d1 @ imbalance @ d1))),
        EndpointCheck("lowering multiplier at eta=1", at_one.lowering, float(d2 @ lowering_bracket(c) @ d2)),
        EndpointCheck("lowering inhomogeneity at eta=1", -at_one.inhomogeneity,
                      float(-2 * c.Ubar * (d2 @ imbalance @ d2))),
    ]
