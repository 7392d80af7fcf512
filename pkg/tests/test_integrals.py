import math

import pytest

from ladder.errors import QuadratureError, UsageError
from ladder.integrals import (
    ONE_S,
    TWO_S,
    HydrogenicOrbital,
    ModelCoefficients,
    QuadratureSettings,
    Unit,
    compare_coefficients,
    convert_energy,
    coulomb_direct,
    coulomb_exchange,
    literal_integrals,
    norm_integral,
    orbital_amplitude,
    overlap_integral,
    paper_coefficients,
    quadrature_coefficients,
)

LITERAL_VALUES = {"V1": 5 / 8, "V2": 77 / 512, "U": 17 / 81, "Ubar": 16 / 729}


def test_orbital_amplitudes_at_origin():
    assert orbital_amplitude(ONE_S, 0.0) == pytest.approx(1 / math.sqrt(math.pi))
    assert orbital_amplitude(TWO_S, 0.0) == pytest.approx(1 / (2 * math.sqrt(2 * math.pi)))
    assert orbital_amplitude(TWO_S, 2.0) == pytest.approx(0.0, abs=1e-15)


def test_orbital_amplitude_rejects_negative_radius():
    with pytest.raises(ValueError):
        orbital_amplitude(ONE_S, [0.5, -0.1])
    with pytest.raises(ValueError):
        orbital_amplitude(ONE_S, float("nan"))


def test_orbital_energies():
    assert ONE_S.energy == -1.0
    assert TWO_S.energy == -0.25
    assert HydrogenicOrbital("one_s", length_scale=0.5).energy == -4.0


@pytest.mark.parametrize("orb", [ONE_S, TWO_S])
def test_orbitals_are_normalized(orb):
    assert norm_integral(orb).value == pytest.approx(1.0, abs=1e-10)


def test_one_s_and_two_s_are_orthogonal():
    assert overlap_integral(ONE_S, TWO_S).value == pytest.approx(0.0, abs=1e-10)


@pytest.mark.parametrize("name", sorted(LITERAL_VALUES))
def test_literal_integrals_converge_to_closed_forms(name):
    result = literal_integrals()[name]
    assert result.value == pytest.approx(LITERAL_VALUES[name], rel=1e-5)
    assert result.relative_error <= 1e-6


def test_exchange_of_identical_orbitals_is_direct():
    assert coulomb_exchange(ONE_S, ONE_S).value == coulomb_direct(ONE_S, ONE_S).value


def test_exchange_is_symmetric():
    assert coulomb_exchange(TWO_S, ONE_S).value == pytest.approx(coulomb_exchange(ONE_S, TWO_S).value, rel=1e-12)


def test_direct_is_symmetric():
    assert coulomb_direct(TWO_S, ONE_S).value == pytest.approx(coulomb_direct(ONE_S, TWO_S).value, rel=1e-7)


def test_literal_integrals_are_positive():
    assert all(result.value > 0 for result in literal_integrals().values())


def test_quadrature_failure_reports_estimate():
    settings = QuadratureSettings(r_max=60.0, nodes=4, rel_tol=1e-14)
    with pytest.raises(QuadratureError) as excinfo:
        coulomb_direct(ONE_S, TWO_S, settings)
    assert excinfo.value.exit_code == 3
    assert excinfo.value.achieved > excinfo.value.requested


def test_quadrature_settings_validation():
    with pytest.raises(ValueError):
        QuadratureSettings(r_max=0.0)
    with pytest.raises(ValueError):
        QuadratureSettings(nodes=1)
    settings = QuadratureSettings.from_config({"r_max": "30", "nodes": 100, "rel_tol": 1e-4})
    assert settings == QuadratureSettings(30.0, 100, 1e-4)


def test_quoted_coefficients():
    c = paper_coefficients()
    assert c.as_dict() == pytest.approx(
        {"eps1": -1.0, "eps2": -0.25, "V1": -2.0, "V2": -0.5, "U": 17 / 162, "Ubar": 8 / 729}
    )
    assert c.source == "paper"


def test_quadrature_coefficients_use_orbital_energies():
    c = quadrature_coefficients()
    assert c.source == "literal"
    assert (c.eps1, c.eps2) == (-1.0, -0.25)
    assert c.U == pytest.approx(17 / 81, rel=1e-5)


def test_model_coefficients_validation():
    with pytest.raises(ValueError):
        ModelCoefficients(eps1=math.inf, eps2=0, V1=0, V2=0, U=0, Ubar=0)
    with pytest.raises(UsageError, match="Ubar"):
        ModelCoefficients.from_mapping({"eps1": 0, "eps2": 0, "V1": 0, "V2": 0, "U": 0})
    c = paper_coefficients().with_values(Ubar=0.0)
    assert c.Ubar == 0.0 and c.V1 == -2.0


def test_compare_coefficients_flags_discrepancies():
    rows = {row.name: row for row in compare_coefficients(paper_coefficients(), quadrature_coefficients(), literal_integrals())}
    assert rows["V1"].sign_mismatch
    assert rows["V1"].literal == pytest.approx(0.625, rel=1e-5)
    assert rows["U"].ratio == pytest.approx(0.5, rel=1e-5)
    assert rows["Ubar"].ratio == pytest.approx(0.5, rel=1e-5)
    assert rows["Ubar"].quoted == pytest.approx(0.010974, abs=1e-6)
    assert rows["eps1"].ratio == 1.0 and not rows["eps1"].sign_mismatch
    assert rows["U"].error_estimate >= 0.0


def test_energy_conversion():
    assert convert_energy(1.0, Unit.E2A, Unit.HARTREE) == 2.0
    assert convert_energy(1.0, "e2a", "ev") == pytest.approx(54.422)
    assert convert_energy(-2.922, "hartree", "e2a") == pytest.approx(-1.461)
    with pytest.raises(UsageError):
        convert_energy(1.0, "e2a", "kcal")
