"""
Coefficient Files

Flat key-value text with one model coefficient per line, energies in e²/a:

    # helium, quoted values
    eps1 = -1
    eps2 = -0.25
    V1 = -2
    V2 = -0.5
    U = 0.104938271604938
    Ubar = 0.0109739368998628

Separators "=", ":" and whitespace are all accepted; "#" starts a comment.
"""

import os
import re
import sys

from ladder.errors import UsageError
from ladder.integrals import ModelCoefficients

_LINE = re.compile(r"^\s*(?P<key>[A-Za-z_][A-Za-z0-9_]*)\s*(?:[=:]\s*|\s+)(?P<value>\S+)\s*$")


def load_coefficient_file(coefficient_file):
    """
    Loads a model coefficient set from a flat key-value file.

    Args:
        coefficient_file: Path to the file

    Returns:
        ModelCoefficients tagged source="file"

    Raises:
        UsageError: Missing file, unparseable line, unknown or repeated key,
                    non-numeric value, or a coefficient left out
    """
    if not os.path.exists(coefficient_file):
        raise UsageError(f"coefficient file not found: {coefficient_file}")

    values = {}
    with open(coefficient_file, "r", encoding="utf-8") as f:
        for number, raw in enumerate(f, start=1):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue

            match = _LINE.match(line)
            if not match:
                raise UsageError(f"{coefficient_file}:{number}: expected 'name = value', got {raw.strip()!r}")

            key, text = match.group("key"), match.group("value")
            if key not in ModelCoefficients.NAMES:
                raise UsageError(f"{coefficient_file}:{number}: unknown coefficient {key!r}")
            if key in values:
                raise UsageError(f"{coefficient_file}:{number}: coefficient {key!r} given twice")
            try:
                values[key] = float(text)
            except ValueError:
                raise UsageError(f"{coefficient_file}:{number}: {key} is not a number: {text!r}") from None

    try:
        coefficients = ModelCoefficients.from_mapping(values, source="file")
    except ValueError as e:
        raise UsageError(f"{coefficient_file}: {e}") from None

    print(f"✅ Loaded coefficients from: {coefficient_file}", file=sys.stderr)
    return coefficients


def save_coefficient_file(coefficients, coefficient_file):
    """Saves a coefficient set in the format load_coefficient_file reads."""
    directory = os.path.dirname(coefficient_file)
    if directory:
        os.makedirs(directory, exist_ok=True)

    with open(coefficient_file, "w", encoding="utf-8") as f:
        f.write(f"# source: {coefficients.source}, units: e^2/a\n")
        for name, value in coefficients.as_dict().items():
            f.write(f"{name} = {value!r}\n")
    return coefficient_file
