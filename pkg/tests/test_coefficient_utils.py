import pytest

from ladder.errors import UsageError
from ladder.integrals import paper_coefficients
from utils.coefficient_utils import load_coefficient_file, save_coefficient_file


def write(tmp_path, text):
    path = tmp_path / "coefficients.txt"
    path.write_text(text)
    return str(path)


def test_saved_file_loads_back(tmp_path):
    paper = paper_coefficients()
    path = save_coefficient_file(paper, str(tmp_path / "out" / "coefficients_paper.txt"))
    loaded = load_coefficient_file(path)
    assert loaded.as_dict() == paper.as_dict()
    assert loaded.source == "file"


def test_separators_and_comments(tmp_path):
    path = write(
        tmp_path,
        "# two-level model\n\neps1 = -1\neps2: -0.25\nV1 -2   # pair repulsion\nV2=-0.5\nU = 0.1\nUbar = 1e-2\n",
    )
    c = load_coefficient_file(path)
    assert (c.eps1, c.eps2, c.V1, c.V2, c.U, c.Ubar) == (-1.0, -0.25, -2.0, -0.5, 0.1, 0.01)


@pytest.mark.parametrize(
    "text, message",
    [
        ("eps1 = -1\n", "missing"),
        ("eps1 = -1\neps1 = -2\n", "twice"),
        ("eps3 = 1\n", "unknown"),
        ("eps1 = minus one\n", "expected"),
        ("eps1 = abc\n", "not a number"),
    ],
)
def test_malformed_files(tmp_path, text, message):
    with pytest.raises(UsageError, match=message):
        load_coefficient_file(write(tmp_path, text))


def test_non_finite_value(tmp_path):
    text = "eps1 = inf\neps2 = 0\nV1 = 0\nV2 = 0\nU = 0\nUbar = 0\n"
    with pytest.raises(UsageError, match="finite"):
        load_coefficient_file(write(tmp_path, text))


def test_missing_file(tmp_path):
    with pytest.raises(UsageError, match="not found"):
        load_coefficient_file(str(tmp_path / "absent.txt"))
