import json

import pandas as pd
import pytest

from utils.report_utils import flatten_document, frame_to_csv, timestamped_path, to_json, write_output


def test_to_json_is_stable():
    document = {"metadata": {"tool": "helium-ladder"}, "values": [0.1, -2.9220000000000002, 1e-300]}
    text = to_json(document)
    assert text.endswith("\n")
    assert to_json(json.loads(text)) == text


def test_to_json_rejects_nan():
    with pytest.raises(ValueError):
        to_json({"ratio": float("nan")})


def test_frame_to_csv_uses_twelve_significant_digits():
    text = frame_to_csv(pd.DataFrame({"eta": [0.0, 1 / 3], "E43": [-6.0, -2.123456789012345]}))
    assert text == "eta,E43\n0,-6\n0.333333333333,-2.12345678901\n"


def test_flatten_document():
    assert flatten_document({"a": {"b": 1}, "c": [2, 3], "d": "x"}) == {"a.b": 1, "c.0": 2, "c.1": 3, "d": "x"}


def test_write_output_to_stdout(capsys):
    assert write_output("hello\n") is None
    assert capsys.readouterr().out == "hello\n"


def test_write_output_to_file(tmp_path):
    target = tmp_path / "nested" / "doc.json"
    assert write_output("{}\n", target) == target
    assert target.read_text() == "{}\n"


def test_timestamped_path(tmp_path):
    path = timestamped_path(tmp_path / "data", "solve_paper", "json", timestamp=1700000000)
    assert path == tmp_path / "data" / "solve_paper_1700000000.json"
    assert path.parent.is_dir()
