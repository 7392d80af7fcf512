import json
import os
import sys
from datetime import datetime
from pathlib import Path

import pandas as pd

CSV_FLOAT_FORMAT = "%.12g"


def to_json(document):
    """
    Serializes a report document to JSON text.

    Numbers are written at full precision and NaN/inf are rejected, so parsing
    the output and serializing it again gives the same bytes.

    Args:
        document: dict of plain Python values (str, int, float, bool, None, list, dict)

    Returns:
        JSON text ending in a newline
    """
    return json.dumps(document, indent=2, allow_nan=False, ensure_ascii=False) + "\n"


def frame_to_csv(df):
    """Renders a DataFrame as CSV: ',' delimiter, '.' decimals, 12 significant digits, no index."""
    return df.to_csv(index=False, float_format=CSV_FLOAT_FORMAT, lineterminator="\n")


def flatten_document(document, prefix=""):
    """
    Flattens nested dicts and lists into one level with dotted keys.

    {"a": {"b": 1}, "c": [2, 3]} becomes {"a.b": 1, "c.0": 2, "c.1": 3}.
    """
    flat = {}
    items = document.items() if isinstance(document, dict) else enumerate(document)
    for key, value in items:
        name = f"{prefix}.{key}" if prefix else str(key)
        if isinstance(value, (dict, list, tuple)):
            flat.update(flatten_document(value, name))
        else:
            flat[name] = value
    return flat


def write_output(text, output_path=None):
    """
    Writes a finished document to a file, or to standard output when no path is given.

    Args:
        text: Document text
        output_path: Destination file; parent directories are created

    Returns:
        The path written, or None for standard output
    """
    if output_path is None:
        sys.stdout.write(text)
        sys.stdout.flush()
        return None

    output_path = Path(output_path)
    output_path.parent.mkdir(parents=True, exist_ok=True)
    output_path.write_text(text, encoding="utf-8", newline="\n")
    print(f"✅ Document saved to: {output_path}", file=sys.stderr)
    return output_path


def timestamped_path(output_dir, name, extension, timestamp=None):
    """
    Builds <output_dir>/<name>_<unix timestamp>.<extension>, creating the directory.

    Args:
        output_dir: Directory for the document
        name: Document name (e.g., "solve_paper", "scan_literal")
        extension: File extension without the dot
        timestamp: Optional unix timestamp. If None, current timestamp will be used.

    Returns:
        Path of the document file
    """
    if timestamp is None:
        timestamp = int(datetime.now().timestamp())

    os.makedirs(output_dir, exist_ok=True)
    return Path(output_dir) / f"{name}_{timestamp}.{extension}"
