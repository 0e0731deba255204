import os
from fractions import Fraction
from typing import Any, Dict, List, Mapping, Optional, Union

import pandas as pd

from kernel_chain.errors import ParseError


def parse_rational(
    text: Any, field: str = "weights", line: Optional[int] = None
) -> Fraction:
    """Exact rational from a string such as "3", "3/2" or "0.25" """
    if not isinstance(text, str):
        raise ParseError(f"Expected a string, got {text!r}", line=line, field=field)
    try:
        return Fraction(text.strip())
    except (ValueError, ZeroDivisionError) as e:
        raise ParseError(
            f"Not a rational number: {text!r}", line=line, field=field
        ) from e


def parse_key_value_pairs(text: str, field: str) -> Dict[str, str]:
    """Whitespace separated `key=value` pairs, e.g. "1=0.5 2=3" """
    pairs = {}
    for item in text.split():
        key, sep, value = item.partition("=")
        if not sep or not key or not value:
            raise ParseError(f"Expected key=value, got '{item}'", field=field)
        if key in pairs:
            raise ParseError(f"Key '{key}' given twice", field=field)
        pairs[key] = value
    return pairs


def save_text(text: str, path_outfile: Union[str, os.PathLike]) -> None:
    """Write `text` to a file, creating the parent directory if needed"""
    dirname = os.path.dirname(path_outfile)
    if dirname and not os.path.isdir(dirname):
        os.makedirs(dirname)
    with open(path_outfile, "w", encoding="utf-8") as f:
        f.write(text)


def save_records_to_jsonl(
    records: List[Mapping[str, Any]], path_outfile: Union[str, os.PathLike]
) -> None:
    """Save a list of flat records as one JSON object per line"""
    dirname = os.path.dirname(path_outfile)
    if dirname and not os.path.isdir(dirname):
        os.makedirs(dirname)
    df = pd.DataFrame.from_records(records)
    df.to_json(path_outfile, orient="records", lines=True, force_ascii=False)

