"""
Reading and writing measure spaces with a self-map.

The file is a single JSON object:

    {
        "points": ["1", "2", "3"],
        "weights": ["1", "3/2", "0"],
        "map": {"1": "2", "2": "3", "3": "3"}
    }

Weights are strings so that they stay exact rationals.
"""

import json
from typing import Any, List, Optional, Tuple

from kernel_chain import utils
from kernel_chain.errors import KernelChainError, ParseError
from kernel_chain.measure_space import (
    DiscreteMeasureSpace,
    Transformation,
    new_map,
    new_space,
)

FIELDS = ("points", "weights", "map")


def _field_line(text: str, field: str) -> Optional[int]:
    """Line on which `"field"` first occurs"""
    position = text.find(f'"{field}"')
    if position < 0:
        return None
    return text.count("\n", 0, position) + 1


def _string_list(text: str, data: Any, field: str) -> List[str]:
    value = data[field]
    if not isinstance(value, list) or not all(isinstance(v, str) for v in value):
        raise ParseError(
            "Expected an array of strings", line=_field_line(text, field), field=field
        )
    return value


def parse_space_file(text: str) -> Tuple[DiscreteMeasureSpace, Transformation]:
    """Validated space and map from the JSON text of a space file"""
    try:
        data = json.loads(text)
    except json.JSONDecodeError as e:
        raise ParseError(f"Invalid JSON: {e.msg}", line=e.lineno) from e
    if not isinstance(data, dict):
        raise ParseError("Expected a JSON object at top level", line=1)
    for field in FIELDS:
        if field not in data:
            raise ParseError("Missing field", field=field)

    points = _string_list(text, data, "points")
    raw_weights = _string_list(text, data, "weights")
    line = _field_line(text, "weights")
    weights = [utils.parse_rational(w, field="weights", line=line) for w in raw_weights]

    assignment = data["map"]
    if not isinstance(assignment, dict) or not all(
        isinstance(v, str) for v in assignment.values()
    ):
        raise ParseError(
            "Expected an object mapping points to points",
            line=_field_line(text, "map"),
            field="map",
        )

    try:
        space = new_space(points, weights)
    except KernelChainError as e:
        raise type(e)(f"weights (line {line}): {e}") from e
    try:
        tau = new_map(space, assignment)
    except KernelChainError as e:
        raise type(e)(f"map (line {_field_line(text, 'map')}): {e}") from e
    return space, tau


def load_space_file(path: str) -> Tuple[DiscreteMeasureSpace, Transformation]:
    with open(path, encoding="utf-8") as f:
        return parse_space_file(f.read())


def serialize_space_file(space: DiscreteMeasureSpace, tau: Transformation) -> str:
    """Inverse of `parse_space_file`"""
    data = {
        "points": list(space.points),
        "weights": [str(w) for w in space.weights],
        "map": tau.assignment(),
    }
    return json.dumps(data, indent=4, ensure_ascii=False) + "\n"
