"""
JSON and argument-string forms of the library's values.

    scalar        rational -> int, or "p/q" string; float -> JSON number
    D2Element     [a0, a1, a2, a3]
    MatD2         nested arrays of D2 4-arrays
    motion        {"a": .., "b": .., "theta": ..}
    point         {"x": .., "y": ..}
    Grassmann     [alpha0, alpha1, alpha2, alpha3]
    Cl3           8-array in the fixed basis order
    RepElement    {"rep": "<RepId>", "payload": <matrix or Grassmann form>}

dumps() sorts keys and never adds timestamps, so equal values always
serialize to equal text.
"""
from __future__ import annotations

import json
import math
from fractions import Fraction
from typing import IO, Iterator, List, Optional

from d2_matrix import MatD2
from errors import BadGridSpec, MalformedRepElement, ParseError
from galilean_group import GalileanMotion, RepElement, RepId
from grassmann_clifford import Cl3Element, GrassmannElement
from pimenov_core import D2Element, Scalar, ScalarMode, is_exact, parse_scalar, to_scalar
from plane_actions import GalileanPoint, SpherePoint


# ──────────────────────────────────────────────
# Scalars
# ──────────────────────────────────────────────

def scalar_to_json(x: Scalar):
    if is_exact(x):
        return x.numerator if x.denominator == 1 else f"{x.numerator}/{x.denominator}"
    return float(x)


def scalar_from_json(value, mode: Optional[ScalarMode] = None) -> Scalar:
    if isinstance(value, bool):
        raise ParseError(f"expected a number, got {value!r}")
    if isinstance(value, str):
        return parse_scalar(value, mode)
    if isinstance(value, (int, float)):
        if isinstance(value, float) and not math.isfinite(value):
            raise ParseError(f"non-finite number {value!r}")
        if isinstance(value, float) and mode is ScalarMode.RATIONAL:
            # decimal text of the float, not its binary expansion
            return Fraction(repr(value))
        return to_scalar(value, mode)
    raise ParseError(f"expected a number, got {value!r}")


def _scalar_list(values, length: int, what: str, mode: Optional[ScalarMode]) -> List[Scalar]:
    if not isinstance(values, list) or len(values) != length:
        raise ParseError(f"{what} must be an array of {length} numbers, got {values!r}")
    return [scalar_from_json(v, mode) for v in values]


# ──────────────────────────────────────────────
# Algebra values
# ──────────────────────────────────────────────

def d2_to_json(a: D2Element) -> list:
    return [scalar_to_json(c) for c in a.coefficients]


def d2_from_json(value, mode: Optional[ScalarMode] = None) -> D2Element:
    return D2Element(*_scalar_list(value, 4, "D2 element", mode))


def matrix_to_json(A: MatD2) -> list:
    return [[d2_to_json(x) for x in row] for row in A.entries]


def matrix_from_json(value, mode: Optional[ScalarMode] = None) -> MatD2:
    if not isinstance(value, list) or not value or not all(isinstance(row, list) for row in value):
        raise ParseError("matrix must be a non-empty array of rows")
    return MatD2.from_rows([[d2_from_json(x, mode) for x in row] for row in value])


def grassmann_to_json(q: GrassmannElement) -> list:
    return [scalar_to_json(c) for c in q.coefficients]


def grassmann_from_json(value, mode: Optional[ScalarMode] = None) -> GrassmannElement:
    return GrassmannElement(*_scalar_list(value, 4, "Grassmann element", mode))


def cl3_to_json(v: Cl3Element) -> list:
    return [scalar_to_json(c) for c in v.coeffs]


def cl3_from_json(value, mode: Optional[ScalarMode] = None) -> Cl3Element:
    return Cl3Element(tuple(_scalar_list(value, 8, "Cl3 element", mode)))


# ──────────────────────────────────────────────
# Motions, points, representation elements
# ──────────────────────────────────────────────

def motion_to_json(m: GalileanMotion) -> dict:
    return {"a": scalar_to_json(m.a), "b": scalar_to_json(m.b), "theta": scalar_to_json(m.theta)}


def motion_from_json(value, mode: Optional[ScalarMode] = None) -> GalileanMotion:
    if not isinstance(value, dict) or set(value) != {"a", "b", "theta"}:
        raise ParseError(f"motion must be an object with keys a, b, theta, got {value!r}")
    return GalileanMotion(*(scalar_from_json(value[k], mode) for k in ("a", "b", "theta")))


def point_to_json(p: GalileanPoint) -> dict:
    return {"x": scalar_to_json(p.x), "y": scalar_to_json(p.y)}


def point_from_json(value, mode: Optional[ScalarMode] = None) -> GalileanPoint:
    if not isinstance(value, dict) or set(value) != {"x", "y"}:
        raise ParseError(f"point must be an object with keys x, y, got {value!r}")
    return GalileanPoint(scalar_from_json(value["x"], mode), scalar_from_json(value["y"], mode))


def rep_element_to_json(e: RepElement) -> dict:
    if e.rep.is_matrix:
        payload = matrix_to_json(e.payload)
    else:
        payload = grassmann_to_json(e.payload)
    return {"rep": e.rep.value, "payload": payload}


def rep_element_from_json(value, mode: Optional[ScalarMode] = None) -> RepElement:
    if not isinstance(value, dict) or "rep" not in value or "payload" not in value:
        raise MalformedRepElement("element must be an object with 'rep' and 'payload'")
    rep = RepId.parse(value["rep"])
    try:
        if rep.is_matrix:
            payload = matrix_from_json(value["payload"], mode)
        else:
            payload = grassmann_from_json(value["payload"], mode)
    except ParseError as e:
        raise MalformedRepElement(f"bad {rep.value} payload: {e}")
    return RepElement(rep, payload)


def dumps(value) -> str:
    return json.dumps(value, sort_keys=True, separators=(", ", ": "))


def loads(text: str):
    try:
        return json.loads(text)
    except json.JSONDecodeError as e:
        raise ParseError(f"invalid JSON: {e}")


def read_json_lines(stream: IO[str]) -> Iterator:
    """Yield one decoded value per non-blank line."""
    for lineno, line in enumerate(stream, 1):
        line = line.strip()
        if not line:
            continue
        try:
            yield json.loads(line)
        except json.JSONDecodeError as e:
            raise ParseError(f"line {lineno}: invalid JSON: {e}")


# ──────────────────────────────────────────────
# Command-line argument forms
# ──────────────────────────────────────────────

def _split_numbers(text: str, count: int, what: str, mode: Optional[ScalarMode]) -> List[Scalar]:
    parts = [p.strip() for p in text.split(",")]
    if len(parts) != count:
        raise ParseError(f"{what} needs {count} comma-separated numbers, got {text!r}")
    return [parse_scalar(p, mode) for p in parts]


def parse_motion_arg(text: str, mode: Optional[ScalarMode] = None) -> GalileanMotion:
    """'a,b,theta' -> GalileanMotion."""
    return GalileanMotion(*_split_numbers(text, 3, "motion", mode))


def parse_point_arg(text: str, mode: Optional[ScalarMode] = None) -> GalileanPoint:
    """'x,y' -> GalileanPoint."""
    return GalileanPoint(*_split_numbers(text, 2, "point", mode))


def _grid_axis(text: str, mode: Optional[ScalarMode]) -> List[Scalar]:
    parts = text.split(":")
    if len(parts) != 3:
        raise BadGridSpec(f"axis must be 'start:stop:count', got {text!r}")
    try:
        start = parse_scalar(parts[0], mode)
        stop = parse_scalar(parts[1], mode)
        count = int(parts[2])
    except (ParseError, ValueError) as e:
        raise BadGridSpec(f"cannot parse axis {text!r}: {e}")
    if count < 1:
        raise BadGridSpec(f"axis count must be at least 1, got {count}")
    if not (math.isfinite(float(start)) and math.isfinite(float(stop))):
        raise BadGridSpec(f"axis bounds must be finite, got {text!r}")
    if count == 1:
        return [start]
    step = (stop - start) / (count - 1)
    return [start + k * step for k in range(count)]


def parse_grid(spec: str, mode: Optional[ScalarMode] = None) -> List[SpherePoint]:
    """'y0:y1:n,z0:z1:m' -> n*m sphere points, y-major."""
    axes = spec.split(",")
    if len(axes) != 2:
        raise BadGridSpec(f"grid must be 'y0:y1:n,z0:z1:n', got {spec!r}")
    ys = _grid_axis(axes[0].strip(), mode)
    zs = _grid_axis(axes[1].strip(), mode)
    return [SpherePoint(y, z) for y in ys for z in zs]
