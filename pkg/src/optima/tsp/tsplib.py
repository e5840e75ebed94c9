"""TSPLIB95 instance parsing and bit-exact integer distances.

Supports TYPE: TSP with EDGE_WEIGHT_TYPE EUC_2D, ATT, GEO and EXPLICIT
(FULL_MATRIX, LOWER_DIAG_ROW, UPPER_ROW, UPPER_DIAG_ROW).  Distance
rounding follows the TSPLIB95 conventions exactly: published optimal
costs are only reproducible under these rules.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

SUPPORTED_WEIGHT_TYPES = ("EUC_2D", "ATT", "GEO", "EXPLICIT")
SUPPORTED_WEIGHT_FORMATS = ("FULL_MATRIX", "LOWER_DIAG_ROW", "UPPER_ROW", "UPPER_DIAG_ROW")

# geographical distance constants fixed by TSPLIB95
_GEO_PI = 3.141592
_GEO_RADIUS_KM = 6378.388

_SPEC_KEYS = {
    "NAME",
    "TYPE",
    "COMMENT",
    "DIMENSION",
    "EDGE_WEIGHT_TYPE",
    "EDGE_WEIGHT_FORMAT",
    "EDGE_WEIGHT_DATA_FORMAT",
    "NODE_COORD_TYPE",
    "DISPLAY_DATA_TYPE",
}


class TsplibError(ValueError):
    """Malformed or unsupported TSPLIB input."""


@dataclass(frozen=True)
class TspInstance:
    name: str
    n: int
    weight_kind: str
    coords: tuple[tuple[float, float], ...] | None = None
    explicit_weights: np.ndarray | None = None
    known_optimum: int | None = None

    def __post_init__(self) -> None:
        if self.weight_kind not in SUPPORTED_WEIGHT_TYPES:
            raise TsplibError(f"unsupported EDGE_WEIGHT_TYPE: {self.weight_kind}")
        if self.weight_kind == "EXPLICIT":
            if self.explicit_weights is None or self.coords is not None:
                raise TsplibError("EXPLICIT instance must carry a weight matrix only")
        else:
            if self.coords is None or self.explicit_weights is not None:
                raise TsplibError(f"{self.weight_kind} instance must carry coordinates only")
            if len(self.coords) != self.n:
                raise TsplibError(f"expected {self.n} coordinates, got {len(self.coords)}")


def _nint(x: float) -> int:
    """TSPLIB nint: round half away from zero (all operands non-negative here)."""
    return int(math.floor(x + 0.5))


def _geo_radians(value: float) -> float:
    # degrees truncate toward zero: the convention under which the
    # published GEO optima (e.g. ulysses16 = 6859) are reproducible
    deg = int(value)
    minutes = value - deg
    return _GEO_PI * (deg + 5.0 * minutes / 3.0) / 180.0


def tsplib_distance(inst: TspInstance, i: int, j: int) -> int:
    """Integer distance between nodes i and j under the instance's rules."""
    if not (0 <= i < inst.n and 0 <= j < inst.n):
        raise IndexError(f"node index out of range for n={inst.n}")
    if inst.weight_kind == "EXPLICIT":
        return int(inst.explicit_weights[i, j])
    xi, yi = inst.coords[i]
    xj, yj = inst.coords[j]
    if inst.weight_kind == "EUC_2D":
        dx = xi - xj
        dy = yi - yj
        return _nint(math.sqrt(dx * dx + dy * dy))
    if inst.weight_kind == "ATT":
        dx = xi - xj
        dy = yi - yj
        r = math.sqrt((dx * dx + dy * dy) / 10.0)
        t = _nint(r)
        return t + 1 if t < r else t
    # GEO
    if i == j:
        return 0
    lat_i, lon_i = _geo_radians(xi), _geo_radians(yi)
    lat_j, lon_j = _geo_radians(xj), _geo_radians(yj)
    q1 = math.cos(lon_i - lon_j)
    q2 = math.cos(lat_i - lat_j)
    q3 = math.cos(lat_i + lat_j)
    return int(_GEO_RADIUS_KM * math.acos(0.5 * ((1.0 + q1) * q2 - (1.0 - q1) * q3)) + 1.0)


def distance_matrix(inst: TspInstance) -> np.ndarray:
    """Full n x n integer matrix, bit-identical to tsplib_distance."""
    n = inst.n
    if inst.weight_kind == "EXPLICIT":
        return inst.explicit_weights.copy()
    xs = np.array([c[0] for c in inst.coords], dtype=float)
    ys = np.array([c[1] for c in inst.coords], dtype=float)
    if inst.weight_kind == "EUC_2D":
        dx = xs[:, None] - xs[None, :]
        dy = ys[:, None] - ys[None, :]
        return np.floor(np.sqrt(dx * dx + dy * dy) + 0.5).astype(np.int64)
    if inst.weight_kind == "ATT":
        dx = xs[:, None] - xs[None, :]
        dy = ys[:, None] - ys[None, :]
        r = np.sqrt((dx * dx + dy * dy) / 10.0)
        t = np.floor(r + 0.5)
        return (t + (t < r)).astype(np.int64)
    # GEO has awkward scalar rounding; n stays small for this kind
    m = np.zeros((n, n), dtype=np.int64)
    for i in range(n):
        for j in range(i + 1, n):
            m[i, j] = m[j, i] = tsplib_distance(inst, i, j)
    return m


def _tokenize(text: str) -> list[str]:
    lines = []
    for raw in text.splitlines():
        line = raw.strip()
        if line:
            lines.append(line)
    return lines


def _split_spec(line: str) -> tuple[str, str] | None:
    if ":" in line:
        key, _, value = line.partition(":")
        return key.strip(), value.strip()
    parts = line.split()
    if len(parts) == 1:
        return parts[0], ""
    return None


def parse_tsplib(source) -> TspInstance:
    """Parse a TSPLIB95 problem from a byte/text stream, bytes, or str."""
    if hasattr(source, "read"):
        data = source.read()
    else:
        data = source
    if isinstance(data, bytes):
        data = data.decode("utf-8")

    lines = _tokenize(data)
    name = ""
    dimension: int | None = None
    weight_type: str | None = None
    weight_format: str | None = None
    coords: dict[int, tuple[float, float]] | None = None
    weights: np.ndarray | None = None

    idx = 0
    while idx < len(lines):
        line = lines[idx]
        spec = _split_spec(line)
        if spec is None:
            raise TsplibError(f"malformed line: {line!r}")
        key, value = spec

        if key == "EOF":
            break
        if key in _SPEC_KEYS:
            if key == "NAME":
                name = value
            elif key == "TYPE":
                problem_type = value.split()[0] if value else ""
                if problem_type != "TSP":
                    raise TsplibError(f"unsupported TYPE: {problem_type or value}")
            elif key == "DIMENSION":
                dimension = int(value)
                if dimension < 1:
                    raise TsplibError("DIMENSION must be >= 1")
            elif key == "EDGE_WEIGHT_TYPE":
                if value not in SUPPORTED_WEIGHT_TYPES:
                    raise TsplibError(f"unsupported EDGE_WEIGHT_TYPE: {value}")
                weight_type = value
            elif key in ("EDGE_WEIGHT_FORMAT", "EDGE_WEIGHT_DATA_FORMAT"):
                if value not in SUPPORTED_WEIGHT_FORMATS:
                    raise TsplibError(f"unsupported EDGE_WEIGHT_FORMAT: {value}")
                weight_format = value
            idx += 1
            continue

        if key == "NODE_COORD_SECTION":
            if dimension is None:
                raise TsplibError("NODE_COORD_SECTION before DIMENSION")
            coords = {}
            idx += 1
            for _ in range(dimension):
                if idx >= len(lines):
                    raise TsplibError("NODE_COORD_SECTION ended early")
                parts = lines[idx].split()
                if len(parts) != 3:
                    raise TsplibError(f"malformed coordinate line: {lines[idx]!r}")
                node = int(parts[0])
                if not 1 <= node <= dimension or node in coords:
                    raise TsplibError(f"bad node id {node} in NODE_COORD_SECTION")
                coords[node] = (float(parts[1]), float(parts[2]))
                idx += 1
            continue

        if key == "EDGE_WEIGHT_SECTION":
            if dimension is None:
                raise TsplibError("EDGE_WEIGHT_SECTION before DIMENSION")
            if weight_format is None:
                raise TsplibError("EDGE_WEIGHT_SECTION without EDGE_WEIGHT_FORMAT")
            idx += 1
            values: list[int] = []
            needed = _entry_count(weight_format, dimension)
            while idx < len(lines) and len(values) < needed:
                tokens = lines[idx].split()
                try:
                    parsed = [int(float(tok)) for tok in tokens]
                except ValueError:
                    break  # next section keyword reached
                values.extend(parsed)
                idx += 1
            if len(values) < needed:
                raise TsplibError(
                    f"EDGE_WEIGHT_SECTION has {len(values)} entries, expected {needed}"
                )
            if len(values) > needed:
                raise TsplibError("EDGE_WEIGHT_SECTION has trailing entries")
            weights = _expand_weights(weight_format, dimension, values)
            continue

        if key == "DISPLAY_DATA_SECTION":
            if dimension is None:
                raise TsplibError("DISPLAY_DATA_SECTION before DIMENSION")
            idx += 1 + dimension
            continue

        raise TsplibError(f"unsupported keyword: {key}")

    if dimension is None:
        raise TsplibError("missing DIMENSION")
    if weight_type is None:
        raise TsplibError("missing EDGE_WEIGHT_TYPE")

    if weight_type == "EXPLICIT":
        if weights is None:
            raise TsplibError("EXPLICIT instance lacks EDGE_WEIGHT_SECTION")
        return TspInstance(name=name, n=dimension, weight_kind="EXPLICIT", explicit_weights=weights)

    if coords is None:
        raise TsplibError(f"{weight_type} instance lacks NODE_COORD_SECTION")
    if len(coords) != dimension:
        raise TsplibError(f"expected {dimension} coordinates, got {len(coords)}")
    ordered = tuple(coords[node] for node in range(1, dimension + 1))
    return TspInstance(name=name, n=dimension, weight_kind=weight_type, coords=ordered)


def _entry_count(weight_format: str, n: int) -> int:
    if weight_format == "FULL_MATRIX":
        return n * n
    if weight_format == "UPPER_ROW":
        return n * (n - 1) // 2
    # both *_DIAG_ROW layouts carry the diagonal
    return n * (n + 1) // 2


def _expand_weights(weight_format: str, n: int, values: list[int]) -> np.ndarray:
    m = np.zeros((n, n), dtype=np.int64)
    pos = 0
    if weight_format == "FULL_MATRIX":
        m = np.array(values, dtype=np.int64).reshape(n, n)
        for i in range(n):
            for j in range(i + 1, n):
                if m[i, j] != m[j, i]:
                    raise TsplibError(
                        f"FULL_MATRIX is asymmetric at ({i + 1}, {j + 1}): "
                        f"{m[i, j]} != {m[j, i]}"
                    )
        np.fill_diagonal(m, 0)
        return m
    if weight_format == "UPPER_ROW":
        for i in range(n):
            for j in range(i + 1, n):
                m[i, j] = m[j, i] = values[pos]
                pos += 1
        return m
    if weight_format == "UPPER_DIAG_ROW":
        for i in range(n):
            for j in range(i, n):
                if i == j:
                    if values[pos] != 0:
                        raise TsplibError(f"nonzero diagonal entry at node {i + 1}")
                else:
                    m[i, j] = m[j, i] = values[pos]
                pos += 1
        return m
    # LOWER_DIAG_ROW
    for i in range(n):
        for j in range(i + 1):
            if i == j:
                if values[pos] != 0:
                    raise TsplibError(f"nonzero diagonal entry at node {i + 1}")
            else:
                m[i, j] = m[j, i] = values[pos]
            pos += 1
    return m
