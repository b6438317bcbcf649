"""Text file formats for set systems, cellular systems, point sets and plug-in tables."""

from __future__ import annotations

from pathlib import Path

import numpy as np

from .errors import FormatError
from .homology import CubicalSetSystem
from .setcore import SetSystem

SETSYSTEM_HEADER = "convexlab-setsystem v1"
CUBICAL_HEADER = "convexlab-cubical v1"
TABLE_HEADER = "table v1"


def _lines(text: str) -> list[tuple[int, str]]:
    return [(i, ln.strip()) for i, ln in enumerate(text.splitlines(), start=1) if ln.strip()]


def _bits(s: str, n: int, lineno: int) -> str:
    if len(s) != n:
        raise FormatError(f"bitstring has length {len(s)}, expected {n}", lineno, "bits")
    if s.strip("01"):
        raise FormatError("bitstring may contain only 0 and 1", lineno, "bits")
    return s


def dump_setsystem(system: SetSystem) -> str:
    n = system.ground_size
    out = [SETSYSTEM_HEADER, f"ground {n}"]
    for i, s in enumerate(system.sets):
        bits = format(s, f"0{n}b")[::-1] if n else ""
        out.append(f"{system.name(i)} {bits}".rstrip())
    return "\n".join(out) + "\n"


def dump_cubical(system: CubicalSetSystem) -> str:
    out = [CUBICAL_HEADER, "dims " + " ".join(map(str, system.dims))]
    for i, a in enumerate(system.sets):
        out.append(f"{system.name(i)} " + "".join(np.where(a.ravel(), "1", "0")))
    return "\n".join(out) + "\n"


def dump(system) -> str:
    if isinstance(system, CubicalSetSystem):
        return dump_cubical(system)
    return dump_setsystem(system)


def _members(lines, width):
    names, rows = [], []
    for lineno, ln in lines:
        parts = ln.split()
        if width == 0 and len(parts) == 1:
            parts.append("")
        if len(parts) != 2:
            raise FormatError("expected '<name> <bitstring>'", lineno, "member")
        names.append(parts[0])
        rows.append(_bits(parts[1], width, lineno))
    return names, rows


def loads(text: str):
    """Parse either file flavour, dispatching on the header line."""
    lines = _lines(text)
    if not lines:
        raise FormatError("empty file", 1, "header")
    lineno, header = lines[0]
    if header == SETSYSTEM_HEADER:
        return _loads_setsystem(lines[1:])
    if header == CUBICAL_HEADER:
        return _loads_cubical(lines[1:])
    raise FormatError(f"unknown header {header!r}", lineno, "header")


def _loads_setsystem(lines) -> SetSystem:
    if not lines:
        raise FormatError("missing 'ground <n>' line", None, "ground")
    lineno, ln = lines[0]
    parts = ln.split()
    if len(parts) != 2 or parts[0] != "ground" or not parts[1].isdigit():
        raise FormatError("expected 'ground <n>'", lineno, "ground")
    n = int(parts[1])
    names, rows = _members(lines[1:], n)
    sets = tuple(int(r[::-1], 2) if r else 0 for r in rows)
    return SetSystem(n, sets, tuple(names))


def _loads_cubical(lines) -> CubicalSetSystem:
    if not lines:
        raise FormatError("missing 'dims ...' line", None, "dims")
    lineno, ln = lines[0]
    parts = ln.split()
    if parts[0] != "dims" or len(parts) < 3 or not all(p.isdigit() for p in parts[1:]):
        raise FormatError("expected 'dims <d0> <d1> [...]'", lineno, "dims")
    dims = tuple(int(p) for p in parts[1:])
    if len(dims) not in (2, 3) or 0 in dims:
        raise FormatError(f"unsupported grid {dims}", lineno, "dims")
    size = int(np.prod(dims))
    names, rows = _members(lines[1:], size)
    sets = tuple((np.frombuffer(r.encode(), dtype=np.uint8) == ord("1")).reshape(dims) for r in rows)
    return CubicalSetSystem(dims, sets, tuple(names))


def load(path) -> SetSystem | CubicalSetSystem:
    return loads(Path(path).read_text())


def save(system, path) -> None:
    Path(path).write_text(dump(system))


def dump_points(points) -> str:
    return "points " + " ".join(map(str, points)) + "\n"


def loads_points(text: str) -> tuple[int, ...]:
    lines = _lines(text)
    if len(lines) != 1:
        raise FormatError("expected one 'points ...' line", lines[1][0] if len(lines) > 1 else 1, "points")
    lineno, ln = lines[0]
    parts = ln.split()
    if parts[0] != "points" or not all(p.isdigit() for p in parts[1:]):
        raise FormatError("expected 'points <i1> <i2> ...'", lineno, "points")
    return tuple(int(p) for p in parts[1:])


def dump_table(table: dict) -> str:
    return TABLE_HEADER + "\n" + "".join(f"{k} {table[k]}\n" for k in sorted(table))


def loads_table(text: str) -> dict:
    lines = _lines(text)
    if not lines or lines[0][1] != TABLE_HEADER:
        raise FormatError(f"expected header {TABLE_HEADER!r}", lines[0][0] if lines else 1, "header")
    table: dict[int, int] = {}
    prev = None
    for lineno, ln in lines[1:]:
        parts = ln.split()
        if len(parts) != 2 or not all(p.lstrip("-").isdigit() for p in parts):
            raise FormatError("expected '<key> <value>'", lineno, "entry")
        key, value = int(parts[0]), int(parts[1])
        if prev is not None and key <= prev:
            raise FormatError("keys must be strictly increasing", lineno, "key")
        table[key] = value
        prev = key
    return table
