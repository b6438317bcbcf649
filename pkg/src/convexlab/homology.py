"""Z2 homology of cellular set systems on a shared cubical grid.

A set is a union of top-dimensional grid cells; its topology is that of the
closed union, i.e. the closure complex of the selected cells.  Cells of the
closure are addressed in the doubled grid: a cell of a grid with extents
``dims`` has coordinates in ``0..2*dims[a]``, odd coordinates spanning an
interval and even ones a point, so the cell dimension is the number of odd
coordinates.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from .errors import InputError
from .gf2 import reduce_columns
from .setcore import SetSystem, iter_bits

SUPPORTED_DIMS = (2, 3)


def _check_dims(dims) -> tuple[int, ...]:
    dims = tuple(int(x) for x in dims)
    if len(dims) not in SUPPORTED_DIMS:
        raise InputError(f"grid dimension {len(dims)} not supported (only 2 or 3)")
    if any(x < 1 for x in dims):
        raise InputError(f"grid extents must be positive, got {dims}")
    return dims


@dataclass(frozen=True, eq=False)
class CubicalSetSystem:
    """A family of cell sets on one grid; ``sets[i]`` is a boolean array of shape ``dims``."""

    dims: tuple[int, ...]
    sets: tuple[np.ndarray, ...]
    names: tuple[str, ...] | None = None

    def __post_init__(self):
        dims = _check_dims(self.dims)
        object.__setattr__(self, "dims", dims)
        arrays = []
        for i, s in enumerate(self.sets):
            a = np.asarray(s, dtype=bool)
            if a.size != int(np.prod(dims)):
                raise InputError(f"member {i} has {a.size} cells, grid has {int(np.prod(dims))}")
            a = a.reshape(dims).copy()
            a.setflags(write=False)
            arrays.append(a)
        object.__setattr__(self, "sets", tuple(arrays))
        if self.names is not None:
            if len(self.names) != len(arrays):
                raise InputError("names and sets differ in length")
            object.__setattr__(self, "names", tuple(self.names))

    def __len__(self):
        return len(self.sets)

    def __eq__(self, other):
        if not isinstance(other, CubicalSetSystem):
            return NotImplemented
        return (self.dims == other.dims and len(self) == len(other)
                and all(np.array_equal(a, b) for a, b in zip(self.sets, other.sets)))

    def name(self, i: int) -> str:
        return self.names[i] if self.names is not None else f"F{i}"

    def intersection(self, active: int | None = None) -> np.ndarray:
        """Cells common to the active members; the full grid for the empty subfamily."""
        if active is None:
            active = (1 << len(self.sets)) - 1
        out = np.ones(self.dims, dtype=bool)
        for i in iter_bits(active):
            out &= self.sets[i]
        return out

    def to_set_system(self) -> SetSystem:
        """Abstract view: ground elements are the grid cells in row-major order."""
        n = int(np.prod(self.dims))
        sets = []
        for a in self.sets:
            packed = np.packbits(a.ravel(), bitorder="little")
            sets.append(int.from_bytes(packed.tobytes(), "little"))
        return SetSystem(n, tuple(sets), self.names)


@dataclass(frozen=True, eq=False)
class ChainComplex:
    """Cells of a cubical closure complex graded by dimension, with Z2 boundaries.

    ``cells[q]`` holds the doubled-grid linear indices of the q-cells in
    increasing order; ``faces[q]`` is an ``(n_q, 2q)`` array giving, for each
    q-cell, the positions of its facets in ``cells[q-1]``.
    """

    shape: tuple[int, ...]
    cells: tuple[np.ndarray, ...]
    faces: tuple[np.ndarray, ...] = field(repr=False)

    @property
    def dim(self) -> int:
        return len(self.shape)

    def counts(self) -> list[int]:
        return [len(c) for c in self.cells]

    @property
    def is_empty(self) -> bool:
        return len(self.cells[0]) == 0

    def euler_characteristic(self) -> int:
        return sum((-1) ** q * n for q, n in enumerate(self.counts()))

    def boundary_matrix(self, q: int) -> np.ndarray:
        """Dense ``n_{q-1} x n_q`` 0/1 matrix of the q-th boundary map (small complexes only)."""
        m = np.zeros((len(self.cells[q - 1]), len(self.cells[q])), dtype=np.uint8)
        if len(self.cells[q]):
            cols = np.repeat(np.arange(len(self.cells[q])), 2 * q)
            np.add.at(m, (self.faces[q].ravel(), cols), 1)
        return m & 1

    def check_boundary_squared(self) -> bool:
        """True iff every composite boundary coefficient is even (d∘d = 0 over Z2)."""
        for q in range(2, self.dim + 1):
            if len(self.cells[q]) == 0:
                continue
            comp = self.faces[q - 1][self.faces[q]].reshape(len(self.cells[q]), -1)
            comp = np.sort(comp, axis=1)
            if not np.array_equal(comp[:, 0::2], comp[:, 1::2]):
                return False
        return True


def build_complex(cells, dims: Sequence[int] | None = None) -> ChainComplex:
    """Closure complex of the selected top cells.

    ``cells`` is a boolean array of shape ``dims`` (or any array reshaped to
    it).  Raises InputError when the cell set does not fit the grid.
    """
    cells = np.asarray(cells, dtype=bool)
    dims = _check_dims(cells.shape if dims is None else dims)
    if cells.size != int(np.prod(dims)):
        raise InputError(f"cell set with {cells.size} cells does not fit grid {dims}")
    cells = cells.reshape(dims)
    d = len(dims)
    shape = tuple(2 * x + 1 for x in dims)

    top = np.zeros(shape, dtype=bool)
    top[tuple(slice(1, None, 2) for _ in range(d))] = cells
    padded = np.pad(top, 1)
    present = np.zeros(shape, dtype=bool)
    for off in itertools.product((0, 1, 2), repeat=d):
        present |= padded[tuple(slice(o, o + n) for o, n in zip(off, shape))]

    parity = np.zeros(shape, dtype=np.int8)
    for a in range(d):
        ax = (np.arange(shape[a]) % 2).reshape([-1 if b == a else 1 for b in range(d)])
        parity = parity + ax
    flat_present = present.ravel()
    flat_parity = parity.ravel()
    strides = np.array([int(np.prod(shape[a + 1:])) for a in range(d)], dtype=np.int64)

    cell_lists = [np.flatnonzero(flat_present & (flat_parity == q)) for q in range(d + 1)]
    faces = [np.zeros((len(cell_lists[0]), 0), dtype=np.int64)]
    lookup = np.full(flat_present.size, -1, dtype=np.int64)
    for q in range(1, d + 1):
        lookup[cell_lists[q - 1]] = np.arange(len(cell_lists[q - 1]))
        cq = cell_lists[q]
        if len(cq) == 0:
            faces.append(np.zeros((0, 2 * q), dtype=np.int64))
            continue
        coords = np.stack(np.unravel_index(cq, shape), axis=1)
        odd = coords % 2 == 1
        odd_axes = np.argsort(~odd, axis=1, kind="stable")[:, :q]
        step = strides[odd_axes]
        lin = np.concatenate([cq[:, None] - step, cq[:, None] + step], axis=1)
        f = lookup[lin]
        if (f < 0).any():
            raise AssertionError("closure complex is missing a facet")
        faces.append(f)
    cx = ChainComplex(shape, tuple(cell_lists), tuple(faces))
    if not cx.check_boundary_squared():
        raise AssertionError("boundary of boundary is nonzero")
    return cx


def boundary_ranks(cx: ChainComplex) -> list[int]:
    """``ranks[q]`` = rank of the q-th boundary map over Z2 (``ranks[0] = 0``).

    Reduces from the top dimension down; columns already known to vanish
    (pivot rows of the dimension above) are skipped.
    """
    ranks = [0] * (cx.dim + 2)
    cleared: set = set()
    for q in range(cx.dim, 0, -1):
        rank, pivots = reduce_columns(cx.faces[q].tolist(), skip=cleared)
        ranks[q] = rank
        cleared = set(pivots)
    return ranks[: cx.dim + 1]


@dataclass(frozen=True)
class BettiVector:
    """Reduced Z2 Betti numbers in degrees ``0..h``."""

    values: tuple[int, ...]
    empty: bool = False

    def __getitem__(self, i):
        return self.values[i]

    def max(self) -> int:
        return max(self.values, default=0)


def betti_numbers(cells, dims=None) -> list[int]:
    """Unreduced Betti numbers of the closure complex, degrees ``0..d``."""
    cx = build_complex(cells, dims)
    ranks = boundary_ranks(cx) + [0]
    counts = cx.counts()
    return [counts[q] - ranks[q] - ranks[q + 1] for q in range(cx.dim + 1)]


def reduced_betti(cells, h: int, dims=None) -> BettiVector:
    cells = np.asarray(cells, dtype=bool)
    d = len(cells.shape if dims is None else dims)
    if not 0 <= h <= d:
        raise InputError(f"homology degree {h} must lie in 0..{d}")
    if not cells.any():
        return BettiVector((0,) * (h + 1), empty=True)
    b = betti_numbers(cells, dims)
    b[0] -= 1
    return BettiVector(tuple(b[: h + 1]))


def betti(system: CubicalSetSystem, subfamily: int | None, h: int) -> BettiVector:
    """Reduced Betti numbers of the intersection of the selected members."""
    return reduced_betti(system.intersection(subfamily), h)


# ---------------------------------------------------------------- shatter function


def _intersections_up_to(system: CubicalSetSystem, t: int):
    """Yield (size, cells) for every nonempty intersection of at most t members.

    Empty intersections are pruned together with all their supersets.
    """
    n = len(system)
    full = np.ones(system.dims, dtype=bool)
    yield 0, full

    def dfs(inter, start, size):
        for j in range(start, n):
            new = inter & system.sets[j]
            if not new.any():
                continue
            yield size + 1, new
            if size + 1 < t:
                yield from dfs(new, j + 1, size + 1)

    if t > 0:
        yield from dfs(full, 0, 0)


def shatter_profile(system: CubicalSetSystem, h: int, t_max: int) -> list[list[int]]:
    """Per-degree shatter values: ``out[i][t]`` = max reduced b_i over at most t members.

    Degrees ``0..h``, ``t`` in ``0..t_max``.  Empty intersections contribute 0.
    """
    n = len(system)
    if not 0 <= t_max <= n:
        raise InputError(f"t_max={t_max} must lie in 0..{n}")
    if not 0 <= h <= len(system.dims):
        raise InputError(f"homology degree {h} must lie in 0..{len(system.dims)}")
    per_size = [[0] * (t_max + 1) for _ in range(h + 1)]
    cache: dict[bytes, BettiVector] = {}
    for size, cells in _intersections_up_to(system, t_max):
        key = np.packbits(cells.ravel()).tobytes()
        bv = cache.get(key)
        if bv is None:
            bv = cache[key] = reduced_betti(cells, h)
        for i in range(h + 1):
            if bv[i] > per_size[i][size]:
                per_size[i][size] = bv[i]
    return [list(itertools.accumulate(row, max)) for row in per_size]


def shatter_value(system: CubicalSetSystem, h: int, t: int) -> int:
    """max over subfamilies of at most t members of max_{i<=h} of reduced b_i of their intersection."""
    prof = shatter_profile(system, h, t)
    return max(row[t] for row in prof)


def shatter_function(system: CubicalSetSystem, h: int, t_max: int) -> list[int]:
    """Headline values for ``t = 0..t_max``."""
    prof = shatter_profile(system, h, t_max)
    return [max(row[t] for row in prof) for t in range(t_max + 1)]


# ---------------------------------------------------------------- nerve


@dataclass(frozen=True)
class NerveComplex:
    """Faces are the subfamilies (as sorted member tuples) with a common point."""

    n_vertices: int
    faces: tuple[tuple[int, ...], ...]

    def faces_of_dim(self, q: int) -> list[tuple[int, ...]]:
        return [f for f in self.faces if len(f) == q + 1]

    def face_count(self, q: int) -> int:
        return sum(1 for f in self.faces if len(f) == q + 1)


def nerve(system: SetSystem | CubicalSetSystem, dim_cap: int) -> NerveComplex:
    if dim_cap < 0:
        raise InputError("dimension cap must be non-negative")
    if isinstance(system, CubicalSetSystem):
        system = system.to_set_system()
    sets = system.sets
    n = len(sets)
    faces = []

    def dfs(face, inter, start):
        for j in range(start, n):
            new = inter & sets[j]
            if new:
                f = face + (j,)
                faces.append(f)
                if len(f) <= dim_cap:
                    dfs(f, new, j + 1)

    dfs((), system.full, 0)
    faces.sort(key=lambda f: (len(f), f))
    return NerveComplex(n, tuple(faces))
