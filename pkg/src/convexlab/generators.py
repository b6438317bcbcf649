"""Generators for the explicit constructions and for random test families."""

from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .errors import InputError, SizeGuardError
from .homology import CubicalSetSystem
from .setcore import SetSystem, bits_to_mask, two_partitions


def check_helly_sequence(u: Sequence[int]) -> None:
    """Raise InputError naming the first violated condition of a graded-Helly sequence."""
    if not u:
        raise InputError("sequence is empty")
    prev = 0
    for t, v in enumerate(u, start=1):
        if not isinstance(v, int) or v < 1:
            raise InputError(f"u_{t}={v!r} is not a positive integer")
        if v < prev:
            raise InputError(f"not non-decreasing: u_{t}={v} < u_{t-1}={prev}")
        if v > t:
            raise InputError(f"u_{t}={v} violates u_t <= t")
        if v > prev and v != t:
            raise InputError(f"u_{t}={v} increases over u_{t-1}={prev} without equalling t")
        prev = v


def gen_helly_sequence(u: Sequence[int]) -> SetSystem:
    """Members {1..u_i} minus {k} for every i and k <= u_i; ground element j is stored as j-1."""
    u = list(u)
    check_helly_sequence(u)
    ground = max(u)
    sets, names = [], []
    for i, ui in enumerate(u, start=1):
        block = (1 << ui) - 1
        for k in range(1, ui + 1):
            sets.append(block & ~(1 << (k - 1)))
            names.append(f"F{k}_{i}")
    return SetSystem(ground, tuple(sets), tuple(names))


# ---------------------------------------------------------------- binary words


def word_length(k: int) -> int:
    return (1 << (k - 1)) - 1


def word_index(word: str) -> int:
    """Ground index of a binary word: letter 1 is the most significant bit."""
    return int(word, 2)


def index_word(index: int, length: int) -> str:
    return format(index, f"0{length}b")


def binary_word_partitions(k: int) -> list[tuple[int, int]]:
    """Canonical 2-partitions of {1..k} as masks over positions 0..k-1."""
    return list(two_partitions(k))


def gen_binary_words(k: int) -> tuple[SetSystem, tuple[int, ...]]:
    """Words of length L = 2^(k-1) - 1 with members F_i^d = {words with letter d at i}.

    Member order is F_1^0, F_1^1, F_2^0, ...  The returned point set has one
    word per element of {1..k}; its i-th letter is 0 iff that element lies in
    block 0 (the block containing 1) of the i-th canonical partition.
    """
    if not 2 <= k <= 5:
        raise SizeGuardError(f"k={k} outside supported range 2..5")
    L = word_length(k)
    n = 1 << L
    idx = np.arange(n, dtype=np.int64)
    sets, names = [], []
    for i in range(L):
        bit = (idx >> (L - 1 - i)) & 1
        for delta in (0, 1):
            members = np.packbits(bit == delta, bitorder="little")
            sets.append(int.from_bytes(members.tobytes(), "little"))
            names.append(f"F{i + 1}_{delta}")
    letters = [["0"] * L for _ in range(k)]
    for i, (b0, b1) in enumerate(binary_word_partitions(k)):
        for j in range(k):
            letters[j][i] = "1" if (b1 >> j) & 1 else "0"
    points = tuple(word_index("".join(w)) for w in letters)
    return SetSystem(n, tuple(sets), tuple(names)), points


# ---------------------------------------------------------------- shatter family


@dataclass(frozen=True)
class ShatterLayout:
    """Where each box and ring of a generated shatter family sits on the grid."""

    ring_side: int
    boxes: tuple[tuple[int, int, int, int], ...]  # (row0, col0, rows, cols) per i
    rings: tuple[tuple[tuple[int, int], ...], ...]  # ring top-left corners per i


def ring_cycle(r0: int, c0: int, side: int) -> list[tuple[int, int]]:
    """Perimeter cells of a side x side square, in cyclic order from the top-left corner."""
    top = [(r0, c0 + j) for j in range(side)]
    right = [(r0 + j, c0 + side - 1) for j in range(1, side)]
    bottom = [(r0 + side - 1, c0 + j) for j in range(side - 2, -1, -1)]
    left = [(r0 + j, c0) for j in range(side - 2, 0, -1)]
    return top + right + bottom + left


def arc_labels(length: int, arcs: int) -> list[int]:
    """Split a cycle of ``length`` cells into ``arcs`` contiguous, near-equal arcs."""
    base, extra = divmod(length, arcs)
    labels = []
    for a in range(arcs):
        labels += [a] * (base + (1 if a < extra else 0))
    return labels


def shatter_layout(f: Sequence[int]) -> tuple[tuple[int, int], ShatterLayout]:
    side = 3
    while 4 * side - 4 < max(len(f), 1):
        side += 1
    boxes, rings = [], []
    row = 0
    width = 0
    for i, fi in enumerate(f, start=1):
        cols = max(side + 2, 1 + fi * (side + 1))
        rows = side + 2
        boxes.append((row, 0, rows, cols))
        rings.append(tuple((row + 1, 1 + r * (side + 1)) for r in range(fi)))
        width = max(width, cols)
        row += rows + 1
    dims = (max(row - 1, 1), max(width, 1))
    return dims, ShatterLayout(side, tuple(boxes), tuple(rings))


def gen_shatter_family(f: Sequence[int], max_i: int = 8, max_f: int = 6) -> tuple[CubicalSetSystem, ShatterLayout]:
    """Planar family whose 0-th homological shatter function equals ``f``.

    Box i holds f(i) disjoint thickness-1 square rings, each cut into i
    labelled arcs; member F_k^(i) is box i minus every arc labelled k.
    """
    f = [int(x) for x in f]
    if not f:
        raise InputError("f must have at least one value")
    for t in range(len(f)):
        if f[t] < 0:
            raise InputError(f"f({t + 1})={f[t]} is negative")
        if t and f[t] < f[t - 1]:
            raise InputError(f"f is not non-decreasing at i={t + 1}")
    dims, layout = shatter_layout(f)
    if len(f) > max_i or max(f) > max_f:
        raise SizeGuardError(
            f"ring capacity: i up to {len(f)} and f up to {max(f)} exceed limits "
            f"(max_i={max_i}, max_f={max_f}); required grid dims {dims[0]}x{dims[1]}, "
            f"ring side {layout.ring_side}")
    sets, names = [], []
    for i in range(1, len(f) + 1):
        r0, c0, rows, cols = layout.boxes[i - 1]
        box = np.zeros(dims, dtype=bool)
        box[r0:r0 + rows, c0:c0 + cols] = True
        cut = [np.zeros(dims, dtype=bool) for _ in range(i)]
        for (rr, rc) in layout.rings[i - 1]:
            cycle = ring_cycle(rr, rc, layout.ring_side)
            for cell, lab in zip(cycle, arc_labels(len(cycle), i)):
                cut[lab][cell] = True
        for k in range(i):
            sets.append(box & ~cut[k])
            names.append(f"F{k + 1}_{i}")
    return CubicalSetSystem(dims, tuple(sets), tuple(names)), layout


# ---------------------------------------------------------------- random families


def gen_random(kind: str, params: dict | None = None, seed: int = 0):
    """Seeded random family.

    kinds and params:
      abstract  -- n (ground, default 6), m (members, default 4), p (default 0.5)
      intervals -- n (cells on a line, default 10), m (default 5), common (cell every interval must contain)
      boxes     -- dims (default (16, 16)), m (default 5); axis-aligned rectangles of cells
    """
    params = dict(params or {})
    rng = random.Random(seed)
    if kind == "abstract":
        n, m, p = int(params.get("n", 6)), int(params.get("m", 4)), float(params.get("p", 0.5))
        if n < 1 or m < 0 or not 0 <= p <= 1:
            raise InputError(f"invalid abstract params {params}")
        sets = [bits_to_mask(x for x in range(n) if rng.random() < p) for _ in range(m)]
        return SetSystem(n, tuple(sets))
    if kind == "intervals":
        n, m = int(params.get("n", 10)), int(params.get("m", 5))
        common = params.get("common")
        if n < 1 or m < 0 or (common is not None and not 0 <= int(common) < n):
            raise InputError(f"invalid interval params {params}")
        sets = []
        for _ in range(m):
            a, b = sorted((rng.randrange(n), rng.randrange(n)))
            if common is not None:
                a, b = min(a, int(common)), max(b, int(common))
            sets.append(((1 << (b + 1)) - 1) & ~((1 << a) - 1))
        return SetSystem(n, tuple(sets))
    if kind == "boxes":
        dims = tuple(int(x) for x in params.get("dims", (16, 16)))
        m = int(params.get("m", 5))
        if len(dims) not in (2, 3) or any(x < 1 for x in dims) or m < 0:
            raise InputError(f"invalid box params {params}")
        sets = []
        for _ in range(m):
            a = np.zeros(dims, dtype=bool)
            sl = []
            for x in dims:
                lo, hi = sorted((rng.randrange(x), rng.randrange(x)))
                sl.append(slice(lo, hi + 1))
            a[tuple(sl)] = True
            sets.append(a)
        return CubicalSetSystem(dims, tuple(sets))
    raise InputError(f"unknown random kind {kind!r}")
