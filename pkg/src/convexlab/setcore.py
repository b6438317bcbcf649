"""Finite set systems: hulls, Radon partitions, Helly-type numbers.

Family members and ground elements are both handled as bit-packed Python
ints.  A member's set has bit ``j`` on iff ground element ``j`` belongs to
it; a *subfamily mask* has bit ``i`` on iff member ``i`` is active.  Every
subfamily enumeration walks masks in increasing numeric order, so results
with ties are reproducible.
"""

from __future__ import annotations

import enum
import itertools
import math
import random
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from typing import Iterable, Iterator, Mapping, Sequence

from .errors import InputError, SizeGuardError

COLORFUL_GUARD = 10


def iter_bits(mask: int) -> Iterator[int]:
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def bits_to_mask(indices: Iterable[int]) -> int:
    mask = 0
    for i in indices:
        mask |= 1 << i
    return mask


@dataclass(frozen=True)
class SetSystem:
    """A finite ground set ``{0..ground_size-1}`` and an ordered family of subsets."""

    ground_size: int
    sets: tuple[int, ...]
    names: tuple[str, ...] | None = field(default=None, compare=False)

    def __post_init__(self):
        if self.ground_size < 0:
            raise InputError("ground_size must be non-negative")
        object.__setattr__(self, "sets", tuple(int(s) for s in self.sets))
        for i, s in enumerate(self.sets):
            if s < 0 or s >> self.ground_size:
                raise InputError(f"member {i} has elements outside the ground set")
        if self.names is not None:
            names = tuple(self.names)
            if len(names) != len(self.sets):
                raise InputError("names and sets differ in length")
            object.__setattr__(self, "names", names)

    @classmethod
    def from_lists(cls, ground_size: int, members: Iterable[Iterable[int]], names=None):
        sets = []
        for elems in members:
            elems = list(elems)
            for x in elems:
                if not 0 <= x < ground_size:
                    raise InputError(f"element {x} outside ground set of size {ground_size}")
            sets.append(bits_to_mask(elems))
        return cls(ground_size, tuple(sets), names)

    def __len__(self):
        return len(self.sets)

    @property
    def full(self) -> int:
        return (1 << self.ground_size) - 1

    @property
    def all_members(self) -> int:
        return (1 << len(self.sets)) - 1

    def name(self, i: int) -> str:
        return self.names[i] if self.names is not None else f"F{i}"

    def member_list(self, i: int) -> list[int]:
        return list(iter_bits(self.sets[i]))

    def column(self, x: int) -> int:
        """Mask of the members containing ground element ``x``."""
        col = 0
        for i, s in enumerate(self.sets):
            if (s >> x) & 1:
                col |= 1 << i
        return col

    @cached_property
    def columns(self) -> tuple[int, ...]:
        cols = [0] * self.ground_size
        for i, s in enumerate(self.sets):
            for x in iter_bits(s):
                cols[x] |= 1 << i
        return tuple(cols)

    def subfamily(self, active: int) -> "SetSystem":
        idx = list(iter_bits(active))
        names = None if self.names is None else tuple(self.names[i] for i in idx)
        return SetSystem(self.ground_size, tuple(self.sets[i] for i in idx), names)

    def without(self, member: int) -> "SetSystem":
        return self.subfamily(self.all_members & ~(1 << member))

    def intersection(self, active: int | None = None) -> int:
        """Common points of the active members (the whole ground set if none are active)."""
        inter = self.full
        for i in iter_bits(self._active(active)):
            inter &= self.sets[i]
        return inter

    def _active(self, active: int | None) -> int:
        if active is None:
            return self.all_members
        if active < 0 or active >> len(self.sets):
            raise InputError("subfamily mask refers to members that do not exist")
        return active


@dataclass(frozen=True)
class Partition2:
    """A split of a point multiset into two nonempty blocks."""

    block0: tuple[int, ...]
    block1: tuple[int, ...]

    def __post_init__(self):
        if not self.block0 or not self.block1:
            raise InputError("both blocks of a partition must be nonempty")


@dataclass(frozen=True)
class Coloring:
    """Assignment member index -> color in ``0..m-1``; every color is used."""

    colors: Mapping[int, int]

    def __post_init__(self):
        object.__setattr__(self, "colors", dict(self.colors))
        used = set(self.colors.values())
        if used != set(range(len(used))):
            raise InputError(f"coloring is not surjective onto 0..{max(used, default=-1)}")

    @property
    def m(self) -> int:
        return len(set(self.colors.values()))

    @property
    def members(self) -> int:
        return bits_to_mask(self.colors)

    def classes(self) -> list[list[int]]:
        out = [[] for _ in range(self.m)]
        for member in sorted(self.colors):
            out[self.colors[member]].append(member)
        return out


class Verdict(str, enum.Enum):
    HYPOTHESIS_FAILS = "hypothesis_fails"
    CONCLUSION_HOLDS = "conclusion_holds"
    COUNTEREXAMPLE = "counterexample"


@dataclass(frozen=True)
class GradedProfile:
    """Graded parameter values; ``values[t-1]`` is the value at ``t``."""

    kind: str
    values: tuple[int, ...]

    def value(self, t: int) -> int:
        if not 1 <= t <= len(self.values):
            raise InputError(f"t={t} outside computed range 1..{len(self.values)}")
        return self.values[t - 1]

    @property
    def t_max(self) -> int:
        return len(self.values)


# ---------------------------------------------------------------- hulls


def _point_mask(system: SetSystem, points: Sequence[int]) -> int:
    mask = 0
    for p in points:
        if not 0 <= p < system.ground_size:
            raise InputError(f"point {p} outside ground set of size {system.ground_size}")
        mask |= 1 << p
    return mask


def containing_members(system: SetSystem, active: int | None, points: Sequence[int]) -> int:
    pmask = _point_mask(system, points)
    found = 0
    for i in iter_bits(system._active(active)):
        if system.sets[i] & pmask == pmask:
            found |= 1 << i
    return found


def hull(system: SetSystem, active: int | None, points: Sequence[int]) -> int:
    """Intersection of the active members containing ``points``; ground set if there are none."""
    return system.intersection(containing_members(system, active, points))


def is_radon_partition(system: SetSystem, active: int | None, p: Partition2) -> bool:
    return bool(hull(system, active, p.block0) & hull(system, active, p.block1))


def two_partitions(r: int) -> Iterator[tuple[int, int]]:
    """Canonical enumeration of the 2-partitions of positions ``0..r-1``.

    Position 0 always lies in block 0.  Partition number ``i`` (0-based)
    puts position ``j >= 1`` in block 0 iff bit ``r-1-j`` of ``i`` is set;
    ``i`` runs up to ``2**(r-1) - 2`` so block 1 is never empty.  For r=3 the
    order is {0}|{1,2}, {0,2}|{1}, {0,1}|{2}.  Yields position masks.
    """
    full = (1 << r) - 1
    for i in range((1 << (r - 1)) - 1):
        b0 = 1
        for j in range(1, r):
            if (i >> (r - 1 - j)) & 1:
                b0 |= 1 << j
        yield b0, full ^ b0


def find_radon_partition(system: SetSystem, active: int | None, s: Sequence[int]) -> Partition2 | None:
    """First Radon partition of the multiset ``s`` in canonical order, or None."""
    s = tuple(s)
    if len(s) < 2:
        raise InputError("a Radon partition needs at least two points")
    _point_mask(system, s)
    for m0, m1 in two_partitions(len(s)):
        p = Partition2(
            tuple(s[j] for j in iter_bits(m0)),
            tuple(s[j] for j in iter_bits(m1)),
        )
        if is_radon_partition(system, active, p):
            return p
    return None


# ---------------------------------------------------------------- Radon number


def _classes(system: SetSystem, active: int) -> list[tuple[int, int]]:
    """(representative, active-member column) for each distinct active column."""
    seen: dict[int, int] = {}
    if system.ground_size <= 4096:
        cols = system.columns
        getcol = cols.__getitem__
    else:
        getcol = system.column
    for x in range(system.ground_size):
        c = getcol(x) & active
        if c not in seen:
            seen[c] = x
    return [(x, c) for c, x in seen.items()]


def max_nonpartitionable(system: SetSystem, active: int | None = None) -> tuple[int, ...]:
    """Largest duplicate-free point set with no Radon partition (first found in DFS order).

    Duplicated points always split trivially, so only one representative per
    membership class is considered.  Partitionability is superset-monotone,
    so the DFS only extends non-partitionable sets.
    """
    active = system._active(active)
    if system.ground_size == 0:
        return ()
    reps = _classes(system, active)
    q = len(reps)
    full = system.full
    sets = system.sets
    inter_cache: dict[int, int] = {0: full}

    def inter_of(cm):
        v = inter_cache.get(cm)
        if v is None:
            v = full
            for i in iter_bits(cm):
                v &= sets[i]
            inter_cache[cm] = v
        return v

    best: list[int] = [reps[0][0]]

    # cm[mask] / hl[mask]: containing members / hull of the position-subset `mask`
    def dfs(chosen, cm, hl, start):
        nonlocal best
        if len(chosen) > len(best):
            best = list(chosen)
        if len(best) >= q:
            return True
        r = len(chosen)
        if r + (q - start) <= len(best):
            return False
        bit = 1 << r
        for j in range(start, q):
            col = reps[j][1]
            ncm = cm + [c & col for c in cm]
            nhl = hl + [inter_of(c) for c in ncm[bit:]]
            whole = (bit << 1) - 1
            ok = True
            # every split has position 0 in block 0 and touches the new point
            for m0 in range(1, whole, 2):
                if nhl[m0] & nhl[whole ^ m0]:
                    ok = False
                    break
            if ok and dfs(chosen + [reps[j][0]], ncm, nhl, j + 1):
                return True
        return False

    dfs([], [active], [full], 0)
    return tuple(best)


def radon_number(system: SetSystem, active: int | None = None) -> int:
    """Smallest r >= 2 such that every point multiset of size r has a Radon partition."""
    return max(2, len(max_nonpartitionable(system, active)) + 1)


# ---------------------------------------------------------------- Helly number


def minimal_empty_subfamilies(system: SetSystem, active: int | None = None) -> Iterator[int]:
    """Inclusion-minimal subfamilies (as masks) with empty intersection.

    DFS over the nerve: every minimal empty G is (G minus its top member),
    which intersects, plus that member.
    """
    idx = list(iter_bits(system._active(active)))
    sets = system.sets
    full = system.full
    if full == 0:
        yield 0
        return

    def minimal(chosen, j):
        s = sets[j]
        k = len(chosen)
        pre = [full] * (k + 1)
        for a in range(k):
            pre[a + 1] = pre[a] & sets[chosen[a]]
        suf = s
        for a in range(k - 1, -1, -1):
            if pre[a] & suf == 0:
                return False
            suf &= sets[chosen[a]]
        return True

    def dfs(chosen, inter, start):
        for pos in range(start, len(idx)):
            j = idx[pos]
            new = inter & sets[j]
            if new == 0:
                if minimal(chosen, j):
                    yield bits_to_mask(chosen) | (1 << j)
            else:
                yield from dfs(chosen + [j], new, pos + 1)

    yield from dfs([], full, 0)


def helly_number(system: SetSystem, active: int | None = None) -> int:
    """max(1, size of the largest minimal subfamily with empty intersection)."""
    return max([1] + [m.bit_count() for m in minimal_empty_subfamilies(system, active)])


# ---------------------------------------------------------------- colorful Helly


def _has_empty_colorful(sets, classes, ci=0, inter=-1) -> bool:
    if inter == 0:
        return True
    if ci == len(classes):
        return False
    return any(_has_empty_colorful(sets, classes, ci + 1, inter & sets[i]) for i in classes[ci])


def colorful_check(system: SetSystem, active: int | None, coloring: Coloring) -> Verdict:
    """Evaluate the colorful-Helly implication for one coloring."""
    if active is not None and system._active(active) != coloring.members:
        raise InputError("coloring must cover exactly the active subfamily")
    system._active(coloring.members)
    classes = coloring.classes()
    return _colorful_verdict(system.sets, system.full, classes)


def _colorful_verdict(sets, full, classes) -> Verdict:
    if _has_empty_colorful(sets, classes, 0, full if full else 0):
        return Verdict.HYPOTHESIS_FAILS
    for cls in classes:
        inter = full
        for i in cls:
            inter &= sets[i]
        if inter:
            return Verdict.CONCLUSION_HOLDS
    return Verdict.COUNTEREXAMPLE


def _set_partitions(items: Sequence[int]) -> Iterator[list[list[int]]]:
    """All set partitions of ``items`` via restricted growth strings."""
    if not items:
        yield []
        return
    first, rest = items[0], items[1:]
    for part in _set_partitions(rest):
        yield [[first]] + part
        for b in range(len(part)):
            yield part[:b] + [[first] + part[b]] + part[b + 1:]


def _counterexample_colors(system: SetSystem, member_idx: Sequence[int]) -> int:
    """Bitmask of m such that some surjective m-coloring of exactly these members is a counterexample."""
    sets, full = system.sets, system.full
    if any(sets[i] == 0 for i in member_idx):
        return 0  # an empty member spoils every colorful tuple
    inter = full
    for i in member_idx:
        inter &= sets[i]
    if inter:
        return 0  # every class has a common point
    bad = 0
    for part in _set_partitions(list(member_idx)):
        m = len(part)
        if (bad >> m) & 1 or any(len(b) < 2 for b in part):
            continue  # singleton classes of nonempty sets always satisfy the conclusion
        if _colorful_verdict(sets, full, part) is Verdict.COUNTEREXAMPLE:
            bad |= 1 << m
    return bad


def _colorful_bad_union(system: SetSystem, active: int, t: int) -> dict[int, int]:
    """For every subfamily of size <= t: counterexample color counts over all its subfamilies."""
    idx = list(iter_bits(active))
    union: dict[int, int] = {0: 0}
    for size in range(1, t + 1):
        for combo in itertools.combinations(idx, size):
            mask = bits_to_mask(combo)
            u = _counterexample_colors(system, combo)
            for i in combo:
                u |= union[mask ^ (1 << i)]
            union[mask] = u
    return union


def _first_good_m(bad: int) -> int:
    m = 1
    while (bad >> m) & 1:
        m += 1
    return m


def colorful_helly_number(system: SetSystem, active: int | None = None, guard: int = COLORFUL_GUARD) -> int:
    """Smallest m such that no subfamily with a surjective m-coloring is a counterexample."""
    active = system._active(active)
    n = active.bit_count()
    if n > guard:
        raise SizeGuardError(f"colorful Helly enumeration over {n} members exceeds guard {guard}")
    union = _colorful_bad_union(system, active, n)
    return _first_good_m(union[active])


# ---------------------------------------------------------------- graded parameters

KINDS = ("radon", "helly", "colorful-helly")


def graded(system: SetSystem, kind: str, t_max: int, guard: int = COLORFUL_GUARD,
           active: int | None = None) -> GradedProfile:
    """value(t) = max of the parameter over subfamilies with at most t members."""
    active = system._active(active)
    n = active.bit_count()
    if not 1 <= t_max <= max(n, 1):
        raise InputError(f"t_max={t_max} must lie in 1..{max(n, 1)}")
    if kind not in KINDS:
        raise InputError(f"unknown graded kind {kind!r}")
    if kind == "helly":
        sizes = [m.bit_count() for m in minimal_empty_subfamilies(system, active)]
        values = [max([1] + [s for s in sizes if s <= t]) for t in range(1, t_max + 1)]
        return GradedProfile(kind, tuple(values))
    if kind == "colorful-helly":
        if t_max > guard:
            raise SizeGuardError(f"colorful Helly enumeration at t={t_max} exceeds guard {guard}")
        union = _colorful_bad_union(system, active, t_max)
        per_size = [1] * (t_max + 1)
        for mask, bad in union.items():
            size = mask.bit_count()
            per_size[size] = max(per_size[size], _first_good_m(bad))
        return GradedProfile(kind, tuple(itertools.accumulate(per_size[1:], max)))
    idx = list(iter_bits(active))
    per_size = [2] * (t_max + 1)
    for size in range(1, t_max + 1):
        for combo in itertools.combinations(idx, size):
            r = radon_number(system, bits_to_mask(combo))
            if r > per_size[size]:
                per_size[size] = r
    return GradedProfile(kind, tuple(itertools.accumulate(per_size[1:], max)))


# ---------------------------------------------------------------- quotient


def quotient(system: SetSystem) -> tuple[SetSystem, tuple[int, ...]]:
    """Merge ground elements that belong to exactly the same members.

    Classes are numbered in order of first occurrence.
    """
    cols = system.columns
    index: dict[int, int] = {}
    cmap = []
    for c in cols:
        if c not in index:
            index[c] = len(index)
        cmap.append(index[c])
    sets = []
    for s in system.sets:
        q = 0
        for x in iter_bits(s):
            q |= 1 << cmap[x]
        sets.append(q)
    return SetSystem(len(index), tuple(sets), system.names), tuple(cmap)


# ---------------------------------------------------------------- intersection statistics


def intersecting_tuple_count(system: SetSystem, s: int, active: int | None = None) -> int:
    idx = list(iter_bits(system._active(active)))
    sets = system.sets

    def count(inter, start, left):
        if inter == 0:
            return 0
        if left == 0:
            return 1
        return sum(count(inter & sets[idx[j]], j + 1, left - 1)
                   for j in range(start, len(idx) - left + 1))

    return count(system.full, 0, s)


def intersecting_tuple_fraction(system: SetSystem, s: int, budget: int = 100_000,
                                seed: int = 0) -> Fraction | float:
    """Fraction of s-member subfamilies with a common point.

    Exact (a Fraction) when C(n, s) <= budget; otherwise the mean over
    ``budget`` uniform samples drawn with ``random.Random(seed)`` (a float).
    """
    n = len(system)
    if not 0 <= s <= n:
        raise InputError(f"tuple size {s} must lie in 0..{n}")
    total = math.comb(n, s)
    if total <= budget:
        return Fraction(intersecting_tuple_count(system, s), total)
    rng = random.Random(seed)
    sets, full = system.sets, system.full
    hits = 0
    for _ in range(budget):
        inter = full
        for i in rng.sample(range(n), s):
            inter &= sets[i]
        hits += inter != 0
    return hits / budget


def max_depth_fraction(system: SetSystem) -> tuple[int, Fraction]:
    """Ground element lying in the most members (lowest index on ties), and depth / n."""
    if len(system) == 0 or system.ground_size == 0:
        raise InputError("depth is undefined for an empty family or ground set")
    depth = [0] * system.ground_size
    for s in system.sets:
        for x in iter_bits(s):
            depth[x] += 1
    best = max(range(system.ground_size), key=lambda x: (depth[x], -x))
    return best, Fraction(depth[best], len(system))


def max_kwise_clique(system: SetSystem, k: int, exact_limit: int = 20) -> tuple[int, bool]:
    """Largest subfamily in which every at most k members share a point.

    Returns ``(mask, exact)``.  Exact branch and bound when the family has at
    most ``exact_limit`` members; a greedy lower bound otherwise.
    """
    if k < 2:
        raise InputError("k must be at least 2")
    n = len(system)
    sets, full = system.sets, system.full

    def extend(state, v):
        """Subset intersections after adding v, or None if some k-subset misses."""
        s = sets[v]
        added = []
        for size, inter in state:
            new = inter & s
            if new == 0:
                return None
            if size + 1 < k:
                added.append((size + 1, new))
        return state + added

    root = [(0, full)]
    if n > exact_limit:
        degree = [sum(1 for u in range(n) if sets[u] & sets[v]) for v in range(n)]
        order = sorted(range(n), key=lambda v: (-degree[v], v))
        state, mask = root, 0
        for v in order:
            nxt = extend(state, v)
            if nxt is not None:
                state, mask = nxt, mask | (1 << v)
        return mask, False

    best = [0]

    def bb(state, mask, cand):
        if mask.bit_count() > best[0].bit_count():
            best[0] = mask
        for pos, v in enumerate(cand):
            if mask.bit_count() + len(cand) - pos <= best[0].bit_count():
                return
            nxt = extend(state, v)
            if nxt is None:
                continue
            rest = [u for u in cand[pos + 1:] if extend(nxt, u) is not None]
            bb(nxt, mask | (1 << v), rest)

    bb(root, 0, [v for v in range(n) if extend(root, v) is not None])
    return best[0], True
