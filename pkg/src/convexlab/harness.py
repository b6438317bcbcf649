"""Verification harness: corpus checks, the Psi gate function, the fractional-Helly probe."""

from __future__ import annotations

import hashlib
import itertools
import logging
import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Iterator, Sequence

from .errors import InputError, SizeGuardError, TableRangeError
from .generators import gen_binary_words, gen_helly_sequence
from .homology import CubicalSetSystem, shatter_function
from .setcore import (
    COLORFUL_GUARD,
    Partition2,
    SetSystem,
    bits_to_mask,
    find_radon_partition,
    graded,
    intersecting_tuple_fraction,
    iter_bits,
    max_depth_fraction,
    max_kwise_clique,
    max_nonpartitionable,
)

log = logging.getLogger(__name__)


# ---------------------------------------------------------------- corpora


@dataclass(frozen=True)
class CorpusSpec:
    """``exhaustive:G,M`` | ``random:N:SEED`` | ``binary-words:K1,K2,...``"""

    kind: str
    ground: int = 3
    members: int = 3
    count: int = 0
    seed: int = 0
    ks: tuple[int, ...] = ()
    max_ground: int = 10
    max_members: int = 6

    @classmethod
    def parse(cls, text: str) -> "CorpusSpec":
        kind, _, rest = text.partition(":")
        try:
            if kind == "exhaustive":
                g, m = (int(x) for x in rest.split(","))
                return cls("exhaustive", ground=g, members=m)
            if kind == "random":
                n, seed = (int(x) for x in rest.split(":"))
                return cls("random", count=n, seed=seed)
            if kind == "binary-words":
                return cls("binary-words", ks=tuple(int(x) for x in rest.split(",")))
        except ValueError as exc:
            raise InputError(f"malformed corpus spec {text!r}: {exc}") from None
        raise InputError(f"unknown corpus kind in {text!r}")

    def __str__(self):
        if self.kind == "exhaustive":
            return f"exhaustive:{self.ground},{self.members}"
        if self.kind == "random":
            return f"random:{self.count}:{self.seed}"
        return "binary-words:" + ",".join(map(str, self.ks))


def exhaustive_corpus(max_ground: int, max_members: int) -> Iterator[SetSystem]:
    """Every family of at most ``max_members`` distinct subsets of a ground set of size 1..max_ground."""
    for g in range(1, max_ground + 1):
        for size in range(max_members + 1):
            for combo in itertools.combinations(range(1 << g), size):
                yield SetSystem(g, combo)


def random_corpus(count: int, seed: int, max_ground: int = 10, max_members: int = 6) -> Iterator[SetSystem]:
    rng = random.Random(seed)
    for _ in range(count):
        g = rng.randint(1, max_ground)
        m = rng.randint(1, max_members)
        yield SetSystem(g, tuple(rng.getrandbits(g) for _ in range(m)))


def iter_corpus(spec: CorpusSpec | str) -> Iterator[SetSystem]:
    if isinstance(spec, str):
        spec = CorpusSpec.parse(spec)
    if spec.kind == "exhaustive":
        return exhaustive_corpus(spec.ground, spec.members)
    if spec.kind == "random":
        return random_corpus(spec.count, spec.seed, spec.max_ground, spec.max_members)
    raise InputError(f"corpus kind {spec.kind!r} does not enumerate set systems")


# ---------------------------------------------------------------- results


@dataclass
class Counterexample:
    system: SetSystem
    t: int
    value: int
    bound: int
    witness: tuple[int, ...] = ()
    note: str = ""


@dataclass
class VerifyResult:
    name: str
    passed: bool
    checked: int = 0
    skipped: int = 0
    counterexample: Counterexample | None = None
    notes: list[str] = field(default_factory=list)

    def lines(self) -> list[str]:
        out = [f"check={self.name}", f"passed={str(self.passed).lower()}",
               f"checked={self.checked}", f"skipped={self.skipped}"]
        cx = self.counterexample
        if cx is not None:
            out += [f"counterexample.t={cx.t}", f"counterexample.value={cx.value}",
                    f"counterexample.bound={cx.bound}",
                    "counterexample.witness=" + ",".join(map(str, cx.witness))]
            if cx.note:
                out.append(f"counterexample.note={cx.note}")
        return out


def _t_range(system: SetSystem, t_max: int) -> int:
    return max(1, min(t_max, len(system)))


def _radon_witness(system: SetSystem, t: int, bound: int) -> tuple[SetSystem, tuple[int, ...]]:
    """A subfamily of at most t members carrying a non-partitionable set of size >= bound."""
    for size in range(t + 1):
        for combo in itertools.combinations(range(len(system)), size):
            pts = max_nonpartitionable(system, bits_to_mask(combo))
            if max(2, len(pts) + 1) > bound:
                return system.subfamily(bits_to_mask(combo)), pts
    raise AssertionError("no witness found for a reported violation")


def verify_radon_bound(corpus: Iterable[SetSystem], t_max: int = 6, slack: int = 1) -> VerifyResult:
    """Check rad^(t) <= t + slack for t <= t_max on every corpus member."""
    res = VerifyResult("radon-bound", True)
    for system in corpus:
        T = _t_range(system, t_max)
        prof = graded(system, "radon", T)
        res.checked += 1
        for t, v in enumerate(prof.values, start=1):
            if v > t + slack:
                sub, pts = _radon_witness(system, t, t + slack)
                res.passed = False
                res.counterexample = Counterexample(sub, t, v, t + slack, pts,
                                                    "witness points admit no Radon partition")
                return res
    return res


def verify_levi(corpus: Iterable[SetSystem], t_max: int = 6) -> VerifyResult:
    """Check h^(t) <= rad^(t) - 1 on corpus members whose members have no common point."""
    res = VerifyResult("levi", True)
    for system in corpus:
        if system.intersection() != 0:
            res.skipped += 1
            log.debug("levi: skipping system with nonempty global intersection")
            continue
        T = _t_range(system, t_max)
        hp = graded(system, "helly", T)
        rp = graded(system, "radon", T)
        res.checked += 1
        for t in range(1, T + 1):
            if hp.value(t) > rp.value(t) - 1:
                res.passed = False
                res.counterexample = Counterexample(system, t, hp.value(t), rp.value(t) - 1,
                                                    note="graded helly exceeds graded radon minus one")
                return res
    if res.skipped:
        res.notes.append(f"skipped {res.skipped} systems with a common point")
    return res


def helly_growth_violation(values: Sequence[int]) -> int | None:
    """First t breaking 'value(t) > value(t-1) iff value(t) = t' or stationarity; None if lawful."""
    T = len(values)
    for t in range(2, T + 1):
        v, prev = values[t - 1], values[t - 2]
        if (v > prev) != (v == t):
            return t
    for t0 in range(1, T + 1):
        if all(values[t - 1] < t for t in range(t0 + 1, T + 1)):
            for t in range(t0 + 1, T + 1):
                if values[t - 1] != values[t0 - 1]:
                    return t
    return None


def verify_helly_growth(corpus: Iterable[SetSystem] = (), t_max: int = 7,
                        profiles: Iterable[Sequence[int]] = (),
                        sequences: Iterable[Sequence[int]] = ()) -> VerifyResult:
    """Growth law on graded Helly profiles of corpus systems, raw profiles, and sequence families.

    For each sequence u, the generated family must also reproduce u exactly.
    """
    res = VerifyResult("helly-growth", True)

    def fail(system, t, value, bound, note):
        res.passed = False
        res.counterexample = Counterexample(system, t, value, bound, note=note)
        return res

    for vals in profiles:
        res.checked += 1
        t = helly_growth_violation(vals)
        if t is not None:
            return fail(SetSystem(0, ()), t, vals[t - 1], t, "profile " + ",".join(map(str, vals)))
    for u in sequences:
        system = gen_helly_sequence(u)
        prof = graded(system, "helly", min(len(u), len(system)))
        res.checked += 1
        if list(prof.values) != list(u)[: prof.t_max]:
            t = next(t for t in range(1, prof.t_max + 1) if prof.value(t) != u[t - 1])
            return fail(system, t, prof.value(t), u[t - 1], "profile differs from its sequence")
        t = helly_growth_violation(prof.values)
        if t is not None:
            return fail(system, t, prof.value(t), t, "growth law broken")
    for system in corpus:
        prof = graded(system, "helly", _t_range(system, t_max))
        res.checked += 1
        t = helly_growth_violation(prof.values)
        if t is not None:
            return fail(system, t, prof.value(t), t, "growth law broken")
    return res


def valid_helly_sequences(length: int) -> Iterator[tuple[int, ...]]:
    """All sequences accepted by the graded-Helly characterisation, in lexicographic order."""
    def rec(seq):
        t = len(seq) + 1
        if t > length:
            yield tuple(seq)
            return
        prev = seq[-1]
        yield from rec(seq + [prev])
        if t > prev:
            yield from rec(seq + [t])
    yield from rec([1])


# ---------------------------------------------------------------- minimal non-partitionability


@dataclass(frozen=True)
class MinimalityVerdict:
    kind: str  # "minimal" | "not-nonpartitionable" | "not-minimal"
    witness: Partition2 | None = None
    member: int | None = None
    redundant: tuple[int, ...] = ()


def verify_minimal_nonpartitionable(system: SetSystem, s: Sequence[int],
                                    active: int | None = None) -> MinimalityVerdict:
    active = system._active(active)
    p = find_radon_partition(system, active, s)
    if p is not None:
        return MinimalityVerdict("not-nonpartitionable", witness=p)
    redundant = tuple(i for i in iter_bits(active)
                      if find_radon_partition(system, active & ~(1 << i), s) is None)
    if redundant:
        return MinimalityVerdict("not-minimal", member=redundant[0], redundant=redundant)
    return MinimalityVerdict("minimal")


def verify_binary_words(ks: Iterable[int]) -> VerifyResult:
    res = VerifyResult("minimal-np", True)
    for k in ks:
        system, pts = gen_binary_words(k)
        v = verify_minimal_nonpartitionable(system, pts)
        res.checked += 1
        res.notes.append(f"k={k} members={len(system)} points={len(pts)} verdict={v.kind}")
        if v.kind != "minimal":
            res.passed = False
            res.counterexample = Counterexample(system, k, len(pts), len(pts), tuple(pts), v.kind)
            return res
    return res


# ---------------------------------------------------------------- Psi gate function


@dataclass(frozen=True)
class PsiTables:
    """Plug-in tables ``b -> r(b, d)`` and ``x -> m(x)``; never extrapolated."""

    d: int
    r_table: dict
    m_table: dict

    def __post_init__(self):
        for name, table in (("r", self.r_table), ("m", self.m_table)):
            prev = None
            for key in sorted(table):
                v = table[key]
                if v <= 0:
                    raise InputError(f"{name}-table entry {key} -> {v} is not positive")
                if prev is not None and v < prev:
                    raise InputError(f"{name}-table decreases at {key}")
                prev = v

    def r(self, b: int) -> int:
        try:
            return self.r_table[b]
        except KeyError:
            raise TableRangeError(f"r-table has no entry for b={b} (d={self.d})") from None

    def m(self, x: int) -> int:
        try:
            return self.m_table[x]
        except KeyError:
            raise TableRangeError(f"m-table has no entry for x={x}") from None


def s_inverse(tables: PsiTables, t: int) -> int:
    """max{b' >= 0 : t >= r(b'+1, d)}."""
    best = None
    bp = 0
    while tables.r(bp + 1) <= t:
        best = bp
        bp += 1
    if best is None:
        raise InputError(f"no b' satisfies r(b'+1) <= {t}")
    return best


def psi_eval(tables: PsiTables, b: int, t: int) -> int:
    """Gate function: b-1 up to r(b), b up to m(r(b)) r(b), then the inverse S(t).

    At t = r(b) both of the first two cases apply; the smaller value b-1 is used.
    """
    if b < 1:
        raise InputError("b must be at least 1 so that the gate value b-1 is a natural number")
    R = tables.r(b)
    if t <= R:
        return b - 1
    if t <= tables.m(R) * R:
        return b
    return s_inverse(tables, t)


@dataclass
class PhiPsiReport:
    passed: bool
    first_violation: int | None
    phi: list[int]
    psi: list[int]

    def lines(self) -> list[str]:
        return [f"passed={str(self.passed).lower()}",
                f"first_violation={'' if self.first_violation is None else self.first_violation}",
                "phi=" + ",".join(map(str, self.phi)), "psi=" + ",".join(map(str, self.psi))]


def check_phi_below_psi(system: CubicalSetSystem, h: int, tables: PsiTables, b: int,
                        t_max: int) -> PhiPsiReport:
    """phi^(h)(t) <= Psi_{d,b}(t) for t = 1..t_max."""
    if t_max <= 0:
        return PhiPsiReport(True, None, [], [])
    phi = shatter_function(system, h, t_max)[1:]
    psi = [psi_eval(tables, b, t) for t in range(1, t_max + 1)]
    first = next((t for t in range(1, t_max + 1) if phi[t - 1] > psi[t - 1]), None)
    return PhiPsiReport(first is None, first, phi, psi)


# ---------------------------------------------------------------- fractional Helly probe


@dataclass(frozen=True)
class ProbeReport:
    n: int
    s: int
    k: int
    alpha: Fraction | float
    alpha_exact: bool
    beta_emp: Fraction
    deepest: int
    clique_fraction: Fraction
    clique_exact: bool

    def lines(self) -> list[str]:
        return [f"n={self.n}", f"s={self.s}", f"k={self.k}",
                f"alpha={self.alpha}", f"alpha_exact={str(self.alpha_exact).lower()}",
                f"beta_emp={self.beta_emp}", f"deepest={self.deepest}",
                f"clique_fraction={self.clique_fraction}",
                f"clique_exact={str(self.clique_exact).lower()}"]

    def fingerprint(self) -> str:
        return hashlib.sha256("\n".join(self.lines()).encode()).hexdigest()[:16]


def probe_fractional_helly(system: SetSystem, s: int, k: int, budget: int = 100_000,
                           seed: int = 0, exact_limit: int = 20) -> ProbeReport:
    """Empirical (alpha, beta) pair plus the largest k-wise clique found."""
    n = len(system)
    if not 0 <= s <= n:
        raise InputError(f"tuple size {s} must lie in 0..{n}")
    alpha = intersecting_tuple_fraction(system, s, budget=budget, seed=seed)
    deepest, beta = max_depth_fraction(system)
    mask, exact = max_kwise_clique(system, k, exact_limit=exact_limit)
    return ProbeReport(n, s, k, alpha, isinstance(alpha, Fraction), beta, deepest,
                       Fraction(mask.bit_count(), n), exact)


def blocks_family(m: int, n: int) -> SetSystem:
    """n members split into m equal blocks; block j is n/m copies of the singleton {j}."""
    if m < 1 or n % m:
        raise InputError("n must be a positive multiple of m")
    return SetSystem(m, tuple(1 << (i // (n // m)) for i in range(n)))


@dataclass(frozen=True)
class CliqueHypotheses:
    k: int
    m: int
    colorful: int  # ch^(mk)
    helly: int  # h^(m)
    holds: bool

    def lines(self) -> list[str]:
        return [f"k={self.k}", f"m={self.m}", f"colorful_graded={self.colorful}",
                f"helly_graded={self.helly}", f"holds={str(self.holds).lower()}"]


def check_colorful_clique_hypotheses(system: SetSystem, k: int, m: int,
                                     guard: int = COLORFUL_GUARD) -> CliqueHypotheses:
    """Whether ch^(mk) <= m and h^(m) <= k, both computed by enumeration."""
    if not m >= k > 1:
        raise InputError("need m >= k > 1")
    n = len(system)
    t_colorful = max(1, min(m * k, n))
    if t_colorful > guard:
        raise SizeGuardError(f"colorful enumeration at t={t_colorful} exceeds guard {guard}")
    ch = graded(system, "colorful-helly", t_colorful, guard=guard).value(t_colorful)
    t_helly = max(1, min(m, n))
    h = graded(system, "helly", t_helly).value(t_helly)
    return CliqueHypotheses(k, m, ch, h, ch <= m and h <= k)


def binary_word_radon_profile(k: int, t_max: int) -> list[int]:
    """Graded Radon values of the binary-word family of parameter k (small truncations only)."""
    system, _ = gen_binary_words(k)
    return list(graded(system, "radon", min(t_max, len(system))).values)
