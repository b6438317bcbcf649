import itertools
from fractions import Fraction
from math import comb

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import set_systems
from convexlab.errors import InputError, SizeGuardError
from convexlab.generators import gen_binary_words, gen_helly_sequence, word_index
from convexlab.setcore import (
    Coloring,
    Partition2,
    SetSystem,
    Verdict,
    bits_to_mask,
    colorful_check,
    colorful_helly_number,
    find_radon_partition,
    graded,
    helly_number,
    hull,
    intersecting_tuple_fraction,
    is_radon_partition,
    iter_bits,
    max_depth_fraction,
    max_kwise_clique,
    max_nonpartitionable,
    quotient,
    radon_number,
    two_partitions,
)
from oracles import as_sets, naive_helly, naive_hull, naive_radon


def lists(mask):
    return sorted(iter_bits(mask))


# A∩B = C∩D = ∅, every cross pair meets
FOUR = SetSystem.from_lists(4, [[0, 1], [2, 3], [0, 2], [1, 3]])


def test_hull_intersects_containing_members():
    s = SetSystem.from_lists(3, [[0, 1], [1, 2]])
    assert lists(hull(s, None, [0])) == [0, 1]
    assert lists(hull(s, None, [1])) == [1]


def test_hull_of_uncontained_points_is_ground():
    s = SetSystem.from_lists(4, [[0], [1, 2]])
    assert hull(s, None, [0, 3]) == s.full
    assert hull(s, 0, [0]) == s.full


def test_hull_binary_words():
    s, _ = gen_binary_words(3)
    h = hull(s, None, [word_index("110"), word_index("101")])
    assert lists(h) == [word_index(w) for w in ("100", "101", "110", "111")]


def test_hull_rejects_bad_index():
    s = SetSystem.from_lists(2, [[0]])
    with pytest.raises(InputError):
        hull(s, None, [2])


def test_two_partitions_canonical_order():
    assert list(two_partitions(3)) == [(0b001, 0b110), (0b101, 0b010), (0b011, 0b100)]
    assert len(list(two_partitions(5))) == 15


def test_radon_partition_examples():
    whole = SetSystem.from_lists(3, [[0, 1, 2]])
    assert is_radon_partition(whole, None, Partition2((0,), (2,)))
    s, pts = gen_binary_words(3)
    p = Partition2((word_index("000"),), (word_index("110"), word_index("101")))
    assert not is_radon_partition(s, None, p)
    assert is_radon_partition(s, None, Partition2((4,), (4,)))


def test_find_radon_partition():
    s, pts = gen_binary_words(3)
    assert find_radon_partition(s, None, pts) is None
    # removing F_1^0 frees exactly the first canonical partition {p1}|{p2,p3}
    p = find_radon_partition(s, s.all_members & ~1, pts)
    assert p == Partition2((pts[0],), (pts[1], pts[2]))
    assert find_radon_partition(s, None, [3, 3]) == Partition2((3,), (3,))
    assert find_radon_partition(s, None, [5, 3, 3]) == Partition2((5, 3), (3,))
    with pytest.raises(InputError):
        find_radon_partition(s, None, [1])


def test_radon_number_examples():
    assert radon_number(SetSystem.from_lists(3, [[0, 1, 2]])) == 2
    assert radon_number(SetSystem.from_lists(2, [[0], [1]])) == 3
    s, _ = gen_binary_words(3)
    assert radon_number(s) == 4


def test_radon_witness_is_nonpartitionable():
    s, _ = gen_binary_words(3)
    w = max_nonpartitionable(s)
    assert len(w) == 3
    assert find_radon_partition(s, None, w) is None


def test_helly_examples():
    chain = SetSystem.from_lists(4, [[0], [0, 1], [0, 1, 2], [0, 1, 2, 3]])
    assert helly_number(chain) == 1
    for k in (3, 4):
        assert helly_number(gen_binary_words(k)[0]) == 2
    assert helly_number(gen_helly_sequence((1, 2, 3))) == 3
    assert helly_number(SetSystem(3, ())) == 1


def test_colorful_check_verdicts():
    common = SetSystem.from_lists(3, [[0, 1], [0, 2], [0]])
    assert colorful_check(common, None, Coloring({0: 0, 1: 1, 2: 0})) is Verdict.CONCLUSION_HOLDS
    assert colorful_check(FOUR, None, Coloring({0: 0, 1: 0, 2: 1, 3: 1})) is Verdict.COUNTEREXAMPLE
    assert colorful_check(FOUR, None, Coloring({0: 0, 1: 1, 2: 0, 3: 1})) is Verdict.HYPOTHESIS_FAILS


def test_coloring_must_be_surjective():
    with pytest.raises(InputError):
        Coloring({0: 0, 1: 2})
    with pytest.raises(InputError):
        colorful_check(FOUR, 0b0111, Coloring({0: 0, 1: 1}))


def test_colorful_helly_examples():
    assert colorful_helly_number(SetSystem.from_lists(2, [[0], [0, 1], [0]])) == 1
    assert colorful_helly_number(FOUR) == 3  # the 2-coloring counterexample rules out m = 2
    assert colorful_helly_number(gen_helly_sequence((1, 2))) == 2  # naive oracle agrees


def test_colorful_guard():
    big = SetSystem(2, tuple([1] * 11))
    with pytest.raises(SizeGuardError):
        colorful_helly_number(big)
    assert colorful_helly_number(big, guard=11) == 1


def test_graded_examples():
    u = (1, 2, 3, 3, 3)
    assert graded(gen_helly_sequence(u), "helly", 5).values == u
    s = SetSystem.from_lists(3, [[0, 1], [2], [1, 2]])
    assert graded(s, "radon", 1).value(1) == 2
    with pytest.raises(InputError):
        graded(s, "radon", 4)
    with pytest.raises(InputError):
        graded(s, "bogus", 2)


def test_quotient_examples():
    s = SetSystem.from_lists(3, [[0, 1], [1, 2]])
    q, cmap = quotient(s)
    assert q.ground_size == 3 and cmap == (0, 1, 2)
    dup = SetSystem.from_lists(3, [[0, 1], [0, 1, 2]])
    q, cmap = quotient(dup)
    assert q.ground_size == 2 and cmap == (0, 0, 1)
    bw, _ = gen_binary_words(3)
    assert quotient(bw)[0].ground_size == 8


def test_intersecting_tuple_fraction():
    common = SetSystem.from_lists(3, [[0], [0, 1], [0, 2]])
    assert intersecting_tuple_fraction(common, 2) == 1
    b = 4
    blocks = SetSystem(2, tuple([1] * b + [2] * b))
    frac = intersecting_tuple_fraction(blocks, 2)
    brute = sum(1 for x, y in itertools.combinations(blocks.sets, 2) if x & y)
    assert frac == Fraction(2 * comb(b, 2), comb(2 * b, 2)) == Fraction(brute, comb(2 * b, 2))
    with_empty = SetSystem.from_lists(2, [[0], [], [0, 1]])
    assert intersecting_tuple_fraction(with_empty, 2) == Fraction(1, 3)


def test_intersecting_tuple_fraction_sampled_is_seeded():
    s = SetSystem(2, tuple([1] * 10 + [2] * 10))
    a = intersecting_tuple_fraction(s, 3, budget=50, seed=3)
    assert isinstance(a, float)
    assert a == intersecting_tuple_fraction(s, 3, budget=50, seed=3)


def test_max_depth_fraction():
    common = SetSystem.from_lists(3, [[1], [1, 2], [0, 1]])
    assert max_depth_fraction(common) == (1, 1)
    blocks = SetSystem(3, tuple([1, 1, 2, 2, 4, 4]))
    assert max_depth_fraction(blocks) == (0, Fraction(1, 3))
    with pytest.raises(InputError):
        max_depth_fraction(SetSystem(3, ()))


def test_max_kwise_clique():
    common = SetSystem.from_lists(3, [[1], [1, 2], [0, 1]])
    assert max_kwise_clique(common, 3) == (0b111, True)
    blocks = SetSystem(2, tuple([1, 1, 2, 2, 2]))
    assert max_kwise_clique(blocks, 2) == (0b11100, True)
    mask, exact = max_kwise_clique(blocks, 2, exact_limit=3)
    assert not exact and mask.bit_count() == 3
    with pytest.raises(InputError):
        max_kwise_clique(blocks, 1)


def test_kwise_clique_matches_brute_force():
    hollow = SetSystem.from_lists(3, [[0, 1], [1, 2], [0, 2], [0]])
    for k in (2, 3):
        best = 0
        for mask in range(16):
            members = [hollow.sets[i] for i in iter_bits(mask)]
            if all(hollow.intersection(bits_to_mask(c)) for r in range(1, k + 1)
                   for c in itertools.combinations(iter_bits(mask), r)):
                best = max(best, len(members))
        assert max_kwise_clique(hollow, k)[0].bit_count() == best


# ---------------------------------------------------------------- properties


@settings(max_examples=60, deadline=None)
@given(set_systems(), st.data())
def test_hull_closure_axioms(s, data):
    pts = data.draw(st.lists(st.integers(0, s.ground_size - 1), min_size=1, max_size=3))
    more = pts + data.draw(st.lists(st.integers(0, s.ground_size - 1), max_size=2))
    h = hull(s, None, pts)
    assert all(h >> p & 1 for p in pts)
    assert h & ~hull(s, None, more) == 0
    assert hull(s, None, list(iter_bits(h))) == h
    assert set(iter_bits(h)) == naive_hull(s.ground_size, as_sets(s), pts)


@settings(max_examples=60, deadline=None)
@given(set_systems(), st.data())
def test_partitionability_superset_monotone(s, data):
    pts = data.draw(st.lists(st.integers(0, s.ground_size - 1), min_size=2, max_size=4))
    extra = data.draw(st.integers(0, s.ground_size - 1))
    if find_radon_partition(s, None, pts) is not None:
        assert find_radon_partition(s, None, pts + [extra]) is not None


@settings(max_examples=60, deadline=None)
@given(set_systems(max_ground=5))
def test_quotient_preserves_radon_and_helly(s):
    q, _ = quotient(s)
    assert radon_number(q) == radon_number(s)
    assert helly_number(q) == helly_number(s)


@settings(max_examples=80, deadline=None)
@given(set_systems(max_ground=5, max_members=5, min_members=1))
def test_graded_radon_bounds(s):
    prof = graded(s, "radon", len(s))
    for t, v in enumerate(prof.values, start=1):
        assert v <= t + 1
        if t >= 2:
            assert v < 2 ** t
    assert list(prof.values) == sorted(prof.values)


@settings(max_examples=80, deadline=None)
@given(set_systems(max_ground=4, max_members=5, min_members=1))
def test_graded_helly_growth_law(s):
    vals = graded(s, "helly", len(s)).values
    for t in range(2, len(vals) + 1):
        assert (vals[t - 1] > vals[t - 2]) == (vals[t - 1] == t)


@settings(max_examples=80, deadline=None)
@given(set_systems(max_ground=4, max_members=5, min_members=1))
def test_graded_levi(s):
    if s.intersection():
        return
    h = graded(s, "helly", len(s)).values
    r = graded(s, "radon", len(s)).values
    assert all(a <= b - 1 for a, b in zip(h, r))


@settings(max_examples=40, deadline=None)
@given(set_systems(max_ground=3, max_members=4))
def test_helly_matches_direct_definition(s):
    assert helly_number(s) == naive_helly(s.ground_size, as_sets(s))
    assert radon_number(s) == naive_radon(s.ground_size, as_sets(s))
