import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from ncdt.products import macmahon, zA_product
from ncdt.pyramid import (
    APEX,
    PyramidPartition,
    Stone,
    enumerate_partitions,
    layer_size,
    layer_stones,
    parents,
    plane_partitions_enumerated,
    zA_enumerated,
)

from oracles import plane_partition_counts, pyramid_ideals, signed_counts


def test_parent_examples():
    assert parents(Stone(1, 0, 0)) == [APEX]
    assert parents(Stone(3, 1, 0)) == [Stone(2, 0, 0), Stone(2, 1, 0)]
    assert parents(Stone(2, 0, 1)) == [Stone(1, 0, 0)]
    assert parents(APEX) == []


def test_parents_reject_invalid():
    with pytest.raises(ValueError):
        parents(Stone(0, 1, 0))
    with pytest.raises(ValueError):
        parents(Stone(1, 0, 1), n=1)


@pytest.mark.parametrize("n", [1, 2, 3])
def test_layer_sizes(n):
    for k in range(6):
        assert layer_size(2 * k, n) == (k + n) * (k + 1) == len(layer_stones(2 * k, n))
        assert layer_size(2 * k + 1, n) == (k + n + 1) * (k + 1)
    if n == 1:
        assert [layer_size(2 * i) for i in range(5)] == [(i + 1) ** 2 for i in range(5)]
        assert [layer_size(2 * i + 1) for i in range(5)] == [(i + 1) * (i + 2) for i in range(5)]


def test_small_enumerations():
    assert [p.stones for p in enumerate_partitions(1, 0)] == [frozenset()]
    two = list(enumerate_partitions(1, 2))
    assert len(two) == 4
    assert {p.stones for p in two} == {
        frozenset(),
        frozenset({APEX}),
        frozenset({APEX, Stone(1, 0, 0)}),
        frozenset({APEX, Stone(1, 1, 0)}),
    }
    assert sum(1 for p in enumerate_partitions(1, 4) if p.weight == (2, 2)) == 8


@pytest.mark.parametrize("n,size", [(1, 7), (2, 6), (3, 5)])
def test_enumeration_matches_brute_force(n, size):
    got = [p.stones for p in enumerate_partitions(n, size)]
    assert len(got) == len(set(got))
    expect = {frozenset(_stone(s) for s in ideal) for ideal in pyramid_ideals(size, n)}
    assert set(got) == expect


def _stone(t):
    return Stone(*t)


def test_enumeration_prefix_monotone():
    small = [p.stones for p in enumerate_partitions(1, 5)]
    big = [p.stones for p in enumerate_partitions(1, 6) if len(p) <= 5]
    assert small == big


def test_partitions_are_up_closed():
    for p in enumerate_partitions(2, 6):
        assert all(q in p.stones for s in p.stones for q in parents(s, 2))


def test_rejects_non_up_closed():
    with pytest.raises(ValueError):
        PyramidPartition(frozenset({Stone(1, 0, 0)}))


def test_weights_and_signs():
    z = zA_enumerated(1, 6)
    assert z[(0, 0)] == 1 and z[(1, 1)] == -2
    assert all(z[(0, m)] == 0 for m in range(1, 7))


@pytest.mark.parametrize("n,N", [(1, 9), (2, 8), (3, 7)])
def test_enumerated_matches_product(n, N):
    assert zA_enumerated(n, N) == zA_product(n, N)


def test_enumerated_matches_brute_force_signs():
    brute = signed_counts(pyramid_ideals(6))
    z = zA_enumerated(1, 6)
    assert dict(z.items()) == brute


def test_n2_black_free_row():
    # black-free partitions of the width-2 pyramid are prefixes of the top row
    z = zA_product(2, 6)
    assert [z[(j, 0)] for j in range(4)] == [1, 2, 1, 0]


def test_plane_partitions():
    counts = plane_partition_counts(8)
    s = plane_partitions_enumerated(8)
    assert [s[(d, 0)] for d in range(9)] == [(-1) ** d * c for d, c in enumerate(counts)]
    assert plane_partitions_enumerated(10) == macmahon(True, 10)


def test_text_round_trip():
    for p in enumerate_partitions(1, 5):
        assert PyramidPartition.from_lines(p.to_lines()) == p


def test_text_parsing_errors():
    with pytest.raises(ValueError):
        PyramidPartition.from_lines("0 0\n")
    with pytest.raises(ValueError):
        PyramidPartition.from_lines("0 0 0\n0 0 0\n")
    assert PyramidPartition.from_lines("# just a comment\n\n0 0 0  # apex\n").stones == {APEX}


@settings(max_examples=30, deadline=None)
@given(st.data())
def test_removable_stones_leave_partitions(data):
    parts = list(enumerate_partitions(1, 6))
    p = data.draw(st.sampled_from(parts))
    for s in p.removable():
        PyramidPartition(p.stones - {s})
