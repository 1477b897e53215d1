import itertools

import pytest
from hypothesis import given, strategies as st

from charexp.errors import InvalidLabelError
from charexp.partitions import (
    GeneralizedLabel,
    Partition,
    boxes,
    enumerate_labels,
    enumerate_partitions,
    format_label,
    from_exponents,
    from_m_vector,
    parse_label,
)

from oracles import all_partitions


def test_partition_invariants():
    assert Partition([3, 2, 0]).N == 3
    with pytest.raises(InvalidLabelError):
        Partition([1, 2])
    with pytest.raises(InvalidLabelError):
        Partition([1, -1])
    with pytest.raises(InvalidLabelError):
        Partition([])


def test_generalized_label_needs_zero_last_row():
    with pytest.raises(InvalidLabelError):
        GeneralizedLabel(Partition([2, 1]), 0)


@pytest.mark.parametrize(
    "m, d, N, shape",
    [((0, 0), 0, 3, (0, 0, 0)), ((1, 2), 0, 3, (3, 2, 0)), ((1, 0), -1, 3, (1, 0, 0))],
)
def test_from_m_vector(m, d, N, shape):
    g = from_m_vector(m, d, N)
    assert g.shape.parts == shape
    assert g.det_power == d


def test_from_m_vector_exponents():
    assert from_m_vector((1, 0), -1, 3).exponents == (0, -1, -1)


def test_from_m_vector_rejects_negative():
    with pytest.raises(InvalidLabelError):
        from_m_vector((1, -1), 0, 3)


def test_from_m_vector_rank_one():
    g = from_m_vector((), 4, 1)
    assert g.shape.parts == (0,) and g.exponents == (4,)


def test_enumerate_small_cases():
    got = [g.shape.parts for g in enumerate_labels(2, 1, (0, 0))]
    assert got == [(0, 0), (1, 0)]
    got = [g.shape.parts for g in enumerate_labels(2, 2, (0, 0))]
    assert got == [(0, 0), (1, 0), (2, 0)]
    got = list(enumerate_labels(1, 0, (-2, 2)))
    assert [g.det_power for g in got] == [-2, -1, 0, 1, 2]


def _key(g):
    return (boxes(g.shape), g.shape.parts, g.det_power)


@pytest.mark.parametrize("N", [1, 2, 3, 4])
@pytest.mark.parametrize("max_boxes", [0, 3, 6])
def test_enumerate_labels_matches_bruteforce(N, max_boxes):
    rng = (-1, 2)
    got = list(enumerate_labels(N, max_boxes, rng))
    expected = set()
    for parts in all_partitions(N, max_boxes):
        if parts[-1] == 0:
            for d in range(rng[0], rng[1] + 1):
                expected.add((parts, d))
    assert len(got) == len(set(got))
    assert {(g.shape.parts, g.det_power) for g in got} == expected
    keys = [_key(g) for g in got]
    assert all(a < b for a, b in zip(keys, keys[1:]))
    assert all(g.shape.parts[-1] == 0 for g in got)


@pytest.mark.parametrize("N", [1, 2, 3, 5])
def test_enumerate_partitions_matches_bruteforce(N):
    got = [p.parts for p in enumerate_partitions(N, 6)]
    assert sorted(got, key=lambda p: (sum(p), p)) == got
    assert set(got) == set(all_partitions(N, 6))
    assert len(got) == len(set(got))


@pytest.mark.parametrize("N", [1, 2, 3, 4])
def test_m_vector_round_trip(N):
    for g in enumerate_labels(N, 7, (-2, 2)):
        assert from_m_vector(g.m_vector, g.det_power, N) == g


@pytest.mark.parametrize("parts, n", [((0, 0, 0), 0), ((3, 2, 0), 5), ((1, 1, 1), 3)])
def test_boxes(parts, n):
    assert boxes(Partition(parts)) == n


def test_label_text():
    g = GeneralizedLabel(Partition([3, 2, 0]), -1)
    assert format_label(g) == "3,2,0@-1"
    assert format_label(GeneralizedLabel(Partition([3, 2, 0]))) == "3,2,0"
    assert parse_label("3,2,0@-1") == g
    assert parse_label("2,1") == GeneralizedLabel(Partition([1, 0]), 1)
    assert parse_label("2,1") == parse_label("1,0@1")
    assert from_exponents((0, -1, -1)) == from_m_vector((1, 0), -1, 3)


@pytest.mark.parametrize("bad", ["", "a,b", "1,2", "1,1@x", "2,1@1", "0,-1"])
def test_parse_label_rejects(bad):
    with pytest.raises(InvalidLabelError):
        parse_label(bad)


@given(
    st.integers(1, 5).flatmap(
        lambda N: st.tuples(st.lists(st.integers(0, 6), min_size=N - 1, max_size=N - 1),
                            st.integers(-5, 5), st.just(N))
    )
)
def test_text_round_trip(args):
    m, d, N = args
    g = from_m_vector(m, d, N)
    assert parse_label(format_label(g)) == g
    assert g.exponents[-1] == d
    assert all(a >= b for a, b in zip(g.exponents, g.exponents[1:]))
