import pytest

from cpuniq.errors import DegenerateSpace, InvalidInput
from cpuniq.fintop import (
    FinTopSpace,
    all_topologies,
    discrete_space,
    indiscrete_space,
    interior,
    make_space,
    min_open,
    to_mask,
    to_points,
)


def opens_as_sets(space):
    return sorted(tuple(to_points(o)) for o in space.opens)


def test_make_space_sierpinski(sierpinski_space):
    assert opens_as_sets(sierpinski_space) == [(), (0,), (0, 1)]


def test_make_space_two_singletons_is_discrete():
    s = make_space(2, [[0], [1]])
    assert len(s.opens) == 4
    assert s.is_discrete


def test_make_space_closes_under_union_and_intersection():
    s = make_space(3, [[0, 1], [1, 2]])
    assert opens_as_sets(s) == [(), (0, 1), (0, 1, 2), (1,), (1, 2)]


def test_interior():
    assert interior(discrete_space(2), to_mask([1])) == to_mask([1])
    assert interior(make_space(2, [[0]]), to_mask([1])) == 0
    s = make_space(3, [[0, 1], [1, 2]])
    assert interior(s, to_mask([0, 1])) == to_mask([0, 1])


def test_min_open(sierpinski_space):
    assert min_open(discrete_space(2), 1) == to_mask([1])
    assert min_open(sierpinski_space, 1) == to_mask([0, 1])
    assert min_open(sierpinski_space, 0) == to_mask([0])


def test_indiscrete():
    s = indiscrete_space(3)
    assert sorted(s.opens) == [0, 0b111]


@pytest.mark.parametrize("n,count", [(1, 1), (2, 4), (3, 29), (4, 355)])
def test_topology_counts(n, count):
    # labelled preorders on n points
    assert len(all_topologies(n)) == count


def test_rejects_empty_space():
    with pytest.raises(DegenerateSpace):
        FinTopSpace(0, (0,))


def test_rejects_family_not_closed_under_union():
    with pytest.raises(InvalidInput):
        FinTopSpace(3, (0, 0b001, 0b010, 0b111))


def test_rejects_missing_whole_space():
    with pytest.raises(InvalidInput):
        FinTopSpace(2, (0, 0b01))
