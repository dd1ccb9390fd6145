from __future__ import annotations

import random

import pytest

from forestshuffle import (
    decorate_distinct,
    enumerate_shapes,
    integer_partitions,
    is_primitive,
    parse_forest,
    primitive_count_brute,
    primitive_count_recursive,
    reduced_dual,
)
from forestshuffle.forest import GuardExceeded, RootedTree
from forestshuffle.primitives import count_shapes, shape_of
from forestshuffle.sampling import default_alphabet

P = parse_forest

# the published sequence of primitive-tree counts for 0..23 vertices
PT_TABLE = [
    0, 1, 0, 1, 1, 2, 3, 6, 10, 19, 35, 67, 127,
    248, 482, 952, 1885, 3765, 7546, 15221, 30802, 62620, 127702, 261335,
]


class TestIsPrimitive:
    def test_single_vertex(self):
        assert is_primitive(P("a").single_tree())

    def test_chain_is_not(self):
        assert not is_primitive(P("a[b]").single_tree())

    def test_cherry_is(self):
        assert is_primitive(P("a[b,c]").single_tree())

    def test_depends_only_on_shape(self):
        rng = random.Random(1)
        alphabet = default_alphabet(("a", "b", "c"))

        def redecorate(node: RootedTree) -> RootedTree:
            return RootedTree(rng.choice(alphabet), [redecorate(c) for c in node.children])

        for n in range(1, 8):
            for shape in enumerate_shapes(n):
                assert is_primitive(redecorate(shape)) == is_primitive(shape)
                assert shape_of(decorate_distinct(shape)) == shape


class TestEnumerateShapes:
    def test_counts(self):
        assert [len(enumerate_shapes(n)) for n in range(1, 10)] == [
            1, 1, 2, 4, 9, 20, 48, 115, 286,
        ]

    def test_counts_match_counting_recursion(self):
        for n in range(1, 10):
            assert len(enumerate_shapes(n)) == count_shapes(n)

    def test_unique_and_undecorated(self):
        shapes = enumerate_shapes(6)
        assert len({s.key for s in shapes}) == len(shapes)
        assert all(s.decoration.is_unit for s in shapes)

    def test_guard(self):
        with pytest.raises(GuardExceeded):
            enumerate_shapes(13)


class TestIntegerPartitions:
    def test_examples(self):
        assert integer_partitions(3, 2) == [(2, 1)]
        assert integer_partitions(4, 2) == [(3, 1), (2, 2)]
        assert integer_partitions(5, 3) == [(3, 1, 1), (2, 2, 1)]

    def test_bounds(self):
        with pytest.raises(ValueError):
            integer_partitions(3, 0)
        with pytest.raises(ValueError):
            integer_partitions(3, 4)

    def test_complete_and_duplicate_free(self):
        for n in range(1, 9):
            all_parts = [p for k in range(1, n + 1) for p in integer_partitions(n, k)]
            assert len(set(all_parts)) == len(all_parts)
            for p in all_parts:
                assert sum(p) == n
                assert list(p) == sorted(p, reverse=True)


class TestCounts:
    def test_recursive_table(self):
        assert [primitive_count_recursive(n) for n in range(24)] == PT_TABLE

    def test_brute_matches_recursive(self):
        for n in range(1, 10):
            assert primitive_count_brute(n) == primitive_count_recursive(n)

    def test_brute_cross_checks_coalgebra(self):
        # the n<=7 brute path re-derives each verdict from the reduced dual
        for n in range(1, 8):
            for shape in enumerate_shapes(n):
                t = decorate_distinct(shape)
                assert reduced_dual(t.as_forest()).is_zero == is_primitive(shape)

    def test_guard(self):
        with pytest.raises(GuardExceeded):
            primitive_count_brute(13)
