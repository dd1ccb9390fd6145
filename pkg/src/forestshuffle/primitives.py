"""Primitive trees for the dual coproduct: characterization, brute-force
enumeration over unlabeled shapes, and the recursive count.

A tree is primitive exactly when every internal vertex has fertility at
least two; the property depends only on the shape.  The recursive count
builds a tree from a multiset of smaller primitive subtrees hung below the
root, one combination-with-repetition factor per distinct subtree size.
"""

from __future__ import annotations

from math import comb

from .forest import Decoration, Forest, GuardExceeded, RootedTree, UNIT

__all__ = [
    "SHAPE_GUARD",
    "is_primitive",
    "enumerate_shapes",
    "count_shapes",
    "integer_partitions",
    "primitive_count_recursive",
    "primitive_count_brute",
    "shape_of",
    "decorate_distinct",
]

SHAPE_GUARD = 12


def is_primitive(tree: RootedTree) -> bool:
    """True iff every non-leaf vertex has fertility >= 2."""
    stack = [tree]
    while stack:
        node = stack.pop()
        if len(node.children) == 1:
            return False
        stack.extend(node.children)
    return True


def integer_partitions(n: int, k: int) -> list[tuple[int, ...]]:
    """All weakly decreasing k-tuples of positive integers summing to n."""
    if not 1 <= k <= n:
        raise ValueError(f"need 1 <= k <= n, got n={n}, k={k}")

    def go(remaining: int, parts: int, cap: int) -> list[tuple[int, ...]]:
        if parts == 0:
            return [()] if remaining == 0 else []
        out = []
        top = min(cap, remaining - (parts - 1))
        for first in range(top, 0, -1):
            for rest in go(remaining - first, parts - 1, first):
                out.append((first,) + rest)
        return out

    return go(n, k, n)


_shape_cache: dict[int, tuple[RootedTree, ...]] = {}


def enumerate_shapes(n: int, guard: int = SHAPE_GUARD) -> tuple[RootedTree, ...]:
    """All unlabeled rooted trees with n vertices, each exactly once,
    in canonical-key order."""
    if n < 1:
        raise ValueError("shapes have at least one vertex")
    if n > guard:
        raise GuardExceeded(f"shape enumeration is guarded to {guard} vertices, got {n}")
    hit = _shape_cache.get(n)
    if hit is None:
        if n == 1:
            hit = (RootedTree(UNIT),)
        else:
            out: list[RootedTree] = []
            for k in range(1, n):
                for partition in integer_partitions(n - 1, k):
                    for children in _children_choices(partition):
                        out.append(RootedTree(UNIT, children))
            hit = tuple(sorted(set(out), key=lambda t: t.key))
        _shape_cache[n] = hit
    return hit


def _children_choices(partition: tuple[int, ...]) -> list[tuple[RootedTree, ...]]:
    """All multisets of shapes realizing a given partition of subtree sizes."""
    from itertools import combinations_with_replacement, product

    groups: list[list[tuple[RootedTree, ...]]] = []
    for size in sorted(set(partition)):
        count = partition.count(size)
        pool = enumerate_shapes(size)
        groups.append([tuple(c) for c in combinations_with_replacement(pool, count)])
    return [tuple(t for grp in pick for t in grp) for pick in product(*groups)]


def count_shapes(n: int) -> int:
    """Independent count of unlabeled rooted trees with n vertices, by the
    multiset-of-children recursion (no enumeration)."""
    if n < 1:
        return 0
    counts: dict[int, int] = {1: 1}

    def at(m: int) -> int:
        if m not in counts:
            total = 0
            for k in range(1, m):
                for partition in integer_partitions(m - 1, k):
                    factor = 1
                    for size in set(partition):
                        factor *= comb(at(size) + partition.count(size) - 1, partition.count(size))
                    total += factor
            counts[m] = total
        return counts[m]

    return at(n)


def primitive_count_recursive(n: int) -> int:
    """The number of primitive trees with n vertices, by the recursion

        p(n+1) = sum_{k=2..n} sum_{partitions n1>=..>=nk of n}
                 prod_{distinct ni} C(p(ni) + multiplicity - 1, multiplicity)

    with p(0)=0, p(1)=1, p(2)=0.  Exact big-integer arithmetic throughout.
    """
    if n < 0:
        raise ValueError("n must be nonnegative")
    p: dict[int, int] = {0: 0, 1: 1, 2: 0}

    def at(m: int) -> int:
        if m not in p:
            total = 0
            prev = m - 1
            for k in range(2, prev + 1):
                for partition in integer_partitions(prev, k):
                    factor = 1
                    for size in set(partition):
                        mult = partition.count(size)
                        factor *= comb(at(size) + mult - 1, mult)
                    total += factor
            p[m] = total
        return p[m]

    return at(n)


def primitive_count_brute(n: int, guard: int = SHAPE_GUARD) -> int:
    """Count primitive shapes by filtering the full enumeration.

    For n <= 7, every shape's structural verdict is additionally
    cross-checked against triviality of the reduced dual coproduct on the
    shape decorated with pairwise-distinct atoms.
    """
    if n < 1:
        raise ValueError("n must be positive")
    if n > guard:
        raise GuardExceeded(f"brute primitive count is guarded to {guard} vertices, got {n}")
    count = 0
    for shape in enumerate_shapes(n, guard):
        verdict = is_primitive(shape)
        if n <= 7:
            from .dual import reduced_dual

            coalgebraic = reduced_dual(decorate_distinct(shape).as_forest()).is_zero
            if coalgebraic != verdict:
                raise AssertionError(
                    f"structural and coalgebraic primitivity disagree on {shape.key!r}"
                )
        if verdict:
            count += 1
    return count


def shape_of(tree: RootedTree) -> RootedTree:
    """Forget decorations."""
    return RootedTree(UNIT, [shape_of(c) for c in tree.children])


def decorate_distinct(shape: RootedTree, prefix: str = "v") -> RootedTree:
    """Decorate a shape with pairwise-distinct atoms (canonical preorder)."""
    counter = [0]

    def walk(node: RootedTree) -> RootedTree:
        dec = Decoration((f"{prefix}{counter[0]}",))
        counter[0] += 1
        return RootedTree(dec, [walk(c) for c in node.children])

    return walk(shape)
