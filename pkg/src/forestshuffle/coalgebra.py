"""The trunk coproduct on rooted trees, its counit, and the right antipode.

The coproduct generalizes word deconcatenation: a tree is cut below each
vertex of its trunk (the path from the root to the first vertex with at
least two children), the lower part going to the left tensor leg.  For a
linear tree there is one more cut above the unique leaf, so on linear trees
the coproduct agrees with deconcatenation of the corresponding word.

It is defined on trees and the empty forest only; a non-connected nonempty
argument is rejected rather than silently extended.
"""

from __future__ import annotations

from fractions import Fraction

from .forest import EMPTY, Forest, RootedTree, b_plus
from .linalg import LinComb, TensorComb
from .words import is_linear

__all__ = [
    "trunk_coproduct",
    "trunk_coproduct_lin",
    "counit",
    "right_antipode",
    "antipode_leg",
    "antipode_square_residual",
]

_delta_cache: dict[str, TensorComb[Forest]] = {}


def trunk_coproduct(arg: Forest | RootedTree) -> TensorComb[Forest]:
    """The coproduct: Δ(∅) = ∅⊗∅ and, for T = B+^a(F),

        Δ(T) = (B+^a ⊗ Id) Δ(t) + ∅⊗T   if F = t is ∅ or a single tree,
        Δ(T) = ∅⊗T                      if F is non-connected.

    Raises ValueError on non-connected nonempty input.
    """
    forest = arg.as_forest() if isinstance(arg, RootedTree) else arg
    if not forest.is_connected:
        raise ValueError(f"the trunk coproduct is defined on trees only, got {forest.key!r}")
    hit = _delta_cache.get(forest.key)
    if hit is not None:
        return hit

    if forest.is_empty:
        result = TensorComb.of((EMPTY, EMPTY))
    else:
        tree = forest.single_tree()
        body = Forest(tree.children)
        result = TensorComb.of((EMPTY, forest))
        if body.is_connected:
            inner = trunk_coproduct(body)
            result = result + inner.map_leg(
                0, lambda f: LinComb.of(b_plus(tree.decoration, f).as_forest())
            )

    _delta_cache[forest.key] = result
    return result


def trunk_coproduct_lin(x: LinComb[Forest]) -> TensorComb[Forest]:
    """Linear extension of the trunk coproduct."""
    acc = TensorComb.zero(2)
    for f, c in x.items():
        acc = acc + trunk_coproduct(f).scale(c)
    return acc


def counit(x: LinComb[Forest] | Forest) -> Fraction:
    """The coefficient of the empty forest."""
    if isinstance(x, Forest):
        return Fraction(1 if x.is_empty else 0)
    return x.coefficient(EMPTY)


def _reverse_linear(tree: RootedTree) -> RootedTree:
    decorations = []
    node: RootedTree | None = tree
    while node is not None:
        decorations.append(node.decoration)
        node = node.children[0] if node.children else None
    out: RootedTree | None = None
    for dec in decorations:  # original root ends up at the leaf
        out = RootedTree(dec, () if out is None else (out,))
    assert out is not None
    return out


def right_antipode(tree: RootedTree) -> LinComb[Forest]:
    """0 for trees with more than one leaf, else (-1)^(n+1) times the
    linear tree with the decoration order reversed (n = vertex count)."""
    forest = tree.as_forest()
    if not is_linear(forest):
        return LinComb.zero()
    sign = Fraction(1 if (tree.size + 1) % 2 == 0 else -1)
    return LinComb.of(_reverse_linear(tree).as_forest(), sign)


def antipode_leg(forest: Forest) -> LinComb[Forest]:
    """The antipode as applied to a tensor leg inside the counit square.

    On nonempty trees this is ``right_antipode``.  The empty leg is sent to
    -∅: that sign is forced by the nonempty cases of the square
    shuffle∘(Id⊗S)∘Δ = unit∘counit, and amounts to reading the sign rule
    (-1)^(n+1) at n = 0 as well.
    """
    if forest.is_empty:
        return LinComb.of(EMPTY, -1)
    return right_antipode(forest.single_tree())


def antipode_square_residual(tree: RootedTree) -> LinComb[Forest]:
    """shuffle∘(Id⊗S)∘Δ applied to a nonempty tree; zero iff the right
    antipode square commutes on that tree."""
    from .shuffle import shuffle_lin

    acc = LinComb.zero()
    for (left, right), c in trunk_coproduct(tree.as_forest()).items():
        acc = acc + shuffle_lin(LinComb.of(left, c), antipode_leg(right))
    return acc
