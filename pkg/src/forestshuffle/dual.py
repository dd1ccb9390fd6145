"""The coproduct dual to the forest shuffle, admissible families, and the
grafting products.

Three independent routes to the dual coproduct coexist here:

* ``dual_recursive``  — the inductive formula: forests split component-wise
  with coefficients alpha(I, n) = (|I|+1)(n-|I|), trees reduce through the
  root with a projection keeping only tree (or empty) legs;
* ``dual_combinatorial`` — a sum over admissible vertex families weighted by
  contracted fertilities (must agree with the recursive form exactly);
* ``dual_oracle``      — strict duality against the shuffle, by brute-force
  pairing over every basis split of the decoration multiset.  This is
  ground truth by definition and deliberately shares no code with the two
  formulas above.

The recursive/combinatorial forms carry the alpha/fertility weights as
stated; strict duality normalizes differently, and the oracle empirically
realizes the same support with reciprocal coefficients (see
``dual_conjectured_oracle``).  The verification suite evaluates and reports
that relation rather than assuming it.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from .forest import (
    EMPTY,
    Decoration,
    Forest,
    GuardExceeded,
    RootedTree,
    UNIT,
    VertexRef,
    b_plus,
    concat,
    fertility_profile,
    graft_at,
    induced_subtree,
    leaf_refs,
    subtree_at,
    vertex_refs,
)
from .linalg import LinComb, TensorComb
from .shuffle import shuffle_coefficient

__all__ = [
    "AdmissibleFamily",
    "admissible_families",
    "is_admissible_direct",
    "contraction_fertility",
    "dual_recursive",
    "reduced_dual",
    "dual_combinatorial",
    "dual_conjectured_oracle",
    "dual_oracle",
    "ORACLE_GUARD",
    "graft_leaves",
    "graft_linear",
    "graft_leaves_lin",
    "graft_linear_lin",
    "trees_on_multiset",
    "forests_on_multiset",
    "oracle_reduced_is_zero",
]

ORACLE_GUARD = 8


# ---------------------------------------------------------------------------
# admissible families


@dataclass(frozen=True)
class AdmissibleFamily:
    """A vertex subset whose induced tree and complement-induced tree are
    both trees (or empty) and which freezes every branching: a vertex keeps
    its ambient fertility on its own side whenever either of the two is at
    least 2.  ``c_gamma`` is its contracted fertility."""

    gamma: frozenset[VertexRef]
    t_gamma: Forest
    t_complement: Forest
    c_gamma: int


def _family_sets(tree: RootedTree) -> list[tuple[frozenset[VertexRef], int]]:
    """Inductive enumeration of admissible vertex sets with fertilities.

    Single-child root: families of the child, each taken with and without
    the root, fertility unchanged.  Root with n >= 2 children: besides the
    two boundary families (whole vertex set and empty set, fertility 1),
    every family is built from a proper nonempty family of one child, taken
    either as is or joined with the root and all other children; fertility
    is n times the child's.
    """
    kids = tree.children
    n = len(kids)
    if n == 0:
        return [(frozenset(), 1), (frozenset({()}), 1)]
    if n == 1:
        out: list[tuple[frozenset[VertexRef], int]] = []
        for sub, c in _family_sets(kids[0]):
            lifted = frozenset((0,) + p for p in sub)
            out.append((lifted, c))
            out.append((lifted | {()}, c))
        return out

    child_vertices = [frozenset((i,) + p for p in vertex_refs(kids[i])) for i in range(n)]
    all_vertices: frozenset[VertexRef] = frozenset({()}).union(*child_vertices)
    out = [(frozenset(), 1), (all_vertices, 1)]
    for i in range(n):
        child_size = kids[i].size
        rest = all_vertices - child_vertices[i] - {()}
        for sub, c in _family_sets(kids[i]):
            if not sub or len(sub) == child_size:
                continue
            lifted = frozenset((i,) + p for p in sub)
            out.append((lifted, n * c))
            out.append((lifted | {()} | rest, n * c))
    return out


def _set_key(refs: frozenset[VertexRef]) -> tuple:
    return (len(refs), tuple(sorted(refs)))


def admissible_families(tree: RootedTree) -> tuple[AdmissibleFamily, ...]:
    """All admissible families of a nonempty tree, in deterministic order.

    The boundary families (empty set and full vertex set) are always
    present with contracted fertility 1.
    """
    all_refs = frozenset(vertex_refs(tree))
    out = []
    for gamma, c in sorted(_family_sets(tree), key=lambda gc: _set_key(gc[0])):
        out.append(
            AdmissibleFamily(
                gamma=gamma,
                t_gamma=induced_subtree(tree, gamma),
                t_complement=induced_subtree(tree, all_refs - gamma),
                c_gamma=c,
            )
        )
    return tuple(out)


def _induced_fertilities(tree: RootedTree, selected: frozenset[VertexRef]) -> dict[VertexRef, int]:
    counts: dict[VertexRef, int] = {r: 0 for r in selected}
    for r in selected:
        for k in range(len(r) - 1, -1, -1):
            if r[:k] in selected:
                counts[r[:k]] += 1
                break
    return counts


def is_admissible_direct(tree: RootedTree, gamma: Iterable[VertexRef]) -> bool:
    """Check the defining conditions of admissibility on a vertex set.

    Both induced sides must be trees (or empty), and every branching is
    frozen: a vertex's fertility on its own side must equal its fertility
    in the ambient tree whenever either of the two is at least 2.  The
    symmetric trigger matters: a fertility-1 vertex may not gain a second
    child on its side either (e.g. in r[s[u[x],v[y]]] the set {s,x,y} has
    tree complement r[u,v], but r had one child; the corresponding tensor
    never occurs in the dual coproduct, and the inductive enumeration
    rightly excludes the set).  Fertility may only vary between 0 and 1.
    """
    gamma = frozenset(gamma)
    all_refs = frozenset(vertex_refs(tree))
    if not gamma <= all_refs:
        raise ValueError("gamma contains refs that do not resolve")
    complement = all_refs - gamma
    if not induced_subtree(tree, gamma).is_connected:
        return False
    if not induced_subtree(tree, complement).is_connected:
        return False
    fertility = fertility_profile(tree)
    gamma_fert = _induced_fertilities(tree, gamma)
    comp_fert = _induced_fertilities(tree, complement)
    for v, fert in fertility.items():
        side = gamma_fert if v in gamma else comp_fert
        if max(fert, side[v]) >= 2 and side[v] != fert:
            return False
    return True


def contraction_fertility(
    tree: RootedTree, gamma: Iterable[VertexRef]
) -> tuple[RootedTree, int]:
    """Contract every maximal full subtree lying on one side of gamma.

    A full subtree (a vertex with all of its descendants) entirely inside
    gamma, or entirely inside the complement, collapses to a single vertex.
    Returns the undecorated contraction together with the product of the
    fertilities of its internal vertices (1 when the contraction has at
    most one vertex).  This is the independent oracle for the fertilities
    carried by ``admissible_families``.
    """
    gamma = frozenset(gamma)
    all_refs = frozenset(vertex_refs(tree))
    if not gamma <= all_refs:
        raise ValueError("gamma contains refs that do not resolve")

    def uniform(node: RootedTree, path: VertexRef) -> bool:
        side = path in gamma
        return all(
            ((path + rel) in gamma) == side for rel in vertex_refs(node)
        )

    def build(node: RootedTree, path: VertexRef) -> RootedTree:
        if uniform(node, path):
            return RootedTree(UNIT)
        return RootedTree(
            UNIT,
            [build(c, path + (i,)) for i, c in enumerate(node.children)],
        )

    cont = build(tree, ())
    if cont.size <= 1:
        return cont, 1
    c = 1
    stack = [cont]
    while stack:
        node = stack.pop()
        if node.children:
            c *= len(node.children)
            stack.extend(node.children)
    return cont, c


# ---------------------------------------------------------------------------
# the dual coproduct, three ways

_dual_cache: dict[str, TensorComb[Forest]] = {}


def _alpha(size_i: int, n: int) -> int:
    return (size_i + 1) * (n - size_i)


def dual_recursive(forest: Forest) -> TensorComb[Forest]:
    """The dual coproduct by its inductive formula."""
    hit = _dual_cache.get(forest.key)
    if hit is not None:
        return hit

    if forest.is_empty:
        result = TensorComb.of((EMPTY, EMPTY))
    elif forest.is_tree:
        tree = forest.single_tree()
        inner = dual_recursive(Forest(tree.children))
        acc: dict[tuple[Forest, Forest], Fraction] = {}
        for (left, right), c in inner.items():
            if right.is_connected:
                legs = (b_plus(tree.decoration, left).as_forest(), right)
                acc[legs] = acc.get(legs, Fraction(0)) + c
            if left.is_connected:
                legs = (left, b_plus(tree.decoration, right).as_forest())
                acc[legs] = acc.get(legs, Fraction(0)) + c
        result = TensorComb(2, acc)
    else:
        trees = forest.trees
        n = len(trees)
        acc = {(forest, EMPTY): Fraction(1), (EMPTY, forest): Fraction(1)}
        for i in range(n):
            red = reduced_dual(trees[i].as_forest())
            if red.is_zero:
                continue
            others = trees[:i] + trees[i + 1 :]
            for r in range(n):
                for picked in itertools.combinations(range(n - 1), r):
                    chosen = set(picked)
                    f_in = Forest([others[j] for j in range(n - 1) if j in chosen])
                    f_out = Forest([others[j] for j in range(n - 1) if j not in chosen])
                    a = _alpha(r, n)
                    for (x, y), c in red.items():
                        legs = (concat(x, f_in), concat(y, f_out))
                        acc[legs] = acc.get(legs, Fraction(0)) + a * c
        result = TensorComb(2, acc)

    _dual_cache[forest.key] = result
    return result


def reduced_dual(forest: Forest) -> TensorComb[Forest]:
    """dual_recursive without the two trivial legs F⊗∅ and ∅⊗F."""
    trivial = TensorComb(
        2, {(forest, EMPTY): Fraction(1), (EMPTY, forest): Fraction(1)}
    )
    return dual_recursive(forest) - trivial


def _dual_combinatorial_terms(
    forest: Forest, invert: bool
) -> TensorComb[Forest]:
    """Shared body of the combinatorial form; ``invert`` replaces every
    family fertility c by 1/c and every alpha by 1/alpha."""

    def weight(c: int) -> Fraction:
        return Fraction(1, c) if invert else Fraction(c)

    if forest.is_empty:
        return TensorComb.of((EMPTY, EMPTY))
    if forest.is_tree:
        tree = forest.single_tree()
        acc: dict[tuple[Forest, Forest], Fraction] = {}
        for fam in admissible_families(tree):
            legs = (fam.t_complement, fam.t_gamma)
            acc[legs] = acc.get(legs, Fraction(0)) + weight(fam.c_gamma)
        return TensorComb(2, acc)

    trees = forest.trees
    n = len(trees)
    acc = {(forest, EMPTY): Fraction(1), (EMPTY, forest): Fraction(1)}
    for i in range(n):
        tree = trees[i]
        size_i = tree.size
        others = trees[:i] + trees[i + 1 :]
        for fam in admissible_families(tree):
            if not fam.gamma or len(fam.gamma) == size_i:
                continue
            for r in range(n):
                a = weight(_alpha(r, n))
                for picked in itertools.combinations(range(n - 1), r):
                    chosen = set(picked)
                    f_in = Forest([others[j] for j in range(n - 1) if j in chosen])
                    f_out = Forest([others[j] for j in range(n - 1) if j not in chosen])
                    legs = (
                        concat(fam.t_complement, f_in),
                        concat(fam.t_gamma, f_out),
                    )
                    acc[legs] = acc.get(legs, Fraction(0)) + weight(fam.c_gamma) * a
    return TensorComb(2, acc)


def dual_combinatorial(forest: Forest) -> TensorComb[Forest]:
    """The dual coproduct as a sum over admissible families.

    Must agree with ``dual_recursive`` exactly, on trees and forests alike.
    """
    return _dual_combinatorial_terms(forest, invert=False)


def dual_conjectured_oracle(forest: Forest) -> TensorComb[Forest]:
    """The combinatorial form with reciprocal coefficients (c -> 1/c,
    alpha -> 1/alpha): the conjectured closed form of ``dual_oracle``."""
    return _dual_combinatorial_terms(forest, invert=True)


# ---------------------------------------------------------------------------
# strict duality oracle

_trees_on_cache: dict[tuple[Decoration, ...], tuple[Forest, ...]] = {}
_forests_on_cache: dict[tuple[Decoration, ...], tuple[Forest, ...]] = {}


def _decoration_multiset(forest: Forest) -> tuple[Decoration, ...]:
    decs: list[Decoration] = []
    for t in forest.trees:
        for r in vertex_refs(t):
            decs.append(subtree_at(t, r).decoration)
    return tuple(sorted(decs))


def trees_on_multiset(decorations: Sequence[Decoration]) -> tuple[Forest, ...]:
    """Every tree whose vertex decorations are exactly the given multiset."""
    ms = tuple(sorted(decorations))
    if not ms:
        return ()
    hit = _trees_on_cache.get(ms)
    if hit is None:
        out: set[Forest] = set()
        seen: set[Decoration] = set()
        for i, dec in enumerate(ms):
            if dec in seen:
                continue
            seen.add(dec)
            rest = ms[:i] + ms[i + 1 :]
            for body in forests_on_multiset(rest):
                out.add(b_plus(dec, body).as_forest())
        hit = tuple(sorted(out, key=lambda f: f.key))
        _trees_on_cache[ms] = hit
    return hit


def forests_on_multiset(decorations: Sequence[Decoration]) -> tuple[Forest, ...]:
    """Every forest whose vertex decorations are exactly the given multiset."""
    ms = tuple(sorted(decorations))
    if not ms:
        return (EMPTY,)
    hit = _forests_on_cache.get(ms)
    if hit is None:
        out: set[Forest] = set()
        anchor = ms[0]
        rest = ms[1:]
        # the anchor decoration sits inside one component; choose that
        # component's remaining decorations, then the rest of the forest
        for r in range(len(rest) + 1):
            for picked in set(itertools.combinations(rest, r)):
                chosen = list(picked)
                remaining = list(rest)
                for d in chosen:
                    remaining.remove(d)
                for t in trees_on_multiset([anchor] + chosen):
                    for f in forests_on_multiset(remaining):
                        out.add(concat(t, f))
        hit = tuple(sorted(out, key=lambda f: f.key))
        _forests_on_cache[ms] = hit
    return hit


def _multiset_splits(
    ms: tuple[Decoration, ...]
) -> Iterable[tuple[tuple[Decoration, ...], tuple[Decoration, ...]]]:
    distinct = sorted(set(ms))
    counts = [ms.count(d) for d in distinct]
    for take in itertools.product(*(range(c + 1) for c in counts)):
        left: list[Decoration] = []
        right: list[Decoration] = []
        for d, c, k in zip(distinct, counts, take):
            left.extend([d] * k)
            right.extend([d] * (c - k))
        yield tuple(left), tuple(right)


def dual_oracle(forest: Forest, alphabet: Sequence[Decoration] | None = None) -> TensorComb[Forest]:
    """The dual coproduct from first principles.

    Sums <F, f1 ⧢ f2> f1⊗f2 over every pair of basis forests decorated from
    the multiset of F's own decorations (the only pairs that can pair
    nonzero at weight 0).  Guarded to |F| <= 8 vertices.  The ``alphabet``
    argument restricts the basis to forests over those decorations; by
    default the multiset is read off the input.
    """
    if forest.size > ORACLE_GUARD:
        raise GuardExceeded(
            f"dual_oracle is guarded to {ORACLE_GUARD} vertices, got {forest.size}"
        )
    ms = _decoration_multiset(forest)
    if alphabet is not None:
        allowed = set(alphabet)
        if not set(ms) <= allowed:
            raise ValueError("forest uses decorations outside the given alphabet")
    components = len(forest.trees)
    acc: dict[tuple[Forest, Forest], Fraction] = {}
    for left_ms, right_ms in _multiset_splits(ms):
        for f1 in forests_on_multiset(left_ms):
            for f2 in forests_on_multiset(right_ms):
                if f1.is_empty or f2.is_empty:
                    if concat(f1, f2) == forest:
                        acc[(f1, f2)] = Fraction(1)
                    continue
                # a shuffle of forests with k and n components only
                # produces forests with k+n-1 components
                if len(f1.trees) + len(f2.trees) != components + 1:
                    continue
                c = shuffle_coefficient(forest, f1, f2, 0)
                if c:
                    acc[(f1, f2)] = c
    return TensorComb(2, acc)


def oracle_reduced_is_zero(forest: Forest) -> bool:
    """Whether the strict-duality coproduct of a tree has no nontrivial
    terms, i.e. the tree is primitive for the oracle.

    Scans every split of the decoration multiset into two nonempty tree
    bases (the only candidates for a tree target), with an early exit on
    the first nonzero pairing.
    """
    tree = forest.single_tree()
    if forest.size > ORACLE_GUARD:
        raise GuardExceeded(
            f"oracle primitivity is guarded to {ORACLE_GUARD} vertices, got {forest.size}"
        )
    # cheap witnesses first: split below any fertility-1 vertex
    for ref in vertex_refs(tree):
        node = subtree_at(tree, ref)
        if node.fertility == 1:
            child = ref + (0,)
            scion = subtree_at(tree, child).as_forest()
            keep = frozenset(vertex_refs(tree)) - frozenset(
                child + rel for rel in vertex_refs(subtree_at(tree, child))
            )
            base = induced_subtree(tree, keep)
            if shuffle_coefficient(forest, base, scion, 0):
                return False
    ms = _decoration_multiset(forest)
    for left_ms, right_ms in _multiset_splits(ms):
        if not left_ms or not right_ms:
            continue
        for f1 in trees_on_multiset(left_ms):
            for f2 in trees_on_multiset(right_ms):
                if shuffle_coefficient(forest, f1, f2, 0):
                    return False
    return True


# ---------------------------------------------------------------------------
# grafting products


def graft_leaves(base: Forest | RootedTree, scion: Forest | RootedTree) -> LinComb[Forest]:
    """Sum of the graftings of the scion onto each leaf of the base tree;
    the empty base acts as unit."""
    base = base.as_forest() if isinstance(base, RootedTree) else base
    scion_f = scion.as_forest() if isinstance(scion, RootedTree) else scion
    if base.is_empty:
        return LinComb.of(scion_f)
    tree = base.single_tree()
    acc: dict[Forest, Fraction] = {}
    for leaf in leaf_refs(tree):
        grafted = graft_at(tree, leaf, scion_f).as_forest()
        acc[grafted] = acc.get(grafted, Fraction(0)) + 1
    return LinComb(acc)


def graft_linear(base: Forest | RootedTree, scion: Forest | RootedTree) -> LinComb[Forest]:
    """As graft_leaves, but zero whenever the base has more than one leaf."""
    base = base.as_forest() if isinstance(base, RootedTree) else base
    if not base.is_empty and len(leaf_refs(base.single_tree())) > 1:
        return LinComb.zero()
    return graft_leaves(base, scion)


def _bilinear(op):
    def lifted(x: LinComb[Forest], y: LinComb[Forest]) -> LinComb[Forest]:
        acc: dict[Forest, Fraction] = {}
        for f1, c1 in x.items():
            for f2, c2 in y.items():
                for g, c in op(f1, f2).items():
                    acc[g] = acc.get(g, Fraction(0)) + c1 * c2 * c
        return LinComb(acc)

    return lifted


graft_leaves_lin = _bilinear(graft_leaves)
graft_linear_lin = _bilinear(graft_linear)
