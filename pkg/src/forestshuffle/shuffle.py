"""Quasi-shuffle products of rooted forests.

``forest_shuffle`` generalizes the word quasi-shuffle: two trees shuffle by
pulling off their roots (the weight term fuses the two roots, multiplying
their decorations), and forests shuffle component against component with an
exact 1/(kn) prefactor.  ``star_product`` and ``diamond_product`` are the
variants adapted to the commutative concatenation of forests; on a pair of
trees the star product coincides with the shuffle.

All results are exact rational linear combinations; the weight is a rational
parameter per call, not a formal variable.  Memo caches are pure memos keyed
on canonical keys and are semantically invisible.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import combinations

from .forest import EMPTY, Forest, RootedTree, b_plus, concat
from .linalg import LinComb, lincomb_sum

__all__ = [
    "forest_shuffle",
    "shuffle_lin",
    "star_product",
    "diamond_product",
    "diamond_lin",
    "shuffle_coefficient",
    "find_nonassociativity_witness",
]

_shuffle_cache: dict[tuple[str, str, Fraction], LinComb[Forest]] = {}
_star_cache: dict[tuple[str, str, Fraction], LinComb[Forest]] = {}
_diamond_cache: dict[tuple[str, str, Fraction], LinComb[Forest]] = {}
_coeff_cache: dict[tuple[str, str, str, Fraction], Fraction] = {}
_atoms_cache: dict[str, tuple[str, ...]] = {}

# products of large operands are not memoized (their sub-results are), so
# long-running suites do not pin every big expansion in memory
_MEMO_SIZE_LIMIT = 8


def _graft_all(dec, x: LinComb[Forest]) -> LinComb[Forest]:
    """Linear extension of F -> B+^dec(F) (single-tree forests)."""
    return LinComb({b_plus(dec, f).as_forest(): c for f, c in x.items()})


def _concat_all(x: LinComb[Forest], rest: Forest) -> LinComb[Forest]:
    if rest.is_empty:
        return x
    return LinComb({concat(f, rest): c for f, c in x.items()})


def _without(forest: Forest, index: int) -> Forest:
    trees = forest.trees
    return Forest(trees[:index] + trees[index + 1 :])


def forest_shuffle(first: Forest, second: Forest, lam: Fraction | int = 0) -> LinComb[Forest]:
    """The weight-``lam`` shuffle of two rooted forests.

    For trees T = B+^a(f), T' = B+^a'(f'):

        T ⧢ T' = B+^a(f ⧢ T') + B+^a'(T ⧢ f') + lam B+^(a.a')(f ⧢ f')

    and for F = T1..Tk, F' = t1..tn with k+n >= 3:

        F ⧢ F' = 1/(kn) sum_ij (Ti ⧢ tj) · (F without Ti) · (F' without tj).

    The empty forest is the unit.  Every term's coefficient is an exact
    rational; at lam=0 every term has |F|+|F'| vertices.
    """
    lam = Fraction(lam)
    key = (first.key, second.key, lam)
    hit = _shuffle_cache.get(key)
    if hit is not None:
        return hit

    if first.is_empty:
        result = LinComb.of(second)
    elif second.is_empty:
        result = LinComb.of(first)
    elif first.is_tree and second.is_tree:
        t, u = first.single_tree(), second.single_tree()
        f = Forest(t.children)
        g = Forest(u.children)
        result = _graft_all(t.decoration, forest_shuffle(f, second, lam))
        result = result + _graft_all(u.decoration, forest_shuffle(first, g, lam))
        if lam:
            fused = _graft_all(t.decoration * u.decoration, forest_shuffle(f, g, lam))
            result = result + fused.scale(lam)
    else:
        k, n = len(first.trees), len(second.trees)
        parts = []
        for i, ti in enumerate(first.trees):
            rest_i = _without(first, i)
            for j, tj in enumerate(second.trees):
                rest = concat(rest_i, _without(second, j))
                parts.append(
                    _concat_all(forest_shuffle(ti.as_forest(), tj.as_forest(), lam), rest)
                )
        result = lincomb_sum(parts).scale(Fraction(1, k * n))

    if first.size + second.size <= _MEMO_SIZE_LIMIT:
        _shuffle_cache[key] = result
    return result


def shuffle_lin(x: LinComb[Forest], y: LinComb[Forest], lam: Fraction | int = 0) -> LinComb[Forest]:
    """Bilinear extension of the forest shuffle."""
    acc: dict[Forest, Fraction] = {}
    for f1, c1 in x.items():
        for f2, c2 in y.items():
            for g, c in forest_shuffle(f1, f2, lam).items():
                acc[g] = acc.get(g, Fraction(0)) + c1 * c2 * c
    return LinComb(acc)


def star_product(first: Forest, second: Forest, lam: Fraction | int = 0) -> LinComb[Forest]:
    """The auxiliary product mutually recursive with the diamond product.

    Unital on the empty forest.  For nonempty F = T1..Tk and F' = t1..tn
    with Ti = B+^(a_i)(f_i), tj = B+^(a'_j)(f'_j):

        F * F' = 1/k sum_i B+^(a_i)(f_i * F') (F without Ti)
               + 1/n sum_j B+^(a'_j)(F * f'_j) (F' without tj)
               + lam F ◇ F'.

    On a pair of trees this agrees with the forest shuffle.
    """
    lam = Fraction(lam)
    key = (first.key, second.key, lam)
    hit = _star_cache.get(key)
    if hit is not None:
        return hit

    if first.is_empty:
        result = LinComb.of(second)
    elif second.is_empty:
        result = LinComb.of(first)
    else:
        k, n = len(first.trees), len(second.trees)
        parts = []
        for i, ti in enumerate(first.trees):
            inner = star_product(Forest(ti.children), second, lam)
            parts.append(_concat_all(_graft_all(ti.decoration, inner), _without(first, i)).scale(Fraction(1, k)))
        for j, tj in enumerate(second.trees):
            inner = star_product(first, Forest(tj.children), lam)
            parts.append(_concat_all(_graft_all(tj.decoration, inner), _without(second, j)).scale(Fraction(1, n)))
        result = lincomb_sum(parts)
        if lam:
            result = result + diamond_product(first, second, lam).scale(lam)

    if first.size + second.size <= _MEMO_SIZE_LIMIT:
        _star_cache[key] = result
    return result


def diamond_product(first: Forest, second: Forest, lam: Fraction | int = 0) -> LinComb[Forest]:
    """The diamond product on nonempty forests.

    Two trees fuse their roots:  B+^a(F) ◇ B+^a'(F') = B+^(a.a')(F * F');
    general nonempty forests split with the 1/(kn) prefactor as the shuffle
    does.  Undefined on the empty forest.
    """
    if first.is_empty or second.is_empty:
        raise ValueError("diamond product is undefined on the empty forest")
    lam = Fraction(lam)
    key = (first.key, second.key, lam)
    hit = _diamond_cache.get(key)
    if hit is not None:
        return hit

    if first.is_tree and second.is_tree:
        t, u = first.single_tree(), second.single_tree()
        inner = star_product(Forest(t.children), Forest(u.children), lam)
        result = _graft_all(t.decoration * u.decoration, inner)
    else:
        k, n = len(first.trees), len(second.trees)
        parts = []
        for i, ti in enumerate(first.trees):
            rest_i = _without(first, i)
            for j, tj in enumerate(second.trees):
                rest = concat(rest_i, _without(second, j))
                parts.append(
                    _concat_all(diamond_product(ti.as_forest(), tj.as_forest(), lam), rest)
                )
        result = lincomb_sum(parts).scale(Fraction(1, k * n))

    if first.size + second.size <= _MEMO_SIZE_LIMIT:
        _diamond_cache[key] = result
    return result


def diamond_lin(x: LinComb[Forest], y: LinComb[Forest], lam: Fraction | int = 0) -> LinComb[Forest]:
    """Bilinear extension of the diamond product (zero absorbs)."""
    acc: dict[Forest, Fraction] = {}
    for f1, c1 in x.items():
        for f2, c2 in y.items():
            for g, c in diamond_product(f1, f2, lam).items():
                acc[g] = acc.get(g, Fraction(0)) + c1 * c2 * c
    return LinComb(acc)


# ---------------------------------------------------------------------------
# targeted coefficient extraction


def _atom_multiset(forest: Forest) -> tuple[str, ...]:
    hit = _atoms_cache.get(forest.key)
    if hit is None:
        atoms: list[str] = []

        def walk(node: RootedTree) -> None:
            atoms.extend(node.decoration.atoms)
            for c in node.children:
                walk(c)

        for t in forest.trees:
            walk(t)
        hit = tuple(sorted(atoms))
        _atoms_cache[forest.key] = hit
    return hit


def _multiset_difference(forest: Forest, part: Forest) -> Forest | None:
    """forest minus part as tree multisets, or None if part is not contained."""
    remaining = list(forest.trees)
    for t in part.trees:
        try:
            remaining.remove(t)
        except ValueError:
            return None
    return Forest(remaining)


def shuffle_coefficient(
    target: Forest, first: Forest, second: Forest, lam: Fraction | int = 0
) -> Fraction:
    """The coefficient of ``target`` in first ⧢_lam second.

    Equivalent to expanding the shuffle and extracting one coefficient, but
    implemented as a pruned structural recursion so that large bases can be
    paired against without materializing whole products.  This realizes the
    pairing <target, first ⧢ second> in the dual basis.
    """
    lam = Fraction(lam)
    atoms = _atom_multiset(target)
    if tuple(sorted(_atom_multiset(first) + _atom_multiset(second))) != atoms:
        return Fraction(0)
    if lam == 0 and first.size + second.size != target.size:
        return Fraction(0)
    return _coeff(target, first, second, lam)


def _coeff(target: Forest, first: Forest, second: Forest, lam: Fraction) -> Fraction:
    if first.is_empty:
        return Fraction(1 if target == second else 0)
    if second.is_empty:
        return Fraction(1 if target == first else 0)
    key = (target.key, first.key, second.key, lam)
    hit = _coeff_cache.get(key)
    if hit is not None:
        return hit

    if first.is_tree and second.is_tree:
        # tree ⧢ tree only produces trees
        if not target.is_tree:
            result = Fraction(0)
        else:
            root = target.single_tree()
            body = Forest(root.children)
            t, u = first.single_tree(), second.single_tree()
            result = Fraction(0)
            if root.decoration == t.decoration:
                result += _coeff(body, Forest(t.children), second, lam)
            if root.decoration == u.decoration:
                result += _coeff(body, first, Forest(u.children), lam)
            if lam and root.decoration == t.decoration * u.decoration:
                result += lam * _coeff(body, Forest(t.children), Forest(u.children), lam)
    else:
        k, n = len(first.trees), len(second.trees)
        result = Fraction(0)
        for i, ti in enumerate(first.trees):
            rest_i = _without(first, i)
            for j, tj in enumerate(second.trees):
                rest = concat(rest_i, _without(second, j))
                core = _multiset_difference(target, rest)
                if core is None:
                    continue
                result += _coeff(core, ti.as_forest(), tj.as_forest(), lam)
        result /= k * n

    _coeff_cache[key] = result
    return result


def find_nonassociativity_witness(
    max_degree: int, atoms: tuple[str, ...] = ("a", "b", "c", "d"), lam: Fraction | int = 0
) -> tuple[Forest, Forest, Forest] | None:
    """Search for forests x, y, z with (x⧢y)⧢z != x⧢(y⧢z).

    Scans nonempty forests in canonical order by total degree; returns the
    first witness found, or None if none exists up to ``max_degree``.
    """
    from .sampling import forests_of_size

    from .forest import Decoration

    alphabet = tuple(Decoration((a,)) for a in atoms)
    pool: list[Forest] = []
    for n in range(1, max_degree - 1):
        pool.extend(forests_of_size(n, alphabet))
    for x in pool:
        for y in pool:
            if x.size + y.size >= max_degree:
                continue
            for z in pool:
                if x.size + y.size + z.size > max_degree:
                    continue
                left = shuffle_lin(forest_shuffle(x, y, lam), LinComb.of(z), lam)
                right = shuffle_lin(LinComb.of(x), forest_shuffle(y, z, lam), lam)
                if left != right:
                    return (x, y, z)
    return None
