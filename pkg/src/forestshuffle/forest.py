"""Canonical data model for decorated non-planar rooted forests.

Forests are multisets of rooted trees, trees carry a decoration at every
vertex, and decorations are elements of the free commutative monoid on atom
symbols.  Everything here works with isomorphism classes: two trees compare
equal exactly when they are isomorphic as decorated rooted trees.  This is
achieved by keeping children in canonical order (lexicographic on canonical
keys, built bottom-up) at every construction site.

All values are immutable and hashable; every operation is a pure function.
"""

from __future__ import annotations

import re
from typing import Iterable, Sequence

__all__ = [
    "Decoration",
    "RootedTree",
    "Forest",
    "VertexRef",
    "TreeSyntaxError",
    "GuardExceeded",
    "b_plus",
    "concat",
    "parse_forest",
    "render_forest",
    "canonical_key",
    "vertex_refs",
    "subtree_at",
    "leaf_refs",
    "fertility_profile",
    "graft_at",
    "induced_subtree",
]

# Path of child indices from the root inside the canonical layout of one
# tree.  () is the root.  Any structural edit invalidates outstanding refs.
VertexRef = tuple[int, ...]

_ATOM_RE = re.compile(r"[A-Za-z0-9_]+")


class TreeSyntaxError(ValueError):
    """Raised on malformed tree-expression text; carries the offset."""

    def __init__(self, message: str, position: int):
        super().__init__(f"{message} (at position {position})")
        self.position = position


class GuardExceeded(RuntimeError):
    """Raised when an enumeration guard would be exceeded."""


class Decoration:
    """A multiset of atom symbols; the unit is the empty multiset.

    The product is multiset union, so it is commutative and associative
    with the unit as neutral element.  Renders as the atoms sorted
    lexicographically and joined by '*'; the unit renders as "1".
    """

    __slots__ = ("atoms", "text")

    atoms: tuple[str, ...]
    text: str

    def __init__(self, atoms: Iterable[str] = ()):
        atoms = tuple(sorted(atoms))
        for a in atoms:
            if a == "1" or not _ATOM_RE.fullmatch(a):
                raise ValueError(f"invalid atom {a!r}")
        object.__setattr__(self, "atoms", atoms)
        object.__setattr__(self, "text", "*".join(atoms) if atoms else "1")

    def __setattr__(self, name, value):  # pragma: no cover
        raise AttributeError("Decoration is immutable")

    @property
    def is_unit(self) -> bool:
        return not self.atoms

    def __mul__(self, other: "Decoration") -> "Decoration":
        return Decoration(self.atoms + other.atoms)

    def __eq__(self, other: object) -> bool:
        return isinstance(other, Decoration) and self.atoms == other.atoms

    def __hash__(self) -> int:
        return hash(self.atoms)

    def __lt__(self, other: "Decoration") -> bool:
        return self.atoms < other.atoms

    def __repr__(self) -> str:
        return f"Decoration({self.text!r})"


UNIT = Decoration()


def atom(name: str) -> Decoration:
    """Decoration consisting of the single atom ``name``."""
    return Decoration((name,))


class RootedTree:
    """An isomorphism class of decorated non-planar rooted trees.

    Children are stored sorted by canonical key, so any permutation of the
    children at construction yields an identical value.  ``key`` is the
    canonical text of the tree and determines equality; it is built
    bottom-up, making canonicalization O(n log n) overall.
    """

    __slots__ = ("decoration", "children", "key", "size", "_hash")

    decoration: Decoration
    children: tuple["RootedTree", ...]
    key: str
    size: int

    def __init__(self, decoration: Decoration, children: Sequence["RootedTree"] = ()):
        children = tuple(sorted(children, key=lambda t: t.key))
        object.__setattr__(self, "decoration", decoration)
        object.__setattr__(self, "children", children)
        if children:
            key = decoration.text + "[" + ",".join(c.key for c in children) + "]"
        else:
            key = decoration.text
        object.__setattr__(self, "key", key)
        object.__setattr__(self, "size", 1 + sum(c.size for c in children))
        object.__setattr__(self, "_hash", hash(key))

    def __setattr__(self, name, value):  # pragma: no cover
        raise AttributeError("RootedTree is immutable")

    @property
    def fertility(self) -> int:
        return len(self.children)

    def __eq__(self, other: object) -> bool:
        return isinstance(other, RootedTree) and self.key == other.key

    def __hash__(self) -> int:
        return self._hash

    def __lt__(self, other: "RootedTree") -> bool:
        return self.key < other.key

    def __repr__(self) -> str:
        return f"RootedTree({self.key!r})"

    def as_forest(self) -> "Forest":
        return Forest((self,))


class Forest:
    """A multiset of rooted trees; may be empty.

    Concatenation is multiset union, hence commutative and associative with
    the empty forest as unit.  Equality is equality of canonical keys, i.e.
    isomorphism of decorated forests.
    """

    __slots__ = ("trees", "key", "size", "_hash")

    trees: tuple[RootedTree, ...]
    key: str
    size: int

    def __init__(self, trees: Sequence[RootedTree] = ()):
        trees = tuple(sorted(trees, key=lambda t: t.key))
        object.__setattr__(self, "trees", trees)
        key = " ".join(t.key for t in trees) if trees else "()"
        object.__setattr__(self, "key", key)
        object.__setattr__(self, "size", sum(t.size for t in trees))
        object.__setattr__(self, "_hash", hash(key))

    def __setattr__(self, name, value):  # pragma: no cover
        raise AttributeError("Forest is immutable")

    @property
    def is_empty(self) -> bool:
        return not self.trees

    @property
    def is_tree(self) -> bool:
        return len(self.trees) == 1

    @property
    def is_connected(self) -> bool:
        """Empty forests and single trees count as connected."""
        return len(self.trees) <= 1

    def single_tree(self) -> RootedTree:
        if len(self.trees) != 1:
            raise ValueError(f"forest {self.key!r} is not a single tree")
        return self.trees[0]

    def __eq__(self, other: object) -> bool:
        return isinstance(other, Forest) and self.key == other.key

    def __hash__(self) -> int:
        return self._hash

    def __lt__(self, other: "Forest") -> bool:
        return self.key < other.key

    def __repr__(self) -> str:
        return f"Forest({self.key!r})"


EMPTY = Forest(())


def b_plus(decoration: Decoration, forest: Forest) -> RootedTree:
    """Graft a new root decorated by ``decoration`` below ``forest``."""
    return RootedTree(decoration, forest.trees)


def concat(first: Forest, second: Forest) -> Forest:
    """Multiset union of the two forests."""
    if first.is_empty:
        return second
    if second.is_empty:
        return first
    return Forest(first.trees + second.trees)


def canonical_key(forest: Forest) -> bytes:
    """Canonical key: equal keys iff isomorphic decorated forests."""
    return forest.key.encode("utf-8")


# ---------------------------------------------------------------------------
# vertex references and structural operations on a single tree


def subtree_at(tree: RootedTree, ref: VertexRef) -> RootedTree:
    """The vertex-plus-all-descendants subtree rooted at ``ref``."""
    node = tree
    for i in ref:
        try:
            node = node.children[i]
        except IndexError:
            raise ValueError(f"vertex ref {ref} does not resolve in {tree.key!r}") from None
    return node


def vertex_refs(tree: RootedTree) -> tuple[VertexRef, ...]:
    """All vertex refs of the tree, in preorder over the canonical layout."""
    out: list[VertexRef] = []

    def walk(node: RootedTree, path: VertexRef) -> None:
        out.append(path)
        for i, child in enumerate(node.children):
            walk(child, path + (i,))

    walk(tree, ())
    return tuple(out)


def leaf_refs(tree: RootedTree) -> tuple[VertexRef, ...]:
    return tuple(r for r in vertex_refs(tree) if not subtree_at(tree, r).children)


def fertility_profile(tree: RootedTree) -> dict[VertexRef, int]:
    """Number of direct descendants per vertex; leaves map to 0."""
    return {r: subtree_at(tree, r).fertility for r in vertex_refs(tree)}


def graft_at(tree: RootedTree, ref: VertexRef, scion: RootedTree | Forest) -> RootedTree:
    """Graft the root of ``scion`` as a new direct descendant of ``ref``.

    Grafting the empty forest returns the tree unchanged.  The result is
    re-canonicalized, so refs issued for the input are invalidated.
    """
    if isinstance(scion, Forest):
        if scion.is_empty:
            subtree_at(tree, ref)  # still validate the ref
            return tree
        scion = scion.single_tree()

    def rebuild(node: RootedTree, path: VertexRef) -> RootedTree:
        if not path:
            return RootedTree(node.decoration, node.children + (scion,))
        i = path[0]
        if i >= len(node.children):
            raise ValueError(f"vertex ref {ref} does not resolve in {tree.key!r}")
        children = list(node.children)
        children[i] = rebuild(children[i], path[1:])
        return RootedTree(node.decoration, children)

    return rebuild(tree, ref)


def induced_subtree(tree: RootedTree, refs: Iterable[VertexRef]) -> Forest:
    """The forest induced by a vertex subset.

    Vertices keep their decorations; v1 -> v2 is an edge of the result when
    v1 is a strict ancestor of v2 in the tree and no selected vertex lies
    strictly between them.  The result need not be connected.
    """
    selected = set(refs)
    all_refs = set(vertex_refs(tree))
    for r in selected:
        if r not in all_refs:
            raise ValueError(f"vertex ref {r} does not resolve in {tree.key!r}")

    def nearest_selected_ancestor(ref: VertexRef) -> VertexRef | None:
        for k in range(len(ref) - 1, -1, -1):
            if ref[:k] in selected:
                return ref[:k]
        return None

    children_of: dict[VertexRef | None, list[VertexRef]] = {}
    for r in selected:
        children_of.setdefault(nearest_selected_ancestor(r), []).append(r)

    def build(ref: VertexRef) -> RootedTree:
        kids = [build(c) for c in children_of.get(ref, ())]
        return RootedTree(subtree_at(tree, ref).decoration, kids)

    return Forest([build(r) for r in children_of.get(None, ())])


# ---------------------------------------------------------------------------
# tree-expression text format
#
#   forest := "()" | tree (WS tree)*
#   tree   := dec | dec "[" tree ("," tree)* "]"
#   dec    := atom ("*" atom)*
#   atom   := [A-Za-z0-9_]+        ("1" alone denotes the monoid unit)


def render_forest(forest: Forest) -> str:
    """Canonical text of a forest; the empty forest renders as "()"."""
    return forest.key


def render_tree(tree: RootedTree) -> str:
    return tree.key


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.pos = 0

    def error(self, message: str) -> TreeSyntaxError:
        return TreeSyntaxError(message, self.pos)

    def skip_ws(self) -> None:
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1

    def peek(self) -> str:
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def parse_atom(self) -> str:
        m = _ATOM_RE.match(self.text, self.pos)
        if not m:
            raise self.error("expected an atom")
        self.pos = m.end()
        return m.group()

    def parse_decoration(self) -> Decoration:
        atoms = [self.parse_atom()]
        while self.peek() == "*":
            self.pos += 1
            atoms.append(self.parse_atom())
        if len(atoms) == 1 and atoms[0] == "1":
            return UNIT
        if "1" in atoms:
            raise self.error('the unit atom "1" may not appear inside a composite decoration')
        return Decoration(atoms)

    def parse_tree(self) -> RootedTree:
        dec = self.parse_decoration()
        children: list[RootedTree] = []
        if self.peek() == "[":
            self.pos += 1
            self.skip_ws()
            children.append(self.parse_tree())
            self.skip_ws()
            while self.peek() == ",":
                self.pos += 1
                self.skip_ws()
                children.append(self.parse_tree())
                self.skip_ws()
            if self.peek() != "]":
                raise self.error('expected "," or "]"')
            self.pos += 1
        return RootedTree(dec, children)

    def parse_forest(self) -> Forest:
        self.skip_ws()
        if not self.text[self.pos :].strip():
            raise self.error("empty input (the empty forest is written \"()\")")
        if self.text[self.pos :].startswith("()"):
            self.pos += 2
            self.skip_ws()
            if self.pos != len(self.text):
                raise self.error('trailing input after "()"')
            return EMPTY
        trees = [self.parse_tree()]
        self.skip_ws()
        while self.pos < len(self.text):
            trees.append(self.parse_tree())
            self.skip_ws()
        return Forest(trees)


def parse_forest(text: str) -> Forest:
    """Parse tree-expression text into a canonical forest.

    render_forest(parse_forest(s)) == s whenever s is already canonical.
    """
    return _Parser(text).parse_forest()


def parse_tree(text: str) -> RootedTree:
    forest = parse_forest(text)
    if not forest.is_tree:
        raise TreeSyntaxError("expected a single tree", 0)
    return forest.single_tree()
