"""Words over the decoration monoid and their quasi-shuffle products.

Words are the baseline the forest operations generalize: the injection
``word_to_tree`` sends a word to the linear tree whose root carries the
first letter.  ``word_shuffle`` is the classical recursive quasi-shuffle
(weight ``lam``); at lam=0 it is the plain shuffle of words.
"""

from __future__ import annotations

import itertools
from fractions import Fraction
from typing import Iterable, Sequence

from .forest import Decoration, EMPTY, Forest, RootedTree
from .linalg import LinComb, TensorComb

__all__ = [
    "Word",
    "EMPTY_WORD",
    "word_concat",
    "word_shuffle",
    "word_shuffle_brute",
    "word_to_tree",
    "tree_to_word",
    "is_linear",
    "deconcatenation",
    "deshuffle",
]


class Word:
    """An immutable sequence of letters, each a Decoration."""

    __slots__ = ("letters", "key")

    letters: tuple[Decoration, ...]
    key: str

    def __init__(self, letters: Iterable[Decoration] = ()):
        letters = tuple(letters)
        object.__setattr__(self, "letters", letters)
        object.__setattr__(
            self, "key", "(" + " ".join(l.text for l in letters) + ")"
        )

    def __setattr__(self, name, value):  # pragma: no cover
        raise AttributeError("Word is immutable")

    def __len__(self) -> int:
        return len(self.letters)

    def __eq__(self, other: object) -> bool:
        return isinstance(other, Word) and self.letters == other.letters

    def __hash__(self) -> int:
        return hash(self.letters)

    def __lt__(self, other: "Word") -> bool:
        return self.key < other.key

    def __repr__(self) -> str:
        return f"Word({self.key!r})"


EMPTY_WORD = Word(())


def word_concat(first: Word, second: Word) -> Word:
    return Word(first.letters + second.letters)


def word_shuffle(w: Word, v: Word, lam: Fraction | int = 0) -> LinComb[Word]:
    """The weight-``lam`` quasi-shuffle of two words.

    Recursion on the leading letters a, b of the operands:
        w ⧢ v = a·(w' ⧢ v) + b·(w ⧢ v') + lam (a·b)·(w' ⧢ v')
    with the empty word as unit.  Degree additive; commutative because the
    letter product is.
    """
    lam = Fraction(lam)

    def go(a: tuple[Decoration, ...], b: tuple[Decoration, ...]) -> LinComb[Word]:
        if not a:
            return LinComb.of(Word(b))
        if not b:
            return LinComb.of(Word(a))
        acc: dict[Word, Fraction] = {}

        def put(head: Decoration, rest: LinComb[Word], c: Fraction) -> None:
            for word, c2 in rest.items():
                key = Word((head,) + word.letters)
                acc[key] = acc.get(key, Fraction(0)) + c * c2

        put(a[0], go(a[1:], b), Fraction(1))
        put(b[0], go(a, b[1:]), Fraction(1))
        if lam:
            put(a[0] * b[0], go(a[1:], b[1:]), lam)
        return LinComb(acc)

    return go(w.letters, v.letters)


def word_shuffle_brute(w: Word, v: Word) -> LinComb[Word]:
    """Plain shuffle by brute-force enumeration of interleavings.

    Independent of the recursion above: chooses the positions of ``w``'s
    letters among len(w)+len(v) slots.  Only the lam=0 case.
    """
    n, m = len(w), len(v)
    acc: dict[Word, Fraction] = {}
    for positions in itertools.combinations(range(n + m), n):
        letters: list[Decoration | None] = [None] * (n + m)
        for i, p in enumerate(positions):
            letters[p] = w.letters[i]
        it = iter(v.letters)
        letters = [x if x is not None else next(it) for x in letters]
        word = Word(letters)
        acc[word] = acc.get(word, Fraction(0)) + 1
    return LinComb(acc)


def word_to_tree(w: Word) -> Forest:
    """The linear tree of a word; the first letter decorates the root."""
    if not w.letters:
        return EMPTY
    node: RootedTree | None = None
    for letter in reversed(w.letters):
        node = RootedTree(letter, () if node is None else (node,))
    assert node is not None
    return node.as_forest()


def is_linear(forest: Forest) -> bool:
    """True for ∅ and for trees all of whose vertices have fertility <= 1."""
    if forest.is_empty:
        return True
    if not forest.is_tree:
        return False
    node = forest.single_tree()
    while node.children:
        if len(node.children) > 1:
            return False
        node = node.children[0]
    return True


def tree_to_word(forest: Forest) -> Word:
    if not is_linear(forest):
        raise ValueError(f"{forest.key!r} is not a linear tree")
    letters: list[Decoration] = []
    if not forest.is_empty:
        node: RootedTree | None = forest.single_tree()
        while node is not None:
            letters.append(node.decoration)
            node = node.children[0] if node.children else None
    return Word(letters)


def deconcatenation(w: Word) -> TensorComb[Word]:
    """Sum of all prefix/suffix splits of a word."""
    terms = {
        (Word(w.letters[:i]), Word(w.letters[i:])): Fraction(1)
        for i in range(len(w) + 1)
    }
    return TensorComb(2, terms)


def deshuffle(w: Word) -> TensorComb[Word]:
    """Dual of the plain shuffle: all subsequence/complement splits."""
    acc: dict[tuple[Word, Word], Fraction] = {}
    indices = range(len(w))
    for r in range(len(w) + 1):
        for picked in itertools.combinations(indices, r):
            chosen = set(picked)
            left = Word(tuple(w.letters[i] for i in indices if i in chosen))
            right = Word(tuple(w.letters[i] for i in indices if i not in chosen))
            acc[(left, right)] = acc.get((left, right), Fraction(0)) + 1
    return TensorComb(2, acc)
