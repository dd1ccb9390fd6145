"""Rota-Baxter structure of the word and forest diamond products.

A Rota-Baxter algebra of weight lam is a product together with a linear
operator P satisfying

    P(x) P(y) = P(x P(y)) + P(P(x) y) + lam P(x y).

Words over a commutative monoid carry this structure with the diamond
product (first letters multiply, tails quasi-shuffle) and P prepending the
unit letter.  Nonempty forests carry it with the forest diamond product and
P grafting a unit-decorated root.  ``phi_bar`` is the induced map from
forests into any commutative associative Rota-Baxter algebra, extending a
letter map multiplicatively; ``rb_verify`` checks the defining identity on
explicit samples and reports residuals.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable

from .forest import Decoration, Forest, RootedTree, UNIT, b_plus
from .linalg import LinComb, render_lincomb
from .shuffle import diamond_lin
from .words import Word, word_shuffle

__all__ = [
    "RotaBaxterAlgebra",
    "word_P",
    "word_diamond",
    "word_diamond_lin",
    "word_algebra",
    "forest_rb_operator",
    "forest_algebra",
    "corrupted_forest_algebra",
    "rb_residual",
    "RBCaseResult",
    "RBReport",
    "rb_verify",
    "word_embedding",
    "phi_bar",
]


@dataclass(frozen=True)
class RotaBaxterAlgebra:
    """A carrier of linear combinations with a bilinear product and a
    linear operator, tagged with its weight."""

    name: str
    weight: Fraction
    product: Callable[[LinComb, LinComb], LinComb]
    operator: Callable[[LinComb], LinComb]


def word_P(w: Word) -> Word:
    """Prepend the unit letter."""
    return Word((UNIT,) + w.letters)


def word_diamond(w: Word, v: Word, lam: Fraction | int = 0) -> LinComb[Word]:
    """First letters multiply in the monoid, tails quasi-shuffle."""
    if not w.letters or not v.letters:
        raise ValueError("the word diamond product needs nonempty operands")
    head = w.letters[0] * v.letters[0]
    tails = word_shuffle(Word(w.letters[1:]), Word(v.letters[1:]), lam)
    return LinComb(
        {Word((head,) + word.letters): c for word, c in tails.items()}
    )


def word_diamond_lin(x: LinComb[Word], y: LinComb[Word], lam: Fraction | int = 0) -> LinComb[Word]:
    acc: dict[Word, Fraction] = {}
    for w, c1 in x.items():
        for v, c2 in y.items():
            for u, c in word_diamond(w, v, lam).items():
                acc[u] = acc.get(u, Fraction(0)) + c1 * c2 * c
    return LinComb(acc)


def word_algebra(lam: Fraction | int = 0) -> RotaBaxterAlgebra:
    lam = Fraction(lam)
    return RotaBaxterAlgebra(
        name="words",
        weight=lam,
        product=lambda x, y: word_diamond_lin(x, y, lam),
        operator=lambda x: LinComb({word_P(w): c for w, c in x.items()}),
    )


def forest_rb_operator(forest: Forest) -> RootedTree:
    """Graft a unit-decorated root below the forest."""
    return b_plus(UNIT, forest)


def forest_algebra(lam: Fraction | int = 0) -> RotaBaxterAlgebra:
    lam = Fraction(lam)
    return RotaBaxterAlgebra(
        name="forests",
        weight=lam,
        product=lambda x, y: diamond_lin(x, y, lam),
        operator=lambda x: LinComb(
            {forest_rb_operator(f).as_forest(): c for f, c in x.items()}
        ),
    )


def corrupted_forest_algebra(lam: Fraction | int, atom: str = "a") -> RotaBaxterAlgebra:
    """Negative control: the operator grafts a non-unit root, which breaks
    the Rota-Baxter identity."""
    lam = Fraction(lam)
    dec = Decoration((atom,))
    return RotaBaxterAlgebra(
        name=f"forests-corrupted-{atom}",
        weight=lam,
        product=lambda x, y: diamond_lin(x, y, lam),
        operator=lambda x: LinComb({b_plus(dec, f).as_forest(): c for f, c in x.items()}),
    )


def rb_residual(algebra: RotaBaxterAlgebra, x: LinComb, y: LinComb) -> LinComb:
    """P(x)P(y) - P(xP(y)) - P(P(x)y) - lam P(xy); zero iff the identity
    holds on the pair."""
    P, mul, lam = algebra.operator, algebra.product, algebra.weight
    lhs = mul(P(x), P(y))
    rhs = P(mul(x, P(y))) + P(mul(P(x), y)) + P(mul(x, y)).scale(lam)
    return lhs - rhs


@dataclass(frozen=True)
class RBCaseResult:
    left: str
    right: str
    ok: bool
    residual: str


@dataclass(frozen=True)
class RBReport:
    algebra: str
    weight: str
    cases: tuple[RBCaseResult, ...] = field(default=())

    @property
    def failures(self) -> tuple[RBCaseResult, ...]:
        return tuple(c for c in self.cases if not c.ok)

    @property
    def ok(self) -> bool:
        return not self.failures


def rb_verify(algebra: RotaBaxterAlgebra, samples: list[tuple[LinComb, LinComb]]) -> RBReport:
    """Exact per-pair check of the Rota-Baxter identity."""
    cases = []
    for x, y in samples:
        residual = rb_residual(algebra, x, y)
        cases.append(
            RBCaseResult(
                left=render_lincomb(x),
                right=render_lincomb(y),
                ok=residual.is_zero,
                residual=render_lincomb(residual),
            )
        )
    return RBReport(algebra=algebra.name, weight=str(algebra.weight), cases=tuple(cases))


def word_embedding(dec: Decoration) -> LinComb[Word]:
    """The canonical letter map into the word algebra."""
    return LinComb.of(Word((dec,)))


def phi_bar(
    forest: Forest,
    target: RotaBaxterAlgebra,
    phi: Callable[[Decoration], LinComb],
) -> LinComb:
    """The map induced on nonempty forests by a multiplicative letter map.

    A single vertex goes to phi of its decoration; a tree B+^a(F') goes to
    phi(a) · P(phi_bar(F')); a concatenation goes to the product of the
    images.  Requires the target product to be commutative and associative
    and phi to be multiplicative on the decoration monoid.
    """
    if forest.is_empty:
        raise ValueError("phi_bar is defined on nonempty forests")
    if forest.is_tree:
        tree = forest.single_tree()
        if not tree.children:
            return phi(tree.decoration)
        inner = phi_bar(Forest(tree.children), target, phi)
        return target.product(phi(tree.decoration), target.operator(inner))
    acc: LinComb | None = None
    for tree in forest.trees:
        image = phi_bar(tree.as_forest(), target, phi)
        acc = image if acc is None else target.product(acc, image)
    assert acc is not None
    return acc
