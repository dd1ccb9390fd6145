from __future__ import annotations

import itertools
import random
from fractions import Fraction

import pytest
from hypothesis import given, settings

from forestshuffle import (
    EMPTY,
    LinComb,
    TensorComb,
    admissible_families,
    contraction_fertility,
    dual_combinatorial,
    dual_conjectured_oracle,
    dual_oracle,
    dual_recursive,
    graft_at,
    graft_leaves,
    graft_linear,
    induced_subtree,
    is_admissible_direct,
    parse_forest,
    reduced_dual,
    shuffle_coefficient,
    subtree_at,
    trunk_coproduct,
    vertex_refs,
)
from forestshuffle.dual import (
    forests_on_multiset,
    graft_leaves_lin,
    graft_linear_lin,
    oracle_reduced_is_zero,
    trees_on_multiset,
)
from forestshuffle.forest import Decoration, Forest, GuardExceeded, leaf_refs
from forestshuffle.primitives import decorate_distinct, enumerate_shapes
from forestshuffle.sampling import (
    default_alphabet,
    forests_up_to,
    random_tree,
    trees_of_size,
    trees_up_to,
)
from forestshuffle.words import Word, deshuffle, word_to_tree

from conftest import trees

P = parse_forest
Q = Fraction


def T2(pairs):
    return TensorComb(2, {(P(l), P(r)): Q(c) for l, r, c in pairs})


def distinct_forest_shapes(max_size):
    from forestshuffle.suites import _distinct_forest_shapes

    for n in range(max_size + 1):
        yield from _distinct_forest_shapes(n)


class TestAdmissibleFamilies:
    def test_single_vertex(self):
        fams = admissible_families(P("a").single_tree())
        assert sorted((sorted(f.gamma), f.c_gamma) for f in fams) == [([], 1), ([()], 1)]

    def test_two_chain(self):
        fams = admissible_families(P("a[b]").single_tree())
        assert len(fams) == 4
        assert all(f.c_gamma == 1 for f in fams)
        assert {frozenset(f.gamma) for f in fams} == {
            frozenset(),
            frozenset({()}),
            frozenset({(0,)}),
            frozenset({(), (0,)}),
        }

    def test_four_vertex_example(self):
        t = P("a[b[c],d]").single_tree()
        fams = admissible_families(t)
        got = {frozenset(f.gamma): f.c_gamma for f in fams}
        v = frozenset(vertex_refs(t))
        expected = {
            frozenset(): 1,
            v: 1,
            frozenset({(0,)}): 2,          # the vertex decorated b
            frozenset({(0, 0)}): 2,        # the vertex decorated c
            v - frozenset({(0,)}): 2,
            v - frozenset({(0, 0)}): 2,
        }
        assert got == expected

    def test_fertility_gain_is_rejected(self):
        # {s,x,y} induces s[x,y] and its complement induces r[u,v]: both
        # trees, but r (one child in the ambient tree) would gain a second
        # child.  The tensor r[u,v] (x) s[x,y] never occurs in the dual
        # coproduct, so the set must not count as admissible.
        t = P("r[s[u[x],v[y]]]").single_tree()
        by_atom = {subtree_at(t, ref).decoration.text: ref for ref in vertex_refs(t)}
        gamma = frozenset(by_atom[x] for x in "sxy")
        assert induced_subtree(t, gamma) == P("s[x,y]")
        complement = frozenset(vertex_refs(t)) - gamma
        assert induced_subtree(t, complement) == P("r[u,v]")
        assert not is_admissible_direct(t, gamma)
        assert gamma not in {frozenset(f.gamma) for f in admissible_families(t)}
        assert shuffle_coefficient(t.as_forest(), P("r[u,v]"), P("s[x,y]")) == 0
        assert (P("r[u,v]"), P("s[x,y]")) not in dual_recursive(t.as_forest()).support()

    def test_lemma_matches_direct_definition(self):
        alphabet = default_alphabet(("a", "b"))
        for tf in trees_up_to(6, alphabet):
            t = tf.single_tree()
            refs = list(vertex_refs(t))
            direct = {}
            for r in range(len(refs) + 1):
                for sub in itertools.combinations(refs, r):
                    gamma = frozenset(sub)
                    if is_admissible_direct(t, gamma):
                        direct[gamma] = contraction_fertility(t, gamma)[1]
            via_lemma = {frozenset(f.gamma): f.c_gamma for f in admissible_families(t)}
            assert via_lemma == direct, t.key

    def test_complement_closure(self):
        for tf in trees_up_to(6, default_alphabet(("a", "b"))):
            t = tf.single_tree()
            refs = frozenset(vertex_refs(t))
            by_set = {frozenset(f.gamma): f.c_gamma for f in admissible_families(t)}
            for gamma, c in by_set.items():
                assert by_set[refs - gamma] == c

    def test_sides_are_trees(self):
        for tf in trees_up_to(6, default_alphabet(("a", "b"))):
            for fam in admissible_families(tf.single_tree()):
                assert fam.t_gamma.is_connected
                assert fam.t_complement.is_connected


class TestContraction:
    def test_empty_family_contracts_to_point(self):
        cont, c = contraction_fertility(P("a[b[c],d]").single_tree(), set())
        assert cont.size == 1 and c == 1

    def test_inner_leaf_family(self):
        cont, c = contraction_fertility(P("a[b[c],d]").single_tree(), {(0, 0)})
        assert cont.size == 4 and c == 2

    def test_twenty_vertex_worked_example(self):
        t = P("a[b[c[d[g,h,i,j],e,f[k[l,m[n[o[r[s,t]],p,q]]]]]]]").single_tree()
        assert t.size == 20
        by_atom = {subtree_at(t, r).decoration.text: r for r in vertex_refs(t)}
        gamma = frozenset(by_atom[x] for x in "a c d e g h i j k l m r s t".split())
        assert is_admissible_direct(t, gamma)
        assert induced_subtree(t, gamma) == P("a[c[d[g,h,i,j],e,k[l,m[r[s,t]]]]]")
        complement = frozenset(vertex_refs(t)) - gamma
        assert induced_subtree(t, complement) == P("b[f[n[o,p,q]]]")
        cont, c = contraction_fertility(t, gamma)
        assert cont.size == 14
        assert c == 18
        via_lemma = {frozenset(f.gamma): f.c_gamma for f in admissible_families(t)}
        assert via_lemma[gamma] == 18


class TestDualRecursive:
    def test_single_vertex(self):
        assert dual_recursive(P("a")) == T2([("a", "()", 1), ("()", "a", 1)])

    def test_two_chain(self):
        assert dual_recursive(P("a[b]")) == T2(
            [("a[b]", "()", 1), ("()", "a[b]", 1), ("a", "b", 1), ("b", "a", 1)]
        )

    def test_two_component_forest(self):
        assert dual_recursive(P("b[c] d")) == T2(
            [
                ("b[c] d", "()", 1),
                ("()", "b[c] d", 1),
                ("b", "c d", 2),
                ("b d", "c", 2),
                ("c", "b d", 2),
                ("c d", "b", 2),
            ]
        )

    def test_four_vertex_example_corrected(self):
        # a tempting wrong value pairs a[b,c] with d; removing the leaf d
        # would drop the root's fertility, so only b and c are removable
        assert dual_recursive(P("a[b[c],d]")) == T2(
            [
                ("a[b[c],d]", "()", 1),
                ("()", "a[b[c],d]", 1),
                ("a[b,d]", "c", 2),
                ("a[c,d]", "b", 2),
                ("b", "a[c,d]", 2),
                ("c", "a[b,d]", 2),
            ]
        )

    def test_three_component_forest_with_nested_tree(self):
        # only the component with a fertility-1 vertex has a nonzero
        # reduced part; the split coefficients are (|I|+1)(3-|I|)
        F = P("a[b,c] d e[f[g,h]]")
        assert dual_recursive(F) == T2(
            [
                ("a[b,c] d e[f[g,h]]", "()", 1),
                ("()", "a[b,c] d e[f[g,h]]", 1),
                ("e", "a[b,c] d f[g,h]", 3),
                ("f[g,h]", "a[b,c] d e", 3),
                ("a[b,c] e", "d f[g,h]", 4),
                ("a[b,c] f[g,h]", "d e", 4),
                ("d e", "a[b,c] f[g,h]", 4),
                ("d f[g,h]", "a[b,c] e", 4),
                ("a[b,c] d e", "f[g,h]", 3),
                ("a[b,c] d f[g,h]", "e", 3),
            ]
        )

    def test_reduced(self):
        assert reduced_dual(P("a")).is_zero
        assert reduced_dual(P("a[b]")) == T2([("a", "b", 1), ("b", "a", 1)])
        assert reduced_dual(P("a[b,c]")).is_zero

    def test_matches_combinatorial_distinct_shapes(self):
        for f in distinct_forest_shapes(7):
            assert dual_recursive(f) == dual_combinatorial(f), f.key

    def test_matches_combinatorial_with_repeated_decorations(self):
        for f in forests_up_to(5, default_alphabet(("a", "b"))):
            assert dual_recursive(f) == dual_combinatorial(f), f.key

    def test_cocommutative(self):
        for f in distinct_forest_shapes(6):
            d = dual_recursive(f)
            assert d == d.flip(), f.key

    def test_linear_trees_match_word_deshuffle(self):
        alphabet = default_alphabet(("a", "b"))
        for n in range(5):
            for letters in itertools.product(alphabet, repeat=n):
                w = Word(letters)
                expected = TensorComb(
                    2,
                    {
                        (word_to_tree(x), word_to_tree(y)): c
                        for (x, y), c in deshuffle(w).items()
                    },
                )
                assert dual_recursive(word_to_tree(w)) == expected


class TestDualOracle:
    def test_linear_tree_agrees_with_recursive(self):
        assert dual_oracle(P("a[b]")) == dual_recursive(P("a[b]"))

    def test_strict_duality_coefficient(self):
        assert dual_oracle(P("b[c] d")).coefficient((P("b"), P("c d"))) == Q(1, 2)
        # that value is forced by <F, f1 shuffle f2>
        assert shuffle_coefficient(P("b[c] d"), P("b"), P("c d")) == Q(1, 2)

    def test_support_matches_recursive(self):
        for f in distinct_forest_shapes(6):
            assert dual_oracle(f).support() == dual_recursive(f).support(), f.key

    def test_inverse_coefficient_relation(self):
        # the oracle is the combinatorial form with c -> 1/c, alpha -> 1/alpha
        for f in distinct_forest_shapes(6):
            assert dual_oracle(f) == dual_conjectured_oracle(f), f.key

    def test_guard(self):
        big = decorate_distinct(enumerate_shapes(9)[0])
        with pytest.raises(GuardExceeded):
            dual_oracle(big.as_forest())

    def test_basis_enumerations(self):
        a, b = Decoration(["a"]), Decoration(["b"])
        assert len(trees_on_multiset([a])) == 1
        assert len(trees_on_multiset([a, b])) == 2
        assert len(forests_on_multiset([a, b])) == 3
        assert {f.key for f in forests_on_multiset([a, a])} == {"a a", "a[a]"}


class TestGrafting:
    def test_unit_base(self):
        assert graft_leaves(EMPTY, P("a")) == LinComb.of(P("a"))
        assert graft_linear(EMPTY, P("a")) == LinComb.of(P("a"))

    def test_single_leaf(self):
        assert graft_leaves(P("a"), P("b")) == LinComb.of(P("a[b]"))

    def test_two_leaves(self):
        assert graft_leaves(P("a[b,c]"), P("d")) == LinComb(
            {P("a[b[d],c]"): Q(1), P("a[b,c[d]]"): Q(1)}
        )

    def test_repeated_leaves_accumulate(self):
        got = graft_leaves(P("a[b,b]"), P("c"))
        assert got == LinComb({P("a[b,b[c]]"): Q(2)})

    def test_linear_variant(self):
        assert graft_linear(P("a[b,c]"), P("d")).is_zero
        assert graft_linear(P("a[b]"), P("c")) == LinComb.of(P("a[b[c]]"))
        assert graft_linear(P("a"), P("b[c,d]")) == LinComb.of(P("a[b[c,d]]"))

    def test_pairing_with_trunk_coproduct(self):
        # <T1 linear-graft T2, T> equals the coefficient of T1 (x) T2 in the
        # trunk coproduct of T, exhaustively in degree <= 6
        alphabet = default_alphabet(("a", "b"))
        pool = {0: [EMPTY]}
        for s in range(1, 7):
            pool[s] = list(trees_of_size(s, alphabet))
        for n in range(1, 7):
            accumulated: dict[Forest, dict[tuple[Forest, Forest], Fraction]] = {}
            for k in range(n + 1):
                for t1 in pool[k]:
                    for t2 in pool[n - k]:
                        for f, c in graft_linear(t1, t2).items():
                            accumulated.setdefault(f, {})
                            key = (t1, t2)
                            accumulated[f][key] = accumulated[f].get(key, Q(0)) + c
            for tf in pool[n]:
                got = {k: v for k, v in accumulated.get(tf, {}).items() if v}
                assert got == dict(trunk_coproduct(tf).items()), tf.key

    def test_pre_lie_identities(self):
        rng = random.Random(9)
        alphabet = default_alphabet(("a", "b"))
        for _ in range(120):
            x = LinComb.of(random_tree(rng, rng.randint(1, 3), alphabet))
            y = LinComb.of(random_tree(rng, rng.randint(1, 3), alphabet))
            z = LinComb.of(random_tree(rng, rng.randint(1, 3), alphabet))
            op = graft_linear_lin
            assoc = op(op(x, y), z) - op(x, op(y, z))
            assert assoc == op(op(y, x), z) - op(y, op(x, z))
            assert assoc == op(op(x, z), y) - op(x, op(z, y))
            lop = graft_leaves_lin
            left = lop(lop(x, y), z) - lop(x, lop(y, z))
            assert left == lop(lop(x, z), y) - lop(x, lop(z, y))

    def test_leaf_grafting_never_primitive(self):
        rng = random.Random(3)
        alphabet = default_alphabet(("a", "b"))
        for _ in range(40):
            base = random_tree(rng, rng.randint(1, 4), alphabet)
            scion = random_tree(rng, rng.randint(1, 6 - base.size or 1), alphabet)
            t = base.single_tree()
            ref = rng.choice(leaf_refs(t))
            grafted = graft_at(t, ref, scion)
            assert shuffle_coefficient(grafted.as_forest(), base, scion) != 0


class TestOraclePrimitivity:
    def test_agrees_with_structure_small(self):
        from forestshuffle.primitives import is_primitive

        for n in range(1, 6):
            for shape in enumerate_shapes(n):
                t = decorate_distinct(shape)
                assert oracle_reduced_is_zero(t.as_forest()) == is_primitive(t)
