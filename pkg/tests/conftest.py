from __future__ import annotations

import hypothesis.strategies as st

from forestshuffle import Decoration, Forest, RootedTree

ATOMS = ("a", "b", "c")

decorations = st.builds(lambda a: Decoration((a,)), st.sampled_from(ATOMS))

trees = st.recursive(
    st.builds(RootedTree, decorations),
    lambda inner: st.builds(
        RootedTree, decorations, st.lists(inner, min_size=1, max_size=3)
    ),
    max_leaves=5,
)

forests = st.builds(lambda ts: Forest(ts), st.lists(trees, max_size=3))

nonempty_forests = st.builds(lambda ts: Forest(ts), st.lists(trees, min_size=1, max_size=3))

weights = st.sampled_from([0, 1, -1])
