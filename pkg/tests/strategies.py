from __future__ import annotations

from itertools import combinations

from hypothesis import strategies as st

from pseudosolvable.graph import SimpleGraph


@st.composite
def graphs(draw, min_vertices=0, max_vertices=8):
    n = draw(st.integers(min_vertices, max_vertices))
    vs = [f"v{i}" for i in range(n)]
    pairs = list(combinations(vs, 2))
    mask = draw(st.lists(st.booleans(), min_size=len(pairs), max_size=len(pairs)))
    return SimpleGraph.build(vs, [p for p, keep in zip(pairs, mask) if keep])
