from hypothesis import strategies as st

from sccheck.graph import Graph


@st.composite
def graphs(draw, max_vertices: int = 8) -> Graph:
    n = draw(st.integers(min_value=0, max_value=max_vertices))
    if n == 0:
        return Graph(0, [])
    vertex = st.integers(min_value=0, max_value=n - 1)
    edges = draw(st.lists(st.tuples(vertex, vertex), max_size=n * n))
    return Graph.from_edges(n, edges)
