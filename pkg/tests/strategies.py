"""Hypothesis strategies shared by the property tests."""

from hypothesis import strategies as st

from trivext.modules import FDModule


@st.composite
def representations(draw, alg, max_dim: int = 2, entries=(0, 1, -1, 2)):
    """A module over a quiver algebra without relations: any arrow matrices will do."""
    dims = draw(st.lists(st.integers(0, max_dim), min_size=alg.n_vertices, max_size=alg.n_vertices))
    if not any(dims):
        dims[draw(st.integers(0, alg.n_vertices - 1))] = 1
    arrows = {}
    for g in alg.generators:
        s, t = alg.ends[g]
        arrows[alg.labels[g]] = [[draw(st.sampled_from(entries)) for _ in range(dims[t])] for _ in range(dims[s])]
    return FDModule.from_representation(alg, dims, arrows)


def euler_form(alg, x, y) -> int:
    """``sum x_v y_v - sum over arrows s -> t of x_s y_t`` for a hereditary quiver algebra."""
    out = sum(a * b for a, b in zip(x, y))
    for g in alg.generators:
        s, t = alg.ends[g]
        out -= x[s] * y[t]
    return out
