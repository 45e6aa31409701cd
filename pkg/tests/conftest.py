import hypothesis
import hypothesis.strategies as st

from homometric import Tree, prufer_to_tree

hypothesis.settings.register_profile(
    "suite", deadline=None, max_examples=60,
    suppress_health_check=[hypothesis.HealthCheck.too_slow])
hypothesis.settings.load_profile("suite")


@st.composite
def prufer_trees(draw, min_n=1, max_n=40):
    """Uniform labeled tree via a random decoder sequence."""
    n = draw(st.integers(min_n, max_n))
    seq = (draw(st.lists(st.integers(0, n - 1), min_size=n - 2, max_size=n - 2))
           if n > 2 else [])
    return prufer_to_tree(n, seq)


@st.composite
def trees_with_two_sets(draw, max_n=32):
    """A tree plus two disjoint same-size vertex subsets."""
    t = draw(prufer_trees(min_n=2, max_n=max_n))
    verts = list(range(t.n))
    picked = draw(st.permutations(verts))
    k = draw(st.integers(1, t.n // 2))
    return t, sorted(picked[:k]), sorted(picked[k:2 * k])


@st.composite
def leg_vectors(draw, max_s=12, max_len=8):
    s = draw(st.integers(1, max_s))
    return draw(st.lists(st.integers(1, max_len), min_size=s, max_size=s))


def tree_edges(t: Tree):
    return t.edges()
