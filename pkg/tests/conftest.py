import itertools

from hypothesis import strategies as st

from distlap import from_edge_list


@st.composite
def connected_graphs(draw, min_n=2, max_n=9, tree=False):
    """Random spanning tree (parent of i drawn below i), optional extra
    edges, then a random relabeling."""
    n = draw(st.integers(min_n, max_n))
    edges = {(draw(st.integers(0, i - 1)), i) for i in range(1, n)}
    if not tree:
        others = [p for p in itertools.combinations(range(n), 2) if p not in edges]
        if others:
            edges |= set(draw(st.lists(st.sampled_from(others), unique=True)))
    perm = draw(st.permutations(range(n)))
    return from_edge_list(n, [(perm[u], perm[v]) for u, v in edges])


def vectors(n):
    return st.lists(st.floats(-10, 10, allow_nan=False), min_size=n, max_size=n)


# filled by test_acceptance; printed once at the end of the run
ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.write_sep("=", "acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES, key=lambda s: int(s.split()[1].rstrip(":"))):
            terminalreporter.write_line(line)
