"""Shared oracles and hypothesis strategies.

naive_rref / naive_matmul are deliberately plain textbook implementations
over Fraction (no integer scaling, no content reduction): they are the
independent reference the fast kernels are tested against.
"""

from fractions import Fraction

from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

from ratspec.ratmat import Mat

settings.register_profile(
    "ratspec",
    max_examples=40,
    deadline=None,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("ratspec")


def naive_rref(rows, cols, data):
    """Plain rational Gauss-Jordan; returns (flat data, pivot columns)."""
    m = [list(data[i * cols:(i + 1) * cols]) for i in range(rows)]
    pivots = []
    r = 0
    for c in range(cols):
        pr = next((i for i in range(r, rows) if m[i][c] != 0), None)
        if pr is None:
            continue
        m[r], m[pr] = m[pr], m[r]
        pv = m[r][c]
        m[r] = [x / pv for x in m[r]]
        for i in range(rows):
            if i != r and m[i][c] != 0:
                f = m[i][c]
                m[i] = [a - f * b for a, b in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
    flat = [x for row in m for x in row]
    return flat, tuple(pivots)


def naive_matmul(m, k, n, a, b):
    out = []
    for i in range(m):
        for j in range(n):
            s = Fraction(0)
            for t in range(k):
                s += a[i * k + t] * b[t * n + j]
            out.append(s)
    return out


rationals = st.builds(Fraction,
                      st.integers(min_value=-4, max_value=4),
                      st.integers(min_value=1, max_value=3))


def matrices(max_rows=4, max_cols=4, min_rows=1, min_cols=1):
    def build(shape):
        rows, cols = shape
        return st.builds(lambda d: Mat(rows, cols, d),
                         st.lists(rationals, min_size=rows * cols,
                                  max_size=rows * cols))
    return st.tuples(st.integers(min_rows, max_rows),
                     st.integers(min_cols, max_cols)).flatmap(build)


def square_matrices(max_dim=4, min_dim=1):
    def build(n):
        return st.builds(lambda d: Mat(n, n, d),
                         st.lists(rationals, min_size=n * n, max_size=n * n))
    return st.integers(min_dim, max_dim).flatmap(build)
