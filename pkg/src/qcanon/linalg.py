"""Small exact linear algebra over the rational-function scalars.

All matrices are lists of lists of RationalScalar.  Sizes here stay modest
(weight-space dimensions), so plain Gaussian elimination over the fraction
field is fine.
"""

from .scalar import RationalScalar


def _is_zero(x):
    return x.is_zero()


def rank_and_pivot_columns(rows):
    """Row-reduce a copy of the matrix; return (rank, pivot column indices).

    Pivot columns are chosen greedily left to right, so they are the first
    columns that are linearly independent of their predecessors.
    """
    if not rows:
        return 0, ()
    m = [list(r) for r in rows]
    nrows, ncols = len(m), len(m[0])
    pivots = []
    r = 0
    for c in range(ncols):
        pr = None
        for i in range(r, nrows):
            if not m[i][c].is_zero():
                pr = i
                break
        if pr is None:
            continue
        m[r], m[pr] = m[pr], m[r]
        inv = m[r][c].inverse()
        m[r] = [x * inv for x in m[r]]
        for i in range(nrows):
            if i != r and not m[i][c].is_zero():
                f = m[i][c]
                m[i] = [x - f * y for x, y in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == nrows:
            break
    return r, tuple(pivots)


def solve_square(a, b):
    """Solve A x = b for square exact A; raises ValueError if singular."""
    n = len(a)
    m = [list(row) + [bb] for row, bb in zip(a, b)]
    for c in range(n):
        pr = None
        for i in range(c, n):
            if not m[i][c].is_zero():
                pr = i
                break
        if pr is None:
            raise ValueError("singular system")
        m[c], m[pr] = m[pr], m[c]
        inv = m[c][c].inverse()
        m[c] = [x * inv for x in m[c]]
        for i in range(n):
            if i != c and not m[i][c].is_zero():
                f = m[i][c]
                m[i] = [x - f * y for x, y in zip(m[i], m[c])]
    return [m[i][n] for i in range(n)]


def invert(a):
    """Inverse of a square exact matrix."""
    n = len(a)
    one = RationalScalar.one()
    zero = RationalScalar.zero()
    cols = []
    for j in range(n):
        e = [one if i == j else zero for i in range(n)]
        cols.append(solve_square(a, e))
    return [[cols[j][i] for j in range(n)] for i in range(n)]


def mat_mul(a, b):
    """Matrix product of exact matrices."""
    n, k = len(a), len(b)
    p = len(b[0]) if b else 0
    zero = RationalScalar.zero()
    out = [[zero for _ in range(p)] for _ in range(n)]
    for i in range(n):
        for t in range(k):
            x = a[i][t]
            if x.is_zero():
                continue
            row = b[t]
            oi = out[i]
            for j in range(p):
                if not row[j].is_zero():
                    oi[j] = oi[j] + x * row[j]
    return out


def mat_vec(a, v):
    zero = RationalScalar.zero()
    out = []
    for row in a:
        acc = zero
        for x, y in zip(row, v):
            if not x.is_zero() and not y.is_zero():
                acc = acc + x * y
        out.append(acc)
    return out
