"""Independent little oracles used by the tests.

These deliberately avoid the package's elimination/representative code:
dense row-reduction over Fraction, brute-force monomial enumeration, and a
direct nullity-minus-rank homology count.
"""

from fractions import Fraction
from itertools import product


def dense_rank(rows):
    """Rank of a dense matrix (list of list of Fractions), textbook
    elimination with leftmost-pivot choice."""
    rows = [list(map(Fraction, r)) for r in rows]
    rank = 0
    cols = len(rows[0]) if rows else 0
    col = 0
    while rank < len(rows) and col < cols:
        pivot = next((i for i in range(rank, len(rows)) if rows[i][col]), None)
        if pivot is None:
            col += 1
            continue
        rows[rank], rows[pivot] = rows[pivot], rows[rank]
        pv = rows[rank][col]
        rows[rank] = [x / pv for x in rows[rank]]
        for i in range(len(rows)):
            if i != rank and rows[i][col]:
                c = rows[i][col]
                rows[i] = [a - c * b for a, b in zip(rows[i], rows[rank])]
        rank += 1
        col += 1
    return rank


def brute_monomials(degrees, odd, n):
    """All exponent tuples of total degree n (independent enumeration)."""
    ranges = []
    for d, o in zip(degrees, odd):
        top = 1 if o else n // d
        ranges.append(range(top + 1))
    out = [
        e
        for e in product(*ranges)
        if sum(a * b for a, b in zip(e, degrees)) == n
    ]
    return sorted(out)


def dense_slice(complex_, n):
    """Dense matrix of the degree-n slice of a complex (rows = target)."""
    source = complex_.basis(n)
    target = complex_.basis(n + 1)
    tindex = {b: i for i, b in enumerate(target)}
    mat = [[Fraction(0)] * len(source) for _ in target]
    for j, obj in enumerate(source):
        for coeff, img in complex_.differential(obj):
            mat[tindex[img]][j] += coeff
    return mat


def brute_cohomology_dim(complex_, n):
    """dim H^n = nullity(d_n) - rank(d_{n-1}) by dense elimination."""
    d_in = dense_slice(complex_, n - 1)
    d_out = dense_slice(complex_, n)
    dim_n = len(complex_.basis(n))
    rank_out = dense_rank(d_out) if d_out else 0
    rank_in = dense_rank(d_in) if d_in else 0
    return (dim_n - rank_out) - rank_in
