"""Exact rational arithmetic helpers.

Everything in this package computes over Q.  `Rat` is gmpy2's mpq when
available (much faster inside the simplex inner loop), otherwise
fractions.Fraction.  Both keep values in lowest terms with positive
denominator, interoperate with int, and hash consistently.
"""

from __future__ import annotations

import math
import re

try:
    from gmpy2 import mpq as Rat
except ImportError:  # pragma: no cover - gmpy2 is a declared dependency
    from fractions import Fraction as Rat

QQ = Rat  # convenience alias for callers that prefer a noun

ZERO = Rat(0)
ONE = Rat(1)

_RAT_RE = re.compile(r"^[+-]?\d+(/\d+)?$")


def rat(value) -> Rat:
    """Coerce ints, strings like '3' or '-7/2', and Rat values to Rat."""
    if isinstance(value, (int,)) or type(value) is type(ZERO):
        return Rat(value)
    if isinstance(value, str):
        s = value.strip()
        if not _RAT_RE.match(s):
            raise ValueError(f"malformed rational {value!r}")
        num, _, den = s.partition("/")
        if den:
            d = int(den)
            if d == 0:
                raise ValueError(f"malformed rational {value!r} (zero denominator)")
            return Rat(int(num), d)
        return Rat(int(num))
    if isinstance(value, float):
        raise TypeError("floats are banned; pass an int, string, or Rat")
    return Rat(value)


def rat_str(q) -> str:
    """Serialize to 'p' or 'p/q' (q > 1), the wire format used everywhere."""
    q = Rat(q)
    if q.denominator == 1:
        return str(q.numerator)
    return f"{q.numerator}/{q.denominator}"


def rfloor(q) -> int:
    return int(math.floor(Rat(q)))


def rceil(q) -> int:
    return int(math.ceil(Rat(q)))


def as_int(q) -> int:
    q = Rat(q)
    if q.denominator != 1:
        raise ValueError(f"{q} is not an integer")
    return int(q.numerator)


def vec(*entries) -> tuple:
    return tuple(rat(e) for e in entries)


def vec_add(u, v):
    return tuple(a + b for a, b in zip(u, v, strict=True))


def vec_sub(u, v):
    return tuple(a - b for a, b in zip(u, v, strict=True))


def vec_scale(t, u):
    t = Rat(t)
    return tuple(t * a for a in u)


def dot(u, v):
    return sum((a * b for a, b in zip(u, v, strict=True)), start=ZERO)


def primitive(v) -> tuple:
    """Scale a nonzero rational vector to coprime integers, first nonzero > 0
    not enforced; direction is preserved exactly."""
    v = tuple(Rat(x) for x in v)
    if all(x == 0 for x in v):
        raise ValueError("zero vector has no primitive representative")
    den = 1
    for x in v:
        den = den * x.denominator // math.gcd(den, int(x.denominator))
    ints = [int(x.numerator) * (den // int(x.denominator)) for x in v]
    g = 0
    for n in ints:
        g = math.gcd(g, n)
    return tuple(n // g for n in ints)


def solve_linear(matrix, rhs):
    """Solve M x = b exactly by Gaussian elimination.

    matrix: list of rows (Rat), rhs: list (Rat).  Returns the unique solution
    or raises ValueError if the system is singular/inconsistent.  Square only.
    """
    n = len(matrix)
    if any(len(row) != n for row in matrix):
        raise ValueError("square systems only")
    aug = [[Rat(x) for x in row] + [Rat(b)] for row, b in zip(matrix, rhs, strict=True)]
    for col in range(n):
        piv = next((r for r in range(col, n) if aug[r][col] != 0), None)
        if piv is None:
            raise ValueError("singular system")
        aug[col], aug[piv] = aug[piv], aug[col]
        prow = aug[col]
        inv = 1 / prow[col]
        aug[col] = [x * inv for x in prow]
        prow = aug[col]
        for r in range(n):
            if r != col and aug[r][col] != 0:
                f = aug[r][col]
                aug[r] = [x - f * y for x, y in zip(aug[r], prow)]
    return tuple(aug[r][n] for r in range(n))


def matrix_rank(rows) -> int:
    """Exact rank of a list of rational row vectors."""
    work = [list(map(Rat, row)) for row in rows if any(Rat(x) != 0 for x in row)]
    rank = 0
    ncols = len(work[0]) if work else 0
    col = 0
    while work and col < ncols and rank < len(work):
        piv = next((r for r in range(rank, len(work)) if work[r][col] != 0), None)
        if piv is None:
            col += 1
            continue
        work[rank], work[piv] = work[piv], work[rank]
        prow = work[rank]
        for r in range(len(work)):
            if r != rank and work[r][col] != 0:
                f = work[r][col] / prow[col]
                work[r] = [x - f * y for x, y in zip(work[r], prow)]
        rank += 1
        col += 1
    return rank


def det3(a, b, c) -> Rat:
    """Determinant of the 3x3 matrix with rows a, b, c."""
    return (
        a[0] * (b[1] * c[2] - b[2] * c[1])
        - a[1] * (b[0] * c[2] - b[2] * c[0])
        + a[2] * (b[0] * c[1] - b[1] * c[0])
    )


def cross2(u, v) -> Rat:
    return u[0] * v[1] - u[1] * v[0]
