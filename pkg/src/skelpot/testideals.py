"""Frobenius calculus and test ideals for monomial ideals over F_p.

Monomial ideals make every Frobenius-side operation exactly computable:
bracket powers scale exponents, bracket roots floor-divide them, and the
test ideal tau(a^lambda) is the stable value of the increasing chain
(a^ceil(lambda p^e))^[1/p^e].  A Newton-polyhedron route computes the same
ideal from the interior condition u + (1,..,1) in int(lambda * Newt(a)); it
shares no code with the stabilization loop and is used to cross-validate it.
"""

from __future__ import annotations

import bisect
from dataclasses import dataclass

from .lp import LinearProgram, lp_solve
from .rat import Rat, rat, rceil, rfloor

VAR_NAMES = ("x", "y", "z", "w")


class TestIdealError(Exception):
    pass


def is_prime(p: int) -> bool:
    if p < 2:
        return False
    d = 2
    while d * d <= p:
        if p % d == 0:
            return False
        d += 1
    return True


def _check_prime(p):
    if not isinstance(p, int) or not is_prime(p):
        raise TestIdealError(f"p must be prime, got {p!r}")


def _antichain(vectors):
    """Minimal elements under componentwise <=, sorted.  Lex-sorted sweep:
    an accepted point can never be dominated by a later one, and dominance
    queries reduce to a running minimum (n=2) or a y/z staircase (n=3)."""
    vecs = sorted(set(vectors))
    if not vecs:
        return ()
    n = len(vecs[0])
    if n == 1:
        return (vecs[0],)
    if n == 2:
        out = []
        best = None
        for v in vecs:
            if best is None or v[1] < best:
                out.append(v)
                best = v[1]
        return tuple(out)
    if n == 3:
        out = []
        ys: list = []  # frontier y values, ascending
        zs: list = []  # matching minimal z values, strictly descending
        for v in vecs:
            _, y, z = v
            i = bisect.bisect_right(ys, y)
            if i > 0 and zs[i - 1] <= z:
                continue
            out.append(v)
            j = i
            while j < len(ys) and zs[j] >= z:
                j += 1
            ys[i:j] = [y]
            zs[i:j] = [z]
        return tuple(out)
    out = []
    for v in vecs:
        if not any(all(g[i] <= v[i] for i in range(n)) for g in out):
            out.append(v)
    return tuple(out)


class MonomialIdeal:
    """Generators form a minimal antichain; () is the zero ideal and
    ((0,..,0),) the unit ideal."""

    __slots__ = ("n", "gens")

    def __init__(self, n: int, gens):
        if not isinstance(n, int) or n < 1:
            raise TestIdealError("need at least one variable")
        rows = []
        for g in gens:
            g = tuple(g)
            if len(g) != n or any(not isinstance(e, int) or e < 0 for e in g):
                raise TestIdealError(f"bad exponent vector {g!r} for n={n}")
            rows.append(g)
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "gens", _antichain(rows))

    def __setattr__(self, *a):
        raise AttributeError("MonomialIdeal is immutable")

    def __eq__(self, other):
        return (
            isinstance(other, MonomialIdeal)
            and self.n == other.n
            and self.gens == other.gens
        )

    def __hash__(self):
        return hash((self.n, self.gens))

    def __repr__(self):
        if self.is_zero():
            return f"MonomialIdeal({self.n}, 0)"
        names = VAR_NAMES[: self.n]
        terms = []
        for g in self.gens:
            parts = [
                nm if e == 1 else f"{nm}^{e}"
                for nm, e in zip(names, g)
                if e > 0
            ]
            terms.append("*".join(parts) if parts else "1")
        return f"({', '.join(terms)})"

    def is_zero(self) -> bool:
        return not self.gens

    def is_unit(self) -> bool:
        return self.gens == ((0,) * self.n,)

    def contains_exponent(self, u) -> bool:
        u = tuple(u)
        return any(all(g[i] <= u[i] for i in range(self.n)) for g in self.gens)

    def contains(self, other: "MonomialIdeal") -> bool:
        if self.n != other.n:
            raise TestIdealError("variable count mismatch")
        return all(self.contains_exponent(g) for g in other.gens)

    def __le__(self, other):
        return other.contains(self)

    def __mul__(self, other: "MonomialIdeal") -> "MonomialIdeal":
        if self.n != other.n:
            raise TestIdealError("variable count mismatch")
        if self.is_zero() or other.is_zero():
            return MonomialIdeal(self.n, ())
        sums = [
            tuple(a[i] + b[i] for i in range(self.n))
            for a in self.gens
            for b in other.gens
        ]
        return MonomialIdeal(self.n, sums)

    def __pow__(self, m: int) -> "MonomialIdeal":
        if not isinstance(m, int) or m < 0:
            raise TestIdealError("power must be a nonnegative integer")
        result = MonomialIdeal(self.n, ((0,) * self.n,))
        base = self
        while m:
            if m & 1:
                result = result * base
            base = base * base
            m >>= 1
        return result

    def __add__(self, other: "MonomialIdeal") -> "MonomialIdeal":
        if self.n != other.n:
            raise TestIdealError("variable count mismatch")
        return MonomialIdeal(self.n, self.gens + other.gens)

    def intersect(self, other: "MonomialIdeal") -> "MonomialIdeal":
        if self.n != other.n:
            raise TestIdealError("variable count mismatch")
        if self.is_zero() or other.is_zero():
            return MonomialIdeal(self.n, ())
        lcms = [
            tuple(max(a[i], b[i]) for i in range(self.n))
            for a in self.gens
            for b in other.gens
        ]
        return MonomialIdeal(self.n, lcms)


def unit_ideal(n: int) -> MonomialIdeal:
    return MonomialIdeal(n, ((0,) * n,))


def zero_ideal(n: int) -> MonomialIdeal:
    return MonomialIdeal(n, ())


def frobenius_power(a: MonomialIdeal, p: int, e: int) -> MonomialIdeal:
    """a^[p^e]: generators scaled componentwise by p^e."""
    _check_prime(p)
    if e < 0:
        raise TestIdealError("e must be >= 0")
    q = p**e
    return MonomialIdeal(a.n, (tuple(x * q for x in g) for g in a.gens))


def frobenius_root(a: MonomialIdeal, p: int, e: int) -> MonomialIdeal:
    """a^[1/p^e]: the smallest b with a contained in b^[p^e]; for monomial
    ideals this is generated by the componentwise floors of the generators."""
    _check_prime(p)
    if e < 0:
        raise TestIdealError("e must be >= 0")
    q = p**e
    return MonomialIdeal(a.n, (tuple(x // q for x in g) for g in a.gens))


class _PowerCache:
    """Minimal generators of a^j, advanced multiplicatively.  Only the
    largest computed power is kept; the e-loop of the test ideal reuses it,
    so a whole stabilization run costs one pass up to the final exponent."""

    __slots__ = ("base", "j", "gens")

    def __init__(self, a: MonomialIdeal):
        self.base = a
        self.j = 1
        self.gens = a.gens

    def power_gens(self, m: int):
        if m < self.j:
            # rare non-monotone request: recompute from scratch
            cur, j = self.base.gens, 1
        else:
            cur, j = self.gens, self.j
        bg = self.base.gens
        n = self.base.n
        while j < m:
            cur = _antichain(
                tuple(a[i] + b[i] for i in range(n)) for a in cur for b in bg
            )
            j += 1
        if j > self.j:
            self.j, self.gens = j, cur
        return cur


_BB_NODE_LIMIT = 20_000


def _count_feasible(gens, w, m: int) -> bool:
    """Is there c in N^g with sum(c) = m and sum(c_k gens_k) <= w
    componentwise?  Equivalent to: the max total count packable under the
    capacity vector w is >= m (dropping generators from a larger packing
    never raises the weighted sums)."""
    if any(x < 0 for x in w):
        return False
    if any(all(m * u[i] <= w[i] for i in range(len(w))) for u in gens):
        return True
    g = len(gens)
    base_rows = [
        (tuple(Rat(u[i]) for u in gens), "<=", Rat(w[i])) for i in range(len(w))
    ]
    ones = (Rat(1),) * g
    nodes = 0

    def search(extra) -> bool:
        nonlocal nodes
        nodes += 1
        if nodes > _BB_NODE_LIMIT:
            raise TestIdealError("feasibility search exceeded its node budget")
        res = lp_solve(
            LinearProgram(objective=ones, constraints=base_rows + extra, nonneg=True)
        )
        if res.status == "infeasible" or res.value < m:
            return False
        point = res.point
        floors = [rfloor(x) for x in point]
        if sum(floors) >= m:
            return True
        i = next(k for k in range(g) if point[k] != floors[k])
        unit = tuple(Rat(1) if k == i else Rat(0) for k in range(g))
        return search(extra + [(unit, "<=", Rat(floors[i]))]) or search(
            extra + [(unit, ">=", Rat(floors[i] + 1))]
        )

    return search([])


def _least_member(member1, hi: int):
    """Least t in [0, hi] with member1(t), for monotone member1; None if
    even hi fails."""
    if not member1(hi):
        return None
    lo = 0
    while lo < hi:
        mid = (lo + hi) // 2
        if member1(mid):
            hi = mid
        else:
            lo = mid + 1
    return lo


def _frontier2(member2, by: int, bz: int):
    """Minimal elements of an up-closed subset of [0,by] x [0,bz]."""
    out = []
    prev = bz
    for y in range(by + 1):
        z = _least_member(lambda t: member2(y, t), prev)
        if z is None:
            continue
        if not out or z < prev:
            out.append((y, z))
        prev = z
        if z == 0:
            break
    return out


def _root_by_queries(a: MonomialIdeal, m: int, p: int, e: int) -> MonomialIdeal:
    """(a^m)^[1/p^e] without materializing a^m: v is in the root iff
    q*v + (q-1)*(1,..,1) lies in the exponent set of a^m (q = p^e), an
    up-closed criterion probed by count-feasibility queries.  The minimal
    solutions live in a box of size ~ (m/q) * max exponent, so the cost is
    independent of m itself."""
    q = p**e
    gens = a.gens
    n = a.n
    box = tuple(
        max(0, rceil(Rat(m * max(u[i] for u in gens) - q + 1, q))) for i in range(n)
    )
    memo = {}

    def member(v) -> bool:
        got = memo.get(v)
        if got is None:
            w = tuple(q * vi + q - 1 for vi in v)
            got = memo[v] = _count_feasible(gens, w, m)
        return got

    assert member(box)  # every coordinate constraint is slack at the corner
    if n == 1:
        mins = [(_least_member(lambda t: member((t,)), box[0]),)]
    elif n == 2:
        mins = _frontier2(lambda y, z: member((y, z)), box[0], box[1])
    else:
        limit = _frontier2(lambda y, z: member((box[0], y, z)), box[1], box[2])
        cand = []
        for t in range(box[0] + 1):
            front = _frontier2(lambda y, z: member((t, y, z)), box[1], box[2])
            cand.extend((t, y, z) for y, z in front)
            if front == limit:
                break
        mins = _antichain(cand)
    return MonomialIdeal(n, mins)


_QUERY_LIMIT = 64


def _power_root(
    a: MonomialIdeal, m: int, p: int, e: int, cache: _PowerCache | None = None
) -> MonomialIdeal:
    """(a^m)^[1/p^e]: componentwise floors of the minimal generators of
    a^m, re-minimalized.  Beyond _QUERY_LIMIT the power is no longer
    materialized; membership queries take over (n <= 3)."""
    if a.is_zero():
        return zero_ideal(a.n) if m > 0 else unit_ideal(a.n)
    if m == 0 or a.is_unit():
        return unit_ideal(a.n)
    q = p**e
    if len(a.gens) == 1:
        g = a.gens[0]
        return MonomialIdeal(a.n, (tuple((x * m) // q for x in g),))
    if e > 0 and a.n <= 3 and m > _QUERY_LIMIT:
        return _root_by_queries(a, m, p, e)
    if cache is None:
        cache = _PowerCache(a)
    gens = cache.power_gens(m)
    return MonomialIdeal(a.n, (tuple(x // q for x in g) for g in gens))


def _stop_exponent(b: MonomialIdeal, lam, slack: int, p: int) -> int:
    """Smallest e such that the Frobenius-root chain at q = p^e provably
    equals its union.

    The chain member at q is J = (b^cnt)^[1/q] with cnt <= lam*q + slack.
    Two elementary facts pin the union down at a single finite index:

    * every u in J has <nu, u+1> > lam*h(nu) for each supporting direction
      nu >= 0 of Newt(b) with h(nu) = min over generators of <nu, gen>
      (divide the defining inequality of q*u + (q-1)*1 by q);
    * conversely, if u clears every such inequality by at least 1/den(lam)
      -- and any strict rational gap is at least that big -- then rounding
      a real decomposition of q*(u+1) shows q*u + (q-1)*1 really is a sum
      of cnt generators plus slop, once q >= q* below.  The floor-rounding
      wastes at most (g-1) generators, hence the (g-1)*U correction.

    Consecutive-agreement stopping is NOT sound here: chains exist that
    pause for several steps and then grow (e.g. (y^3, x^3*y) at lambda=3/4,
    p=2 pauses for e in {2,3,4} and picks up x at e=5)."""
    lam = rat(lam)
    gens = b.gens
    g = len(gens)
    n = b.n
    cap = tuple(max(u[i] for u in gens) for i in range(n))
    shift = tuple(1 + (g - 1) * cap[i] for i in range(n))
    den = int(lam.denominator)
    worst = 1
    for nu in newton_normals(b):
        h = min(sum(c * x for c, x in zip(nu, u)) for u in gens)
        worst = max(worst, slack * h + sum(c * s for c, s in zip(nu, shift)))
    qstar = den * worst
    e = 1
    while p**e < qstar:
        e += 1
    return e


def test_ideal(a: MonomialIdeal, lam, p: int) -> MonomialIdeal:
    """tau(a^lambda): the union of the increasing chain
    (a^ceil(lambda p^e))^[1/p^e], evaluated at one provably-stable index
    (see _stop_exponent).  At most 3 variables."""
    _check_prime(p)
    lam = rat(lam)
    if lam < 0:
        raise TestIdealError("exponent must be >= 0")
    if lam == 0 or a.is_unit():
        return unit_ideal(a.n)
    if a.is_zero():
        return zero_ideal(a.n)
    e = _stop_exponent(a, lam, 1, p)
    return _power_root(a, rceil(lam * p**e), p, e)


# ---------------------------------------------------------------------------
# Graded sequences and asymptotic test ideals
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class GradedSequence:
    """a_m for m >= 1: either powers of a fixed ideal or an explicit table
    (checked for a_m * a_n <= a_{m+n} on all applicable pairs)."""

    kind: str
    base: MonomialIdeal | None = None
    entries: tuple = ()

    @classmethod
    def powers(cls, b: MonomialIdeal) -> "GradedSequence":
        if b.is_zero():
            raise TestIdealError("power sequences of the zero ideal are all zero")
        return cls(kind="powers", base=b)

    @classmethod
    def table(cls, mapping) -> "GradedSequence":
        rows = tuple(sorted((int(m), ideal) for m, ideal in dict(mapping).items()))
        if not rows:
            raise TestIdealError("empty table")
        if any(m < 1 for m, _ in rows):
            raise TestIdealError("table indices start at 1")
        n = rows[0][1].n
        if any(ideal.n != n for _, ideal in rows):
            raise TestIdealError("table entries must share the variable count")
        if all(ideal.is_zero() for _, ideal in rows):
            raise TestIdealError("some a_m must be nonzero")
        table = dict(rows)
        for m, am in rows:
            for k, ak in rows:
                if m + k in table and not table[m + k].contains(am * ak):
                    raise TestIdealError(
                        f"multiplicativity fails: a_{m} * a_{k} is not "
                        f"inside a_{m + k}"
                    )
        return cls(kind="table", entries=rows)

    def ideal(self, m: int) -> MonomialIdeal:
        if m < 1:
            raise TestIdealError("sequence indices start at 1")
        if self.kind == "powers":
            return self.base**m
        for k, ideal in self.entries:
            if k == m:
                return ideal
        raise TestIdealError(f"the table does not provide a_{m}")

    def member_test_ideal(self, m: int, lam, p: int, cache=None) -> MonomialIdeal:
        """tau(a_m^{lam}) without materializing huge powers in the powers
        case: the chain count m*ceil(lam*q) exceeds (m*lam)*q by less than
        m, so the stable index comes from _stop_exponent with slack m on
        the base ideal."""
        lam = rat(lam)
        if self.kind != "powers":
            return test_ideal(self.ideal(m), lam, p)
        b = self.base
        if lam == 0 or b.is_unit():
            return unit_ideal(b.n)
        e = _stop_exponent(b, m * lam, m, p)
        return _power_root(b, m * rceil(lam * p**e), p, e, cache)


_CHAIN_LIMIT = 8


def asymptotic_test_ideal(seq: GradedSequence, lam, p: int) -> MonomialIdeal:
    """tau(a_.^lambda): evaluate tau(a_m^{lambda/m}) along m = m0 * 2^j with
    m0 the denominator of lambda, stopping at the first consecutive
    agreement on a nonzero value.  Errors when every tested ideal is zero
    or the table runs out before stabilization."""
    _check_prime(p)
    lam = rat(lam)
    if lam < 0:
        raise TestIdealError("exponent must be >= 0")
    m0 = int(lam.denominator) if lam > 0 else 1
    n = seq.base.n if seq.kind == "powers" else seq.entries[0][1].n
    if lam == 0:
        return unit_ideal(n)
    prev = None
    seen_nonzero = False
    cache = _PowerCache(seq.base) if seq.kind == "powers" else None
    for j in range(_CHAIN_LIMIT + 1):
        m = m0 * 2**j
        if seq.kind == "powers":
            seen_nonzero = True  # powers of a nonzero ideal stay nonzero
        elif not seq.ideal(m).is_zero():
            seen_nonzero = True
        cur = seq.member_test_ideal(m, lam / m, p, cache)
        # tau of a member is zero exactly when the member is zero, so only a
        # nonzero repeat certifies stabilization
        if prev is not None and cur == prev and not cur.is_zero():
            return cur
        prev = cur
    if not seen_nonzero:
        raise TestIdealError("every tested ideal in the sequence is zero")
    raise TestIdealError(
        f"asymptotic chain did not stabilize within {_CHAIN_LIMIT} doublings"
    )


# ---------------------------------------------------------------------------
# Newton-polyhedron oracle (independent route, n <= 3)
# ---------------------------------------------------------------------------


def _cross3(a, b):
    return (
        a[1] * b[2] - a[2] * b[1],
        a[2] * b[0] - a[0] * b[2],
        a[0] * b[1] - a[1] * b[0],
    )


def _normalize_nonneg(c):
    """Scale/flip an integer vector to have all entries >= 0; None if the
    signs are mixed (such directions never support a Newton polyhedron)."""
    if all(x == 0 for x in c):
        return None
    if all(x <= 0 for x in c):
        c = tuple(-x for x in c)
    if any(x < 0 for x in c):
        return None
    from math import gcd

    g = 0
    for x in c:
        g = gcd(g, x)
    return tuple(x // g for x in c)


def newton_normals(a: MonomialIdeal) -> tuple:
    """Supporting directions c >= 0 covering every facet of
    Newt(a) = conv(gens) + R^n_{>=0}.  Axis directions plus (in dimension 3)
    cross products of edge-direction candidates; dimension <= 3 only."""
    n = a.n
    if n > 3:
        raise TestIdealError("Newton-polyhedron machinery supports at most 3 variables")
    axes = [tuple(1 if i == j else 0 for j in range(n)) for i in range(n)]
    if n == 1:
        return (axes[0],)
    gens = a.gens
    diffs = [
        tuple(g[i] - h[i] for i in range(n))
        for g in gens
        for h in gens
        if g != h
    ]
    out = set(axes)
    if n == 2:
        for d in diffs:
            c = _normalize_nonneg((d[1], -d[0]))
            if c is not None:
                out.add(c)
    else:
        dirs = diffs + axes
        for i in range(len(dirs)):
            for j in range(i + 1, len(dirs)):
                c = _normalize_nonneg(_cross3(dirs[i], dirs[j]))
                if c is not None:
                    out.add(c)
    return tuple(sorted(out))


def _slice_mingens(constraints, dim):
    """Minimal integer points u >= 0 with <c, u> > R for every (c, R); the
    constraint data is exact-rational.  Returns a tuple of tuples, or ()
    when no point satisfies the system (the zero ideal)."""
    if dim == 1:
        z = 0
        for c, r in constraints:
            if c[0] == 0:
                if not (0 > r):
                    return ()
            else:
                z = max(z, rfloor(r / c[0]) + 1)
        return ((z,),)
    # limit slice: constraints that survive u_1 -> infinity
    limit = [(c[1:], r) for c, r in constraints if c[0] == 0]
    limit_gens = _slice_mingens(limit, dim - 1)
    # bound beyond which every dropped constraint is strictly slack
    t_star = 0
    for c, r in constraints:
        if c[0] > 0:
            t_star = max(t_star, rfloor(r / c[0]) + 1)
    gens = []
    for t in range(t_star + 2):
        sliced = [(c[1:], r - c[0] * t) for c, r in constraints]
        sub = _slice_mingens(sliced, dim - 1)
        gens.extend((t,) + v for v in sub)
        if sub == limit_gens:
            break
    return _antichain(gens)


def newton_test_ideal(a: MonomialIdeal, lam) -> MonomialIdeal:
    """tau(a^lambda) via the interior criterion: exponents u with
    u + (1,..,1) in the interior of lambda * Newt(a).  Independent of the
    Frobenius route and of p."""
    lam = rat(lam)
    if lam < 0:
        raise TestIdealError("exponent must be >= 0")
    if lam == 0 or a.is_unit():
        return unit_ideal(a.n)
    if a.is_zero():
        return zero_ideal(a.n)
    n = a.n
    constraints = []
    for c in newton_normals(a):
        h = min(sum(ci * gi for ci, gi in zip(c, g)) for g in a.gens)
        # <c, u + 1> > lam * h  <=>  <c, u> > lam*h - sum(c)
        constraints.append((c, lam * Rat(h) - Rat(sum(c))))
    return MonomialIdeal(n, _slice_mingens(constraints, n))
