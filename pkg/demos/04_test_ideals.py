# coding: utf-8

# # Frobenius powers, Frobenius roots, and test ideals of monomial ideals
#
# For monomial ideals in F_p[x_1..x_n] the whole Frobenius calculus is exact
# integer arithmetic on exponent vectors, so every identity can be checked
# on the nose.

from skelpot.rat import Rat
from skelpot.testideals import (
    GradedSequence,
    MonomialIdeal,
    asymptotic_test_ideal,
    frobenius_power,
    frobenius_root,
    newton_test_ideal,
    test_ideal,
)


def mono(u):
    parts = ["xyz"[i] + (f"^{e}" if e > 1 else "") for i, e in enumerate(u) if e]
    return "".join(parts) or "1"


def show(name, a):
    print(f"{name:28s} ({', '.join(mono(u) for u in a.gens) or '0'})")


a = MonomialIdeal(2, [(3, 2)])          # (x^3 y^2)
show("a", a)
show("a^[2]  (p=2, e=1)", frobenius_power(a, 2, 1))
show("a^[1/2]", frobenius_root(a, 2, 1))

# the root is the smallest ideal whose Frobenius power contains a:
b = frobenius_root(a, 2, 1)
print("a inside (a^[1/2])^[2]?", frobenius_power(b, 2, 1).contains(a))
print("(a^[2])^[1/2] == a?", frobenius_root(frobenius_power(a, 2, 1), 2, 1) == a)


# # Test ideals
#
# tau(a^lambda) is the union of the increasing chain (a^ceil(lambda q))^[1/q]
# over q = p^e.  The library evaluates the chain at one index where it is
# provably equal to its union -- no heuristic "two steps agreed" stopping,
# which genuinely fails: the chain below pauses for three steps and then
# still picks up a new generator.

pause = MonomialIdeal(2, [(0, 3), (3, 1)])     # (y^3, x^3 y)
lam = Rat(3, 4)
for e in (2, 3, 4, 5):
    q = 2**e
    cnt = -((-lam * q) // 1)   # ceil(lambda * q)
    show(f"(a^{int(cnt)})^[1/{q}]", frobenius_root(pause**int(cnt), 2, e))
show("tau(a^(3/4)), p=2", test_ideal(pause, lam, 2))

# An independent cross-check: u is in tau(a^lambda) exactly when u + (1,..,1)
# lies in the interior of lambda * (Newton polyhedron of a).
show("Newton-polyhedron route", newton_test_ideal(pause, lam))

m2 = MonomialIdeal(2, [(1, 0), (0, 1)])
show("tau((x,y)^2 at 1), p=2", test_ideal(m2**2, 1, 2))
show("tau((x,y)^2 at 1/2)", test_ideal(m2**2, Rat(1, 2), 2))


# # Asymptotic test ideals and subadditivity

seq = GradedSequence.powers(MonomialIdeal(2, [(4, 0), (0, 4), (2, 2)]))
t1 = asymptotic_test_ideal(seq, Rat(1, 2), 3)
t2 = asymptotic_test_ideal(seq, 1, 3)
show("tau(seq^(1/2)), p=3", t1)
show("tau(seq^1)", t2)
print("subadditive (tau(seq^1) inside tau(seq^(1/2))^2)?",
      (t1 * t1).contains(t2))
