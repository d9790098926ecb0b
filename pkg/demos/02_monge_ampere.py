# coding: utf-8

# # Monge-Ampere measures on graphs, and the inverse problem

# The Monge-Ampere measure of a piecewise-linear f is the atomic measure
# collecting the weighted slope excess (plus the curvature theta) at every
# vertex and breakpoint.  For theta-psh functions all atoms are >= 0 and the
# total mass always equals theta's total.

from skelpot import CurvatureData, MetrizedGraph, PLFunction
from skelpot.potential import ma_measure, solve_ma
from skelpot.rat import Rat, rat_str

g = MetrizedGraph(
    ["a", "b", "c"],
    [(0, 1, Rat(1), 1), (1, 2, Rat(1), 1), (2, 0, Rat(1), 1)],
)
theta = CurvatureData(g, [Rat(1), Rat(1), Rat(1)])

# a psh function with a kink in the middle of edge b--c
f = PLFunction(g, [Rat(0), Rat(0), Rat(0)], ((), ((Rat(1, 2), Rat(-1, 4)),), ()))

mu = ma_measure(g, theta, f)
print("MA atoms of f:")
for pt, m in mu.atoms:
    print("   ", pt, "mass", rat_str(m))
print("total:", rat_str(mu.total_mass()), "= theta total", rat_str(theta.total()))


# # Solving MA(phi) = mu

# Given a positive atomic measure with the right total mass, solve_ma finds
# the potential by one exact Laplacian solve.  Solutions are unique up to an
# additive constant, so we pin the value at an anchor vertex.

back = solve_ma(g, theta, mu, anchor=0)
print("recovered values:", [rat_str(x) for x in back.vertex_values])
print("recovered breakpoints:", back.breakpoints())

# anchoring elsewhere shifts the whole function by one constant
other = solve_ma(g, theta, mu, anchor=2)
diff = back - other
print("two anchors differ by:", sorted(set(rat_str(x) for x in diff.vertex_values)))

# mass mismatch is rejected outright
try:
    solve_ma(g, theta, type(mu)(g, [(pt, m + 1) for pt, m in mu.atoms]))
except Exception as ex:
    print("mismatched mass ->", type(ex).__name__, "--", ex)
