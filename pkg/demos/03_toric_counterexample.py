"""
Two plane complexes, one skeleton, opposite concavity
=====================================================

Two complete polyhedral complexes Pi and Pi' share the unit triangle as
their skeleton, and we pick PL data f on Pi and f' on Pi' that agree when
restricted to the skeleton.  Adding the support function Psi of the
triangle sends one sum concave and the other not -- so retracting data
through different ambient complexes genuinely changes the answer, even
though the data on the skeleton itself is identical.
"""

import pathlib

from skelpot.fixtures import CELL_LABELS, counterexample_fixture
from skelpot.rat import Rat, rat_str
from skelpot.svg import render_svg
from skelpot.toric import (
    compose_with_retraction,
    is_concave,
    pl_functions_equal,
    refine,
    refine_function,
    restrict_to_skeleton,
    retraction,
    skeleton,
    toric_ma,
)

fx = counterexample_fixture()

# -- the shared skeleton ----------------------------------------------------

print("skeleton of Pi: ", skeleton(fx.pi))
print("skeleton of Pi':", skeleton(fx.pi_prime))

# Both complexes retract the plane onto that triangle, but differently:
probe = (Rat(5), Rat(1, 3))
print("retraction through Pi  sends", probe, "to", retraction(fx.pi, probe))
print("retraction through Pi' sends", probe, "to", retraction(fx.pi_prime, probe))

# -- same boundary data, different global behavior ---------------------------

print("f and f' agree on the skeleton?",
      restrict_to_skeleton(fx.f) == restrict_to_skeleton(fx.f_prime))
print("f equals f' globally?", pl_functions_equal(fx.f, fx.f_prime))

sum_prime = fx.f_prime.add_support(fx.psi)   # Psi + f'
sum_plain = fx.f.add_support(fx.psi)         # Psi + f

ok, _ = is_concave(sum_prime)
print("Psi + f' concave?", ok)
ok, witness = is_concave(sum_plain)
print("Psi + f  concave?", ok,
      "-- fails across", [CELL_LABELS[i] for i in witness["facet"]],
      "at", witness["point"])

# The concave sum has a genuine Monge-Ampere measure: a single unit atom.
mu = toric_ma(sum_prime)
print("MA(Psi + f') atoms:", [(pt, rat_str(m)) for pt, m in mu.atoms])

# -- refining the complex keeps the good data good ---------------------------

# On the common refinement of Pi and Pi', the skeleton grows (the square
# splits into two triangles) and the transported f' is still recovered by
# composing its skeleton restriction with the refined retraction.
fine = refine(fx.pi, fx.pi_prime)
moved = refine_function(fx.f_prime, fine)
again = compose_with_retraction(fine, restrict_to_skeleton(moved))
print("refined complex has", len(fine.cells), "cells;",
      "f' = f' o (refined retraction)?", pl_functions_equal(again, moved))

# -- figures ------------------------------------------------------------------

out = pathlib.Path("out")
out.mkdir(exist_ok=True)
(out / "pi.svg").write_text(render_svg(fx.pi, labels=list(CELL_LABELS)))
(out / "pi_prime.svg").write_text(render_svg(fx.pi_prime))
(out / "skeleton.svg").write_text(render_svg(list(skeleton(fx.pi))))
print("wrote", sorted(p.name for p in out.glob("*.svg")))

# The same run is packaged as a CLI scenario:
#     skelpot run counterexample.json --out out/
