"""
A spanning tree is not enough
=============================

On a fixed graph with a directed spanning tree, the states below never move,
so their moduli never agree.
"""

# %%
import numpy as np

from modcon import scenarios, classify_connectivity, validate

sc = scenarios.builtin("counterexample")
g = sc.graphs["tree"]
print(g)
print(sc.matrices["tree"].a)

# %%
# The matrix satisfies the standing assumption with lambda = 1/3 ...
print("valid:", validate(sc.matrices["tree"], g, 1 / 3).ok)

# ... and the fixed graph is quasi-strongly connected but not strongly connected.
report = classify_connectivity(sc.schedule)
print("UJQSC:", report.ujqsc, "\nUJSC:", report.ujsc)

# %%
res = scenarios.run(sc, horizon=1000)
traj = res.trajectory
print("states at k = 0, 500, 1000:\n", traj.states[[0, 500, 1000]])
print("distance to equal-modulus set stays at", traj.dist[-1], "(sqrt(2/3) =", np.sqrt(2 / 3), ")")
print("verdict:", res.verdict.kind)
