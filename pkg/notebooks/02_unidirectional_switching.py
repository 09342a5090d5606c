"""
Periodic unidirectional switching
=================================

No single graph is connected, but every three consecutive steps form a
strongly connected joint graph. Modulus agreement follows; here all states
actually decay to zero.
"""

# %%
import numpy as np

from modcon import scenarios, classify_connectivity, union

sc = scenarios.builtin("unidirectional_fig6")
for name, g in sc.graphs.items():
    print(name, g)
print("joint graph of one period:", union(list(sc.graphs.values())))

# %%
report = classify_connectivity(sc.schedule)
print("UJSC witness T =", report.ujsc.T)
print("UJQSC witness T =", report.ujqsc.T)

# %%
res = scenarios.run(sc, horizon=2000)
traj = res.trajectory
for k in (0, 10, 50, 100, 500, 2000):
    print(f"k={k:5d}  x={np.array2string(traj.states[k], precision=4)}  M={traj.M[k]:.3e}  distJ={traj.dist[k]:.3e}")
print("verdict:", res.verdict.kind)

# %%
try:
    import matplotlib.pyplot as plt
except ImportError:
    plt = None
if plt is not None:
    fig, ax = plt.subplots()
    ax.plot(traj.steps[:60], traj.states[:60])
    ax.set_xlabel("k")
    ax.set_ylabel("x_i(k)")
    fig.savefig("unidirectional_switching.png", dpi=120)
