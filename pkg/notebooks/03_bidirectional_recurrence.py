"""
Sparse bidirectional recurrence
===============================

The link 2-3 appears only at steps 1, 4, 9, 16, ..., so no fixed window
length sees a connected graph every time. Every suffix of the schedule is
still jointly connected, and that is enough for bidirectional graphs: the
states split into two camps of equal modulus.
"""

# %%
from modcon import scenarios, classify_connectivity

sc = scenarios.builtin("bidirectional_fig9")
report = classify_connectivity(sc.schedule)
print("UJSC:", report.ujsc)
print("IJC:", report.ijc)
print("first recurrence steps:", sc.schedule.recurrence_times(8))

# %%
res = scenarios.run(sc, horizon=5000)
traj = res.trajectory
for k in (0, 1, 2, 4, 5, 9, 10, 100, 5000):
    print(f"k={k:5d}  x={traj.states[k]}  distJ={traj.dist[k]:.3e}")

# %%
v = res.verdict
print(v.kind, "common modulus", v.common_modulus, "camps", v.partition)
