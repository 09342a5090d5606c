"""
Kuramoto oscillators with antagonistic links
============================================

Writing sin(u) = sinc(u) * u turns the oscillator update into a signed
weighted average, so the same convergence results apply.
"""

# %%
import math

import numpy as np

from modcon import KuramotoConfig, kuramoto_step, lambda_star, scenarios, step, to_weight_matrix

for delta in (math.pi / 6, math.pi / 4, math.pi / 3, 0.05):
    print(f"delta={delta:.4f}  lambda*={lambda_star(delta):.5f}  mu bound (n=3)={(1 - lambda_star(delta)) / 3:.5f}")

# %%
cfg = KuramotoConfig(3, delta=0.05, mu=0.1)
sc = scenarios.builtin("unidirectional_fig6", model="kuramoto")
g = sc.graphs["G3"]
theta = np.array(sc.x0)
W = to_weight_matrix(theta, g, cfg)
print(W.a)
print("nonlinear step:", kuramoto_step(theta, g, cfg))
print("linear step:   ", step(theta, W))

# %%
for name in scenarios.BUILTIN_NAMES:
    res = scenarios.run(scenarios.builtin(name, model="kuramoto"))
    print(f"{name:22s} {res.verdict.kind:13s} |theta| final = {np.abs(res.trajectory.final)}")
