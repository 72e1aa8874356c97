"""
Small-lambda behaviour and the Monte Carlo oracle
=================================================
"""

# %%
import numpy as np

from hardysharp import lemma21_check, limiting_weak, validate_forward, validate_limiting
from hardysharp.limiting import builtin_profile
from hardysharp.oracle import builtin_field

# %% p = 1: lam |{H f > lam}|^(1/q) tends to the L^1 mass of f.
f = builtin_profile("twostep")
tr = limiting_weak(f, validate_limiting(2, 1.0, 0.5))
print("target", tr.target, " extrapolated", tr.extrapolated_limit)

# %% p > 1: the score tends to 0, but only like lam^(n/(p'(n-beta))).
for p, beta in [(2.0, 0.0), (1.5, 0.0), (1.5, 0.5)]:
    P = validate_limiting(2, p, beta)
    tr = limiting_weak(f, P)
    rate = 2 / (P.pprime * (2 - beta))
    print(f"p={p} beta={beta}: score(1e-8)/score(1e-1) = {tr.scores[-1] / tr.scores[1]:.2e}"
          f"   predicted {1e-7 ** rate:.2e}")

# %% Radialization leaves H_beta unchanged: brute force in R^2 against the closed form.
P = validate_forward(n=2, p=2, alpha=0, beta=0.5, gamma=0)
rep = lemma21_check(builtin_field("offset-gaussian", 2), P, [0.5, 1, 2, 4], 200_000, seed=0)
for c in rep.checks:
    print(f"r={c.radius}: mc={c.mc:.5f}+-{c.mc_se:.1e}  closed={c.closed:.5f}  z={c.z:.2f}")
print("norm contraction:", rep.contraction["passed"])
