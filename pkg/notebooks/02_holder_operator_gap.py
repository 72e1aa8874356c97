"""
H_beta against the auxiliary operator H_{beta,p}
================================================

The lower-bound construction measures the ball family through the
auxiliary operator ``H_{beta,p} f = H_beta f * (omega_n/m)^(1/p') r^(m/p')``,
which dominates ``H_beta`` by Holder.  For ``alpha = 0`` the ball family
drives the ``H_{beta,p}`` ratio to the constant.  The same family under
``H_beta`` itself stays strictly below it: the ratio is independent of the
ball radius and never gets closer.
"""

# %%
from hardysharp import OperatorKind, c_sharp, extremizer_forward, ratio, validate_forward

P = validate_forward(n=2, p=2, alpha=0, beta=0.5, gamma=0)
print("C =", c_sharp(P))
print(f"{'delta':>8} {'H_beta,p':>12} {'H_beta':>12}")
for delta in (1e-1, 1e-2, 1e-3, 1e-4):
    f = extremizer_forward(delta, P)
    a = ratio(f, P, OperatorKind.FORWARD_P).ratio
    b = ratio(f, P, OperatorKind.FORWARD).ratio
    print(f"{delta:8.0e} {a:12.8f} {b:12.8f}")

# %% Other exponents show the same picture.
for n, p, beta in [(1, 1.5, 0.3), (3, 3.0, 0.6), (2, 4.0, 0.2)]:
    P = validate_forward(n=n, p=p, alpha=0, beta=beta, gamma=0)
    f = extremizer_forward(1e-4, P)
    a = ratio(f, P, OperatorKind.FORWARD_P).ratio
    b = ratio(f, P, OperatorKind.FORWARD).ratio
    print(f"n={n} p={p} beta={beta}:  H_beta,p {a:.6f}   H_beta {b:.6f}")

# %% Searching other families for H_beta itself.  With beta = 0 a flat
# piece reaches the constant 1; with beta > 0 the best power piece
# r^a chi_(0,1) stays visibly below it.
import numpy as np

from hardysharp.profile import power

for n, p, beta in [(2, 2.0, 0.0), (2, 2.0, 0.5), (1, 1.5, 0.3)]:
    P = validate_forward(n=n, p=p, alpha=0, beta=beta, gamma=0)
    exps = np.linspace(-n / p + 0.005, 2.0, 200)
    best = max((ratio(power(1.0, a, 0.0, 1.0), P, OperatorKind.FORWARD).ratio, a) for a in exps)
    print(f"n={n} p={p} beta={beta}: best ratio {best[0]:.6f} at a={best[1]:.3f}")
