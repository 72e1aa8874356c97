"""
Sharp constants and extremizing families
========================================

Closed-form constants next to the ratios produced by the extremizing
families.  Run with ``python3 notebooks/01_constants_and_extremizers.py``.
"""

# %%
from hardysharp import OperatorKind, c_sharp, c_sharp_adjoint, sharpness_sweep
from hardysharp import validate_adjoint, validate_forward

# %% Unweighted case: the forward constant is 1 whatever n, p, beta are.
for n, p, beta in [(1, 2.0, 0.25), (2, 1.5, 0.6), (3, 3.0, 0.3)]:
    P = validate_forward(n=n, p=p, alpha=0, beta=beta, gamma=0)
    print(f"n={n} p={p} beta={beta} q={P.q:.4f}  C={c_sharp(P):.15f}")

# %% Weighted forward constant and the pulled-back indicator family.
# The family is x^(-alpha/(p-1)) on a ball that shrinks to the Holder radius.
P = validate_forward(n=1, p=2, q=4, alpha=-0.5, beta=0, gamma=0)
print("C =", c_sharp(P))
for rep in sharpness_sweep(P, OperatorKind.FORWARD_P):
    print(f"  delta={rep.family_param:.1e}  ratio={rep.ratio:.8f}  gap={rep.gap:.2e}")

# %% Adjoint: one power function is an exact extremizer when p > 1.
P = validate_adjoint(n=2, p=2, q=2, alpha=0, beta=0.5, gamma=-1)
rep = sharpness_sweep(P, OperatorKind.ADJOINT)[0]
print("C* =", c_sharp_adjoint(P), " ratio =", rep.ratio, " gap =", rep.gap)

# %% At p = 1 it degenerates; thin shells chi_(1,1+eps) approach the constant.
P = validate_adjoint(n=2, p=1, alpha=0, beta=1, gamma=0)
for rep in sharpness_sweep(P, OperatorKind.ADJOINT):
    print(f"  eps={rep.family_param:.0e}  ratio={rep.ratio:.8f}")
