# %% [markdown]
# # Which strategy wins where
#
# Three curves split the (gamma, q) square into six regions, one per
# ordering of {Standard, Type0, TypeI}.

# %%
from blockrace.phase import (
    PhasePoint, best_strategy, classify, gamma_c, influence, q0, qb, qpm, selfish_curve,
)

print("q0      =", q0())
print("gamma_c =", gamma_c())
print("qb(gamma_c) =", qb(gamma_c()), " qplus(gamma_c) =", qpm(gamma_c())[1])

# %% [markdown]
# The six orderings, one sample point each.

# %%
samples = [(0.0, 0.20), (0.0, 0.31), (0.0, 0.40), (0.03, 0.49), (0.04, 0.05), (0.5, 0.10)]
for g, q in samples:
    print(f"gamma={g:4.2f} q={q:4.2f}  {classify(PhasePoint(g, q)).label()}")

# %% [markdown]
# A coarse map of the best strategy (S, 0, 1), q increasing upwards.

# %%
res = 40
symbol = {"Standard": "S", "Type0": "0", "TypeI": "1"}
for j in reversed(range(res)):
    q = (j + 0.5) / res
    print("".join(symbol[best_strategy(PhasePoint((i + 0.5) / res, q)).value] for i in range(res)))

# %% [markdown]
# Block hiding only pays once the miner's "influence" (distance from the
# origin of the square) is large enough.  Along the lower edge of the
# hiding region:

# %%
for g in (0.0, 0.05, 0.1, 0.2, 0.3, 0.4):
    b = qb(g)
    edge = min(q0(), 0.0 if b is None else b)
    print(f"gamma={g:4.2f}  threshold q={edge:6.4f}  influence={influence(PhasePoint(g, edge)):6.4f}")

# %% [markdown]
# The selfish-mining threshold curve, for overlay plots:

# %%
print([round(selfish_curve(g), 4) for g in (0.0, 0.25, 0.5, 0.75, 1.0)])

# %% [markdown]
# With matplotlib installed, the curve data from `blockrace curves` can be
# plotted directly.

# %%
try:
    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt
    import numpy as np
except ImportError:
    plt = None

if plt is not None:
    gs = np.linspace(0, 1, 401)
    fig, ax = plt.subplots(figsize=(5, 5))
    ax.axhline(q0(), label="q0")
    ax.plot(gs, [qb(g) if qb(g) is not None else np.nan for g in gs], label="qb")
    ax.plot(gs, [qpm(g)[1] if qpm(g) else np.nan for g in gs], label="q+")
    ax.plot(gs, [qpm(g)[0] if qpm(g) else np.nan for g in gs], label="q-")
    ax.plot(gs, [selfish_curve(g) for g in gs], "--", label="selfish")
    ax.set(xlabel="gamma", ylabel="q", xlim=(0, 1), ylim=(0, 0.55))
    ax.legend()
    fig.savefig("phase_space.png", dpi=120)
