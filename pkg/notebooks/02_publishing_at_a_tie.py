# %% [markdown]
# # Publishing at a tie
#
# A Type 0 miner publishes as soon as the secret branch draws level.  A
# fraction `gamma` of the honest miners then builds on the hider's branch,
# so the follow-up race is fought with share `q + gamma (1 - q)`.

# %%
import numpy as np

from blockrace import q_effective, tie_prob, type0_success, type1_success
from blockrace.phase import qc

# %% [markdown]
# Reaching a tie on the next block happens with probability `2q`; winning
# from the tie is a fresh catch-up race with the coalition share.

# %%
q, gamma = 0.2, 0.1
print("tie:", tie_prob(q), " coalition share:", q_effective(q, gamma))
print("success:", type0_success(q, gamma))

# %% [markdown]
# Above `qc(gamma)` the coalition holds a majority and a tie is as good as
# a win; for gamma >= 1/2 this covers every q.

# %%
for g in (0.0, 0.25, 0.45, 0.5):
    print(f"gamma={g:4.2f}  qc={qc(g)}")

# %% [markdown]
# Comparing the two hiding strategies and honest mining along a few slices:

# %%
for g in (0.0, 0.1, 0.5):
    print(f"gamma = {g}")
    for q in np.linspace(0.05, 0.45, 5):
        print(f"  q={q:4.2f}  honest={q:6.4f}  tie={type0_success(q, g):6.4f}  ahead={type1_success(q):6.4f}")
