# %% [markdown]
# # How many confirmations are enough?
#
# A miner holding a share `q` of the hash power can mine a private branch
# and publish it once it is one block longer than the public chain.  The
# probability that this eventually revokes a block with `n` confirmations
# follows from a negative-binomial head start and a biased random walk.

# %%
from blockrace import revocation_prob, type1_success, neg_binomial_pmf, catchup_prob

# %% [markdown]
# The head start: how many secret blocks exist when the public chain has
# mined its n-th block on top of the contested one.

# %%
for m in range(5):
    print(m, round(neg_binomial_pmf(3, 0.2, m), 5))

# %% [markdown]
# The catch-up: from a deficit `z`, the chance of ever getting `r` blocks
# ahead is `(q / (1 - q)) ** (z + r)` for a minority miner.

# %%
print(catchup_prob(0, 1, 0.25))   # 1/3
print(catchup_prob(3, 1, 0.6))    # a majority always catches up

# %% [markdown]
# Combining the two gives the revocation table.  The first column is the
# plain "publish when ahead" success probability.

# %%
print(type1_success(0.2), revocation_prob(1, 1, 0.2))

print("q     " + "".join(f"{'n=' + str(n):>9}" for n in range(1, 11)))
for k in range(0, 26, 5):
    q = k / 50
    cells = "".join(f"{100 * revocation_prob(n, 1, q):8.2f}%" for n in range(1, 11))
    print(f"{q:4.2f} {cells}")

# %% [markdown]
# With 10% of the hash power and a 0.1% risk budget, the smallest safe
# depth is where the risk first drops below the budget.  At n=4 it is
# just under it (0.099%), and at n=5 it is 0.033%.

# %%
n_safe = next(n for n in range(1, 50) if revocation_prob(n, 1, 0.10) < 0.001)
print("confirmations needed at q=0.10:", n_safe)

# %% [markdown]
# The same table is available from the command line:
#
#     blockrace table --format pretty
