# %% [markdown]
# # Checking the closed forms by simulation
#
# The simulator replays races block by block.  Every trial has its own
# random stream derived from (seed, trial index), so results do not depend
# on how the trials are split across threads.

# %%
from blockrace import RaceConfig, simulate_catchup, simulate_type0, simulate_type1
from blockrace import double_spend_prob, revocation_prob, type0_success

# %%
cfg = RaceConfig(q=0.3, n=3, r=1, trials=200_000, seed=1)
est = simulate_type1(cfg)
exact = revocation_prob(3, 1, 0.3)
print(f"p_hat={est.p_hat:.5f} +- {est.std_err:.5f}  closed form={exact:.5f}  z={est.z_score(exact):+.2f}")

# %% [markdown]
# A pre-mined block turns the race into the classic double spend.

# %%
est = simulate_type1(RaceConfig(q=0.1, n=2, premine=1, trials=200_000, seed=2))
print(est.p_hat, double_spend_prob(2, 0.1))

# %% [markdown]
# Publishing at a tie:

# %%
est = simulate_type0(RaceConfig(q=0.2, gamma=0.1, trials=200_000, seed=3))
print(est.p_hat, type0_success(0.2, 0.1))

# %% [markdown]
# The walk is cut off once the hider is `max_deficit` blocks behind.  For a
# minority miner the probability lost this way is tiny, but it grows fast
# near q = 1/2.

# %%
for q in (0.3, 0.45, 0.49):
    print(q, RaceConfig(q=q).bias_bound)

# %% [markdown]
# At exactly half the hash power the catch-up is certain in theory, but a
# truncated walk misses a sliver of it: the estimate is a lower bound.

# %%
est = simulate_catchup(2, 0, 0.5, trials=20_000, seed=4)
print(est.p_hat)

# %% [markdown]
# Determinism under threading:

# %%
cfg = RaceConfig(q=0.35, n=2, trials=300_000, seed=5)
print(simulate_type1(cfg) == simulate_type1(cfg, workers=4))
