# Monte Carlo: how often UB / LB_M+ stays below b / mu as N grows.

#%%
from pfsbounds.asymptotic import Distribution, run_asymptotic

dist = Distribution(1, 99)
print("threshold b/mu =", dist.threshold, "=", float(dist.threshold))

rep = run_asymptotic(dist, "n", fixed=5, grid=[10, 100, 500, 2000], samples=100, seed=1)
print(rep.to_csv())

#%%
# The same on the machine axis with LB_J+.
rep = run_asymptotic(dist, "m", fixed=5, grid=[10, 100, 500], samples=100, seed=1)
print(rep.to_csv())
print(rep.conjecture_csv())  # (b/mu) LB >= OPT, exact OPT since N = 5
