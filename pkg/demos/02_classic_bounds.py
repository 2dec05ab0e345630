# Closed-form lower and upper bounds against the exact optimum.

#%%
from pfsbounds import GenSpec, generate, solve_exact
from pfsbounds.bounds import compute_bounds

inst = generate(GenSpec(jobs=8, machines=4, a=1, b=99, seed=3))
ids = ["lbm", "lbm+", "lbm++", "lbj", "lbj+", "range", "ubh", "range-ub"]
for r in compute_bounds(inst, ids):
    print(f"{r.label:>9} = {r.value}")
print("      OPT =", solve_exact(inst).opt)

#%%
# Distinct makespan estimates for integer times.
from pfsbounds import count_makespans_heller, count_makespans_new

exact = solve_exact(inst, collect_distinct=True)
print("distinct makespans over all 8! schedules:", exact.distinct_makespans)
print("(N+M-1)(b-a)+1          :", count_makespans_new(inst))
print("UB_H - LB_M+ + 1        :", count_makespans_heller(inst))

#%%
# When does the range estimate beat Heller's? Needs M > b/a.
from pfsbounds import estimate_comparison

for m, a, b in [(3, 1, 2), (3, 1, 5), (10, 5, 30)]:
    print((m, a, b), estimate_comparison(m, a, b))
