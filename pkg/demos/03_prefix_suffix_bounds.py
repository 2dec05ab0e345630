# Prefix-suffix bounds: fix the first p and last s jobs, then take the
# shortest schedule over every choice of them, judged by the i-type paths.

#%%
import time

from pfsbounds import GenSpec, generate, lb_best, lb_machine_plus, lb_prefix_suffix, solve_exact

inst = generate(GenSpec(jobs=9, machines=5, a=1, b=99, seed=11))
opt = solve_exact(inst).opt
print("LB_M+ =", lb_machine_plus(inst), " OPT =", opt)
for k in range(2, 10):
    value, (p, s) = lb_best(inst, k)
    print(f"p+s={k}: best LB_{p},{s} = {value}")  # reaches OPT at p+s = N

#%%
# The path family grows with p+s only.
from pfsbounds import enumerate_family, path_family_size

for p, s in [(1, 1), (2, 1), (1, 2), (3, 4)]:
    print((p, s), path_family_size(9, p, s))
print(sum(1 for _ in enumerate_family(9, 10, 3, 4)), "paths enumerated for M=9, N=10")

#%%
# Benchmark-sized instance (Taillard-like 50 x 20)
big = generate(GenSpec(jobs=50, machines=20, a=1, b=99, seed=5))
for p, s in [(1, 1), (2, 1), (1, 2), (2, 2), (3, 1), (1, 3)]:
    t0 = time.perf_counter()
    v = lb_prefix_suffix(big, p, s)
    print(f"LB_{p},{s} = {v}  ({time.perf_counter() - t0:.2f}s)")
