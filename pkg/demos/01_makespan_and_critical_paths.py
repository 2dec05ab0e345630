# Makespan of a schedule as the heaviest right/down path through the time grid.

#%%
import numpy as np

from pfsbounds import Instance, critical_path, makespan, path_sum
from pfsbounds.makespan import completion_matrix, corner_paths

times = np.array([[1, 2],
                  [3, 4]])  # rows = machines, columns = jobs
inst = Instance(times, name="two_by_two")

for perm in ([0, 1], [1, 0]):
    print(perm, "Cmax =", makespan(inst, perm))

#%%
# The completion matrix, and the path that realises its bottom-right value.
perm = [0, 1]
print(completion_matrix(inst, perm))
path = critical_path(inst, perm)
print("critical path:", path, "sum =", path_sum(inst, perm, path))

#%%
# Brute force: the makespan is the maximum over every corner-to-corner path.
rng = np.random.default_rng(0)
inst = Instance(rng.integers(1, 20, (3, 5)))
perm = rng.permutation(5)
sums = [path_sum(inst, perm, p) for p in corner_paths(3, 5)]
print(len(sums), "paths, max =", max(sums), "makespan =", makespan(inst, perm))
