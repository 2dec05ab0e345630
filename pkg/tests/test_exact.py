import itertools

import numpy as np
import pytest

from pfsbounds.bounds import lb_machine_plus_plus, count_makespans_new
from pfsbounds.errors import GuardError
from pfsbounds.exact import min_path_sum_over_perms, solve_exact
from pfsbounds.instance import GenSpec, Instance, generate
from pfsbounds.makespan import makespan

from oracles import all_makespans, brute_opt


def test_two_by_two(two_by_two):
    res = solve_exact(two_by_two, collect_distinct=True)
    assert (res.opt, res.witness, res.distinct_makespans) == (8, (0, 1), 2)


def test_constant_grid_witness_is_identity():
    res = solve_exact(Instance(np.full((3, 5), 2)))
    assert res.opt == 2 * 7
    assert res.witness == (0, 1, 2, 3, 4)


def test_single_job():
    assert solve_exact(Instance(np.array([[3], [4], [1]]))).opt == 8


def test_guard():
    with pytest.raises(GuardError):
        solve_exact(generate(GenSpec(11, 2, 0, 5)))


def test_matches_brute_force_and_lexicographic_witness():
    rng = np.random.default_rng(0)
    for k in range(60):
        inst = Instance(rng.integers(0, 6, (int(rng.integers(1, 4)), int(rng.integers(1, 6)))))
        rows = inst.times.tolist()
        res = solve_exact(inst, collect_distinct=True)
        n = inst.n_jobs
        first = next(p for p in itertools.permutations(range(n))
                     if makespan(inst, p) == res.opt)
        assert res.opt == brute_opt(rows)
        assert res.witness == first
        assert res.distinct_makespans == len(all_makespans(rows))
        assert res.distinct_makespans <= count_makespans_new(inst)


def test_threads_do_not_change_result():
    inst = generate(GenSpec(8, 4, 0, 20, seed=3))
    assert solve_exact(inst, True, threads=1) == solve_exact(inst, True, threads=4)


def test_sampled_permutations_never_beat_optimum():
    inst = generate(GenSpec(8, 3, 1, 50, seed=12))
    opt = solve_exact(inst).opt
    rng = np.random.default_rng(1)
    assert all(makespan(inst, rng.permutation(8)) >= opt for _ in range(300))


def test_path_minimisation_h_shape_matches_machine_plus_plus_term():
    rng = np.random.default_rng(4)
    for _ in range(40):
        m, n = int(rng.integers(1, 5)), int(rng.integers(2, 6))
        t = rng.integers(0, 15, (m, n))
        inst = Instance(t)
        terms = []
        for i in range(m):
            h_path = [(r, 0) for r in range(i)] + [(i, j) for j in range(n)] + \
                     [(r, n - 1) for r in range(i + 1, m)]
            pair = min(t[:i, a].sum() + t[i + 1:, b].sum()
                       for a in range(n) for b in range(n) if a != b)
            value = min_path_sum_over_perms(inst, h_path)
            assert value == t[i].sum() + pair
            terms.append(value)
        assert max(terms) == lb_machine_plus_plus(inst)


def test_path_minimisation_trivial_shapes():
    inst = Instance(np.array([[5, 2, 9, 4]]))
    assert min_path_sum_over_perms(inst, [(0, j) for j in range(4)]) == 20
    inst = Instance(np.array([[5, 2, 9], [1, 8, 3]]))
    assert min_path_sum_over_perms(inst, [(1, 0)]) == 1
    with pytest.raises(GuardError):
        min_path_sum_over_perms(generate(GenSpec(9, 1, 0, 3)), [(0, 0)])
