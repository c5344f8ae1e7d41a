import math

import numpy as np
import pytest
from conftest import brute_force, instances, make
from hypothesis import given, settings

from energysched import dp, oracle
from energysched.model import PreconditionError, Schedule, sorted_by_energy, validate_schedule

EXAMPLE = make([2, 1, 3, 1], [(1, 4, 2), (1, 4, 3)])


class TestCommonWindow:
    def test_shared(self):
        assert dp.check_common_window(make([0] * 5, [(1, 5, 1), (1, 5, 2)]))

    def test_mixed(self):
        assert not dp.check_common_window(make([0] * 5, [(1, 5, 1), (2, 5, 2)]))

    def test_single_job(self):
        assert dp.check_common_window(make([0] * 5, [(3, 4, 1)]))


class TestTable:
    def test_two_job_example(self):
        table = dp.build_table(EXAMPLE)
        assert table(2, 4) == 0
        assert table.best_count() == 2
        assert brute_force(EXAMPLE) == (2, 0)

    def test_slot_one_is_never_used(self):
        table = dp.build_table(make([0], [(1, 1, 0)]))
        assert table(1, 1) == -math.inf

    def test_harvest_below_first_energy(self):
        table = dp.build_table(make([1, 0], [(1, 2, 10)]))
        assert table(1, 2) == -math.inf
        assert table.best_count() == 0

    def test_rows_follow_energy_order(self):
        inst = make([4, 4, 4], [(1, 3, 3), (1, 3, 1), (1, 3, 1)])
        assert [j.id for j in dp.build_table(inst).order] == [2, 3, 1]

    def test_no_jobs(self):
        with pytest.raises(PreconditionError) as err:
            dp.build_table(make([1], []))
        assert err.value.code == "no-jobs"

    def test_mixed_windows_rejected(self):
        with pytest.raises(PreconditionError) as err:
            dp.build_table(make([1, 1], [(1, 2, 1), (2, 2, 1)]))
        assert err.value.code == "not-common-window"

    @given(instances(max_n=6, max_t=9, emin=0))
    @settings(max_examples=150)
    def test_numpy_rows_match_cellwise_recurrence(self, inst):
        fast_rows = dp.build_table(inst, backend="numpy")
        slow_rows = dp.build_table(inst, backend="python")
        assert np.array_equal(fast_rows.mask, slow_rows.mask)
        assert all(
            int(a) == int(b)
            for a, b in zip(fast_rows.values[fast_rows.mask], slow_rows.values[slow_rows.mask])
        )

    @given(instances(max_n=6, max_t=9, emin=0))
    @settings(max_examples=100)
    def test_bounded_by_harvest_and_monotone_in_t(self, inst):
        table = dp.build_table(inst)
        H = inst.prefix_harvest
        for i in range(1, table.n + 1):
            for t in range(1, inst.horizon + 1):
                if table.reachable(i, t):
                    assert 0 <= table(i, t) <= H[t]
                    if t < inst.horizon:
                        assert table.reachable(i, t + 1)
                        assert table(i, t + 1) >= table(i, t)


class TestSolveCount:
    def test_two_job_example(self):
        res = dp.solve_count(EXAMPLE)
        assert res.objective == 2
        assert res.schedule == Schedule({1: 2, 2: 4})
        assert res.meta["leftover"] == 0

    def test_no_harvest(self):
        res = dp.solve_count(make([0, 0, 0], [(1, 3, 1), (1, 3, 2)]))
        assert res.objective == 0
        assert res.schedule == Schedule()

    def test_one_early_harvest_feeds_three_jobs(self):
        inst = make([3, 0, 0, 0], [(1, 4, 1)] * 3)
        assert dp.solve_count(inst).objective == 3
        assert brute_force(inst)[0] == 3

    def test_mixed_windows_rejected(self):
        with pytest.raises(PreconditionError) as err:
            dp.solve_count(make([1, 1], [(1, 2, 1), (2, 2, 1)]))
        assert err.value.code == "not-common-window"

    def test_empty_instance(self):
        assert dp.solve_count(make([4], [])).objective == 0

    def test_zero_energy_at_slot_one_is_missed(self):
        # the recurrence never uses slot 1, while the feasibility rules allow it
        inst = make([0], [(1, 1, 0)])
        assert dp.solve_count(inst).objective == 0
        assert oracle.solve_oracle(inst).objective == 1

    def test_values_beyond_64_bits(self):
        big = 10**30
        inst = make([big, big, 0, 0, 0], [(1, 5, big // 2), (1, 5, big // 2), (1, 5, big)])
        res = dp.solve_count(inst)
        assert res.objective == 3
        assert res.meta["leftover"] == 0
        assert validate_schedule(inst, res.schedule).feasible
        with pytest.raises(PreconditionError) as err:
            dp.build_table(inst, backend="numpy")
        assert err.value.code == "int-width"

    @given(instances(max_n=5, max_t=6))
    @settings(max_examples=120, deadline=None)
    def test_matches_brute_force_count_and_leftover(self, inst):
        res = dp.solve_count(inst)
        assert (res.objective, res.meta["leftover"]) == brute_force(inst)

    @given(instances(max_n=8, max_t=10))
    @settings(max_examples=150, deadline=None)
    def test_schedule_is_feasible_prefix_with_table_leftover(self, inst):
        res = dp.solve_count(inst)
        report = validate_schedule(inst, res.schedule)
        assert report.feasible
        assert report.leftover == res.meta["leftover"]
        prefix = {j.id for j in sorted_by_energy(inst.jobs)[: res.objective]}
        assert set(res.schedule.jobs) == prefix
        assert res.meta["leftover"] == oracle.max_leftover_by_count(inst)[res.objective]
