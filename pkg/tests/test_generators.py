import pytest

from energysched.generators import RandomFamily, random_corpus, random_instance
from energysched.model import InputError, validate_instance


def test_bounds_respected():
    fam = RandomFamily(20, 15, 7, 3, emin=2, wmin=1, wmax=5)
    for seed in range(20):
        inst = random_instance(fam, seed)
        validate_instance(inst)
        assert all(0 <= h <= 3 for h in inst.harvest)
        assert all(2 <= j.energy <= 7 and 1 <= j.weight <= 5 for j in inst.jobs)


def test_common_and_full_windows():
    inst = random_instance(RandomFamily(6, 9, 4, 4, common_window=True), 3)
    assert len({(j.release, j.due) for j in inst.jobs}) == 1
    inst = random_instance(RandomFamily(6, 9, 4, 4, full_window=True), 3)
    assert {(j.release, j.due) for j in inst.jobs} == {(1, 9)}


def test_corpus_is_reproducible():
    a = list(random_corpus(30, 7, 5, 6, 4, 4))
    assert a == list(random_corpus(30, 7, 5, 6, 4, 4))
    assert all(1 <= inst.n <= 5 and 1 <= inst.horizon <= 6 for inst in a)


@pytest.mark.parametrize(
    "kwargs",
    [dict(n=0), dict(horizon=0), dict(emin=5), dict(hmax=-1), dict(wmin=3, wmax=2)],
)
def test_bad_parameters(kwargs):
    base = dict(n=3, horizon=4, emax=4, hmax=4)
    with pytest.raises(InputError) as err:
        RandomFamily(**{**base, **kwargs})
    assert err.value.code == "bad-parameter"
