"""Seeded random instance families."""

from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Iterator

from .model import InputError, Instance, Job


@dataclass(frozen=True)
class RandomFamily:
    """Uniform draws within bounds.

    Energies lie in ``[emin, emax]``, harvests in ``[0, hmax]`` and weights in
    ``[wmin, wmax]``. Windows are drawn as ``r ~ U[1, T]``, ``d ~ U[r, T]``,
    once for all jobs when ``common_window`` is set, else per job.
    ``full_window`` forces ``r = 1, d = T``.
    """

    n: int
    horizon: int
    emax: int
    hmax: int
    emin: int = 1
    wmin: int = 1
    wmax: int = 1
    common_window: bool = False
    full_window: bool = False

    def __post_init__(self):
        if self.n < 1:
            raise InputError("bad-parameter", f"n must be >= 1, got {self.n}")
        if self.horizon < 1:
            raise InputError("bad-parameter", f"T must be >= 1, got {self.horizon}")
        if not 0 <= self.emin <= self.emax:
            raise InputError("bad-parameter", f"need 0 <= emin <= emax, got {self.emin}, {self.emax}")
        if self.hmax < 0:
            raise InputError("bad-parameter", f"hmax must be >= 0, got {self.hmax}")
        if not 0 <= self.wmin <= self.wmax:
            raise InputError("bad-parameter", f"need 0 <= wmin <= wmax, got {self.wmin}, {self.wmax}")

    def _window(self, rng: random.Random) -> tuple[int, int]:
        if self.full_window:
            return 1, self.horizon
        r = rng.randint(1, self.horizon)
        return r, rng.randint(r, self.horizon)

    def sample(self, rng: random.Random) -> Instance:
        T = self.horizon
        harvest = tuple(rng.randint(0, self.hmax) for _ in range(T))
        shared = self._window(rng) if self.common_window else None
        jobs = []
        for i in range(self.n):
            r, d = shared if shared else self._window(rng)
            jobs.append(
                Job(i, r, d, rng.randint(self.emin, self.emax), rng.randint(self.wmin, self.wmax))
            )
        return Instance(T, harvest, tuple(jobs))


def random_instance(family: RandomFamily, seed: int) -> Instance:
    return family.sample(random.Random(seed))


def random_corpus(
    count: int,
    seed: int,
    n_max: int,
    t_max: int,
    emax: int,
    hmax: int,
    **family_kwargs,
) -> Iterator[Instance]:
    """``count`` instances with ``n ~ U[1, n_max]`` and ``T ~ U[1, t_max]``."""
    rng = random.Random(seed)
    for _ in range(count):
        family = RandomFamily(rng.randint(1, n_max), rng.randint(1, t_max), emax, hmax, **family_kwargs)
        yield family.sample(rng)
