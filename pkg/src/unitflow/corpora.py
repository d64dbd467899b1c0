"""Seeded instance families used by the acceptance suite and the scripts."""
from __future__ import annotations

import random
from typing import Iterator

from .generators import Instance, InstanceSpec, generate


def tiny_corpus(count: int = 1000, seed: int = 0) -> Iterator[Instance]:
    """Random multigraphs with n <= 8, m <= 14 and costs in [-10, 10]."""
    rng = random.Random(f"tiny:{seed}")
    for i in range(count):
        n = rng.randint(1, 8)
        m = rng.randint(0, 14)
        yield generate(InstanceSpec("random", n=n, m=m, cost=10, seed=seed * 100003 + i))


def mid_corpus(count: int = 200, seed: int = 0) -> Iterator[Instance]:
    """Random multigraphs with n <= 500 and m <= 2000."""
    rng = random.Random(f"mid:{seed}")
    for i in range(count):
        n = rng.randint(2, 500)
        m = rng.randint(n, min(2000, 4 * n))
        cost = rng.choice([10, 100, 1000])
        yield generate(InstanceSpec("random", n=n, m=m, cost=cost, seed=seed * 100003 + i))


def planar_corpus(count: int = 200, seed: int = 0) -> Iterator[Instance]:
    """Grids and random triangulations with n <= 400 and multiplicity 1..3, alternating."""
    rng = random.Random(f"planar:{seed}")
    for i in range(count):
        k = 1 + i % 3
        if i % 2 == 0:
            rows = rng.randint(2, 20)
            cols = rng.randint(2, min(20, 400 // rows))
            spec = InstanceSpec("grid", rows=rows, cols=cols, multiplicity=k, seed=seed * 100003 + i)
        else:
            spec = InstanceSpec("triangulation", n=rng.randint(4, 400), multiplicity=k, seed=seed * 100003 + i)
        yield generate(spec)


def dial_corpus(count: int = 100, seed: int = 0) -> Iterator[Instance]:
    """Random multigraphs with n <= 200 for checks after every bucket-queue step."""
    rng = random.Random(f"dial:{seed}")
    for i in range(count):
        n = rng.randint(2, 200)
        m = rng.randint(n, 4 * n)
        yield generate(InstanceSpec("random", n=n, m=m, cost=rng.choice([10, 100]), seed=seed * 100003 + i))
