"""Generic-point sampling with a seeded generator.

A :class:`GenericPoint` hands out a random rational for every atom the first
time it is looked up, so one point can be shared by many expressions.
Exponential and function atoms are independent indeterminates.
"""
from __future__ import annotations

import random
from fractions import Fraction

from .expr import SingularPoint
from .linalg import rank

__all__ = ["DEFAULT_SEED", "GenericPoint", "points", "AllSamplesSingular", "sampled_rank", "evaluate_matrix"]

DEFAULT_SEED = 20240611
MAX_RETRIES = 20


class AllSamplesSingular(RuntimeError):
    pass


class GenericPoint(dict):
    def __init__(self, rng: random.Random):
        super().__init__()
        self._rng = rng

    def __missing__(self, atom):
        v = Fraction(self._rng.randint(-12, 12), self._rng.randint(1, 8))
        self[atom] = v
        return v


def points(seed: int = DEFAULT_SEED):
    """Endless stream of independent generic points from one seeded generator."""
    rng = random.Random(seed)
    while True:
        yield GenericPoint(rng)


def evaluate_matrix(matrix, point):
    return [[e.eval(point) for e in row] for row in matrix]


def sampled_rank(matrix, *, seed: int = DEFAULT_SEED, samples: int = 3) -> int:
    """Maximum rank of an expression matrix over ``samples`` non-singular generic points."""
    best = 0
    good = 0
    failures = 0
    stream = points(seed)
    while good < samples:
        p = next(stream)
        try:
            vals = evaluate_matrix(matrix, p)
        except SingularPoint:
            failures += 1
            if failures > MAX_RETRIES:
                raise AllSamplesSingular("every sample point was singular") from None
            continue
        good += 1
        ncols = len(vals[0]) if vals else 0
        best = max(best, rank(vals, ncols) if vals else 0)
    return best
