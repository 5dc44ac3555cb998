"""Exact cluster algebra computations: seeds, exchange graphs, rank-2 checks."""

import json

from . import _core
from ._core import LaurentViolation, RegularityViolation, coxeter_number

__all__ = [
    "LaurentViolation",
    "RegularityViolation",
    "apply_sequence",
    "b_family",
    "bias_profile",
    "coxeter_number",
    "denominator_report",
    "explore",
    "explore_dot",
    "fuzz_cyclical",
    "is_cyclical",
    "laurent_fuzz",
    "mutate_matrix",
    "periodicity",
    "r_from_q",
    "skew_symmetrizer",
    "brick_wall",
]


def _encode(rows, frozen=None):
    """Rows of a (n + frozen) x n matrix; frozen defaults to len(rows) - n."""
    rows = [[int(v) for v in row] for row in rows]
    n = len(rows[0]) if rows else 0
    if frozen is None:
        frozen = len(rows) - n
    cells = [[v if abs(v) < 2**62 else str(v) for v in row] for row in rows]
    return json.dumps({"n": n, "frozen": frozen, "rows": cells})


def _decode(text):
    m = json.loads(text)
    return [[int(v) for v in row] for row in m["rows"]]


def mutate_matrix(rows, k):
    """mu_k of the extended matrix; k is 0-based."""
    return _decode(_core.mutate_matrix(_encode(rows), k))


def skew_symmetrizer(rows):
    d = _core.skew_symmetrizer(_encode(rows))
    return None if d is None else [int(v) for v in d]


def apply_sequence(rows, sequence):
    """Seed reached from the initial seed by 0-based mutation indices."""
    return json.loads(_core.apply_sequence(_encode(rows), list(sequence)))


def explore(rows, max_vertices=10000, max_depth=64, threads=1):
    return json.loads(_core.explore(_encode(rows), max_vertices, max_depth, threads, False))


def explore_dot(rows, max_vertices=10000, max_depth=64, threads=1):
    return _core.explore(_encode(rows), max_vertices, max_depth, threads, True)


def denominator_report(b, c, lo=1, hi=20):
    return json.loads(_core.denominator_report(b, c, lo, hi))


def periodicity(b, c, trials=100, rng_seed=1):
    return json.loads(_core.periodicity(b, c, trials, rng_seed))


def r_from_q(b, c, k):
    return _core.r_from_q(b, c, k)


def b_family(alpha, beta, gamma):
    return _decode(_core.b_family(alpha, beta, gamma))


def is_cyclical(rows):
    return _core.is_cyclical(_encode(rows))


def bias_profile(rows):
    p = json.loads(_core.bias_profile(_encode(rows)))
    for key in ("c1", "c2", "c3", "r"):
        p[key] = int(p[key])
    return p


def fuzz_cyclical(alpha=1, beta=1, gamma=3, trials=500, depth=12, rng_seed=1, threads=1):
    return json.loads(_core.fuzz_cyclical(alpha, beta, gamma, trials, depth, rng_seed, threads))


def laurent_fuzz(trials=200, max_rank=4, bound=3, max_frozen=2, max_length=10, rng_seed=1, budget=10_000_000, threads=1):
    return json.loads(_core.laurent_fuzz(trials, max_rank, bound, max_frozen, max_length, rng_seed, budget, threads))


def brick_wall(depth=5):
    return json.loads(_core.brick_wall(depth))
