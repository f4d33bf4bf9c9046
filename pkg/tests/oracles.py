"""Independent reference computations shared by the property tests and the acceptance run."""

import itertools
from functools import lru_cache
from math import gcd

from lctcert.singularities import normalize_quotient_type

GRID_STEP = 4
GRID = range(-6 * GRID_STEP, 6 * GRID_STEP + 1)


def brute_force_count(weights, d):
    """Monomials of degree d by walking exponent boxes."""
    count = 0

    def walk(i, remaining):
        nonlocal count
        if i == len(weights):
            count += remaining == 0
            return
        for e in range(remaining // weights[i] + 1):
            walk(i + 1, remaining - e * weights[i])

    walk(0, d)
    return count


def generating_function_count(weights, d):
    """Coefficient of t^d in prod 1/(1 - t^w), by truncated power series."""
    series = [1] + [0] * d
    for w in weights:
        for k in range(w, d + 1):
            series[k] += series[k - w]
    return series[d]


def terminal_oracle(r, triple):
    """Some unit turns the residues into {1, a, r-a} with gcd(a, r) = 1."""
    b = [x % r for x in triple]
    for u in range(1, r):
        if gcd(u, r) != 1:
            continue
        m = sorted(u * x % r for x in b)
        for a in range(1, r):
            if gcd(a, r) == 1 and sorted([1, a, r - a]) == m:
                return True
    return False


@lru_cache(maxsize=None)
def normalize_invariance_failures(r):
    """Residue triples mod r whose type changes under a unit or a permutation."""
    units = [u for u in range(1, r) if gcd(u, r) == 1]
    bad = []
    for triple in itertools.combinations_with_replacement(range(r), 3):
        base = normalize_quotient_type(r, triple)
        if (base.canonical is not None) != terminal_oracle(r, triple):
            bad.append(triple)
            continue
        if base.canonical is not None:
            a = base.a
            if base.canonical != (1, a, r - a) or a > r - a or gcd(a, r) != 1:
                bad.append(triple)
                continue
        for u in units:
            for perm in set(itertools.permutations(triple)):
                if normalize_quotient_type(r, [u * x for x in perm]) != base:
                    bad.append(triple)
                    break
    return tuple(bad)


_HOLDS = {
    ">": lambda v: v > 0,
    ">=": lambda v: v >= 0,
    "<=": lambda v: v <= 0,
    "<": lambda v: v < 0,
}


def grid_feasible(raw):
    """Search the grid (i/4, j/4), |i|,|j| <= 24, for a point of an integer 2-variable system.

    ``raw`` holds (a, b, c, rel) meaning a*x + b*y + c REL 0.  Values are
    scaled by 4 so the search stays in integers.
    """
    rows = [(a, b, GRID_STEP * c, _HOLDS[rel]) for a, b, c, rel in raw]
    return any(all(h(a * i + b * j + c) for a, b, c, h in rows) for i in GRID for j in GRID)
