"""Exact walk counting.

Three independent exact routes are provided:

* ``count_confined``       -- wall-confined dynamic programming over chamber
                              lattice points (the oracle),
* ``count_reflection``     -- signed sum of unconstrained counts over the
                              group of signed permutations,
* ``count_unconstrained``  -- plain coefficient extraction from S(z)^n by
                              sparse convolution.

All arithmetic is exact: Python ints when every weight is an integer,
``Fraction`` otherwise.  Confinement is atomic-strict: every intermediate
atomic position inside a composite step must stay strictly inside the
chamber.
"""

from __future__ import annotations

import itertools
import math
from fractions import Fraction
from typing import Iterator, Sequence

from chamberwalk.stepmodel import (
    AtomicKind,
    CompositeSpec,
    check_chamber_point,
    in_chamber,
    lattice_contains,
    s_one,
)

DEFAULT_STATE_BUDGET = 10 ** 7


class ResourceBudgetError(RuntimeError):
    """The reachable state space exceeds the configured budget."""


# ---------------------------------------------------------------------------
# step distributions


def atomic_displacements(spec: CompositeSpec) -> list[tuple[int, ...]]:
    if spec.kind is AtomicKind.AXIS:
        steps = []
        for j in range(spec.k):
            for sign in (1, -1):
                step = [0] * spec.k
                step[j] = sign
                steps.append(tuple(step))
        return steps
    return [eps for eps in itertools.product((1, -1), repeat=spec.k)]


def _weight_values(spec: CompositeSpec) -> list:
    # integer fast path: plain ints convolve much faster than Fractions
    if spec.integer_weights:
        return [int(w) for w in spec.weights]
    return list(spec.weights)


def _convolve(dist: dict, steps: Sequence[tuple[int, ...]]) -> dict:
    out: dict = {}
    for point, mass in dist.items():
        for step in steps:
            key = tuple(p + s for p, s in zip(point, step))
            if key in out:
                out[key] += mass
            else:
                out[key] = mass
    return out


def composite_step_distribution(spec: CompositeSpec) -> dict:
    """Displacement distribution of one composite step: D = sum_m w_m A^(*m)."""
    steps = atomic_displacements(spec)
    weights = _weight_values(spec)
    zero = weights[0] * 0
    acc: dict = {}
    layer = {tuple([0] * spec.k): weights[0] * 0 + 1}
    for m, w in enumerate(weights):
        if m > 0:
            layer = _convolve(layer, steps)
        if w:
            for point, mass in layer.items():
                acc[point] = acc.get(point, zero) + w * mass
    return acc


_DIST_CACHE: dict = {}


def displacement_distribution(spec: CompositeSpec, n: int) -> dict:
    """Distribution of the n-composite-step displacement, computed once and cached."""
    key = (spec.kind, spec.k, spec.weights, n)
    if key in _DIST_CACHE:
        return _DIST_CACHE[key]
    if n == 0:
        dist = {tuple([0] * spec.k): 1}
    else:
        prev = displacement_distribution(spec, n - 1)
        one = composite_step_distribution(spec)
        dist = {}
        for point, mass in prev.items():
            for step, w in one.items():
                key2 = tuple(p + s for p, s in zip(point, step))
                add = mass * w
                if key2 in dist:
                    dist[key2] += add
                else:
                    dist[key2] = add
    _DIST_CACHE[key] = dist
    return dist


def _is_lockstep(spec: CompositeSpec) -> bool:
    return spec.kind is AtomicKind.DIAGONAL and spec.weights == (Fraction(0), Fraction(1))


def _lockstep_unconstrained(delta: Sequence[int], n: int) -> int:
    total = 1
    for d in delta:
        if (n + d) % 2 != 0 or abs(d) > n:
            return 0
        total *= math.comb(n, (n + d) // 2)
    return total


# ---------------------------------------------------------------------------
# counting


def count_unconstrained(spec: CompositeSpec, u: Sequence[int], v: Sequence[int], n: int):
    """Coefficient of z^(v-u) in S(z)^n."""
    u, v = tuple(u), tuple(v)
    if len(u) != spec.k or len(v) != spec.k:
        raise ValueError("endpoint dimension mismatch")
    for p in (u, v):
        if not lattice_contains(spec, p):
            raise ValueError(f"{p} is not on the walk lattice")
    delta = tuple(b - a for a, b in zip(u, v))
    if _is_lockstep(spec):
        return _lockstep_unconstrained(delta, n)
    return displacement_distribution(spec, n).get(delta, 0)


def signed_permutations(k: int) -> Iterator[tuple[tuple[int, ...], int]]:
    """Yields (image map, sign) over all signed permutations of {1..k}.

    The image map sends position j to (source index, sign); the yielded
    sign is sgn(sigma) * prod_j eps_j.
    """
    for perm in itertools.permutations(range(k)):
        sgn = _perm_sign(perm)
        for eps in itertools.product((1, -1), repeat=k):
            prod_eps = 1
            for e in eps:
                prod_eps *= e
            yield tuple(zip(perm, eps)), sgn * prod_eps


def _perm_sign(perm: Sequence[int]) -> int:
    sign = 1
    seen = [False] * len(perm)
    for i in range(len(perm)):
        if seen[i]:
            continue
        j, length = i, 0
        while not seen[j]:
            seen[j] = True
            j = perm[j]
            length += 1
        if length % 2 == 0:
            sign = -sign
    return sign


def count_reflection(spec: CompositeSpec, u: Sequence[int], v: Sequence[int], n: int,
                     naive: bool = False):
    """Signed sum over signed permutations of unconstrained counts.

    With ``naive=False`` the unconstrained counts are read off a single
    displacement distribution (or the lock-step binomial product); the
    naive mode recomputes every term through ``count_unconstrained`` and is
    kept for differential testing.
    """
    u = check_chamber_point(spec, u)
    v = check_chamber_point(spec, v)
    lockstep = _is_lockstep(spec)
    dist = None
    if not naive and not lockstep:
        dist = displacement_distribution(spec, n)
    total = 0
    for image, sign in signed_permutations(spec.k):
        w = tuple(eps * u[src] for src, eps in image)
        if naive:
            term = count_unconstrained(spec, w, v, n)
        elif lockstep:
            term = _lockstep_unconstrained(tuple(b - a for a, b in zip(w, v)), n)
        else:
            term = dist.get(tuple(b - a for a, b in zip(w, v)), 0)
        total += sign * term
    return total


def _chamber_state_bound(spec: CompositeSpec, u: Sequence[int], n: int) -> int:
    # reachable chamber states sit inside x_k <= u_k + n*d
    box = max(u) + n * spec.degree
    return math.comb(box, spec.k)


def _confined_atomic_step(spec: CompositeSpec, frontier: dict,
                          steps: Sequence[tuple[int, ...]]) -> dict:
    out: dict = {}
    for point, mass in frontier.items():
        for step in steps:
            target = tuple(p + s for p, s in zip(point, step))
            if not in_chamber(target):
                continue
            if target in out:
                out[target] += mass
            else:
                out[target] = mass
    return out


def _confined_composite_step(spec: CompositeSpec, frontier: dict,
                             steps: Sequence[tuple[int, ...]], weights: Sequence) -> dict:
    zero = weights[0] * 0
    acc: dict = {}
    layer = frontier
    for m, w in enumerate(weights):
        if m > 0:
            layer = _confined_atomic_step(spec, layer, steps)
        if w:
            for point, mass in layer.items():
                acc[point] = acc.get(point, zero) + w * mass
    return acc


def _confined_frontier(spec: CompositeSpec, u: Sequence[int], n: int,
                       state_budget: int) -> dict:
    u = check_chamber_point(spec, u)
    if _chamber_state_bound(spec, u, n) > state_budget:
        raise ResourceBudgetError(
            f"reachable state bound exceeds budget of {state_budget} states")
    steps = atomic_displacements(spec)
    weights = _weight_values(spec)
    frontier = {u: weights[0] * 0 + 1}
    for _ in range(n):
        frontier = _confined_composite_step(spec, frontier, steps, weights)
    return frontier


def count_confined(spec: CompositeSpec, u: Sequence[int], v: Sequence[int], n: int,
                   state_budget: int = DEFAULT_STATE_BUDGET):
    """Dynamic-programming oracle for confined walk counts.

    Every intermediate atomic position within each composite step is kept
    strictly inside the chamber.
    """
    v = check_chamber_point(spec, v)
    frontier = _confined_frontier(spec, u, n, state_budget)
    return frontier.get(v, 0)


def count_confined_free(spec: CompositeSpec, u: Sequence[int], n: int,
                        state_budget: int = DEFAULT_STATE_BUDGET):
    """Total confined count over all endpoints: the DP frontier mass after n steps."""
    frontier = _confined_frontier(spec, u, n, state_budget)
    return sum(frontier.values())


def count_reflection_free(spec: CompositeSpec, u: Sequence[int], n: int):
    """Free-endpoint total via the signed sum, summed over reachable endpoints."""
    u = check_chamber_point(spec, u)
    box = max(u) + n * spec.degree
    total = 0
    for v in _chamber_points_upto(spec, box):
        total += count_reflection(spec, u, v, n)
    return total


def _chamber_points_upto(spec: CompositeSpec, bound: int) -> Iterator[tuple[int, ...]]:
    for v in itertools.combinations(range(1, bound + 1), spec.k):
        if lattice_contains(spec, v):
            yield v


def format_count(value) -> str:
    """Serialize an exact count: decimal string, or 'p/q' for non-integers."""
    if isinstance(value, Fraction):
        if value.denominator == 1:
            return str(value.numerator)
        return f"{value.numerator}/{value.denominator}"
    return str(value)
