"""Named walk models and their independently coded asymptotic formulas.

Each preset bundles a composite spec with its conventional endpoints and a
length convention (the watermelon parameter n means 2n composite steps).
The per-preset asymptotic evaluators are written directly from the
specialized closed forms, independent of the general evaluators in
``asym``, so the two can be cross-checked against each other.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

from chamberwalk.asym import AsymptoticEstimate, support_positive
from chamberwalk.stepmodel import AtomicKind, CompositeSpec, check_chamber_point

PRESET_NAMES = (
    "lock-step-fixed",
    "watermelon",
    "lock-step-free",
    "star",
    "random-turns-fixed",
    "random-turns-free",
    "tangled-isolated",
    "tangled-no-isolated",
)

_FIXED_ENDPOINT = {"lock-step-fixed", "watermelon", "random-turns-fixed",
                   "tangled-isolated", "tangled-no-isolated"}


@dataclass(frozen=True)
class PresetInstance:
    name: str
    spec: CompositeSpec
    u: tuple[int, ...]
    v: Optional[tuple[int, ...]]        # None for free-endpoint presets
    length_scale: int                   # composite steps per unit of the n parameter

    @property
    def free_endpoint(self) -> bool:
        return self.v is None

    def steps(self, n: int) -> int:
        return self.length_scale * n


def _spec_for(name: str, k: int) -> CompositeSpec:
    if name in ("lock-step-fixed", "watermelon", "lock-step-free", "star"):
        return CompositeSpec(AtomicKind.DIAGONAL, k, [0, 1])
    if name in ("random-turns-fixed", "random-turns-free"):
        return CompositeSpec(AtomicKind.AXIS, k, [0, 1])
    if name == "tangled-isolated":
        return CompositeSpec(AtomicKind.AXIS, k, [1, 1, 1])
    if name == "tangled-no-isolated":
        return CompositeSpec(AtomicKind.AXIS, k, [0, 1, 1])
    raise ValueError(f"unknown preset {name!r}")


def preset_spec(name: str, k: int, u: Optional[Sequence[int]] = None,
                v: Optional[Sequence[int]] = None) -> PresetInstance:
    """Builds a preset instance; endpoints may override the defaults.

    Walker heights 0, 2, ..., 2k-2 are stored shifted by +1 into chamber
    coordinates, so the watermelon and star defaults are (1, 3, ..., 2k-1)
    and the tangled defaults are (1, 2, ..., k).
    """
    if k < 1:
        raise ValueError("k must be >= 1")
    spec = _spec_for(name, k)
    odd = tuple(2 * j - 1 for j in range(1, k + 1))
    consecutive = tuple(range(1, k + 1))
    if name == "watermelon":
        u = odd if u is None else u
        v = odd if v is None else v
    elif name == "star":
        u = odd if u is None else u
    elif name in ("tangled-isolated", "tangled-no-isolated"):
        u = consecutive if u is None else u
        v = consecutive if v is None else v
    if u is None:
        raise ValueError(f"preset {name!r} requires an explicit starting point")
    u = check_chamber_point(spec, u)
    if name in _FIXED_ENDPOINT:
        if v is None:
            raise ValueError(f"preset {name!r} requires an explicit end point")
        v = check_chamber_point(spec, v)
    else:
        if v is not None:
            raise ValueError(f"preset {name!r} has a free end point")
    length_scale = 2 if name == "watermelon" else 1
    return PresetInstance(name=name, spec=spec, u=u, v=v, length_scale=length_scale)


# ---------------------------------------------------------------------------
# specialized asymptotic formulas


def _sq_diff_log(u: Sequence[int]) -> float:
    prod = 1
    for j in range(len(u)):
        for m in range(j + 1, len(u)):
            prod *= u[m] ** 2 - u[j] ** 2
    return math.log(prod)


def _log_odd_factorials(k: int) -> float:
    return sum(math.lgamma(2 * j) for j in range(1, k + 1))


def _fixed_endpoint_log(u: Sequence[int], v: Sequence[int]) -> float:
    prod = 1
    for uj, vj in zip(u, v):
        prod *= uj * vj
    return _sq_diff_log(u) + _sq_diff_log(v) + math.log(prod)


def _free_endpoint_log(u: Sequence[int]) -> float:
    k = len(u)
    out = _sq_diff_log(u)
    for j in range(1, k + 1):
        out += math.log(u[j - 1]) + math.lgamma(j) - math.lgamma(2 * j)
    return out


def preset_asym(instance: PresetInstance, n: int, correction: bool = False) -> AsymptoticEstimate:
    """Leading term of the preset's specialized asymptotic formula (log space)."""
    if n < 1:
        raise ValueError("n must be >= 1")
    k = instance.spec.k
    name = instance.name
    u, v = instance.u, instance.v
    log2, logpi, logn = math.log(2), math.log(math.pi), math.log(n)
    correction_term = 0.0

    odd = tuple(2 * j - 1 for j in range(1, k + 1))

    if name == "lock-step-fixed":
        n_power = -Fraction(2 * k * k + k, 2)
        base_log = n * k * log2
        constant_log = (3 * k / 2) * log2 - (k / 2) * logpi \
            + _fixed_endpoint_log(u, v) - _log_odd_factorials(k)
        correction_term = math.log1p(1 / n)
    elif name == "watermelon":
        # n counts half-lengths: 2n composite steps
        n_power = -Fraction(2 * k * k + k, 2)
        base_log = n * k * math.log(4)
        if u == odd and v == odd:
            constant_log = (k * k - k) * log2 - (k / 2) * logpi + _log_odd_factorials(k)
        else:
            # fall back to the fixed-endpoint form at length 2n
            base_log = 2 * n * k * log2
            constant_log = (3 * k / 2) * log2 - (k / 2) * logpi \
                + _fixed_endpoint_log(u, v) - _log_odd_factorials(k) \
                + float(n_power) * math.log(2)
        correction_term = math.log1p(1 / n)
    elif name == "lock-step-free":
        n_power = -Fraction(k * k, 2)
        base_log = n * k * log2
        constant_log = (k / 2) * log2 - (k / 2) * logpi + _free_endpoint_log(u)
    elif name == "star":
        n_power = -Fraction(k * k, 2)
        base_log = n * k * log2
        if u == odd:
            constant_log = (k * k - k / 2) * log2 - (k / 2) * logpi \
                + sum(math.lgamma(j) for j in range(1, k + 1))
        else:
            constant_log = (k / 2) * log2 - (k / 2) * logpi + _free_endpoint_log(u)
    elif name == "random-turns-fixed":
        n_power = -Fraction(2 * k * k + k, 2)
        base_log = n * math.log(2 * k)
        constant_log = log2 + (k / 2) * (log2 - logpi) \
            + (k * k + k / 2) * math.log(k) \
            + _fixed_endpoint_log(u, v) - _log_odd_factorials(k)
        correction_term = math.log1p(k / n)
    elif name == "random-turns-free":
        # the exponent on k/n = S/(n S'') is k^2/2, as the k=1 central
        # binomial benchmark confirms
        n_power = -Fraction(k * k, 2)
        base_log = n * math.log(2 * k)
        constant_log = (k / 2) * (log2 - logpi) + (k * k / 2) * math.log(k) \
            + _free_endpoint_log(u)
    elif name in ("tangled-isolated", "tangled-no-isolated"):
        s1 = 1 + 2 * k + 4 * k * k if name == "tangled-isolated" else 2 * k + 4 * k * k
        n_power = -Fraction(2 * k * k + k, 2)
        base_log = n * math.log(s1)
        # at the default endpoints u = v = (1..k) the endpoint factor
        # collapses to prod (2j-1)!, matching the printed forms
        constant_log = (k / 2) * (log2 - logpi) \
            + (k * k + k / 2) * math.log(s1 / (2 + 8 * k)) \
            + _fixed_endpoint_log(u, v) - _log_odd_factorials(k)
        correction_term = math.log1p((1 + 2 * k * k) / (n * (1 + 4 * k))) \
            if name == "tangled-no-isolated" \
            else math.log1p(s1 / (2 * n * (1 + 4 * k)))
    else:
        raise ValueError(f"unknown preset {name!r}")

    supported = True
    if v is not None:
        supported = support_positive(instance.spec, u, v, instance.steps(n))
    log_value = base_log + float(n_power) * logn + constant_log
    if correction:
        log_value += correction_term
    if not supported:
        log_value = math.nan
    return AsymptoticEstimate(log_value=log_value, base_log=base_log, n_power=n_power,
                              constant_log=constant_log, correction_applied=correction,
                              supported=supported)
