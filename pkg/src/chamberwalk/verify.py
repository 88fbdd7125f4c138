"""Named verification suites: seeded, deterministic, machine-readable.

Each suite returns a list of JSON-ready records with a ``pass`` field; a
suite passes iff every record does.  The CLI maps suite failures to exit
code 1.
"""

from __future__ import annotations

import math
import random
from fractions import Fraction
from typing import Callable, Sequence

from chamberwalk import asym, detlab, exact, presets
from chamberwalk.stepmodel import CompositeSpec, lattice_contains, maximal_points

SUITES = ("oracle", "det", "schur", "selberg", "dsin", "signs", "consistency")


def run_suite(name: str, seed: int) -> list[dict]:
    try:
        fn = _SUITE_FNS[name]
    except KeyError:
        raise ValueError(f"unknown suite {name!r}") from None
    return fn(seed)


def suite_passed(records: Sequence[dict]) -> bool:
    return all(r["pass"] for r in records)


# ---------------------------------------------------------------------------
# helpers


def random_chamber_point(rng: random.Random, spec: CompositeSpec, span: int = 8) -> tuple[int, ...]:
    """A random lattice point strictly inside the chamber."""
    while True:
        coords = sorted(rng.sample(range(1, span + spec.k * 2), spec.k))
        pt = tuple(coords)
        if len(set(pt)) == spec.k and lattice_contains(spec, pt):
            return pt


def random_fraction(rng: random.Random, lo: int = -9, hi: int = 9) -> Fraction:
    num = rng.randint(lo, hi)
    den = rng.randint(1, 9)
    return Fraction(num, den)


def _preset_instances(k: int):
    for name in presets.PRESET_NAMES:
        if name in ("lock-step-fixed", "random-turns-fixed"):
            spec = presets._spec_for(name, k)
            u = tuple(range(1, k + 1)) if name == "random-turns-fixed" \
                else tuple(2 * j - 1 for j in range(1, k + 1))
            yield presets.preset_spec(name, k, u=u, v=u)
        elif name in ("lock-step-free", "random-turns-free"):
            u = tuple(range(1, k + 1)) if name == "random-turns-free" \
                else tuple(2 * j - 1 for j in range(1, k + 1))
            yield presets.preset_spec(name, k, u=u)
        else:
            yield presets.preset_spec(name, k)


# ---------------------------------------------------------------------------
# suites


def suite_oracle(seed: int) -> list[dict]:
    """Reflection signed sum against the confined DP on randomized endpoints."""
    rng = random.Random(seed)
    records = []
    for k in (1, 2):
        for inst in _preset_instances(k):
            spec = inst.spec
            for _ in range(3):
                u = random_chamber_point(rng, spec)
                v = random_chamber_point(rng, spec)
                for n in (0, 1, 3, 5):
                    a = exact.count_reflection(spec, u, v, n)
                    b = exact.count_confined(spec, u, v, n)
                    records.append({
                        "identity": "oracle-equivalence",
                        "params": {"preset": inst.name, "k": k, "u": u, "v": v, "n": n},
                        "pass": a == b,
                        "residual": exact.format_count(a - b),
                    })
    return records


def suite_det(seed: int) -> list[dict]:
    """Exact determinant identities at seeded random rational points."""
    rng = random.Random(seed)
    records = []
    for k in (1, 2, 3, 4):
        for _ in range(5):
            z = _distinct_fractions(rng, k, avoid_unit=True)
            for report in (
                detlab.check_typeC_det_identity(z),
                detlab.check_typeC_det_identity(_distinct_fractions(rng, k, positive=True),
                                                half_integer=True),
                detlab.quotient_identity_check(z),
            ):
                records.append(report.to_json())
            u = sorted({Fraction(rng.randint(1, 30), rng.randint(1, 5)) for _ in range(2 * k)})[:k]
            if len(u) == k:
                val = detlab.mixed_vandermonde_det(u, rng.randint(0, k))
                records.append({"identity": "mixed-vandermonde-nonzero",
                                "params": {"k": k}, "pass": val != 0,
                                "residual": 0})
    return records


def _distinct_fractions(rng: random.Random, k: int, positive: bool = False,
                        avoid_unit: bool = False) -> list[Fraction]:
    out: list[Fraction] = []
    while len(out) < k:
        x = random_fraction(rng, lo=1 if positive else -9)
        if x == 0 or (avoid_unit and abs(x) == 1):
            continue
        if any(x == y or x * y == 1 for y in out):
            continue
        out.append(x)
    return out


def suite_schur(seed: int) -> list[dict]:
    """Box-bounded Schur summation against the character ratio, k <= 3, c <= 2."""
    rng = random.Random(seed)
    records = []
    for k in (1, 2, 3):
        for c in (0, 1, 2):
            t = _distinct_fractions(rng, k, positive=True)
            records.append(detlab.schur_orthogonal_identity_check(t, c).to_json())
    return records


def suite_selberg(seed: int) -> list[dict]:
    """Monte Carlo agreement with the Selberg closed forms and Aomoto ratios."""
    records = []
    for k in (1, 2):
        for weight in ("laguerre", "hermite"):
            for which in ("one", "aomoto"):
                rep = detlab.selberg_mc_check(k, weight, which, samples=200_000, seed=seed)
                records.append(rep.to_json())
    return records


def suite_dsin(seed: int) -> list[dict]:
    """Quadratic decay of the determinant asymptotics residuals."""
    rng = random.Random(seed)
    records = []
    for k in (1, 2, 3):
        u = sorted(rng.sample(range(1, 12), k))
        direction = [j + rng.random() for j in range(k)]
        res = {}
        for eps in (0.1, 0.05):
            rep = detlab.dsin_leading_ratio(u, direction, eps)
            res[eps] = abs(rep.residual)
        factor = res[0.1] / res[0.05] if res[0.05] else 4.0
        records.append({"identity": "dsin-decay", "params": {"k": k, "u": u},
                        "pass": 2.5 <= factor <= 6.0, "residual": factor})
        res = {eps: abs(detlab.gaussian_kernel_det_ratio(k, eps).residual)
               for eps in (0.1, 0.05)}
        factor = res[0.1] / res[0.05] if res[0.05] else 4.0
        records.append({"identity": "gaussian-kernel-decay", "params": {"k": k},
                        "pass": 2.5 <= factor <= 6.0, "residual": factor})
    return records


def suite_signs(seed: int) -> list[dict]:
    """Maximal-point shift identity for the sin determinant, all presets."""
    rng = random.Random(seed)
    records = []
    for k in (1, 2, 3):
        for inst in _preset_instances(k):
            spec = inst.spec
            u = random_chamber_point(rng, spec)
            for eps in maximal_points(spec):
                phi = [0.2 + 0.1 * rng.random() + 0.15 * j for j in range(k)]
                residual = detlab.sin_det_shift_residual(u, eps, phi)
                records.append({"identity": "sin-det-shift",
                                "params": {"preset": inst.name, "k": k, "u": u,
                                           "signs": eps},
                                "pass": residual <= 1e-9, "residual": residual})
    return records


def suite_consistency(seed: int) -> list[dict]:
    """Preset formulas against the general evaluators, relative 1e-10 in log."""
    records = []
    for k in (1, 2, 3, 4):
        for inst in _preset_instances(k):
            for n in (10, 100, 1000):
                specialized = presets.preset_asym(inst, n)
                steps = inst.steps(n)
                if inst.free_endpoint:
                    general = asym.asym_free(inst.spec, inst.u, steps)
                else:
                    general = asym.asym_fixed(inst.spec, inst.u, inst.v, steps)
                if not specialized.supported:
                    continue
                diff = abs(specialized.log_value - general.log_value)
                tol = 1e-10 * max(1.0, abs(general.log_value))
                records.append({"identity": "preset-consistency",
                                "params": {"preset": inst.name, "k": k, "n": n},
                                "pass": diff <= tol, "residual": diff})
    return records


_SUITE_FNS: dict[str, Callable[[int], list[dict]]] = {
    "oracle": suite_oracle,
    "det": suite_det,
    "schur": suite_schur,
    "selberg": suite_selberg,
    "dsin": suite_dsin,
    "signs": suite_signs,
    "consistency": suite_consistency,
}
