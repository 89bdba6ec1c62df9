"""Seeded random instances.

All draws go through ``numpy.random.Generator`` with the PCG64 bit
generator (``numpy.random.default_rng(seed)``), so a seed reproduces the
same instance on every platform numpy supports.
"""
from __future__ import annotations

from typing import Optional

import numpy as np

from .assortment import MMNLInstance
from .errors import InvalidInstance
from .facility import PChoiceInstance
from .ratio import MultiRatioInstance, Ratio
from .regions import Cardinality, FeasibleRegion, Knapsack, Unconstrained

RNG_NAME = "numpy.random.PCG64"

# Uniform ranges for each MMNL preset.  "competitive": large no-purchase
# weight and narrow revenues; "monopoly": the opposite.
MMNL_PRESETS = {
    "uniform": {"v": (0.1, 1.0), "v0": (0.5, 5.0), "r": (1.0, 5.0)},
    "competitive": {"v": (0.1, 1.0), "v0": (20.0, 40.0), "r": (1.0, 1.5)},
    "monopoly": {"v": (0.5, 1.5), "v0": (0.01, 0.1), "r": (1.0, 10.0)},
}

PCHOICE_PRESETS = {
    "uniform": {"v": (0.5, 2.0), "w": (0.5, 2.0), "d": (1.0, 10.0)},
    "near_uniform": {"v": (0.95, 1.0), "w": (0.95, 1.0), "d": (1.0, 10.0)},
}


def rng_for(seed: Optional[int]) -> np.random.Generator:
    return np.random.default_rng(seed)


def _uniform(rng, bounds, size=None):
    lo, hi = bounds
    if not lo <= hi:
        raise InvalidInstance(f"invalid range [{lo}, {hi}]")
    return rng.uniform(lo, hi, size)


def random_region(rng: np.random.Generator, n: int, kind: str, p: Optional[int] = None,
                  capacity_fraction: Optional[float] = None) -> FeasibleRegion:
    if kind == "unconstrained":
        return Unconstrained()
    if kind == "cardinality":
        return Cardinality(p if p is not None else int(rng.integers(1, n + 1)))
    if kind == "knapsack":
        w = rng.uniform(0.0, 1.0, n)
        frac = capacity_fraction if capacity_fraction is not None else rng.uniform(0.2, 0.8)
        return Knapsack(w, frac * w.sum())
    raise InvalidInstance(f"unknown region kind {kind!r}")


def random_ratio(
    rng: np.random.Generator,
    n: int,
    *,
    a_range=(0.0, 1.0),
    b_range=(0.1, 1.0),
    b0_range=(0.01, 10.0),
    ratio_spread: Optional[float] = None,
    homogeneous: bool = False,
) -> Ratio:
    """Random ratio; ``b0`` is log-uniform over ``b0_range`` unless homogeneous.

    With ``ratio_spread=s`` the item ratios ``a_i/b_i`` are drawn from
    ``[1, 1 + s]`` instead of drawing ``a`` directly.
    """
    b = _uniform(rng, b_range, n)
    if ratio_spread is None:
        a = _uniform(rng, a_range, n)
    else:
        a = b * rng.uniform(1.0, 1.0 + ratio_spread, n)
    if homogeneous:
        b0 = 0.0
    else:
        lo, hi = b0_range
        b0 = float(np.exp(rng.uniform(np.log(lo), np.log(hi))))
    return Ratio(a, b0, b)


def random_multiratio(
    rng: np.random.Generator, n: int, m: int = 1, region: str = "unconstrained",
    p: Optional[int] = None, **ratio_kw
) -> MultiRatioInstance:
    ratios = tuple(random_ratio(rng, n, **ratio_kw) for _ in range(m))
    return MultiRatioInstance(ratios, random_region(rng, n, region, p))


def random_mmnl(
    rng: np.random.Generator,
    n: int,
    m: int = 1,
    *,
    preset: str = "uniform",
    region: str = "unconstrained",
    p: Optional[int] = None,
    v_range=None,
    v0_range=None,
    r_range=None,
) -> MMNLInstance:
    if preset == "value_conscious":
        return value_conscious_mmnl(rng, n, m, region=region, p=p)
    if preset not in MMNL_PRESETS:
        raise InvalidInstance(f"unknown MMNL preset {preset!r}")
    ranges = dict(MMNL_PRESETS[preset])
    for key, given in (("v", v_range), ("v0", v0_range), ("r", r_range)):
        if given is not None:
            ranges[key] = tuple(given)
    probs = rng.dirichlet(np.ones(m))
    v = _uniform(rng, ranges["v"], (m, n))
    v0 = _uniform(rng, ranges["v0"], m)
    r = _uniform(rng, ranges["r"], n)
    return MMNLInstance(probs, v0, v, r, random_region(rng, n, region, p))


def value_conscious_mmnl(
    rng: np.random.Generator, n: int, m: int = 1, *, region: str = "unconstrained",
    p: Optional[int] = None
) -> MMNLInstance:
    """Strictly decreasing revenues, and per segment weights ``v`` increasing with ``r v`` decreasing."""
    r = np.sort(rng.uniform(1.0, 10.0, n))[::-1].copy()
    while np.any(np.diff(r) >= 0):
        r = np.sort(rng.uniform(1.0, 10.0, n))[::-1].copy()
    v = np.empty((m, n))
    for k in range(m):
        v[k, 0] = rng.uniform(0.1, 1.0)
        for i in range(1, n):
            # r_i v_i >= r_{i+1} v_{i+1}  <=>  v_{i+1} <= v_i r_i / r_{i+1}
            hi = v[k, i - 1] * r[i - 1] / r[i]
            v[k, i] = v[k, i - 1] + rng.uniform(0.05, 0.95) * (hi - v[k, i - 1])
    probs = rng.dirichlet(np.ones(m))
    v0 = rng.uniform(0.5, 5.0, m)
    return MMNLInstance(probs, v0, v, r, random_region(rng, n, region, p))


def random_pchoice(
    rng: np.random.Generator,
    n: int,
    m: int,
    p: int,
    *,
    delta: float = 0.5,
    preset: str = "uniform",
    v_range=None,
    w_range=None,
    d_range=None,
) -> PChoiceInstance:
    if preset not in PCHOICE_PRESETS:
        raise InvalidInstance(f"unknown p-choice preset {preset!r}")
    ranges = dict(PCHOICE_PRESETS[preset])
    for key, given in (("v", v_range), ("w", w_range), ("d", d_range)):
        if given is not None:
            ranges[key] = tuple(given)
    d = _uniform(rng, ranges["d"], m)
    v = _uniform(rng, ranges["v"], (m, n))
    w = _uniform(rng, ranges["w"], n)
    return PChoiceInstance(d, v, w, p, delta)
