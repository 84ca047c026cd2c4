"""Classical 23-function benchmark suite plus an open objective registry.

F1-F13 are scalable (default dimension 30), F14-F23 are fixed-dimension.
All functions are minimized.  F7 is the only stochastic entry: it adds a
uniform [0, 1) noise term drawn from the stream passed to evaluate(); with no
stream it is evaluated noise-free.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Optional

import numpy as np

from .core import Bounds, as_vector

__all__ = [
    "ObjectiveSpec",
    "register",
    "lookup",
    "names",
    "registry_rows",
]

_2PI = 2.0 * math.pi


@dataclass(frozen=True)
class ObjectiveSpec:
    """A named minimization target over a box domain.

    evaluate() validates dimension and bounds membership; optimizer loops
    clamp before calling, so a rejection always signals a caller bug.
    """

    name: str
    dimension: int
    bounds: Bounds
    fn: Callable
    known_min: Optional[float] = None
    known_argmin: Optional[np.ndarray] = None
    stochastic: bool = False

    def __post_init__(self):
        if self.dimension < 1:
            raise ValueError("dimension must be at least 1")
        if self.bounds.dimension != self.dimension:
            raise ValueError("bounds dimension does not match objective dimension")
        if self.known_argmin is not None:
            arg = as_vector(self.known_argmin, dim=self.dimension, name="known_argmin")
            arg.flags.writeable = False
            object.__setattr__(self, "known_argmin", arg)

    def evaluate(self, x, rng=None) -> float:
        x = as_vector(x, dim=self.dimension, name="x")
        if not self.bounds.contains(x):
            raise ValueError(f"input outside the domain of {self.name}")
        return self.evaluate_clamped(x, rng)

    def evaluate_clamped(self, x, rng=None) -> float:
        # validation-free path for optimizer loops, which clamp to bounds
        # before every call
        value = self.fn(x, rng) if self.stochastic else self.fn(x)
        return float(value)


# ---------------------------------------------------------------------------
# scalable functions, F1-F13


def sphere(x):
    """F1: sum x_i^2; [-100, 100]^d; min 0 at the origin."""
    return float(np.dot(x, x))


def schwefel_2_22(x):
    """F2: sum |x_i| + prod |x_i|; [-10, 10]^d; min 0 at the origin."""
    ax = np.abs(x)
    return float(np.sum(ax) + np.prod(ax))


def schwefel_1_2(x):
    """F3: sum of squared prefix sums; [-100, 100]^d; min 0 at the origin."""
    c = np.cumsum(x)
    return float(np.dot(c, c))


def schwefel_2_21(x):
    """F4: max |x_i|; [-100, 100]^d; min 0 at the origin."""
    return float(np.max(np.abs(x)))


def rosenbrock(x):
    """F5: banana valley; [-30, 30]^d; min 0 at (1, ..., 1)."""
    a = x[1:] - x[:-1] ** 2
    b = x[:-1] - 1.0
    return float(np.sum(100.0 * a * a + b * b))


def step(x):
    """F6: sum floor(x_i + 0.5)^2; [-100, 100]^d; min 0 at the origin."""
    f = np.floor(x + 0.5)
    return float(np.dot(f, f))


def quartic_noise(x, rng=None):
    """F7: sum i * x_i^4 plus uniform [0, 1) noise; [-1.28, 1.28]^d.

    Noise-free minimum is 0 at the origin; rng=None evaluates noise-free.
    """
    i = np.arange(1, x.size + 1)
    base = float(np.sum(i * x ** 4))
    if rng is None:
        return base
    return base + rng.uniform()


def schwefel_2_26(x):
    """F8: -sum x_i sin(sqrt|x_i|); [-500, 500]^d; min -418.9829 * d."""
    return float(-np.sum(x * np.sin(np.sqrt(np.abs(x)))))


def rastrigin(x):
    """F9: sum (x_i^2 - 10 cos(2 pi x_i) + 10); [-5.12, 5.12]^d; min 0."""
    return float(np.sum(x * x - 10.0 * np.cos(_2PI * x) + 10.0))


def ackley(x):
    """F10: exponential well; [-32, 32]^d; min 0 at the origin."""
    d = x.size
    s1 = math.sqrt(np.dot(x, x) / d)
    s2 = float(np.sum(np.cos(_2PI * x))) / d
    return -20.0 * math.exp(-0.2 * s1) - math.exp(s2) + 20.0 + math.e


def griewank(x):
    """F11: quadratic bowl with cosine ripples; [-600, 600]^d; min 0."""
    i = np.arange(1, x.size + 1)
    return float(np.dot(x, x) / 4000.0 - np.prod(np.cos(x / np.sqrt(i))) + 1.0)


def _penalty(x, a, k, m):
    over = np.maximum(x - a, 0.0)
    under = np.maximum(-x - a, 0.0)
    return float(k * np.sum(over ** m + under ** m))


def penalized_1(x):
    """F12: penalized sine valley in y = 1 + (x+1)/4; [-50, 50]^d; min 0 at -1."""
    d = x.size
    y = 1.0 + (x + 1.0) / 4.0
    s = 10.0 * math.sin(math.pi * y[0]) ** 2
    s += float(np.sum((y[:-1] - 1.0) ** 2 * (1.0 + 10.0 * np.sin(math.pi * y[1:]) ** 2)))
    s += (y[-1] - 1.0) ** 2
    return math.pi / d * s + _penalty(x, 10.0, 100.0, 4)


def penalized_2(x):
    """F13: penalized sine valley in x; [-50, 50]^d; min 0 at (1, ..., 1)."""
    s = math.sin(3.0 * math.pi * x[0]) ** 2
    s += float(np.sum((x[:-1] - 1.0) ** 2 * (1.0 + np.sin(3.0 * math.pi * x[1:]) ** 2)))
    s += (x[-1] - 1.0) ** 2 * (1.0 + math.sin(_2PI * x[-1]) ** 2)
    return 0.1 * s + _penalty(x, 5.0, 100.0, 4)


# ---------------------------------------------------------------------------
# fixed-dimension functions, F14-F23

_FOX_A1 = np.tile([-32.0, -16.0, 0.0, 16.0, 32.0], 5)
_FOX_A2 = np.repeat([-32.0, -16.0, 0.0, 16.0, 32.0], 5)
_FOX_J = np.arange(1, 26, dtype=np.float64)


def foxholes(x):
    """F14: 25-hole inverse-sum surface; [-65.536, 65.536]^2; min ~0.998."""
    d = _FOX_J + (x[0] - _FOX_A1) ** 6 + (x[1] - _FOX_A2) ** 6
    return 1.0 / (1.0 / 500.0 + float(np.sum(1.0 / d)))


_KOW_A = np.array([0.1957, 0.1947, 0.1735, 0.16, 0.0844, 0.0627,
                   0.0456, 0.0342, 0.0323, 0.0235, 0.0246])
_KOW_B = 1.0 / np.array([0.25, 0.5, 1.0, 2.0, 4.0, 6.0, 8.0, 10.0, 12.0, 14.0, 16.0])


def kowalik(x):
    """F15: rational model fit residual; [-5, 5]^4; min ~3.075e-4."""
    num = x[0] * (_KOW_B ** 2 + _KOW_B * x[1])
    den = _KOW_B ** 2 + _KOW_B * x[2] + x[3]
    r = _KOW_A - num / den
    return float(np.dot(r, r))


def six_hump_camel(x):
    """F16: two global minima at ~(+-0.0898, -+0.7127); [-5, 5]^2; min ~-1.0316."""
    x1, x2 = x[0], x[1]
    return (4.0 * x1 ** 2 - 2.1 * x1 ** 4 + x1 ** 6 / 3.0
            + x1 * x2 - 4.0 * x2 ** 2 + 4.0 * x2 ** 4)


def branin(x):
    """F17: three global minima; x1 in [-5, 10], x2 in [0, 15]; min 5/(4 pi)."""
    x1, x2 = x[0], x[1]
    a = x2 - 5.1 * x1 ** 2 / (4.0 * math.pi ** 2) + 5.0 * x1 / math.pi - 6.0
    return a * a + 10.0 * (1.0 - 1.0 / (8.0 * math.pi)) * math.cos(x1) + 10.0


def goldstein_price(x):
    """F18: polynomial surface; [-2, 2]^2; min 3 at (0, -1)."""
    x1, x2 = x[0], x[1]
    p = 1.0 + (x1 + x2 + 1.0) ** 2 * (
        19.0 - 14.0 * x1 + 3.0 * x1 ** 2 - 14.0 * x2 + 6.0 * x1 * x2 + 3.0 * x2 ** 2)
    q = 30.0 + (2.0 * x1 - 3.0 * x2) ** 2 * (
        18.0 - 32.0 * x1 + 12.0 * x1 ** 2 + 48.0 * x2 - 36.0 * x1 * x2 + 27.0 * x2 ** 2)
    return p * q


_H3_A = np.array([[3.0, 10.0, 30.0],
                  [0.1, 10.0, 35.0],
                  [3.0, 10.0, 30.0],
                  [0.1, 10.0, 35.0]])
_H3_P = 1e-4 * np.array([[3689.0, 1170.0, 2673.0],
                         [4699.0, 4387.0, 7470.0],
                         [1091.0, 8732.0, 5547.0],
                         [381.0, 5743.0, 8828.0]])
_H6_A = np.array([[10.0, 3.0, 17.0, 3.5, 1.7, 8.0],
                  [0.05, 10.0, 17.0, 0.1, 8.0, 14.0],
                  [3.0, 3.5, 1.7, 10.0, 17.0, 8.0],
                  [17.0, 8.0, 0.05, 10.0, 0.1, 14.0]])
_H6_P = 1e-4 * np.array([[1312.0, 1696.0, 5569.0, 124.0, 8283.0, 5886.0],
                         [2329.0, 4135.0, 8307.0, 3736.0, 1004.0, 9991.0],
                         [2348.0, 1451.0, 3522.0, 2883.0, 3047.0, 6650.0],
                         [4047.0, 8828.0, 8732.0, 5743.0, 1091.0, 381.0]])
_H_C = np.array([1.0, 1.2, 3.0, 3.2])


def hartmann_3(x):
    """F19: four-peak exponential mixture; [0, 1]^3; min ~-3.8628."""
    e = np.sum(_H3_A * (x - _H3_P) ** 2, axis=1)
    return float(-np.dot(_H_C, np.exp(-e)))


def hartmann_6(x):
    """F20: four-peak exponential mixture; [0, 1]^6; min ~-3.3224."""
    e = np.sum(_H6_A * (x - _H6_P) ** 2, axis=1)
    return float(-np.dot(_H_C, np.exp(-e)))


_SHEKEL_A = np.array([[4.0, 4.0, 4.0, 4.0],
                      [1.0, 1.0, 1.0, 1.0],
                      [8.0, 8.0, 8.0, 8.0],
                      [6.0, 6.0, 6.0, 6.0],
                      [3.0, 7.0, 3.0, 7.0],
                      [2.0, 9.0, 2.0, 9.0],
                      [5.0, 5.0, 3.0, 3.0],
                      [8.0, 1.0, 8.0, 1.0],
                      [6.0, 2.0, 6.0, 2.0],
                      [7.0, 3.6, 7.0, 3.6]])
_SHEKEL_C = np.array([0.1, 0.2, 0.2, 0.4, 0.4, 0.6, 0.3, 0.7, 0.5, 0.5])


def _shekel(x, m):
    d = np.sum((_SHEKEL_A[:m] - x) ** 2, axis=1) + _SHEKEL_C[:m]
    return float(-np.sum(1.0 / d))


def shekel_5(x):
    """F21: five-well inverse-distance surface; [0, 10]^4; min ~-10.1532."""
    return _shekel(x, 5)


def shekel_7(x):
    """F22: seven-well inverse-distance surface; [0, 10]^4; min ~-10.4029."""
    return _shekel(x, 7)


def shekel_10(x):
    """F23: ten-well inverse-distance surface; [0, 10]^4; min ~-10.5364."""
    return _shekel(x, 10)


# ---------------------------------------------------------------------------
# registry

# Fixed-dimension optima below are the published locations polished to full
# float precision so evaluate(known_argmin) == known_min holds to 1e-9.
_X8 = 420.9687463599821
_F8_PER_DIM = -418.98288727243374
_ARG_F14 = (-31.978334129018993, -31.978334129018993)
_MIN_F14 = 0.9980038377944498
_ARG_F15 = (0.19283345308128597, 0.19083623999084226, 0.12311729927711779,
            0.13576599026903755)
_MIN_F15 = 0.0003074859878056054
_ARG_F16 = (0.08984201652927098, -0.7126564013807202)
_MIN_F16 = -1.0316284534898776
_ARG_F17 = (math.pi, 2.275)
_MIN_F17 = 5.0 / (4.0 * math.pi)
_ARG_F19 = (0.11458888440268464, 0.5556488943152593, 0.852546985061467)
_MIN_F19 = -3.862779787332663
_ARG_F20 = (0.20168951157435108, 0.15001069205671208, 0.4768739741316563,
            0.27533243023866893, 0.31165161699036537, 0.6573005343596302)
_MIN_F20 = -3.322368011415515
_ARG_F21 = (4.000037152376549, 4.000133278657566, 4.000037151057555,
            4.000133277090425)
_MIN_F21 = -10.153199679058229
_ARG_F22 = (4.000572916903747, 4.000689366493592, 3.999489708812103,
            3.9996061590298426)
_MIN_F22 = -10.402940566818664
_ARG_F23 = (4.000746530253313, 4.000592936779709, 3.9996633957714787,
            3.9995097993299975)
_MIN_F23 = -10.536409816692045


class _Entry:
    """Registry slot: builds an ObjectiveSpec on demand."""

    def __init__(self, index, canonical, factory, scalable, default_dim):
        self.index = index
        self.canonical = canonical
        self.factory = factory
        self.scalable = scalable
        self.default_dim = default_dim


_REGISTRY: dict = {}
_ALIASES: dict = {}


def register(key: str, factory: Callable[[int], ObjectiveSpec], *, scalable: bool,
             default_dim: int, aliases=(), index: Optional[int] = None):
    """Add an objective family under a key plus optional aliases.

    factory(dim) must return an ObjectiveSpec of that dimension; for
    non-scalable entries it is only ever called with default_dim.
    """
    k = key.lower()
    if k in _ALIASES:
        raise ValueError(f"objective {key!r} is already registered")
    entry = _Entry(index, key, factory, scalable, default_dim)
    _REGISTRY[k] = entry
    _ALIASES[k] = k
    for alias in aliases:
        a = alias.lower()
        if a in _ALIASES:
            raise ValueError(f"alias {alias!r} is already registered")
        _ALIASES[a] = k


def lookup(name: str, dimension: Optional[int] = None) -> ObjectiveSpec:
    """Resolve a registered objective by name or alias, case-insensitive."""
    key = _ALIASES.get(str(name).lower())
    if key is None:
        raise KeyError(f"unknown objective {name!r}")
    entry = _REGISTRY[key]
    if dimension is None:
        dimension = entry.default_dim
    elif not entry.scalable and dimension != entry.default_dim:
        raise ValueError(
            f"{entry.canonical} has fixed dimension {entry.default_dim}"
        )
    elif dimension < 1:
        raise ValueError("dimension must be at least 1")
    return entry.factory(int(dimension))


def names() -> list:
    """Registered canonical keys in registration order."""
    return [e.canonical for e in _REGISTRY.values()]


def registry_rows() -> list:
    """One (name, dimension_rule, bounds, known_min) tuple per entry."""
    rows = []
    for entry in _REGISTRY.values():
        spec = entry.factory(entry.default_dim)
        dim_rule = "scalable" if entry.scalable else f"fixed({entry.default_dim})"
        lo = float(spec.bounds.lower[0])
        hi = float(spec.bounds.upper[0])
        uniform = np.all(spec.bounds.lower == lo) and np.all(spec.bounds.upper == hi)
        if uniform:
            bounds_txt = f"[{lo:g}, {hi:g}]^{spec.dimension}"
        else:
            pairs = ",".join(
                f"[{l:g},{u:g}]" for l, u in zip(spec.bounds.lower, spec.bounds.upper)
            )
            bounds_txt = pairs
        rows.append((entry.canonical, dim_rule, bounds_txt, spec.known_min))
    return rows


def _scalable(key, index, fn, low, high, known_min_fn, argmin_fn, aliases,
              stochastic=False):
    def factory(dim):
        return ObjectiveSpec(
            name=key,
            dimension=dim,
            bounds=Bounds.cube(low, high, dim),
            fn=fn,
            known_min=known_min_fn(dim),
            known_argmin=argmin_fn(dim),
            stochastic=stochastic,
        )

    register(key, factory, scalable=True, default_dim=30, aliases=aliases,
             index=index)


def _fixed(key, index, fn, bounds, known_min, known_argmin, aliases):
    def factory(dim):
        return ObjectiveSpec(
            name=key,
            dimension=dim,
            bounds=bounds,
            fn=fn,
            known_min=known_min,
            known_argmin=np.asarray(known_argmin, dtype=np.float64),
        )

    register(key, factory, scalable=False, default_dim=bounds.dimension,
             aliases=aliases, index=index)


_zero = lambda d: 0.0
_origin = lambda d: np.zeros(d)

_scalable("F1", 1, sphere, -100, 100, _zero, _origin, ("sphere",))
_scalable("F2", 2, schwefel_2_22, -10, 10, _zero, _origin, ("schwefel222",))
_scalable("F3", 3, schwefel_1_2, -100, 100, _zero, _origin, ("schwefel12",))
_scalable("F4", 4, schwefel_2_21, -100, 100, _zero, _origin, ("schwefel221",))
_scalable("F5", 5, rosenbrock, -30, 30, _zero, lambda d: np.ones(d), ("rosenbrock",))
_scalable("F6", 6, step, -100, 100, _zero, _origin, ("step",))
_scalable("F7", 7, quartic_noise, -1.28, 1.28, _zero, _origin, ("quartic",),
          stochastic=True)
_scalable("F8", 8, schwefel_2_26, -500, 500, lambda d: _F8_PER_DIM * d,
          lambda d: np.full(d, _X8), ("schwefel226",))
_scalable("F9", 9, rastrigin, -5.12, 5.12, _zero, _origin, ("rastrigin",))
_scalable("F10", 10, ackley, -32, 32, _zero, _origin, ("ackley",))
_scalable("F11", 11, griewank, -600, 600, _zero, _origin, ("griewank",))
_scalable("F12", 12, penalized_1, -50, 50, _zero, lambda d: -np.ones(d),
          ("penalized1",))
_scalable("F13", 13, penalized_2, -50, 50, _zero, lambda d: np.ones(d),
          ("penalized2",))

_fixed("F14", 14, foxholes, Bounds.cube(-65.536, 65.536, 2), _MIN_F14, _ARG_F14,
       ("foxholes",))
_fixed("F15", 15, kowalik, Bounds.cube(-5, 5, 4), _MIN_F15, _ARG_F15, ("kowalik",))
_fixed("F16", 16, six_hump_camel, Bounds.cube(-5, 5, 2), _MIN_F16, _ARG_F16,
       ("sixhumpcamel", "camel"))
_fixed("F17", 17, branin, Bounds(np.array([-5.0, 0.0]), np.array([10.0, 15.0])),
       _MIN_F17, _ARG_F17, ("branin",))
_fixed("F18", 18, goldstein_price, Bounds.cube(-2, 2, 2), 3.0, (0.0, -1.0),
       ("goldsteinprice",))
_fixed("F19", 19, hartmann_3, Bounds.cube(0, 1, 3), _MIN_F19, _ARG_F19,
       ("hartmann3",))
_fixed("F20", 20, hartmann_6, Bounds.cube(0, 1, 6), _MIN_F20, _ARG_F20,
       ("hartmann6",))
_fixed("F21", 21, shekel_5, Bounds.cube(0, 10, 4), _MIN_F21, _ARG_F21, ("shekel5",))
_fixed("F22", 22, shekel_7, Bounds.cube(0, 10, 4), _MIN_F22, _ARG_F22, ("shekel7",))
_fixed("F23", 23, shekel_10, Bounds.cube(0, 10, 4), _MIN_F23, _ARG_F23, ("shekel10",))
