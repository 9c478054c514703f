"""Seeded random draws of group elements, wedges and matrices used by tests, suites and demos."""

from __future__ import annotations

import numpy as np
from scipy.spatial.transform import Rotation

from .minkowski import boost, spatial
from .wedges import Wedge, make_wedge


def random_unit3(rng: np.random.Generator) -> np.ndarray:
    v = rng.normal(size=3)
    return v / np.linalg.norm(v)


def random_lightlike(rng: np.random.Generator) -> np.ndarray:
    return np.concatenate(([1.0], random_unit3(rng)))


def random_rotation(rng: np.random.Generator) -> np.ndarray:
    return spatial(Rotation.random(random_state=rng).as_matrix())


def random_restricted_lorentz(rng: np.random.Generator, max_rapidity: float = 1.5) -> np.ndarray:
    b = boost(random_unit3(rng), rng.uniform(0.0, max_rapidity))
    return b @ random_rotation(rng)


def random_restricted_element(rng: np.random.Generator, max_rapidity: float = 1.5,
                              max_shift: float = 2.0):
    from .poincare import PoincareElement

    return PoincareElement(random_restricted_lorentz(rng, max_rapidity),
                           rng.uniform(-max_shift, max_shift, size=4))


def random_extended_element(rng: np.random.Generator, gamma_range=(0.5, 2.0), **kwargs):
    from .poincare import PoincareElement

    e = random_restricted_element(rng, **kwargs)
    return PoincareElement(e.lam, e.a, rng.uniform(*gamma_range))


def random_wedge(rng: np.random.Generator, max_shift: float = 2.0) -> Wedge:
    while True:
        l1, l2 = random_lightlike(rng), random_lightlike(rng)
        if np.linalg.norm(l1[1:] - l2[1:]) > 0.2:
            return make_wedge(l1, l2, rng.uniform(-max_shift, max_shift, size=4))


def random_origin_wedge(rng: np.random.Generator) -> Wedge:
    return random_wedge(rng, max_shift=0.0)


def random_sl2c(rng: np.random.Generator, scale: float = 1.0) -> np.ndarray:
    m = scale * (rng.normal(size=(2, 2)) + 1j * rng.normal(size=(2, 2))) + np.eye(2)
    return m / np.sqrt(np.linalg.det(m))


def random_disjoint_pair(rng: np.random.Generator) -> tuple[Wedge, Wedge]:
    """A disjoint pair built in normal form around ``W_R`` and moved by a random restricted element.

    Four shapes are drawn with equal weight: the tilted maximal pair
    ``(W_R, W[l2+, (1, cos θ, sin θ, 0), 0])``, the same pair pushed apart by a random
    translation ``d`` with ``Pd·(1 - b, -a) > 0``, the complement ``(W_R, W_R')`` and the
    complement translated into itself.
    """
    from .poincare import act
    from .wedges import causal_complement

    w_r = make_wedge((1.0, 1.0, 0.0, 0.0), (1.0, -1.0, 0.0, 0.0))
    kind = int(rng.integers(4))
    if kind < 2:
        theta = rng.uniform(0.05, np.pi / 2 - 0.05)
        a, b = np.cos(theta), np.sin(theta)
        d = np.zeros(4)
        if kind == 1:
            d = rng.uniform(-1.0, 1.0, size=4)
            height = (1 - b) * d[0] - a * d[1]
            d[0] += (rng.uniform(0.05, 1.0) - height) / (1 - b)
        second = make_wedge((1.0, 0.0, 1.0, 0.0), (1.0, a, b, 0.0), d)
    else:
        second = causal_complement(w_r)
        if kind == 3:
            x0 = rng.uniform(-1.0, 1.0)
            x = np.array([x0, -abs(x0) - rng.uniform(0.05, 1.0), *rng.uniform(-1.0, 1.0, size=2)])
            second = second.translate(x)
    e = random_restricted_element(rng)
    return act(e, w_r), act(e, second)
