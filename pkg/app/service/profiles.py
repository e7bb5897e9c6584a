# -*- coding: utf-8 -*-
"""
Initial data builders. Every profile is a callable taking either an array
of radii (radial grids) or two coordinate arrays (planar grids).
"""

import numpy as np

from app.errors import InvalidParameterError
from app.service import closed_forms

PROFILE_BUMP = "bump"
PROFILE_GAUSSIAN = "gaussian"
PROFILE_RANDOM = "random"
PROFILE_CONSTANT = "constant"
PROFILE_SUPERSOLUTION = "supersolution"
PROFILE_COUNTEREXAMPLE = "counterexample"

PROFILES = (PROFILE_BUMP, PROFILE_GAUSSIAN, PROFILE_RANDOM, PROFILE_CONSTANT,
            PROFILE_SUPERSOLUTION, PROFILE_COUNTEREXAMPLE)


def _radius(coords):
    if len(coords) == 1:
        return np.asarray(coords[0], dtype=float)
    x, y = coords
    return np.hypot(x, y)


def radially(shape):
    """Lifts f(r) to a profile accepting radii or (x, y)."""
    def profile(*coords):
        return shape(_radius(coords))
    return profile


def bump(amplitude=1.0, width=0.25, floor=0.0):
    """Smooth compactly supported bump exp(1 - 1/(1 - (r/width)^2)) on r < width."""
    if not width > 0:
        raise InvalidParameterError(f"bump width must be positive, got {width}")

    def shape(r):
        s = np.minimum((r / width) ** 2, 1.0)
        inside = s < 1.0
        out = np.zeros_like(s)
        out[inside] = np.exp(1.0 - 1.0 / (1.0 - s[inside]))
        return floor + amplitude * out
    return radially(shape)


def gaussian(amplitude=1.0, width=0.25, floor=0.0):
    if not width > 0:
        raise InvalidParameterError(f"gaussian width must be positive, got {width}")
    return radially(lambda r: floor + amplitude * np.exp(-(r / width) ** 2))


def constant(value=1.0):
    return radially(lambda r: np.full(np.shape(r), float(value)))


def random_positive(seed=0, amplitude=1.0, width=0.25, floor=0.1, modes=4, radius=1.0, symmetric=True):
    """
    floor plus a seeded sum of Gaussian humps; strictly positive when floor > 0.
    symmetric humps are rings centred at random radii, otherwise random
    planar centres.
    """
    if not floor > 0:
        raise InvalidParameterError(f"random profiles need a positive floor, got {floor}")
    rng = np.random.default_rng(seed)
    weights = amplitude * rng.uniform(0.2, 1.0, size=modes)
    widths = width * rng.uniform(0.5, 1.5, size=modes)
    if symmetric:
        centres = 0.5 * radius * rng.uniform(0.0, 1.0, size=modes)

        def shape(r):
            total = np.full(np.shape(r), floor)
            for weight, spread, centre in zip(weights, widths, centres):
                total = total + weight * np.exp(-((r - centre) / spread) ** 2)
            return total
        return radially(shape)

    points = 0.5 * radius * rng.uniform(-1.0, 1.0, size=(modes, 2))

    def planar(x, y):
        total = np.full(np.shape(x), floor)
        for weight, spread, (cx, cy) in zip(weights, widths, points):
            total = total + weight * np.exp(-((x - cx) ** 2 + (y - cy) ** 2) / spread ** 2)
        return total
    return planar


def supersolution(sp, t):
    return radially(lambda r: closed_forms.supersolution_profile(sp, r, t))


def counterexample(ce, t):
    return radially(lambda r: closed_forms.counterexample_eval(ce, r, t))


def build(settings, closed_form=None, symmetric=True):
    """Profile named by solver settings; closed_form supplies sp/ce for the closed-form kinds."""
    name = settings.profile
    if name == PROFILE_BUMP:
        return bump(settings.amplitude, settings.width, settings.floor)
    if name == PROFILE_GAUSSIAN:
        return gaussian(settings.amplitude, settings.width, settings.floor)
    if name == PROFILE_CONSTANT:
        return constant(settings.amplitude)
    if name == PROFILE_RANDOM:
        return random_positive(settings.seed, settings.amplitude, settings.width,
                               settings.floor if settings.floor > 0 else 0.1,
                               radius=settings.radius, symmetric=symmetric)
    if name in (PROFILE_SUPERSOLUTION, PROFILE_COUNTEREXAMPLE):
        if closed_form is None:
            raise InvalidParameterError(f"profile {name} needs closed-form parameters")
        if name == PROFILE_SUPERSOLUTION:
            return supersolution(closed_form, settings.t_start)
        return counterexample(closed_form, settings.t_start)
    raise InvalidParameterError(f"unknown profile: {name}")
