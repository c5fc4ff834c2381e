"""Named coefficient presets for the experiment runner."""

from __future__ import annotations

import numpy as np

from .fourier import FourierCoefficients, random_band_limited


def _require_kind(model, kind, name):
    if model.kind != kind:
        raise ValueError(f"preset {name!r} requires a {kind} backend")


def _single_mode_torus(model, cutoff, params, rng):
    _require_kind(model, "torus", "single_mode_torus")
    if model.dimension != 1:
        raise ValueError("preset 'single_mode_torus' requires dimension 1")
    k = int(params.get("k", 3))
    if abs(k) > cutoff:
        raise ValueError(f"mode {k} exceeds cutoff {cutoff}")
    # exp(i k theta) has its single coefficient at weight -k
    return FourierCoefficients(model, {(-k,): np.array([[1.0 + 0j]])})


def _two_mode_torus(model, cutoff, params, rng):
    _require_kind(model, "torus", "two_mode_torus")
    if model.dimension != 1:
        raise ValueError("preset 'two_mode_torus' requires dimension 1")
    modes = [int(k) for k in params.get("modes", (1, 2))]
    if len(modes) != len(set(modes)):
        raise ValueError("modes must be distinct")
    if any(abs(k) > cutoff for k in modes):
        raise ValueError(f"modes {modes} exceed cutoff {cutoff}")
    return FourierCoefficients(
        model, {(-k,): np.array([[1.0 + 0j]]) for k in modes}
    )


def _su2_three_modes(model, cutoff, params, rng):
    _require_kind(model, "su2", "su2_three_modes")
    if cutoff < 2:
        raise ValueError("preset 'su2_three_modes' needs cutoff >= 2")
    a2 = np.zeros((3, 3), dtype=complex)
    a2[0, 0] = 0.5
    return FourierCoefficients(
        model,
        {
            0: np.array([[0.2 + 0j]]),
            1: (0.3 / np.sqrt(2.0)) * np.eye(2, dtype=complex),
            2: a2,
        },
    )


def _su2_heat(model, cutoff, params, rng):
    _require_kind(model, "su2", "su2_heat")
    t = float(params.get("t", 0.5))
    if t <= 0.0:
        raise ValueError("diffusion time t must be positive")
    entries = {
        n: np.exp(-t * n * (n + 2) / 4.0) * np.eye(n + 1, dtype=complex)
        for n in range(cutoff + 1)
    }
    return FourierCoefficients(model, entries)


def _random_band_limited(model, cutoff, params, rng):
    band = int(params.get("band", cutoff))
    if not 0 <= band <= cutoff:
        raise ValueError(f"band {band} must lie in 0..{cutoff}")
    scale = float(params.get("scale", 1.0))
    return random_band_limited(model, band, rng, scale=scale)


_PARAM_NAMES = {
    "single_mode_torus": {"k"},
    "two_mode_torus": {"modes"},
    "su2_three_modes": set(),
    "su2_heat": {"t"},
    "random_band_limited": {"band", "scale"},
}

_PRESETS = {
    "single_mode_torus": (
        "one torus character exp(i k theta) on T^1 (param k, default 3)",
        _single_mode_torus,
    ),
    "two_mode_torus": (
        "sum of torus characters on T^1 (param modes, default [1, 2])",
        _two_mode_torus,
    ),
    "su2_three_modes": (
        "fixed SU(2) table supported on weights {0, 1, 2}",
        _su2_three_modes,
    ),
    "su2_heat": (
        "SU(2) heat kernel coefficients exp(-t n(n+2)/4) Id (param t, default 0.5)",
        _su2_heat,
    ),
    "random_band_limited": (
        "seeded random matrices on all weights up to band (params band, scale)",
        _random_band_limited,
    ),
}


def list_presets():
    """Stable (name, description) pairs."""
    return [(name, _PRESETS[name][0]) for name in sorted(_PRESETS)]


def build_preset(name, model, cutoff, params=None, rng=None):
    if name not in _PRESETS:
        known = ", ".join(sorted(_PRESETS))
        raise ValueError(f"unknown preset {name!r} (known: {known})")
    params = dict(params or {})
    extra = set(params) - _PARAM_NAMES[name]
    if extra:
        raise ValueError(f"preset {name!r} got unknown params {sorted(extra)}")
    if rng is None:
        rng = np.random.default_rng(0)
    return _PRESETS[name][1](model, cutoff, params, rng)
