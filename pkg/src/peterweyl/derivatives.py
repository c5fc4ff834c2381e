"""Finite-difference realization of left-invariant differential operators.

These are the independent oracles the Fourier-side multiplier action is
checked against: derivatives are taken along one-parameter subgroups,
(X f)(g) = d/dt f(g exp(t X)) at t = 0, with central second-order
stencils.  A polynomial in the backend generators expands into a stencil
(a weighted list of group translations) so a whole central operator can
be applied to vectorized samples in one pass; Richardson extrapolation
over the step is available for the higher-degree compositions whose
plain-stencil error would swamp the target tolerance.
"""

from __future__ import annotations

import numpy as np

DEFAULT_STEP = 1e-4


def left_invariant_derivative(model, func, axis, point, step=DEFAULT_STEP):
    """Central difference of t -> func(g exp(t X_axis)) at t = 0."""
    fp = func(model.translate(point, axis, step))
    fm = func(model.translate(point, axis, -step))
    return (fp - fm) / (2.0 * step)

def left_invariant_second_derivative(model, func, axis, point, step=DEFAULT_STEP):
    """Three-point second difference along exp(t X_axis)."""
    fp = func(model.translate(point, axis, step))
    f0 = func(point)
    fm = func(model.translate(point, axis, -step))
    return (fp - 2.0 * f0 + fm) / (step * step)


def _generator_stencil(model, axis, power, step):
    """Stencil for one generator raised to ``power``.

    Torus generator = coordinate derivative (odd powers use one central
    first difference); SU(2) generator = Casimir, a negated sum of
    second differences over the three axes.
    """
    identity = model.shift_identity()
    stencil = [(identity, 1.0)]
    if model.kind == "torus":
        h2 = step * step
        second = [
            (model.shift_step(axis, step), 1.0 / h2),
            (identity, -2.0 / h2),
            (model.shift_step(axis, -step), 1.0 / h2),
        ]
        first = [
            (model.shift_step(axis, step), 0.5 / step),
            (model.shift_step(axis, -step), -0.5 / step),
        ]
        for _ in range(power // 2):
            stencil = _compose(model, stencil, second)
        if power % 2:
            stencil = _compose(model, stencil, first)
        return stencil
    # su2: the single generator is the Casimir
    h2 = step * step
    casimir = [(identity, 6.0 / h2)]
    for ax in range(3):
        casimir.append((model.shift_step(ax, step), -1.0 / h2))
        casimir.append((model.shift_step(ax, -step), -1.0 / h2))
    for _ in range(power):
        stencil = _compose(model, stencil, casimir)
    return stencil


def _compose(model, s1, s2):
    out = {}
    for sh1, c1 in s1:
        for sh2, c2 in s2:
            sh = model.shift_compose(sh1, sh2)
            key = model.shift_key(sh)
            if key in out:
                out[key] = (out[key][0], out[key][1] + c1 * c2)
            else:
                out[key] = (sh, c1 * c2)
    return list(out.values())


def central_element_stencil(model, element, step=DEFAULT_STEP):
    """Expand a central polynomial operator into (shift, coefficient) pairs."""
    if element.arity != model.generator_count:
        raise ValueError(
            f"element arity {element.arity} does not match backend "
            f"generator count {model.generator_count}"
        )
    total = {}
    for expo, coeff in element.coefficients.items():
        mono = [(model.shift_identity(), 1.0)]
        for axis, power in enumerate(expo):
            if power:
                mono = _compose(model, mono, _generator_stencil(model, axis, power, step))
        for sh, c in mono:
            key = model.shift_key(sh)
            if key in total:
                total[key] = (total[key][0], total[key][1] + coeff * c)
            else:
                total[key] = (sh, coeff * c)
    return list(total.values())


def apply_central_element_fd(model, element, evaluate, points, step=DEFAULT_STEP,
                             richardson=0):
    """Apply a central operator to samples by finite differences.

    Parameters
    ----------
    evaluate : callable
        Vectorized function mapping an (N, k) array of group points to N
        complex values.
    points : array, shape (N, k)
        Evaluation points.
    richardson : int
        Extrapolation levels over step halving (error is O(step^2) at
        level 0, O(step^{2(levels+1)}) after extrapolation).
    """
    points = np.asarray(points, dtype=float)

    def plain(h):
        stencil = central_element_stencil(model, element, h)
        acc = np.zeros(points.shape[0], dtype=complex)
        for shift, coeff in stencil:
            acc += coeff * evaluate(model.translate_points(points, shift))
        return acc

    levels = [plain(step / 2.0**i) for i in range(richardson + 1)]
    for k in range(1, richardson + 1):
        fac = 4.0**k
        levels = [
            (fac * levels[i + 1] - levels[i]) / (fac - 1.0)
            for i in range(len(levels) - 1)
        ]
    return levels[0]
