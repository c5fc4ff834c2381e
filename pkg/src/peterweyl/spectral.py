"""Local spectra, power-norm sequences, and resolvent probes for central operators.

A central operator acts on the Fourier side as the scalar multiplier
chi(lambda) = character of the operator at the contragredient weight, so
powers, local spectra and resolvents all reduce to per-weight scalar
arithmetic followed by an inverse transform.  The headline quantity is
the sequence r_n = ||D^n f||_p^(1/n), which converges to the largest
multiplier modulus over the support of f; it is computed in a scaled
form (factoring the dominant multiplier out before quadrature) so large
powers neither overflow nor underflow.
"""

from __future__ import annotations

import cmath
from dataclasses import dataclass, field

import numpy as np

from .central import character_of_contragredient
from .fourier import FourierCoefficients, inverse_transform, support

MERGE_TOL = 1e-12
ON_SPECTRUM_TOL = 1e-12


@dataclass
class OperatorAction:
    """A central operator together with its cached Fourier multipliers."""

    model: object
    element: object
    _multipliers: dict = field(default_factory=dict, repr=False)

    def multiplier(self, lam):
        """chi at the contragredient of ``lam``; the Fourier-side scalar."""
        if lam not in self._multipliers:
            self._multipliers[lam] = character_of_contragredient(
                self.element, lam, self.model
            )
        return self._multipliers[lam]


def _norm_exponent(p):
    if isinstance(p, str):
        if p.lower() in ("inf", "infinity"):
            return np.inf
        raise ValueError(f"unrecognized norm exponent {p!r}")
    p = float(p)
    if np.isinf(p):
        return np.inf
    if p < 1.0:
        raise ValueError(f"norm exponent must be >= 1, got {p}")
    return p


def lp_norm(f, p):
    """Quadrature L^p norm of a sampled function; p = inf is the grid max."""
    p = _norm_exponent(p)
    absvals = np.abs(f.values)
    if np.isinf(p):
        return float(absvals.max()) if absvals.size else 0.0
    return float((f.grid.weights @ absvals**p) ** (1.0 / p))


def apply_power(action, n, phi):
    """Multiply each entry by multiplier(lambda)^n; n = 0 is the identity."""
    n = int(n)
    if n < 0:
        raise ValueError("power must be >= 0")
    if n == 0:
        return FourierCoefficients(phi.model, dict(phi.entries))
    return phi.scaled_by(lambda lam: action.multiplier(lam) ** n)


def _merge_points(points, tol=MERGE_TOL):
    merged = []
    for z in sorted(points, key=lambda w: (w.real, w.imag)):
        if not any(abs(z - kept) <= tol for kept in merged):
            merged.append(z)
    return merged


def local_spectrum(action, phi, tau_rel=1e-10):
    """Multiplier values over the support of ``phi``, duplicates merged.

    The closure appearing in the defining identity is a no-op for the
    finitely supported tables handled here.
    """
    sup = support(phi, tau_rel)
    return _merge_points(action.multiplier(lam) for lam in sup.weights)


@dataclass
class SpectrumReport:
    """Spectrum, radius, and the power-norm sequence with its two-sided bounds."""

    p: object
    n_max: int
    spectrum_points: list
    radius: float
    r: list
    sandwich_lower: list
    sandwich_upper: list
    caveats: list

    def to_dict(self):
        return {
            "p": "inf" if np.isinf(_norm_exponent(self.p)) else float(self.p),
            "n_max": self.n_max,
            "spectrum_points": [[z.real, z.imag] for z in self.spectrum_points],
            "radius": self.radius,
            "r": list(self.r),
            "sandwich_lower": list(self.sandwich_lower),
            "sandwich_upper": list(self.sandwich_upper),
            "caveats": list(self.caveats),
        }


def _nonzero_entries(phi):
    return {lam: m for lam, m in phi.entries.items() if np.any(m != 0)}


def _big_m(phi, grid):
    """M = sum over weights of dim * sup_grid |tr(F f(lambda) pi(g)^-1)|.

    The single-weight inverse transform is dim * tr(...), so each term
    is just the grid sup of that partial series.
    """
    total = 0.0
    for lam, mat in _nonzero_entries(phi).items():
        single = FourierCoefficients(phi.model, {lam: mat})
        total += float(np.max(np.abs(inverse_transform(single, grid).values)))
    return total


def radius_sequence(action, phi, p, n_max, grid, tau_rel=1e-10):
    """r_n = ||D^n f||_p^(1/n) for n = 1..n_max, with spectrum and bounds.

    The sup of the spectrum moduli over empty support is 0 by
    convention.  Each step factors the largest multiplier modulus out of
    the coefficients before transforming, so r_n is exact in the log
    domain even when |multiplier|^n overflows a double.
    """
    p_exp = _norm_exponent(p)
    n_max = int(n_max)
    if n_max < 1:
        raise ValueError("n_max must be >= 1")
    nonzero = _nonzero_entries(phi)
    sup = support(phi, tau_rel)
    spectrum = _merge_points(action.multiplier(lam) for lam in sup.weights)
    radius = max((abs(z) for z in spectrum), default=0.0)

    scale = max((abs(action.multiplier(lam)) for lam in nonzero), default=0.0)
    hs = phi.hs_norms()

    caveats = []
    if np.isinf(p_exp):
        caveats.append(
            "p=inf norms are grid maxima and can under-estimate the true sup"
        )
    if set(nonzero) - set(sup.weights):
        caveats.append(
            "entries below the support threshold are excluded from the spectrum "
            "but still propagate through powers"
        )

    r_seq = []
    lower = []
    upper = []
    big_m = _big_m(phi, grid) if nonzero else 0.0
    for n in range(1, n_max + 1):
        if scale == 0.0 or not nonzero:
            r_seq.append(0.0)
            lower.append(0.0)
            upper.append(0.0)
            continue
        scaled = FourierCoefficients(
            phi.model,
            {
                lam: (action.multiplier(lam) / scale) ** n * mat
                for lam, mat in nonzero.items()
            },
        )
        norm = lp_norm(inverse_transform(scaled, grid), p_exp)
        r_seq.append(scale * norm ** (1.0 / n) if norm > 0.0 else 0.0)
        lo = 0.0
        for lam in sup.weights:
            dim = phi.model.dimension_of(lam)
            lo = max(
                lo,
                abs(action.multiplier(lam)) * (hs[lam] / np.sqrt(dim)) ** (1.0 / n),
            )
        lower.append(lo)
        upper.append(big_m ** (1.0 / n) * radius if big_m > 0.0 else 0.0)
    return SpectrumReport(
        p=p,
        n_max=n_max,
        spectrum_points=spectrum,
        radius=radius,
        r=r_seq,
        sandwich_lower=lower,
        sandwich_upper=upper,
        caveats=caveats,
    )


@dataclass
class BoundsReport:
    """Two-sided power-norm inequalities at one (p, n), in scaled form.

    Slacks are relative: (bound - value) / max(bound, value), so a
    nonnegative slack means the inequality holds and -1e-10 is the
    tolerated rounding allowance regardless of the raw magnitudes.
    """

    p: object
    n: int
    lower_slacks: dict
    worst_lower_slack: float
    upper_slack: float
    big_m: float
    sup_multiplier: float

    def to_dict(self):
        return {
            "p": "inf" if np.isinf(_norm_exponent(self.p)) else float(self.p),
            "n": self.n,
            "worst_lower_slack": self.worst_lower_slack,
            "upper_slack": self.upper_slack,
            "big_m": self.big_m,
            "sup_multiplier": self.sup_multiplier,
        }


def _rel_slack(bound, value):
    scale = max(abs(bound), abs(value), 1e-300)
    return (bound - value) / scale


def sandwich_bounds(action, phi, p, n, grid, tau_rel=1e-10):
    """Verify |chi|^n ||F f|| <= dim^(1/2) ||D^n f||_p <= ... M sup|chi|^n.

    Both inequalities are checked after dividing through by
    sup|chi|^n so the comparison stays in the O(1) range for any n.
    """
    p_exp = _norm_exponent(p)
    n = int(n)
    nonzero = _nonzero_entries(phi)
    if not nonzero:
        raise ValueError("bounds require a nonzero coefficient table")
    sup = support(phi, tau_rel)
    hs = phi.hs_norms()
    s = max((abs(action.multiplier(lam)) for lam in sup.weights), default=0.0)
    scale = s if s > 0.0 else 1.0

    scaled = FourierCoefficients(
        phi.model,
        {
            lam: (action.multiplier(lam) / scale) ** n * mat
            for lam, mat in nonzero.items()
        },
    )
    norm_scaled = lp_norm(inverse_transform(scaled, grid), p_exp)

    lower_slacks = {}
    for lam in sup.weights:
        dim = phi.model.dimension_of(lam)
        lhs = (abs(action.multiplier(lam)) / scale) ** n * hs[lam]
        rhs = np.sqrt(dim) * norm_scaled
        lower_slacks[lam] = _rel_slack(rhs, lhs)
    big_m = _big_m(phi, grid)
    upper_slack = _rel_slack(big_m * (s / scale) ** n, norm_scaled)
    return BoundsReport(
        p=p,
        n=n,
        lower_slacks=lower_slacks,
        worst_lower_slack=min(lower_slacks.values(), default=0.0),
        upper_slack=upper_slack,
        big_m=big_m,
        sup_multiplier=s,
    )


@dataclass
class ResolventProbe:
    """Local resolvent data at one point z off the spectrum."""

    z: complex
    distance_to_spectrum: float
    residual_sup: float
    coefficients: FourierCoefficients


def _resolvent_coefficients(action, phi, z, sup):
    entries = {}
    for lam in sup.weights:
        entries[lam] = phi.entries[lam] / (action.multiplier(lam) - z)
    return FourierCoefficients(phi.model, entries)


def resolvent_probe(action, phi, z, grid, tau_rel=1e-10):
    """Divide by (multiplier - z) on the support and check (D - z) phi_z = f.

    The residual is evaluated in the Fourier domain and then sampled, so
    it reflects both rounding and any below-threshold modes that were
    zeroed in the resolvent table.
    """
    z = complex(z)
    sup = support(phi, tau_rel)
    if not sup.weights:
        return ResolventProbe(z, np.inf, 0.0, FourierCoefficients(phi.model, {}))
    dist = min(abs(action.multiplier(lam) - z) for lam in sup.weights)
    if dist <= ON_SPECTRUM_TOL:
        raise ValueError(f"probe point {z} lies on the spectrum (distance {dist})")
    psi = _resolvent_coefficients(action, phi, z, sup)
    residual_entries = {}
    for lam, mat in phi.entries.items():
        if lam in psi.entries:
            residual_entries[lam] = (
                (action.multiplier(lam) - z) * psi.entries[lam] - mat
            )
        else:
            residual_entries[lam] = -mat
    residual = inverse_transform(
        FourierCoefficients(phi.model, residual_entries), grid
    )
    return ResolventProbe(z, dist, residual.sup_norm(), psi)


def holomorphy_check(action, phi, center, radius, m_points, grid, tau_rel=1e-10):
    """Circle mean-value discrepancy of z -> phi_z around ``center``.

    Averages the resolvent field over m equally spaced points of the
    circle and returns the grid sup of |average - field at center|; a
    tiny value certifies analyticity numerically.  The closed disk must
    stay off the spectrum.
    """
    center = complex(center)
    if radius <= 0.0:
        raise ValueError("circle radius must be positive")
    if int(m_points) < 1:
        raise ValueError("need at least one circle point")
    sup = support(phi, tau_rel)
    if not sup.weights:
        return 0.0
    dist = min(abs(action.multiplier(lam) - center) for lam in sup.weights)
    if dist - radius <= ON_SPECTRUM_TOL:
        raise ValueError(
            f"disk of radius {radius} about {center} touches the spectrum "
            f"(center distance {dist})"
        )
    field_center = inverse_transform(
        _resolvent_coefficients(action, phi, center, sup), grid
    ).values
    mean = np.zeros_like(field_center)
    m_points = int(m_points)
    for k in range(m_points):
        zk = center + radius * cmath.exp(2j * cmath.pi * k / m_points)
        mean += inverse_transform(
            _resolvent_coefficients(action, phi, zk, sup), grid
        ).values
    mean /= m_points
    return float(np.max(np.abs(mean - field_center)))
