"""Fourier analysis between sampled functions and operator-valued coefficients.

The forward transform of an integrable function f at the irreducible
pi_lambda is the matrix

    F f(lambda) = integral_G f(g) pi_lambda(g) dg,

realized on a band-exact quadrature grid as sum_j w_j f(g_j) pi_lambda(g_j).
The inverse is the finite Peter-Weyl series

    f(g) = sum_lambda dim(lambda) tr(phi(lambda) pi_lambda(g)^{-1}),

with pi(g^{-1}) taken as the conjugate transpose of pi(g).  Coefficient
tables are finitely supported; functions are band-limited by
construction, and the declared band is what the aliasing guard checks.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from . import wigner


class BandLimitError(ValueError):
    """Raised when a transform would alias on the given grid."""


def _hs_norm(mat):
    return float(np.linalg.norm(mat))


@dataclass
class FourierCoefficients:
    """Finitely supported map weight -> complex dim x dim matrix."""

    model: object
    entries: dict = field(default_factory=dict)

    def __post_init__(self):
        clean = {}
        for lam, mat in self.entries.items():
            lam = self.model.validate_weight(lam)
            mat = np.asarray(mat, dtype=complex)
            dim = self.model.dimension_of(lam)
            if mat.shape != (dim, dim):
                raise ValueError(
                    f"matrix at weight {lam} has shape {mat.shape}, expected {(dim, dim)}"
                )
            clean[lam] = mat
        self.entries = dict(sorted(clean.items()))

    def weights(self):
        return list(self.entries)

    def band(self):
        """Largest weight band among nonzero entries (0 if none)."""
        bands = [
            self.model.weight_band(lam)
            for lam, mat in self.entries.items()
            if np.any(mat != 0)
        ]
        return max(bands, default=0)

    def hs_norms(self):
        return {lam: _hs_norm(mat) for lam, mat in self.entries.items()}

    def max_hs(self):
        return max(self.hs_norms().values(), default=0.0)

    def scaled_by(self, factor):
        """Entry-wise multiplication by a per-weight scalar function."""
        return FourierCoefficients(
            self.model,
            {lam: complex(factor(lam)) * mat for lam, mat in self.entries.items()},
        )

    def __add__(self, other):
        if other.model is not self.model:
            raise ValueError("coefficient tables belong to different backends")
        out = {lam: mat.copy() for lam, mat in self.entries.items()}
        for lam, mat in other.entries.items():
            out[lam] = out.get(lam, 0) + mat
        return FourierCoefficients(self.model, out)

    def __mul__(self, scalar):
        return FourierCoefficients(
            self.model, {lam: complex(scalar) * mat for lam, mat in self.entries.items()}
        )

    __rmul__ = __mul__

    def to_records(self):
        """Interchange format: row-major [re, im] pairs per weight."""
        recs = []
        for lam, mat in self.entries.items():
            weight = list(lam) if isinstance(lam, tuple) else int(lam)
            flat = [[float(z.real), float(z.imag)] for z in mat.ravel()]
            recs.append({"weight": weight, "matrix": flat})
        return recs

    @classmethod
    def from_records(cls, model, records):
        entries = {}
        for rec in records:
            w = rec["weight"]
            lam = model.validate_weight(tuple(w) if isinstance(w, (list, tuple)) else w)
            dim = model.dimension_of(lam)
            flat = np.array([complex(re, im) for re, im in rec["matrix"]])
            if flat.size != dim * dim:
                raise ValueError(
                    f"matrix at weight {lam} has {flat.size} entries, expected {dim * dim}"
                )
            entries[lam] = flat.reshape(dim, dim)
        return cls(model, entries)


@dataclass
class SampledFunction:
    """Values on a quadrature grid plus the declared band of the function."""

    grid: object
    values: np.ndarray
    band: int

    def __post_init__(self):
        self.values = np.asarray(self.values, dtype=complex)
        if self.values.shape != (len(self.grid),):
            raise ValueError("value count does not match grid")

    def __add__(self, other):
        if other.grid is not self.grid:
            raise ValueError("samples live on different grids")
        return SampledFunction(
            self.grid, self.values + other.values, max(self.band, other.band)
        )

    def __mul__(self, scalar):
        return SampledFunction(self.grid, complex(scalar) * self.values, self.band)

    __rmul__ = __mul__

    def sup_norm(self):
        return float(np.max(np.abs(self.values))) if self.values.size else 0.0


@dataclass(frozen=True)
class SupportSet:
    """Weights whose coefficient norm clears a relative threshold."""

    weights: tuple
    tau_rel: float
    threshold: float


def support(phi, tau_rel=1e-10):
    """Weights with Hilbert-Schmidt norm above tau_rel * (largest norm).

    The reference maximum is taken as 1 for an all-zero table, so the
    support of zero is empty.
    """
    if not 0.0 < tau_rel < 1.0:
        raise ValueError("tau_rel must lie in (0, 1)")
    norms = phi.hs_norms()
    peak = max(norms.values(), default=0.0)
    if peak == 0.0:
        peak = 1.0
    threshold = tau_rel * peak
    kept = tuple(lam for lam, v in sorted(norms.items()) if v > threshold)
    return SupportSet(kept, tau_rel, threshold)


def schwartz_seminorm(phi, s):
    """q_s(phi) = sup over stored weights of |lambda|^s * HS norm."""
    if s < 0:
        raise ValueError("seminorm order must be >= 0")
    best = 0.0
    for lam, mat in phi.entries.items():
        best = max(best, phi.model.weight_norm(lam) ** s * _hs_norm(mat))
    return best


def parseval_norm(phi):
    """L2 norm computed on the coefficient side: (sum dim * HS^2)^(1/2)."""
    total = sum(
        phi.model.dimension_of(lam) * _hs_norm(mat) ** 2
        for lam, mat in phi.entries.items()
    )
    return float(np.sqrt(total))


def random_band_limited(model, band, rng, scale=1.0):
    """Random coefficient table over all weights of band at most ``band``."""
    entries = {}
    for lam in model.enumerate_weights(band):
        dim = model.dimension_of(lam)
        entries[lam] = scale * (
            rng.standard_normal((dim, dim)) + 1j * rng.standard_normal((dim, dim))
        )
    return FourierCoefficients(model, entries)


# ---------------------------------------------------------------------------
# transforms
# ---------------------------------------------------------------------------


def forward_transform(f, weights):
    """Coefficient table of a sampled function over the requested weights.

    Raises BandLimitError unless the grid band-limit is at least the
    declared band of f plus the largest requested weight, which makes
    every node sum an exact Haar integral (no silent aliasing).
    """
    grid = f.grid
    model = grid.model
    weights = [model.validate_weight(lam) for lam in weights]
    max_req = max((model.weight_band(lam) for lam in weights), default=0)
    if f.band + max_req > grid.bandlimit:
        raise BandLimitError(
            f"grid bandlimit {grid.bandlimit} < function band {f.band} "
            f"+ max requested weight {max_req}"
        )
    if model.kind == "torus":
        return _forward_torus(f, weights)
    return _forward_su2(f, weights)


def inverse_transform(phi, grid):
    """Sample the finite Peter-Weyl series of ``phi`` on ``grid``."""
    if grid.model is not phi.model:
        raise ValueError("coefficients and grid belong to different backends")
    if phi.model.kind == "torus":
        values = _inverse_torus(phi, grid)
    else:
        values = _inverse_su2(phi, grid)
    return SampledFunction(grid, values, phi.band())


def evaluate_at(phi, points):
    """Evaluate the series of ``phi`` at arbitrary group points (direct sum)."""
    points = np.asarray(points, dtype=float)
    values = np.zeros(points.shape[0], dtype=complex)
    model = phi.model
    for lam, mat in phi.entries.items():
        stack = model.irrep_matrices(lam, points)
        values += model.dimension_of(lam) * np.einsum(
            "nqr,qr->n", stack.conj(), mat
        )
    return values


def _forward_torus(f, weights):
    grid = f.grid
    model = grid.model
    if not weights:
        return FourierCoefficients(model, {})
    lam_mat = np.array(weights, dtype=float)  # (L, d)
    phases = np.exp(1j * grid.nodes @ lam_mat.T)  # (N, L)
    vals = (grid.weights * f.values) @ phases
    entries = {lam: np.array([[v]]) for lam, v in zip(weights, vals)}
    return FourierCoefficients(model, entries)


def _inverse_torus(phi, grid):
    if not phi.entries:
        return np.zeros(len(grid), dtype=complex)
    lam_mat = np.array(list(phi.entries), dtype=float)
    coeffs = np.array([mat[0, 0] for mat in phi.entries.values()])
    phases = np.exp(-1j * grid.nodes @ lam_mat.T)
    return phases @ coeffs


def _half_integer_index(n_max):
    """Frequencies j_max, j_max - 1/2, ..., -j_max shared by all weights <= n_max."""
    return (n_max - np.arange(2 * n_max + 1)) / 2.0


def _freq_index(n, n_max):
    """Positions of m = n/2, n/2 - 1, ..., -n/2 on the half-integer axis."""
    return (n_max - n) + 2 * np.arange(n + 1)


def _forward_su2(f, weights):
    grid = f.grid
    model = grid.model
    if not weights:
        return FourierCoefficients(model, {})
    ax = grid.axes
    alphas, betas, gammas = ax["alphas"], ax["betas"], ax["gammas"]
    wbeta = ax["beta_weights"]
    n_max = max(weights)
    freqs = _half_integer_index(n_max)
    # phase matrices carry the uniform alpha/gamma weights
    ealpha = np.exp(-1j * np.outer(alphas, freqs)) / alphas.size  # (Na, M)
    egamma = np.exp(-1j * np.outer(gammas, freqs)) / gammas.size  # (Ng, M)
    cube = f.values.reshape(alphas.size, betas.size, gammas.size)
    t1 = np.einsum("am,abc->mbc", ealpha, cube)
    t2 = np.einsum("mbc,cp->bmp", t1, egamma)  # (Nb, M, M)
    entries = {}
    for n in weights:
        dd = wigner.little_d(n, betas)  # (Nb, n+1, n+1)
        idx = _freq_index(n, n_max)
        sub = t2[:, idx[:, None], idx[None, :]]  # (Nb, n+1, n+1)
        entries[n] = np.einsum("b,brq,brq->rq", wbeta, dd, sub)
    return FourierCoefficients(model, entries)


def _inverse_su2(phi, grid):
    ax = grid.axes
    alphas, betas, gammas = ax["alphas"], ax["betas"], ax["gammas"]
    if not phi.entries:
        return np.zeros(len(grid), dtype=complex)
    n_max = max(phi.entries)
    freqs = _half_integer_index(n_max)
    m = freqs.size
    mats = np.zeros((betas.size, m, m), dtype=complex)
    for n, a in phi.entries.items():
        dd = wigner.little_d(n, betas)
        idx = _freq_index(n, n_max)
        contrib = (n + 1) * a[None, :, :] * dd
        mats[:, idx[:, None], idx[None, :]] += contrib
    ealpha = np.exp(1j * np.outer(alphas, freqs))  # conj phases
    egamma = np.exp(1j * np.outer(gammas, freqs))
    vals = np.einsum("am,bmp,cp->abc", ealpha, mats, egamma)
    return vals.ravel()
