"""Concrete compact group backends: the torus T^d and SU(2).

Each backend knows its weight lattice, irreducible matrices, Haar
quadrature exact on a declared band, contragredient map, and the
character table of its canonical central generators.  Weights are plain
values: an integer d-tuple for T^d, a nonnegative integer highest weight
for SU(2) (spin n/2, dimension n+1).  Group points are coordinate
arrays: angles theta in [0, 2pi)^d for the torus, z-y-z Euler angles
(alpha, beta, gamma) in [0,2pi) x [0,pi] x [0,4pi) for SU(2).
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

import numpy as np

from .central import CentralElement, GeneratorCharacterTable
from . import wigner

TWO_PI = 2.0 * np.pi
FOUR_PI = 4.0 * np.pi

# Pauli matrices; the Lie algebra basis used throughout is X_k = -(i/2) sigma_k.
SIGMA = (
    np.array([[0.0, 1.0], [1.0, 0.0]], dtype=complex),
    np.array([[0.0, -1.0j], [1.0j, 0.0]], dtype=complex),
    np.array([[1.0, 0.0], [0.0, -1.0]], dtype=complex),
)


@dataclass
class QuadratureGrid:
    """Nodes and positive weights realizing normalized Haar measure.

    The grid is a tensor product and is exact (to roundoff) on products
    of matrix coefficients of irreducibles with weights up to
    ``bandlimit`` each; ``axes`` keeps the per-axis structure so the
    transforms can factorize.
    """

    model: object
    bandlimit: int
    nodes: np.ndarray
    weights: np.ndarray
    axes: dict

    def __len__(self):
        return self.nodes.shape[0]

    def to_text(self):
        """One node per line: coordinates then weight, whitespace separated."""
        cols = " ".join(f"c{k}" for k in range(self.nodes.shape[1]))
        lines = [f"# kind={self.model.kind} bandlimit={self.bandlimit} {cols} weight"]
        for node, w in zip(self.nodes, self.weights):
            coord = " ".join(repr(float(x)) for x in node)
            lines.append(f"{coord} {float(w)!r}")
        return "\n".join(lines) + "\n"

    def save_text(self, path):
        with open(path, "w") as fh:
            fh.write(self.to_text())


class TorusGroup:
    """The d-dimensional torus; irreducibles are the characters exp(i<lambda, theta>)."""

    kind = "torus"

    def __init__(self, dimension):
        if dimension < 1:
            raise ValueError("torus dimension must be >= 1")
        self.dimension = int(dimension)
        # Generator k is the coordinate derivative d_k: it acts on
        # exp(i<lambda, theta>) by i*lambda_k and transposes to -d_k.
        chars = tuple(
            (lambda k: (lambda lam: 1j * float(lam[k])))(k)
            for k in range(self.dimension)
        )
        daggers = tuple(
            -CentralElement.generator(self.dimension, k)
            for k in range(self.dimension)
        )
        self.character_table = GeneratorCharacterTable(chars, daggers)

    @property
    def generator_count(self):
        return self.dimension

    def validate_weight(self, lam):
        lam = tuple(int(x) for x in lam)
        if len(lam) != self.dimension:
            raise ValueError(f"weight {lam} has wrong length for T^{self.dimension}")
        return lam

    def enumerate_weights(self, cutoff):
        """All integer vectors with max-norm <= cutoff, lexicographic order."""
        if cutoff < 0:
            raise ValueError("cutoff must be >= 0")
        rng = range(-cutoff, cutoff + 1)
        return [tuple(v) for v in itertools.product(rng, repeat=self.dimension)]

    def dimension_of(self, lam):
        return 1

    def contragredient_weight(self, lam):
        return tuple(-x for x in self.validate_weight(lam))

    def weight_norm(self, lam):
        return float(np.linalg.norm(self.validate_weight(lam)))

    def weight_band(self, lam):
        return int(max(abs(x) for x in self.validate_weight(lam)))

    def irrep_matrix(self, lam, point):
        return self.irrep_matrices(lam, np.asarray(point, dtype=float)[None, :])[0]

    def irrep_matrices(self, lam, points):
        """Stack of 1x1 matrices exp(i <lambda, theta_j>)."""
        lam = self.validate_weight(lam)
        points = np.asarray(points, dtype=float)
        phases = np.exp(1j * points @ np.asarray(lam, dtype=float))
        return phases[:, None, None]

    def haar_quadrature(self, bandlimit):
        """Tensor-product trapezoidal grid, 2B+1 points per axis.

        Equally spaced angles integrate exp(i m theta) exactly for
        |m| <= 2B, so products of two characters with weights up to B
        are exact.
        """
        if bandlimit < 0:
            raise ValueError("bandlimit must be >= 0")
        npts = 2 * bandlimit + 1
        axis = TWO_PI * np.arange(npts) / npts
        grids = np.meshgrid(*([axis] * self.dimension), indexing="ij")
        nodes = np.stack([g.ravel() for g in grids], axis=-1)
        weights = np.full(nodes.shape[0], 1.0 / npts**self.dimension)
        return QuadratureGrid(
            model=self,
            bandlimit=int(bandlimit),
            nodes=nodes,
            weights=weights,
            axes={"thetas": axis, "points_per_axis": npts},
        )

    def identity(self):
        return np.zeros(self.dimension)

    def multiply(self, p, q):
        return np.mod(np.asarray(p, dtype=float) + np.asarray(q, dtype=float), TWO_PI)

    def random_point(self, rng):
        return rng.uniform(0.0, TWO_PI, size=self.dimension)

    # -- translation machinery shared with the finite-difference oracle --

    def shift_identity(self):
        return np.zeros(self.dimension)

    def shift_step(self, axis, t):
        s = np.zeros(self.dimension)
        s[axis] = t
        return s

    def shift_compose(self, s1, s2):
        return s1 + s2

    def shift_key(self, shift):
        return tuple(shift.tolist())

    def translate_points(self, points, shift):
        return np.mod(np.asarray(points, dtype=float) + shift, TWO_PI)

    def translate(self, point, axis, t):
        """The point g . exp(t X_axis): adds t to coordinate ``axis``."""
        return self.translate_points(
            np.asarray(point, dtype=float)[None, :], self.shift_step(axis, t)
        )[0]


class SU2Group:
    """SU(2) with z-y-z Euler coordinates and the Casimir as central generator.

    Conventions: Lie algebra basis X_k = -(i/2) sigma_k, Casimir
    Omega = -(X_1^2 + X_2^2 + X_3^2), so Omega acts on the spin-l
    irreducible (highest weight n = 2l) by l(l+1).
    """

    kind = "su2"
    dimension = 3  # coordinate count

    def __init__(self):
        chars = (lambda n: (n / 2.0) * (n / 2.0 + 1.0) + 0j,)
        # Omega is a sum of squares, hence fixed by the transpose.
        daggers = (CentralElement.generator(1, 0),)
        self.character_table = GeneratorCharacterTable(chars, daggers)

    @property
    def generator_count(self):
        return 1

    def validate_weight(self, n):
        n = int(n)
        if n < 0:
            raise ValueError(f"SU(2) weight must be >= 0, got {n}")
        return n

    def enumerate_weights(self, cutoff):
        if cutoff < 0:
            raise ValueError("cutoff must be >= 0")
        return list(range(cutoff + 1))

    def dimension_of(self, n):
        return self.validate_weight(n) + 1

    def contragredient_weight(self, n):
        return self.validate_weight(n)  # self-dual

    def weight_norm(self, n):
        return float(self.validate_weight(n))

    def weight_band(self, n):
        return self.validate_weight(n)

    def irrep_matrix(self, n, point):
        point = np.asarray(point, dtype=float)
        return wigner.wigner_matrix(n, point[0], point[1], point[2])

    def irrep_matrices(self, n, points):
        points = np.asarray(points, dtype=float)
        return wigner.wigner_matrix(n, points[:, 0], points[:, 1], points[:, 2])

    def haar_quadrature(self, bandlimit):
        """Band-limited Euler-angle product rule.

        Uniform angles in alpha (2B+1 over 2pi) and gamma (4B+2 over
        4pi, same step, resolving half-integer frequencies) and
        Gauss-Legendre nodes in cos(beta) (B+1 points).  Exact for
        products of matrix coefficients of weights up to B; weights sum
        to one.
        """
        if bandlimit < 0:
            raise ValueError("bandlimit must be >= 0")
        n_alpha = 2 * bandlimit + 1
        n_gamma = 4 * bandlimit + 2
        alphas = TWO_PI * np.arange(n_alpha) / n_alpha
        gammas = FOUR_PI * np.arange(n_gamma) / n_gamma
        x, w = np.polynomial.legendre.leggauss(bandlimit + 1)
        betas = np.arccos(x)
        beta_weights = w / 2.0  # sin(beta) dbeta / 2 becomes dx / 2

        a, b, g = np.meshgrid(alphas, betas, gammas, indexing="ij")
        nodes = np.stack([a.ravel(), b.ravel(), g.ravel()], axis=-1)
        wa = 1.0 / n_alpha
        wg = 1.0 / n_gamma
        weights = (wa * wg) * np.broadcast_to(
            beta_weights[None, :, None], a.shape
        ).ravel().copy()
        return QuadratureGrid(
            model=self,
            bandlimit=int(bandlimit),
            nodes=nodes,
            weights=weights,
            axes={
                "alphas": alphas,
                "betas": betas,
                "beta_weights": beta_weights,
                "gammas": gammas,
            },
        )

    def identity(self):
        return np.zeros(3)

    # -- 2x2 realization, used for composition and the derivative oracle --

    def su2_matrices(self, points):
        """Defining 2x2 matrices for an (N, 3) array of Euler points."""
        points = np.asarray(points, dtype=float)
        alpha, beta, gamma = points[:, 0], points[:, 1], points[:, 2]
        c = np.cos(beta / 2.0)
        s = np.sin(beta / 2.0)
        out = np.empty(points.shape[:-1] + (2, 2), dtype=complex)
        out[..., 0, 0] = np.exp(-0.5j * (alpha + gamma)) * c
        out[..., 0, 1] = -np.exp(-0.5j * (alpha - gamma)) * s
        out[..., 1, 0] = np.exp(0.5j * (alpha - gamma)) * s
        out[..., 1, 1] = np.exp(0.5j * (alpha + gamma)) * c
        return out

    def points_from_matrices(self, mats):
        """Euler angles in canonical ranges for a stack of SU(2) matrices.

        Inverse of ``su2_matrices`` up to the coordinate identification
        (alpha + 2pi, gamma) ~ (alpha, gamma + 2pi).
        """
        mats = np.asarray(mats)
        a = mats[..., 0, 0]
        b = mats[..., 0, 1]
        beta = 2.0 * np.arctan2(np.abs(b), np.abs(a))
        # a = exp(-i(alpha+gamma)/2) cos, -b = exp(-i(alpha-gamma)/2) sin
        ssum = np.where(np.abs(a) > 1e-15, -2.0 * np.angle(a), 0.0)
        sdif = np.where(np.abs(b) > 1e-15, -2.0 * np.angle(-b), 0.0)
        alpha = (ssum + sdif) / 2.0
        gamma = (ssum - sdif) / 2.0
        # fold alpha into [0, 2pi); compensate gamma via the identification
        k = np.floor(alpha / TWO_PI)
        alpha = alpha - TWO_PI * k
        gamma = np.mod(gamma + TWO_PI * k, FOUR_PI)
        return np.stack([alpha, beta, gamma], axis=-1)

    def multiply(self, p, q):
        u = self.su2_matrices(np.asarray(p, dtype=float)[None, :])[0]
        v = self.su2_matrices(np.asarray(q, dtype=float)[None, :])[0]
        return self.points_from_matrices((u @ v)[None, :, :])[0]

    def random_point(self, rng):
        # uniform in alpha, gamma and in cos(beta) is Haar in these coordinates
        return np.array(
            [
                rng.uniform(0.0, TWO_PI),
                np.arccos(rng.uniform(-1.0, 1.0)),
                rng.uniform(0.0, FOUR_PI),
            ]
        )

    # -- translation machinery shared with the finite-difference oracle --

    def shift_identity(self):
        return np.eye(2, dtype=complex)

    def shift_step(self, axis, t):
        """exp(t X_axis) = cos(t/2) I - i sin(t/2) sigma_axis."""
        return np.cos(t / 2.0) * np.eye(2) - 1j * np.sin(t / 2.0) * SIGMA[axis]

    def shift_compose(self, s1, s2):
        return s1 @ s2

    def shift_key(self, shift):
        return tuple(np.round(shift, 14).ravel().tolist())

    def translate_points(self, points, shift):
        mats = self.su2_matrices(points) @ shift
        return self.points_from_matrices(mats)

    def translate(self, point, axis, t):
        """The point g . exp(t X_axis)."""
        return self.translate_points(
            np.asarray(point, dtype=float)[None, :], self.shift_step(axis, t)
        )[0]


def make_group(kind, dimension=None):
    """Factory used by the config layer."""
    if kind == "torus":
        return TorusGroup(dimension if dimension is not None else 1)
    if kind == "su2":
        return SU2Group()
    raise ValueError(f"unknown group kind {kind!r}")
