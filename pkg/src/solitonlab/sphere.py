"""Sphere backend: rotationally invariant metrics reduced to the moment variable.

The unit round sphere (Ricci form equal to the Kahler form, lambda = 1) is
described in cylinder-type coordinates (t, theta) by the moment profile
x(t) = 1 + tanh(t/2); mu = x - 1 in (-1, 1) is the collocation variable on
Gauss-Legendre nodes, so the poles are never sampled.  The derivative along
t of an invariant profile is

    D_t psi = ((1 - mu^2)/2) * d psi / d mu,

and a state's metric density relative to d mu ^ d theta is the positive
profile m = 1 + d/dmu(sigma0 * dphi/dmu), sigma0 = (1 - mu^2)/2.  All
operator reductions divide out the vanishing pole factor sigma0 exactly, so
no formula ever evaluates 1/(1 - mu^2) against a non-vanishing numerator.

Pointwise operators differentiate with the exact collocation matrix D.
Matrix assembly replaces the outer derivative of each divergence by the
negative adjoint of D under the quadrature weights; that variant agrees
with the strong form spectrally on smooth profiles and makes every
assembled weighted operator symmetric to round-off.
"""
from __future__ import annotations

import numpy as np
from numpy.polynomial import legendre as npleg

from .errors import NonInvariantInput


class MomentGrid:
    """Gauss-Legendre collocation in the moment variable mu in (-1, 1)."""

    kind = "sphere"

    def __init__(self, n: int, band_fraction: float = 0.5):
        if n < 16:
            raise ValueError("sphere resolution must be at least 16")
        self.n = n
        self.shape = (n,)
        self.size = n
        mu, w = npleg.leggauss(n)
        self.mu = mu
        self.w = w
        self.sigma0 = (1.0 - mu**2) / 2.0
        # barycentric weights for Gauss-Legendre nodes (closed form), then
        # the differentiation matrix with the negative-sum diagonal trick
        bary = (-1.0) ** np.arange(n) * np.sqrt((1.0 - mu**2) * w)
        D = np.empty((n, n))
        for i in range(n):
            denom = mu[i] - np.where(np.arange(n) == i, 1.0, mu)
            D[i, :] = (bary / bary[i]) / denom
            D[i, i] = 0.0
            D[i, i] = -D[i, :].sum()
        self.D = D
        # negative adjoint of D under the Gauss-Legendre weights
        self.Dhat = -(D.T * w[None, :]) / w[:, None]
        self.band_limit = max(4, int(band_fraction * n))
        self.base_weight = 2.0 * np.pi * w  # quadrature against d mu ^ d theta

    def _check(self, a):
        a = np.asarray(a)
        if a.shape != self.shape:
            raise NonInvariantInput(
                f"expected an invariant profile of shape {self.shape}, got {a.shape}"
            )
        return a

    # -- derivatives -----------------------------------------------------

    def d_dmu(self, a):
        return self.D @ self._check(a)

    def d_dt(self, a):
        """Derivative along the cylinder coordinate: sigma0 * d/dmu."""
        return self.sigma0 * (self.D @ self._check(a))

    def legendre_coefficients(self, a):
        """Exact projection onto Legendre polynomials (degree < n)."""
        a = self._check(a)
        deg = self.n - 1
        van = npleg.legvander(self.mu, deg)
        scale = (2 * np.arange(deg + 1) + 1) / 2.0
        return scale * (van.T @ (self.w * a))

    # -- pointwise calculus ------------------------------------------------

    def lap(self, psi, m):
        """Complex Laplacian of an invariant profile: D_t^2 psi / sigma_phi,
        computed pole-safely as d/dmu(sigma0 d psi/dmu) / m."""
        return (self.D @ (self.sigma0 * (self.D @ self._check(psi)))) / m

    def grad_inner(self, u, v, m):
        return self.sigma0 * (self.D @ self._check(u)) * (self.D @ self._check(v)) / m

    def drift_hol(self, f, psi, m):
        return self.grad_inner(f, psi, m)

    drift_antihol = drift_hol

    def hol_laplacian(self, psi, f, m):
        """Weighted Laplacian in divergence form; on the invariant sector the
        holomorphic and antiholomorphic drifts coincide."""
        return np.exp(f) * (
            self.D @ (np.exp(-f) * self.sigma0 * (self.D @ self._check(psi)))
        ) / m

    antihol_laplacian = hol_laplacian

    def matrix_hol_laplacian(self, psi, f, m):
        """Adjoint-exact variant used for matrix assembly."""
        return np.exp(f) * (
            self.Dhat @ (np.exp(-f) * self.sigma0 * (self.D @ self._check(psi)))
        ) / m

    matrix_antihol_laplacian = matrix_hol_laplacian

    # -- Hessians -----------------------------------------------------------

    def dt_log_density(self, m):
        """D_t log sigma_phi, with the pole-singular base part in closed form."""
        return -self.mu + self.sigma0 * (self.D @ m) / m

    def hess20(self, psi, m):
        """(2,0)-Hessian as the regularized profile (component / sigma0)."""
        dpsi = self.D @ self._check(psi)
        return self.D @ (self.sigma0 * dpsi) - self.dt_log_density(m) * dpsi

    def hess20_weight(self, m):
        return 1.0 / m**2

    def hess11(self, psi, m):
        """Mixed Hessian as the regularized profile (component / sigma0)."""
        return self.D @ (self.sigma0 * (self.D @ self._check(psi)))

    def tensor11_pair_weight(self, m):
        return 1.0 / m**2

    # -- weighted divergences -------------------------------------------------

    def divf_tensor11(self, comp, f, m):
        """div_f of a Hermitian 2-tensor given its regularized profile;
        returns the t-profile of the resulting 1-form."""
        return 0.5 * np.exp(f) * self.sigma0 * (self.D @ (np.exp(-f) * comp / m))

    def divf_oneform(self, alpha, f, m):
        """div_f of an invariant 1-form given its t-profile."""
        return np.exp(f) * (self.D @ (np.exp(-f) * self._check(alpha))) / m

    divf_vector = divf_oneform  # musical isomorphism is the identity on profiles

    def divdiv_hessian(self, psi, f, m):
        comp = self.hess11(psi, m)
        return 2.0 * self.divf_oneform(self.divf_tensor11(comp, f, m), f, m)

    def matrix_divdiv_hessian(self, psi, f, m):
        """Adjoint-exact nested divergence: both outer derivatives replaced by
        the negative adjoint of D, so the weighted form is the exact quadrature
        of the Hessian pairing."""
        comp = self.hess11(psi, m)
        inner = self.Dhat @ (np.exp(-f) * comp / m)
        return (np.exp(f) / m) * (self.Dhat @ (self.sigma0 * inner))

    def commutator_extras(self, psi, f, m):
        """Remainder terms of the product formulas.  On the invariant sector
        the two terms coincide and are real."""
        h2f = self.hess20(f, m)
        dpsi = self.D @ self._check(psi)
        inner = np.exp(-f) * h2f * self.sigma0 * dpsi / m
        extra = np.exp(f) * (self.D @ inner) / m
        return extra, extra.copy()

    def scalar_curvature(self, m):
        """Kahler scalar curvature: (sigma0 - D_t(D_t m / m)) / sigma_phi,
        with the base contribution reduced in closed form."""
        return (self.sigma0 - self.d_dt(self.sigma0 * (self.D @ m) / m)) / (
            self.sigma0 * m
        )

    def einstein_residual(self, m, lam):
        """Field residual of lam*omega - Ric(omega) - i d dbar f for f = 0,
        i.e. how far the density profile is from the Einstein metric."""
        ric_density = self.sigma0 * m * self.scalar_curvature(m)
        return lam * self.sigma0 * m - ric_density

    # -- matrix-space hygiene ---------------------------------------------

    def deflation_rows(self):
        return []

    def trial_basis(self):
        """Nodal values of Legendre polynomials P_1..P_K; matrix eigensolves
        are restricted to this resolved band (plus mean removal)."""
        K = self.band_limit
        van = npleg.legvander(self.mu, K)
        return van[:, 1:]

    # -- test fields ----------------------------------------------------------

    def random_potential(self, seed, degree=None, min_density=0.7):
        """Seeded low-degree Legendre series scaled so the density ratio
        m stays above ``min_density``."""
        rng = np.random.default_rng(seed)
        deg = degree if degree is not None else max(4, min(self.n // 16, 8))
        coeff = np.zeros(deg + 1)
        coeff[1:] = rng.normal(size=deg) / (1.0 + np.arange(1, deg + 1)) ** 2
        phi = npleg.legval(self.mu, coeff)
        bump = self.D @ (self.sigma0 * (self.D @ phi))
        low = bump.min()
        if low < 0:
            phi = phi * ((1.0 - min_density) / (-low))
        return phi

    def legendre_mode(self, ell):
        """Nodal values of P_ell(mu)."""
        coeff = np.zeros(ell + 1)
        coeff[ell] = 1.0
        return npleg.legval(self.mu, coeff)
