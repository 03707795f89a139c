"""Flat torus backend: 2D periodic spectral calculus on the unit square.

Conventions.  The base metric is the flat unit-area torus; densities are
taken with respect to dx^dy, so the Hermitian metric coefficient is
h = density/2 and the complex Laplacian is (2/density) d_z d_zbar.  First
derivatives are spectral with the Nyquist line zeroed per axis, which makes
d_z and -d_zbar exact adjoints under the uniform grid product.  Weighted
operators are implemented in divergence form, e.g.

    L_f psi = (2 e^f / density) * d_zbar(e^{-f} d_z psi),

identical to the drift form in exact arithmetic but exactly self-adjoint
under the weighted quadrature, so assembled matrices are symmetric to
round-off and the flat-state spectra come out exact.
"""
from __future__ import annotations

import numpy as np


class TorusGrid:
    """Uniform N x N periodic grid with spectral differentiation."""

    kind = "torus"

    def __init__(self, n: int):
        if n < 16 or (n & (n - 1)) != 0:
            raise ValueError("torus resolution must be a power of two >= 16")
        self.n = n
        self.shape = (n, n)
        self.size = n * n
        x = np.arange(n) / n
        self.x, self.y = np.meshgrid(x, x, indexing="ij")
        kint = np.fft.fftfreq(n, d=1.0 / n)
        self._kint = kint.astype(int)
        keep = (np.abs(kint) < n // 2).astype(float)
        sx = (2j * np.pi * kint * keep)[:, None] * np.ones((1, n))
        sy = np.ones((n, 1)) * (2j * np.pi * kint * keep)[None, :]
        self._sym_dz = (sx - 1j * sy) / 2.0
        self._sym_dzbar = (sx + 1j * sy) / 2.0
        self._sym_mixed = (self._sym_dz * self._sym_dzbar).real
        cut = n // 3
        self._dealias_mask = (
            (np.abs(kint)[:, None] <= cut) & (np.abs(kint)[None, :] <= cut)
        ).astype(float)
        # base quadrature weight per node (unit area)
        self.base_weight = 1.0 / self.size

    # -- derivatives -----------------------------------------------------

    def dz(self, a):
        return np.fft.ifft2(self._sym_dz * np.fft.fft2(a))

    def dzbar(self, a):
        return np.fft.ifft2(self._sym_dzbar * np.fft.fft2(a))

    def dz_dzbar(self, a):
        out = np.fft.ifft2(self._sym_mixed * np.fft.fft2(a))
        return out.real if not np.iscomplexobj(a) else out

    def dealias(self, a):
        """Truncate the spectrum at the 2/3 rule."""
        out = np.fft.ifft2(self._dealias_mask * np.fft.fft2(a))
        return out.real if not np.iscomplexobj(a) else out

    # -- pointwise calculus ----------------------------------------------

    def lap(self, psi, density):
        return (2.0 / density) * self.dz_dzbar(psi)

    def grad_inner(self, u, v, density):
        """Pointwise <grad u, grad v> in the Kahler convention (bilinear)."""
        out = (self.dz(u) * self.dzbar(v) + self.dzbar(u) * self.dz(v)) / density
        if not (np.iscomplexobj(u) or np.iscomplexobj(v)):
            return out.real
        return out

    def drift_hol(self, f, psi, density):
        """g^{1 1bar} (d_zbar f)(d_z psi): the drift term of L_f, expanded form."""
        return (2.0 / density) * self.dzbar(f) * self.dz(psi)

    def drift_antihol(self, f, psi, density):
        return (2.0 / density) * self.dz(f) * self.dzbar(psi)

    def hol_laplacian(self, psi, f, density):
        """L_f in divergence form (exactly self-adjoint discretely)."""
        return (2.0 * np.exp(f) / density) * self.dzbar(np.exp(-f) * self.dz(psi))

    def antihol_laplacian(self, psi, f, density):
        return (2.0 * np.exp(f) / density) * self.dz(np.exp(-f) * self.dzbar(psi))

    # -- Hessians ---------------------------------------------------------

    def hess20(self, psi, density):
        """Covariant (2,0)-Hessian component, Chern connection included."""
        dzpsi = self.dz(psi)
        return self.dz(dzpsi) - self.dz(np.log(density)) * dzpsi

    def hess20_weight(self, density):
        """Factor turning |hess20|^2 into the squared tensor norm."""
        return (2.0 / density) ** 2

    def hess11(self, psi, density):
        """Mixed Hessian component (plain second derivative on a Kahler metric)."""
        return self.dz_dzbar(psi)

    def tensor11_pair_weight(self, density):
        return (2.0 / density) ** 2

    # -- weighted divergences ----------------------------------------------

    def divf_tensor11(self, comp, f, density):
        """div_f of a Hermitian 2-tensor given its component; returns the
        dz-component of the resulting 1-form."""
        return (np.exp(f) / 2.0) * self.dz(np.exp(-f) * (2.0 / density) * comp)

    def divf_oneform(self, alpha, f, density):
        """div_f of a real 1-form given its dz-component."""
        return (2.0 * np.exp(f) / density) * np.real(self.dzbar(np.exp(-f) * alpha))

    def divf_vector(self, xz, f, density):
        """div_f of a real vector field given its (1,0)-component."""
        return (2.0 * np.exp(f) / density) * np.real(
            self.dz(0.5 * density * np.exp(-f) * xz)
        )

    def divdiv_hessian(self, psi, f, density):
        """2 div_f div_f of the mixed Hessian of psi (nested divergences)."""
        comp = self.hess11(psi, density)
        return 2.0 * self.divf_oneform(
            self.divf_tensor11(comp, f, density), f, density
        )

    def commutator_extras(self, psi, f, density):
        """The two remainder terms in the product formulas for the weighted
        Laplacians, built from the (2,0)/(0,2)-Hessian of the Ricci potential.

        Returns (extra, extra_bar); for real psi they are complex conjugates.
        """
        h20f = self.hess20(f, density)
        g = 2.0 / density
        ef, emf = np.exp(f), np.exp(-f)
        extra_bar = ef * g * self.dz(emf * np.conj(h20f) * g * self.dz(psi))
        extra = ef * g * self.dzbar(emf * h20f * g * self.dzbar(psi))
        return extra, extra_bar

    def scalar_curvature(self, density):
        """Kahler scalar curvature of the metric with the given density."""
        return -self.lap(np.log(density), density)

    # -- matrix-space hygiene ----------------------------------------------

    def deflation_rows(self):
        """Real unit vectors spanning the Nyquist cross: grid modes the masked
        first derivatives cannot represent.  Excluded from matrix eigensolves."""
        n = self.n
        rows = []
        seen = set()
        for kx in range(n):
            for ky in range(n):
                if not (self._kint[kx] == -n // 2 or self._kint[ky] == -n // 2):
                    continue
                cx, cy = (-self._kint[kx]) % n, (-self._kint[ky]) % n
                key = min((kx, ky), (cx, cy))
                if key in seen:
                    continue
                seen.add(key)
                spec = np.zeros((n, n), dtype=complex)
                spec[kx, ky] = 1.0
                fld = np.fft.ifft2(spec)
                for part in (fld.real.ravel(), fld.imag.ravel()):
                    nrm = np.linalg.norm(part)
                    if nrm > 1e-12:
                        rows.append(part / nrm)
        return rows

    # -- test fields --------------------------------------------------------

    def random_potential(self, seed, max_mode=None, min_density=0.9):
        """Seeded band-limited potential, scaled so the metric density stays
        above ``min_density``.  Gentle amplitudes keep the Ricci potential's
        spectral tail below round-off at this resolution."""
        rng = np.random.default_rng(seed)
        m = max_mode if max_mode is not None else self.n // 8
        spec = np.zeros(self.shape, dtype=complex)
        for kx in range(-m, m + 1):
            for ky in range(-m, m + 1):
                if kx == 0 and ky == 0:
                    continue
                if kx * kx + ky * ky > m * m:
                    continue
                spec[kx % self.n, ky % self.n] = (
                    rng.normal() + 1j * rng.normal()
                ) / (1 + kx * kx + ky * ky)
        phi = np.fft.ifft2(spec).real
        bump = 2.0 * self.dz_dzbar(phi)
        low = bump.min()
        if low < 0:
            phi = phi * ((1.0 - min_density) / (-low))
        return phi


# On the torus the divergence forms are already adjoint-exact, so matrix
# assembly reuses the pointwise operators.
TorusGrid.matrix_hol_laplacian = TorusGrid.hol_laplacian
TorusGrid.matrix_antihol_laplacian = TorusGrid.antihol_laplacian
TorusGrid.matrix_divdiv_hessian = TorusGrid.divdiv_hessian
