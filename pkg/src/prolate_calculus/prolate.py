"""Eigenpairs of the prolate differential operator on [-1, 1].

The operator ``T = (1-x^2) d^2/dx^2 - 2x d/dx - c^2 x^2`` is pentadiagonal in
the orthonormal Legendre basis; its eigenvectors are the bandlimited prolate
functions psi_n with ``T psi_n = -chi_n psi_n``.  The same functions
diagonalize the finite Fourier transform (eigenvalue ``i^n lambda_n``) and the
sinc-kernel operator (eigenvalue ``mu_n = c/(2 pi) lambda_n^2``).
"""

from __future__ import annotations

import math

import numpy as np
import scipy.linalg

from .errors import ConventionViolationError, DomainError, SpectralFailureError
from .legendre import (
    BandedSymMatrix,
    default_truncation,
    gauss_legendre_rule,
    legendre_operator_diag,
    legendre_table,
    position_offdiag,
)

_IMAG_RESIDUE_TOL = 1e-8


def assemble_heun_matrix(c: float, n_dim: int) -> BandedSymMatrix:
    """Legendre-basis matrix of T: diag(-n(n+1)) - c^2 * (x-multiplication)^2."""
    if c < 0:
        raise DomainError("bandwidth c must be >= 0")
    if n_dim < 4:
        raise DomainError("need dimension >= 4")
    a = position_offdiag(n_dim - 1)  # couplings inside the truncation
    sq_diag = np.zeros(n_dim)
    sq_diag[:-1] = a * a
    sq_diag[1:] += a * a
    bands = np.zeros((3, n_dim))
    bands[0] = legendre_operator_diag(n_dim) - c * c * sq_diag
    bands[2, : n_dim - 2] = -c * c * a[:-1] * a[1:]
    return BandedSymMatrix(dim=n_dim, half_bandwidth=2, bands=bands)


class ProlateBasis:
    """Truncated eigendecomposition of T at bandwidth c.

    Columns of ``psi_coeffs`` are the orthonormal-Legendre coefficients of
    psi_n under the conventions: unit L2 norm, psi_n(1) > 0, chi ascending.
    Only modes n <= N/2 are certified; the tail is truncation-polluted.
    """

    def __init__(self, c, n_dim, psi_coeffs, chi, endpoint_minus, endpoint_plus):
        self.c = float(c)
        self.n_dim = int(n_dim)
        self.psi_coeffs = psi_coeffs
        self.chi = chi
        self.endpoint_minus = endpoint_minus
        self.endpoint_plus = endpoint_plus
        self._lam = np.full(n_dim, np.nan)
        self._mu = np.full(n_dim, np.nan)

    @property
    def n_certified(self) -> int:
        return self.n_dim // 2

    def lam(self, n: int) -> float:
        """Magnitude lambda_n of the finite-Fourier eigenvalue i^n lambda_n."""
        if math.isnan(self._lam[n]):
            fourier_eigenvalue(self, n)
        return float(self._lam[n])

    def mu(self, n: int) -> float:
        """Sinc-kernel eigenvalue mu_n = c/(2 pi) lambda_n^2."""
        if math.isnan(self._mu[n]):
            fourier_eigenvalue(self, n)
        return float(self._mu[n])


def solve_prolate(c: float, n_dim: int | None = None) -> ProlateBasis:
    """Diagonalize the banded matrix of T and package the eigenpairs."""
    if c < 0:
        raise DomainError("bandwidth c must be >= 0")
    if n_dim is None:
        n_dim = default_truncation(c)
    matrix = assemble_heun_matrix(c, n_dim)
    try:
        # scipy wants bands as rows; lower form matches our storage.
        w, v = scipy.linalg.eig_banded(matrix.bands, lower=True)
    except scipy.linalg.LinAlgError as exc:  # pragma: no cover - LAPACK failure
        raise SpectralFailureError(f"banded eigensolve failed: {exc}") from exc
    # Matrix eigenvalues are -chi_n; ascending chi reverses LAPACK's order.
    chi = -w[::-1]
    v = v[:, ::-1]
    if np.any(np.diff(chi) <= 0):
        raise SpectralFailureError("eigenvalues chi_n not strictly increasing")
    norms = np.sqrt((2 * np.arange(n_dim) + 1) / 2.0)
    plus = norms @ v
    sign = np.where(plus >= 0, 1.0, -1.0)
    v = v * sign
    plus = plus * sign
    minus = (norms * (-1.0) ** np.arange(n_dim)) @ v
    return ProlateBasis(
        c=c,
        n_dim=n_dim,
        psi_coeffs=v,
        chi=chi,
        endpoint_minus=minus,
        endpoint_plus=plus,
    )


def pswf_eval(basis: ProlateBasis, n: int, x, extrapolate: bool = False):
    """psi_n(x) by Legendre-series summation.

    Values for |x| > 1 are analytic continuation of an entire function and
    must be requested with ``extrapolate=True``.
    """
    if not 0 <= n < basis.n_dim:
        raise IndexError(f"mode {n} outside 0..{basis.n_dim - 1}")
    x = np.asarray(x, dtype=float)
    table = legendre_table(basis.n_dim - 1, x, extrapolate=extrapolate)
    return basis.psi_coeffs[:, n] @ table


def fourier_rayleigh(basis: ProlateBasis, n: int, q_order: int | None = None) -> complex:
    """Raw Rayleigh quotient <psi_n, F_c psi_n> with F_c applied by quadrature.

    Carries the full complex phase (including quadrature noise); used both to
    extract lambda_n and to check the i^n phase convention honestly.
    """
    if not 0 <= n < basis.n_certified:
        raise IndexError(f"mode {n} not certified (need n < {basis.n_certified})")
    c = basis.c
    if q_order is None:
        q_order = basis.n_dim + math.ceil(c) + 8
    rule = gauss_legendre_rule(q_order)
    psi_vals = pswf_eval(basis, n, rule.nodes)
    kernel = np.exp(1j * c * np.outer(rule.nodes, rule.nodes))
    transformed = kernel @ (rule.weights * psi_vals)
    return complex((rule.weights * psi_vals) @ transformed)


def fourier_eigenvalue(basis: ProlateBasis, n: int, q_order: int | None = None) -> complex:
    """Eigenvalue i^n lambda_n of the finite Fourier transform on psi_n.

    Computed from the Rayleigh quotient, which avoids the zeros of psi_n that
    a pointwise ratio would hit.  Stores lambda_n and mu_n on the basis.
    """
    quotient = fourier_rayleigh(basis, n, q_order)
    lam = (-1j) ** n * quotient
    if abs(lam.imag) > _IMAG_RESIDUE_TOL:
        raise ConventionViolationError(
            f"imaginary residue {lam.imag:.3e} of lambda_{n} exceeds {_IMAG_RESIDUE_TOL}"
        )
    basis._lam[n] = lam.real
    basis._mu[n] = basis.c / (2 * np.pi) * lam.real**2
    return (1j) ** n * lam.real
