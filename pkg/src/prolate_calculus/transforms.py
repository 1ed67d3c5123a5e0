"""Finite Fourier and sinc-kernel operators, direct and reconstructed.

Direct versions collocate the defining integral kernels with tensor
Gauss-Legendre quadrature in the orthonormal Legendre basis.  Reconstructed
versions assemble the same operators as weighted integrals of the boundary
translation family over xi: the Fourier weight is ``exp(ic(1-xi))`` on [0,2]
(or its reflected fold onto [0,1]) and the sinc weight is ``sin(c xi)/(pi xi)``
likewise.  Agreement of the two routes is the package's central check.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import DomainError, QuadratureUnresolvedError, XiQuadratureUnresolvedError
from .legendre import CoeffVector, gauss_legendre_rule, legendre_table
from .nystrom import sinc_kernel
from .prolate import ProlateBasis
from .ucalc import boundary_ratios

_DRIFT_TOL = 1e-9


@dataclass(frozen=True)
class OperatorMatrix:
    """Dense complex matrix of an operator in the orthonormal Legendre basis."""

    dim: int
    entries: np.ndarray

    def apply(self, f: CoeffVector) -> CoeffVector:
        if f.n_coeffs != self.dim:
            raise DomainError("coefficient length does not match operator dim")
        return CoeffVector(coeffs=self.entries @ f.coeffs)

    def frobenius(self) -> float:
        return float(np.linalg.norm(self.entries))


def _tensor_quadrature_matrix(kernel, n_dim: int, q_order: int) -> np.ndarray:
    """Entries <Pbar_m, K Pbar_n> with K applied by q_order-point quadrature."""
    rule = gauss_legendre_rule(q_order)
    k = kernel(rule.nodes[:, None], rule.nodes[None, :])
    pw = legendre_table(n_dim - 1, rule.nodes) * rule.weights
    return pw @ k @ pw.T


def _resolved_matrix(kernel, n_dim: int, q_order: int) -> np.ndarray:
    """Tensor quadrature with an under-resolution check by order doubling."""
    coarse = _tensor_quadrature_matrix(kernel, n_dim, q_order)
    fine = _tensor_quadrature_matrix(kernel, n_dim, 2 * q_order)
    drift = float(np.max(np.abs(fine - coarse)))
    if drift > _DRIFT_TOL:
        raise QuadratureUnresolvedError(
            f"entries drift by {drift:.3e} when doubling q_order={q_order}"
        )
    return fine


def _default_q_order(c: float, n_dim: int) -> int:
    return n_dim + math.ceil(c) + 8


def finite_fourier_direct(c: float, n_dim: int, q_order: int | None = None) -> OperatorMatrix:
    """Matrix of phi -> integral exp(icxt) phi(t) dt by tensor quadrature.

    Entries with m+n even are purely real and with m+n odd purely imaginary
    (cos/sin parity of the kernel).
    """
    if c < 0:
        raise DomainError("bandwidth c must be >= 0")
    if q_order is None:
        q_order = _default_q_order(c, n_dim)
    elif q_order < _default_q_order(c, n_dim):
        raise DomainError(
            f"q_order {q_order} below resolution floor {_default_q_order(c, n_dim)}"
        )
    entries = _resolved_matrix(
        lambda x, t: np.exp(1j * c * x * t), n_dim, q_order
    )
    return OperatorMatrix(dim=n_dim, entries=entries)


def sinc_kernel_direct(c: float, n_dim: int, q_order: int | None = None) -> OperatorMatrix:
    """Matrix of the sinc-kernel operator; real symmetric, spectrum in (0, 1)."""
    if c < 0:
        raise DomainError("bandwidth c must be >= 0")
    if q_order is None:
        q_order = _default_q_order(c, n_dim)
    elif q_order < _default_q_order(c, n_dim):
        raise DomainError(
            f"q_order {q_order} below resolution floor {_default_q_order(c, n_dim)}"
        )
    entries = _resolved_matrix(
        lambda x, t: sinc_kernel(c, x, t), n_dim, q_order
    ).astype(complex)
    return OperatorMatrix(dim=n_dim, entries=entries)


def reflect(n_dim: int) -> OperatorMatrix:
    """Reflection x -> -x; diagonal (-1)^n on the Legendre basis."""
    return OperatorMatrix(
        dim=n_dim, entries=np.diag((-1.0 + 0j) ** np.arange(n_dim))
    )


def _default_q_xi(c: float, n_dim: int) -> int:
    # Oscillation floor plus enough nodes to integrate the certified modes'
    # endpoint-ratio polynomials exactly.
    return max(math.ceil(16 + 4 * c), n_dim // 2 + 12)


def _mode_integrals(basis, xi_nodes, xi_weights, weight_plus, weight_minus, ratio_method):
    """Integrals int w(xi) ratio_n(xi) dxi for every mode, complex array.

    weight_plus multiplies the identity part and weight_minus the reflected
    part (scaled per-mode by parity (-1)^n); either may be None.
    """
    n_modes = basis.n_dim
    ratios = np.empty((n_modes, xi_nodes.size))
    for j, xi in enumerate(xi_nodes):
        ratios[:, j] = boundary_ratios(basis, float(xi), method=ratio_method[j])
    values = np.zeros(n_modes, dtype=complex)
    if weight_plus is not None:
        values += ratios @ (xi_weights * weight_plus)
    if weight_minus is not None:
        parity = (-1.0) ** np.arange(n_modes)
        values += parity * (ratios @ (xi_weights * weight_minus))
    return values


def _reconstruct(basis, variant, q_xi, weights_on):
    """Shared mode-wise reconstruction driver.

    weights_on(xi_nodes, variant) must return (weight_plus, weight_minus)
    arrays for the chosen xi interval.
    """
    if variant not in ("full", "folded"):
        raise DomainError(f"variant must be 'full' or 'folded', got {variant!r}")
    if q_xi is None:
        q_xi = _default_q_xi(basis.c, basis.n_dim)

    def eigen_integrals(q):
        rule = gauss_legendre_rule(q)
        if variant == "folded":
            nodes = 0.5 * (rule.nodes + 1.0)  # [0, 1]
            weights = 0.5 * rule.weights
        else:
            nodes = rule.nodes + 1.0  # [0, 2]
            weights = rule.weights
        w_plus, w_minus = weights_on(nodes, variant)
        # The series converges slowly near xi = 2; the ratio path is exact.
        method = ["spectral" if xi >= 1.9 else "auto" for xi in nodes]
        return _mode_integrals(basis, nodes, weights, w_plus, w_minus, method)

    coarse = eigen_integrals(q_xi)
    fine = eigen_integrals(2 * q_xi)
    certified = basis.n_certified
    drift = float(np.max(np.abs(coarse[:certified] - fine[:certified])))
    if drift > _DRIFT_TOL:
        raise XiQuadratureUnresolvedError(
            f"mode integrals drift by {drift:.3e} when doubling q_xi={q_xi}"
        )
    entries = (basis.psi_coeffs * coarse) @ basis.psi_coeffs.T
    return OperatorMatrix(dim=basis.n_dim, entries=entries)


def reconstruct_fourier(
    basis: ProlateBasis, variant: str = "folded", q_xi: int | None = None
) -> OperatorMatrix:
    """Finite Fourier transform assembled from the translation family.

    full:   integral over xi in [0, 2] of exp(ic(1-xi)) U(xi; T)
    folded: integral over xi in [0, 1] of
            (exp(ic(1-xi)) + R exp(-ic(1-xi))) U(xi; T)
    """
    c = basis.c

    def weights_on(nodes, variant):
        phase = np.exp(1j * c * (1.0 - nodes))
        if variant == "full":
            return phase, None
        return phase, np.conj(phase)

    return _reconstruct(basis, variant, q_xi, weights_on)


def reconstruct_sinc(
    basis: ProlateBasis, variant: str = "folded", q_xi: int | None = None
) -> OperatorMatrix:
    """Sinc-kernel operator assembled from the translation family.

    full:   integral over [0, 2] of sin(c xi)/(pi xi) U(xi; T)
    folded: integral over [0, 1] of
            (sin(c xi)/(pi xi) + sin(c(2-xi))/(pi(2-xi)) R) U(xi; T)

    The weight takes its limit value c/pi at xi = 0.
    """
    c = basis.c

    def weights_on(nodes, variant):
        w_plus = (c / np.pi) * np.sinc((c / np.pi) * nodes) + 0j
        if variant == "full":
            return w_plus, None
        w_minus = (c / np.pi) * np.sinc((c / np.pi) * (2.0 - nodes)) + 0j
        return w_plus, w_minus

    return _reconstruct(basis, variant, q_xi, weights_on)


def commutator_report(a: OperatorMatrix, b: OperatorMatrix, block: int) -> float:
    """|| (AB - BA) ||_F / (||A||_F ||B||_F) on the leading block."""
    if a.dim != b.dim:
        raise DomainError("operators must share a dimension")
    if not 1 <= block <= a.dim:
        raise DomainError(f"block must lie in 1..{a.dim}")
    comm = a.entries @ b.entries - b.entries @ a.entries
    num = np.linalg.norm(comm[:block, :block])
    den = np.linalg.norm(a.entries[:block, :block]) * np.linalg.norm(
        b.entries[:block, :block]
    )
    return float(num / den)
