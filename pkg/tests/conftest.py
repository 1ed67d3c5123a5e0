"""Shared cached builders: eigensolves, operators and oracles are reused
across test modules to keep the suite fast."""

from __future__ import annotations

import numpy as np
import pytest

from prolate_calculus import (
    finite_fourier_direct,
    nystrom_sinc_eigen,
    reconstruct_fourier,
    reconstruct_sinc,
    sinc_kernel_direct,
    solve_prolate,
)


class OpCache:
    def __init__(self):
        self._store = {}

    def _get(self, key, builder):
        if key not in self._store:
            self._store[key] = builder()
        return self._store[key]

    def basis(self, c, n_dim=None):
        return self._get(("basis", c, n_dim), lambda: solve_prolate(c, n_dim))

    def nystrom(self, c, n_nodes=400):
        return self._get(("ny", c, n_nodes), lambda: nystrom_sinc_eigen(c, n_nodes))

    def fourier(self, c, n_dim):
        return self._get(("F", c, n_dim), lambda: finite_fourier_direct(c, n_dim))

    def sinc(self, c, n_dim):
        return self._get(("Q", c, n_dim), lambda: sinc_kernel_direct(c, n_dim))

    def fourier_recon(self, c, n_dim, variant="folded"):
        return self._get(
            ("Fr", c, n_dim, variant),
            lambda: reconstruct_fourier(self.basis(c, n_dim), variant),
        )

    def sinc_recon(self, c, n_dim, variant="folded"):
        return self._get(
            ("Qr", c, n_dim, variant),
            lambda: reconstruct_sinc(self.basis(c, n_dim), variant),
        )


@pytest.fixture(scope="session")
def ops() -> OpCache:
    return OpCache()


@pytest.fixture(scope="session")
def rng():
    return np.random.default_rng(20260810)
