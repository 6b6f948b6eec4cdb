"""The n x n Fourier matrix over a finite field.

A ``FourierContext`` materializes the matrix generated by an element
omega of exact multiplicative order n: row i is
``e_i = (1, w^i, w^2i, ..., w^(n-1)i)`` and ``inv_cols[:, j]`` holds
``f_j``, the j-th column of n times the matrix inverse, which works out
to ``f_j[u] = w^(-uj)``.  With that scaling the duality reads
``e_i . f_j = n * delta_ij`` (n taken in the field; in characteristic 2
with odd n this is the plain Kronecker delta).  Indices wrap modulo n.
"""

from __future__ import annotations

import numpy as np

from . import linalg
from .field import GF, FieldError


class FourierContext:
    """Immutable bundle of a field, an order-n generator and the matrix."""

    def __init__(self, field: GF, n: int, omega: int):
        if n < 1:
            raise FieldError(f"matrix size must be positive, got {n}")
        if field.element_order(omega) != n:
            raise FieldError(f"omega={omega} does not have exact order {n}")
        self.field = field
        self.n = n
        self.omega = omega
        pow_table = np.empty(n, dtype=np.int64)
        x = 1
        for k in range(n):
            pow_table[k] = x
            x = field.mul(x, omega)
        idx = np.arange(n, dtype=np.int64)
        exps = np.outer(idx, idx) % n
        self.rows = pow_table[exps]
        self.inv_cols = pow_table[(-exps) % n]
        self._pow_table = pow_table
        # n as an element of the prime subfield
        self.n_in_field = n % field.p

    def row(self, i: int) -> np.ndarray:
        return self.rows[i % self.n]

    def inv_col(self, j: int) -> np.ndarray:
        return self.inv_cols[:, j % self.n]

    def omega_pow(self, k: int) -> int:
        return int(self._pow_table[k % self.n])

    def inverse_matrix(self) -> np.ndarray:
        """The true matrix inverse, i.e. inv_cols scaled by n^-1."""
        scale = self.field.inv(self.n_in_field)
        return self.field.mul(self.inv_cols, scale)

    def verify_inverse(self) -> bool:
        prod = linalg.mat_mul(self.field, self.rows, self.inverse_matrix())
        return bool(np.array_equal(prod, linalg.eye(self.n)))

    def __repr__(self):
        return f"FourierContext(n={self.n}, field={self.field!r}, omega={self.omega})"


def build_fourier(field: GF, n: int, omega: int | None = None) -> FourierContext:
    """Fourier matrix of size n over the field; needs n | (q - 1)."""
    if omega is None:
        omega = field.element_of_order(n)
    return FourierContext(field, n, omega)
