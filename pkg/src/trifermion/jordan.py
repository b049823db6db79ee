"""The cubic Jordan algebra M(3, C): 3x3 complex matrices with A o B = (AB + BA)/2."""

from __future__ import annotations

import numpy as np

I3 = np.eye(3, dtype=complex)


def as_m3(a) -> np.ndarray:
    a = np.asarray(a, dtype=complex)
    if a.shape != (3, 3):
        raise ValueError(f"expected a 3x3 matrix, got shape {a.shape}")
    return a


def jordan_product(a, b) -> np.ndarray:
    a, b = as_m3(a), as_m3(b)
    return (a @ b + b @ a) / 2


def sharp(a) -> np.ndarray:
    """Adjugate (transposed cofactor matrix), so that ``A @ sharp(A) = det(A) I``.

    Written out with cofactors rather than ``det(A) inv(A)`` so singular inputs work.
    """
    a = as_m3(a)
    out = np.empty((3, 3), dtype=complex)
    for i in range(3):
        i1, i2 = (i + 1) % 3, (i + 2) % 3
        for j in range(3):
            j1, j2 = (j + 1) % 3, (j + 2) % 3
            # cyclic index order makes the cofactor sign automatic
            out[j, i] = a[i1, j1] * a[i2, j2] - a[i1, j2] * a[i2, j1]
    return out


def cross(m, n) -> np.ndarray:
    """Linearized sharp: ``(M + N)# - M# - N#``."""
    m, n = as_m3(m), as_m3(n)
    return sharp(m + n) - sharp(m) - sharp(n)


def norm(a) -> complex:
    """Cubic norm N(A) = Det(A)."""
    a = as_m3(a)
    return complex(
        a[0, 0] * (a[1, 1] * a[2, 2] - a[1, 2] * a[2, 1])
        - a[0, 1] * (a[1, 0] * a[2, 2] - a[1, 2] * a[2, 0])
        + a[0, 2] * (a[1, 0] * a[2, 1] - a[1, 1] * a[2, 0])
    )


def trace_form(a, b) -> complex:
    """(A, B) = Tr(A o B) = Tr(AB)."""
    a, b = as_m3(a), as_m3(b)
    return complex(np.sum(a * b.T))
