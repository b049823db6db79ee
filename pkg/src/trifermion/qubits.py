"""Three-qubit states as the 8-amplitude corner of three fermions over six modes.

Qubit slot i (1, 2, 3) uses the mode pair (i, i+3); bit 0 picks the plain mode
and bit 1 the overlined one. Amplitudes are stored as length-8 arrays in the
decimal order psi[4A + 2B + C].
"""

from __future__ import annotations

import itertools
import json
from pathlib import Path
from typing import Optional

import numpy as np

from .exterior import FermionState, REL_TOL, amplitude, norm_squared, require_three_six

H = np.array([[1, 1], [1, -1]], dtype=complex) / np.sqrt(2)
X = np.array([[0, 1], [1, 0]], dtype=complex)
I2 = np.eye(2, dtype=complex)

GHZ = np.array([1, 0, 0, 0, 0, 0, 0, 1], dtype=complex) / np.sqrt(2)
W = np.array([0, 1, 1, 0, 1, 0, 0, 0], dtype=complex) / np.sqrt(3)

EPS2 = np.array([[0, 1], [-1, 0]], dtype=float)

BITS = tuple(itertools.product((0, 1), repeat=3))


def as_qubits(psi) -> np.ndarray:
    psi = np.asarray(psi, dtype=complex).reshape(-1)
    if psi.size != 8:
        raise ValueError(f"a three-qubit state has 8 amplitudes, got {psi.size}")
    return psi


def modes_for(bits: tuple[int, int, int]) -> tuple[int, int, int]:
    return tuple(i + 1 + 3 * b for i, b in enumerate(bits))


def embed(psi) -> FermionState:
    """psi_ABC -> P at (1 or 1bar, 2 or 2bar, 3 or 3bar) in that slot order."""
    psi = as_qubits(psi)
    return FermionState.from_dict({modes_for(bits): psi[i] for i, bits in enumerate(BITS)})


def extract(p: FermionState, rel_tol: float = REL_TOL) -> Optional[np.ndarray]:
    """Inverse of ``embed``; None if some amplitude outside the qubit pattern
    exceeds ``rel_tol * norm(P)``."""
    require_three_six(p)
    allowed = {tuple(sorted(modes_for(bits))) for bits in BITS}
    limit = rel_tol * np.sqrt(norm_squared(p))
    for key, value in zip(p.keys, p.coeffs):
        if key not in allowed and abs(value) > limit:
            return None
    return np.array([amplitude(p, modes_for(bits)) for bits in BITS])


def cayley_hyperdet(psi) -> complex:
    """Cayley's hyperdeterminant of the 2x2x2 array psi (monomial form)."""
    p0, p1, p2, p3, p4, p5, p6, p7 = as_qubits(psi)
    a, b, c, d = p0 * p7, p1 * p6, p2 * p5, p3 * p4
    return complex(
        a * a + b * b + c * c + d * d
        - 2 * a * (b + c + d)
        - 2 * (b * c + c * d + d * b)
        + 4 * p0 * p3 * p5 * p6
        + 4 * p7 * p4 * p2 * p1
    )


def cayley_hyperdet_eps(psi) -> complex:
    """-1/2 eps^{A1A3} eps^{A2A4} eps^{B1B2} eps^{C1C2} eps^{B3B4} eps^{C3C4} psi psi psi psi."""
    t = as_qubits(psi).reshape(2, 2, 2)
    e = EPS2
    val = np.einsum(
        "ac,bd,ef,gh,ij,kl,aeg,bfh,cik,djl->",
        e, e, e, e, e, e, t, t, t, t,
        optimize=True,
    )
    return complex(-val / 2)


def three_tangle(psi) -> float:
    return 4 * abs(cayley_hyperdet(psi))


def apply_local(psi, g1, g2, g3) -> np.ndarray:
    t = as_qubits(psi).reshape(2, 2, 2)
    out = np.einsum("ia,jb,kc,abc->ijk", np.asarray(g1), np.asarray(g2), np.asarray(g3), t)
    return out.reshape(8)


def embed_sl2_cubed(s1, s2, s3) -> np.ndarray:
    """Block matrix acting on the mode pairs (1,4), (2,5), (3,6) by s1, s2, s3."""
    g = np.zeros((6, 6), dtype=complex)
    for i, s in enumerate((s1, s2, s3)):
        s = np.asarray(s, dtype=complex)
        if s.shape != (2, 2):
            raise ValueError(f"expected 2x2 gates, got {s.shape}")
        pair = (i, i + 3)
        for r in range(2):
            for c in range(2):
                g[pair[r], pair[c]] = s[r, c]
    return g


def qubits_from_json(data) -> np.ndarray:
    psi = data["psi"]
    if len(psi) != 8:
        raise ValueError(f"'psi' must hold 8 [re, im] pairs, got {len(psi)}")
    return np.array([complex(float(re), float(im)) for re, im in psi])


def qubits_to_json(psi) -> dict:
    return {"psi": [[float(z.real), float(z.imag)] for z in as_qubits(psi)]}


def load_qubits(path: str | Path) -> np.ndarray:
    with open(path) as fh:
        return qubits_from_json(json.load(fh))
