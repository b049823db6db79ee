"""Antisymmetric k-forms over C^n stored by sorted index tuples.

Indices are 1-based throughout the public API, matching the usual physics
labelling of single particle modes. Modes 4, 5, 6 of the six-mode system are
also written 1̄, 2̄, 3̄ (see ``OVERLINE``).

A state ``P = (1/k!) sum P_{a1..ak} e^{a1} ^ ... ^ e^{ak}`` is stored through its
coefficient tensor, one complex number per strictly increasing index tuple.
With this convention ``e^1 ^ e^2 ^ e^3`` has ``P_123 = 1`` and a normalized
state satisfies ``sum_{a<b<c} |P_abc|^2 = 1``. The creation-operator form
``sum w_abc f_a^+ f_b^+ f_c^+ |0>`` corresponds to ``w_abc = P_abc / sqrt(6)``.
"""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass, field
from functools import cache
from math import factorial
from pathlib import Path
from typing import Mapping, Sequence

import numpy as np

# 4 <-> 1bar, 5 <-> 2bar, 6 <-> 3bar
OVERLINE = {1: 4, 2: 5, 3: 6}
UNDERLINE = {v: k for k, v in OVERLINE.items()}

REL_TOL = 1e-9


def bar(i: int) -> int:
    """Return the overlined partner of mode ``i`` (1 <-> 4, 2 <-> 5, 3 <-> 6)."""
    if i in OVERLINE:
        return OVERLINE[i]
    if i in UNDERLINE:
        return UNDERLINE[i]
    raise ValueError(f"mode {i} has no overline partner")


def perm_sign(seq: Sequence[int]) -> int:
    """Sign of the permutation sorting ``seq``; 0 if an entry repeats."""
    seq = list(seq)
    sign = 1
    for i in range(len(seq)):
        for j in range(i + 1, len(seq)):
            if seq[i] == seq[j]:
                return 0
            if seq[i] > seq[j]:
                sign = -sign
    return sign


@cache
def sorted_keys(n: int, k: int) -> tuple[tuple[int, ...], ...]:
    """All strictly increasing 1-based k-tuples from 1..n, lexicographic."""
    return tuple(itertools.combinations(range(1, n + 1), k))


@cache
def key_index(n: int, k: int) -> dict[tuple[int, ...], int]:
    return {key: i for i, key in enumerate(sorted_keys(n, k))}


@cache
def _expansion(n: int, k: int) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Flat positions, source slots and signs that scatter sorted amplitudes
    into the dense (n,)*k tensor."""
    pos, src, sgn = [], [], []
    shape = (n,) * k
    for i, key in enumerate(sorted_keys(n, k)):
        for perm in itertools.permutations(range(k)):
            idx = tuple(key[p] - 1 for p in perm)
            pos.append(np.ravel_multi_index(idx, shape))
            src.append(i)
            sgn.append(perm_sign(perm))
    return np.array(pos, dtype=np.intp), np.array(src, dtype=np.intp), np.array(sgn, dtype=float)


@cache
def _sorted_positions(n: int, k: int) -> np.ndarray:
    shape = (n,) * k
    return np.array(
        [np.ravel_multi_index(tuple(a - 1 for a in key), shape) for key in sorted_keys(n, k)],
        dtype=np.intp,
    )


@dataclass(frozen=True, eq=False)
class FermionState:
    """A k-fermion state over n single particle modes.

    ``coeffs[i]`` is the amplitude of ``sorted_keys(n, k)[i]``. Instances are
    immutable; the coefficient array is flagged read-only.
    """

    n: int
    k: int
    coeffs: np.ndarray = field(repr=False)

    def __post_init__(self):
        if self.n < 1 or not 1 <= self.k <= self.n:
            raise ValueError(f"need 1 <= k <= n, got n={self.n}, k={self.k}")
        c = np.array(self.coeffs, dtype=complex).reshape(-1)
        if c.size != len(sorted_keys(self.n, self.k)):
            raise ValueError(f"expected {len(sorted_keys(self.n, self.k))} amplitudes, got {c.size}")
        c.setflags(write=False)
        object.__setattr__(self, "coeffs", c)

    @classmethod
    def zero(cls, n: int = 6, k: int = 3) -> FermionState:
        return cls(n, k, np.zeros(len(sorted_keys(n, k)), dtype=complex))

    @classmethod
    def from_dict(cls, amplitudes: Mapping[Sequence[int], complex], n: int = 6, k: int = 3) -> FermionState:
        """Build a state from ``{index tuple: value}``.

        Tuples need not be sorted: ``{(3, 1, 5): s}`` stores ``P_135 = -s``.
        Repeated entries for the same sorted key are summed.
        """
        index = key_index(n, k)
        c = np.zeros(len(index), dtype=complex)
        for idx, value in amplitudes.items():
            idx = tuple(int(a) for a in idx)
            _check_indices(idx, n, k)
            s = perm_sign(idx)
            if s == 0:
                if value != 0:
                    raise ValueError(f"repeated index in {idx} with nonzero amplitude")
                continue
            c[index[tuple(sorted(idx))]] += s * value
        return cls(n, k, c)

    @classmethod
    def from_tensor(cls, tensor: np.ndarray) -> FermionState:
        """Read the sorted components of a dense antisymmetric tensor.

        No antisymmetrization is performed; only the a1 < a2 < ... entries are used.
        """
        tensor = np.asarray(tensor)
        k = tensor.ndim
        n = tensor.shape[0]
        return cls(n, k, tensor.reshape(-1)[_sorted_positions(n, k)])

    @property
    def keys(self) -> tuple[tuple[int, ...], ...]:
        return sorted_keys(self.n, self.k)

    @property
    def amplitudes(self) -> dict[tuple[int, ...], complex]:
        """Nonzero amplitudes keyed by sorted index tuple."""
        return {key: complex(v) for key, v in zip(self.keys, self.coeffs) if v != 0}

    def __getitem__(self, indices: Sequence[int]) -> complex:
        return amplitude(self, indices)

    def tensor(self) -> np.ndarray:
        """Dense totally antisymmetric coefficient tensor, shape (n,)*k, 0-based."""
        pos, src, sgn = _expansion(self.n, self.k)
        out = np.zeros(self.n ** self.k, dtype=complex)
        out[pos] = sgn * self.coeffs[src]
        return out.reshape((self.n,) * self.k)

    def __add__(self, other: FermionState) -> FermionState:
        _check_same_space(self, other)
        return FermionState(self.n, self.k, self.coeffs + other.coeffs)

    def __sub__(self, other: FermionState) -> FermionState:
        _check_same_space(self, other)
        return FermionState(self.n, self.k, self.coeffs - other.coeffs)

    def __mul__(self, scalar: complex) -> FermionState:
        return FermionState(self.n, self.k, self.coeffs * scalar)

    __rmul__ = __mul__

    def __neg__(self) -> FermionState:
        return self * -1

    def norm(self) -> float:
        return float(np.sqrt(norm_squared(self)))

    def normalized(self) -> FermionState:
        nrm = self.norm()
        if nrm == 0:
            raise ValueError("cannot normalize the zero state")
        return self * (1 / nrm)

    def is_normalized(self, tol: float = REL_TOL) -> bool:
        return abs(norm_squared(self) - 1) <= tol

    def allclose(self, other: FermionState, atol: float = 1e-12) -> bool:
        _check_same_space(self, other)
        return bool(np.max(np.abs(self.coeffs - other.coeffs), initial=0.0) <= atol)

    def __repr__(self) -> str:
        terms = ", ".join(f"{''.join(map(str, k))}: {v:.6g}" for k, v in self.amplitudes.items())
        return f"FermionState(n={self.n}, k={self.k}, {{{terms}}})"


# Aliases naming the two roles the single class plays.
FermionState3x6 = FermionState
GeneralFermionState = FermionState


def _check_indices(indices: Sequence[int], n: int, k: int) -> None:
    if len(indices) != k:
        raise ValueError(f"expected {k} indices, got {len(indices)}")
    for a in indices:
        if not 1 <= a <= n:
            raise IndexError(f"mode index {a} out of range 1..{n}")


def _check_same_space(p: FermionState, q: FermionState) -> None:
    if (p.n, p.k) != (q.n, q.k):
        raise ValueError(f"states live in different spaces: ({p.n},{p.k}) vs ({q.n},{q.k})")


def require_three_six(p: FermionState) -> None:
    if (p.n, p.k) != (6, 3):
        raise ValueError(f"expected a three-fermion state over six modes, got n={p.n}, k={p.k}")


def amplitude(p: FermionState, indices: Sequence[int]) -> complex:
    """Signed amplitude ``P_{a1..ak}`` for arbitrary index order; 0 on a repeat."""
    indices = tuple(int(a) for a in indices)
    _check_indices(indices, p.n, p.k)
    s = perm_sign(indices)
    if s == 0:
        return 0j
    return s * complex(p.coeffs[key_index(p.n, p.k)[tuple(sorted(indices))]])


def basis_state(*indices: int, n: int = 6) -> FermionState:
    """``e^{a1} ^ ... ^ e^{ak}`` with the given (not necessarily sorted) indices."""
    return FermionState.from_dict({tuple(indices): 1.0}, n=n, k=len(indices))


def wedge(vectors: Sequence[Sequence[complex]]) -> FermionState:
    """Decomposable state ``v1 ^ v2 ^ ... ^ vk``.

    Each amplitude is the k x k minor of the stacked vectors on the columns
    named by the sorted key.
    """
    mat = np.array([np.asarray(v, dtype=complex) for v in vectors]) if len(vectors) else None
    if mat is None or mat.ndim != 2:
        raise ValueError("wedge needs at least one vector, all of equal length")
    k, n = mat.shape
    if k > n:
        raise ValueError(f"cannot wedge {k} vectors in dimension {n}")
    keys = sorted_keys(n, k)
    cols = np.array(keys) - 1
    minors = np.linalg.det(mat[:, cols].transpose(1, 0, 2))
    return FermionState(n, k, minors)


def norm_squared(p: FermionState) -> float:
    return float(np.sum(np.abs(p.coeffs) ** 2))


@cache
def _complement_table(n: int, k: int) -> tuple[np.ndarray, np.ndarray]:
    """For each sorted k-key: index of its sorted complement and the sign of
    the permutation (key, complement) of 1..n."""
    full = set(range(1, n + 1))
    comp_index = key_index(n, n - k)
    idx, sgn = [], []
    for key in sorted_keys(n, k):
        rest = tuple(sorted(full - set(key)))
        idx.append(comp_index[rest])
        sgn.append(perm_sign(key + rest))
    return np.array(idx, dtype=np.intp), np.array(sgn, dtype=float)


def hodge_star(p: FermionState) -> FermionState:
    """Complement map ``(*P)_u = sign(c(u), u) P_{c(u)}`` onto (n-k)-forms.

    Equivalently ``sum_{a1..ak} eps^{a1..ak u1..u(n-k)} P_{a1..ak} = k! (*P)_u``.
    """
    m = p.n - p.k
    if m < 1:
        raise ValueError("the complement of a top form is a scalar")
    idx, sgn = _complement_table(p.n, m)
    # table signs are for (u, c(u)); moving c(u) to the front costs (-1)^(k m)
    return FermionState(p.n, m, (-1) ** (p.k * m) * sgn * p.coeffs[idx])


def symplectic_form(p: FermionState, q: FermionState) -> complex:
    """``(1/6) eps^{abcdef} P_abc Q_def``, summed over all index values.

    Only the 20 (key, complement) pairs contribute, each 36 times.
    """
    require_three_six(p)
    require_three_six(q)
    idx, sgn = _complement_table(6, 3)
    return complex(6 * np.sum(sgn * p.coeffs * q.coeffs[idx]))


def apply_gl6(p: FermionState, g: np.ndarray) -> FermionState:
    """``P'_{abc} = G_a^d G_b^e G_c^f P_def`` (same matrix on every slot).

    Works for any k-form over C^n with an n x n matrix; the name keeps the
    six-mode case in view.
    """
    g = np.asarray(g, dtype=complex)
    if g.shape != (p.n, p.n):
        raise ValueError(f"expected a {p.n}x{p.n} matrix, got {g.shape}")
    t = p.tensor()
    for axis in range(p.k):
        t = np.tensordot(g, t, axes=([1], [axis]))
        t = np.moveaxis(t, 0, axis)
    return FermionState.from_tensor(t)


def reduced_density_single(p: FermionState) -> np.ndarray:
    """Single particle reduced density matrix with trace equal to k.

    ``rho(a, b) = sum_{c<d} P_acd conj(P_bcd)`` for three fermions, the
    general case summing over sorted (k-1)-tuples.
    """
    t = p.tensor().reshape(p.n, -1)
    # full sum over the remaining k-1 slots counts each sorted tuple (k-1)! times
    return (t @ t.conj().T) / factorial(p.k - 1)


def state_to_json(p: FermionState) -> dict:
    return {
        "n": p.n,
        "k": p.k,
        "amplitudes": [
            {"indices": list(key), "re": float(v.real), "im": float(v.imag)}
            for key, v in p.amplitudes.items()
        ],
    }


def state_from_json(data: Mapping) -> FermionState:
    """Parse the canonical state object; unsorted or repeated index lists are rejected."""
    try:
        n, k = int(data["n"]), int(data["k"])
        entries = data["amplitudes"]
    except (KeyError, TypeError) as exc:
        raise ValueError(f"malformed state object: {exc}") from exc
    index = key_index(n, k) if n >= 1 and 1 <= k <= n else None
    if index is None:
        raise ValueError(f"need 1 <= k <= n, got n={n}, k={k}")
    c = np.zeros(len(index), dtype=complex)
    seen = set()
    for entry in entries:
        key = tuple(int(a) for a in entry["indices"])
        _check_indices(key, n, k)
        if any(a >= b for a, b in zip(key, key[1:])):
            raise ValueError(f"indices {list(key)} are not strictly increasing")
        if key in seen:
            raise ValueError(f"duplicate amplitude for indices {list(key)}")
        seen.add(key)
        c[index[key]] = complex(float(entry.get("re", 0.0)), float(entry.get("im", 0.0)))
    return FermionState(n, k, c)


def load_state(path: str | Path) -> FermionState:
    with open(path) as fh:
        return state_from_json(json.load(fh))


def save_state(p: FermionState, path: str | Path) -> None:
    with open(path, "w") as fh:
        json.dump(state_to_json(p), fh, indent=2)


def random_state(rng: np.random.Generator, n: int = 6, k: int = 3, normalize: bool = True) -> FermionState:
    """Dense state with i.i.d. complex Gaussian amplitudes."""
    size = len(sorted_keys(n, k))
    p = FermionState(n, k, rng.normal(size=size) + 1j * rng.normal(size=size))
    return p.normalized() if normalize else p


def random_wedge(rng: np.random.Generator, n: int, k: int) -> FermionState:
    vecs = rng.normal(size=(k, n)) + 1j * rng.normal(size=(k, n))
    return wedge(vecs)
