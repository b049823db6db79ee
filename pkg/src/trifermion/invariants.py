"""Entanglement invariants of three fermions over six modes, plus Pluecker
separability tests for general k-forms.

Two independent routes are kept for the quartic invariant and the cubic dual:
one through the block record (alpha, beta, A, B), one through epsilon
contractions of the coefficient tensor. Each route is checked against the
other in the test suite.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass, field
from functools import cache
from itertools import combinations
from math import factorial
from typing import Optional

import numpy as np

from .exterior import (
    REL_TOL,
    FermionState,
    amplitude,
    hodge_star,
    key_index,
    norm_squared,
    perm_sign,
    require_three_six,
    symplectic_form,
)
from .jordan import cross, norm, sharp, trace_form

# Column i of A is filled from the overlined pair complementary to i in
# cyclic order; column j of B from the plain pair complementary to j.
A_PAIRS = ((5, 6), (6, 4), (4, 5))
B_PAIRS = ((2, 3), (3, 1), (1, 2))


@dataclass(frozen=True, eq=False)
class BlockForm:
    """The 20 amplitudes regrouped as two scalars and two 3x3 matrices."""

    alpha: complex
    beta: complex
    A: np.ndarray
    B: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "alpha", complex(self.alpha))
        object.__setattr__(self, "beta", complex(self.beta))
        for name in ("A", "B"):
            m = np.array(getattr(self, name), dtype=complex)
            if m.shape != (3, 3):
                raise ValueError(f"{name} must be 3x3, got {m.shape}")
            m.setflags(write=False)
            object.__setattr__(self, name, m)

    @classmethod
    def zero(cls) -> BlockForm:
        return cls(0, 0, np.zeros((3, 3)), np.zeros((3, 3)))

    def __add__(self, other: BlockForm) -> BlockForm:
        return BlockForm(self.alpha + other.alpha, self.beta + other.beta, self.A + other.A, self.B + other.B)

    def __mul__(self, c: complex) -> BlockForm:
        return BlockForm(c * self.alpha, c * self.beta, c * self.A, c * self.B)

    __rmul__ = __mul__

    def as_vector(self) -> np.ndarray:
        return np.concatenate([[self.alpha, self.beta], self.A.ravel(), self.B.ravel()])

    def allclose(self, other: BlockForm, atol: float = 1e-12) -> bool:
        return bool(np.max(np.abs(self.as_vector() - other.as_vector())) <= atol)


def to_blocks(p: FermionState) -> BlockForm:
    require_three_six(p)
    A = np.array([[amplitude(p, (a,) + A_PAIRS[i]) for i in range(3)] for a in (1, 2, 3)])
    B = np.array([[amplitude(p, (i + 4,) + B_PAIRS[j]) for j in range(3)] for i in range(3)])
    return BlockForm(amplitude(p, (1, 2, 3)), amplitude(p, (4, 5, 6)), A, B)


def from_blocks(b: BlockForm) -> FermionState:
    entries = {(1, 2, 3): b.alpha, (4, 5, 6): b.beta}
    for a in range(3):
        for i in range(3):
            entries[(a + 1,) + A_PAIRS[i]] = b.A[a, i]
    for i in range(3):
        for j in range(3):
            entries[(i + 4,) + B_PAIRS[j]] = b.B[i, j]
    return FermionState.from_dict(entries)


def t123_blocks(b: BlockForm) -> complex:
    """4([Tr(AB) - alpha beta]^2 - 4 Tr(A# B#) + 4 alpha Det A + 4 beta Det B)."""
    s = trace_form(b.A, b.B) - b.alpha * b.beta
    return 4 * (s * s - 4 * trace_form(sharp(b.A), sharp(b.B)) + 4 * b.alpha * norm(b.A) + 4 * b.beta * norm(b.B))


def _contraction_matrix(p: FermionState) -> tuple[np.ndarray, np.ndarray]:
    """K[i, l] = sum_{jk} S_ijk P_ljk with S = *P; returns (K, dense P).

    The full epsilon contraction eps^{abcdef} P_abc equals 6 S_def, which is
    what lets both epsilon formulas run through this 6x6 matrix.
    """
    t = p.tensor()
    s = hodge_star(p).tensor()
    return np.einsum("ijk,ljk->il", s, t), t


def t123_eps(p: FermionState) -> complex:
    """-(1/6^3) eps^{a1b1c1a3b2c2} eps^{a2b3c3a4b4c4} P_a1b1c1 P_a2b2c2 P_a3b3c3 P_a4b4c4.

    Contracting each epsilon against one P leaves (1/216) Tr((6K)^2) = Tr(K^2)/6.
    """
    require_three_six(p)
    k, _ = _contraction_matrix(p)
    return complex(np.trace(k @ k) / 6)


def t123(p: FermionState) -> complex:
    return t123_eps(p)


def tangle(p: FermionState) -> float:
    """|T_123|, which lies in [0, 1] for normalized states."""
    if not p.is_normalized():
        warnings.warn("tangle of an unnormalized state is outside the [0, 1] convention", stacklevel=2)
    return abs(t123_eps(p))


def dual_blocks(b: BlockForm) -> BlockForm:
    """The cubic covariant (dual state) in block form."""
    al, be, A, B = b.alpha, b.beta, b.A, b.B
    tr = trace_form(A, B)
    s = tr - al * be
    A_s, B_s = sharp(A), sharp(B)
    return BlockForm(
        alpha=-al * al * be + al * tr - 2 * norm(B),
        beta=al * be * be - be * tr + 2 * norm(A),
        A=2 * cross(B, A_s) - 2 * be * B_s - s * A,
        B=-2 * cross(A, B_s) + 2 * al * A_s + s * B,
    )


def dual_eps_unscaled(p: FermionState) -> FermionState:
    """``(1/72) eps^{klm k'l'm'} P_alm P_kbc P_k'l'm'`` taken literally.

    This normalization pairs with ``T = -(1/3) eps P Ptilde`` (see
    ``t123_from_dual``) and equals ``-dual_eps(P) / 6``.
    """
    require_three_six(p)
    k, t = _contraction_matrix(p)
    # eps^{klm k'l'm'} P_k'l'm' = -6 S^{klm}
    out = -np.einsum("ka,kbc->abc", k, t) / 12
    return FermionState.from_tensor(out)


def dual_eps(p: FermionState) -> FermionState:
    """Dual state from epsilon contractions, normalized to agree with ``dual_blocks``."""
    require_three_six(p)
    k, t = _contraction_matrix(p)
    return FermionState.from_tensor(np.einsum("ka,kbc->abc", k, t) / 2)


def dual(p: FermionState) -> FermionState:
    return dual_eps(p)


def t123_from_dual(p: FermionState) -> complex:
    """-(1/3) eps^{abcdef} P_abc Ptilde_def with the literally normalized dual."""
    return -2 * symplectic_form(p, dual_eps_unscaled(p))


# --- Pluecker relations -----------------------------------------------------


@dataclass(frozen=True)
class PlueckerForm:
    A_set: tuple[int, ...]
    B_set: tuple[int, ...]
    value: complex = field(compare=False)

    def to_json(self) -> dict:
        return {"A": list(self.A_set), "B": list(self.B_set), "re": self.value.real, "im": self.value.imag}


@dataclass(frozen=True)
class _Template:
    A_set: tuple[int, ...]
    B_set: tuple[int, ...]
    left: np.ndarray
    right: np.ndarray
    coeff: np.ndarray


def _expand(n: int, k: int, A: tuple[int, ...], B: tuple[int, ...]) -> dict[tuple, int]:
    """Signed monomials of sum_j (-1)^(j-1) P_{A b_j} P_{B minus b_j} over sorted keys."""
    mono: dict[tuple, int] = {}
    for j, b in enumerate(B):
        left = A + (b,)
        s = perm_sign(left)
        if s == 0:
            continue
        right = B[:j] + B[j + 1:]
        key = tuple(sorted((tuple(sorted(left)), right)))
        mono[key] = mono.get(key, 0) + (-1) ** j * s
    return {m: c for m, c in mono.items() if c}


@cache
def pluecker_templates(n: int, k: int) -> tuple[_Template, ...]:
    """One representative (A, B) per distinct nonvanishing quadratic form.

    Forms are compared after expansion into sorted-key monomials, up to an
    overall sign. The first (A, B) in lexicographic order labels each class.
    """
    if not 1 <= k <= n:
        raise ValueError(f"need 1 <= k <= n, got n={n}, k={k}")
    index = key_index(n, k)
    seen = set()
    out = []
    modes = range(1, n + 1)
    for A in combinations(modes, k - 1):
        for B in combinations(modes, k + 1):
            mono = _expand(n, k, A, B)
            if not mono:
                continue
            items = sorted(mono.items())
            if items[0][1] < 0:
                items = [(m, -c) for m, c in items]
            canon = tuple(items)
            if canon in seen:
                continue
            seen.add(canon)
            out.append(
                _Template(
                    A,
                    B,
                    np.array([index[m[0]] for m in mono], dtype=np.intp),
                    np.array([index[m[1]] for m in mono], dtype=np.intp),
                    np.array(list(mono.values()), dtype=float),
                )
            )
    return tuple(out)


def pluecker_general(p: FermionState) -> list[PlueckerForm]:
    c = p.coeffs
    return [
        PlueckerForm(t.A_set, t.B_set, complex(np.sum(t.coeff * c[t.left] * c[t.right])))
        for t in pluecker_templates(p.n, p.k)
    ]


def pluecker_forms_3_6(p: FermionState) -> list[PlueckerForm]:
    """The 45 three-fermion relations, each evaluated term by term through the
    signed accessor: sum_i (-1)^(i-1) P_{a1 a2 b_i} P_{B minus b_i}."""
    require_three_six(p)
    out = []
    for t in pluecker_templates(6, 3):
        (a1, a2), bs = t.A_set, t.B_set
        value = 0j
        for i, b in enumerate(bs):
            rest = bs[:i] + bs[i + 1:]
            value += (-1) ** i * amplitude(p, (a1, a2, b)) * amplitude(p, rest)
        out.append(PlueckerForm(t.A_set, t.B_set, value))
    return out


def pluecker_max_abs(p: FermionState) -> float:
    forms = pluecker_general(p)
    return max((abs(f.value) for f in forms), default=0.0)


def is_decomposable(p: FermionState, rel_tol: float = REL_TOL) -> bool:
    return pluecker_max_abs(p) <= rel_tol * norm_squared(p)


@dataclass(frozen=True)
class KappaCount:
    n: int
    k: int
    enumerated: int
    formula_value: Optional[float]


def kappa_formula(n: int, k: int) -> Optional[float]:
    """The closed-form count 1/4 + sum_{m=1}^{min(k, n-k)} n!/((m+1)!(m+3)!(k-m-2)!(n-k-m-2)!).

    Terms with a negative factorial argument are dropped (1/(-j)! = 0). When
    every term drops, the expression carries no information and None is returned.
    """
    total = 0.25
    any_term = False
    for m in range(1, min(k, n - k) + 1):
        args = (m + 1, m + 3, k - m - 2, n - k - m - 2)
        if min(args) < 0:
            continue
        any_term = True
        total += factorial(n) / np.prod([factorial(a) for a in args])
    return float(total) if any_term else None


def kappa_count(n: int, k: int) -> KappaCount:
    return KappaCount(n, k, len(pluecker_templates(n, k)), kappa_formula(n, k))


def eta_2_4(p: FermionState) -> float:
    """Bipartite measure 2|P12 P34 - P13 P24 + P14 P23| for two fermions over four modes.

    Lies in [0, 1] when sum_{a<b} |P_ab|^2 = 1. With w = P/2 this is the
    familiar 8|w12 w34 - w13 w24 + w14 w23|.
    """
    if (p.n, p.k) != (4, 2):
        raise ValueError(f"eta needs a two-fermion state over four modes, got n={p.n}, k={p.k}")
    return 2 * abs(p[1, 2] * p[3, 4] - p[1, 3] * p[2, 4] + p[1, 4] * p[2, 3])


def dual_max_abs(p: FermionState) -> float:
    return float(np.max(np.abs(dual_eps(p).coeffs)))

