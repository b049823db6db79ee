"""Freudenthal triple system over the Jordan algebra M(3, C).

An element ``x = (alpha, A, B, beta)`` is the same record as ``BlockForm``,
so the identification with three-fermion states is ``from_blocks``. The
identity component of the invariance group is generated by ``sigma``,
``pi`` and ``rho``; ``F_matrix`` sends each generator to the SL(6, C)
matrix that acts the same way on the fermionic side.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Literal, Optional

import numpy as np

from .invariants import BlockForm, dual_blocks
from .jordan import I3, cross, jordan_product, norm, sharp, trace_form  # noqa: F401

FreudenthalElement = BlockForm


def quartic_q(x: FreudenthalElement) -> complex:
    """q(x) = 2((A,B) - alpha beta)^2 - 8(A#,B#) + 8 alpha N(A) + 8 beta N(B); T_123 = 2 q."""
    s = trace_form(x.A, x.B) - x.alpha * x.beta
    return 2 * s * s - 8 * trace_form(sharp(x.A), sharp(x.B)) + 8 * x.alpha * norm(x.A) + 8 * x.beta * norm(x.B)


def symplectic_M(x: FreudenthalElement, y: FreudenthalElement) -> complex:
    """{x, y} = alpha delta - beta gamma + (A, D) - (B, C).

    Under the fermionic dictionary this is one sixth of
    ``exterior.symplectic_form``.
    """
    return x.alpha * y.beta - x.beta * y.alpha + trace_form(x.A, y.B) - trace_form(x.B, y.A)


def trilinear_dual(x: FreudenthalElement) -> FreudenthalElement:
    """T(x, x, x), identical to the dual state in block form.

    With these conventions q(x) = {x, T(x,x,x)}.
    """
    return dual_blocks(x)


GeneratorKind = Literal["sigma", "pi", "rho", "transpose"]


@dataclass(frozen=True, eq=False)
class GroupGenerator:
    """One generator of Inv(M): sigma(L), pi(L), rho(L1, L2), or the transpose flip.

    ``transpose`` lies outside the identity component and has no image under
    ``F_matrix``.
    """

    kind: GeneratorKind
    L1: Optional[np.ndarray] = None
    L2: Optional[np.ndarray] = None

    def __post_init__(self):
        if self.kind in ("sigma", "pi"):
            if self.L1 is None:
                raise ValueError(f"{self.kind} needs a 3x3 parameter")
            object.__setattr__(self, "L1", _m3(self.L1))
        elif self.kind == "rho":
            if self.L1 is None or self.L2 is None:
                raise ValueError("rho needs two 3x3 parameters")
            l1, l2 = _m3(self.L1), _m3(self.L2)
            if norm(l1) == 0 or norm(l2) == 0:
                raise ValueError("rho parameters must be invertible")
            object.__setattr__(self, "L1", l1)
            object.__setattr__(self, "L2", l2)
        elif self.kind != "transpose":
            raise ValueError(f"unknown generator kind {self.kind!r}")


def _m3(a) -> np.ndarray:
    a = np.array(a, dtype=complex)
    if a.shape != (3, 3):
        raise ValueError(f"expected a 3x3 matrix, got shape {a.shape}")
    a.setflags(write=False)
    return a


def sigma(L) -> GroupGenerator:
    return GroupGenerator("sigma", L)


def pi(L) -> GroupGenerator:
    return GroupGenerator("pi", L)


def rho(L1, L2) -> GroupGenerator:
    return GroupGenerator("rho", L1, L2)


def transpose() -> GroupGenerator:
    return GroupGenerator("transpose")


def act(g: GroupGenerator, x: FreudenthalElement) -> FreudenthalElement:
    al, be, A, B = x.alpha, x.beta, x.A, x.B
    if g.kind == "sigma":
        L = g.L1
        Ls = sharp(L)
        return BlockForm(
            alpha=al + trace_form(B, L) + trace_form(A, Ls) + be * norm(L),
            beta=be,
            A=A + be * L,
            B=B + cross(A, L) + be * Ls,
        )
    if g.kind == "pi":
        L = g.L1
        Ls = sharp(L)
        return BlockForm(
            alpha=al,
            beta=be + trace_form(A, L) + trace_form(B, Ls) + al * norm(L),
            A=A + cross(B, L) + al * Ls,
            B=B + al * L,
        )
    if g.kind == "rho":
        L1, L2 = g.L1, g.L2
        d1, d2 = norm(L1), norm(L2)
        return BlockForm(
            alpha=d2 / d1 * al,
            beta=d1 / d2 * be,
            A=L1 @ A @ np.linalg.inv(L2),
            B=L2 @ B @ np.linalg.inv(L1),
        )
    return BlockForm(al, be, A.T, B.T)


def F_matrix(g: GroupGenerator) -> np.ndarray:
    """SL(6, C) matrix G with from_blocks(act(g, x)) = apply_gl6(from_blocks(x), G).

    Modes are ordered 1, 2, 3, 1bar, 2bar, 3bar. sigma(L) goes to the upper
    unitriangular [[I, L], [0, I]] and pi(L) to the lower [[I, 0], [L, I]].
    For rho the principal cube roots of the determinants are used; another
    branch changes G by a cube root of unity, which acts trivially on 3-forms.
    """
    z = np.zeros((3, 3), dtype=complex)
    if g.kind == "sigma":
        return np.block([[I3, g.L1], [z, I3]])
    if g.kind == "pi":
        return np.block([[I3, z], [g.L1, I3]])
    if g.kind == "rho":
        d1, d2 = norm(g.L1), norm(g.L2)
        lam = complex(d1) ** (1 / 3) * complex(d2) ** (1 / 3)
        return lam * np.block([[g.L1 / d1, z], [z, g.L2 / d2]])
    raise ValueError("the transpose generator is not in the identity component; F is undefined")
