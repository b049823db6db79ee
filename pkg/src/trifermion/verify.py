"""Seeded randomized verification suites.

Each sample draws its own generator from ``SeedSequence(seed).spawn``, so a
suite's outcome depends only on (name, samples, seed). A sample reports, per
named check, the ratio of the observed error to the allowed error; a check
passes when the ratio is at most 1.
"""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Callable, Mapping

import numpy as np

from . import freudenthal as fr
from .classify import random_gl6
from .exterior import FermionState, apply_gl6, norm_squared, random_state, random_wedge, symplectic_form
from .invariants import (
    BlockForm,
    dual_blocks,
    dual_eps,
    eta_2_4,
    from_blocks,
    pluecker_general,
    t123_blocks,
    t123_eps,
    t123_from_dual,
    to_blocks,
)
from .qubits import apply_local, cayley_hyperdet, cayley_hyperdet_eps, embed

RNG_NAME = "numpy.random.PCG64 via SeedSequence.spawn"

SUITES = (
    "sl6-invariance",
    "dual-covariance",
    "formula-equality",
    "freudenthal-equivariance",
    "pluecker-oracle",
    "qubit-reduction",
)

Sample = Callable[[np.random.Generator], Mapping[str, float]]


@dataclass
class SuiteResult:
    name: str
    samples: int
    seed: int
    worst: dict[str, float] = field(default_factory=dict)
    failures: dict[str, int] = field(default_factory=dict)
    notes: dict[str, float] = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return not any(self.failures.values())

    def to_json(self) -> dict:
        return {
            "suite": self.name,
            "samples": self.samples,
            "seed": self.seed,
            "rng": RNG_NAME,
            "passed": self.passed,
            "worst_error_ratio": dict(sorted(self.worst.items())),
            "failures": dict(sorted(self.failures.items())),
            "notes": dict(sorted(self.notes.items())),
        }


def _rel(a, b, floor: float = 0.0) -> float:
    """max|a - b| / max|b| (with optional floor on the denominator)."""
    a, b = np.asarray(a), np.asarray(b)
    denom = max(float(np.max(np.abs(b), initial=0.0)), floor)
    err = float(np.max(np.abs(a - b), initial=0.0))
    if denom == 0:
        return 0.0 if err == 0 else np.inf
    return err / denom


def _cgauss(rng: np.random.Generator, *shape) -> np.ndarray:
    return (rng.normal(size=shape) + 1j * rng.normal(size=shape)) / np.sqrt(2)


def _scaled_state(rng: np.random.Generator) -> FermionState:
    """Random state with a random overall scale, to exercise the norm-scaled tolerances."""
    return random_state(rng, normalize=False) * float(np.exp(rng.uniform(-2, 2)))


# --- per-sample checks ---------------------------------------------------------


def sample_sl6_invariance(rng, t123: Callable[[FermionState], complex] = t123_eps) -> dict[str, float]:
    p = random_state(rng)
    q = random_state(rng)
    g = random_gl6(rng, unit_det=True)
    gp, gq = apply_gl6(p, g), apply_gl6(q, g)
    t0 = t123(p)
    return {
        "t123": abs(t123(gp) - t0) / (1e-8 * max(1.0, abs(t0))),
        "symplectic": abs(symplectic_form(gp, gq) - symplectic_form(p, q)) / (1e-8 * max(1.0, abs(symplectic_form(p, q)))),
    }


def sample_dual_covariance(rng, t123: Callable[[FermionState], complex] = t123_eps) -> dict[str, float]:
    p = random_state(rng)
    q = random_state(rng)
    g = random_gl6(rng)
    det = complex(np.linalg.det(g))
    gp = apply_gl6(p, g)
    return {
        "t123": _rel(t123(gp), det**2 * t123(p)) / 1e-8,
        "dual": _rel(dual_eps(gp).coeffs, det * apply_gl6(dual_eps(p), g).coeffs) / 1e-8,
        "symplectic": _rel(symplectic_form(gp, apply_gl6(q, g)), det * symplectic_form(p, q)) / 1e-8,
    }


def sample_formula_equality(rng) -> dict[str, float]:
    p = _scaled_state(rng)
    n2 = norm_squared(p)
    b = to_blocks(p)
    t = t123_eps(p)
    tol4 = 1e-9 * n2**2
    dual_path = from_blocks(dual_blocks(b)).coeffs
    return {
        "t123_eps_vs_blocks": abs(t - t123_blocks(b)) / tol4,
        "dual_eps_vs_blocks": float(np.max(np.abs(dual_eps(p).coeffs - dual_path))) / (1e-9 * n2**1.5),
        "t123_vs_2q": abs(t - 2 * fr.quartic_q(b)) / tol4,
        "t123_vs_contraction": abs(t - t123_from_dual(p)) / tol4,
        "blocks_round_trip": float(np.max(np.abs(from_blocks(b).coeffs - p.coeffs))) / (1e-12 * np.sqrt(n2)),
    }


def random_generator(rng: np.random.Generator, kind: str | None = None) -> fr.GroupGenerator:
    kind = kind or ("sigma", "pi", "rho")[int(rng.integers(3))]
    if kind == "rho":
        return fr.rho(_cgauss(rng, 3, 3), _cgauss(rng, 3, 3))
    return fr.GroupGenerator(kind, _cgauss(rng, 3, 3))


def random_element(rng: np.random.Generator) -> BlockForm:
    return BlockForm(_cgauss(rng), _cgauss(rng), _cgauss(rng, 3, 3), _cgauss(rng, 3, 3))


def sample_freudenthal(rng) -> dict[str, float]:
    g = random_generator(rng)
    x, y = random_element(rng), random_element(rng)
    gx, gy = fr.act(g, x), fr.act(g, y)
    G = fr.F_matrix(g)
    lhs = from_blocks(gx).coeffs
    rhs = apply_gl6(from_blocks(x), G).coeffs
    return {
        "quartic": _rel(fr.quartic_q(gx), fr.quartic_q(x)) / 1e-8,
        "symplectic": _rel(fr.symplectic_M(gx, gy), fr.symplectic_M(x, y)) / 1e-8,
        "equivariance": _rel(lhs, rhs) / 1e-8,
        "det_F": abs(np.linalg.det(G) - 1) / 1e-10,
    }


PLUECKER_SHAPES = ((2, 4), (3, 6), (2, 5), (3, 5))


def sample_pluecker(rng) -> dict[str, float]:
    out = {}
    for k, n in PLUECKER_SHAPES:
        w = random_wedge(rng, n, k)
        worst = max((abs(f.value) for f in pluecker_general(w)), default=0.0)
        out[f"wedge_{k}_{n}"] = worst / (1e-9 * norm_squared(w))
    w24 = random_wedge(rng, 4, 2).normalized()
    out["eta_wedge_2_4"] = eta_2_4(w24) / 1e-9
    return out


def dense_is_flagged(rng, k: int, n: int) -> bool:
    """True if a dense random state passes every Pluecker test (expected almost never)."""
    p = random_state(rng, n=n, k=k, normalize=False)
    worst = max((abs(f.value) for f in pluecker_general(p)), default=0.0)
    return worst <= 1e-9 * norm_squared(p)


def sample_qubit_reduction(rng) -> dict[str, float]:
    psi = _cgauss(rng, 8)
    psi = psi / np.linalg.norm(psi)
    d = cayley_hyperdet(psi)
    gates = [_cgauss(rng, 2, 2) for _ in range(3)]
    dets = np.prod([np.linalg.det(s) ** 2 for s in gates])
    return {
        "t123_vs_4D": _rel(t123_eps(embed(psi)), 4 * d) / 1e-10,
        "D_monomial_vs_eps": _rel(cayley_hyperdet_eps(psi), d) / 1e-12,
        "D_covariance": _rel(cayley_hyperdet(apply_local(psi, *gates)), dets * d) / 1e-10,
    }


SAMPLERS: dict[str, Sample] = {
    "sl6-invariance": sample_sl6_invariance,
    "dual-covariance": sample_dual_covariance,
    "formula-equality": sample_formula_equality,
    "freudenthal-equivariance": sample_freudenthal,
    "pluecker-oracle": sample_pluecker,
    "qubit-reduction": sample_qubit_reduction,
}


def run_suite(name: str, samples: int = 100, seed: int = 0, workers: int = 1, sampler: Sample | None = None) -> SuiteResult:
    """Run a named suite. ``sampler`` replaces the built-in per-sample check
    (used to feed a deliberately broken implementation through the harness)."""
    if name not in SAMPLERS:
        raise ValueError(f"unknown suite {name!r}; choose from {', '.join(SUITES)}")
    if samples < 1:
        raise ValueError("samples must be >= 1")
    fn = sampler or SAMPLERS[name]
    children = np.random.SeedSequence(seed).spawn(samples)

    def one(ss):
        return fn(np.random.default_rng(ss))

    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as ex:
            rows = list(ex.map(one, children))
    else:
        rows = [one(ss) for ss in children]

    result = SuiteResult(name, samples, seed)
    for row in rows:
        for key, ratio in row.items():
            ratio = float(ratio)
            result.worst[key] = max(result.worst.get(key, 0.0), ratio)
            result.failures[key] = result.failures.get(key, 0) + int(not ratio <= 1.0)

    if name == "pluecker-oracle":
        flagged = 0
        extra = np.random.default_rng(np.random.SeedSequence(seed).spawn(samples + 1)[-1])
        for _ in range(samples):
            for k, n in PLUECKER_SHAPES:
                flagged += dense_is_flagged(extra, k, n)
        result.notes["dense_states_passing_all_forms"] = float(flagged)
        maximal = FermionState.from_dict({(1, 2): 2**-0.5, (3, 4): 2**-0.5}, n=4, k=2)
        eta_err = abs(eta_2_4(maximal) - 1) / 1e-12
        result.worst["eta_maximal"] = eta_err
        result.failures["eta_maximal"] = int(not eta_err <= 1)
    return result
