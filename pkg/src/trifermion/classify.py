"""SLOCC rank of a three-fermion state over six modes.

Rank 4 (GHZ-like) iff T_123 != 0; rank 3 (W-like) iff T_123 = 0 and the dual
state is nonzero; rank 2 (biseparable) iff additionally some Pluecker form is
nonzero; rank 1 (separable) otherwise, unless the state is zero.

Zero tests are relative: a witness of degree d in the amplitudes is compared
with ``rel * norm**d``.
"""

from __future__ import annotations

import enum
from concurrent.futures import ThreadPoolExecutor
from dataclasses import asdict, dataclass, field
from math import sqrt
from typing import Optional

import numpy as np

from .exterior import REL_TOL, FermionState, apply_gl6, norm_squared, require_three_six
from .invariants import dual_eps, pluecker_forms_3_6, t123_eps


class RankClass(enum.IntEnum):
    ZERO = 0
    RANK1_SEPARABLE = 1
    RANK2_BISEPARABLE = 2
    RANK3_W_LIKE = 3
    RANK4_GHZ_LIKE = 4

    @property
    def label(self) -> str:
        return {
            0: "Zero",
            1: "Rank1_Separable",
            2: "Rank2_Biseparable",
            3: "Rank3_W_like",
            4: "Rank4_GHZ_like",
        }[int(self)]


@dataclass(frozen=True)
class Tolerances:
    """Relative zero thresholds per witness; ``None`` falls back to ``rel``."""

    rel: float = REL_TOL
    quartic: Optional[float] = None
    cubic: Optional[float] = None
    quadratic: Optional[float] = None

    def scaled(self, nrm: float) -> tuple[float, float, float]:
        q4 = self.rel if self.quartic is None else self.quartic
        q3 = self.rel if self.cubic is None else self.cubic
        q2 = self.rel if self.quadratic is None else self.quadratic
        return q4 * nrm**4, q3 * nrm**3, q2 * nrm**2


@dataclass(frozen=True)
class ClassificationReport:
    rank: RankClass
    t123: complex
    dual_max_abs: float
    pluecker_max_abs: float
    norm: float
    tol4: float
    tol3: float
    tol2: float
    ill_conditioned: bool = False
    borderline: tuple[str, ...] = field(default=())

    def to_json(self) -> dict:
        d = asdict(self)
        d["rank"] = int(self.rank)
        d["rank_label"] = self.rank.label
        d["t123"] = {"re": self.t123.real, "im": self.t123.imag}
        d["borderline"] = list(self.borderline)
        return d


def _near(value: float, threshold: float) -> bool:
    return threshold > 0 and threshold / 10 <= value <= threshold * 10


def classify(p: FermionState, tol: Tolerances = Tolerances()) -> ClassificationReport:
    require_three_six(p)
    nrm = sqrt(norm_squared(p))
    tol4, tol3, tol2 = tol.scaled(nrm)
    t = t123_eps(p)
    d = float(np.max(np.abs(dual_eps(p).coeffs)))
    pl = max(abs(f.value) for f in pluecker_forms_3_6(p))

    checks = [("t123", abs(t), tol4), ("dual", d, tol3), ("pluecker", pl, tol2)]
    if abs(t) > tol4:
        rank, consulted = RankClass.RANK4_GHZ_LIKE, checks[:1]
    elif d > tol3:
        rank, consulted = RankClass.RANK3_W_LIKE, checks[:2]
    elif pl > tol2:
        rank, consulted = RankClass.RANK2_BISEPARABLE, checks
    else:
        rank, consulted = (RankClass.RANK1_SEPARABLE if nrm > 0 else RankClass.ZERO), checks
    borderline = tuple(name for name, value, threshold in consulted if _near(value, threshold))
    return ClassificationReport(
        rank=rank,
        t123=t,
        dual_max_abs=d,
        pluecker_max_abs=pl,
        norm=nrm,
        tol4=tol4,
        tol3=tol3,
        tol2=tol2,
        ill_conditioned=bool(borderline),
        borderline=borderline,
    )


def canonical_representative(rank: RankClass | int) -> FermionState:
    """Normalized representative with ``rank`` Slater terms.

    The terms are added in the order e1^e2^e3, e1^e2b^e3b, e2^e3b^e1b,
    e3^e1b^e2b (b = overline, i.e. 4, 5, 6).
    """
    rank = RankClass(rank)
    if rank == RankClass.ZERO:
        raise ValueError("the zero state has no canonical representative")
    terms = [(1, 2, 3), (1, 5, 6), (2, 6, 4), (3, 4, 5)][: int(rank)]
    c = 1 / sqrt(len(terms))
    return FermionState.from_dict({t: c for t in terms})


@dataclass(frozen=True)
class StabilityReport:
    rank: RankClass
    samples: int
    mismatches: int
    worst_t123_drift: float
    labels: tuple[int, ...]

    @property
    def passed(self) -> bool:
        return self.mismatches == 0

    def to_json(self) -> dict:
        return {
            "rank": int(self.rank),
            "samples": self.samples,
            "mismatches": self.mismatches,
            "worst_t123_drift": self.worst_t123_drift,
            "passed": self.passed,
        }


def random_gl6(rng: np.random.Generator, unit_det: bool = False) -> np.ndarray:
    g = (rng.normal(size=(6, 6)) + 1j * rng.normal(size=(6, 6))) / sqrt(2)
    if unit_det:
        g = g / complex(np.linalg.det(g)) ** (1 / 6)
    return g


def _one_sample(p: FermionState, t0: complex, seed: np.random.SeedSequence, unit_det: bool, tol: Tolerances):
    rng = np.random.default_rng(seed)
    g = random_gl6(rng, unit_det=unit_det)
    q = apply_gl6(p, g)
    rep = classify(q, tol)
    det = complex(np.linalg.det(g))
    scale = max(rep.norm**4, np.finfo(float).tiny)
    drift = abs(rep.t123 - det**2 * t0) / scale
    return int(rep.rank), drift


def rank_stability_check(
    p: FermionState,
    samples: int = 100,
    seed: int = 0,
    tol: Tolerances = Tolerances(),
    workers: int = 1,
) -> StabilityReport:
    """Apply ``samples`` random invertible matrices (alternating unit and
    generic determinant) and count rank changes.

    Every sample gets its own child seed, so the outcome does not depend on
    ``workers``. Drift is |T(GP) - Det(G)^2 T(P)| / |GP|^4.
    """
    if samples < 1:
        raise ValueError("samples must be >= 1")
    base = classify(p, tol)
    children = np.random.SeedSequence(seed).spawn(samples)
    jobs = [(p, base.t123, s, i % 2 == 0, tol) for i, s in enumerate(children)]
    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as ex:
            results = list(ex.map(lambda a: _one_sample(*a), jobs))
    else:
        results = [_one_sample(*a) for a in jobs]
    labels = tuple(r for r, _ in results)
    return StabilityReport(
        rank=base.rank,
        samples=samples,
        mismatches=sum(1 for r in labels if r != int(base.rank)),
        worst_t123_drift=max(d for _, d in results),
        labels=labels,
    )
