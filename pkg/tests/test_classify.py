import json

import numpy as np
import pytest

from trifermion.classify import (
    RankClass,
    Tolerances,
    canonical_representative,
    classify,
    rank_stability_check,
    random_gl6,
)
from trifermion.exterior import FermionState, apply_gl6, basis_state, random_state, wedge
from trifermion.invariants import t123_eps
from trifermion.states import OMEGA, PHI, PSI, k_family


@pytest.mark.parametrize("rank", [1, 2, 3, 4])
def test_canonical_round_trip(rank):
    p = canonical_representative(rank)
    assert p.is_normalized()
    rep = classify(p)
    assert rep.rank == rank
    assert not rep.ill_conditioned


def test_canonical_rank4_tangle():
    assert abs(t123_eps(canonical_representative(4))) == pytest.approx(1, abs=1e-12)


def test_zero_state():
    assert classify(FermionState.zero()).rank == RankClass.ZERO
    with pytest.raises(ValueError):
        canonical_representative(0)


@pytest.mark.parametrize("state,rank", [(PSI, 4), (PHI, 3), (OMEGA, 1)], ids=["psi", "phi", "omega"])
def test_named_states(state, rank):
    assert classify(state).rank == rank


def test_labels():
    assert RankClass(4).label == "Rank4_GHZ_like"
    assert RankClass(1).label == "Rank1_Separable"
    assert [int(r) for r in RankClass] == [0, 1, 2, 3, 4]


@pytest.mark.parametrize("k", [1, 2, 0.5, 1j, 1 + 1j, -3, 1e-3])
def test_k_family_is_rank4(k):
    assert classify(k_family(k)).rank == RankClass.RANK4_GHZ_LIKE


def test_k_zero_degenerates_to_w_like():
    assert classify(k_family(0)).rank == RankClass.RANK3_W_LIKE


def test_monotone_chain():
    # adding Slater terms in canonical order raises the rank one step at a time
    ranks = [int(classify(canonical_representative(r)).rank) for r in (1, 2, 3, 4)]
    assert ranks == sorted(ranks) == [1, 2, 3, 4]


def test_biseparable_example(rng):
    # v ^ (e2^e3 + e4^e5) with v generic
    v = rng.normal(size=6)
    p =wedge([v, np.eye(6)[1], np.eye(6)[2]]) + wedge([v, np.eye(6)[3], np.eye(6)[4]])
    assert classify(p).rank == RankClass.RANK2_BISEPARABLE


def test_rank_is_gl6_invariant(rng):
    for rank in (1, 2, 3, 4):
        p = canonical_representative(rank)
        g = random_gl6(rng)
        assert classify(apply_gl6(p, g)).rank == rank


def test_scale_invariance():
    for c in (1e-6, 1e6, 3j):
        assert classify(c * PHI).rank == RankClass.RANK3_W_LIKE


def test_random_states_are_generic(rng):
    for _ in range(20):
        assert classify(random_state(rng)).rank == RankClass.RANK4_GHZ_LIKE


def test_ill_conditioned_flag():
    # |T| = 16k / 9 after normalization, a few times the quartic threshold
    rep = classify(k_family(2e-9).normalized())
    assert rep.rank == 4
    assert rep.ill_conditioned and rep.borderline == ("t123",)


def test_tolerances_override():
    p = canonical_representative(2) + 1e-4 * basis_state(4, 5, 6)
    assert classify(p).rank == 4
    loose = Tolerances(rel=1e-9, quartic=1.0, cubic=1.0)
    assert classify(p, loose).rank == 2


def test_report_json_is_serializable():
    d = classify(PSI).to_json()
    text = json.dumps(d)
    assert json.loads(text)["rank_label"] == "Rank4_GHZ_like"
    assert d["t123"]["re"] == pytest.approx(8 / 9)


@pytest.mark.parametrize("rank", [1, 2, 3, 4])
def test_stability_check(rank):
    rep = rank_stability_check(canonical_representative(rank), samples=20, seed=1)
    assert rep.passed and rep.mismatches == 0
    assert rep.worst_t123_drift < 1e-9


def test_stability_check_is_worker_independent():
    p = canonical_representative(3)
    a = rank_stability_check(p, samples=8, seed=5, workers=1)
    b = rank_stability_check(p, samples=8, seed=5, workers=4)
    assert a == b


def test_stability_rejects_zero_samples():
    with pytest.raises(ValueError):
        rank_stability_check(PSI, samples=0)


def test_classify_rejects_other_shapes(rng):
    with pytest.raises(ValueError):
        classify(random_state(rng, n=5, k=2))
