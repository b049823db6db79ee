import itertools
import json

import numpy as np
import pytest

from trifermion.exterior import (
    OVERLINE,
    FermionState,
    amplitude,
    apply_gl6,
    bar,
    basis_state,
    hodge_star,
    load_state,
    norm_squared,
    perm_sign,
    random_state,
    reduced_density_single,
    save_state,
    state_from_json,
    state_to_json,
    symplectic_form,
    wedge,
)
from trifermion.states import OMEGA, PHI, PSI

from oracles import EPS6, dense_from_sorted, symplectic_literal


def test_overline_table_round_trips():
    assert OVERLINE == {1: 4, 2: 5, 3: 6}
    for i in range(1, 7):
        assert bar(bar(i)) == i
    with pytest.raises(ValueError):
        bar(7)


def test_amplitude_signed_lookup():
    s = 0.3 - 0.2j
    p = FermionState.from_dict({(1, 3, 5): s})
    assert amplitude(p, (1, 3, 5)) == s
    assert amplitude(p, (3, 1, 5)) == -s
    assert amplitude(p, (1, 1, 5)) == 0
    assert p[5, 1, 3] == s


def test_amplitude_index_out_of_range():
    with pytest.raises(IndexError):
        amplitude(PSI, (0, 1, 2))
    with pytest.raises(IndexError):
        amplitude(PSI, (1, 2, 7))
    with pytest.raises(ValueError):
        amplitude(PSI, (1, 2))


def test_antisymmetry_all_permutations(rng):
    p = random_state(rng)
    for key in p.keys:
        for perm in itertools.permutations(range(3)):
            idx = tuple(key[i] for i in perm)
            assert amplitude(p, idx) == perm_sign(perm) * amplitude(p, key)


def test_dense_tensor_matches_reference(rng):
    p = random_state(rng)
    ref = dense_from_sorted(p.amplitudes)
    np.testing.assert_allclose(p.tensor(), ref, atol=0)
    assert FermionState.from_tensor(ref).allclose(p, atol=0)


def test_states_are_immutable():
    with pytest.raises(ValueError):
        PSI.coeffs[0] = 1


def test_wedge_basis():
    p = wedge(np.eye(6)[:3])
    assert p.amplitudes == {(1, 2, 3): 1}


def test_wedge_omega():
    assert OMEGA.amplitudes == {(1, 4, 5): 0.5, (1, 4, 6): -0.5, (3, 4, 5): 0.5, (3, 4, 6): -0.5}


def test_wedge_repeated_factor_is_zero(rng):
    v, w = rng.normal(size=(2, 6))
    assert norm_squared(wedge([v, v, w])) < 1e-28


def test_wedge_rejects_ragged():
    with pytest.raises(ValueError):
        wedge([[1, 0, 0], [0, 1]])
    with pytest.raises(ValueError):
        wedge(np.ones((4, 3)))


def test_norm_squared():
    assert norm_squared(PSI) == pytest.approx(1, abs=1e-15)
    assert norm_squared(FermionState.zero()) == 0
    assert norm_squared(2 * PHI) == pytest.approx(4 * norm_squared(PHI))


def test_symplectic_basis_pair():
    p, q = basis_state(1, 2, 3), basis_state(4, 5, 6)
    # 6 orderings of abc times 6 of def, every term +1, divided by 6
    assert symplectic_form(p, q) == 6
    assert symplectic_form(q, p) == -6


def test_symplectic_against_dense_epsilon(rng):
    p, q = random_state(rng), random_state(rng)
    expected = symplectic_literal(p.tensor(), q.tensor())
    assert symplectic_form(p, q) == pytest.approx(expected, abs=1e-12)
    assert symplectic_form(p, p) == pytest.approx(0, abs=1e-14)
    assert symplectic_form(p, 2 * q) == pytest.approx(2 * symplectic_form(p, q))


def test_hodge_star_matches_epsilon(rng):
    p = random_state(rng)
    expected = np.einsum("abcdef,abc->def", EPS6, p.tensor())
    np.testing.assert_allclose(6 * hodge_star(p).tensor(), expected, atol=1e-13)


def test_apply_gl6_identity_and_scaling(rng):
    p = random_state(rng)
    assert apply_gl6(p, np.eye(6)).allclose(p, atol=1e-15)
    c = 0.7 + 0.4j
    assert apply_gl6(p, c * np.eye(6)).allclose(c**3 * p, atol=1e-14)


def test_apply_gl6_swap_flips_sign():
    g = np.eye(6)[[1, 0, 2, 3, 4, 5]]
    assert apply_gl6(basis_state(1, 2, 3), g).allclose(-basis_state(1, 2, 3))


def test_apply_gl6_is_a_group_action(rng):
    p = random_state(rng)
    g, h = rng.normal(size=(2, 6, 6)) + 1j * rng.normal(size=(2, 6, 6))
    assert apply_gl6(apply_gl6(p, g), h).allclose(apply_gl6(p, h @ g), atol=1e-11)


def test_apply_gl6_against_einsum(rng):
    p = random_state(rng)
    g = rng.normal(size=(6, 6))
    ref = np.einsum("ad,be,cf,def->abc", g, g, g, p.tensor())
    np.testing.assert_allclose(apply_gl6(p, g).tensor(), ref, atol=1e-12)


def test_symplectic_scales_by_determinant(rng):
    p, q = random_state(rng), random_state(rng)
    g = rng.normal(size=(6, 6)) + 1j * rng.normal(size=(6, 6))
    lhs = symplectic_form(apply_gl6(p, g), apply_gl6(q, g))
    assert lhs == pytest.approx(np.linalg.det(g) * symplectic_form(p, q), rel=1e-10)


@pytest.mark.parametrize("state", [PSI, PHI], ids=["psi", "phi"])
def test_reduced_density_worked_examples(state):
    np.testing.assert_allclose(reduced_density_single(state), np.diag([2, 1, 2, 1, 2, 1]) / 3, atol=1e-12)


def test_reduced_density_basis_and_random(rng):
    np.testing.assert_allclose(reduced_density_single(basis_state(1, 2, 3)), np.diag([1, 1, 1, 0, 0, 0]))
    rho = reduced_density_single(random_state(rng))
    np.testing.assert_allclose(rho, rho.conj().T, atol=1e-14)
    assert np.trace(rho) == pytest.approx(3)


def test_json_round_trip(tmp_path, rng):
    p = random_state(rng)
    path = tmp_path / "p.json"
    save_state(p, path)
    assert load_state(path).allclose(p, atol=0)
    data = json.loads(path.read_text())
    assert data["n"] == 6 and data["k"] == 3 and len(data["amplitudes"]) == 20


@pytest.mark.parametrize(
    "indices",
    [[3, 1, 5], [1, 1, 5], [1, 2, 9]],
    ids=["unsorted", "repeated", "out-of-range"],
)
def test_json_rejects_bad_indices(indices):
    data = {"n": 6, "k": 3, "amplitudes": [{"indices": indices, "re": 1.0, "im": 0.0}]}
    with pytest.raises((ValueError, IndexError)):
        state_from_json(data)


def test_json_rejects_duplicates():
    entry = {"indices": [1, 2, 3], "re": 1.0, "im": 0.0}
    with pytest.raises(ValueError):
        state_from_json({"n": 6, "k": 3, "amplitudes": [entry, entry]})


def test_general_state_json(rng):
    p = random_state(rng, n=5, k=2)
    assert state_from_json(state_to_json(p)).allclose(p, atol=0)
