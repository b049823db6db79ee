"""Entanglement invariants and SLOCC classification of three fermions with six
single particle states."""

from .classify import ClassificationReport, RankClass, Tolerances, canonical_representative, classify, rank_stability_check
from .exterior import (
    FermionState,
    amplitude,
    apply_gl6,
    basis_state,
    norm_squared,
    reduced_density_single,
    symplectic_form,
    wedge,
)
from .invariants import (
    BlockForm,
    dual,
    dual_blocks,
    dual_eps,
    eta_2_4,
    from_blocks,
    kappa_count,
    pluecker_forms_3_6,
    pluecker_general,
    t123,
    t123_blocks,
    t123_eps,
    tangle,
    to_blocks,
)

__version__ = "0.1.0"
